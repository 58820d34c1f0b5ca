//! Degree-zero K-groups of module categories and their stable quotients.
//!
//! Everything here is a finitely presented abelian group on labeled
//! generators: the split representation group (free on indecomposables), the
//! classical `G₀` and `K₀` (free on simples, resp. indecomposable
//! projectives), the stable class group (representation group modulo
//! `[L] − [Y] + [N]` for every extension `0 → L → Y → N → 0`), and the class
//! group of an arbitrary cofibration/weak-equivalence structure.  Group maps
//! carry machine-checked well-definedness certificates: every source relation
//! must land in the target relation lattice, verified by Smith-normal-form
//! membership, and a violated relation is returned as the witness.  The
//! localization tail checker assembles hypothesis verdicts, the three groups,
//! both comparison maps, and element-by-element exactness verdicts.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{
    is_free_over_subalgebra, jacobson_radical, kernel_ideal, Algebra, AlgebraMorphism,
};
use crate::allowable::{is_class_mono, is_class_stable_equivalence, AllowableClass};
use crate::decomp::{enumerate_indecomposables, krull_schmidt, Census};
use crate::error::Error;
use crate::linalg::fp::{in_row_span, FpMatrix};
use crate::linalg::int::IntMatrix;
use crate::modules::{
    base_change, cokernel, direct_sum, find_isomorphism, hom_space, induce, kernel,
    submodule_from_rows, submodules, Module, ModuleHom,
};
use crate::par::par_map;
use crate::report::{CheckItem, SplitMix64};
use crate::stable::{ext1, extension_from_class, is_projective, simples, top};
use crate::waldhausen::{check_quasi_frobenius, check_relative_qf, WaldhausenSpec};
use crate::Result;

/// Budget for Krull–Schmidt decompositions.
const KS_CAP: u64 = 1 << 20;
/// Budget for isomorphism searches when matching factors to generators.
const ISO_CAP: u64 = 1 << 20;
/// Budget for indecomposable-class enumeration.
const CENSUS_CAP: u128 = 1 << 21;
/// Largest extension-class count enumerated for a single ordered pair.
const EXT_CLASS_CAP: u128 = 1 << 12;
/// Largest finite group order enumerated element-by-element for verdicts.
const ORDER_CAP: u128 = 1 << 12;
/// Cap on the submodule count per module in the oracle route.
const SUBMODULE_CAP: usize = 1 << 12;

/// A finitely presented abelian group: free on `labels`, modulo the integer
/// row lattice of `relations`, reduced by Smith normal form.
///
/// Canonical coordinates are `torsion.len()` entries (each reduced modulo its
/// invariant factor) followed by `free_rank` unconstrained entries.
/// `generator_images[i]` is the canonical image of generator `i`, and
/// `lifts[s]` is a generator-coordinate vector reducing to the `s`-th
/// canonical unit, so elements round-trip between the two coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroupPresentation {
    pub labels: Vec<String>,
    pub relations: Vec<Vec<i64>>,
    /// Invariant factors > 1 in divisibility order.
    pub torsion: Vec<u64>,
    pub free_rank: usize,
    pub generator_images: Vec<Vec<i64>>,
    pub lifts: Vec<Vec<i64>>,
    /// Qualifications of the computation (truncated scans, sampling).
    pub caveats: Vec<String>,
}

fn big_row_to_i64(row: &[BigInt]) -> Vec<i64> {
    row.iter()
        .map(|b| b.to_i64().expect("presentation coordinate exceeds machine range"))
        .collect()
}

/// The relation lattice as an integer matrix with `ngens` columns; an empty
/// relation list is encoded as a single zero row so the lattice is `{0}`.
fn relation_matrix(ngens: usize, relations: &[Vec<i64>]) -> IntMatrix {
    if relations.is_empty() {
        IntMatrix::from_i64_rows(&[vec![0; ngens]])
    } else {
        IntMatrix::from_i64_rows(relations)
    }
}

impl AbelianGroupPresentation {
    /// Present the quotient of the free group on `labels` by the row lattice
    /// of `relations`.
    pub fn from_relations(labels: Vec<String>, relations: Vec<Vec<i64>>) -> Self {
        let ngens = labels.len();
        for r in &relations {
            debug_assert_eq!(r.len(), ngens, "relation width mismatch");
        }
        if ngens == 0 {
            return AbelianGroupPresentation {
                labels,
                relations: Vec::new(),
                torsion: Vec::new(),
                free_rank: 0,
                generator_images: Vec::new(),
                lifts: Vec::new(),
                caveats: Vec::new(),
            };
        }
        let rel = relation_matrix(ngens, &relations);
        let cok = rel.cokernel_presentation();
        let snf = rel.snf();
        let vinv = snf.v.inverse_unimodular();
        let torsion: Vec<u64> = cok
            .factors
            .iter()
            .map(|f| f.to_u64().expect("invariant factor exceeds machine range"))
            .collect();
        let skip = snf.rank - torsion.len();
        let mut lifts = Vec::with_capacity(torsion.len() + cok.free_rank);
        for t in 0..torsion.len() {
            lifts.push(big_row_to_i64(&vinv.row(skip + t)));
        }
        for k in snf.rank..ngens {
            lifts.push(big_row_to_i64(&vinv.row(k)));
        }
        AbelianGroupPresentation {
            labels,
            relations,
            torsion,
            free_rank: cok.free_rank,
            generator_images: cok.gen_images.iter().map(|r| big_row_to_i64(r)).collect(),
            lifts,
            caveats: Vec::new(),
        }
    }

    /// Number of canonical coordinates.
    fn width(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Group order, when finite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        let mut n: u128 = 1;
        for &d in &self.torsion {
            n = n.saturating_mul(d as u128);
        }
        Some(n)
    }

    /// Short isomorphism-type string, e.g. `Z^2 x Z/4` or `0`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" x ")
        }
    }

    /// Canonical coordinates of a generator combination.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        debug_assert_eq!(v.len(), self.labels.len(), "coordinate width mismatch");
        let width = self.width();
        let mut acc = vec![0i128; width];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for s in 0..width {
                acc[s] += c as i128 * self.generator_images[i][s] as i128;
            }
        }
        for (t, &d) in self.torsion.iter().enumerate() {
            acc[t] = acc[t].rem_euclid(d as i128);
        }
        acc.iter().map(|&x| i64::try_from(x).expect("canonical coordinate overflow")).collect()
    }

    /// A generator combination reducing to the given canonical element.
    pub fn lift(&self, e: &[i64]) -> Vec<i64> {
        debug_assert_eq!(e.len(), self.width(), "canonical width mismatch");
        let ngens = self.labels.len();
        let mut acc = vec![0i128; ngens];
        for (s, &c) in e.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for g in 0..ngens {
                acc[g] += c as i128 * self.lifts[s][g] as i128;
            }
        }
        acc.iter().map(|&x| i64::try_from(x).expect("lift coordinate overflow")).collect()
    }

    /// All elements in canonical coordinates, when the group is finite and
    /// small enough to enumerate.
    pub fn elements(&self) -> Option<Vec<Vec<i64>>> {
        if self.free_rank > 0 {
            return None;
        }
        let order = self.order()?;
        if order > ORDER_CAP {
            return None;
        }
        let width = self.torsion.len();
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; width];
        loop {
            out.push(cur.clone());
            let mut k = 0;
            loop {
                if k == width {
                    return Some(out);
                }
                cur[k] += 1;
                if (cur[k] as u64) < self.torsion[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }
}

/// A group presentation together with the modules representing its
/// generators, so classes of further modules can be computed against it.
#[derive(Clone, Debug)]
pub struct StableClasses {
    pub group: AbelianGroupPresentation,
    pub generators: Vec<Module>,
    /// Whether projective factors are identified with zero by convention
    /// (true for stable quotients, false for split groups).
    pub projectives_vanish: bool,
}

impl StableClasses {
    /// Generator coordinates of the class of `m`.
    pub fn class_of(&self, m: &Module) -> Result<Vec<i64>> {
        class_in_generators(m, &self.generators, self.projectives_vanish)?.ok_or_else(|| {
            Error::Input("module has an indecomposable factor outside the generating set".into())
        })
    }
}

/// Decompose `m` and express it as a non-negative combination of `gens`.
/// Projective factors count as zero when `projectives_vanish`; any other
/// unmatched factor yields `None`.
fn class_in_generators(
    m: &Module,
    gens: &[Module],
    projectives_vanish: bool,
) -> Result<Option<Vec<i64>>> {
    let mut coords = vec![0i64; gens.len()];
    if m.dim == 0 {
        return Ok(Some(coords));
    }
    let dec = krull_schmidt(m, KS_CAP)?;
    'factors: for (factor, mult) in &dec.summands {
        for (i, g) in gens.iter().enumerate() {
            if g.dim == factor.dim && find_isomorphism(factor, g, ISO_CAP)?.is_some() {
                coords[i] += *mult as i64;
                continue 'factors;
            }
        }
        if projectives_vanish && is_projective(factor)? {
            continue;
        }
        return Ok(None);
    }
    Ok(Some(coords))
}

/// An additive map between presented groups, given by its matrix on
/// generators (row `i` = image of source generator `i`), together with a
/// well-definedness certificate: every source relation must map into the
/// target relation lattice, and the first violation is kept as a witness.
#[derive(Clone, Debug, Serialize)]
pub struct GroupMap {
    pub label: String,
    pub source: AbelianGroupPresentation,
    pub target: AbelianGroupPresentation,
    pub matrix: Vec<Vec<i64>>,
    pub well_defined: bool,
    /// A source relation whose image escapes the target lattice.
    pub witness: Option<Vec<i64>>,
}

fn mat_vec(v: &[i64], rows: &[Vec<i64>], ncols: usize) -> Vec<i64> {
    let mut acc = vec![0i128; ncols];
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for s in 0..ncols {
            acc[s] += c as i128 * rows[i][s] as i128;
        }
    }
    acc.iter().map(|&x| i64::try_from(x).expect("map image overflow")).collect()
}

impl GroupMap {
    /// Build the map and run the relation-image membership check.
    pub fn new(
        label: &str,
        source: AbelianGroupPresentation,
        target: AbelianGroupPresentation,
        matrix: Vec<Vec<i64>>,
    ) -> GroupMap {
        debug_assert_eq!(matrix.len(), source.labels.len(), "matrix row count mismatch");
        let tcols = target.labels.len();
        let mut well_defined = true;
        let mut witness = None;
        if tcols == 0 {
            // Trivial target presentation: every image is zero.
        } else {
            let lattice = relation_matrix(tcols, &target.relations);
            for r in &source.relations {
                let img = mat_vec(r, &matrix, tcols);
                let x: Vec<BigInt> = img.iter().map(|&c| BigInt::from(c)).collect();
                if lattice.rowspan_membership(&x).is_none() {
                    well_defined = false;
                    witness = Some(r.clone());
                    break;
                }
            }
        }
        GroupMap { label: label.to_string(), source, target, matrix, well_defined, witness }
    }

    /// Image of a canonical source element, in canonical target coordinates.
    pub fn apply(&self, e: &[i64]) -> Vec<i64> {
        let gen_coords = self.source.lift(e);
        let img = mat_vec(&gen_coords, &self.matrix, self.target.labels.len());
        self.target.reduce(&img)
    }
}

fn gen_labels(prefix: &str, mods: &[Module]) -> Vec<String> {
    mods.iter().enumerate().map(|(i, m)| format!("{prefix}{i} (dim {})", m.dim)).collect()
}

/// `G₀`: free on the simple modules.
pub fn g0(alg: &Arc<Algebra>) -> Result<StableClasses> {
    let sims = simples(alg)?;
    let labels = gen_labels("S", &sims);
    Ok(StableClasses {
        group: AbelianGroupPresentation::from_relations(labels, Vec::new()),
        generators: sims,
        projectives_vanish: false,
    })
}

/// Composition-factor multiplicities of `m`, indexed like the simples of its
/// coefficient algebra (the generator order of [`g0`]).
pub fn class_in_g0(m: &Module) -> Result<Vec<i64>> {
    let sims = simples(&m.alg)?;
    let mut counts = vec![0i64; sims.len()];
    let mut cur = m.clone();
    while cur.dim > 0 {
        let (layer, proj) = top(&cur);
        let dec = krull_schmidt(&layer, KS_CAP)?;
        'factors: for (factor, mult) in &dec.summands {
            for (i, s) in sims.iter().enumerate() {
                if s.dim == factor.dim && find_isomorphism(factor, s, ISO_CAP)?.is_some() {
                    counts[i] += *mult as i64;
                    continue 'factors;
                }
            }
            return Err(Error::Input(
                "semisimple layer has a factor that is not among the simple modules".into(),
            ));
        }
        cur = kernel(&proj).0;
    }
    Ok(counts)
}

/// `K₀`: free on the indecomposable projectives (factors of the regular
/// module).
pub fn k0(alg: &Arc<Algebra>) -> Result<StableClasses> {
    let dec = krull_schmidt(&Module::regular(alg), KS_CAP)?;
    let gens: Vec<Module> = dec.summands.iter().map(|(m, _)| m.clone()).collect();
    let labels = gen_labels("P", &gens);
    Ok(StableClasses {
        group: AbelianGroupPresentation::from_relations(labels, Vec::new()),
        generators: gens,
        projectives_vanish: false,
    })
}

/// The Cartan map `K₀ → G₀` sending a projective to its composition factors.
pub fn k0_to_g0(alg: &Arc<Algebra>) -> Result<GroupMap> {
    let src = k0(alg)?;
    let tgt = g0(alg)?;
    let mut rows = Vec::with_capacity(src.generators.len());
    for pmod in &src.generators {
        rows.push(class_in_g0(pmod)?);
    }
    Ok(GroupMap::new("composition factors of projectives", src.group, tgt.group, rows))
}

/// Caveats qualifying a census-backed presentation.
fn census_caveats(census: &Census) -> Vec<String> {
    let mut out = Vec::new();
    if !census.complete {
        out.push(
            "IncompleteEnumeration: the isomorphism-class scan was truncated by its budget"
                .to_string(),
        );
    }
    if census.max_dim < census.alg.dim {
        out.push(format!(
            "IncompleteEnumeration: indecomposables of dimension above {} (if any) are not represented",
            census.max_dim
        ));
    }
    out
}

/// The split representation group: free on the indecomposables of dimension
/// at most `max_dim`.
pub fn rep_split(alg: &Arc<Algebra>, max_dim: usize) -> Result<StableClasses> {
    let census = enumerate_indecomposables(alg, max_dim, CENSUS_CAP)?;
    let labels = gen_labels("M", &census.modules);
    let mut group = AbelianGroupPresentation::from_relations(labels, Vec::new());
    group.caveats = census_caveats(&census);
    Ok(StableClasses { group, generators: census.modules, projectives_vanish: false })
}

/// The split stable representation group: free on the non-projective
/// indecomposables of dimension at most `max_dim`.
pub fn stabrep_split(alg: &Arc<Algebra>, max_dim: usize) -> Result<StableClasses> {
    let census = enumerate_indecomposables(alg, max_dim, CENSUS_CAP)?;
    let caveats = census_caveats(&census);
    let (gens, labels) = stable_generators(&census)?;
    let mut group = AbelianGroupPresentation::from_relations(labels, Vec::new());
    group.caveats = caveats;
    Ok(StableClasses { group, generators: gens, projectives_vanish: true })
}

fn stable_generators(census: &Census) -> Result<(Vec<Module>, Vec<String>)> {
    let mut gens = Vec::new();
    for m in &census.modules {
        if !is_projective(m)? {
            gens.push(m.clone());
        }
    }
    let labels = gen_labels("M", &gens);
    Ok((gens, labels))
}

fn push_row(rows: &mut Vec<Vec<i64>>, row: Vec<i64>) {
    if row.iter().any(|&c| c != 0) && !rows.contains(&row) {
        rows.push(row);
    }
}

/// The relation `[sub] + [quo] − [mid]` of a short exact sequence, expressed
/// in stable generator coordinates; `None` when a non-projective factor of
/// one of the three terms is not among the generators.
fn stable_relation(
    sub: &Module,
    mid: &Module,
    quo: &Module,
    gens: &[Module],
) -> Result<Option<Vec<i64>>> {
    let sub_c = class_in_generators(sub, gens, true)?;
    let mid_c = class_in_generators(mid, gens, true)?;
    let quo_c = class_in_generators(quo, gens, true)?;
    let (Some(sub_c), Some(mid_c), Some(quo_c)) = (sub_c, mid_c, quo_c) else {
        return Ok(None);
    };
    let row: Vec<i64> =
        (0..gens.len()).map(|i| sub_c[i] + quo_c[i] - mid_c[i]).collect();
    Ok(Some(row))
}

/// Base-`p` digits of `idx`, least significant first, padded to `len`.
fn digits(p: u64, len: usize, idx: u128) -> Vec<u64> {
    let mut out = vec![0u64; len];
    let mut rest = idx;
    for slot in out.iter_mut() {
        *slot = (rest % p as u128) as u64;
        rest /= p as u128;
    }
    out
}

/// The stable class group: the split stable representation group modulo
/// `[L] + [N] − [Y]` for every extension `0 → L → Y → N → 0` between
/// enumerated indecomposables, with middles decomposed and projective factors
/// contributing zero.
pub fn gst0(alg: &Arc<Algebra>, max_dim: usize) -> Result<StableClasses> {
    let census = enumerate_indecomposables(alg, max_dim, CENSUS_CAP)?;
    let mut caveats = census_caveats(&census);
    let (gens, labels) = stable_generators(&census)?;
    let p = alg.p;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut dropped = 0usize;
    for l in &census.modules {
        for n in &census.modules {
            let (d, _) = ext1(n, l)?;
            if d == 0 {
                continue;
            }
            let classes = (p as u128)
                .checked_pow(d as u32)
                .ok_or_else(|| Error::CapExceeded("extension-class count overflow".into()))?;
            if classes > EXT_CLASS_CAP {
                return Err(Error::CapExceeded(format!(
                    "{p}^{d} extension classes for a single pair of indecomposables"
                )));
            }
            for idx in 1..classes {
                let ext = extension_from_class(n, l, &digits(p, d, idx))?;
                let mid = ext.ses.f.target.clone();
                match stable_relation(l, &mid, n, &gens)? {
                    Some(row) => push_row(&mut rows, row),
                    None => dropped += 1,
                }
            }
        }
    }
    if dropped > 0 {
        caveats.push(format!(
            "IncompleteEnumeration: {dropped} extension relations dropped (a middle factor fell outside the enumerated classes)"
        ));
    }
    let mut group = AbelianGroupPresentation::from_relations(labels, rows);
    group.caveats = caveats;
    Ok(StableClasses { group, generators: gens, projectives_vanish: true })
}

/// Direct sums of enumerated indecomposables with total dimension at most
/// `max_dim`, in deterministic multiset order.
fn sum_universe(census: &[Module], max_dim: usize) -> Result<Vec<Module>> {
    fn go(
        census: &[Module],
        start: usize,
        dim_left: usize,
        combo: &mut Vec<usize>,
        out: &mut Vec<Module>,
    ) -> Result<()> {
        for i in start..census.len() {
            let d = census[i].dim;
            if d == 0 || d > dim_left {
                continue;
            }
            combo.push(i);
            let parts: Vec<&Module> = combo.iter().map(|&j| &census[j]).collect();
            let m = if parts.len() == 1 {
                parts[0].clone()
            } else {
                direct_sum(&parts)?.0
            };
            out.push(m);
            go(census, i, dim_left - d, combo, out)?;
            combo.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(census, 0, max_dim, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// Independent route to the stable class group: relations are read off the
/// full submodule lattice of every module of dimension at most `max_dim`
/// (each submodule yields the sequence sub → module → quotient), instead of
/// being generated from extension classes.  Used to cross-check [`gst0`].
pub fn gst0_via_submodules(alg: &Arc<Algebra>, max_dim: usize) -> Result<StableClasses> {
    let census = enumerate_indecomposables(alg, max_dim, CENSUS_CAP)?;
    let mut caveats = census_caveats(&census);
    let (gens, labels) = stable_generators(&census)?;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut dropped = 0usize;
    for y in sum_universe(&census.modules, max_dim)? {
        for basis in submodules(&y, SUBMODULE_CAP)? {
            if basis.is_empty() || basis.len() == y.dim {
                continue;
            }
            let (sub, incl) = submodule_from_rows(&y, &basis);
            let (quo, _) = cokernel(&incl);
            match stable_relation(&sub, &y, &quo, &gens)? {
                Some(row) => push_row(&mut rows, row),
                None => dropped += 1,
            }
        }
    }
    if dropped > 0 {
        caveats.push(format!(
            "IncompleteEnumeration: {dropped} lattice relations dropped (a factor fell outside the enumerated classes)"
        ));
    }
    let mut group = AbelianGroupPresentation::from_relations(labels, rows);
    group.caveats = caveats;
    Ok(StableClasses { group, generators: gens, projectives_vanish: true })
}

/// Enumerate (or sample, beyond `budget`) the homomorphisms between two
/// modules; the boolean reports whether sampling was used.
fn hom_scan(m: &Module, n: &Module, budget: u64, seed: u64) -> Result<(Vec<ModuleHom>, bool)> {
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok((vec![ModuleHom::zero(m, n)], false));
    }
    let p = m.alg.p;
    let total = (p as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    let from_coords = |coords: &[u64]| -> Result<ModuleHom> {
        let mut mat = FpMatrix::zeros(p, m.dim, n.dim);
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                mat = mat.add(&basis[i].scale(c))?;
            }
        }
        ModuleHom::new(m.clone(), n.clone(), mat)
    };
    if total <= budget as u128 {
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            out.push(from_coords(&digits(p, basis.len(), idx))?);
        }
        Ok((out, false))
    } else {
        let mut rng = SplitMix64::new(seed);
        let mut out = Vec::with_capacity(budget as usize);
        for _ in 0..budget {
            let idx = rng.below_u128(total);
            out.push(from_coords(&digits(p, basis.len(), idx))?);
        }
        Ok((out, true))
    }
}

/// Degree-zero class group of a cofibration/weak-equivalence structure over a
/// finite universe of modules: free on the indecomposable factors of the
/// universe, modulo `[Y] − [X] − [Y/X]` for every discovered cofibration
/// `X ↪ Y` between universe modules, `[M] − [N]` for every weakly equivalent
/// pair, and `[M]` for every weakly contractible `M`.  Cokernels must
/// decompose into universe factors; otherwise the universe is not closed and
/// the computation aborts.
pub fn waldhausen_k0(
    spec: &WaldhausenSpec,
    universe: &[Module],
    budget: u64,
    seed: u64,
) -> Result<StableClasses> {
    let mut gens: Vec<Module> = Vec::new();
    for m in universe {
        if !m.alg.same_structure(&spec.alg) {
            return Err(Error::AlgebraMismatch(
                "universe module is not over the structure's algebra".into(),
            ));
        }
        if m.dim == 0 {
            continue;
        }
        for (factor, _) in krull_schmidt(m, KS_CAP)?.summands {
            let mut known = false;
            for g in &gens {
                if g.dim == factor.dim && find_isomorphism(&factor, g, ISO_CAP)?.is_some() {
                    known = true;
                    break;
                }
            }
            if !known {
                gens.push(factor);
            }
        }
    }
    gens.sort_by_key(|m| m.dim);
    let labels = gen_labels("G", &gens);
    let express = |m: &Module| -> Result<Vec<i64>> {
        class_in_generators(m, &gens, false)?.ok_or_else(|| {
            Error::ClosureEscape(format!(
                "a Krull-Schmidt factor of a dimension-{} module is outside the universe",
                m.dim
            ))
        })
    };

    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut sampled = false;
    let zero = Module::zero(&spec.alg);

    // Weakly contractible objects.
    for m in universe {
        if m.dim == 0 {
            continue;
        }
        let collapse = ModuleHom::zero(m, &zero);
        if is_class_stable_equivalence(&collapse, &spec.we)?.is_some() {
            push_row(&mut rows, express(m)?);
        }
    }

    // Weak-equivalence pairs and cofibration sequences.
    for (i, x) in universe.iter().enumerate() {
        for (j, y) in universe.iter().enumerate() {
            if x.dim == 0 && y.dim == 0 {
                continue;
            }
            let pair_seed =
                seed.wrapping_add(((i * universe.len() + j) as u64).wrapping_mul(0x9E3779B97F4A7C15));
            let (homs, was_sampled) = hom_scan(x, y, budget, pair_seed)?;
            sampled |= was_sampled;
            let mut weq_found = i == j;
            for u in &homs {
                if !weq_found && is_class_stable_equivalence(u, &spec.we)?.is_some() {
                    let xc = express(x)?;
                    let yc = express(y)?;
                    let row: Vec<i64> = (0..gens.len()).map(|k| xc[k] - yc[k]).collect();
                    push_row(&mut rows, row);
                    weq_found = true;
                }
                if is_class_mono(u, &spec.cof)? {
                    let (q, _) = cokernel(u);
                    let xc = express(x)?;
                    let yc = express(y)?;
                    let qc = express(&q)?;
                    let row: Vec<i64> =
                        (0..gens.len()).map(|k| yc[k] - xc[k] - qc[k]).collect();
                    push_row(&mut rows, row);
                }
            }
        }
    }

    let mut group = AbelianGroupPresentation::from_relations(labels, rows);
    if sampled {
        group.caveats.push(format!(
            "sampled hom scan (budget {budget}, seed {seed}); relation discovery may be incomplete"
        ));
    }
    Ok(StableClasses { group, generators: gens, projectives_vanish: false })
}

/// The group map induced by a module assignment on generators, with its
/// well-definedness certificate.  Each generator image is decomposed and
/// expressed in the target's generators.
pub fn induced_map(
    label: &str,
    assign: &dyn Fn(&Module) -> Result<Module>,
    source: &StableClasses,
    target: &StableClasses,
) -> Result<GroupMap> {
    let mut rows = Vec::with_capacity(source.generators.len());
    for g in &source.generators {
        let img = assign(g)?;
        rows.push(target.class_of(&img)?);
    }
    Ok(GroupMap::new(label, source.group.clone(), target.group.clone(), rows))
}

/// Side-by-side fiber data for one module over the middle algebra: whether
/// its base change is projective over the quotient, and whether it is
/// isomorphic to a module induced up from the subalgebra.  Reported as data;
/// the two conditions need not agree.
#[derive(Clone, Debug, Serialize)]
pub struct FiberComparison {
    pub module: String,
    pub projective_base_change: bool,
    pub induced_from_subalgebra: bool,
}

/// The comparison section computed for an alternative cofibration class.
#[derive(Clone, Debug, Serialize)]
pub struct LesSection {
    pub middle: AbelianGroupPresentation,
    pub alpha: Option<GroupMap>,
    pub beta: Option<GroupMap>,
    pub exact_at_b: Option<CheckItem>,
    pub surjective_at_c: Option<CheckItem>,
}

/// Full degree-zero report for a localization tail
/// `stable classes of A → stable classes of B → stable classes of C → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub subject: String,
    pub hypotheses: Vec<CheckItem>,
    pub hypotheses_pass: bool,
    pub group_a: AbelianGroupPresentation,
    pub group_b: AbelianGroupPresentation,
    pub group_c: AbelianGroupPresentation,
    /// Induction along the subalgebra embedding, on the stable class groups.
    pub alpha: Option<GroupMap>,
    /// Base change to the quotient, on the stable class groups (reported even
    /// when its certificate fails).
    pub beta: Option<GroupMap>,
    /// Class group of the base-change-exact cofibration structure on the
    /// middle algebra, through which the certified comparison runs.
    pub middle_pullback: Option<AbelianGroupPresentation>,
    pub alpha_pullback: Option<GroupMap>,
    pub beta_pullback: Option<GroupMap>,
    pub exact_at_b: Option<CheckItem>,
    pub surjective_at_c: Option<CheckItem>,
    /// The same comparison with all monomorphisms as cofibrations.
    pub variant_all_monos: Option<LesSection>,
    pub fiber_comparison: Vec<FiberComparison>,
    pub caveats: Vec<String>,
}

/// Run an induced-map construction, downgrading class-expression failures to
/// a caveat instead of aborting the whole report.
fn try_induced_map(
    label: &str,
    assign: &dyn Fn(&Module) -> Result<Module>,
    source: &StableClasses,
    target: &StableClasses,
    caveats: &mut Vec<String>,
) -> Result<Option<GroupMap>> {
    match induced_map(label, assign, source, target) {
        Ok(map) => Ok(Some(map)),
        Err(Error::Input(msg)) | Err(Error::ClosureEscape(msg)) => {
            caveats.push(format!("{label}: skipped ({msg})"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

const EXACT_LABEL: &str = "kernel of the quotient comparison equals the image of induction";
const SURJ_LABEL: &str = "quotient comparison is surjective";

/// Element-by-element exactness and surjectivity verdicts for
/// `source → middle → target`, when the groups are small enough to
/// enumerate.
fn exactness_verdicts(
    source: &AbelianGroupPresentation,
    alpha: Option<&GroupMap>,
    middle: &AbelianGroupPresentation,
    beta: Option<&GroupMap>,
    target: &AbelianGroupPresentation,
    caveats: &mut Vec<String>,
) -> (Option<CheckItem>, Option<CheckItem>) {
    let Some(beta) = beta else {
        caveats.push("quotient comparison unavailable; exactness verdicts skipped".into());
        return (None, None);
    };
    if !beta.well_defined {
        let note = format!(
            "the quotient comparison is not well-defined; witness relation {:?}",
            beta.witness.clone().unwrap_or_default()
        );
        return (
            Some(CheckItem::fail(EXACT_LABEL, note.clone())),
            Some(CheckItem::fail(SURJ_LABEL, note)),
        );
    }
    let Some(middle_elems) = middle.elements() else {
        caveats.push(
            "middle group too large or infinite for element enumeration; verdicts skipped".into(),
        );
        return (None, None);
    };
    let kernel_set: Vec<Vec<i64>> = middle_elems
        .iter()
        .filter(|e| beta.apply(e).iter().all(|&c| c == 0))
        .cloned()
        .collect();

    let surjective = match target.elements() {
        Some(target_elems) => {
            let image: HashSet<Vec<i64>> = middle_elems.iter().map(|e| beta.apply(e)).collect();
            match target_elems.iter().find(|e| !image.contains(*e)) {
                None => Some(CheckItem::pass_with_note(
                    SURJ_LABEL,
                    format!("image covers all {} elements", target_elems.len()),
                )),
                Some(missed) => Some(CheckItem::fail(
                    SURJ_LABEL,
                    format!("element {missed:?} of the quotient group has no preimage"),
                )),
            }
        }
        None => {
            caveats.push(
                "target group too large or infinite for element enumeration; surjectivity verdict skipped"
                    .into(),
            );
            None
        }
    };

    let exact = match alpha {
        None => {
            caveats.push("induction map unavailable; exactness verdict skipped".into());
            None
        }
        Some(alpha) if !alpha.well_defined => Some(CheckItem::fail(
            EXACT_LABEL,
            format!(
                "the induction map is not well-defined; witness relation {:?}",
                alpha.witness.clone().unwrap_or_default()
            ),
        )),
        Some(alpha) => match source.elements() {
            None => {
                caveats.push(
                    "source group too large or infinite for element enumeration; exactness verdict skipped"
                        .into(),
                );
                None
            }
            Some(source_elems) => {
                let image: HashSet<Vec<i64>> =
                    source_elems.iter().map(|e| alpha.apply(e)).collect();
                let kset: HashSet<Vec<i64>> = kernel_set.iter().cloned().collect();
                let in_kernel_not_image = kernel_set.iter().find(|e| !image.contains(*e));
                let in_image_not_kernel =
                    source_elems.iter().map(|e| alpha.apply(e)).find(|e| !kset.contains(e));
                match (in_kernel_not_image, in_image_not_kernel) {
                    (None, None) => Some(CheckItem::pass_with_note(
                        EXACT_LABEL,
                        format!(
                            "kernel and image coincide as sets of {} elements",
                            kernel_set.len()
                        ),
                    )),
                    (Some(e), _) => Some(CheckItem::fail(
                        EXACT_LABEL,
                        format!("element {e:?} is in the kernel but not in the image"),
                    )),
                    (_, Some(e)) => Some(CheckItem::fail(
                        EXACT_LABEL,
                        format!("element {e:?} is in the image but not in the kernel"),
                    )),
                }
            }
        },
    };
    (exact, surjective)
}

/// Degree-zero exactness checker for a localization tail.  `iota` embeds a
/// subalgebra into the middle algebra, `phi` maps the middle algebra onto the
/// quotient.  Hypotheses are verified and reported, never assumed; the
/// certified comparison runs through the class group of the
/// base-change-exact cofibration structure, and the all-monomorphisms variant
/// is computed side by side.
pub fn les_tail_check(
    iota: &AlgebraMorphism,
    phi: &AlgebraMorphism,
    max_dim: usize,
    budget: u64,
    seed: u64,
) -> Result<ExactnessReport> {
    if !iota.target.same_structure(&phi.source) {
        return Err(Error::Input(
            "the subalgebra embedding and the quotient map do not share the middle algebra".into(),
        ));
    }
    let a = iota.source.clone();
    let b = iota.target.clone();
    let c = phi.target.clone();
    let mut caveats: Vec<String> = Vec::new();
    let mut hypotheses: Vec<CheckItem> = Vec::new();

    let free_basis = is_free_over_subalgebra(&b, iota)?;
    hypotheses.push(match &free_basis {
        Some(basis) => CheckItem::pass_with_note(
            "middle algebra is free over the subalgebra",
            format!("free basis of rank {}", basis.len()),
        ),
        None => CheckItem::fail(
            "middle algebra is free over the subalgebra",
            "no family of subalgebra multiples spans the middle algebra".into(),
        ),
    });

    let phi_onto = phi.matrix.rank() == c.dim;
    hypotheses.push(if phi_onto {
        CheckItem::pass("quotient map is surjective")
    } else {
        CheckItem::fail(
            "quotient map is surjective",
            "the image does not span the quotient algebra".into(),
        )
    });

    let ker = kernel_ideal(phi);
    let rad = jacobson_radical(&b);
    let ker_in_rad = ker.basis.iter().all(|v| in_row_span(b.p, &rad.basis, v));
    hypotheses.push(if ker_in_rad {
        CheckItem::pass("kernel of the quotient map lies in the radical")
    } else {
        CheckItem::fail(
            "kernel of the quotient map lies in the radical",
            "a kernel element is a unit or has a semisimple component".into(),
        )
    });

    let b_qf = check_quasi_frobenius(&b)?;
    hypotheses.push(if b_qf {
        CheckItem::pass("middle algebra is quasi-Frobenius")
    } else {
        CheckItem::fail(
            "middle algebra is quasi-Frobenius",
            "the regular module is not injective".into(),
        )
    });
    let c_qf = check_quasi_frobenius(&c)?;
    hypotheses.push(if c_qf {
        CheckItem::pass("quotient algebra is quasi-Frobenius")
    } else {
        CheckItem::fail(
            "quotient algebra is quasi-Frobenius",
            "the regular module is not injective".into(),
        )
    });

    let dec_c = krull_schmidt(&Module::regular(&c), KS_CAP)?;
    hypotheses.push(if dec_c.summands.len() == 1 {
        CheckItem::pass("projective modules over the quotient are free")
    } else {
        CheckItem::fail(
            "projective modules over the quotient are free",
            format!(
                "the regular module has {} distinct indecomposable factors",
                dec_c.summands.len()
            ),
        )
    });

    let census_b = enumerate_indecomposables(&b, max_dim, CENSUS_CAP)?;
    caveats.extend(census_caveats(&census_b));
    let rqf = check_relative_qf(phi, &census_b.modules)?;
    hypotheses.push(if rqf.passed {
        CheckItem::pass_with_note(
            "relative cones exist on the enumerated universe",
            format!("{} modules checked", census_b.modules.len()),
        )
    } else {
        CheckItem::fail(
            "relative cones exist on the enumerated universe",
            "a module admits no embedding with projective base change into the universe".into(),
        )
    });
    caveats.extend(rqf.caveats.iter().cloned());

    let hypotheses_pass = hypotheses.iter().all(|h| h.passed);

    let ga = gst0(&a, max_dim)?;
    let gb = gst0(&b, max_dim)?;
    let gc = gst0(&c, max_dim)?;

    let alpha = match &free_basis {
        Some(basis) => try_induced_map(
            "induction along the subalgebra embedding",
            &|n| induce(n, iota, basis),
            &ga,
            &gb,
            &mut caveats,
        )?,
        None => None,
    };
    let beta = if phi_onto {
        try_induced_map(
            "base change to the quotient algebra",
            &|m| Ok(base_change(m, phi)?.0),
            &gb,
            &gc,
            &mut caveats,
        )?
    } else {
        None
    };

    let mut middle_pullback = None;
    let mut alpha_pullback = None;
    let mut beta_pullback = None;
    let mut exact_at_b = None;
    let mut surjective_at_c = None;
    let mut variant_all_monos = None;

    if hypotheses_pass {
        let spec_pb = WaldhausenSpec::new(
            b.clone(),
            AllowableClass::Pullback(phi.clone(), Box::new(AllowableClass::All)),
            AllowableClass::Pushforward(phi.clone(), Box::new(AllowableClass::All)),
        )?;
        let gbp = waldhausen_k0(&spec_pb, &census_b.modules, budget, seed)?;
        caveats.extend(gbp.group.caveats.iter().cloned());
        let ap = match &free_basis {
            Some(basis) => try_induced_map(
                "induction into the base-change-exact structure",
                &|n| induce(n, iota, basis),
                &ga,
                &gbp,
                &mut caveats,
            )?,
            None => None,
        };
        let bp = try_induced_map(
            "base change from the base-change-exact structure",
            &|m| Ok(base_change(m, phi)?.0),
            &gbp,
            &gc,
            &mut caveats,
        )?;
        let (exact, surj) = exactness_verdicts(
            &ga.group,
            ap.as_ref(),
            &gbp.group,
            bp.as_ref(),
            &gc.group,
            &mut caveats,
        );
        exact_at_b = exact;
        surjective_at_c = surj;
        middle_pullback = Some(gbp.group.clone());
        alpha_pullback = ap;
        beta_pullback = bp;

        let spec_all = WaldhausenSpec::new(
            b.clone(),
            AllowableClass::All,
            AllowableClass::Pushforward(phi.clone(), Box::new(AllowableClass::All)),
        )?;
        let gba = waldhausen_k0(&spec_all, &census_b.modules, budget, seed)?;
        let mut variant_caveats: Vec<String> = gba.group.caveats.clone();
        let va = match &free_basis {
            Some(basis) => try_induced_map(
                "induction into the all-monomorphisms structure",
                &|n| induce(n, iota, basis),
                &ga,
                &gba,
                &mut variant_caveats,
            )?,
            None => None,
        };
        let vb = try_induced_map(
            "base change from the all-monomorphisms structure",
            &|m| Ok(base_change(m, phi)?.0),
            &gba,
            &gc,
            &mut variant_caveats,
        )?;
        let (vexact, vsurj) = exactness_verdicts(
            &ga.group,
            va.as_ref(),
            &gba.group,
            vb.as_ref(),
            &gc.group,
            &mut variant_caveats,
        );
        caveats.extend(variant_caveats);
        if let Some(mp) = &middle_pullback {
            if gba.group.torsion != mp.torsion || gba.group.free_rank != mp.free_rank {
                caveats.push(format!(
                    "divergence: the all-monomorphisms structure presents {} at degree zero while the base-change-exact structure presents {}; the two constructions disagree on this input",
                    gba.group.describe(),
                    mp.describe()
                ));
            }
        }
        variant_all_monos = Some(LesSection {
            middle: gba.group.clone(),
            alpha: va,
            beta: vb,
            exact_at_b: vexact,
            surjective_at_c: vsurj,
        });
    }

    let mut fiber_comparison = Vec::new();
    if let Some(basis) = &free_basis {
        let census_a = enumerate_indecomposables(&a, max_dim, CENSUS_CAP)?;
        let r = basis.len();
        for (i, m) in census_b.modules.iter().enumerate() {
            if m.dim == 0 {
                continue;
            }
            let projective_base_change = is_projective(&base_change(m, phi)?.0)?;
            let mut induced_from_subalgebra = false;
            for n in &census_a.modules {
                if n.dim == 0 || n.dim * r != m.dim {
                    continue;
                }
                let up = induce(n, iota, basis)?;
                if find_isomorphism(&up, m, ISO_CAP)?.is_some() {
                    induced_from_subalgebra = true;
                    break;
                }
            }
            fiber_comparison.push(FiberComparison {
                module: format!("B{i} (dim {})", m.dim),
                projective_base_change,
                induced_from_subalgebra,
            });
        }
    }

    Ok(ExactnessReport {
        subject: format!(
            "degree-zero tail: dim-{} subalgebra -> dim-{} algebra -> dim-{} quotient",
            a.dim, b.dim, c.dim
        ),
        hypotheses,
        hypotheses_pass,
        group_a: ga.group,
        group_b: gb.group,
        group_c: gc.group,
        alpha,
        beta,
        middle_pullback,
        alpha_pullback,
        beta_pullback,
        exact_at_b,
        surjective_at_c,
        variant_all_monos,
        fiber_comparison,
        caveats,
    })
}

/// Run the tail checker on every stage of a tower; stages are independent
/// and evaluated in parallel.
pub fn tower_check(
    stages: &[(AlgebraMorphism, AlgebraMorphism)],
    max_dim: usize,
    budget: u64,
    seed: u64,
) -> Result<Vec<ExactnessReport>> {
    par_map(stages, |(iota, phi)| les_tail_check(iota, phi, max_dim, budget, seed))
        .into_iter()
        .collect()
}
