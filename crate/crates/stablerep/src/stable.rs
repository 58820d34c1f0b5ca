//! Projective and injective machinery and the absolute stable category:
//! simples, tops, socles, projective covers, syzygies, injective envelopes,
//! factor-through-projective tests, stable homs, stable equivalences, and
//! first extension groups.

use crate::algebra::{jacobson_radical, Algebra};
use crate::decomp::{decompose_with_multiplicity, endomorphism_algebra, indecomposable_factors};
use crate::error::Error;
use crate::linalg::fp::{echelonize, in_row_span};
use crate::linalg::FpMatrix;
use crate::modules::{
    direct_sum, find_isomorphism, hom_space, kernel, pushout, quotient_by_invariant_subspace,
    submodule_from_rows, Module, ModuleHom, ShortExact,
};
use crate::Result;
use std::sync::Arc;

const CAP: u64 = 1 << 20;

/// The simple modules of the algebra: deduplicated indecomposable factors of
/// `regular / regular·rad`. Requires every simple to have endomorphism ring
/// the base field (the split case).
pub fn simples(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    let reg = Module::regular(alg);
    let (t, _) = top(&reg);
    let grouped = decompose_with_multiplicity(&t, CAP)?;
    let mut out = Vec::new();
    for (s, _) in grouped {
        let e = endomorphism_algebra(&s)?;
        if e.alg.dim != 1 {
            return Err(Error::UnsupportedSemisimpleType(format!(
                "simple with endomorphism ring of dim {}",
                e.alg.dim
            )));
        }
        out.push(s);
    }
    Ok(out)
}

/// The largest semisimple quotient `M / M·rad`, with its projection.
pub fn top(m: &Module) -> (Module, ModuleHom) {
    let rad = jacobson_radical(&m.alg);
    let mut rows = Vec::new();
    for r in &rad.basis {
        let act = m.action_of(r);
        for i in 0..m.dim {
            rows.push(act.row(i));
        }
    }
    quotient_by_invariant_subspace(m, &rows)
}

/// The largest semisimple submodule: the annihilator of the radical, with
/// its inclusion.
pub fn socle(m: &Module) -> (Module, ModuleHom) {
    let rad = jacobson_radical(&m.alg);
    if rad.dim() == 0 {
        // Semisimple algebra: the socle is everything.
        return (m.clone(), ModuleHom::identity(m));
    }
    let stacked_cols: Vec<FpMatrix> = rad.basis.iter().map(|r| m.action_of(r)).collect();
    let mut wide = stacked_cols[0].clone();
    for a in &stacked_cols[1..] {
        wide = wide.hstack(a).expect("same row count");
    }
    submodule_from_rows(m, &wide.left_nullspace_basis())
}

/// The indecomposable projectives with their tops, in deterministic order.
fn projective_blocks(alg: &Arc<Algebra>) -> Result<Vec<(Module, Module)>> {
    let reg = Module::regular(alg);
    let ps = indecomposable_factors(&reg, CAP)?;
    let mut out = Vec::new();
    for p in ps {
        let (t, _) = top(&p);
        out.push((p, t));
    }
    // Deduplicate isomorphic blocks.
    let mut dedup: Vec<(Module, Module)> = Vec::new();
    for (p, t) in out {
        if !dedup
            .iter()
            .map(|(q, _)| find_isomorphism(q, &p, CAP))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .any(|o| o.is_some())
        {
            dedup.push((p, t));
        }
    }
    Ok(dedup)
}

/// Solve for a hom `g: M → N` with `g·post = target` (all maps given);
/// returns a solution from the hom space if one exists.
fn solve_hom_through(
    m: &Module,
    n: &Module,
    post: &ModuleHom,
    target: &FpMatrix,
) -> Result<Option<ModuleHom>> {
    let p = m.alg.p;
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return if target.is_zero() {
            Ok(Some(ModuleHom::zero(m, n)))
        } else {
            Ok(None)
        };
    }
    let rows: Vec<Vec<u64>> = basis
        .iter()
        .map(|h| h.mul(&post.matrix).expect("composable").data_vec())
        .collect();
    let sys = FpMatrix::from_rows(p, &rows);
    let rhs = FpMatrix::from_rows(p, &[target.data_vec()]);
    let sol = match sys.solve_left(&rhs) {
        Some(s) => s,
        None => return Ok(None),
    };
    let mut acc = FpMatrix::zeros(p, m.dim, n.dim);
    for (t, h) in basis.iter().enumerate() {
        let c = sol.get(0, t);
        if c != 0 {
            acc = acc.add(&h.scale(c))?;
        }
    }
    Ok(Some(ModuleHom::new(m.clone(), n.clone(), acc)?))
}

/// Projective cover `P ↠ M`: the smallest projective mapping onto `M`.
pub fn projective_cover(m: &Module) -> Result<(Module, ModuleHom)> {
    if m.dim == 0 {
        let z = Module::zero(&m.alg);
        return Ok((z.clone(), ModuleHom::zero(&z, m)));
    }
    let (t, pi) = top(m);
    let blocks = projective_blocks(&m.alg)?;
    let dec = crate::decomp::krull_schmidt(&t, CAP)?;
    // Assemble P = ⊕ P_i^{mult} aligned with the decomposition of the top,
    // each block mapping onto its matching top factor.
    let mut parts: Vec<Module> = Vec::new();
    let mut part_tops: Vec<ModuleHom> = Vec::new();
    for (s, count) in &dec.summands {
        let mut found = None;
        for (pb, tb) in &blocks {
            if let Some(iso) = find_isomorphism(tb, s, CAP)? {
                found = Some((pb.clone(), iso));
                break;
            }
        }
        let (block, block_top_iso) = found.ok_or_else(|| {
            Error::UnsupportedSemisimpleType("top factor matches no projective block".into())
        })?;
        let (_, projb) = top(&block);
        let to_s = projb.compose(&ModuleHom::new(
            projb.target.clone(),
            s.clone(),
            block_top_iso,
        )?)?;
        for _ in 0..*count {
            parts.push(block.clone());
            part_tops.push(to_s.clone());
        }
    }
    let refs: Vec<&Module> = parts.iter().collect();
    let (p_total, _, projections) = direct_sum(&refs)?;
    // ψ: P → T through the decomposition witness of the top. The external
    // sum in the witness is built from the same flattened summand order.
    let flat_tops: Vec<&Module> = dec
        .summands
        .iter()
        .flat_map(|(s, c)| std::iter::repeat(s).take(*c))
        .collect();
    let (t_sum, t_injs, _) = direct_sum(&flat_tops)?;
    debug_assert_eq!(t_sum.dim, t.dim);
    let mut psi = ModuleHom::zero(&p_total, &t_sum);
    for i in 0..parts.len() {
        psi = psi.add(&projections[i].compose(&part_tops[i])?.compose(&t_injs[i])?)?;
    }
    let psi_to_t = psi.compose(&dec.from_sum)?;
    // Lift ψ along π: find φ: P → M with φ·π = ψ.
    let phi = solve_hom_through(&p_total, m, &pi, &psi_to_t.matrix)?
        .expect("projective lifts along a surjection");
    if !phi.is_surjective() {
        return Err(Error::UnsupportedSemisimpleType(
            "cover lift failed to be surjective".into(),
        ));
    }
    Ok((p_total, phi))
}

/// Kernel of the projective cover.
pub fn syzygy(m: &Module) -> Result<Module> {
    let (_, phi) = projective_cover(m)?;
    Ok(kernel(&phi).0)
}

pub fn is_projective(m: &Module) -> Result<bool> {
    Ok(syzygy(m)?.dim == 0)
}

/// Injective envelope `M ↪ I`, computed by duality: dualize, take the
/// projective cover over the opposite algebra, dualize back.
pub fn injective_envelope(m: &Module) -> Result<(Module, ModuleHom)> {
    let d = m.dual();
    let (_, phi) = projective_cover(&d)?;
    let envelope = phi.source.dual();
    // The dual of the epi `P ↠ D(M)` is a mono `M = D(D(M)) → D(P)` with the
    // transposed matrix.
    let mono = ModuleHom::new(m.clone(), envelope.clone(), phi.matrix.transpose())?;
    Ok((envelope, mono))
}

pub fn is_injective(m: &Module) -> Result<bool> {
    let (i, _) = injective_envelope(m)?;
    Ok(i.dim == m.dim)
}

/// Cokernel of the injective envelope.
pub fn cosyzygy(m: &Module) -> Result<Module> {
    let (_, mono) = injective_envelope(m)?;
    Ok(crate::modules::cokernel(&mono).0)
}

/// If `f: M → N` factors through a projective, return a witness
/// `g: M → P(N)` with `g · cover = f`.
pub fn factors_through_projective(f: &ModuleHom) -> Result<Option<ModuleHom>> {
    let (p, cover) = projective_cover(&f.target)?;
    solve_hom_through(&f.source, &p, &cover, &f.matrix)
}

/// The subspace of `hom(M, N)` of maps factoring through projectives, as
/// echelonized vectorized rows.
fn ftp_subspace(m: &Module, n: &Module) -> Result<Vec<Vec<u64>>> {
    let (p_n, cover) = projective_cover(n)?;
    let basis = hom_space(m, &p_n)?;
    let rows: Vec<Vec<u64>> = basis
        .iter()
        .map(|h| h.mul(&cover.matrix).expect("composable").data_vec())
        .collect();
    Ok(echelonize(m.alg.p, &rows))
}

/// Stable hom space: dimension and coset representatives of
/// `hom(M,N) / (maps factoring through projectives)`.
pub fn stable_hom(m: &Module, n: &Module) -> Result<(usize, Vec<FpMatrix>)> {
    let p = m.alg.p;
    let full = hom_space(m, n)?;
    let ftp = ftp_subspace(m, n)?;
    let mut span = ftp.clone();
    let mut reps = Vec::new();
    for h in &full {
        let v = h.data_vec();
        if !in_row_span(p, &span, &v) {
            reps.push(h.clone());
            let mut rows = span.clone();
            rows.push(v);
            span = echelonize(p, &rows);
        }
    }
    Ok((reps.len(), reps))
}

/// Decide whether `f` is a stable equivalence; return a stable quasi-inverse
/// if so.
///
/// Solves the joint linear system: `h ∈ hom(N,M)` with `f·h − id_M` in the
/// factor-through-projective subspace of `hom(M,M)` and `h·f − id_N` in that
/// of `hom(N,N)`.
pub fn is_stable_equivalence(f: &ModuleHom) -> Result<Option<ModuleHom>> {
    let ftp_m = ftp_subspace(&f.source, &f.source)?;
    let ftp_n = ftp_subspace(&f.target, &f.target)?;
    quasi_inverse_modulo(f, &ftp_m, &ftp_n)
}

/// Find `h: N → M` with `f·h − id_M` in the span of `corr_m` and
/// `h·f − id_N` in the span of `corr_n` (both given as vectorized
/// endomorphism subspaces). This is the quasi-inverse search underlying
/// every flavor of stable equivalence; the correction subspaces say which
/// maps count as equivalent to zero.
pub(crate) fn quasi_inverse_modulo(
    f: &ModuleHom,
    ftp_m: &[Vec<u64>],
    ftp_n: &[Vec<u64>],
) -> Result<Option<ModuleHom>> {
    let m = &f.source;
    let n = &f.target;
    let p = m.alg.p;
    let h_basis = hom_space(n, m)?;
    let vars = h_basis.len() + ftp_m.len() + ftp_n.len();
    if vars == 0 {
        // Only possible if everything is zero-dimensional.
        return Ok(if m.dim == 0 && n.dim == 0 {
            Some(ModuleHom::zero(n, m))
        } else {
            None
        });
    }
    // Unknowns: coefficients of h, then of the two correction terms.
    // Equations: f·h − corr_M = id_M  and  h·f − corr_N = id_N (vectorized).
    let mm = m.dim * m.dim;
    let nn = n.dim * n.dim;
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(vars);
    for h in &h_basis {
        let mut row = Vec::with_capacity(mm + nn);
        row.extend(f.matrix.mul(h).expect("composable").data_vec());
        row.extend(h.mul(&f.matrix).expect("composable").data_vec());
        rows.push(row);
    }
    for c in ftp_m {
        let mut row: Vec<u64> = c.iter().map(|&x| (p - x) % p).collect();
        row.extend(std::iter::repeat(0u64).take(nn));
        rows.push(row);
    }
    for c in ftp_n {
        let mut row: Vec<u64> = std::iter::repeat(0u64).take(mm).collect();
        row.extend(c.iter().map(|&x| (p - x) % p));
        rows.push(row);
    }
    let mut rhs = FpMatrix::identity(p, m.dim).data_vec();
    rhs.extend(FpMatrix::identity(p, n.dim).data_vec());
    let sys = FpMatrix::from_rows(p, &rows);
    let sol = match sys.solve_left(&FpMatrix::from_rows(p, &[rhs])) {
        Some(s) => s,
        None => return Ok(None),
    };
    let mut acc = FpMatrix::zeros(p, n.dim, m.dim);
    for (t, h) in h_basis.iter().enumerate() {
        let c = sol.get(0, t);
        if c != 0 {
            acc = acc.add(&h.scale(c))?;
        }
    }
    Ok(Some(ModuleHom::new(n.clone(), m.clone(), acc)?))
}

/// True iff the non-projective parts of the decompositions match.
pub fn stably_isomorphic(m: &Module, n: &Module) -> Result<bool> {
    let core = |x: &Module| -> Result<Vec<Module>> {
        let mut out = Vec::new();
        for f in indecomposable_factors(x, CAP)? {
            if !is_projective(&f)? {
                out.push(f);
            }
        }
        Ok(out)
    };
    let mut a = core(m)?;
    let b = core(n)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    'outer: for y in &b {
        for i in 0..a.len() {
            if find_isomorphism(&a[i], y, CAP)?.is_some() {
                a.remove(i);
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// The cover presentation `0 → ΩM → P(M) → M → 0`.
pub fn cover_sequence(m: &Module) -> Result<(ShortExact, ModuleHom)> {
    let (_, phi) = projective_cover(m)?;
    let (_, incl) = kernel(&phi);
    let ses = ShortExact::new(incl.clone(), phi)?;
    Ok((ses, incl))
}

/// `Ext¹(M, N)`: dimension and a basis of representing cocycles
/// `ΩM → N` (coset representatives modulo restrictions from `P(M)`).
pub fn ext1(m: &Module, n: &Module) -> Result<(usize, Vec<ModuleHom>)> {
    let p = m.alg.p;
    let (ses, incl) = cover_sequence(m)?;
    let omega = ses.x().clone();
    let pm = ses.y().clone();
    let full = hom_space(&omega, n)?;
    // Image of the restriction hom(P, N) → hom(Ω, N).
    let restr: Vec<Vec<u64>> = hom_space(&pm, n)?
        .iter()
        .map(|h| incl.matrix.mul(h).expect("composable").data_vec())
        .collect();
    let mut span = echelonize(p, &restr);
    let mut reps = Vec::new();
    for h in &full {
        let v = h.data_vec();
        if !in_row_span(p, &span, &v) {
            reps.push(ModuleHom::new(omega.clone(), n.clone(), h.clone())?);
            let mut rows = span.clone();
            rows.push(v);
            span = echelonize(p, &rows);
        }
    }
    Ok((reps.len(), reps))
}

/// An extension `0 → N → Y → M → 0` built from Ext¹ coordinates.
#[derive(Debug)]
pub struct Extension {
    pub ses: ShortExact,
    pub coords: Vec<u64>,
}

/// Realize the Ext class with the given coordinates in the `ext1` basis as
/// a short exact sequence, by pushing the cover presentation of `M` out
/// along the representing cocycle.
pub fn extension_from_class(m: &Module, n: &Module, coords: &[u64]) -> Result<Extension> {
    let p = m.alg.p;
    let (dim, reps) = ext1(m, n)?;
    if coords.len() != dim {
        return Err(Error::Input(format!(
            "expected {dim} extension coordinates, got {}",
            coords.len()
        )));
    }
    let (ses, incl) = cover_sequence(m)?;
    let omega = ses.x().clone();
    let mut cocycle = ModuleHom::zero(&omega, n);
    for (c, rep) in coords.iter().zip(reps.iter()) {
        if *c != 0 {
            cocycle = cocycle.add(&ModuleHom::new(
                omega.clone(),
                n.clone(),
                rep.matrix.scale(*c % p),
            )?)?;
        }
    }
    let po = pushout(&incl, &cocycle)?;
    // Induced epi Y → M from the cocone (cover epi, zero).
    let epi = po.universal(&ses.g, &ModuleHom::zero(n, m))?;
    let ext_ses = ShortExact::new(po.from_z, epi)?;
    Ok(Extension { ses: ext_ses, coords: coords.to_vec() })
}
