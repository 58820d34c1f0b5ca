//! Direct-sum decomposition: endomorphism algebras, indecomposability,
//! Krull–Schmidt factorization, and exhaustive enumeration of the
//! indecomposable modules of bounded dimension.

use crate::algebra::{jacobson_radical, Algebra};
use crate::error::Error;
use crate::linalg::fp::{decode_vector, echelonize, in_row_span, vector_count};
use crate::linalg::FpMatrix;
use crate::modules::{find_isomorphism, hom_space, submodule_from_rows, Module, ModuleHom};
use crate::par::par_map;
use crate::Result;
use std::sync::Arc;

/// The endomorphism algebra of a module, together with the hom matrices
/// realizing its basis.
pub struct EndAlgebra {
    pub alg: Arc<Algebra>,
    pub basis: Vec<FpMatrix>,
}

/// Compute `End(M)` as an abstract algebra with multiplication
/// `e_i·e_j = e_i then e_j` (matrix product of the realizations).
pub fn endomorphism_algebra(m: &Module) -> Result<EndAlgebra> {
    if m.dim == 0 {
        return Err(Error::Input("endomorphism algebra of the zero module".into()));
    }
    let p = m.alg.p;
    let basis = hom_space(m, m)?;
    let n = basis.len();
    let vec_of = |f: &FpMatrix| -> Vec<u64> { f.data_vec() };
    // hom_space returns reduced-echelon solution vectors (each has a pivot
    // coordinate vanishing in all others), so coordinates read off directly.
    let basis_rows: Vec<Vec<u64>> = basis.iter().map(&vec_of).collect();
    let coords = |f: &FpMatrix| -> Vec<u64> {
        crate::linalg::fp::coords_in_rowbasis(p, &basis_rows, &vec_of(f))
            .expect("product of endomorphisms is an endomorphism")
    };
    let mut mul = vec![vec![vec![0u64; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            mul[i][j] = coords(&basis[i].mul(&basis[j])?);
        }
    }
    let unit = coords(&FpMatrix::identity(p, m.dim));
    let labels = (0..n).map(|i| format!("f{i}")).collect();
    let alg = Algebra::new(p, labels, mul, unit)?;
    Ok(EndAlgebra { alg, basis })
}

/// Smallest power of two at least `max(n, 1)`; ranks of `h^k` have
/// stabilized at that exponent.
fn fitting_exponent(n: usize) -> u64 {
    let mut k = 1u64;
    while (k as usize) < n.max(1) {
        k *= 2;
    }
    k
}

/// If `h` is an endomorphism whose stable power has rank strictly between 0
/// and dim, return the Fitting splitting `M = im(h^k) ⊕ ker(h^k)`.
fn try_fitting_split(m: &Module, h: &FpMatrix) -> Option<(Module, Module)> {
    let hk = h.pow(fitting_exponent(m.dim)).expect("square matrix");
    let r = hk.rank();
    if r == 0 || r == m.dim {
        return None;
    }
    let (im, _) = submodule_from_rows(m, &hk.row_space_basis());
    let (ker, _) = submodule_from_rows(m, &hk.left_nullspace_basis());
    debug_assert_eq!(im.dim + ker.dim, m.dim);
    Some((im, ker))
}

/// Split off one direct summand, or certify indecomposability.
///
/// Every element of `End(M)` is scanned in a deterministic order (basis
/// elements, then pair sums, then all combinations); by Fitting's lemma `M`
/// is decomposable if and only if some endomorphism is neither nilpotent nor
/// invertible. A full scan larger than `cap` is refused.
pub fn split_once(m: &Module, cap: u64) -> Result<Option<(Module, Module)>> {
    if m.dim == 0 {
        return Ok(None);
    }
    let p = m.alg.p;
    let basis = hom_space(m, m)?;
    for h in &basis {
        if let Some(split) = try_fitting_split(m, h) {
            return Ok(Some(split));
        }
    }
    for (i, a) in basis.iter().enumerate() {
        for b in basis.iter().skip(i + 1) {
            if let Some(split) = try_fitting_split(m, &a.add(b)?) {
                return Ok(Some(split));
            }
        }
    }
    let total = vector_count(p, basis.len());
    if total > cap as u128 {
        return Err(Error::CapExceeded(format!(
            "indecomposability scan over p^{} endomorphisms",
            basis.len()
        )));
    }
    for idx in 1..total {
        let coeffs = decode_vector(p, basis.len(), idx);
        let mut h = FpMatrix::zeros(p, m.dim, m.dim);
        for (c, f) in coeffs.iter().zip(basis.iter()) {
            if *c != 0 {
                h = h.add(&f.scale(*c))?;
            }
        }
        if let Some(split) = try_fitting_split(m, &h) {
            return Ok(Some(split));
        }
    }
    Ok(None)
}

/// A nonzero module with no proper Fitting splitting.
pub fn is_indecomposable(m: &Module, cap: u64) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    Ok(split_once(m, cap)?.is_none())
}

fn sort_key(m: &Module) -> (usize, Vec<u64>) {
    let mut data = Vec::new();
    for a in &m.action {
        data.extend(a.data_vec());
    }
    (m.dim, data)
}

/// Indecomposable factors of a module, sorted by dimension and then by
/// action matrices.
pub fn indecomposable_factors(m: &Module, cap: u64) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(cur) = stack.pop() {
        if cur.dim == 0 {
            continue;
        }
        match split_once(&cur, cap)? {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => out.push(cur),
        }
    }
    out.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
    Ok(out)
}

/// Group indecomposable factors into isomorphism classes with
/// multiplicities.
pub fn decompose_with_multiplicity(m: &Module, cap: u64) -> Result<Vec<(Module, usize)>> {
    let factors = indecomposable_factors(m, cap)?;
    let mut grouped: Vec<(Module, usize)> = Vec::new();
    'outer: for f in factors {
        for (rep, count) in grouped.iter_mut() {
            if find_isomorphism(rep, &f, cap)?.is_some() {
                *count += 1;
                continue 'outer;
            }
        }
        grouped.push((f, 1));
    }
    Ok(grouped)
}

/// A certified direct-sum decomposition into indecomposables.
#[derive(Debug)]
pub struct Decomposition {
    pub module: Module,
    /// Isomorphism classes with multiplicities, deterministic order.
    pub summands: Vec<(Module, usize)>,
    /// Isomorphism onto the external direct sum of the summands.
    pub to_sum: ModuleHom,
    /// Its inverse.
    pub from_sum: ModuleHom,
}

/// Krull–Schmidt decomposition with isomorphism witnesses in both
/// directions.
pub fn krull_schmidt(m: &Module, cap: u64) -> Result<Decomposition> {
    let summands = decompose_with_multiplicity(m, cap)?;
    let flat: Vec<&Module> = summands
        .iter()
        .flat_map(|(rep, count)| std::iter::repeat(rep).take(*count))
        .collect();
    let sum = if flat.is_empty() {
        Module::zero(&m.alg)
    } else {
        crate::modules::direct_sum(&flat)?.0
    };
    let iso = find_isomorphism(m, &sum, cap)?
        .expect("module is isomorphic to the sum of its factors");
    let inv = if m.dim == 0 {
        FpMatrix::zeros(m.alg.p, 0, 0)
    } else {
        iso.inverse().expect("witness is invertible")
    };
    let to_sum = ModuleHom::new(m.clone(), sum.clone(), iso)?;
    let from_sum = ModuleHom::new(sum, m.clone(), inv)?;
    Ok(Decomposition { module: m.clone(), summands, to_sum, from_sum })
}

/// Minimal generators of the Jacobson radical: an echelonized lift of a
/// basis of `rad / rad²`.
pub fn radical_generators(alg: &Arc<Algebra>) -> Vec<Vec<u64>> {
    let rad = jacobson_radical(alg);
    let rad_basis = rad.basis.clone();
    let p = alg.p;
    let mut sq_rows = Vec::new();
    for a in &rad_basis {
        for b in &rad_basis {
            sq_rows.push(alg.mul_elems(a, b));
        }
    }
    let mut span = echelonize(p, &sq_rows);
    let mut gens = Vec::new();
    for r in &rad_basis {
        if !in_row_span(p, &span, r) {
            gens.push(r.clone());
            let mut rows = span.clone();
            rows.push(r.clone());
            span = echelonize(p, &rows);
        }
    }
    gens
}

/// Expression of every algebra basis element as a linear combination of
/// words in the unit and a generating set, with the word derivations needed
/// to evaluate them on matrices.
struct WordBasis {
    /// `(parent index, generator index)` for each word after the unit word.
    derivations: Vec<(usize, usize)>,
    /// `coeffs[k][t]`: coefficient of word `t` in basis element `e_k`.
    coeffs: Vec<Vec<u64>>,
}

/// Fixpoint closure of {unit} under right multiplication by generators,
/// keeping only words that grow the span (at most dim words survive).
/// Returns the words, their derivations, and the echelonized span.
fn word_closure(
    alg: &Arc<Algebra>,
    gens: &[Vec<u64>],
) -> (Vec<Vec<u64>>, Vec<(usize, usize)>, Vec<Vec<u64>>) {
    let p = alg.p;
    let mut words: Vec<Vec<u64>> = vec![alg.unit.clone()];
    let mut derivations: Vec<(usize, usize)> = Vec::new();
    let mut span = echelonize(p, &[alg.unit.clone()]);
    loop {
        let mut grew = false;
        let mut t = 0;
        while t < words.len() {
            for (j, g) in gens.iter().enumerate() {
                let w = alg.mul_elems(&words[t], g);
                if !in_row_span(p, &span, &w) {
                    let mut rows = span.clone();
                    rows.push(w.clone());
                    span = echelonize(p, &rows);
                    words.push(w);
                    derivations.push((t, j));
                    grew = true;
                }
            }
            t += 1;
        }
        if !grew {
            break;
        }
    }
    (words, derivations, span)
}

fn word_basis(alg: &Arc<Algebra>, gens: &[Vec<u64>]) -> Result<WordBasis> {
    let p = alg.p;
    let (words, derivations, span) = word_closure(alg, gens);
    if span.len() != alg.dim {
        return Err(Error::NotGenerated);
    }
    // coeffs · W = I, where W has the words as rows.
    let w_matrix = FpMatrix::from_rows(p, &words);
    let id = FpMatrix::identity(p, alg.dim);
    let coeffs = w_matrix
        .solve_left(&id)
        .expect("words span the algebra");
    Ok(WordBasis {
        derivations,
        coeffs: (0..alg.dim).map(|k| coeffs.row(k)).collect(),
    })
}

/// Rebuild a module from candidate generator action matrices, if they define
/// one.
fn module_from_generator_matrices(
    alg: &Arc<Algebra>,
    wb: &WordBasis,
    gen_mats: &[FpMatrix],
    dim: usize,
) -> Option<Module> {
    let p = alg.p;
    // Word matrices in BFS order.
    let mut word_mats = vec![FpMatrix::identity(p, dim)];
    for &(parent, j) in &wb.derivations {
        let m = word_mats[parent].mul(&gen_mats[j]).ok()?;
        word_mats.push(m);
    }
    let action: Vec<FpMatrix> = wb
        .coeffs
        .iter()
        .map(|row| {
            let mut acc = FpMatrix::zeros(p, dim, dim);
            for (c, wm) in row.iter().zip(word_mats.iter()) {
                if *c != 0 {
                    acc = acc.add(&wm.scale(*c)).expect("same shape");
                }
            }
            acc
        })
        .collect();
    Module::new(alg.clone(), action).ok()
}

/// Cheap isomorphism invariants used to bucket candidates before the exact
/// isomorphism test.
fn invariant_key(m: &Module) -> Vec<u64> {
    let mut key = vec![m.dim as u64];
    for a in &m.action {
        key.push(a.rank() as u64);
    }
    for a in &m.action {
        for b in &m.action {
            key.push(a.mul(b).expect("square").rank() as u64);
        }
    }
    key
}

/// Result of an indecomposable census.
#[derive(Debug)]
pub struct Census {
    pub alg: Arc<Algebra>,
    pub max_dim: usize,
    /// Representatives of the isomorphism classes, in deterministic order
    /// (ascending dimension, then first occurrence in the scan).
    pub modules: Vec<Module>,
    /// Whether every dimension up to `max_dim` was scanned exhaustively.
    pub complete: bool,
}

/// The radical generators, greedily completed with standard basis vectors
/// until the words generate the whole algebra.  For local algebras this is
/// just the radical generators; otherwise a few idempotent-carrying basis
/// vectors are appended.
fn completed_generators(alg: &Arc<Algebra>) -> Vec<Vec<u64>> {
    let p = alg.p;
    let mut gens = radical_generators(alg);
    let (_, _, mut span) = word_closure(alg, &gens);
    for i in 0..alg.dim {
        if span.len() == alg.dim {
            break;
        }
        let mut e = vec![0u64; alg.dim];
        e[i] = 1;
        if !in_row_span(p, &span, &e) {
            gens.push(e);
            span = word_closure(alg, &gens).2;
        }
    }
    gens
}

/// Enumerate the indecomposable modules of dimension at most `max_dim`, up
/// to isomorphism.  Uses the radical generators, completed with basis
/// vectors when those alone do not generate the algebra.
pub fn enumerate_indecomposables(
    alg: &Arc<Algebra>,
    max_dim: usize,
    universe_cap: u128,
) -> Result<Census> {
    let gens = completed_generators(alg);
    enumerate_with_generators(alg, &gens, max_dim, universe_cap)
}

/// Enumerate indecomposables with an explicit algebra generating set (the
/// unit is always included implicitly).
pub fn enumerate_with_generators(
    alg: &Arc<Algebra>,
    gens: &[Vec<u64>],
    max_dim: usize,
    universe_cap: u128,
) -> Result<Census> {
    let wb = word_basis(alg, gens)?;
    let p = alg.p;
    let g = gens.len();
    let mut modules: Vec<Module> = Vec::new();
    let mut keys: Vec<Vec<u64>> = Vec::new();
    let mut complete = true;
    for dim in 1..=max_dim {
        let digits = g * dim * dim;
        let total = vector_count(p, digits);
        if total > universe_cap {
            complete = false;
            break;
        }
        // Scan candidate generator-matrix tuples in parallel chunks,
        // preserving index order.
        const CHUNK: u128 = 1 << 12;
        let starts: Vec<u128> = (0..total).step_by(CHUNK as usize).collect();
        let found: Vec<Vec<Module>> = par_map(&starts, |&start| {
            let end = (start + CHUNK).min(total);
            let mut out = Vec::new();
            for idx in start..end {
                let flat = decode_vector(p, digits, idx);
                let gen_mats: Vec<FpMatrix> = (0..g)
                    .map(|t| {
                        FpMatrix::from_fn(p, dim, dim, |i, j| {
                            flat[t * dim * dim + i * dim + j]
                        })
                    })
                    .collect();
                if let Some(m) = module_from_generator_matrices(alg, &wb, &gen_mats, dim) {
                    out.push(m);
                }
            }
            out
        });
        for m in found.into_iter().flatten() {
            let key = invariant_key(&m);
            let mut known = false;
            for (rep, k) in modules.iter().zip(keys.iter()) {
                if *k == key && find_isomorphism(rep, &m, 1 << 20)?.is_some() {
                    known = true;
                    break;
                }
            }
            if !known && is_indecomposable(&m, 1 << 20)? {
                modules.push(m);
                keys.push(key);
            }
        }
    }
    Ok(Census { alg: alg.clone(), max_dim, modules, complete })
}

impl Census {
    /// Index of the census class isomorphic to `m`, if any.
    pub fn index_of(&self, m: &Module, cap: u64) -> Result<Option<usize>> {
        for (i, rep) in self.modules.iter().enumerate() {
            if find_isomorphism(rep, m, cap)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}
