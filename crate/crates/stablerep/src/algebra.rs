//! Finite-dimensional associative unital algebras over `F_p`, given by
//! structure constants.
//!
//! Everything downstream (modules, decompositions, K-groups) receives its
//! algebras from here. Algebras are immutable and shared via [`Arc`], so all
//! operations are safe to call from parallel iterators.
//!
//! Conventions (used consistently across the crate):
//! * elements are **row vectors** of coordinates in the given basis;
//! * linear maps act on the right (`v ↦ v · M`), so the matrix of a map has
//!   one row per source basis element, holding the image of that element.

use crate::error::Error;
use crate::linalg::fp::{coords_in_rowbasis, echelonize, in_row_span, is_prime};
use crate::linalg::int::IntMatrix;
use crate::linalg::FpMatrix;
use crate::Result;
use std::sync::Arc;

/// A finite-dimensional associative unital algebra over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    pub p: u64,
    pub dim: usize,
    pub labels: Vec<String>,
    /// Structure constants: `e_i · e_j = Σ_k mul[i][j][k] · e_k`.
    pub mul: Vec<Vec<Vec<u64>>>,
    /// Coordinates of the two-sided unit.
    pub unit: Vec<u64>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(p={}, dim={}, basis=[{}])", self.p, self.dim, self.labels.join(", "))
    }
}

/// A unital algebra morphism, stored row-convention: row `i` of `matrix` is
/// the image of the `i`-th source basis element in target coordinates.
#[derive(Clone)]
pub struct AlgebraMorphism {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: FpMatrix,
    pub surjective: bool,
}

impl std::fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AlgebraMorphism({:?} -> {:?}, surjective={})",
            self.source, self.target, self.surjective
        )
    }
}

/// A two-sided ideal, stored as a reduced echelonized basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub ambient: Arc<Algebra>,
    pub basis: Vec<Vec<u64>>,
}

/// The unit group of a commutative algebra, in invariant-factor form.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    /// Number of units.
    pub order: u64,
    /// Invariant factors in ascending divisibility order (`d_1 | d_2 | …`),
    /// each > 1; empty for the trivial group.
    pub factors: Vec<u64>,
    /// Elements realizing the factors: `generators[i]` has order
    /// `factors[i]`, and together they generate the unit group with
    /// `Π factors = order`.
    pub generators: Vec<Vec<u64>>,
    pub generator_labels: Vec<String>,
}

impl std::fmt::Display for UnitGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.factors.iter().rev().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl Algebra {
    /// Validated construction from structure constants.
    pub fn new(
        p: u64,
        labels: Vec<String>,
        mul: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
    ) -> Result<Arc<Algebra>> {
        if !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        let dim = mul.len();
        if dim == 0 {
            return Err(Error::Input("algebra dimension must be positive".into()));
        }
        if labels.len() != dim || unit.len() != dim {
            return Err(Error::DimMismatch(format!(
                "dim {dim} with {} labels, unit length {}",
                labels.len(),
                unit.len()
            )));
        }
        for row in &mul {
            if row.len() != dim || row.iter().any(|c| c.len() != dim) {
                return Err(Error::DimMismatch("structure tensor is not dim^3".into()));
            }
        }
        let mut mul_norm = mul;
        for row in mul_norm.iter_mut() {
            for c in row.iter_mut() {
                for x in c.iter_mut() {
                    *x %= p;
                }
            }
        }
        let unit: Vec<u64> = unit.into_iter().map(|x| x % p).collect();
        let alg = Algebra { p, dim, labels, mul: mul_norm, unit };
        // Associativity on all basis triples.
        for i in 0..dim {
            for j in 0..dim {
                let ij = alg.mul[i][j].clone();
                for k in 0..dim {
                    let left = alg.mul_elems(&ij, &basis_vec(dim, k));
                    let right = alg.mul_elems(&basis_vec(dim, i), &alg.mul[j][k]);
                    if left != right {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        // Unit is a two-sided identity.
        for i in 0..dim {
            let e = basis_vec(dim, i);
            if alg.mul_elems(&alg.unit, &e) != e || alg.mul_elems(&e, &alg.unit) != e {
                return Err(Error::BadUnit(i));
            }
        }
        Ok(Arc::new(alg))
    }

    /// `F_p[x]/x^n`, basis `1, x, …, x^(n-1)`.
    pub fn trunc_poly(p: u64, n: usize) -> Result<Arc<Algebra>> {
        if n == 0 {
            return Err(Error::Input("trunc_poly needs n >= 1".into()));
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let mut mul = vec![vec![vec![0u64; n]; n]; n];
        for (i, row) in mul.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                if i + j < n {
                    c[i + j] = 1;
                }
            }
        }
        let mut unit = vec![0u64; n];
        unit[0] = 1;
        Algebra::new(p, labels, mul, unit)
    }

    /// Exterior algebra on `g` generators over `F_p`
    /// (`x_i² = 0`, `x_i x_j = −x_j x_i`), dimension `2^g`.
    /// Basis is indexed by subsets in bitmask order.
    pub fn exterior(p: u64, g: usize) -> Result<Arc<Algebra>> {
        if g == 0 {
            return Err(Error::Input("exterior needs g >= 1".into()));
        }
        if g > 6 {
            return Err(Error::Input("exterior supports at most 6 generators".into()));
        }
        let dim = 1usize << g;
        let gen_name = |i: usize| -> String {
            match (g, i) {
                (1, 0) | (2, 0) => "x".to_string(),
                (2, 1) => "y".to_string(),
                _ => format!("x{}", i + 1),
            }
        };
        let labels: Vec<String> = (0..dim)
            .map(|mask| {
                if mask == 0 {
                    "1".to_string()
                } else {
                    (0..g).filter(|i| mask >> i & 1 == 1).map(gen_name).collect::<String>()
                }
            })
            .collect();
        let mut mul = vec![vec![vec![0u64; dim]; dim]; dim];
        for (s, row) in mul.iter_mut().enumerate() {
            for (t, c) in row.iter_mut().enumerate() {
                if s & t != 0 {
                    continue;
                }
                // Sign: count pairs (a in s, b in t) with a > b.
                let mut inversions = 0u32;
                for a in 0..g {
                    if s >> a & 1 == 1 {
                        inversions += (t & ((1 << a) - 1)).count_ones();
                    }
                }
                let sign = if inversions % 2 == 0 { 1 } else { p - 1 };
                c[s | t] = sign % p;
            }
        }
        let mut unit = vec![0u64; dim];
        unit[0] = 1;
        Algebra::new(p, labels, mul, unit)
    }

    /// The field `F_p` as an algebra.
    pub fn field(p: u64) -> Result<Arc<Algebra>> {
        Algebra::new(p, vec!["1".to_string()], vec![vec![vec![1]]], vec![1])
    }

    /// Local commutative algebra `F_p ⊕ V` with `V² = 0` and `dim V = g`
    /// (for `g = 2` this is `F_p[x,y]/(x², xy, y²)`).
    pub fn square_zero(p: u64, g: usize) -> Result<Arc<Algebra>> {
        let dim = g + 1;
        let labels: Vec<String> = (0..dim)
            .map(|i| match (g, i) {
                (_, 0) => "1".to_string(),
                (1, 1) => "x".to_string(),
                (2, 1) => "x".to_string(),
                (2, 2) => "y".to_string(),
                _ => format!("x{i}"),
            })
            .collect();
        let mut mul = vec![vec![vec![0u64; dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                if i == 0 {
                    mul[i][j][j] = 1;
                } else if j == 0 {
                    mul[i][j][i] = 1;
                }
                // i, j >= 1: product is zero.
            }
        }
        let mut unit = vec![0u64; dim];
        unit[0] = 1;
        Algebra::new(p, labels, mul, unit)
    }

    /// Upper-triangular 2×2 matrices over `F_p` (basis `E11, E12, E22`):
    /// the smallest interesting non-commutative algebra.
    pub fn upper_triangular_2x2(p: u64) -> Result<Arc<Algebra>> {
        let labels = vec!["E11".to_string(), "E12".to_string(), "E22".to_string()];
        let mut mul = vec![vec![vec![0u64; 3]; 3]; 3];
        // E11·E11 = E11, E11·E12 = E12, E12·E22 = E12, E22·E22 = E22.
        mul[0][0][0] = 1;
        mul[0][1][1] = 1;
        mul[1][2][1] = 1;
        mul[2][2][2] = 1;
        Algebra::new(p, labels, mul, vec![1, 0, 1])
    }

    /// Full matrix algebra `M_n(F_p)`, basis `E11, E12, …, Enn` row-major.
    pub fn full_matrix(p: u64, n: usize) -> Result<Arc<Algebra>> {
        let dim = n * n;
        let labels: Vec<String> =
            (0..n).flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1))).collect();
        let mut mul = vec![vec![vec![0u64; dim]; dim]; dim];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        // E_ab · E_cd = δ_bc E_ad
                        if b == c {
                            mul[a * n + b][c * n + d][a * n + d] = 1;
                        }
                    }
                }
            }
        }
        let unit: Vec<u64> =
            (0..dim).map(|k| u64::from(k % n == k / n)).collect();
        Algebra::new(p, labels, mul, unit)
    }

    /// Product of two elements (row coordinate vectors).
    pub fn mul_elems(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = xi * yj % p;
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot = (*slot + c * self.mul[i][j][k]) % p;
                }
            }
        }
        out
    }

    /// Matrix of right multiplication by `x` on the algebra
    /// (`v ↦ v·x`, row convention). Faithful, and `R(xy) = R(x)·R(y)`.
    pub fn right_mul_matrix(&self, x: &[u64]) -> FpMatrix {
        FpMatrix::from_fn(self.p, self.dim, self.dim, |j, k| {
            let mut acc = 0u64;
            for (i, &xi) in x.iter().enumerate() {
                acc = (acc + xi * self.mul[j][i][k]) % self.p;
            }
            acc
        })
    }

    /// Matrix of left multiplication by `x` (`v ↦ x·v`, row convention).
    pub fn left_mul_matrix(&self, x: &[u64]) -> FpMatrix {
        FpMatrix::from_fn(self.p, self.dim, self.dim, |j, k| {
            let mut acc = 0u64;
            for (i, &xi) in x.iter().enumerate() {
                acc = (acc + xi * self.mul[i][j][k]) % self.p;
            }
            acc
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mul[i][j] == self.mul[j][i]))
    }

    /// The opposite algebra (`x ·op y = y · x`).
    pub fn opposite(&self) -> Arc<Algebra> {
        let mut mul = vec![vec![vec![0u64; self.dim]; self.dim]; self.dim];
        for (i, row) in mul.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                c.clone_from(&self.mul[j][i]);
            }
        }
        Algebra::new(self.p, self.labels.clone(), mul, self.unit.clone())
            .expect("opposite of a valid algebra is valid")
    }

    /// `x^e` in the algebra.
    pub fn pow_elem(&self, x: &[u64], e: u64) -> Vec<u64> {
        let mut acc = self.unit.clone();
        let mut b = x.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_elems(&acc, &b);
            }
            b = self.mul_elems(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of `x`, if it is a unit.
    pub fn inverse_elem(&self, x: &[u64]) -> Option<Vec<u64>> {
        // v·R(x) = 1 solves v = x^{-1} (then two-sidedness is automatic in a
        // finite-dimensional algebra).
        let rx = self.right_mul_matrix(x);
        let one = FpMatrix::from_rows(self.p, &[self.unit.clone()]);
        let inv = rx.solve_left(&one)?;
        let v = inv.row(0);
        if self.mul_elems(&v, x) == self.unit && self.mul_elems(x, &v) == self.unit {
            Some(v)
        } else {
            None
        }
    }

    pub fn is_unit(&self, x: &[u64]) -> bool {
        self.right_mul_matrix(x).inverse().is_some()
    }

    /// Multiplicative order of a unit.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        let mut acc = x.to_vec();
        let mut k = 1u64;
        while acc != self.unit {
            acc = self.mul_elems(&acc, x);
            k += 1;
            assert!(k <= 1 << 32, "element is not a unit of finite order");
        }
        k
    }

    /// Is `x^m = 0` for some `m`?
    pub fn is_nilpotent_elem(&self, x: &[u64]) -> bool {
        // x^(2^k) stabilizes after k = ceil(log2(dim)) + 1 steps.
        let mut acc = x.to_vec();
        for _ in 0..=usize::BITS - self.dim.leading_zeros() {
            acc = self.mul_elems(&acc, &acc);
        }
        acc.iter().all(|&c| c == 0)
    }

    /// Human-readable form of an element, e.g. `1+x^2+x^3`.
    pub fn element_label(&self, x: &[u64]) -> String {
        let mut parts = Vec::new();
        for (i, &c) in x.iter().enumerate() {
            let c = c % self.p;
            if c == 0 {
                continue;
            }
            let lab = &self.labels[i];
            let term = if lab == "1" {
                format!("{c}")
            } else if c == 1 {
                lab.clone()
            } else {
                format!("{c}{lab}")
            };
            parts.push(term);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Parse an element back from `element_label` notation (also accepts a
    /// bare basis label or space-separated coordinate vector).
    pub fn parse_element(&self, s: &str) -> Result<Vec<u64>> {
        let s = s.trim();
        if s == "0" {
            return Ok(vec![0; self.dim]);
        }
        // Coordinate-vector form: all whitespace-separated integers.
        if !s.is_empty()
            && s.split_whitespace().count() == self.dim
            && s.split_whitespace().all(|t| t.chars().all(|c| c.is_ascii_digit()))
        {
            let v: Vec<u64> = s
                .split_whitespace()
                .map(|t| t.parse::<u64>().map(|x| x % self.p))
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Input(format!("bad coordinate: {e}")))?;
            return Ok(v);
        }
        let mut out = vec![0u64; self.dim];
        for raw_term in s.split('+') {
            let term = raw_term.trim();
            if term.is_empty() {
                return Err(Error::Input(format!("empty term in element: {s}")));
            }
            // Split off a leading integer coefficient if present.
            let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rest = &term[digits.len()..];
            let (coeff, label) = if rest.is_empty() {
                // Pure number: multiple of 1.
                (digits.parse::<u64>().unwrap(), "1".to_string())
            } else if digits.is_empty() {
                (1u64, rest.to_string())
            } else {
                (digits.parse::<u64>().unwrap(), rest.to_string())
            };
            let idx = self
                .labels
                .iter()
                .position(|l| *l == label)
                .ok_or_else(|| Error::Input(format!("unknown basis label: {label}")))?;
            out[idx] = (out[idx] + coeff) % self.p;
        }
        Ok(out)
    }

    /// Total number of elements (`p^dim`) as u128.
    pub fn element_count(&self) -> u128 {
        crate::linalg::fp::vector_count(self.p, self.dim)
    }
}

fn basis_vec(dim: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; dim];
    v[i] = 1;
    v
}

impl AlgebraMorphism {
    /// Validated construction: checks unit preservation and multiplicativity
    /// on all basis pairs, and records surjectivity.
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: FpMatrix) -> Result<Self> {
        if source.p != target.p {
            return Err(Error::AlgebraMismatch("different primes".into()));
        }
        if matrix.rows != source.dim || matrix.cols != target.dim {
            return Err(Error::DimMismatch(format!(
                "morphism matrix {}x{}, expected {}x{}",
                matrix.rows, matrix.cols, source.dim, target.dim
            )));
        }
        if matrix.row_apply(&source.unit) != target.unit {
            return Err(Error::NotAlgebraMorphism("unit is not preserved".into()));
        }
        for i in 0..source.dim {
            for j in 0..source.dim {
                let lhs = matrix.row_apply(&source.mul[i][j]);
                let rhs = target.mul_elems(&matrix.row(i), &matrix.row(j));
                if lhs != rhs {
                    return Err(Error::NotAlgebraMorphism(format!(
                        "multiplicativity fails on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        let surjective = matrix.rank() == target.dim;
        Ok(AlgebraMorphism { source, target, matrix, surjective })
    }

    pub fn identity(alg: &Arc<Algebra>) -> Self {
        AlgebraMorphism {
            source: alg.clone(),
            target: alg.clone(),
            matrix: FpMatrix::identity(alg.p, alg.dim),
            surjective: true,
        }
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if *self.target != *other.source {
            return Err(Error::AlgebraMismatch("composition endpoints differ".into()));
        }
        AlgebraMorphism::new(
            self.source.clone(),
            other.target.clone(),
            self.matrix.mul(&other.matrix)?,
        )
    }

    /// Image of an element.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.matrix.row_apply(x)
    }
}

impl Ideal {
    /// Smallest two-sided ideal containing the given elements.
    pub fn from_generators(ambient: &Arc<Algebra>, gens: &[Vec<u64>]) -> Ideal {
        let p = ambient.p;
        let mut basis = echelonize(p, gens);
        loop {
            let mut new_rows = basis.clone();
            for b in &basis {
                for i in 0..ambient.dim {
                    let e = basis_vec(ambient.dim, i);
                    new_rows.push(ambient.mul_elems(&e, b));
                    new_rows.push(ambient.mul_elems(b, &e));
                }
            }
            let closed = echelonize(p, &new_rows);
            if closed.len() == basis.len() {
                return Ideal { ambient: ambient.clone(), basis };
            }
            basis = closed;
        }
    }

    /// Wrap an existing echelonized basis, verifying two-sided closure.
    pub fn from_basis_checked(ambient: &Arc<Algebra>, basis: Vec<Vec<u64>>) -> Result<Ideal> {
        let basis = echelonize(ambient.p, &basis);
        for b in &basis {
            for i in 0..ambient.dim {
                let e = basis_vec(ambient.dim, i);
                for prod in [ambient.mul_elems(&e, b), ambient.mul_elems(b, &e)] {
                    if !in_row_span(ambient.p, &basis, &prod) {
                        return Err(Error::Input(
                            "claimed ideal basis is not closed under multiplication".into(),
                        ));
                    }
                }
            }
        }
        Ok(Ideal { ambient: ambient.clone(), basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        in_row_span(self.ambient.p, &self.basis, x)
    }

    /// Is this ideal contained in `other` (same ambient algebra)?
    pub fn contained_in(&self, other: &Ideal) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Does some power of the ideal vanish?
    pub fn is_nilpotent(&self) -> bool {
        let p = self.ambient.p;
        let mut power = self.basis.clone();
        loop {
            if power.is_empty() {
                return true;
            }
            let mut next = Vec::new();
            for u in &power {
                for v in &self.basis {
                    next.push(self.ambient.mul_elems(u, v));
                }
            }
            let next = echelonize(p, &next);
            if next.len() >= power.len() {
                // Dimension stopped shrinking at a nonzero value.
                return next.is_empty();
            }
            power = next;
        }
    }
}

/// Jacobson radical via the characteristic-coefficient chain: starting from
/// the whole algebra, repeatedly keep the elements `x` for which the
/// `(p^g)`-th characteristic coefficient of right multiplication by `x·y`
/// vanishes for every `y` in the current subspace, for `g = 0, 1, …` while
/// `p^g ≤ dim`. Over a prime field each such condition is linear, and the
/// final subspace is exactly the radical (the largest nilpotent ideal).
pub fn jacobson_radical(alg: &Arc<Algebra>) -> Ideal {
    let p = alg.p;
    let n = alg.dim;
    let mut basis: Vec<Vec<u64>> = (0..n).map(|i| basis_vec(n, i)).collect();
    let mut pg: u64 = 1;
    while pg <= n as u64 {
        if basis.is_empty() {
            break;
        }
        let m = basis.len();
        let rmats: Vec<FpMatrix> = basis.iter().map(|b| alg.right_mul_matrix(b)).collect();
        // Constraint matrix: one row per y in the basis, one column per x.
        let mut cm = FpMatrix::zeros(p, m, m);
        for (yi, ry) in rmats.iter().enumerate() {
            for (xj, rx) in rmats.iter().enumerate() {
                let prod = rx.mul(ry).expect("square");
                let cp = prod.char_poly();
                cm.set(yi, xj, cp[pg as usize]);
            }
        }
        let null = cm.nullspace_basis();
        let mut new_rows = Vec::with_capacity(null.len());
        for xi in &null {
            let mut v = vec![0u64; n];
            for (j, &c) in xi.iter().enumerate() {
                if c != 0 {
                    for (k, slot) in v.iter_mut().enumerate() {
                        *slot = (*slot + c * basis[j][k]) % p;
                    }
                }
            }
            new_rows.push(v);
        }
        basis = echelonize(p, &new_rows);
        pg *= p;
    }
    Ideal { ambient: alg.clone(), basis }
}

/// Reference implementation of the radical: an element is in the radical iff
/// the two-sided ideal it generates is nilpotent. Only usable when the
/// algebra has at most 2^10 elements.
pub fn radical_brute_force(alg: &Arc<Algebra>) -> Result<Ideal> {
    if alg.element_count() > 1 << 10 {
        return Err(Error::CapExceeded(format!(
            "brute-force radical needs ≤ 2^10 elements, algebra has p^{}",
            alg.dim
        )));
    }
    let mut members = Vec::new();
    for v in crate::linalg::fp::all_vectors(alg.p, alg.dim) {
        if Ideal::from_generators(alg, &[v.clone()]).is_nilpotent() {
            members.push(v);
        }
    }
    Ok(Ideal { ambient: alg.clone(), basis: echelonize(alg.p, &members) })
}

/// Smallest unital subalgebra containing the given elements, with its
/// inclusion morphism.
pub fn subalgebra_generated(
    alg: &Arc<Algebra>,
    gens: &[Vec<u64>],
) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
    let p = alg.p;
    let mut rows: Vec<Vec<u64>> = vec![alg.unit.clone()];
    rows.extend(gens.iter().cloned());
    let mut basis = echelonize(p, &rows);
    loop {
        let mut new_rows = basis.clone();
        for a in &basis {
            for b in &basis {
                new_rows.push(alg.mul_elems(a, b));
            }
        }
        let closed = echelonize(p, &new_rows);
        if closed.len() == basis.len() {
            break;
        }
        basis = closed;
    }
    let m = basis.len();
    let labels: Vec<String> = basis.iter().map(|b| alg.element_label(b)).collect();
    let mut mul = vec![vec![vec![0u64; m]; m]; m];
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let prod = alg.mul_elems(a, b);
            mul[i][j] = coords_in_rowbasis(p, &basis, &prod)
                .expect("subalgebra closed under multiplication");
        }
    }
    let unit =
        coords_in_rowbasis(p, &basis, &alg.unit).expect("unit lies in a unital subalgebra");
    let sub = Algebra::new(p, labels, mul, unit)?;
    let incl = AlgebraMorphism::new(sub.clone(), alg.clone(), FpMatrix::from_rows(p, &basis))?;
    Ok((sub, incl))
}

/// Quotient by a two-sided ideal, with the projection morphism.
/// The quotient basis consists of the images of the original basis elements
/// at the non-pivot coordinates of the ideal.
pub fn quotient_by_ideal(
    alg: &Arc<Algebra>,
    ideal: &Ideal,
) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
    let p = alg.p;
    let n = alg.dim;
    if ideal.contains(&alg.unit) {
        return Err(Error::IdealContainsUnit);
    }
    let pivots: Vec<usize> = ideal
        .basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis row"))
        .collect();
    let keep: Vec<usize> = (0..n).filter(|k| !pivots.contains(k)).collect();
    let m = keep.len();
    // reduce(v): subtract ideal rows to zero the pivot coordinates, then read
    // off the kept coordinates.
    let project = |v: &[u64]| -> Vec<u64> {
        let mut w = v.to_vec();
        for (b, &piv) in ideal.basis.iter().zip(pivots.iter()) {
            let c = w[piv];
            if c != 0 {
                for (wi, bi) in w.iter_mut().zip(b.iter()) {
                    *wi = (*wi + (p - c) * bi) % p;
                }
            }
        }
        keep.iter().map(|&k| w[k]).collect()
    };
    let labels: Vec<String> = keep.iter().map(|&k| alg.labels[k].clone()).collect();
    let mut mul = vec![vec![vec![0u64; m]; m]; m];
    for (s, &ks) in keep.iter().enumerate() {
        for (t, &kt) in keep.iter().enumerate() {
            mul[s][t] = project(&alg.mul[ks][kt]);
        }
    }
    let unit = project(&alg.unit);
    let quot = Algebra::new(p, labels, mul, unit)?;
    let proj_rows: Vec<Vec<u64>> = (0..n).map(|i| project(&basis_vec(n, i))).collect();
    let proj =
        AlgebraMorphism::new(alg.clone(), quot.clone(), FpMatrix::from_rows(p, &proj_rows))?;
    debug_assert!(proj.surjective);
    Ok((quot, proj))
}

/// Kernel of an algebra morphism, as a two-sided ideal of the source.
pub fn kernel_ideal(f: &AlgebraMorphism) -> Ideal {
    let basis = f.matrix.left_nullspace_basis();
    Ideal::from_basis_checked(&f.source, basis)
        .expect("kernel of a morphism is automatically a two-sided ideal")
}

/// Unit group of a commutative algebra as invariant factors plus explicit
/// generators. Enumeration-based, so the algebra must have at most `cap`
/// elements.
pub fn unit_group(alg: &Arc<Algebra>, cap: u64) -> Result<UnitGroup> {
    if !alg.is_commutative() {
        return Err(Error::NotCommutative("unit_group needs a commutative algebra".into()));
    }
    if alg.element_count() > cap as u128 {
        return Err(Error::CapExceeded(format!(
            "unit_group: p^{} elements exceeds cap {cap}",
            alg.dim
        )));
    }
    let units: Vec<Vec<u64>> = crate::linalg::fp::all_vectors(alg.p, alg.dim)
        .filter(|v| alg.is_unit(v))
        .collect();
    let order = units.len() as u64;
    // Greedy generators: repeatedly take the element of maximal order not in
    // the subgroup generated so far (first in enumeration order on ties).
    let mut gens: Vec<Vec<u64>> = Vec::new();
    let mut orders: Vec<u64> = Vec::new();
    let mut subgroup: Vec<Vec<u64>> = vec![alg.unit.clone()];
    while (subgroup.len() as u64) < order {
        let g = units
            .iter()
            .filter(|u| !subgroup.contains(u))
            .max_by(|a, b| {
                alg.element_order(a).cmp(&alg.element_order(b)).then(
                    // Prefer the earlier element: reversed comparison.
                    units
                        .iter()
                        .position(|x| x == *b)
                        .cmp(&units.iter().position(|x| x == *a)),
                )
            })
            .expect("subgroup smaller than group");
        gens.push(g.clone());
        orders.push(alg.element_order(g));
        subgroup = close_subgroup(alg, &gens);
    }
    if gens.is_empty() {
        return Ok(UnitGroup {
            order,
            factors: vec![],
            generators: vec![],
            generator_labels: vec![],
        });
    }
    // Relation lattice on the greedy generators: all exponent tuples in the
    // order box with product 1, plus the order relations themselves.
    let tuple_count: u128 = orders.iter().map(|&o| o as u128).product();
    if tuple_count > 1 << 16 {
        return Err(Error::CapExceeded("unit_group relation harvest too large".into()));
    }
    let k = gens.len();
    let mut rel_rows: Vec<Vec<i64>> = Vec::new();
    for (i, &o) in orders.iter().enumerate() {
        let mut r = vec![0i64; k];
        r[i] = o as i64;
        rel_rows.push(r);
    }
    for t in 0..tuple_count {
        let mut idx = t;
        let mut exps = vec![0u64; k];
        for (i, &o) in orders.iter().enumerate() {
            exps[i] = (idx % o as u128) as u64;
            idx /= o as u128;
        }
        if exps.iter().all(|&e| e == 0) {
            continue;
        }
        let mut prod = alg.unit.clone();
        for (g, &e) in gens.iter().zip(exps.iter()) {
            prod = alg.mul_elems(&prod, &alg.pow_elem(g, e));
        }
        if prod == alg.unit {
            rel_rows.push(exps.iter().map(|&e| e as i64).collect());
        }
    }
    let rels = IntMatrix::from_i64_rows(&rel_rows);
    let snf = rels.snf();
    assert_eq!(snf.rank, k, "unit group is finite");
    let vinv = snf.v.inverse_unimodular();
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for (t, d) in snf.d.iter().enumerate() {
        let d = u64::try_from(d).expect("small factor");
        if d == 1 {
            continue;
        }
        // New generator t in terms of the old: row t of v^{-1}.
        let mut elem = alg.unit.clone();
        for (i, g) in gens.iter().enumerate() {
            let raw = vinv.get(t, i);
            let o = num_bigint::BigInt::from(orders[i]);
            let e = ((raw % &o) + &o) % &o;
            let e = u64::try_from(&e).expect("reduced exponent");
            elem = alg.mul_elems(&elem, &alg.pow_elem(g, e));
        }
        assert_eq!(alg.element_order(&elem), d, "generator order matches factor");
        factors.push(d);
        generators.push(elem);
    }
    // Ascending divisibility order (SNF yields it already).
    debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
    assert_eq!(factors.iter().product::<u64>(), order, "factor product = unit count");
    assert_eq!(close_subgroup(alg, &generators).len() as u64, order);
    let generator_labels = generators.iter().map(|g| alg.element_label(g)).collect();
    Ok(UnitGroup { order, factors, generators, generator_labels })
}

/// Do the given unit elements generate the whole unit group?
pub fn accepts_generators(alg: &Arc<Algebra>, elems: &[Vec<u64>], cap: u64) -> Result<bool> {
    if !alg.is_commutative() {
        return Err(Error::NotCommutative("accepts_generators needs commutativity".into()));
    }
    if alg.element_count() > cap as u128 {
        return Err(Error::CapExceeded("accepts_generators enumeration too large".into()));
    }
    if !elems.iter().all(|e| alg.is_unit(e)) {
        return Ok(false);
    }
    let total = crate::linalg::fp::all_vectors(alg.p, alg.dim)
        .filter(|v| alg.is_unit(v))
        .count();
    Ok(close_subgroup(alg, elems).len() == total)
}

/// Closure of elements under the (abelian) group operation.
fn close_subgroup(alg: &Arc<Algebra>, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut seen: Vec<Vec<u64>> = vec![alg.unit.clone()];
    let mut frontier = vec![alg.unit.clone()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = alg.mul_elems(&x, g);
            if !seen.contains(&y) {
                seen.push(y.clone());
                frontier.push(y);
            }
        }
    }
    seen
}

/// Free-basis search: elements `b_1, …, b_r` of `alg` with
/// `alg = ⊕ b_i · S` as right modules over the subalgebra image of `incl`.
/// Returns `None` if no free basis exists (verified exhaustively up to the
/// node cap).
pub fn is_free_over_subalgebra(
    alg: &Arc<Algebra>,
    incl: &AlgebraMorphism,
) -> Result<Option<Vec<Vec<u64>>>> {
    if *incl.target != **alg {
        return Err(Error::AlgebraMismatch("inclusion target differs from algebra".into()));
    }
    let p = alg.p;
    let n = alg.dim;
    let sub_dim = incl.source.dim;
    if n % sub_dim != 0 {
        return Ok(None);
    }
    let r = n / sub_dim;
    let sub_basis: Vec<Vec<u64>> = (0..sub_dim).map(|i| incl.matrix.row(i)).collect();
    let total = crate::linalg::fp::vector_count(p, n);
    if total > 1 << 20 {
        return Err(Error::CapExceeded("free-basis search space too large".into()));
    }
    // Candidate vectors in deterministic order: the unit first, then all
    // vectors by index.
    let mut candidates: Vec<Vec<u64>> = vec![alg.unit.clone()];
    candidates.extend(crate::linalg::fp::all_vectors(p, n));
    // Depth-first search over increasing candidate indices.
    fn dfs(
        alg: &Algebra,
        sub_basis: &[Vec<u64>],
        candidates: &[Vec<u64>],
        start: usize,
        chosen: &mut Vec<Vec<u64>>,
        span: &Vec<Vec<u64>>,
        r: usize,
        nodes: &mut u64,
    ) -> Option<Vec<Vec<u64>>> {
        if chosen.len() == r {
            return Some(chosen.clone());
        }
        let p = alg.p;
        for ci in start..candidates.len() {
            *nodes += 1;
            if *nodes > 1 << 20 {
                return None;
            }
            let b = &candidates[ci];
            let w: Vec<Vec<u64>> = sub_basis.iter().map(|s| alg.mul_elems(b, s)).collect();
            let mut all_rows = span.clone();
            all_rows.extend(w.iter().cloned());
            let new_span = echelonize(p, &all_rows);
            if new_span.len() != span.len() + sub_basis.len() {
                continue; // b·S not free or not independent of current span
            }
            chosen.push(b.clone());
            if let Some(found) =
                dfs(alg, sub_basis, candidates, ci + 1, chosen, &new_span, r, nodes)
            {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
    let mut nodes = 0u64;
    let result = dfs(
        alg,
        &sub_basis,
        &candidates,
        0,
        &mut Vec::new(),
        &Vec::new(),
        r,
        &mut nodes,
    );
    if nodes > 1 << 20 {
        return Err(Error::CapExceeded("free-basis search exceeded node cap".into()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_shapes() {
        let t2 = Algebra::trunc_poly(2, 2).unwrap();
        assert_eq!(t2.dim, 2);
        assert!(t2.is_commutative());
        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        assert_eq!(t4.dim, 4);
        let ext = Algebra::exterior(2, 2).unwrap();
        assert_eq!(ext.dim, 4);
        assert_eq!(ext.labels, vec!["1", "x", "y", "xy"]);
        assert!(ext.is_commutative()); // char 2: xy = -yx = yx
        let f = Algebra::field(2).unwrap();
        assert_eq!(f.dim, 1);
        let s = Algebra::square_zero(2, 2).unwrap();
        assert_eq!(s.dim, 3);
        // char 3 exterior algebra is not commutative.
        let e3 = Algebra::exterior(3, 2).unwrap();
        assert!(!e3.is_commutative());
        let m2 = Algebra::full_matrix(2, 2).unwrap();
        assert_eq!(m2.dim, 4);
        assert!(!m2.is_commutative());
    }

    #[test]
    fn exterior_signs_anticommute() {
        let e3 = Algebra::exterior(3, 2).unwrap();
        // x·y = xy, y·x = -xy = 2·xy over F_3.
        let x = vec![0, 1, 0, 0];
        let y = vec![0, 0, 1, 0];
        assert_eq!(e3.mul_elems(&x, &y), vec![0, 0, 0, 1]);
        assert_eq!(e3.mul_elems(&y, &x), vec![0, 0, 0, 2]);
        assert_eq!(e3.mul_elems(&x, &x), vec![0, 0, 0, 0]);
    }

    #[test]
    fn construction_rejects_non_associative() {
        // e1·e1 = e2 but e1·(e1·e1) ≠ (e1·e1)·e1 by construction.
        let mut mul = vec![vec![vec![0u64; 3]; 3]; 3];
        for j in 0..3 {
            mul[0][j][j] = 1; // e0 = 1 acts as identity on the left
            mul[j][0][j] = 1; // and on the right
        }
        mul[1][1][2] = 1; // e1 e1 = e2
        mul[1][2][2] = 1; // e1 e2 = e2
        // e2 e1 = 0, e2 e2 = 0: (e1e1)e1 = e2e1 = 0 but e1(e1e1) = e1e2 = e2.
        let err = Algebra::new(
            2,
            vec!["1".into(), "a".into(), "b".into()],
            mul,
            vec![1, 0, 0],
        )
        .unwrap_err();
        match err {
            Error::NonAssociative(1, 1, 1) => {}
            other => panic!("expected NonAssociative(1,1,1), got {other:?}"),
        }
    }

    #[test]
    fn construction_rejects_bad_unit() {
        // Valid multiplication (trunc_poly) but the claimed unit is x.
        let t2 = Algebra::trunc_poly(2, 2).unwrap();
        let err = Algebra::new(2, t2.labels.clone(), t2.mul.clone(), vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::BadUnit(_)));
    }

    #[test]
    fn construction_rejects_bad_prime() {
        let t2 = Algebra::trunc_poly(2, 2).unwrap();
        let err = Algebra::new(4, t2.labels.clone(), t2.mul.clone(), vec![1, 0]).unwrap_err();
        assert!(matches!(err, Error::BadPrime(4)));
    }

    #[test]
    fn regular_representation_is_multiplicative() {
        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        let x = vec![1, 1, 0, 1];
        let y = vec![0, 1, 1, 0];
        let rx = t4.right_mul_matrix(&x);
        let ry = t4.right_mul_matrix(&y);
        let rxy = t4.right_mul_matrix(&t4.mul_elems(&x, &y));
        assert_eq!(rx.mul(&ry).unwrap(), rxy);
        // Left multiplication anti-commutes with composition order but still
        // represents the product correctly pointwise.
        let lx = t4.left_mul_matrix(&x);
        assert_eq!(lx.row_apply(&y), t4.mul_elems(&x, &y));
    }

    #[test]
    fn radical_of_presets() {
        let f = Algebra::field(2).unwrap();
        assert_eq!(jacobson_radical(&f).dim(), 0);

        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        let rad = jacobson_radical(&t4);
        assert_eq!(rad.dim(), 3);
        // span{x, x^2, x^3}
        for k in 1..4 {
            let mut v = vec![0u64; 4];
            v[k] = 1;
            assert!(rad.contains(&v));
        }
        assert!(!rad.contains(&t4.unit));

        let ext = Algebra::exterior(2, 2).unwrap();
        let rad = jacobson_radical(&ext);
        assert_eq!(rad.dim(), 3);

        // Semisimple non-commutative: M_2(F_2) has zero radical.
        let m2 = Algebra::full_matrix(2, 2).unwrap();
        assert_eq!(jacobson_radical(&m2).dim(), 0);

        // Upper triangular: radical is span{E12}.
        let tri = Algebra::upper_triangular_2x2(2).unwrap();
        let rad = jacobson_radical(&tri);
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&[0, 1, 0]));
    }

    #[test]
    fn radical_matches_brute_force() {
        let algebras = vec![
            Algebra::field(2).unwrap(),
            Algebra::field(3).unwrap(),
            Algebra::trunc_poly(2, 2).unwrap(),
            Algebra::trunc_poly(2, 4).unwrap(),
            Algebra::trunc_poly(3, 3).unwrap(),
            Algebra::exterior(2, 2).unwrap(),
            Algebra::exterior(3, 2).unwrap(),
            Algebra::square_zero(2, 2).unwrap(),
            Algebra::upper_triangular_2x2(2).unwrap(),
            Algebra::upper_triangular_2x2(3).unwrap(),
            Algebra::full_matrix(2, 2).unwrap(),
        ];
        for alg in algebras {
            let fast = jacobson_radical(&alg);
            let slow = radical_brute_force(&alg).unwrap();
            assert_eq!(fast.basis, slow.basis, "radical mismatch for {alg:?}");
        }
    }

    #[test]
    fn radical_is_nilpotent_and_quotient_semisimple() {
        for alg in [
            Algebra::trunc_poly(2, 4).unwrap(),
            Algebra::exterior(2, 2).unwrap(),
            Algebra::upper_triangular_2x2(2).unwrap(),
        ] {
            let rad = jacobson_radical(&alg);
            assert!(rad.is_nilpotent());
            let (quot, _) = quotient_by_ideal(&alg, &rad).unwrap();
            assert_eq!(jacobson_radical(&quot).dim(), 0);
        }
    }

    #[test]
    fn subalgebra_examples() {
        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        // Generated by x²: dimension 2, same table as trunc_poly(2,2).
        let x2 = vec![0, 0, 1, 0];
        let (sub, incl) = subalgebra_generated(&t4, &[x2]).unwrap();
        assert_eq!(sub.dim, 2);
        let t2 = Algebra::trunc_poly(2, 2).unwrap();
        assert_eq!(sub.mul, t2.mul);
        assert_eq!(sub.unit, t2.unit);
        assert!(!incl.surjective);
        // Empty generating set: the span of the unit.
        let (sub, _) = subalgebra_generated(&t4, &[]).unwrap();
        assert_eq!(sub.dim, 1);
        // Generated by x: everything.
        let (sub, incl) = subalgebra_generated(&t4, &[vec![0, 1, 0, 0]]).unwrap();
        assert_eq!(sub.dim, 4);
        assert!(incl.surjective);
    }

    #[test]
    fn subalgebra_closed_under_multiplication() {
        let ext = Algebra::exterior(2, 2).unwrap();
        let (sub, incl) = subalgebra_generated(&ext, &[vec![0, 1, 1, 0]]).unwrap();
        // Products of any two basis images stay in the image span.
        let rows: Vec<Vec<u64>> = (0..sub.dim).map(|i| incl.matrix.row(i)).collect();
        for a in &rows {
            for b in &rows {
                assert!(in_row_span(2, &echelonize(2, &rows), &ext.mul_elems(a, b)));
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        let ideal = Ideal::from_generators(&t4, &[vec![0, 0, 1, 0]]);
        assert_eq!(ideal.dim(), 2); // span{x², x³}
        let (quot, proj) = quotient_by_ideal(&t4, &ideal).unwrap();
        let t2 = Algebra::trunc_poly(2, 2).unwrap();
        assert_eq!(quot.mul, t2.mul);
        assert!(proj.surjective);
        // Kernel of the projection: span{x², x³}.
        let ker = kernel_ideal(&proj);
        assert_eq!(ker.basis, vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        // Quotient by the zero ideal: identity-shaped morphism.
        let zero = Ideal::from_generators(&t4, &[]);
        let (q0, pr0) = quotient_by_ideal(&t4, &zero).unwrap();
        assert_eq!(q0.dim, 4);
        assert!(pr0.matrix.is_identity());
        // Quotient by something containing 1 fails.
        let full = Ideal::from_generators(&t4, &[t4.unit.clone()]);
        assert!(matches!(
            quotient_by_ideal(&t4, &full).unwrap_err(),
            Error::IdealContainsUnit
        ));
    }

    #[test]
    fn quotient_by_kernel_is_image() {
        // For the projection t4 -> t2, the induced map t4/ker -> t2 must be a
        // bijective algebra morphism.
        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        let ideal = Ideal::from_generators(&t4, &[vec![0, 0, 1, 0]]);
        let (_, proj) = quotient_by_ideal(&t4, &ideal).unwrap();
        let ker = kernel_ideal(&proj);
        let (quot2, proj2) = quotient_by_ideal(&t4, &ker).unwrap();
        // Induced map: lift each quotient basis element along proj2, then map
        // by proj. Well-defined because ker(proj2) = ker(proj).
        let lift_rows: Vec<Vec<u64>> = (0..quot2.dim)
            .map(|t| {
                // Find a preimage of the t-th quotient basis vector.
                let mut target = vec![0u64; quot2.dim];
                target[t] = 1;
                let tm = FpMatrix::from_rows(2, &[target]);
                proj2.matrix.solve_left(&tm).expect("surjective").row(0)
            })
            .collect();
        let induced_rows: Vec<Vec<u64>> =
            lift_rows.iter().map(|r| proj.matrix.row_apply(r)).collect();
        let induced = AlgebraMorphism::new(
            quot2.clone(),
            proj.target.clone(),
            FpMatrix::from_rows(2, &induced_rows),
        )
        .expect("induced map is an algebra morphism");
        assert!(induced.surjective);
        assert_eq!(induced.source.dim, induced.target.dim);
        assert!(induced.matrix.inverse().is_some());
    }

    #[test]
    fn unit_group_examples() {
        let t2 = Algebra::trunc_poly(2, 2).unwrap();
        let g = unit_group(&t2, 1 << 20).unwrap();
        assert_eq!(g.order, 2);
        assert_eq!(g.factors, vec![2]);
        assert_eq!(g.generators, vec![vec![1, 1]]); // 1 + x
        assert_eq!(g.to_string(), "Z/2");

        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        let g = unit_group(&t4, 1 << 20).unwrap();
        assert_eq!(g.order, 8);
        assert_eq!(g.factors, vec![2, 4]);
        assert_eq!(g.to_string(), "Z/4 ⊕ Z/2");
        // The documented generating pair also generates: 1+x (order 4) and
        // 1+x²+x³ (order 2).
        let a = t4.parse_element("1+x").unwrap();
        let b = t4.parse_element("1+x^2+x^3").unwrap();
        assert_eq!(t4.element_order(&a), 4);
        assert_eq!(t4.element_order(&b), 2);
        assert!(accepts_generators(&t4, &[a, b], 1 << 20).unwrap());

        let f2 = Algebra::field(2).unwrap();
        let g = unit_group(&f2, 1 << 20).unwrap();
        assert_eq!(g.order, 1);
        assert!(g.factors.is_empty());
        assert_eq!(g.to_string(), "0");

        // Non-commutative input is rejected.
        let tri = Algebra::upper_triangular_2x2(2).unwrap();
        assert!(matches!(
            unit_group(&tri, 1 << 20).unwrap_err(),
            Error::NotCommutative(_)
        ));

        // Mixed-prime torsion: F_3[x]/x² has unit group Z/6.
        let t32 = Algebra::trunc_poly(3, 2).unwrap();
        let g = unit_group(&t32, 1 << 20).unwrap();
        assert_eq!(g.order, 6);
        assert_eq!(g.factors, vec![6]);
    }

    #[test]
    fn unit_counts_for_local_presets() {
        for (alg, d) in [
            (Algebra::trunc_poly(2, 2).unwrap(), 2),
            (Algebra::trunc_poly(2, 4).unwrap(), 4),
            (Algebra::exterior(2, 2).unwrap(), 4),
            (Algebra::trunc_poly(3, 3).unwrap(), 3),
        ] {
            let p = alg.p;
            let g = unit_group(&alg, 1 << 20).unwrap();
            assert_eq!(g.order, p.pow(d) - p.pow(d - 1), "{alg:?}");
        }
    }

    #[test]
    fn free_basis_examples() {
        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        let (_, incl) = subalgebra_generated(&t4, &[vec![0, 0, 1, 0]]).unwrap();
        let basis = is_free_over_subalgebra(&t4, &incl).unwrap().expect("free");
        assert_eq!(basis, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]); // {1, x}

        // Any algebra over itself: basis {1}.
        let (_, full) = subalgebra_generated(&t4, &[vec![0, 1, 0, 0]]).unwrap();
        let basis = is_free_over_subalgebra(&t4, &full).unwrap().expect("free");
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], t4.unit);

        // Exterior algebra over the subalgebra on x: basis {1, y}.
        let ext = Algebra::exterior(2, 2).unwrap();
        let (_, incl) = subalgebra_generated(&ext, &[vec![0, 1, 0, 0]]).unwrap();
        let basis = is_free_over_subalgebra(&ext, &incl).unwrap().expect("free");
        assert_eq!(basis, vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);

        // Not free: t4 over the subalgebra generated by x³.
        let (_, incl) = subalgebra_generated(&t4, &[vec![0, 0, 0, 1]]).unwrap();
        assert!(is_free_over_subalgebra(&t4, &incl).unwrap().is_none());

        // Dimension obstruction: square_zero(2,2) over span{1, x}.
        let s = Algebra::square_zero(2, 2).unwrap();
        let (_, incl) = subalgebra_generated(&s, &[vec![0, 1, 0]]).unwrap();
        assert!(is_free_over_subalgebra(&s, &incl).unwrap().is_none());
    }

    #[test]
    fn element_labels_round_trip() {
        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        for v in crate::linalg::fp::all_vectors(2, 4) {
            let s = t4.element_label(&v);
            assert_eq!(t4.parse_element(&s).unwrap(), v, "label {s}");
        }
        assert_eq!(t4.element_label(&[1, 0, 1, 1]), "1+x^2+x^3");
    }

    #[test]
    fn inverse_and_order() {
        let t4 = Algebra::trunc_poly(2, 4).unwrap();
        let a = t4.parse_element("1+x").unwrap();
        let inv = t4.inverse_elem(&a).expect("unit");
        assert_eq!(t4.mul_elems(&a, &inv), t4.unit);
        assert_eq!(t4.element_order(&a), 4);
        // x is not a unit.
        assert!(t4.inverse_elem(&[0, 1, 0, 0]).is_none());
        assert!(t4.is_nilpotent_elem(&[0, 1, 0, 0]));
        assert!(!t4.is_nilpotent_elem(&a));
    }

    #[test]
    fn opposite_squares_to_identity() {
        let tri = Algebra::upper_triangular_2x2(3).unwrap();
        let opp = tri.opposite();
        assert_ne!(opp.mul, tri.mul);
        assert_eq!(opp.opposite().mul, tri.mul);
        // Multiplication really is reversed.
        let a = vec![1, 1, 0];
        let b = vec![0, 1, 1];
        assert_eq!(opp.mul_elems(&a, &b), tri.mul_elems(&b, &a));
    }
}
