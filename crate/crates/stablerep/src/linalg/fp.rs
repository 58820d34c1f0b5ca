//! Dense matrices over the prime field `F_p`.
//!
//! Entries are stored as `u64` residues in `0..p`. All eliminations are exact
//! and deterministic: pivots are chosen as the first nonzero entry in column
//! order, so reduced forms (and hence every basis this crate returns) are
//! canonical for a given input.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Check that `p` is a (small) prime.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of `a` mod `p` (p prime, a nonzero).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    debug_assert!(a % p != 0);
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

/// Result of Gauss–Jordan reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Result of solving `a · x = b`.
#[derive(Clone, Debug)]
pub struct SolveResult {
    /// One solution per column of `b` (as columns of this matrix).
    pub particular: FpMatrix,
    /// Echelonized basis of the right nullspace of `a`.
    pub nullspace: Vec<Vec<u64>>,
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {} [", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j) % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> Vec<u64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// All entries in row-major order.
    pub fn data_vec(&self) -> Vec<u64> {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(other.data.iter()) {
            *a = (*a + *b) % self.p;
        }
        Ok(m)
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(other.data.iter()) {
            *a = (*a + self.p - *b) % self.p;
        }
        Ok(m)
    }

    pub fn neg(&self) -> FpMatrix {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = (self.p - *a) % self.p;
        }
        m
    }

    pub fn scale(&self, c: u64) -> FpMatrix {
        let c = c % self.p;
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = *a * c % self.p;
        }
        m
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::DimMismatch("different primes".into()));
        }
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (m.get(i, j) + a * other.get(k, j)) % self.p;
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// `self^e` (square matrix).
    pub fn pow(&self, mut e: u64) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch("pow of non-square matrix".into()));
        }
        let mut acc = FpMatrix::identity(self.p, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            b = b.mul(&b)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Row-vector product `v · self`.
    pub fn row_apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u64; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = (out[j] + c * self.get(i, j)) % self.p;
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.rows != other.rows || self.p != other.p {
            return Err(Error::DimMismatch("hstack".into()));
        }
        let mut m = Self::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(m)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.cols || self.p != other.p {
            return Err(Error::DimMismatch("vstack".into()));
        }
        let mut m = Self::zeros(self.p, self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                m.set(self.rows + i, j, other.get(i, j));
            }
        }
        Ok(m)
    }

    pub fn block_diag(p: u64, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    fn check_same_shape(&self, other: &FpMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.p != other.p {
            return Err(Error::DimMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form (Gauss–Jordan), with pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            // First nonzero entry in column c at row >= r.
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                let v = m.get(r, j) * inv % p;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + (p - f) * m.get(r, j)) % p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots, rank: r }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Echelonized basis of the right nullspace `{x : self · x = 0}`.
    pub fn nullspace_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let Rref { reduced, pivots, rank } = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                // pivot var = -sum(free coeffs)
                let coeff = reduced.get(r, fc);
                v[pc] = (p - coeff) % p;
            }
            basis.push(v);
        }
        basis
    }

    /// Echelonized basis of the column space.
    pub fn image_basis(&self) -> Vec<Vec<u64>> {
        let t = self.transpose();
        let Rref { reduced, rank, .. } = t.rref();
        (0..rank).map(|i| reduced.row(i)).collect()
    }

    /// Echelonized basis of the row space.
    pub fn row_space_basis(&self) -> Vec<Vec<u64>> {
        let Rref { reduced, rank, .. } = self.rref();
        (0..rank).map(|i| reduced.row(i)).collect()
    }

    /// Echelonized basis of the left nullspace `{x : x · self = 0}` (rows).
    pub fn left_nullspace_basis(&self) -> Vec<Vec<u64>> {
        self.transpose().nullspace_basis()
    }

    /// Solve `self · x = b` column-wise. `None` if inconsistent.
    pub fn solve(&self, b: &FpMatrix) -> Option<SolveResult> {
        if b.rows != self.rows || b.p != self.p {
            return None;
        }
        let aug = self.hstack(b).expect("hstack");
        let Rref { reduced, pivots, rank } = aug.rref();
        // Inconsistent iff a pivot lands in the b-part.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut particular = FpMatrix::zeros(self.p, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            for k in 0..b.cols {
                particular.set(pc, k, reduced.get(r, self.cols + k));
            }
        }
        Some(SolveResult { particular, nullspace: self.nullspace_basis() })
    }

    /// Solve `x · self = b` row-wise (row-vector convention). `None` if
    /// inconsistent.
    pub fn solve_left(&self, b: &FpMatrix) -> Option<FpMatrix> {
        let res = self.transpose().solve(&b.transpose())?;
        Some(res.particular.transpose())
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let res = self.solve(&FpMatrix::identity(self.p, self.rows))?;
        let cand = res.particular;
        if self.mul(&cand).ok()?.is_identity() {
            Some(cand)
        } else {
            None
        }
    }

    /// Determinant via Gaussian elimination.
    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let p = self.p;
        let mut m = self.clone();
        let mut det = 1u64;
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                det = (p - det) % p;
                for j in 0..m.cols {
                    let (a, b) = (m.get(c, j), m.get(pr, j));
                    m.set(c, j, b);
                    m.set(pr, j, a);
                }
            }
            det = det * m.get(c, c) % p;
            let inv = inv_mod(m.get(c, c), p);
            for i in c + 1..m.rows {
                if m.get(i, c) != 0 {
                    let f = m.get(i, c) * inv % p;
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + (p - f) * m.get(c, j)) % p;
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    /// Characteristic polynomial by the Berkowitz algorithm (division-free,
    /// valid over any field including small characteristic).
    ///
    /// Returns coefficients `c[0..=n]` with `c[0] = 1`, where the polynomial
    /// is `sum c[j] * x^(n-j)`.
    pub fn char_poly(&self) -> Vec<u64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        if n == 0 {
            return vec![1];
        }
        // v holds coefficients for the leading principal r x r block.
        let mut v: Vec<u64> = vec![1, (p - self.get(0, 0) % p) % p];
        for r in 1..n {
            // a = A[r][r]; R = A[r][0..r]; C = A[0..r][r]; s_k = R A_r^k C.
            let a = self.get(r, r);
            let rrow: Vec<u64> = (0..r).map(|j| self.get(r, j)).collect();
            let ccol: Vec<u64> = (0..r).map(|i| self.get(i, r)).collect();
            // Iteratively compute w = A_r^k C.
            let mut s = Vec::with_capacity(r);
            let mut w = ccol.clone();
            for _ in 0..r {
                let dot = rrow.iter().zip(w.iter()).fold(0u64, |acc, (&x, &y)| (acc + x * y) % p);
                s.push(dot);
                // w = A_r * w
                let mut nw = vec![0u64; r];
                for i in 0..r {
                    let mut acc = 0u64;
                    for j in 0..r {
                        acc = (acc + self.get(i, j) * w[j]) % p;
                    }
                    nw[i] = acc;
                }
                w = nw;
            }
            // Toeplitz column: [1, -a, -s0, -s1, ..., -s_{r-1}], length r+2.
            let mut colv = Vec::with_capacity(r + 2);
            colv.push(1u64);
            colv.push((p - a % p) % p);
            for &sk in &s {
                colv.push((p - sk) % p);
            }
            // v_new[i] = sum_j colv[i-j] * v[j]
            let mut nv = vec![0u64; r + 2];
            for (i, slot) in nv.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (j, &vj) in v.iter().enumerate() {
                    if i >= j && i - j < colv.len() {
                        acc = (acc + colv[i - j] * vj) % p;
                    }
                }
                *slot = acc;
            }
            v = nv;
        }
        v
    }
}

/// Iterate all vectors in `F_p^len` in lexicographic order of the index
/// expansion (least significant coordinate first).
pub fn all_vectors(p: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (p as u128).checked_pow(len as u32).expect("vector space too large");
    (0..total).map(move |mut idx| {
        let mut v = vec![0u64; len];
        for slot in v.iter_mut() {
            *slot = (idx % p as u128) as u64;
            idx /= p as u128;
        }
        v
    })
}

/// Number of vectors in `F_p^len` as u128 (for cap checks).
pub fn vector_count(p: u64, len: usize) -> u128 {
    (p as u128).checked_pow(len as u32).unwrap_or(u128::MAX)
}

/// Decode index `idx` into a vector of `F_p^len`.
pub fn decode_vector(p: u64, len: usize, mut idx: u128) -> Vec<u64> {
    let mut v = vec![0u64; len];
    for slot in v.iter_mut() {
        *slot = (idx % p as u128) as u64;
        idx /= p as u128;
    }
    v
}

/// Reduced echelonized basis of the span of `rows` (deterministic).
pub fn echelonize(p: u64, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = FpMatrix::from_rows(p, rows);
    let Rref { reduced, rank, .. } = m.rref();
    (0..rank).map(|i| reduced.row(i)).collect()
}

/// Coordinates of `v` in a *reduced* echelonized basis (as from
/// [`echelonize`]), or `None` if `v` is outside the span.
pub fn coords_in_rowbasis(p: u64, basis: &[Vec<u64>], v: &[u64]) -> Option<Vec<u64>> {
    // In reduced echelon form each pivot column is zero in all other rows,
    // so the coefficient of basis row i is just v[pivot_i].
    let mut coords = Vec::with_capacity(basis.len());
    let mut w = v.to_vec();
    for b in basis {
        let lead = b.iter().position(|&x| x != 0).expect("zero basis row");
        debug_assert_eq!(b[lead], 1, "basis not reduced");
        let c = w[lead] % p;
        coords.push(c);
        if c != 0 {
            for (wi, bi) in w.iter_mut().zip(b.iter()) {
                *wi = (*wi + (p - c) * bi) % p;
            }
        }
    }
    if w.iter().all(|&x| x == 0) {
        Some(coords)
    } else {
        None
    }
}

/// Is `v` in the row span of the echelonized `basis`? (All rows reduced.)
pub fn in_row_span(p: u64, basis: &[Vec<u64>], v: &[u64]) -> bool {
    let mut w = v.to_vec();
    for b in basis {
        let lead = match b.iter().position(|&x| x != 0) {
            Some(l) => l,
            None => continue,
        };
        if w[lead] != 0 {
            let f = w[lead] * inv_mod(b[lead], p) % p;
            for (wi, bi) in w.iter_mut().zip(b.iter()) {
                *wi = (*wi + (p - f) * bi) % p;
            }
        }
    }
    w.iter().all(|&x| x == 0)
}
