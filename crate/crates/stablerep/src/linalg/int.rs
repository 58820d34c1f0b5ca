//! Exact integer matrices: Smith normal form, lattice membership, and
//! finitely presented abelian-group data.
//!
//! Entries are arbitrary-precision integers so no intermediate overflow is
//! possible during elimination.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

/// Smith normal form `u · m · v = diag(d)` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Number of nonzero invariant factors.
    pub rank: usize,
}

/// Presentation data for `Z^n / rowspan(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelData {
    /// Rank of the free part.
    pub free_rank: usize,
    /// Torsion invariant factors > 1, in divisibility order.
    pub factors: Vec<BigInt>,
    /// Image of each original generator: coordinates are
    /// `factors.len()` torsion entries (reduced mod factor) followed by
    /// `free_rank` free entries.
    pub gen_images: Vec<Vec<BigInt>>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
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

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "mul shape");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Row-vector product `v · self`.
    pub fn row_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot += c * self.get(i, j);
            }
        }
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack shape");
        let mut m = Self::zeros(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                m.set(self.rows + i, j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(pr) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    let (a, b) = (m.get(k, j).clone(), m.get(pr, j).clone());
                    m.set(k, j, b);
                    m.set(pr, j, a);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    m.set(i, j, &num / &prev);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Smith normal form with tracked transforms: `u · self · v = diag(d)`.
    pub fn snf(&self) -> Snf {
        let mut m = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0; // current diagonal slot
        while t < n {
            // Find a nonzero pivot in the trailing block; pick smallest |value|
            // for speed/determinism.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    if !m.get(i, j).is_zero() {
                        match best {
                            None => best = Some((i, j)),
                            Some((bi, bj)) => {
                                if m.get(i, j).abs() < m.get(bi, bj).abs() {
                                    best = Some((i, j));
                                }
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap_rows(t, pi);
            u.swap_rows(t, pi);
            m.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // Clear row and column t by Euclidean steps.
            loop {
                let mut dirty = false;
                for i in t + 1..m.rows {
                    if !m.get(i, t).is_zero() {
                        let q = div_round(m.get(i, t), m.get(t, t));
                        if !q.is_zero() {
                            m.row_axpy(i, t, &-&q);
                            u.row_axpy(i, t, &-&q);
                        }
                        if !m.get(i, t).is_zero() {
                            // Remainder smaller than pivot: swap up and retry.
                            m.swap_rows(t, i);
                            u.swap_rows(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..m.cols {
                    if !m.get(t, j).is_zero() {
                        let q = div_round(m.get(t, j), m.get(t, t));
                        if !q.is_zero() {
                            m.col_axpy(j, t, &-&q);
                            v.col_axpy(j, t, &-&q);
                        }
                        if !m.get(t, j).is_zero() {
                            m.swap_cols(t, j);
                            v.swap_cols(t, j);
                            dirty = true;
                        }
                    }
                }
                let row_clear = (t + 1..m.rows).all(|i| m.get(i, t).is_zero());
                let col_clear = (t + 1..m.cols).all(|j| m.get(t, j).is_zero());
                if row_clear && col_clear {
                    break;
                }
                if !dirty && (!row_clear || !col_clear) {
                    // Should not happen; guards against a stall.
                    break;
                }
            }

            // Divisibility pass: pivot must divide every trailing entry.
            let piv = m.get(t, t).clone();
            let mut fixed = true;
            'scan: for i in t + 1..m.rows {
                for j in t + 1..m.cols {
                    if !(m.get(i, j) % &piv).is_zero() {
                        // Add row i to row t, then redo this slot.
                        m.row_axpy(t, i, &BigInt::one());
                        u.row_axpy(t, i, &BigInt::one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                if m.get(t, t).is_negative() {
                    m.negate_row(t);
                    u.negate_row(t);
                }
                t += 1;
            }
        }
        let d: Vec<BigInt> = (0..n).map(|i| m.get(i, i).clone()).filter(|x| !x.is_zero()).collect();
        let rank = d.len();
        Snf { d, u, v, rank }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self.get(a, j).clone(), self.get(b, j).clone());
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a).clone(), self.get(i, b).clone());
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    /// row[a] += q * row[b]
    fn row_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(a, j) + q * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col[a] += q * col[b]
    fn col_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, a) + q * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j);
            self.set(a, j, v);
        }
    }

    /// Is `x` in the integer row span of `self`? If so, return a witness `w`
    /// with `w · self = x`.
    pub fn rowspan_membership(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.cols);
        let snf = self.snf();
        // u m v = D  =>  m = u^-1 D v^-1. x = w m  <=>  x v = (w u^-1) D.
        let xv = {
            let xm = IntMatrix::from_rows(&[x.to_vec()]);
            xm.mul(&snf.v).row(0)
        };
        let mut coeffs = vec![BigInt::zero(); self.rows];
        for (k, yk) in xv.iter().enumerate() {
            if k < snf.rank {
                if !(yk % &snf.d[k]).is_zero() {
                    return None;
                }
                coeffs[k] = yk / &snf.d[k];
            } else if !yk.is_zero() {
                return None;
            }
        }
        // w = coeffs · u (w u^-1 = coeffs  =>  w = coeffs u).
        let w = snf.u.row_apply(&coeffs);
        debug_assert_eq!(self.row_apply(&w), x.to_vec());
        Some(w)
    }

    /// Echelon-free basis of `{w : w · self = 0}` (integer left kernel):
    /// rows `rank..` of `u` from the SNF.
    pub fn left_kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let snf = self.snf();
        (snf.rank..self.rows).map(|i| snf.u.row(i)).collect()
    }

    /// Inverse of a unimodular (det ±1) square matrix.
    pub fn inverse_unimodular(&self) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let snf = self.snf();
        assert!(
            snf.d.iter().all(|x| *x == BigInt::one()) && snf.rank == self.rows,
            "matrix is not unimodular"
        );
        // u · self · v = I  =>  self^{-1} = v · u.
        let inv = snf.v.mul(&snf.u);
        debug_assert!(self.mul(&inv).eq(&IntMatrix::identity(self.rows)));
        inv
    }

    /// Presentation of `Z^ngens / rowspan(self)` where `self.cols == ngens`.
    pub fn cokernel_presentation(&self) -> CokernelData {
        let ngens = self.cols;
        let snf = self.snf();
        let free_rank = ngens - snf.rank;
        let factors: Vec<BigInt> =
            snf.d.iter().filter(|f| **f > BigInt::one()).cloned().collect();
        let skip = snf.rank - factors.len(); // leading 1s contribute nothing
        // New coordinates: y = x · v. Slot k < rank reduces mod d_k (drop if
        // d_k == 1), slots >= rank are free.
        let mut gen_images = Vec::with_capacity(ngens);
        for g in 0..ngens {
            let x: Vec<BigInt> =
                (0..ngens).map(|j| if j == g { BigInt::one() } else { BigInt::zero() }).collect();
            let y = IntMatrix::from_rows(&[x]).mul(&snf.v).row(0);
            let mut img = Vec::with_capacity(factors.len() + free_rank);
            for (t, f) in factors.iter().enumerate() {
                let raw = &y[skip + t] % f;
                let red = if raw.is_negative() { raw + f } else { raw };
                img.push(red);
            }
            for k in snf.rank..ngens {
                img.push(y[k].clone());
            }
            gen_images.push(img);
        }
        CokernelData { free_rank, factors, gen_images }
    }
}

/// Rounded division (quotient minimizing |remainder|), for Euclidean steps.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let q = a / b;
    let r = a - &q * b;
    if r.is_zero() {
        return q;
    }
    // |r| vs |b|/2: prefer shrinking the remainder.
    let two_r = r.abs() * 2;
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_check(m: &IntMatrix) -> Snf {
        let snf = m.snf();
        // u m v has diag d and zeros elsewhere.
        let prod = snf.u.mul(m).mul(&snf.v);
        for i in 0..prod.rows {
            for j in 0..prod.cols {
                let expect = if i == j && i < snf.rank {
                    snf.d[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*prod.get(i, j), expect, "slot ({i},{j})");
            }
        }
        // u, v unimodular.
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
        // Divisibility chain.
        for w in snf.d.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "chain {:?}", snf.d);
        }
        snf
    }

    #[test]
    fn snf_single() {
        let m = IntMatrix::from_i64_rows(&[vec![2]]);
        let snf = snf_check(&m);
        assert_eq!(snf.d, vec![BigInt::from(2)]);
    }

    #[test]
    fn snf_diag_6_4() {
        let m = IntMatrix::from_i64_rows(&[vec![6, 0], vec![0, 4]]);
        let snf = snf_check(&m);
        assert_eq!(snf.d, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn snf_empty() {
        let m = IntMatrix::zeros(0, 0);
        let snf = m.snf();
        assert!(snf.d.is_empty());
        let m = IntMatrix::zeros(0, 3);
        assert!(m.snf().d.is_empty());
        assert_eq!(m.cokernel_presentation().free_rank, 3);
    }

    #[test]
    fn snf_rectangular_and_random() {
        let cases = vec![
            vec![vec![1, 2, 3], vec![4, 5, 6]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![2, 4], vec![6, 8], vec![10, 12]],
            vec![vec![-3, 1], vec![7, -2]],
            vec![vec![5]],
        ];
        for rows in cases {
            snf_check(&IntMatrix::from_i64_rows(&rows));
        }
        // Pseudo-random small matrices.
        let mut s = 0x9e3779b97f4a7c15u64;
        for _ in 0..40 {
            let r = 1 + (s % 4) as usize;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            let c = 1 + (s % 4) as usize;
            let mut rows = vec![vec![0i64; c]; r];
            for row in rows.iter_mut() {
                for slot in row.iter_mut() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                    *slot = ((s >> 33) % 11) as i64 - 5;
                }
            }
            snf_check(&IntMatrix::from_i64_rows(&rows));
        }
    }

    #[test]
    fn det_bareiss() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 3], vec![1, 4]]);
        assert_eq!(m.det(), BigInt::from(5));
        let m = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.det(), BigInt::zero());
        let m = IntMatrix::from_i64_rows(&[
            vec![3, 1, 4],
            vec![1, 5, 9],
            vec![2, 6, 5],
        ]);
        // 3(25-54) - 1(5-18) + 4(6-10) = -87 + 13 - 16 = -90
        assert_eq!(m.det(), BigInt::from(-90));
    }

    #[test]
    fn rowspan_membership_with_witness() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let x = vec![BigInt::from(4), BigInt::from(3)];
        let w = m.rowspan_membership(&x).expect("in span");
        assert_eq!(m.row_apply(&w), x);
        let y = vec![BigInt::from(1), BigInt::from(0)];
        assert!(m.rowspan_membership(&y).is_none());
    }

    #[test]
    fn left_kernel() {
        // Rows (1,2) and (2,4): kernel spanned by (2,-1) (or a unimodular
        // multiple).
        let m = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        let k = m.left_kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.row_apply(&k[0]).iter().all(|v| v.is_zero()));
        assert!(!k[0].iter().all(|v| v.is_zero()));
    }

    /// Brute-force the cokernel group order by BFS closure mod small bound:
    /// only valid when the group is finite; used as an oracle.
    fn coker_order_oracle(rels: &IntMatrix) -> Option<u64> {
        let data = rels.cokernel_presentation();
        if data.free_rank > 0 {
            return None;
        }
        Some(
            data.factors
                .iter()
                .map(|f| u64::try_from(f).expect("small factor"))
                .product(),
        )
    }

    /// Enumerate the cosets of `Z^n / rowspan(rels)` by BFS (valid only when
    /// the quotient is finite; caller must know that). Dedup is by pairwise
    /// lattice-membership of differences.
    fn enumerate_quotient(rels: &IntMatrix, bound: usize) -> Vec<Vec<BigInt>> {
        let n = rels.cols;
        let zero = vec![BigInt::zero(); n];
        let mut reps: Vec<Vec<BigInt>> = vec![zero.clone()];
        let mut frontier = vec![zero];
        while let Some(r) = frontier.pop() {
            assert!(reps.len() <= bound, "quotient larger than bound");
            for i in 0..n {
                for delta in [1i64, -1] {
                    let mut c = r.clone();
                    c[i] += BigInt::from(delta);
                    let seen = reps.iter().any(|s| {
                        let diff: Vec<BigInt> =
                            c.iter().zip(s.iter()).map(|(a, b)| a - b).collect();
                        rels.rowspan_membership(&diff).is_some()
                    });
                    if !seen {
                        reps.push(c.clone());
                        frontier.push(c);
                    }
                }
            }
        }
        reps
    }

    #[test]
    fn cokernel_single_generator() {
        // Relation {2g1} on one generator: Z/2.
        let rels = IntMatrix::from_i64_rows(&[vec![2]]);
        let data = rels.cokernel_presentation();
        assert_eq!(data.free_rank, 0);
        assert_eq!(data.factors, vec![BigInt::from(2)]);
        assert_eq!(enumerate_quotient(&rels, 16).len(), 2);
    }

    #[test]
    fn cokernel_matches_enumeration() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, -1, 0], vec![1, 1, -1], vec![1, 0, 1], vec![0, 2, 0]],
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![4, 2], vec![2, 4]],
            vec![vec![1, 1], vec![1, -1]],
        ];
        for rows in cases {
            let rels = IntMatrix::from_i64_rows(&rows);
            let data = rels.cokernel_presentation();
            assert_eq!(data.free_rank, 0, "finite case");
            let order: u64 = data
                .factors
                .iter()
                .map(|f| u64::try_from(f).unwrap())
                .product();
            let reps = enumerate_quotient(&rels, 4096);
            assert_eq!(reps.len() as u64, order, "rows {rows:?}");
        }
    }

    #[test]
    fn snf_invariant_under_unimodular() {
        // Invariant factors do not change under unimodular pre/post
        // multiplication.
        let m = IntMatrix::from_i64_rows(&[vec![6, 0], vec![0, 4]]);
        let base = m.snf().d;
        let us = [
            IntMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]),
            IntMatrix::from_i64_rows(&[vec![0, 1], vec![-1, 0]]),
            IntMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]]),
        ];
        for u in &us {
            assert_eq!(u.det().abs(), BigInt::one());
            for v in &us {
                let tw = u.mul(&m).mul(v);
                assert_eq!(tw.snf().d, base);
            }
        }
    }

    #[test]
    fn cokernel_z4_example() {
        // Relations 2g1-g2, g1+g2-g3, g1+g3, 2g2 on three generators -> Z/4.
        let rels = IntMatrix::from_i64_rows(&[
            vec![2, -1, 0],
            vec![1, 1, -1],
            vec![1, 0, 1],
            vec![0, 2, 0],
        ]);
        let data = rels.cokernel_presentation();
        assert_eq!(data.free_rank, 0);
        assert_eq!(data.factors, vec![BigInt::from(4)]);
        assert_eq!(coker_order_oracle(&rels), Some(4));
        // Each generator image must be consistent with the relations: check
        // 2*img(g1) == img(g2), img(g1)+img(g2) == img(g3) in Z/4.
        let g: Vec<i64> = data
            .gen_images
            .iter()
            .map(|v| i64::try_from(&v[0]).unwrap())
            .collect();
        assert_eq!((2 * g[0]).rem_euclid(4), g[1].rem_euclid(4));
        assert_eq!((g[0] + g[1]).rem_euclid(4), g[2].rem_euclid(4));
        assert_eq!((g[0] + g[2]).rem_euclid(4), 0);
        assert_eq!((2 * g[1]).rem_euclid(4), 0);
        // And at least one generator must actually generate Z/4.
        assert!(g.iter().any(|&x| x.rem_euclid(2) == 1));
    }

    #[test]
    fn cokernel_free_and_mixed() {
        // No relations on 2 generators: Z^2.
        let rels = IntMatrix::zeros(0, 2);
        let data = rels.cokernel_presentation();
        assert_eq!(data.free_rank, 2);
        assert!(data.factors.is_empty());
        // diag(1, 2, 0): Z/2 + Z.
        let rels = IntMatrix::from_i64_rows(&[vec![1, 0, 0], vec![0, 2, 0]]);
        let data = rels.cokernel_presentation();
        assert_eq!(data.free_rank, 1);
        assert_eq!(data.factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn gen_images_respect_relations() {
        // For random relation matrices, the image of every relation row must
        // vanish in the presented group.
        let mut s = 0xdeadbeefu64;
        for _ in 0..25 {
            let r = 1 + (s % 3) as usize;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            let c = 1 + (s % 3) as usize;
            let mut rows = vec![vec![0i64; c]; r];
            for row in rows.iter_mut() {
                for slot in row.iter_mut() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                    *slot = ((s >> 33) % 7) as i64 - 3;
                }
            }
            let rels = IntMatrix::from_i64_rows(&rows);
            let data = rels.cokernel_presentation();
            let width = data.factors.len() + data.free_rank;
            for rel in &rows {
                let mut acc = vec![BigInt::zero(); width];
                for (g, &coef) in rel.iter().enumerate() {
                    for (t, slot) in acc.iter_mut().enumerate() {
                        *slot += BigInt::from(coef) * &data.gen_images[g][t];
                    }
                }
                for (t, val) in acc.iter().enumerate() {
                    if t < data.factors.len() {
                        assert!(
                            (val % &data.factors[t]).is_zero(),
                            "torsion slot {t} rel {rel:?}"
                        );
                    } else {
                        assert!(val.is_zero(), "free slot {t} rel {rel:?}");
                    }
                }
            }
        }
    }
}
