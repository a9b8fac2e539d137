use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix with arbitrary-precision entries, row-major storage,
/// acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Row-major entry list; handy for literal matrices in tests and builders.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        for c in cols {
            assert_eq!(c.len(), rows, "column length mismatch");
        }
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + rhs.at(i, j))
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - rhs.at(i, j))
    }

    pub fn neg(&self) -> IntMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    /// Horizontal concatenation [self | rhs].
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                rhs.at(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation [self; rhs].
    pub fn vstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.cols, "vstack col mismatch");
        Self::from_fn(self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                rhs.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    if !b.at(i, j).is_zero() {
                        out.set(ro + i, co + j, b.at(i, j).clone());
                    }
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        Self::from_fn(self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        Self::from_fn(idx.len(), self.cols, |i, j| self.at(idx[i], j).clone())
    }

    // -- in-place elementary operations (used by the normal-form routines) --

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub(crate) fn neg_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            self.set(r, j, v);
        }
    }

    pub(crate) fn neg_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// row[dst] += q * row[src]
    pub(crate) fn row_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            if !self.at(src, j).is_zero() {
                let v = self.at(dst, j) + q * self.at(src, j);
                self.set(dst, j, v);
            }
        }
    }

    /// col[dst] += q * col[src]
    pub(crate) fn col_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            if !self.at(i, src).is_zero() {
                let v = self.at(i, dst) + q * self.at(i, src);
                self.set(i, dst, v);
            }
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                // pivot search
                let mut found = None;
                for i in k + 1..n {
                    if !a.at(i, k).is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                match found {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                    let v = &num / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        sign * a.at(n - 1, n - 1).clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = IntMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let id = IntMatrix::identity(3);
        assert_eq!(a.mul(&id), a);
        let b = IntMatrix::from_i64(3, 1, &[1, 0, -1]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntMatrix::from_i64(2, 1, &[-2, -2]));
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 1, 0, 0, 3, 1]);
        // 2*(1*1-0*3) - 0 + 1*(1*3-0) = 2 + 3 = 5
        assert_eq!(a.det(), BigInt::from(5));
        let singular = IntMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(singular.det(), BigInt::zero());
        let id = IntMatrix::identity(4);
        assert!(id.is_unimodular());
    }

    #[test]
    fn stacking() {
        let a = IntMatrix::from_i64(2, 2, &[1, 2, 3, 4]);
        let b = IntMatrix::from_i64(2, 1, &[5, 6]);
        let h = a.hstack(&b);
        assert_eq!(h.at(0, 2), &BigInt::from(5));
        let d = IntMatrix::block_diag(&[&a, &b]);
        assert_eq!(d.rows(), 4);
        assert_eq!(d.cols(), 3);
        assert_eq!(d.at(2, 2), &BigInt::from(5));
        assert_eq!(d.at(0, 2), &BigInt::zero());
    }
}
