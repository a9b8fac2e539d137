use crate::fgab::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Dense matrix over ℚ, row-major, acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

pub fn qr(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_int(a: &IntMatrix) -> Self {
        Self::from_fn(a.rows(), a.cols(), |i, j| {
            BigRational::from_integer(a.at(i, j).clone())
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| {
            BigRational::from_integer(BigInt::from(entries[i * cols + j]))
        })
    }

    /// Entries given as (numerator, denominator) pairs.
    pub fn from_ratios(rows: usize, cols: usize, entries: &[(i64, i64)]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| {
            let (n, d) = entries[i * cols + j];
            qr(n, d)
        })
    }

    pub fn from_cols(rows: usize, cols: &[Vec<BigRational>]) -> Self {
        for c in cols {
            assert_eq!(c.len(), rows);
        }
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn neg(&self) -> QMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    pub fn scale(&self, c: &BigRational) -> QMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn block_diag(parts: &[&QMatrix]) -> QMatrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.set(ro + i, co + j, p.at(i, j).clone());
                }
            }
            ro += p.rows;
            co += p.cols;
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> QMatrix {
        Self::from_fn(self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> QMatrix {
        Self::from_fn(idx.len(), self.cols, |i, j| self.at(idx[i], j).clone())
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            let piv = (r..m.rows).find(|&i| !m.at(i, c).is_zero());
            let Some(piv) = piv else { continue };
            if piv != r {
                for j in 0..m.cols {
                    let tmp = m.at(r, j).clone();
                    m.set(r, j, m.at(piv, j).clone());
                    m.set(piv, j, tmp);
                }
            }
            let p = m.at(r, c).clone();
            for j in c..m.cols {
                let v = m.at(r, j) / &p;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in c..m.cols {
                        let v = m.at(i, j) - &f * m.at(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space {x : Ax = 0}, one column per free
    /// variable.
    pub fn kernel_basis(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = QMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, BigRational::one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(p, k, -r.at(i, f).clone());
            }
        }
        out
    }

    /// Rows spanning the left null space {y : yA = 0}.
    pub fn left_kernel(&self) -> QMatrix {
        self.transpose().kernel_basis().transpose()
    }

    /// One rational solution of Ax = b, if any (free variables set to 0).
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let rhs = QMatrix::from_cols(self.rows, &[b.to_vec()]);
        let aug = self.hstack(&rhs);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, None when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let (r, pivots) = self.hstack(&QMatrix::identity(n)).rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let right: Vec<usize> = (n..2 * n).collect();
        Some(r.select_cols(&right))
    }

    /// Least common multiple of all entry denominators (1 for the zero or
    /// empty matrix).
    pub fn denominator_lcm(&self) -> BigInt {
        let mut d = BigInt::one();
        for x in &self.data {
            d = d.lcm(x.denom());
        }
        d
    }

    /// Writes the matrix as M = N / d with N integer and d =
    /// `denominator_lcm`.
    pub fn clear_denominators(&self) -> (IntMatrix, BigInt) {
        let d = self.denominator_lcm();
        let n = IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            let x = self.at(i, j) * BigRational::from_integer(d.clone());
            debug_assert!(x.is_integer());
            x.to_integer()
        });
        (n, d)
    }

    /// Exact integer matrix, panicking on non-integer entries.
    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            let x = self.at(i, j);
            assert!(x.is_integer(), "entry ({i},{j}) = {x} is not an integer");
            x.to_integer()
        })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Is v the all-zero vector?
pub fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Reduced column echelon basis of the column span: pivot rows strictly
/// increasing, each pivot entry 1 and the only nonzero entry of its row.
/// Canonical for the subspace.
pub fn column_echelon_basis(a: &QMatrix) -> QMatrix {
    let (r, pivots) = a.transpose().rref();
    let idx: Vec<usize> = (0..pivots.len()).collect();
    r.select_rows(&idx).transpose()
}

/// Pivot row (index of leading 1) of each column of a reduced column
/// echelon basis.
pub fn echelon_pivot_rows(w: &QMatrix) -> Vec<usize> {
    (0..w.cols())
        .map(|j| {
            (0..w.rows())
                .find(|&i| !w.at(i, j).is_zero())
                .expect("echelon basis has no zero columns")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let a = QMatrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 1, 1, 1]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(is_zero_vec(&a.mul_vec(&k.col(0))));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = QMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let b = vec![qr(1, 1), qr(1, 2)];
        let x = a.solve(&b).unwrap();
        assert_eq!(x, vec![qr(1, 2), qr(1, 6)]);
        let sing = QMatrix::from_i64(2, 1, &[1, 1]);
        assert!(sing.solve(&[qr(0, 1), qr(1, 1)]).is_none());
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = QMatrix::from_i64(3, 2, &[1, 0, 0, 1, 1, 1]);
        let n = a.left_kernel();
        assert_eq!(n.rows(), 1);
        assert!(n.mul(&a).is_zero());
    }

    #[test]
    fn clear_denominators_roundtrip() {
        let a = QMatrix::from_ratios(2, 2, &[(1, 2), (1, 3), (0, 1), (5, 6)]);
        let (n, d) = a.clear_denominators();
        assert_eq!(d, BigInt::from(6));
        assert_eq!(n, IntMatrix::from_i64(2, 2, &[3, 2, 0, 5]));
    }

    #[test]
    fn inverse_examples() {
        let a = QMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(2));
        assert_eq!(inv.mul(&a), QMatrix::identity(2));
        assert!(QMatrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let a = QMatrix::from_i64(3, 2, &[2, 4, 0, 0, 2, 2]);
        let b = QMatrix::from_i64(3, 2, &[4, 2, 0, 0, 2, 2]);
        let ea = column_echelon_basis(&a);
        let eb = column_echelon_basis(&b);
        assert_eq!(ea, eb);
        assert_eq!(ea.cols(), 2);
        assert_eq!(echelon_pivot_rows(&ea), vec![0, 2]);
        // pivot entries are 1, and pivot rows vanish in the other columns
        assert!(ea.at(0, 0).is_one());
        assert!(ea.at(0, 1).is_zero());
        assert!(ea.at(2, 1).is_one());
        assert!(ea.at(2, 0).is_zero());
    }
}
