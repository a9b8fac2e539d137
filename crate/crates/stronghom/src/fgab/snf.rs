use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Smith normal form S = U·A·V with unimodular U, V (inverses tracked),
/// S diagonal with d₁ | d₂ | …, nonnegative, zeros last.
#[derive(Clone)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

struct Work {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    // S' = E S with E = "row dst += q·row src"  ⟹  U' = E U, U⁻¹' = U⁻¹ E⁻¹,
    // and right-multiplying by E⁻¹ subtracts q·(col dst) from col src.
    fn row_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.row_addmul(dst, src, q);
        self.u.row_addmul(dst, src, q);
        let nq = -q;
        self.u_inv.col_addmul(src, dst, &nq);
    }

    // S' = S F with F = "col dst += q·col src"  ⟹  V' = V F, V⁻¹' = F⁻¹ V⁻¹,
    // and left-multiplying by F⁻¹ subtracts q·(row dst) from row src.
    fn col_addmul(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.col_addmul(dst, src, q);
        self.v.col_addmul(dst, src, q);
        let nq = -q;
        self.v_inv.row_addmul(src, dst, &nq);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn neg_row(&mut self, r: usize) {
        self.s.neg_row(r);
        self.u.neg_row(r);
        self.u_inv.neg_col(r);
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        s: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        u_inv: IntMatrix::identity(m),
        v_inv: IntMatrix::identity(n),
    };

    let mut t = 0;
    while t < m.min(n) {
        // gcd-driven pivot: smallest nonzero absolute value in the active block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !w.s.at(i, j).is_zero()
                    && pivot
                        .map(|(pi, pj)| w.s.at(i, j).abs() < w.s.at(pi, pj).abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        'reduce: loop {
            // clear column t below the pivot
            for i in t + 1..m {
                if !w.s.at(i, t).is_zero() {
                    let q = -w.s.at(i, t).div_floor(w.s.at(t, t));
                    w.row_addmul(i, t, &q);
                    if !w.s.at(i, t).is_zero() {
                        // remainder is strictly smaller than the pivot: descend
                        w.swap_rows(i, t);
                        continue 'reduce;
                    }
                }
            }
            // clear row t to the right of the pivot
            for j in t + 1..n {
                if !w.s.at(t, j).is_zero() {
                    let q = -w.s.at(t, j).div_floor(w.s.at(t, t));
                    w.col_addmul(j, t, &q);
                    if !w.s.at(t, j).is_zero() {
                        w.swap_cols(j, t);
                        continue 'reduce;
                    }
                }
            }
            // divisibility: pivot must divide every remaining entry
            let p = w.s.at(t, t).clone();
            for i in t + 1..m {
                for j in t + 1..n {
                    if !w.s.at(i, j).mod_floor(&p).is_zero() {
                        let one = BigInt::from(1);
                        w.row_addmul(t, i, &one);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if w.s.at(t, t).is_negative() {
            w.neg_row(t);
        }
        t += 1;
    }

    let rank = (0..m.min(n)).take_while(|&i| !w.s.at(i, i).is_zero()).count();

    #[cfg(debug_assertions)]
    {
        debug_assert_eq!(w.u.mul(a).mul(&w.v), w.s, "U·A·V != S");
        debug_assert_eq!(w.u.mul(&w.u_inv), IntMatrix::identity(m));
        debug_assert_eq!(w.v.mul(&w.v_inv), IntMatrix::identity(n));
        for i in 0..rank.saturating_sub(1) {
            debug_assert!(
                w.s.at(i + 1, i + 1).mod_floor(w.s.at(i, i)).is_zero(),
                "divisibility chain violated"
            );
        }
    }

    Smith {
        s: w.s,
        u: w.u,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        rank,
    }
}

impl Smith {
    /// Diagonal entries d₁, …, d_min(m,n) (including zeros).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.at(i, i).clone())
            .collect()
    }

    /// Basis of the integer kernel {x ∈ ℤⁿ : A x = 0}: the last n − rank
    /// columns of V.
    pub fn kernel(&self) -> IntMatrix {
        let n = self.v.cols();
        let idx: Vec<usize> = (self.rank..n).collect();
        self.v.select_cols(&idx)
    }

    /// One integer solution of A x = b, if any.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let m = self.s.rows();
        let n = self.s.cols();
        assert_eq!(b.len(), m, "rhs length mismatch");
        let ub = self.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); n];
        for (i, ubi) in ub.iter().enumerate() {
            if i < self.rank {
                let d = self.s.at(i, i);
                let (q, r) = ubi.div_mod_floor(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ubi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Solve A X = B columnwise, reusing this factorization.
    pub fn solve_matrix(&self, b: &IntMatrix) -> Option<IntMatrix> {
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            cols.push(self.solve(&b.col(j))?);
        }
        Some(IntMatrix::from_cols(self.s.cols(), &cols))
    }
}

/// Basis of the integer kernel of A (columns).
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    smith(a).kernel()
}

/// Nonunit invariant factors of coker(A) = ℤ^rows / col-span(A): torsion
/// factors d ≥ 2 in divisibility order, followed by one 0 per free factor.
pub fn cokernel_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let sm = smith(a);
    let mut out: Vec<BigInt> = sm
        .diagonal()
        .into_iter()
        .take(sm.rank)
        .filter(|d| !d.abs().is_one())
        .collect();
    let free = a.rows() - sm.rank;
    out.extend(std::iter::repeat(BigInt::zero()).take(free));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check_smith(a: &IntMatrix) {
        let sm = smith(a);
        assert_eq!(sm.u.mul(a).mul(&sm.v), sm.s);
        assert!(sm.u.is_unimodular());
        assert!(sm.v.is_unimodular());
        for i in 0..sm.rank.saturating_sub(1) {
            assert!(sm.s.at(i + 1, i + 1).mod_floor(sm.s.at(i, i)).is_zero());
        }
        // diagonal, zeros last, nonnegative
        for i in 0..sm.s.rows() {
            for j in 0..sm.s.cols() {
                if i != j {
                    assert!(sm.s.at(i, j).is_zero());
                } else {
                    assert!(!sm.s.at(i, j).is_negative());
                    if i >= sm.rank {
                        assert!(sm.s.at(i, j).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(3);
        let sm = smith(&a);
        assert_eq!(sm.s, IntMatrix::identity(3));
        assert_eq!(sm.rank, 3);
    }

    #[test]
    fn frozen_two_by_two() {
        // gcd of entries is 2 and |det| = 8, so the form is diag(2, 4)
        let a = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        check_smith(&a);
        let sm = smith(&a);
        assert_eq!(sm.s, IntMatrix::from_i64(2, 2, &[2, 0, 0, 4]));
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::from_i64(1, 1, &[0]);
        let sm = smith(&a);
        assert_eq!(sm.s, IntMatrix::from_i64(1, 1, &[0]));
        assert_eq!(sm.rank, 0);
    }

    #[test]
    fn diag_6_4_invariants() {
        // diag(6,4) presents ℤ/6 ⊕ ℤ/4 ≅ ℤ/2 ⊕ ℤ/12
        let a = IntMatrix::from_i64(2, 2, &[6, 0, 0, 4]);
        check_smith(&a);
        let inv = cokernel_invariants(&a);
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let sm = smith(&a);
        let k = sm.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());

        let b = vec![BigInt::from(6), BigInt::from(12)];
        let x = sm.solve(&b).expect("solvable");
        assert_eq!(a.mul_vec(&x), b);

        let b_bad = vec![BigInt::from(1), BigInt::from(1)];
        assert!(sm.solve(&b_bad).is_none());

        // 2x = 3 has no integer solution
        let two = IntMatrix::from_i64(1, 1, &[2]);
        assert!(smith(&two).solve(&[BigInt::from(3)]).is_none());
        assert_eq!(
            smith(&two).solve(&[BigInt::from(6)]).unwrap(),
            vec![BigInt::from(3)]
        );
    }

    #[test]
    fn rectangular_shapes() {
        check_smith(&IntMatrix::from_i64(3, 2, &[0, 0, 5, 3, 10, 6]));
        check_smith(&IntMatrix::from_i64(1, 4, &[4, 6, 0, 9]));
        check_smith(&IntMatrix::zeros(3, 3));
        check_smith(&IntMatrix::from_i64(
            4,
            4,
            &[-3, 1, 0, 7, 2, -9, 4, 4, 0, 0, 8, -5, 1, 1, 1, 1],
        ));
    }

    #[test]
    fn unit_invariants_dropped() {
        let a = IntMatrix::from_i64(1, 1, &[1]);
        assert!(cokernel_invariants(&a).is_empty());
        let free2 = IntMatrix::zeros(2, 0);
        assert_eq!(
            cokernel_invariants(&free2),
            vec![BigInt::zero(), BigInt::zero()]
        );
        let one = BigInt::one();
        assert!(one.abs().is_one());
    }
}
