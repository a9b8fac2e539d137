use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// `a`: the result has one column per lattice rank, pivot rows strictly
/// increasing, positive pivots, and entries to the left of a pivot reduced
/// into [0, pivot). Two column sets span the same lattice iff their forms are
/// identical, so this is the canonical basis used for all lattice equality
/// and membership tests.
pub fn column_hnf(a: &IntMatrix) -> IntMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut cur = 0usize;
    for r in 0..m {
        if cur >= n {
            break;
        }
        if (cur..n).all(|j| h.at(r, j).is_zero()) {
            continue;
        }
        // gcd sweep: single nonzero in row r among columns ≥ cur
        loop {
            let mut best: Option<usize> = None;
            for j in cur..n {
                if !h.at(r, j).is_zero()
                    && best
                        .map(|b| h.at(r, j).abs() < h.at(r, b).abs())
                        .unwrap_or(true)
                {
                    best = Some(j);
                }
            }
            let b = best.expect("nonzero entry exists");
            h.swap_cols(cur, b);
            let mut leftover = false;
            let p = h.at(r, cur).clone();
            for j in cur + 1..n {
                if !h.at(r, j).is_zero() {
                    let q = -h.at(r, j).div_floor(&p);
                    h.col_addmul(j, cur, &q);
                    if !h.at(r, j).is_zero() {
                        leftover = true;
                    }
                }
            }
            if !leftover {
                break;
            }
        }
        if h.at(r, cur).is_negative() {
            h.neg_col(cur);
        }
        // reduce the entries left of the pivot into [0, pivot)
        let p = h.at(r, cur).clone();
        for j in 0..cur {
            if !h.at(r, j).is_zero() {
                let q = -h.at(r, j).div_floor(&p);
                h.col_addmul(j, cur, &q);
            }
        }
        cur += 1;
    }
    let idx: Vec<usize> = (0..cur).collect();
    h.select_cols(&idx)
}

/// Pivot row of each column of a column-HNF matrix.
fn pivot_rows(h: &IntMatrix) -> Vec<usize> {
    (0..h.cols())
        .map(|j| (0..h.rows()).find(|&i| !h.at(i, j).is_zero()).unwrap())
        .collect()
}

/// Coordinates of `v` in the column basis of a column-HNF matrix, by
/// back-substitution along the pivot rows; None if `v` is not in the lattice.
pub fn hnf_coords(h: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), h.rows(), "vector length mismatch");
    let mut w = v.to_vec();
    let mut coords = vec![BigInt::zero(); h.cols()];
    for (j, &r) in pivot_rows(h).iter().enumerate() {
        if w[r].is_zero() {
            continue;
        }
        let (q, rem) = w[r].div_mod_floor(h.at(r, j));
        if !rem.is_zero() {
            return None;
        }
        for i in 0..h.rows() {
            if !h.at(i, j).is_zero() {
                w[i] -= &q * h.at(i, j);
            }
        }
        coords[j] = q;
    }
    if w.iter().all(|x| x.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

/// Membership of `v` in the lattice spanned by the columns of a column-HNF
/// matrix.
pub fn hnf_member(h: &IntMatrix, v: &[BigInt]) -> bool {
    hnf_coords(h, v).is_some()
}

/// Does the column lattice of `a` contain that of `b`?
pub fn lattice_contains(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows());
    let h = column_hnf(a);
    (0..b.cols()).all(|j| hnf_member(&h, &b.col(j)))
}

pub fn lattice_eq(a: &IntMatrix, b: &IntMatrix) -> bool {
    column_hnf(a) == column_hnf(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_shape() {
        let a = IntMatrix::from_i64(3, 3, &[4, 2, 0, 0, 2, 2, 0, 0, 0]);
        let h = column_hnf(&a);
        // lattice spanned by (4,0,0),(2,2,0),(0,2,0) = ⟨(2,0,0),(0,2,0)⟩
        assert_eq!(h, IntMatrix::from_i64(3, 2, &[2, 0, 0, 2, 0, 0]));
    }

    #[test]
    fn generator_order_irrelevant() {
        let a = IntMatrix::from_i64(2, 3, &[3, 1, 4, 0, 2, 2]);
        let b = IntMatrix::from_i64(2, 3, &[4, 3, 1, 2, 0, 2]);
        assert_eq!(column_hnf(&a), column_hnf(&b));
        assert!(lattice_eq(&a, &b));
    }

    #[test]
    fn membership() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let h = column_hnf(&a);
        assert!(hnf_member(&h, &[BigInt::from(4), BigInt::from(-3)]));
        assert!(!hnf_member(&h, &[BigInt::from(1), BigInt::from(0)]));
        assert!(hnf_member(&h, &[BigInt::zero(), BigInt::zero()]));
    }

    #[test]
    fn containment() {
        let big = IntMatrix::from_i64(2, 2, &[1, 0, 0, 1]);
        let small = IntMatrix::from_i64(2, 2, &[2, 0, 0, 5]);
        assert!(lattice_contains(&big, &small));
        assert!(!lattice_contains(&small, &big));
    }

    #[test]
    fn left_reduction_canonicality() {
        // pivots 1 (row 0) and 5 (row 1): entry left of the 5 must be in [0,5)
        let a = IntMatrix::from_i64(2, 2, &[1, 0, 7, 5]);
        let h = column_hnf(&a);
        assert_eq!(h, IntMatrix::from_i64(2, 2, &[1, 0, 2, 5]));
    }
}
