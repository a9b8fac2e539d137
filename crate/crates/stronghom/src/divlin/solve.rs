use super::qmatrix::QMatrix;
use crate::fgab::{integer_kernel, IntMatrix};
use num_rational::BigRational;
use num_traits::Zero;

/// Solution set of the mixed homogeneous system A·u + B·t = 0 with u ∈ ℚᵖ
/// and t ∈ ℤ^q: a rational subspace of pure-u solutions plus a lattice of
/// mixed generators. Every solution is (subspace element) + (integer
/// combination of the lattice generators).
#[derive(Debug)]
pub struct MixedSolution {
    /// p × k basis of {u : Au = 0} (the t = 0 solutions).
    pub subspace: QMatrix,
    /// u-parts of the lattice generators, p × l.
    pub u_lattice: QMatrix,
    /// t-parts of the lattice generators, q × l; a basis of the full
    /// integer-solution lattice in t.
    pub t_lattice: IntMatrix,
}

/// Solves A·u + B·t = 0 for u rational, t integer.
///
/// t admits a solution iff B·t lies in the column space of A, i.e. iff
/// N·B·t = 0 for N spanning the left null space of A; the integer kernel of
/// the cleared matrix N·B is saturated, so it is exactly the t-lattice.
pub fn solve_mixed(a: &QMatrix, b: &QMatrix) -> MixedSolution {
    assert_eq!(a.rows(), b.rows(), "A and B must constrain the same rows");
    let subspace = a.kernel_basis();
    let n = a.left_kernel();
    let nb = n.mul(b);
    let (cleared, _) = nb.clear_denominators();
    let t_lattice = integer_kernel(&cleared);
    let mut u_cols: Vec<Vec<BigRational>> = Vec::with_capacity(t_lattice.cols());
    for j in 0..t_lattice.cols() {
        let t: Vec<BigRational> = t_lattice
            .col(j)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let rhs: Vec<BigRational> = b.mul_vec(&t).into_iter().map(|x| -x).collect();
        let u = a
            .solve(&rhs)
            .expect("t-lattice was built so that -B·t is in the column space of A");
        u_cols.push(u);
    }
    let u_lattice = QMatrix::from_cols(a.cols(), &u_cols);
    MixedSolution {
        subspace,
        u_lattice,
        t_lattice,
    }
}

impl MixedSolution {
    /// Checks that (u, t) really solves the system — used as a dual-route
    /// assertion in tests.
    pub fn verify_solution(a: &QMatrix, b: &QMatrix, u: &[BigRational], t: &[BigRational]) -> bool {
        let au = a.mul_vec(u);
        let bt = b.mul_vec(t);
        au.iter().zip(&bt).all(|(x, y)| (x + y).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::qmatrix::qr;
    use num_bigint::BigInt;

    #[test]
    fn kernel_of_q_to_qz_style_system() {
        // x ∈ ℚ, t ∈ ℤ with x - t = 0: solutions are exactly x ∈ ℤ
        let a = QMatrix::from_i64(1, 1, &[1]);
        let b = QMatrix::from_i64(1, 1, &[-1]);
        let sol = solve_mixed(&a, &b);
        assert_eq!(sol.subspace.cols(), 0);
        assert_eq!(sol.t_lattice, IntMatrix::from_i64(1, 1, &[1]));
        assert_eq!(sol.u_lattice.at(0, 0), &qr(1, 1));
    }

    #[test]
    fn unconstrained_integer_variables() {
        // no equations at all: u free rational, t free integer
        let a = QMatrix::zeros(0, 2);
        let b = QMatrix::zeros(0, 3);
        let sol = solve_mixed(&a, &b);
        assert_eq!(sol.subspace.cols(), 2);
        assert_eq!(sol.t_lattice.cols(), 3);
        assert!(crate::fgab::lattice_eq(
            &sol.t_lattice,
            &IntMatrix::identity(3)
        ));
    }

    #[test]
    fn no_rational_unknowns() {
        // 2t₁ + 3t₂ = 0 over ℤ: lattice generated by (3, -2)
        let a = QMatrix::zeros(1, 0);
        let b = QMatrix::from_i64(1, 2, &[2, 3]);
        let sol = solve_mixed(&a, &b);
        assert_eq!(sol.t_lattice.cols(), 1);
        let g = sol.t_lattice.col(0);
        let want = [BigInt::from(3), BigInt::from(-2)];
        assert!(g == want || g == [-&want[0], -&want[1]]);
    }

    #[test]
    fn saturation_matters() {
        // u + (1/2)t = 0: every integer t works, u = -t/2
        let a = QMatrix::from_i64(1, 1, &[1]);
        let b = QMatrix::from_ratios(1, 1, &[(1, 2)]);
        let sol = solve_mixed(&a, &b);
        assert_eq!(sol.t_lattice, IntMatrix::from_i64(1, 1, &[1]));
        assert_eq!(sol.u_lattice.at(0, 0), &qr(-1, 2));
        let u = vec![qr(-1, 2)];
        let t = vec![qr(1, 1)];
        assert!(MixedSolution::verify_solution(&a, &b, &u, &t));
    }
}
