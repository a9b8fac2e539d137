use super::lattice::LatticeSubgroup;
use super::qmatrix::QMatrix;
use crate::error::{Error, Result};
use crate::fgab::smith;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// The divisible group ℚᵃ ⊕ (ℚ/ℤ)ᵇ, represented as ℚ^{a+b}/L with
/// L = 0ᵃ ⊕ ℤᵇ. Coordinates 0..a are the ℚ-coordinates, a..a+b the
/// ℚ/ℤ-coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DivGroup {
    pub q_rank: usize,
    pub qz_rank: usize,
}

impl DivGroup {
    pub fn new(q_rank: usize, qz_rank: usize) -> Self {
        DivGroup { q_rank, qz_rank }
    }

    pub fn trivial() -> Self {
        DivGroup::new(0, 0)
    }

    pub fn dim(&self) -> usize {
        self.q_rank + self.qz_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    /// The defining lattice L = 0ᵃ ⊕ ℤᵇ as a subgroup of the ambient ℚⁿ.
    pub fn lattice(&self) -> LatticeSubgroup {
        LatticeSubgroup::standard_lattice(self.dim(), self.q_rank)
    }

    /// Direct sum with coordinate bookkeeping: returns the sum along with
    /// the injection and projection morphisms of every summand (ℚ-blocks
    /// are regrouped in front of the ℚ/ℤ-blocks).
    pub fn direct_sum(parts: &[DivGroup]) -> (DivGroup, Vec<DivMorphism>, Vec<DivMorphism>) {
        let a: usize = parts.iter().map(|p| p.q_rank).sum();
        let b: usize = parts.iter().map(|p| p.qz_rank).sum();
        let total = DivGroup::new(a, b);
        let mut injections = Vec::with_capacity(parts.len());
        let mut projections = Vec::with_capacity(parts.len());
        let (mut qo, mut zo) = (0usize, 0usize);
        for p in parts {
            let mut inj = QMatrix::zeros(total.dim(), p.dim());
            for i in 0..p.q_rank {
                inj.set(qo + i, i, BigRational::one());
            }
            for i in 0..p.qz_rank {
                inj.set(a + zo + i, p.q_rank + i, BigRational::one());
            }
            let proj = inj.transpose();
            injections.push(DivMorphism {
                source: *p,
                target: total,
                matrix: inj,
            });
            projections.push(DivMorphism {
                source: total,
                target: *p,
                matrix: proj,
            });
            qo += p.q_rank;
            zo += p.qz_rank;
        }
        (total, injections, projections)
    }
}

impl fmt::Display for DivGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut tokens = Vec::new();
        for _ in 0..self.q_rank {
            tokens.push("Q".to_string());
        }
        for _ in 0..self.qz_rank {
            tokens.push("Q/Z".to_string());
        }
        write!(f, "{}", tokens.join("+"))
    }
}

/// Linear map between divisible groups, as a rational matrix on ambient
/// coordinates. Construction checks lattice compatibility: the map must send
/// L_source into L_target, i.e. every ℚ/ℤ-column has zero entries in ℚ-rows
/// and integer entries in ℚ/ℤ-rows.
#[derive(Clone, Debug)]
pub struct DivMorphism {
    source: DivGroup,
    target: DivGroup,
    matrix: QMatrix,
}

impl DivMorphism {
    pub fn new(source: DivGroup, target: DivGroup, matrix: QMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                context: "divisible-group morphism matrix".into(),
                expected: format!("{}x{}", target.dim(), source.dim()),
                got: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        for j in source.q_rank..source.dim() {
            for i in 0..target.q_rank {
                if !matrix.at(i, j).is_zero() {
                    return Err(Error::LatticeIncompatible {
                        col: j,
                        row: i,
                        problem: "nonzero entry maps a Q/Z-coordinate into a Q-row".into(),
                    });
                }
            }
            for i in target.q_rank..target.dim() {
                if !matrix.at(i, j).is_integer() {
                    return Err(Error::LatticeIncompatible {
                        col: j,
                        row: i,
                        problem: "non-integer entry on a Q/Z-to-Q/Z position".into(),
                    });
                }
            }
        }
        Ok(DivMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: DivGroup) -> Self {
        DivMorphism {
            source: g,
            target: g,
            matrix: QMatrix::identity(g.dim()),
        }
    }

    pub fn zero_map(source: DivGroup, target: DivGroup) -> Self {
        DivMorphism {
            source,
            target,
            matrix: QMatrix::zeros(target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> DivGroup {
        self.source
    }

    pub fn target(&self) -> DivGroup {
        self.target
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    /// Composition in diagram order: `self` followed by `next`.
    pub fn then(&self, next: &DivMorphism) -> DivMorphism {
        assert_eq!(self.target, next.source, "composition shape mismatch");
        DivMorphism {
            source: self.source,
            target: next.target,
            matrix: next.matrix.mul(&self.matrix),
        }
    }

    pub fn add(&self, other: &DivMorphism) -> DivMorphism {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        DivMorphism {
            source: self.source,
            target: self.target,
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &DivMorphism) -> DivMorphism {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        DivMorphism {
            source: self.source,
            target: self.target,
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn neg(&self) -> DivMorphism {
        DivMorphism {
            source: self.source,
            target: self.target,
            matrix: self.matrix.neg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// {x ∈ ℚⁿ : f(x) ∈ L_target} as a lattice subgroup of the source ambient.
///
/// The ℚ-rows of the target force the rational constraint M_Q·x = 0 with
/// null basis N; on that subspace the ℚ/ℤ-rows demand M_T·N·y ∈ ℤ, solved
/// in closed form through the Smith form of the cleared matrix.
pub fn div_kernel(f: &DivMorphism) -> LatticeSubgroup {
    let n_dim = f.source().dim();
    let a_t = f.target().q_rank;
    let q_rows: Vec<usize> = (0..a_t).collect();
    let t_rows: Vec<usize> = (a_t..f.target().dim()).collect();
    let m_q = f.matrix().select_rows(&q_rows);
    let m_t = f.matrix().select_rows(&t_rows);
    let n = m_q.kernel_basis(); // n_dim × k
    let c = m_t.mul(&n); // b_t × k
    let (c_int, d) = c.clear_denominators();
    let sm = smith(&c_int);
    let k = n.cols();
    let r = sm.rank;
    let v = QMatrix::from_int(&sm.v);
    let free_cols: Vec<usize> = (r..k).collect();
    let w = n.mul(&v.select_cols(&free_cols));
    let mut lam_cols: Vec<Vec<BigRational>> = Vec::with_capacity(r);
    for i in 0..r {
        let scale = BigRational::new(d.clone(), sm.s.at(i, i).clone());
        let y = v.col(i);
        let col = n.mul_vec(&y);
        lam_cols.push(col.into_iter().map(|x| x * &scale).collect());
    }
    let lam = QMatrix::from_cols(n_dim, &lam_cols);
    LatticeSubgroup::new(n_dim, &w, &lam)
}

/// Image of the induced quotient map, as (rational column span) + L_target.
pub fn div_image(f: &DivMorphism) -> LatticeSubgroup {
    let t = f.target();
    let lat = LatticeSubgroup::standard_lattice(t.dim(), t.q_rank);
    LatticeSubgroup::new(t.dim(), f.matrix(), &lat.lam())
}

/// Cokernel of the induced quotient map, again a divisible group: with
/// image W + ⟨Λ̄⟩ the quotient is ℚ^{codim W − rank Λ̄} ⊕ (ℚ/ℤ)^{rank Λ̄}.
pub fn div_cokernel(f: &DivMorphism) -> DivGroup {
    let img = div_image(f);
    let codim = f.target().dim() - img.subspace_dim();
    let l = img.lattice_rank();
    DivGroup::new(codim - l, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::qmatrix::qr;

    fn beta_q_to_qz() -> DivMorphism {
        DivMorphism::new(DivGroup::new(1, 0), DivGroup::new(0, 1), QMatrix::from_i64(1, 1, &[1]))
            .unwrap()
    }

    #[test]
    fn kernel_of_canonical_projection_is_z() {
        let k = div_kernel(&beta_q_to_qz());
        assert_eq!(k, LatticeSubgroup::standard_lattice(1, 0));
    }

    #[test]
    fn kernel_of_multiplication_on_qz() {
        let qz = DivGroup::new(0, 1);
        for q in [2i64, 3, 6] {
            let f = DivMorphism::new(qz, qz, QMatrix::from_i64(1, 1, &[q])).unwrap();
            let k = div_kernel(&f);
            let want = LatticeSubgroup::new(
                1,
                &QMatrix::zeros(1, 0),
                &QMatrix::from_ratios(1, 1, &[(1, q)]),
            );
            assert_eq!(k, want, "kernel of x{q} on Q/Z is (1/{q})Z");
        }
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let f = DivMorphism::zero_map(DivGroup::new(2, 0), DivGroup::new(1, 1));
        assert!(div_kernel(&f).is_full_space());
    }

    #[test]
    fn kernel_contains_source_lattice() {
        // any compatible map: L_source must sit inside the kernel subgroup
        let f = DivMorphism::new(
            DivGroup::new(1, 1),
            DivGroup::new(0, 2),
            QMatrix::from_ratios(2, 2, &[(1, 2), (3, 1), (1, 5), (2, 1)]),
        )
        .unwrap();
        let k = div_kernel(&f);
        assert!(k.contains(&f.source().lattice()));
    }

    #[test]
    fn image_examples() {
        // surjective β: full ambient
        assert!(div_image(&beta_q_to_qz()).is_full_space());
        // ×2 on Q/Z: 2·Q = Q, still everything
        let qz = DivGroup::new(0, 1);
        let f = DivMorphism::new(qz, qz, QMatrix::from_i64(1, 1, &[2])).unwrap();
        assert!(div_image(&f).is_full_space());
        // inclusion of the first coordinate Q → Q²: the axis subspace
        let inc = DivMorphism::new(
            DivGroup::new(1, 0),
            DivGroup::new(2, 0),
            QMatrix::from_i64(2, 1, &[1, 0]),
        )
        .unwrap();
        let img = div_image(&inc);
        assert_eq!(img.subspace_dim(), 1);
        assert_eq!(img.lattice_rank(), 0);
        assert!(img.contains_vec(&[qr(7, 3), qr(0, 1)]));
        assert!(!img.contains_vec(&[qr(0, 1), qr(1, 1)]));
    }

    #[test]
    fn cokernel_examples() {
        assert!(div_cokernel(&beta_q_to_qz()).is_trivial());
        let z_into_qz = DivMorphism::zero_map(DivGroup::trivial(), DivGroup::new(0, 1));
        assert_eq!(div_cokernel(&z_into_qz), DivGroup::new(0, 1));
        let z_into_q = DivMorphism::zero_map(DivGroup::trivial(), DivGroup::new(1, 0));
        assert_eq!(div_cokernel(&z_into_q), DivGroup::new(1, 0));
    }

    #[test]
    fn lattice_compatibility_enforced() {
        // Q/Z → Q via the identity matrix is not a map of quotients
        let err = DivMorphism::new(DivGroup::new(0, 1), DivGroup::new(1, 0), QMatrix::from_i64(1, 1, &[1]))
            .unwrap_err();
        assert!(matches!(err, Error::LatticeIncompatible { col: 0, row: 0, .. }));
        // Q/Z → Q/Z by 1/2 does not preserve the lattice either
        let err2 = DivMorphism::new(
            DivGroup::new(0, 1),
            DivGroup::new(0, 1),
            QMatrix::from_ratios(1, 1, &[(1, 2)]),
        )
        .unwrap_err();
        assert!(matches!(err2, Error::LatticeIncompatible { .. }));
        // Q → Q/Z by 1/2 is fine: the source has no lattice
        assert!(DivMorphism::new(
            DivGroup::new(1, 0),
            DivGroup::new(0, 1),
            QMatrix::from_ratios(1, 1, &[(1, 2)]),
        )
        .is_ok());
    }

    #[test]
    fn direct_sum_regroups_coordinates() {
        let (total, inj, proj) = DivGroup::direct_sum(&[DivGroup::new(1, 1), DivGroup::new(1, 1)]);
        assert_eq!(total, DivGroup::new(2, 2));
        // second summand's Q-coordinate goes to ambient slot 1, its Q/Z to slot 3
        let v = vec![qr(1, 1), qr(0, 1)];
        let embedded = inj[1].matrix().mul_vec(&v);
        assert_eq!(embedded, vec![qr(0, 1), qr(1, 1), qr(0, 1), qr(0, 1)]);
        // projection undoes injection
        let back = inj[1].then(&proj[1]);
        assert_eq!(back.matrix(), &QMatrix::identity(2));
        // cross projection is zero
        assert!(inj[1].then(&proj[0]).is_zero());
    }
}
