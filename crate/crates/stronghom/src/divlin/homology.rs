use super::complex::{DivChainMap, DivComplex};
use super::group::{div_image, div_kernel, DivGroup};
use super::lattice::LatticeSubgroup;
use super::qmatrix::QMatrix;
use super::solve::solve_mixed;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, FgMorphism, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Homology of a complex of divisible groups at one degree, presented as a
/// finitely generated abelian group together with explicit cycle lifts.
///
/// Cycles Z = {x : ∂x ∈ L} and boundaries B = im ∂ + L are lattice
/// subgroups of the ambient ℚⁿ with B ⊆ Z. The quotient Z/B is finitely
/// generated exactly when the subspace parts agree, in which case the
/// lattice generators of Z present it: relations are the integer vectors v
/// with Λ_Z·v ∈ W + ⟨Λ_B⟩.
#[derive(Clone, Debug)]
pub struct DivHomology {
    degree: i64,
    ambient: DivGroup,
    group: FgAbGroup,
    cycles: LatticeSubgroup,
    boundaries: LatticeSubgroup,
}

pub fn homology_of_div_complex(x: &DivComplex, n: i64) -> Result<DivHomology> {
    let z = div_kernel(&x.boundary(n));
    let b = div_image(&x.boundary(n + 1));
    debug_assert!(z.contains(&b), "boundaries must be cycles");
    if z.w() != b.w() {
        return Err(Error::NonFgHomology {
            degree: n,
            z_dim: z.subspace_dim(),
            b_dim: b.subspace_dim(),
        });
    }
    let lam_z = z.lam();
    let l_z = lam_z.cols();
    // relations: Λ_Z·v = W·a + Λ_B·u with v, u integer and a rational
    let a_block = z.w().neg();
    let b_block = lam_z.hstack(&b.lam().neg());
    let sol = solve_mixed(&a_block, &b_block);
    let v_rows: Vec<usize> = (0..l_z).collect();
    let relations = sol.t_lattice.select_rows(&v_rows);
    let group = FgAbGroup::new(l_z, relations);
    Ok(DivHomology {
        degree: n,
        ambient: x.group(n),
        group,
        cycles: z,
        boundaries: b,
    })
}

impl DivHomology {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn ambient(&self) -> DivGroup {
        self.ambient
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn cycles(&self) -> &LatticeSubgroup {
        &self.cycles
    }

    pub fn boundaries(&self) -> &LatticeSubgroup {
        &self.boundaries
    }

    /// Ambient representative of the j-th presentation generator.
    pub fn lift(&self, j: usize) -> Vec<BigRational> {
        self.cycles.lam().col(j)
    }

    /// All generator lifts as columns.
    pub fn lifts(&self) -> QMatrix {
        self.cycles.lam()
    }

    /// Generator coordinates of a cycle's homology class. The subspace part
    /// of the decomposition is discarded — it lies in the boundaries, since
    /// the two subspaces coincide.
    pub fn coords(&self, z: &[BigRational]) -> Result<Vec<BigInt>> {
        if z.len() != self.ambient.dim() {
            return Err(Error::DimensionMismatch {
                context: format!("cycle at degree {}", self.degree),
                expected: format!("{}", self.ambient.dim()),
                got: format!("{}", z.len()),
            });
        }
        match self.cycles.decompose(z) {
            Some((_, s)) => Ok(s),
            None => Err(Error::InexactInput {
                reason: format!("vector is not a cycle at degree {}", self.degree),
            }),
        }
    }

    /// Is the given cycle a boundary?
    pub fn is_boundary(&self, z: &[BigRational]) -> Result<bool> {
        let c = self.coords(z)?;
        Ok(self.group.is_zero_element(&c))
    }
}

/// The map induced on degree-n homology by a chain map, with source and
/// target homology computed on the fly.
pub fn induced_map_on_homology(f: &DivChainMap, n: i64) -> Result<FgMorphism> {
    let hs = homology_of_div_complex(f.source(), n)?;
    let ht = homology_of_div_complex(f.target(), n)?;
    induced_map_between(f, n, &hs, &ht)
}

/// The induced map against precomputed homology presentations. Each source
/// generator lift is pushed through the degree-n component and re-expressed
/// in target generators; morphism construction then independently checks
/// that relations map to zero, i.e. that the result is well defined.
pub fn induced_map_between(
    f: &DivChainMap,
    n: i64,
    hs: &DivHomology,
    ht: &DivHomology,
) -> Result<FgMorphism> {
    let m = f.map(n);
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(hs.group().ngens());
    for j in 0..hs.group().ngens() {
        let image = m.matrix().mul_vec(&hs.lift(j));
        cols.push(ht.coords(&image)?);
    }
    let matrix = IntMatrix::from_cols(ht.group().ngens(), &cols);
    FgMorphism::new(hs.group().clone(), ht.group().clone(), matrix)
}
