use super::group::FgAbGroup;
use super::hnf::{column_hnf, hnf_member, lattice_contains};
use super::matrix::IntMatrix;
use super::snf::{smith, Smith};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::fmt;

/// Homomorphism between finitely generated abelian groups, given by an
/// integer matrix on generator coordinates. Construction checks
/// well-definedness: every source relator must land in the target's
/// relation lattice.
#[derive(Clone)]
pub struct FgMorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl FgMorphism {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::DimensionMismatch {
                context: "morphism matrix".into(),
                expected: format!("{}x{}", target.ngens(), source.ngens()),
                got: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        let rels = source.relations();
        for j in 0..rels.cols() {
            let image = matrix.mul_vec(&rels.col(j));
            if !target.is_zero_element(&image) {
                return Err(Error::IllDefinedMorphism { relator: j });
            }
        }
        Ok(FgMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        FgMorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero_map(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        FgMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// Composition in diagram order: `self` followed by `next`.
    pub fn then(&self, next: &FgMorphism) -> FgMorphism {
        assert!(
            self.target == next.source,
            "composition requires matching middle group"
        );
        FgMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.mul(&self.matrix),
        }
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.col(j)))
    }

    /// Equality as morphisms of the quotient groups (matrices may differ by
    /// target relators).
    pub fn equal_morphism(&self, other: &FgMorphism) -> bool {
        self.source == other.source
            && self.target == other.target
            && (0..self.matrix.cols()).all(|j| {
                let mut d = self.matrix.col(j);
                let o = other.matrix.col(j);
                for (a, b) in d.iter_mut().zip(o) {
                    *a -= b;
                }
                self.target.is_zero_element(&d)
            })
    }

    /// Kernel as a subgroup of the source: all classes x with f(x) = 0.
    pub fn kernel(&self) -> Subgroup {
        let aug = self.matrix.hstack(self.target.relations());
        let full = smith(&aug).kernel();
        let gens = full.select_rows(&(0..self.source.ngens()).collect::<Vec<_>>());
        Subgroup::new(self.source.clone(), gens)
    }

    /// Image as a subgroup of the target.
    pub fn image(&self) -> Subgroup {
        Subgroup::new(self.target.clone(), self.matrix.clone())
    }

    /// Cokernel presentation together with the projection from the target.
    pub fn cokernel(&self) -> (FgAbGroup, FgMorphism) {
        let rel = self.matrix.hstack(self.target.relations());
        let coker = FgAbGroup::new(self.target.ngens(), rel);
        let proj = FgMorphism {
            source: self.target.clone(),
            target: coker.clone(),
            matrix: IntMatrix::identity(self.target.ngens()),
        };
        (coker, proj)
    }

    /// Preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        assert!(
            *sub.ambient() == self.target,
            "preimage requires a subgroup of the target"
        );
        let aug = self.matrix.hstack(sub.lattice());
        let full = smith(&aug).kernel();
        let gens = full.select_rows(&(0..self.source.ngens()).collect::<Vec<_>>());
        Subgroup::new(self.source.clone(), gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

impl fmt::Debug for FgMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FgMorphism({} -> {}; {:?})",
            self.source, self.target, self.matrix
        )
    }
}

/// Subgroup of an f.g. abelian group, generated by explicit elements.
/// Canonically represented by the column HNF of the preimage lattice in the
/// generator space (generators together with the ambient relations), so two
/// subgroups are equal iff their `lattice` matrices are equal.
#[derive(Clone)]
pub struct Subgroup {
    ambient: FgAbGroup,
    gens: IntMatrix,
    lattice: IntMatrix,
    group: FgAbGroup,
    solver: Smith,
}

impl Subgroup {
    pub fn new(ambient: FgAbGroup, gens: IntMatrix) -> Self {
        assert_eq!(
            gens.rows(),
            ambient.ngens(),
            "subgroup generators live in ambient generator coordinates"
        );
        let lattice = column_hnf(&gens.hstack(ambient.relations()));
        let aug = gens.hstack(ambient.relations());
        let solver = smith(&aug);
        let full = solver.kernel();
        let rels = full.select_rows(&(0..gens.cols()).collect::<Vec<_>>());
        let group = FgAbGroup::new(gens.cols(), rels);
        Subgroup {
            ambient,
            gens,
            lattice,
            group,
            solver,
        }
    }

    pub fn zero(ambient: FgAbGroup) -> Self {
        let n = ambient.ngens();
        Self::new(ambient, IntMatrix::zeros(n, 0))
    }

    pub fn full(ambient: FgAbGroup) -> Self {
        let n = ambient.ngens();
        Self::new(ambient, IntMatrix::identity(n))
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    /// Generator lifts: column j is the ambient coordinate vector of the
    /// j-th abstract generator.
    pub fn gens(&self) -> &IntMatrix {
        &self.gens
    }

    /// Canonical preimage lattice in ℤ^ngens (includes the ambient
    /// relations).
    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    /// The subgroup as an abstract group on the given generators.
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn inclusion(&self) -> FgMorphism {
        FgMorphism {
            source: self.group.clone(),
            target: self.ambient.clone(),
            matrix: self.gens.clone(),
        }
    }

    pub fn contains_element(&self, v: &[BigInt]) -> bool {
        hnf_member(&self.lattice, v)
    }

    pub fn contains(&self, other: &Subgroup) -> bool {
        assert!(self.ambient == other.ambient);
        lattice_contains(&self.lattice, &other.lattice)
    }

    pub fn equal_subgroup(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.lattice == other.lattice
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        assert!(self.ambient == other.ambient);
        Subgroup::new(self.ambient.clone(), self.gens.hstack(&other.gens))
    }

    /// Coordinates of an ambient element in terms of the subgroup
    /// generators (modulo ambient relations); None if not a member.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let sol = self.solver.solve(v)?;
        Some(sol[..self.gens.cols()].to_vec())
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup({} of {}; {} gens)",
            self.group,
            self.ambient,
            self.gens.cols()
        )
    }
}

/// The subquotient (Z + B)/B presented on Z's generators; equals Z/B when
/// B ⊆ Z (the homology situation).
pub fn subquotient(z: &Subgroup, b: &Subgroup) -> FgAbGroup {
    assert!(z.ambient() == b.ambient());
    let aug = z.gens().hstack(b.lattice());
    let full = smith(&aug).kernel();
    let rels = full.select_rows(&(0..z.gens().cols()).collect::<Vec<_>>());
    FgAbGroup::new(z.gens().cols(), rels)
}
