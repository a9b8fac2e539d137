use super::group::{DivGroup, DivMorphism};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Chain complex of divisible groups with boundary ∂ₙ: Xₙ → Xₙ₋₁, supported
/// on a finite degree range. Outside the range every group is trivial.
///
/// A rational linear map whose image lies inside a lattice is zero (its
/// image is a divisible subgroup of a free group), so ∂² = 0 in the lattice
/// quotient forces ∂² = 0 as an exact matrix identity — which is what
/// construction checks.
#[derive(Clone, Debug)]
pub struct DivComplex {
    lo: i64,
    groups: Vec<DivGroup>,
    /// boundaries[k] = ∂_{lo+1+k}: groups[k+1] → groups[k]
    boundaries: Vec<DivMorphism>,
}

impl DivComplex {
    pub fn new(lo: i64, groups: Vec<DivGroup>, boundaries: Vec<DivMorphism>) -> Result<Self> {
        assert!(!groups.is_empty(), "degree range must be nonempty");
        assert_eq!(
            boundaries.len(),
            groups.len() - 1,
            "one boundary per consecutive degree pair"
        );
        for (k, b) in boundaries.iter().enumerate() {
            if b.source() != groups[k + 1] || b.target() != groups[k] {
                return Err(Error::DimensionMismatch {
                    context: format!("boundary at degree {}", lo + 1 + k as i64),
                    expected: format!("{} -> {}", groups[k + 1], groups[k]),
                    got: format!("{} -> {}", b.source(), b.target()),
                });
            }
        }
        for k in 0..boundaries.len().saturating_sub(1) {
            let comp = boundaries[k + 1].then(&boundaries[k]);
            if !comp.is_zero() {
                return Err(Error::BoundarySquare {
                    degree: lo + 2 + k as i64,
                });
            }
        }
        Ok(DivComplex {
            lo,
            groups,
            boundaries,
        })
    }

    /// Complex concentrated in a single degree with zero boundary.
    pub fn concentrated(degree: i64, g: DivGroup) -> Self {
        DivComplex {
            lo: degree,
            groups: vec![g],
            boundaries: vec![],
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.groups.len() as i64 - 1
    }

    pub fn group(&self, n: i64) -> DivGroup {
        if n < self.lo || n > self.hi() {
            DivGroup::trivial()
        } else {
            self.groups[(n - self.lo) as usize]
        }
    }

    /// ∂ₙ: Xₙ → Xₙ₋₁ (a zero morphism outside the stored range).
    pub fn boundary(&self, n: i64) -> DivMorphism {
        if n > self.lo && n <= self.hi() {
            self.boundaries[(n - self.lo - 1) as usize].clone()
        } else {
            DivMorphism::zero_map(self.group(n), self.group(n - 1))
        }
    }

    pub fn total_dim(&self) -> usize {
        self.groups.iter().map(|g| g.dim()).sum()
    }
}

/// Chain map between complexes of divisible groups. Commutation with the
/// boundaries is checked as an exact matrix identity at every degree (again
/// forced by the lattice-quotient condition).
#[derive(Clone, Debug)]
pub struct DivChainMap {
    source: DivComplex,
    target: DivComplex,
    maps: BTreeMap<i64, DivMorphism>,
}

impl DivChainMap {
    pub fn new(
        source: DivComplex,
        target: DivComplex,
        maps: BTreeMap<i64, DivMorphism>,
    ) -> Result<Self> {
        for (&n, f) in &maps {
            if f.source() != source.group(n) || f.target() != target.group(n) {
                return Err(Error::DimensionMismatch {
                    context: format!("chain map component at degree {n}"),
                    expected: format!("{} -> {}", source.group(n), target.group(n)),
                    got: format!("{} -> {}", f.source(), f.target()),
                });
            }
        }
        let cm = DivChainMap {
            source,
            target,
            maps,
        };
        let lo = cm.source.lo().min(cm.target.lo());
        let hi = cm.source.hi().max(cm.target.hi());
        for n in lo..=hi + 1 {
            let lhs = cm.map(n).then(&cm.target.boundary(n));
            let rhs = cm.source.boundary(n).then(&cm.map(n - 1));
            if lhs.matrix() != rhs.matrix() {
                return Err(Error::NotChainMap { degree: n });
            }
        }
        Ok(cm)
    }

    pub fn identity(x: &DivComplex) -> Self {
        let mut maps = BTreeMap::new();
        for n in x.lo()..=x.hi() {
            maps.insert(n, DivMorphism::identity(x.group(n)));
        }
        DivChainMap {
            source: x.clone(),
            target: x.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &DivComplex {
        &self.source
    }

    pub fn target(&self) -> &DivComplex {
        &self.target
    }

    pub fn map(&self, n: i64) -> DivMorphism {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| DivMorphism::zero_map(self.source.group(n), self.target.group(n)))
    }

    /// Composition in diagram order: `self` followed by `next`.
    pub fn then(&self, next: &DivChainMap) -> Result<DivChainMap> {
        let lo = self.source.lo().min(next.target.lo());
        let hi = self.source.hi().max(next.target.hi());
        let mut maps = BTreeMap::new();
        for n in lo..=hi {
            maps.insert(n, self.map(n).then(&next.map(n)));
        }
        DivChainMap::new(self.source.clone(), next.target.clone(), maps)
    }
}

/// Degreewise equality of two chain maps with the same endpoints.
pub fn equal_div_chain_maps(a: &DivChainMap, b: &DivChainMap) -> bool {
    let lo = a.source().lo().min(b.source().lo());
    let hi = a.source().hi().max(b.source().hi());
    (lo..=hi).all(|n| a.map(n).matrix() == b.map(n).matrix())
        && a.source().lo() == b.source().lo()
        && a.target().lo() == b.target().lo()
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::qmatrix::QMatrix;

    /// ℚ → ℚ/ℤ in degrees [−1, 0] (dualized point with G = ℤ).
    fn point_complex_z() -> DivComplex {
        let q = DivGroup::new(1, 0);
        let qz = DivGroup::new(0, 1);
        let beta = DivMorphism::new(q, qz, QMatrix::from_i64(1, 1, &[1])).unwrap();
        DivComplex::new(-1, vec![qz, q], vec![beta]).unwrap()
    }

    #[test]
    fn degree_bookkeeping() {
        let x = point_complex_z();
        assert_eq!(x.lo(), -1);
        assert_eq!(x.hi(), 0);
        assert_eq!(x.group(0), DivGroup::new(1, 0));
        assert_eq!(x.group(-1), DivGroup::new(0, 1));
        assert!(x.group(5).is_trivial());
        assert!(x.boundary(1).is_zero());
        assert!(!x.boundary(0).is_zero());
    }

    #[test]
    fn boundary_square_rejected() {
        let qz = DivGroup::new(0, 1);
        let one = DivMorphism::new(qz, qz, QMatrix::from_i64(1, 1, &[1])).unwrap();
        let err = DivComplex::new(0, vec![qz, qz, qz], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, Error::BoundarySquare { degree: 2 }));
    }

    #[test]
    fn chain_map_commutation_enforced() {
        let x = point_complex_z();
        // scaling both degrees by 3 commutes; scaling only one does not
        let mut good = BTreeMap::new();
        good.insert(0, DivMorphism::new(x.group(0), x.group(0), QMatrix::from_i64(1, 1, &[3])).unwrap());
        good.insert(
            -1,
            DivMorphism::new(x.group(-1), x.group(-1), QMatrix::from_i64(1, 1, &[3])).unwrap(),
        );
        assert!(DivChainMap::new(x.clone(), x.clone(), good).is_ok());
        let mut bad = BTreeMap::new();
        bad.insert(0, DivMorphism::new(x.group(0), x.group(0), QMatrix::from_i64(1, 1, &[3])).unwrap());
        let err = DivChainMap::new(x.clone(), x.clone(), bad).unwrap_err();
        assert!(matches!(err, Error::NotChainMap { degree: 0 }));
        // identity always works
        assert!(DivChainMap::identity(&x).then(&DivChainMap::identity(&x)).is_ok());
    }
}
