use super::hnf::{column_hnf, hnf_member};
use super::matrix::IntMatrix;
use super::snf::cokernel_invariants;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Finitely generated abelian group presented as ℤ^ngens modulo the column
/// span of `relations`. Invariant factors are computed eagerly: torsion
/// factors d ≥ 2 in divisibility order, then one 0 per free factor, so the
/// list is a complete isomorphism invariant.
#[derive(Clone)]
pub struct FgAbGroup {
    ngens: usize,
    relations: IntMatrix,
    invariants: Vec<BigInt>,
    rel_hnf: IntMatrix,
}

impl PartialEq for FgAbGroup {
    /// Presentation equality (same generators, same relation lattice) — the
    /// notion under which two groups can serve interchangeably as source or
    /// target of a morphism. Use [`FgAbGroup::is_isomorphic`] for the
    /// classification-level comparison.
    fn eq(&self, other: &Self) -> bool {
        self.ngens == other.ngens && self.rel_hnf == other.rel_hnf
    }
}
impl Eq for FgAbGroup {}

impl FgAbGroup {
    pub fn new(ngens: usize, relations: IntMatrix) -> Self {
        assert_eq!(
            relations.rows(),
            ngens,
            "relation matrix must have one row per generator"
        );
        let invariants = cokernel_invariants(&relations);
        let rel_hnf = column_hnf(&relations);
        FgAbGroup {
            ngens,
            relations,
            invariants,
            rel_hnf,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// ℤ/d as a one-generator group (d = 0 gives ℤ).
    pub fn cyclic(d: i64) -> Self {
        if d == 0 {
            Self::free(1)
        } else {
            Self::new(1, IntMatrix::from_i64(1, 1, &[d]))
        }
    }

    /// Canonical presentation ℤ^free ⊕ ⊕ᵢ ℤ/dᵢ: free generators first, then
    /// one generator per torsion factor with a single diagonal relator.
    pub fn canonical(free_rank: usize, torsion: &[BigInt]) -> Self {
        for d in torsion {
            assert!(d.abs() > BigInt::one(), "torsion factors must be ≥ 2");
        }
        let n = free_rank + torsion.len();
        let mut rel = IntMatrix::zeros(n, torsion.len());
        for (k, d) in torsion.iter().enumerate() {
            rel.set(free_rank + k, k, d.abs());
        }
        Self::new(n, rel)
    }

    /// From an invariant-factor list (0 = free factor, units dropped).
    pub fn from_invariant_list(factors: &[BigInt]) -> Self {
        let free = factors.iter().filter(|d| d.is_zero()).count();
        let torsion: Vec<BigInt> = factors
            .iter()
            .filter(|d| !d.is_zero() && !d.abs().is_one())
            .cloned()
            .collect();
        // normalize the torsion multiset into a divisibility chain
        let diag = IntMatrix::from_fn(torsion.len(), torsion.len(), |i, j| {
            if i == j {
                torsion[i].clone()
            } else {
                BigInt::zero()
            }
        });
        let chain = cokernel_invariants(&diag);
        Self::canonical(free, &chain)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Torsion factors then zeros; empty for the trivial group.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariants
            .iter()
            .filter(|d| !d.is_zero())
            .cloned()
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.invariants == other.invariants
    }

    /// Order of the group, None if infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            None
        } else {
            Some(
                self.invariants
                    .iter()
                    .fold(BigInt::one(), |acc, d| acc * d),
            )
        }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_factors()
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Is this exactly the canonical presentation for its invariants
    /// (free generators first, one diagonal relator per torsion factor)?
    pub fn is_canonical_form(&self) -> bool {
        let canon = Self::canonical(self.free_rank(), &self.torsion_factors());
        self.ngens == canon.ngens && self.relations == canon.relations
    }

    pub fn canonical_form(&self) -> Self {
        Self::canonical(self.free_rank(), &self.torsion_factors())
    }

    /// Does `v` (in generator coordinates) represent 0?
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        hnf_member(&self.rel_hnf, v)
    }

    /// Direct sum, with the generator offset of each summand.
    pub fn direct_sum(parts: &[&FgAbGroup]) -> (FgAbGroup, Vec<usize>) {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for p in parts {
            offsets.push(acc);
            acc += p.ngens;
        }
        let rels: Vec<&IntMatrix> = parts.iter().map(|p| &p.relations).collect();
        let rel = IntMatrix::block_diag(&rels);
        (FgAbGroup::new(acc, rel), offsets)
    }
}

impl fmt::Display for FgAbGroup {
    /// Canonical decomposition: "0", or "Z"/"Z/n" tokens joined by "+",
    /// free part first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut tokens: Vec<String> = Vec::new();
        for _ in 0..self.free_rank() {
            tokens.push("Z".to_string());
        }
        for d in self.torsion_factors() {
            tokens.push(format!("Z/{}", d));
        }
        write!(f, "{}", tokens.join("+"))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({}; ngens={})", self, self.ngens)
    }
}

/// Hom(A, B), computed factorwise from the canonical decompositions:
/// Hom(ℤ, B) = B, Hom(ℤ/d, ℤ) = 0, Hom(ℤ/d, ℤ/e) = ℤ/gcd(d, e).
pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let (fa, fb) = (a.free_rank(), b.free_rank());
    let ta = a.torsion_factors();
    let tb = b.torsion_factors();
    let mut factors: Vec<BigInt> = Vec::new();
    factors.extend(std::iter::repeat(BigInt::zero()).take(fa * fb));
    for e in &tb {
        for _ in 0..fa {
            factors.push(e.clone());
        }
    }
    for d in &ta {
        for e in &tb {
            factors.push(num_integer::gcd(d.clone(), e.clone()));
        }
    }
    FgAbGroup::from_invariant_list(&factors)
}

/// Ext(A, B), factorwise: Ext(ℤ, B) = 0, Ext(ℤ/d, B) = B/dB.
pub fn ext_group(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let fb = b.free_rank();
    let ta = a.torsion_factors();
    let tb = b.torsion_factors();
    let mut factors: Vec<BigInt> = Vec::new();
    for d in &ta {
        // B/dB = (ℤ/d)^fb ⊕ ⊕_e ℤ/gcd(d,e)
        for _ in 0..fb {
            factors.push(d.clone());
        }
        for e in &tb {
            factors.push(num_integer::gcd(d.clone(), e.clone()));
        }
    }
    FgAbGroup::from_invariant_list(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn invariants_examples() {
        let g = FgAbGroup::new(2, IntMatrix::from_i64(2, 2, &[6, 0, 0, 4]));
        assert_eq!(g.invariant_factors(), big(&[2, 12]).as_slice());
        let free2 = FgAbGroup::free(2);
        assert_eq!(free2.invariant_factors(), big(&[0, 0]).as_slice());
        let trivial = FgAbGroup::new(1, IntMatrix::from_i64(1, 1, &[1]));
        assert!(trivial.invariant_factors().is_empty());
        assert!(trivial.is_trivial());
    }

    #[test]
    fn presentation_invariance() {
        // unimodular change of presentation does not move the invariants
        let g = FgAbGroup::new(2, IntMatrix::from_i64(2, 2, &[6, 6, 0, 4]));
        let h = FgAbGroup::new(2, IntMatrix::from_i64(2, 2, &[6, 0, 4, 4]));
        assert!(g.is_isomorphic(&h));
        assert_eq!(g.invariant_factors(), big(&[2, 12]).as_slice());
    }

    #[test]
    fn canonical_and_display() {
        let g = FgAbGroup::canonical(1, &big(&[4]));
        assert!(g.is_canonical_form());
        assert_eq!(g.to_string(), "Z+Z/4");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::cyclic(2).to_string(), "Z/2");
        assert_eq!(g.order(), None);
        assert_eq!(FgAbGroup::cyclic(6).order(), Some(BigInt::from(6)));
    }

    #[test]
    fn hom_examples() {
        // Hom(ℤ ⊕ ℤ/4, ℤ/6) = ℤ/6 ⊕ ℤ/2
        let a = FgAbGroup::canonical(1, &big(&[4]));
        let b = FgAbGroup::cyclic(6);
        let h = hom_group(&a, &b);
        assert_eq!(h.invariant_factors(), big(&[2, 6]).as_slice());
        // Hom(ℤ/2, ℤ) = 0
        assert!(hom_group(&FgAbGroup::cyclic(2), &FgAbGroup::free(1)).is_trivial());
        // Hom(ℤ, G) = G
        let g = FgAbGroup::canonical(2, &big(&[3, 9]));
        assert!(hom_group(&FgAbGroup::free(1), &g).is_isomorphic(&g));
    }

    #[test]
    fn ext_examples() {
        // Ext(ℤ/4, ℤ/6) = ℤ/2
        let e = ext_group(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6));
        assert_eq!(e.invariant_factors(), big(&[2]).as_slice());
        // Ext(ℤ, B) = 0
        assert!(ext_group(&FgAbGroup::free(1), &FgAbGroup::cyclic(12)).is_trivial());
        // Ext(ℤ/3, ℤ) = ℤ/3
        let e2 = ext_group(&FgAbGroup::cyclic(3), &FgAbGroup::free(1));
        assert_eq!(e2.invariant_factors(), big(&[3]).as_slice());
    }

    #[test]
    fn hom_ext_additive_in_direct_sums() {
        let a1 = FgAbGroup::cyclic(4);
        let a2 = FgAbGroup::canonical(1, &big(&[6]));
        let b = FgAbGroup::canonical(1, &big(&[2]));
        let (a, _) = FgAbGroup::direct_sum(&[&a1, &a2]);
        let lhs = hom_group(&a, &b);
        let (rhs, _) = FgAbGroup::direct_sum(&[&hom_group(&a1, &b), &hom_group(&a2, &b)]);
        assert!(lhs.is_isomorphic(&rhs));
        let lhs_e = ext_group(&a, &b);
        let (rhs_e, _) = FgAbGroup::direct_sum(&[&ext_group(&a1, &b), &ext_group(&a2, &b)]);
        assert!(lhs_e.is_isomorphic(&rhs_e));
    }
}
