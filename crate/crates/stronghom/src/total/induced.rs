use super::build::{build_total, total_homology, TruncatedTotal};
use super::tower::infinity_total;
use crate::cone::{induced_cone_map_with, CochainMap, Coefficients};
use crate::divlin::{induced_map_between, DivChainMap, DivMorphism};
use crate::error::{Error, Result};
use crate::fgab::FgMorphism;
use crate::prosys::{DirectSystem, MultiIndex};
use std::collections::BTreeMap;

/// A morphism of direct systems: an order-preserving map of index posets
/// together with cochain maps over it that commute strictly with the
/// bondings.
pub struct SystemMorphism<'a> {
    source: &'a DirectSystem,
    target: &'a DirectSystem,
    index_map: Vec<usize>,
    components: Vec<CochainMap>,
}

fn cochain_maps_equal(a: &CochainMap, b: &CochainMap) -> bool {
    let lo = 0;
    let hi = a
        .source()
        .top()
        .max(b.source().top())
        .max(a.target().top())
        .max(b.target().top());
    (lo..=hi).all(|n| a.map(n) == b.map(n))
}

impl<'a> SystemMorphism<'a> {
    pub fn new(
        source: &'a DirectSystem,
        target: &'a DirectSystem,
        index_map: Vec<usize>,
        components: Vec<CochainMap>,
    ) -> Result<Self> {
        let n = source.poset().len();
        if index_map.len() != n || components.len() != n {
            return Err(Error::InvalidSystem {
                reason: format!(
                    "a system morphism over {n} elements needs {n} index images and components"
                ),
            });
        }
        for (i, &fi) in index_map.iter().enumerate() {
            if fi >= target.poset().len() {
                return Err(Error::InvalidSystem {
                    reason: format!("index image {fi} of {i} is out of range"),
                });
            }
            if components[i].source() != source.complex(i)
                || components[i].target() != target.complex(fi)
            {
                return Err(Error::InvalidSystem {
                    reason: format!("component at {i} does not run C_{i} -> D_{fi}"),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !source.poset().leq(i, j) {
                    continue;
                }
                let (fi, fj) = (index_map[i], index_map[j]);
                if !target.poset().leq(fi, fj) {
                    return Err(Error::InvalidSystem {
                        reason: format!(
                            "index map is not order-preserving at ({i}, {j})"
                        ),
                    });
                }
                let left = source.bonding(i, j).then(&components[j]);
                let right = components[i].then(&target.bonding(fi, fj));
                if !cochain_maps_equal(&left, &right) {
                    return Err(Error::InvalidSystem {
                        reason: format!("squares over ({i}, {j}) do not commute"),
                    });
                }
            }
        }
        Ok(SystemMorphism {
            source,
            target,
            index_map,
            components,
        })
    }

    pub fn identity(s: &'a DirectSystem) -> Self {
        let n = s.poset().len();
        SystemMorphism {
            source: s,
            target: s,
            index_map: (0..n).collect(),
            components: (0..n)
                .map(|i| CochainMap::identity(s.complex(i)))
                .collect(),
        }
    }

    pub fn source(&self) -> &DirectSystem {
        self.source
    }

    pub fn target(&self) -> &DirectSystem {
        self.target
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    pub fn component(&self, i: usize) -> &CochainMap {
        &self.components[i]
    }

    /// Composition in diagram order: self followed by `next`.
    pub fn then(&self, next: &SystemMorphism<'a>) -> Result<SystemMorphism<'a>> {
        if !std::ptr::eq(self.target, next.source) {
            return Err(Error::InvalidSystem {
                reason: "system morphisms are not composable".into(),
            });
        }
        let index_map: Vec<usize> = self.index_map.iter().map(|&i| next.index_map[i]).collect();
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| c.then(&next.components[self.index_map[i]]))
            .collect();
        SystemMorphism::new(self.source, next.target, index_map, components)
    }
}

/// The chain map T(𝐃) → T(𝐂) induced by a system morphism 𝐂 → 𝐃 on totals
/// of the same height bound: cone functoriality is contravariant, so each
/// block (s, 𝝀) of T(𝐂) receives the block (s, φ𝝀) of T(𝐃) through the
/// induced cone map of the component at λ₀.
///
/// `domain` must be a total over the target system and `codomain` one over
/// the source system, both with the same normalization. When the codomain
/// is normalized, a strict chain 𝝀 may have a degenerate image φ𝝀 that is
/// absent from a normalized domain; its contribution is zero, because the
/// degenerate block of the unnormalized complex is split off by a chain
/// homotopy equivalence that the normalized inclusion realizes.
pub fn induced_between_totals(
    m: &SystemMorphism<'_>,
    coeff: &Coefficients,
    domain: &TruncatedTotal,
    codomain: &TruncatedTotal,
) -> Result<DivChainMap> {
    if domain.is_normalized() != codomain.is_normalized() {
        return Err(Error::InvalidInstance {
            reason: "induced total maps need matching normalization".into(),
        });
    }
    let beta = coeff.beta();
    let mut cone_maps: Vec<Option<DivChainMap>> = vec![None; m.source.poset().len()];
    let lo = domain.complex().lo().min(codomain.complex().lo());
    let hi = domain.complex().hi().max(codomain.complex().hi());
    let mut maps = BTreeMap::new();
    for n in lo..=hi {
        let mut acc = DivMorphism::zero_map(
            domain.complex().group(n),
            codomain.complex().group(n),
        );
        for (b, (s, lam)) in codomain.blocks().iter().enumerate() {
            let image_entries: Vec<usize> =
                lam.entries().iter().map(|&i| m.index_map[i]).collect();
            let image = MultiIndex::new(m.target.poset(), image_entries)?;
            let Some(pos) = domain.block_index(*s, &image) else {
                continue;
            };
            let shifted = n + *s as i64;
            let lam0 = lam.lambda0();
            if cone_maps[lam0].is_none() {
                cone_maps[lam0] = Some(induced_cone_map_with(&m.components[lam0], &beta));
            }
            let comp = cone_maps[lam0].as_ref().unwrap().map(shifted);
            let piece = domain
                .projection(n, pos)
                .then(&comp)
                .then(&codomain.injection(n, b));
            acc = acc.add(&piece);
        }
        maps.insert(n, acc);
    }
    DivChainMap::new(domain.complex().clone(), codomain.complex().clone(), maps)
}

/// An induced map packaged with the totals it runs between.
pub struct InducedTotalMap {
    pub domain: TruncatedTotal,
    pub codomain: TruncatedTotal,
    pub map: DivChainMap,
}

/// Build totals of height bound `r` over both systems and the induced
/// chain map T(target) → T(source).
pub fn induced_total_map(
    m: &SystemMorphism<'_>,
    coeff: &Coefficients,
    r: usize,
    normalized: bool,
) -> Result<InducedTotalMap> {
    let domain = build_total(m.target(), coeff, r, normalized)?;
    let codomain = build_total(m.source(), coeff, r, normalized)?;
    let map = induced_between_totals(m, coeff, &domain, &codomain)?;
    Ok(InducedTotalMap {
        domain,
        codomain,
        map,
    })
}

/// The induced morphism H̄∞ₙ(target) → H̄∞ₙ(source) on full normalized
/// totals, each capped at its own poset height.
pub fn induced_infinity_map(
    m: &SystemMorphism<'_>,
    coeff: &Coefficients,
    n: i64,
) -> Result<FgMorphism> {
    let domain = infinity_total(m.target(), coeff)?;
    let codomain = infinity_total(m.source(), coeff)?;
    let chain = induced_between_totals(m, coeff, &domain, &codomain)?;
    let hd = total_homology(&domain, n)?;
    let hc = total_homology(&codomain, n)?;
    induced_map_between(&chain, n, &hd, &hc)
}
