use super::poset::FinitePoset;
use crate::cone::{build_cone_with, induced_cone_map_with, Coefficients, CochainComplex, CochainMap};
use crate::divlin::{DivChainMap, DivComplex};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A direct system of cochain complexes over a finite poset: one complex
/// per element and a bonding map p: C*λ → C*λ′ for every strict relation
/// λ ≤ λ′. Construction checks shapes only; the functor laws (identities,
/// strict composition) are the business of [`validate_system`], so that
/// deliberately broken systems can be built and diagnosed.
#[derive(Clone, Debug)]
pub struct DirectSystem {
    poset: FinitePoset,
    complexes: Vec<CochainComplex>,
    bondings: BTreeMap<(usize, usize), CochainMap>,
}

impl DirectSystem {
    pub fn new(
        poset: FinitePoset,
        complexes: Vec<CochainComplex>,
        bondings: impl IntoIterator<Item = ((usize, usize), CochainMap)>,
    ) -> Result<Self> {
        let bondings: BTreeMap<(usize, usize), CochainMap> = bondings.into_iter().collect();
        if complexes.len() != poset.len() {
            return Err(Error::InvalidSystem {
                reason: format!(
                    "{} complexes for a poset of {} elements",
                    complexes.len(),
                    poset.len()
                ),
            });
        }
        for (&(i, j), f) in &bondings {
            if i == j || !poset.leq(i, j) {
                return Err(Error::InvalidSystem {
                    reason: format!("bonding for ({}, {}) which is not a strict relation", i, j),
                });
            }
            if f.source() != &complexes[i] || f.target() != &complexes[j] {
                return Err(Error::InvalidSystem {
                    reason: format!("bonding ({}, {}) does not connect the stored complexes", i, j),
                });
            }
        }
        for (i, j) in poset.strict_pairs() {
            if !bondings.contains_key(&(i, j)) {
                return Err(Error::InvalidSystem {
                    reason: format!("missing bonding for relation ({}, {})", i, j),
                });
            }
        }
        Ok(DirectSystem {
            poset,
            complexes,
            bondings,
        })
    }

    /// The constant system: one complex everywhere, identity bondings.
    pub fn constant(poset: FinitePoset, complex: CochainComplex) -> Self {
        let mut bondings = BTreeMap::new();
        for (i, j) in poset.strict_pairs() {
            bondings.insert((i, j), CochainMap::identity(&complex));
        }
        let complexes = vec![complex; poset.len()];
        DirectSystem {
            poset,
            complexes,
            bondings,
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn complex(&self, i: usize) -> &CochainComplex {
        &self.complexes[i]
    }

    /// p_{ij} for i ≤ j, with p_{ii} = identity.
    pub fn bonding(&self, i: usize, j: usize) -> CochainMap {
        assert!(self.poset.leq(i, j), "bonding requested off-relation");
        if i == j {
            CochainMap::identity(&self.complexes[i])
        } else {
            self.bondings[&(i, j)].clone()
        }
    }

    /// Largest top degree over all member complexes; −1 if empty.
    pub fn top(&self) -> i64 {
        self.complexes.iter().map(|c| c.top()).max().unwrap_or(-1)
    }
}

/// Outcome of checking the functor laws on a system: every failed law with
/// the offending pair or triple.
#[derive(Clone, Debug)]
pub struct SystemReport {
    pub violations: Vec<String>,
}

impl SystemReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SystemReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "system valid: identities and composition law hold")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {}", v)?;
            }
            Ok(())
        }
    }
}

/// Checks strict commutativity: p_{λλ″} = p_{λ′λ″} ∘ p_{λλ′} on every
/// composable triple, as exact matrix identities degreewise.
pub fn validate_system(s: &DirectSystem) -> SystemReport {
    let mut violations = Vec::new();
    let n = s.poset().len();
    for i in 0..n {
        for j in 0..n {
            if !s.poset().leq(i, j) {
                continue;
            }
            for k in 0..n {
                if !s.poset().leq(j, k) {
                    continue;
                }
                let via = s.bonding(i, j).then(&s.bonding(j, k));
                let direct = s.bonding(i, k);
                let top = s.complex(i).top().max(s.complex(k).top());
                for d in 0..=top {
                    if via.map(d) != direct.map(d) {
                        violations.push(format!(
                            "composition fails at triple ({}, {}, {}) in degree {}",
                            i, j, k, d
                        ));
                        break;
                    }
                }
            }
        }
    }
    SystemReport { violations }
}

/// The colimit of a direct system over a directed finite poset, realized
/// at the maximum element, with the canonical injections p_{λ,max}.
pub fn colimit_complex(s: &DirectSystem) -> Result<(CochainComplex, Vec<CochainMap>)> {
    let max = s.poset().maximum().ok_or_else(|| Error::NotDirected {
        context: "colimit of the system".into(),
    })?;
    let injections = (0..s.poset().len()).map(|i| s.bonding(i, max)).collect();
    Ok((s.complex(max).clone(), injections))
}

/// The inverse system of cone complexes: one cone per poset element and,
/// for each strict relation λ ≤ λ′, the contravariantly induced chain map
/// Cone(C*λ′) → Cone(C*λ). Functoriality of the induced maps is re-checked
/// exactly during construction.
#[derive(Clone, Debug)]
pub struct ConeSystem {
    poset: FinitePoset,
    cones: Vec<DivComplex>,
    bondings: BTreeMap<(usize, usize), DivChainMap>,
}

impl ConeSystem {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn cone(&self, i: usize) -> &DivComplex {
        &self.cones[i]
    }

    /// The induced map Cone(C*ⱼ) → Cone(C*ᵢ) for i ≤ j, identity when i = j.
    pub fn bonding(&self, i: usize, j: usize) -> DivChainMap {
        assert!(self.poset.leq(i, j), "cone bonding requested off-relation");
        if i == j {
            DivChainMap::identity(&self.cones[i])
        } else {
            self.bondings[&(i, j)].clone()
        }
    }
}

pub fn inverse_cone_system(s: &DirectSystem, coeff: &Coefficients) -> Result<ConeSystem> {
    let beta = coeff.beta();
    let cones: Vec<DivComplex> = (0..s.poset().len())
        .map(|i| build_cone_with(s.complex(i), &beta))
        .collect();
    let mut bondings = BTreeMap::new();
    for (i, j) in s.poset().strict_pairs() {
        bondings.insert((i, j), induced_cone_map_with(&s.bonding(i, j), &beta));
    }
    let sys = ConeSystem {
        poset: s.poset().clone(),
        cones,
        bondings,
    };
    // contravariant functoriality, re-verified exactly
    let n = sys.poset.len();
    for i in 0..n {
        for j in 0..n {
            if !sys.poset.leq(i, j) {
                continue;
            }
            for k in 0..n {
                if !sys.poset.leq(j, k) {
                    continue;
                }
                let via = sys.bonding(j, k).then(&sys.bonding(i, j))?;
                let direct = sys.bonding(i, k);
                let lo = via.source().lo().min(direct.source().lo());
                let hi = via.source().hi().max(direct.source().hi());
                for d in lo..=hi {
                    if via.map(d).matrix() != direct.map(d).matrix() {
                        return Err(Error::InvalidSystem {
                            reason: format!(
                                "induced cone maps fail functoriality at triple ({}, {}, {})",
                                i, j, k
                            ),
                        });
                    }
                }
            }
        }
    }
    Ok(sys)
}

/// The limit of the inverse cone system over a directed poset, realized as
/// the cone of the colimit complex (which the maximum element provides).
pub fn limit_cone_complex(s: &DirectSystem, coeff: &Coefficients) -> Result<DivComplex> {
    let (colim, _) = colimit_complex(s).map_err(|_| Error::NotDirected {
        context: "limit cone complex".into(),
    })?;
    Ok(build_cone_with(&colim, &coeff.beta()))
}
