use crate::cone::{CochainComplex, Coefficients};
use crate::divlin::{homology_of_div_complex, induced_map_between, DivHomology};
use crate::error::{Error, Result};
use crate::fgab::{subquotient, FgAbGroup, FgMorphism, IntMatrix, Subgroup};
use crate::prosys::{chains, inverse_cone_system, DirectSystem, FinitePoset, MultiIndex, SimplicialComplex};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A finite inverse system of finitely generated abelian groups over a
/// poset: for λ ≤ μ a structure morphism G_μ → G_λ, compatible with
/// composition. (The arrows run downward, matching the homology systems of
/// inverse cone systems.)
pub struct GroupSystem {
    poset: FinitePoset,
    groups: Vec<FgAbGroup>,
    maps: BTreeMap<(usize, usize), FgMorphism>,
}

impl GroupSystem {
    pub fn new(
        poset: FinitePoset,
        groups: Vec<FgAbGroup>,
        maps: Vec<((usize, usize), FgMorphism)>,
    ) -> Result<Self> {
        if groups.len() != poset.len() {
            return Err(Error::InvalidSystem {
                reason: format!(
                    "a group system over {} elements got {} groups",
                    poset.len(),
                    groups.len()
                ),
            });
        }
        let mut table = BTreeMap::new();
        for ((i, j), f) in maps {
            if i == j || !poset.leq(i, j) {
                return Err(Error::InvalidSystem {
                    reason: format!("structure map over ({i}, {j}) without i < j"),
                });
            }
            if *f.source() != groups[j] || *f.target() != groups[i] {
                return Err(Error::InvalidSystem {
                    reason: format!("structure map over ({i}, {j}) has wrong endpoints"),
                });
            }
            if table.insert((i, j), f).is_some() {
                return Err(Error::InvalidSystem {
                    reason: format!("duplicate structure map over ({i}, {j})"),
                });
            }
        }
        for (i, j) in poset.strict_pairs() {
            if !table.contains_key(&(i, j)) {
                return Err(Error::InvalidSystem {
                    reason: format!("missing structure map over ({i}, {j})"),
                });
            }
        }
        let gs = GroupSystem {
            poset,
            groups,
            maps: table,
        };
        for (i, j) in gs.poset.strict_pairs() {
            for k in 0..gs.poset.len() {
                if k == j || !gs.poset.leq(j, k) {
                    continue;
                }
                let via = gs.map(j, k).then(&gs.map(i, j));
                if !via.equal_morphism(&gs.map(i, k)) {
                    return Err(Error::InvalidSystem {
                        reason: format!("structure maps over {i} ≤ {j} ≤ {k} do not compose"),
                    });
                }
            }
        }
        Ok(gs)
    }

    /// The constant system at `g` with identity structure maps.
    pub fn constant(poset: FinitePoset, g: FgAbGroup) -> Self {
        let maps = poset
            .strict_pairs()
            .into_iter()
            .map(|p| (p, FgMorphism::identity(&g)))
            .collect();
        let groups = vec![g; poset.len()];
        GroupSystem {
            poset,
            groups,
            maps,
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn group(&self, i: usize) -> &FgAbGroup {
        &self.groups[i]
    }

    /// The structure map G_j → G_i for i ≤ j; identity when i = j.
    pub fn map(&self, i: usize, j: usize) -> FgMorphism {
        assert!(self.poset.leq(i, j), "structure map requested off-relation");
        if i == j {
            FgMorphism::identity(&self.groups[i])
        } else {
            self.maps[&(i, j)].clone()
        }
    }
}

/// The limit of a group system presented as a subgroup of the direct sum:
/// the kernel of x ↦ (x_λ − p_{λμ}(x_μ)) over all strict pairs λ < μ.
pub struct LimPresentation {
    /// ⊕_λ G_λ with its generator offsets.
    pub ambient: FgAbGroup,
    pub offsets: Vec<usize>,
    /// The limit as a subgroup of the ambient sum.
    pub sub: Subgroup,
}

fn add_block(m: &mut IntMatrix, ro: usize, co: usize, block: &IntMatrix, sign: i64) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.at(r, c);
            if v.is_zero() {
                continue;
            }
            let cur = m.at(ro + r, co + c).clone();
            m.set(ro + r, co + c, cur + v * sign);
        }
    }
}

fn add_identity(m: &mut IntMatrix, ro: usize, co: usize, dim: usize, sign: i64) {
    for d in 0..dim {
        let cur = m.at(ro + d, co + d).clone();
        m.set(ro + d, co + d, cur + sign);
    }
}

pub fn lim_direct(gs: &GroupSystem) -> LimPresentation {
    let parts: Vec<&FgAbGroup> = (0..gs.poset().len()).map(|i| gs.group(i)).collect();
    let (ambient, offsets) = FgAbGroup::direct_sum(&parts);
    let pairs = gs.poset().strict_pairs();
    let tparts: Vec<&FgAbGroup> = pairs.iter().map(|&(i, _)| gs.group(i)).collect();
    let (target, toff) = FgAbGroup::direct_sum(&tparts);
    let mut m = IntMatrix::zeros(target.ngens(), ambient.ngens());
    for (p, &(i, j)) in pairs.iter().enumerate() {
        add_identity(&mut m, toff[p], offsets[i], gs.group(i).ngens(), 1);
        add_block(&mut m, toff[p], offsets[j], gs.map(i, j).matrix(), -1);
    }
    let phi = FgMorphism::new(ambient.clone(), target, m)
        .expect("the difference map is well-defined");
    LimPresentation {
        ambient,
        offsets,
        sub: phi.kernel(),
    }
}

/// The normalized nerve complex of a group system: degree-s cochains are
/// ⊕ G_{λ₀} over strict chains λ₀ < … < λ_s, with
/// (δx)(𝝀) = p_{λ₀λ₁}(x(d⁰𝝀)) + Σ_{j≥1} (−1)ʲ x(dʲ𝝀).
/// Its cohomology computes the derived limits of the system.
pub struct NerveComplex {
    pub groups: Vec<FgAbGroup>,
    pub chain_sets: Vec<Vec<MultiIndex>>,
    pub offsets: Vec<Vec<usize>>,
    /// deltas[s]: groups[s] → groups[s+1]; the last one lands in 0.
    pub deltas: Vec<FgMorphism>,
}

pub fn nerve_complex(gs: &GroupSystem) -> NerveComplex {
    let poset = gs.poset();
    let s_max = if poset.is_empty() { 0 } else { poset.height() };
    let mut chain_sets = Vec::new();
    let mut offsets_all = Vec::new();
    let mut groups = Vec::new();
    for s in 0..=s_max {
        let cs = chains(poset, s, true);
        let parts: Vec<&FgAbGroup> = cs.iter().map(|c| gs.group(c.lambda0())).collect();
        let (g, off) = FgAbGroup::direct_sum(&parts);
        chain_sets.push(cs);
        offsets_all.push(off);
        groups.push(g);
    }
    let trivial = FgAbGroup::trivial();
    let mut deltas: Vec<FgMorphism> = Vec::new();
    for s in 0..=s_max {
        let target = if s + 1 <= s_max { &groups[s + 1] } else { &trivial };
        let mut m = IntMatrix::zeros(target.ngens(), groups[s].ngens());
        if s + 1 <= s_max {
            let pos: BTreeMap<&MultiIndex, usize> = chain_sets[s]
                .iter()
                .enumerate()
                .map(|(q, c)| (c, q))
                .collect();
            for (t, mu) in chain_sets[s + 1].iter().enumerate() {
                let ro = offsets_all[s + 1][t];
                for j in 0..=s + 1 {
                    let face = mu.face(j);
                    let co = offsets_all[s][pos[&face]];
                    if j == 0 {
                        add_block(&mut m, ro, co, gs.map(mu.lambda0(), mu.lambda(1)).matrix(), 1);
                    } else {
                        let sign = if j % 2 == 1 { -1 } else { 1 };
                        add_identity(&mut m, ro, co, gs.group(mu.lambda0()).ngens(), sign);
                    }
                }
            }
        }
        let delta = FgMorphism::new(groups[s].clone(), target.clone(), m)
            .expect("the nerve differential is well-defined");
        if let Some(prev) = deltas.last() {
            debug_assert!(prev.then(&delta).is_zero(), "nerve differential squares");
        }
        deltas.push(delta);
    }
    NerveComplex {
        groups,
        chain_sets,
        offsets: offsets_all,
        deltas,
    }
}

/// The i-th derived limit limⁱ of the system, as cohomology of the nerve.
pub fn lim_i(gs: &GroupSystem, i: usize) -> FgAbGroup {
    let nerve = nerve_complex(gs);
    if i >= nerve.deltas.len() {
        return FgAbGroup::trivial();
    }
    let z = nerve.deltas[i].kernel();
    let b = if i == 0 {
        Subgroup::zero(nerve.groups[0].clone())
    } else {
        nerve.deltas[i - 1].image()
    };
    subquotient(&z, &b)
}

/// The order complex of the poset: simplices are the strict chains.
pub fn order_complex(poset: &FinitePoset) -> SimplicialComplex {
    if poset.is_empty() {
        return SimplicialComplex::empty();
    }
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for s in 0..=poset.height() {
        for c in chains(poset, s, true) {
            facets.push(c.entries().to_vec());
        }
    }
    SimplicialComplex::from_facets(&facets).expect("chains are valid simplices")
}

/// Hⁿ(C*; G) for an integral cochain complex: each free cochain group is
/// replaced by a sum of copies of G, the differential acts through its
/// integer entries, and the cohomology is taken exactly.
pub fn cohomology_with_coefficients(c: &CochainComplex, g: &FgAbGroup, n: i64) -> FgAbGroup {
    if n < 0 || n > c.top() {
        return FgAbGroup::trivial();
    }
    let group_at = |m: i64| -> FgAbGroup {
        let parts: Vec<&FgAbGroup> = (0..c.rank(m)).map(|_| g).collect();
        FgAbGroup::direct_sum(&parts).0
    };
    let delta_at = |m: i64| -> FgMorphism {
        let src = group_at(m);
        let tgt = group_at(m + 1);
        let d = c.diff(m);
        let gn = g.ngens();
        let mut mat = IntMatrix::zeros(tgt.ngens(), src.ngens());
        for i in 0..d.rows() {
            for col in 0..d.cols() {
                let v = d.at(i, col);
                if v.is_zero() {
                    continue;
                }
                for a in 0..gn {
                    mat.set(i * gn + a, col * gn + a, v.clone());
                }
            }
        }
        FgMorphism::new(src, tgt, mat).expect("scalar blocks act on any coefficient group")
    };
    let z = delta_at(n).kernel();
    let b = if n == 0 {
        Subgroup::zero(group_at(0))
    } else {
        delta_at(n - 1).image()
    };
    subquotient(&z, &b)
}

/// The inverse system of cone homologies of a direct system at a fixed
/// degree, with the induced structure maps, plus the homology data itself
/// (whose lifts identify classes in each cone). System construction
/// re-validates functoriality of the induced maps.
pub fn cone_homology_system(
    s: &DirectSystem,
    coeff: &Coefficients,
    n: i64,
) -> Result<(GroupSystem, Vec<DivHomology>)> {
    let cs = inverse_cone_system(s, coeff)?;
    let len = s.poset().len();
    let homs: Vec<DivHomology> = (0..len)
        .map(|i| homology_of_div_complex(cs.cone(i), n))
        .collect::<Result<_>>()?;
    let mut maps = Vec::new();
    for (i, j) in s.poset().strict_pairs() {
        let f = induced_map_between(&cs.bonding(i, j), n, &homs[j], &homs[i])?;
        maps.push(((i, j), f));
    }
    let groups: Vec<FgAbGroup> = homs.iter().map(|h| h.group().clone()).collect();
    let gs = GroupSystem::new(s.poset().clone(), groups, maps)?;
    Ok((gs, homs))
}
