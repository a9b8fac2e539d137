use super::build::{
    build_total, normalized_inclusion, total_homology, truncation_map, TruncatedTotal,
};
use crate::cone::Coefficients;
use crate::divlin::{induced_map_between, DivChainMap, DivHomology};
use crate::error::Result;
use crate::fgab::{FgAbGroup, FgMorphism, IntMatrix, Subgroup};
use crate::limits::{cone_homology_system, lim_direct, LimPresentation};
use crate::prosys::DirectSystem;
use num_bigint::BigInt;

/// The height-r homology H̄⁽ʳ⁾ₙ: the image of H(T(r+1)) inside H(T(r))
/// under the truncation, kept both as a subgroup of the ambient homology
/// (with its generator lifts) and as an abstract group.
pub struct HeightHomology {
    pub r: usize,
    pub degree: i64,
    /// Homology of T(r), with lifts into the total complex.
    pub ambient: DivHomology,
    /// H̄⁽ʳ⁾ₙ as a subgroup of `ambient.group()`.
    pub subgroup: Subgroup,
    /// The subgroup as an abstract group.
    pub group: FgAbGroup,
}

/// The inverse tower H̄⁽⁰⁾ₙ ← H̄⁽¹⁾ₙ ← … ← H̄⁽ᴿ⁾ₙ with its connecting
/// morphisms and the observed stabilization index.
pub struct HeightTower {
    pub degree: i64,
    pub normalized: bool,
    /// Directedness of the index poset; the tower is computed either way,
    /// but the isomorphism statements only apply in the directed case.
    pub in_theorem_scope: bool,
    /// Entries for r = 0..=R.
    pub entries: Vec<HeightHomology>,
    /// maps[k]: H̄⁽ᵏ⁺¹⁾ → H̄⁽ᵏ⁾ (restriction of the truncation).
    pub maps: Vec<FgMorphism>,
    /// Smallest r₀ such that every connecting map above r₀ is an
    /// isomorphism within the computed range.
    pub stabilization: Option<usize>,
}

fn gen_column(sub: &Subgroup, j: usize) -> Vec<BigInt> {
    (0..sub.gens().rows())
        .map(|i| sub.gens().at(i, j).clone())
        .collect()
}

/// Express the restriction of `ambient_map` to `src` as a morphism into
/// `tgt`; the image is required to land in `tgt` (a factorization witness
/// the caller must justify).
fn restrict_between(
    src: &Subgroup,
    tgt: &Subgroup,
    ambient_map: &FgMorphism,
    context: &str,
) -> Result<FgMorphism> {
    let mut cols = Vec::with_capacity(src.gens().cols());
    for j in 0..src.gens().cols() {
        let image = ambient_map.apply(&gen_column(src, j));
        let c = tgt
            .coords(&image)
            .unwrap_or_else(|| panic!("{context}: the image escapes the target subgroup"));
        cols.push(c);
    }
    let matrix = IntMatrix::from_cols(tgt.gens().cols(), &cols);
    FgMorphism::new(src.group().clone(), tgt.group().clone(), matrix)
}

/// H̄⁽ʳ⁾ₙ of the system: image of the induced truncation map on homology.
pub fn height_homology(
    s: &DirectSystem,
    coeff: &Coefficients,
    r: usize,
    n: i64,
    normalized: bool,
) -> Result<HeightHomology> {
    let upper = build_total(s, coeff, r + 1, normalized)?;
    let lower = build_total(s, coeff, r, normalized)?;
    let pi = truncation_map(&upper, &lower)?;
    let h_up = total_homology(&upper, n)?;
    let h_lo = total_homology(&lower, n)?;
    let induced = induced_map_between(&pi, n, &h_up, &h_lo)?;
    let subgroup = induced.image();
    let group = subgroup.group().clone();
    Ok(HeightHomology {
        r,
        degree: n,
        ambient: h_lo,
        subgroup,
        group,
    })
}

/// The tower of height homologies up to R with its connecting morphisms.
/// Totals up to height R+1 are built once and shared.
pub fn height_tower(
    s: &DirectSystem,
    coeff: &Coefficients,
    n: i64,
    big_r: usize,
    normalized: bool,
) -> Result<HeightTower> {
    let totals: Vec<TruncatedTotal> = (0..=big_r + 1)
        .map(|r| build_total(s, coeff, r, normalized))
        .collect::<Result<_>>()?;
    let homs: Vec<DivHomology> = totals
        .iter()
        .map(|t| total_homology(t, n))
        .collect::<Result<_>>()?;
    // induced[k]: H(T(k+1)) → H(T(k)).
    let mut induced = Vec::with_capacity(big_r + 1);
    for k in 0..=big_r {
        let pi = truncation_map(&totals[k + 1], &totals[k])?;
        induced.push(induced_map_between(&pi, n, &homs[k + 1], &homs[k])?);
    }
    let subgroups: Vec<Subgroup> = induced.iter().map(|f| f.image()).collect();
    // π̄(r): H̄(r) → H̄(r−1) is the truncation restricted to the images;
    // it lands there because the composite of truncations is a truncation.
    let mut maps = Vec::with_capacity(big_r);
    for r in 1..=big_r {
        maps.push(restrict_between(
            &subgroups[r],
            &subgroups[r - 1],
            &induced[r - 1],
            "height tower",
        )?);
    }
    let mut r0 = big_r;
    while r0 > 0 && maps[r0 - 1].is_isomorphism() {
        r0 -= 1;
    }
    let entries = homs
        .into_iter()
        .take(big_r + 1)
        .zip(subgroups)
        .enumerate()
        .map(|(r, (ambient, subgroup))| {
            let group = subgroup.group().clone();
            HeightHomology {
                r,
                degree: n,
                ambient,
                subgroup,
                group,
            }
        })
        .collect();
    Ok(HeightTower {
        degree: n,
        normalized,
        in_theorem_scope: s.poset().is_directed(),
        entries,
        maps,
        stabilization: Some(r0),
    })
}

/// The full normalized total complex: height capped at the poset height,
/// strictly increasing chains only. Its homology is H̄∞.
pub fn infinity_total(s: &DirectSystem, coeff: &Coefficients) -> Result<TruncatedTotal> {
    let height = if s.poset().is_empty() {
        0
    } else {
        s.poset().height()
    };
    build_total(s, coeff, height, true)
}

/// H̄∞ₙ with its lifts.
pub fn infinity_homology(s: &DirectSystem, coeff: &Coefficients, n: i64) -> Result<DivHomology> {
    total_homology(&infinity_total(s, coeff)?, n)
}

/// The comparison π̄⁽ʳ⁾∞: H̄∞ₙ → H̄⁽ʳ⁾ₙ. For a normalized tower this is the
/// truncation of the full normalized complex; for an unnormalized tower the
/// truncation is followed by the inclusion of the normalized complex into
/// the unnormalized one. Either way the chain map factors through T(r+1),
/// so its homology image lands in the height-r subgroup.
pub fn pi_infinity(
    s: &DirectSystem,
    coeff: &Coefficients,
    r: usize,
    n: i64,
    normalized: bool,
) -> Result<FgMorphism> {
    let full = infinity_total(s, coeff)?;
    let h_full = total_homology(&full, n)?;
    let hh = height_homology(s, coeff, r, n, normalized)?;
    let chain: DivChainMap = if normalized {
        let t_r = build_total(s, coeff, r, true)?;
        truncation_map(&full, &t_r)?
    } else {
        let t_nr = build_total(s, coeff, r, true)?;
        let t_ur = build_total(s, coeff, r, false)?;
        truncation_map(&full, &t_nr)?.then(&normalized_inclusion(&t_nr, &t_ur)?)?
    };
    let on_ambient = induced_map_between(&chain, n, &h_full, &hh.ambient)?;
    let full_sub = Subgroup::full(h_full.group().clone());
    restrict_between(&full_sub, &hh.subgroup, &on_ambient, "pi_infinity")
}

/// The projection of H̄∞ₙ onto the inverse limit of the element homologies
/// Hₙ(Cone(C_λ)): each homology generator's lift has its height-0 block
/// components classified elementwise, and the resulting coherent family is
/// re-expressed in the limit presentation. Morphism construction checks
/// well-definedness (relations map to zero).
pub struct ProjectionToLim {
    pub map: FgMorphism,
    pub source: DivHomology,
    pub lim: LimPresentation,
    pub element_homologies: Vec<DivHomology>,
}

pub fn projection_to_lim(
    s: &DirectSystem,
    coeff: &Coefficients,
    n: i64,
) -> Result<ProjectionToLim> {
    let total = infinity_total(s, coeff)?;
    let h_inf = total_homology(&total, n)?;
    let (gs, element_homologies) = cone_homology_system(s, coeff, n)?;
    let lim = lim_direct(&gs);
    let elements = s.poset().len();
    let mut cols = Vec::with_capacity(h_inf.group().ngens());
    for j in 0..h_inf.group().ngens() {
        let lift = h_inf.lift(j);
        // Ambient tuple of per-element homology classes at height 0.
        let mut tuple = vec![BigInt::from(0); lim.ambient.ngens()];
        for lambda in 0..elements {
            let block = total
                .block_index(0, &crate::prosys::MultiIndex::new(s.poset(), vec![lambda])?)
                .expect("height-0 blocks exist for every element");
            let proj = total.projection(n, block);
            let component = proj.matrix().mul_vec(&lift);
            let class = element_homologies[lambda].coords(&component)?;
            for (g, v) in class.into_iter().enumerate() {
                tuple[lim.offsets[lambda] + g] = v;
            }
        }
        let c = lim
            .sub
            .coords(&tuple)
            .expect("height-0 components of a cycle form a coherent family");
        cols.push(c);
    }
    let matrix = IntMatrix::from_cols(lim.sub.gens().cols(), &cols);
    let map = FgMorphism::new(
        h_inf.group().clone(),
        lim.sub.group().clone(),
        matrix,
    )?;
    Ok(ProjectionToLim {
        map,
        source: h_inf,
        lim,
        element_homologies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{cone_homology, CochainComplex, CochainMap, Coefficients};
    use crate::fgab::FgAbGroup;
    use crate::prosys::FinitePoset;
    use crate::fgab::IntMatrix;

    fn point() -> CochainComplex {
        CochainComplex::concentrated(1)
    }

    fn rp2() -> CochainComplex {
        CochainComplex::new(
            vec![1, 1, 1],
            vec![
                IntMatrix::from_i64(1, 1, &[0]),
                IntMatrix::from_i64(1, 1, &[2]),
            ],
        )
        .unwrap()
    }

    fn z() -> Coefficients {
        Coefficients::of_group(&FgAbGroup::free(1)).unwrap()
    }

    fn z2() -> Coefficients {
        Coefficients::of_group(&FgAbGroup::cyclic(2)).unwrap()
    }

    fn chain_point_system() -> DirectSystem {
        let bond = CochainMap::identity(&point());
        DirectSystem::new(
            FinitePoset::chain(2),
            vec![point(), point()],
            vec![((0, 1), bond)],
        )
        .unwrap()
    }

    fn wedge_rp2_system() -> DirectSystem {
        let poset = FinitePoset::new(3, &[(0, 2), (1, 2)]).unwrap();
        let include = CochainMap::new(
            point(),
            rp2(),
            vec![
                IntMatrix::from_i64(1, 1, &[1]),
                IntMatrix::zeros(1, 0),
                IntMatrix::zeros(1, 0),
            ],
        )
        .unwrap();
        DirectSystem::new(
            poset,
            vec![point(), point(), rp2()],
            vec![((0, 2), include.clone()), ((1, 2), include)],
        )
        .unwrap()
    }

    #[test]
    fn one_element_rp2_tower_is_constant() {
        let s = DirectSystem::constant(FinitePoset::singleton(), rp2());
        let z2g = FgAbGroup::cyclic(2);
        for n in 0..=2 {
            for normalized in [true, false] {
                let tower = height_tower(&s, &z2(), n, 3, normalized).unwrap();
                assert!(tower.in_theorem_scope);
                for e in &tower.entries {
                    assert!(e.group.is_isomorphic(&z2g), "degree {n}: {}", e.group);
                }
                for m in &tower.maps {
                    assert!(m.is_isomorphism());
                }
                assert_eq!(tower.stabilization, Some(0));
            }
            let inf = infinity_homology(&s, &z2(), n).unwrap();
            assert!(inf.group().is_isomorphic(&z2g));
        }
    }

    #[test]
    fn chain_point_tower_is_constant_z() {
        let s = chain_point_system();
        let zg = FgAbGroup::free(1);
        let tower = height_tower(&s, &z(), 0, 2, true).unwrap();
        for e in &tower.entries {
            assert!(e.group.is_isomorphic(&zg));
        }
        assert_eq!(tower.stabilization, Some(0));
        let inf = infinity_homology(&s, &z(), 0).unwrap();
        assert!(inf.group().is_isomorphic(&zg));
        // Height homology at r = 0, n = 0 directly.
        let hh = height_homology(&s, &z(), 0, 0, true).unwrap();
        assert!(hh.group.is_isomorphic(&zg));
    }

    #[test]
    fn one_element_height_homology_equals_cone_homology_at_every_height() {
        let s = DirectSystem::constant(FinitePoset::singleton(), rp2());
        for n in 0..=2 {
            let expected = cone_homology(&rp2(), &FgAbGroup::cyclic(2), n).unwrap();
            for r in 0..=2 {
                for normalized in [true, false] {
                    let hh = height_homology(&s, &z2(), r, n, normalized).unwrap();
                    assert!(
                        hh.group.is_isomorphic(&expected),
                        "r={r} n={n} normalized={normalized}: {} vs {}",
                        hh.group,
                        expected
                    );
                }
            }
        }
    }

    #[test]
    fn height_homology_stabilizes_past_the_poset_height() {
        let s = wedge_rp2_system();
        for n in 0..=2 {
            let at_height = height_homology(&s, &z2(), 1, n, true).unwrap();
            let beyond = height_homology(&s, &z2(), 3, n, true).unwrap();
            assert!(at_height.group.is_isomorphic(&beyond.group));
        }
    }

    #[test]
    fn infinity_homology_matches_the_maximum_cone_on_directed_systems() {
        let s = wedge_rp2_system();
        for n in 0..=2 {
            let inf = infinity_homology(&s, &z2(), n).unwrap();
            let expected = cone_homology(&rp2(), &FgAbGroup::cyclic(2), n).unwrap();
            assert!(inf.group().is_isomorphic(&expected));
        }
    }

    #[test]
    fn pi_infinity_is_an_isomorphism_on_directed_systems() {
        let s = wedge_rp2_system();
        let coeff = Coefficients::of_group(&FgAbGroup::new(
            2,
            IntMatrix::from_i64(2, 1, &[0, 4]),
        ))
        .unwrap();
        for n in 1..=2 {
            for r in 0..=2 {
                for normalized in [true, false] {
                    let f = pi_infinity(&s, &coeff, r, n, normalized).unwrap();
                    assert!(
                        f.is_isomorphism(),
                        "r={r} n={n} normalized={normalized} not iso"
                    );
                }
            }
        }
    }

    #[test]
    fn non_directed_tower_is_flagged_out_of_scope() {
        let s = DirectSystem::constant(FinitePoset::pseudo_circle(), point());
        let tower = height_tower(&s, &z(), 0, 2, true).unwrap();
        assert!(!tower.in_theorem_scope);
    }

    #[test]
    fn projection_to_lim_on_one_element_and_chain_systems() {
        let s1 = DirectSystem::constant(FinitePoset::singleton(), rp2());
        for n in 0..=2 {
            let p = projection_to_lim(&s1, &z2(), n).unwrap();
            assert!(p.map.is_isomorphism());
        }
        let s2 = chain_point_system();
        let p = projection_to_lim(&s2, &z(), 0).unwrap();
        assert!(p.map.is_isomorphism());
        assert!(p.map.source().is_isomorphic(&FgAbGroup::free(1)));
        assert!(p.map.target().is_isomorphic(&FgAbGroup::free(1)));
    }

    #[test]
    fn projection_to_lim_on_the_wedge_with_rational_circle_coefficients() {
        let s = wedge_rp2_system();
        let coeff = Coefficients::rational_circle();
        for n in 1..=2 {
            let p = projection_to_lim(&s, &coeff, n).unwrap();
            assert!(
                p.map.is_isomorphism(),
                "degree {n}: {} -> {}",
                p.map.source(),
                p.map.target()
            );
        }
        let p2 = projection_to_lim(&s, &coeff, 2).unwrap();
        assert!(p2.map.source().is_isomorphic(&FgAbGroup::cyclic(2)));
        // Dualizing kills nothing in degree 0: Hom(Z, Q/Z) = Q/Z is not
        // finitely generated, and the engine refuses rather than truncates.
        assert!(projection_to_lim(&s, &coeff, 0).is_err());
    }
}
