use crate::cone::Coefficients;
use crate::divlin::{
    homology_of_div_complex, DivChainMap, DivComplex, DivGroup, DivHomology, DivMorphism, QMatrix,
};
use crate::error::{Error, Result};
use crate::prosys::{
    chains, inverse_cone_system, limit_cone_complex, validate_system, ConeSystem, DirectSystem,
    MultiIndex,
};
use num_traits::Zero;
use std::collections::BTreeMap;

/// One block of the total complex: the height s and the chain 𝝀. At total
/// degree n the block carries Cone(C_{λ₀})_{n+s}.
pub type Block = (usize, MultiIndex);

/// The assembled total complex of a direct system, truncated at height r
/// (and restricted to strictly increasing chains when normalized), together
/// with the per-degree block decomposition.
pub struct TruncatedTotal {
    r: usize,
    normalized: bool,
    blocks: Vec<Block>,
    positions: BTreeMap<Block, usize>,
    complex: DivComplex,
    injections: BTreeMap<i64, Vec<DivMorphism>>,
    projections: BTreeMap<i64, Vec<DivMorphism>>,
    cone_system: ConeSystem,
}

impl TruncatedTotal {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// The blocks, ordered by height and then lexicographically by chain.
    /// The same index set serves every degree.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Largest height that actually appears among the blocks (the bound r,
    /// capped at the poset height when normalized).
    pub fn height_cap(&self) -> usize {
        self.blocks.iter().map(|(s, _)| *s).max().unwrap_or(0)
    }

    pub fn complex(&self) -> &DivComplex {
        &self.complex
    }

    pub fn cone_system(&self) -> &ConeSystem {
        &self.cone_system
    }

    pub fn block_index(&self, s: usize, chain: &MultiIndex) -> Option<usize> {
        self.positions.get(&(s, chain.clone())).copied()
    }

    /// Inclusion of one block's degree-n component into the total group.
    pub fn injection(&self, n: i64, block: usize) -> DivMorphism {
        match self.injections.get(&n) {
            Some(v) => v[block].clone(),
            None => DivMorphism::zero_map(DivGroup::trivial(), self.complex.group(n)),
        }
    }

    /// Projection of the total group onto one block's degree-n component.
    pub fn projection(&self, n: i64, block: usize) -> DivMorphism {
        match self.projections.get(&n) {
            Some(v) => v[block].clone(),
            None => DivMorphism::zero_map(self.complex.group(n), DivGroup::trivial()),
        }
    }
}

/// Row index of each local coordinate of a block inside the direct sum,
/// read off the (unit-entry) injection matrix.
fn injection_offsets(inj: &DivMorphism) -> Vec<usize> {
    let m = inj.matrix();
    (0..m.cols())
        .map(|c| {
            (0..m.rows())
                .find(|&r| !m.at(r, c).is_zero())
                .expect("injection columns are unit vectors")
        })
        .collect()
}

/// Add (or subtract) a small block into the assembled matrix at the given
/// row/column offsets.
fn accumulate(m: &mut QMatrix, rows: &[usize], cols: &[usize], small: &QMatrix, negate: bool) {
    for i in 0..small.rows() {
        for j in 0..small.cols() {
            let v = small.at(i, j);
            if v.is_zero() {
                continue;
            }
            let cur = m.at(rows[i], cols[j]).clone();
            m.set(rows[i], cols[j], if negate { cur - v } else { cur + v });
        }
    }
}

fn accumulate_identity(m: &mut QMatrix, rows: &[usize], cols: &[usize], dim: usize, negate: bool) {
    let one = QMatrix::identity(dim);
    accumulate(m, rows, cols, &one, negate);
}

/// Assemble the height-≤r total complex of the system with the given
/// coefficients. The system is validated (composition law included) and the
/// inverse cone system is rebuilt from scratch, so every bonding entering
/// the δ-part has already passed the contravariant functoriality check.
pub fn build_total(
    s: &DirectSystem,
    coeff: &Coefficients,
    r: usize,
    normalized: bool,
) -> Result<TruncatedTotal> {
    let report = validate_system(s);
    if !report.is_valid() {
        return Err(Error::InvalidSystem {
            reason: report.violations[0].clone(),
        });
    }
    let cone_system = inverse_cone_system(s, coeff)?;
    let poset = s.poset().clone();
    if poset.is_empty() {
        return Ok(TruncatedTotal {
            r,
            normalized,
            blocks: vec![],
            positions: BTreeMap::new(),
            complex: DivComplex::concentrated(0, DivGroup::trivial()),
            injections: BTreeMap::new(),
            projections: BTreeMap::new(),
            cone_system,
        });
    }

    let s_max = if normalized {
        r.min(poset.height())
    } else {
        r
    };
    let mut blocks: Vec<Block> = Vec::new();
    for height in 0..=s_max {
        for chain in chains(&poset, height, normalized) {
            blocks.push((height, chain));
        }
    }
    let positions: BTreeMap<Block, usize> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();

    let lo = -1 - s_max as i64;
    let hi = (0..poset.len())
        .map(|i| s.complex(i).top())
        .max()
        .expect("nonempty poset");

    let mut groups = Vec::new();
    let mut injections = BTreeMap::new();
    let mut projections = BTreeMap::new();
    let mut offsets: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    for n in lo..=hi {
        let parts: Vec<DivGroup> = blocks
            .iter()
            .map(|(h, ch)| cone_system.cone(ch.lambda0()).group(n + *h as i64))
            .collect();
        let (total, injs, projs) = DivGroup::direct_sum(&parts);
        offsets.insert(n, injs.iter().map(injection_offsets).collect());
        injections.insert(n, injs);
        projections.insert(n, projs);
        groups.push(total);
    }

    let mut boundaries = Vec::new();
    for n in (lo + 1)..=hi {
        let src = groups[(n - lo) as usize];
        let tgt = groups[(n - 1 - lo) as usize];
        let mut m = QMatrix::zeros(tgt.dim(), src.dim());
        let row_off = &offsets[&(n - 1)];
        let col_off = &offsets[&n];
        let degree_sign_negative = n.rem_euclid(2) == 1;
        for (bt, (height, lam)) in blocks.iter().enumerate() {
            let cone = cone_system.cone(lam.lambda0());
            // Diagonal block: the cone boundary ∂ of Cone(C_{λ₀}).
            let del = cone.boundary(n + *height as i64);
            accumulate(&mut m, &row_off[bt], &col_off[bt], del.matrix(), false);
            // Off-diagonal δ-part: faces of 𝝀 feed height s−1 into height s.
            if *height == 0 {
                continue;
            }
            for j in 0..=*height {
                let face = lam.face(j);
                let bs = positions[&(*height - 1, face)];
                let negate = degree_sign_negative ^ (j % 2 == 1);
                if j == 0 {
                    let bond = cone_system.bonding(lam.lambda0(), lam.lambda(1));
                    let comp = bond.map(n - 1 + *height as i64);
                    accumulate(&mut m, &row_off[bt], &col_off[bs], comp.matrix(), negate);
                } else {
                    let dim = cone.group(n - 1 + *height as i64).dim();
                    accumulate_identity(&mut m, &row_off[bt], &col_off[bs], dim, negate);
                }
            }
        }
        boundaries
            .push(DivMorphism::new(src, tgt, m).expect("total boundary preserves the lattices"));
    }

    let complex = DivComplex::new(lo, groups, boundaries).expect("total boundary squares to zero");
    Ok(TruncatedTotal {
        r,
        normalized,
        blocks,
        positions,
        complex,
        injections,
        projections,
        cone_system,
    })
}

/// Homology of the truncated total complex in degree n.
pub fn total_homology(t: &TruncatedTotal, n: i64) -> Result<DivHomology> {
    homology_of_div_complex(t.complex(), n)
}

/// Blocks of `from` restricted to the heights present in `to`, which is the
/// exact block list a truncation target must carry.
fn truncated_blocks(from: &TruncatedTotal, cap: usize) -> Vec<Block> {
    from.blocks
        .iter()
        .filter(|(s, _)| *s <= cap)
        .cloned()
        .collect()
}

/// Shared-block placement map, checking along the way that the two totals
/// were built from the same system (block-for-block equal component groups).
fn matched_placements(
    from: &TruncatedTotal,
    to: &TruncatedTotal,
    context: &str,
) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for (i_to, block) in to.blocks.iter().enumerate() {
        let i_from = match from.positions.get(block) {
            Some(&i) => i,
            None => {
                return Err(Error::InvalidInstance {
                    reason: format!("{context}: the source total lacks block {block:?}"),
                })
            }
        };
        let (h, ch) = block;
        let lo = from.complex.lo().min(to.complex.lo());
        let hi = from.complex.hi().max(to.complex.hi());
        for n in lo..=hi {
            let a = from.cone_system.cone(ch.lambda0()).group(n + *h as i64);
            let b = to.cone_system.cone(ch.lambda0()).group(n + *h as i64);
            if a != b {
                return Err(Error::InvalidInstance {
                    reason: format!(
                        "{context}: block {block:?} carries {a} on one side and {b} on the other — different builds"
                    ),
                });
            }
        }
        pairs.push((i_from, i_to));
    }
    Ok(pairs)
}

/// Place identities on the shared blocks of two totals and wrap the result
/// as a chain map; used by both the truncation and the normalized inclusion.
fn block_identity_map(
    from: &TruncatedTotal,
    to: &TruncatedTotal,
    pairs: &[(usize, usize)],
) -> Result<DivChainMap> {
    let mut maps = BTreeMap::new();
    let lo = from.complex.lo().min(to.complex.lo());
    let hi = from.complex.hi().max(to.complex.hi());
    for n in lo..=hi {
        let src = from.complex.group(n);
        let tgt = to.complex.group(n);
        let mut m = QMatrix::zeros(tgt.dim(), src.dim());
        for &(i_from, i_to) in pairs {
            let inj = from.injection(n, i_from);
            let dim = inj.source().dim();
            if dim == 0 {
                continue;
            }
            let rows = injection_offsets(&to.injection(n, i_to));
            let cols = injection_offsets(&inj);
            accumulate_identity(&mut m, &rows, &cols, dim, false);
        }
        maps.insert(
            n,
            DivMorphism::new(src, tgt, m).expect("block projection preserves the lattices"),
        );
    }
    DivChainMap::new(from.complex.clone(), to.complex.clone(), maps)
}

/// The truncation chain map T(r) → T(r′), r′ ≤ r, dropping every block of
/// height above the target's cap. Both totals must come from the same
/// system, coefficients and normalization; mismatched builds are rejected.
pub fn truncation_map(from: &TruncatedTotal, to: &TruncatedTotal) -> Result<DivChainMap> {
    if from.normalized != to.normalized {
        return Err(Error::InvalidInstance {
            reason: "truncation requires matching normalization".into(),
        });
    }
    if to.height_cap() > from.height_cap() {
        return Err(Error::InvalidInstance {
            reason: "truncation must lower the height bound".into(),
        });
    }
    if to.blocks != truncated_blocks(from, to.height_cap()) {
        return Err(Error::InvalidInstance {
            reason: "the two totals do not share a block structure — different builds".into(),
        });
    }
    let pairs = matched_placements(from, to, "truncation")?;
    block_identity_map(from, to, &pairs)
}

/// The inclusion of the normalized total into the unnormalized one at the
/// same height bound: identity on nondegenerate blocks, zero elsewhere.
/// This is a chain map because the two faces dropping a repeated entry of a
/// degenerate chain cancel (for a repeat in position 0 the d⁰ bonding is
/// p^{λλ} = id), and construction re-verifies that cancellation exactly.
pub fn normalized_inclusion(
    norm: &TruncatedTotal,
    unnorm: &TruncatedTotal,
) -> Result<DivChainMap> {
    if !norm.normalized || unnorm.normalized {
        return Err(Error::InvalidInstance {
            reason: "normalized_inclusion goes from a normalized total into an unnormalized one"
                .into(),
        });
    }
    if norm.r != unnorm.r {
        return Err(Error::InvalidInstance {
            reason: "normalized_inclusion requires equal height bounds".into(),
        });
    }
    let pairs = matched_placements(unnorm, norm, "normalized inclusion")?
        .into_iter()
        .map(|(i_un, i_no)| (i_no, i_un))
        .collect::<Vec<_>>();
    block_identity_map(norm, unnorm, &pairs)
}

/// The height-zero comparison chain map h: lim Cone(C_λ) → T(𝐂*): a limit
/// chain is sent to the tuple of its images under the cone bondings out of
/// the maximum, placed in the height-0 blocks, with zeros in heights ≥ 1.
/// The δ-part vanishes on such coherent families by functoriality of the
/// bondings, so h is a chain map — re-verified exactly by construction.
pub fn h_chain_map(s: &DirectSystem, coeff: &Coefficients) -> Result<DivChainMap> {
    let height = if s.poset().is_empty() {
        0
    } else {
        s.poset().height()
    };
    let t = build_total(s, coeff, height, true)?;
    h_chain_map_into(s, coeff, &t)
}

/// As `h_chain_map`, but targeting a total complex the caller already
/// built (it must be normalized with the full height available).
pub fn h_chain_map_into(
    s: &DirectSystem,
    coeff: &Coefficients,
    total: &TruncatedTotal,
) -> Result<DivChainMap> {
    let source = limit_cone_complex(s, coeff)?;
    let max = s
        .poset()
        .maximum()
        .expect("a directed finite poset has a maximum");
    let mut maps = BTreeMap::new();
    for n in source.lo()..=source.hi() {
        let mut acc = DivMorphism::zero_map(source.group(n), total.complex().group(n));
        for (b, (height, ch)) in total.blocks().iter().enumerate() {
            if *height != 0 {
                continue;
            }
            let bond = total.cone_system().bonding(ch.lambda0(), max);
            acc = acc.add(&bond.map(n).then(&total.injection(n, b)));
        }
        maps.insert(n, acc);
    }
    Ok(DivChainMap::new(source, total.complex().clone(), maps)
        .expect("the height-zero inclusion commutes with the total boundary"))
}
