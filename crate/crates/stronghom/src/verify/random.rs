//! Seeded generators for the statement-level test suites.
//!
//! Everything here is driven by a caller-supplied RNG (the suites use
//! `ChaCha8Rng::seed_from_u64` with recorded seeds), and every instance is
//! validated by the same constructors user input goes through, so a generated
//! instance is never structurally special-cased.
//!
//! Size bounds are deliberate: posets stay at ≤ 5 elements, complexes at
//! ≤ 4 nonzero degrees with per-degree ranks ≤ 3, and directly drawn matrix
//! entries in [−4, 4]. Bonding maps along composite order relations are
//! path compositions of the drawn edge maps, so their entries can exceed the
//! raw bound; that is intentional (functoriality is by construction, the
//! entry bound applies to what is drawn).

use crate::cone::{CochainComplex, CochainMap};
use crate::fgab::IntMatrix;
use crate::prosys::{DirectSystem, FinitePoset};
use num_bigint::BigInt;
use rand::Rng;

/// Random integer matrix with entries uniform in `[-bound, bound]`.
pub fn random_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Elementary building blocks of a random complex: a free generator in one
/// degree, or a two-term piece ℤ --m--> ℤ across adjacent degrees (m = 0
/// contributes two free classes, m = 1 is contractible, m ≥ 2 contributes
/// ℤ/m in the upper degree).
enum Piece {
    Free { degree: usize },
    TwoTerm { degree: usize, mult: i64 },
}

/// Random cochain complex in degrees `0..=top` with `top ≤ max_top` and all
/// ranks ≤ `max_rank`. Assembled from elementary pieces (so δ² = 0 holds
/// structurally), then scrambled by per-degree coordinate permutations and,
/// when it keeps every differential entry in [−4, 4], by a unimodular shear.
pub fn random_complex<R: Rng>(rng: &mut R, max_top: usize, max_rank: usize) -> CochainComplex {
    assert!(max_rank >= 1, "random_complex needs room for one generator");
    let top = rng.gen_range(0..=max_top);
    let mut remaining: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_rank)).collect();
    if remaining.iter().all(|&r| r == 0) {
        remaining[0] = 1;
    }
    let mut pieces = Vec::new();
    for d in 0..top {
        while remaining[d] > 0 && remaining[d + 1] > 0 && rng.gen_bool(0.55) {
            pieces.push(Piece::TwoTerm {
                degree: d,
                mult: rng.gen_range(0..=4),
            });
            remaining[d] -= 1;
            remaining[d + 1] -= 1;
        }
    }
    for (d, &count) in remaining.iter().enumerate() {
        for _ in 0..count {
            pieces.push(Piece::Free { degree: d });
        }
    }

    // Assign each piece a coordinate slot per degree, in a random order.
    let mut ranks = vec![0usize; top + 1];
    let mut slots: Vec<Vec<usize>> = Vec::new(); // per piece: its slot in each degree it occupies
    for p in &pieces {
        match p {
            Piece::Free { degree } => {
                slots.push(vec![ranks[*degree]]);
                ranks[*degree] += 1;
            }
            Piece::TwoTerm { degree, .. } => {
                slots.push(vec![ranks[*degree], ranks[*degree + 1]]);
                ranks[*degree] += 1;
                ranks[*degree + 1] += 1;
            }
        }
    }
    let mut diffs: Vec<IntMatrix> = (0..top)
        .map(|d| IntMatrix::zeros(ranks[d + 1], ranks[d]))
        .collect();
    for (p, slot) in pieces.iter().zip(&slots) {
        if let Piece::TwoTerm { degree, mult } = p {
            diffs[*degree] = diffs[*degree].add(&IntMatrix::from_fn(
                ranks[*degree + 1],
                ranks[*degree],
                |i, j| {
                    if i == slot[1] && j == slot[0] {
                        BigInt::from(*mult)
                    } else {
                        BigInt::from(0)
                    }
                },
            ));
        }
    }

    // Scramble coordinates: δ'_d = P_{d+1} · δ_d · P_d⁻¹ for random
    // permutation matrices P, then (sometimes) one elementary shear,
    // reverted if it pushes any entry outside [−4, 4].
    let perms: Vec<Vec<usize>> = ranks.iter().map(|&r| random_permutation(rng, r)).collect();
    for d in 0..top {
        let p_up = permutation_matrix(&perms[d + 1]);
        let p_down_inv = permutation_matrix(&inverse_permutation(&perms[d]));
        diffs[d] = p_up.mul(&diffs[d]).mul(&p_down_inv);
    }
    for _ in 0..2 {
        let d = rng.gen_range(0..=top);
        if ranks[d] < 2 {
            continue;
        }
        let i = rng.gen_range(0..ranks[d]);
        let mut j = rng.gen_range(0..ranks[d]);
        if i == j {
            j = (j + 1) % ranks[d];
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let e = shear_matrix(ranks[d], i, j, c);
        let e_inv = shear_matrix(ranks[d], i, j, -c);
        let new_out = if d < top {
            Some(diffs[d].mul(&e_inv))
        } else {
            None
        };
        let new_in = if d > 0 { Some(e.mul(&diffs[d - 1])) } else { None };
        let small = new_out.iter().chain(new_in.iter()).all(|m| entries_bounded(m, 4));
        if small {
            if let Some(m) = new_out {
                diffs[d] = m;
            }
            if let Some(m) = new_in {
                diffs[d - 1] = m;
            }
        }
    }

    CochainComplex::new(ranks, diffs).expect("piecewise differentials square to zero")
}

fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

fn inverse_permutation(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    inv
}

/// Matrix sending basis vector e_j to e_{p[j]}.
fn permutation_matrix(p: &[usize]) -> IntMatrix {
    IntMatrix::from_fn(p.len(), p.len(), |i, j| {
        if p[j] == i {
            BigInt::from(1)
        } else {
            BigInt::from(0)
        }
    })
}

/// Identity plus `c` in position (i, j).
fn shear_matrix(n: usize, i: usize, j: usize, c: i64) -> IntMatrix {
    IntMatrix::from_fn(n, n, |r, s| {
        if r == s {
            BigInt::from(1)
        } else if r == i && s == j {
            BigInt::from(c)
        } else {
            BigInt::from(0)
        }
    })
}

fn entries_bounded(m: &IntMatrix, bound: i64) -> bool {
    let b = BigInt::from(bound);
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            let v = m.at(i, j);
            v <= &b && v >= &(-b.clone())
        })
    })
}

/// Random tree poset on `n` elements where every element i < n−1 is covered
/// by a random later element; element n−1 is the maximum, so the poset is
/// directed. Returns the poset and the cover edges (child, parent).
fn random_tree_poset<R: Rng>(rng: &mut R, n: usize) -> (FinitePoset, Vec<(usize, usize)>) {
    let mut covers = Vec::new();
    for i in 0..n.saturating_sub(1) {
        covers.push((i, rng.gen_range(i + 1..n)));
    }
    let poset = FinitePoset::new(n, &covers).expect("a tree with upward edges is a poset");
    (poset, covers)
}

/// Random directed system of cochain complexes over a random tree poset with
/// `min_elements ..= max_elements` elements.
///
/// Every element's complex is `K ⊕ E_i` for a shared core `K` and a private
/// summand `E_i`; each cover edge carries the core projection–inclusion
/// composite, scaled by a small factor and perturbed by a null-homotopic
/// term, so the bonding maps are genuinely nontrivial chain maps and
/// composite relations commute by construction (unique parent paths).
pub fn random_directed_system<R: Rng>(
    rng: &mut R,
    min_elements: usize,
    max_elements: usize,
) -> DirectSystem {
    let n = rng.gen_range(min_elements..=max_elements);
    let (poset, covers) = random_tree_poset(rng, n);

    let mut core = random_complex(rng, 2, 2);
    if core.total_rank() == 0 {
        core = CochainComplex::concentrated(1);
    }
    let mut complexes = Vec::with_capacity(n);
    let mut core_inj = Vec::with_capacity(n);
    let mut core_proj = Vec::with_capacity(n);
    for _ in 0..n {
        let private = random_complex(rng, 2, 1);
        let (sum, injs, projs) = CochainComplex::direct_sum(&[&core, &private]);
        complexes.push(sum);
        core_inj.push(injs[0].clone());
        core_proj.push(projs[0].clone());
    }

    // One drawn chain map per cover edge (child → parent).
    let mut edge_maps: Vec<CochainMap> = Vec::with_capacity(covers.len());
    for &(child, parent) in &covers {
        let src = &complexes[child];
        let tgt = &complexes[parent];
        let scale: i64 = match rng.gen_range(0..5) {
            0 => -1,
            1 => 2,
            _ => 1,
        };
        let top = src.top().max(tgt.top());
        // Null-homotopy components h_n : srcⁿ → tgtⁿ⁻¹ with small entries.
        let h: Vec<IntMatrix> = (0..=top + 1)
            .map(|m| {
                if rng.gen_bool(0.7) {
                    random_int_matrix(rng, tgt.rank(m - 1), src.rank(m), 2)
                } else {
                    IntMatrix::zeros(tgt.rank(m - 1), src.rank(m))
                }
            })
            .collect();
        let maps: Vec<IntMatrix> = (0..=top)
            .map(|nn| {
                let base = core_inj[parent]
                    .map(nn)
                    .mul(&core_proj[child].map(nn))
                    .scale(&BigInt::from(scale));
                let homotopic = tgt
                    .diff(nn - 1)
                    .mul(&h[nn as usize])
                    .add(&h[nn as usize + 1].mul(&src.diff(nn)));
                base.add(&homotopic)
            })
            .collect();
        edge_maps.push(
            CochainMap::new(src.clone(), tgt.clone(), maps)
                .expect("null-homotopic perturbation of a chain map is a chain map"),
        );
    }

    // Bonding for every strict pair = composite along the unique parent path.
    let parent_of = |i: usize| covers.iter().find(|&&(c, _)| c == i).map(|&(_, p)| p);
    let edge = |i: usize| {
        covers
            .iter()
            .position(|&(c, _)| c == i)
            .map(|k| &edge_maps[k])
    };
    let mut bondings = Vec::new();
    for (i, j) in poset.strict_pairs() {
        let mut m = edge(i).expect("non-maximal element has a parent edge").clone();
        let mut at = parent_of(i).expect("non-maximal element has a parent");
        while at != j {
            m = m.then(edge(at).expect("path continues to an ancestor"));
            at = parent_of(at).expect("path continues to an ancestor");
        }
        bondings.push(((i, j), m));
    }

    DirectSystem::new(poset, complexes, bondings).expect("tree-path bondings form a direct system")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prosys::validate_system;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_bounded_and_deterministic() {
        for seed in 0..40u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_complex(&mut rng, 3, 3);
            assert!(c.top() <= 3);
            for n in 0..=c.top() {
                assert!(c.rank(n) <= 3);
                assert!(entries_bounded(&c.diff(n), 4), "entries exceed 4 at seed {seed}");
            }
            let mut rng2 = ChaCha8Rng::seed_from_u64(seed);
            let c2 = random_complex(&mut rng2, 3, 3);
            assert_eq!(c, c2, "generator is not deterministic at seed {seed}");
        }
    }

    #[test]
    fn random_systems_are_valid_and_directed() {
        for seed in 0..25u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_directed_system(&mut rng, 3, 5);
            assert!(s.poset().is_directed());
            assert!(s.poset().len() >= 3 && s.poset().len() <= 5);
            let report = validate_system(&s);
            assert!(
                report.violations.is_empty(),
                "seed {seed}: {:?}",
                report.violations
            );
            for i in 0..s.poset().len() {
                let c = s.complex(i);
                assert!(c.top() <= 2);
                for n in 0..=c.top() {
                    assert!(c.rank(n) <= 3);
                }
            }
        }
    }

    #[test]
    fn random_systems_vary_with_seed() {
        let mut rng_a = ChaCha8Rng::seed_from_u64(11);
        let mut rng_b = ChaCha8Rng::seed_from_u64(12);
        let a = random_directed_system(&mut rng_a, 3, 5);
        let b = random_directed_system(&mut rng_b, 3, 5);
        let da = crate::verify::system_digest(&a, "Z");
        let db = crate::verify::system_digest(&b, "Z");
        assert_ne!(da, db, "different seeds should give different instances");
    }
}
