use crate::cone::{CochainComplex, CochainMap};
use crate::error::{Error, Result};
use crate::fgab::IntMatrix;
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};

/// A finite abstract simplicial complex: the set of its simplices, closed
/// under faces, grouped by dimension. Each simplex is a strictly increasing
/// vertex list; within a dimension simplices are ordered lexicographically,
/// and that ordering fixes the cochain bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn from_facets(facets: &[Vec<usize>]) -> Result<Self> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in facets {
            if facet.is_empty() {
                return Err(Error::InvalidSimplicial {
                    reason: "empty facet".into(),
                });
            }
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidSimplicial {
                    reason: format!("facet {:?} repeats a vertex", facet),
                });
            }
            // all nonempty subsets
            let k = sorted.len();
            for mask in 1u32..(1 << k) {
                let sub: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| sorted[i]).collect();
                all.insert(sub);
            }
        }
        let top = all.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        Ok(SimplicialComplex { by_dim })
    }

    pub fn empty() -> Self {
        SimplicialComplex { by_dim: Vec::new() }
    }

    /// Dimension of the complex; −1 when empty.
    pub fn dim(&self) -> i64 {
        self.by_dim.len() as i64 - 1
    }

    pub fn simplices(&self, d: i64) -> &[Vec<usize>] {
        if d < 0 || d > self.dim() {
            &[]
        } else {
            &self.by_dim[d as usize]
        }
    }

    pub fn contains(&self, sorted_simplex: &[usize]) -> bool {
        let d = sorted_simplex.len() as i64 - 1;
        self.simplices(d).iter().any(|s| s == sorted_simplex)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        (0..=self.dim()).all(|d| self.simplices(d).iter().all(|s| other.contains(s)))
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    /// The standard 6-vertex triangulation of the projective plane, the
    /// quotient of the icosahedron boundary by the antipodal map.
    pub fn projective_plane() -> Self {
        let facets: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![2, 4, 5],
            vec![1, 3, 5],
        ];
        SimplicialComplex::from_facets(&facets).expect("valid facets")
    }

    /// The boundary of a triangle: a 3-vertex circle.
    pub fn circle() -> Self {
        SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).expect("valid facets")
    }

    pub fn point() -> Self {
        SimplicialComplex::from_facets(&[vec![0]]).expect("valid facets")
    }
}

/// A pair (K, L) with L a subcomplex of K (possibly empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPair {
    space: SimplicialComplex,
    sub: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(space: SimplicialComplex, sub: Option<SimplicialComplex>) -> Result<Self> {
        let sub = sub.unwrap_or_else(SimplicialComplex::empty);
        if !sub.is_subcomplex_of(&space) {
            return Err(Error::InvalidSimplicial {
                reason: "L is not a subcomplex of K".into(),
            });
        }
        Ok(SimplicialPair { space, sub })
    }

    pub fn absolute(space: SimplicialComplex) -> Self {
        SimplicialPair {
            space,
            sub: SimplicialComplex::empty(),
        }
    }

    pub fn space(&self) -> &SimplicialComplex {
        &self.space
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.sub
    }

    /// Basis of relative d-cochains: the d-simplices of K not in L, in the
    /// lexicographic order inherited from K.
    pub fn basis(&self, d: i64) -> Vec<Vec<usize>> {
        self.space
            .simplices(d)
            .iter()
            .filter(|s| !self.sub.contains(s))
            .cloned()
            .collect()
    }

    /// The ordered relative simplicial cochain complex of (K, L): cochains
    /// on K vanishing on L, with (δφ)(τ) = Σⱼ (−1)ʲ φ(dⱼτ).
    pub fn cochain_complex(&self) -> CochainComplex {
        let top = self.space.dim();
        if top < 0 {
            return CochainComplex::new(Vec::new(), Vec::new()).expect("empty complex");
        }
        let bases: Vec<Vec<Vec<usize>>> = (0..=top).map(|d| self.basis(d)).collect();
        let ranks: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let mut diffs = Vec::new();
        for d in 0..top as usize {
            let rows = &bases[d + 1];
            let cols = &bases[d];
            let col_index: BTreeMap<&[usize], usize> =
                cols.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let mut m = IntMatrix::zeros(rows.len(), cols.len());
            for (r, tau) in rows.iter().enumerate() {
                for j in 0..tau.len() {
                    let mut face = tau.clone();
                    face.remove(j);
                    if let Some(&c) = col_index.get(face.as_slice()) {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        m.set(r, c, BigInt::from(sign));
                    }
                }
            }
            diffs.push(m);
        }
        CochainComplex::new(ranks, diffs).expect("simplicial coboundary squares to zero")
    }
}

/// A simplicial map given on vertices. Validation checks totality on the
/// source vertices, that simplex images are simplices of the target, and
/// that the subcomplex maps into the subcomplex.
pub type VertexMap = BTreeMap<usize, usize>;

fn image_simplex(f: &VertexMap, s: &[usize]) -> Result<Option<(Vec<usize>, i64)>> {
    // maps a sorted simplex to (sorted image, orientation sign), or None
    // when the image is degenerate
    let mut img = Vec::with_capacity(s.len());
    for &v in s {
        match f.get(&v) {
            Some(&w) => img.push(w),
            None => {
                return Err(Error::InvalidSimplicial {
                    reason: format!("vertex {} has no image under the map", v),
                })
            }
        }
    }
    let mut sorted = img.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    // parity of the permutation sorting the image tuple
    let mut inversions = 0usize;
    for i in 0..img.len() {
        for j in i + 1..img.len() {
            if img[i] > img[j] {
                inversions += 1;
            }
        }
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Ok(Some((sorted, sign)))
}

/// The cochain map induced contravariantly by a simplicial map of pairs
/// f: (K, L) → (K′, L′): from the cochains of (K′, L′) to those of (K, L),
/// (f#φ)(τ) = sign(f|τ) · φ(f(τ)), zero on degenerate images.
pub fn induced_cochain_map(
    f: &VertexMap,
    source_pair: &SimplicialPair,
    target_pair: &SimplicialPair,
) -> Result<CochainMap> {
    // validate simpliciality on the full source complex
    for d in 0..=source_pair.space().dim() {
        for s in source_pair.space().simplices(d) {
            if let Some((img, _)) = image_simplex(f, s)? {
                if !target_pair.space().contains(&img) {
                    return Err(Error::InvalidSimplicial {
                        reason: format!("image {:?} of simplex {:?} is not a simplex", img, s),
                    });
                }
            }
        }
    }
    for d in 0..=source_pair.sub().dim() {
        for s in source_pair.sub().simplices(d) {
            if let Some((img, _)) = image_simplex(f, s)? {
                if !target_pair.sub().contains(&img) {
                    return Err(Error::InvalidSimplicial {
                        reason: format!(
                            "subcomplex simplex {:?} maps to {:?} outside the target subcomplex",
                            s, img
                        ),
                    });
                }
            }
        }
    }
    let from = target_pair.cochain_complex();
    let to = source_pair.cochain_complex();
    let top = from.top().max(to.top());
    let mut maps = Vec::new();
    for d in 0..=top {
        let rows = source_pair.basis(d);
        let cols = target_pair.basis(d);
        let col_index: BTreeMap<&[usize], usize> =
            cols.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (r, tau) in rows.iter().enumerate() {
            if let Some((img, sign)) = image_simplex(f, tau)? {
                if let Some(&c) = col_index.get(img.as_slice()) {
                    m.set(r, c, BigInt::from(sign));
                }
            }
        }
        maps.push(m);
    }
    CochainMap::new(from, to, maps)
}
