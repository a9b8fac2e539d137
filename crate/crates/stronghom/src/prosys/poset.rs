use crate::error::{Error, Result};

/// A finite poset on elements 0..n. The relation is stored as a full
/// boolean matrix after reflexive–transitive closure of the input pairs;
/// antisymmetry is checked. Directedness, height (longest strict chain,
/// counted in edges), and the maximum element (which exists iff a finite
/// nonempty poset is directed) are computed once and cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<Vec<bool>>,
    directed: bool,
    height: usize,
    maximum: Option<usize>,
}

impl FinitePoset {
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(Error::InvalidPoset {
                    reason: format!("relation ({}, {}) names an element outside 0..{}", i, j, n),
                });
            }
            leq[i][j] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset {
                        reason: format!("antisymmetry fails: {} ≤ {} and {} ≤ {}", i, j, j, i),
                    });
                }
            }
        }
        let maximum = (0..n).find(|&m| (0..n).all(|i| leq[i][m]));
        let directed = n > 0 && maximum.is_some();
        // longest strict chain measured in edges, by DP over the DAG
        let mut best = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        // process elements in an order compatible with ≤ (count of lower elements)
        order.sort_by_key(|&i| (0..n).filter(|&j| leq[j][i]).count());
        let mut height = 0;
        for &i in &order {
            for j in 0..n {
                if i != j && leq[j][i] && best[j] + 1 > best[i] {
                    best[i] = best[j] + 1;
                }
            }
            height = height.max(best[i]);
        }
        Ok(FinitePoset {
            n,
            leq,
            directed,
            height,
            maximum,
        })
    }

    /// The linear order 0 < 1 < … < n−1.
    pub fn chain(n: usize) -> Self {
        let rels: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::new(n, &rels).expect("a chain is a poset")
    }

    pub fn singleton() -> Self {
        FinitePoset::chain(1)
    }

    /// The four-element poset {a, b} < {c, d} with both lower elements
    /// under both upper ones — the smallest poset whose order complex is a
    /// circle. Not directed.
    pub fn pseudo_circle() -> Self {
        FinitePoset::new(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).expect("valid poset")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn maximum(&self) -> Option<usize> {
        self.maximum
    }

    /// Length of the longest strictly increasing chain, counted in edges;
    /// 0 for antichains and the empty poset.
    pub fn height(&self) -> usize {
        self.height
    }

    /// All ordered pairs (i, j) with i ≤ j and i ≠ j.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.leq[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_basics() {
        let p = FinitePoset::chain(3);
        assert_eq!(p.len(), 3);
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert!(p.is_directed());
        assert_eq!(p.maximum(), Some(2));
        assert_eq!(p.height(), 2);
    }

    #[test]
    fn transitive_closure_is_applied() {
        let p = FinitePoset::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
    }

    #[test]
    fn pseudo_circle_is_not_directed() {
        let p = FinitePoset::pseudo_circle();
        assert!(!p.is_directed());
        assert_eq!(p.maximum(), None);
        assert_eq!(p.height(), 1);
        assert_eq!(p.strict_pairs(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn cycles_are_rejected() {
        let err = FinitePoset::new(2, &[(0, 1), (1, 0)]);
        assert!(matches!(err, Err(Error::InvalidPoset { .. })));
    }

    #[test]
    fn out_of_range_relation_rejected() {
        let err = FinitePoset::new(2, &[(0, 5)]);
        assert!(matches!(err, Err(Error::InvalidPoset { .. })));
    }

    #[test]
    fn empty_and_singleton() {
        let e = FinitePoset::new(0, &[]).unwrap();
        assert!(!e.is_directed());
        assert_eq!(e.height(), 0);
        let s = FinitePoset::singleton();
        assert!(s.is_directed());
        assert_eq!(s.maximum(), Some(0));
    }
}
