use super::poset::FinitePoset;
use crate::error::{Error, Result};

/// A weakly increasing chain 𝝀 = (λ₀ ≤ λ₁ ≤ … ≤ λ_s) in a finite poset.
/// The faces dʲ𝝀 drop the j-th entry; a chain is degenerate when two
/// consecutive entries coincide.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(poset: &FinitePoset, entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidPoset {
                reason: "a multiindex needs at least one entry".into(),
            });
        }
        for w in entries.windows(2) {
            if !poset.leq(w[0], w[1]) {
                return Err(Error::InvalidPoset {
                    reason: format!("multiindex entries {} ≤ {} fail in the poset", w[0], w[1]),
                });
            }
        }
        Ok(MultiIndex { entries })
    }

    /// Length s (one less than the number of entries).
    pub fn s(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn lambda(&self, j: usize) -> usize {
        self.entries[j]
    }

    pub fn lambda0(&self) -> usize {
        self.entries[0]
    }

    pub fn is_degenerate(&self) -> bool {
        self.entries.windows(2).any(|w| w[0] == w[1])
    }

    /// dʲ𝝀: the chain with the j-th entry removed. Only defined for s ≥ 1.
    pub fn face(&self, j: usize) -> MultiIndex {
        assert!(self.s() >= 1, "faces of a length-0 chain");
        assert!(j <= self.s());
        let mut entries = self.entries.clone();
        entries.remove(j);
        MultiIndex { entries }
    }
}

/// All weakly (or, with `strict`, strictly) increasing chains of length s,
/// in lexicographic order on their entry vectors.
pub fn chains(poset: &FinitePoset, s: usize, strict: bool) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(s + 1);
    fn extend(
        poset: &FinitePoset,
        s: usize,
        strict: bool,
        current: &mut Vec<usize>,
        out: &mut Vec<MultiIndex>,
    ) {
        if current.len() == s + 1 {
            out.push(MultiIndex {
                entries: current.clone(),
            });
            return;
        }
        for next in 0..poset.len() {
            if let Some(&last) = current.last() {
                if !poset.leq(last, next) || (strict && last == next) {
                    continue;
                }
            }
            current.push(next);
            extend(poset, s, strict, current, out);
            current.pop();
        }
    }
    extend(poset, s, strict, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_enumeration_on_pseudo_circle() {
        let p = FinitePoset::pseudo_circle();
        assert_eq!(chains(&p, 0, true).len(), 4);
        let weak = chains(&p, 1, false);
        assert_eq!(weak.len(), 8);
        let strict = chains(&p, 1, true);
        let pairs: Vec<Vec<usize>> = strict.iter().map(|m| m.entries().to_vec()).collect();
        assert_eq!(pairs, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert!(chains(&p, 2, true).is_empty());
    }

    #[test]
    fn faces_drop_single_entries() {
        let p = FinitePoset::chain(3);
        let m = MultiIndex::new(&p, vec![0, 1, 2]).unwrap();
        assert_eq!(m.s(), 2);
        assert_eq!(m.face(0).entries(), &[1, 2]);
        assert_eq!(m.face(1).entries(), &[0, 2]);
        assert_eq!(m.face(2).entries(), &[0, 1]);
        assert!(!m.is_degenerate());
        let d = MultiIndex::new(&p, vec![0, 0, 1]).unwrap();
        assert!(d.is_degenerate());
    }

    #[test]
    fn invalid_chains_rejected() {
        let p = FinitePoset::chain(2);
        assert!(MultiIndex::new(&p, vec![1, 0]).is_err());
        assert!(MultiIndex::new(&p, vec![]).is_err());
    }

    #[test]
    fn two_chain_counts() {
        let p = FinitePoset::chain(2);
        assert_eq!(chains(&p, 0, true).len(), 2);
        assert_eq!(chains(&p, 1, true).len(), 1);
        assert_eq!(chains(&p, 1, false).len(), 3);
        assert_eq!(chains(&p, 2, true).len(), 0);
        assert_eq!(chains(&p, 2, false).len(), 4);
    }
}
