use super::group::FgAbGroup;
use super::morphism::{subquotient, FgMorphism};
use crate::error::{Error, Result};
use std::fmt;

/// Verdict at one node of a sequence.
#[derive(Clone, Debug)]
pub enum NodeStatus {
    /// First or last node; nothing to check there.
    End,
    Exact,
    /// The sequence is a complex at this node but ker/im is nontrivial.
    Inexact { homology: FgAbGroup },
    /// A nonzero composite of two consecutive maps lands in this node;
    /// `defect` is the cokernel of that composite.
    NotComplex { defect: FgAbGroup },
}

impl NodeStatus {
    pub fn is_exact(&self) -> bool {
        matches!(self, NodeStatus::End | NodeStatus::Exact)
    }
}

/// Exactness report for a finite sequence of composable morphisms.
#[derive(Debug)]
pub struct ExactnessReport {
    nodes: Vec<FgAbGroup>,
    statuses: Vec<NodeStatus>,
    is_complex: bool,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.is_complex && self.statuses.iter().all(|s| s.is_exact())
    }

    pub fn is_complex(&self) -> bool {
        self.is_complex
    }

    pub fn nodes(&self) -> &[FgAbGroup] {
        &self.nodes
    }

    pub fn statuses(&self) -> &[NodeStatus] {
        &self.statuses
    }

    /// Index and defect group of the first failing node, if any.
    pub fn first_failure(&self) -> Option<(usize, &FgAbGroup)> {
        self.statuses.iter().enumerate().find_map(|(i, s)| match s {
            NodeStatus::Inexact { homology } => Some((i, homology)),
            NodeStatus::NotComplex { defect } => Some((i, defect)),
            _ => None,
        })
    }
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, s)) in self.nodes.iter().zip(&self.statuses).enumerate() {
            match s {
                NodeStatus::End => writeln!(f, "node {i} ({g}): end")?,
                NodeStatus::Exact => writeln!(f, "node {i} ({g}): exact")?,
                NodeStatus::Inexact { homology } => {
                    writeln!(f, "node {i} ({g}): inexact, ker/im = {homology}")?
                }
                NodeStatus::NotComplex { defect } => writeln!(
                    f,
                    "node {i} ({g}): not a complex, composite defect {defect}"
                )?,
            }
        }
        Ok(())
    }
}

/// Checks exactness of `maps[0]: A0 → A1`, `maps[1]: A1 → A2`, …
///
/// At every interior node the subquotient ker/im is computed (when two
/// consecutive maps fail to compose to zero, the nonzero composite is
/// reported at its landing node with the composite's cokernel as defect).
pub fn check_exactness(maps: &[FgMorphism]) -> Result<ExactnessReport> {
    assert!(!maps.is_empty(), "empty sequence has no nodes to check");
    for (i, pair) in maps.windows(2).enumerate() {
        if pair[0].target() != pair[1].source() {
            return Err(Error::NotComposable { position: i + 1 });
        }
    }
    let mut nodes: Vec<FgAbGroup> = Vec::with_capacity(maps.len() + 1);
    nodes.push(maps[0].source().clone());
    for f in maps {
        nodes.push(f.target().clone());
    }
    let m = nodes.len();
    let mut statuses = vec![NodeStatus::End; m];
    let mut is_complex = true;

    for i in 1..=m - 2 {
        let through = maps[i - 1].then(&maps[i]);
        if !through.is_zero() {
            is_complex = false;
            let (defect, _) = through.cokernel();
            statuses[i + 1] = NodeStatus::NotComplex { defect };
        }
    }
    for i in 1..=m - 2 {
        if matches!(statuses[i], NodeStatus::NotComplex { .. }) {
            continue;
        }
        let z = maps[i].kernel();
        let b = maps[i - 1].image();
        let homology = subquotient(&z, &b);
        statuses[i] = if homology.is_trivial() {
            NodeStatus::Exact
        } else {
            NodeStatus::Inexact { homology }
        };
    }
    Ok(ExactnessReport {
        nodes,
        statuses,
        is_complex,
    })
}
