//! Mechanical verification of the engine's structural guarantees on concrete
//! finite instances.
//!
//! Each `verify_*` entry point takes a finite direct system (or a single
//! complex) together with a coefficient choice, re-computes both sides of one
//! structural statement — comparison maps between limit constructions, long
//! exact sequences, universal-coefficient decompositions, Mittag-Leffler
//! criteria — through *independent* code paths wherever the statement has two
//! sides, and returns a [`VerificationReport`] listing every assertion that
//! was checked. A failed assertion always carries a concrete witness (the
//! degree, the offending matrix, the class that fails to lift). Reports are
//! deterministic: the same instance produces byte-identical output.
//!
//! The [`random`] submodule provides the seeded instance generators used by
//! the statement-level test suites; [`les`] builds long exact coefficient
//! sequences at the chain level (horseshoe resolutions, degreewise short
//! exactness, snake connecting maps); [`tower`] caches truncation towers so
//! the limit-comparison checks can share one set of total complexes.

pub mod checkers;
pub mod les;
pub mod random;
pub mod tower;

pub use checkers::{
    verify_lemma2_3, verify_lemma4, verify_theorem1, verify_theorem2, verify_ucf,
    verify_ucf_complex,
};
pub use les::{cone_les, total_les, CoefficientLes};
pub use random::{random_complex, random_directed_system, random_int_matrix};
pub use tower::{
    verify_corollary1, verify_lemma1, verify_mardesic, verify_milnor, TowerWorkspace,
};

use crate::cone::{CochainComplex, Coefficients};
use crate::fgab::{FgAbGroup, IntMatrix};
use crate::prosys::DirectSystem;
use sha2::{Digest, Sha256};
use std::fmt;

/// Outcome of a single checked assertion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    /// The assertion is outside the engine's exact-arithmetic scope on this
    /// instance (e.g. a homology group that is not finitely generated); it
    /// was neither confirmed nor refuted.
    Skip,
}

/// One checked assertion: a human-readable label, its status, and — for
/// failures and skips — a witness string naming the concrete obstruction.
#[derive(Clone, Debug)]
pub struct Assertion {
    pub label: String,
    pub status: Status,
    pub witness: Option<String>,
}

/// Outcome of one `verify_*` run: which statement was checked, on which
/// instance (content digest), with which seed (when the instance was
/// generated rather than supplied), and the list of assertions.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub theorem: String,
    pub engine: String,
    pub digest: String,
    pub seed: Option<u64>,
    pub assertions: Vec<Assertion>,
}

impl VerificationReport {
    pub fn new(theorem: impl Into<String>, digest: impl Into<String>) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            engine: format!("stronghom {}", env!("CARGO_PKG_VERSION")),
            digest: digest.into(),
            seed: None,
            assertions: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Record one assertion. The witness closure is only evaluated on
    /// failure, so callers can format expensive diagnostics lazily.
    pub fn record(&mut self, label: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        self.assertions.push(Assertion {
            label: label.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { Some(witness()) },
        });
    }

    /// Record an assertion that could not be evaluated on this instance.
    pub fn skip(&mut self, label: impl Into<String>, reason: impl Into<String>) {
        self.assertions.push(Assertion {
            label: label.into(),
            status: Status::Skip,
            witness: Some(reason.into()),
        });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.status != Status::Fail)
    }

    pub fn failures(&self) -> usize {
        self.assertions
            .iter()
            .filter(|a| a.status == Status::Fail)
            .count()
    }

    pub fn first_failure(&self) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.status == Status::Fail)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theorem: {}", self.theorem)?;
        writeln!(f, "engine: {}", self.engine)?;
        writeln!(f, "instance: {}", self.digest)?;
        match self.seed {
            Some(s) => writeln!(f, "seed: {s}")?,
            None => writeln!(f, "seed: none")?,
        }
        for a in &self.assertions {
            match a.status {
                Status::Pass => writeln!(f, "  PASS {}", a.label)?,
                Status::Fail => writeln!(
                    f,
                    "  FAIL {}: {}",
                    a.label,
                    a.witness.as_deref().unwrap_or("(no witness)")
                )?,
                Status::Skip => writeln!(
                    f,
                    "  SKIP {}: {}",
                    a.label,
                    a.witness.as_deref().unwrap_or("(no reason)")
                )?,
            }
        }
        if self.passed() {
            write!(f, "verdict: VERIFIED ({} assertions)", self.assertions.len())
        } else {
            write!(
                f,
                "verdict: FAILED ({} of {} assertions)",
                self.failures(),
                self.assertions.len()
            )
        }
    }
}

/// SHA-256 of `bytes` in lowercase hex.
pub fn digest_bytes(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Canonical label for a coefficient choice, used in digests and reports.
/// Finitely generated groups print by invariant factors (`Z+Z/4`), divisible
/// groups by their `Q`/`Q/Z` ranks.
pub fn coefficient_label(coeff: &Coefficients) -> String {
    match coeff {
        Coefficients::Resolved(r) => r.group().to_string(),
        Coefficients::SelfInjective(d) => d.to_string(),
    }
}

fn push_matrix_text(out: &mut String, m: &IntMatrix) {
    out.push('[');
    for i in 0..m.rows() {
        if i > 0 {
            out.push(';');
        }
        for j in 0..m.cols() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&m.at(i, j).to_string());
        }
    }
    out.push(']');
}

fn push_complex_text(out: &mut String, c: &CochainComplex) {
    out.push_str(&format!("complex top={} ranks=", c.top()));
    for n in 0..=c.top() {
        out.push_str(&format!("{},", c.rank(n)));
    }
    for n in 0..c.top() {
        out.push_str(&format!(" d{n}="));
        push_matrix_text(out, &c.diff(n));
    }
    out.push('\n');
}

/// Canonical text serialization of a direct system plus a coefficient label,
/// hashed into the instance digest. The text depends only on the in-memory
/// instance (poset order relation, complex ranks and differentials, bonding
/// matrices, coefficient label), never on the input syntax, so equal
/// instances get equal digests regardless of where they were parsed from.
pub fn system_digest(s: &DirectSystem, coeff_label: &str) -> String {
    let p = s.poset();
    let mut text = format!("poset n={}\nleq=", p.len());
    for i in 0..p.len() {
        for j in 0..p.len() {
            if i != j && p.leq(i, j) {
                text.push_str(&format!("{i}<{j},"));
            }
        }
    }
    text.push('\n');
    for i in 0..p.len() {
        text.push_str(&format!("element {i}: "));
        push_complex_text(&mut text, s.complex(i));
    }
    for (i, j) in p.strict_pairs() {
        let b = s.bonding(i, j);
        text.push_str(&format!("bonding {i}<{j}:"));
        let hi = b.source().top().max(b.target().top());
        for n in 0..=hi {
            text.push_str(&format!(" m{n}="));
            push_matrix_text(&mut text, &b.map(n));
        }
        text.push('\n');
    }
    text.push_str(&format!("coefficients {coeff_label}\n"));
    digest_bytes(text.as_bytes())
}

/// Instance digest for a single cochain complex plus coefficient label.
pub fn complex_digest(c: &CochainComplex, coeff_label: &str) -> String {
    let mut text = String::new();
    push_complex_text(&mut text, c);
    text.push_str(&format!("coefficients {coeff_label}\n"));
    digest_bytes(text.as_bytes())
}

/// Short form used when a checker needs a coefficient label for a plain
/// finitely generated group rather than a full [`Coefficients`] value.
pub fn group_label(g: &FgAbGroup) -> String {
    g.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prosys::FinitePoset;

    fn point_complex() -> CochainComplex {
        CochainComplex::new(vec![1], vec![]).unwrap()
    }

    #[test]
    fn report_rendering_and_verdicts() {
        let mut r = VerificationReport::new("lemma1", "abc123");
        r.record("first check", true, || unreachable!());
        assert!(r.passed());
        r.record("second check", false, || "left=Z right=Z/2".to_string());
        r.skip("third check", "out of scope here");
        assert!(!r.passed());
        assert_eq!(r.failures(), 1);
        assert_eq!(r.first_failure().unwrap().label, "second check");
        let text = r.to_string();
        assert!(text.contains("theorem: lemma1"));
        assert!(text.contains("instance: abc123"));
        assert!(text.contains("seed: none"));
        assert!(text.contains("  PASS first check"));
        assert!(text.contains("  FAIL second check: left=Z right=Z/2"));
        assert!(text.contains("  SKIP third check: out of scope here"));
        assert!(text.contains("verdict: FAILED (1 of 3 assertions)"));

        let ok = VerificationReport::new("ucf", "d").with_seed(7);
        assert!(ok.to_string().contains("seed: 7"));
        assert!(ok.to_string().contains("verdict: VERIFIED (0 assertions)"));
    }

    #[test]
    fn digest_is_content_addressed() {
        let poset = FinitePoset::chain(2);
        let s1 = DirectSystem::constant(poset.clone(), point_complex()).unwrap();
        let s2 = DirectSystem::constant(poset, point_complex()).unwrap();
        let d1 = system_digest(&s1, "Z");
        let d2 = system_digest(&s2, "Z");
        assert_eq!(d1, d2);
        assert_eq!(d1.len(), 64);
        assert_ne!(d1, system_digest(&s1, "Z/2"));

        let other = DirectSystem::constant(
            FinitePoset::chain(2),
            CochainComplex::new(vec![1, 1], vec![IntMatrix::from_i64(1, 1, &[2])]).unwrap(),
        )
        .unwrap();
        assert_ne!(d1, system_digest(&other, "Z"));
    }

    #[test]
    fn group_labels_match_display() {
        assert_eq!(group_label(&FgAbGroup::free(2)), "Z+Z");
        assert_eq!(group_label(&FgAbGroup::trivial()), "0");
    }
}
