//! Outcomes of the law checkers.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::value::Profile;

/// One failed law instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub law: &'static str,
    pub instance: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.instance)
    }
}

/// A sorted, duplicate-free list of violations. Empty means the checked
/// structure satisfied every law instance that was examined.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, law: &'static str, instance: impl Into<String>) {
        self.violations.push(Violation {
            law,
            instance: instance.into(),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Sorts and deduplicates; called by every checker before returning.
    pub fn finish(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn mentions(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Result of a bounded equivalence check of a symmetric morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub essentially_surjective: bool,
    pub full_faithful_on_objects: bool,
    /// Keyed by source-side profile; profiles of the codomain that no
    /// source profile reaches appear under their own key with `false`.
    pub arrow_bijections: BTreeMap<Profile, bool>,
    pub bound: usize,
    /// Human-readable notes on the first failures found.
    pub notes: Vec<String>,
}

impl EquivalenceReport {
    pub fn verdict(&self) -> bool {
        self.essentially_surjective
            && self.full_faithful_on_objects
            && self.arrow_bijections.values().all(|&b| b)
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bij = self.arrow_bijections.values().filter(|&&b| b).count();
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "essentially surjective: {}", self.essentially_surjective)?;
        writeln!(f, "full and faithful on objects: {}", self.full_faithful_on_objects)?;
        writeln!(
            f,
            "arrow bijections: {bij}/{} profiles",
            self.arrow_bijections.len()
        )?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        write!(f, "verdict: {}", if self.verdict() { "pass" } else { "fail" })
    }
}
