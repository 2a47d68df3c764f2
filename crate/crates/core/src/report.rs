//! Verdicts shared by the multi-condition checkers.

/// Outcome of one condition, with reasons when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub label: String,
    pub holds: bool,
    pub failures: Vec<String>,
}

impl Verdict {
    pub fn new(label: &str, failures: Vec<String>) -> Self {
        Verdict { label: label.to_string(), holds: failures.is_empty(), failures }
    }
}

/// Verdicts of several conditions that should agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdicts: Vec<Verdict>,
    /// Further identities checked alongside, with their outcome.
    pub extras: Vec<(String, bool)>,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.verdicts.windows(2).all(|w| w[0].holds == w[1].holds)
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}
