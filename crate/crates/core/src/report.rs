use std::fmt;

/// Outcome of checking one law over a batch of instances.
///
/// Only the first counterexample is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub law: String,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl LawCheck {
    pub fn new(law: impl Into<String>) -> LawCheck {
        LawCheck { law: law.into(), checked: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Records one instance; `detail` is only evaluated on failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(detail());
        }
    }

    /// Adds the instances of `other`, keeping the earliest counterexample.
    pub fn absorb(&mut self, other: LawCheck) {
        self.checked += other.checked;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

impl fmt::Display for LawCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{} PASS ({} checks)", self.law, self.checked),
            Some(c) => write!(f, "{} FAIL ({} checks): {}", self.law, self.checked, c),
        }
    }
}
