//! Verification reports: exhaustive axiom sweeps produce one of these
//! instead of a bare boolean, so failures carry the exact offending basis
//! indices and the exact nonzero residual.

use serde::Serialize;

/// Upper bound on recorded failures per report; sweeps keep counting but
/// stop storing residuals past this (the `truncated` flag records that).
pub const MAX_RECORDED_FAILURES: usize = 64;

/// One failed axiom instance: which law, at which basis indices, with the
/// exact residual rendered as a readable string.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomFailure {
    /// Short identifier of the law that failed (e.g. `"mp3"`,
    /// `"comult-multiplicative"`).
    pub axiom: &'static str,
    /// Basis indices the law was instantiated at (length depends on the
    /// law's arity).
    pub at: Vec<usize>,
    /// Exact residual (left side minus right side), rendered.
    pub residual: String,
}

/// Result of an exhaustive (or, where documented, deterministically
/// sampled) axiom sweep.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    /// Number of individual law instances checked.
    pub checks: u64,
    /// All failures, in sweep order, up to [`MAX_RECORDED_FAILURES`].
    pub failures: Vec<AxiomFailure>,
    /// Total failure count (may exceed `failures.len()`).
    pub failure_count: u64,
    /// `true` when `failures` was capped.
    pub truncated: bool,
}

impl AxiomReport {
    /// A sweep with every law instance passing.
    pub fn pass(&self) -> bool {
        self.failure_count == 0
    }

    /// Record one checked instance.
    pub fn count_check(&mut self) {
        self.checks += 1;
    }

    /// Record a failure (storing it only below the cap).
    pub fn record(&mut self, axiom: &'static str, at: Vec<usize>, residual: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(AxiomFailure {
                axiom,
                at,
                residual,
            });
        } else {
            self.truncated = true;
        }
    }

    /// Merge another report into this one (joint sweep).
    pub fn absorb(&mut self, other: AxiomReport) {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            } else {
                self.truncated = true;
            }
        }
        self.truncated |= other.truncated;
    }

    /// The distinct axiom identifiers that failed.
    pub fn failed_axioms(&self) -> Vec<&'static str> {
        let mut seen = Vec::new();
        for f in &self.failures {
            if !seen.contains(&f.axiom) {
                seen.push(f.axiom);
            }
        }
        seen
    }
}
