//! Certifiers for the structural hypotheses: the abstract conditions on `T`
//! and `F` (tested on sampled cone directions), the conditions on the
//! p-Laplacian nonlinearity, the constants they involve, and the moment and
//! cubic analysis of the quadratic Hammerstein example.
//!
//! Anything quantified over a whole cone or a whole half-line is checked on
//! seeded samples; such passes are reported as [`Verdict::SampledPass`].

mod constants;
mod kernel;
mod manifold;
mod nonlinearity;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use constants::{compute_Phi, estimate_cp, CpEstimate};
pub use kernel::{
    alpha_moments, certify_kernel_intervals, cubic_analysis, CubicReport, DirectionCertificate, KernelCertificate,
    KERNEL_INTERVALS,
};
pub use manifold::{check_compression, check_h1, check_h2, check_scaling, CompressionMode, ScalingMode, H2_THRESHOLD};
pub use nonlinearity::{check_H1, check_H2, check_H3, H2Input, H2Mode};

/// Relative gap below which two floating-point values count as equal.
pub const TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Held on every sample drawn; evidence, not proof.
    SampledPass,
}

impl Verdict {
    pub fn holds(self) -> bool {
        !matches!(self, Verdict::Fail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// Condition id, e.g. `"h1"` or `"H2"`.
    pub condition: String,
    pub verdict: Verdict,
    /// Named numeric evidence: margins, extrema, and the failing sample if any.
    pub witnesses: BTreeMap<String, f64>,
    pub detail: String,
    pub samples: usize,
    pub seed: Option<u64>,
}

impl HypothesisReport {
    pub(crate) fn new(condition: &str, samples: usize, seed: Option<u64>) -> Self {
        HypothesisReport {
            condition: condition.to_string(),
            verdict: Verdict::Pass,
            witnesses: BTreeMap::new(),
            detail: String::new(),
            samples,
            seed,
        }
    }

    pub(crate) fn witness(&mut self, key: &str, value: f64) -> &mut Self {
        self.witnesses.insert(key.to_string(), value);
        self
    }

    pub(crate) fn fail(&mut self, detail: impl Into<String>) -> &mut Self {
        self.verdict = Verdict::Fail;
        if self.detail.is_empty() {
            self.detail = detail.into();
        }
        self
    }

    pub(crate) fn sampled(&mut self) -> &mut Self {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::SampledPass;
        }
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// `a ≤ b` up to the relative tie threshold.
pub(crate) fn le_tie(a: f64, b: f64) -> bool {
    a <= b + TIE * a.abs().max(b.abs()).max(1.0)
}
