//! Comparison verdicts and the report payload shared by all methods.

use serde::Serialize;

use crate::multiset::MultisetGroup;

/// Outcome of an invariant comparison. `Distinguished` certifies
/// non-isomorphism; `NotDistinguished` is silent (the pair may or may not
/// be isomorphic).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Distinguished,
    NotDistinguished,
}

/// Result of comparing two graphs with one method. `r_metric` and
/// `i_metric` are the sorted-real-part and sorted-imaginary-part mismatch
/// sums for the quantum methods; the classical method reports its largest
/// elementwise distance-multiset deviation in `r_metric` and zero in
/// `i_metric`. A vertex-count mismatch skips the computation entirely.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub method: String,
    pub verdict: Verdict,
    pub r_metric: f64,
    pub i_metric: f64,
    pub dimension_mismatch: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multisets: Option<[Vec<MultisetGroup>; 2]>,
}

impl ComparisonReport {
    pub fn dimension_mismatch(method: impl Into<String>) -> Self {
        ComparisonReport {
            method: method.into(),
            verdict: Verdict::Distinguished,
            r_metric: 0.0,
            i_metric: 0.0,
            dimension_mismatch: true,
            multisets: None,
        }
    }
}
