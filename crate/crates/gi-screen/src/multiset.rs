//! Canonicalized multisets of real numbers.
//!
//! Every invariant in this crate ends as a sorted collection of floating
//! point values. Canonicalization sorts them and groups near-ties so that
//! reports are stable and comparisons are free of ordering artifacts.

use serde::Serialize;

/// A sorted multiset of real values together with the grouping quantum
/// used when summarizing near-equal runs.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalMultiset {
    values: Vec<f64>,
    quantum: f64,
}

/// One run of near-equal values: the group mean and how many values it
/// absorbed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MultisetGroup {
    pub value: f64,
    pub multiplicity: usize,
}

/// Sorts `values` and attaches the grouping quantum.
///
/// Consecutive sorted values differing by at most `quantum` fall into one
/// group; the representative is the group mean. The raw sorted values are
/// retained for exact comparisons.
pub fn canonical_multiset(values: &[f64], quantum: f64) -> CanonicalMultiset {
    assert!(quantum > 0.0, "grouping quantum must be positive");
    assert!(
        values.iter().all(|v| v.is_finite()),
        "multiset values must be finite"
    );
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    CanonicalMultiset {
        values: sorted,
        quantum,
    }
}

impl CanonicalMultiset {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn quantum(&self) -> f64 {
        self.quantum
    }

    /// Chain-groups the sorted values: a new group starts whenever the gap
    /// to the previous value exceeds the quantum.
    pub fn groups(&self) -> Vec<MultisetGroup> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 0..=self.values.len() {
            let boundary = i == self.values.len()
                || (i > start && self.values[i] - self.values[i - 1] > self.quantum);
            if boundary {
                if i > start {
                    let slice = &self.values[start..i];
                    out.push(MultisetGroup {
                        value: slice.iter().sum::<f64>() / slice.len() as f64,
                        multiplicity: slice.len(),
                    });
                }
                start = i;
            }
        }
        out
    }

    /// Multiplicities in ascending-value order.
    pub fn multiplicity_pattern(&self) -> Vec<usize> {
        self.groups().iter().map(|g| g.multiplicity).collect()
    }

    /// Largest elementwise deviation from `other` after sorting, or
    /// `+inf` when the lengths differ.
    pub fn max_deviation(&self, other: &CanonicalMultiset) -> f64 {
        if self.values.len() != other.values.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Elementwise comparison of two canonicalized multisets: equal lengths
/// and every sorted pair within `tol`. Both sides must carry the same
/// grouping quantum.
pub fn multiset_equal(a: &CanonicalMultiset, b: &CanonicalMultiset, tol: f64) -> bool {
    assert_eq!(
        a.quantum.to_bits(),
        b.quantum.to_bits(),
        "comparing multisets canonicalized with different quanta"
    );
    a.max_deviation(b) <= tol
}
