//! Overlap matrices O_ij = ⟨ψ_i(0)|ψ_j(T)⟩ and the sorted-entry metrics
//! used to compare them as multisets of complex numbers.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::ComplexMatrix;
use crate::report::{ComparisonReport, Verdict};

/// Quantization applied to sort keys so that degenerate entries cannot
/// scramble the pairing between two independently computed sets.
pub const SORT_QUANTUM: f64 = 1e-9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OverlapError {
    #[error("overlap matrices have different dimensions: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Matrix of initial-vs-evolved amplitudes over some basis (vertices for
/// the single-particle walk, ordered pairs for the two-particle walk).
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapMatrix {
    m: ComplexMatrix,
}

impl OverlapMatrix {
    pub(crate) fn new(m: ComplexMatrix) -> Self {
        OverlapMatrix { m }
    }

    pub fn dim(&self) -> usize {
        self.m.n()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m.get(i, j)
    }

    pub fn entries(&self) -> &[Complex64] {
        self.m.entries()
    }

    /// Worst row deviation from Σ_j |O_ij|² = 1, the unitarity invariant.
    pub fn row_norm_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            let sum: f64 = (0..n).map(|j| self.m.get(i, j).norm_sqr()).sum();
            worst = worst.max((sum - 1.0).abs());
        }
        worst
    }
}

/// How overlap entries are identified before sorting and comparison.
///
/// Antisymmetric two-particle states carry an orientation: relabeling the
/// graph maps |ij⟩ to ±|p(i)p(j)⟩ depending on whether the pair stays
/// sorted. Fermion overlap entries are therefore only defined up to sign,
/// and comparing them raw would "distinguish" a graph from its own
/// relabeling. `OrientationFree` quotients that gauge out by replacing
/// each entry with the lexicographically positive member of {z, −z};
/// symmetric states have no such freedom and use `Fixed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gauge {
    Fixed,
    OrientationFree,
}

fn quantize(x: f64) -> i64 {
    (x / SORT_QUANTUM).round() as i64
}

fn orientation_rep(z: Complex64) -> Complex64 {
    // sign decisions are made on quantized parts so that rounding noise
    // cannot flip the representative between two runs being compared
    let (qre, qim) = (quantize(z.re), quantize(z.im));
    if qre > 0 || (qre == 0 && qim >= 0) {
        z
    } else {
        -z
    }
}

fn prepared(entries: &[Complex64], gauge: Gauge) -> Vec<Complex64> {
    match gauge {
        Gauge::Fixed => entries.to_vec(),
        Gauge::OrientationFree => entries.iter().copied().map(orientation_rep).collect(),
    }
}

fn sorted_by(entries: &[Complex64], gauge: Gauge, primary_im: bool) -> Vec<Complex64> {
    let mut v = prepared(entries, gauge);
    v.sort_by_key(|z| {
        if primary_im {
            (quantize(z.im), quantize(z.re))
        } else {
            (quantize(z.re), quantize(z.im))
        }
    });
    v
}

/// Σ |Re õ − Re õ′| over entries sorted by real part (imaginary part
/// breaking ties).
pub fn r_metric(o1: &OverlapMatrix, o2: &OverlapMatrix) -> Result<f64, OverlapError> {
    r_metric_gauged(o1, o2, Gauge::Fixed)
}

pub fn r_metric_gauged(
    o1: &OverlapMatrix,
    o2: &OverlapMatrix,
    gauge: Gauge,
) -> Result<f64, OverlapError> {
    if o1.dim() != o2.dim() {
        return Err(OverlapError::DimensionMismatch(o1.dim(), o2.dim()));
    }
    let a = sorted_by(o1.entries(), gauge, false);
    let b = sorted_by(o2.entries(), gauge, false);
    Ok(a.iter().zip(&b).map(|(x, y)| (x.re - y.re).abs()).sum())
}

/// Σ |Im ô − Im ô′| over entries sorted by imaginary part (real part
/// breaking ties).
pub fn i_metric(o1: &OverlapMatrix, o2: &OverlapMatrix) -> Result<f64, OverlapError> {
    i_metric_gauged(o1, o2, Gauge::Fixed)
}

pub fn i_metric_gauged(
    o1: &OverlapMatrix,
    o2: &OverlapMatrix,
    gauge: Gauge,
) -> Result<f64, OverlapError> {
    if o1.dim() != o2.dim() {
        return Err(OverlapError::DimensionMismatch(o1.dim(), o2.dim()));
    }
    let a = sorted_by(o1.entries(), gauge, true);
    let b = sorted_by(o2.entries(), gauge, true);
    Ok(a.iter().zip(&b).map(|(x, y)| (x.im - y.im).abs()).sum())
}

/// Compares two overlap matrices as canonicalized sets of complex
/// numbers: both entry lists are sorted lexicographically (real part,
/// then imaginary part) and matched elementwise within `tol`. The report
/// also carries the R and I metrics.
pub fn overlap_compare(o1: &OverlapMatrix, o2: &OverlapMatrix, tol: f64) -> ComparisonReport {
    overlap_compare_with_method(o1, o2, tol, "walk1", Gauge::Fixed)
}

pub(crate) fn overlap_compare_with_method(
    o1: &OverlapMatrix,
    o2: &OverlapMatrix,
    tol: f64,
    method: &str,
    gauge: Gauge,
) -> ComparisonReport {
    if o1.dim() != o2.dim() {
        return ComparisonReport::dimension_mismatch(method);
    }
    let a = sorted_by(o1.entries(), gauge, false);
    let b = sorted_by(o2.entries(), gauge, false);
    let max_dev = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (x.re - y.re).abs().max((x.im - y.im).abs()))
        .fold(0.0, f64::max);
    let r = r_metric_gauged(o1, o2, gauge).expect("dimensions checked");
    let i = i_metric_gauged(o1, o2, gauge).expect("dimensions checked");
    ComparisonReport {
        method: method.to_string(),
        verdict: if max_dev <= tol {
            Verdict::NotDistinguished
        } else {
            Verdict::Distinguished
        },
        r_metric: r,
        i_metric: i,
        dimension_mismatch: false,
        multisets: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{unitary_evolution, SymmetricMatrix};

    fn toy_overlaps(seed: f64) -> OverlapMatrix {
        let m = SymmetricMatrix::from_fn(3, |i, j| {
            if i == j {
                0.0
            } else {
                -(1.0 + seed * (i + j) as f64)
            }
        });
        OverlapMatrix::new(unitary_evolution(&m, 1.0).unwrap())
    }

    #[test]
    fn self_comparison_is_silent_with_zero_metrics() {
        let o = toy_overlaps(0.1);
        let report = overlap_compare(&o, &o, 1e-10);
        assert_eq!(report.verdict, Verdict::NotDistinguished);
        assert_eq!(report.r_metric, 0.0);
        assert_eq!(report.i_metric, 0.0);
    }

    #[test]
    fn different_spectra_are_distinguished() {
        let o1 = toy_overlaps(0.0);
        let o2 = toy_overlaps(0.5);
        let report = overlap_compare(&o1, &o2, 1e-8);
        assert_eq!(report.verdict, Verdict::Distinguished);
        assert!(report.r_metric > 1e-3 || report.i_metric > 1e-3);
    }

    #[test]
    fn permuted_entries_give_zero_metrics() {
        // the metrics act on sorted sets, so any relabeling is invisible
        let o = toy_overlaps(0.3);
        let n = o.dim();
        let mut perm_entries = Vec::with_capacity(n * n);
        let p = [2usize, 0, 1];
        for i in 0..n {
            for j in 0..n {
                perm_entries.push(o.get(p[i], p[j]));
            }
        }
        let swapped = OverlapMatrix {
            m: crate::linalg::ComplexMatrix::from_raw(n, perm_entries),
        };
        assert_eq!(r_metric(&o, &swapped).unwrap(), 0.0);
        assert_eq!(i_metric(&o, &swapped).unwrap(), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_an_argument_error() {
        let o1 = toy_overlaps(0.1);
        let small = OverlapMatrix::new(
            unitary_evolution(&SymmetricMatrix::zero(2), 1.0).unwrap(),
        );
        assert_eq!(
            r_metric(&o1, &small),
            Err(OverlapError::DimensionMismatch(3, 2))
        );
        let report = overlap_compare(&o1, &small, 1e-8);
        assert_eq!(report.verdict, Verdict::Distinguished);
        assert!(report.dimension_mismatch);
    }

    #[test]
    fn rows_stay_normalized() {
        assert!(toy_overlaps(0.2).row_norm_defect() < 1e-9);
    }

    #[test]
    fn orientation_gauge_ignores_entrywise_signs() {
        let o = toy_overlaps(0.3);
        let flipped: Vec<Complex64> = o
            .entries()
            .iter()
            .enumerate()
            .map(|(k, z)| if k % 3 == 0 { -z } else { *z })
            .collect();
        let f = OverlapMatrix {
            m: crate::linalg::ComplexMatrix::from_raw(o.dim(), flipped),
        };
        assert!(r_metric_gauged(&o, &f, Gauge::OrientationFree).unwrap() < 1e-12);
        assert!(i_metric_gauged(&o, &f, Gauge::OrientationFree).unwrap() < 1e-12);
        // the fixed gauge sees the flips
        assert!(r_metric(&o, &f).unwrap() > 1e-3);
    }
}
