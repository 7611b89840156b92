//! The hybrid two-particle invariant.
//!
//! Two particles walk the graph together. The pair states |ij⟩ span a
//! basis of size N(N+1)/2 (bosons, double occupancy allowed) or N(N−1)/2
//! (hard-core bosons and fermions). The coupling matrix K = −⟨ij|H|kl⟩
//! over that basis extends the adjacency matrix to pair space; evolving
//! every pair state to time T and sorting the overlap entries yields the
//! R and I mismatch metrics. Either metric nonzero certifies
//! non-isomorphism, and this is the construction that separates
//! same-parameter strongly regular pairs where the classical and
//! single-particle invariants cannot.

use std::f64::consts::SQRT_2;

use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::{unitary_evolution, LinalgError, SymmetricMatrix};
use crate::overlap::{overlap_compare_with_method, Gauge, OverlapMatrix};
use crate::report::ComparisonReport;

pub use crate::overlap::{i_metric, i_metric_gauged, r_metric, r_metric_gauged, OverlapError};

/// Verdict threshold on max(R, I): far above eigensolver noise, far below
/// any observed genuine signal.
pub const DEFAULT_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwoParticleError {
    #[error("two-particle walk needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Exchange statistics of the two walkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistics {
    /// Soft-core bosons with an on-site Hubbard energy U.
    Boson,
    /// The U → ∞ limit: doubly-occupied states dropped.
    HardCoreBoson,
    /// Noninteracting spinless fermions.
    Fermion,
}

impl Statistics {
    pub fn label(&self) -> &'static str {
        match self {
            Statistics::Boson => "boson",
            Statistics::HardCoreBoson => "hcb",
            Statistics::Fermion => "fermion",
        }
    }
}

/// Ordered two-particle basis: lexicographic (i, j) with i ≤ j for
/// bosons, i < j otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairBasis {
    statistics: Statistics,
    pairs: Vec<(usize, usize)>,
}

impl PairBasis {
    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

pub fn pair_basis(n: usize, stats: Statistics) -> Result<PairBasis, TwoParticleError> {
    if n < 2 {
        return Err(TwoParticleError::TooFewVertices(n));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        let start = if stats == Statistics::Boson { i } else { i + 1 };
        for j in start..n {
            pairs.push((i, j));
        }
    }
    Ok(PairBasis {
        statistics: stats,
        pairs,
    })
}

/// K = −⟨ij|H|kl⟩ over the pair basis: hop amplitudes off the diagonal
/// and, for soft-core bosons, the Hubbard energy U on doubly-occupied
/// states. Entries are exact (integers and √2) before any evolution.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCoupling {
    basis: PairBasis,
    hubbard_u: f64,
    entries: SymmetricMatrix,
}

impl PairCoupling {
    pub fn basis(&self) -> &PairBasis {
        &self.basis
    }

    pub fn hubbard_u(&self) -> f64 {
        self.hubbard_u
    }

    pub fn entries(&self) -> &SymmetricMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Builds the coupling matrix for `g` under the given statistics. The
/// Hubbard energy `u` only enters for `Statistics::Boson`.
pub fn build_pair_coupling(
    g: &Graph,
    stats: Statistics,
    u: f64,
) -> Result<PairCoupling, TwoParticleError> {
    assert!(u.is_finite() && u >= 0.0, "Hubbard U must be finite and >= 0");
    let basis = pair_basis(g.n(), stats)?;
    let pairs = basis.pairs.clone();
    let delta = |a: usize, b: usize| -> f64 {
        if a == b {
            1.0
        } else {
            0.0
        }
    };
    let adj = |a: usize, b: usize| f64::from(g.adj(a, b));
    let entries = SymmetricMatrix::from_fn(pairs.len(), |p, q| {
        let (i, j) = pairs[p];
        let (k, l) = pairs[q];
        match stats {
            Statistics::Fermion => {
                delta(i, l) * adj(k, j) + delta(j, k) * adj(i, l)
                    - delta(i, k) * adj(j, l)
                    - delta(j, l) * adj(i, k)
            }
            Statistics::HardCoreBoson => {
                delta(i, l) * adj(k, j)
                    + delta(j, k) * adj(i, l)
                    + delta(i, k) * adj(j, l)
                    + delta(j, l) * adj(i, k)
            }
            Statistics::Boson => {
                let hop = delta(i, l) * adj(k, j)
                    + delta(j, k) * adj(i, l)
                    + delta(i, k) * adj(j, l)
                    + delta(j, l) * adj(i, k);
                match (i == j, k == l) {
                    (true, true) => u * delta(i, k),
                    (false, false) => hop,
                    // hop is 0 or 2 here, so the entry is exactly 0 or √2
                    _ => 0.5 * hop * SQRT_2,
                }
            }
        }
    });
    Ok(PairCoupling {
        basis,
        hubbard_u: if stats == Statistics::Boson { u } else { 0.0 },
        entries,
    })
}

/// Evolves every pair state to time T under H = −K and reads the overlap
/// matrix in the pair basis.
pub fn two_particle_overlaps(k: &PairCoupling, t: f64) -> Result<OverlapMatrix, TwoParticleError> {
    let minus_k = SymmetricMatrix::from_fn(k.dim(), |p, q| -k.entries.get(p, q));
    Ok(OverlapMatrix::new(unitary_evolution(&minus_k, t)?))
}

fn method_label(stats: Statistics, u: f64) -> String {
    match stats {
        Statistics::Boson => format!("two-particle/boson:u={u}"),
        _ => format!("two-particle/{}", stats.label()),
    }
}

/// The comparison gauge for a statistics choice: fermion pair states are
/// antisymmetric, so their overlap entries are defined only up to
/// orientation sign; bosonic states are symmetric and compare as-is.
pub fn comparison_gauge(stats: Statistics) -> Gauge {
    match stats {
        Statistics::Fermion => Gauge::OrientationFree,
        _ => Gauge::Fixed,
    }
}

/// Full pairwise comparison: builds both coupling matrices, evolves,
/// computes R and I, and distinguishes when either exceeds `threshold`.
pub fn two_particle_compare(
    g1: &Graph,
    g2: &Graph,
    stats: Statistics,
    u: f64,
    t: f64,
    threshold: f64,
) -> Result<ComparisonReport, TwoParticleError> {
    let method = method_label(stats, u);
    if g1.n() != g2.n() {
        return Ok(ComparisonReport::dimension_mismatch(method));
    }
    let o1 = two_particle_overlaps(&build_pair_coupling(g1, stats, u)?, t)?;
    let o2 = two_particle_overlaps(&build_pair_coupling(g2, stats, u)?, t)?;
    Ok(overlap_compare_with_method(
        &o1,
        &o2,
        threshold,
        &method,
        comparison_gauge(stats),
    ))
}

/// One point of the Hubbard-U sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub u: f64,
    pub r_metric: f64,
    pub i_metric: f64,
}

/// Boson comparison at each U in turn; output order matches input order.
pub fn u_sweep(
    g1: &Graph,
    g2: &Graph,
    u_values: &[f64],
    t: f64,
) -> Result<Vec<SweepPoint>, TwoParticleError> {
    let mut out = Vec::with_capacity(u_values.len());
    for &u in u_values {
        let report = two_particle_compare(g1, g2, Statistics::Boson, u, t, DEFAULT_THRESHOLD)?;
        out.push(SweepPoint {
            u,
            r_metric: report.r_metric,
            i_metric: report.i_metric,
        });
    }
    Ok(out)
}
