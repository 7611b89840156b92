//! The three-dimensional commutative matrix algebra spanned by {I, J, L}
//! for a strongly regular graph, and the structural prediction it makes
//! for the classical invariant.
//!
//! For an SRG, A² collapses onto {I, A, J}, so every polynomial in the
//! Laplacian — in particular anything a step-by-step integrator can
//! produce from X(0) = I — stays inside span{I, J, L}. The span depends
//! only on the parameters (N, k, λ, μ), never on which same-parameter
//! graph supplied L. An element fI + gJ + hL therefore pins the entire
//! distance multiset down to three numbers, which is why the classical
//! pipeline cannot separate same-parameter pairs.

use thiserror::Error;

use crate::classical::DistanceMultiset;
use crate::graph::{Graph, SrgParams};
use crate::linalg::SymmetricMatrix;
use crate::multiset::canonical_multiset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("graph has {got} vertices but parameters say {want}")]
    SizeMismatch { got: usize, want: usize },
    #[error("elements live over different parameter sets: {0} vs {1}")]
    ParamMismatch(SrgParams, SrgParams),
}

/// Coordinates of fI + gJ + hL over a fixed parameter set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraElement {
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub params: SrgParams,
}

/// One failed entry of a matrix identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    /// Which identity failed: "A2", "AJ", "JA", or "JJ".
    pub identity: &'static str,
    pub row: usize,
    pub col: usize,
    pub got: i64,
    pub want: i64,
}

/// Result of checking the defining identities entrywise in exact integer
/// arithmetic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks A² = kI + λA + μ(J − I − A), AJ = JA = kJ, and J² = NJ
/// entrywise with integer arithmetic. Wrong λ or μ shows up as a
/// violation list, not an error; only a size mismatch is an argument
/// error.
pub fn verify_srg_identities(g: &Graph, p: SrgParams) -> Result<IdentityReport, AlgebraError> {
    let n = g.n();
    if n != p.n {
        return Err(AlgebraError::SizeMismatch { got: n, want: p.n });
    }
    let (k, lambda, mu) = (p.k as i64, p.lambda as i64, p.mu as i64);
    let mut report = IdentityReport::default();

    for a in 0..n {
        for b in 0..n {
            let a2 = g.common_neighbors(a, b) as i64;
            let (i_ab, adj_ab) = (i64::from(a == b), i64::from(g.adj(a, b)));
            let want = k * i_ab + lambda * adj_ab + mu * (1 - i_ab - adj_ab);
            if a2 != want {
                report.violations.push(IdentityViolation {
                    identity: "A2",
                    row: a,
                    col: b,
                    got: a2,
                    want,
                });
            }
        }
    }
    // (AJ)_ab = deg(a), (JA)_ab = deg(b), (J²)_ab = N
    for a in 0..n {
        let deg = g.degree(a) as i64;
        for b in 0..n {
            if deg != k {
                report.violations.push(IdentityViolation {
                    identity: "AJ",
                    row: a,
                    col: b,
                    got: deg,
                    want: k,
                });
            }
            let deg_b = g.degree(b) as i64;
            if deg_b != k {
                report.violations.push(IdentityViolation {
                    identity: "JA",
                    row: a,
                    col: b,
                    got: deg_b,
                    want: k,
                });
            }
            let nn = n as i64;
            if nn != p.n as i64 {
                report.violations.push(IdentityViolation {
                    identity: "JJ",
                    row: a,
                    col: b,
                    got: nn,
                    want: p.n as i64,
                });
            }
        }
    }
    Ok(report)
}

/// The closed product rule of the algebra. Coefficients depend only on
/// the parameters:
///
/// ```text
/// f″ = f f′ − [k² − k(λ − μ + 1) + μ] h h′
/// g″ = f g′ + g f′ + N g g′ + μ h h′
/// h″ = f h′ + h f′ + (2k + μ − λ) h h′
/// ```
pub fn algebra_product(
    r1: &AlgebraElement,
    r2: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    if r1.params != r2.params {
        return Err(AlgebraError::ParamMismatch(r1.params, r2.params));
    }
    let p = r1.params;
    let (n, k, lambda, mu) = (p.n as f64, p.k as f64, p.lambda as f64, p.mu as f64);
    let hh = r1.h * r2.h;
    Ok(AlgebraElement {
        f: r1.f * r2.f - (k * k - k * (lambda - mu + 1.0) + mu) * hh,
        g: r1.f * r2.g + r1.g * r2.f + n * r1.g * r2.g + mu * hh,
        h: r1.f * r2.h + r1.h * r2.f + (2.0 * k + mu - lambda) * hh,
        params: p,
    })
}

/// Embeds the element as the dense matrix fI + gJ + hL over `g`'s
/// Laplacian.
pub fn to_matrix(e: &AlgebraElement, g: &Graph) -> SymmetricMatrix {
    let k = e.params.k as f64;
    SymmetricMatrix::from_fn(g.n(), |i, j| {
        if i == j {
            e.f + e.g + e.h * k
        } else {
            e.g - e.h * f64::from(g.adj(i, j))
        }
    })
}

/// Attempts to write `m` as fI + gJ + hL. The three coefficients are
/// solved from the lexicographically first diagonal entry, edge entry,
/// and non-edge entry, then every entry is validated against the
/// reconstruction; any deviation above `tol` returns `None`.
pub fn decompose_in_algebra(
    m: &SymmetricMatrix,
    g: &Graph,
    p: SrgParams,
    tol: f64,
) -> Option<AlgebraElement> {
    if m.n() != g.n() || g.n() != p.n {
        return None;
    }
    let n = g.n();
    let first_pair = |want_edge: bool| -> Option<(usize, usize)> {
        for a in 0..n {
            for b in (a + 1)..n {
                if g.has_edge(a, b) == want_edge {
                    return Some((a, b));
                }
            }
        }
        None
    };
    let (ea, eb) = first_pair(true)?;
    let (na, nb) = first_pair(false)?;

    let g_coef = m.get(na, nb);
    let h_coef = g_coef - m.get(ea, eb);
    let f_coef = m.get(0, 0) - g_coef - p.k as f64 * h_coef;
    let candidate = AlgebraElement {
        f: f_coef,
        g: g_coef,
        h: h_coef,
        params: p,
    };
    let recon = to_matrix(&candidate, g);
    for i in 0..n {
        for j in 0..n {
            if (m.get(i, j) - recon.get(i, j)).abs() > tol {
                return None;
            }
        }
    }
    Some(candidate)
}

/// The distance multiset an algebra element forces: N zeros, N(N−k−1)
/// copies of 2(f + kh), and Nk copies of 2(f + kh) + 2h. The J
/// coefficient cancels out of every distance.
pub fn predicted_distance_multiset(e: &AlgebraElement, quantum: f64) -> DistanceMultiset {
    let p = e.params;
    let base = 2.0 * (e.f + p.k as f64 * e.h);
    let mut vals = Vec::with_capacity(p.n * p.n);
    vals.extend(std::iter::repeat_n(0.0, p.n));
    vals.extend(std::iter::repeat_n(base, p.n * (p.n - p.k - 1)));
    vals.extend(std::iter::repeat_n(base + 2.0 * e.h, p.n * p.k));
    canonical_multiset(&vals, quantum)
}
