//! The classical relaxational-dynamics invariant.
//!
//! Each vertex starts at a corner of the unit simplex in N dimensions
//! (X(0) = I) and moves under pairwise forces determined by adjacency:
//! one force law along edges, optionally another between non-edges. After
//! integrating to time T, the multiset of squared inter-particle
//! distances, read off the Gram matrix S = X·Xᵀ, is the graph invariant.
//!
//! For the harmonic edge force the flow is linear, dX/dt = LX, and the
//! exact solution S = e^{2LT} is available through the eigensolver; the
//! general path is first-order Euler integration.

use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::{sym_matrix_function, LinalgError, SymmetricMatrix};
use crate::multiset::{canonical_multiset, multiset_equal, CanonicalMultiset};
use crate::report::{ComparisonReport, Verdict};

/// Multiset of the n² squared inter-particle distances (diagonal zeros
/// included).
pub type DistanceMultiset = CanonicalMultiset;

pub const DEFAULT_QUANTUM: f64 = 1e-9;
pub const DEFAULT_TOL: f64 = 1e-8;

/// Coordinates diverge past this magnitude abort the integration.
const BLOWUP_LIMIT: f64 = 1e150;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("invalid integrator config: {0}")]
    Config(String),
    #[error("coordinates diverged at integration step {step}")]
    Divergence { step: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Pairwise force law. Edge pairs always interact; whether non-edges do
/// depends on the kind.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Potential {
    /// Repulsive spring along edges only: F_a += (r_a − r_b), i.e. dX/dt = LX.
    Harmonic,
    /// −a·Σ|r_a−r_b|² + b·Σ|r_a−r_b|⁴ over connected pairs only (b ≥ 0).
    Quartic { a: f64, b: f64 },
    /// Edge force (r_a−r_b)/(1+|r_a−r_b|³); non-edges feel its negation.
    Saturating,
}

impl Potential {
    pub fn describe(&self) -> String {
        match self {
            Potential::Harmonic => "harmonic".to_string(),
            Potential::Quartic { a, b } => format!("quartic:{a},{b}"),
            Potential::Saturating => "saturating".to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    None,
    FrobeniusUnit,
}

/// First-order Euler settings: μ·dr/dt = F integrated from 0 to
/// `total_time` in steps of `step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub total_time: f64,
    pub step: f64,
    pub mobility: f64,
    pub normalization: Normalization,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            total_time: 1.0,
            step: 0.1,
            mobility: 1.0,
            normalization: Normalization::None,
        }
    }
}

impl IntegratorConfig {
    /// Number of Euler steps, after checking the config invariants
    /// (positive times, step dividing total_time to 1e-12).
    pub fn step_count(&self) -> Result<usize, ClassicalError> {
        if !(self.total_time.is_finite() && self.total_time > 0.0) {
            return Err(ClassicalError::Config(
                "total_time must be positive and finite".into(),
            ));
        }
        if !(self.step.is_finite() && self.step > 0.0 && self.step <= self.total_time) {
            return Err(ClassicalError::Config(
                "step must satisfy 0 < step <= total_time".into(),
            ));
        }
        if !(self.mobility.is_finite() && self.mobility > 0.0) {
            return Err(ClassicalError::Config("mobility must be positive".into()));
        }
        let ratio = self.total_time / self.step;
        let count = ratio.round();
        if (ratio - count).abs() > 1e-12 * ratio.max(1.0) {
            return Err(ClassicalError::Config(format!(
                "step {} does not divide total_time {} to an integer count",
                self.step, self.total_time
            )));
        }
        Ok(count as usize)
    }
}

/// Particle positions: row a holds the N coordinates of particle a.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionMatrix {
    n: usize,
    coords: Vec<f64>,
}

impl PositionMatrix {
    /// The simplex start X(0) = I.
    pub fn initial(n: usize) -> Self {
        let mut coords = vec![0.0; n * n];
        for a in 0..n {
            coords[a * n + a] = 1.0;
        }
        PositionMatrix { n, coords }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, a: usize) -> &[f64] {
        &self.coords[a * self.n..(a + 1) * self.n]
    }

    pub fn get(&self, a: usize, i: usize) -> f64 {
        self.coords[a * self.n + i]
    }

    fn frobenius_norm(&self) -> f64 {
        self.coords.iter().map(|&x| x * x).sum::<f64>().sqrt()
    }
}

/// Dot-product matrix S = X·Xᵀ.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix(SymmetricMatrix);

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.0.get(a, b)
    }

    pub fn as_symmetric(&self) -> &SymmetricMatrix {
        &self.0
    }

    pub fn from_symmetric(m: SymmetricMatrix) -> Self {
        GramMatrix(m)
    }
}

/// Graph Laplacian L = D − A. Rows sum to zero; the diagonal is the
/// degree sequence.
pub fn laplacian(g: &Graph) -> SymmetricMatrix {
    let n = g.n();
    SymmetricMatrix::from_fn(n, |i, j| {
        if i == j {
            g.degree(i) as f64
        } else {
            -f64::from(g.adj(i, j))
        }
    })
}

/// Exact harmonic endpoint: S = e^{2LT} in the no-normalization
/// convention, bypassing the integrator.
pub fn evolve_harmonic_closed_form(g: &Graph, t: f64) -> Result<GramMatrix, ClassicalError> {
    let l = laplacian(g);
    Ok(GramMatrix(sym_matrix_function(&l, |x| (2.0 * x * t).exp())?))
}

/// Euler-integrates the pairwise dynamics from X(0) = I and returns the
/// final positions (optionally Frobenius-normalized).
pub fn euler_integrate(
    g: &Graph,
    pot: &Potential,
    cfg: &IntegratorConfig,
) -> Result<PositionMatrix, ClassicalError> {
    if let Potential::Quartic { b, .. } = pot {
        if *b < 0.0 {
            return Err(ClassicalError::Config(
                "quartic coefficient b must be >= 0".into(),
            ));
        }
    }
    let steps = cfg.step_count()?;
    let n = g.n();
    let mut x = PositionMatrix::initial(n);
    let scale = cfg.step / cfg.mobility;
    let mut force = vec![0.0; n * n];
    let mut diff = vec![0.0; n];
    for step in 1..=steps {
        force.iter_mut().for_each(|f| *f = 0.0);
        for a in 0..n {
            for b in (a + 1)..n {
                let edge = g.has_edge(a, b);
                let coeff = match pot {
                    Potential::Harmonic => {
                        if !edge {
                            continue;
                        }
                        1.0
                    }
                    Potential::Quartic { a: ca, b: cb } => {
                        if !edge {
                            continue;
                        }
                        let d2 = squared_dist(x.row(a), x.row(b));
                        2.0 * ca - 4.0 * cb * d2
                    }
                    Potential::Saturating => {
                        let d2 = squared_dist(x.row(a), x.row(b));
                        let d3 = d2 * d2.sqrt();
                        let sign = if edge { 1.0 } else { -1.0 };
                        sign / (1.0 + d3)
                    }
                };
                let (ra, rb) = (x.row(a), x.row(b));
                for i in 0..n {
                    diff[i] = coeff * (ra[i] - rb[i]);
                }
                for i in 0..n {
                    force[a * n + i] += diff[i];
                    force[b * n + i] -= diff[i];
                }
            }
        }
        for (xi, fi) in x.coords.iter_mut().zip(&force) {
            *xi += scale * fi;
            if !xi.is_finite() || xi.abs() > BLOWUP_LIMIT {
                return Err(ClassicalError::Divergence { step });
            }
        }
    }
    if cfg.normalization == Normalization::FrobeniusUnit {
        let norm = x.frobenius_norm();
        if norm > 0.0 {
            x.coords.iter_mut().for_each(|c| *c /= norm);
        }
    }
    Ok(x)
}

fn squared_dist(ra: &[f64], rb: &[f64]) -> f64 {
    ra.iter()
        .zip(rb)
        .map(|(&p, &q)| (p - q) * (p - q))
        .sum()
}

/// S = X·Xᵀ, exactly symmetric (each dot product is computed once per
/// unordered pair).
pub fn gram(x: &PositionMatrix) -> GramMatrix {
    GramMatrix(SymmetricMatrix::from_fn(x.n(), |a, b| {
        x.row(a).iter().zip(x.row(b)).map(|(&p, &q)| p * q).sum()
    }))
}

/// All n² squared distances d²_ab = S_aa + S_bb − 2S_ab, diagonal zeros
/// included, canonicalized at the given grouping quantum.
pub fn squared_distances(s: &GramMatrix, quantum: f64) -> DistanceMultiset {
    let n = s.n();
    let mut vals = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            vals.push(s.get(a, a) + s.get(b, b) - 2.0 * s.get(a, b));
        }
    }
    canonical_multiset(&vals, quantum)
}

/// Full pipeline for one graph: integrate, Gram, distances.
pub fn distance_invariant(
    g: &Graph,
    pot: &Potential,
    cfg: &IntegratorConfig,
    quantum: f64,
) -> Result<DistanceMultiset, ClassicalError> {
    let x = euler_integrate(g, pot, cfg)?;
    Ok(squared_distances(&gram(&x), quantum))
}

/// Runs the pipeline on both graphs and compares the distance multisets
/// elementwise at `tol`. The report's `r_metric` carries the largest
/// elementwise deviation.
pub fn classical_compare(
    g1: &Graph,
    g2: &Graph,
    pot: &Potential,
    cfg: &IntegratorConfig,
    tol: f64,
    quantum: f64,
) -> Result<ComparisonReport, ClassicalError> {
    let method = format!("classical/{}", pot.describe());
    if g1.n() != g2.n() {
        return Ok(ComparisonReport::dimension_mismatch(method));
    }
    let d1 = distance_invariant(g1, pot, cfg, quantum)?;
    let d2 = distance_invariant(g2, pot, cfg, quantum)?;
    let verdict = if multiset_equal(&d1, &d2, tol) {
        Verdict::NotDistinguished
    } else {
        Verdict::Distinguished
    };
    Ok(ComparisonReport {
        method,
        verdict,
        r_metric: d1.max_deviation(&d2),
        i_metric: 0.0,
        dimension_mismatch: false,
        multisets: Some([d1.groups(), d2.groups()]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cycle4_plus_isolated, rook3, star5};

    fn single_edge() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn laplacian_of_single_edge() {
        let l = laplacian(&single_edge());
        assert_eq!(l.get(0, 0), 1.0);
        assert_eq!(l.get(0, 1), -1.0);
        assert_eq!(l.get(1, 1), 1.0);
    }

    #[test]
    fn laplacian_rows_sum_to_zero_and_diagonal_is_degree() {
        let g = star5();
        let l = laplacian(&g);
        for i in 0..5 {
            let row_sum: f64 = (0..5).map(|j| l.get(i, j)).sum();
            assert_eq!(row_sum, 0.0);
            assert_eq!(l.get(i, i), g.degree(i) as f64);
        }
        let r = laplacian(&rook3());
        for i in 0..9 {
            assert_eq!(r.get(i, i), 4.0);
        }
    }

    #[test]
    fn closed_form_on_single_edge_matches_hand_decomposition() {
        let s = evolve_harmonic_closed_form(&single_edge(), 1.0).unwrap();
        let e4 = 4.0f64.exp();
        assert!((s.get(0, 0) - (1.0 + e4) / 2.0).abs() < 1e-10 * e4);
        assert!((s.get(0, 1) - (1.0 - e4) / 2.0).abs() < 1e-10 * e4);
        let d = squared_distances(&s, DEFAULT_QUANTUM);
        // d²₁₂ = 2e⁴ ≈ 109.196
        let groups = d.groups();
        assert_eq!(d.len(), 4);
        assert!((groups.last().unwrap().value - 2.0 * e4).abs() < 1e-9 * e4);
    }

    #[test]
    fn edgeless_graph_freezes_at_the_simplex() {
        let g = Graph::empty(3);
        let s = evolve_harmonic_closed_form(&g, 3.7).unwrap();
        let d = squared_distances(&s, DEFAULT_QUANTUM);
        assert_eq!(d.multiplicity_pattern(), vec![3, 6]);
        let groups = d.groups();
        assert!(groups[0].value.abs() < 1e-12);
        assert!((groups[1].value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn one_harmonic_euler_step_is_i_plus_l() {
        let cfg = IntegratorConfig {
            total_time: 1.0,
            step: 1.0,
            ..Default::default()
        };
        let x = euler_integrate(&single_edge(), &Potential::Harmonic, &cfg).unwrap();
        assert_eq!(x.get(0, 0), 2.0);
        assert_eq!(x.get(0, 1), -1.0);
        assert_eq!(x.get(1, 0), -1.0);
        assert_eq!(x.get(1, 1), 2.0);
    }

    #[test]
    fn euler_error_shrinks_linearly_with_step() {
        // Richardson-style step-halving study against the exact positions
        // X(T) = e^{LT} on a single edge, where λ·step stays small enough
        // for the asymptotic first-order regime.
        let g = single_edge();
        let e2 = 2.0f64.exp();
        // e^{L} on [[1,-1],[-1,1]] = [[ (1+e²)/2, (1−e²)/2 ], …]
        let exact = [
            [(1.0 + e2) / 2.0, (1.0 - e2) / 2.0],
            [(1.0 - e2) / 2.0, (1.0 + e2) / 2.0],
        ];
        let err = |step: f64| -> f64 {
            let cfg = IntegratorConfig {
                total_time: 1.0,
                step,
                ..Default::default()
            };
            let x = euler_integrate(&g, &Potential::Harmonic, &cfg).unwrap();
            let mut worst = 0.0f64;
            for a in 0..2 {
                for i in 0..2 {
                    worst = worst.max((x.get(a, i) - exact[a][i]).abs());
                }
            }
            worst
        };
        let (e1, e2, e3) = (err(0.1), err(0.05), err(0.025));
        let order12 = (e1 / e2).log2();
        let order23 = (e2 / e3).log2();
        for order in [order12, order23] {
            assert!(
                (0.8..=1.2).contains(&order),
                "measured convergence order {order} outside [0.8, 1.2]"
            );
        }
    }

    #[test]
    fn gram_of_scaled_identity() {
        let x = PositionMatrix::initial(3);
        assert_eq!(gram(&x).as_symmetric(), &SymmetricMatrix::identity(3));
        let mut x2 = PositionMatrix::initial(3);
        x2.coords.iter_mut().for_each(|c| *c *= 2.0);
        let s = gram(&x2);
        for a in 0..3 {
            assert_eq!(s.get(a, a), 4.0);
        }
    }

    #[test]
    fn identity_gram_distances() {
        let s = gram(&PositionMatrix::initial(3));
        let d = squared_distances(&s, DEFAULT_QUANTUM);
        assert_eq!(d.multiplicity_pattern(), vec![3, 6]);
    }

    #[test]
    fn fig_pair_patterns_and_verdict() {
        // star: 3 distance groups {5, 12, 8}; cycle+isolated: 4 groups {5, 8, 4, 8}
        let cfg = IntegratorConfig {
            normalization: Normalization::FrobeniusUnit,
            ..Default::default()
        };
        let d_star =
            distance_invariant(&star5(), &Potential::Harmonic, &cfg, DEFAULT_QUANTUM).unwrap();
        let mut pat = d_star.multiplicity_pattern();
        pat.sort_unstable();
        assert_eq!(pat, vec![5, 8, 12]);

        let d_cyc = distance_invariant(
            &cycle4_plus_isolated(),
            &Potential::Harmonic,
            &cfg,
            DEFAULT_QUANTUM,
        )
        .unwrap();
        let mut pat = d_cyc.multiplicity_pattern();
        pat.sort_unstable();
        assert_eq!(pat, vec![4, 5, 8, 8]);

        let report = classical_compare(
            &star5(),
            &cycle4_plus_isolated(),
            &Potential::Harmonic,
            &cfg,
            DEFAULT_TOL,
            DEFAULT_QUANTUM,
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Distinguished);
    }

    #[test]
    fn closed_form_pattern_holds_without_normalization() {
        let s = evolve_harmonic_closed_form(&star5(), 1.0).unwrap();
        let d = squared_distances(&s, DEFAULT_QUANTUM);
        let mut pat = d.multiplicity_pattern();
        pat.sort_unstable();
        assert_eq!(pat, vec![5, 8, 12]);
    }

    #[test]
    fn euler_approaches_closed_form() {
        // error ≈ λ²·step·T/2 relatively, ~0.3% at this step for λ = 5
        let g = star5();
        let exact = evolve_harmonic_closed_form(&g, 1.0).unwrap();
        let cfg = IntegratorConfig {
            total_time: 1.0,
            step: 1.0 / 4096.0,
            ..Default::default()
        };
        let s = gram(&euler_integrate(&g, &Potential::Harmonic, &cfg).unwrap());
        for a in 0..5 {
            for b in 0..5 {
                let scale = 1.0 + exact.get(a, b).abs();
                assert!((s.get(a, b) - exact.get(a, b)).abs() < 1e-2 * scale);
            }
        }
    }

    #[test]
    fn blowup_reports_the_step_index() {
        let cfg = IntegratorConfig {
            total_time: 200.0,
            step: 1.0,
            ..Default::default()
        };
        match euler_integrate(&star5(), &Potential::Harmonic, &cfg) {
            Err(ClassicalError::Divergence { step }) => assert!(step > 0 && step < 200),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn config_validation_catches_bad_steps() {
        let cfg = IntegratorConfig {
            total_time: 1.0,
            step: 0.3,
            ..Default::default()
        };
        assert!(matches!(
            cfg.step_count(),
            Err(ClassicalError::Config(_))
        ));
        let cfg = IntegratorConfig {
            step: -0.1,
            ..Default::default()
        };
        assert!(matches!(cfg.step_count(), Err(ClassicalError::Config(_))));
    }

    #[test]
    fn saturating_and_quartic_run_on_the_rook_graph() {
        // the quartic force is stiff near the simplex start (pair force
        // coefficient −6 at d² = 2), so it needs a smaller Euler step
        let quartic_cfg = IntegratorConfig {
            step: 0.002,
            ..Default::default()
        };
        for (pot, cfg) in [
            (Potential::Quartic { a: 1.0, b: 1.0 }, quartic_cfg),
            (Potential::Saturating, IntegratorConfig::default()),
        ] {
            let report =
                classical_compare(&rook3(), &rook3(), &pot, &cfg, DEFAULT_TOL, DEFAULT_QUANTUM)
                    .unwrap();
            assert_eq!(report.verdict, Verdict::NotDistinguished, "{pot:?}");
            assert_eq!(report.r_metric, 0.0);
        }
    }

    #[test]
    fn stiff_quartic_at_coarse_step_diverges_with_step_index() {
        let cfg = IntegratorConfig::default();
        let pot = Potential::Quartic { a: 1.0, b: 1.0 };
        match euler_integrate(&rook3(), &pot, &cfg) {
            Err(ClassicalError::Divergence { step }) => assert!(step <= 10),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn vertex_count_mismatch_is_distinguished_without_running() {
        let report = classical_compare(
            &star5(),
            &single_edge(),
            &Potential::Harmonic,
            &IntegratorConfig::default(),
            DEFAULT_TOL,
            DEFAULT_QUANTUM,
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Distinguished);
        assert!(report.dimension_mismatch);
    }
}
