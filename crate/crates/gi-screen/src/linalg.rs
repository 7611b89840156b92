//! Deterministic dense symmetric eigendecomposition and the matrix
//! functions built on it.
//!
//! The eigensolver is Householder tridiagonalization followed by the
//! implicit-shift QL iteration, both with fixed deterministic loop
//! structure, so identical input bits always produce identical output
//! bits. That is what makes the downstream invariants reproducible run
//! to run. Accuracy is more than sufficient for the n ≤ ~500 matrices
//! arising here, including the heavily degenerate spectra of
//! strongly-regular-graph couplings (where plain cyclic Jacobi stalls in
//! linear-rate churn between near-equal diagonal entries).

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("QL iteration did not converge within {0} steps")]
    NoConvergence(usize),
}

/// Dense real symmetric matrix, row-major. Construction symmetrizes, so
/// `get(a, b) == get(b, a)` holds exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0);
        SymmetricMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from `f(i, j)` evaluated once per unordered pair (i ≤ j).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    /// Symmetrizes an arbitrary square array: both (i,j) and (j,i) receive
    /// the average of the two input entries.
    pub fn symmetrized(n: usize, raw: &[f64]) -> Self {
        assert_eq!(raw.len(), n * n);
        Self::from_fn(n, |i, j| 0.5 * (raw[i * n + j] + raw[j * n + i]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|&x| x * x).sum::<f64>().sqrt()
    }

    fn check_finite(&self) -> Result<(), LinalgError> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.data[i * self.n + j].is_finite() {
                    return Err(LinalgError::NonFinite(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Result of `sym_eig`: eigenvalues in non-decreasing order with matching
/// eigenvectors. Vectors are stored by row internally; `vector_entry(i, k)`
/// is component i of eigenvector k.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors_t: Vec<f64>, // row k = eigenvector k
    n: usize,
}

impl EigenSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors_t[k * self.n..(k + 1) * self.n]
    }

    pub fn vector_entry(&self, i: usize, k: usize) -> f64 {
        self.vectors_t[k * self.n + i]
    }

    /// Σ_k w(λ_k) v_k v_kᵀ for a real weight function.
    pub fn weighted_outer_sum(&self, weight: impl Fn(f64) -> f64) -> SymmetricMatrix {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for k in 0..n {
            let w = weight(self.values[k]);
            if w == 0.0 {
                continue;
            }
            let v = self.eigenvector(k);
            for i in 0..n {
                let wi = w * v[i];
                let row = &mut out[i * n..(i + 1) * n];
                for (j, rj) in row.iter_mut().enumerate() {
                    *rj += wi * v[j];
                }
            }
        }
        SymmetricMatrix::symmetrized(n, &out)
    }
}

const MAX_QL_ITERATIONS: usize = 50;

/// Deterministic eigendecomposition of a real symmetric matrix:
/// Householder reduction to tridiagonal form, then implicit-shift QL with
/// accumulated transformations. Fixed loop order makes the output a pure
/// function of the input bits.
pub fn sym_eig(m: &SymmetricMatrix) -> Result<EigenSystem, LinalgError> {
    m.check_finite()?;
    let n = m.n();
    let mut z = m.data.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut z, n, &mut d, &mut e);
    tql2(&mut z, n, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| d[p].total_cmp(&d[q]).then(p.cmp(&q)));
    let values: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    // z holds eigenvector k in column k; transpose into rows
    let mut vectors_t = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        for i in 0..n {
            vectors_t[new_k * n + i] = z[i * n + old_k];
        }
    }
    Ok(EigenSystem {
        values,
        vectors_t,
        n,
    })
}

/// Householder reduction of a real symmetric matrix to tridiagonal form.
/// On return `d` holds the diagonal, `e` the subdiagonal in e[1..], and
/// `a` the accumulated orthogonal transformation (eigenvector seed).
fn tred2(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = a[i * n..i * n + l + 1].iter().map(|x| x.abs()).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    a[j * n + i] = a[i * n + j] / h;
                    let mut g_acc = 0.0;
                    for k in 0..=j {
                        g_acc += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g_acc += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[i * n + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[i * n + k] * a[k * n + j];
                }
                for k in 0..i {
                    a[k * n + j] -= g * a[k * n + i];
                }
            }
        }
        d[i] = a[i * n + i];
        a[i * n + i] = 1.0;
        for j in 0..i {
            a[j * n + i] = 0.0;
            a[i * n + j] = 0.0;
        }
    }
}

fn pythag(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

/// Implicit-shift QL iteration on a tridiagonal matrix with eigenvector
/// accumulation into the columns of `z`.
fn tql2(z: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) -> Result<(), LinalgError> {
    if n == 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    // Deflation needs both scales: the local diagonal pair (so couplings
    // between large near-equal diagonals deflate) and the matrix norm
    // (so rounding noise next to near-zero diagonals deflates too).
    let scale = (0..n)
        .map(|i| d[i].abs() + e[i].abs())
        .fold(0.0f64, f64::max);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd.max(scale) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(LinalgError::NoConvergence(MAX_QL_ITERATIONS));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = pythag(g, 1.0);
            let sign_r = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = pythag(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    f = z[k * n + i + 1];
                    z[k * n + i + 1] = s * z[k * n + i] + c * f;
                    z[k * n + i] = c * z[k * n + i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Applies a scalar function to a symmetric matrix through its spectrum:
/// V · diag(f(λ)) · Vᵀ.
pub fn sym_matrix_function(
    m: &SymmetricMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<SymmetricMatrix, LinalgError> {
    Ok(sym_eig(m)?.weighted_outer_sum(f))
}

/// Dense complex square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    #[cfg(test)]
    pub(crate) fn from_raw(n: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), n * n);
        ComplexMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// max |(E E† − I)_ij|, the unitarity defect.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::ZERO;
                for k in 0..n {
                    acc += self.data[i * n + k] * self.data[j * n + k].conj();
                }
                let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }
}

/// e^{−iMt} for a real symmetric M, computed through the eigensystem:
/// V · diag(e^{−iλt}) · Vᵀ. Unitary by construction up to rounding.
pub fn unitary_evolution(m: &SymmetricMatrix, t: f64) -> Result<ComplexMatrix, LinalgError> {
    assert!(t.is_finite(), "evolution time must be finite");
    let eig = sym_eig(m)?;
    let n = m.n();
    let mut re = vec![0.0; n * n];
    let mut im = vec![0.0; n * n];
    for k in 0..n {
        let phase = -eig.values()[k] * t;
        let (wi, wr) = phase.sin_cos();
        let v = eig.eigenvector(k);
        for i in 0..n {
            let ri = wr * v[i];
            let si = wi * v[i];
            let row_re = &mut re[i * n..(i + 1) * n];
            let row_im = &mut im[i * n..(i + 1) * n];
            for j in 0..n {
                row_re[j] += ri * v[j];
                row_im[j] += si * v[j];
            }
        }
    }
    // exact symmetrization keeps E bit-symmetric, matching e^{−iMt} = (e^{−iMt})ᵀ
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
            data.push(Complex64::new(
                0.5 * (re[lo * n + hi] + re[hi * n + lo]),
                0.5 * (im[lo * n + hi] + im[hi * n + lo]),
            ));
        }
    }
    Ok(ComplexMatrix { n, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path2() -> SymmetricMatrix {
        SymmetricMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { -1.0 })
    }

    /// Laplacian of the 5-vertex star with the center last.
    fn star_laplacian() -> SymmetricMatrix {
        SymmetricMatrix::from_fn(5, |i, j| match (i, j) {
            (i, j) if i == j && i == 4 => 4.0,
            (i, j) if i == j => 1.0,
            (_, 4) => -1.0,
            _ => 0.0,
        })
    }

    fn reconstruct(eig: &EigenSystem) -> SymmetricMatrix {
        eig.weighted_outer_sum(|x| x)
    }

    #[test]
    fn path_laplacian_has_analytic_spectrum() {
        let eig = sym_eig(&path2()).unwrap();
        assert!((eig.values()[0] - 0.0).abs() < 1e-12);
        assert!((eig.values()[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn star_laplacian_spectrum_is_0_1_1_1_5() {
        // characteristic polynomial of the K_{1,4} Laplacian: x(x-1)^3(x-5)
        let eig = sym_eig(&star_laplacian()).unwrap();
        let want = [0.0, 1.0, 1.0, 1.0, 5.0];
        for (got, want) in eig.values().iter().zip(want) {
            assert!((got - want).abs() < 1e-10, "got {got}, want {want}");
        }
    }

    #[test]
    fn eigenvectors_are_orthonormal_and_reconstruct() {
        let m = star_laplacian();
        let eig = sym_eig(&m).unwrap();
        let n = m.n();
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = (0..n)
                    .map(|i| eig.vector_entry(i, a) * eig.vector_entry(i, b))
                    .sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-10);
            }
        }
        let rec = reconstruct(&eig);
        for i in 0..n {
            for j in 0..n {
                assert!((rec.get(i, j) - m.get(i, j)).abs() < 1e-9 * (1.0 + m.max_abs()));
            }
        }
    }

    #[test]
    fn identity_function_reproduces_the_matrix() {
        let m = star_laplacian();
        let f = sym_matrix_function(&m, |x| x).unwrap();
        let tol = 1e-9 * (1.0 + m.max_abs());
        for i in 0..5 {
            for j in 0..5 {
                assert!((f.get(i, j) - m.get(i, j)).abs() < tol);
            }
        }
    }

    #[test]
    fn exp_of_path_laplacian_matches_rank_one_decomposition() {
        // exp(2x) on [[1,-1],[-1,1]]: eigenpair (0, (1,1)/√2) and (2, (1,-1)/√2)
        // gives [[(1+e⁴)/2, (1−e⁴)/2], [(1−e⁴)/2, (1+e⁴)/2]].
        let s = sym_matrix_function(&path2(), |x| (2.0 * x).exp()).unwrap();
        let e4 = 4.0f64.exp();
        assert!((s.get(0, 0) - (1.0 + e4) / 2.0).abs() < 1e-10 * e4);
        assert!((s.get(0, 1) - (1.0 - e4) / 2.0).abs() < 1e-10 * e4);
        assert!((s.get(1, 0) - s.get(0, 1)).abs() == 0.0);
    }

    #[test]
    fn non_finite_entries_are_rejected() {
        let mut m = SymmetricMatrix::zero(2);
        m.set_sym(0, 1, f64::NAN);
        assert!(matches!(sym_eig(&m), Err(LinalgError::NonFinite(0, 1))));
    }

    #[test]
    fn evolution_at_t_zero_is_the_identity() {
        let e = unitary_evolution(&star_laplacian(), 0.0).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { Complex64::ONE } else { Complex64::ZERO };
                assert!((e.get(i, j) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_hamiltonian_has_no_dynamics() {
        let e = unitary_evolution(&SymmetricMatrix::zero(3), 7.25).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { Complex64::ONE } else { Complex64::ZERO };
                assert!((e.get(i, j) - want).norm() < 1e-12);
            }
        }
    }

    /// Truncated Taylor series of e^{−iMt}, an oracle independent of the
    /// eigendecomposition path.
    fn taylor_evolution(m: &SymmetricMatrix, t: f64, terms: usize) -> Vec<Complex64> {
        let n = m.n();
        let mut result = vec![Complex64::ZERO; n * n];
        let mut term = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            result[i * n + i] = Complex64::ONE;
            term[i * n + i] = Complex64::ONE;
        }
        let factor = Complex64::new(0.0, -t);
        for step in 1..=terms {
            let mut next = vec![Complex64::ZERO; n * n];
            for i in 0..n {
                for k in 0..n {
                    let lhs = term[i * n + k];
                    if lhs == Complex64::ZERO {
                        continue;
                    }
                    for j in 0..n {
                        next[i * n + j] += lhs * m.get(k, j);
                    }
                }
            }
            for x in next.iter_mut() {
                *x *= factor / step as f64;
            }
            for (r, x) in result.iter_mut().zip(&next) {
                *r += x;
            }
            term = next;
        }
        result
    }

    #[test]
    fn single_bond_transfers_fully_at_quarter_period() {
        // H = -A on one edge; at t = π/2 the walker has moved across.
        let h = SymmetricMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { -1.0 });
        let t = std::f64::consts::FRAC_PI_2;
        let e = unitary_evolution(&h, t).unwrap();
        assert!((e.get(0, 1).norm() - 1.0).abs() < 1e-12);

        let oracle = taylor_evolution(&h, t, 40);
        for i in 0..2 {
            for j in 0..2 {
                assert!((e.get(i, j) - oracle[i * 2 + j]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn evolution_matches_taylor_oracle_on_star() {
        let h = star_laplacian();
        let e = unitary_evolution(&h, 0.7).unwrap();
        let oracle = taylor_evolution(&h, 0.7, 60);
        for i in 0..5 {
            for j in 0..5 {
                assert!((e.get(i, j) - oracle[i * 5 + j]).norm() < 1e-10);
            }
        }
        assert!(e.unitarity_defect() < 1e-9);
    }

    #[test]
    fn evolution_satisfies_the_group_property() {
        let h = star_laplacian();
        let (s, t) = (0.4, 0.9);
        let es = unitary_evolution(&h, s).unwrap();
        let et = unitary_evolution(&h, t).unwrap();
        let est = unitary_evolution(&h, s + t).unwrap();
        let n = h.n();
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::ZERO;
                for k in 0..n {
                    acc += es.get(i, k) * et.get(k, j);
                }
                assert!((acc - est.get(i, j)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn identical_inputs_give_bit_identical_results() {
        let m = star_laplacian();
        let a = sym_eig(&m).unwrap();
        let b = sym_eig(&m).unwrap();
        assert_eq!(a.values(), b.values());
        assert_eq!(a.vectors_t, b.vectors_t);
        let ea = unitary_evolution(&m, 1.0).unwrap();
        let eb = unitary_evolution(&m, 1.0).unwrap();
        assert_eq!(ea.entries(), eb.entries());
    }
}
