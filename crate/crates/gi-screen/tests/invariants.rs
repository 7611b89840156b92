//! Randomized property suites over the module invariants: permutation
//! covariance, algebra laws, eigensolver accuracy against independent
//! oracles, and format round-trips.

use std::path::PathBuf;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use gi_screen::algebra::{algebra_product, decompose_in_algebra, to_matrix, AlgebraElement};
use gi_screen::corpus::{corpus, CorpusEntry};
use gi_screen::graph::{apply_permutation, detect_srg, Graph, PermutationWitness};
use gi_screen::graph6::{encode_graph6, parse_graph6};
use gi_screen::linalg::{sym_eig, sym_matrix_function, SymmetricMatrix};
use gi_screen::two_particle::{build_pair_coupling, Statistics};
use gi_screen::walk::single_overlaps;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/corpus")
}

fn full_corpus() -> Vec<CorpusEntry> {
    corpus(Some(data_dir().as_path())).expect("bundled corpus loads")
}

fn corpus_graphs() -> Vec<(String, Graph)> {
    full_corpus()
        .into_iter()
        .flat_map(|e| {
            let name = e.name.clone();
            e.graphs
                .into_iter()
                .enumerate()
                .map(move |(i, g)| (format!("{name}:{}", ["a", "b"][i]), g))
        })
        .collect()
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> PermutationWitness {
    let mut mapping: Vec<usize> = (0..n).collect();
    mapping.shuffle(rng);
    PermutationWitness::new(mapping).unwrap()
}

fn random_graph(n: usize, edge_prob: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.random_bool(edge_prob) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

#[test]
fn bundled_srg_parameters_satisfy_the_counting_identity() {
    for (name, g) in corpus_graphs() {
        if let Some(p) = detect_srg(&g) {
            assert!(p.feasibility_holds(), "{name}: {p} fails k(k-l-1)=(n-k-1)mu");
        }
    }
}

#[test]
fn srg_detection_is_invariant_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, g) in corpus_graphs() {
        let expected = detect_srg(&g);
        for _ in 0..100 {
            let p = random_permutation(g.n(), &mut rng);
            let relabeled = apply_permutation(&g, &p).unwrap();
            assert_eq!(detect_srg(&relabeled), expected, "{name}");
        }
    }
}

#[test]
fn graph6_round_trips_on_a_thousand_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let n = rng.random_range(1..=40);
        let g = random_graph(n, rng.random_range(0.0..=1.0), &mut rng);
        let encoded = encode_graph6(&g);
        assert_eq!(parse_graph6(&encoded).unwrap(), g);
    }
}

/// Independent graph6 decoder for cross-checking: reads the payload as an
/// explicit bit vector instead of the incremental bit walk used by the
/// library.
fn reference_graph6_decode(text: &str) -> Graph {
    let bytes = text.trim_end().as_bytes();
    let n = (bytes[0] - 63) as usize;
    let bits: Vec<bool> = bytes[1..]
        .iter()
        .flat_map(|&b| (0..6).rev().map(move |k| (b - 63) >> k & 1 == 1))
        .collect();
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                g.add_edge(i, j).unwrap();
            }
            idx += 1;
        }
    }
    g
}

#[test]
fn graph6_decoder_agrees_with_an_independent_reference() {
    assert_eq!(
        parse_graph6("D?{").unwrap(),
        reference_graph6_decode("D?{")
    );
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let n = rng.random_range(2..=30);
        let g = random_graph(n, 0.4, &mut rng);
        let encoded = encode_graph6(&g);
        assert_eq!(parse_graph6(&encoded).unwrap(), reference_graph6_decode(&encoded));
    }
}

#[test]
fn eigenvalue_sum_matches_trace_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..500 {
        let n = rng.random_range(1..=40);
        let m = SymmetricMatrix::from_fn(n, |_, _| rng.random_range(-3.0..3.0));
        let eig = sym_eig(&m).unwrap();
        let trace: f64 = (0..n).map(|i| m.get(i, i)).sum();
        let sum: f64 = eig.values().iter().sum();
        assert!(
            (trace - sum).abs() <= 1e-9 * n as f64 * (1.0 + m.max_abs()),
            "n={n}: trace {trace} vs eigenvalue sum {sum}"
        );
    }
}

/// Scaling-and-squaring matrix exponential, independent of the
/// eigendecomposition path.
fn expm_oracle(m: &SymmetricMatrix) -> Vec<f64> {
    let n = m.n();
    let norm = m.max_abs() * n as f64;
    let squarings = norm.log2().ceil().max(0.0) as u32 + 1;
    let scale = 0.5f64.powi(squarings as i32);
    let mul = |a: &[f64], b: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += aik * b[k * n + j];
                }
            }
        }
        out
    };
    // Taylor series on the scaled matrix
    let mut result = vec![0.0; n * n];
    let mut term = vec![0.0; n * n];
    for i in 0..n {
        result[i * n + i] = 1.0;
        term[i * n + i] = 1.0;
    }
    let scaled: Vec<f64> = m.as_slice().iter().map(|&x| x * scale).collect();
    for step in 1..=24 {
        term = mul(&term, &scaled);
        term.iter_mut().for_each(|x| *x /= step as f64);
        for (r, t) in result.iter_mut().zip(&term) {
            *r += t;
        }
    }
    for _ in 0..squarings {
        result = mul(&result, &result);
    }
    result
}

#[test]
fn spectral_exponential_matches_scaling_and_squaring() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let n = 20;
        let raw = SymmetricMatrix::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        // rescale to spectral radius <= 5
        let radius = sym_eig(&raw)
            .unwrap()
            .values()
            .iter()
            .fold(0.0f64, |m, &x| m.max(x.abs()));
        let m = SymmetricMatrix::from_fn(n, |i, j| raw.get(i, j) * 5.0 / radius.max(1.0));
        let spectral = sym_matrix_function(&m, f64::exp).unwrap();
        let oracle = expm_oracle(&m);
        let scale = oracle.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        for i in 0..n {
            for j in 0..n {
                let diff = (spectral.get(i, j) - oracle[i * n + j]).abs();
                assert!(diff <= 1e-8 * scale, "({i},{j}): diff {diff:.3e}");
            }
        }
    }
}

#[test]
fn algebra_is_commutative_and_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let params: Vec<_> = corpus_graphs()
        .iter()
        .filter_map(|(_, g)| detect_srg(g))
        .collect();
    assert!(params.len() >= 5, "expected several bundled SRGs");
    for p in params {
        for _ in 0..200 {
            let el = |rng: &mut ChaCha8Rng| AlgebraElement {
                f: rng.random_range(-2.0..2.0),
                g: rng.random_range(-2.0..2.0),
                h: rng.random_range(-2.0..2.0),
                params: p,
            };
            let (r1, r2, r3) = (el(&mut rng), el(&mut rng), el(&mut rng));
            let ab = algebra_product(&r1, &r2).unwrap();
            let ba = algebra_product(&r2, &r1).unwrap();
            let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * (1.0 + x.abs().max(y.abs()));
            assert!(close(ab.f, ba.f) && close(ab.g, ba.g) && close(ab.h, ba.h));
            let ab_c = algebra_product(&ab, &r3).unwrap();
            let bc = algebra_product(&r2, &r3).unwrap();
            let a_bc = algebra_product(&r1, &bc).unwrap();
            assert!(close(ab_c.f, a_bc.f) && close(ab_c.g, a_bc.g) && close(ab_c.h, a_bc.h));
        }
    }
}

#[test]
fn algebra_product_is_faithful_to_matrix_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, g) in corpus_graphs() {
        let Some(p) = detect_srg(&g) else { continue };
        let n = g.n();
        for _ in 0..10 {
            let el = |rng: &mut ChaCha8Rng| AlgebraElement {
                f: rng.random_range(-2.0..2.0),
                g: rng.random_range(-2.0..2.0),
                h: rng.random_range(-2.0..2.0),
                params: p,
            };
            let (r1, r2) = (el(&mut rng), el(&mut rng));
            let product = algebra_product(&r1, &r2).unwrap();
            let (m1, m2) = (to_matrix(&r1, &g), to_matrix(&r2, &g));
            let mut raw = vec![0.0; n * n];
            for i in 0..n {
                for k in 0..n {
                    let v = m1.get(i, k);
                    for j in 0..n {
                        raw[i * n + j] += v * m2.get(k, j);
                    }
                }
            }
            let matrix_product = SymmetricMatrix::symmetrized(n, &raw);
            let decomposed = decompose_in_algebra(&matrix_product, &g, p, 1e-7 * (1.0 + matrix_product.max_abs()))
                .unwrap_or_else(|| panic!("{name}: matrix product left the algebra"));
            let close = |x: f64, y: f64| (x - y).abs() <= 1e-8 * (1.0 + x.abs().max(y.abs()));
            assert!(close(decomposed.f, product.f), "{name} f");
            assert!(close(decomposed.g, product.g), "{name} g");
            assert!(close(decomposed.h, product.h), "{name} h");
        }
    }
}

#[test]
fn walk_overlaps_conjugate_exactly_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let entries = full_corpus();
    let (star, _) = gi_screen::corpus::isospectral_pair();
    let rook = entries
        .iter()
        .find(|e| e.name == "L2-3")
        .and_then(|e| e.single())
        .unwrap()
        .clone();
    for g in [star, rook] {
        let o = single_overlaps(&g, 1.0).unwrap();
        for _ in 0..50 {
            let p = random_permutation(g.n(), &mut rng);
            let relabeled = apply_permutation(&g, &p).unwrap();
            let op = single_overlaps(&relabeled, 1.0).unwrap();
            for i in 0..g.n() {
                for j in 0..g.n() {
                    let diff = (op.get(p.map(i), p.map(j)) - o.get(i, j)).norm();
                    assert!(diff <= 1e-10, "conjugation identity broke: {diff:.2e}");
                }
            }
        }
    }
}

#[test]
fn walk_overlaps_lie_in_the_complex_algebra_for_srgs() {
    for (name, g) in corpus_graphs() {
        let Some(p) = detect_srg(&g) else { continue };
        let o = single_overlaps(&g, 1.0).unwrap();
        let n = g.n();
        let re = SymmetricMatrix::from_fn(n, |i, j| o.get(i, j).re);
        let im = SymmetricMatrix::from_fn(n, |i, j| o.get(i, j).im);
        for (part, m) in [("re", re), ("im", im)] {
            assert!(
                decompose_in_algebra(&m, &g, p, 1e-7).is_some(),
                "{name}: {part} part escaped the algebra"
            );
        }
    }
}

#[test]
fn walk_overlap_rows_stay_unit_norm_on_the_corpus() {
    for (name, g) in corpus_graphs() {
        let o = single_overlaps(&g, 1.0).unwrap();
        assert!(o.row_norm_defect() < 1e-9, "{name}");
    }
}

#[test]
fn pair_couplings_are_exactly_symmetric() {
    for (name, g) in corpus_graphs().into_iter().filter(|(_, g)| g.n() <= 16) {
        for stats in [Statistics::Fermion, Statistics::HardCoreBoson, Statistics::Boson] {
            let k = build_pair_coupling(&g, stats, 0.7).unwrap();
            let dim = k.dim();
            for p in 0..dim {
                for q in 0..dim {
                    assert_eq!(
                        k.entries().get(p, q),
                        k.entries().get(q, p),
                        "{name} {stats:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn brute_force_finds_witnesses_for_small_corpus_relabelings() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for (name, g) in corpus_graphs().into_iter().filter(|(_, g)| g.n() <= 10) {
        for _ in 0..10 {
            let p = random_permutation(g.n(), &mut rng);
            let relabeled = apply_permutation(&g, &p).unwrap();
            match gi_screen::graph::brute_force_isomorphic(&g, &relabeled, 10) {
                gi_screen::graph::IsoVerdict::Isomorphic(w) => {
                    assert_eq!(apply_permutation(&g, &w).unwrap(), relabeled, "{name}");
                }
                other => panic!("{name}: expected isomorphism, got {other:?}"),
            }
        }
    }
}
