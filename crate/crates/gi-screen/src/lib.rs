//! Graph-isomorphism screening through dynamical invariants.
//!
//! Three families of invariants are computed from a graph's adjacency
//! structure and compared as canonicalized multisets:
//!
//! - **classical**: relax N particles from the unit simplex under
//!   edge-dependent pairwise forces and collect the squared
//!   inter-particle distances ([`classical`]);
//! - **walk1**: a single-particle continuous-time quantum walk's overlap
//!   matrix O_ij = ⟨i|e^{−iHT}|j⟩ with H = −A ([`walk`]);
//! - **two-particle**: the same walk lifted to two interacting particles
//!   (soft-core bosons with Hubbard U, hard-core bosons, or fermions),
//!   compared through the sorted-entry metrics R and I ([`two_particle`]).
//!
//! A mismatch in any invariant certifies non-isomorphism. The converse
//! fails in an instructive way: for strongly regular graphs the classical
//! and single-particle invariants are forced by the parameter set alone —
//! the executable form of that argument lives in [`algebra`] — while the
//! two-particle fermion and hard-core-boson walks do separate all bundled
//! same-parameter pairs.
//!
//! Graphs enter via graph6 ([`graph6`]), edge lists ([`edge_list`]), or
//! the bundled corpus ([`corpus`]). The `gi-screen` binary exposes all of
//! it on the command line.

pub mod algebra;
pub mod classical;
pub mod corpus;
pub mod edge_list;
pub mod graph;
pub mod graph6;
pub mod linalg;
pub mod multiset;
pub mod overlap;
pub mod report;
pub mod two_particle;
pub mod walk;

#[cfg(test)]
pub(crate) mod testutil;

pub use classical::{
    classical_compare, distance_invariant, euler_integrate, evolve_harmonic_closed_form, gram,
    laplacian, squared_distances, IntegratorConfig, Normalization, Potential,
};
pub use corpus::{builtin_corpus, CorpusEntry};
pub use edge_list::parse_edge_list;
pub use graph::{
    apply_permutation, brute_force_isomorphic, detect_srg, latin_square_graph, Graph, IsoVerdict,
    LatinSquare, PermutationWitness, SrgParams,
};
pub use graph6::{encode_graph6, parse_graph6};
pub use multiset::{canonical_multiset, multiset_equal, CanonicalMultiset, MultisetGroup};
pub use overlap::{i_metric, overlap_compare, r_metric, OverlapMatrix};
pub use report::{ComparisonReport, Verdict};
pub use two_particle::{
    build_pair_coupling, pair_basis, two_particle_compare, two_particle_overlaps, u_sweep,
    PairBasis, PairCoupling, Statistics, SweepPoint,
};
pub use walk::{single_overlaps, walk_hamiltonian};
