//! Single-particle continuous-time quantum walk.
//!
//! The walk Hamiltonian is the tight-binding model H = −A. Evolving each
//! vertex basis state to time T and collecting the amplitudes gives the
//! overlap matrix O_ij = ⟨i|e^{−iHT}|j⟩, whose entry multiset is the
//! invariant. Unlike the adjacency spectrum it sees eigenvector
//! information, so it separates isospectral pairs; it still cannot
//! separate strongly regular graphs with equal parameters.

use crate::graph::Graph;
use crate::linalg::{unitary_evolution, LinalgError, SymmetricMatrix};
use crate::overlap::OverlapMatrix;

pub use crate::overlap::overlap_compare;

/// H = −A entrywise.
pub fn walk_hamiltonian(g: &Graph) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(g.n(), |i, j| -f64::from(g.adj(i, j)))
}

/// O = e^{−iHT} read in the vertex basis. Symmetric because H is real
/// symmetric.
pub fn single_overlaps(g: &Graph, t: f64) -> Result<OverlapMatrix, LinalgError> {
    Ok(OverlapMatrix::new(unitary_evolution(
        &walk_hamiltonian(g),
        t,
    )?))
}
