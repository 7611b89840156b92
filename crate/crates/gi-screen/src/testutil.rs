//! Shared fixtures for unit tests.

use crate::corpus;
use crate::graph::Graph;

pub(crate) fn star5() -> Graph {
    corpus::isospectral_pair().0
}

pub(crate) fn cycle4_plus_isolated() -> Graph {
    corpus::isospectral_pair().1
}

pub(crate) fn rook3() -> Graph {
    corpus::rook_graph(3)
}

pub(crate) fn latin_square_pair_order4() -> (Graph, Graph) {
    corpus::latin_square_pair_order4()
}
