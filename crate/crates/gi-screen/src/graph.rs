//! Simple undirected graphs, permutations, strongly-regular-graph detection,
//! Latin-square graph construction, and a small exhaustive isomorphism oracle.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// An N-vertex simple undirected graph stored as a dense symmetric 0/1
/// adjacency matrix with zero diagonal. Vertices are indexed 0-based
/// internally; file formats and reports use 1-based labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u8>, // row-major n*n, entries 0 or 1
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex index {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("permutation length {got} does not match vertex count {want}")]
    PermutationLength { got: usize, want: usize },
    #[error("mapping is not a bijection: index {0} repeated or out of range")]
    NotBijective(usize),
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n > 0, "graph must have at least one vertex");
        Graph {
            n,
            adj: vec![0; n * n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are idempotent.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        if a >= self.n {
            return Err(GraphError::VertexOutOfRange(a, self.n));
        }
        if b >= self.n {
            return Err(GraphError::VertexOutOfRange(b, self.n));
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        self.adj[a * self.n + b] = 1;
        self.adj[b * self.n + a] = 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b] != 0
    }

    /// Adjacency entry as 0/1.
    #[inline]
    pub fn adj(&self, a: usize, b: usize) -> u8 {
        self.adj[a * self.n + b]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .map(|&x| x as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|&x| x as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Number of common neighbors of `a` and `b`.
    pub fn common_neighbors(&self, a: usize, b: usize) -> usize {
        let ra = &self.adj[a * self.n..(a + 1) * self.n];
        let rb = &self.adj[b * self.n..(b + 1) * self.n];
        ra.iter().zip(rb).map(|(&x, &y)| (x & y) as usize).sum()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A bijection on {0,…,n−1}, witnessing an isomorphism: vertex `a` of the
/// source graph maps to vertex `mapping[a]` of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationWitness {
    mapping: Vec<usize>,
}

impl PermutationWitness {
    pub fn new(mapping: Vec<usize>) -> Result<Self, GraphError> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || seen[m] {
                return Err(GraphError::NotBijective(m));
            }
            seen[m] = true;
        }
        Ok(PermutationWitness { mapping })
    }

    pub fn identity(n: usize) -> Self {
        PermutationWitness {
            mapping: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    #[inline]
    pub fn map(&self, v: usize) -> usize {
        self.mapping[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }
}

/// Relabels `g` by `p`: the result has `adj[p(a)][p(b)] = g.adj[a][b]`,
/// i.e. the conjugation `P A P⁻¹` by the permutation matrix of `p`.
pub fn apply_permutation(g: &Graph, p: &PermutationWitness) -> Result<Graph, GraphError> {
    if p.len() != g.n() {
        return Err(GraphError::PermutationLength {
            got: p.len(),
            want: g.n(),
        });
    }
    let n = g.n();
    let mut out = Graph::empty(n);
    for a in 0..n {
        for b in (a + 1)..n {
            if g.has_edge(a, b) {
                out.adj[p.map(a) * n + p.map(b)] = 1;
                out.adj[p.map(b) * n + p.map(a)] = 1;
            }
        }
    }
    Ok(out)
}

/// The parameter quadruple (N, k, λ, μ) of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    /// The double-counting identity k(k−λ−1) = (n−k−1)μ that every
    /// realizable parameter set satisfies.
    pub fn feasibility_holds(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.n - self.k - 1) * self.mu
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

/// Tests whether `g` is strongly regular: regular of degree k, with every
/// adjacent pair sharing exactly λ neighbors and every non-adjacent pair
/// exactly μ. Complete and edgeless graphs return `None` (one of the two
/// parameters would be undefined).
pub fn detect_srg(g: &Graph) -> Option<SrgParams> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let k = g.degree(0);
    if (1..n).any(|v| g.degree(v) != k) {
        return None;
    }
    if k == 0 || k == n - 1 {
        return None;
    }
    let mut lambda: Option<usize> = None;
    let mut mu: Option<usize> = None;
    for a in 0..n {
        for b in (a + 1)..n {
            let c = g.common_neighbors(a, b);
            let slot = if g.has_edge(a, b) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(prev) if prev != c => return None,
                _ => {}
            }
        }
    }
    // k in 1..n-1 guarantees both an edge and a non-edge exist at vertex 0.
    Some(SrgParams {
        n,
        k,
        lambda: lambda.expect("regular graph with 0 < k has an edge"),
        mu: mu.expect("regular graph with k < n-1 has a non-edge"),
    })
}

/// An m×m Latin square over the symbols 1..m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    m: usize,
    grid: Vec<u8>, // row-major, symbols 1..=m
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatinSquareError {
    #[error("square must be at least 1x1")]
    Empty,
    #[error("row {0} has {1} cells, expected {2}")]
    RaggedRow(usize, usize, usize),
    #[error("symbol {symbol} out of range 1..={m} at row {row}, column {col}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: u8,
        m: usize,
    },
    #[error("row {0} repeats symbol {1}")]
    RowRepeat(usize, u8),
    #[error("column {0} repeats symbol {1}")]
    ColumnRepeat(usize, u8),
}

impl LatinSquare {
    /// Validates the Latin property and constructs the square.
    /// Rows and columns are reported 1-based in errors.
    pub fn new(rows: &[Vec<u8>]) -> Result<Self, LatinSquareError> {
        let m = rows.len();
        if m == 0 {
            return Err(LatinSquareError::Empty);
        }
        let mut grid = Vec::with_capacity(m * m);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(LatinSquareError::RaggedRow(r + 1, row.len(), m));
            }
            for (c, &s) in row.iter().enumerate() {
                if s == 0 || s as usize > m {
                    return Err(LatinSquareError::SymbolOutOfRange {
                        row: r + 1,
                        col: c + 1,
                        symbol: s,
                        m,
                    });
                }
                grid.push(s);
            }
        }
        for r in 0..m {
            let mut seen = vec![false; m + 1];
            for c in 0..m {
                let s = grid[r * m + c];
                if seen[s as usize] {
                    return Err(LatinSquareError::RowRepeat(r + 1, s));
                }
                seen[s as usize] = true;
            }
        }
        for c in 0..m {
            let mut seen = vec![false; m + 1];
            for r in 0..m {
                let s = grid[r * m + c];
                if seen[s as usize] {
                    return Err(LatinSquareError::ColumnRepeat(c + 1, s));
                }
                seen[s as usize] = true;
            }
        }
        Ok(LatinSquare { m, grid })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn symbol(&self, r: usize, c: usize) -> u8 {
        self.grid[r * self.m + c]
    }
}

/// The Latin-square graph: one vertex per cell (row-major), two cells
/// adjacent iff they share a row, a column, or a symbol. For order m ≥ 3
/// the result is strongly regular with parameters (m², 3(m−1), m, 6).
pub fn latin_square_graph(ls: &LatinSquare) -> Graph {
    let m = ls.order();
    let n = m * m;
    let mut g = Graph::empty(n);
    for v in 0..n {
        let (rv, cv) = (v / m, v % m);
        for u in (v + 1)..n {
            let (ru, cu) = (u / m, u % m);
            if rv == ru || cv == cu || ls.symbol(rv, cv) == ls.symbol(ru, cu) {
                g.add_edge(v, u).expect("cell indices are in range");
            }
        }
    }
    g
}

/// Outcome of the exhaustive isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic(PermutationWitness),
    NonIsomorphic,
    TooLarge,
}

/// Exhaustive isomorphism test with iterated degree refinement. Graphs with
/// different vertex counts are non-isomorphic by definition; above `max_n`
/// the search is refused rather than attempted.
///
/// A returned witness `p` always satisfies `apply_permutation(g1, p) == g2`.
pub fn brute_force_isomorphic(g1: &Graph, g2: &Graph, max_n: usize) -> IsoVerdict {
    if g1.n() != g2.n() {
        return IsoVerdict::NonIsomorphic;
    }
    if g1.n() > max_n {
        return IsoVerdict::TooLarge;
    }
    if g1.edge_count() != g2.edge_count() {
        return IsoVerdict::NonIsomorphic;
    }
    let n = g1.n();

    // Iterated neighbor-degree refinement. Color histograms are
    // isomorphism invariants, so any mismatch is a proof of
    // non-isomorphism; equal colorings prune the assignment search.
    let (c1, c2) = match refine_colors(g1, g2) {
        Some(pair) => pair,
        None => return IsoVerdict::NonIsomorphic,
    };

    // Assign most-constrained vertices first.
    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for &c in &c1 {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&c1[v]], c1[v], v));

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(g1, g2, &c1, &c2, &order, 0, &mut mapping, &mut used) {
        let witness = PermutationWitness::new(mapping).expect("search builds a bijection");
        debug_assert_eq!(
            apply_permutation(g1, &witness).expect("witness length matches"),
            *g2
        );
        IsoVerdict::Isomorphic(witness)
    } else {
        IsoVerdict::NonIsomorphic
    }
}

/// Stable colors for both graphs under simultaneous refinement, or `None`
/// when the color histograms separate the graphs.
fn refine_colors(g1: &Graph, g2: &Graph) -> Option<(Vec<u64>, Vec<u64>)> {
    let n = g1.n();
    let mut c1: Vec<u64> = g1.degrees().iter().map(|&d| d as u64).collect();
    let mut c2: Vec<u64> = g2.degrees().iter().map(|&d| d as u64).collect();
    for _ in 0..n {
        let mut palette: HashMap<(u64, Vec<u64>), u64> = HashMap::new();
        let mut next = |sig: (u64, Vec<u64>), palette: &mut HashMap<(u64, Vec<u64>), u64>| {
            let fresh = palette.len() as u64;
            *palette.entry(sig).or_insert(fresh)
        };
        let step = |g: &Graph, c: &[u64], palette: &mut HashMap<(u64, Vec<u64>), u64>,
                    next: &mut dyn FnMut((u64, Vec<u64>), &mut HashMap<(u64, Vec<u64>), u64>) -> u64|
         -> Vec<u64> {
            (0..n)
                .map(|v| {
                    let mut nbr: Vec<u64> = g.neighbors(v).map(|u| c[u]).collect();
                    nbr.sort_unstable();
                    next((c[v], nbr), palette)
                })
                .collect()
        };
        let n1 = step(g1, &c1, &mut palette, &mut next);
        let n2 = step(g2, &c2, &mut palette, &mut next);
        let mut h1: Vec<u64> = n1.clone();
        let mut h2: Vec<u64> = n2.clone();
        h1.sort_unstable();
        h2.sort_unstable();
        if h1 != h2 {
            return None;
        }
        let stabilized = n1 == c1 && n2 == c2;
        c1 = n1;
        c2 = n2;
        if stabilized {
            break;
        }
    }
    Some((c1, c2))
}

fn search(
    g1: &Graph,
    g2: &Graph,
    c1: &[u64],
    c2: &[u64],
    order: &[usize],
    depth: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for target in 0..g2.n() {
        if used[target] || c1[v] != c2[target] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| g1.has_edge(v, w) == g2.has_edge(target, mapping[w]));
        if !consistent {
            continue;
        }
        mapping[v] = target;
        used[target] = true;
        if search(g1, g2, c1, c2, order, depth + 1, mapping, used) {
            return true;
        }
        mapping[v] = usize::MAX;
        used[target] = false;
    }
    false
}
