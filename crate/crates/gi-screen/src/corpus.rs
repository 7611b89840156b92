//! The bundled graph corpus and the optional on-disk catalog.
//!
//! Four entries are constructed in code: the star/cycle isospectral pair,
//! the 3×3 rook's graph, and the two Latin-square SRG pairs of orders 4
//! and 5. Larger strongly regular pairs — (26,10,3,4), (28,12,6,4),
//! (29,14,6,7) — ship as graph6 files under `data/corpus/` with a
//! `manifest` file, and are picked up at runtime when that directory is
//! present (set `GI_SCREEN_DATA` to point elsewhere).

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::{latin_square_graph, Graph, LatinSquare};
use crate::graph6::{parse_graph6, Graph6Error};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("manifest line {line}: {msg}")]
    Manifest { line: usize, msg: String },
    #[error("corpus entry '{name}', file {file}: {source}")]
    BadGraph {
        name: String,
        file: String,
        source: Graph6Error,
    },
    #[error("corpus entry '{name}': paired graphs have different vertex counts")]
    PairMismatch { name: String },
}

/// A named corpus entry holding one graph or a pair with a provenance
/// note.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub graphs: Vec<Graph>,
    pub provenance: String,
}

impl CorpusEntry {
    pub fn pair(&self) -> Option<(&Graph, &Graph)> {
        match self.graphs.as_slice() {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }

    pub fn single(&self) -> Option<&Graph> {
        match self.graphs.as_slice() {
            [g] => Some(g),
            _ => None,
        }
    }
}

/// The star K₁,₄ and the 4-cycle plus an isolated vertex: the smallest
/// isospectral non-isomorphic pair.
pub fn isospectral_pair() -> (Graph, Graph) {
    let star = Graph::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]).expect("static edges");
    let cycle = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).expect("static edges");
    (star, cycle)
}

/// The m×m rook's graph: grid cells adjacent iff they share a row or a
/// column. For m = 3 this is the (9,4,1,2) strongly regular graph.
pub fn rook_graph(m: usize) -> Graph {
    let n = m * m;
    let mut g = Graph::empty(n);
    for v in 0..n {
        for u in (v + 1)..n {
            if v / m == u / m || v % m == u % m {
                g.add_edge(v, u).expect("cell indices in range");
            }
        }
    }
    g
}

/// The two main classes of order-4 Latin squares (the Z₂×Z₂ and Z₄
/// Cayley tables) give the two non-isomorphic (16,9,4,6) graphs.
pub fn latin_square_pair_order4() -> (Graph, Graph) {
    let klein = LatinSquare::new(&[
        vec![1, 2, 3, 4],
        vec![2, 1, 4, 3],
        vec![3, 4, 1, 2],
        vec![4, 3, 2, 1],
    ])
    .expect("static square");
    let cyclic = LatinSquare::new(&[
        vec![1, 2, 3, 4],
        vec![2, 3, 4, 1],
        vec![3, 4, 1, 2],
        vec![4, 1, 2, 3],
    ])
    .expect("static square");
    (latin_square_graph(&klein), latin_square_graph(&cyclic))
}

/// The two main classes of order-5 Latin squares give a non-isomorphic
/// (25,12,5,6) pair.
pub fn latin_square_pair_order5() -> (Graph, Graph) {
    let cyclic = LatinSquare::new(&[
        vec![1, 2, 3, 4, 5],
        vec![2, 3, 4, 5, 1],
        vec![3, 4, 5, 1, 2],
        vec![4, 5, 1, 2, 3],
        vec![5, 1, 2, 3, 4],
    ])
    .expect("static square");
    let other = LatinSquare::new(&[
        vec![1, 2, 3, 4, 5],
        vec![2, 1, 4, 5, 3],
        vec![3, 5, 1, 2, 4],
        vec![4, 3, 5, 1, 2],
        vec![5, 4, 2, 3, 1],
    ])
    .expect("static square");
    (latin_square_graph(&cyclic), latin_square_graph(&other))
}

/// The four entries that are always available, no data directory needed.
pub fn builtin_entries() -> Vec<CorpusEntry> {
    let (star, cycle) = isospectral_pair();
    let (l4a, l4b) = latin_square_pair_order4();
    let (l5a, l5b) = latin_square_pair_order5();
    vec![
        CorpusEntry {
            name: "fig1-isospectral".into(),
            graphs: vec![star, cycle],
            provenance: "built in: star K1,4 vs 4-cycle plus isolated vertex (isospectral, non-isomorphic)".into(),
        },
        CorpusEntry {
            name: "L2-3".into(),
            graphs: vec![rook_graph(3)],
            provenance: "built in: 3x3 rook's graph, SRG (9,4,1,2)".into(),
        },
        CorpusEntry {
            name: "L3-4-pair".into(),
            graphs: vec![l4a, l4b],
            provenance: "built in: Latin-square graphs of the two order-4 main classes, SRG (16,9,4,6)".into(),
        },
        CorpusEntry {
            name: "L3-5-pair".into(),
            graphs: vec![l5a, l5b],
            provenance: "built in: Latin-square graphs of the two order-5 main classes, SRG (25,12,5,6)".into(),
        },
    ]
}

/// One parsed manifest line: entry name, one or two graph6 files, free
/// provenance text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: String,
    pub file_a: String,
    pub file_b: Option<String>,
    pub provenance: String,
}

fn next_token(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start();
    if s.is_empty() {
        return None;
    }
    let end = s.find(char::is_whitespace).unwrap_or(s.len());
    Some((&s[..end], &s[end..]))
}

/// Parses the corpus manifest: one entry per line as
/// `<name> <file-a> <file-b|-> <provenance…>`, with `#` comments and
/// blank lines skipped.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, CorpusError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (name, rest) = next_token(content).expect("non-empty line");
        let (file_a, rest) = next_token(rest).ok_or(CorpusError::Manifest {
            line,
            msg: "missing graph6 file name".into(),
        })?;
        let (file_b, rest) = next_token(rest).ok_or(CorpusError::Manifest {
            line,
            msg: "missing second file name (use '-' for single-graph entries)".into(),
        })?;
        let provenance = rest.trim().to_string();
        if entries.iter().any(|e: &ManifestEntry| e.name == name) {
            return Err(CorpusError::Manifest {
                line,
                msg: format!("duplicate entry name '{name}'"),
            });
        }
        entries.push(ManifestEntry {
            name: name.to_string(),
            file_a: file_a.to_string(),
            file_b: (file_b != "-").then(|| file_b.to_string()),
            provenance,
        });
    }
    Ok(entries)
}

fn read_to_string(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_graph(dir: &Path, name: &str, file: &str) -> Result<Graph, CorpusError> {
    let text = read_to_string(&dir.join(file))?;
    parse_graph6(&text).map_err(|source| CorpusError::BadGraph {
        name: name.to_string(),
        file: file.to_string(),
        source,
    })
}

/// Loads every entry listed in `dir/manifest`. A directory without a
/// manifest contributes nothing; a corrupt manifest or graph file is an
/// error.
pub fn load_data_dir(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let manifest_path = dir.join("manifest");
    if !manifest_path.exists() {
        return Ok(Vec::new());
    }
    let manifest = read_to_string(&manifest_path)?;
    let mut out = Vec::new();
    for m in parse_manifest(&manifest)? {
        let mut graphs = vec![load_graph(dir, &m.name, &m.file_a)?];
        if let Some(file_b) = &m.file_b {
            graphs.push(load_graph(dir, &m.name, file_b)?);
        }
        if graphs.len() == 2 && graphs[0].n() != graphs[1].n() {
            return Err(CorpusError::PairMismatch { name: m.name });
        }
        out.push(CorpusEntry {
            name: m.name,
            graphs,
            provenance: m.provenance,
        });
    }
    Ok(out)
}

/// `GI_SCREEN_DATA` if set, else `data/corpus` when it exists under the
/// working directory.
pub fn default_data_dir() -> Option<PathBuf> {
    if let Ok(dir) = std::env::var("GI_SCREEN_DATA") {
        return Some(PathBuf::from(dir));
    }
    let local = Path::new("data/corpus");
    local.is_dir().then(|| local.to_path_buf())
}

/// Built-in entries plus whatever the data directory provides. Data-dir
/// entries whose name collides with a built-in are skipped.
pub fn corpus(data_dir: Option<&Path>) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries = builtin_entries();
    if let Some(dir) = data_dir {
        for e in load_data_dir(dir)? {
            if !entries.iter().any(|b| b.name == e.name) {
                entries.push(e);
            }
        }
    }
    Ok(entries)
}

/// The full corpus with default data-directory discovery.
pub fn builtin_corpus() -> Result<Vec<CorpusEntry>, CorpusError> {
    corpus(default_data_dir().as_deref())
}

pub fn find<'a>(entries: &'a [CorpusEntry], name: &str) -> Option<&'a CorpusEntry> {
    entries.iter().find(|e| e.name == name)
}
