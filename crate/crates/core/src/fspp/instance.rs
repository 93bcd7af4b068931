//! Instances of the fractional stable paths problem: a graph with a
//! destination, and per-node ranked lists of simple paths to it.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::rational::Rational;

/// A path as a node sequence, from its origin to the destination.
pub type Path = Vec<usize>;

/// A stable-paths instance. `paths[v]` lists the permitted paths of node
/// `v` in rank order, least preferred first, so the 1-based position of a
/// path is its rank and larger means more preferred. The empty path is
/// implicit at every node with rank zero; the destination permits nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsppInstance {
    labels: Vec<String>,
    dest: usize,
    edges: BTreeSet<(usize, usize)>,
    paths: Vec<Vec<Path>>,
}

/// Rejected instance constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FsppInstanceError {
    #[error("duplicate node label {0:?}")]
    DuplicateLabel(String),
    #[error("destination index {dest} out of range for {n} nodes")]
    BadDest { dest: usize, n: usize },
    #[error("edge endpoint {vertex} out of range for {n} nodes")]
    BadEndpoint { vertex: usize, n: usize },
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(usize),
    #[error("paths listed for a node index {node} out of range")]
    BadNode { node: usize },
    #[error("the destination must not permit any path")]
    DestHasPaths,
    #[error("path {path:?} of node {node} does not start at it")]
    WrongStart { node: usize, path: Path },
    #[error("path {path:?} of node {node} does not end at the destination")]
    WrongEnd { node: usize, path: Path },
    #[error("path {path:?} of node {node} repeats a node")]
    NotSimple { node: usize, path: Path },
    #[error("path {path:?} of node {node} uses a missing edge")]
    MissingEdge { node: usize, path: Path },
    #[error("node {node} lists the same path twice")]
    DuplicatePath { node: usize },
}

impl FsppInstance {
    /// Validates and builds an instance. Paths come per node in rank
    /// order, least preferred first.
    pub fn new(
        labels: Vec<String>,
        dest: usize,
        edges: &[(usize, usize)],
        paths: Vec<Vec<Path>>,
    ) -> Result<Self, FsppInstanceError> {
        let n = labels.len();
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.clone()) {
                return Err(FsppInstanceError::DuplicateLabel(label.clone()));
            }
        }
        if dest >= n {
            return Err(FsppInstanceError::BadDest { dest, n });
        }
        let mut edge_set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n {
                return Err(FsppInstanceError::BadEndpoint { vertex: a, n });
            }
            if b >= n {
                return Err(FsppInstanceError::BadEndpoint { vertex: b, n });
            }
            if a == b {
                return Err(FsppInstanceError::SelfLoop(a));
            }
            edge_set.insert((a.min(b), a.max(b)));
        }
        if paths.len() != n {
            return Err(FsppInstanceError::BadNode { node: paths.len() });
        }
        if !paths[dest].is_empty() {
            return Err(FsppInstanceError::DestHasPaths);
        }
        for (node, list) in paths.iter().enumerate() {
            let mut distinct = BTreeSet::new();
            for path in list {
                if path.first() != Some(&node) {
                    return Err(FsppInstanceError::WrongStart { node, path: path.clone() });
                }
                if path.last() != Some(&dest) {
                    return Err(FsppInstanceError::WrongEnd { node, path: path.clone() });
                }
                let visited: BTreeSet<usize> = path.iter().copied().collect();
                if visited.len() != path.len() {
                    return Err(FsppInstanceError::NotSimple { node, path: path.clone() });
                }
                if let Some(&v) = path.iter().find(|&&v| v >= n) {
                    return Err(FsppInstanceError::BadEndpoint { vertex: v, n });
                }
                for pair in path.windows(2) {
                    let key = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                    if !edge_set.contains(&key) {
                        return Err(FsppInstanceError::MissingEdge { node, path: path.clone() });
                    }
                }
                if !distinct.insert(path.clone()) {
                    return Err(FsppInstanceError::DuplicatePath { node });
                }
            }
        }
        Ok(FsppInstance { labels, dest, edges: edge_set, paths })
    }

    pub fn n_nodes(&self) -> usize {
        self.labels.len()
    }

    pub fn dest(&self) -> usize {
        self.dest
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Permitted paths of `v` in rank order, least preferred first.
    pub fn paths_of(&self, v: usize) -> &[Path] {
        &self.paths[v]
    }

    /// Total number of permitted paths across all nodes.
    pub fn n_paths(&self) -> usize {
        self.paths.iter().map(|l| l.len()).sum()
    }

    /// Rank of the path at `idx` in `v`'s list: 1-based, larger preferred.
    pub fn rank(&self, _v: usize, idx: usize) -> usize {
        idx + 1
    }

    /// Position of a path in its origin node's list, if permitted there.
    /// The origin is the path's first node.
    pub fn path_index(&self, path: &[usize]) -> Option<(usize, usize)> {
        let origin = *path.first()?;
        if origin >= self.n_nodes() {
            return None;
        }
        self.paths[origin]
            .iter()
            .position(|p| p == path)
            .map(|idx| (origin, idx))
    }

    /// Renders a path by concatenating node labels, paper style.
    pub fn path_name(&self, path: &[usize]) -> String {
        path.iter().map(|&v| self.labels[v].as_str()).collect()
    }
}

/// A nonnegative weight per permitted path, indexed like the instance's
/// path lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsppWeights {
    pub w: Vec<Vec<Rational>>,
}

impl FsppWeights {
    /// The all-zero assignment for an instance.
    pub fn zero(inst: &FsppInstance) -> Self {
        FsppWeights {
            w: (0..inst.n_nodes())
                .map(|v| vec![Rational::from_integer(0.into()); inst.paths_of(v).len()])
                .collect(),
        }
    }

    /// Whether the shape matches the instance's path lists.
    pub fn matches(&self, inst: &FsppInstance) -> bool {
        self.w.len() == inst.n_nodes()
            && (0..inst.n_nodes()).all(|v| self.w[v].len() == inst.paths_of(v).len())
    }
}

/// The paths in `v`'s list that end with the segment `s`, as indices into
/// `paths_of(v)`. A path counts as ending with itself, so `s` itself shows
/// up when `v` permits it. A segment without an edge is the empty path and
/// matches nothing.
pub fn suffix_paths(v: usize, s: &[usize], inst: &FsppInstance) -> Vec<usize> {
    if s.len() < 2 {
        return Vec::new();
    }
    inst.paths_of(v)
        .iter()
        .enumerate()
        .filter(|(_, p)| p.len() >= s.len() && p[p.len() - s.len()..] == *s)
        .map(|(idx, _)| idx)
        .collect()
}

/// The proper final segments of a path: strict suffixes with at least one
/// edge, longest first.
pub fn proper_segments(path: &[usize]) -> Vec<&[usize]> {
    (1..path.len().saturating_sub(1))
        .map(|i| &path[i..])
        .collect()
}
