//! JSON codecs for every on-disk format.
//!
//! Conventions shared by all formats: indices are 1-based, vertices and
//! nodes are referred to by label, and rationals appear either as bare
//! JSON integers or as `"p/q"` strings in lowest terms. Weight files may
//! be sparse; entries left out are zero. Writers emit pretty-printed JSON
//! with keys in sorted order, so equal values serialize to equal bytes.

use std::collections::BTreeMap;

use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fspp::{FsppInstance, FsppWeights, Path};
use crate::kernels::{Digraph, KernelFunction};
use crate::matchings::{FractionalMatching, HypergraphPrefSystem};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::scarf::{ScarfInstance, ScarfSolution};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    BadRational(#[from] crate::rational::ParseRationalError),
    #[error("{0}")]
    Malformed(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("index {got} is outside 1..={max}")]
    BadIndex { got: usize, max: usize },
    #[error("declared {field}={declared} but the data has {actual}")]
    DeclaredSizeMismatch { field: &'static str, declared: usize, actual: usize },
}

fn malformed(err: impl std::fmt::Display) -> IoError {
    IoError::Malformed(err.to_string())
}

/// JSON face of a rational: bare integer when the denominator is one,
/// `"p/q"` string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Int(i64),
    Str(String),
}

impl RatRepr {
    fn of(r: &Rational) -> RatRepr {
        if r.is_integer() {
            if let Some(k) = r.numer().to_i64() {
                return RatRepr::Int(k);
            }
        }
        RatRepr::Str(format_rational(r))
    }

    fn value(&self) -> Result<Rational, IoError> {
        match self {
            RatRepr::Int(k) => Ok(crate::rational::int(*k)),
            RatRepr::Str(s) => Ok(parse_rational(s)?),
        }
    }
}

fn rats_of(row: &[Rational]) -> Vec<RatRepr> {
    row.iter().map(RatRepr::of).collect()
}

fn rat_values(row: &[RatRepr]) -> Result<Vec<Rational>, IoError> {
    row.iter().map(RatRepr::value).collect()
}

/// 1-based index from a file into `0..max`.
fn internal_index(got: usize, max: usize) -> Result<usize, IoError> {
    if got == 0 || got > max {
        return Err(IoError::BadIndex { got, max });
    }
    Ok(got - 1)
}

fn label_index(labels: &[String], label: &str) -> Result<usize, IoError> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| IoError::UnknownLabel(label.to_string()))
}

fn pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------
// Covering systems and their solutions
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ScarfInstanceFile {
    m: usize,
    n: usize,
    #[serde(rename = "B")]
    bmat: Vec<Vec<RatRepr>>,
    b: Vec<RatRepr>,
    #[serde(rename = "C")]
    cmat: Vec<Vec<RatRepr>>,
}

pub fn scarf_instance_from_json(text: &str) -> Result<ScarfInstance, IoError> {
    let file: ScarfInstanceFile = serde_json::from_str(text)?;
    let bmat: Vec<Vec<Rational>> =
        file.bmat.iter().map(|r| rat_values(r)).collect::<Result<_, _>>()?;
    let rhs = rat_values(&file.b)?;
    let cmat: Vec<Vec<Rational>> =
        file.cmat.iter().map(|r| rat_values(r)).collect::<Result<_, _>>()?;
    let inst = ScarfInstance::new(bmat, rhs, cmat).map_err(malformed)?;
    if inst.m != file.m {
        return Err(IoError::DeclaredSizeMismatch {
            field: "m",
            declared: file.m,
            actual: inst.m,
        });
    }
    if inst.n != file.n {
        return Err(IoError::DeclaredSizeMismatch {
            field: "n",
            declared: file.n,
            actual: inst.n,
        });
    }
    Ok(inst)
}

pub fn scarf_instance_to_json(inst: &ScarfInstance) -> String {
    pretty(&ScarfInstanceFile {
        m: inst.m,
        n: inst.n,
        bmat: inst.bmat.iter().map(|r| rats_of(r)).collect(),
        b: rats_of(&inst.rhs),
        cmat: inst.cmat.iter().map(|r| rats_of(r)).collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct SolutionFile {
    #[serde(rename = "J")]
    basis: Vec<usize>,
    alpha: Vec<RatRepr>,
    /// column -> subordination witness row, both 1-based. JSON object keys
    /// are strings, so the columns arrive as decimal strings.
    witness: BTreeMap<String, usize>,
}

pub fn solution_from_json(text: &str) -> Result<ScarfSolution, IoError> {
    let file: SolutionFile = serde_json::from_str(text)?;
    let alpha = rat_values(&file.alpha)?;
    let n = alpha.len();
    let basis: Vec<usize> = file
        .basis
        .iter()
        .map(|&j| internal_index(j, n))
        .collect::<Result<_, _>>()?;
    let mut witness = BTreeMap::new();
    for (col_text, &row) in &file.witness {
        let col: usize = col_text
            .parse()
            .map_err(|_| IoError::Malformed(format!("witness key {col_text:?}")))?;
        witness.insert(internal_index(col, n)?, internal_index(row, n)?);
    }
    Ok(ScarfSolution { basis, alpha, witness })
}

fn solution_file(sol: &ScarfSolution) -> SolutionFile {
    SolutionFile {
        basis: sol.basis.iter().map(|&j| j + 1).collect(),
        alpha: rats_of(&sol.alpha),
        witness: sol
            .witness
            .iter()
            .map(|(&col, &row)| ((col + 1).to_string(), row + 1))
            .collect(),
    }
}

pub fn solution_to_json(sol: &ScarfSolution) -> String {
    pretty(&solution_file(sol))
}

/// Several solutions as one JSON array, in the given order.
pub fn solutions_to_json(sols: &[ScarfSolution]) -> String {
    pretty(&sols.iter().map(solution_file).collect::<Vec<_>>())
}

// ---------------------------------------------------------------------
// Digraphs and kernel weight functions
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DigraphFile {
    vertices: Vec<String>,
    arcs: Vec<(String, String)>,
}

pub fn digraph_from_json(text: &str) -> Result<Digraph, IoError> {
    let file: DigraphFile = serde_json::from_str(text)?;
    let pairs: Vec<(&str, &str)> = file
        .arcs
        .iter()
        .map(|(u, v)| (u.as_str(), v.as_str()))
        .collect();
    Digraph::from_labeled_arcs(file.vertices, &pairs).map_err(malformed)
}

pub fn digraph_to_json(d: &Digraph) -> String {
    pretty(&DigraphFile {
        vertices: d.labels().to_vec(),
        arcs: d
            .arcs()
            .map(|(u, v)| (d.label(u).to_string(), d.label(v).to_string()))
            .collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct KernelFile {
    f: BTreeMap<String, RatRepr>,
}

pub fn kernel_from_json(text: &str, d: &Digraph) -> Result<KernelFunction, IoError> {
    let file: KernelFile = serde_json::from_str(text)?;
    let mut weights = vec![crate::rational::int(0); d.n()];
    for (label, repr) in &file.f {
        weights[label_index(d.labels(), label)?] = repr.value()?;
    }
    Ok(KernelFunction { weights })
}

pub fn kernel_to_json(f: &KernelFunction, d: &Digraph) -> String {
    pretty(&KernelFile {
        f: d
            .labels()
            .iter()
            .zip(&f.weights)
            .map(|(label, w)| (label.clone(), RatRepr::of(w)))
            .collect(),
    })
}

// ---------------------------------------------------------------------
// Hypergraph preference systems and fractional matchings
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct HypergraphFile {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
    /// vertex label -> 1-based edge indices, least preferred first.
    orders: BTreeMap<String, Vec<usize>>,
}

pub fn hypergraph_from_json(text: &str) -> Result<HypergraphPrefSystem, IoError> {
    let file: HypergraphFile = serde_json::from_str(text)?;
    let ne = file.edges.len();
    let edges = file
        .edges
        .iter()
        .map(|edge| {
            edge.iter()
                .map(|l| label_index(&file.vertices, l))
                .collect()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut orders = vec![Vec::new(); file.vertices.len()];
    for (label, ranked) in &file.orders {
        let v = label_index(&file.vertices, label)?;
        orders[v] = ranked
            .iter()
            .map(|&h| internal_index(h, ne))
            .collect::<Result<_, _>>()?;
    }
    HypergraphPrefSystem::new(file.vertices, edges, orders).map_err(malformed)
}

pub fn hypergraph_to_json(h: &HypergraphPrefSystem) -> String {
    pretty(&HypergraphFile {
        vertices: h.labels().to_vec(),
        edges: h
            .edges()
            .iter()
            .map(|e| e.iter().map(|&v| h.labels()[v].clone()).collect())
            .collect(),
        orders: h
            .labels()
            .iter()
            .zip(h.orders())
            .map(|(label, order)| (label.clone(), order.iter().map(|&h| h + 1).collect()))
            .collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct MatchingFile {
    /// 1-based edge index (as a decimal string key) -> weight.
    w: BTreeMap<String, RatRepr>,
}

pub fn matching_from_json(
    text: &str,
    h: &HypergraphPrefSystem,
) -> Result<FractionalMatching, IoError> {
    let file: MatchingFile = serde_json::from_str(text)?;
    let mut weights = vec![crate::rational::int(0); h.n_edges()];
    for (key, repr) in &file.w {
        let edge: usize = key
            .parse()
            .map_err(|_| IoError::Malformed(format!("edge key {key:?}")))?;
        weights[internal_index(edge, h.n_edges())?] = repr.value()?;
    }
    Ok(FractionalMatching { weights })
}

pub fn matching_to_json(m: &FractionalMatching) -> String {
    pretty(&MatchingFile {
        w: m
            .weights
            .iter()
            .enumerate()
            .map(|(h, w)| ((h + 1).to_string(), RatRepr::of(w)))
            .collect(),
    })
}

// ---------------------------------------------------------------------
// Path preference instances and their weight vectors
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FsppPathEntry {
    path: Vec<String>,
    /// 1-based rank among the node's paths; rank 1 is least preferred.
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct FsppInstanceFile {
    nodes: Vec<String>,
    dest: String,
    edges: Vec<(String, String)>,
    paths: BTreeMap<String, Vec<FsppPathEntry>>,
}

pub fn fspp_instance_from_json(text: &str) -> Result<FsppInstance, IoError> {
    let file: FsppInstanceFile = serde_json::from_str(text)?;
    let dest = label_index(&file.nodes, &file.dest)?;
    let edges = file
        .edges
        .iter()
        .map(|(a, b)| {
            Ok((
                label_index(&file.nodes, a)?,
                label_index(&file.nodes, b)?,
            ))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let mut paths: Vec<Vec<Path>> = vec![Vec::new(); file.nodes.len()];
    for (label, entries) in &file.paths {
        let v = label_index(&file.nodes, label)?;
        let k = entries.len();
        let mut ranked: Vec<Option<Path>> = vec![None; k];
        for entry in entries {
            let path = entry
                .path
                .iter()
                .map(|l| label_index(&file.nodes, l))
                .collect::<Result<Path, _>>()?;
            let slot = internal_index(entry.rank, k).map_err(|_| {
                IoError::Malformed(format!(
                    "ranks of node {label} must be exactly 1..={k}"
                ))
            })?;
            if ranked[slot].replace(path).is_some() {
                return Err(IoError::Malformed(format!(
                    "node {label} lists rank {} twice",
                    entry.rank
                )));
            }
        }
        paths[v] = ranked.into_iter().map(|p| p.expect("all slots filled")).collect();
    }
    FsppInstance::new(file.nodes, dest, &edges, paths).map_err(malformed)
}

pub fn fspp_instance_to_json(inst: &FsppInstance) -> String {
    let name = |v: usize| inst.label(v).to_string();
    let mut paths = BTreeMap::new();
    for v in 0..inst.n_nodes() {
        let list = inst.paths_of(v);
        if list.is_empty() {
            continue;
        }
        paths.insert(
            name(v),
            list.iter()
                .enumerate()
                .map(|(i, path)| FsppPathEntry {
                    path: path.iter().map(|&u| name(u)).collect(),
                    rank: i + 1,
                })
                .collect(),
        );
    }
    pretty(&FsppInstanceFile {
        nodes: inst.labels().to_vec(),
        dest: name(inst.dest()),
        edges: inst.edges().map(|(a, b)| (name(a), name(b))).collect(),
        paths,
    })
}

#[derive(Serialize, Deserialize)]
struct FsppWeightsFile {
    /// `"node/rank"` with a 1-based rank -> weight of that path.
    w: BTreeMap<String, RatRepr>,
}

pub fn fspp_weights_from_json(
    text: &str,
    inst: &FsppInstance,
) -> Result<FsppWeights, IoError> {
    let file: FsppWeightsFile = serde_json::from_str(text)?;
    let mut weights = FsppWeights::zero(inst);
    for (key, repr) in &file.w {
        let (label, rank_text) = key
            .rsplit_once('/')
            .ok_or_else(|| IoError::Malformed(format!("weight key {key:?}")))?;
        let v = label_index(inst.labels(), label)?;
        let rank: usize = rank_text
            .parse()
            .map_err(|_| IoError::Malformed(format!("weight key {key:?}")))?;
        let i = internal_index(rank, inst.paths_of(v).len())?;
        weights.w[v][i] = repr.value()?;
    }
    Ok(weights)
}

pub fn fspp_weights_to_json(w: &FsppWeights, inst: &FsppInstance) -> String {
    let mut map = BTreeMap::new();
    for v in 0..inst.n_nodes() {
        for (i, weight) in w.w[v].iter().enumerate() {
            map.insert(format!("{}/{}", inst.label(v), i + 1), RatRepr::of(weight));
        }
    }
    pretty(&FsppWeightsFile { w: map })
}
