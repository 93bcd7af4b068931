//! Hypergraphic preference systems: reduction to a dual-ordered covering
//! system, fractional stable matchings, and their audits.

use std::collections::BTreeSet;
use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::rational::{format_rational, int, Rational};
use crate::scarf::{
    solve_with, ScarfInstance, ScarfSolution, SolveError, SolveOptions, SolveReport,
};

/// A hypergraph with labeled vertices and, for every vertex, a total
/// preference order over the edges containing it.
///
/// `orders[v]` lists the incident edges of `v` from least to most
/// preferred, covering them exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphPrefSystem {
    labels: Vec<String>,
    edges: Vec<BTreeSet<usize>>,
    orders: Vec<Vec<usize>>,
}

/// Rejected preference-system constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrefSystemError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },
    #[error("edge {edge} mentions vertex {vertex}, out of range for {n} vertices")]
    BadVertex { edge: usize, vertex: usize, n: usize },
    #[error("order of vertex {vertex:?} does not cover its incident edges exactly")]
    OrderMismatch { vertex: String },
}

impl HypergraphPrefSystem {
    /// Validates and builds a preference system. Each `orders[v]` must be a
    /// permutation of the edges containing `v`, least preferred first.
    pub fn new(
        labels: Vec<String>,
        edges: Vec<BTreeSet<usize>>,
        orders: Vec<Vec<usize>>,
    ) -> Result<Self, PrefSystemError> {
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.clone()) {
                return Err(PrefSystemError::DuplicateLabel(label.clone()));
            }
        }
        let n = labels.len();
        for (i, edge) in edges.iter().enumerate() {
            if edge.is_empty() {
                return Err(PrefSystemError::EmptyEdge { edge: i });
            }
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(PrefSystemError::BadVertex { edge: i, vertex: v, n });
            }
        }
        if orders.len() != n {
            return Err(PrefSystemError::OrderMismatch {
                vertex: format!("#{}", orders.len().min(n)),
            });
        }
        for v in 0..n {
            let incident: BTreeSet<usize> = (0..edges.len())
                .filter(|&h| edges[h].contains(&v))
                .collect();
            let listed: BTreeSet<usize> = orders[v].iter().copied().collect();
            if listed != incident || orders[v].len() != incident.len() {
                return Err(PrefSystemError::OrderMismatch {
                    vertex: labels[v].clone(),
                });
            }
        }
        Ok(HypergraphPrefSystem { labels, edges, orders })
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[BTreeSet<usize>] {
        &self.edges
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    /// 1-based rank of edge `h` in the order of vertex `v`: larger means
    /// more preferred. `None` when `h` does not contain `v`.
    pub fn rank(&self, v: usize, h: usize) -> Option<usize> {
        self.orders[v].iter().position(|&x| x == h).map(|p| p + 1)
    }

    /// Renders an edge as `{a,b}` using vertex labels.
    pub fn edge_name(&self, h: usize) -> String {
        let names: Vec<&str> = self.edges[h].iter().map(|&v| self.labels[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A nonnegative weight per edge, indexed like the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalMatching {
    pub weights: Vec<Rational>,
}

/// How rows and columns of the reduced system correspond to the
/// preference system: row `v` is vertex `v` with its slack in column `v`,
/// and edge `h` occupies column `edge_col[h]`, which is `|V| + h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingReductionMap {
    pub edge_col: Vec<usize>,
}

/// Preference systems the reduction rejects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingReduceError {
    #[error("preference system has no vertices or no edges")]
    EmptyInstance,
}

/// Builds the covering system whose solutions are stable fractional
/// matchings.
///
/// One row per vertex with right-hand side one, so each vertex's incident
/// weight plus slack is exactly one. The valuation row of `v` mirrors the
/// kernel reduction: own slack first, then incident edges by preference
/// rank (more preferred larger), then the remaining edges, then foreign
/// slacks:
///
/// - own slack: -1
/// - incident edge of rank `r`: `r`
/// - non-incident edge `h`: `|E| + h + 1`
/// - foreign slack of row `l`: `2|E| + |V| + l + 1`
pub fn reduce_to_scarf(
    sys: &HypergraphPrefSystem,
) -> Result<(ScarfInstance, MatchingReductionMap), MatchingReduceError> {
    let m = sys.n_vertices();
    let ne = sys.n_edges();
    if m == 0 || ne == 0 {
        return Err(MatchingReduceError::EmptyInstance);
    }
    let n = m + ne;
    let mut bmat = vec![vec![int(0); n]; m];
    let mut cmat = vec![vec![int(0); n]; m];
    for v in 0..m {
        bmat[v][v] = int(1);
        for (l, cell) in cmat[v].iter_mut().enumerate().take(m) {
            *cell = if l == v {
                int(-1)
            } else {
                int((2 * ne + m + l + 1) as i64)
            };
        }
        for h in 0..ne {
            if sys.edges[h].contains(&v) {
                bmat[v][m + h] = int(1);
                let r = sys.rank(v, h).expect("incident edges are ranked");
                cmat[v][m + h] = int(r as i64);
            } else {
                cmat[v][m + h] = int((ne + h + 1) as i64);
            }
        }
    }
    let rhs = vec![int(1); m];
    let inst = ScarfInstance::new(bmat, rhs, cmat).expect("reduction shapes are consistent");
    let map = MatchingReductionMap {
        edge_col: (m..n).collect(),
    };
    Ok((inst, map))
}

/// Reads the edge weights out of a solution of the reduced system.
pub fn extract_matching(
    solution: &ScarfSolution,
    map: &MatchingReductionMap,
) -> FractionalMatching {
    FractionalMatching {
        weights: map
            .edge_col
            .iter()
            .map(|&col| solution.alpha[col].clone())
            .collect(),
    }
}

/// One way edge weights fail the stable-matching audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingDefect {
    /// The weight vector does not match the edge count.
    WrongLength { got: usize, want: usize },
    /// An edge carries negative weight.
    NegativeWeight { edge: String },
    /// A vertex's incident weight exceeds one.
    Overloaded { vertex: String, total: Rational },
    /// No endpoint of the edge is saturated by edges it likes at least as
    /// well.
    Unstable { edge: String },
}

impl fmt::Display for MatchingDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingDefect::WrongLength { got, want } => {
                write!(f, "weight vector has {got} entries, system has {want} edges")
            }
            MatchingDefect::NegativeWeight { edge } => {
                write!(f, "edge {edge} has negative weight")
            }
            MatchingDefect::Overloaded { vertex, total } => write!(
                f,
                "vertex {} carries incident weight {} > 1",
                vertex,
                format_rational(total)
            ),
            MatchingDefect::Unstable { edge } => write!(
                f,
                "edge {edge} unstable: no endpoint is saturated by edges it prefers at least as much"
            ),
        }
    }
}

/// Outcome of the stable-matching audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingAudit {
    pub defects: Vec<MatchingDefect>,
}

impl MatchingAudit {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

impl fmt::Display for MatchingAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "all checks passed")
        } else {
            let lines: Vec<String> = self.defects.iter().map(|d| d.to_string()).collect();
            write!(f, "{}", lines.join("; "))
        }
    }
}

/// Checks that the weights are a fractional matching (incident sums at
/// most one per vertex) and stable: every edge `e` has an endpoint whose
/// weight on edges it prefers at least as much as `e` sums to exactly one.
pub fn verify_stable_matching(
    sys: &HypergraphPrefSystem,
    w: &FractionalMatching,
) -> MatchingAudit {
    let mut defects = Vec::new();
    if w.weights.len() != sys.n_edges() {
        defects.push(MatchingDefect::WrongLength {
            got: w.weights.len(),
            want: sys.n_edges(),
        });
        return MatchingAudit { defects };
    }
    for (h, weight) in w.weights.iter().enumerate() {
        if *weight < Rational::zero() {
            defects.push(MatchingDefect::NegativeWeight {
                edge: sys.edge_name(h),
            });
        }
    }
    let one = int(1);
    for v in 0..sys.n_vertices() {
        let total: Rational = sys.orders[v]
            .iter()
            .map(|&h| w.weights[h].clone())
            .fold(Rational::zero(), |a, b| a + b);
        if total > one {
            defects.push(MatchingDefect::Overloaded {
                vertex: sys.labels[v].clone(),
                total,
            });
        }
    }
    for e in 0..sys.n_edges() {
        let saturated = sys.edges[e].iter().any(|&v| {
            let rank_e = sys.rank(v, e).expect("edge contains its endpoints");
            let total: Rational = sys.orders[v]
                .iter()
                .skip(rank_e - 1)
                .map(|&h| w.weights[h].clone())
                .fold(Rational::zero(), |a, b| a + b);
            total == one
        });
        if !saturated {
            defects.push(MatchingDefect::Unstable {
                edge: sys.edge_name(e),
            });
        }
    }
    MatchingAudit { defects }
}

/// A solved stable matching together with the pivot walk that produced it.
#[derive(Debug, Clone)]
pub struct StableMatchingRun {
    pub matching: FractionalMatching,
    pub report: SolveReport,
    pub instance: ScarfInstance,
    pub map: MatchingReductionMap,
}

/// Failures of the end-to-end stable-matching pipeline.
#[derive(Debug, Error)]
pub enum StableMatchingError {
    #[error(transparent)]
    Reduce(#[from] MatchingReduceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("solver output failed the stable-matching audit: {audit}")]
    ExtractionInvariant { audit: MatchingAudit },
}

/// Computes a stable fractional matching by solving the reduced covering
/// system.
///
/// Soundness mirrors the kernel extraction: the solution basis
/// subordinates each edge column `e` at some vertex row `v`, whose own
/// slack (valued -1) then cannot be basic, so row `v`'s equation saturates
/// `v`; non-incident columns are valued above all incident ranks, so `v`
/// is an endpoint of `e` and every basic edge at `v` has rank at least
/// `e`'s: exactly the stability equality.
pub fn solve_stable_matching(
    sys: &HypergraphPrefSystem,
) -> Result<StableMatchingRun, StableMatchingError> {
    solve_stable_matching_with(sys, SolveOptions::default())
}

/// As [`solve_stable_matching`], with explicit pivot-walk options.
pub fn solve_stable_matching_with(
    sys: &HypergraphPrefSystem,
    options: SolveOptions,
) -> Result<StableMatchingRun, StableMatchingError> {
    let (instance, map) = reduce_to_scarf(sys)?;
    let report = solve_with(&instance, &options)?;
    let matching = extract_matching(&report.solution, &map);
    let audit = verify_stable_matching(sys, &matching);
    if !audit.passed() {
        return Err(StableMatchingError::ExtractionInvariant { audit });
    }
    Ok(StableMatchingRun {
        matching,
        report,
        instance,
        map,
    })
}

/// Graph-only cross-check errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockingScanError {
    #[error("edge {edge} has {size} vertices; the blocking-pair scan needs a graph")]
    NotAGraph { edge: usize, size: usize },
    #[error("weight of edge {edge} is not 0 or 1")]
    NotIntegral { edge: usize },
}

/// Classical blocking-pair scan for integral matchings on graphs (all
/// edges of size two): returns the edges outside the matching whose both
/// endpoints would rather switch to them. Empty output on a valid matching
/// means classical stability.
pub fn blocking_edges(
    sys: &HypergraphPrefSystem,
    w: &FractionalMatching,
) -> Result<Vec<usize>, BlockingScanError> {
    let one = int(1);
    for (h, edge) in sys.edges.iter().enumerate() {
        if edge.len() != 2 {
            return Err(BlockingScanError::NotAGraph { edge: h, size: edge.len() });
        }
        if !w.weights[h].is_zero() && w.weights[h] != one {
            return Err(BlockingScanError::NotIntegral { edge: h });
        }
    }
    let matched_edge: Vec<Option<usize>> = (0..sys.n_vertices())
        .map(|v| {
            sys.orders[v]
                .iter()
                .copied()
                .find(|&h| w.weights[h] == one)
        })
        .collect();
    let mut blocking = Vec::new();
    for e in 0..sys.n_edges() {
        if w.weights[e] == one {
            continue;
        }
        let improves = sys.edges[e].iter().all(|&v| match matched_edge[v] {
            None => true,
            Some(h) => sys.rank(v, e) > sys.rank(v, h),
        });
        if improves {
            blocking.push(e);
        }
    }
    Ok(blocking)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::rational::rat;
    use crate::scarf::validate_instance;

    #[test]
    fn construction_rejects_bad_orders() {
        let e: BTreeSet<usize> = [0, 1].into_iter().collect();
        let err = HypergraphPrefSystem::new(
            vec!["u".into(), "v".into()],
            vec![e.clone()],
            vec![vec![], vec![0]],
        )
        .unwrap_err();
        assert_eq!(err, PrefSystemError::OrderMismatch { vertex: "u".into() });

        let err = HypergraphPrefSystem::new(
            vec!["u".into(), "v".into()],
            vec![BTreeSet::new()],
            vec![vec![], vec![]],
        )
        .unwrap_err();
        assert_eq!(err, PrefSystemError::EmptyEdge { edge: 0 });

        let err =
            HypergraphPrefSystem::new(vec!["u".into()], vec![e], vec![vec![0]]).unwrap_err();
        assert_eq!(err, PrefSystemError::BadVertex { edge: 0, vertex: 1, n: 1 });
    }

    #[test]
    fn single_edge_reduces_to_the_expected_system() {
        let (inst, map) = reduce_to_scarf(&single_edge()).unwrap();
        assert_eq!((inst.m, inst.n), (2, 3));
        assert_eq!(
            inst.bmat,
            vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]]
        );
        assert_eq!(
            inst.cmat,
            vec![vec![int(-1), int(6), int(1)], vec![int(5), int(-1), int(1)]]
        );
        assert_eq!(map.edge_col, vec![2]);
        assert!(validate_instance(&inst).passed());
    }

    #[test]
    fn triangle_and_marriage_reductions_validate() {
        let (inst, _) = reduce_to_scarf(&cyclic_triangle()).unwrap();
        assert_eq!((inst.m, inst.n), (3, 6));
        assert!(validate_instance(&inst).passed());

        let (inst, _) = reduce_to_scarf(&aligned_marriage()).unwrap();
        assert_eq!((inst.m, inst.n), (4, 8));
        assert!(validate_instance(&inst).passed());
    }

    #[test]
    fn single_edge_matching_is_saturated() {
        let run = solve_stable_matching(&single_edge()).unwrap();
        assert_eq!(run.matching.weights, vec![int(1)]);
    }

    #[test]
    fn cyclic_triangle_matching_is_uniform_halves() {
        let run = solve_stable_matching(&cyclic_triangle()).unwrap();
        assert_eq!(run.matching.weights, vec![rat(1, 2); 3]);
    }

    #[test]
    fn aligned_marriage_matching_is_the_assortative_one() {
        let run = solve_stable_matching(&aligned_marriage()).unwrap();
        assert_eq!(
            run.matching.weights,
            vec![int(1), int(0), int(0), int(1)]
        );
        assert_eq!(blocking_edges(&aligned_marriage(), &run.matching), Ok(vec![]));
    }

    #[test]
    fn hypergraph_round_trip_passes_the_audit() {
        let run = solve_stable_matching(&small_hypergraph()).unwrap();
        assert!(verify_stable_matching(&small_hypergraph(), &run.matching).passed());
    }

    #[test]
    fn verifier_spots_the_classic_defects() {
        let sys = single_edge();
        let half = FractionalMatching { weights: vec![rat(1, 2)] };
        let audit = verify_stable_matching(&sys, &half);
        assert_eq!(
            audit.defects,
            vec![MatchingDefect::Unstable { edge: "{u,v}".into() }]
        );
        assert_eq!(
            audit.to_string(),
            "edge {u,v} unstable: no endpoint is saturated by edges it prefers at least as much"
        );

        let heavy = FractionalMatching { weights: vec![rat(3, 2)] };
        let audit = verify_stable_matching(&sys, &heavy);
        assert_eq!(
            audit.defects,
            vec![
                MatchingDefect::Overloaded { vertex: "u".into(), total: rat(3, 2) },
                MatchingDefect::Overloaded { vertex: "v".into(), total: rat(3, 2) },
                // Saturation asks for exactly one, so overweight edges are
                // unstable too.
                MatchingDefect::Unstable { edge: "{u,v}".into() },
            ]
        );

        let negative = FractionalMatching { weights: vec![int(-1)] };
        let audit = verify_stable_matching(&sys, &negative);
        assert!(audit
            .defects
            .contains(&MatchingDefect::NegativeWeight { edge: "{u,v}".into() }));

        let short = FractionalMatching { weights: vec![] };
        let audit = verify_stable_matching(&sys, &short);
        assert_eq!(
            audit.defects,
            vec![MatchingDefect::WrongLength { got: 0, want: 1 }]
        );
    }

    #[test]
    fn stability_on_halves_uses_the_less_favored_endpoint() {
        let sys = cyclic_triangle();
        let w = FractionalMatching { weights: vec![rat(1, 2); 3] };
        assert!(verify_stable_matching(&sys, &w).passed());
        // Dropping one edge to zero starves its clockwise neighbor's
        // less-favored endpoint.
        let w = FractionalMatching {
            weights: vec![int(0), rat(1, 2), rat(1, 2)],
        };
        let audit = verify_stable_matching(&sys, &w);
        assert!(!audit.passed());
    }

    #[test]
    fn blocking_pair_scan_matches_the_audit_on_graphs() {
        let sys = aligned_marriage();
        // Matching m1-w2, m2-w1 is destabilized by {m1,w1}.
        let w = FractionalMatching {
            weights: vec![int(0), int(1), int(1), int(0)],
        };
        assert_eq!(blocking_edges(&sys, &w), Ok(vec![0]));
        assert!(!verify_stable_matching(&sys, &w).passed());

        let empty = FractionalMatching { weights: vec![int(0); 4] };
        let blocks = blocking_edges(&sys, &empty).unwrap();
        assert_eq!(blocks, vec![0, 1, 2, 3]);

        let run = solve_stable_matching(&sys).unwrap();
        assert_eq!(blocking_edges(&sys, &run.matching), Ok(vec![]));
    }

    #[test]
    fn blocking_pair_scan_rejects_non_graph_input() {
        let sys = small_hypergraph();
        let w = FractionalMatching { weights: vec![int(0); 3] };
        assert_eq!(
            blocking_edges(&sys, &w),
            Err(BlockingScanError::NotAGraph { edge: 0, size: 3 })
        );
        let sys = single_edge();
        let w = FractionalMatching { weights: vec![rat(1, 2)] };
        assert_eq!(
            blocking_edges(&sys, &w),
            Err(BlockingScanError::NotIntegral { edge: 0 })
        );
    }
}
