//! Finite digraphs with labeled vertices, and the clique structure used by
//! the kernel reduction.

use std::collections::BTreeSet;

use thiserror::Error;

/// A finite digraph on labeled vertices, without self-loops.
///
/// Vertices are indexed `0..n` in label insertion order; arcs are stored as
/// ordered index pairs. Two vertices are *connected* when at least one arc
/// runs between them, and an arc is *irreversible* when its reverse is
/// absent. Cliques are always taken in the connected (undirected) sense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    arcs: BTreeSet<(usize, usize)>,
}

/// Rejected digraph constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("arc endpoint {0} out of range for {1} vertices")]
    BadEndpoint(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
}

impl Digraph {
    /// Creates a digraph with the given vertex labels and no arcs.
    pub fn new(labels: Vec<String>) -> Result<Self, DigraphError> {
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.clone()) {
                return Err(DigraphError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Digraph {
            labels,
            arcs: BTreeSet::new(),
        })
    }

    /// Convenience constructor from labels and labeled arcs.
    pub fn from_labeled_arcs(
        labels: Vec<String>,
        arcs: &[(&str, &str)],
    ) -> Result<Self, DigraphError> {
        let mut d = Digraph::new(labels)?;
        for (u, v) in arcs {
            let ui = d
                .index_of(u)
                .ok_or_else(|| DigraphError::UnknownLabel(u.to_string()))?;
            let vi = d
                .index_of(v)
                .ok_or_else(|| DigraphError::UnknownLabel(v.to_string()))?;
            d.add_arc(ui, vi)?;
        }
        Ok(d)
    }

    /// Adds the arc `u -> v`. Adding an existing arc is a no-op.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), DigraphError> {
        let n = self.n();
        if u >= n {
            return Err(DigraphError::BadEndpoint(u, n));
        }
        if v >= n {
            return Err(DigraphError::BadEndpoint(v, n));
        }
        if u == v {
            return Err(DigraphError::SelfLoop(u));
        }
        self.arcs.insert((u, v));
        Ok(())
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Vertex labels in index order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Label of vertex `v`.
    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Index of the vertex with the given label, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All arcs in ascending order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    /// Whether the arc `u -> v` is present.
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// Whether `u -> v` is present and `v -> u` is not.
    pub fn is_irreversible(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && !self.has_arc(v, u)
    }

    /// Whether some arc runs between `u` and `v` (either direction).
    pub fn connected(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// In-neighbors of `v` in ascending order.
    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.has_arc(u, v)).collect()
    }

    /// Out-neighbors of `v` in ascending order.
    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.has_arc(v, u)).collect()
    }

    /// The closed in-neighborhood `I(v)`: `v` together with every `u` having
    /// an arc `u -> v`.
    pub fn closed_in_neighborhood(&self, v: usize) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = self.in_neighbors(v).into_iter().collect();
        set.insert(v);
        set
    }
}

/// How far the clique enumeration is allowed to go.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueBound {
    /// Reject the digraph outright if any clique has more than three
    /// vertices. This is the precondition of the strong-kernel solver.
    AtMostThree,
    /// Enumerate cliques of any size, but give up after `cap` maximal
    /// cliques have been reported.
    Unbounded { cap: usize },
}

/// Failures of the clique enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("clique {0:?} has more than three vertices")]
    TooLarge(Vec<usize>),
    #[error("more than {cap} maximal cliques")]
    Enumeration { cap: usize },
}

/// All maximal cliques of the connectedness graph, each as an ascending
/// vertex set, sorted lexicographically.
///
/// Isolated vertices count as singleton cliques. Uses Bron-Kerbosch with
/// smallest-index branching, so the output is deterministic.
pub fn maximal_cliques(
    d: &Digraph,
    bound: CliqueBound,
) -> Result<Vec<BTreeSet<usize>>, CliqueError> {
    let n = d.n();
    let neighbors: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| (0..n).filter(|&u| u != v && d.connected(u, v)).collect())
        .collect();
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    let mut current = BTreeSet::new();
    let candidates: BTreeSet<usize> = (0..n).collect();
    let excluded = BTreeSet::new();
    bron_kerbosch(&neighbors, &mut current, candidates, excluded, bound, &mut out)?;
    out.sort_by(|a, b| {
        let av: Vec<usize> = a.iter().copied().collect();
        let bv: Vec<usize> = b.iter().copied().collect();
        av.cmp(&bv)
    });
    Ok(out)
}

fn bron_kerbosch(
    neighbors: &[BTreeSet<usize>],
    current: &mut BTreeSet<usize>,
    mut candidates: BTreeSet<usize>,
    mut excluded: BTreeSet<usize>,
    bound: CliqueBound,
    out: &mut Vec<BTreeSet<usize>>,
) -> Result<(), CliqueError> {
    if candidates.is_empty() && excluded.is_empty() {
        match bound {
            CliqueBound::AtMostThree if current.len() > 3 => {
                return Err(CliqueError::TooLarge(current.iter().copied().collect()));
            }
            CliqueBound::Unbounded { cap } if out.len() >= cap => {
                return Err(CliqueError::Enumeration { cap });
            }
            _ => {}
        }
        out.push(current.clone());
        return Ok(());
    }
    while let Some(&v) = candidates.iter().next() {
        current.insert(v);
        let next_candidates: BTreeSet<usize> =
            candidates.intersection(&neighbors[v]).copied().collect();
        let next_excluded: BTreeSet<usize> =
            excluded.intersection(&neighbors[v]).copied().collect();
        bron_kerbosch(neighbors, current, next_candidates, next_excluded, bound, out)?;
        current.remove(&v);
        candidates.remove(&v);
        excluded.insert(v);
    }
    Ok(())
}

/// Whether the irreversible arcs inside every maximal clique form an acyclic
/// relation. This is the structural hypothesis behind the kernel reduction.
pub fn is_clique_acyclic(d: &Digraph) -> bool {
    let cliques = match maximal_cliques(d, CliqueBound::Unbounded { cap: usize::MAX }) {
        Ok(c) => c,
        Err(_) => unreachable!("unbounded enumeration cannot fail"),
    };
    cliques.iter().all(|k| topological_positions(d, k).is_some())
}

/// Positions `1..=|K|` for the clique `K` such that every irreversible arc
/// `v -> u` inside `K` has `pos(u) < pos(v)`: pointed-at vertices come first.
/// Ties are broken toward the smallest vertex index. Returns `None` when the
/// irreversible arcs inside `K` contain a cycle.
pub fn topological_positions(d: &Digraph, clique: &BTreeSet<usize>) -> Option<Vec<(usize, usize)>> {
    let members: Vec<usize> = clique.iter().copied().collect();
    let mut assigned: BTreeSet<usize> = BTreeSet::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    while assigned.len() < members.len() {
        // A vertex is ready once every clique member it points at
        // irreversibly has already received a position.
        let ready = members.iter().copied().find(|&v| {
            !assigned.contains(&v)
                && members
                    .iter()
                    .all(|&u| assigned.contains(&u) || !d.is_irreversible(v, u))
        });
        let v = ready?;
        order.push((v, assigned.len() + 1));
        assigned.insert(v);
    }
    Some(order)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Digraph;

    /// A single irreversible arc `u -> v`.
    pub fn single_arc() -> Digraph {
        Digraph::from_labeled_arcs(vec!["u".into(), "v".into()], &[("u", "v")]).unwrap()
    }

    /// A reversible pair `u <-> v`.
    pub fn two_cycle() -> Digraph {
        Digraph::from_labeled_arcs(vec!["u".into(), "v".into()], &[("u", "v"), ("v", "u")])
            .unwrap()
    }

    /// The directed five-cycle `v1 -> v2 -> ... -> v5 -> v1`.
    pub fn c5() -> Digraph {
        let labels: Vec<String> = (1..=5).map(|i| format!("v{i}")).collect();
        let mut d = Digraph::new(labels).unwrap();
        for i in 0..5 {
            d.add_arc(i, (i + 1) % 5).unwrap();
        }
        d
    }

    /// The directed triangle, whose single maximal clique carries a cycle of
    /// irreversible arcs.
    pub fn directed_triangle() -> Digraph {
        Digraph::from_labeled_arcs(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a", "b"), ("b", "c"), ("c", "a")],
        )
        .unwrap()
    }

    /// Two reversible pairs both pointing at a shared sink: the fixture
    /// where a strong kernel over-dominates the sink.
    pub fn double_pointer() -> Digraph {
        Digraph::from_labeled_arcs(
            vec![
                "a".into(),
                "a2".into(),
                "b".into(),
                "b2".into(),
                "v".into(),
            ],
            &[
                ("a", "a2"),
                ("a2", "a"),
                ("b", "b2"),
                ("b2", "b"),
                ("a", "v"),
                ("b", "v"),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn neighborhoods_and_arc_queries() {
        let d = c5();
        assert_eq!(d.n(), 5);
        assert!(d.has_arc(0, 1));
        assert!(!d.has_arc(1, 0));
        assert!(d.is_irreversible(0, 1));
        assert!(d.connected(1, 0));
        assert_eq!(d.in_neighbors(0), vec![4]);
        assert_eq!(d.out_neighbors(0), vec![1]);
        let i0: Vec<usize> = d.closed_in_neighborhood(0).into_iter().collect();
        assert_eq!(i0, vec![0, 4]);

        let t = two_cycle();
        assert!(!t.is_irreversible(0, 1));
        assert!(t.connected(0, 1));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            Digraph::new(vec!["x".into(), "x".into()]),
            Err(DigraphError::DuplicateLabel("x".into()))
        );
        let mut d = Digraph::new(vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(d.add_arc(0, 2), Err(DigraphError::BadEndpoint(2, 2)));
        assert_eq!(d.add_arc(1, 1), Err(DigraphError::SelfLoop(1)));
    }

    #[test]
    fn cliques_of_the_five_cycle_are_its_edges() {
        let cliques = maximal_cliques(&c5(), CliqueBound::AtMostThree).unwrap();
        let expect: Vec<Vec<usize>> = vec![
            vec![0, 1],
            vec![0, 4],
            vec![1, 2],
            vec![2, 3],
            vec![3, 4],
        ];
        let got: Vec<Vec<usize>> = cliques
            .iter()
            .map(|k| k.iter().copied().collect())
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn isolated_vertices_are_singleton_cliques() {
        let mut d = Digraph::new(vec!["a".into(), "b".into(), "z".into()]).unwrap();
        d.add_arc(0, 1).unwrap();
        let cliques = maximal_cliques(&d, CliqueBound::AtMostThree).unwrap();
        let got: Vec<Vec<usize>> = cliques
            .iter()
            .map(|k| k.iter().copied().collect())
            .collect();
        assert_eq!(got, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn oversized_clique_is_rejected_in_bounded_mode() {
        let mut d = Digraph::new((0..4).map(|i| format!("k{i}")).collect()).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    d.add_arc(u, v).unwrap();
                }
            }
        }
        assert_eq!(
            maximal_cliques(&d, CliqueBound::AtMostThree),
            Err(CliqueError::TooLarge(vec![0, 1, 2, 3]))
        );
        let all = maximal_cliques(&d, CliqueBound::Unbounded { cap: 100 }).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn clique_acyclicity_matches_the_triangle_story() {
        assert!(is_clique_acyclic(&c5()));
        assert!(is_clique_acyclic(&two_cycle()));
        assert!(is_clique_acyclic(&double_pointer()));
        assert!(!is_clique_acyclic(&directed_triangle()));
    }

    #[test]
    fn topological_positions_put_pointed_at_vertices_first() {
        let d = single_arc();
        let clique: BTreeSet<usize> = [0, 1].into_iter().collect();
        // u -> v is irreversible, so v takes position 1 and u position 2.
        assert_eq!(topological_positions(&d, &clique), Some(vec![(1, 1), (0, 2)]));

        let t = two_cycle();
        // No irreversible arcs: ties break toward the smaller index.
        assert_eq!(topological_positions(&t, &clique), Some(vec![(0, 1), (1, 2)]));

        let tri = directed_triangle();
        let k3: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        assert_eq!(topological_positions(&tri, &k3), None);
    }
}
