//! Structural checks for the bounded-clique kernel setting: cliques of at
//! most three vertices, clique-acyclicity, and proper cycles that are
//! homogeneous and pairwise node-disjoint.

use std::collections::BTreeSet;
use std::fmt;

use super::digraph::{maximal_cliques, topological_positions, CliqueBound, Digraph};

/// Default ceiling on how many proper cycles the validator enumerates
/// before declaring the check inconclusive.
pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// One structural requirement the digraph fails. Vertices appear by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelInstanceFinding {
    /// A maximal clique has more than three vertices.
    CliqueTooLarge { clique: Vec<String> },
    /// The irreversible arcs inside a maximal clique contain a cycle.
    CliqueCycle { clique: Vec<String> },
    /// A vertex outside a proper cycle points into it without pointing at
    /// every cycle vertex.
    InhomogeneousCycle { cycle: Vec<String>, outsider: String },
    /// A vertex lies on two different proper cycles.
    OverlappingCycles { vertex: String },
    /// Cycle enumeration stopped at the cap, so the remaining checks did
    /// not run to completion.
    Inconclusive { cap: usize },
}

impl fmt::Display for KernelInstanceFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelInstanceFinding::CliqueTooLarge { clique } => {
                write!(f, "clique {{{}}} has more than three vertices", clique.join(","))
            }
            KernelInstanceFinding::CliqueCycle { clique } => write!(
                f,
                "irreversible arcs inside clique {{{}}} form a cycle",
                clique.join(",")
            ),
            KernelInstanceFinding::InhomogeneousCycle { cycle, outsider } => write!(
                f,
                "vertex {} points into proper cycle ({}) but not at all of it",
                outsider,
                cycle.join(" -> ")
            ),
            KernelInstanceFinding::OverlappingCycles { vertex } => {
                write!(f, "vertex {vertex} lies on two proper cycles")
            }
            KernelInstanceFinding::Inconclusive { cap } => {
                write!(f, "stopped after enumerating {cap} proper cycles")
            }
        }
    }
}

/// Result of the structural validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelInstanceReport {
    pub findings: Vec<KernelInstanceFinding>,
}

impl KernelInstanceReport {
    /// No findings at all: the digraph satisfies every hypothesis.
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    /// Whether every check ran to completion.
    pub fn conclusive(&self) -> bool {
        !self
            .findings
            .iter()
            .any(|f| matches!(f, KernelInstanceFinding::Inconclusive { .. }))
    }
}

impl fmt::Display for KernelInstanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "digraph satisfies the bounded-clique kernel hypotheses")
        } else {
            let lines: Vec<String> = self.findings.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", lines.join("\n"))
        }
    }
}

/// All simple cycles of the irreversible subdigraph, each rotated to start
/// at its smallest vertex and listed in arc order. Stops once `cap` cycles
/// have been found, returning `None` to signal truncation.
///
/// Reversible pairs are excluded by construction, so every cycle found here
/// has at least three vertices.
fn proper_cycles(d: &Digraph, cap: usize) -> Option<Vec<Vec<usize>>> {
    let n = d.n();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| d.is_irreversible(u, v)).collect())
        .collect();
    let mut cycles = Vec::new();
    // Roots ascend, and each cycle is discovered exactly once: from its
    // smallest vertex, moving only through larger ones.
    for root in 0..n {
        let mut path = vec![root];
        let mut on_path = vec![false; n];
        on_path[root] = true;
        // Iterative DFS: frame = index of the next successor to try.
        let mut frames: Vec<usize> = vec![0];
        while let Some(frame) = frames.last_mut() {
            let u = *path.last().expect("path tracks frames");
            if *frame < succ[u].len() {
                let v = succ[u][*frame];
                *frame += 1;
                if v == root && path.len() >= 3 {
                    if cycles.len() >= cap {
                        return None;
                    }
                    cycles.push(path.clone());
                } else if v > root && !on_path[v] {
                    on_path[v] = true;
                    path.push(v);
                    frames.push(0);
                }
            } else {
                frames.pop();
                let u = path.pop().expect("path tracks frames");
                on_path[u] = false;
            }
        }
    }
    Some(cycles)
}

/// Checks the hypotheses of the bounded-clique kernel theorem: every
/// maximal clique has at most three vertices and orders its irreversible
/// arcs acyclically, and every proper cycle (a simple cycle of irreversible
/// arcs) is homogeneous and node-disjoint from the others. A cycle is
/// homogeneous when each outside vertex pointing into it points at all of
/// it.
pub fn validate_3kernel_instance(d: &Digraph, cycle_cap: usize) -> KernelInstanceReport {
    let mut findings = Vec::new();
    let cliques = maximal_cliques(d, CliqueBound::Unbounded { cap: usize::MAX })
        .expect("unbounded enumeration cannot fail");
    for clique in &cliques {
        let labels: Vec<String> = clique.iter().map(|&v| d.label(v).to_string()).collect();
        if clique.len() > 3 {
            findings.push(KernelInstanceFinding::CliqueTooLarge { clique: labels.clone() });
        }
        if topological_positions(d, clique).is_none() {
            findings.push(KernelInstanceFinding::CliqueCycle { clique: labels });
        }
    }

    match proper_cycles(d, cycle_cap) {
        None => findings.push(KernelInstanceFinding::Inconclusive { cap: cycle_cap }),
        Some(cycles) => {
            for cycle in &cycles {
                let members: BTreeSet<usize> = cycle.iter().copied().collect();
                let outsiders: BTreeSet<usize> = cycle
                    .iter()
                    .flat_map(|&v| d.in_neighbors(v))
                    .filter(|u| !members.contains(u))
                    .collect();
                for u in outsiders {
                    if !members.iter().all(|&x| d.has_arc(u, x)) {
                        findings.push(KernelInstanceFinding::InhomogeneousCycle {
                            cycle: cycle.iter().map(|&x| d.label(x).to_string()).collect(),
                            outsider: d.label(u).to_string(),
                        });
                    }
                }
            }
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            let mut flagged: BTreeSet<usize> = BTreeSet::new();
            for cycle in &cycles {
                for &v in cycle {
                    if !seen.insert(v) && flagged.insert(v) {
                        findings.push(KernelInstanceFinding::OverlappingCycles {
                            vertex: d.label(v).to_string(),
                        });
                    }
                }
            }
        }
    }
    KernelInstanceReport { findings }
}

#[cfg(test)]
mod tests {
    use super::super::digraph::fixtures::*;
    use super::super::digraph::Digraph;
    use super::*;

    #[test]
    fn the_five_cycle_is_a_valid_instance() {
        let report = validate_3kernel_instance(&c5(), DEFAULT_CYCLE_CAP);
        assert!(report.passed(), "unexpected findings: {report}");
        assert!(report.conclusive());
    }

    #[test]
    fn reversible_pairs_produce_no_proper_cycles() {
        let report = validate_3kernel_instance(&double_pointer(), DEFAULT_CYCLE_CAP);
        assert!(report.passed());
    }

    #[test]
    fn directed_triangle_fails_clique_acyclicity() {
        let report = validate_3kernel_instance(&directed_triangle(), DEFAULT_CYCLE_CAP);
        assert_eq!(
            report.findings,
            vec![KernelInstanceFinding::CliqueCycle {
                clique: vec!["a".into(), "b".into(), "c".into()],
            }]
        );
    }

    #[test]
    fn external_spoke_breaks_homogeneity() {
        let mut d = c5();
        let labels: Vec<String> = d.labels().to_vec();
        let mut with_x = Digraph::new(
            labels.into_iter().chain(std::iter::once("x".into())).collect(),
        )
        .unwrap();
        for (u, v) in d.arcs().collect::<Vec<_>>() {
            with_x.add_arc(u, v).unwrap();
        }
        with_x.add_arc(5, 0).unwrap();
        d = with_x;
        let report = validate_3kernel_instance(&d, DEFAULT_CYCLE_CAP);
        assert_eq!(
            report.findings,
            vec![KernelInstanceFinding::InhomogeneousCycle {
                cycle: vec!["v1".into(), "v2".into(), "v3".into(), "v4".into(), "v5".into()],
                outsider: "x".into(),
            }]
        );
    }

    #[test]
    fn shared_vertex_between_two_cycles_is_flagged() {
        // Two directed triangles sharing vertex s would fail clique
        // acyclicity only if a triangle were a clique; use pentagon-length
        // cycles instead so the only finding is the overlap.
        let labels: Vec<String> = vec![
            "s".into(),
            "p1".into(),
            "p2".into(),
            "p3".into(),
            "p4".into(),
            "q1".into(),
            "q2".into(),
            "q3".into(),
            "q4".into(),
        ];
        let mut d = Digraph::new(labels).unwrap();
        for w in [[1usize, 2, 3, 4], [5, 6, 7, 8]] {
            d.add_arc(0, w[0]).unwrap();
            d.add_arc(w[0], w[1]).unwrap();
            d.add_arc(w[1], w[2]).unwrap();
            d.add_arc(w[2], w[3]).unwrap();
            d.add_arc(w[3], 0).unwrap();
        }
        let report = validate_3kernel_instance(&d, DEFAULT_CYCLE_CAP);
        // Sharing a vertex also breaks homogeneity: each cycle's
        // predecessor of s points into the other cycle.
        assert_eq!(
            report.findings,
            vec![
                KernelInstanceFinding::InhomogeneousCycle {
                    cycle: vec!["s".into(), "p1".into(), "p2".into(), "p3".into(), "p4".into()],
                    outsider: "q4".into(),
                },
                KernelInstanceFinding::InhomogeneousCycle {
                    cycle: vec!["s".into(), "q1".into(), "q2".into(), "q3".into(), "q4".into()],
                    outsider: "p4".into(),
                },
                KernelInstanceFinding::OverlappingCycles { vertex: "s".into() },
            ]
        );
        assert!(!report.passed());
        assert!(report.conclusive());
    }

    #[test]
    fn tiny_cap_reports_inconclusive() {
        let report = validate_3kernel_instance(&c5(), 0);
        assert_eq!(
            report.findings,
            vec![KernelInstanceFinding::Inconclusive { cap: 0 }]
        );
        assert!(!report.conclusive());
    }

    #[test]
    fn cycle_enumeration_is_rotation_free() {
        // The five-cycle has exactly one proper cycle, discovered from its
        // smallest vertex.
        let cycles = super::proper_cycles(&c5(), 10).unwrap();
        assert_eq!(cycles, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(super::proper_cycles(&two_cycle(), 10), Some(vec![]));
    }
}
