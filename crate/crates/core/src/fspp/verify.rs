//! The four audits for stable-paths weight assignments: feasibility,
//! stability, and their two relaxations.

use std::collections::BTreeSet;
use std::fmt;

use num::Zero;

use super::instance::{proper_segments, suffix_paths, FsppInstance, FsppWeights, Path};
use crate::rational::{format_rational, int, Rational};

/// One way a weight assignment fails an audit. Nodes and paths appear by
/// label, paths as concatenated node labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FsppDefect {
    /// The weight table does not match the instance's path lists.
    WrongShape,
    /// A path carries negative weight.
    NegativeWeight { node: String, path: String },
    /// A node's total weight exceeds one.
    UnityExceeded { node: String, total: Rational },
    /// Paths through a segment outweigh the segment itself.
    TreeViolated {
        node: String,
        segment: String,
        total: Rational,
        bound: Rational,
    },
    /// Neither stability branch holds for this permitted path.
    Unstable { node: String, path: String },
}

impl fmt::Display for FsppDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FsppDefect::WrongShape => {
                write!(f, "weight table does not match the instance's path lists")
            }
            FsppDefect::NegativeWeight { node, path } => {
                write!(f, "path {path} of node {node} has negative weight")
            }
            FsppDefect::UnityExceeded { node, total } => {
                write!(f, "node {} carries total weight {} > 1", node, format_rational(total))
            }
            FsppDefect::TreeViolated { node, segment, total, bound } => write!(
                f,
                "tree condition at ({}, S={}): {} > {}",
                node,
                segment,
                format_rational(total),
                format_rational(bound)
            ),
            FsppDefect::Unstable { node, path } => {
                write!(f, "no stability branch holds at ({node}, Q={path})")
            }
        }
    }
}

/// Outcome of a stable-paths audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsppAudit {
    pub defects: Vec<FsppDefect>,
}

impl FsppAudit {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

impl fmt::Display for FsppAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "all checks passed")
        } else {
            let lines: Vec<String> = self.defects.iter().map(|d| d.to_string()).collect();
            write!(f, "{}", lines.join("; "))
        }
    }
}

/// Weight of a segment at its origin node: zero when the origin does not
/// permit it.
fn segment_weight(inst: &FsppInstance, w: &FsppWeights, s: &[usize]) -> Rational {
    match inst.path_index(s) {
        Some((origin, idx)) => w.w[origin][idx].clone(),
        None => Rational::zero(),
    }
}

fn node_total(w: &FsppWeights, v: usize) -> Rational {
    w.w[v].iter().fold(Rational::zero(), |a, b| a + b.clone())
}

/// Sum of `v`'s weight on paths ending with `s`.
fn segment_sum(inst: &FsppInstance, w: &FsppWeights, v: usize, s: &[usize]) -> Rational {
    suffix_paths(v, s, inst)
        .into_iter()
        .fold(Rational::zero(), |a, idx| a + w.w[v][idx].clone())
}

/// Unity and tree conditions, the latter loosened by `slack` per segment.
fn feasibility_defects(
    inst: &FsppInstance,
    w: &FsppWeights,
    slack: &Rational,
) -> Vec<FsppDefect> {
    let mut defects = Vec::new();
    let one = int(1);
    for v in 0..inst.n_nodes() {
        for (idx, weight) in w.w[v].iter().enumerate() {
            if *weight < Rational::zero() {
                defects.push(FsppDefect::NegativeWeight {
                    node: inst.label(v).to_string(),
                    path: inst.path_name(&inst.paths_of(v)[idx]),
                });
            }
        }
        let total = node_total(w, v);
        if total > one {
            defects.push(FsppDefect::UnityExceeded {
                node: inst.label(v).to_string(),
                total,
            });
        }
        // Every final segment with an edge of any permitted path; a path's
        // own full segment is vacuous but checked all the same.
        let mut segments: BTreeSet<Path> = BTreeSet::new();
        for path in inst.paths_of(v) {
            for start in 0..path.len().saturating_sub(1) {
                segments.insert(path[start..].to_vec());
            }
        }
        for s in segments {
            let total = segment_sum(inst, w, v, &s);
            let bound = segment_weight(inst, w, &s) + slack.clone();
            if total > bound {
                defects.push(FsppDefect::TreeViolated {
                    node: inst.label(v).to_string(),
                    segment: inst.path_name(&s),
                    total,
                    bound,
                });
            }
        }
    }
    defects
}

/// How the stability branches are quantified.
enum StabilityMode<'a> {
    Exact,
    EpsSolution(&'a Rational),
    EpsStable(&'a Rational),
}

fn stability_defects(
    inst: &FsppInstance,
    w: &FsppWeights,
    mode: &StabilityMode<'_>,
) -> Vec<FsppDefect> {
    let one = int(1);
    let mut defects = Vec::new();
    for v in 0..inst.n_nodes() {
        let total = node_total(w, v);
        let unity_holds = match mode {
            StabilityMode::Exact | StabilityMode::EpsSolution(_) => total == one,
            StabilityMode::EpsStable(eps) => {
                one.clone() - (*eps).clone() <= total && total <= one
            }
        };
        for (qi, q) in inst.paths_of(v).iter().enumerate() {
            // First branch: the node is (nearly) saturated and all its
            // positive weight sits on paths at least as preferred as Q.
            let branch1 = unity_holds
                && w.w[v]
                    .iter()
                    .enumerate()
                    .all(|(pi, weight)| *weight <= Rational::zero() || pi >= qi);
            if branch1 {
                continue;
            }
            // Second branch: some proper final segment of Q is exactly as
            // loaded as stability demands, by paths at least as preferred.
            let branch2 = proper_segments(q).into_iter().any(|s| {
                let sum = segment_sum(inst, w, v, s);
                let ws = segment_weight(inst, w, s);
                let load_ok = match mode {
                    StabilityMode::Exact => sum == ws,
                    StabilityMode::EpsSolution(eps) => sum == ws + (*eps).clone(),
                    StabilityMode::EpsStable(eps) => {
                        ws.clone() - (*eps).clone() <= sum && sum <= ws
                    }
                };
                load_ok
                    && suffix_paths(v, s, inst)
                        .into_iter()
                        .all(|pi| w.w[v][pi] <= Rational::zero() || pi >= qi)
            });
            if !branch2 {
                defects.push(FsppDefect::Unstable {
                    node: inst.label(v).to_string(),
                    path: inst.path_name(q),
                });
            }
        }
    }
    defects
}

/// Unity and tree conditions, exactly.
pub fn verify_feasible(inst: &FsppInstance, w: &FsppWeights) -> FsppAudit {
    if !w.matches(inst) {
        return FsppAudit { defects: vec![FsppDefect::WrongShape] };
    }
    FsppAudit {
        defects: feasibility_defects(inst, w, &Rational::zero()),
    }
}

/// Feasibility plus the exact stability requirement: for every permitted
/// path, one of the two branches holds.
pub fn verify_stable(inst: &FsppInstance, w: &FsppWeights) -> FsppAudit {
    if !w.matches(inst) {
        return FsppAudit { defects: vec![FsppDefect::WrongShape] };
    }
    let mut defects = feasibility_defects(inst, w, &Rational::zero());
    defects.extend(stability_defects(inst, w, &StabilityMode::Exact));
    FsppAudit { defects }
}

/// Unity, the tree condition loosened by `eps`, and stability whose second
/// branch demands the segment be overloaded by exactly `eps`.
pub fn verify_eps_solution(inst: &FsppInstance, w: &FsppWeights, eps: &Rational) -> FsppAudit {
    debug_assert!(*eps >= Rational::zero(), "relaxation must be nonnegative");
    if !w.matches(inst) {
        return FsppAudit { defects: vec![FsppDefect::WrongShape] };
    }
    let mut defects = feasibility_defects(inst, w, eps);
    defects.extend(stability_defects(inst, w, &StabilityMode::EpsSolution(eps)));
    FsppAudit { defects }
}

/// Exact feasibility plus stability with both branches relaxed downward by
/// `eps`.
pub fn verify_eps_stable(inst: &FsppInstance, w: &FsppWeights, eps: &Rational) -> FsppAudit {
    debug_assert!(*eps >= Rational::zero(), "relaxation must be nonnegative");
    if !w.matches(inst) {
        return FsppAudit { defects: vec![FsppDefect::WrongShape] };
    }
    let mut defects = feasibility_defects(inst, w, &Rational::zero());
    defects.extend(stability_defects(inst, w, &StabilityMode::EpsStable(eps)));
    FsppAudit { defects }
}

#[cfg(test)]
pub(crate) fn weights_of(values: &[&[Rational]]) -> FsppWeights {
    FsppWeights {
        w: values.iter().map(|row| row.to_vec()).collect(),
    }
}
