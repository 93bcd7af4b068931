//! Turns a fractional kernel into an equilibrium by shedding surplus
//! weight, after contracting the proper cycles a maximum cycle cover finds.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use thiserror::Error;

use super::digraph::Digraph;
use super::verify::{verify_fractional_kernel, verify_nash, KernelAudit, KernelFunction};
use crate::rational::{int, Rational};

/// Default ceiling on how many times the load-shedding guard may fire.
pub const DEFAULT_NASH_CAP: u64 = 100_000;

/// Tuning knobs for [`compute_nash_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NashOptions {
    pub iteration_cap: u64,
}

impl Default for NashOptions {
    fn default() -> Self {
        NashOptions {
            iteration_cap: DEFAULT_NASH_CAP,
        }
    }
}

/// Failures of the equilibrium repair.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NashError {
    #[error("weight vector has {got} entries, digraph has {want} vertices")]
    WrongLength { got: usize, want: usize },
    #[error("load shedding did not settle within {cap} adjustments")]
    IterationCap { cap: u64 },
    #[error("repaired weights fail the equilibrium audit: {audit}")]
    Unrepairable { audit: KernelAudit },
}

/// Maximum bipartite matching from tails to heads over the arc set,
/// computed with deterministic augmenting paths in ascending vertex order.
/// The result maps each vertex to its matched successor.
fn max_cycle_cover(d: &Digraph) -> Vec<Option<usize>> {
    let n = d.n();
    let mut head_match: Vec<Option<usize>> = vec![None; n];

    fn augment(
        d: &Digraph,
        u: usize,
        visited: &mut Vec<bool>,
        head_match: &mut Vec<Option<usize>>,
    ) -> bool {
        for v in d.out_neighbors(u) {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            let free = match head_match[v] {
                None => true,
                Some(w) => augment(d, w, visited, head_match),
            };
            if free {
                head_match[v] = Some(u);
                return true;
            }
        }
        false
    }

    for u in 0..n {
        let mut visited = vec![false; n];
        augment(d, u, &mut visited, &mut head_match);
    }
    let mut succ: Vec<Option<usize>> = vec![None; n];
    for (head, tail) in head_match.iter().enumerate() {
        if let Some(t) = *tail {
            succ[t] = Some(head);
        }
    }
    succ
}

/// Cycles of the cover, each rotated to start at its smallest vertex. The
/// cover has in- and out-degree at most one, so its components are paths
/// and cycles and every walk either dead-ends or returns to its start.
fn cover_cycles(succ: &[Option<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut in_cycle = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if in_cycle[start] {
            continue;
        }
        let mut walk = vec![start];
        let mut cur = start;
        loop {
            match succ[cur] {
                Some(next) if next == start => {
                    for &v in &walk {
                        in_cycle[v] = true;
                    }
                    let min_pos = walk
                        .iter()
                        .enumerate()
                        .min_by_key(|&(_, v)| *v)
                        .map(|(i, _)| i)
                        .expect("walk is nonempty");
                    walk.rotate_left(min_pos);
                    if walk[0] == start {
                        cycles.push(walk);
                    }
                    break;
                }
                Some(next) if !walk.contains(&next) => {
                    walk.push(next);
                    cur = next;
                }
                _ => break,
            }
        }
    }
    cycles
}

/// Whether the cycle is proper (all arcs irreversible) and homogeneous
/// (every outside vertex pointing into it points at all of it).
fn contractible(d: &Digraph, cycle: &[usize]) -> bool {
    let len = cycle.len();
    if len < 3 {
        return false;
    }
    for i in 0..len {
        if !d.is_irreversible(cycle[i], cycle[(i + 1) % len]) {
            return false;
        }
    }
    let members: BTreeSet<usize> = cycle.iter().copied().collect();
    for &v in cycle {
        for u in d.in_neighbors(v) {
            if !members.contains(&u) && !members.iter().all(|&x| d.has_arc(u, x)) {
                return false;
            }
        }
    }
    true
}

/// The contracted digraph: surviving vertices keep their ids, each
/// contracted cycle becomes a fresh node numbered from `n` upward.
struct Contraction {
    rep: Vec<usize>,
    nodes: Vec<usize>,
    arcs: BTreeSet<(usize, usize)>,
    members: BTreeMap<usize, Vec<usize>>,
}

fn contract(d: &Digraph, cycles: &[Vec<usize>]) -> Contraction {
    let n = d.n();
    let mut rep: Vec<usize> = (0..n).collect();
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, cycle) in cycles.iter().enumerate() {
        let super_id = n + i;
        for &v in cycle {
            rep[v] = super_id;
        }
        members.insert(super_id, cycle.clone());
    }
    let mut nodes: BTreeSet<usize> = rep.iter().copied().collect();
    let mut arcs = BTreeSet::new();
    for (u, v) in d.arcs() {
        let (ru, rv) = (rep[u], rep[v]);
        if ru != rv {
            arcs.insert((ru, rv));
        }
    }
    nodes.extend(members.keys());
    Contraction {
        rep,
        nodes: nodes.into_iter().collect(),
        arcs,
        members,
    }
}

impl Contraction {
    fn closed_in_neighborhood(&self, v: usize) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = self
            .arcs
            .iter()
            .filter(|&&(_, head)| head == v)
            .map(|&(tail, _)| tail)
            .collect();
        set.insert(v);
        set
    }

    fn out_neighbors(&self, v: usize) -> Vec<usize> {
        self.arcs
            .iter()
            .filter(|&&(tail, _)| tail == v)
            .map(|&(_, head)| head)
            .collect()
    }
}

/// Repairs a weight function into an equilibrium.
///
/// Contractible cycles of a maximum cycle cover are merged first; a merged
/// node receives twice the mean weight of its members, the inverse of the
/// final expansion that hands every member half the merged weight. Then,
/// while some node in ascending id order holds positive weight inside an
/// over-dominated closed in-neighborhood, the surplus is shed there and any
/// neighborhoods this starves are topped back up. The audit at the end
/// rejects outputs that are not fractional kernels in equilibrium.
pub fn compute_nash(d: &Digraph, start: &KernelFunction) -> Result<KernelFunction, NashError> {
    compute_nash_with(d, start, NashOptions::default())
}

/// As [`compute_nash`], with an explicit adjustment cap.
pub fn compute_nash_with(
    d: &Digraph,
    start: &KernelFunction,
    options: NashOptions,
) -> Result<KernelFunction, NashError> {
    if start.weights.len() != d.n() {
        return Err(NashError::WrongLength {
            got: start.weights.len(),
            want: d.n(),
        });
    }

    let cycles: Vec<Vec<usize>> = cover_cycles(&max_cycle_cover(d))
        .into_iter()
        .filter(|c| contractible(d, c))
        .collect();
    let con = contract(d, &cycles);

    let mut w: BTreeMap<usize, Rational> = BTreeMap::new();
    for &node in &con.nodes {
        let value = match con.members.get(&node) {
            Some(cycle) => {
                let total = start.sum_over(cycle);
                total * int(2) / int(cycle.len() as i64)
            }
            None => start.weights[node].clone(),
        };
        w.insert(node, value);
    }

    let one = int(1);
    let mut fires: u64 = 0;
    loop {
        let over = con.nodes.iter().copied().find(|&v| {
            w[&v] > Rational::zero()
                && con
                    .closed_in_neighborhood(v)
                    .iter()
                    .map(|u| w[u].clone())
                    .fold(Rational::zero(), |a, b| a + b)
                    > one
        });
        let Some(v) = over else { break };
        fires += 1;
        if fires > options.iteration_cap {
            return Err(NashError::IterationCap {
                cap: options.iteration_cap,
            });
        }
        let total: Rational = con
            .closed_in_neighborhood(v)
            .iter()
            .map(|u| w[u].clone())
            .fold(Rational::zero(), |a, b| a + b);
        let surplus = total - one.clone();
        let cut = surplus.min(w[&v].clone());
        *w.get_mut(&v).expect("node has a weight") -= cut;
        // Shedding at v can starve the neighborhoods v points into; refill
        // those to exactly one, recomputing after each refill.
        for v2 in con.out_neighbors(v) {
            let t2: Rational = con
                .closed_in_neighborhood(v2)
                .iter()
                .map(|u| w[u].clone())
                .fold(Rational::zero(), |a, b| a + b);
            if t2 < one {
                *w.get_mut(&v2).expect("node has a weight") += one.clone() - t2;
            }
        }
    }

    let weights: Vec<Rational> = (0..d.n())
        .map(|v| {
            let node = con.rep[v];
            if con.members.contains_key(&node) {
                w[&node].clone() / int(2)
            } else {
                w[&node].clone()
            }
        })
        .collect();
    let out = KernelFunction { weights };

    let mut audit = verify_fractional_kernel(d, &out);
    audit.defects.extend(verify_nash(d, &out).defects);
    if !audit.passed() {
        return Err(NashError::Unrepairable { audit });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::digraph::fixtures::*;
    use super::*;
    use crate::rational::rat;

    #[test]
    fn cycle_cover_of_the_five_cycle_is_the_cycle_itself() {
        let succ = max_cycle_cover(&c5());
        assert_eq!(succ, vec![Some(1), Some(2), Some(3), Some(4), Some(0)]);
        assert_eq!(cover_cycles(&succ), vec![vec![0, 1, 2, 3, 4]]);
        assert!(contractible(&c5(), &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn reversible_pairs_are_never_contracted() {
        let succ = max_cycle_cover(&two_cycle());
        assert_eq!(cover_cycles(&succ), vec![vec![0, 1]]);
        assert!(!contractible(&two_cycle(), &[0, 1]));
    }

    #[test]
    fn path_weights_pass_through_unchanged() {
        let d = Digraph::from_labeled_arcs(
            vec!["u".into(), "v".into(), "w".into()],
            &[("u", "v"), ("v", "w")],
        )
        .unwrap();
        let start = KernelFunction {
            weights: vec![int(1), int(0), int(1)],
        };
        assert_eq!(compute_nash(&d, &start).unwrap(), start);
    }

    #[test]
    fn uniform_five_cycle_survives_contraction_and_expansion() {
        let start = KernelFunction::uniform(5, rat(1, 2));
        assert_eq!(compute_nash(&c5(), &start).unwrap(), start);
    }

    #[test]
    fn surplus_at_the_shared_sink_is_shed() {
        let d = double_pointer();
        let start = KernelFunction::uniform(5, rat(1, 2));
        let out = compute_nash(&d, &start).unwrap();
        assert_eq!(
            out.weights,
            vec![rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2), int(0)]
        );
    }

    #[test]
    fn shedding_refills_a_starved_successor() {
        let d = Digraph::from_labeled_arcs(
            vec!["x".into(), "y".into(), "z".into()],
            &[("x", "y"), ("y", "z")],
        )
        .unwrap();
        let start = KernelFunction {
            weights: vec![int(1), int(1), int(0)],
        };
        let out = compute_nash(&d, &start).unwrap();
        assert_eq!(out.weights, vec![int(1), int(0), int(1)]);
    }

    #[test]
    fn zero_weights_are_unrepairable() {
        let d = single_arc();
        let start = KernelFunction::uniform(2, int(0));
        let err = compute_nash(&d, &start).unwrap_err();
        assert!(matches!(err, NashError::Unrepairable { .. }));
    }

    #[test]
    fn iteration_cap_fires() {
        let d = Digraph::from_labeled_arcs(
            vec!["x".into(), "y".into(), "z".into()],
            &[("x", "y"), ("y", "z")],
        )
        .unwrap();
        let start = KernelFunction {
            weights: vec![int(1), int(1), int(0)],
        };
        let err = compute_nash_with(&d, &start, NashOptions { iteration_cap: 0 }).unwrap_err();
        assert_eq!(err, NashError::IterationCap { cap: 0 });
        assert!(compute_nash_with(&d, &start, NashOptions { iteration_cap: 1 }).is_ok());
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let d = single_arc();
        let start = KernelFunction::uniform(3, int(0));
        assert_eq!(
            compute_nash(&d, &start).unwrap_err(),
            NashError::WrongLength { got: 3, want: 2 }
        );
    }
}
