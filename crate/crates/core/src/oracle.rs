//! Brute-force ground truth for small instances.
//!
//! Everything here is exhaustive: enumerate all feasible bases, all
//! subordinating sets, every solution, and the full bipartite walk graph
//! the solver moves through. The solver must agree with these on anything
//! small enough to enumerate, which is what the acceptance suite checks.

use crate::scarf::{
    canonicalize, is_subordinating, lex_feasible, solve_basis, CanonicalScarf, ScarfInstance,
    ScarfSolution, Side,
};
use itertools::Itertools;
use std::collections::BTreeSet;
use thiserror::Error;

/// Default bound on the column count for exhaustive enumeration.
pub const DEFAULT_COLUMN_CAP: usize = 16;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("instance has {n} columns; enumeration is capped at {cap}")]
pub struct CapExceeded {
    pub n: usize,
    pub cap: usize,
}

fn check_cap(n: usize, cap: usize) -> Result<(), CapExceeded> {
    if n > cap {
        return Err(CapExceeded { n, cap });
    }
    Ok(())
}

/// All size-`m` subsets of `0..n` in lexicographic order.
pub fn m_subsets(n: usize, m: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0..n).combinations(m).map(|c| c.into_iter().collect())
}

/// All size-`m` column sets that solve `B_J x = b` nonnegatively, in
/// lexicographic order. Plain feasibility: a zero right-hand side makes
/// every invertible set qualify.
pub fn enumerate_feasible_bases(
    inst: &ScarfInstance,
    cap: usize,
) -> Result<Vec<BTreeSet<usize>>, CapExceeded> {
    check_cap(inst.n, cap)?;
    Ok(m_subsets(inst.n, inst.m)
        .filter(|cols| solve_basis(cols, inst).is_some())
        .collect())
}

/// All size-`m` subordinating sets under the rank matrix, in lexicographic
/// order.
pub fn enumerate_subordinating(
    canon: &CanonicalScarf,
    cap: usize,
) -> Result<Vec<BTreeSet<usize>>, CapExceeded> {
    check_cap(canon.base.n, cap)?;
    Ok(m_subsets(canon.base.n, canon.base.m)
        .filter(|cols| is_subordinating(cols, canon).is_some())
        .collect())
}

/// Every solution the verifier would accept: plain-feasible basis plus weak
/// subordination of all columns in the original preference matrix, sorted
/// by column set.
pub fn brute_solve(inst: &ScarfInstance, cap: usize) -> Result<Vec<ScarfSolution>, CapExceeded> {
    check_cap(inst.n, cap)?;
    let mut out = Vec::new();
    for cols in m_subsets(inst.n, inst.m) {
        let Some(basis) = solve_basis(&cols, inst) else { continue };
        let Some(witness) = crate::scarf::weak_witness(inst, &basis.cols) else { continue };
        out.push(ScarfSolution {
            basis: basis.cols.clone(),
            alpha: basis.full_weights(inst.n),
            witness,
        });
    }
    Ok(out)
}

/// The bipartite graph the walk lives in.
///
/// One side holds the feasible bases containing column 0, the other the
/// subordinating sets avoiding column 0; a basis and a set are adjacent
/// when they differ exactly by column 0. Feasibility here is the same
/// symbolically perturbed notion the pivot rule uses, so the structure
/// below holds for degenerate right-hand sides too, matching what the
/// solver actually traverses. On instances where no basic solution has a
/// zero entry this coincides with plain feasibility.
#[derive(Debug, Clone)]
pub struct PathGraph {
    pub f_side: Vec<BTreeSet<usize>>,
    pub s_side: Vec<BTreeSet<usize>>,
    /// Pairs of indices into `f_side` and `s_side`.
    pub edges: Vec<(usize, usize)>,
    /// Basis that is also subordinating.
    pub f_terminal: Vec<bool>,
    /// Subordinating set that is also feasible.
    pub s_terminal: Vec<bool>,
}

pub fn build_path_graph(inst: &ScarfInstance, cap: usize) -> Result<PathGraph, CapExceeded> {
    check_cap(inst.n, cap)?;
    let canon = canonicalize(inst);
    let mut f_side = Vec::new();
    let mut s_side = Vec::new();
    for cols in m_subsets(inst.n, inst.m) {
        let feasible = lex_feasible(&cols, inst);
        let sub = is_subordinating(&cols, &canon).is_some();
        if cols.contains(&0) {
            if feasible {
                f_side.push((cols, sub));
            }
        } else if sub {
            s_side.push((cols, feasible));
        }
    }
    let mut edges = Vec::new();
    for (fi, (f, _)) in f_side.iter().enumerate() {
        for (si, (s, _)) in s_side.iter().enumerate() {
            if f.difference(s).eq([&0]) {
                edges.push((fi, si));
            }
        }
    }
    let (f_side, f_terminal) = f_side.into_iter().unzip();
    let (s_side, s_terminal) = s_side.into_iter().unzip();
    Ok(PathGraph { f_side, s_side, edges, f_terminal, s_terminal })
}

impl PathGraph {
    pub fn f_degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|(f, _)| *f == i).count()
    }

    pub fn s_degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|(_, s)| *s == i).count()
    }

    /// Index of the all-slack basis on the feasible side.
    pub fn start(&self) -> Option<usize> {
        let m = self.f_side.first().map(|f| f.len())?;
        let start: BTreeSet<usize> = (0..m).collect();
        self.f_side.iter().position(|f| *f == start)
    }

    /// Structural complaints, empty when the graph looks like the theory
    /// says it must: the start vertex has degree 1, every other vertex that
    /// is not a terminal has degree 0 or 2, terminals have degree at most 1,
    /// and the start's component is a simple path ending at a terminal.
    pub fn audit(&self) -> Vec<String> {
        let mut complaints = Vec::new();
        let start = self.start();
        if start.is_none() {
            complaints.push("all-slack start vertex is missing".to_string());
        }
        for (i, cols) in self.f_side.iter().enumerate() {
            let d = self.f_degree(i);
            let expect_one = Some(i) == start || self.f_terminal[i];
            if Some(i) == start && self.f_terminal[i] {
                complaints.push(format!("start vertex {} is terminal", fmt_cols(cols)));
            }
            if expect_one && d != 1 {
                complaints.push(format!("vertex {} has degree {d}, expected 1", fmt_cols(cols)));
            }
            if !expect_one && d != 0 && d != 2 {
                complaints
                    .push(format!("vertex {} has degree {d}, expected 0 or 2", fmt_cols(cols)));
            }
        }
        for (i, cols) in self.s_side.iter().enumerate() {
            let d = self.s_degree(i);
            if self.s_terminal[i] && d != 1 {
                complaints.push(format!("vertex {} has degree {d}, expected 1", fmt_cols(cols)));
            }
            if !self.s_terminal[i] && d != 0 && d != 2 {
                complaints
                    .push(format!("vertex {} has degree {d}, expected 0 or 2", fmt_cols(cols)));
            }
        }
        match self.start_component() {
            Ok(path) => {
                let (side, last) = path.last().expect("path contains the start").clone();
                let terminal = match side {
                    Side::Feasible => {
                        self.f_side.iter().position(|f| *f == last).map(|i| self.f_terminal[i])
                    }
                    Side::Subordinating => {
                        self.s_side.iter().position(|s| *s == last).map(|i| self.s_terminal[i])
                    }
                };
                if terminal != Some(true) {
                    complaints.push(format!(
                        "start component ends at {}, which is not terminal",
                        fmt_cols(&last)
                    ));
                }
            }
            Err(e) => complaints.push(e),
        }
        complaints
    }

    /// The walk the solver performs, read off the graph: start at the
    /// all-slack basis and keep taking the edge that does not back up.
    pub fn start_component(&self) -> Result<Vec<(Side, BTreeSet<usize>)>, String> {
        let Some(start) = self.start() else {
            return Err("all-slack start vertex is missing".to_string());
        };
        let mut path = vec![(Side::Feasible, self.f_side[start].clone())];
        let mut seen_f = BTreeSet::from([start]);
        let mut seen_s = BTreeSet::new();
        let mut here = (Side::Feasible, start);
        let mut prev: Option<(Side, usize)> = None;
        loop {
            let nexts: Vec<(Side, usize)> = match here {
                (Side::Feasible, i) => self
                    .edges
                    .iter()
                    .filter(|(f, _)| *f == i)
                    .map(|&(_, s)| (Side::Subordinating, s))
                    .filter(|v| Some(*v) != prev)
                    .collect(),
                (Side::Subordinating, i) => self
                    .edges
                    .iter()
                    .filter(|(_, s)| *s == i)
                    .map(|&(f, _)| (Side::Feasible, f))
                    .filter(|v| Some(*v) != prev)
                    .collect(),
            };
            match nexts.as_slice() {
                [] => return Ok(path),
                [next] => {
                    let fresh = match next {
                        (Side::Feasible, i) => seen_f.insert(*i),
                        (Side::Subordinating, i) => seen_s.insert(*i),
                    };
                    if !fresh {
                        return Err("start component is not a simple path".to_string());
                    }
                    let cols = match next {
                        (Side::Feasible, i) => self.f_side[*i].clone(),
                        (Side::Subordinating, i) => self.s_side[*i].clone(),
                    };
                    path.push((next.0, cols));
                    prev = Some(here);
                    here = *next;
                }
                _ => {
                    return Err(format!(
                        "start component branches at {}",
                        fmt_cols(match here {
                            (Side::Feasible, i) => &self.f_side[i],
                            (Side::Subordinating, i) => &self.s_side[i],
                        })
                    ))
                }
            }
        }
    }

    /// Graphviz rendering; bases are boxes, subordinating sets ellipses,
    /// terminals drawn doubled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph walk {\n");
        for (i, cols) in self.f_side.iter().enumerate() {
            let peripheries = if self.f_terminal[i] { 2 } else { 1 };
            out.push_str(&format!(
                "  f{i} [label=\"{}\", shape=box, peripheries={peripheries}];\n",
                fmt_cols(cols)
            ));
        }
        for (i, cols) in self.s_side.iter().enumerate() {
            let peripheries = if self.s_terminal[i] { 2 } else { 1 };
            out.push_str(&format!(
                "  s{i} [label=\"{}\", peripheries={peripheries}];\n",
                fmt_cols(cols)
            ));
        }
        for (f, s) in &self.edges {
            out.push_str(&format!("  f{f} -- s{s};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// 1-based column set, the way diagnostics and files spell it.
fn fmt_cols(cols: &BTreeSet<usize>) -> String {
    format!("{{{}}}", cols.iter().map(|c| (c + 1).to_string()).join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::scarf::ScarfInstance;

    fn ex1() -> ScarfInstance {
        ScarfInstance::new(
            vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]],
            vec![int(2), int(1)],
            vec![vec![int(0), int(9), int(5)], vec![int(9), int(0), int(5)]],
        )
        .unwrap()
    }

    fn set(cols: &[usize]) -> BTreeSet<usize> {
        cols.iter().copied().collect()
    }

    #[test]
    fn enumerations_on_the_worked_instance() {
        let inst = ex1();
        assert_eq!(
            enumerate_feasible_bases(&inst, DEFAULT_COLUMN_CAP).unwrap(),
            vec![set(&[0, 1]), set(&[0, 2])]
        );
        let canon = canonicalize(&inst);
        assert_eq!(
            enumerate_subordinating(&canon, DEFAULT_COLUMN_CAP).unwrap(),
            vec![set(&[0, 2]), set(&[1, 2])]
        );
    }

    #[test]
    fn zero_rhs_makes_every_invertible_set_feasible() {
        let mut inst = ex1();
        inst.rhs = vec![int(0), int(0)];
        // all three 2-subsets have invertible submatrices
        assert_eq!(enumerate_feasible_bases(&inst, 16).unwrap().len(), 3);
    }

    #[test]
    fn single_row_subordinating_singleton() {
        let inst = ScarfInstance::new(
            vec![vec![int(1), int(1)]],
            vec![int(1)],
            vec![vec![int(0), int(1)]],
        )
        .unwrap();
        let canon = canonicalize(&inst);
        assert_eq!(enumerate_subordinating(&canon, 16).unwrap(), vec![set(&[1])]);
    }

    #[test]
    fn cap_is_enforced() {
        let inst = ex1();
        assert_eq!(
            enumerate_feasible_bases(&inst, 2),
            Err(CapExceeded { n: 3, cap: 2 })
        );
    }

    #[test]
    fn brute_solutions_of_the_worked_instance() {
        let sols = brute_solve(&ex1(), 16).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].basis, vec![0, 2]);
        assert_eq!(sols[0].alpha, vec![int(1), int(0), int(1)]);
    }

    #[test]
    fn walk_graph_of_the_worked_instance() {
        let g = build_path_graph(&ex1(), 16).unwrap();
        assert_eq!(g.f_side, vec![set(&[0, 1]), set(&[0, 2])]);
        assert_eq!(g.s_side, vec![set(&[1, 2])]);
        assert_eq!(g.edges, vec![(0, 0), (1, 0)]);
        assert_eq!(g.f_terminal, vec![false, true]);
        assert_eq!(g.s_terminal, vec![false]);
        assert!(g.audit().is_empty());

        let path = g.start_component().unwrap();
        assert_eq!(
            path,
            vec![
                (Side::Feasible, set(&[0, 1])),
                (Side::Subordinating, set(&[1, 2])),
                (Side::Feasible, set(&[0, 2])),
            ]
        );
    }

    #[test]
    fn dot_dump_is_stable() {
        let dot = build_path_graph(&ex1(), 16).unwrap().to_dot();
        assert!(dot.starts_with("graph walk {"));
        assert!(dot.contains("f1 [label=\"{1,3}\", shape=box, peripheries=2];"));
        assert!(dot.contains("f0 -- s0;"));
    }
}
