//! Reduction from clique-acyclic digraphs to dual-ordered covering systems,
//! and the strong-kernel solver built on top of it.

use std::collections::BTreeSet;

use thiserror::Error;

use super::digraph::{maximal_cliques, topological_positions, CliqueBound, Digraph};
use super::verify::{verify_strong_kernel, KernelAudit, KernelFunction};
use crate::rational::int;
use crate::scarf::{solve_with, ScarfInstance, ScarfSolution, SolveError, SolveOptions, SolveReport};

/// How rows and columns of the reduced system correspond to the digraph.
///
/// Row `i` is the maximal clique `cliques[i]`; its slack occupies column
/// `i`. Vertex `v` occupies column `vertex_col[v]`, which is `m + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReductionMap {
    pub cliques: Vec<BTreeSet<usize>>,
    pub vertex_col: Vec<usize>,
}

/// Digraphs the reduction rejects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("digraph has no vertices")]
    NoVertices,
    #[error("irreversible arcs inside clique {{{}}} form a cycle", .clique.join(","))]
    NotCliqueAcyclic { clique: Vec<String> },
}

/// Builds the covering system whose solutions are strong kernels.
///
/// One row per maximal clique, with right-hand side one, so nonnegative
/// weights satisfying the system sum to exactly one over each clique's
/// support plus slack. The valuation row for clique `K` places the own
/// slack strictly first, then the members of `K` by their positions in the
/// acyclic order (pointed-at vertices first), then the remaining vertices,
/// then foreign slacks:
///
/// - own slack: -1
/// - member at position `p`: `p`
/// - non-member `v`: `|V| + v + 1`
/// - foreign slack of row `l`: `2|V| + m + l + 1`
pub fn reduce_to_scarf(d: &Digraph) -> Result<(ScarfInstance, KernelReductionMap), ReduceError> {
    let nv = d.n();
    if nv == 0 {
        return Err(ReduceError::NoVertices);
    }
    let cliques = maximal_cliques(d, CliqueBound::Unbounded { cap: usize::MAX })
        .expect("unbounded enumeration cannot fail");
    let m = cliques.len();
    let n = m + nv;

    let mut bmat = vec![vec![int(0); n]; m];
    let mut cmat = vec![vec![int(0); n]; m];
    for (i, clique) in cliques.iter().enumerate() {
        bmat[i][i] = int(1);
        for &v in clique {
            bmat[i][m + v] = int(1);
        }
        let order = topological_positions(d, clique).ok_or_else(|| {
            ReduceError::NotCliqueAcyclic {
                clique: clique.iter().map(|&v| d.label(v).to_string()).collect(),
            }
        })?;
        for (l, cell) in cmat[i].iter_mut().enumerate().take(m) {
            *cell = if l == i {
                int(-1)
            } else {
                int((2 * nv + m + l + 1) as i64)
            };
        }
        for v in 0..nv {
            cmat[i][m + v] = int((nv + v + 1) as i64);
        }
        for (v, p) in order {
            cmat[i][m + v] = int(p as i64);
        }
    }
    let rhs = vec![int(1); m];
    let inst = ScarfInstance::new(bmat, rhs, cmat).expect("reduction shapes are consistent");
    let map = KernelReductionMap {
        cliques,
        vertex_col: (m..n).collect(),
    };
    Ok((inst, map))
}

/// Reads the vertex weights out of a solution of the reduced system.
pub fn extract_kernel(solution: &ScarfSolution, map: &KernelReductionMap) -> KernelFunction {
    KernelFunction {
        weights: map
            .vertex_col
            .iter()
            .map(|&col| solution.alpha[col].clone())
            .collect(),
    }
}

/// A solved strong kernel together with the pivot walk that produced it.
#[derive(Debug, Clone)]
pub struct StrongKernelRun {
    pub kernel: KernelFunction,
    pub report: SolveReport,
    pub instance: ScarfInstance,
    pub map: KernelReductionMap,
}

/// Failures of the end-to-end strong-kernel pipeline.
#[derive(Debug, Error)]
pub enum StrongKernelError {
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("solver output failed the strong-kernel audit: {audit}")]
    ExtractionInvariant { audit: KernelAudit },
}

/// Computes a strong kernel of a clique-acyclic digraph by solving the
/// reduced covering system.
///
/// Soundness of the extraction: for any vertex `v`, the solution basis
/// subordinates `v`'s column, so some clique row `i` values `v`'s column at
/// or below every basis column. The own slack of row `i` is valued -1,
/// below every vertex column, hence it cannot be in the basis and row `i`'s
/// equation forces the basic members `T` of clique `i` to carry weight
/// exactly one. Non-members are valued above all members, so `v` must be a
/// member with a position no larger than any vertex of `T`; the acyclic
/// order puts pointed-at vertices first, so every vertex of `T` points at
/// `v` (or is `v`), giving a clique of weight one inside `v`'s closed
/// in-neighborhood. Clique independence is immediate from the row
/// equations, so the extracted weights form a strong kernel.
pub fn solve_strong_kernel(d: &Digraph) -> Result<StrongKernelRun, StrongKernelError> {
    solve_strong_kernel_with(d, SolveOptions::default())
}

/// As [`solve_strong_kernel`], with explicit pivot-walk options.
pub fn solve_strong_kernel_with(
    d: &Digraph,
    options: SolveOptions,
) -> Result<StrongKernelRun, StrongKernelError> {
    let (instance, map) = reduce_to_scarf(d)?;
    let report = solve_with(&instance, &options)?;
    let kernel = extract_kernel(&report.solution, &map);
    let audit = verify_strong_kernel(d, &kernel);
    if !audit.passed() {
        return Err(StrongKernelError::ExtractionInvariant { audit });
    }
    Ok(StrongKernelRun {
        kernel,
        report,
        instance,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::super::digraph::fixtures::*;
    use super::*;
    use crate::rational::{rat, Rational};
    use crate::scarf::validate_instance;

    #[test]
    fn single_arc_reduces_to_the_expected_system() {
        let (inst, map) = reduce_to_scarf(&single_arc()).unwrap();
        assert_eq!(inst.m, 1);
        assert_eq!(inst.n, 3);
        assert_eq!(inst.bmat, vec![vec![int(1), int(1), int(1)]]);
        assert_eq!(inst.rhs, vec![int(1)]);
        // v is pointed at, so it is preferred (position 1) over u.
        assert_eq!(inst.cmat, vec![vec![int(-1), int(2), int(1)]]);
        assert_eq!(map.vertex_col, vec![1, 2]);
        assert!(validate_instance(&inst).passed());
    }

    #[test]
    fn five_cycle_valuation_row() {
        let (inst, map) = reduce_to_scarf(&c5()).unwrap();
        assert_eq!(inst.m, 5);
        assert_eq!(inst.n, 10);
        assert!(validate_instance(&inst).passed());
        // Row 0 is the clique {v1, v2}. The arc v1 -> v2 is irreversible,
        // so v2 takes position 1 and v1 position 2; v3..v5 sit in the
        // non-member band and foreign slacks at the top.
        let want: Vec<Rational> = [-1, 17, 18, 19, 20, 2, 1, 8, 9, 10]
            .into_iter()
            .map(int)
            .collect();
        assert_eq!(inst.cmat[0], want);
        let zero_one: Vec<usize> = map.cliques[0].iter().copied().collect();
        assert_eq!(zero_one, vec![0, 1]);
    }

    #[test]
    fn single_arc_kernel_is_integral() {
        let run = solve_strong_kernel(&single_arc()).unwrap();
        assert_eq!(run.kernel.weights, vec![int(1), int(0)]);
        // One ordinal move to {u}, one cardinal move that finds it feasible.
        assert_eq!(run.report.steps, 2);
    }

    #[test]
    fn reversible_pair_keeps_the_pointed_at_vertex() {
        // With no irreversible arc the acyclic order falls back to vertex
        // ids, making u the less preferred member.
        let run = solve_strong_kernel(&two_cycle()).unwrap();
        assert_eq!(run.kernel.weights, vec![int(0), int(1)]);
    }

    #[test]
    fn five_cycle_kernel_is_uniform_one_half() {
        let run = solve_strong_kernel(&c5()).unwrap();
        assert_eq!(run.kernel.weights, vec![rat(1, 2); 5]);
        assert!(verify_strong_kernel(&c5(), &run.kernel).passed());
    }

    #[test]
    fn double_pointer_kernel_is_valid() {
        let run = solve_strong_kernel(&double_pointer()).unwrap();
        assert!(verify_strong_kernel(&double_pointer(), &run.kernel).passed());
    }

    #[test]
    fn rejections() {
        let empty = Digraph::new(vec![]).unwrap();
        assert!(matches!(
            reduce_to_scarf(&empty),
            Err(ReduceError::NoVertices)
        ));
        let cyclic = directed_triangle();
        assert!(matches!(
            solve_strong_kernel(&cyclic),
            Err(StrongKernelError::Reduce(ReduceError::NotCliqueAcyclic { .. }))
        ));
    }
}
