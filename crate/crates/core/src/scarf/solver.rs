use super::basis::{cardinal_pivot, solve_basis, PivotError};
use super::canonical::{canonicalize, ordinal_extensions, LemmaViolation};
use super::instance::{validate_instance, ScarfInstance, ValidationReport};
use super::solution::{weak_witness, ScarfSolution};
use std::collections::BTreeSet;
use thiserror::Error;

/// Which side of the bipartite walk graph a vertex lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// A feasible basis containing column 0.
    Feasible,
    /// A subordinating set avoiding column 0.
    Subordinating,
}

/// One visited vertex of the walk, in visiting order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkState {
    pub side: Side,
    pub cols: Vec<usize>,
    /// Edges traversed up to and including the move that reached this vertex.
    pub steps: u64,
    pub cap: u64,
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Edge-traversal cap. Defaults to `4 * C(n, m)`, truncated at `10^7`.
    pub step_cap: Option<u64>,
    /// Waive the boundedness surrogate during validation. The pivot itself
    /// still reports an unbounded direction if one is actually met.
    pub assume_bounded: bool,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("invalid instance: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Pivot(#[from] PivotError),
    #[error("step cap {cap} exceeded; this signals an implementation bug, not a hard instance")]
    StepLimitExceeded { cap: u64 },
    #[error(transparent)]
    Lemma(#[from] LemmaViolation),
}

/// A solved instance plus the walk that produced it.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: ScarfSolution,
    /// Edges traversed in the walk graph.
    pub steps: u64,
    pub trace: Vec<WalkState>,
}

pub fn solve(inst: &ScarfInstance) -> Result<SolveReport, SolveError> {
    solve_with(inst, &SolveOptions::default())
}

/// Runs the alternating walk.
///
/// Start at the slack basis `{0..m}`; its subordinating companion is the
/// unique extension of `{1..m}`. From a subordinating set `S` adjacent to
/// the current basis `F`, pivot the one column of `S - F` into `F`; if
/// column 0 leaves, `S` itself became feasible and the walk is over.
/// Otherwise the new basis `F'` shares all but column 0 with `S`, and that
/// shared part has exactly one extension besides the one leading back to
/// `S`; if the fresh extension is column 0, `F'` is subordinating and the
/// walk is over. Every vertex on the path has degree two except the start
/// and the terminal, so the walk can never branch or back up.
pub fn solve_with(inst: &ScarfInstance, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let report = validate_instance(inst);
    if !(report.passed() || (opts.assume_bounded && report.only_boundedness())) {
        return Err(SolveError::Invalid(report));
    }
    let (m, n) = (inst.m, inst.n);
    let cap = opts.step_cap.unwrap_or_else(|| default_step_cap(n, m));
    let canon = canonicalize(inst);

    let mut trace: Vec<WalkState> = Vec::new();
    let mut steps: u64 = 0;

    let start: BTreeSet<usize> = (0..m).collect();
    let mut basis = solve_basis(&start, inst).expect("the slack basis is always feasible");
    trace.push(WalkState { side: Side::Feasible, cols: basis.cols.clone(), steps, cap });

    // first ordinal move: extend {1..m}
    if cap == 0 {
        return Err(SolveError::StepLimitExceeded { cap });
    }
    let k: BTreeSet<usize> = (1..m).collect();
    let ext = ordinal_extensions(&k, &canon)?;
    let mut sub: BTreeSet<usize> = k;
    sub.insert(ext[0]);
    let mut entering = ext[0];
    steps += 1;
    trace.push(WalkState {
        side: Side::Subordinating,
        cols: sub.iter().copied().collect(),
        steps,
        cap,
    });

    loop {
        // cardinal move: bring the subordinating side's spare column in
        if steps + 1 > cap {
            return Err(SolveError::StepLimitExceeded { cap });
        }
        let (leaving, next) = cardinal_pivot(&basis, entering, inst)?;
        basis = next;
        steps += 1;
        trace.push(WalkState { side: Side::Feasible, cols: basis.cols.clone(), steps, cap });
        if leaving == 0 {
            // the subordinating set itself turned feasible
            break;
        }

        // ordinal move: the basis minus column 0 has one fresh extension
        let shared: BTreeSet<usize> = basis.cols.iter().copied().filter(|&c| c != 0).collect();
        let returning = sub
            .difference(&basis.col_set())
            .copied()
            .next()
            .expect("the previous subordinating set sticks out of the new basis");
        let ext = ordinal_extensions(&shared, &canon)?;
        let fresh = ext
            .into_iter()
            .find(|&j| j != returning)
            .expect("one of the two extensions leads somewhere new");
        if fresh == 0 {
            // the basis itself is subordinating
            break;
        }
        if steps + 1 > cap {
            return Err(SolveError::StepLimitExceeded { cap });
        }
        sub = shared;
        sub.insert(fresh);
        entering = fresh;
        steps += 1;
        trace.push(WalkState {
            side: Side::Subordinating,
            cols: sub.iter().copied().collect(),
            steps,
            cap,
        });
    }

    let witness =
        weak_witness(inst, &basis.cols).expect("rank subordination implies weak subordination");
    let solution =
        ScarfSolution { basis: basis.cols.clone(), alpha: basis.full_weights(n), witness };
    Ok(SolveReport { solution, steps, trace })
}

/// `4 * C(n, m)`, truncated at `10^7`.
pub(crate) fn default_step_cap(n: usize, m: usize) -> u64 {
    const TRUNCATE: u64 = 10_000_000;
    let mut acc: u64 = 4;
    for i in 0..m.min(n - m) {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
        if acc >= TRUNCATE {
            return TRUNCATE;
        }
    }
    acc.min(TRUNCATE)
}
