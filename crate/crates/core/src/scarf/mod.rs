//! The exact pivoting engine.
//!
//! An instance couples an `m x n` nonnegative matrix `B` (leading identity
//! block, `m < n`), a nonnegative right-hand side, and a preference matrix
//! `C` whose rows put the own diagonal entry at the bottom and the other
//! slack columns at the top. [`solve`] walks the bipartite graph whose
//! vertices are feasible bases containing column 0 on one side and
//! subordinating column sets avoiding column 0 on the other, and stops at a
//! set that is both.

mod basis;
mod canonical;
mod instance;
mod solution;
mod solver;

pub use basis::{cardinal_pivot, solve_basis, FeasibleBasis, PivotError};
pub(crate) use basis::lex_feasible;
pub use canonical::{
    canonicalize, is_subordinating, ordinal_extensions, CanonicalScarf, LemmaViolation,
    SubordinatingSet, TieBreak,
};
pub use instance::{validate_instance, HypothesisViolation, ScarfInstance, ShapeError, ValidationReport};
#[cfg(test)]
pub(crate) use instance::fixtures;
pub use solution::{verify_solution, ScarfSolution, SolutionAudit, SolutionDefect};
pub(crate) use solution::weak_witness;
pub use solver::{solve, solve_with, Side, SolveError, SolveOptions, SolveReport, WalkState};
