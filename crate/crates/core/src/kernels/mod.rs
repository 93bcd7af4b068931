//! Kernels of clique-acyclic digraphs: structural validation, the
//! reduction to a dual-ordered covering system, strong-kernel solving, and
//! equilibrium repair.

mod digraph;
mod nash;
mod reduce;
mod validate;
mod verify;

pub use digraph::{
    is_clique_acyclic, maximal_cliques, topological_positions, CliqueBound, CliqueError, Digraph,
    DigraphError,
};
pub use nash::{compute_nash, compute_nash_with, NashError, NashOptions, DEFAULT_NASH_CAP};
pub use reduce::{
    extract_kernel, reduce_to_scarf, solve_strong_kernel, solve_strong_kernel_with,
    KernelReductionMap, ReduceError, StrongKernelError, StrongKernelRun,
};
pub use validate::{
    validate_3kernel_instance, KernelInstanceFinding, KernelInstanceReport, DEFAULT_CYCLE_CAP,
};
pub use verify::{
    verify_fractional_kernel, verify_nash, verify_strong_kernel, KernelAudit, KernelDefect,
    KernelFunction,
};
