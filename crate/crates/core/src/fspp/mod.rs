//! The fractional stable paths problem: ranked path instances, the four
//! weight audits, the digraph reduction with its kernel back-mapping, and
//! a grid-search oracle for small instances.

mod instance;
mod reduce;
mod search;
mod verify;

pub use instance::{
    proper_segments, suffix_paths, FsppInstance, FsppInstanceError, FsppWeights, Path,
};
#[cfg(test)]
pub(crate) use instance::fixtures;
pub use reduce::{digraph_to_fspp, fspp_solution_to_kernel, FsppNodeMap};
pub use search::{enumerate_stable_weights, farey_values};
pub use verify::{
    verify_eps_solution, verify_eps_stable, verify_feasible, verify_stable, FsppAudit, FsppDefect,
};
