//! Exact solvers and verifiers built around one pivoting engine.
//!
//! The core object is a [`scarf::ScarfInstance`]: a nonnegative constraint
//! matrix with a leading identity block, a nonnegative right-hand side, and a
//! row-ordered preference matrix. [`scarf::solve`] walks a path of
//! alternating cardinal and ordinal pivots, entirely in exact rational
//! arithmetic, and lands on a set of columns that is simultaneously a
//! feasible basis and subordinating. Everything else in the crate is either
//! a reduction into that shape or a verifier for what comes out:
//!
//! * [`oracle`] re-derives the same answers by brute force on small
//!   instances and exposes the bipartite pivot graph for auditing.
//! * [`kernels`] turns clique-acyclic digraphs into instances whose
//!   solutions are strong fractional kernels, and post-processes them into
//!   Nash equilibria of the induced stability game.
//! * [`matchings`] does the same for hypergraph preference systems and
//!   fractional stable matchings.
//! * [`fspp`] hosts the stable-paths verifiers (exact and epsilon-relaxed)
//!   and the digraph-to-stable-paths reduction.
//! * [`io`], [`gen`] and [`bench`] cover JSON formats, seeded generators and
//!   the CSV benchmark harness; [`cli`] wires all of it into the `scarfkit`
//!   binary.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --example solve_instance    # build, canonicalize and solve one instance
//! cargo run --example path_graph        # enumerate both vertex classes and dump the walk graph
//! cargo run --example strong_kernel     # digraph -> scarf -> strong fractional kernel
//! cargo run --example nash_equilibrium  # repair an over-dominated kernel into a Nash one
//! cargo run --example stable_matching   # hypergraph preferences -> fractional stable matching
//! cargo run --example stable_paths      # stable-paths verifiers and the kernel back-map
//! cargo run --example random_instances  # seeded corpus, solver vs brute-force oracle
//! ```

pub mod bench;
pub mod cli;
pub mod fspp;
pub mod gen;
pub mod io;
pub mod kernels;
pub mod linalg;
pub mod matchings;
pub mod oracle;
pub mod rational;
pub mod scarf;

pub use rational::Rational;
