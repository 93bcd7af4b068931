//! Solve the directed five-cycle for a strong fractional kernel.
//!
//! Vertices carry weights; a clique may hold at most total weight 1, and
//! every vertex must see, among itself and the vertices pointing at it, a
//! clique of total weight exactly 1. On an odd cycle no integral kernel
//! exists; the
//! pivoting route finds the fractional one, a flat 1/2 everywhere, exactly.

use scarfkit::gen::directed_cycle;
use scarfkit::kernels::{
    maximal_cliques, solve_strong_kernel, validate_3kernel_instance, verify_strong_kernel,
    CliqueBound, DEFAULT_CYCLE_CAP,
};
use scarfkit::rational::format_rational;

fn main() {
    let c5 = directed_cycle(5);

    // Structural sanity first: cliques of size at most three, no clique
    // cycles, and all proper cycles homogeneous and disjoint.
    let report = validate_3kernel_instance(&c5, DEFAULT_CYCLE_CAP);
    println!("instance validation passes: {}", report.passed());

    let cliques = maximal_cliques(&c5, CliqueBound::Unbounded { cap: 1 << 20 })
        .expect("five vertices");
    println!("maximal cliques: {}", cliques.len());

    let run = solve_strong_kernel(&c5).expect("clique-acyclic");
    println!(
        "reduced to a {} x {} covering system, solved in {} steps",
        run.instance.m, run.instance.n, run.report.steps,
    );
    for (label, weight) in c5.labels().iter().zip(&run.kernel.weights) {
        println!("  f({label}) = {}", format_rational(weight));
    }

    let audit = verify_strong_kernel(&c5, &run.kernel);
    println!("strong-kernel audit: {}", if audit.passed() { "ok".into() } else { audit.to_string() });
}
