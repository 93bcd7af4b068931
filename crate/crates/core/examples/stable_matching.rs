//! Stable fractional matchings of preference systems, integral and not.
//!
//! Each vertex ranks the hyperedges containing it. A nonnegative edge
//! weighting is a stable fractional matching when no vertex carries more
//! than weight 1 and every edge has an endpoint whose equally-or-better
//! edges already carry weight exactly 1. Two classics below: an odd cycle
//! of pairwise preferences, where the only stable weighting is fractional,
//! and a 2x2 marriage market with aligned preferences, where the solver
//! lands on the integral matching and no blocking edge survives.

use std::collections::BTreeSet;

use scarfkit::matchings::{
    blocking_edges, solve_stable_matching, verify_stable_matching, HypergraphPrefSystem,
};
use scarfkit::rational::format_rational;

fn edge(vertices: &[usize]) -> BTreeSet<usize> {
    vertices.iter().copied().collect()
}

fn report(sys: &HypergraphPrefSystem) {
    let run = solve_stable_matching(sys).expect("solvable");
    for (h, weight) in run.matching.weights.iter().enumerate() {
        println!("  w({}) = {}", sys.edge_name(h), format_rational(weight));
    }
    let audit = verify_stable_matching(sys, &run.matching);
    println!("  stable: {}", audit.passed());
    if let Ok(blocking) = blocking_edges(sys, &run.matching) {
        println!("  blocking edges: {}", blocking.len());
    }
}

fn main() {
    // a prefers {a,b}, b prefers {b,c}, c prefers {c,a}: a preference
    // cycle with no integral stable matching. Orders list every incident
    // edge, least preferred first.
    let triangle = HypergraphPrefSystem::new(
        ["a", "b", "c"].map(String::from).to_vec(),
        vec![edge(&[0, 1]), edge(&[1, 2]), edge(&[0, 2])],
        vec![vec![2, 0], vec![0, 1], vec![1, 2]],
    )
    .expect("valid preference system");
    println!("cyclic triangle:");
    report(&triangle);

    // m1 and w1 rank each other first, m2 and w2 are each other's second
    // choice; the integral matching {m1,w1}, {m2,w2} is the unique stable
    // outcome.
    let marriage = HypergraphPrefSystem::new(
        ["m1", "m2", "w1", "w2"].map(String::from).to_vec(),
        vec![edge(&[0, 2]), edge(&[0, 3]), edge(&[1, 2]), edge(&[1, 3])],
        vec![vec![1, 0], vec![3, 2], vec![2, 0], vec![3, 1]],
    )
    .expect("valid preference system");
    println!("2x2 marriage market:");
    report(&marriage);
}
