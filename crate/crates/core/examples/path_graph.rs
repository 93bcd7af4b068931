//! Enumerate the bipartite walk graph of a small instance and read the
//! solver's path off it.
//!
//! One side holds the lexicographically feasible bases containing column 1;
//! the other holds the subordinating column sets avoiding it. Edges join
//! vertices that differ exactly by column 1. The theory forces the shape of
//! this graph: the all-slack basis has degree 1, every other non-terminal
//! vertex has degree 0 or 2, and the component of the start is a simple
//! path ending at a vertex with both properties. The solver follows exactly
//! that path, so the brute-force graph doubles as an independent audit.

use scarfkit::gen::random_scarf;
use scarfkit::oracle::{build_path_graph, DEFAULT_COLUMN_CAP};
use scarfkit::scarf::solve;

fn names(cols: &std::collections::BTreeSet<usize>) -> Vec<usize> {
    cols.iter().map(|&j| j + 1).collect()
}

fn main() {
    let inst = random_scarf(3, 6, 11).expect("valid shape");
    let graph = build_path_graph(&inst, DEFAULT_COLUMN_CAP).expect("small enough");

    println!(
        "{} lex-feasible bases with column 1, {} subordinating sets without it",
        graph.f_side.len(),
        graph.s_side.len(),
    );

    let complaints = graph.audit();
    if complaints.is_empty() {
        println!("degree audit: ok");
    } else {
        for line in &complaints {
            println!("degree audit: {line}");
        }
    }

    let walk = graph.start_component().expect("audited above");
    println!("walk from the all-slack basis:");
    for (side, cols) in &walk {
        println!("  {side:?} {:?}", names(cols));
    }

    // The solver must land on the same terminal set.
    let solved = solve(&inst).expect("valid instance");
    let terminal: Vec<usize> = solved.solution.basis.iter().map(|j| j + 1).collect();
    println!("solver terminal basis: {terminal:?}");
    println!("walk steps: graph {} vs solver {}", walk.len() - 1, solved.steps);

    println!("\nDOT (render with `dot -Tsvg`):\n{}", graph.to_dot());
}
