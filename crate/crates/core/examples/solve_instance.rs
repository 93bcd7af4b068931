//! Build one small covering system by hand, solve it, and check the answer.
//!
//! The instance has two constraint rows and three columns, so a solution
//! needs a pair of columns that is at once a feasible basis for
//! `B x = b, x >= 0` and subordinating: every column of `C` must be
//! row-wise at least as low as some chosen column, in the row that
//! witnesses it.

use scarfkit::rational::{format_rational, int};
use scarfkit::scarf::{canonicalize, solve, validate_instance, verify_solution, ScarfInstance};

fn row(entries: &[i64]) -> Vec<scarfkit::Rational> {
    entries.iter().map(|&e| int(e)).collect()
}

fn main() {
    let inst = ScarfInstance::new(
        vec![row(&[1, 0, 1]), row(&[0, 1, 1])],
        row(&[2, 1]),
        vec![row(&[0, 9, 5]), row(&[9, 0, 5])],
    )
    .expect("shapes are consistent");

    let report = validate_instance(&inst);
    println!("hypotheses hold: {}", report.passed());

    // The walk works on strict per-row rankings; ties in C are broken in
    // favor of the own slack column, then by index.
    let canon = canonicalize(&inst);
    for (i, ranks) in canon.ranks.iter().enumerate() {
        println!("row {} ranks: {:?}", i + 1, ranks);
    }

    let outcome = solve(&inst).expect("valid instance");
    let sol = &outcome.solution;
    println!("walk length: {} steps", outcome.steps);
    println!(
        "basis (1-based): {:?}",
        sol.basis.iter().map(|j| j + 1).collect::<Vec<_>>()
    );
    let alpha: Vec<String> = sol.alpha.iter().map(format_rational).collect();
    println!("alpha: [{}]", alpha.join(", "));
    for (&col, &row) in &sol.witness {
        println!(
            "column {} is subordinated in row {}: c[{}][{}] = {}",
            col + 1,
            row + 1,
            row + 1,
            col + 1,
            format_rational(&inst.cmat[row][col]),
        );
    }

    let audit = verify_solution(&inst, sol);
    println!("verifier agrees: {}", audit.passed());
}
