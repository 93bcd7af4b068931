//! Repair a fractional kernel into a Nash equilibrium of the stability
//! game.
//!
//! In the game each vertex puts mass on staying put; a profile is a Nash
//! equilibrium when every vertex with positive weight can point at a
//! closed in-neighborhood that is exactly saturated. A fractional kernel
//! can fail that: here `v` is dominated by both `a` and `b` with total
//! in-weight 3/2, so `v`'s own mass is wasted and shedding it is the only
//! repair. The procedure contracts homogeneous irreversible cycles,
//! sheds surplus weight downstream, and expands the cycles back.

use scarfkit::kernels::{
    compute_nash, verify_fractional_kernel, verify_nash, Digraph, KernelFunction,
};
use scarfkit::rational::{format_rational, rat};

fn show(d: &Digraph, f: &KernelFunction) -> String {
    d.labels()
        .iter()
        .zip(&f.weights)
        .map(|(l, w)| format!("{l}={}", format_rational(w)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() {
    // Two reversible pairs both pointing at a fifth vertex.
    let d = Digraph::from_labeled_arcs(
        ["a", "a2", "b", "b2", "v"].map(String::from).to_vec(),
        &[("a", "a2"), ("a2", "a"), ("b", "b2"), ("b2", "b"), ("a", "v"), ("b", "v")],
    )
    .expect("well-formed digraph");

    let start = KernelFunction {
        weights: vec![rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)],
    };
    println!("start:    {}", show(&d, &start));
    println!(
        "fractional kernel: {}, Nash: {}",
        verify_fractional_kernel(&d, &start).passed(),
        verify_nash(&d, &start).passed(),
    );

    let repaired = compute_nash(&d, &start).expect("repairable");
    println!("repaired: {}", show(&d, &repaired));
    println!(
        "fractional kernel: {}, Nash: {}",
        verify_fractional_kernel(&d, &repaired).passed(),
        verify_nash(&d, &repaired).passed(),
    );

    // A profile that is already an equilibrium passes through untouched.
    let again = compute_nash(&d, &repaired).expect("repairable");
    println!("idempotent: {}", again == repaired);
}
