//! The fractional stable paths view of kernels on a two-cycle.
//!
//! Reducing a digraph adds a destination adjacent to everything; each
//! vertex ranks its direct hop below the two-hop routes through the
//! vertices pointing at it. Stable path weightings of the reduced instance
//! correspond to Nash-equilibrium kernels via the direct-hop weights.
//! On the reversible pair u <-> v the stable set is a whole segment:
//! w(ud) = a, w(uvd) = 1-a, w(vd) = 1-a, w(vud) = a for any a in [0, 1].

use scarfkit::fspp::{
    digraph_to_fspp, enumerate_stable_weights, fspp_solution_to_kernel, verify_eps_solution,
    verify_eps_stable, verify_stable,
};
use scarfkit::kernels::{verify_nash, Digraph};
use scarfkit::rational::{format_rational, rat};

fn main() {
    let d = Digraph::from_labeled_arcs(
        ["u", "v"].map(String::from).to_vec(),
        &[("u", "v"), ("v", "u")],
    )
    .expect("well-formed digraph");
    let (inst, map) = digraph_to_fspp(&d);

    println!("reduced instance permits:");
    for v in 0..inst.n_nodes() {
        for (i, path) in inst.paths_of(v).iter().enumerate() {
            println!("  {} at rank {}", inst.path_name(path), i + 1);
        }
    }

    // Every stable weighting with denominator at most 3, by grid search.
    let stable = enumerate_stable_weights(&inst, 3);
    println!("stable weightings with denominator <= 3: {}", stable.len());
    for w in &stable {
        let parts: Vec<String> = (0..inst.n_nodes())
            .flat_map(|v| {
                w.w[v].iter().enumerate().map(move |(i, x)| (v, i, x))
            })
            .map(|(v, i, x)| {
                format!("{}={}", inst.path_name(&inst.paths_of(v)[i]), format_rational(x))
            })
            .collect();
        let kernel = fspp_solution_to_kernel(w, &map);
        println!(
            "  {} -> kernel is Nash: {}",
            parts.join(" "),
            verify_nash(&d, &kernel).passed(),
        );
    }

    // The two relaxations genuinely differ. The flat 1/2 profile is stable,
    // hence eps-stable for every eps; it is not an eps-solution at
    // eps = 1/10 because that notion demands the branch-two equality to
    // overshoot by exactly eps.
    let half = stable
        .iter()
        .find(|w| w.w[0][0] == rat(1, 2))
        .expect("the uniform profile is stable");
    let eps = rat(1, 10);
    println!(
        "uniform 1/2: stable {}, eps-stable {}, eps-solution {}",
        verify_stable(&inst, half).passed(),
        verify_eps_stable(&inst, half, &eps).passed(),
        verify_eps_solution(&inst, half, &eps).passed(),
    );
}
