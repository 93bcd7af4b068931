//! The acceptance gate. Each test prints one `PASS criterion-NN ...` line
//! (visible under `--nocapture`) and fails loudly otherwise.

use std::collections::BTreeSet;
use std::time::Instant;

use scarfkit::fspp::{
    digraph_to_fspp, enumerate_stable_weights, fspp_solution_to_kernel, verify_eps_solution,
    verify_eps_stable, verify_stable, FsppWeights,
};
use scarfkit::gen::{directed_cycle, random_clique_acyclic, random_scarf};
use scarfkit::io::{digraph_to_json, kernel_to_json, scarf_instance_to_json, solution_to_json};
use scarfkit::kernels::{
    compute_nash, maximal_cliques, solve_strong_kernel, verify_fractional_kernel, verify_nash,
    verify_strong_kernel, CliqueBound, Digraph,
};
use scarfkit::matchings::{
    blocking_edges, solve_stable_matching, verify_stable_matching, HypergraphPrefSystem,
};
use scarfkit::oracle::{brute_solve, build_path_graph, m_subsets, DEFAULT_COLUMN_CAP};
use scarfkit::rational::{int, rat, Rational};
use scarfkit::scarf::{
    canonicalize, is_subordinating, ordinal_extensions, solve, validate_instance, verify_solution,
    ScarfInstance,
};

fn conclude(name: &str, pass: bool) {
    println!("{} {name}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name}");
}

fn row(entries: &[i64]) -> Vec<Rational> {
    entries.iter().map(|&e| int(e)).collect()
}

fn ex1() -> ScarfInstance {
    ScarfInstance::new(
        vec![row(&[1, 0, 1]), row(&[0, 1, 1])],
        row(&[2, 1]),
        vec![row(&[0, 9, 5]), row(&[9, 0, 5])],
    )
    .unwrap()
}

/// Deterministic random instances cycling through the allowed shapes.
fn scarf_corpus(count: usize, shapes: &[(usize, usize)], seed_base: u64) -> Vec<ScarfInstance> {
    (0..count)
        .map(|i| {
            let (m, n) = shapes[i % shapes.len()];
            random_scarf(m, n, seed_base + i as u64).unwrap()
        })
        .collect()
}

const WIDE_SHAPES: [(usize, usize); 8] =
    [(2, 5), (3, 7), (4, 9), (5, 10), (2, 10), (3, 6), (4, 7), (5, 8)];
const NARROW_SHAPES: [(usize, usize); 6] = [(2, 5), (3, 7), (4, 9), (2, 6), (3, 8), (4, 6)];

/// Deterministic clique-acyclic digraphs with all maximal cliques of size
/// at most three, found by scanning seeds and keeping the qualifiers.
fn kernel_corpus(count: usize) -> Vec<Digraph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count && seed < 10_000 {
        let nv = 4 + (seed as usize) % 7;
        let d = random_clique_acyclic(nv, 0.35, 0.3, seed);
        if maximal_cliques(&d, CliqueBound::AtMostThree).is_ok() {
            out.push(d);
        }
        seed += 1;
    }
    assert_eq!(out.len(), count, "seed scan exhausted before {count} digraphs");
    out
}

#[test]
fn criterion_01_solver_agrees_with_oracle_on_200_instances() {
    let started = Instant::now();
    for (i, inst) in scarf_corpus(200, &WIDE_SHAPES, 0).iter().enumerate() {
        assert!(validate_instance(inst).passed(), "instance {i}");
        let run = solve(inst).unwrap_or_else(|e| panic!("instance {i}: {e}"));
        let all = brute_solve(inst, DEFAULT_COLUMN_CAP).unwrap();
        assert!(
            all.iter().any(|s| s.basis == run.solution.basis),
            "instance {i}: basis {:?} not in the oracle's list",
            run.solution.basis,
        );
    }
    let elapsed = started.elapsed();
    conclude(
        "criterion-01 solver terminates and matches brute force on 200 seeded instances",
        elapsed.as_secs() < 60,
    );
}

#[test]
fn criterion_02_every_instance_has_a_solution_by_brute_force() {
    let pass = scarf_corpus(200, &WIDE_SHAPES, 0)
        .iter()
        .all(|inst| !brute_solve(inst, DEFAULT_COLUMN_CAP).unwrap().is_empty());
    conclude("criterion-02 brute force finds at least one solution on all 200", pass);
}

#[test]
fn criterion_03_ordinal_extension_counts() {
    for (i, inst) in scarf_corpus(50, &NARROW_SHAPES, 1000).iter().enumerate() {
        let canon = canonicalize(inst);
        for k_set in m_subsets(inst.n, inst.m - 1) {
            if is_subordinating(&k_set, &canon).is_none() {
                continue;
            }
            let extensions = ordinal_extensions(&k_set, &canon)
                .unwrap_or_else(|e| panic!("instance {i}, set {k_set:?}: {e}"));
            let inside_slacks = k_set.iter().all(|&j| j < inst.m);
            let want = if inside_slacks { 1 } else { 2 };
            assert_eq!(
                extensions.len(),
                want,
                "instance {i}: subordinating set {k_set:?} has {} extensions",
                extensions.len(),
            );
        }
    }
    conclude("criterion-03 subordinating (m-1)-sets extend 2 ways, 1 from the slack corner", true);
}

#[test]
fn criterion_04_path_graph_degrees_and_start_component() {
    for (i, inst) in scarf_corpus(50, &NARROW_SHAPES, 1000).iter().enumerate() {
        let graph = build_path_graph(inst, DEFAULT_COLUMN_CAP).unwrap();
        let complaints = graph.audit();
        assert!(complaints.is_empty(), "instance {i}: {complaints:?}");
        graph
            .start_component()
            .unwrap_or_else(|e| panic!("instance {i}: {e}"));
    }
    conclude("criterion-04 walk graphs have the theorem's degrees on all 50", true);
}

#[test]
fn criterion_05_worked_instance_lands_on_the_known_answer() {
    let run = solve(&ex1()).unwrap();
    let pass = run.solution.basis == vec![0, 2]
        && run.solution.alpha == vec![int(1), int(0), int(1)]
        && run.steps == 2;
    conclude("criterion-05 the worked 2x3 instance gives J={1,3}, alpha=(1,0,1), 2 pivots", pass);
}

#[test]
fn criterion_06_strong_kernels_on_100_small_clique_digraphs() {
    let started = Instant::now();
    for (i, d) in kernel_corpus(100).iter().enumerate() {
        let run = solve_strong_kernel(d).unwrap_or_else(|e| panic!("digraph {i}: {e}"));
        let audit = verify_strong_kernel(d, &run.kernel);
        assert!(audit.passed(), "digraph {i}: {audit}");
    }
    conclude(
        "criterion-06 100 seeded clique-acyclic digraphs yield verified strong kernels",
        started.elapsed().as_secs() < 120,
    );
}

#[test]
fn criterion_07_five_cycle_kernel_is_exactly_one_half() {
    let c5 = directed_cycle(5);
    let run = solve_strong_kernel(&c5).unwrap();
    let pass = run.kernel.weights == vec![rat(1, 2); 5];
    conclude("criterion-07 the directed five-cycle solves to the flat 1/2 kernel", pass);
}

#[test]
fn criterion_08_degenerate_and_tied_variants_solve() {
    let degenerate = ScarfInstance::new(
        vec![row(&[1, 0, 1]), row(&[0, 1, 1])],
        row(&[1, 1]),
        vec![row(&[0, 9, 5]), row(&[9, 0, 5])],
    )
    .unwrap();
    // Ties inside C: the non-slack column meets the foreign slack in both
    // rows. The ordering hypothesis is weak, so this stays valid.
    let tied = ScarfInstance::new(
        vec![row(&[1, 0, 1]), row(&[0, 1, 1])],
        row(&[2, 1]),
        vec![row(&[0, 9, 9]), row(&[9, 0, 9])],
    )
    .unwrap();
    let pass = [degenerate, tied].iter().all(|inst| {
        validate_instance(inst).passed()
            && solve(inst)
                .map(|run| verify_solution(inst, &run.solution).passed())
                .unwrap_or(false)
    });
    conclude("criterion-08 degenerate rhs and tied preferences both solve and verify", pass);
}

#[test]
fn criterion_09_equilibrium_repair_on_30_kernels() {
    let corpus = kernel_corpus(30);
    for (i, d) in corpus.iter().enumerate() {
        let start = solve_strong_kernel(d).unwrap().kernel;
        let repaired = compute_nash(d, &start).unwrap_or_else(|e| panic!("digraph {i}: {e}"));
        assert!(
            verify_fractional_kernel(d, &repaired).passed(),
            "digraph {i}: repair broke the kernel property",
        );
        assert!(
            verify_nash(d, &repaired).passed(),
            "digraph {i}: repair is not an equilibrium",
        );
        if verify_nash(d, &start).passed() {
            assert_eq!(repaired, start, "digraph {i}: equilibrium input was altered");
        }
    }
    conclude("criterion-09 repaired kernels pass both audits, equilibria pass through", true);
}

#[test]
fn criterion_10_matching_fixtures_solve_as_known() {
    let edge = |vs: &[usize]| vs.iter().copied().collect::<BTreeSet<usize>>();

    let single = HypergraphPrefSystem::new(
        ["a", "b"].map(String::from).to_vec(),
        vec![edge(&[0, 1])],
        vec![vec![0], vec![0]],
    )
    .unwrap();
    let single_run = solve_stable_matching(&single).unwrap();
    let single_ok = single_run.matching.weights == vec![int(1)];

    let triangle = HypergraphPrefSystem::new(
        ["a", "b", "c"].map(String::from).to_vec(),
        vec![edge(&[0, 1]), edge(&[1, 2]), edge(&[0, 2])],
        vec![vec![2, 0], vec![0, 1], vec![1, 2]],
    )
    .unwrap();
    let triangle_run = solve_stable_matching(&triangle).unwrap();
    let triangle_ok = triangle_run.matching.weights == vec![rat(1, 2); 3];

    let marriage = HypergraphPrefSystem::new(
        ["m1", "m2", "w1", "w2"].map(String::from).to_vec(),
        vec![edge(&[0, 2]), edge(&[0, 3]), edge(&[1, 2]), edge(&[1, 3])],
        vec![vec![1, 0], vec![3, 2], vec![2, 0], vec![3, 1]],
    )
    .unwrap();
    let marriage_run = solve_stable_matching(&marriage).unwrap();
    let marriage_ok = marriage_run.matching.weights == vec![int(1), int(0), int(0), int(1)]
        && verify_stable_matching(&marriage, &marriage_run.matching).passed()
        && blocking_edges(&marriage, &marriage_run.matching).unwrap().is_empty();

    conclude(
        "criterion-10 single edge, cyclic triangle and 2x2 marriage solve as expected",
        single_ok && triangle_ok && marriage_ok,
    );
}

#[test]
fn criterion_11_zero_epsilon_collapses_to_exact_stability() {
    // Twenty pairs: four reduced digraphs crossed with five weight recipes.
    let digraphs = [
        directed_cycle(2),
        directed_cycle(5),
        Digraph::from_labeled_arcs(vec!["u".into(), "v".into()], &[("u", "v")]).unwrap(),
        directed_cycle(3),
    ];
    let mut pairs = 0;
    for d in &digraphs {
        let (inst, _) = digraph_to_fspp(d);
        let recipes: Vec<FsppWeights> = (0..5)
            .map(|r| {
                let mut w = FsppWeights::zero(&inst);
                for v in 0..inst.n_nodes() {
                    for i in 0..inst.paths_of(v).len() {
                        w.w[v][i] = match r {
                            0 => int(0),
                            1 => int(if i == 0 { 1 } else { 0 }),
                            2 => rat(1, 2),
                            3 => int(1),
                            _ => rat(((v + i) % 2) as i64, 1),
                        };
                    }
                }
                w
            })
            .collect();
        for w in &recipes {
            let exact = verify_stable(&inst, w).passed();
            let zero = int(0);
            assert_eq!(exact, verify_eps_solution(&inst, w, &zero).passed());
            assert_eq!(exact, verify_eps_stable(&inst, w, &zero).passed());
            pairs += 1;
        }
    }
    assert_eq!(pairs, 20);

    // The reversible pair accepts the two known stable profiles and
    // rejects the greedy one.
    let (inst, _) = digraph_to_fspp(&directed_cycle(2));
    let mut best_route = FsppWeights::zero(&inst);
    best_route.w[0][1] = int(1);
    best_route.w[1][0] = int(1);
    let mut uniform = FsppWeights::zero(&inst);
    for v in 0..2 {
        for i in 0..2 {
            uniform.w[v][i] = rat(1, 2);
        }
    }
    let mut greedy = FsppWeights::zero(&inst);
    greedy.w[0][0] = int(1);
    let pass = verify_stable(&inst, &best_route).passed()
        && verify_stable(&inst, &uniform).passed()
        && !verify_stable(&inst, &greedy).passed();
    conclude("criterion-11 zero-epsilon relaxations equal exact stability on 20 pairs", pass);
}

#[test]
fn criterion_12_tiny_digraph_stable_weights_map_to_equilibria() {
    let started = Instant::now();
    let mut found = 0usize;
    for nv in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (0..nv)
            .flat_map(|u| (0..nv).filter_map(move |v| (u != v).then_some((u, v))))
            .collect();
        for mask in 0..(1u32 << pairs.len()) {
            let labels: Vec<String> = (1..=nv).map(|i| format!("v{i}")).collect();
            let mut d = Digraph::new(labels).unwrap();
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    d.add_arc(u, v).unwrap();
                }
            }
            if !scarfkit::kernels::is_clique_acyclic(&d) {
                continue;
            }
            let (inst, map) = digraph_to_fspp(&d);
            for w in enumerate_stable_weights(&inst, 2) {
                let kernel = fspp_solution_to_kernel(&w, &map);
                let fractional = verify_fractional_kernel(&d, &kernel);
                assert!(fractional.passed(), "mask {mask} on {nv} vertices: {fractional}");
                let audit = verify_nash(&d, &kernel);
                assert!(audit.passed(), "mask {mask} on {nv} vertices: {audit}");
                found += 1;
            }
        }
    }
    conclude(
        "criterion-12 stable path weights on tiny digraphs map to Nash kernels",
        found > 0 && started.elapsed().as_secs() < 60,
    );
}

#[test]
fn criterion_13_identical_seeds_give_identical_bytes() {
    let once = || {
        let inst = random_scarf(4, 9, 777).unwrap();
        let solved = solve(&inst).unwrap();
        let d = random_clique_acyclic(8, 0.35, 0.3, 777);
        let kernel = solve_strong_kernel(&d).unwrap().kernel;
        format!(
            "{}{}{}{}",
            scarf_instance_to_json(&inst),
            solution_to_json(&solved.solution),
            digraph_to_json(&d),
            kernel_to_json(&kernel, &d),
        )
    };
    conclude("criterion-13 rerunning the seeded pipeline reproduces every byte", once() == once());
}
