//! Seeded instance generators. Identical parameters and seed always
//! produce identical output.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kernels::Digraph;
use crate::rational::int;
use crate::scarf::ScarfInstance;

/// Rejected generator parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("need 1 <= m < n, got m={m}, n={n}")]
    BadShape { m: usize, n: usize },
}

/// A random covering system satisfying every structural hypothesis:
/// `B = [I | nonnegative columns]` with no zero column, nonnegative `b`,
/// and valuation rows built band by band (own slack strictly lowest,
/// then non-slack entries sampled from a narrow range so ties are common,
/// then foreign slacks strictly highest).
pub fn random_scarf(m: usize, n: usize, seed: u64) -> Result<ScarfInstance, GenError> {
    if m == 0 || m >= n {
        return Err(GenError::BadShape { m, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bmat = vec![vec![int(0); n]; m];
    for (i, row) in bmat.iter_mut().enumerate() {
        row[i] = int(1);
    }
    for col in m..n {
        loop {
            let entries: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=4)).collect();
            if entries.iter().any(|&e| e > 0) {
                for (row, &e) in bmat.iter_mut().zip(&entries) {
                    row[col] = int(e);
                }
                break;
            }
        }
    }
    let rhs: Vec<_> = (0..m).map(|_| int(rng.gen_range(0..=9))).collect();
    let mut cmat = vec![vec![int(0); n]; m];
    for (i, row) in cmat.iter_mut().enumerate() {
        let diag: i64 = rng.gen_range(-5..=0);
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = if j == i {
                int(diag)
            } else if j < m {
                // Foreign slacks sit strictly above the non-slack band
                // (diag+1 ..= diag+4).
                int(diag + rng.gen_range(5..=8))
            } else {
                int(diag + rng.gen_range(1..=4))
            };
        }
    }
    Ok(ScarfInstance::new(bmat, rhs, cmat).expect("generated shapes are consistent"))
}

/// A random clique-acyclic digraph: vertices are shuffled into a hidden
/// order, each forward pair becomes an arc with probability `arc_prob`,
/// and each included arc gains its reverse with probability `rev_prob`.
/// Every irreversible arc respects the hidden order, so no clique can
/// carry an irreversible cycle.
pub fn random_clique_acyclic(nv: usize, arc_prob: f64, rev_prob: f64, seed: u64) -> Digraph {
    assert!(nv >= 1, "need at least one vertex");
    assert!((0.0..=1.0).contains(&arc_prob), "arc_prob must be in [0, 1]");
    assert!((0.0..=1.0).contains(&rev_prob), "rev_prob must be in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (1..=nv).map(|i| format!("v{i}")).collect();
    let mut d = Digraph::new(labels).expect("generated labels are distinct");
    let mut order: Vec<usize> = (0..nv).collect();
    for i in (1..nv).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    for i in 0..nv {
        for j in (i + 1)..nv {
            if rng.gen_bool(arc_prob) {
                d.add_arc(order[i], order[j]).expect("indices are in range");
                if rng.gen_bool(rev_prob) {
                    d.add_arc(order[j], order[i]).expect("indices are in range");
                }
            }
        }
    }
    d
}

/// The directed cycle on `k` vertices: arcs `v1 -> v2 -> ... -> vk -> v1`.
/// At `k = 2` both arcs exist, making the pair reversible.
pub fn directed_cycle(k: usize) -> Digraph {
    assert!(k >= 2, "a cycle needs at least two vertices");
    let labels: Vec<String> = (1..=k).map(|i| format!("v{i}")).collect();
    let mut d = Digraph::new(labels).expect("generated labels are distinct");
    for i in 0..k {
        d.add_arc(i, (i + 1) % k).expect("indices are in range");
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::is_clique_acyclic;
    use crate::scarf::validate_instance;

    #[test]
    fn random_instances_validate() {
        for seed in 0..20 {
            let inst = random_scarf(3, 7, seed).unwrap();
            let report = validate_instance(&inst);
            assert!(report.passed(), "seed {seed}: {report}");
        }
        let inst = random_scarf(2, 3, 1).unwrap();
        assert!(validate_instance(&inst).passed());
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(random_scarf(4, 9, 42), random_scarf(4, 9, 42));
        assert_ne!(random_scarf(4, 9, 42), random_scarf(4, 9, 43));
        assert_eq!(
            random_clique_acyclic(6, 0.5, 0.5, 7),
            random_clique_acyclic(6, 0.5, 0.5, 7)
        );
    }

    #[test]
    fn shape_preconditions_are_enforced() {
        assert_eq!(random_scarf(3, 3, 0), Err(GenError::BadShape { m: 3, n: 3 }));
        assert_eq!(random_scarf(0, 2, 0), Err(GenError::BadShape { m: 0, n: 2 }));
    }

    #[test]
    fn full_forward_probability_gives_a_transitive_tournament() {
        let d = random_clique_acyclic(5, 1.0, 0.0, 3);
        assert_eq!(d.arcs().count(), 10);
        assert!(is_clique_acyclic(&d));
        // No reversible pair anywhere.
        for (u, v) in d.arcs().collect::<Vec<_>>() {
            assert!(d.is_irreversible(u, v));
        }
    }

    #[test]
    fn full_reversal_probability_gives_no_irreversible_arcs() {
        let d = random_clique_acyclic(5, 0.7, 1.0, 3);
        for (u, v) in d.arcs().collect::<Vec<_>>() {
            assert!(!d.is_irreversible(u, v));
        }
        assert!(is_clique_acyclic(&d));
    }

    #[test]
    fn sampled_digraphs_are_clique_acyclic() {
        for seed in 0..30 {
            let d = random_clique_acyclic(8, 0.4, 0.3, seed);
            assert!(is_clique_acyclic(&d), "seed {seed}");
        }
    }

    #[test]
    fn cycles_come_out_as_fixtures() {
        let c5 = directed_cycle(5);
        assert_eq!(c5.n(), 5);
        assert_eq!(c5.arcs().count(), 5);
        assert!(c5.is_irreversible(0, 1));
        assert!(c5.has_arc(4, 0));

        let pair = directed_cycle(2);
        assert!(pair.has_arc(0, 1));
        assert!(pair.has_arc(1, 0));
        assert!(!pair.is_irreversible(0, 1));

        let triangle = directed_cycle(3);
        assert!(!is_clique_acyclic(&triangle));
    }
}
