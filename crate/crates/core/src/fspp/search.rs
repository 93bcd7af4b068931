//! Exhaustive search for stable weight assignments over a bounded grid of
//! rationals: the oracle that checks small instances end to end.

use std::collections::BTreeSet;

use num::{One, Zero};

use super::instance::{FsppInstance, FsppWeights};
use super::verify::verify_stable;
use crate::rational::{rat, Rational};

/// All reduced fractions in `[0, 1]` with denominator at most `bound`, in
/// ascending order.
pub fn farey_values(bound: u64) -> Vec<Rational> {
    let mut values: BTreeSet<Rational> = BTreeSet::new();
    values.insert(Rational::zero());
    for q in 1..=bound.max(1) {
        for p in 0..=q {
            values.insert(rat(p as i64, q as i64));
        }
    }
    values.into_iter().collect()
}

/// Every stable weight assignment whose values all have denominator at
/// most `bound`, in lexicographic order of the flattened weight table.
///
/// The search walks the paths node by node, pruning any branch whose node
/// total already exceeds one, and keeps the assignments that pass
/// [`verify_stable`]. Exponential in the number of permitted paths; meant
/// for instances with a handful of them.
pub fn enumerate_stable_weights(inst: &FsppInstance, bound: u64) -> Vec<FsppWeights> {
    let values = farey_values(bound);
    let slots: Vec<(usize, usize)> = (0..inst.n_nodes())
        .flat_map(|v| (0..inst.paths_of(v).len()).map(move |i| (v, i)))
        .collect();
    let mut current = FsppWeights::zero(inst);
    let mut totals = vec![Rational::zero(); inst.n_nodes()];
    let mut found = Vec::new();

    fn descend(
        inst: &FsppInstance,
        slots: &[(usize, usize)],
        values: &[Rational],
        pos: usize,
        current: &mut FsppWeights,
        totals: &mut [Rational],
        found: &mut Vec<FsppWeights>,
    ) {
        let Some(&(v, i)) = slots.get(pos) else {
            if verify_stable(inst, current).passed() {
                found.push(current.clone());
            }
            return;
        };
        for value in values {
            let next_total = totals[v].clone() + value.clone();
            if next_total > Rational::one() {
                break;
            }
            current.w[v][i] = value.clone();
            let prev = std::mem::replace(&mut totals[v], next_total);
            descend(inst, slots, values, pos + 1, current, totals, found);
            totals[v] = prev;
        }
        current.w[v][i] = Rational::zero();
    }

    descend(inst, &slots, &values, 0, &mut current, &mut totals, &mut found);
    found
}

#[cfg(test)]
mod tests {
    use super::super::instance::fixtures::two_cycle;
    use super::super::verify::weights_of;
    use super::*;
    use crate::rational::int;

    #[test]
    fn farey_grid_is_sorted_and_reduced() {
        let f2 = farey_values(2);
        assert_eq!(f2, vec![int(0), rat(1, 2), int(1)]);
        let f3 = farey_values(3);
        assert_eq!(
            f3,
            vec![int(0), rat(1, 3), rat(1, 2), rat(2, 3), int(1)]
        );
    }

    #[test]
    fn the_worked_instance_has_exactly_the_stable_segment() {
        // By hand: stable assignments are {ud:a, uvd:1-a, vd:1-a, vud:a},
        // one for each a. With denominators at most 2 that leaves three.
        let inst = two_cycle();
        let found = enumerate_stable_weights(&inst, 2);
        let expect = vec![
            weights_of(&[&[int(0), int(1)], &[int(1), int(0)], &[]]),
            weights_of(&[&[rat(1, 2), rat(1, 2)], &[rat(1, 2), rat(1, 2)], &[]]),
            weights_of(&[&[int(1), int(0)], &[int(0), int(1)], &[]]),
        ];
        assert_eq!(found, expect);
    }

    #[test]
    fn a_finer_grid_only_adds_segment_points() {
        let inst = two_cycle();
        let found = enumerate_stable_weights(&inst, 3);
        assert_eq!(found.len(), 5);
        for w in &found {
            let a = w.w[0][0].clone();
            assert_eq!(w.w[0][1], int(1) - a.clone());
            assert_eq!(w.w[1][0], int(1) - a.clone());
            assert_eq!(w.w[1][1], a);
        }
    }
}
