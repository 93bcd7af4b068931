use super::instance::ScarfInstance;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// A tie in one preference row and how it was resolved: `kept` received the
/// smaller rank, `demoted` the larger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieBreak {
    pub row: usize,
    pub kept: usize,
    pub demoted: usize,
}

/// An instance together with its strict integer rank matrix.
///
/// Each row of `ranks` is a permutation of `1..=n`, order-consistent with
/// the corresponding row of `C`. Ties are broken so the hypotheses survive
/// in strict form: the own slack column first, then non-slack columns by
/// ascending index, then the other slack columns by ascending index. All
/// ordinal reasoning downstream happens on `ranks`; weights and the final
/// witness still come from the original instance.
#[derive(Debug, Clone)]
pub struct CanonicalScarf {
    pub base: ScarfInstance,
    pub ranks: Vec<Vec<usize>>,
    pub tiebreaks: Vec<TieBreak>,
}

/// Tie class within a row: own slack below everything, foreign slacks above.
fn tie_class(row: usize, col: usize, m: usize) -> u8 {
    if col == row {
        0
    } else if col >= m {
        1
    } else {
        2
    }
}

pub fn canonicalize(inst: &ScarfInstance) -> CanonicalScarf {
    let (m, n) = (inst.m, inst.n);
    let mut ranks = vec![vec![0usize; n]; m];
    let mut tiebreaks = Vec::new();
    for (i, rank_row) in ranks.iter_mut().enumerate() {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            inst.cmat[i][a]
                .cmp(&inst.cmat[i][b])
                .then_with(|| tie_class(i, a, m).cmp(&tie_class(i, b, m)))
                .then_with(|| a.cmp(&b))
        });
        for (pos, &col) in order.iter().enumerate() {
            rank_row[col] = pos + 1;
        }
        for w in order.windows(2) {
            if inst.cmat[i][w[0]] == inst.cmat[i][w[1]] {
                tiebreaks.push(TieBreak { row: i, kept: w[0], demoted: w[1] });
            }
        }
    }
    CanonicalScarf { base: inst.clone(), ranks, tiebreaks }
}

/// A column set together with a witness row for every column of the
/// instance: the row where that column sits at or below everything the set
/// offers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubordinatingSet {
    pub cols: BTreeSet<usize>,
    /// column -> smallest qualifying row
    pub witness: BTreeMap<usize, usize>,
}

/// Checks whether `cols` subordinates every column under the rank matrix,
/// returning the witness map (column -> smallest qualifying row) when it
/// does. Works for sets of any size; the empty set subordinates everything
/// vacuously.
pub fn is_subordinating(
    cols: &BTreeSet<usize>,
    canon: &CanonicalScarf,
) -> Option<BTreeMap<usize, usize>> {
    let (m, n) = (canon.base.m, canon.base.n);
    let row_min: Vec<Option<usize>> = (0..m)
        .map(|i| cols.iter().map(|&j| canon.ranks[i][j]).min())
        .collect();
    let mut witness = BTreeMap::new();
    for k in 0..n {
        let row = (0..m).find(|&i| match row_min[i] {
            Some(bound) => canon.ranks[i][k] <= bound,
            None => true,
        })?;
        witness.insert(k, row);
    }
    Some(witness)
}

/// The one-column extension count came out wrong; the walk graph cannot
/// have the promised path structure, so this is an internal failure, not a
/// property of the input.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error(
    "ordinal step at {{{}}} found {} extensions {:?}, expected {expected}",
    subset.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join(","),
    found.len(),
    found.iter().map(|c| c + 1).collect::<Vec<_>>()
)]
pub struct LemmaViolation {
    pub subset: Vec<usize>,
    pub found: Vec<usize>,
    pub expected: usize,
}

/// All columns `j` such that `k_set + j` is subordinating, ascending.
///
/// For a subordinating set of size `m - 1` the count is certified before
/// returning: exactly 2, or exactly 1 when the set lies inside the slack
/// columns `0..m`.
pub fn ordinal_extensions(
    k_set: &BTreeSet<usize>,
    canon: &CanonicalScarf,
) -> Result<Vec<usize>, LemmaViolation> {
    let (m, n) = (canon.base.m, canon.base.n);
    assert_eq!(k_set.len() + 1, m, "ordinal step wants a set of size m - 1");
    let mut found = Vec::new();
    for j in 0..n {
        if k_set.contains(&j) {
            continue;
        }
        let mut probe = k_set.clone();
        probe.insert(j);
        if is_subordinating(&probe, canon).is_some() {
            found.push(j);
        }
    }
    let expected = if k_set.iter().all(|&j| j < m) { 1 } else { 2 };
    if found.len() != expected {
        return Err(LemmaViolation { subset: k_set.iter().copied().collect(), found, expected });
    }
    Ok(found)
}
