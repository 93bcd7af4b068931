use super::instance::ScarfInstance;
use crate::linalg;
use crate::rational::Rational;
use num::{Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

/// A feasible basis: `m` columns whose square submatrix of `B` is invertible
/// and solves `B_J x = b` nonnegatively. `cols` is kept strictly ascending
/// and `x` is aligned with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleBasis {
    pub cols: Vec<usize>,
    pub x: Vec<Rational>,
}

impl FeasibleBasis {
    pub fn col_set(&self) -> BTreeSet<usize> {
        self.cols.iter().copied().collect()
    }

    /// The basic solution padded with zeros to full column length.
    pub fn full_weights(&self, n: usize) -> Vec<Rational> {
        let mut alpha = vec![Rational::zero(); n];
        for (j, v) in self.cols.iter().zip(&self.x) {
            alpha[*j] = v.clone();
        }
        alpha
    }
}

/// Solves the basis system for an exact column set. `None` when the
/// submatrix is singular or the solution has a negative entry.
pub fn solve_basis(cols: &BTreeSet<usize>, inst: &ScarfInstance) -> Option<FeasibleBasis> {
    assert_eq!(cols.len(), inst.m, "basis wants exactly m columns");
    let cols: Vec<usize> = cols.iter().copied().collect();
    let x = linalg::solve(&inst.bcols(&cols), &inst.rhs)?;
    if x.iter().any(|v| v.is_negative()) {
        return None;
    }
    Some(FeasibleBasis { cols, x })
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PivotError {
    /// The entering column's direction has no positive component, so the
    /// ray stays feasible forever. Valid inputs cannot get here thanks to
    /// the boundedness surrogate; reaching it means the caller waived it.
    #[error("entering column {} has an unbounded direction", entering + 1)]
    UnboundedDirection { entering: usize },
}

/// Brings `entering` into the basis and returns the unique leaving column
/// together with the new basis.
///
/// The leaving row minimizes the ratio of `(x_i, row i of B_J^-1)` to the
/// direction component `d_i`, compared lexicographically. Two rows can
/// never tie on the whole vector, because the inverse rows are linearly
/// independent; this is the classic symbolic perturbation of the right-hand
/// side by `(eps, eps^2, ...)`, so degenerate instances pivot exactly like
/// non-degenerate ones.
pub fn cardinal_pivot(
    basis: &FeasibleBasis,
    entering: usize,
    inst: &ScarfInstance,
) -> Result<(usize, FeasibleBasis), PivotError> {
    assert!(entering < inst.n, "entering column out of range");
    assert!(!basis.cols.contains(&entering), "entering column already basic");
    let inv = linalg::invert(&inst.bcols(&basis.cols))
        .expect("a feasible basis has an invertible submatrix");
    let bcol = inst.bcol(entering);
    let m = inst.m;
    let direction: Vec<Rational> = (0..m)
        .map(|i| (0..m).map(|j| &inv[i][j] * &bcol[j]).sum())
        .collect();

    let mut leaving_row: Option<usize> = None;
    for i in 0..m {
        if !direction[i].is_positive() {
            continue;
        }
        let better = match leaving_row {
            None => true,
            Some(r) => {
                let ord = lex_ratio_cmp(basis, &inv, &direction, i, r);
                assert!(ord != std::cmp::Ordering::Equal, "perturbation rows cannot tie");
                ord == std::cmp::Ordering::Less
            }
        };
        if better {
            leaving_row = Some(i);
        }
    }
    let row = leaving_row.ok_or(PivotError::UnboundedDirection { entering })?;
    let leaving = basis.cols[row];

    let mut next: BTreeSet<usize> = basis.col_set();
    next.remove(&leaving);
    next.insert(entering);
    let next = solve_basis(&next, inst)
        .expect("the ratio rule keeps the exchanged basis feasible");
    Ok((leaving, next))
}

/// Compares the ratio vectors `(x_i, inv_i) / d_i` of two eligible rows.
fn lex_ratio_cmp(
    basis: &FeasibleBasis,
    inv: &[Vec<Rational>],
    direction: &[Rational],
    a: usize,
    b: usize,
) -> std::cmp::Ordering {
    let head = (&basis.x[a] * &direction[b]).cmp(&(&basis.x[b] * &direction[a]));
    if head != std::cmp::Ordering::Equal {
        return head;
    }
    for (va, vb) in inv[a].iter().zip(&inv[b]) {
        let ord = (va * &direction[b]).cmp(&(vb * &direction[a]));
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// Feasibility under the same symbolic perturbation the pivot rule uses:
/// the submatrix is invertible and every row of `[x | B_J^-1]` is
/// lexicographically positive. Coincides with plain feasibility whenever no
/// basic solution of the instance has a zero entry, and is the notion under
/// which the walk graph keeps its exact path structure on degenerate input.
pub(crate) fn lex_feasible(cols: &BTreeSet<usize>, inst: &ScarfInstance) -> bool {
    assert_eq!(cols.len(), inst.m);
    let cols: Vec<usize> = cols.iter().copied().collect();
    let sub = inst.bcols(&cols);
    let Some(inv) = linalg::invert(&sub) else {
        return false;
    };
    let Some(x) = linalg::solve(&sub, &inst.rhs) else {
        return false;
    };
    (0..inst.m).all(|i| {
        if !x[i].is_zero() {
            return x[i].is_positive();
        }
        match inv[i].iter().find(|v| !v.is_zero()) {
            Some(first) => first.is_positive(),
            None => false,
        }
    })
}
