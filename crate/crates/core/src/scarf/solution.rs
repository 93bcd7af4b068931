use super::instance::ScarfInstance;
use crate::rational::Rational;
use num::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// A certified answer: the chosen columns, the full weight vector and, for
/// every column of the instance, a row where that column sits at or below
/// everything the chosen set offers in the original preference matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScarfSolution {
    /// Strictly ascending, length `m`.
    pub basis: Vec<usize>,
    /// Length `n`, nonnegative, supported inside `basis`.
    pub alpha: Vec<Rational>,
    /// column -> witness row
    pub witness: BTreeMap<usize, usize>,
}

/// One reason a claimed solution fails. Indices in messages are 1-based.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SolutionDefect {
    #[error("basis has {got} columns, expected {want}")]
    BasisSize { got: usize, want: usize },
    #[error("basis column {} out of range or repeated", col + 1)]
    BadBasisColumn { col: usize },
    #[error("alpha has {got} entries, expected {want}")]
    AlphaLength { got: usize, want: usize },
    #[error("alpha negative at column {}", col + 1)]
    NegativeWeight { col: usize },
    #[error("alpha positive outside the basis at column {}", col + 1)]
    SupportOutsideBasis { col: usize },
    #[error("B alpha misses b at row {}", row + 1)]
    ResidualRow { row: usize },
    #[error("column {} unsubordinated", col + 1)]
    UnsubordinatedColumn { col: usize },
    #[error("witness for column {} names row {}, which does not dominate it", col + 1, row + 1)]
    BadWitnessRow { col: usize, row: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolutionAudit {
    pub defects: Vec<SolutionDefect>,
}

impl SolutionAudit {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

impl std::fmt::Display for SolutionAudit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.defects.is_empty() {
            return write!(f, "solution verified");
        }
        for (i, d) in self.defects.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Does row `i` put column `k` at or below every column of `basis`, in the
/// original preference matrix?
fn dominates_weakly(inst: &ScarfInstance, i: usize, k: usize, basis: &[usize]) -> bool {
    basis.iter().all(|&j| inst.cmat[i][k] <= inst.cmat[i][j])
}

/// Checks a claimed solution against the original instance: shape, exact
/// feasibility of `B alpha = b` with support inside the basis, and weak
/// subordination of every column. Witness rows supplied by the solution are
/// checked as stated; columns without a stated witness are searched.
pub fn verify_solution(inst: &ScarfInstance, sol: &ScarfSolution) -> SolutionAudit {
    let mut defects = Vec::new();
    let (m, n) = (inst.m, inst.n);

    if sol.basis.len() != m {
        defects.push(SolutionDefect::BasisSize { got: sol.basis.len(), want: m });
    }
    let mut seen = vec![false; n];
    for &col in &sol.basis {
        if col >= n || seen[col] {
            defects.push(SolutionDefect::BadBasisColumn { col });
        } else {
            seen[col] = true;
        }
    }
    if sol.alpha.len() != n {
        defects.push(SolutionDefect::AlphaLength { got: sol.alpha.len(), want: n });
        return SolutionAudit { defects };
    }
    for (col, v) in sol.alpha.iter().enumerate() {
        if v.is_negative() {
            defects.push(SolutionDefect::NegativeWeight { col });
        } else if !v.is_zero() && !sol.basis.contains(&col) {
            defects.push(SolutionDefect::SupportOutsideBasis { col });
        }
    }
    for i in 0..m {
        let lhs: Rational = (0..n).map(|j| &inst.bmat[i][j] * &sol.alpha[j]).sum();
        if lhs != inst.rhs[i] {
            defects.push(SolutionDefect::ResidualRow { row: i });
        }
    }
    for k in 0..n {
        match sol.witness.get(&k) {
            Some(&row) if row < m => {
                if !dominates_weakly(inst, row, k, &sol.basis) {
                    defects.push(SolutionDefect::BadWitnessRow { col: k, row });
                }
            }
            _ => {
                if !(0..m).any(|i| dominates_weakly(inst, i, k, &sol.basis)) {
                    defects.push(SolutionDefect::UnsubordinatedColumn { col: k });
                }
            }
        }
    }
    SolutionAudit { defects }
}

/// Smallest witness row per column under the original preference matrix, if
/// every column has one.
pub(crate) fn weak_witness(inst: &ScarfInstance, basis: &[usize]) -> Option<BTreeMap<usize, usize>> {
    let mut witness = BTreeMap::new();
    for k in 0..inst.n {
        let row = (0..inst.m).find(|&i| dominates_weakly(inst, i, k, basis))?;
        witness.insert(k, row);
    }
    Some(witness)
}
