use crate::rational::Rational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One instance of the pivoting problem.
///
/// Columns and rows are 0-based everywhere in the API; the JSON formats and
/// all diagnostics speak 1-based, matching how the files are written by
/// hand. Column 0 plays the distinguished role in the walk, and columns
/// `0..m` are the slack columns of the identity block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScarfInstance {
    pub m: usize,
    pub n: usize,
    /// `m x n`, nonnegative, leading `m x m` identity.
    pub bmat: Vec<Vec<Rational>>,
    /// Length `m`, nonnegative.
    pub rhs: Vec<Rational>,
    /// `m x n`; row `i` must satisfy `c[i][i] <= c[i][k] <= c[i][j]` for
    /// every non-slack `k` and every other slack `j`.
    pub cmat: Vec<Vec<Rational>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("B has no rows")]
    Empty,
    #[error("row {0} of B has {1} entries, expected {2}")]
    RaggedB(usize, usize, usize),
    #[error("C is {0} x {1}, expected {2} x {3}")]
    WrongC(usize, usize, usize, usize),
    #[error("rhs has {0} entries, expected {1}")]
    WrongRhs(usize, usize),
}

impl ScarfInstance {
    /// Builds an instance after checking only the matrix shapes. Hypothesis
    /// checks live in [`validate_instance`].
    pub fn new(
        bmat: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
        cmat: Vec<Vec<Rational>>,
    ) -> Result<Self, ShapeError> {
        let m = bmat.len();
        if m == 0 {
            return Err(ShapeError::Empty);
        }
        let n = bmat[0].len();
        for (i, row) in bmat.iter().enumerate() {
            if row.len() != n {
                return Err(ShapeError::RaggedB(i, row.len(), n));
            }
        }
        if cmat.len() != m || cmat.iter().any(|r| r.len() != n) {
            let cols = cmat.first().map_or(0, |r| r.len());
            return Err(ShapeError::WrongC(cmat.len(), cols, m, n));
        }
        if rhs.len() != m {
            return Err(ShapeError::WrongRhs(rhs.len(), m));
        }
        Ok(ScarfInstance { m, n, bmat, rhs, cmat })
    }

    /// The column of `B` at `col` as an owned vector.
    pub fn bcol(&self, col: usize) -> Vec<Rational> {
        self.bmat.iter().map(|row| row[col].clone()).collect()
    }

    /// Square submatrix of `B` on the given columns, in the given order.
    pub fn bcols(&self, cols: &[usize]) -> Vec<Vec<Rational>> {
        self.bmat
            .iter()
            .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
            .collect()
    }
}

/// Everything that can disqualify an instance. Indices in the rendered
/// messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum HypothesisViolation {
    #[error("need m < n, got m={m}, n={n}")]
    NotWide { m: usize, n: usize },
    #[error("B lacks the identity block at (row {}, col {})", row + 1, col + 1)]
    MissingIdentity { row: usize, col: usize },
    #[error("b not nonnegative at row {}", row + 1)]
    NegativeRhs { row: usize },
    #[error("C row-ordering hypothesis at (row {}, col {}): diagonal exceeds it", row + 1, col + 1)]
    DiagonalNotMinimal { row: usize, col: usize },
    #[error("C row-ordering hypothesis at (row {}, col {}): exceeds slack col {}", row + 1, col + 1, slack + 1)]
    SlackNotMaximal { row: usize, col: usize, slack: usize },
    #[error("B entry at (row {}, col {}) is negative; boundedness surrogate fails", row + 1, col + 1)]
    NegativeBEntry { row: usize, col: usize },
    #[error("column {} of B is all zero; boundedness surrogate fails", col + 1)]
    ZeroBColumn { col: usize },
}

impl HypothesisViolation {
    /// Violations of the boundedness surrogate only, the ones the
    /// `assume_bounded` escape hatch is allowed to waive.
    pub fn is_boundedness(&self) -> bool {
        matches!(
            self,
            HypothesisViolation::NegativeBEntry { .. } | HypothesisViolation::ZeroBColumn { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<HypothesisViolation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when every recorded violation is a boundedness-surrogate one.
    pub fn only_boundedness(&self) -> bool {
        self.violations.iter().all(|v| v.is_boundedness())
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "instance satisfies all hypotheses");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every hypothesis and lists each violation found. The boundedness
/// requirement is checked through its surrogate: `B` nonnegative with no
/// zero column, which forces `{a >= 0 : B a = b}` to be bounded.
pub fn validate_instance(inst: &ScarfInstance) -> ValidationReport {
    let mut violations = Vec::new();
    let (m, n) = (inst.m, inst.n);
    if m >= n {
        violations.push(HypothesisViolation::NotWide { m, n });
    }
    for i in 0..m {
        for j in 0..m.min(n) {
            let want = if i == j { Rational::one() } else { Rational::zero() };
            if inst.bmat[i][j] != want {
                violations.push(HypothesisViolation::MissingIdentity { row: i, col: j });
            }
        }
    }
    for (i, b) in inst.rhs.iter().enumerate() {
        if b.is_negative() {
            violations.push(HypothesisViolation::NegativeRhs { row: i });
        }
    }
    for i in 0..m {
        let row = &inst.cmat[i];
        for k in m..n {
            if row[i] > row[k] {
                violations.push(HypothesisViolation::DiagonalNotMinimal { row: i, col: k });
            }
            for j in 0..m {
                if j != i && row[k] > row[j] {
                    violations.push(HypothesisViolation::SlackNotMaximal { row: i, col: k, slack: j });
                }
            }
        }
    }
    for i in 0..m {
        for j in 0..n {
            if inst.bmat[i][j].is_negative() {
                violations.push(HypothesisViolation::NegativeBEntry { row: i, col: j });
            }
        }
    }
    for j in 0..n {
        if (0..m).all(|i| inst.bmat[i][j].is_zero()) {
            violations.push(HypothesisViolation::ZeroBColumn { col: j });
        }
    }
    ValidationReport { violations }
}
