//! Exact rational scalars and their canonical text form.
//!
//! Every number that flows through the solvers is a [`Rational`]. The text
//! form is `p/q` in lowest terms with a positive denominator, or a bare
//! integer when the denominator is one; that is also the JSON encoding.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// An integer as an exact rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("bad rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `p`, `-p` or `p/q`. Whitespace is not accepted.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(s.to_string());
    match s.split_once('/') {
        None => {
            let p: BigInt = s.parse().map_err(|_| malformed())?;
            Ok(Rational::from_integer(p))
        }
        Some((ps, qs)) => {
            let p: BigInt = ps.parse().map_err(|_| malformed())?;
            let q: BigInt = qs.parse().map_err(|_| malformed())?;
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Lowest-terms text form: bare integer or `p/q` with `q > 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
