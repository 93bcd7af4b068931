//! Dense exact linear algebra, small sizes only.
//!
//! Elimination picks the first nonzero pivot in column order; with exact
//! rationals there is no stability concern and the choice keeps every run
//! deterministic.

use crate::rational::Rational;
use num::Zero;

/// Solves `a * x = rhs` for square `a`. `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && rhs.len() == n);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    gauss_jordan(&mut m, n)?;
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Inverse of square `a`, or `None` when singular.
pub fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            r
        })
        .collect();
    gauss_jordan(&mut m, n)?;
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

use num::One;

/// Reduces the first `n` columns of the augmented matrix to the identity.
#[allow(clippy::needless_range_loop)] // two rows of `m` are touched per step
fn gauss_jordan(m: &mut [Vec<Rational>], n: usize) -> Option<()> {
    let width = m.first().map_or(n, |r| r.len());
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for j in col..width {
            let v = std::mem::take(&mut m[col][j]);
            m[col][j] = v / &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = std::mem::take(&mut m[r][col]);
                for j in col..width {
                    let sub = &m[col][j] * &factor;
                    m[r][j] -= sub;
                }
            }
        }
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn solves_small_system() {
        // x + z = 2, y + z = 1
        let a = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let x = solve(&a, &[int(2), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);

        let a = vec![vec![int(1), int(1)], vec![int(0), int(1)]];
        let x = solve(&a, &[int(2), int(1)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
    }

    #[test]
    fn detects_singular() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(&a, &[int(1), int(1)]).is_none());
        assert!(invert(&a).is_none());
    }

    #[test]
    fn inverse_is_exact() {
        let a = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        let inv = invert(&a).unwrap();
        assert_eq!(inv, vec![vec![int(4), int(-1)], vec![int(-7), int(2)]]);
        let b = vec![vec![int(1), int(3)], vec![int(2), int(5)]];
        let binv = invert(&b).unwrap();
        assert_eq!(binv[0][0], int(-5));
        assert_eq!(binv[0][1], int(3));
        // fractional case
        let c = vec![vec![int(2), int(0)], vec![int(0), int(3)]];
        assert_eq!(invert(&c).unwrap()[1][1], rat(1, 3));
    }
}
