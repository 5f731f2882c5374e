//! Exact rationals and the small amount of linear algebra the verifiers need.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Solves `A x = b` for upper-triangular `A` by back substitution.
pub fn solve_upper_triangular(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        if a[i][i].is_zero() {
            return Err(Error::Singular(format!("zero pivot at row {i}")));
        }
        let mut acc = b[i].clone();
        for j in i + 1..n {
            if !a[i][j].is_zero() {
                acc -= &a[i][j] * &x[j];
            }
        }
        x[i] = acc / &a[i][i];
    }
    Ok(x)
}

/// Row-reduces a copy of `rows` and returns the indices of a maximal
/// linearly independent subset, in input order.
pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pivot, b) in &basis {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for (vj, bj) in v.iter_mut().zip(b) {
                    if !bj.is_zero() {
                        *vj -= &factor * bj;
                    }
                }
            }
        }
        if let Some(pivot) = v.iter().position(|c| !c.is_zero()) {
            let inv = Rational::one() / &v[pivot];
            for c in v.iter_mut() {
                *c *= &inv;
            }
            basis.push((pivot, v));
            chosen.push(idx);
        }
    }
    chosen
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    independent_rows(rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn back_substitution() {
        let a = vec![vec![int(2), int(1)], vec![int(0), int(3)]];
        let x = solve_upper_triangular(&a, &[int(5), int(6)]).unwrap();
        assert_eq!(x, vec![rat(3, 2), int(2)]);
        let singular = vec![vec![int(1), int(1)], vec![int(0), int(0)]];
        assert!(solve_upper_triangular(&singular, &[int(1), int(1)]).is_err());
    }

    #[test]
    fn ranks() {
        let rows = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), rat(1, 2)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(independent_rows(&rows), vec![0, 2]);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![int(0)]]), 0);
    }
}
