//! Exact rational scalars and the small dense linear algebra the root-system
//! layer needs. Everything here is arbitrary precision; no floats anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse an exact rational written as `n` or `n/d`.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t = s.trim();
    t.parse::<Rat>()
        .map_err(|_| Error::Parse(format!("invalid rational '{t}'")))
}

/// Reduce into `[0, 1)`.
pub fn mod1(r: &Rat) -> Rat {
    let f = r.floor();
    r - f
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact integer extraction; panics if not integral.
pub fn to_bigint(r: &Rat) -> BigInt {
    assert!(is_integer(r), "expected integer, got {r}");
    r.numer().clone()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

/// Invert a square rational matrix by Gauss-Jordan elimination.
/// Returns `None` when singular.
pub fn invert(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let t = &f * &m[col][j];
                    m[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Leading principal minors of a square rational matrix, computed by
/// elimination without pivoting row order past the minor boundary.
pub fn leading_principal_minors(a: &[Vec<Rat>]) -> Vec<Rat> {
    let n = a.len();
    (1..=n)
        .map(|k| {
            let sub: Vec<Vec<Rat>> = a[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

pub fn determinant(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= p.clone();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &p;
                for j in col..n {
                    let t = &f * &m[col][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    det
}

/// All leading principal minors strictly positive.
pub fn is_positive_definite(a: &[Vec<Rat>]) -> bool {
    leading_principal_minors(a).iter().all(|d| d.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rmat(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn invert_a2_cartan() {
        let a = rmat(&[&[2, -1], &[-1, 2]]);
        let inv = invert(&a).unwrap();
        assert_eq!(inv[0][0], ratio(2, 3));
        assert_eq!(inv[0][1], ratio(1, 3));
        assert_eq!(inv[1][0], ratio(1, 3));
        assert_eq!(inv[1][1], ratio(2, 3));
    }

    #[test]
    fn affine_matrix_is_singular() {
        let a = rmat(&[&[2, -2], &[-2, 2]]);
        assert!(invert(&a).is_none());
        assert!(!is_positive_definite(&a));
    }

    #[test]
    fn minors_of_b2_symmetrization() {
        // d = (2,1), A = [[2,-1],[-2,2]] -> B = [[4,-2],[-2,2]]
        let b = rmat(&[&[4, -2], &[-2, 2]]);
        assert_eq!(leading_principal_minors(&b), vec![rat(4), rat(4)]);
        assert!(is_positive_definite(&b));
    }

    #[test]
    fn mod1_reduces_into_unit_interval() {
        assert_eq!(mod1(&ratio(7, 2)), ratio(1, 2));
        assert_eq!(mod1(&ratio(-1, 2)), ratio(1, 2));
        assert_eq!(mod1(&rat(-3)), rat(0));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/2").is_ok());
        assert!(parse_rat("-3").is_ok());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1.5").is_err());
    }
}
