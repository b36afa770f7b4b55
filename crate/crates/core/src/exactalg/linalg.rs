//! Exact nullspaces and ranks over ℚ.
//!
//! The primary route is fraction-free (Bareiss) elimination on integer rows.
//! A plain rational Gauss–Jordan elimination is kept alongside as an
//! independent cross-check; the two must agree on rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::rational::BigRational;
use crate::error::{Error, Result};

/// Row count above which Bareiss row updates run on the rayon pool.
const PAR_ROWS: usize = 64;

/// Scales each row by the lcm of its denominators so every entry is an integer.
pub fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect()
        })
        .collect()
}

/// Row echelon form produced by fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.ncols];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|&c| !pivot_set[c]) {
            let mut x = vec![BigRational::zero(); self.ncols];
            x[free] = BigRational::one();
            for (r, &p) in self.pivots.iter().enumerate().rev() {
                let row = &self.rows[r];
                let mut s = BigRational::zero();
                for c in (p + 1)..self.ncols {
                    if !row[c].is_zero() && !x[c].is_zero() {
                        s += BigRational::from_integer(row[c].clone()) * &x[c];
                    }
                }
                x[p] = -s / BigRational::from_integer(row[p].clone());
            }
            basis.push(primitive(&x));
        }
        basis
    }
}

/// Fraction-free row echelon form of an integer matrix.
///
/// Every intermediate entry is a minor of the input, so each division by the
/// previous pivot is exact; a nonzero remainder is reported as an internal
/// error rather than silently rounded.
pub fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Result<Echelon> {
    a.retain(|row| row.iter().any(|c| !c.is_zero()));
    if let Some(bad) = a.iter().find(|row| row.len() != ncols) {
        return Err(Error::DimensionMismatch {
            left: ncols,
            right: bad.len(),
        });
    }
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        let update = |row: &mut Vec<BigInt>| -> Result<()> {
            let lead = std::mem::take(&mut row[c]);
            for k in (c + 1)..ncols {
                let v = &piv * &row[k] - &lead * &pivot_row[k];
                let (q, rem) = v.div_rem(&prev);
                if !rem.is_zero() {
                    return Err(Error::Internal("inexact Bareiss division".into()));
                }
                row[k] = q;
            }
            Ok(())
        };
        if below.len() >= PAR_ROWS {
            below.par_iter_mut().try_for_each(update)?;
        } else {
            below.iter_mut().try_for_each(update)?;
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Ok(Echelon {
        rows: a,
        pivots,
        ncols,
    })
}

pub fn nullspace_bareiss(rows: &[Vec<BigRational>], ncols: usize) -> Result<Vec<Vec<BigRational>>> {
    Ok(bareiss_echelon(integer_rows(rows), ncols)?.nullspace())
}

pub fn rank_bareiss(rows: &[Vec<BigRational>], ncols: usize) -> Result<usize> {
    Ok(bareiss_echelon(integer_rows(rows), ncols)?.rank())
}

/// Reduced row echelon form over ℚ; returns `(rref rows, pivot columns)`.
pub fn rref_rational(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / &a[r][c];
        for x in &mut a[r][c..] {
            *x = &*x * &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn nullspace_rational(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (a, pivots) = rref_rational(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![BigRational::zero(); ncols];
            x[free] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -a[r][free].clone();
            }
            primitive(&x)
        })
        .collect()
}

pub fn rank_rational(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    rref_rational(rows, ncols).1.len()
}

/// Scales a nonzero vector to coprime integers with a positive first nonzero
/// entry. The zero vector is returned unchanged.
pub fn primitive(v: &[BigRational]) -> Vec<BigRational> {
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = if ints.iter().find(|c| !c.is_zero()).unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter()
        .map(|c| BigRational::from_integer(c / &g * &sign))
        .collect()
}

/// Matrix–vector product, used to check nullspace vectors.
pub fn apply(rows: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    rows.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
