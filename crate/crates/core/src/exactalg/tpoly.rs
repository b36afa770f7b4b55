//! Polynomials in an auxiliary variable `t` with coefficients in `ℚ[x_1..x_n]`.

use std::ops::{Add, Mul};

use num_traits::One;

use super::poly::MultiPoly;
use super::rational::{rat, BigRational};
use crate::error::{Error, Result};

/// Dense in `t`: `coeffs[d]` is the coefficient of `t^d`. Trailing zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly {
    nvars: usize,
    coeffs: Vec<MultiPoly>,
}

impl TPoly {
    pub fn zero(nvars: usize) -> Self {
        TPoly {
            nvars,
            coeffs: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_coeffs(nvars, vec![MultiPoly::one(nvars)]).unwrap()
    }

    /// `t^k`.
    pub fn t_pow(nvars: usize, k: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(nvars); k + 1];
        coeffs[k] = MultiPoly::one(nvars);
        TPoly { nvars, coeffs }
    }

    /// `t − x_i`.
    pub fn t_minus_var(nvars: usize, i: usize) -> Result<Self> {
        Self::from_coeffs(nvars, vec![-MultiPoly::var(nvars, i)?, MultiPoly::one(nvars)])
    }

    pub fn from_coeffs(nvars: usize, coeffs: Vec<MultiPoly>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.nvars() != nvars) {
            return Err(Error::DimensionMismatch {
                left: nvars,
                right: bad.nvars(),
            });
        }
        let mut p = TPoly { nvars, coeffs };
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(MultiPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> MultiPoly {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn checked_add(&self, other: &TPoly) -> Result<TPoly> {
        self.same_dims(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|d| &self.coeff(d) + &other.coeff(d)).collect();
        TPoly::from_coeffs(self.nvars, coeffs)
    }

    pub fn checked_mul(&self, other: &TPoly) -> Result<TPoly> {
        self.same_dims(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(TPoly::zero(self.nvars));
        }
        let mut coeffs = vec![MultiPoly::zero(self.nvars); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                coeffs[a + b] = &coeffs[a + b] + &(ca * cb);
            }
        }
        TPoly::from_coeffs(self.nvars, coeffs)
    }

    pub fn pow(&self, e: u32) -> TPoly {
        let mut acc = TPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_by(&self, p: &MultiPoly) -> Result<TPoly> {
        if p.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: p.nvars(),
            });
        }
        TPoly::from_coeffs(self.nvars, self.coeffs.iter().map(|c| c * p).collect())
    }

    fn same_dims(&self, other: &TPoly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    /// `∫_{x_lower}^{x_upper} f(t) dt`: termwise antiderivative, then the
    /// difference of evaluations at the two variables.
    pub fn integrate_definite(&self, lower: usize, upper: usize) -> Result<MultiPoly> {
        if lower == upper {
            return Err(Error::Contract("integration bounds must be distinct variables".into()));
        }
        let xl = MultiPoly::var(self.nvars, lower)?;
        let xu = MultiPoly::var(self.nvars, upper)?;
        let mut out = MultiPoly::zero(self.nvars);
        let mut pl = xl.clone();
        let mut pu = xu.clone();
        for (d, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let w = BigRational::one() / rat(d as i64 + 1);
                out = &out + &(c * &(&pu - &pl)).scale(&w);
            }
            pl = &pl * &xl;
            pu = &pu * &xu;
        }
        Ok(out)
    }
}

impl Add<&TPoly> for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        self.checked_add(rhs).expect("TPoly arithmetic on mismatched nvars")
    }
}

impl Mul<&TPoly> for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        self.checked_mul(rhs).expect("TPoly arithmetic on mismatched nvars")
    }
}

/// `∏_{i=1}^n (t − x_i)`.
pub fn linear_product(n: usize) -> TPoly {
    (1..=n).fold(TPoly::one(n), |acc, i| &acc * &TPoly::t_minus_var(n, i).unwrap())
}
