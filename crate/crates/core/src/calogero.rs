//! The deformed Laplacian
//! `L_m = Σ ∂_i² − 2m Σ_{i<j} (x_i − x_j)^{−1}(∂_i − ∂_j)`.
//!
//! The `1/(x_i − x_j)` factor is exact polynomial division. Inputs whose image
//! is not a polynomial are rejected with [`Error::NonPolynomial`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{rat, MultiPoly};
use crate::hookbasis::{q_integral, HookSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LmOperator {
    pub n: usize,
    pub m: u32,
}

impl LmOperator {
    pub fn new(n: usize, m: u32) -> Self {
        LmOperator { n, m }
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        apply_lm(self, p)
    }
}

pub fn apply_lm(op: &LmOperator, p: &MultiPoly) -> Result<MultiPoly> {
    let n = op.n;
    if p.nvars() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: p.nvars(),
        });
    }
    let grads = (1..=n)
        .map(|i| p.partial_derivative(i))
        .collect::<Result<Vec<_>>>()?;
    let mut out = MultiPoly::zero(n);
    for (i, g) in grads.iter().enumerate() {
        out = &out + &g.partial_derivative(i + 1)?;
    }
    if op.m == 0 {
        return Ok(out);
    }
    let mut drift = MultiPoly::zero(n);
    for i in 1..=n {
        for j in (i + 1)..=n {
            let d = &grads[i - 1] - &grads[j - 1];
            let q = d
                .divide_by_binomial_power(i, j, 1)
                .map_err(|e| match e {
                    Error::NotDivisible => Error::NonPolynomial { i, j },
                    other => other,
                })?;
            drift = &drift + &q;
        }
    }
    Ok(&out - &drift.scale(&rat(2 * op.m as i64)))
}

/// `L_m Q^{k,m} − k(k−1) Q^{k−2,m}`; the second term is absent for `k < 2`.
pub fn lm_eigen_check(spec: &HookSpec) -> Result<MultiPoly> {
    let op = LmOperator::new(spec.n, spec.m);
    let image = apply_lm(&op, &q_integral(spec))?;
    if spec.k < 2 {
        return Ok(image);
    }
    let lower = q_integral(&HookSpec { k: spec.k - 2, ..*spec });
    let k = spec.k as i64;
    Ok(&image - &lower.scale(&rat(k * (k - 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::elementary_symmetric;

    #[test]
    fn power_sum_p2_is_annihilated() {
        let p = &MultiPoly::var(2, 1).unwrap().pow(2) + &MultiPoly::var(2, 2).unwrap().pow(2);
        assert!(apply_lm(&LmOperator::new(2, 1), &p).unwrap().is_zero());
        // e_1² has no drift term, only the Laplacian.
        let e = elementary_symmetric(2, 1).unwrap().pow(2);
        assert_eq!(apply_lm(&LmOperator::new(2, 1), &e).unwrap(), MultiPoly::constant(2, rat(4)));
    }

    #[test]
    fn x1_is_outside_the_domain() {
        let x1 = MultiPoly::var(2, 1).unwrap();
        assert_eq!(
            apply_lm(&LmOperator::new(2, 1), &x1),
            Err(Error::NonPolynomial { i: 1, j: 2 })
        );
    }

    #[test]
    fn m_zero_is_laplacian() {
        let p = MultiPoly::var(3, 1).unwrap().pow(2);
        assert_eq!(apply_lm(&LmOperator::new(3, 0), &p).unwrap(), MultiPoly::constant(3, rat(2)));
    }

    #[test]
    fn kills_constants_and_e1() {
        for n in 1..=4 {
            for m in 0..3 {
                let op = LmOperator::new(n, m);
                assert!(op.apply(&MultiPoly::one(n)).unwrap().is_zero());
                assert!(op.apply(&elementary_symmetric(n, 1).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn eigen_identity_small_grid() {
        for n in 2..=4 {
            for m in 0..=2 {
                for j in 2..=n {
                    for k in 0..=(n as u32 - 2) {
                        let s = HookSpec::new(n, m, j, k).unwrap();
                        assert!(lm_eigen_check(&s).unwrap().is_zero(), "{s:?}");
                    }
                }
            }
        }
    }
}
