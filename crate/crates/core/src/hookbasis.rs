//! The basis `Q_T^{k,m}` of the `[n−1,1]` isotypic component of `QI_m`.
//!
//! `T` is the hook tableau whose second row holds `j`, and
//! `Q_T^{k,m} = ∫_{x_1}^{x_j} t^k ∏_i (t − x_i)^m dt`.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{binomial, elementary_symmetric, factorial, linear_product, BigRational, MultiPoly, TPoly};
use crate::quasi::{in_gamma_component, is_quasiinvariant};
use crate::symgroup::Perm;
use crate::tableaux::Tableau;

/// Largest `n` accepted for a hook specification.
pub const MAX_HOOK_N: usize = 8;
/// Largest `m` accepted for a hook specification.
pub const MAX_HOOK_M: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HookSpec {
    pub n: usize,
    pub m: u32,
    pub j: usize,
    pub k: u32,
}

impl HookSpec {
    pub fn new(n: usize, m: u32, j: usize, k: u32) -> Result<Self> {
        if n < 2 || j < 2 || j > n {
            return Err(Error::Contract(format!(
                "hook spec needs n ≥ 2 and 2 ≤ j ≤ n, got n={n}, j={j}"
            )));
        }
        if n > MAX_HOOK_N || m > MAX_HOOK_M {
            return Err(Error::Guardrail(format!(
                "hook spec limited to n ≤ {MAX_HOOK_N}, m ≤ {MAX_HOOK_M}"
            )));
        }
        Ok(HookSpec { n, m, j, k })
    }

    /// Whether `k` indexes an element of the basis, i.e. `k ≤ n − 2`.
    pub fn is_basis_index(&self) -> bool {
        (self.k as usize) + 2 <= self.n
    }

    pub fn degree(&self) -> u32 {
        self.m * self.n as u32 + self.k + 1
    }

    pub fn tableau(&self) -> Tableau {
        Tableau::hook(self.n, self.j).expect("validated hook spec")
    }

    fn with(&self, m: u32, k: u32) -> HookSpec {
        HookSpec { m, k, ..*self }
    }
}

/// The hook tableau with second-row entry `j`.
pub fn hook_tableau(n: usize, j: usize) -> Result<Tableau> {
    Tableau::hook(n, j)
}

/// `Q_T^{k,m}` by expanding the integrand in `t` and integrating.
pub fn q_integral(spec: &HookSpec) -> MultiPoly {
    let n = spec.n;
    let integrand = &TPoly::t_pow(n, spec.k as usize) * &linear_product(n).pow(spec.m);
    integrand
        .integrate_definite(1, spec.j)
        .expect("distinct bounds")
}

fn m_zero_form(spec: &HookSpec) -> MultiPoly {
    let n = spec.n;
    let e = spec.k + 1;
    let diff = &MultiPoly::var(n, spec.j).unwrap().pow(e) - &MultiPoly::var(n, 1).unwrap().pow(e);
    diff.scale(&BigRational::new(One::one(), e.into()))
}

/// Coefficients of `z^r`, `z = x_2 − x_1`, in the `j = 2` closed form. Each
/// coefficient is a polynomial in `x_1, x_3, …, x_n`; entries are keyed by `r`.
pub fn z_expansion(n: usize, m: u32, k: u32) -> BTreeMap<u32, MultiPoly> {
    let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    let others = n - 2;
    let mf = BigRational::from_integer(factorial(m as u64));
    let mut idx = vec![0u32; others];
    loop {
        let s: u32 = idx.iter().sum();
        let kk = k + m * others as u32 - s;
        let mut base = BigRational::from_integer(
            idx.iter().map(|&i| binomial(m as u64, i as u64)).product(),
        );
        if (m + s) % 2 == 1 {
            base = -base;
        }
        for rr in 0..=kk {
            let r = 2 * m + 1 + rr;
            let falling: num_bigint::BigInt = (0..=m).map(|i| num_bigint::BigInt::from(r - i)).product();
            let c = &base * &mf / BigRational::from_integer(falling)
                * BigRational::from_integer(binomial(kk as u64, rr as u64));
            let mut exps = vec![0u32; n];
            exps[0] = kk - rr;
            for (t, &i) in idx.iter().enumerate() {
                exps[t + 2] = i;
            }
            let term = MultiPoly::monomial(crate::exactalg::Monomial(exps), c);
            let entry = out.entry(r).or_insert_with(|| MultiPoly::zero(n));
            *entry = &*entry + &term;
        }
        // Odometer over {0..m}^{n−2}.
        let mut pos = 0;
        loop {
            if pos == others {
                out.retain(|_, p| !p.is_zero());
                return out;
            }
            if idx[pos] < m {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `Q_T^{k,m}` from the closed `z`-expansion, moved to general `j` by the
/// transposition `(2, j)`. At `m = 0` this is `(x_j^{k+1} − x_1^{k+1})/(k+1)`.
pub fn q_closed_form(spec: &HookSpec) -> MultiPoly {
    if spec.m == 0 {
        return m_zero_form(spec);
    }
    let n = spec.n;
    let z = MultiPoly::binomial(n, 2, 1).unwrap();
    let mut acc = MultiPoly::zero(n);
    let mut zp = MultiPoly::one(n);
    let mut cur = 0;
    for (r, c) in z_expansion(n, spec.m, spec.k) {
        while cur < r {
            zp = &zp * &z;
            cur += 1;
        }
        acc = &acc + &(&c * &zp);
    }
    if spec.j == 2 {
        acc
    } else {
        Perm::transposition(n, 2, spec.j).unwrap().act(&acc).unwrap()
    }
}

/// `Q^{k,m} − Σ_{i=0}^n (−1)^i e_i Q^{n−i+k, m−1}`, which should vanish.
pub fn recursion_residual(spec: &HookSpec) -> Result<MultiPoly> {
    if spec.m == 0 {
        return Err(Error::Contract("recursion needs m ≥ 1".into()));
    }
    let n = spec.n;
    let mut rhs = MultiPoly::zero(n);
    for i in 0..=n {
        let e = if i == 0 { MultiPoly::one(n) } else { elementary_symmetric(n, i)? };
        let q = q_integral(&spec.with(spec.m - 1, (n - i) as u32 + spec.k));
        let term = &e * &q;
        rhs = if i % 2 == 0 { &rhs + &term } else { &rhs - &term };
    }
    Ok(&q_integral(spec) - &rhs)
}

/// `γ_{T_j} Q = Q`.
pub fn gamma_fixed_check(spec: &HookSpec) -> Result<bool> {
    let q = q_integral(spec);
    Ok(spec.tableau().gamma()?.apply(&q)? == q)
}

/// `Q / (x_j − x_1)^{2m+1}` with `x_1 ↦ x_j`.
pub fn lowest_quotient(spec: &HookSpec) -> Result<MultiPoly> {
    let q = q_integral(spec);
    let quot = q
        .divide_by_binomial_power(spec.j, 1, 2 * spec.m + 1)
        .map_err(|e| match e {
            Error::NotDivisible => Error::TheoremViolation(format!(
                "(x_{}−x_1)^{} does not divide Q for {:?}",
                spec.j,
                2 * spec.m + 1,
                spec
            )),
            other => other,
        })?;
    let mut sub = BTreeMap::new();
    sub.insert(1, MultiPoly::var(spec.n, spec.j)?);
    quot.substitute(&sub)
}

/// `(−1)^m m!² / (2m+1)! · x_j^k ∏_{i≠1,j} (x_j − x_i)^m`.
pub fn lowest_quotient_rhs(spec: &HookSpec) -> MultiPoly {
    let n = spec.n;
    let m = spec.m as u64;
    let mf = factorial(m);
    let mut c = BigRational::new(&mf * &mf, factorial(2 * m + 1));
    if m % 2 == 1 {
        c = -c;
    }
    let mut p = MultiPoly::var(n, spec.j).unwrap().pow(spec.k).scale(&c);
    for i in (2..=n).filter(|&i| i != spec.j) {
        p = &p * &MultiPoly::binomial(n, spec.j, i).unwrap().pow(spec.m);
    }
    p
}

/// `[Q^{0,m}, …, Q^{n−2,m}]` for the hook tableau with second-row entry `j`.
///
/// With `verify` set, each element is also built by integration and checked
/// for equality, membership in `γ_T R ∩ V_T^{2m+1} R` and quasiinvariance.
pub fn hook_basis(n: usize, m: u32, j: usize, verify: bool) -> Result<Vec<MultiPoly>> {
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..(n as u32).saturating_sub(1) {
        let spec = HookSpec::new(n, m, j, k)?;
        let q = q_closed_form(&spec);
        if verify {
            if q != q_integral(&spec) {
                return Err(Error::TheoremViolation(format!(
                    "closed form and integral differ for {spec:?}"
                )));
            }
            if !in_gamma_component(&q, &spec.tableau(), m)? || !is_quasiinvariant(&q, m) {
                return Err(Error::TheoremViolation(format!(
                    "Q is not in γ_T QI_m for {spec:?}"
                )));
            }
        }
        out.push(q);
    }
    Ok(out)
}
