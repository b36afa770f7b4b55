//! Sparse multivariate polynomials over ℚ.
//!
//! Variables are addressed 1-based (`x_1..x_n`) in every public function;
//! exponent vectors are stored 0-based positionally.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{binomial, rat, BigRational};
use crate::error::{Error, Result};

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `ℚ[x_1, …, x_n]`. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_i`, `1 ≤ i ≤ nvars`.
    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        check_var(nvars, i)?;
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Ok(Self::monomial(Monomial(e), BigRational::one()))
    }

    /// `x_i − x_j`.
    pub fn binomial(nvars: usize, i: usize, j: usize) -> Result<Self> {
        Ok(&Self::var(nvars, i)? - &Self::var(nvars, j)?)
    }

    pub fn monomial(mono: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(mono.0.len());
        p.add_term(mono, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in the canonical (graded-lex descending) order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The constant term if the polynomial is a constant (zero counts).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.terms.values().next().cloned().unwrap()),
            Some(_) => None,
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_dims(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.same_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.same_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.same_dims(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<MultiPoly> {
        check_var(self.nvars, i)?;
        let idx = i - 1;
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[idx] -= 1;
            out.add_term(dm, c * rat(e as i64));
        }
        Ok(out)
    }

    /// Simultaneous substitution `x_i ↦ image` for every `(i, image)` in the map.
    pub fn substitute(&self, assignment: &BTreeMap<usize, MultiPoly>) -> Result<MultiPoly> {
        for (&i, img) in assignment {
            check_var(self.nvars, i)?;
            self.same_dims(img)?;
        }
        // Powers of each image are cached per variable.
        let mut powers: BTreeMap<usize, Vec<MultiPoly>> = BTreeMap::new();
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut kept = m.clone();
            let mut term = MultiPoly::one(self.nvars);
            for (&i, img) in assignment {
                let e = m.0[i - 1] as usize;
                kept.0[i - 1] = 0;
                if e == 0 {
                    continue;
                }
                let cache = powers
                    .entry(i)
                    .or_insert_with(|| vec![MultiPoly::one(self.nvars)]);
                while cache.len() <= e {
                    let next = cache.last().unwrap() * img;
                    cache.push(next);
                }
                term = &term * &cache[e];
            }
            let lead = MultiPoly::monomial(kept, c.clone());
            let t = &term * &lead;
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Linear change of variable `x_i ↦ x_i + c·x_j`, done by binomial
    /// expansion per monomial.
    pub fn shift(&self, i: usize, j: usize, c: &BigRational) -> Result<MultiPoly> {
        check_var(self.nvars, i)?;
        check_var(self.nvars, j)?;
        if i == j {
            return Err(Error::Contract("shift needs two distinct variables".into()));
        }
        let (ii, jj) = (i - 1, j - 1);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, coef) in &self.terms {
            let a = m.0[ii];
            let mut cpow = BigRational::one();
            // (x_i + c x_j)^a = Σ_s C(a,s) x_i^{a-s} c^s x_j^s
            for s in 0..=a {
                let mut e = m.0.clone();
                e[ii] = a - s;
                e[jj] += s;
                let b = BigRational::from_integer(binomial(a as u64, s as u64));
                out.add_term(Monomial(e), coef * &b * &cpow);
                cpow = &cpow * c;
            }
        }
        Ok(out)
    }

    /// Largest `s` with `(x_i − x_j)^s | p`; `None` for the zero polynomial.
    pub fn binomial_valuation(&self, i: usize, j: usize) -> Result<Option<u32>> {
        if self.is_zero() {
            check_var(self.nvars, i)?;
            check_var(self.nvars, j)?;
            return Ok(None);
        }
        // With x_i = x_j + u the slot of x_i carries u.
        let shifted = self.shift(i, j, &BigRational::one())?;
        Ok(shifted.terms.keys().map(|m| m.0[i - 1]).min())
    }

    /// Exact quotient by `(x_i − x_j)^s`, via `x_i = x_j + u`, dividing by
    /// `u^s` and substituting back.
    pub fn divide_by_binomial_power(&self, i: usize, j: usize, s: u32) -> Result<MultiPoly> {
        let shifted = self.shift(i, j, &BigRational::one())?;
        let mut lowered = MultiPoly::zero(self.nvars);
        for (m, c) in shifted.terms {
            if m.0[i - 1] < s {
                return Err(Error::NotDivisible);
            }
            let mut e = m;
            e.0[i - 1] -= s;
            lowered.add_term(e, c);
        }
        lowered.shift(i, j, &-BigRational::one())
    }

    /// Exact division `p / d`.
    ///
    /// Divisors of the form `c·(x_i − x_j)^s` take the substitution route; any
    /// other divisor goes through single-divisor reduction in graded-lex
    /// order, which leaves a zero remainder exactly when `d | p`.
    pub fn divide_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        self.same_dims(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((c, i, j, s)) = d.as_binomial_power() {
            let q = self.divide_by_binomial_power(i, j, s)?;
            return Ok(q.scale(&c.recip()));
        }
        self.divide_general(d)
    }

    fn divide_general(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let (lm, lc) = d.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if m.0.iter().zip(&lm.0).any(|(a, b)| a < b) {
                return Err(Error::NotDivisible);
            }
            let qm = Monomial(m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect());
            let qc = c / lc;
            for (dm, dc) in &d.terms {
                rem.add_term(qm.mul(dm), -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Recognizes `c·(x_i − x_j)^s` with `s ≥ 1`, returned as `(c, i, j, s)`.
    fn as_binomial_power(&self) -> Option<(BigRational, usize, usize, u32)> {
        let s = self.degree()?;
        if s == 0 || !self.is_homogeneous() {
            return None;
        }
        let (top, c) = self.terms.iter().next_back()?;
        let i = top.0.iter().position(|&e| e == s)? + 1;
        let (bot, _) = self.terms.iter().next()?;
        let j = bot.0.iter().position(|&e| e == s)? + 1;
        if i == j {
            return None;
        }
        let candidate = MultiPoly::binomial(self.nvars, i, j).ok()?.pow(s).scale(c);
        (candidate == *self).then(|| (c.clone(), i, j, s))
    }

    /// True iff every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Leading coefficient (graded-lex largest monomial).
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Coefficients of the homogeneous degree-`d` monomial basis, in the
    /// order returned by [`monomials_of_degree`].
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<BigRational> {
        basis
            .iter()
            .map(|m| self.terms.get(m).cloned().unwrap_or_else(BigRational::zero))
            .collect()
    }

    pub fn from_coefficient_vector(basis: &[Monomial], v: &[BigRational]) -> MultiPoly {
        let nvars = basis.first().map_or(0, |m| m.0.len());
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in basis.iter().zip(v) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub(crate) fn map_monomials<F>(&self, mut f: F) -> MultiPoly
    where
        F: FnMut(&Monomial) -> Monomial,
    {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }
}

fn check_var(nvars: usize, i: usize) -> Result<()> {
    if i == 0 || i > nvars {
        Err(Error::OutOfRange {
            index: i,
            max: nvars,
        })
    } else {
        Ok(())
    }
}

/// All exponent vectors of total degree `d` in `n` variables, graded-lex
/// descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Elementary symmetric polynomial `e_i` in `n` variables, `e_0 = 1`.
pub fn elementary_symmetric(n: usize, i: usize) -> Result<MultiPoly> {
    if i > n {
        return Err(Error::OutOfRange { index: i, max: n });
    }
    let mut p = MultiPoly::zero(n);
    let mut chosen = vec![0u32; n];
    fn rec(start: usize, left: usize, chosen: &mut Vec<u32>, p: &mut MultiPoly) {
        if left == 0 {
            p.add_term(Monomial(chosen.clone()), BigRational::one());
            return;
        }
        for s in start..=(chosen.len() - left) {
            chosen[s] = 1;
            rec(s + 1, left - 1, chosen, p);
            chosen[s] = 0;
        }
    }
    rec(0, i, &mut chosen, &mut p);
    Ok(p)
}

/// `Δ_n = ∏_{i<j} (x_i − x_j)`.
pub fn vandermonde(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::OutOfRange { index: 0, max: 0 });
    }
    let mut p = MultiPoly::one(n);
    for i in 1..=n {
        for j in (i + 1)..=n {
            p = &p * &MultiPoly::binomial(n, i, j)?;
        }
    }
    Ok(p)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            /// Panics on mismatched variable counts; use the `checked_*` form
            /// to get an error instead.
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("MultiPoly arithmetic on mismatched nvars")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    /// Fully expanded, graded-lex descending: `-1/6*x1^3 + 1/2*x1^2*x2 - …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Integer-coefficient convenience constructor used mostly in tests.
pub fn poly_from_ints(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
    MultiPoly::from_terms(
        nvars,
        terms
            .iter()
            .map(|(e, c)| (e.to_vec(), BigRational::from_integer(BigInt::from(*c)))),
    )
    .expect("exponent length matches nvars")
}
