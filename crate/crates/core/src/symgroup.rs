//! Permutations of `{1..n}`, their action on polynomials and the group
//! algebra ℚS_n.
//!
//! Composition is `(a∘b)(i) = a(b(i))`. With the action
//! `(σP)(x_1..x_n) = P(x_{σ(1)}..x_{σ(n)})` this is a left action:
//! `act(a∘b, p) = act(a, act(b, p))`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{BigRational, Monomial, MultiPoly};

/// Largest `n` for which full `S_n` enumeration is allowed.
pub const MAX_GROUP_N: usize = 8;

/// A bijection of `{1..n}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// From 1-based images `[σ(1), …, σ(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Perm {
            images: images.iter().map(|v| v - 1).collect(),
        })
    }

    /// The transposition `(a, b)` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        for v in [a, b] {
            if v == 0 || v > n {
                return Err(Error::OutOfRange { index: v, max: n });
            }
        }
        if a == b {
            return Err(Error::InvalidPermutation(format!("({a},{b}) is not a transposition")));
        }
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// From cycle notation over `{1..n}`, e.g. `[[1,2,3],[4,5]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::identity(n);
        let mut used = vec![false; n];
        for cyc in cycles {
            for (idx, &a) in cyc.iter().enumerate() {
                if a == 0 || a > n || used[a - 1] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cyc:?}")));
                }
                used[a - 1] = true;
                let b = cyc[(idx + 1) % cyc.len()];
                p.images[a - 1] = b - 1;
            }
        }
        Ok(p)
    }

    /// Parses `"(1,2)(3,4,5)"`; `"()"` or an empty string is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("bad cycle notation: {text}")))?;
            let (body, tail) = inner;
            if !body.is_empty() {
                let cyc = body
                    .split(',')
                    .map(|v| v.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cyc);
            }
            rest = tail;
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Perm { images: inv }
    }

    /// Cycles of length ≥ 2, each starting at its smallest element, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.images[i];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn sign(&self) -> i32 {
        let even_cycles = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `σ·P`: the monomial `∏ x_i^{a_i}` goes to `∏ x_{σ(i)}^{a_i}`.
    pub fn act(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if self.n() != p.nvars() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: p.nvars(),
            });
        }
        Ok(p.map_monomials(|m| {
            let mut e = vec![0; m.0.len()];
            for (i, &a) in m.0.iter().enumerate() {
                e[self.images[i]] = a;
            }
            Monomial(e)
        }))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

/// All permutations of `{1..n}` fixing the complement of `subset` pointwise.
pub fn perms_of_subset(n: usize, subset: &[usize]) -> Result<Vec<Perm>> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() || sorted.iter().any(|&v| v == 0 || v > n) {
        return Err(Error::InvalidPermutation(format!(
            "{subset:?} is not a subset of 1..={n}"
        )));
    }
    if sorted.len() > MAX_GROUP_N {
        return Err(Error::Guardrail(format!(
            "enumerating S_U with |U| = {} exceeds {MAX_GROUP_N}",
            sorted.len()
        )));
    }
    let mut out = Vec::new();
    let mut arrangement = sorted.clone();
    loop {
        let mut p = Perm::identity(n);
        for (src, dst) in sorted.iter().zip(&arrangement) {
            p.images[src - 1] = dst - 1;
        }
        out.push(p);
        if !next_permutation(&mut arrangement) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A formal ℚ-linear combination of permutations in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElem {
    n: usize,
    terms: BTreeMap<Perm, BigRational>,
}

impl GroupAlgebraElem {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_perm(Perm::identity(n), BigRational::one())
    }

    pub fn from_perm(p: Perm, c: BigRational) -> Self {
        let mut e = Self::zero(p.n());
        e.add_term(p, c);
        e
    }

    pub fn n(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Perm) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, p: Perm, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    fn same_n(&self, other_n: usize) -> Result<()> {
        if self.n == other_n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other_n,
            })
        }
    }

    pub fn add(&self, other: &GroupAlgebraElem) -> Result<GroupAlgebraElem> {
        self.same_n(other.n)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GroupAlgebraElem) -> Result<GroupAlgebraElem> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> GroupAlgebraElem {
        let mut out = Self::zero(self.n);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v * c);
        }
        out
    }

    /// Convolution product `self · other`.
    pub fn mul(&self, other: &GroupAlgebraElem) -> Result<GroupAlgebraElem> {
        self.same_n(other.n)?;
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.compose(b)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// `Σ f_σ (σ·p)`.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        self.same_n(p.nvars())?;
        let mut out = MultiPoly::zero(p.nvars());
        for (s, c) in &self.terms {
            out = &out + &s.act(p)?.scale(c);
        }
        Ok(out)
    }
}

impl fmt::Display for GroupAlgebraElem {
    /// Cycle notation with rational coefficients: `1 - (1,2) + 2/3·(1,2,3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (p.is_identity(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{p}")?,
                (false, false) => write!(f, "{abs}·{p}")?,
            }
        }
        Ok(())
    }
}

/// `[U] = Σ_{σ∈S_U} σ`, or `[U]′ = Σ sgn(σ)σ` when `signed`.
pub fn bracket(n: usize, subset: &[usize], signed: bool) -> Result<GroupAlgebraElem> {
    if subset.is_empty() {
        return Err(Error::InvalidPermutation("bracket needs a nonempty subset".into()));
    }
    let mut e = GroupAlgebraElem::zero(n);
    for p in perms_of_subset(n, subset)? {
        let c = if signed { p.sign() } else { 1 };
        e.add_term(p, BigRational::from_integer(c.into()));
    }
    Ok(e)
}

/// The telescoping product
/// `(1 ± (i_1,i_2))(1 ± (i_1,i_3) ± (i_2,i_3))···(1 ± (i_1,i_n) ± … ± (i_{n−1},i_n))`.
pub fn sn_factorization(order: &[usize], signed: bool) -> Result<GroupAlgebraElem> {
    let n = order.len();
    Perm::from_images(order)?;
    let sign = if signed {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    let mut acc = GroupAlgebraElem::identity(n);
    for k in 1..n {
        let mut factor = GroupAlgebraElem::identity(n);
        for a in 0..k {
            factor.add_term(Perm::transposition(n, order[a], order[k])?, sign.clone());
        }
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{elementary_symmetric, rat};

    fn t(n: usize, a: usize, b: usize) -> Perm {
        Perm::transposition(n, a, b).unwrap()
    }

    #[test]
    fn transposition_is_involution() {
        assert!(t(3, 1, 2).compose(&t(3, 1, 2)).unwrap().is_identity());
        assert_eq!(t(2, 1, 2).sign(), -1);
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(perms_of_subset(3, &[1, 2, 3]).unwrap().len(), 6);
        assert_eq!(perms_of_subset(3, &[2, 3]).unwrap().len(), 2);
        assert!(perms_of_subset(3, &[2, 2]).is_err());
        assert!(perms_of_subset(9, &[1, 2, 3, 4, 5, 6, 7, 8, 9]).is_err());
    }

    #[test]
    fn invalid_images_rejected() {
        assert!(Perm::from_images(&[1, 1, 3]).is_err());
        assert!(Perm::from_images(&[0, 1]).is_err());
        assert!(Perm::from_images(&[2, 3, 1]).is_ok());
    }

    #[test]
    fn action_examples() {
        let x1 = MultiPoly::var(2, 1).unwrap();
        assert_eq!(t(2, 1, 2).act(&x1).unwrap(), MultiPoly::var(2, 2).unwrap());
        let e2 = elementary_symmetric(3, 2).unwrap();
        for p in perms_of_subset(3, &[1, 2, 3]).unwrap() {
            assert_eq!(p.act(&e2).unwrap(), e2);
        }
        let c = MultiPoly::binomial(2, 1, 2).unwrap().pow(3);
        assert_eq!(t(2, 1, 2).act(&c).unwrap(), -&c);
    }

    #[test]
    fn action_matches_substitution_definition() {
        // σ = (1,2,3): σ(1)=2, so σ·x_1 = x_{σ(1)} = x_2.
        let s = Perm::from_images(&[2, 3, 1]).unwrap();
        let x1 = MultiPoly::var(3, 1).unwrap();
        assert_eq!(s.act(&x1).unwrap(), MultiPoly::var(3, 2).unwrap());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(3, &[1], true).unwrap(), GroupAlgebraElem::identity(3));
        assert_eq!(bracket(3, &[1], false).unwrap(), GroupAlgebraElem::identity(3));
        let mut expected = GroupAlgebraElem::identity(2);
        expected.add_term(t(2, 1, 2), rat(-1));
        assert_eq!(bracket(2, &[1, 2], true).unwrap(), expected);
        let s3 = bracket(3, &[1, 2, 3], false).unwrap();
        assert_eq!(s3.len(), 6);
        assert!(s3.terms().all(|(_, c)| *c == rat(1)));
    }

    #[test]
    fn group_algebra_products() {
        let s3 = bracket(3, &[1, 2, 3], false).unwrap();
        assert_eq!(s3.mul(&s3).unwrap(), s3.scale(&rat(6)));
        let anti = bracket(2, &[1, 2], true).unwrap();
        let sym = bracket(2, &[1, 2], false).unwrap();
        assert!(anti.mul(&sym).unwrap().is_zero());
        let id = GroupAlgebraElem::identity(3);
        assert_eq!(id.mul(&s3).unwrap(), s3);
    }

    #[test]
    fn apply_brackets_to_x1() {
        let x1 = MultiPoly::var(2, 1).unwrap();
        let x2 = MultiPoly::var(2, 2).unwrap();
        assert_eq!(bracket(2, &[1, 2], false).unwrap().apply(&x1).unwrap(), &x1 + &x2);
        assert_eq!(bracket(2, &[1, 2], true).unwrap().apply(&x1).unwrap(), &x1 - &x2);
    }

    #[test]
    fn factorization_small_cases() {
        assert_eq!(
            sn_factorization(&[1, 2], false).unwrap(),
            bracket(2, &[1, 2], false).unwrap()
        );
        assert_eq!(
            sn_factorization(&[1, 2, 3], true).unwrap(),
            bracket(3, &[1, 2, 3], true).unwrap()
        );
        assert_eq!(sn_factorization(&[1], true).unwrap(), GroupAlgebraElem::identity(1));
        assert!(sn_factorization(&[1, 1], true).is_err());
    }

    #[test]
    fn display_uses_cycle_notation() {
        let mut e = bracket(3, &[1, 2], true).unwrap();
        e.add_term(Perm::from_images(&[2, 3, 1]).unwrap(), crate::exactalg::ratio(2, 3));
        assert_eq!(e.to_string(), "1 - (1,2) + 2/3·(1,2,3)");
        assert_eq!(Perm::parse_cycles(3, "(1,2,3)").unwrap().to_string(), "(1,2,3)");
        assert!(Perm::parse_cycles(3, "()").unwrap().is_identity());
    }
}
