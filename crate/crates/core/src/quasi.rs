//! Quasiinvariance, the `γ_T R ∩ V_T^{2m+1} R` membership test and the
//! brute-force oracle for graded dimensions of `QI_m`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::linalg::{bareiss_echelon, integer_rows, nullspace_bareiss, nullspace_rational};
use crate::exactalg::{monomials_of_degree, rat, vandermonde, BigRational, Monomial, MultiPoly};
use crate::json::poly_to_value;
use crate::symgroup::Perm;
use crate::tableaux::{all_standard_tableaux, Tableau};

/// Largest `n` the oracle accepts.
pub const MAX_ORACLE_N: usize = 4;
/// Degree cap used when `QI_MAX_DEGREE` is unset.
pub const DEFAULT_MAX_DEGREE: u32 = 16;

/// Degree cap for the oracle, overridable through `QI_MAX_DEGREE`.
pub fn oracle_degree_cap() -> u32 {
    std::env::var("QI_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

/// True iff `(x_i − x_j)^{2m+1}` divides `(1 − (i,j))p` for every `i < j`.
pub fn is_quasiinvariant(p: &MultiPoly, m: u32) -> bool {
    let n = p.nvars();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let swapped = Perm::transposition(n, i, j).unwrap().act(p).unwrap();
            let diff = p - &swapped;
            match diff.binomial_valuation(i, j).unwrap() {
                None => {}
                Some(v) if v > 2 * m => {}
                Some(_) => return false,
            }
        }
    }
    true
}

/// True iff `γ_T p = p` and `V_T^{2m+1} | p`.
pub fn in_gamma_component(p: &MultiPoly, t: &Tableau, m: u32) -> Result<bool> {
    if p.nvars() != t.size() {
        return Err(Error::DimensionMismatch {
            left: p.nvars(),
            right: t.size(),
        });
    }
    if t.gamma()?.apply(p)? != *p {
        return Ok(false);
    }
    divisible_by_v_t_power(p, t, 2 * m + 1)
}

/// `V_T^e | p`, decided by exact division by the full product.
pub fn divisible_by_v_t_power(p: &MultiPoly, t: &Tableau, e: u32) -> Result<bool> {
    match p.divide_exact(&t.v_t()?.pow(e)) {
        Ok(_) => Ok(true),
        Err(Error::NotDivisible) => Ok(false),
        Err(other) => Err(other),
    }
}

/// A basis of the homogeneous degree-`degree` part of `QI_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QIWitness {
    pub n: usize,
    pub m: u32,
    pub degree: u32,
    pub basis: Vec<MultiPoly>,
}

impl QIWitness {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `{"n","m","degree","dimension","seed","basis":[..]}`.
    pub fn to_json(&self, seed: u64) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "m": self.m,
            "degree": self.degree,
            "dimension": self.dimension(),
            "seed": seed,
            "basis": self.basis.iter().map(poly_to_value).collect::<Vec<_>>(),
        })
    }
}

/// Which elimination backs the oracle nullspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elimination {
    Bareiss,
    Rational,
}

fn check_oracle_guardrails(n: usize, d: u32) -> Result<()> {
    if n == 0 || n > MAX_ORACLE_N {
        return Err(Error::Guardrail(format!(
            "oracle supports 1 ≤ n ≤ {MAX_ORACLE_N}, got {n}"
        )));
    }
    let cap = oracle_degree_cap();
    if d > cap {
        return Err(Error::Guardrail(format!(
            "oracle degree {d} exceeds cap {cap} (set QI_MAX_DEGREE to raise it)"
        )));
    }
    Ok(())
}

/// Linear constraints on the coefficients of a generic degree-`d` polynomial:
/// for each `i < j`, with `x_i = x_j + u` in `(1 − (i,j))P`, the coefficients
/// of `u^0..u^{2m}` vanish.
fn constraint_rows(n: usize, m: u32, basis: &[Monomial]) -> Vec<Vec<BigRational>> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
        .collect();
    let per_column: Vec<Vec<((usize, Monomial), BigRational)>> = basis
        .par_iter()
        .map(|mono| {
            let p = MultiPoly::monomial(mono.clone(), BigRational::one());
            let mut entries = Vec::new();
            for (pi, &(i, j)) in pairs.iter().enumerate() {
                let swapped = Perm::transposition(n, i, j).unwrap().act(&p).unwrap();
                let shifted = (&p - &swapped).shift(i, j, &BigRational::one()).unwrap();
                for (mm, c) in shifted.terms() {
                    if mm.exponents()[i - 1] <= 2 * m {
                        entries.push(((pi, mm.clone()), c.clone()));
                    }
                }
            }
            entries
        })
        .collect();
    let mut rows: BTreeMap<(usize, Monomial), Vec<BigRational>> = BTreeMap::new();
    for (col, entries) in per_column.into_iter().enumerate() {
        for (key, c) in entries {
            rows.entry(key)
                .or_insert_with(|| vec![BigRational::zero(); basis.len()])[col] = c;
        }
    }
    rows.into_values().collect()
}

/// Exact basis of the degree-`d` component of `QI_m` in `n` variables.
pub fn graded_dimension_oracle(n: usize, m: u32, d: u32) -> Result<QIWitness> {
    graded_dimension_oracle_with(n, m, d, Elimination::Bareiss)
}

pub fn graded_dimension_oracle_with(n: usize, m: u32, d: u32, how: Elimination) -> Result<QIWitness> {
    check_oracle_guardrails(n, d)?;
    let monos = monomials_of_degree(n, d);
    let rows = constraint_rows(n, m, &monos);
    let null = match how {
        Elimination::Bareiss => nullspace_bareiss(&rows, monos.len())?,
        Elimination::Rational => nullspace_rational(&rows, monos.len()),
    };
    let basis = null
        .iter()
        .map(|v| MultiPoly::from_coefficient_vector(&monos, v))
        .collect();
    Ok(QIWitness { n, m, degree: d, basis })
}

/// Rank of a set of homogeneous degree-`d` polynomials.
pub fn span_rank(polys: &[MultiPoly], n: usize, d: u32) -> Result<usize> {
    Ok(span_basis(polys, n, d)?.len())
}

/// An echelon basis of the span of homogeneous degree-`d` polynomials.
pub fn span_basis(polys: &[MultiPoly], n: usize, d: u32) -> Result<Vec<MultiPoly>> {
    let monos = monomials_of_degree(n, d);
    for p in polys {
        if !p.is_zero() && (p.degree() != Some(d) || !p.is_homogeneous()) {
            return Err(Error::Contract(format!("expected homogeneous degree {d} input")));
        }
    }
    let rows: Vec<Vec<BigRational>> = polys.iter().map(|p| p.coefficient_vector(&monos)).collect();
    let ech = bareiss_echelon(integer_rows(&rows), monos.len())?;
    Ok(ech
        .rows
        .iter()
        .map(|r| {
            let v: Vec<BigRational> = r.iter().cloned().map(BigRational::from_integer).collect();
            MultiPoly::from_coefficient_vector(&monos, &v)
        })
        .collect())
}

/// `γ_T` applied to the witness basis, reduced to an independent set.
pub fn gamma_component_basis(w: &QIWitness, t: &Tableau) -> Result<Vec<MultiPoly>> {
    if t.size() != w.n {
        return Err(Error::DimensionMismatch {
            left: w.n,
            right: t.size(),
        });
    }
    let g = t.gamma()?;
    let images = w.basis.iter().map(|b| g.apply(b)).collect::<Result<Vec<_>>>()?;
    span_basis(&images, w.n, w.degree)
}

/// `dim γ_T (QI_m)_d`.
pub fn isotypic_dimension(w: &QIWitness, t: &Tableau) -> Result<usize> {
    Ok(gamma_component_basis(w, t)?.len())
}

/// Dimension of `γ_T (QI_m / ⟨e_1..e_n⟩)` in degree `d`: the per-T
/// dimension minus the rank of `Σ_i e_i·(γ_T QI_m)_{d−i}`.
pub fn quotient_isotypic_dimension(n: usize, m: u32, d: u32, t: &Tableau) -> Result<usize> {
    let top = gamma_component_basis(&graded_dimension_oracle(n, m, d)?, t)?;
    let mut ideal = Vec::new();
    for i in 1..=n.min(d as usize) {
        let e = crate::exactalg::elementary_symmetric(n, i)?;
        let lower = gamma_component_basis(&graded_dimension_oracle(n, m, d - i as u32)?, t)?;
        ideal.extend(lower.iter().map(|b| &e * b));
    }
    let r = span_rank(&ideal, n, d)?;
    Ok(top.len() - r)
}

/// Outcome of the two sampled containment suites for `γ_T QI_m = γ_T R ∩ V_T^{2m+1} R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremMainReport {
    pub n: usize,
    pub m: u32,
    pub seed: u64,
    pub max_degree: u32,
    /// Witness elements projected and checked (containment `⊆`).
    pub projected_checked: usize,
    /// Random candidates built for the reverse containment.
    pub candidates: usize,
    /// Candidates that survived the divisibility filter and were checked.
    pub intersection_checked: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// A random polynomial of total degree ≤ `max_deg` with small integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, nterms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for _ in 0..nterms {
        let d = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c: i64 = rng.gen_range(-3..=3);
        p = &p + &MultiPoly::monomial(Monomial(e), rat(c));
    }
    p
}

/// Runs both containment directions.
///
/// (a) For each oracle witness element `Q` of degree ≤ `max_degree` and each
/// standard `T`: `γ_T Q` is divisible by `V_T^{2m+1}` and m-quasiinvariant.
/// (b) For random `W = γ_T(V_T^{2m+1}·r)` that are still divisible by
/// `V_T^{2m+1}`: `W` is m-quasiinvariant. `samples` candidates are drawn per `T`.
pub fn theorem_main_checks(
    n: usize,
    m: u32,
    samples: usize,
    seed: u64,
    max_degree: u32,
) -> Result<TheoremMainReport> {
    let tableaux = all_standard_tableaux(n);
    let mut report = TheoremMainReport {
        n,
        m,
        seed,
        max_degree,
        projected_checked: 0,
        candidates: 0,
        intersection_checked: 0,
        passed: true,
        counterexample: None,
    };
    let fail = |report: &mut TheoremMainReport, msg: String| {
        report.passed = false;
        report.counterexample.get_or_insert(msg);
    };

    let witnesses = (0..=max_degree)
        .map(|d| graded_dimension_oracle(n, m, d))
        .collect::<Result<Vec<_>>>()?;
    for t in &tableaux {
        let g = t.gamma()?;
        let e = 2 * m + 1;
        for w in &witnesses {
            for q in &w.basis {
                let p = g.apply(q)?;
                report.projected_checked += 1;
                if !divisible_by_v_t_power(&p, t, e)? || !is_quasiinvariant(&p, m) {
                    fail(
                        &mut report,
                        format!("γ_T Q fails for T={:?}, Q={q}", t.rows()),
                    );
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in &tableaux {
        let g = t.gamma()?;
        let e = 2 * m + 1;
        let vpow = t.v_t()?.pow(e);
        let vdeg = vpow.degree().unwrap_or(0);
        let room = max_degree.saturating_sub(vdeg);
        for _ in 0..samples {
            let r = random_poly(&mut rng, n, room, 4);
            let w = g.apply(&(&vpow * &r))?;
            report.candidates += 1;
            if w.is_zero() || !divisible_by_v_t_power(&w, t, e)? {
                continue;
            }
            report.intersection_checked += 1;
            if !is_quasiinvariant(&w, m) {
                fail(
                    &mut report,
                    format!("W in γ_T R ∩ V_T^{e} R is not quasiinvariant: T={:?}, W={w}", t.rows()),
                );
            }
        }
    }
    Ok(report)
}

/// `Δ_n²·p`, with the precondition `p ∈ QI_m` and the postcondition
/// `Δ_n²·p ∈ QI_{m+1}` both enforced.
pub fn delta_sq_embed(p: &MultiPoly, m: u32) -> Result<MultiPoly> {
    if !is_quasiinvariant(p, m) {
        return Err(Error::Contract(format!("input is not {m}-quasiinvariant")));
    }
    let out = &vandermonde(p.nvars())?.pow(2) * p;
    if !is_quasiinvariant(&out, m + 1) {
        return Err(Error::TheoremViolation(format!(
            "Δ²·p is not {}-quasiinvariant for p = {p}",
            m + 1
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::elementary_symmetric;
    use crate::tableaux::{standard_tableaux, Partition};

    #[test]
    fn symmetric_polynomials_are_quasiinvariant() {
        let p = &elementary_symmetric(3, 1).unwrap().pow(2) + &elementary_symmetric(3, 3).unwrap();
        for m in 0..4 {
            assert!(is_quasiinvariant(&p, m));
        }
    }

    #[test]
    fn x1_is_only_0_quasiinvariant() {
        let x1 = MultiPoly::var(2, 1).unwrap();
        assert!(is_quasiinvariant(&x1, 0));
        assert!(!is_quasiinvariant(&x1, 1));
    }

    #[test]
    fn odd_vandermonde_powers() {
        for n in 2..=3 {
            for m in 0..3 {
                let p = vandermonde(n).unwrap().pow(2 * m + 1);
                assert!(is_quasiinvariant(&p, m));
            }
        }
    }

    #[test]
    fn m_zero_accepts_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 3, 5, 5);
            assert!(is_quasiinvariant(&p, 0));
        }
    }

    #[test]
    fn gamma_component_membership() {
        let t = Tableau::hook(3, 2).unwrap();
        assert!(in_gamma_component(&MultiPoly::zero(3), &t, 1).unwrap());
        assert!(!in_gamma_component(&elementary_symmetric(3, 1).unwrap(), &t, 1).unwrap());
        assert!(t.gamma().unwrap().apply(&elementary_symmetric(3, 1).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn oracle_small_dimensions() {
        let dims: Vec<usize> = (0..8)
            .map(|d| graded_dimension_oracle(3, 1, d).unwrap().dimension())
            .collect();
        // Independent sympy nullspace computation.
        assert_eq!(dims, vec![1, 1, 2, 3, 6, 9, 13, 18]);
        for d in 0..6 {
            let w = graded_dimension_oracle(2, 1, d).unwrap();
            assert!(w.basis.iter().all(|b| is_quasiinvariant(b, 1)));
        }
    }

    #[test]
    fn elimination_routes_agree() {
        for (n, m, d) in [(2, 2, 7), (3, 1, 5), (3, 2, 8)] {
            let a = graded_dimension_oracle_with(n, m, d, Elimination::Bareiss).unwrap();
            let b = graded_dimension_oracle_with(n, m, d, Elimination::Rational).unwrap();
            assert_eq!(a.dimension(), b.dimension(), "n={n} m={m} d={d}");
        }
    }

    #[test]
    fn oracle_guardrails() {
        assert!(matches!(graded_dimension_oracle(5, 1, 2), Err(Error::Guardrail(_))));
        assert!(matches!(graded_dimension_oracle(2, 1, 1000), Err(Error::Guardrail(_))));
    }

    #[test]
    fn isotypic_dimensions_examples() {
        let w0 = graded_dimension_oracle(3, 1, 0).unwrap();
        let col = standard_tableaux(&Partition::new(vec![1, 1, 1]).unwrap());
        assert_eq!(isotypic_dimension(&w0, &col[0]).unwrap(), 0);
        let w4 = graded_dimension_oracle(3, 1, 4).unwrap();
        assert_eq!(isotypic_dimension(&w4, &Tableau::hook(3, 2).unwrap()).unwrap(), 1);
        let total: usize = all_standard_tableaux(3)
            .iter()
            .map(|t| isotypic_dimension(&w4, t).unwrap())
            .sum();
        assert_eq!(total, w4.dimension());
    }

    #[test]
    fn quotient_dimension_of_hook_component() {
        let t = Tableau::hook(3, 3).unwrap();
        assert_eq!(quotient_isotypic_dimension(3, 1, 4, &t).unwrap(), 1);
        assert_eq!(quotient_isotypic_dimension(3, 1, 5, &t).unwrap(), 1);
        assert_eq!(quotient_isotypic_dimension(3, 1, 6, &t).unwrap(), 0);
        assert_eq!(quotient_isotypic_dimension(3, 1, 3, &t).unwrap(), 0);
    }

    #[test]
    fn column_shape_n2_samples_all_pass() {
        let r = theorem_main_checks(2, 2, 10, 3, 8).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
        assert!(r.intersection_checked > 0);
    }

    #[test]
    fn theorem_main_n3_m1() {
        let r = theorem_main_checks(3, 1, 25, 42, 8).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
        assert!(r.projected_checked > 0);
        assert!(r.intersection_checked > 0);
    }

    #[test]
    fn delta_sq_embedding_examples() {
        let one = MultiPoly::one(3);
        let d2 = delta_sq_embed(&one, 0).unwrap();
        assert_eq!(d2, vandermonde(3).unwrap().pow(2));
        let x1 = MultiPoly::var(3, 1).unwrap();
        let e = delta_sq_embed(&x1, 0).unwrap();
        assert!(is_quasiinvariant(&e, 1));
        assert!(matches!(delta_sq_embed(&x1, 1), Err(Error::Contract(_))));
    }
}
