//! Hilbert series of `QI_m` from content and cocharge, the hook-component
//! series, and the change-of-basis determinant checks.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{factorial, rat, series_expand, vandermonde, BigRational, MultiPoly, PowerSeries};
use crate::hookbasis::hook_basis;
use crate::quasi::{
    delta_sq_embed, graded_dimension_oracle, isotypic_dimension, is_quasiinvariant, oracle_degree_cap,
    quotient_isotypic_dimension,
};
use crate::symgroup::Perm;
use crate::tableaux::{partitions, standard_tableaux, Partition, Tableau};

/// Largest `n` for which the full Hilbert series is assembled.
pub const MAX_HILBERT_N: usize = 6;
/// Largest truncation accepted for series output.
pub const MAX_TRUNCATION: usize = 400;

fn binom2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// `m(C(n,2) − content(λ)) + cocharge(T)`.
pub fn tableau_exponent(t: &Tableau, m: u32) -> u64 {
    let n = t.size();
    let c = binom2(n) - t.shape().content();
    (m as i64 * c) as u64 + t.cocharge()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeSeries {
    pub shape: Vec<usize>,
    pub f_lambda: u64,
    pub content: i64,
    /// One exponent per standard tableau, in tableau order.
    pub exponents: Vec<u64>,
    /// `f_λ Σ_T q^{exponent(T)}`.
    pub numerator: PowerSeries,
    /// The isotypic sub-series: numerator over `∏(1 − q^i)`.
    pub series: PowerSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub degree: u32,
    pub oracle: usize,
    pub series: u64,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub n: usize,
    pub m: u32,
    pub truncation: usize,
    pub shapes: Vec<ShapeSeries>,
    pub numerator: PowerSeries,
    pub total: PowerSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleRow>>,
}

impl HilbertReport {
    pub fn shape(&self, parts: &[usize]) -> Option<&ShapeSeries> {
        self.shapes.iter().find(|s| s.shape == parts)
    }

    /// `None` when no oracle rows are attached.
    pub fn oracle_agrees(&self) -> Option<bool> {
        self.oracle.as_ref().map(|rows| rows.iter().all(|r| r.agrees))
    }
}

fn shape_series(shape: &Partition, m: u32, truncation: usize) -> Result<ShapeSeries> {
    let n = shape.size();
    let f = shape.f_lambda()?;
    let exponents: Vec<u64> = standard_tableaux(shape).iter().map(|t| tableau_exponent(t, m)).collect();
    let top = exponents.iter().copied().max().unwrap_or(0) as usize;
    let mut numerator = PowerSeries::zero(top);
    for &e in &exponents {
        numerator.add_monomial(e as usize, &BigInt::from(f));
    }
    let series = series_expand(&numerator, n, truncation);
    Ok(ShapeSeries {
        shape: shape.parts().to_vec(),
        f_lambda: f,
        content: shape.content(),
        exponents,
        numerator,
        series,
    })
}

/// `Σ_λ f_λ Σ_T q^{m(C(n,2)−content(λ))+cocharge(T)} / ∏_{i=1}^n (1 − q^i)`
/// through `q^truncation`.
pub fn full_hilbert(n: usize, m: u32, truncation: usize) -> Result<HilbertReport> {
    if n == 0 || n > MAX_HILBERT_N {
        return Err(Error::Guardrail(format!(
            "Hilbert series supports 1 ≤ n ≤ {MAX_HILBERT_N}, got {n}"
        )));
    }
    if truncation > MAX_TRUNCATION {
        return Err(Error::Guardrail(format!(
            "truncation {truncation} exceeds {MAX_TRUNCATION}"
        )));
    }
    let shapes = partitions(n)
        .par_iter()
        .map(|p| shape_series(p, m, truncation))
        .collect::<Result<Vec<_>>>()?;
    let top = shapes.iter().map(|s| s.numerator.truncation()).max().unwrap_or(0);
    let mut numerator = PowerSeries::zero(top);
    for s in &shapes {
        for (d, c) in s.numerator.coeffs().iter().enumerate() {
            numerator.add_monomial(d, c);
        }
    }
    let total = series_expand(&numerator, n, truncation);
    if total.has_negative() {
        return Err(Error::Internal("Hilbert series has a negative coefficient".into()));
    }
    Ok(HilbertReport {
        n,
        m,
        truncation,
        shapes,
        numerator,
        total,
        oracle: None,
    })
}

/// Attaches oracle dimensions for degrees `0..=min(truncation, cap)`.
pub fn with_oracle(mut report: HilbertReport) -> Result<HilbertReport> {
    let top = report.truncation.min(oracle_degree_cap() as usize) as u32;
    let rows = (0..=top)
        .into_par_iter()
        .map(|d| {
            let dim = graded_dimension_oracle(report.n, report.m, d)?.dimension();
            let expect = report.total.coeff(d as usize).to_u64().unwrap_or(u64::MAX);
            Ok(OracleRow {
                degree: d,
                oracle: dim,
                series: expect,
                agrees: dim as u64 == expect,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    report.oracle = Some(rows);
    Ok(report)
}

/// `Σ_{k=0}^{n−2} q^{mn+1+k}`, the per-tableau series of the hook component
/// modulo symmetric functions.
pub fn hook_component_series(n: usize, m: u32) -> Result<PowerSeries> {
    if n < 2 {
        return Err(Error::Contract("hook shape needs n ≥ 2".into()));
    }
    let lo = m as usize * n + 1;
    let mut s = PowerSeries::zero(lo + n - 2);
    for k in 0..=(n - 2) {
        s.add_monomial(lo + k, &BigInt::from(1));
    }
    Ok(s)
}

/// One hook tableau in one degree: dimensions against the hook series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HookDimensionRow {
    pub j: usize,
    pub degree: u32,
    /// Dimension of `γ_T` of the quotient by `⟨e_1, …, e_n⟩`.
    pub quotient: usize,
    pub quotient_expected: u64,
    /// Dimension of `γ_T (QI_m)_d` itself.
    pub raw: usize,
    /// Coefficient of the hook series over `∏(1 − q^i)`.
    pub raw_expected: u64,
}

impl HookDimensionRow {
    pub fn agrees(&self) -> bool {
        self.quotient as u64 == self.quotient_expected && self.raw as u64 == self.raw_expected
    }
}

/// Per-tableau isotypic dimensions of the hook component in degrees
/// `mn+1 ..= mn+n−1`, compared with the hook series.
pub fn hook_dimension_rows(n: usize, m: u32) -> Result<Vec<HookDimensionRow>> {
    let hs = hook_component_series(n, m)?;
    let top = hs.truncation();
    let raw_series = series_expand(&hs, n, top);
    let lo = m * n as u32 + 1;
    let mut rows = Vec::new();
    for j in 2..=n {
        let t = Tableau::hook(n, j)?;
        for d in lo..=(top as u32) {
            let w = graded_dimension_oracle(n, m, d)?;
            rows.push(HookDimensionRow {
                j,
                degree: d,
                quotient: quotient_isotypic_dimension(n, m, d, &t)?,
                quotient_expected: hs.coeff(d as usize).to_u64().unwrap(),
                raw: isotypic_dimension(&w, &t)?,
                raw_expected: raw_series.coeff(d as usize).to_u64().unwrap(),
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetDegreeReport {
    pub n: usize,
    /// Exponent sum for `QI_{m+1}` minus exponent sum for `QI_m`.
    pub multiset_route: u64,
    /// `C(n,2)·n!`.
    pub closed_form: u64,
    pub sum_f_squared: u64,
}

/// Degree of the change-of-basis determinant, computed from the exponent
/// multisets at `m` and `m+1` and from the closed form `C(n,2)·n!`.
pub fn det_degree(n: usize) -> Result<DetDegreeReport> {
    if n == 0 || n > MAX_HILBERT_N {
        return Err(Error::Guardrail(format!("det_degree supports 1 ≤ n ≤ {MAX_HILBERT_N}")));
    }
    let weighted_sum = |m: u32| -> Result<u64> {
        let mut s = 0u64;
        for p in partitions(n) {
            let f = p.f_lambda()?;
            for t in standard_tableaux(&p) {
                s += f * tableau_exponent(&t, m);
            }
        }
        Ok(s)
    };
    let multiset_route = weighted_sum(1)? - weighted_sum(0)?;
    let nf = factorial(n as u64).to_u64().unwrap();
    let closed_form = binom2(n) as u64 * nf;
    let sum_f_squared = partitions(n)
        .iter()
        .map(|p| p.f_lambda().map(|f| f * f))
        .sum::<Result<u64>>()?;
    if multiset_route != closed_form || sum_f_squared != nf {
        return Err(Error::TheoremViolation(format!(
            "det degree mismatch for n={n}: {multiset_route} vs {closed_form}, Σf² = {sum_f_squared}"
        )));
    }
    Ok(DetDegreeReport {
        n,
        multiset_route,
        closed_form,
        sum_f_squared,
    })
}

/// The `n = 2` change of basis from `QI_{m+1}` to `QI_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeOfBasis {
    pub m: u32,
    /// Row `r` expands the `r`-th basis element of `QI_{m+1}` in the basis
    /// `{1, (x_1 − x_2)^{2m+1}}` of `QI_m`.
    pub matrix: [[MultiPoly; 2]; 2],
    pub det: MultiPoly,
    /// `det / Δ_2²`, a nonzero constant.
    pub scalar: BigRational,
}

/// Splits `a ∈ QI_m` (n = 2) as `sym + s·(x_1 − x_2)^{2m+1}` with `sym` and `s`
/// symmetric.
fn decompose_n2(a: &MultiPoly, m: u32) -> Result<[MultiPoly; 2]> {
    let swapped = Perm::transposition(2, 1, 2)?.act(a)?;
    let half = BigRational::new(1.into(), 2.into());
    let sym = (a + &swapped).scale(&half);
    let anti = (a - &swapped).scale(&half);
    let s = anti
        .divide_by_binomial_power(1, 2, 2 * m + 1)
        .map_err(|_| Error::Contract(format!("input is not {m}-quasiinvariant")))?;
    Ok([sym, s])
}

fn free_basis_n2(m: u32) -> [MultiPoly; 2] {
    [MultiPoly::one(2), MultiPoly::binomial(2, 1, 2).unwrap().pow(2 * m + 1)]
}

/// Checks that `{1, (x_1 − x_2)^{2m+1}}` is quasiinvariant and that oracle
/// dimensions through degree `2m+4` match `(1 + q^{2m+1})/((1−q)(1−q²))`.
pub fn validate_free_basis_n2(m: u32) -> Result<bool> {
    if !free_basis_n2(m).iter().all(|b| is_quasiinvariant(b, m)) {
        return Ok(false);
    }
    let top = 2 * m as usize + 4;
    let mut numer = PowerSeries::zero(top);
    numer.add_monomial(0, &BigInt::from(1));
    numer.add_monomial(2 * m as usize + 1, &BigInt::from(1));
    let expect = series_expand(&numer, 2, top);
    for d in 0..=top {
        let dim = graded_dimension_oracle(2, m, d as u32)?.dimension();
        if BigInt::from(dim) != expect.coeff(d) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn change_of_basis_n2(m: u32) -> Result<ChangeOfBasis> {
    let [r0, r1] = free_basis_n2(m + 1);
    let row0 = decompose_n2(&r0, m)?;
    let row1 = decompose_n2(&r1, m)?;
    let flip = Perm::transposition(2, 1, 2)?;
    for e in row0.iter().chain(row1.iter()) {
        if flip.act(e)? != *e {
            return Err(Error::TheoremViolation("expansion coefficient is not symmetric".into()));
        }
    }
    let det = &(&row0[0] * &row1[1]) - &(&row0[1] * &row1[0]);
    let delta_sq = vandermonde(2)?.pow(2);
    let scalar = det
        .divide_exact(&delta_sq)
        .ok()
        .and_then(|q| q.as_constant())
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::TheoremViolation(format!("det {det} is not a multiple of Δ²")))?;
    Ok(ChangeOfBasis {
        m,
        matrix: [row0, row1],
        det,
        scalar,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub n: usize,
    pub m: u32,
    pub max_degree: u32,
    pub seed: u64,
    /// Elements `p ∈ QI_m` for which `Δ²p ∈ QI_{m+1}` was checked.
    pub embedded: usize,
    /// Elements `p ∈ QI_{m+1}` for which `p ∈ QI_m` was checked.
    pub contained: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// Checks `Δ²·QI_m ⊂ QI_{m+1} ⊂ QI_m` on oracle witnesses of degree
/// `≤ max_degree`, on `samples` random combinations per degree and on the
/// hook basis.
pub fn delta_sq_chain_check(n: usize, m: u32, max_degree: u32, samples: usize, seed: u64) -> Result<ChainReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ChainReport {
        n,
        m,
        max_degree,
        seed,
        embedded: 0,
        contained: 0,
        passed: true,
        counterexample: None,
    };
    let mut lower: Vec<MultiPoly> = Vec::new();
    let mut upper: Vec<MultiPoly> = Vec::new();
    for d in 0..=max_degree {
        for (level, out) in [(m, &mut lower), (m + 1, &mut upper)] {
            let w = graded_dimension_oracle(n, level, d)?;
            out.extend(w.basis.iter().cloned());
            if !w.basis.is_empty() {
                for _ in 0..samples {
                    let mut p = MultiPoly::zero(n);
                    for b in &w.basis {
                        p = &p + &b.scale(&rat(rng.gen_range(-5..=5)));
                    }
                    out.push(p);
                }
            }
        }
    }
    if n >= 2 {
        for j in 2..=n {
            lower.extend(hook_basis(n, m, j, false)?);
            upper.extend(hook_basis(n, m + 1, j, false)?);
        }
    }
    for p in &lower {
        report.embedded += 1;
        match delta_sq_embed(p, m) {
            Ok(_) => {}
            Err(e) => {
                report.passed = false;
                report.counterexample.get_or_insert(format!("Δ²·({p}): {e}"));
            }
        }
    }
    for p in &upper {
        report.contained += 1;
        if !is_quasiinvariant(p, m) {
            report.passed = false;
            report
                .counterexample
                .get_or_insert(format!("{p} is {}-quasiinvariant but not {m}-quasiinvariant", m + 1));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(s: &PowerSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn m0_n2_counts_all_monomials() {
        let r = full_hilbert(2, 0, 6).unwrap();
        assert_eq!(series(&r.total), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn n2_m1_numerator() {
        let r = full_hilbert(2, 1, 8).unwrap();
        assert_eq!(series(&r.numerator), vec![1, 0, 0, 1]);
        assert_eq!(series(&r.total), vec![1, 1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn n3_m1_numerator() {
        let r = full_hilbert(3, 1, 10).unwrap();
        assert_eq!(series(&r.numerator), vec![1, 0, 0, 0, 2, 2, 0, 0, 0, 1]);
        assert_eq!(r.shape(&[2, 1]).unwrap().exponents, vec![4, 5]);
        assert_eq!(r.shape(&[1, 1, 1]).unwrap().exponents, vec![9]);
    }

    #[test]
    fn exponent_counts_match_f_lambda() {
        for n in 1..=6 {
            for s in full_hilbert(n, 2, 20).unwrap().shapes {
                assert_eq!(s.exponents.len() as u64, s.f_lambda);
            }
        }
    }

    #[test]
    fn oracle_agreement_small() {
        let r = with_oracle(full_hilbert(3, 1, 8).unwrap()).unwrap();
        assert_eq!(r.oracle_agrees(), Some(true));
    }

    #[test]
    fn hook_series_matches_eq1_hook_exponents() {
        for n in 2..=6 {
            for m in 0..3 {
                let hs = hook_component_series(n, m).unwrap();
                let mut hook = vec![n - 1, 1];
                if n == 2 {
                    hook = vec![1, 1];
                }
                let mut ex = full_hilbert(n, m, 0).unwrap().shape(&hook).unwrap().exponents.clone();
                ex.sort();
                let from_series: Vec<u64> = (0..=hs.truncation())
                    .filter(|&d| !hs.coeff(d).is_zero())
                    .map(|d| d as u64)
                    .collect();
                assert_eq!(ex, from_series, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn hook_rows_n3_m1() {
        let rows = hook_dimension_rows(3, 1).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(HookDimensionRow::agrees), "{rows:?}");
        assert_eq!(rows[1].raw, 2);
    }

    #[test]
    fn det_degree_values() {
        assert_eq!(det_degree(2).unwrap().closed_form, 2);
        assert_eq!(det_degree(3).unwrap().closed_form, 18);
        for n in 1..=6 {
            det_degree(n).unwrap();
        }
    }

    #[test]
    fn change_of_basis_is_delta_squared() {
        for m in 0..=4 {
            let c = change_of_basis_n2(m).unwrap();
            assert_eq!(c.det, vandermonde(2).unwrap().pow(2));
            assert_eq!(c.scalar, rat(1));
            assert!(c.matrix[0][1].is_zero());
            assert!(c.matrix[1][0].is_zero());
            assert_eq!(c.matrix[0][0], MultiPoly::one(2));
            assert!(validate_free_basis_n2(m).unwrap());
        }
    }

    #[test]
    fn chain_holds_n3_m1() {
        let r = delta_sq_chain_check(3, 1, 5, 2, 9).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
        assert!(r.embedded > 0 && r.contained > 0);
    }
}
