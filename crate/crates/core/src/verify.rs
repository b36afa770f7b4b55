//! Named property suites with deterministic reports.
//!
//! Every check either passes, fails with a counterexample, or is skipped
//! because it does not apply at the requested `(n, m)`. Reports contain no
//! timings, so the same configuration always renders the same bytes.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::calogero::{apply_lm, lm_eigen_check, LmOperator};
use crate::error::{Error, Result};
use crate::exactalg::{elementary_symmetric, rat, MultiPoly};
use crate::hookbasis::{
    gamma_fixed_check, lowest_quotient, lowest_quotient_rhs, q_closed_form, q_integral, recursion_residual,
    HookSpec,
};
use crate::quasi::{
    divisible_by_v_t_power, graded_dimension_oracle, isotypic_dimension, is_quasiinvariant, random_poly,
    theorem_main_checks, MAX_ORACLE_N,
};
use crate::structure::{change_of_basis_n2, delta_sq_chain_check, det_degree, validate_free_basis_n2};
use crate::symgroup::{bracket, sn_factorization, GroupAlgebraElem, Perm};
use crate::tableaux::all_standard_tableaux;
use crate::exactalg::vandermonde;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Groupalgebra,
    ThmMain,
    Hook,
    Lm,
    Chain,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        Ok(match s {
            "groupalgebra" => Suite::Groupalgebra,
            "thm-main" => Suite::ThmMain,
            "hook" => Suite::Hook,
            "lm" => Suite::Lm,
            "chain" => Suite::Chain,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Groupalgebra => "groupalgebra",
            Suite::ThmMain => "thm-main",
            Suite::Hook => "hook",
            Suite::Lm => "lm",
            Suite::Chain => "chain",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub n: usize,
    pub m: u32,
    pub seed: u64,
    pub samples: usize,
    /// Degree bound for oracle-backed checks.
    pub max_degree: u32,
}

impl VerifyConfig {
    pub fn new(suite: Suite, n: usize, m: u32, seed: u64) -> Self {
        VerifyConfig {
            suite,
            n,
            m,
            seed,
            samples: 25,
            max_degree: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn new(suite: &'static str, name: &str, failure: Option<String>, detail: String) -> Self {
        CheckResult {
            suite,
            name: name.to_string(),
            status: if failure.is_some() { Status::Fail } else { Status::Pass },
            detail,
            counterexample: failure,
        }
    }

    fn skip(suite: &'static str, name: &str, why: &str) -> Self {
        CheckResult {
            suite,
            name: name.to_string(),
            status: Status::Skip,
            detail: why.to_string(),
            counterexample: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = format!(
            "verify suite={} n={} m={} seed={} samples={} max_degree={}\n",
            c.suite.name(),
            c.n,
            c.m,
            c.seed,
            c.samples,
            c.max_degree
        );
        for r in &self.checks {
            let _ = writeln!(s, "[{}] {}: {} ({})", r.suite, r.name, r.status.label(), r.detail);
            if let Some(ce) = &r.counterexample {
                let _ = writeln!(s, "    counterexample: {ce}");
            }
        }
        let _ = writeln!(s, "overall: {}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

/// Runs the selected suites in a fixed order.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.n == 0 || config.n > crate::symgroup::MAX_GROUP_N {
        return Err(Error::Guardrail(format!("verify supports 1 ≤ n ≤ {}", crate::symgroup::MAX_GROUP_N)));
    }
    let suites: Vec<Suite> = match config.suite {
        Suite::All => vec![Suite::Groupalgebra, Suite::ThmMain, Suite::Hook, Suite::Lm, Suite::Chain],
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(match s {
            Suite::Groupalgebra => groupalgebra_suite(config)?,
            Suite::ThmMain => thm_main_suite(config)?,
            Suite::Hook => hook_suite(config)?,
            Suite::Lm => lm_suite(config)?,
            Suite::Chain => chain_suite(config)?,
            Suite::All => unreachable!(),
        });
    }
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(VerifyReport {
        config: config.clone(),
        checks,
        passed,
    })
}

fn first_failure<I: IntoIterator<Item = Result<Option<String>>>>(items: I) -> Result<Option<String>> {
    for it in items {
        if let Some(f) = it? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn orderings(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let base: Vec<usize> = (1..=n).collect();
    if n <= 4 {
        return crate::symgroup::perms_of_subset(n, &base)
            .unwrap()
            .iter()
            .map(Perm::images)
            .collect();
    }
    let mut out = vec![base.clone(), base.iter().rev().copied().collect()];
    for _ in 0..4 {
        let mut o = base.clone();
        o.shuffle(rng);
        out.push(o);
    }
    out
}

fn random_group_element(n: usize, rng: &mut ChaCha8Rng) -> GroupAlgebraElem {
    let mut f = GroupAlgebraElem::zero(n);
    for _ in 0..3 {
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(rng);
        f.add_term(Perm::from_images(&images).unwrap(), rat(rng.gen_range(-4..=4)));
    }
    f
}

fn random_symmetric(n: usize, rng: &mut ChaCha8Rng) -> MultiPoly {
    let mut s = MultiPoly::constant(n, rat(rng.gen_range(-2..=2)));
    for _ in 0..2 {
        let a = elementary_symmetric(n, rng.gen_range(1..=n)).unwrap();
        let b = elementary_symmetric(n, rng.gen_range(1..=n)).unwrap();
        s = &s + &(&a * &b).scale(&rat(rng.gen_range(-3..=3)));
    }
    s
}

fn groupalgebra_suite(c: &VerifyConfig) -> Result<Vec<CheckResult>> {
    const S: &str = "groupalgebra";
    let n = c.n;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut out = Vec::new();

    let mut count = 0;
    let mut fail = None;
    for size in 1..=n.min(5) {
        let full: Vec<usize> = (1..=size).collect();
        for signed in [false, true] {
            let target = bracket(size, &full, signed)?;
            for order in orderings(size, &mut rng) {
                count += 1;
                if fail.is_none() && sn_factorization(&order, signed)? != target {
                    fail = Some(format!("order {order:?}, signed={signed}"));
                }
            }
        }
    }
    out.push(CheckResult::new(
        S,
        "telescoping factorization of the full bracket",
        fail,
        format!("{count} orderings, sizes 1..={}", n.min(5)),
    ));

    let tableaux = all_standard_tableaux(n);
    let per_t = tableaux
        .par_iter()
        .map(|t| -> Result<[Option<String>; 3]> {
            let p = t.row_symmetrizer()?;
            let g = t.gamma()?;
            let mut kill = None;
            let mut inv = None;
            for (i, cell) in t.alpha_arguments() {
                if kill.is_none() && !t.col_union_antisym(i, cell)?.mul(&p)?.is_zero() {
                    kill = Some(format!("T={:?}, column {i}, cell {cell:?}", t.rows()));
                }
                if inv.is_none() && t.alpha(i, cell)?.mul(&g)? != g {
                    inv = Some(format!("T={:?}, column {i}, cell {cell:?}", t.rows()));
                }
            }
            let idem = (g.mul(&g)? != g).then(|| format!("T={:?}", t.rows()));
            Ok([kill, inv, idem])
        })
        .collect::<Result<Vec<_>>>()?;
    let nargs: usize = tableaux.iter().map(|t| t.alpha_arguments().len()).sum();
    let names = [
        "column-union antisymmetrizer annihilates the row symmetrizer",
        "alpha elements fix the Young symmetrizer",
        "Young symmetrizer is idempotent",
    ];
    for (idx, name) in names.iter().enumerate() {
        let fail = per_t.iter().find_map(|r| r[idx].clone());
        let detail = if idx < 2 {
            format!("{nargs} argument pairs over {} tableaux", tableaux.len())
        } else {
            format!("{} tableaux", tableaux.len())
        };
        out.push(CheckResult::new(S, name, fail, detail));
    }

    let mut fail = None;
    for _ in 0..c.samples {
        let f = random_group_element(n, &mut rng);
        let s = random_symmetric(n, &mut rng);
        let p = random_poly(&mut rng, n, 4, 4);
        let lhs = f.apply(&(&s * &p))?;
        let rhs = &s * &f.apply(&p)?;
        if lhs != rhs {
            fail = Some(format!("f={f}, s={s}, p={p}"));
            break;
        }
    }
    out.push(CheckResult::new(
        S,
        "group algebra action commutes with symmetric multipliers",
        fail,
        format!("{} samples", c.samples),
    ));

    if n > MAX_ORACLE_N {
        out.push(CheckResult::skip(S, "isotypic ranks sum to the graded dimension", "oracle needs n ≤ 4"));
    } else {
        let top = c.max_degree.min(6);
        let fail = first_failure((0..=top).map(|d| {
            let w = graded_dimension_oracle(n, c.m, d)?;
            let sum: usize = tableaux
                .iter()
                .map(|t| isotypic_dimension(&w, t))
                .sum::<Result<usize>>()?;
            Ok((sum != w.dimension()).then(|| format!("degree {d}: Σ = {sum}, dim = {}", w.dimension())))
        }))?;
        out.push(CheckResult::new(
            S,
            "isotypic ranks sum to the graded dimension",
            fail,
            format!("degrees 0..={top}, m={}", c.m),
        ));
    }
    Ok(out)
}

fn thm_main_suite(c: &VerifyConfig) -> Result<Vec<CheckResult>> {
    const S: &str = "thm-main";
    const NAME: &str = "gamma_T QI_m equals gamma_T R intersected with V_T^(2m+1) R";
    if c.n > MAX_ORACLE_N {
        return Ok(vec![CheckResult::skip(S, NAME, "oracle needs n ≤ 4")]);
    }
    let r = theorem_main_checks(c.n, c.m, c.samples, c.seed, c.max_degree)?;
    let detail = format!(
        "{} projected witnesses, {}/{} sampled intersection elements",
        r.projected_checked, r.intersection_checked, r.candidates
    );
    Ok(vec![CheckResult::new(S, NAME, r.counterexample, detail)])
}

fn hook_grid(c: &VerifyConfig) -> Result<Vec<HookSpec>> {
    let mut grid = Vec::new();
    for j in 2..=c.n {
        for k in 0..=(c.n as u32 - 2) {
            grid.push(HookSpec::new(c.n, c.m, j, k)?);
        }
    }
    Ok(grid)
}

fn grid_label(c: &VerifyConfig) -> String {
    format!("grid {}×{}", c.n - 1, c.n - 1)
}

fn run_grid<F>(grid: &[HookSpec], f: F) -> Result<Option<String>>
where
    F: Fn(&HookSpec) -> Result<bool> + Sync,
{
    let results = grid
        .par_iter()
        .map(|s| f(s).map(|ok| (!ok).then(|| format!("{s:?}"))))
        .collect::<Vec<_>>();
    first_failure(results)
}

fn hook_suite(c: &VerifyConfig) -> Result<Vec<CheckResult>> {
    const S: &str = "hook";
    let names = [
        "closed form equals the defining integral",
        "Q is homogeneous of degree mn+k+1",
        "Q lies in gamma_T R intersected with V_T^(2m+1) R and is m-quasiinvariant",
        "recursion in m through elementary symmetric functions",
        "lowest quotient matches the limit formula",
    ];
    if c.n < 2 {
        return Ok(names.iter().map(|n| CheckResult::skip(S, n, "hook shape needs n ≥ 2")).collect());
    }
    let grid = hook_grid(c)?;
    let label = grid_label(c);
    let mut out = Vec::new();
    out.push(CheckResult::new(
        S,
        names[0],
        run_grid(&grid, |s| Ok(q_closed_form(s) == q_integral(s)))?,
        label.clone(),
    ));
    out.push(CheckResult::new(
        S,
        names[1],
        run_grid(&grid, |s| {
            let q = q_integral(s);
            Ok(q.is_homogeneous() && q.degree() == Some(s.degree()))
        })?,
        label.clone(),
    ));
    out.push(CheckResult::new(
        S,
        names[2],
        run_grid(&grid, |s| {
            let q = q_integral(s);
            Ok(gamma_fixed_check(s)?
                && divisible_by_v_t_power(&q, &s.tableau(), 2 * s.m + 1)?
                && is_quasiinvariant(&q, s.m))
        })?,
        label.clone(),
    ));
    if c.m == 0 {
        out.push(CheckResult::skip(S, names[3], "needs m ≥ 1"));
    } else {
        out.push(CheckResult::new(
            S,
            names[3],
            run_grid(&grid, |s| Ok(recursion_residual(s)?.is_zero()))?,
            label.clone(),
        ));
    }
    out.push(CheckResult::new(
        S,
        names[4],
        run_grid(&grid, |s| Ok(lowest_quotient(s)? == lowest_quotient_rhs(s)))?,
        label,
    ));
    Ok(out)
}

fn lm_suite(c: &VerifyConfig) -> Result<Vec<CheckResult>> {
    const S: &str = "lm";
    let mut out = Vec::new();
    if c.n < 2 {
        out.push(CheckResult::skip(S, "L_m eigen-identity on the hook basis", "hook shape needs n ≥ 2"));
    } else {
        let grid = hook_grid(c)?;
        let fail = run_grid(&grid, |s| match lm_eigen_check(s) {
            Ok(r) => Ok(r.is_zero()),
            Err(Error::NonPolynomial { .. }) => Ok(false),
            Err(e) => Err(e),
        })?;
        out.push(CheckResult::new(S, "L_m eigen-identity on the hook basis", fail, grid_label(c)));
    }
    const DOMAIN: &str = "L_m maps quasiinvariants to polynomials";
    if c.n > MAX_ORACLE_N {
        out.push(CheckResult::skip(S, DOMAIN, "oracle needs n ≤ 4"));
    } else {
        let op = LmOperator::new(c.n, c.m);
        let top = c.max_degree.min(7);
        let mut count = 0;
        let mut fail = None;
        for d in 0..=top {
            for b in graded_dimension_oracle(c.n, c.m, d)?.basis {
                count += 1;
                if fail.is_none() {
                    match apply_lm(&op, &b) {
                        Ok(_) => {}
                        Err(Error::NonPolynomial { i, j }) => {
                            fail = Some(format!("division by x{i}−x{j} fails on {b}"))
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        out.push(CheckResult::new(S, DOMAIN, fail, format!("{count} witnesses, degrees 0..={top}")));
    }
    Ok(out)
}

fn chain_suite(c: &VerifyConfig) -> Result<Vec<CheckResult>> {
    const S: &str = "chain";
    const CHAIN: &str = "Delta^2 QI_m inside QI_(m+1) inside QI_m";
    let mut out = Vec::new();
    if c.n > MAX_ORACLE_N {
        out.push(CheckResult::skip(S, CHAIN, "oracle needs n ≤ 4"));
    } else {
        let top = c.max_degree.min(6);
        let r = delta_sq_chain_check(c.n, c.m, top, 2, c.seed)?;
        out.push(CheckResult::new(
            S,
            CHAIN,
            r.counterexample,
            format!("{} embedded, {} contained, degrees 0..={top}", r.embedded, r.contained),
        ));
    }
    let cob = change_of_basis_n2(c.m)?;
    let fail = (cob.det != vandermonde(2)?.pow(2) || !validate_free_basis_n2(c.m)?)
        .then(|| format!("det = {}", cob.det));
    out.push(CheckResult::new(
        S,
        "n=2 change-of-basis determinant is Delta_2^2",
        fail,
        format!("m={}, scalar {}", c.m, cob.scalar),
    ));
    let fail = match det_degree(c.n.min(crate::structure::MAX_HILBERT_N)) {
        Ok(_) => None,
        Err(Error::TheoremViolation(msg)) => Some(msg),
        Err(e) => return Err(e),
    };
    out.push(CheckResult::new(
        S,
        "determinant degree from exponent multisets equals C(n,2)·n!",
        fail,
        format!("n={}", c.n.min(crate::structure::MAX_HILBERT_N)),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_grid_passes() {
        let r = run_verify(&VerifyConfig::new(Suite::All, 2, 0, 1)).unwrap();
        assert!(r.passed, "{}", r.to_text());
    }

    #[test]
    fn lm_suite_label() {
        let r = run_verify(&VerifyConfig::new(Suite::Lm, 3, 1, 0)).unwrap();
        assert!(r.to_text().contains("L_m eigen-identity on the hook basis: PASS (grid 2×2)"));
    }

    #[test]
    fn groupalgebra_n4() {
        let r = run_verify(&VerifyConfig::new(Suite::Groupalgebra, 4, 1, 5)).unwrap();
        assert!(r.passed, "{}", r.to_text());
        assert_eq!(r.checks.len(), 6);
    }

    #[test]
    fn reports_are_deterministic() {
        let c = VerifyConfig::new(Suite::All, 3, 1, 42);
        assert_eq!(run_verify(&c).unwrap().to_text(), run_verify(&c).unwrap().to_text());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Groupalgebra, Suite::ThmMain, Suite::Hook, Suite::Lm, Suite::Chain, Suite::All] {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("nope").is_err());
    }
}
