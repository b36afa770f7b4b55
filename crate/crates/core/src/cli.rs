//! Command line surface. [`run`] does all the work and returns the exit code,
//! so tests can drive it without spawning a process.
//!
//! Exit codes: 0 when every requested assertion holds, 1 when one fails,
//! 2 for usage, parse and guardrail errors.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::calogero::{apply_lm, LmOperator};
use crate::error::{Error, Result};
use crate::exactalg::MultiPoly;
use crate::hookbasis::{hook_basis, HookSpec};
use crate::json::{poly_from_json, poly_to_json, poly_to_value};
use crate::quasi::{delta_sq_embed, graded_dimension_oracle};
use crate::structure::{change_of_basis_n2, full_hilbert, validate_free_basis_n2, with_oracle, HilbertReport};
use crate::symgroup::Perm;
use crate::tableaux::{Partition, Tableau};
use crate::verify::{run_verify, Suite, VerifyConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Gamma,
    Lm,
    Perm,
    DeltaSq,
}

#[derive(Debug, Parser)]
#[command(name = "quasiinv", version, about = "Exact computations with m-quasiinvariants of S_n")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hook basis Q^{0,m}..Q^{n-2,m} for the tableau with second-row entry j.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        j: usize,
        /// Also build by integration and check membership.
        #[arg(long)]
        verify: bool,
    },
    /// Run named property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Hilbert series from content and cocharge.
    Hilbert {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Truncation degree.
        #[arg(long = "D", default_value_t = 10)]
        d: usize,
        /// Compare against brute-force graded dimensions.
        #[arg(long)]
        oracle: bool,
    },
    /// Apply an operator to a polynomial given as JSON.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        /// JSON polynomial file, or `-` for stdin.
        #[arg(long)]
        input: String,
        /// Hook shape `n-1,1` (use with --j).
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        j: Option<usize>,
        /// Tableau rows, e.g. `1,3/2` (row 1 first).
        #[arg(long)]
        rows: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Permutation in cycle notation, e.g. `(1,2)(3,4)`.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Exact basis of the degree-d part of QI_m.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        degree: u32,
        /// Recorded in the output; the oracle itself is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// n = 2 change of basis from QI_{m+1} to QI_m.
    Detcheck {
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
}

/// Outcome of a command before it is written out.
struct Output {
    body: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, code: 0 }
    }

    fn verdict(body: String, passed: bool) -> Self {
        Output {
            body,
            code: if passed { 0 } else { 1 },
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremViolation(_) | Error::NonPolynomial { .. } | Error::Internal(_) => 1,
        _ => 2,
    }
}

fn error_json(e: &Error) -> serde_json::Value {
    match e {
        Error::NonPolynomial { i, j } => json!({"error": "NonPolynomial", "i": i, "j": j, "message": e.to_string()}),
        Error::TheoremViolation(_) => json!({"error": "TheoremViolation", "message": e.to_string()}),
        Error::Guardrail(_) => json!({"error": "Guardrail", "message": e.to_string()}),
        _ => json!({"error": "Error", "message": e.to_string()}),
    }
}

/// Compact JSON with sorted keys and a trailing newline.
fn compact(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (body, code) = match dispatch(&cli) {
        Ok(o) => (o.body, o.code),
        Err(e) => {
            let code = exit_code(&e);
            match (&e, cli.format) {
                (Error::NonPolynomial { .. }, Format::Json) => (compact(&error_json(&e)), code),
                (Error::NonPolynomial { .. }, Format::Text) => (format!("error: {e}\n"), code),
                _ => {
                    let _ = writeln!(stderr, "error: {e}");
                    return code;
                }
            }
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body.as_bytes()) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    code
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let fmt = cli.format;
    match &cli.command {
        Command::Basis { n, m, j, verify } => cmd_basis(*n, *m, *j, *verify, fmt),
        Command::Verify {
            suite,
            n,
            m,
            seed,
            samples,
            max_degree,
        } => {
            let mut c = VerifyConfig::new(Suite::parse(suite)?, *n, *m, *seed);
            c.samples = *samples;
            c.max_degree = *max_degree;
            let r = run_verify(&c)?;
            let body = match fmt {
                Format::Json => compact(&serde_json::to_value(&r).expect("serializable")),
                Format::Text => r.to_text(),
            };
            Ok(Output::verdict(body, r.passed))
        }
        Command::Hilbert { n, m, d, oracle } => {
            let mut r = full_hilbert(*n, *m, *d)?;
            if *oracle {
                r = with_oracle(r)?;
            }
            let passed = r.oracle_agrees().unwrap_or(true);
            let body = match fmt {
                Format::Json => compact(&serde_json::to_value(&r).expect("serializable")),
                Format::Text => hilbert_text(&r),
            };
            Ok(Output::verdict(body, passed))
        }
        Command::Apply {
            op,
            input,
            shape,
            j,
            rows,
            m,
            sigma,
        } => {
            let p = poly_from_json(&read_input(input)?)?;
            let image = match op {
                Op::Gamma => {
                    let t = tableau_arg(p.nvars(), shape.as_deref(), *j, rows.as_deref())?;
                    t.gamma()?.apply(&p)?
                }
                Op::Lm => apply_lm(&LmOperator::new(p.nvars(), *m), &p)?,
                Op::Perm => {
                    let s = sigma
                        .as_deref()
                        .ok_or_else(|| Error::Parse("--op perm needs --sigma".into()))?;
                    Perm::parse_cycles(p.nvars(), s)?.act(&p)?
                }
                Op::DeltaSq => delta_sq_embed(&p, *m)?,
            };
            Ok(Output::ok(poly_out(&image, fmt)))
        }
        Command::Oracle { n, m, degree, seed } => {
            let w = graded_dimension_oracle(*n, *m, *degree)?;
            let body = match fmt {
                Format::Json => compact(&w.to_json(*seed)),
                Format::Text => {
                    let mut s = format!(
                        "QI_{} n={} degree={} dimension={} seed={}\n",
                        m,
                        n,
                        degree,
                        w.dimension(),
                        seed
                    );
                    for b in &w.basis {
                        let _ = writeln!(s, "{b}");
                    }
                    s
                }
            };
            Ok(Output::ok(body))
        }
        Command::Detcheck { m } => {
            let c = change_of_basis_n2(*m)?;
            let validated = validate_free_basis_n2(*m)?;
            let expected = crate::exactalg::vandermonde(2)?.pow(2);
            let passed = validated && c.det == expected;
            let body = match fmt {
                Format::Json => compact(&json!({
                    "m": m,
                    "matrix": c.matrix.iter().map(|r| r.iter().map(poly_to_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "det": poly_to_value(&c.det),
                    "scalar": c.scalar.to_string(),
                    "basis_validated": validated,
                    "passed": passed,
                })),
                Format::Text => {
                    let mut s = format!("change of basis QI_{} -> QI_{m}, n=2\n", m + 1);
                    for (r, row) in c.matrix.iter().enumerate() {
                        let _ = writeln!(s, "row {}: [{}, {}]", r + 1, row[0], row[1]);
                    }
                    let _ = writeln!(s, "det: {}", c.det);
                    let _ = writeln!(s, "det / Delta_2^2: {}", c.scalar);
                    let _ = writeln!(s, "free basis validated: {validated}");
                    let _ = writeln!(s, "overall: {}", if passed { "PASS" } else { "FAIL" });
                    s
                }
            };
            Ok(Output::verdict(body, passed))
        }
    }
}

fn cmd_basis(n: usize, m: u32, j: usize, verify: bool, fmt: Format) -> Result<Output> {
    if n < 2 {
        return Err(Error::Contract(format!("basis needs n ≥ 2, got {n}")));
    }
    let t = HookSpec::new(n, m, j, 0)?.tableau();
    let (basis, verdict) = match hook_basis(n, m, j, verify) {
        Ok(b) => (b, verify.then_some(Ok(()))),
        Err(Error::TheoremViolation(msg)) => (hook_basis(n, m, j, false)?, Some(Err(msg))),
        Err(e) => return Err(e),
    };
    let passed = !matches!(verdict, Some(Err(_)));
    let body = match fmt {
        Format::Json => {
            let elems: Vec<_> = basis
                .iter()
                .enumerate()
                .map(|(k, q)| json!({"k": k, "degree": q.degree(), "poly": poly_to_value(q)}))
                .collect();
            let mut v = json!({
                "n": n,
                "m": m,
                "j": j,
                "tableau": serde_json::to_value(&t).expect("serializable"),
                "basis": elems,
            });
            if let Some(vd) = &verdict {
                v["verify"] = match vd {
                    Ok(()) => json!({"passed": true}),
                    Err(msg) => json!({"passed": false, "counterexample": msg}),
                };
            }
            compact(&v)
        }
        Format::Text => {
            let mut s = format!("hook basis n={n} m={m} j={j} tableau={:?}\n", t.rows());
            for (k, q) in basis.iter().enumerate() {
                let _ = writeln!(s, "Q^({k},{m}) degree {}: {q}", q.degree().unwrap_or(0));
            }
            match &verdict {
                Some(Ok(())) => s.push_str("verify: PASS\n"),
                Some(Err(msg)) => {
                    let _ = writeln!(s, "verify: FAIL\n    counterexample: {msg}");
                }
                None => {}
            }
            s
        }
    };
    Ok(Output::verdict(body, passed))
}

fn hilbert_text(r: &HilbertReport) -> String {
    let coeffs = |s: &crate::exactalg::PowerSeries| {
        s.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    };
    let mut s = format!("Hilbert series n={} m={} D={}\n", r.n, r.m, r.truncation);
    let _ = writeln!(s, "numerator: {}", coeffs(&r.numerator));
    let _ = writeln!(s, "series: {}", coeffs(&r.total));
    for sh in &r.shapes {
        let _ = writeln!(
            s,
            "shape {:?} f={} content={} exponents {:?}",
            sh.shape, sh.f_lambda, sh.content, sh.exponents
        );
    }
    if let Some(rows) = &r.oracle {
        for row in rows {
            let _ = writeln!(
                s,
                "degree {}: oracle {} series {} {}",
                row.degree,
                row.oracle,
                row.series,
                if row.agrees { "MATCH" } else { "MISMATCH" }
            );
        }
        let ok = r.oracle_agrees().unwrap_or(true);
        let _ = writeln!(s, "overall: {}", if ok { "PASS" } else { "FAIL" });
    }
    s
}

fn poly_out(p: &MultiPoly, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut s = poly_to_json(p);
            s.push('\n');
            s
        }
        Format::Text => format!("{p}\n"),
    }
}

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("expected a comma-separated list of integers, got {s:?}")))
        })
        .collect()
}

fn tableau_arg(n: usize, shape: Option<&str>, j: Option<usize>, rows: Option<&str>) -> Result<Tableau> {
    let t = match (rows, shape, j) {
        (Some(rows), _, _) => Tableau::new(rows.split('/').map(parse_list).collect::<Result<_>>()?)?,
        (None, Some(shape), Some(j)) => {
            let p = Partition::new(parse_list(shape)?)?;
            if p.parts().len() != 2 || p.parts()[1] != 1 {
                return Err(Error::Parse("--shape with --j must be a hook n-1,1; use --rows otherwise".into()));
            }
            Tableau::hook(p.size(), j)?
        }
        _ => return Err(Error::Parse("--op gamma needs --rows, or --shape with --j".into())),
    };
    if t.size() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: t.size(),
        });
    }
    Ok(t)
}
