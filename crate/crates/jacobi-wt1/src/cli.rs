//! Command-line front end. Exit codes: 0 ok, 1 failed check, 2 usage,
//! 3 over budget, 4 data digest mismatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;
use serde_json::json;

use crate::dimension::{dim_report, umbral_sweep, Backend, DimError, DimQuery};
use crate::qseries::{explicit_form, eta_expansion, theta_expansion, theta_pm, theta_quark, ExplicitForm, FourierJacobiSeries};
use crate::rademacher::{diagnostics, truncated_sums, write_diagnostics, RademacherParams};
use crate::umbral::{self, UmbralDataSet, UmbralError};
use crate::vanishing::exponent_criterion;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DATA: i32 = 4;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Parser, Debug)]
#[command(name = "jwt1", about = "Weight-one Jacobi forms workbench")]
pub struct Cli {
    /// Data directory (overrides the environment variable)
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Expand a theta function, quark, eta or named form
    Qexp {
        /// theta, theta-plus, theta-minus, quark, eta, or a named form
        form: String,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        /// Truncation order, an integer or p/q
        #[arg(long, default_value = "3")]
        order: String,
    },
    /// Dimension of J_{1,m}(N)
    Dim {
        #[arg(long)]
        m: u64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "M")]
        big_m: Option<u64>,
        #[arg(long, default_value = "exact")]
        backend: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Include wall-clock time in the report
        #[arg(long)]
        timing: bool,
    },
    /// Exponent criterion for J_{1,m}(4M)
    Vanish {
        #[arg(long)]
        m: u64,
        #[arg(long = "M")]
        big_m: u64,
    },
    /// Settle vanishing for every class in the levels table
    Sweep {
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check the bundled umbral tables
    VerifyTables,
    /// Truncated Rademacher sums with the theta multiplier
    Rademacher {
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long = "K")]
        k: u64,
        #[arg(long, default_value_t = 0.0)]
        tau_re: f64,
        #[arg(long, default_value_t = 1.0)]
        tau_im: f64,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        /// Write per-K diagnostics as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Self {
        Failure { code, message: message.to_string() }
    }
}

impl From<DimError> for Failure {
    fn from(e: DimError) -> Self {
        let code = match e {
            DimError::Budget { .. } => EXIT_BUDGET,
            DimError::BadModulus { .. } => EXIT_USAGE,
            _ => EXIT_FAILED,
        };
        Failure::new(code, e)
    }
}

impl From<UmbralError> for Failure {
    fn from(e: UmbralError) -> Self {
        let code = match e {
            UmbralError::Digest { .. } | UmbralError::MissingDigest(_) => EXIT_DATA,
            _ => EXIT_FAILED,
        };
        Failure::new(code, e)
    }
}

type Outcome = Result<(serde_json::Value, bool), Failure>;

/// Parses arguments, runs one command, writes JSON to `out` and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok((value, passed)) => {
            let text = serde_json::to_string_pretty(&value).expect("json");
            let _ = writeln!(out, "{text}");
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn data_dir(cli: &Cli) -> PathBuf {
    cli.data_dir.clone().unwrap_or_else(umbral::data_dir)
}

fn load(cli: &Cli) -> Result<UmbralDataSet, Failure> {
    Ok(umbral::load_dataset(&data_dir(cli))?)
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_order(s: &str) -> Result<Rational64, Failure> {
    s.parse::<Rational64>().map_err(|_| Failure::new(EXIT_USAGE, format!("bad order {s:?}")))
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::new(EXIT_USAGE, format!("--{name} is required for this form")))
}

fn series_value(name: &str, s: &FourierJacobiSeries) -> serde_json::Value {
    let (v, lead) = s.leading();
    json!({
        "form": name,
        "index": s.index(),
        "valuation": v.to_string(),
        "leading": lead.iter().map(|(l, c)| json!([l.to_string(), c.to_string()])).collect::<Vec<_>>(),
        "series": to_value(&s.to_json()),
    })
}

fn execute(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Qexp { form, m, r, a, b, order } => {
            let order = parse_order(order)?;
            let usage = |e: crate::qseries::QSeriesError| Failure::new(EXIT_USAGE, e);
            let s = match form.as_str() {
                "theta" => theta_expansion(need(*m, "m")?, need(*r, "r")?, order).map_err(usage)?,
                "theta-plus" => theta_pm(need(*m, "m")?, need(*r, "r")?, 1, order).map_err(usage)?,
                "theta-minus" => theta_pm(need(*m, "m")?, need(*r, "r")?, -1, order).map_err(usage)?,
                "quark" => theta_quark(need(*a, "a")?, need(*b, "b")?, order).map_err(usage)?,
                "eta" => eta_expansion(order).map_err(usage)?,
                "unary" => explicit_form(&ExplicitForm::SUnary { m: need(*m, "m")?, r: need(*r, "r")? }, order).map_err(usage)?,
                other => {
                    let f: ExplicitForm = other.parse().map_err(usage)?;
                    explicit_form(&f, order).map_err(usage)?
                }
            };
            Ok((series_value(form, &s), true))
        }
        Cmd::Dim { m, n, big_m, backend, budget, timing } => {
            let backend: Backend = backend.parse().map_err(|e| Failure::new(EXIT_USAGE, e))?;
            let q = match big_m {
                Some(bm) => DimQuery::with_modulus(*m, *n, *bm, backend),
                None => DimQuery::new(*m, *n, backend),
            };
            let mut rep = dim_report(&q, Some(*budget))?;
            if !timing {
                rep.elapsed = None;
            }
            Ok((to_value(&rep), true))
        }
        Cmd::Vanish { m, big_m } => {
            let c = exponent_criterion(*m, *big_m).map_err(|e| Failure::new(EXIT_USAGE, e))?;
            let mut v = to_value(&c);
            v["m"] = json!(m);
            v["M"] = json!(big_m);
            v["level"] = json!(4 * big_m);
            Ok((v, true))
        }
        Cmd::Sweep { budget } => {
            let ds = load(cli)?;
            let rows = umbral_sweep(&ds, Some(*budget))?;
            let nonzero: Vec<_> = rows
                .iter()
                .filter(|r| r.dimension.is_some_and(|d| d > 0))
                .map(|r| format!("{} {}", r.root_system, r.class))
                .collect();
            let skipped = rows.iter().filter(|r| r.dimension.is_none()).count();
            Ok((json!({ "rows": to_value(&rows), "nonzero": nonzero, "skipped": skipped }), true))
        }
        Cmd::VerifyTables => verify_tables(&load(cli)?),
        Cmd::Rademacher { n, m, k, tau_re, tau_im, depth, csv } => {
            let p = RademacherParams::with_theta(*n, *m, *k, *depth).map_err(|e| Failure::new(EXIT_USAGE, e))?;
            let tau = Complex64::new(*tau_re, *tau_im);
            let sums = truncated_sums(&p, tau).map_err(|e| Failure::new(EXIT_USAGE, e))?;
            let rows = diagnostics(&sums);
            if let Some(path) = csv {
                let f = std::fs::File::create(path).map_err(|e| Failure::new(EXIT_FAILED, e))?;
                write_diagnostics(&rows, f).map_err(|e| Failure::new(EXIT_FAILED, e))?;
            }
            let last = sums.last().expect("K >= 1");
            Ok((
                json!({
                    "n": n, "m": m, "K": k, "depth": depth,
                    "tau": [tau_re, tau_im],
                    "sum": last.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
                }),
                true,
            ))
        }
    }
}

/// Runs every table check; the second value is false if any fails.
pub fn verify_tables(ds: &UmbralDataSet) -> Outcome {
    let sizes = ds.characters.class_sizes()?;
    let orth = ds.characters.rows_orthogonal()? && ds.characters.columns_orthogonal();
    let integral = umbral::all_rows_integral(ds).map(|_| true).unwrap_or(false);
    let dec = umbral::verify_decompositions(ds)?;
    let parity = umbral::coefficient_parity_audit(ds);
    let xi9 = umbral::verify_xi9_consistency(Rational64::from_integer(3))?;
    let block = umbral::block_structure_check(&umbral::gamma0_3_generators())?;
    let passed = orth && integral && dec.passed() && parity.passed() && xi9 && block;
    Ok((
        json!({
            "levels": ds.levels.len(),
            "class_sizes": sizes,
            "orthogonality": orth,
            "coefficient_rows": ds.coefficients.rows.len(),
            "multiplicities_integral": integral,
            "decompositions": to_value(&dec),
            "parity": to_value(&parity),
            "xi9_consistent": xi9,
            "block_structure": block,
            "passed": passed,
        }),
        passed,
    ))
}
