use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use cesaro_core::matrices::{build, MatrixName};
use cesaro_core::numerics::parse_rational;
use cesaro_core::summability::{self, LimitVerdict, Method, DEFAULT_SWITCHOVER, DEFAULT_WINDOW};
use cesaro_core::Rational;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::config::{precision_bits, Format, RunConfig, DEFAULT_SEED};
use crate::output::{decimal, emit, finish_csv, finite, to_json, MatrixExport};
use crate::source::load_series;
use crate::studies::{self, parse_lambda_grid, parse_list, StudyParams};
use crate::suites::{self, SuiteParams};
use crate::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cesaro", version, about = "Cesàro operator toolkit: summation, verification suites, matrices and spectral studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Seed for every random family.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sum a series with a summability method and report the detected limit.
    Sum {
        /// grandi, alt-power:P, expr:E, file:PATH (CSV or JSON)
        #[arg(long)]
        series: String,
        /// classical, cesaro, holder or euler
        #[arg(long, default_value = "cesaro")]
        method: String,
        #[arg(long, default_value_t = 1)]
        order: u32,
        /// Euler parameter as p/q or a decimal.
        #[arg(long)]
        lambda: Option<String>,
        /// Number of terms.
        #[arg(short = 'N', long = "N", default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite and print a JSON array of reports.
    Verify {
        /// identities, hyponormal, roots, hardy, continuous or all
        #[arg(long)]
        suite: String,
        /// Main size of the suite (truncation, support, horizon or grid).
        #[arg(short = 'N', long = "N")]
        n: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Export an N×N truncation.
    Matrix {
        name: String,
        #[arg(short = 'N', long = "N", default_value_t = 8)]
        n: usize,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        order: Option<u32>,
        /// Comma-separated rationals: the Hausdorff diagonal or the coefficients g_0, g_1, …
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Spectral studies as (parameter, N, value) CSV.
    Spectrum {
        /// norm-growth, eigen-residual, sharpness or lp-bounds
        study: String,
        /// Comma-separated sizes (truncations or horizons).
        #[arg(short = 'N', long = "N")]
        sizes: Option<String>,
        /// disk:R or a list of points such as 0.5,0.8+0.1i
        #[arg(long)]
        lambda_grid: Option<String>,
        /// Exponents a of the sharpness family (n+1)^(-a).
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Fejér-mean errors of a circle function as CSV.
    Fourier {
        /// sawtooth, abs, step, cos-mix, tent, or a CSV of uniform samples
        function: String,
        #[arg(short = 'N', long = "N", default_value = "16,64,256")]
        sizes: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanRow {
    pub n: usize,
    pub mean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumReport {
    pub config: RunConfig,
    pub method: String,
    pub verdict: String,
    pub limit: Option<f64>,
    pub error_estimate: Option<f64>,
    pub terms_used: usize,
    pub window: usize,
    pub tol: f64,
    #[serde(default)]
    pub note: Option<String>,
    /// Means at n = 2^k − 1 and at the last index.
    pub table: Vec<MeanRow>,
}

/// Runs one invocation. Parse errors and invalid input return 1.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn rational_arg(name: &str, text: Option<&str>) -> Result<Rational, CliError> {
    let t = text.ok_or_else(|| CliError::Invalid(format!("--{name} is required")))?;
    parse_rational(t).ok_or_else(|| CliError::Invalid(format!("--{name}: cannot parse {t:?} as a rational")))
}

fn parse_method(name: &str, order: u32, lambda: Option<&str>) -> Result<Method, CliError> {
    Ok(match name {
        "classical" => Method::Classical,
        "cesaro" => Method::Cesaro(order),
        "holder" => Method::Holder(order),
        "euler" => Method::Euler(rational_arg("lambda", lambda)?),
        other => return Err(CliError::Invalid(format!("unknown method {other:?}; expected classical, cesaro, holder or euler"))),
    })
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let bits = precision_bits()?;
    match command {
        Command::Sum { series, method, order, lambda, n, tol, window, format, common } => {
            let m = parse_method(&method, order, lambda.as_deref())?;
            if n == 0 || !(tol > 0.0) {
                return Err(CliError::Invalid("need N ≥ 1 and tol > 0".into()));
            }
            let terms = load_series(&series, n)?;
            let mut config = RunConfig::new("sum", common.seed, bits);
            config.target = Some(series);
            config.method = Some(method);
            config.order = matches!(m, Method::Cesaro(_) | Method::Holder(_)).then_some(order);
            config.lambda = lambda;
            config.n = Some(n);
            config.tol = Some(tol);
            config.format = Some(format);
            config.output = common.output.clone();
            let report = sum_report(&terms, &m, tol, window, config)?;
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["n", "mean"])?;
                    for r in &report.table {
                        w.write_record([r.n.to_string(), decimal(r.mean)])?;
                    }
                    finish_csv(w)?
                }
                Format::Text => sum_text(&report),
            };
            emit(&text, common.output.as_deref(), out)?;
            Ok(if report.verdict == LimitVerdict::Converged.to_string() { EXIT_OK } else { EXIT_NOT_CONVERGED })
        }
        Command::Verify { suite, n, tol, common } => {
            let mut config = RunConfig::new("verify", common.seed, bits);
            config.target = Some(suite.clone());
            config.n = n;
            config.tol = tol;
            let params = SuiteParams { n, tol, seed: common.seed, precision_bits: bits };
            let reports = suites::run(&suite, &params, &config)?;
            emit(&to_json(&reports)?, common.output.as_deref(), out)?;
            Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_ERROR })
        }
        Command::Matrix { name, n, lambda, alpha, order, coeffs, format, common } => {
            if n == 0 {
                return Err(CliError::Invalid("N must be positive".into()));
            }
            let list = || -> Result<Vec<Rational>, CliError> {
                let t = coeffs.as_deref().ok_or_else(|| CliError::Invalid("--coeffs is required".into()))?;
                t.split(',').map(|s| parse_rational(s).ok_or_else(|| CliError::Invalid(format!("--coeffs: cannot parse {s:?}")))).collect()
            };
            let order = || order.ok_or_else(|| CliError::Invalid("--order is required".into()));
            let which = match name.as_str() {
                "cesaro" => MatrixName::Cesaro,
                "cesaro-inverse" => MatrixName::CesaroInverse,
                "cesaro-adjoint" => MatrixName::CesaroAdjoint,
                "binomial-w" => MatrixName::BinomialW,
                "diag-reciprocal" => MatrixName::DiagReciprocal,
                "diag-interrupter" => MatrixName::DiagInterrupter,
                "hilbert" => MatrixName::Hilbert,
                "bennett-b" => MatrixName::BennettB,
                "l-max" => MatrixName::LMax,
                "shift" => MatrixName::ShiftS,
                "contraction-a" => MatrixName::ContractionA,
                "euler" => MatrixName::Euler(rational_arg("lambda", lambda.as_deref())?),
                "deddens" => MatrixName::Deddens(rational_arg("alpha", alpha.as_deref())?),
                "holder" => MatrixName::HolderOrder(order()?),
                "cesaro-order" => MatrixName::CesaroOrder(order()?),
                "hausdorff" => MatrixName::HausdorffDiag(list()?),
                "generalized-cesaro" => MatrixName::GeneralizedCesaro(list()?),
                "generalized-hilbert" => MatrixName::GeneralizedHilbert(list()?),
                other => return Err(CliError::Invalid(format!("unknown matrix {other:?}"))),
            };
            let export = MatrixExport::new(&build(&which, n)?);
            let text = match format {
                Format::Json => to_json(&export)?,
                _ => export.to_csv()?,
            };
            emit(&text, common.output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Spectrum { study, sizes, lambda_grid, a, p, samples, common } => {
            if let Some(g) = &lambda_grid {
                parse_lambda_grid(g)?;
            }
            let params = StudyParams {
                sizes: sizes.as_deref().map(|s| parse_list(s, "N")).transpose()?,
                lambda_grid: lambda_grid.clone(),
                a: a.as_deref().map(|s| parse_list(s, "a")).transpose()?,
                p: p.as_deref().map(|s| parse_list(s, "p")).transpose()?,
                samples,
                seed: common.seed,
            };
            let rows = studies::run(&study, &params)?;
            let header = format!("cesaro spectrum {study} seed={} grid={} samples={samples}", common.seed, lambda_grid.as_deref().unwrap_or("-"));
            emit(&studies::rows_to_csv(&header, &rows)?, common.output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Fourier { function, sizes, common } => {
            let ns: Vec<usize> = parse_list(&sizes, "N")?;
            let f = studies::load_circle_function(&function, ns.iter().copied().max().unwrap_or(1))?;
            let rows = studies::fourier_rows(&f, &ns)?;
            let header = format!("cesaro fourier {function} grid={}", f.len());
            emit(&studies::rows_to_csv(&header, &rows)?, common.output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
    }
}

fn sum_report(terms: &summability::Series, method: &Method, tol: f64, window: usize, config: RunConfig) -> Result<SumReport, CliError> {
    let n = terms.len();
    let mut r = summability::summarize(terms, method, n, tol, DEFAULT_SWITCHOVER)?;
    if window != r.window {
        let d = summability::detect_limit(&r.means, window, tol)?;
        r.verdict = d.verdict;
        r.limit = d.limit;
        r.error_estimate = d.error_estimate;
        r.window = window;
    }
    let mut idx: Vec<usize> = (0..).map(|k| (1usize << k) - 1).take_while(|&i| i < r.means.len()).collect();
    if let Some(last) = r.means.len().checked_sub(1) {
        if idx.last() != Some(&last) {
            idx.push(last);
        }
    }
    Ok(SumReport {
        config,
        method: r.method.to_string(),
        verdict: r.verdict.to_string(),
        limit: r.limit,
        error_estimate: finite(r.error_estimate),
        terms_used: r.terms_used,
        window: r.window,
        tol: r.tol,
        note: r.note,
        table: idx.into_iter().map(|i| MeanRow { n: i, mean: r.means[i] }).collect(),
    })
}

fn sum_text(r: &SumReport) -> String {
    let mut s = format!("{} on {} ({} terms)\n{:>12}  {:>24}\n", r.method, r.config.target.as_deref().unwrap_or("?"), r.terms_used, "n", "mean");
    for row in &r.table {
        s += &format!("{:>12}  {:>24}\n", row.n, decimal(row.mean));
    }
    s += &format!("verdict: {}\n", r.verdict);
    if let Some(l) = r.limit {
        s += &format!("limit: {} (error estimate {})\n", decimal(l), r.error_estimate.map_or("-".into(), decimal));
    }
    if let Some(n) = &r.note {
        s += &format!("note: {n}\n");
    }
    s
}
