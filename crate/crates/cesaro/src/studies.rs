//! Plot-ready CSV studies: rows of (parameter, N, value).

use cesaro_core::fourier::{self, builtins, convergence_report, Norm, SampledCircleFunction};
use cesaro_core::spectral::{self, power_norm, CesaroSection};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::output::decimal;
use crate::CliError;

pub const STUDIES: [&str; 4] = ["norm-growth", "eigen-residual", "sharpness", "lp-bounds"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub parameter: String,
    pub n: usize,
    pub value: f64,
}

#[derive(Clone, Debug, Default)]
pub struct StudyParams {
    pub sizes: Option<Vec<usize>>,
    pub lambda_grid: Option<String>,
    pub a: Option<Vec<f64>>,
    pub p: Option<Vec<f64>>,
    pub samples: usize,
    pub seed: u64,
}

pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    let items: Result<Vec<T>, _> = text.split(',').map(|s| s.trim().parse::<T>()).collect();
    match items {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(CliError::Invalid(format!("{what}: expected a comma-separated list, got {text:?}"))),
    }
}

/// `disk:R` is the 25-point grid filling {|1−λ| ≤ R}; otherwise a list of
/// points `re` or `re+imi`.
pub fn parse_lambda_grid(text: &str) -> Result<Vec<Complex64>, CliError> {
    if let Some(r) = text.strip_prefix("disk:") {
        return match r.parse::<f64>() {
            Ok(r) if r > 0.0 && r < 1.0 => Ok(spectral::disk_grid(r)),
            _ => Err(CliError::Invalid(format!("disk radius must lie in (0, 1), got {r:?}"))),
        };
    }
    text.split(',').map(|s| s.trim().parse::<Complex64>().map_err(|_| CliError::Invalid(format!("bad point {s:?}")))).collect()
}

pub fn run(study: &str, p: &StudyParams) -> Result<Vec<Row>, CliError> {
    let rows = match study {
        "norm-growth" => {
            let sizes = p.sizes.clone().unwrap_or_else(|| vec![16, 64, 256, 1024]);
            sizes
                .par_iter()
                .map(|&n| {
                    let est = power_norm(&CesaroSection(n), "cesaro", 1e-13, 100_000)?;
                    Ok(Row { parameter: "cesaro".into(), n, value: est.norm })
                })
                .collect::<Result<Vec<_>, cesaro_core::Error>>()?
        }
        "eigen-residual" => {
            let sizes = p.sizes.clone().unwrap_or_else(|| vec![1_000, 10_000, 100_000]);
            let grid = parse_lambda_grid(p.lambda_grid.as_deref().unwrap_or("disk:0.1"))?;
            let jobs: Vec<(Complex64, usize)> = grid.iter().flat_map(|&l| sizes.iter().map(move |&k| (l, k))).collect();
            jobs.par_iter()
                .map(|&(l, k)| Ok(Row { parameter: format!("lambda={l}"), n: k, value: spectral::adjoint_eigen_residual(l, k)? }))
                .collect::<Result<Vec<_>, cesaro_core::Error>>()?
        }
        "sharpness" => {
            let sizes = p.sizes.clone().unwrap_or_else(|| vec![1_000, 100_000, 1_000_000]);
            let a_grid = p.a.clone().unwrap_or_else(|| vec![0.55, 0.6, 0.75]);
            let jobs: Vec<(f64, usize)> = a_grid.iter().flat_map(|&a| sizes.iter().map(move |&n| (a, n))).collect();
            jobs.par_iter()
                .map(|&(a, n)| Ok(Row { parameter: format!("a={a}"), n, value: spectral::sharpness_ratio(a, n)? }))
                .collect::<Result<Vec<_>, cesaro_core::Error>>()?
        }
        "lp-bounds" => {
            let ps = p.p.clone().unwrap_or_else(|| vec![1.5, 3.0, 4.0]);
            let mut rows = Vec::new();
            for (i, &pp) in ps.iter().enumerate() {
                let mut rng = ChaCha8Rng::seed_from_u64(p.seed.wrapping_add(i as u64));
                let r = spectral::lp_bound_suite(pp, p.samples, &mut rng)?;
                let tag = |q: &str| format!("p={pp};{q}");
                rows.push(Row { parameter: tag("q"), n: r.samples, value: r.q });
                rows.push(Row { parameter: tag("max_ratio_c"), n: r.samples, value: r.max_ratio_c });
                rows.push(Row { parameter: tag("bound"), n: r.samples, value: r.bound });
                rows.push(Row { parameter: tag("max_ratio_difference"), n: r.samples, value: r.max_ratio_difference });
                rows.push(Row { parameter: tag("sharpness_ratio"), n: r.samples, value: r.sharpness_ratio });
                rows.push(Row { parameter: tag("pass"), n: r.samples, value: if r.pass { 1.0 } else { 0.0 } });
            }
            rows
        }
        other => return Err(CliError::Invalid(format!("unknown study {other:?}; expected one of {}", STUDIES.join(", ")))),
    };
    Ok(rows)
}

pub fn rows_to_csv(header: &str, rows: &[Row]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["parameter", "N", "value"])?;
    for r in rows {
        w.write_record([r.parameter.as_str(), &r.n.to_string(), &decimal(r.value)])?;
    }
    Ok(format!("# {header}\n{}", crate::output::finish_csv(w)?))
}

/// Named built-in or a CSV of samples (last column) on the uniform grid.
pub fn load_circle_function(source: &str, n_max: usize) -> Result<SampledCircleFunction, CliError> {
    let m = fourier::default_grid(n_max);
    let f: fn(f64) -> f64 = match source {
        "sawtooth" => builtins::sawtooth,
        "abs" => builtins::abs_theta,
        "step" => builtins::step,
        "cos-mix" => builtins::cos_mix,
        "tent" => builtins::tent,
        path => {
            let mut r = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_path(path).map_err(|e| CliError::Source(format!("{path}: {e}")))?;
            let mut samples = Vec::new();
            for (line, rec) in r.records().enumerate() {
                let rec = rec?;
                match rec.iter().last().map(|s| s.trim().parse::<f64>()) {
                    Some(Ok(v)) => samples.push(Complex64::new(v, 0.0)),
                    _ if line == 0 => {}
                    _ => return Err(CliError::Source(format!("{path}: line {} is not a number", line + 1))),
                }
            }
            if samples.len() < 4 * n_max {
                return Err(CliError::Source(format!("{path}: {} samples cannot resolve frequency {n_max}", samples.len())));
            }
            return Ok(SampledCircleFunction { samples });
        }
    };
    Ok(SampledCircleFunction::from_real(m, f))
}

pub fn fourier_rows(f: &SampledCircleFunction, sizes: &[usize]) -> Result<Vec<Row>, CliError> {
    let report = convergence_report(f, sizes, &[Norm::Sup, Norm::L1, Norm::L2])?;
    let mut rows = Vec::new();
    for r in report {
        for (name, v) in [("sup", r.sup), ("l1", r.l1), ("l2", r.l2)] {
            if let Some(v) = v {
                rows.push(Row { parameter: format!("fejer_error_{name}"), n: r.n, value: v });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_and_lists() {
        assert_eq!(parse_lambda_grid("disk:0.5").unwrap().len(), 25);
        assert!(parse_lambda_grid("disk:1.5").is_err());
        assert_eq!(parse_lambda_grid("0.5,0.8+0.1i").unwrap()[1], Complex64::new(0.8, 0.1));
        assert_eq!(parse_list::<usize>("16, 64", "N").unwrap(), vec![16, 64]);
        assert!(parse_list::<usize>("16,x", "N").is_err());
    }

    #[test]
    fn norm_growth_is_monotone() {
        let rows = run("norm-growth", &StudyParams { sizes: Some(vec![16, 64, 256]), ..Default::default() }).unwrap();
        assert!(rows.windows(2).all(|w| w[0].value <= w[1].value));
        assert!(rows.iter().all(|r| r.value <= 2.0));
    }

    #[test]
    fn fourier_abs_errors_shrink() {
        let f = load_circle_function("abs", 256).unwrap();
        let rows = fourier_rows(&f, &[16, 64, 256]).unwrap();
        let sup: Vec<f64> = rows.iter().filter(|r| r.parameter == "fejer_error_sup").map(|r| r.value).collect();
        assert!(sup.windows(2).all(|w| w[1] < w[0]));
    }
}
