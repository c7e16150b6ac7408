use std::process::Command;

use cesaro::app::{run, SumReport};
use cesaro::output::MatrixExport;
use cesaro::suites::CheckReport;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cesaro").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn sum_json(args: &[&str]) -> (i32, SumReport) {
    let mut a = vec!["sum", "--format", "json"];
    a.extend_from_slice(args);
    let (code, out, err) = cli(&a);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn csv_rows(text: &str) -> Vec<(String, usize, f64)> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn sum_examples() {
    let (code, r) = sum_json(&["--series", "grandi", "--method", "cesaro", "--order", "1", "-N", "100000"]);
    assert_eq!(code, 0);
    assert!((r.limit.unwrap() - 0.5).abs() < 1e-4);
    assert_eq!(r.config.seed, 0x5EED);

    let (code, r) = sum_json(&["--series", "alt-power:1", "--method", "cesaro", "--order", "2"]);
    assert_eq!(code, 0);
    assert!((r.limit.unwrap() - 0.25).abs() < 1e-3);

    let (code, r) = sum_json(&["--series", "grandi", "--method", "classical"]);
    assert_eq!(code, 2);
    assert_eq!(r.verdict, "undecided");

    let (code, r) = sum_json(&["--series", "expr:(-1)^n/2^n", "--method", "euler", "--lambda", "1/2", "-N", "400"]);
    assert_eq!(code, 0);
    assert!((r.limit.unwrap() - 2.0 / 3.0).abs() < 1e-6);
}

#[test]
fn sum_rejects_bad_input() {
    let (code, _, err) = cli(&["sum", "--series", "no-such-source"]);
    assert_eq!(code, 1);
    assert!(err.contains("bad series source"));
    assert_eq!(cli(&["sum", "--series", "grandi", "--method", "borel"]).0, 1);
    assert_eq!(cli(&["sum", "--series", "grandi", "--method", "euler"]).0, 1);
    assert_eq!(cli(&["sum", "--bogus-flag"]).0, 1);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn series_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("terms.csv");
    let body: String = std::iter::once("n,term\n".to_string()).chain((0..2000).map(|k| format!("{k},{}\n", if k % 2 == 0 { "1" } else { "-1" }))).collect();
    std::fs::write(&csv, body).unwrap();
    let (code, r) = sum_json(&["--series", csv.to_str().unwrap(), "--tol", "1e-3"]);
    assert_eq!(code, 0);
    assert_eq!(r.terms_used, 2000);
    assert!((r.limit.unwrap() - 0.5).abs() < 1e-3);

    let json = dir.path().join("terms.json");
    std::fs::write(&json, r#"[1, "-1/2", 0.25, "-1/8", 0.0625]"#).unwrap();
    let (_, r) = sum_json(&["--series", &format!("file:{}", json.display()), "--method", "classical"]);
    assert_eq!(r.table.last().unwrap().mean, 1.0 - 0.5 + 0.25 - 0.125 + 0.0625);

    std::fs::write(&json, r#"{"not": "an array"}"#).unwrap();
    assert_eq!(cli(&["sum", "--series", json.to_str().unwrap()]).0, 1);
}

#[test]
fn matrix_exports() {
    let (code, out, _) = cli(&["matrix", "cesaro", "-N", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[3], "1/4,1/4,1/4,1/4,0");

    let (_, out, _) = cli(&["matrix", "hilbert", "-N", "3"]);
    assert_eq!(out, "1,1/2,1/3\n1/2,1/3,1/4\n1/3,1/4,1/5\n");

    // Oracle: E_λ[i][j] = C(i,j) λ^j (1−λ)^{i−j} with λ = 1/2 gives C(i,j)/2^i.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("euler.json");
    let (code, out, _) = cli(&["matrix", "euler", "--lambda", "1/2", "-N", "4", "--format", "json", "-o", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let m: MatrixExport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let binom = |i: u32, j: u32| (1..=j).fold(1u32, |acc, t| acc * (i + 1 - t) / t);
    for i in 0..4u32 {
        for j in 0..4u32 {
            let expected = if j > i {
                "0".to_string()
            } else {
                let (mut p, mut q) = (binom(i, j), 1u32 << i);
                while p % 2 == 0 && q > 1 {
                    p /= 2;
                    q /= 2;
                }
                if q == 1 { p.to_string() } else { format!("{p}/{q}") }
            };
            assert_eq!(m.entries[i as usize][j as usize], expected, "({i},{j})");
        }
    }

    assert_eq!(cli(&["matrix", "no-such-matrix"]).0, 1);
    assert_eq!(cli(&["matrix", "deddens", "-N", "3"]).0, 1);
}

#[test]
fn verify_suites() {
    let (code, out, _) = cli(&["verify", "--suite", "identities", "-N", "64"]);
    assert_eq!(code, 0);
    let reports: Vec<CheckReport> = serde_json::from_str(&out).unwrap();
    let exact: Vec<&CheckReport> = reports.iter().filter(|r| r.n == 64).collect();
    assert!(!exact.is_empty() && exact.iter().all(|r| r.verdict == "exact-pass"));
    assert!(reports.iter().all(|r| r.passed && r.config.seed == 0x5EED));

    assert_eq!(cli(&["verify", "--suite", "roots", "-N", "24"]).0, 0);
    assert_eq!(cli(&["verify", "--suite", "nope"]).0, 1);
}

#[test]
fn verify_all_passes_and_round_trips() {
    let (code, out, _) = cli(&["verify", "--suite", "all"]);
    assert_eq!(code, 0);
    let reports: Vec<CheckReport> = serde_json::from_str(&out).unwrap();
    for suite in cesaro::suites::SUITES {
        assert!(reports.iter().any(|r| r.suite == suite), "{suite}");
    }
    let again = serde_json::to_string_pretty(&reports).unwrap() + "\n";
    assert_eq!(again, out);
}

#[test]
fn spectrum_studies() {
    let (code, out, _) = cli(&["spectrum", "norm-growth", "--N", "16,64,256,1024"]);
    assert_eq!(code, 0);
    let norms: Vec<f64> = csv_rows(&out).into_iter().map(|r| r.2).collect();
    assert_eq!(norms.len(), 4);
    assert!(norms.windows(2).all(|w| w[0] <= w[1]) && norms[3] <= 2.0);

    let (_, out, _) = cli(&["spectrum", "eigen-residual", "--lambda-grid", "disk:0.1"]);
    let rows = csv_rows(&out);
    assert_eq!(rows.iter().filter(|r| r.1 == 100_000).count(), 25);
    assert!(rows.iter().filter(|r| r.1 == 100_000).all(|r| r.2 < 1e-2));

    let (_, out, _) = cli(&["spectrum", "lp-bounds", "--p", "4"]);
    let rows = csv_rows(&out);
    let get = |q: &str| rows.iter().find(|r| r.0 == format!("p=4;{q}")).unwrap().2;
    assert!(get("max_ratio_c") <= get("q"));
    assert!(get("max_ratio_difference") <= get("bound"));

    assert_eq!(cli(&["spectrum", "eigen-residual", "--lambda-grid", "disk:2"]).0, 1);
    assert_eq!(cli(&["spectrum", "unknown-study"]).0, 1);
    assert_eq!(cli(&["spectrum", "norm-growth", "--N", "16,abc"]).0, 1);
}

#[test]
fn identical_seeds_give_identical_bytes() {
    let a = cli(&["spectrum", "lp-bounds", "--p", "3", "--seed", "7"]).1;
    let b = cli(&["spectrum", "lp-bounds", "--p", "3", "--seed", "7"]).1;
    let c = cli(&["spectrum", "lp-bounds", "--p", "3", "--seed", "8"]).1;
    assert_eq!(a, b);
    assert_ne!(a, c);
    let a = cli(&["verify", "--suite", "identities", "-N", "12"]).1;
    let b = cli(&["verify", "--suite", "identities", "-N", "12"]).1;
    assert_eq!(a, b);
}

#[test]
fn fourier_report() {
    let (code, out, _) = cli(&["fourier", "abs"]);
    assert_eq!(code, 0);
    let sup: Vec<f64> = csv_rows(&out).into_iter().filter(|r| r.0 == "fejer_error_sup").map(|r| r.2).collect();
    assert!(sup.windows(2).all(|w| w[1] < w[0]) && sup[2] < 0.05);
    assert_eq!(cli(&["fourier", "/no/such/file.csv"]).0, 1);
}

#[test]
fn binary_exit_codes_and_precision_env() {
    let bin = env!("CARGO_BIN_EXE_cesaro");
    let status = |args: &[&str], bits: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(args).env_remove("CESARO_PRECISION_BITS");
        if let Some(b) = bits {
            c.env("CESARO_PRECISION_BITS", b);
        }
        c.output().unwrap().status.code().unwrap()
    };
    assert_eq!(status(&["sum", "--series", "grandi", "--method", "classical"], None), 2);
    assert_eq!(status(&["matrix", "cesaro", "-N", "3"], Some("512")), 0);
    assert_eq!(status(&["matrix", "cesaro", "-N", "3"], Some("lots")), 1);
    assert_eq!(status(&["verify", "--suite", "roots", "-N", "12"], Some("128")), 0);
}
