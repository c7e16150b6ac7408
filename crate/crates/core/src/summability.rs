//! Divergent-series summation: (C,r), (H,r), Euler and general Hausdorff means,
//! plus a limit detector.
//!
//! Means are exact rationals below a configurable switchover index and doubles
//! beyond it; the double recursion resumes from the exact state.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numerics::{bernoulli, binomial, int, powi_exact, to_f64, Rational};
use crate::sequences::partial_sums;
use crate::{Error, Result};
#[allow(unused_imports)] // f64 math comes from libm when std is absent
use num_traits::Float;

pub const DEFAULT_SWITCHOVER: usize = 10_000;
/// Iterated averages carry lcm(1..N) denominators, so exactness stops earlier.
pub const DEFAULT_HOLDER_SWITCHOVER: usize = 2_000;
pub const DEFAULT_WINDOW: usize = 8;
pub const DIVERGENCE_THRESHOLD: f64 = 1e8;
pub const MONOTONE_WINDOWS: usize = 100;

/// Terms of a series, exact or floating.
#[derive(Clone, Debug, PartialEq)]
pub enum Series {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl Series {
    pub fn len(&self) -> usize {
        match self {
            Series::Exact(v) => v.len(),
            Series::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Series::Exact(v) => v.iter().map(to_f64).collect(),
            Series::Float(v) => v.clone(),
        }
    }

    /// 1 − 1 + 1 − ⋯
    pub fn grandi(n: usize) -> Series {
        Series::Exact((0..n).map(|k| int(if k % 2 == 0 { 1 } else { -1 })).collect())
    }

    /// 1^p − 2^p + 3^p − ⋯
    pub fn alternating_power(p: u32, n: usize) -> Series {
        Series::Exact(
            (0..n)
                .map(|k| {
                    let v = Rational::from_integer(num_traits::pow(BigInt::from(k + 1), p as usize));
                    if k % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Method {
    Classical,
    Cesaro(u32),
    Holder(u32),
    Euler(Rational),
    Hausdorff(Vec<Rational>),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Classical => f.write_str("classical"),
            Method::Cesaro(r) => write!(f, "cesaro({r})"),
            Method::Holder(r) => write!(f, "holder({r})"),
            Method::Euler(l) => write!(f, "euler({l})"),
            Method::Hausdorff(_) => f.write_str("hausdorff"),
        }
    }
}

fn check_order(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("summation order must be at least 1".into()));
    }
    Ok(())
}

fn factorial(r: u32) -> f64 {
    (1..=r).map(f64::from).product()
}

/// r!·S_N^r/(N+1)^r for N < n, exact below `switchover`.
pub fn cesaro_means(terms: &Series, r: u32, n: usize, switchover: usize) -> Result<Vec<f64>> {
    check_order(r)?;
    let n = n.min(terms.len());
    let mut out = Vec::with_capacity(n);
    let mut float_state: Vec<f64>;
    match terms {
        Series::Exact(a) => {
            let exact_len = n.min(switchover);
            let mut state = alloc::vec![Rational::zero(); r as usize + 1];
            let r_fact = Rational::from_integer((1..=r as u64).product::<u64>().into());
            for (idx, x) in a[..exact_len].iter().enumerate() {
                advance(&mut state, x);
                let denom = powi_exact(&int(idx as i64 + 1), r as u64);
                out.push(to_f64(&(&r_fact * &state[r as usize] / denom)));
            }
            float_state = state.iter().map(to_f64).collect();
            for (idx, x) in a[exact_len..n].iter().enumerate() {
                advance_f64(&mut float_state, to_f64(x));
                out.push(scaled_mean(&float_state, r, exact_len + idx));
            }
        }
        Series::Float(a) => {
            float_state = alloc::vec![0.0; r as usize + 1];
            for (idx, &x) in a[..n].iter().enumerate() {
                advance_f64(&mut float_state, x);
                out.push(scaled_mean(&float_state, r, idx));
            }
        }
    }
    Ok(out)
}

/// The exact (C,r) means, for identity checks.
pub fn cesaro_means_exact(terms: &[Rational], r: u32) -> Result<Vec<Rational>> {
    check_order(r)?;
    let mut state = alloc::vec![Rational::zero(); r as usize + 1];
    let r_fact = Rational::from_integer((1..=r as u64).product::<u64>().into());
    Ok(terms
        .iter()
        .enumerate()
        .map(|(idx, x)| {
            advance(&mut state, x);
            &r_fact * &state[r as usize] / powi_exact(&int(idx as i64 + 1), r as u64)
        })
        .collect())
}

/// S^0 += a, then S^k += S^{k−1} for k = 1..=r.
fn advance(state: &mut [Rational], a: &Rational) {
    state[0] += a;
    for k in 1..state.len() {
        let prev = state[k - 1].clone();
        state[k] += prev;
    }
}

fn advance_f64(state: &mut [f64], a: f64) {
    state[0] += a;
    for k in 1..state.len() {
        state[k] += state[k - 1];
    }
}

fn scaled_mean(state: &[f64], r: u32, idx: usize) -> f64 {
    // r!·S/(N+1)^r, dividing step by step to stay in range.
    let mut v = state[r as usize];
    for _ in 0..r {
        v /= idx as f64 + 1.0;
    }
    v * factorial(r)
}

/// Iterated averages of the partial sums, r levels deep.
pub fn holder_means(terms: &Series, r: u32, n: usize, switchover: usize) -> Result<Vec<f64>> {
    check_order(r)?;
    let n = n.min(terms.len());
    let levels = r as usize + 1;
    let mut out = Vec::with_capacity(n);
    let mut sums_f64 = alloc::vec![0.0f64; levels];
    let mut start = 0;
    if let Series::Exact(a) = terms {
        // sums[k] = Σ_{j≤N} H^k_j, the running numerator of level k+1.
        let exact_len = n.min(switchover);
        let mut sums = alloc::vec![Rational::zero(); levels];
        for (idx, x) in a[..exact_len].iter().enumerate() {
            let scale = int(idx as i64 + 1);
            sums[0] += x;
            let mut level = sums[0].clone();
            for s in sums.iter_mut().skip(1) {
                *s += &level;
                level = &*s / &scale;
            }
            out.push(to_f64(&level));
        }
        sums_f64 = sums.iter().map(to_f64).collect();
        start = exact_len;
    }
    let a = terms.to_f64();
    for (idx, &x) in a.iter().enumerate().take(n).skip(start) {
        let scale = idx as f64 + 1.0;
        sums_f64[0] += x;
        let mut level = sums_f64[0];
        for s in sums_f64.iter_mut().skip(1) {
            *s += level;
            level = *s / scale;
        }
        out.push(level);
    }
    Ok(out)
}

/// W·diag·W applied to the partial sums, as three exact matrix-vector products.
pub fn hausdorff_means(terms: &[Rational], diag: &[Rational], n: usize) -> Result<Vec<Rational>> {
    let n = n.min(terms.len());
    if diag.len() < n {
        return Err(Error::InvalidParameter(alloc::format!("diagonal has {} entries, need {n}", diag.len())));
    }
    let s = partial_sums(&terms[..n]);
    let ws = apply_w(&s);
    let scaled: Vec<Rational> = ws.iter().zip(diag).map(|(x, z)| x * z).collect();
    Ok(apply_w(&scaled))
}

/// (W v)_i = Σ_j (−1)^j C(i,j) v_j.
fn apply_w(v: &[Rational]) -> Vec<Rational> {
    let mut row: Vec<BigInt> = alloc::vec![BigInt::one()];
    let mut out = Vec::with_capacity(v.len());
    for i in 0..v.len() {
        if i > 0 {
            let mut next = alloc::vec![BigInt::one(); i + 1];
            for j in 1..i {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
        }
        let mut acc = Rational::zero();
        for (j, c) in row.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            let term = &v[j] * Rational::from_integer(c.clone());
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        out.push(acc);
    }
    out
}

/// Euler means Σ_k C(N,k) λ^k (1−λ)^{N−k} S_k for 0 < λ ≤ 1, using binomial
/// weights built outward from the mode and normalized to unit mass.
pub fn euler_means(terms: &[f64], lambda: f64, n: usize) -> Result<Vec<f64>> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("Euler parameter {lambda} must lie in (0, 1]")));
    }
    let n = n.min(terms.len());
    let s: Vec<f64> = partial_sums(&terms[..n]);
    if lambda == 1.0 {
        return Ok(s);
    }
    let ratio = lambda / (1.0 - lambda);
    let mut out = Vec::with_capacity(n);
    let mut weights = Vec::new();
    for m in 0..n {
        let mode = (((m + 1) as f64) * lambda).floor().min(m as f64) as usize;
        weights.clear();
        weights.resize(m + 1, 0.0);
        weights[mode] = 1.0;
        let mut lo = mode;
        while lo > 0 {
            // w_{k−1} = w_k·k/((m−k+1)·ratio)
            let w = weights[lo] * lo as f64 / ((m - lo + 1) as f64 * ratio);
            if w < 1e-300 {
                break;
            }
            weights[lo - 1] = w;
            lo -= 1;
        }
        let mut hi = mode;
        while hi < m {
            let w = weights[hi] * (m - hi) as f64 / ((hi + 1) as f64) * ratio;
            if w < 1e-300 {
                break;
            }
            weights[hi + 1] = w;
            hi += 1;
        }
        let mass: f64 = weights[lo..=hi].iter().sum();
        let value: f64 = (lo..=hi).map(|k| weights[k] * s[k]).sum();
        out.push(value / mass);
    }
    Ok(out)
}

/// ((2^{p+1} − 1)/(p+1))·B_{p+1}: the (C, p+1) sum of 1^p − 2^p + 3^p − ⋯
pub fn alternating_power_reference(p: u32) -> Rational {
    let two_pow = Rational::from_integer(num_traits::pow(BigInt::from(2), p as usize + 1));
    (two_pow - Rational::one()) / int(p as i64 + 1) * bernoulli(p as usize + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitVerdict {
    Converged,
    Diverged,
    Undecided,
}

impl fmt::Display for LimitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitVerdict::Converged => "converged",
            LimitVerdict::Diverged => "diverged",
            LimitVerdict::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Detection {
    pub verdict: LimitVerdict,
    pub limit: Option<f64>,
    pub error_estimate: f64,
    pub window: usize,
    pub tol: f64,
    /// Spread of the last `window` means.
    pub spread: f64,
    /// Spread of the extrapolated values over the same window.
    pub extrapolation_spread: f64,
}

/// Order-1 Richardson at index i (n = i+1 even): removes a c/n term.
fn richardson(means: &[f64], i: usize) -> f64 {
    2.0 * means[i] - means[(i + 1) / 2 - 1]
}

/// Fits m_n = L + (a·ln n + b)/n through n = i+1, n/2, n/4 (n divisible by 4).
/// Iterated averages carry the ln n term.
fn log_fit(means: &[f64], i: usize) -> f64 {
    let n = (i + 1) as f64;
    let u = |k: usize| {
        let nk = (i + 1) >> k;
        nk as f64 * means[nk - 1]
    };
    let (u1, u2, u3) = (u(0), u(1), u(2));
    let ln2 = core::f64::consts::LN_2;
    let a = -(u1 - 3.0 * u2 + 2.0 * u3) / ln2;
    let b = a * (2.0 * ln2 - n.ln()) - (u1 - 2.0 * u2);
    (u1 - a * n.ln() - b) / n
}

fn spread(values: &[f64]) -> f64 {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &m| (a.min(m), b.max(m)));
    hi - lo
}

/// Classifies a mean sequence. Converged needs the last `window` means within
/// `tol` of each other and the steadiest extrapolate over the same stretch
/// within `tol`; the limit is that extrapolate's last value. Diverged means a mean
/// past 10⁸ in magnitude, or |mean| strictly growing over 100 windows and at
/// least doubling across them.
pub fn detect_limit(means: &[f64], window: usize, tol: f64) -> Result<Detection> {
    if window < 4 {
        return Err(Error::InvalidParameter("window must be at least 4".into()));
    }
    let mut det = Detection {
        verdict: LimitVerdict::Undecided,
        limit: None,
        error_estimate: f64::INFINITY,
        window,
        tol,
        spread: f64::INFINITY,
        extrapolation_spread: f64::INFINITY,
    };
    let len = means.len();
    if len == 0 {
        return Ok(det);
    }
    let tail = &means[len.saturating_sub(window)..];
    if tail.iter().any(|m| !m.is_finite() || m.abs() > DIVERGENCE_THRESHOLD) {
        det.verdict = LimitVerdict::Diverged;
        return Ok(det);
    }
    let span = MONOTONE_WINDOWS * window;
    if len >= span
        && means[len - span..].windows(2).all(|w| w[1].abs() > w[0].abs())
        && means[len - 1].abs() >= 2.0 * means[len - span].abs()
    {
        det.verdict = LimitVerdict::Diverged;
        return Ok(det);
    }
    if len < 4 * window {
        return Ok(det);
    }
    det.spread = spread(tail);
    // Candidate limits: the raw means, Richardson, the log fit. The one that
    // moves least across the window wins; ties go to the simpler model.
    let start = len - window;
    let candidates: [Vec<f64>; 3] = [
        tail.to_vec(),
        (start..len).filter(|i| (i + 1) % 2 == 0).map(|i| richardson(means, i)).collect(),
        (start..len).filter(|i| (i + 1) % 4 == 0).map(|i| log_fit(means, i)).collect(),
    ];
    let (best, best_spread) = candidates
        .iter()
        .map(|c| (c, spread(c)))
        .fold(None::<(&Vec<f64>, f64)>, |acc, (c, sp)| match acc {
            Some((_, s)) if s <= sp => acc,
            _ => Some((c, sp)),
        })
        .expect("three candidates");
    det.extrapolation_spread = best_spread;
    let limit = *best.last().expect("window is nonempty");
    let last = means[len - 1];
    det.error_estimate = det.spread.max(best_spread).max((last - limit).abs());
    if det.spread <= tol && det.extrapolation_spread <= tol {
        det.verdict = LimitVerdict::Converged;
        det.limit = Some(limit);
    }
    Ok(det)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummationReport {
    pub method: Method,
    pub means: Vec<f64>,
    pub limit: Option<f64>,
    pub verdict: LimitVerdict,
    pub error_estimate: f64,
    pub terms_used: usize,
    pub window: usize,
    pub tol: f64,
    pub note: Option<String>,
}

/// Runs a method over the first `n` terms and classifies the means.
pub fn summarize(terms: &Series, method: &Method, n: usize, tol: f64, switchover: usize) -> Result<SummationReport> {
    let n = n.min(terms.len());
    let means = match method {
        Method::Classical => terms.to_f64()[..n].iter().scan(0.0, |s, x| {
            *s += x;
            Some(*s)
        }).collect(),
        Method::Cesaro(r) => cesaro_means(terms, *r, n, switchover)?,
        Method::Holder(r) => holder_means(terms, *r, n, switchover.min(DEFAULT_HOLDER_SWITCHOVER))?,
        Method::Euler(l) => euler_means(&terms.to_f64(), to_f64(l), n)?,
        Method::Hausdorff(diag) => match terms {
            Series::Exact(a) => hausdorff_means(a, diag, n)?.iter().map(to_f64).collect(),
            Series::Float(_) => {
                return Err(Error::InvalidParameter("general Hausdorff means need exact terms".into()));
            }
        },
    };
    let det = detect_limit(&means, DEFAULT_WINDOW, tol)?;
    Ok(SummationReport {
        method: method.clone(),
        limit: det.limit,
        verdict: det.verdict,
        error_estimate: det.error_estimate,
        terms_used: n,
        window: det.window,
        tol,
        means,
        note: None,
    })
}

/// Diagonal (1, 1/2, 1/3, …) whose Hausdorff matrix is the Cesàro matrix.
pub fn cesaro_diagonal(n: usize) -> Vec<Rational> {
    (0..n).map(|k| Rational::new(BigInt::one(), BigInt::from(k + 1))).collect()
}

pub fn euler_diagonal(lambda: &Rational, n: usize) -> Vec<Rational> {
    (0..n).map(|k| powi_exact(lambda, k as u64)).collect()
}

/// Exact Euler means from the closed-form rows C(N,k) λ^k (1−λ)^{N−k}.
pub fn euler_means_exact(terms: &[Rational], lambda: &Rational) -> Vec<Rational> {
    let s = partial_sums(terms);
    let mu = Rational::one() - lambda;
    (0..s.len())
        .map(|m| {
            (0..=m)
                .map(|k| {
                    Rational::from_integer(binomial(m as u64, k as i64))
                        * powi_exact(lambda, k as u64)
                        * powi_exact(&mu, (m - k) as u64)
                        * &s[k]
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cesaro_examples() {
        let m = cesaro_means(&Series::grandi(100_000), 1, 100_000, DEFAULT_SWITCHOVER).unwrap();
        assert!((m.last().unwrap() - 0.5).abs() < 1e-4);
        let m = cesaro_means(&Series::alternating_power(1, 100_000), 2, 100_000, DEFAULT_SWITCHOVER).unwrap();
        assert!((m.last().unwrap() - 0.25).abs() < 1e-4);
        let zeros = Series::Exact(alloc::vec![Rational::zero(); 50]);
        for r in 1..4 {
            assert!(cesaro_means(&zeros, r, 50, 10).unwrap().iter().all(|&x| x == 0.0));
        }
        assert!(cesaro_means(&zeros, 0, 50, 10).is_err());
    }

    #[test]
    fn exact_and_float_paths_agree() {
        let g = Series::alternating_power(2, 1000);
        let exact = cesaro_means(&g, 3, 1000, 1000).unwrap();
        let mixed = cesaro_means(&g, 3, 1000, 100).unwrap();
        let float = cesaro_means(&Series::Float(g.to_f64()), 3, 1000, 0).unwrap();
        for i in 0..1000 {
            assert!((exact[i] - mixed[i]).abs() < 1e-9 && (exact[i] - float[i]).abs() < 1e-9, "i = {i}");
        }
        let h_exact = holder_means(&g, 3, 1000, 1000).unwrap();
        let h_mixed = holder_means(&g, 3, 1000, 50).unwrap();
        for i in 0..1000 {
            assert!((h_exact[i] - h_mixed[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn holder_examples() {
        let g = Series::grandi(500);
        assert_eq!(holder_means(&g, 1, 500, 500).unwrap(), cesaro_means(&g, 1, 500, 500).unwrap());
        let m = holder_means(&Series::alternating_power(1, 100_000), 2, 100_000, DEFAULT_HOLDER_SWITCHOVER).unwrap();
        assert!((m.last().unwrap() - 0.25).abs() < 1e-3);
        let mut e0 = alloc::vec![Rational::zero(); 2000];
        e0[0] = Rational::one();
        for r in 1..=4 {
            let m = holder_means(&Series::Exact(e0.clone()), r, 2000, 2000).unwrap();
            assert!(m.iter().all(|&x| x == 1.0));
        }
    }

    #[test]
    fn hausdorff_examples() {
        let g = match Series::grandi(200) {
            Series::Exact(v) => v,
            _ => unreachable!(),
        };
        let via_c = hausdorff_means(&g, &cesaro_diagonal(200), 200).unwrap();
        assert_eq!(via_c, cesaro_means_exact(&g, 1).unwrap());
        let ones = alloc::vec![Rational::one(); 200];
        assert_eq!(hausdorff_means(&g, &ones, 200).unwrap(), partial_sums(&g));
        let half = rat(1, 2);
        let euler = hausdorff_means(&g[..60], &euler_diagonal(&half, 60), 60).unwrap();
        assert_eq!(euler, euler_means_exact(&g[..60], &half));
        assert!((to_f64(&euler[59]) - 0.5).abs() < 1e-15);
        let float_rows = euler_means(&Series::Exact(g[..60].to_vec()).to_f64(), 0.5, 60).unwrap();
        for (x, y) in float_rows.iter().zip(&euler) {
            assert!((x - to_f64(y)).abs() < 1e-13);
        }
        assert!(hausdorff_means(&g, &ones[..10], 200).is_err());
    }

    #[test]
    fn euler_means_large_n_against_exact_rows() {
        let terms: Vec<Rational> = (0..120).map(|k| rat(if k % 3 == 0 { 2 } else { -1 }, k + 1)).collect();
        let l = rat(1, 3);
        let exact = euler_means_exact(&terms, &l);
        let float = euler_means(&Series::Exact(terms).to_f64(), 1.0 / 3.0, 120).unwrap();
        for (x, y) in float.iter().zip(&exact) {
            assert!((x - to_f64(y)).abs() < 1e-12);
        }
    }

    #[test]
    fn alternating_power_values() {
        assert_eq!(alternating_power_reference(0), rat(1, 2));
        assert_eq!(alternating_power_reference(1), rat(1, 4));
        assert_eq!(alternating_power_reference(2), Rational::zero());
        assert_eq!(alternating_power_reference(3), rat(-1, 8));
    }

    #[test]
    fn alternating_power_means_approach_reference() {
        for p in 0..=3u32 {
            let series = Series::alternating_power(p, 100_000);
            let target = to_f64(&alternating_power_reference(p));
            let c = cesaro_means(&series, p + 1, 100_000, DEFAULT_SWITCHOVER).unwrap();
            let h = holder_means(&series, p + 1, 100_000, DEFAULT_HOLDER_SWITCHOVER).unwrap();
            assert!((c.last().unwrap() - target).abs() < 1e-2, "C p = {p}");
            assert!((h.last().unwrap() - target).abs() < 1e-2, "H p = {p}");
        }
    }

    #[test]
    fn detector_examples() {
        let m = cesaro_means(&Series::grandi(100_000), 1, 100_000, DEFAULT_SWITCHOVER).unwrap();
        let d = detect_limit(&m, 8, 1e-4).unwrap();
        assert_eq!(d.verdict, LimitVerdict::Converged);
        assert!((d.limit.unwrap() - 0.5).abs() < 1e-9);
        assert!((m.last().unwrap() - d.limit.unwrap()).abs() <= d.error_estimate);

        let classical: Vec<f64> = (0..1000).map(|k| if k % 2 == 0 { 1.0 } else { 0.0 }).collect();
        assert_eq!(detect_limit(&classical, 8, 1e-4).unwrap().verdict, LimitVerdict::Undecided);

        let growing: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(detect_limit(&growing, 8, 1e-4).unwrap().verdict, LimitVerdict::Diverged);
        assert_eq!(detect_limit(&[1e9, 1e9], 8, 1e-4).unwrap().verdict, LimitVerdict::Diverged);
        assert!(detect_limit(&growing, 3, 1e-4).is_err());
    }

    #[test]
    fn regularity_on_convergent_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for _ in 0..100 {
            let ratio: f64 = rng.gen_range(0.1..0.8);
            let terms: Vec<f64> = (0..20_000).map(|k| rng.gen_range(-1.0..1.0) * ratio.powi(k)).collect();
            let sum: f64 = terms.iter().sum();
            let series = Series::Float(terms);
            for method in [Method::Classical, Method::Cesaro(1), Method::Cesaro(3), Method::Holder(2), Method::Euler(rat(1, 2))] {
                let n = if matches!(method, Method::Euler(_)) { 400 } else { 20_000 };
                let report = summarize(&series, &method, n, 1e-6, 0).unwrap();
                assert_eq!(report.verdict, LimitVerdict::Converged, "{method} {:?} {:?}", report.error_estimate, &report.means[report.means.len() - 8..]);
                assert!((report.limit.unwrap() - sum).abs() < 1e-6, "{method}");
            }
        }
    }

    #[test]
    fn order_inheritance_on_examples() {
        // Grandi is (C,1)-summable, 1−2+3−⋯ is (C,2)-summable; both stay summable up to order 4.
        let examples = [(Series::grandi(20_000), 1u32, 0.5), (Series::alternating_power(1, 20_000), 2, 0.25)];
        for (series, s, limit) in examples {
            for r in s..=4 {
                let report = summarize(&series, &Method::Cesaro(r), 20_000, 1e-3, 5000).unwrap();
                assert_eq!(report.verdict, LimitVerdict::Converged, "r = {r}");
                assert!((report.limit.unwrap() - limit).abs() < 1e-3);
            }
        }
    }
}
