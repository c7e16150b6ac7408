//! Fejér summation of Fourier series on equispaced circle grids.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};
#[allow(unused_imports)] // f64 math comes from libm when std is absent
use num_traits::Float;

/// Samples at θ_j = 2πj/M, j = 0..M.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCircleFunction {
    pub samples: Vec<Complex64>,
}

/// θ reduced to (−π, π].
pub fn wrap_angle(theta: f64) -> f64 {
    let r = theta % (2.0 * PI);
    let t = if r < 0.0 { r + 2.0 * PI } else { r };
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

impl SampledCircleFunction {
    pub fn from_fn<F: Fn(f64) -> Complex64>(m: usize, f: F) -> Self {
        SampledCircleFunction { samples: (0..m).map(|j| f(grid_angle(j, m))).collect() }
    }

    pub fn from_real<F: Fn(f64) -> f64>(m: usize, f: F) -> Self {
        Self::from_fn(m, |t| Complex64::new(f(t), 0.0))
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn theta(&self, j: usize) -> f64 {
        grid_angle(j, self.len())
    }
}

pub fn grid_angle(j: usize, m: usize) -> f64 {
    2.0 * PI * j as f64 / m as f64
}

/// Default grid size 8(N+1).
pub fn default_grid(n: usize) -> usize {
    8 * (n + 1)
}

/// Test functions, as functions of θ.
pub mod builtins {
    use super::wrap_angle;
    #[allow(unused_imports)]
    use num_traits::Float;
    use core::f64::consts::PI;

    /// θ on (−π, π), with the midpoint value 0 at the jump.
    pub fn sawtooth(theta: f64) -> f64 {
        let t = wrap_angle(theta);
        if t == PI {
            0.0
        } else {
            t
        }
    }

    pub fn abs_theta(theta: f64) -> f64 {
        wrap_angle(theta).abs()
    }

    /// Sign of θ on (−π, π), 0 at both jumps.
    pub fn step(theta: f64) -> f64 {
        let t = wrap_angle(theta);
        if t == 0.0 || t == PI {
            0.0
        } else {
            t.signum()
        }
    }

    pub fn cos_mix(theta: f64) -> f64 {
        theta.cos() + 0.3 * (7.0 * theta).cos()
    }

    /// 1 at θ = 0 falling linearly to 0 at |θ| = π/2.
    pub fn tent(theta: f64) -> f64 {
        (1.0 - wrap_angle(theta).abs() / (PI / 2.0)).max(0.0)
    }
}

/// e^{−2πi k/M} for k = 0..M, so every twiddle is a table lookup.
struct Roots {
    table: Vec<Complex64>,
}

impl Roots {
    fn new(m: usize) -> Self {
        Roots { table: (0..m).map(|k| Complex64::from_polar(1.0, -grid_angle(k, m))).collect() }
    }

    /// e^{−i n θ_j}
    fn power(&self, n: i64, j: usize) -> Complex64 {
        let m = self.table.len() as i64;
        self.table[(n * j as i64).rem_euclid(m) as usize]
    }
}

fn check_frequency(n: i64, m: usize) -> Result<()> {
    if 4 * n.unsigned_abs() as usize > m {
        return Err(Error::FrequencyTooLarge { n, m, needed: 4 * n.unsigned_abs() as usize });
    }
    Ok(())
}

/// Trapezoidal f̂(n) = (1/M) Σ_j f(θ_j) e^{−inθ_j}, for |n| ≤ M/4.
pub fn fourier_coefficient(f: &SampledCircleFunction, n: i64) -> Result<Complex64> {
    check_frequency(n, f.len())?;
    let roots = Roots::new(f.len());
    Ok(coefficient_with(f, n, &roots))
}

fn coefficient_with(f: &SampledCircleFunction, n: i64, roots: &Roots) -> Complex64 {
    let sum: Complex64 = f.samples.iter().enumerate().map(|(j, &x)| x * roots.power(n, j)).sum();
    sum / f.len() as f64
}

/// f̂(−N), …, f̂(N); entry k+N holds f̂(k).
pub fn coefficients(f: &SampledCircleFunction, n: usize) -> Result<Vec<Complex64>> {
    check_frequency(n as i64, f.len())?;
    let roots = Roots::new(f.len());
    Ok((-(n as i64)..=n as i64).map(|k| coefficient_with(f, k, &roots)).collect())
}

/// Σ_{|k|≤N} w_k c_k e^{ikθ_j} on the M-point grid, from centered coefficients.
fn synthesize<W: Fn(i64) -> f64>(coeffs: &[Complex64], m: usize, weight: W) -> SampledCircleFunction {
    let n = (coeffs.len() / 2) as i64;
    let roots = Roots::new(m);
    let samples = (0..m)
        .map(|j| {
            (-n..=n)
                .map(|k| coeffs[(k + n) as usize] * weight(k) * roots.power(-k, j))
                .sum()
        })
        .collect();
    SampledCircleFunction { samples }
}

/// Evaluates Σ_{|k|≤N} w_k c_k e^{ikθ} off the grid.
pub fn evaluate_at<W: Fn(i64) -> f64>(coeffs: &[Complex64], theta: f64, weight: W) -> Complex64 {
    let n = (coeffs.len() / 2) as i64;
    (-n..=n).map(|k| coeffs[(k + n) as usize] * weight(k) * Complex64::from_polar(1.0, k as f64 * theta)).sum()
}

pub fn partial_sum(f: &SampledCircleFunction, n: usize) -> Result<SampledCircleFunction> {
    let c = coefficients(f, n)?;
    Ok(synthesize(&c, f.len(), |_| 1.0))
}

/// Triangular weights 1 − |k|/(N+1).
pub fn fejer_weight(n: usize) -> impl Fn(i64) -> f64 {
    move |k| 1.0 - k.unsigned_abs() as f64 / (n as f64 + 1.0)
}

pub fn fejer_mean(f: &SampledCircleFunction, n: usize) -> Result<SampledCircleFunction> {
    let c = coefficients(f, n)?;
    Ok(synthesize(&c, f.len(), fejer_weight(n)))
}

/// (1/(N+1)) Σ_{n≤N} S_n f, accumulating the partial sums one frequency pair at a time.
pub fn fejer_mean_by_partial_sums(f: &SampledCircleFunction, n: usize) -> Result<SampledCircleFunction> {
    let c = coefficients(f, n)?;
    let m = f.len();
    let roots = Roots::new(m);
    let mut partial: Vec<Complex64> = alloc::vec![c[n]; m];
    let mut total = partial.clone();
    for k in 1..=n as i64 {
        let (plus, minus) = (c[n + k as usize], c[n - k as usize]);
        for (j, (p, t)) in partial.iter_mut().zip(total.iter_mut()).enumerate() {
            *p += plus * roots.power(-k, j) + minus * roots.power(k, j);
            *t += *p;
        }
    }
    let scale = 1.0 / (n as f64 + 1.0);
    Ok(SampledCircleFunction { samples: total.into_iter().map(|t| t * scale).collect() })
}

/// (1/M) Σ_l f(θ_l) K_N(θ_j − θ_l).
pub fn fejer_mean_by_kernel(f: &SampledCircleFunction, n: usize) -> Result<SampledCircleFunction> {
    let m = f.len();
    check_frequency(n as i64, m)?;
    let kernel: Vec<f64> = (0..m).map(|d| fejer_kernel(n, grid_angle(d, m))).collect();
    let samples = (0..m)
        .map(|j| {
            let s: Complex64 = f.samples.iter().enumerate().map(|(l, &x)| x * kernel[(j + m - l) % m]).sum();
            s / m as f64
        })
        .collect();
    Ok(SampledCircleFunction { samples })
}

/// K_N(θ) = (1/(N+1)) (sin((N+1)θ/2) / sin(θ/2))², with the value N+1 at θ ≡ 0.
pub fn fejer_kernel(n: usize, theta: f64) -> f64 {
    let half = 0.5 * wrap_angle(theta);
    let denom = half.sin();
    let np1 = n as f64 + 1.0;
    if denom.abs() < 1e-12 {
        return np1;
    }
    let ratio = (np1 * half).sin() / denom;
    ratio * ratio / np1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    Sup,
    L1,
    L2,
}

/// Errors of σ_N f against f on the grid; L¹ and L² use the normalized measure.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub sup: Option<f64>,
    pub l1: Option<f64>,
    pub l2: Option<f64>,
}

pub fn convergence_report(f: &SampledCircleFunction, ns: &[usize], norms: &[Norm]) -> Result<Vec<ConvergenceRow>> {
    ns.iter()
        .map(|&n| {
            let sigma = fejer_mean(f, n)?;
            let errs: Vec<f64> = sigma.samples.iter().zip(&f.samples).map(|(a, b)| (a - b).norm()).collect();
            let m = errs.len() as f64;
            let pick = |norm: Norm, v: f64| norms.contains(&norm).then_some(v);
            Ok(ConvergenceRow {
                n,
                sup: pick(Norm::Sup, errs.iter().copied().fold(0.0, f64::max)),
                l1: pick(Norm::L1, errs.iter().sum::<f64>() / m),
                l2: pick(Norm::L2, (errs.iter().map(|e| e * e).sum::<f64>() / m).sqrt()),
            })
        })
        .collect()
}
