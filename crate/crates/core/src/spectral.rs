//! Finite-section norm and spectrum diagnostics.
//!
//! Truncations of C are triangular, so their eigenvalues are just the diagonal
//! 1/(n+1). The honest observables are norms (by power iteration) and residuals
//! of the adjoint eigenfunctions (1−z)^{(1−λ)/λ}.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, RngCore};

use crate::matrices::{MatrixName, MatrixTruncation, Structure, Truncation};
use crate::{Error, Result};
#[allow(unused_imports)] // f64 math comes from libm when std is absent
use num_traits::Float;

/// A real operator on ℝ^N with its transpose.
pub trait LinearOp {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], out: &mut [f64]);
    fn apply_adjoint(&self, x: &[f64], out: &mut [f64]);
}

pub struct DenseOp {
    pub matrix: Truncation<f64>,
}

impl DenseOp {
    pub fn from_exact(m: &MatrixTruncation) -> Self {
        DenseOp { matrix: m.to_f64() }
    }
}

impl LinearOp for DenseOp {
    fn dim(&self) -> usize {
        self.matrix.size()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(self.matrix.rows()) {
            *o = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    fn apply_adjoint(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (row, &xi) in self.matrix.rows().zip(x) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xi;
            }
        }
    }
}

/// The N×N Cesàro section, applied in O(N) by running sums.
pub struct CesaroSection(pub usize);

impl LinearOp for CesaroSection {
    fn dim(&self) -> usize {
        self.0
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let mut s = 0.0;
        for (n, (o, v)) in out.iter_mut().zip(x).enumerate() {
            s += v;
            *o = s / (n as f64 + 1.0);
        }
    }

    fn apply_adjoint(&self, x: &[f64], out: &mut [f64]) {
        let mut s = 0.0;
        for n in (0..self.0).rev() {
            s += x[n] / (n as f64 + 1.0);
            out[n] = s;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormEstimate {
    pub name: String,
    pub n: usize,
    pub norm: f64,
    pub iterations: usize,
    /// ‖A*A x − ρx‖ at the final iterate.
    pub residual: f64,
    pub converged: bool,
}

/// Power iteration on A*A from the normalized all-ones vector; stops when
/// successive Rayleigh quotients differ by at most `tol`.
pub fn power_norm(op: &dyn LinearOp, name: &str, tol: f64, maxit: usize) -> Result<NormEstimate> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let n = op.dim();
    let mut x = alloc::vec![1.0 / (n as f64).sqrt(); n];
    let mut y = alloc::vec![0.0; n];
    let mut z = alloc::vec![0.0; n];
    let mut rho_prev = f64::NEG_INFINITY;
    let mut est = NormEstimate { name: name.to_string(), n, norm: 0.0, iterations: 0, residual: f64::INFINITY, converged: false };
    for it in 1..=maxit {
        op.apply(&x, &mut y);
        op.apply_adjoint(&y, &mut z);
        let rho: f64 = x.iter().zip(&z).map(|(a, b)| a * b).sum();
        let res = x.iter().zip(&z).map(|(a, b)| (b - rho * a).powi(2)).sum::<f64>().sqrt();
        let len = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        est.norm = rho.max(0.0).sqrt();
        est.iterations = it;
        est.residual = res;
        if len == 0.0 {
            est.converged = true;
            break;
        }
        x.iter_mut().zip(&z).for_each(|(a, b)| *a = b / len);
        if (rho - rho_prev).abs() <= tol {
            est.converged = true;
            break;
        }
        rho_prev = rho;
    }
    Ok(est)
}

/// Norm of a truncation: the largest entry for diagonal matrices, the O(N) section
/// for the Cesàro matrix, dense power iteration otherwise.
pub fn operator_norm(mat: &MatrixTruncation, tol: f64, maxit: usize) -> Result<NormEstimate> {
    let name = mat.name.to_string();
    let n = mat.size();
    let diagonal = mat.structure == Structure::Diagonal
        || (0..n).all(|i| mat.row(i).iter().enumerate().all(|(j, v)| i == j || v.is_zero()));
    if diagonal {
        let norm = (0..mat.size()).map(|i| crate::numerics::to_f64(mat.get(i, i)).abs()).fold(0.0, f64::max);
        return Ok(NormEstimate { name, n: mat.size(), norm, iterations: 0, residual: 0.0, converged: true });
    }
    if mat.name == MatrixName::Cesaro {
        return power_norm(&CesaroSection(mat.size()), &name, tol, maxit);
    }
    power_norm(&DenseOp::from_exact(mat), &name, tol, maxit)
}

/// ‖C*x‖/‖x‖ for x_n = (n+1)^{−a}, n < N, with C* truncated to N.
pub fn sharpness_ratio(a: f64, n: usize) -> Result<f64> {
    if !(a > 0.5) {
        return Err(Error::InvalidParameter(alloc::format!("exponent {a} must exceed 1/2")));
    }
    let x: Vec<f64> = (0..n).map(|k| (k as f64 + 1.0).powf(-a)).collect();
    let mut y = alloc::vec![0.0; n];
    CesaroSection(n).apply_adjoint(&x, &mut y);
    let num: f64 = y.iter().map(|v| v * v).sum();
    let den: f64 = x.iter().map(|v| v * v).sum();
    Ok((num / den).sqrt())
}

/// Coefficients of (1−z)^α, α = (1−λ)/λ.
pub fn adjoint_eigen_coefficients(lambda: Complex64, n: usize) -> Vec<Complex64> {
    power_coefficients((Complex64::new(1.0, 0.0) - lambda) / lambda, n)
}

/// First n Taylor coefficients of (1−z)^α: c_k = c_{k−1}(k−1−α)/k.
pub fn power_coefficients(alpha: Complex64, n: usize) -> Vec<Complex64> {
    let mut c = Vec::with_capacity(n);
    let mut cur = Complex64::new(1.0, 0.0);
    for k in 0..n {
        if k > 0 {
            cur = cur * (Complex64::new(k as f64 - 1.0, 0.0) - alpha) / k as f64;
        }
        c.push(cur);
    }
    c
}

/// ‖C*_N c − λc‖₂/‖c‖₂ for the truncated eigenvector of C* at λ, |1−λ| < 1.
pub fn adjoint_eigen_residual(lambda: Complex64, n: usize) -> Result<f64> {
    if (Complex64::new(1.0, 0.0) - lambda).norm() >= 1.0 {
        return Err(Error::OutsideDomain(alloc::format!("|1 − λ| ≥ 1 for λ = {lambda}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("truncation must be positive".into()));
    }
    let c = adjoint_eigen_coefficients(lambda, n);
    let mut suffix = Complex64::new(0.0, 0.0);
    let mut res2 = 0.0;
    for k in (0..n).rev() {
        suffix += c[k] / (k as f64 + 1.0);
        res2 += (suffix - lambda * c[k]).norm_sqr();
    }
    let norm2: f64 = c.iter().map(|v| v.norm_sqr()).sum();
    Ok((res2 / norm2).sqrt())
}

/// 25 points filling {|1−λ| ≤ r}: the center and eight angles on each of the
/// rings of radius r/3, 2r/3 and r.
pub fn disk_grid(r: f64) -> Vec<Complex64> {
    let mut pts = alloc::vec![Complex64::new(1.0, 0.0)];
    for ring in 1..=3 {
        let rho = r * ring as f64 / 3.0;
        for k in 0..8 {
            pts.push(Complex64::new(1.0, 0.0) + Complex64::from_polar(rho, core::f64::consts::FRAC_PI_4 * k as f64));
        }
    }
    pts
}

/// Partial ℓ² norms of the coefficients C(k, n) of z^n/(1−z)^{n+1}, k = n..=N.
pub fn point_spectrum_divergence_witness(n: usize, big_n: usize) -> Vec<f64> {
    let mut coeff = 1.0f64;
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(big_n.saturating_sub(n) + 1);
    for k in n..=big_n {
        if k > n {
            // C(k, n) = C(k−1, n)·k/(k−n)
            coeff *= k as f64 / (k - n) as f64;
        }
        acc += coeff * coeff;
        out.push(acc.sqrt());
    }
    out
}

/// p t^{p−1} + (1−t)^p − t^p.
pub fn m_objective(p: f64, t: f64) -> f64 {
    p * t.powf(p - 1.0) + (1.0 - t).powf(p) - t.powf(p)
}

/// min over [0, ½] of the objective, by golden-section search.
pub fn m_p(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("p = {p} must exceed 1")));
    }
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.0f64, 0.5f64);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (m_objective(p, c), m_objective(p, d));
    while b - a > 1e-12 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = m_objective(p, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = m_objective(p, d);
        }
    }
    let inner = m_objective(p, 0.5 * (a + b));
    Ok(inner.min(m_objective(p, 0.0)).min(m_objective(p, 0.5)))
}

/// Bound on ‖I − C‖ on ℓ^p: 1/(p−1) up to p = 2, m_p^{−1/p} beyond.
pub fn lp_bound(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("p = {p} must exceed 1")));
    }
    if p <= 2.0 {
        Ok(1.0 / (p - 1.0))
    } else {
        Ok(m_p(p)?.powf(-1.0 / p))
    }
}

/// ‖Ca‖_p and ‖(I−C)a‖_p for finitely supported a, as [lower, upper] pairs.
/// Past the support both images are S/(n+1) up to sign, where S = Σa; the tail
/// Σ_{m>N} m^{−p} sits between the integrals from N+1 and from N.
pub fn cesaro_image_lp_norms(a: &[f64], p: f64) -> ([f64; 2], [f64; 2]) {
    let n = a.len();
    let (mut s, mut head_c, mut head_d) = (0.0, 0.0, 0.0);
    for (k, &v) in a.iter().enumerate() {
        s += v;
        let ck = s / (k as f64 + 1.0);
        head_c += ck.abs().powf(p);
        head_d += (v - ck).abs().powf(p);
    }
    let sp = s.abs().powf(p);
    let lo_tail = sp * (n as f64 + 1.0).powf(1.0 - p) / (p - 1.0);
    let hi_tail = if n == 0 { 0.0 } else { sp * (n as f64).powf(1.0 - p) / (p - 1.0) };
    let root = |x: f64| x.powf(1.0 / p);
    (
        [root(head_c + lo_tail), root(head_c + hi_tail)],
        [root(head_d + lo_tail), root(head_d + hi_tail)],
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpReport {
    pub p: f64,
    pub q: f64,
    pub bound: f64,
    pub samples: usize,
    /// Largest upper bound on ‖Ca‖_p/‖a‖_p seen.
    pub max_ratio_c: f64,
    /// Largest upper bound on ‖(I−C)a‖_p/‖a‖_p seen.
    pub max_ratio_difference: f64,
    /// Lower bound on the ratio for x_n = (n+1)^{−(1/p+0.05)}.
    pub sharpness_ratio: f64,
    pub pass: bool,
}

pub const SHARPNESS_EPSILON: f64 = 0.05;
const SHARPNESS_LENGTH: usize = 1_000_000;

/// Random finitely supported samples against q = p/(p−1) and the I − C bound.
/// Samples alternate between signed uniform vectors and nonnegative
/// decreasing ones, with supports up to 256.
pub fn lp_bound_suite<R: RngCore>(p: f64, samples: usize, rng: &mut R) -> Result<LpReport> {
    let bound = lp_bound(p)?;
    let q = p / (p - 1.0);
    let lp = |a: &[f64]| a.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
    let (mut max_c, mut max_d) = (0.0f64, 0.0f64);
    for i in 0..samples {
        let len = rng.gen_range(1..=256);
        let mut a: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if i % 2 == 1 {
            a.iter_mut().for_each(|v| *v = v.abs());
            a.sort_by(|x, y| y.total_cmp(x));
        }
        let norm = lp(&a);
        if norm == 0.0 {
            continue;
        }
        let (c, d) = cesaro_image_lp_norms(&a, p);
        max_c = max_c.max(c[1] / norm);
        max_d = max_d.max(d[1] / norm);
    }
    let x: Vec<f64> = (0..SHARPNESS_LENGTH).map(|k| (k as f64 + 1.0).powf(-(1.0 / p + SHARPNESS_EPSILON))).collect();
    let (c, _) = cesaro_image_lp_norms(&x, p);
    let sharp = c[0] / lp(&x);
    Ok(LpReport {
        p,
        q,
        bound,
        samples,
        max_ratio_c: max_c,
        max_ratio_difference: max_d,
        sharpness_ratio: sharp,
        pass: max_c <= q && max_d <= bound,
    })
}
