//! Checks on the analytic side: eigenfunctions (1−z)^{w/(1−w)} of C*, the
//! Kriete–Trutt transform, Deddens interpolation, and the two semigroup integrals.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::matrices::{check_identity, Identity, IdentityReport};
use crate::numerics::quadrature::{integrate_adaptive, GaussLegendre};
use crate::numerics::{powi_exact, Rational};
use crate::sequences::{apply_cesaro_adjoint, apply_cesaro_to};
use crate::spectral::power_coefficients;
use crate::{Error, Result};
#[allow(unused_imports)] // f64 math comes from libm when std is absent
use num_traits::Float;

/// Largest |z| used for disk evaluations.
pub const DISK_RADIUS_LIMIT: f64 = 0.9;
pub const SEMIGROUP_NODES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.norm() < 1.0) {
            return Err(Error::OutsideDomain(format!("|z| = {} is not below 1", z.norm())));
        }
        Ok(DiskPoint(z))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn z(self) -> Complex64 {
        self.0
    }
}

/// The evaluation grid used by the checks.
pub fn standard_points() -> Vec<DiskPoint> {
    [Complex64::new(0.3, 0.0), Complex64::new(-0.5, 0.0), Complex64::new(0.2, 0.6), Complex64::new(-0.4, -0.7), Complex64::new(0.9, 0.0)]
        .into_iter()
        .map(DiskPoint)
        .collect()
}

/// w/(1−w), snapped to the nearest integer when it is one up to rounding.
fn exponent(w: Complex64) -> Complex64 {
    let a = w / (Complex64::one() - w);
    if a.im == 0.0 && (a.re - a.re.round()).abs() <= 1e-12 * a.re.abs().max(1.0) {
        Complex64::new(a.re.round(), 0.0)
    } else {
        a
    }
}

/// Taylor coefficients c_0..c_K of (1−z)^{w/(1−w)}.
pub fn phi_w_coefficients(w: Complex64, k: usize) -> Result<Vec<Complex64>> {
    let w = DiskPoint::new(w)?.z();
    let alpha = exponent(w);
    Ok(power_coefficients(alpha, k + 1))
}

pub fn phi_w_coefficients_exact(w: &Rational, k: usize) -> Result<Vec<Rational>> {
    if w.abs() >= Rational::one() {
        return Err(Error::OutsideDomain(format!("|w| = {w} is not below 1")));
    }
    let alpha = w / (Rational::one() - w);
    let mut out = Vec::with_capacity(k + 1);
    let mut c = Rational::one();
    for j in 0..=k {
        if j > 0 {
            c = c * (Rational::from_integer((j as i64 - 1).into()) - &alpha) / Rational::from_integer((j as i64).into());
        }
        out.push(c.clone());
    }
    Ok(out)
}

/// |Σ_{n≥K} S·c_n/(n+1)| for the coefficients c_n of (1−z)^α, Re α > −1.
///
/// With β = 1 + Re α and γ = Im α, the term ratio |n−α|/(n+2) is at most
/// (1 − (1+β)/(n+2))·exp(γ²/(2(n+1−β)²)), which sums to the bound below.
pub fn cesaro_tail_bound(alpha: Complex64, s: f64, c_k: Complex64, k: usize) -> f64 {
    let beta = 1.0 + alpha.re;
    let kf = k as f64;
    if s == 0.0 || c_k.norm() == 0.0 {
        return 0.0;
    }
    if !(beta > 0.0) || kf <= beta {
        return f64::INFINITY;
    }
    let e = (alpha.im * alpha.im / (2.0 * (kf - beta))).exp();
    let growth = ((kf + 2.0) / (kf + 1.0)).powf(1.0 + beta);
    s * c_k.norm() / (kf + 1.0) * e * growth * (1.0 + (kf + 1.0) / beta)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiCheck {
    pub residual: f64,
    /// Bound on the dropped constant Σ_{j≥K} c_j/(j+1) in every entry of C*c.
    pub tail_bound: f64,
    /// The same constant in all K entries, as a bound on `residual`.
    pub residual_bound: f64,
}

/// ‖C*_K c − (1−w)c‖₂/‖c‖₂ for the coefficients c of φ_w.
pub fn adjoint_eigen_check_phi(w: Complex64, k: usize) -> Result<PhiCheck> {
    if k == 0 {
        return Err(Error::InvalidParameter("truncation must be positive".into()));
    }
    let c = phi_w_coefficients(w, k)?;
    let lambda = Complex64::one() - w;
    let mut suffix = Complex64::zero();
    let mut res2 = 0.0;
    for j in (0..k).rev() {
        suffix += c[j] / (j as f64 + 1.0);
        res2 += (suffix - lambda * c[j]).norm_sqr();
    }
    let norm2: f64 = c[..k].iter().map(|v| v.norm_sqr()).sum();
    let tail_bound = cesaro_tail_bound(exponent(w), 1.0, c[k], k);
    let rounding = 1e-14 * (k as f64).sqrt();
    Ok(PhiCheck { residual: (res2 / norm2).sqrt(), tail_bound, residual_bound: tail_bound * (k as f64 / norm2).sqrt() + rounding })
}

/// Exact version for rational w: the residual vector of C*c − (1−w)c on the
/// first K entries, where C*c uses all of c (finite when w/(1−w) is a
/// nonnegative integer below K).
pub fn adjoint_eigen_check_phi_exact(w: &Rational, k: usize) -> Result<Vec<Rational>> {
    let c = phi_w_coefficients_exact(w, k)?;
    let lambda = Rational::one() - w;
    let adj = apply_cesaro_adjoint(&c);
    Ok((0..k).map(|j| &adj[j] - &lambda * &c[j]).collect())
}

/// A coefficient sequence whose entries past `head` equal tail_sum/(n+1),
/// as for the Cesàro image of a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct TailedSequence {
    pub head: Vec<Complex64>,
    pub tail_sum: Complex64,
}

impl TailedSequence {
    pub fn polynomial(f: &[Complex64]) -> Self {
        TailedSequence { head: f.to_vec(), tail_sum: Complex64::zero() }
    }

    /// C applied to a polynomial: exact head, then S/(n+1).
    pub fn cesaro_image(f: &[Complex64]) -> Self {
        let head = apply_cesaro_to(f, f.len());
        TailedSequence { head, tail_sum: f.iter().sum() }
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.head.get(n).copied().unwrap_or_else(|| self.tail_sum / (n as f64 + 1.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundedValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// (Kf)(z) = ⟨f, φ_{z̄}⟩ = Σ f_k c_k(φ_z), summed to K terms with a tail bound.
pub fn kriete_trutt_eval(f: &TailedSequence, z: DiskPoint, k: usize) -> BoundedValue {
    let alpha = exponent(z.z());
    let terms = if f.tail_sum.is_zero() { f.head.len() } else { k.max(f.head.len()) };
    let c = power_coefficients(alpha, terms + 1);
    let value = (0..terms).map(|n| f.coefficient(n) * c[n]).sum();
    let tail_bound = if f.tail_sum.is_zero() { 0.0 } else { cesaro_tail_bound(alpha, f.tail_sum.norm(), c[terms], terms) };
    BoundedValue { value, tail_bound }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntertwiningCheck {
    pub residual: f64,
    pub tail_bound: f64,
}

impl IntertwiningCheck {
    pub fn passed(&self) -> bool {
        self.residual <= self.tail_bound + 1e-12
    }
}

/// |K(Cf)(z) − (1−z)(Kf)(z)| against the combined tail bounds.
pub fn intertwining_check(f: &[Complex64], z: DiskPoint, k: usize) -> IntertwiningCheck {
    let lhs = kriete_trutt_eval(&TailedSequence::cesaro_image(f), z, k);
    let rhs = kriete_trutt_eval(&TailedSequence::polynomial(f), z, k);
    let target = (Complex64::one() - z.z()) * rhs.value;
    IntertwiningCheck { residual: (lhs.value - target).norm(), tail_bound: lhs.tail_bound + rhs.tail_bound }
}

/// (F(1/n), (1−α)^{n−1}) with F(z) = (1−α)^{1/z−1}.
pub fn deddens_interpolation(alpha: f64, n: u32) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha < 1.0) || n == 0 {
        return Err(Error::InvalidParameter(format!("need 0 < α < 1 and n ≥ 1, got α = {alpha}, n = {n}")));
    }
    let z = 1.0 / n as f64;
    let formula = (1.0 - alpha).powf(1.0 / z - 1.0);
    Ok((formula, (1.0 - alpha).powi(n as i32 - 1)))
}

pub fn deddens_interpolation_exact(alpha: &Rational, n: u32) -> Result<(Rational, Rational)> {
    if !(alpha > &Rational::zero() && alpha < &Rational::one()) || n == 0 {
        return Err(Error::InvalidParameter(format!("need 0 < α < 1 and n ≥ 1, got α = {alpha}, n = {n}")));
    }
    let z = Rational::new(1.into(), n.into());
    let e = z.recip() - Rational::one();
    debug_assert!(e.is_integer());
    let formula = powi_exact(&(Rational::one() - alpha), e.to_integer().try_into().unwrap_or(0));
    Ok((formula, powi_exact(&(Rational::one() - alpha), (n - 1) as u64)))
}

pub fn deddens_commutation(alpha: &Rational, n: usize) -> IdentityReport {
    check_identity(&Identity::DeddensCommutation(alpha.clone()), n, n, 0.0)
}

pub fn eval_poly(f: &[Complex64], z: Complex64) -> Complex64 {
    f.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralCheck {
    pub integral: Complex64,
    pub series: Complex64,
    pub residual: f64,
    pub quadrature_error: f64,
}

/// ∫₀¹ f(uz + 1 − u) du by Gauss–Legendre against (C*f)(z) from coefficients.
pub fn adjoint_semigroup_check(f: &[Complex64], z: DiskPoint) -> Result<IntegralCheck> {
    if f.len() > 2 * SEMIGROUP_NODES {
        return Err(Error::InvalidParameter(format!("degree {} exceeds the quadrature capacity", f.len() - 1)));
    }
    let z = z.z();
    let rule = GaussLegendre::new(SEMIGROUP_NODES);
    let integral = rule.integrate_complex(0.0, 1.0, |u| eval_poly(f, z * u + (1.0 - u)));
    let series = eval_poly(&apply_cesaro_adjoint(f), z);
    Ok(IntegralCheck { integral, series, residual: (integral - series).norm(), quadrature_error: 0.0 })
}

/// Σ_n (Cf)_n z^n with the S/(n+1) tail in closed form:
/// S(−log(1−z)/z − Σ_{n<d} z^n/(n+1)).
pub fn cesaro_image_at(f: &[Complex64], z: Complex64) -> Complex64 {
    let image = TailedSequence::cesaro_image(f);
    let head = eval_poly(&image.head, z);
    if image.tail_sum.is_zero() {
        return head;
    }
    let full = if z.norm() < 1e-3 {
        // Series for −log(1−z)/z to avoid cancellation near 0.
        (0..40).map(|n| z.powu(n) / (n as f64 + 1.0)).sum()
    } else {
        -(Complex64::one() - z).ln() / z
    };
    let partial: Complex64 = (0..image.head.len()).map(|n| z.powu(n as u32) / (n as f64 + 1.0)).sum();
    head + image.tail_sum * (full - partial)
}

/// ∫₀¹ f(φ)/((u−1)z + 1) du with φ = uz/((u−1)z + 1), against (Cf)(z).
///
/// The flow φ_t(z) = e^{−t}z/((e^{−t}−1)z + 1) integrated against φ_t(z)/z dt
/// becomes this after u = e^{−t}, dt = −du/u.
pub fn cesaro_flow_check(f: &[Complex64], z: DiskPoint) -> Result<IntegralCheck> {
    let z = z.z();
    if z.is_zero() {
        return Err(Error::OutsideDomain("the flow formula needs z ≠ 0".into()));
    }
    let res = integrate_adaptive(
        |u| {
            let d = (u - 1.0) * z + 1.0;
            eval_poly(f, u * z / d) / d
        },
        0.0,
        1.0,
        1e-13,
        40,
    )?;
    let series = cesaro_image_at(f, z);
    Ok(IntegralCheck { integral: res.value, series, residual: (res.value - series).norm(), quadrature_error: res.error_estimate })
}
