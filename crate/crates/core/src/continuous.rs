//! The continuous Cesàro operator (C₁f)(x) = (1/x)∫₀ˣ f on L²[0,1], discretized
//! on a graded Gauss–Legendre grid.
//!
//! Nodes are x = v^p for Gauss nodes v on (0,1). Functions are interpolated in
//! the v variable, where powers x^b become v^{pb} and lose their endpoint
//! roughness.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::numerics::quadrature::GaussLegendre;
use crate::{Error, Result};
#[allow(unused_imports)] // f64 math comes from libm when std is absent
use num_traits::Float;

pub const DEFAULT_GRADING: u32 = 4;
pub const MIN_INTERPOLATION_NODES: usize = 16;

#[derive(Clone, Debug)]
pub struct GaussGrid {
    pub power: u32,
    /// Gauss nodes on (0,1), ascending.
    pub v: Vec<f64>,
    /// x_i = v_i^p.
    pub nodes: Vec<f64>,
    /// Quadrature weights for dx; they sum to 1.
    pub weights: Vec<f64>,
    bary: Vec<f64>,
    inner: GaussLegendre,
}

impl GaussGrid {
    pub fn new(m: usize) -> Result<Arc<Self>> {
        Self::with_grading(m, DEFAULT_GRADING)
    }

    pub fn with_grading(m: usize, power: u32) -> Result<Arc<Self>> {
        if m < 2 || power == 0 {
            return Err(Error::InvalidParameter(alloc::format!("grid needs M ≥ 2 and p ≥ 1, got M = {m}, p = {power}")));
        }
        let rule = GaussLegendre::new(m);
        let p = power as f64;
        let v: Vec<f64> = rule.nodes.iter().map(|t| 0.5 * (t + 1.0)).collect();
        let nodes = v.iter().map(|x| x.powi(power as i32)).collect();
        let weights = v.iter().zip(&rule.weights).map(|(x, w)| 0.5 * w * p * x.powi(power as i32 - 1)).collect();
        let bary = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .enumerate()
            .map(|(j, (t, w))| {
                let s = ((1.0 - t * t) * w).sqrt();
                if j % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .collect();
        Ok(Arc::new(GaussGrid { power, v, nodes, weights, bary, inner: rule }))
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    fn check_interpolation(&self) -> Result<()> {
        if self.len() < MIN_INTERPOLATION_NODES {
            return Err(Error::CoarseGrid(self.len()));
        }
        Ok(())
    }

    /// Barycentric interpolation in v of values given at the nodes.
    fn interpolate(&self, values: &[Complex64], v: f64) -> Complex64 {
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for ((&vj, &bj), &fj) in self.v.iter().zip(&self.bary).zip(values) {
            let d = v - vj;
            if d == 0.0 {
                return fj;
            }
            let c = bj / d;
            num += fj * c;
            den += c;
        }
        num / den
    }

    /// Inner Gauss rule on [0,1].
    fn inner_points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.inner.on_interval(0.0, 1.0)
    }
}

#[derive(Clone, Debug)]
pub struct GridFunction {
    pub grid: Arc<GaussGrid>,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: &Arc<GaussGrid>, f: F) -> Self {
        GridFunction { grid: Arc::clone(grid), values: grid.nodes.iter().map(|&x| f(x)).collect() }
    }

    pub fn from_real<F: Fn(f64) -> f64>(grid: &Arc<GaussGrid>, f: F) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn inner(&self, other: &GridFunction) -> Complex64 {
        self.values.iter().zip(&other.values).zip(&self.grid.weights).map(|((a, b), w)| a * b.conj() * *w).sum()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().zip(&self.grid.weights).map(|(a, w)| a.norm_sqr() * w).sum::<f64>().sqrt()
    }

    pub fn sub(&self, other: &GridFunction) -> GridFunction {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> GridFunction {
        GridFunction { grid: Arc::clone(&self.grid), values: self.values.iter().map(|v| v * c).collect() }
    }

    fn zip_with<F: Fn(Complex64, Complex64) -> Complex64>(&self, other: &GridFunction, f: F) -> GridFunction {
        GridFunction { grid: Arc::clone(&self.grid), values: self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect() }
    }

    /// Value at x from the interpolant.
    pub fn at(&self, x: f64) -> Complex64 {
        self.grid.interpolate(&self.values, x.powf(1.0 / self.grid.power as f64))
    }
}

/// (C₁f)(x_i) = ∫₀¹ F(v_i σ) p σ^{p−1} dσ, with F the interpolant in v.
pub fn apply_c1(f: &GridFunction) -> Result<GridFunction> {
    let g = &f.grid;
    g.check_interpolation()?;
    let p = g.power as i32;
    let values = g
        .v
        .iter()
        .map(|&vi| g.inner_points().map(|(s, w)| g.interpolate(&f.values, vi * s) * (w * p as f64 * s.powi(p - 1))).sum())
        .collect();
    Ok(GridFunction { grid: Arc::clone(g), values })
}

/// (C₁*f)(x_i) = ∫_{x_i}^1 f(t)/t dt = p(−ln v_i) ∫₀¹ F(v_i^{1−s}) ds.
pub fn apply_c1_adjoint(f: &GridFunction) -> Result<GridFunction> {
    let g = &f.grid;
    g.check_interpolation()?;
    let p = g.power as f64;
    let values = g
        .v
        .iter()
        .map(|&vi| {
            let scale = -p * vi.ln();
            g.inner_points().map(|(s, w)| g.interpolate(&f.values, vi.powf(1.0 - s)) * (w * scale)).sum()
        })
        .collect();
    Ok(GridFunction { grid: Arc::clone(g), values })
}

/// C₁ of a closed-form f, with s = σ^q absorbing an integrable singularity at 0.
pub fn apply_c1_closed<F: Fn(f64) -> Complex64>(grid: &Arc<GaussGrid>, f: F, q: u32) -> GridFunction {
    let qf = q as f64;
    let values = grid
        .nodes
        .iter()
        .map(|&x| grid.inner_points().map(|(s, w)| f(x * s.powi(q as i32)) * (w * qf * s.powi(q as i32 - 1))).sum())
        .collect();
    GridFunction { grid: Arc::clone(grid), values }
}

/// f_λ(x) = x^{1/λ − 1}, the eigenfunction of C₁ at λ.
pub fn eigenfunction(lambda: Complex64) -> impl Fn(f64) -> Complex64 {
    let b = Complex64::new(1.0, 0.0) / lambda - 1.0;
    move |x: f64| Complex64::new(x, 0.0).powc(b)
}

/// ‖C₁f_λ − λf_λ‖/‖f_λ‖ on the grid, for Re(1/λ) > 1/2.
pub fn c1_eigen_residual(lambda: Complex64, m: usize) -> Result<f64> {
    if !((Complex64::new(1.0, 0.0) / lambda).re > 0.5) {
        return Err(Error::OutsideDomain(alloc::format!("Re(1/λ) ≤ 1/2 for λ = {lambda}")));
    }
    let grid = GaussGrid::new(m)?;
    let f = GridFunction::from_fn(&grid, eigenfunction(lambda));
    let cf = apply_c1(&f)?;
    Ok(cf.sub(&f.scale(lambda)).norm() / f.norm())
}

/// (‖(I − C₁*)f‖, ‖f‖).
pub fn isometry_check(f: &GridFunction) -> Result<(f64, f64)> {
    let adj = apply_c1_adjoint(f)?;
    Ok((f.sub(&adj).norm(), f.norm()))
}

/// (P_λf)(x_i) = ∫₀¹ f(x_i t) t^{−1/λ} dt = p ∫₀¹ F(v_i σ) σ^{p−1−p/λ} dσ.
pub fn apply_resolvent_kernel(lambda: Complex64, f: &GridFunction) -> Result<GridFunction> {
    let g = &f.grid;
    g.check_interpolation()?;
    let p = g.power as f64;
    let expo = Complex64::new(p - 1.0, 0.0) - p / lambda;
    if !(expo.re > -1.0) {
        return Err(Error::QuadratureFailed(expo.re));
    }
    let values = g
        .v
        .iter()
        .map(|&vi| g.inner_points().map(|(s, w)| g.interpolate(&f.values, vi * s) * Complex64::new(s, 0.0).powc(expo) * (w * p)).sum())
        .collect();
    Ok(GridFunction { grid: Arc::clone(g), values })
}

fn check_resolvent_domain(lambda: Complex64) -> Result<()> {
    if !((lambda - 1.0).norm() > 1.0) {
        return Err(Error::OutsideDomain(alloc::format!("|λ − 1| ≤ 1 for λ = {lambda}")));
    }
    Ok(())
}

/// (λI − C₁)^{−1}f = f/λ + P_λf/λ².
pub fn apply_resolvent(lambda: Complex64, f: &GridFunction) -> Result<GridFunction> {
    check_resolvent_domain(lambda)?;
    let pf = apply_resolvent_kernel(lambda, f)?;
    Ok(f.scale(Complex64::new(1.0, 0.0) / lambda).zip_with(&pf, |a, b| a + b / (lambda * lambda)))
}

/// ‖(λI − C₁)Rf − f‖/‖f‖ with R the closed-form resolvent.
pub fn resolvent_check(lambda: Complex64, f: &GridFunction) -> Result<f64> {
    let r = apply_resolvent(lambda, f)?;
    let back = r.scale(lambda).sub(&apply_c1(&r)?);
    Ok(back.sub(f).norm() / f.norm())
}

/// ‖C₁f‖/‖f‖ for f = x^{−1/2+ε}, through closed-form quadrature on a grid
/// graded enough to integrate |f|² smoothly.
pub fn continuous_sharpness_ratio(eps: f64, m: usize) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter("ε must be positive".into()));
    }
    let grid = GaussGrid::with_grading(m, 20)?;
    let f = move |x: f64| Complex64::new(x.powf(-0.5 + eps), 0.0);
    let g = GridFunction::from_fn(&grid, f);
    let cf = apply_c1_closed(&grid, f, 20);
    Ok(cf.norm() / g.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn poly(coeffs: &[f64]) -> impl Fn(f64) -> Complex64 + '_ {
        move |x| c(coeffs.iter().rev().fold(0.0, |acc, a| acc * x + a))
    }

    fn max_err(f: &GridFunction, exact: impl Fn(f64) -> Complex64) -> f64 {
        f.grid.nodes.iter().zip(&f.values).map(|(&x, v)| (v - exact(x)).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn grid_invariants() {
        let g = GaussGrid::new(64).unwrap();
        assert!(g.nodes.iter().all(|&x| x > 0.0 && x < 1.0));
        assert!(g.weights.iter().all(|&w| w > 0.0));
        assert!((g.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        let f = GridFunction::from_real(&g, |x| x * x);
        assert!((f.at(0.3) - c(0.09)).norm() < 1e-12);
        let coarse = GaussGrid::new(8).unwrap();
        assert!(matches!(apply_c1(&GridFunction::from_real(&coarse, |x| x)), Err(Error::CoarseGrid(8))));
    }

    #[test]
    fn c1_examples() {
        let g = GaussGrid::new(64).unwrap();
        assert!(max_err(&apply_c1(&GridFunction::from_real(&g, |_| 1.0)).unwrap(), |_| c(1.0)) < 1e-13);
        assert!(max_err(&apply_c1(&GridFunction::from_real(&g, |x| x)).unwrap(), |x| c(x / 2.0)) < 1e-13);
        let quarter = GridFunction::from_real(&g, |x| x.powf(0.25));
        assert!(max_err(&apply_c1(&quarter).unwrap(), |x| c(x.powf(0.25) / 1.25)) < 1e-12);
    }

    #[test]
    fn monomial_eigen_relation() {
        let g = GaussGrid::new(128).unwrap();
        for b in [c(0.0), c(0.25), c(0.5), c(1.0), c(2.0), Complex64::new(3.0, 1.0)] {
            let f = GridFunction::from_fn(&g, |x| c(x).powc(b));
            let cf = apply_c1(&f).unwrap();
            let rel = cf.sub(&f.scale(Complex64::new(1.0, 0.0) / (b + 1.0))).norm() / f.norm();
            assert!(rel < 1e-8, "b = {b}: {rel}");
        }
    }

    #[test]
    fn adjoint_examples() {
        let g = GaussGrid::new(64).unwrap();
        assert!(max_err(&apply_c1_adjoint(&GridFunction::from_real(&g, |_| 1.0)).unwrap(), |x| c(-x.ln())) < 1e-12);
        assert!(max_err(&apply_c1_adjoint(&GridFunction::from_real(&g, |x| x)).unwrap(), |x| c(1.0 - x)) < 1e-12);
        assert!(max_err(&apply_c1_adjoint(&GridFunction::from_real(&g, |x| x * x)).unwrap(), |x| c((1.0 - x * x) / 2.0)) < 1e-12);
    }

    #[test]
    fn eigen_residuals() {
        assert!(c1_eigen_residual(c(1.0), 64).unwrap() < 1e-12);
        assert!(c1_eigen_residual(c(2.0 / 3.0), 64).unwrap() < 1e-8);
        assert!(c1_eigen_residual(Complex64::new(0.6, 0.2), 128).unwrap() < 1e-6);
        assert!(c1_eigen_residual(c(2.5), 64).is_err());
    }

    #[test]
    fn isometry() {
        let g = GaussGrid::new(128).unwrap();
        let (a, b) = isometry_check(&GridFunction::from_real(&g, |_| 1.0)).unwrap();
        assert!((a - 1.0).abs() < 1e-10 && (b - 1.0).abs() < 1e-14);
        let (a, b) = isometry_check(&GridFunction::from_real(&g, |x| x)).unwrap();
        assert!((a * a - 1.0 / 3.0).abs() < 1e-12 && (b * b - 1.0 / 3.0).abs() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..=6).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (a, b) = isometry_check(&GridFunction::from_fn(&g, poly(&coeffs))).unwrap();
            assert!((a - b).abs() / b < 1e-8);
        }
    }

    #[test]
    fn resolvent_examples() {
        let g = GaussGrid::new(128).unwrap();
        let one = GridFunction::from_real(&g, |_| 1.0);
        // Oracle: P_λ1 = 1/(1 − 1/λ), P_λx = x/(2 − 1/λ).
        let p = apply_resolvent_kernel(c(3.0), &one).unwrap();
        assert!(max_err(&p, |_| c(1.0 / (1.0 - 1.0 / 3.0))) < 1e-10);
        let x = GridFunction::from_real(&g, |x| x);
        let p = apply_resolvent_kernel(c(-1.0), &x).unwrap();
        assert!(max_err(&p, |x| c(x / 3.0)) < 1e-12);
        assert!(resolvent_check(c(3.0), &one).unwrap() < 1e-8);
        assert!(resolvent_check(c(-1.0), &x).unwrap() < 1e-8);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for lambda in [c(3.0), c(-1.0)] {
            for _ in 0..10 {
                let coeffs: Vec<f64> = (0..=4).map(|_| rng.gen_range(-1.0..1.0)).collect();
                assert!(resolvent_check(lambda, &GridFunction::from_fn(&g, poly(&coeffs))).unwrap() < 1e-6);
            }
        }
        assert!(resolvent_check(c(1.5), &one).is_err());
    }

    #[test]
    fn norm_bound_and_sharpness() {
        let g = GaussGrid::new(64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let coeffs: Vec<f64> = (0..=rng.gen_range(0..8)).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let f = GridFunction::from_fn(&g, poly(&coeffs));
            assert!(apply_c1(&f).unwrap().norm() <= 2.0 * f.norm());
        }
        let r = continuous_sharpness_ratio(0.05, 64).unwrap();
        assert!(r >= 1.7 && r <= 2.0, "{r}");
        assert!((r - 1.0 / 0.55).abs() < 1e-6);
    }

    #[test]
    fn adjointness() {
        let g = GaussGrid::new(128).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let a: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let b: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let f = GridFunction::from_fn(&g, poly(&a));
            let h = GridFunction::from_fn(&g, poly(&b));
            let lhs = apply_c1(&f).unwrap().inner(&h);
            let rhs = f.inner(&apply_c1_adjoint(&h).unwrap());
            assert!((lhs - rhs).norm() < 1e-8);
        }
    }

    #[test]
    fn refinement_reduces_residuals() {
        for lambda in [Complex64::new(0.6, 0.2), Complex64::new(0.9, -0.3)] {
            let coarse = c1_eigen_residual(lambda, 32).unwrap();
            let fine = c1_eigen_residual(lambda, 128).unwrap();
            assert!(fine * 1e2 <= coarse, "{lambda}: {coarse} → {fine}");
        }
    }
}
