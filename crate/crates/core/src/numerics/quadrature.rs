//! Gauss–Legendre rules and a bisecting adaptive integrator.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};
#[allow(unused_imports)] // f64 math comes from libm when std is absent
use num_traits::Float;

/// Nodes and weights of the n-point rule on [-1, 1], ascending.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let step = p / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped affinely onto [a, b].
    pub fn on_interval(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.on_interval(a, b).map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Complex64 {
        self.on_interval(a, b).map(|(x, w)| f(x) * w).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptiveResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub intervals: usize,
}

/// Bisects [a, b] until a 16-point rule on each piece agrees with the sum over
/// its halves to `tol` (scaled by the piece's share of the interval).
pub fn integrate_adaptive<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<AdaptiveResult> {
    let rule = GaussLegendre::new(16);
    let total = b - a;
    let mut stack = alloc::vec![(a, b, rule.integrate_complex(a, b, &mut f), 0u32)];
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut intervals = 0;
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.integrate_complex(lo, mid, &mut f);
        let right = rule.integrate_complex(mid, hi, &mut f);
        let diff = (left + right - whole).norm();
        let budget = tol * (hi - lo) / total;
        if diff <= budget || depth >= max_depth {
            value += left + right;
            error += diff;
            intervals += 1;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    if error > tol.max(1e-15) * 10.0 {
        return Err(Error::QuadratureFailed(error));
    }
    Ok(AdaptiveResult { value, error_estimate: error, intervals })
}
