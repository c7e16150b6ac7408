//! Exact and validated scalar arithmetic.
//!
//! Exact values are [`Rational`] (big-integer backed, always reduced) or
//! [`ExactComplex`] pairs of them. Real quantities defined by infinite sums are
//! carried as a [`Bracket`] whose endpoints are rounded outward.

mod bracket;
pub mod quadrature;

pub use bracket::Bracket;

use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type ExactComplex = Complex<Rational>;

/// Horizon for explicit partial sums before an analytic remainder takes over.
pub const DEFAULT_TAIL_TERMS: usize = 10_000;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn exact_to_c64(z: &ExactComplex) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

/// Field operations shared by the exact and floating carriers, so that
/// sequence and matrix code is written once.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(num: i64, den: u64) -> Self;

    fn magnitude(&self) -> f64;

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        let acc = core::mem::replace(self, Self::zero());
        *self = acc + a.clone() * b.clone();
    }

    fn recip_of(n: u64) -> Self {
        Self::from_ratio(1, n)
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: u64) -> Self {
        num as f64 / den as f64
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Scalar for Complex64 {
    fn from_ratio(num: i64, den: u64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: u64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn magnitude(&self) -> f64 {
        to_f64(&self.abs())
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            self.add_assign(a * b);
        }
    }
}

impl Scalar for ExactComplex {
    fn from_ratio(num: i64, den: u64) -> Self {
        Complex::new(Rational::from_ratio(num, den), Rational::zero())
    }
    fn magnitude(&self) -> f64 {
        exact_to_c64(self).norm()
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            self.add_assign(a * b);
        }
    }
}

/// C(n, k), zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// α(α−1)…(α−k+1)/k!, evaluated by the running product.
pub fn generalized_binomial(alpha: Complex64, k: u64) -> Complex64 {
    let mut acc = Complex64::one();
    for i in 0..k {
        acc = acc * (alpha - i as f64) / (i + 1) as f64;
    }
    acc
}

pub fn generalized_binomial_exact(alpha: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (alpha - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// B_0..=B_n with B_1 = +1/2 (Akiyama–Tanigawa).
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            row[j - 1] = int(j as i64) * (&row[j - 1] - &row[j]);
        }
        out.push(row[0].clone());
    }
    out
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().unwrap_or_else(Rational::one)
}

/// Σ_{k≥K} 1/((k+1)(k+2)) = 1/(K+1).
pub fn telescoping_tail(k: u64) -> Rational {
    Rational::from_ratio(1, k + 1)
}

/// Σ_{k≥K} 1/(k+1)², with [`DEFAULT_TAIL_TERMS`] explicit terms.
pub fn quadratic_tail(k: u64) -> Bracket {
    quadratic_tail_with(k, DEFAULT_TAIL_TERMS)
}

/// Σ_{k≥K} 1/(k+1)²: `explicit` terms summed in interval arithmetic, the rest
/// enclosed by the trapezoid and midpoint comparisons for the convex 1/x².
pub fn quadratic_tail_with(k: u64, explicit: usize) -> Bracket {
    let first = k + 1;
    let mut acc = Bracket::point(0.0);
    for j in first..first + explicit as u64 {
        acc = acc + Bracket::recip_square(j);
    }
    acc + reciprocal_square_remainder(first + explicit as u64)
}

/// Encloses Σ_{j≥n} 1/j² for n ≥ 1 by [1/n + 1/(2n²), 1/(n − 1/2)].
pub fn reciprocal_square_remainder(n: u64) -> Bracket {
    let n = n.max(1) as f64;
    let lo = (1.0 / n).next_down() + (0.5 / (n * n)).next_down();
    let hi = (1.0 / (n - 0.5)).next_up();
    Bracket::new(lo.next_down(), hi)
}

/// round(2^bits / √k) / 2^bits: the reciprocal square root as a dyadic rational
/// accurate to one unit in the last of `bits` fractional bits.
pub fn inv_sqrt_dyadic(k: u64, bits: u32) -> Rational {
    Rational::new(inv_sqrt_mantissa(k, bits), BigInt::one() << bits as usize)
}

/// The integer numerator of [`inv_sqrt_dyadic`] over 2^bits.
pub fn inv_sqrt_mantissa(k: u64, bits: u32) -> BigInt {
    let scaled = (BigInt::one() << (2 * bits as usize + 2)) / BigInt::from(k);
    let twice = scaled.sqrt();
    (twice + BigInt::one()) >> 1usize
}

/// Nearest double to √k / k computed through a wide dyadic value.
pub fn inv_sqrt_correctly_rounded(k: u64) -> f64 {
    to_f64(&inv_sqrt_dyadic(k, 128))
}

pub fn powi_exact(base: &Rational, exp: u64) -> Rational {
    num_traits::pow::pow(base.clone(), exp as usize)
}

/// Parses `p/q`, an integer, or a finite decimal (`0.125`, `-3e-2`) exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let negative = int_part.starts_with('-');
    let digits = alloc::format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut value = Rational::from_integer(digits.parse().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= powi_exact(&ten, shift as u64);
    } else {
        value /= powi_exact(&ten, (-shift) as u64);
    }
    Some(if negative { -value } else { value })
}
