//! Finitely supported sequences as ℓ² vectors and Taylor coefficient lists.
//!
//! The averaging map and its adjoint run in O(N) from running prefix and
//! suffix sums. Functions are generic over [`Scalar`] so the same code serves
//! the double-precision and exact rational carriers.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::numerics::{binomial, quadratic_tail_with, Bracket, ExactComplex, Rational, Scalar, DEFAULT_TAIL_TERMS};
use crate::{Error, Result};
#[allow(unused_imports)] // f64 math comes from libm when std is absent
use num_traits::Float;

/// Entry `n` is a_0 + … + a_n.
pub fn partial_sums<T: Scalar>(a: &[T]) -> Vec<T> {
    let mut acc = T::zero();
    a.iter()
        .map(|x| {
            acc = acc.clone() + x.clone();
            acc.clone()
        })
        .collect()
}

/// (Ca)_n = (a_0 + … + a_n)/(n+1) for n below the support length.
pub fn apply_cesaro<T: Scalar>(a: &[T]) -> Vec<T> {
    apply_cesaro_to(a, a.len())
}

/// (Ca)_n for n < len; past the support the numerator stays at Σ a_j.
pub fn apply_cesaro_to<T: Scalar>(a: &[T], len: usize) -> Vec<T> {
    let mut acc = T::zero();
    (0..len)
        .map(|n| {
            if let Some(x) = a.get(n) {
                acc = acc.clone() + x.clone();
            }
            acc.clone() * T::recip_of(n as u64 + 1)
        })
        .collect()
}

/// (C*a)_n = Σ_{j≥n} a_j/(j+1); support never grows.
pub fn apply_cesaro_adjoint<T: Scalar>(a: &[T]) -> Vec<T> {
    let mut out = alloc::vec![T::zero(); a.len()];
    let mut acc = T::zero();
    for j in (0..a.len()).rev() {
        acc = acc.clone() + a[j].clone() * T::recip_of(j as u64 + 1);
        out[j] = acc.clone();
    }
    out
}

/// b_m truncated to length N: entry k is C(k, m).
pub fn eigenvector_bm(m: usize, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|k| Rational::from_integer(binomial(k as u64, m as i64)))
        .collect()
}

pub fn unit_vector<T: Scalar>(index: usize, len: usize) -> Vec<T> {
    let mut e = alloc::vec![T::zero(); len.max(index + 1)];
    e[index] = T::one();
    e
}

pub fn lp_norm(a: &[Complex64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("p = {p} must be at least 1")));
    }
    if p.is_infinite() {
        return Ok(a.iter().map(|x| x.norm()).fold(0.0, f64::max));
    }
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let s: f64 = a.iter().map(|x| (x.norm() / scale).powf(p)).sum();
    Ok(scale * s.powf(1.0 / p))
}

pub fn real_lp_norm(a: &[f64], p: f64) -> Result<f64> {
    let z: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    lp_norm(&z, p)
}

/// ⟨a, b⟩ = Σ a_n·conj(b_n).
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

pub fn inner_exact(a: &[ExactComplex], b: &[ExactComplex]) -> ExactComplex {
    let mut acc = ExactComplex::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y.conj();
    }
    acc
}

fn norm_sqr_exact(a: &[ExactComplex]) -> Rational {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// A complex number enclosed componentwise.
#[derive(Clone, Copy, Debug)]
struct ComplexBracket {
    re: Bracket,
    im: Bracket,
}

impl ComplexBracket {
    fn point(z: Complex64) -> Self {
        ComplexBracket { re: Bracket::point(z.re), im: Bracket::point(z.im) }
    }
    fn add(self, o: ComplexBracket) -> Self {
        ComplexBracket { re: self.re + o.re, im: self.im + o.im }
    }
    fn div_int(self, d: u64) -> Self {
        ComplexBracket { re: self.re.div_int(d), im: self.im.div_int(d) }
    }
    fn norm_sqr(self) -> Bracket {
        self.re.square() + self.im.square()
    }
}

/// Tail horizon for ‖Ca‖²: max(4·support, 10⁴).
pub fn default_horizon(support: usize) -> usize {
    (4 * support).max(DEFAULT_TAIL_TERMS)
}

/// Encloses ‖Ca‖² for finitely supported `a`.
pub fn cesaro_norm_squared(a: &[Complex64]) -> Bracket {
    let m = a.len();
    let mut s = ComplexBracket::point(Complex64::zero());
    let mut head = Bracket::zero();
    for (n, &x) in a.iter().enumerate() {
        s = s.add(ComplexBracket::point(x));
        head = head + s.div_int(n as u64 + 1).norm_sqr();
    }
    let horizon = default_horizon(m);
    let tail = quadratic_tail_with(m as u64, horizon - m);
    head + s.norm_sqr() * tail
}

/// Encloses ‖C*a‖², a finite sum.
pub fn cesaro_adjoint_norm_squared(a: &[Complex64]) -> Bracket {
    let mut acc = ComplexBracket::point(Complex64::zero());
    let mut total = Bracket::zero();
    for j in (0..a.len()).rev() {
        acc = acc.add(ComplexBracket::point(a[j]).div_int(j as u64 + 1));
        total = total + acc.norm_sqr();
    }
    total
}

/// Encloses ⟨(C*C − CC*)a, a⟩ = ‖Ca‖² − ‖C*a‖².
pub fn hyponormal_form(a: &[Complex64]) -> Bracket {
    if a.iter().all(|x| x.is_zero()) {
        return Bracket::zero();
    }
    cesaro_norm_squared(a) - cesaro_adjoint_norm_squared(a)
}

/// The exact-input variant of [`hyponormal_form`]. When Σ a_j = 0 the image
/// `Ca` has finite support and the value is an exact rational.
#[derive(Clone, Debug, PartialEq)]
pub struct HyponormalForm {
    pub exact: Option<Rational>,
    pub bracket: Bracket,
}

pub fn hyponormal_form_exact(a: &[ExactComplex]) -> HyponormalForm {
    let ca = apply_cesaro(a);
    let head = norm_sqr_exact(&ca) - norm_sqr_exact(&apply_cesaro_adjoint(a));
    let total: ExactComplex = a.iter().cloned().sum();
    if total.is_zero() {
        return HyponormalForm { bracket: Bracket::from_rational(&head), exact: Some(head) };
    }
    let m = a.len();
    let tail = quadratic_tail_with(m as u64, default_horizon(m) - m);
    let bracket = Bracket::from_rational(&head) + Bracket::from_rational(&total.norm_sqr()) * tail;
    HyponormalForm { exact: None, bracket }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};
    use num_complex::Complex;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn ex(x: Rational) -> ExactComplex {
        Complex::new(x, Rational::zero())
    }

    fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
        (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
    }

    #[test]
    fn partial_sum_examples() {
        let grandi = [c(1.0), c(-1.0), c(1.0), c(-1.0)];
        assert_eq!(partial_sums(&grandi), [c(1.0), c(0.0), c(1.0), c(0.0)]);
        assert_eq!(partial_sums(&[c(0.0); 3]), [c(0.0); 3]);
        assert_eq!(partial_sums(&[int(1), int(2), int(3)]), [int(1), int(3), int(6)]);
    }

    #[test]
    fn cesaro_examples() {
        let e0 = unit_vector::<Rational>(0, 5);
        assert_eq!(apply_cesaro(&e0), [int(1), rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5)]);
        let e1 = unit_vector::<Rational>(1, 5);
        assert_eq!(apply_cesaro(&e1), [int(0), rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5)]);
        let b2 = eigenvector_bm(2, 12);
        let third: Vec<Rational> = b2.iter().map(|x| x * rat(1, 3)).collect();
        assert_eq!(apply_cesaro(&b2), third);
    }

    #[test]
    fn adjoint_examples() {
        let e1 = unit_vector::<Rational>(1, 4);
        assert_eq!(apply_cesaro_adjoint(&e1), [rat(1, 2), rat(1, 2), int(0), int(0)]);
        assert_eq!(apply_cesaro_adjoint(&[int(1), int(0)]), [int(1), int(0)]);
        assert_eq!(apply_cesaro_adjoint(&[int(1), int(1)]), [rat(3, 2), rat(1, 2)]);
        // Direct suffix-sum oracle.
        let a = [int(2), int(-3), rat(1, 2), int(5)];
        for n in 0..a.len() {
            let direct: Rational = (n..a.len()).map(|j| &a[j] / int(j as i64 + 1)).sum();
            assert_eq!(apply_cesaro_adjoint(&a)[n], direct);
        }
    }

    #[test]
    fn bm_examples() {
        assert_eq!(eigenvector_bm(0, 4), [int(1), int(1), int(1), int(1)]);
        assert_eq!(eigenvector_bm(2, 6), [0, 0, 1, 3, 6, 10].map(int));
        assert_eq!(eigenvector_bm(1, 4), [0, 1, 2, 3].map(int));
    }

    #[test]
    fn eigen_identity_exact() {
        for m in 0..=10 {
            let n = m + 40;
            let b = eigenvector_bm(m, n);
            let expect: Vec<Rational> = b.iter().map(|x| x / int(m as i64 + 1)).collect();
            assert_eq!(apply_cesaro(&b), expect, "m = {m}");
        }
    }

    #[test]
    fn range_density_identities() {
        for n in 0..=50usize {
            let len = n + 10;
            let lhs: Vec<Rational> = apply_cesaro(&unit_vector::<Rational>(n, len))
                .into_iter()
                .zip(apply_cesaro(&unit_vector::<Rational>(n + 1, len)))
                .map(|(x, y)| x - y)
                .collect();
            let mut rhs = alloc::vec![Rational::zero(); len];
            rhs[n] = rat(1, n as i64 + 1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lp_norm_examples() {
        assert_eq!(lp_norm(&[c(3.0), c(4.0)], 2.0).unwrap(), 5.0);
        assert_eq!(lp_norm(&[c(1.0); 4], 1.0).unwrap(), 4.0);
        assert!((lp_norm(&[c(1.0), c(-1.0)], 4.0).unwrap() - 2f64.powf(0.25)).abs() < 1e-15);
        assert!(lp_norm(&[c(1.0)], 0.5).is_err());
    }

    #[test]
    fn hyponormal_examples() {
        let a = [ex(int(1)), ex(int(-1))];
        let h = hyponormal_form_exact(&a);
        assert_eq!(h.exact, Some(rat(1, 2)));
        assert_eq!(h.bracket.width(), 0.0);
        let e0 = hyponormal_form(&[c(1.0)]);
        let pi2_6 = core::f64::consts::PI.powi(2) / 6.0;
        assert!(e0.contains(pi2_6 - 1.0) && e0.lo > 0.0);
        assert_eq!(hyponormal_form(&[c(0.0); 3]), Bracket::zero());
    }

    /// Quadratic form against the dense matrix of C*C − CC* with bracketed entries.
    #[test]
    fn hyponormal_against_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        // (C*C)_{ij} = Σ_{k≥max(i,j)} 1/(k+1)²; (CC*)_{ij} = 1/(max(i,j)+1).
        let entry = |i: usize, j: usize| {
            let k = i.max(j) as u64;
            quadratic_tail_with(k, 20_000) - Bracket::point(1.0 / (k as f64 + 1.0)).inflate(1e-17)
        };
        for _ in 0..3 {
            let a: Vec<f64> = (0..12).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut form = Bracket::zero();
            for i in 0..a.len() {
                for j in 0..a.len() {
                    form = form + entry(i, j) * Bracket::point(a[i] * a[j]).inflate(1e-16 * (a[i] * a[j]).abs());
                }
            }
            let z: Vec<Complex64> = a.iter().map(|&x| c(x)).collect();
            let got = hyponormal_form(&z);
            assert!(got.lo <= form.hi && form.lo <= got.hi, "{got:?} vs {form:?}");
            assert!(got.lo >= -1e-12);
        }
    }

    #[test]
    fn hyponormal_random_vectors_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for _ in 0..500 {
            let len = rng.gen_range(1..=64);
            let a = random_vector(&mut rng, len);
            assert!(hyponormal_form(&a).lo >= -1e-12);
        }
    }

    #[test]
    fn hardy_bound_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for _ in 0..300 {
            let len = rng.gen_range(1..=512);
            let a = random_vector(&mut rng, len);
            let na = lp_norm(&a, 2.0).unwrap();
            assert!(cesaro_norm_squared(&a).hi.sqrt() <= 2.0 * na);
        }
    }

    proptest! {
        #[test]
        fn adjoint_exact_when_sum_vanishes(xs in proptest::collection::vec(-50i64..50, 1..12), ys in proptest::collection::vec(-50i64..50, 1..12)) {
            let mut a: Vec<ExactComplex> = xs.iter().map(|&x| ex(int(x))).collect();
            let total: ExactComplex = a.iter().cloned().sum();
            a.push(-total);
            let b: Vec<ExactComplex> = ys.iter().map(|&y| ex(int(y))).collect();
            let len = a.len().max(b.len());
            let pad = |v: &[ExactComplex]| {
                let mut v = v.to_vec();
                v.resize(len, ExactComplex::zero());
                v
            };
            let (a, b) = (pad(&a), pad(&b));
            // Ca has support within len since Σa = 0.
            prop_assert_eq!(inner_exact(&apply_cesaro(&a), &b), inner_exact(&a, &apply_cesaro_adjoint(&b)));
        }

        #[test]
        fn adjoint_within_bracket(xs in proptest::collection::vec(-1.0f64..1.0, 1..16), ys in proptest::collection::vec(-1.0f64..1.0, 1..16)) {
            // ⟨Ca, b⟩ only sees (Ca)_n for n < len(b); pad a to that length.
            let len = xs.len().max(ys.len());
            let a: Vec<Complex64> = (0..len).map(|i| c(*xs.get(i).unwrap_or(&0.0))).collect();
            let b: Vec<Complex64> = (0..len).map(|i| c(*ys.get(i).unwrap_or(&0.0))).collect();
            let lhs = inner(&apply_cesaro(&a), &b);
            let rhs = inner(&a, &apply_cesaro_adjoint(&b));
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        #[test]
        fn hyponormal_nonnegative(re in proptest::collection::vec(-1.0f64..1.0, 1..40), im in proptest::collection::vec(-1.0f64..1.0, 1..40)) {
            let a: Vec<Complex64> = re.iter().zip(&im).map(|(&x, &y)| Complex64::new(x, y)).collect();
            prop_assert!(hyponormal_form(&a).lo >= -1e-12);
        }
    }
}
