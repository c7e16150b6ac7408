//! Cross-module properties, each checked against an oracle computed here.

use cesaro_core::fourier::{default_grid, fejer_mean, SampledCircleFunction};
use cesaro_core::matrices::{build, multiply_exact_block, MatrixName};
use cesaro_core::numerics::{binomial, generalized_binomial_exact, int, quadratic_tail, rat};
use cesaro_core::roots::{root_residual, Precision, SignPattern};
use cesaro_core::sequences::{apply_cesaro, cesaro_norm_squared, eigenvector_bm, unit_vector};
use cesaro_core::summability::{cesaro_diagonal, cesaro_means_exact, hausdorff_means};
use cesaro_core::Rational;
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..20, 1i64..20).prop_map(|(p, q)| rat(p.min(q), p.max(q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pascal_rule(n in 1u64..80, k in 0i64..80) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    #[test]
    fn integer_generalized_binomial(m in 0i64..40, k in 0u64..50) {
        prop_assert_eq!(generalized_binomial_exact(&int(m), k), Rational::from_integer(binomial(m as u64, k as i64)));
    }

    #[test]
    fn euler_matrices_multiply(l in small_rational(), m in small_rational()) {
        let n = 9;
        let a = build(&MatrixName::Euler(l.clone()), n).unwrap();
        let b = build(&MatrixName::Euler(m.clone()), n).unwrap();
        let lm = &l * &m;
        let product = multiply_exact_block(&a, &b, n).unwrap();
        // E_λ[i][j] = C(i,j) λ^j (1−λ)^{i−j}, written out directly.
        for i in 0..n {
            for j in 0..n {
                let expected = if j > i {
                    int(0)
                } else {
                    let mut e = Rational::from_integer(binomial(i as u64, j as i64));
                    for _ in 0..j {
                        e *= &lm;
                    }
                    for _ in j..i {
                        e *= int(1) - &lm;
                    }
                    e
                };
                prop_assert_eq!(product.get(i, j), &expected);
            }
        }
    }

    #[test]
    fn hausdorff_with_harmonic_diagonal_is_cesaro(terms in proptest::collection::vec(-9i64..9, 1..24)) {
        let terms: Vec<Rational> = terms.into_iter().map(int).collect();
        let n = terms.len();
        let via_w = hausdorff_means(&terms, &cesaro_diagonal(n), n).unwrap();
        let direct = cesaro_means_exact(&terms, 1).unwrap();
        // Averages of partial sums, by hand.
        let mut s = int(0);
        let mut acc = int(0);
        for (k, t) in terms.iter().enumerate() {
            s += t;
            acc += &s;
            prop_assert_eq!(&via_w[k], &(&acc / int(k as i64 + 1)));
            prop_assert_eq!(&direct[k], &via_w[k]);
        }
    }

    #[test]
    fn range_density(n in 0usize..50) {
        let len = n + 3;
        let d: Vec<Rational> = apply_cesaro(&unit_vector::<Rational>(n, len))
            .iter()
            .zip(apply_cesaro(&unit_vector::<Rational>(n + 1, len)))
            .map(|(a, b)| a - b)
            .collect();
        let expected: Vec<Rational> = unit_vector::<Rational>(n, len).into_iter().map(|x| x / int(n as i64 + 1)).collect();
        prop_assert_eq!(d, expected);
    }

    #[test]
    fn hardy_inequality(re in proptest::collection::vec(-1.0f64..1.0, 1..200), im in proptest::collection::vec(-1.0f64..1.0, 1..200)) {
        let a: Vec<Complex64> = re.iter().zip(&im).map(|(x, y)| Complex64::new(*x, *y)).collect();
        let norm2: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!(cesaro_norm_squared(&a).hi <= 4.0 * norm2);
    }

    #[test]
    fn fejer_mean_matches_triangular_weights(
        coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6),
        n in 1usize..20,
    ) {
        // f(θ) = Σ_k c_k e^{ikθ} for k = −d..=d, centred on index d.
        let d = coeffs.len() as i64 / 2;
        let c: Vec<Complex64> = coeffs.iter().map(|(x, y)| Complex64::new(*x, *y)).collect();
        let eval = |theta: f64, weight: &dyn Fn(i64) -> f64| -> Complex64 {
            c.iter()
                .enumerate()
                .map(|(i, ci)| {
                    let k = i as i64 - d;
                    ci * weight(k) * Complex64::from_polar(1.0, k as f64 * theta)
                })
                .sum()
        };
        let m = default_grid(n.max(2 * d as usize));
        let f = SampledCircleFunction::from_fn(m, |t| eval(t, &|_| 1.0));
        let sigma = fejer_mean(&f, n).unwrap();
        let weight = |k: i64| (1.0 - k.abs() as f64 / (n as f64 + 1.0)).max(0.0);
        for (j, v) in sigma.samples.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            prop_assert!((v - eval(theta, &weight)).norm() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn quadratic_tail_encloses_partial_sum_oracle(k in 1u64..5000) {
        // Σ_{j=K+1}^{K+L} 1/j², smallest terms first, plus the integral sandwich
        // 1/(K+L+1) ≤ Σ_{j>K+L} 1/j² ≤ 1/(K+L).
        let l = 1_000_000u64;
        let head: f64 = (k + 1..=k + l).rev().map(|j| 1.0 / (j as f64 * j as f64)).sum();
        let lo = head + 1.0 / (k + l + 1) as f64;
        let hi = head + 1.0 / (k + l) as f64;
        let b = quadratic_tail(k);
        prop_assert!(b.lo <= hi + 1e-15 && b.hi >= lo - 1e-15, "{b:?} vs [{lo}, {hi}]");
        prop_assert!(b.hi - b.lo < 1e-8);
    }

    #[test]
    fn eigenvectors_bm(m in 0usize..=10) {
        let n = m + 40;
        let b = eigenvector_bm(m, n);
        let cb = apply_cesaro(&b);
        let scale = rat(1, m as i64 + 1);
        for (x, y) in cb.iter().zip(&b) {
            prop_assert_eq!(x, &(y * &scale));
        }
        prop_assert_eq!(b[m].numer(), &BigInt::from(1));
    }

    #[test]
    fn random_sign_roots_at_high_precision(signs in proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 12)) {
        let sigma = SignPattern::new(signs).unwrap();
        prop_assert!(root_residual(&sigma, 12, Precision::Bits(256)).unwrap() < 1e-40);
    }
}
