//! Square roots of the Cesàro matrix.
//!
//! Every sign pattern σ gives a lower-triangular root W·diag(σ_k/√(k+1))·W.
//! Only σ ≡ ±1 are bounded; those agree with the √(1−z) series in I − C.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use crate::matrices::{Exactness, IdentityReport, MatrixName, MatrixTruncation, Structure, Truncation, Verdict};
use crate::numerics::{binomial, inv_sqrt_mantissa, rat, to_f64, Rational, Scalar};
use crate::{Error, Result};

/// Bits used to generate double-precision roots before rounding each entry.
pub const DOUBLE_SOURCE_BITS: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern(Vec<i8>);

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|s| **s != 1 && **s != -1) {
            return Err(Error::InvalidParameter(format!("sign {bad} is not ±1")));
        }
        Ok(SignPattern(signs))
    }

    pub fn plus(n: usize) -> Self {
        SignPattern(alloc::vec![1; n])
    }

    pub fn minus(n: usize) -> Self {
        SignPattern(alloc::vec![-1; n])
    }

    pub fn random<R: RngCore>(n: usize, rng: &mut R) -> Self {
        SignPattern((0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect())
    }

    pub fn negated(&self) -> Self {
        SignPattern(self.0.iter().map(|s| -s).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// σ(k+1), the sign on the k-th diagonal slot.
    pub fn sign(&self, k: usize) -> i8 {
        self.0[k]
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// Compact form such as `+-++`.
    pub fn compact(&self) -> String {
        self.0.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Bits(u32),
}

impl core::fmt::Display for Precision {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Precision::Double => f.write_str("double"),
            Precision::Bits(b) => write!(f, "{b}-bit"),
        }
    }
}

/// c_0 = 1, c_k = c_{k−1}(2k−3)/(2k): the Taylor coefficients of √(1−z).
pub fn sqrt_series_coefficients(k: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k + 1);
    let mut c = Rational::one();
    out.push(c.clone());
    for j in 1..=k as i64 {
        c = c * rat(2 * j - 3, 2 * j);
        out.push(c.clone());
    }
    out
}

/// Σ_{k>K} |c_k|, which equals Σ_{k≤K} c_k because the full series sums to √0.
pub fn sqrt_series_tail(k: usize) -> Rational {
    sqrt_series_coefficients(k).into_iter().sum()
}

/// Numerators over 2^bits of A^σ_ij = C(i,j) Σ_ℓ (−1)^ℓ C(i−j,ℓ) σ_{j+ℓ}/√(j+ℓ+1).
fn closed_form_numerators(sigma: &SignPattern, n: usize, bits: u32) -> Vec<Vec<BigInt>> {
    let d: Vec<BigInt> = (0..n).map(|k| inv_sqrt_mantissa(k as u64 + 1, bits) * BigInt::from(sigma.sign(k))).collect();
    let binom: Vec<Vec<BigInt>> = (0..n as u64).map(|i| (0..=i as i64).map(|j| binomial(i, j)).collect()).collect();
    (0..n)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for l in 0..=i - j {
                        let term = &binom[i - j][l] * &d[j + l];
                        if l % 2 == 0 {
                            acc += term;
                        } else {
                            acc -= term;
                        }
                    }
                    &binom[i][j] * acc
                })
                .collect()
        })
        .collect()
}

fn check_pattern(sigma: &SignPattern, n: usize) -> Result<()> {
    if sigma.len() < n {
        return Err(Error::InvalidParameter(format!("sign pattern has {} entries, need {n}", sigma.len())));
    }
    Ok(())
}

/// A^σ with reciprocal square roots rounded to `bits` fractional bits and
/// everything after that exact.
pub fn closed_form_root(sigma: &SignPattern, n: usize, bits: u32) -> Result<MatrixTruncation> {
    check_pattern(sigma, n)?;
    let nums = closed_form_numerators(sigma, n, bits);
    let scale = BigInt::one() << bits as usize;
    Ok(Truncation::from_fn(root_name(sigma), Structure::Lower, Exactness::Approximate, n, |i, j| {
        Rational::new(nums[i][j].clone(), scale.clone())
    }))
}

/// A^σ with each entry rounded to the nearest double from a wide evaluation.
pub fn closed_form_root_f64(sigma: &SignPattern, n: usize) -> Result<Truncation<f64>> {
    Ok(closed_form_root(sigma, n, DOUBLE_SOURCE_BITS)?.to_f64())
}

fn root_name(sigma: &SignPattern) -> MatrixName {
    MatrixName::Custom(format!("root[{}]", sigma.compact()))
}

/// Σ_{k≤K} c_k (I − C_N)^k, exactly.
///
/// Runs Horner's scheme on integer matrices: with L = lcm(1..N), L(I − C) is
/// integral, and every c_k has a power-of-two denominator dividing 2^{2K}.
pub fn series_root(k: usize, n: usize) -> Result<MatrixTruncation> {
    if n == 0 {
        return Err(Error::InvalidParameter("truncation must be positive".into()));
    }
    let l = (1..=n as u64).fold(BigInt::one(), |acc, m| {
        let m = BigInt::from(m);
        let g = num_integer::Integer::gcd(&acc, &m);
        acc * m / g
    });
    // M = L(I − C): diagonal L·i/(i+1), below the diagonal −L/(i+1).
    let step: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let share = &l / BigInt::from(i + 1);
            (0..=i).map(|j| if i == j { &l - &share } else { -share.clone() }).collect()
        })
        .collect();
    let scale = BigInt::one() << (2 * k);
    let coeffs: Vec<BigInt> = sqrt_series_coefficients(k)
        .iter()
        .map(|c| {
            let v = c * Rational::from_integer(scale.clone());
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    // R_K = c'_K I; R_j = R_{j+1} M + c'_j L^{K−j} I; the root is R_0/(2^{2K} L^K).
    let mut acc: Vec<Vec<BigInt>> = (0..n).map(|i| (0..=i).map(|j| if i == j { coeffs[k].clone() } else { BigInt::zero() }).collect()).collect();
    let mut l_pow = BigInt::one();
    for j in (0..k).rev() {
        l_pow *= &l;
        let mut next: Vec<Vec<BigInt>> = (0..n).map(|i| alloc::vec![BigInt::zero(); i + 1]).collect();
        for i in 0..n {
            for m in 0..=i {
                let a = &acc[i][m];
                if a.is_zero() {
                    continue;
                }
                for (c, s) in next[i][..=m].iter_mut().zip(&step[m]) {
                    *c += a * s;
                }
            }
            next[i][i] += &coeffs[j] * &l_pow;
        }
        acc = next;
    }
    let denom = scale * l_pow;
    Ok(Truncation::from_fn(MatrixName::Custom(format!("series-root[{k}]")), Structure::Lower, Exactness::Exact, n, |i, j| {
        Rational::new(acc[i][j].clone(), denom.clone())
    }))
}

/// Block of A·A against the Cesàro block; passes iff the largest residual is at most `tol`.
pub fn verify_root<T: Scalar>(a: &Truncation<T>, n: usize, tol: f64) -> IdentityReport {
    let mut report = IdentityReport {
        identity: format!("({})² = C", a.name),
        n: a.size(),
        block: n,
        verdict: Verdict::Fail,
        max_residual: f64::INFINITY,
        tail_bound: 0.0,
        offending: None,
        detail: None,
    };
    if n > a.size() {
        report.detail = Some(format!("block {n} exceeds truncation {}", a.size()));
        return report;
    }
    if !matches!(a.structure, Structure::Lower | Structure::Diagonal) || !a.structure_holds() {
        report.detail = Some("root candidate must be lower triangular".into());
        return report;
    }
    let block = a.block(n);
    let square = match block.matmul(&block) {
        Ok(s) => s,
        Err(e) => {
            report.detail = Some(format!("{e}"));
            return report;
        }
    };
    let cesaro = Truncation::from_fn(MatrixName::Cesaro, Structure::Lower, Exactness::Exact, n, |i, _| {
        T::from_ratio(1, i as u64 + 1)
    });
    let (worst, _) = square.max_abs_diff(&cesaro);
    report.max_residual = worst;
    report.offending = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| (square.get(i, j).clone() - cesaro.get(i, j).clone()).magnitude() > tol);
    report.verdict = if worst == 0.0 && square == cesaro {
        Verdict::ExactPass
    } else if worst <= tol {
        Verdict::BoundedPass
    } else {
        Verdict::Fail
    };
    report
}

/// Residual of the closed-form root at a working precision.
pub fn root_residual(sigma: &SignPattern, n: usize, precision: Precision) -> Result<f64> {
    Ok(match precision {
        Precision::Double => verify_root(&closed_form_root_f64(sigma, n)?, n, f64::INFINITY).max_residual,
        Precision::Bits(b) => verify_root(&closed_form_root(sigma, n, b)?, n, f64::INFINITY).max_residual,
    })
}

/// Largest absolute entry of each leading block: evidence of growth for
/// mixed patterns, not a boundedness test.
pub fn block_entry_growth(a: &MatrixTruncation, sizes: &[usize]) -> Vec<f64> {
    sizes
        .iter()
        .map(|&m| {
            let m = m.min(a.size());
            (0..m).flat_map(|i| a.row(i)[..m].iter().map(|v| to_f64(&v.abs()))).fold(0.0, f64::max)
        })
        .collect()
}

/// max |A − B| over the leading block, exactly.
pub fn max_entry_distance(a: &MatrixTruncation, b: &MatrixTruncation, m: usize) -> Rational {
    let mut worst = Rational::zero();
    for i in 0..m {
        for j in 0..m {
            let d = (a.get(i, j) - b.get(i, j)).abs();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}
