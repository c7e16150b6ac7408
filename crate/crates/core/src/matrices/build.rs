use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Exactness, MatrixTruncation, Structure, Truncation};
use crate::numerics::{binomial, int, powi_exact, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixName {
    Cesaro,
    CesaroInverse,
    CesaroAdjoint,
    BinomialW,
    DiagReciprocal,
    DiagInterrupter,
    Hilbert,
    BennettB,
    LMax,
    ShiftS,
    ContractionA,
    Euler(Rational),
    HausdorffDiag(Vec<Rational>),
    Deddens(Rational),
    HolderOrder(u32),
    CesaroOrder(u32),
    /// Coefficients g_0, g_1, …; g_0 is ignored.
    GeneralizedCesaro(Vec<Rational>),
    GeneralizedHilbert(Vec<Rational>),
    Custom(String),
}

impl MatrixName {
    pub fn slug(&self) -> &'static str {
        match self {
            MatrixName::Cesaro => "cesaro",
            MatrixName::CesaroInverse => "cesaro-inverse",
            MatrixName::CesaroAdjoint => "cesaro-adjoint",
            MatrixName::BinomialW => "binomial-w",
            MatrixName::DiagReciprocal => "diag-reciprocal",
            MatrixName::DiagInterrupter => "diag-interrupter",
            MatrixName::Hilbert => "hilbert",
            MatrixName::BennettB => "bennett-b",
            MatrixName::LMax => "l-max",
            MatrixName::ShiftS => "shift",
            MatrixName::ContractionA => "contraction-a",
            MatrixName::Euler(_) => "euler",
            MatrixName::HausdorffDiag(_) => "hausdorff",
            MatrixName::Deddens(_) => "deddens",
            MatrixName::HolderOrder(_) => "holder",
            MatrixName::CesaroOrder(_) => "cesaro-order",
            MatrixName::GeneralizedCesaro(_) => "generalized-cesaro",
            MatrixName::GeneralizedHilbert(_) => "generalized-hilbert",
            MatrixName::Custom(_) => "custom",
        }
    }
}

impl fmt::Display for MatrixName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixName::Euler(l) => write!(f, "euler({l})"),
            MatrixName::Deddens(a) => write!(f, "deddens({a})"),
            MatrixName::HolderOrder(r) => write!(f, "holder({r})"),
            MatrixName::CesaroOrder(r) => write!(f, "cesaro-order({r})"),
            MatrixName::Custom(s) => f.write_str(s),
            other => f.write_str(other.slug()),
        }
    }
}

fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = alloc::vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

fn coefficient(g: &[Rational], k: usize) -> Rational {
    g.get(k).cloned().unwrap_or_else(Rational::zero)
}

/// W·diag(z)·W on the leading len(z) block; lower triangular and exact.
pub fn hausdorff(name: MatrixName, diag: &[Rational]) -> MatrixTruncation {
    let n = diag.len();
    let w = build(&MatrixName::BinomialW, n).expect("W is always constructible");
    let d = MatrixTruncation::diagonal(MatrixName::DiagReciprocal, diag);
    let wd = w.matmul(&d).expect("square blocks");
    wd.matmul(&w).expect("square blocks").renamed(name)
}

/// r!·z^r / ((1+z)(1+2z)⋯(1+(r−1)z)).
fn cesaro_order_symbol(r: u32, z: &Rational) -> Rational {
    let mut num = powi_exact(z, r as u64);
    for k in 1..=r as i64 {
        num *= int(k);
    }
    let mut den = Rational::one();
    for k in 1..r as i64 {
        den *= Rational::one() + int(k) * z;
    }
    num / den
}

pub fn build(name: &MatrixName, n: usize) -> Result<MatrixTruncation> {
    use Exactness::Exact;
    use Structure::*;
    if n == 0 {
        return Err(Error::InvalidParameter("truncation size must be at least 1".into()));
    }
    let recip = |k: usize| Rational::new(BigInt::one(), BigInt::from(k));
    let named = name.clone();
    let m = match name {
        MatrixName::Cesaro => Truncation::from_fn(named, Lower, Exact, n, |i, _| recip(i + 1)),
        MatrixName::CesaroInverse => Truncation::from_fn(named, Lower, Exact, n, |i, j| {
            if i == j {
                int(i as i64 + 1)
            } else if j + 1 == i {
                int(-(j as i64) - 1)
            } else {
                Rational::zero()
            }
        }),
        MatrixName::CesaroAdjoint => Truncation::from_fn(named, Upper, Exact, n, |_, j| recip(j + 1)),
        MatrixName::BinomialW => {
            let p = pascal(n);
            Truncation::from_fn(named, Lower, Exact, n, |i, j| {
                let v = Rational::from_integer(p[i][j].clone());
                if j % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
        }
        MatrixName::DiagReciprocal => Truncation::from_fn(named, Diagonal, Exact, n, |i, _| recip(i + 1)),
        MatrixName::DiagInterrupter => {
            Truncation::from_fn(named, Diagonal, Exact, n, |i, _| Rational::new((i + 1).into(), (i + 2).into()))
        }
        MatrixName::Hilbert => Truncation::from_fn(named, Full, Exact, n, |j, k| recip(j + k + 1)),
        MatrixName::BennettB => Truncation::from_fn(named, Full, Exact, n, |j, k| {
            Rational::new((k + 1).into(), BigInt::from(j + k + 1) * BigInt::from(j + k + 2))
        }),
        MatrixName::LMax => Truncation::from_fn(named, Full, Exact, n, |i, j| recip(i.max(j) + 1)),
        MatrixName::ShiftS => Truncation::from_fn(named, Lower, Exact, n, |i, j| {
            if i == j + 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        }),
        // C*·C⁻¹: 1/(j+2) on and above the diagonal, −i/(i+1) just below it.
        MatrixName::ContractionA => Truncation::from_fn(named, Full, Exact, n, |i, j| {
            if j >= i {
                recip(j + 2)
            } else if j + 1 == i {
                Rational::new(BigInt::from(-(i as i64)), BigInt::from(i + 1))
            } else {
                Rational::zero()
            }
        }),
        MatrixName::Euler(lambda) => {
            let diag: Vec<Rational> = (0..n).map(|k| powi_exact(lambda, k as u64)).collect();
            hausdorff(named, &diag)
        }
        MatrixName::HausdorffDiag(z) => {
            if z.len() < n {
                return Err(Error::InvalidParameter(alloc::format!("diagonal has {} entries, need {n}", z.len())));
            }
            hausdorff(named, &z[..n])
        }
        MatrixName::Deddens(alpha) => {
            if alpha < &Rational::zero() || alpha > &Rational::one() {
                return Err(Error::InvalidParameter(alloc::format!("alpha = {alpha} must lie in [0, 1]")));
            }
            let beta = Rational::one() - alpha;
            Truncation::from_fn(named, Upper, Exact, n, |k, col| {
                Rational::from_integer(binomial(col as u64, k as i64))
                    * powi_exact(alpha, (col - k) as u64)
                    * powi_exact(&beta, k as u64)
            })
        }
        MatrixName::HolderOrder(r) | MatrixName::CesaroOrder(r) => {
            if *r < 1 {
                return Err(Error::InvalidParameter("order r must be at least 1".into()));
            }
            let diag: Vec<Rational> = (0..n)
                .map(|k| {
                    let z = recip(k + 1);
                    match name {
                        MatrixName::HolderOrder(_) => powi_exact(&z, *r as u64),
                        _ => cesaro_order_symbol(*r, &z),
                    }
                })
                .collect();
            hausdorff(named, &diag)
        }
        MatrixName::GeneralizedCesaro(g) => Truncation::from_fn(named, Lower, Exact, n, |i, j| {
            let d = i - j + 1;
            coefficient(g, d) * int(d as i64) * recip(i + 1)
        }),
        MatrixName::GeneralizedHilbert(g) => Truncation::from_fn(named, Full, Exact, n, |i, j| {
            coefficient(g, i + 1) * int(i as i64 + 1) * recip(i + j + 1)
        }),
        MatrixName::Custom(s) => return Err(Error::UnknownName(s.clone())),
    };
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::multiply_exact_block;
    use crate::numerics::rat;

    fn rows(m: &MatrixTruncation) -> Vec<Vec<Rational>> {
        m.rows().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn cesaro_and_inverse_displays() {
        let c = build(&MatrixName::Cesaro, 3).unwrap();
        assert_eq!(
            rows(&c),
            [
                [int(1), int(0), int(0)],
                [rat(1, 2), rat(1, 2), int(0)],
                [rat(1, 3), rat(1, 3), rat(1, 3)]
            ]
        );
        let ci = build(&MatrixName::CesaroInverse, 3).unwrap();
        assert_eq!(rows(&ci), [[1, 0, 0], [-1, 2, 0], [0, -2, 3]].map(|r| r.map(int)));
        let prod = multiply_exact_block(&c, &ci, 3).unwrap();
        assert_eq!(prod, MatrixTruncation::identity(3).renamed(prod.name.clone()).with_lower());
    }

    impl MatrixTruncation {
        fn with_lower(mut self) -> Self {
            self.structure = Structure::Lower;
            self
        }
    }

    #[test]
    fn w_row_five() {
        let w = build(&MatrixName::BinomialW, 5).unwrap();
        assert_eq!(w.row(4), [1, -4, 6, -4, 1].map(int));
    }

    #[test]
    fn euler_closed_form() {
        let lambda = rat(2, 7);
        let e = build(&MatrixName::Euler(lambda.clone()), 12).unwrap();
        assert_eq!(e.row(1)[..2], [Rational::one() - &lambda, lambda.clone()]);
        // Oracle: C(i,j) λ^j (1−λ)^{i−j}.
        let mu = Rational::one() - &lambda;
        for i in 0..12 {
            for j in 0..=i {
                let expect = Rational::from_integer(binomial(i as u64, j as i64))
                    * powi_exact(&lambda, j as u64)
                    * powi_exact(&mu, (i - j) as u64);
                assert_eq!(e.get(i, j), &expect);
            }
        }
    }

    #[test]
    fn generalized_matrices_reduce_to_classical() {
        let g: Vec<Rational> = (0..40).map(|k| if k == 0 { int(7) } else { rat(1, k) }).collect();
        let cg = build(&MatrixName::GeneralizedCesaro(g.clone()), 30).unwrap();
        assert_eq!(cg.entries, build(&MatrixName::Cesaro, 30).unwrap().entries);
        let hg = build(&MatrixName::GeneralizedHilbert(g), 30).unwrap();
        assert_eq!(hg.entries, build(&MatrixName::Hilbert, 30).unwrap().entries);
    }

    #[test]
    fn orders_one_equal_cesaro() {
        let c = build(&MatrixName::Cesaro, 24).unwrap();
        assert_eq!(build(&MatrixName::HolderOrder(1), 24).unwrap().entries, c.entries);
        assert_eq!(build(&MatrixName::CesaroOrder(1), 24).unwrap().entries, c.entries);
    }

    #[test]
    fn holder_order_is_power() {
        let n = 48;
        let c = build(&MatrixName::Cesaro, n).unwrap();
        let mut power = c.clone();
        for r in 2..=4u32 {
            power = multiply_exact_block(&power, &c, n).unwrap();
            assert_eq!(build(&MatrixName::HolderOrder(r), n).unwrap().entries, power.entries, "r = {r}");
        }
    }

    #[test]
    fn cesaro_order_rows_are_stochastic() {
        for r in 1..=4 {
            let m = build(&MatrixName::CesaroOrder(r), 16).unwrap();
            for row in m.rows() {
                assert_eq!(row.iter().cloned().sum::<Rational>(), Rational::one());
            }
        }
        assert_eq!(cesaro_order_symbol(2, &rat(1, 3)), rat(2, 9) / rat(4, 3));
    }

    #[test]
    fn contraction_and_deddens_shapes() {
        let a = build(&MatrixName::ContractionA, 4).unwrap();
        assert_eq!(a.row(0), [rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5)]);
        assert_eq!(a.row(1), [rat(-1, 2), rat(1, 3), rat(1, 4), rat(1, 5)]);
        assert_eq!(a.row(2), [int(0), rat(-2, 3), rat(1, 4), rat(1, 5)]);
        // A = C*·C⁻¹ oracle on the leading block (upper · lower-bidiagonal closes on columns < N−1).
        let cstar = build(&MatrixName::CesaroAdjoint, 12).unwrap();
        let cinv = build(&MatrixName::CesaroInverse, 12).unwrap();
        let prod = cstar.matmul(&cinv).unwrap();
        let a12 = build(&MatrixName::ContractionA, 12).unwrap();
        for i in 0..12 {
            for j in 0..11 {
                assert_eq!(prod.get(i, j), a12.get(i, j));
            }
        }
        let d = build(&MatrixName::Deddens(rat(1, 2)), 3).unwrap();
        assert_eq!(d.row(0), [int(1), rat(1, 2), rat(1, 4)]);
        assert_eq!(d.row(1), [int(0), rat(1, 2), rat(1, 2)]);
        assert!(build(&MatrixName::Deddens(rat(3, 2)), 3).is_err());
        assert!(build(&MatrixName::HolderOrder(0), 3).is_err());
        assert!(build(&MatrixName::Custom("x".into()), 3).is_err());
        assert!(build(&MatrixName::Cesaro, 0).is_err());
    }
}
