use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use super::{build, multiply_chain, multiply_exact_block, Exactness, MatrixName, MatrixTruncation, Structure, Truncation};
use crate::numerics::{int, quadratic_tail_with, telescoping_tail, to_f64, Bracket, Rational};
use crate::sequences::{apply_cesaro, eigenvector_bm, unit_vector};
use crate::{Error, Result};

/// Tail horizon for the bracketed products.
pub const DEFAULT_HORIZON: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ExactPass,
    BoundedPass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ExactPass => "exact-pass",
            Verdict::BoundedPass => "bounded-pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: String,
    pub n: usize,
    pub block: usize,
    pub verdict: Verdict,
    pub max_residual: f64,
    pub tail_bound: f64,
    /// First entry (row, column) at which the two sides disagree.
    pub offending: Option<(usize, usize)>,
    pub detail: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    fn failure(identity: String, n: usize, block: usize, detail: String) -> Self {
        IdentityReport {
            identity,
            n,
            block,
            verdict: Verdict::Fail,
            max_residual: f64::INFINITY,
            tail_bound: 0.0,
            offending: None,
            detail: Some(detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Identity {
    /// W² = I.
    WSquared,
    /// C = W·D·W.
    CesaroFactorization,
    /// C·C* = L with L_ij = 1/(max(i,j)+1).
    LFactorization,
    /// (I−C)(I−C)* = diag(n/(n+1)).
    DefectDiagonal,
    /// T·C = C·T for T = W·diag·W.
    HausdorffCommutation(Vec<Rational>),
    /// W·T·W recovers the diagonal of a Hausdorff matrix.
    HausdorffRecovery(Vec<Rational>),
    /// The Deddens matrix commutes with C*.
    DeddensCommutation(Rational),
    /// Shifting column n of [H_g] down by n places gives [C_g].
    ColumnShift(Vec<Rational>),
    /// E_λ·E_μ = E_{λμ}.
    EulerSemigroup(Rational, Rational),
    /// C e_n − C e_{n+1} = e_n/(n+1).
    RangeIdentities,
    /// C b_m = b_m/(m+1) for every m in the block.
    BmEigen,
    /// HolderOrder(r) = C^r.
    HolderPower(u32),
    /// H = B·C, bracketed.
    HilbertFactorization,
    /// C*·D·C = C·C* with the interrupter diagonal, telescoped exactly.
    InterrupterFactorization,
    /// C* = A·C, bracketed.
    ContractionFactorization,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::WSquared => f.write_str("W^2 = I"),
            Identity::CesaroFactorization => f.write_str("C = W D W"),
            Identity::LFactorization => f.write_str("C C* = L"),
            Identity::DefectDiagonal => f.write_str("(I-C)(I-C)* = diag(n/(n+1))"),
            Identity::HausdorffCommutation(_) => f.write_str("T C = C T"),
            Identity::HausdorffRecovery(_) => f.write_str("W T W = diag"),
            Identity::DeddensCommutation(a) => write!(f, "Deddens({a}) C* = C* Deddens({a})"),
            Identity::ColumnShift(_) => f.write_str("column-shift [H_g] -> [C_g]"),
            Identity::EulerSemigroup(l, m) => write!(f, "E({l}) E({m}) = E({})", l * m),
            Identity::RangeIdentities => f.write_str("C e_n - C e_(n+1) = e_n/(n+1)"),
            Identity::BmEigen => f.write_str("C b_m = b_m/(m+1)"),
            Identity::HolderPower(r) => write!(f, "holder({r}) = C^{r}"),
            Identity::HilbertFactorization => f.write_str("H = B C"),
            Identity::InterrupterFactorization => f.write_str("C* D C = C C*"),
            Identity::ContractionFactorization => f.write_str("C* = A C"),
        }
    }
}

/// Products whose entries are infinite sums with O(1/k²) terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailPair {
    /// B·C, terms 1/((i+k+1)(i+k+2)) ≤ 1/(k(k+1)).
    BC,
    /// C*·D·C with D the interrupter, terms 1/((k+1)(k+2)).
    CStarDC,
    /// A·C, terms 1/((k+1)(k+2)) past the subdiagonal.
    AC,
    /// C*·C, terms 1/(k+1)².
    CStarC,
}

impl fmt::Display for TailPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailPair::BC => "B C",
            TailPair::CStarDC => "C* D C",
            TailPair::AC => "A C",
            TailPair::CStarC => "C* C",
        })
    }
}

/// Bracketed M×M block of an infinite product.
#[derive(Clone, Debug)]
pub struct TailProduct {
    pub pair: TailPair,
    pub m: usize,
    pub horizon: usize,
    /// Exact partial sums over k < horizon, when they are rational-friendly.
    pub partial: Option<Vec<Rational>>,
    /// Exact value of the whole sum, when the tail telescopes.
    pub exact: Option<Vec<Rational>>,
    pub brackets: Vec<Bracket>,
    /// Bound on the omitted tail, per entry.
    pub tail_bounds: Vec<f64>,
}

impl TailProduct {
    pub fn get(&self, i: usize, j: usize) -> Bracket {
        self.brackets[i * self.m + j]
    }
}

/// prefix[k] = Σ_{n<k} 1/((n+1)(n+2)), summed term by term.
fn telescoping_prefix(len: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len + 1);
    let mut acc = Rational::zero();
    out.push(acc.clone());
    for n in 0..len as u64 {
        acc += Rational::new(1.into(), ((n + 1) * (n + 2)).into());
        out.push(acc.clone());
    }
    out
}

pub fn multiply_with_tail(pair: TailPair, m: usize, horizon: usize) -> Result<TailProduct> {
    if horizon < 2 * m {
        return Err(Error::InvalidParameter(alloc::format!("horizon {horizon} too short for block {m}")));
    }
    let mut brackets = Vec::with_capacity(m * m);
    let mut tail_bounds = Vec::with_capacity(m * m);
    let mut partial = Vec::new();
    let mut exact = Vec::new();
    match pair {
        TailPair::CStarC => {
            for i in 0..m {
                for j in 0..m {
                    let k0 = i.max(j);
                    let b = quadratic_tail_with(k0 as u64, horizon - k0);
                    brackets.push(b);
                    tail_bounds.push(b.width());
                }
            }
        }
        _ => {
            let prefix = telescoping_prefix(horizon + m);
            // Σ_{k≥T} 1/(k(k+1)) = 1/T majorizes every omitted tail.
            let majorant = 1.0 / horizon as f64;
            for i in 0..m {
                for j in 0..m {
                    let sum = match pair {
                        // Σ_{k=j}^{T−1} 1/((i+k+1)(i+k+2)).
                        TailPair::BC => &prefix[i + horizon] - &prefix[i + j],
                        _ => {
                            let k0 = i.max(j);
                            let mut s = &prefix[horizon] - &prefix[k0];
                            // A's subdiagonal entry −i/(i+1) meets C_{i−1,j} = 1/i.
                            if pair == TailPair::AC && i >= 1 && i - 1 >= j {
                                s -= Rational::new(1.into(), (i as u64 + 1).into());
                            }
                            s
                        }
                    };
                    if pair == TailPair::CStarDC {
                        let total = &sum + telescoping_tail(horizon as u64);
                        brackets.push(Bracket::from_rational(&total));
                        tail_bounds.push(0.0);
                        exact.push(total);
                    } else {
                        let lo = Bracket::from_rational(&sum);
                        brackets.push(Bracket::new(lo.lo, (lo.hi + majorant).next_up()));
                        tail_bounds.push(majorant);
                    }
                    partial.push(sum);
                }
            }
        }
    }
    Ok(TailProduct {
        pair,
        m,
        horizon,
        partial: (!partial.is_empty()).then_some(partial),
        exact: (!exact.is_empty()).then_some(exact),
        brackets,
        tail_bounds,
    })
}

/// Moves column n of H down by n places; entry (n+k, n) = H_{k,n}.
pub fn column_shift(h: &MatrixTruncation) -> MatrixTruncation {
    let n = h.size();
    let name = match &h.name {
        MatrixName::Hilbert => MatrixName::Cesaro,
        MatrixName::GeneralizedHilbert(g) => MatrixName::GeneralizedCesaro(g.clone()),
        other => MatrixName::Custom(alloc::format!("shifted {other}")),
    };
    Truncation::from_fn(name, Structure::Lower, h.exactness, n, |i, j| h.get(i - j, j).clone())
}

fn compare_exact(identity: String, n: usize, lhs: &MatrixTruncation, rhs: &MatrixTruncation) -> IdentityReport {
    let (residual, _) = lhs.max_abs_diff(rhs);
    let at = (0..lhs.size().min(rhs.size()))
        .flat_map(|i| (0..lhs.size().min(rhs.size())).map(move |j| (i, j)))
        .find(|&(i, j)| lhs.get(i, j) != rhs.get(i, j));
    let equal = lhs.size() == rhs.size() && at.is_none();
    IdentityReport {
        identity,
        n,
        block: lhs.size(),
        verdict: if equal { Verdict::ExactPass } else { Verdict::Fail },
        max_residual: residual,
        tail_bound: 0.0,
        offending: if equal { None } else { at },
        detail: None,
    }
}

fn custom(rows: usize, f: impl FnMut(usize, usize) -> Rational) -> MatrixTruncation {
    Truncation::from_fn(MatrixName::Custom("expected".into()), Structure::Full, Exactness::Exact, rows, f)
}

fn exact_sides(identity: &Identity, n: usize, m: usize) -> Result<(MatrixTruncation, MatrixTruncation)> {
    let b = |name: MatrixName| build(&name, n);
    Ok(match identity {
        Identity::WSquared => {
            let w = b(MatrixName::BinomialW)?;
            (multiply_exact_block(&w, &w, m)?, MatrixTruncation::identity(m))
        }
        Identity::CesaroFactorization => {
            let w = b(MatrixName::BinomialW)?;
            let d = b(MatrixName::DiagReciprocal)?;
            (multiply_chain(&[&w, &d, &w], m)?, b(MatrixName::Cesaro)?.block(m))
        }
        Identity::LFactorization => {
            let c = b(MatrixName::Cesaro)?;
            (multiply_exact_block(&c, &c.transpose(), m)?, b(MatrixName::LMax)?.block(m))
        }
        Identity::DefectDiagonal => {
            let c = b(MatrixName::Cesaro)?;
            let defect = MatrixTruncation::identity(n).sub(&c)?;
            let lhs = multiply_exact_block(&defect, &defect.transpose(), m)?;
            (lhs, custom(m, |i, j| if i == j { Rational::new(i.into(), (i + 1).into()) } else { Rational::zero() }))
        }
        Identity::HausdorffCommutation(diag) => {
            let t = b(MatrixName::HausdorffDiag(diag.clone()))?;
            let c = b(MatrixName::Cesaro)?;
            (multiply_exact_block(&t, &c, m)?, multiply_exact_block(&c, &t, m)?)
        }
        Identity::HausdorffRecovery(diag) => {
            let t = b(MatrixName::HausdorffDiag(diag.clone()))?;
            let w = b(MatrixName::BinomialW)?;
            let lhs = multiply_chain(&[&w, &t, &w], m)?;
            (lhs, custom(m, |i, j| if i == j { diag[i].clone() } else { Rational::zero() }))
        }
        Identity::DeddensCommutation(alpha) => {
            let d = b(MatrixName::Deddens(alpha.clone()))?;
            let cstar = b(MatrixName::CesaroAdjoint)?;
            (multiply_exact_block(&d, &cstar, m)?, multiply_exact_block(&cstar, &d, m)?)
        }
        Identity::ColumnShift(g) => {
            let shifted = column_shift(&b(MatrixName::GeneralizedHilbert(g.clone()))?);
            (shifted.block(m), b(MatrixName::GeneralizedCesaro(g.clone()))?.block(m))
        }
        Identity::EulerSemigroup(l, mu) => {
            let lhs = multiply_exact_block(&b(MatrixName::Euler(l.clone()))?, &b(MatrixName::Euler(mu.clone()))?, m)?;
            (lhs, b(MatrixName::Euler(l * mu))?.block(m))
        }
        Identity::HolderPower(r) => {
            let c = b(MatrixName::Cesaro)?;
            let mut power = c.block(m);
            for _ in 1..*r {
                power = multiply_exact_block(&power, &c, m)?;
            }
            (b(MatrixName::HolderOrder(*r))?.block(m), power)
        }
        Identity::RangeIdentities => {
            // Row n holds C e_n − C e_{n+1}; the expected row is e_n/(n+1).
            let lhs = custom(m, |_, _| Rational::zero());
            let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
            for k in 0..m {
                let a = apply_cesaro(&unit_vector::<Rational>(k, n));
                let c = apply_cesaro(&unit_vector::<Rational>(k + 1, n + 1));
                rows.push((0..m).map(|j| &a[j] - &c[j]).collect());
            }
            let lhs = Truncation::from_fn(lhs.name, Structure::Full, Exactness::Exact, m, |i, j| rows[i][j].clone());
            (lhs, custom(m, |i, j| if i == j { Rational::new(1.into(), (i + 1).into()) } else { Rational::zero() }))
        }
        Identity::BmEigen => {
            // Row k holds C b_k (truncated to the block), expected b_k/(k+1).
            let rows: Vec<Vec<Rational>> = (0..m).map(|k| apply_cesaro(&eigenvector_bm(k, m))).collect();
            let lhs = custom(m, |i, j| rows[i][j].clone());
            let rhs = custom(m, |i, j| eigenvector_bm(i, m)[j].clone() / int(i as i64 + 1));
            (lhs, rhs)
        }
        Identity::HilbertFactorization | Identity::InterrupterFactorization | Identity::ContractionFactorization => {
            return Err(Error::InvalidParameter(alloc::format!("{identity} is a bracketed identity")));
        }
    })
}

fn check_bounded(identity: &Identity, m: usize, horizon: usize, tol: f64) -> Result<IdentityReport> {
    let (pair, target) = match identity {
        Identity::HilbertFactorization => (TailPair::BC, build(&MatrixName::Hilbert, m)?),
        Identity::InterrupterFactorization => (TailPair::CStarDC, build(&MatrixName::LMax, m)?),
        Identity::ContractionFactorization => (TailPair::AC, build(&MatrixName::CesaroAdjoint, m)?),
        _ => unreachable!("exact identities are dispatched elsewhere"),
    };
    let product = multiply_with_tail(pair, m, horizon)?;
    let mut worst = 0.0f64;
    let mut bound = 0.0f64;
    let mut offending = None;
    for i in 0..m {
        for j in 0..m {
            let idx = i * m + j;
            let t = target.get(i, j);
            let residual = match (&product.exact, &product.partial) {
                (Some(exact), _) => to_f64(&(t - &exact[idx]).abs()),
                (None, Some(partial)) => to_f64(&(t - &partial[idx]).abs()),
                (None, None) => {
                    let b = product.get(i, j);
                    let tv = to_f64(t);
                    (tv - b.mid()).abs()
                }
            };
            let tb = product.tail_bounds[idx];
            if residual > tb + tol && offending.is_none() {
                offending = Some((i, j));
            }
            worst = worst.max(residual);
            bound = bound.max(tb);
        }
    }
    Ok(IdentityReport {
        identity: identity.to_string(),
        n: horizon,
        block: m,
        verdict: if offending.is_none() { Verdict::BoundedPass } else { Verdict::Fail },
        max_residual: worst,
        tail_bound: bound,
        offending,
        detail: None,
    })
}

/// Runs one identity on the M×M block of N-truncations. Exact identities pass
/// only with zero residual; the bracketed ones use N as the tail horizon and
/// pass when every residual is within the tail bound plus `tol`.
pub fn check_identity(identity: &Identity, n: usize, m: usize, tol: f64) -> IdentityReport {
    let name = identity.to_string();
    if m > n || m == 0 {
        return IdentityReport::failure(name, n, m, alloc::format!("block {m} must lie in 1..={n}"));
    }
    let outcome = match identity {
        Identity::HilbertFactorization | Identity::InterrupterFactorization | Identity::ContractionFactorization => {
            check_bounded(identity, m, n, tol)
        }
        _ => exact_sides(identity, n, m).map(|(lhs, rhs)| compare_exact(name.clone(), n, &lhs, &rhs)),
    };
    outcome.unwrap_or_else(|e| IdentityReport::failure(name, n, m, e.to_string()))
}
