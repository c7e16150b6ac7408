//! Leading blocks of the named infinite matrices, structure-aware products and
//! the identity suite.
//!
//! A product of two truncations equals the leading block of the infinite product
//! exactly when every entry sum stays inside the block: that is the case when the
//! left factor is lower triangular (the sum index is ≤ the row) or the right factor
//! is upper triangular (the sum index is ≤ the column). Everything else goes
//! through [`multiply_with_tail`].

mod build;
mod identities;

pub use build::{build, hausdorff, MatrixName};
pub use identities::{
    check_identity, column_shift, multiply_with_tail, Identity, IdentityReport, TailPair, Verdict,
    DEFAULT_HORIZON,
};

use alloc::vec::Vec;
use core::fmt;

use crate::numerics::{to_f64, Rational, Scalar};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    Lower,
    Upper,
    Diagonal,
    Full,
}

impl Structure {
    fn closes_left(self) -> bool {
        matches!(self, Structure::Lower | Structure::Diagonal)
    }

    fn closes_right(self) -> bool {
        matches!(self, Structure::Upper | Structure::Diagonal)
    }

    fn product(self, other: Structure) -> Structure {
        use Structure::*;
        match (self, other) {
            (Diagonal, s) | (s, Diagonal) => s,
            (Lower, Lower) => Lower,
            (Upper, Upper) => Upper,
            _ => Full,
        }
    }

    /// Whether (i, j) may be nonzero.
    pub fn allows(self, i: usize, j: usize) -> bool {
        match self {
            Structure::Lower => j <= i,
            Structure::Upper => j >= i,
            Structure::Diagonal => i == j,
            Structure::Full => true,
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Lower => "lower-triangular",
            Structure::Upper => "upper-triangular",
            Structure::Diagonal => "diagonal",
            Structure::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    Approximate,
}

/// N×N leading block of an infinite matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncation<T> {
    pub name: MatrixName,
    pub structure: Structure,
    pub exactness: Exactness,
    n: usize,
    entries: Vec<T>,
}

pub type MatrixTruncation = Truncation<Rational>;

impl<T: Scalar> Truncation<T> {
    pub fn from_fn<F: FnMut(usize, usize) -> T>(
        name: MatrixName,
        structure: Structure,
        exactness: Exactness,
        n: usize,
        mut f: F,
    ) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(if structure.allows(i, j) { f(i, j) } else { T::zero() });
            }
        }
        Truncation { name, structure, exactness, n, entries }
    }

    pub fn from_rows(name: MatrixName, structure: Structure, exactness: Exactness, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(bad.len(), n));
        }
        let t = Truncation { name, structure, exactness, n, entries: rows.into_iter().flatten().collect() };
        if !t.structure_holds() {
            return Err(Error::InvalidParameter(alloc::format!("entries violate declared {structure} structure")));
        }
        Ok(t)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(MatrixName::Custom("identity".into()), Structure::Diagonal, Exactness::Exact, n, |_, _| T::one())
    }

    pub fn diagonal(name: MatrixName, diag: &[T]) -> Self {
        Self::from_fn(name, Structure::Diagonal, Exactness::Exact, diag.len(), |i, _| diag[i].clone())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn renamed(mut self, name: MatrixName) -> Self {
        self.name = name;
        self
    }

    pub fn structure_holds(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.structure.allows(i, j) || self.get(i, j) == &T::zero()))
    }

    /// The leading m×m block.
    pub fn block(&self, m: usize) -> Self {
        let m = m.min(self.n);
        Truncation {
            name: self.name.clone(),
            structure: self.structure,
            exactness: self.exactness,
            n: m,
            entries: (0..m).flat_map(|i| self.row(i)[..m].iter().cloned()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let structure = match self.structure {
            Structure::Lower => Structure::Upper,
            Structure::Upper => Structure::Lower,
            s => s,
        };
        Self::from_fn(self.name.clone(), Structure::Full, self.exactness, self.n, |i, j| self.get(j, i).clone())
            .with_structure(structure)
    }

    fn with_structure(mut self, s: Structure) -> Self {
        self.structure = s;
        self
    }

    pub fn map<U: Scalar, F: FnMut(&T) -> U>(&self, f: F) -> Truncation<U> {
        Truncation {
            name: self.name.clone(),
            structure: self.structure,
            exactness: self.exactness,
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone()).renamed(self.name.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let structure = match (self.structure, other.structure) {
            (a, b) if a == b => a,
            (Structure::Diagonal, s) | (s, Structure::Diagonal) => s,
            _ => Structure::Full,
        };
        Ok(Truncation {
            name: MatrixName::Custom(alloc::format!("{} - {}", self.name, other.name)),
            structure,
            exactness: merge(self.exactness, other.exactness),
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
    }

    /// Plain product of the two finite blocks, skipping structural zeros.
    /// Whether it matches the infinite product is the caller's concern; see
    /// [`multiply_exact_block`].
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = alloc::vec![T::zero(); n * n];
        for i in 0..n {
            let (k_lo, k_hi) = match self.structure {
                Structure::Lower => (0, i + 1),
                Structure::Upper => (i, n),
                Structure::Diagonal => (i, i + 1),
                Structure::Full => (0, n),
            };
            for k in k_lo..k_hi {
                let a = self.get(i, k);
                if a == &T::zero() {
                    continue;
                }
                let (j_lo, j_hi) = match other.structure {
                    Structure::Lower => (0, k + 1),
                    Structure::Upper => (k, n),
                    Structure::Diagonal => (k, k + 1),
                    Structure::Full => (0, n),
                };
                for j in j_lo..j_hi {
                    out[i * n + j].mul_add_assign(a, other.get(k, j));
                }
            }
        }
        Ok(Truncation {
            name: MatrixName::Custom(alloc::format!("{}·{}", self.name, other.name)),
            structure: self.structure.product(other.structure),
            exactness: merge(self.exactness, other.exactness),
            n,
            entries: out,
        })
    }

    /// Largest entry magnitude of `self − other` and its position.
    pub fn max_abs_diff(&self, other: &Self) -> (f64, Option<(usize, usize)>) {
        let mut worst = (0.0, None);
        for i in 0..self.n.min(other.n) {
            for j in 0..self.n.min(other.n) {
                let d = (self.get(i, j).clone() - other.get(i, j).clone()).magnitude();
                if d > worst.0 || (worst.1.is_none() && self.get(i, j) != other.get(i, j)) {
                    worst = (d, Some((i, j)));
                }
            }
        }
        worst
    }
}

impl Truncation<Rational> {
    pub fn to_f64(&self) -> Truncation<f64> {
        self.map(to_f64)
    }
}

fn merge(a: Exactness, b: Exactness) -> Exactness {
    if a == Exactness::Exact && b == Exactness::Exact {
        Exactness::Exact
    } else {
        Exactness::Approximate
    }
}

/// Leading M×M block of the infinite product A·B, computed exactly.
///
/// Refuses pairs whose entry sums run past the truncation.
pub fn multiply_exact_block<T: Scalar>(a: &Truncation<T>, b: &Truncation<T>, m: usize) -> Result<Truncation<T>> {
    if m > a.size() || m > b.size() {
        return Err(Error::InvalidParameter(alloc::format!(
            "block {m} exceeds truncation sizes {} and {}",
            a.size(),
            b.size()
        )));
    }
    if !(a.structure.closes_left() || b.structure.closes_right()) {
        return Err(Error::InfiniteProduct(alloc::format!(
            "{} ({}) · {} ({})",
            a.name,
            a.structure,
            b.name,
            b.structure
        )));
    }
    a.block(m).matmul(&b.block(m))
}

/// Chains [`multiply_exact_block`] left to right.
pub fn multiply_chain<T: Scalar>(factors: &[&Truncation<T>], m: usize) -> Result<Truncation<T>> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
    let mut acc = first.block(m);
    for f in rest {
        acc = multiply_exact_block(&acc, f, m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    fn cesaro(n: usize) -> MatrixTruncation {
        build(&MatrixName::Cesaro, n).unwrap()
    }

    #[test]
    fn closure_rules() {
        let c = cesaro(6);
        let cstar = build(&MatrixName::CesaroAdjoint, 6).unwrap();
        let h = build(&MatrixName::Hilbert, 6).unwrap();
        assert!(multiply_exact_block(&c, &c, 6).is_ok());
        assert!(multiply_exact_block(&cstar, &cstar, 6).is_ok());
        assert!(multiply_exact_block(&c, &cstar, 6).is_ok());
        assert!(matches!(multiply_exact_block(&cstar, &c, 6), Err(Error::InfiniteProduct(_))));
        assert!(matches!(multiply_exact_block(&h, &c, 6), Err(Error::InfiniteProduct(_))));
        assert!(multiply_exact_block(&c, &c, 7).is_err());
    }

    #[test]
    fn block_products_close() {
        // A block of a lower·lower product never depends on indices past the block.
        let big = multiply_exact_block(&cesaro(20), &cesaro(20), 20).unwrap();
        let small = multiply_exact_block(&cesaro(8), &cesaro(8), 8).unwrap();
        assert_eq!(big.block(8), small);
        assert_eq!(big.structure, Structure::Lower);
    }

    #[test]
    fn from_rows_checks_structure() {
        let rows = alloc::vec![alloc::vec![int(1), int(2)], alloc::vec![int(0), int(1)]];
        assert!(MatrixTruncation::from_rows(MatrixName::Custom("u".into()), Structure::Lower, Exactness::Exact, rows.clone()).is_err());
        assert!(MatrixTruncation::from_rows(MatrixName::Custom("u".into()), Structure::Upper, Exactness::Exact, rows).is_ok());
    }

    #[test]
    fn transpose_swaps_structure() {
        let t = cesaro(4).transpose();
        assert_eq!(t.structure, Structure::Upper);
        assert_eq!(t, build(&MatrixName::CesaroAdjoint, 4).unwrap().renamed(MatrixName::Cesaro));
        assert_eq!(*t.get(0, 3), rat(1, 4));
    }
}
