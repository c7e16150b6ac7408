//! The Cesàro operator and the machinery around it.
//!
//! Everything here is `no_std` with `alloc`: exact rational matrix identities,
//! interval-certified tail sums, summability methods, Fejér means, finite-section
//! spectral diagnostics, square roots, Hardy-space checks and a quadrature model
//! of the continuous operator on `L²[0,1]`.
//!
//! ```
//! use cesaro_core::sequences::{apply_cesaro, partial_sums};
//! use num_complex::Complex64;
//!
//! let grandi: Vec<Complex64> = (0..4).map(|n| Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect();
//! let sums = partial_sums(&grandi);
//! assert_eq!(sums[3].re, 0.0);
//! // Averaging the partial sums gives the (C,1) mean.
//! assert_eq!(apply_cesaro(&sums)[3].re, 0.5);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;

pub mod continuous;
pub mod fourier;
pub mod hardy;
pub mod matrices;
pub mod numerics;
pub mod roots;
pub mod sequences;
pub mod spectral;
pub mod summability;

pub use error::Error;
pub use numerics::{Bracket, ExactComplex, Rational, Scalar};

pub type Result<T> = core::result::Result<T, Error>;
