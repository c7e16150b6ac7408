use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("product {0} has infinite entry sums; use multiply_with_tail")]
    InfiniteProduct(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("frequency {n} needs at least {needed} samples, grid has {m}")]
    FrequencyTooLarge { n: i64, m: usize, needed: usize },
    #[error("{0} lies outside the admissible region")]
    OutsideDomain(String),
    #[error("grid of {0} nodes is too coarse for reliable interpolation (need at least 16)")]
    CoarseGrid(usize),
    #[error("quadrature did not converge: estimated error {0:e}")]
    QuadratureFailed(f64),
}
