//! Truncated power series over F₂ and linear algebra over `F₂[[U]]/U^N`.

mod bits;
mod matrix;
mod series;
mod snf;

pub use bits::BitMatrix;
pub use matrix::SeriesMatrix;
pub use series::{series_inverse, series_mul, Series};
pub use snf::{kernel_generator, kernel_generator_with_guard, smith_normal_form, SnfResult, DEFAULT_GUARD};
pub(crate) use snf::kernel_from_snf;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("series has zero constant term")]
    NotAUnit,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not invertible")]
    Singular,
    #[error("no diagonal valuation reaches the guard margin")]
    NoKernel,
    #[error("{0} diagonal valuations reach the guard margin")]
    AmbiguousKernel(usize),
}
