//! Exact linear algebra over GF(2) and the componentwise-product algebra
//! on `F_2^n`.
//!
//! Vectors are word-packed; matrices are stored as rows of vectors. All
//! values are immutable once shared and every operation is a pure function
//! of its inputs.

mod algebra;
mod elimination;
mod matrix;
mod span;
mod vector;
mod vector_set;

pub use algebra::{indexed_square, lemma3_combine, pairwise_product_sum, product, set_square};
pub use elimination::{systematize, AffineSolutions, RowEchelon, SystematizedForm};
pub use matrix::BitMatrix;
pub(crate) use matrix::{parse_err, parse_matrix_lines, text_lines};
pub use span::XorBasis;
pub use vector::BitVector;
pub use vector_set::{span_contains, VectorSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix has rank {rank} but {rows} rows; full row rank is required")]
    RankDeficient { rank: usize, rows: usize },
    #[error("not a permutation of {len} columns")]
    InvalidPermutation { len: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
