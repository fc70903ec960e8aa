//! Communication matrices and their rectangle and rank measures.

mod matrix;
mod measures;
mod nonneg;
mod rank;
mod rect;

pub use matrix::{matrix_of_language, or_matrix, CommMatrix, MAX_MATRIX_ENTRIES};
pub use measures::{
    cover_number, cover_number_budget, is_cover, is_partition, partition_number,
    partition_number_budget, RectangleMeasure, DEFAULT_NODE_BUDGET, MAX_SEARCH_SIDE,
};
pub use nonneg::{
    approx_nonneg_rank_upper, approx_or_matrix, mu_nmf, nonneg_rank_bounds, Factors, NonnegFactorization,
    NonnegRankBounds, NMF_MAX_ITERATIONS, NMF_SEED,
};
pub use rank::{rank_of_rows, rational_rank};
pub use rect::Rectangle;
