//! Exact integer linear algebra, generic over [`ExactInt`](crate::scalar::ExactInt).

mod accumulator;
mod bareiss;
mod lemma;

pub use accumulator::{rank_exact, rows_independent, ExactRankAccumulator, RankAccumulator};
pub use bareiss::{det_exact, det_i64, rank_fraction_free, rank_i64};
pub use lemma::{lemma_det_closed_form, lemma_matrix, LemmaMatrix, LemmaVariant};
