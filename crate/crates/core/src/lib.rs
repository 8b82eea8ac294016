//! Warping degrees, warping matrices and incidence matrices of knot diagrams given
//! as Gauss codes, with exact-arithmetic rank and independence checks.
//!
//! ```
//! use warpmatrix::{parse_projection, warping_matrix, rank_exact};
//!
//! let p = parse_projection("1 2 2 1").unwrap();
//! let m = warping_matrix(&p).unwrap();
//! assert_eq!(rank_exact(m.rows(), m.width()).unwrap(), p.crossing_count() + 1);
//! ```

pub mod error;
pub mod exactla;
pub mod knotio;
mod parallel;
pub mod scalar;
pub mod verify;
pub mod warpcore;
pub mod warpmat;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use exactla::{
    det_exact, det_i64, lemma_det_closed_form, lemma_matrix, rank_exact, rank_fraction_free, rank_i64,
    rows_independent, ExactRankAccumulator, LemmaMatrix, LemmaVariant, RankAccumulator,
};
pub use knotio::{
    diagram_from_assignment, parse_diagram, parse_projection, render, shadow, EdgeIndex, KnotCode,
    KnotDiagram, KnotProjection, PassKind,
};
pub use scalar::ExactInt;
pub use warpcore::{
    crossing_change, incidence_matrix, is_warping_crossing, warping_degree, warping_degree_sequence,
    IncidenceMatrix, WarpingDegreeSequence,
};
pub use warpmat::{
    a_matrix, canonical_form, column_pairs, gauss_diagram, ou_matrix, row_for_diagram, warping_matrix,
    warping_matrix_rank_streaming, warping_matrix_without_signs, BuildOptions, Canonical, ChordDiagram,
    MatrixDoc, MatrixFormat, OuMatrix, WarpingMatrix,
};

/// Arbitrary-precision integer used for determinants.
pub type Integer = BigInt;
/// Accumulator on 128-bit integers; reports overflow instead of wrapping.
pub type FastRankAccumulator = RankAccumulator<i128>;
/// Accumulator on arbitrary-precision integers.
pub type BigRankAccumulator = RankAccumulator<BigInt>;
/// Special sign-pattern matrix over arbitrary-precision integers.
pub type BigLemmaMatrix = LemmaMatrix<BigInt>;
