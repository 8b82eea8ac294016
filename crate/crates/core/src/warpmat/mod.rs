//! Warping matrices `M(P)`, unsigned diagram matrices, and ou matrices.
//!
//! Rows are generated in assignment-index order and keep their index as a label.

mod canon;
mod chord;
mod serial;

use rayon::prelude::*;

pub use canon::{canonical_form, canonical_layout, equivalent, Canonical};
pub use chord::{column_pairs, gauss_diagram, ChordDiagram, GaussSource};
pub use serial::{MatrixDoc, MatrixFormat};

use crate::error::{Error, Result};
use crate::exactla::ExactRankAccumulator;
use crate::knotio::{KnotDiagram, KnotProjection};
use crate::parallel;
use crate::warpcore::fill_sequence;

/// Largest crossing count for which full matrices are materialized by default.
pub const DEFAULT_MATERIALIZE_LIMIT: usize = 20;
/// Largest crossing count accepted by the streaming rank by default.
pub const DEFAULT_STREAMING_LIMIT: usize = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_crossings: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_crossings: DEFAULT_MATERIALIZE_LIMIT,
            jobs: None,
        }
    }
}

impl BuildOptions {
    pub fn streaming() -> Self {
        BuildOptions {
            max_crossings: DEFAULT_STREAMING_LIMIT,
            jobs: None,
        }
    }

    fn check(&self, projection: &KnotProjection) -> Result<u64> {
        let c = projection.crossing_count();
        if c > self.max_crossings {
            return Err(Error::TooManyCrossings {
                crossings: c,
                limit: self.max_crossings,
            });
        }
        projection.assignment_count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarpingMatrix {
    crossings: usize,
    labels: Vec<u64>,
    rows: Vec<Vec<i64>>,
}

impl WarpingMatrix {
    pub(crate) fn from_parts(crossings: usize, labels: Vec<u64>, rows: Vec<Vec<i64>>) -> Self {
        WarpingMatrix {
            crossings,
            labels,
            rows,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings
    }

    pub fn width(&self) -> usize {
        2 * self.crossings
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Assignment index of each row.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row_by_label(&self, label: u64) -> Option<&[i64]> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|i| self.rows[i].as_slice())
    }

    pub fn to_doc(&self) -> MatrixDoc {
        MatrixDoc {
            c: Some(self.crossings),
            labels: Some(self.labels.clone()),
            rows: self.rows.clone(),
        }
    }

    /// Reads a serialized matrix. `c` defaults to half the row width and labels to
    /// row positions.
    pub fn from_doc(doc: &MatrixDoc) -> Result<Self> {
        let width = doc.width().unwrap_or(2 * doc.c.unwrap_or(0));
        let c = doc.c.unwrap_or(width / 2);
        if width != 2 * c {
            return Err(Error::BadDimension(width));
        }
        for (i, row) in doc.rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::WidthMismatch {
                    row: i,
                    got: row.len(),
                    expected: width,
                });
            }
        }
        let labels = doc
            .labels
            .clone()
            .unwrap_or_else(|| (0..doc.rows.len() as u64).collect());
        Ok(WarpingMatrix::from_parts(c, labels, doc.rows.clone()))
    }
}

/// Warping degree sequence of assignment `index` over `projection`.
pub fn warping_row(projection: &KnotProjection, index: u64) -> Vec<i64> {
    let mut row = vec![0; projection.edge_count()];
    fill_sequence(projection, index, &mut row);
    row
}

/// All warping degree sequences over `projection`, lazily, labelled by assignment index.
pub fn warping_rows(projection: &KnotProjection) -> Result<impl Iterator<Item = (u64, Vec<i64>)> + '_> {
    let count = projection.assignment_count()?;
    Ok((0..count).map(move |idx| (idx, warping_row(projection, idx))))
}

pub fn warping_matrix(projection: &KnotProjection) -> Result<WarpingMatrix> {
    warping_matrix_with(projection, &BuildOptions::default())
}

pub fn warping_matrix_with(projection: &KnotProjection, opts: &BuildOptions) -> Result<WarpingMatrix> {
    let count = opts.check(projection)?;
    let rows = parallel::install(opts.jobs, || {
        (0..count)
            .into_par_iter()
            .map(|idx| warping_row(projection, idx))
            .collect()
    });
    Ok(WarpingMatrix::from_parts(
        projection.crossing_count(),
        (0..count).collect(),
        rows,
    ))
}

/// `M(P)` with the row of `diagram` removed.
pub fn warping_matrix_without_signs(diagram: &KnotDiagram) -> Result<WarpingMatrix> {
    warping_matrix_without_signs_with(diagram, &BuildOptions::default())
}

pub fn warping_matrix_without_signs_with(diagram: &KnotDiagram, opts: &BuildOptions) -> Result<WarpingMatrix> {
    let mut m = warping_matrix_with(diagram.projection(), opts)?;
    let at = diagram.assignment_index() as usize;
    m.rows.remove(at);
    m.labels.remove(at);
    Ok(m)
}

/// Row of `diagram` in a matrix built over its shadow.
pub fn row_for_diagram<'a>(m: &'a WarpingMatrix, diagram: &KnotDiagram) -> Result<&'a [i64]> {
    let idx = diagram.assignment_index();
    m.row_by_label(idx).ok_or(Error::RowMissing(idx))
}

/// The `n x n` difference matrix: `-1` on the diagonal, `+1` below it and in the
/// top-right corner, so `(M A)_{ij} = M_{i,j+1} - M_{ij}` cyclically.
pub fn a_matrix(n: usize) -> Result<Vec<Vec<i64>>> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::BadDimension(n));
    }
    let mut a = vec![vec![0; n]; n];
    for j in 0..n {
        a[j][j] = -1;
        a[(j + 1) % n][j] = 1;
    }
    Ok(a)
}

fn multiply(lhs: &[Vec<i64>], rhs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rhs.first().map_or(0, |r| r.len());
    lhs.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(rhs).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

/// `±1` matrix: entry `(i, j)` is `+1` iff pass `j` of diagram `i` is over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuMatrix {
    labels: Vec<u64>,
    rows: Vec<Vec<i64>>,
}

impl OuMatrix {
    pub(crate) fn from_parts(labels: Vec<u64>, rows: Vec<Vec<i64>>) -> Self {
        OuMatrix { labels, rows }
    }

    /// Unlabelled rows; checks rectangular `±1` data of even width.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let width = rows.first().map_or(0, |r| r.len());
        if width == 0 || width % 2 != 0 {
            return Err(Error::BadDimension(width));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::WidthMismatch {
                    row: i,
                    got: row.len(),
                    expected: width,
                });
            }
            if row.iter().any(|v| v.abs() != 1) {
                return Err(Error::MalformedSource(format!("row {} is not ±1", i + 1)));
            }
        }
        let labels = (0..rows.len() as u64).collect();
        Ok(OuMatrix { labels, rows })
    }

    /// `M A`, the product route.
    pub fn from_warping_matrix(m: &WarpingMatrix) -> Result<Self> {
        let a = a_matrix(m.width())?;
        Ok(OuMatrix::from_parts(m.labels.clone(), multiply(&m.rows, &a)))
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn to_doc(&self) -> MatrixDoc {
        MatrixDoc {
            c: Some(self.width() / 2),
            labels: Some(self.labels.clone()),
            rows: self.rows.clone(),
        }
    }
}

/// Ou matrix built directly from the pass kinds of every diagram over `projection`.
pub fn ou_matrix(projection: &KnotProjection) -> Result<OuMatrix> {
    ou_matrix_with(projection, &BuildOptions::default())
}

pub fn ou_matrix_with(projection: &KnotProjection, opts: &BuildOptions) -> Result<OuMatrix> {
    let count = opts.check(projection)?;
    let chords = projection.chords();
    let rows = parallel::install(opts.jobs, || {
        (0..count)
            .into_par_iter()
            .map(|idx| {
                projection
                    .passes()
                    .iter()
                    .enumerate()
                    .map(|(pos, &k)| {
                        let first_over = idx >> (k - 1) & 1 == 1;
                        if first_over == (chords[k - 1].0 == pos) {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect()
    });
    Ok(OuMatrix::from_parts((0..count).collect(), rows))
}

/// Exact rank of `M(P)` without materializing it.
///
/// The assignment range is cut into shards; each shard feeds its own accumulator and
/// the accumulators are merged, which gives the same rank as serial insertion.
pub fn warping_matrix_rank_streaming(projection: &KnotProjection, opts: &BuildOptions) -> Result<usize> {
    let count = opts.check(projection)?;
    let width = projection.edge_count();
    let shards = (rayon::current_num_threads().max(opts.jobs.unwrap_or(1)) as u64 * 8).min(count);
    let per = count.div_ceil(shards);
    parallel::install(opts.jobs, || {
        (0..shards)
            .into_par_iter()
            .map(|s| {
                let mut acc = ExactRankAccumulator::new(width);
                let mut row = vec![0; width];
                for idx in s * per..((s + 1) * per).min(count) {
                    fill_sequence(projection, idx, &mut row);
                    acc.insert(&row)?;
                }
                Ok(acc)
            })
            .try_reduce(
                || ExactRankAccumulator::new(width),
                |mut a, b| {
                    a.merge(&b)?;
                    Ok(a)
                },
            )
            .map(|acc| acc.rank())
    })
}
