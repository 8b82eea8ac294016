//! Incremental exact rank.
//!
//! The basis is kept in integer echelon form: each row is primitive (content 1),
//! has a positive leading entry, and rows are ordered by leading column. Inserting
//! a row reduces it against the basis and keeps the remainder if it is nonzero, so
//! memory stays at most `width` rows however many rows are streamed through.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{content, ExactInt};

#[derive(Debug, Clone, PartialEq, Eq)]
struct BasisRow<T> {
    pivot: usize,
    entries: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAccumulator<T> {
    width: usize,
    seen: usize,
    basis: Vec<BasisRow<T>>,
}

impl<T: ExactInt> RankAccumulator<T> {
    pub fn new(width: usize) -> Self {
        RankAccumulator {
            width,
            seen: 0,
            basis: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Rows offered so far, including those already in the span.
    pub fn rows_seen(&self) -> usize {
        self.seen
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[T]> {
        self.basis.iter().map(|b| b.entries.as_slice())
    }

    /// Reduces `row` against the basis. `None` when it lies in the span.
    fn reduce(&self, mut row: Vec<T>) -> Result<Option<BasisRow<T>>> {
        for b in &self.basis {
            let r = &row[b.pivot];
            if r.is_zero() {
                continue;
            }
            let p = &b.entries[b.pivot];
            let g = p.gcd(r);
            let scale = p.clone() / g.clone();
            let coef = r.clone() / g;
            for (x, y) in row.iter_mut().zip(&b.entries) {
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                *x = x
                    .checked_mul(&scale)
                    .and_then(|v| v.checked_sub(&y.checked_mul(&coef)?))
                    .ok_or(Error::Overflow)?;
            }
            if !scale.abs().is_one() {
                let g = content(&row);
                if !g.is_zero() && !g.is_one() {
                    row.iter_mut().for_each(|x| *x = x.clone() / g.clone());
                }
            }
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return Ok(None);
        };
        let mut g = content(&row);
        if row[pivot].is_negative() {
            g = -g;
        }
        if !g.is_one() {
            row.iter_mut().for_each(|x| *x = x.clone() / g.clone());
        }
        Ok(Some(BasisRow {
            pivot,
            entries: row,
        }))
    }

    /// Adds a row; returns whether the rank grew. On error the accumulator is unchanged.
    pub fn insert(&mut self, row: &[T]) -> Result<bool> {
        if row.len() != self.width {
            return Err(Error::WidthMismatch {
                row: self.seen,
                got: row.len(),
                expected: self.width,
            });
        }
        let reduced = self.reduce(row.to_vec())?;
        self.seen += 1;
        Ok(match reduced {
            None => false,
            Some(b) => {
                let at = self.basis.partition_point(|x| x.pivot < b.pivot);
                self.basis.insert(at, b);
                true
            }
        })
    }

    pub fn insert_entries(&mut self, row: &[i64]) -> Result<bool> {
        let row: Vec<T> = row.iter().map(|&v| T::from_entry(v)).collect();
        self.insert(&row)
    }

    /// Absorbs another accumulator's span. The result has the rank of the union of
    /// both row sets.
    pub fn merge(&mut self, other: &RankAccumulator<T>) -> Result<()> {
        if other.width != self.width {
            return Err(Error::WidthMismatch {
                row: 0,
                got: other.width,
                expected: self.width,
            });
        }
        let seen = self.seen + other.seen;
        for b in &other.basis {
            self.insert(&b.entries)?;
        }
        self.seen = seen;
        Ok(())
    }

    fn map_scalar<U: ExactInt>(&self, f: impl Fn(&T) -> U) -> RankAccumulator<U> {
        RankAccumulator {
            width: self.width,
            seen: self.seen,
            basis: self
                .basis
                .iter()
                .map(|b| BasisRow {
                    pivot: b.pivot,
                    entries: b.entries.iter().map(&f).collect(),
                })
                .collect(),
        }
    }
}

/// Accumulator that runs on `i128` and switches to [`BigInt`] the first time an
/// insertion would overflow.
#[derive(Debug, Clone)]
pub enum ExactRankAccumulator {
    Fast(RankAccumulator<i128>),
    Big(RankAccumulator<BigInt>),
}

impl ExactRankAccumulator {
    pub fn new(width: usize) -> Self {
        ExactRankAccumulator::Fast(RankAccumulator::new(width))
    }

    pub fn rank(&self) -> usize {
        match self {
            ExactRankAccumulator::Fast(a) => a.rank(),
            ExactRankAccumulator::Big(a) => a.rank(),
        }
    }

    pub fn width(&self) -> usize {
        match self {
            ExactRankAccumulator::Fast(a) => a.width(),
            ExactRankAccumulator::Big(a) => a.width(),
        }
    }

    pub fn is_promoted(&self) -> bool {
        matches!(self, ExactRankAccumulator::Big(_))
    }

    fn promote(&mut self) -> &mut RankAccumulator<BigInt> {
        if let ExactRankAccumulator::Fast(a) = self {
            *self = ExactRankAccumulator::Big(a.map_scalar(|v| BigInt::from(*v)));
        }
        match self {
            ExactRankAccumulator::Big(a) => a,
            ExactRankAccumulator::Fast(_) => unreachable!(),
        }
    }

    pub fn insert(&mut self, row: &[i64]) -> Result<bool> {
        if let ExactRankAccumulator::Fast(a) = self {
            match a.insert_entries(row) {
                Err(Error::Overflow) => {}
                r => return r,
            }
        }
        self.promote().insert_entries(row)
    }

    pub fn merge(&mut self, other: &ExactRankAccumulator) -> Result<()> {
        if let (ExactRankAccumulator::Fast(a), ExactRankAccumulator::Fast(b)) = (&mut *self, other) {
            let mut trial = a.clone();
            match trial.merge(b) {
                Ok(()) => {
                    *a = trial;
                    return Ok(());
                }
                Err(Error::Overflow) => {}
                Err(e) => return Err(e),
            }
        }
        let other = match other {
            ExactRankAccumulator::Fast(b) => b.map_scalar(|v| BigInt::from(*v)),
            ExactRankAccumulator::Big(b) => b.clone(),
        };
        self.promote().merge(&other)
    }
}

/// Exact rank of a stream of rows of the given width, without materializing them.
pub fn rank_exact<I, R>(rows: I, width: usize) -> Result<usize>
where
    I: IntoIterator<Item = R>,
    R: AsRef<[i64]>,
{
    let mut acc = ExactRankAccumulator::new(width);
    for row in rows {
        acc.insert(row.as_ref())?;
    }
    Ok(acc.rank())
}

/// True iff the rows are linearly independent over the rationals.
pub fn rows_independent(rows: &[Vec<i64>]) -> Result<bool> {
    let Some(first) = rows.first() else {
        return Ok(true);
    };
    Ok(rank_exact(rows, first.len())? == rows.len())
}
