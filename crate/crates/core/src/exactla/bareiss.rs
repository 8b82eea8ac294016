//! Fraction-free (Bareiss) elimination.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{mul_sub, ExactInt};

fn check_width<T>(rows: &[Vec<T>], width: usize) -> Result<()> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::WidthMismatch {
                row: i,
                got: row.len(),
                expected: width,
            });
        }
    }
    Ok(())
}

/// Exact determinant of a square matrix.
pub fn det_exact<T: ExactInt>(matrix: &[Vec<T>]) -> Result<T> {
    let n = matrix.len();
    check_width(matrix, n).map_err(|e| match e {
        Error::WidthMismatch { got, .. } => Error::NotSquare { rows: n, cols: got },
        e => e,
    })?;
    let mut a = matrix.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(T::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let v = mul_sub(&row[j], &pivot_row[k], &row[k], &pivot_row[j]).ok_or(Error::Overflow)?;
                row[j] = v / prev.clone();
            }
            row[k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return Ok(T::one());
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Exact rank of a materialized `rows x width` matrix.
pub fn rank_fraction_free<T: ExactInt>(rows: &[Vec<T>], width: usize) -> Result<usize> {
    check_width(rows, width)?;
    let mut a = rows.to_vec();
    let h = a.len();
    let mut rank = 0;
    let mut prev = T::one();
    for col in 0..width {
        if rank == h {
            break;
        }
        let Some(p) = (rank..h).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            for j in col + 1..width {
                let v = mul_sub(&row[j], &pivot_row[col], &row[col], &pivot_row[j]).ok_or(Error::Overflow)?;
                row[j] = v / prev.clone();
            }
            row[col] = T::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    Ok(rank)
}

fn widen<T: ExactInt>(rows: &[Vec<i64>]) -> Vec<Vec<T>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| T::from_entry(v)).collect())
        .collect()
}

/// Determinant of an `i64` matrix, trying `i128` before falling back to [`BigInt`].
pub fn det_i64(matrix: &[Vec<i64>]) -> Result<BigInt> {
    match det_exact::<i128>(&widen(matrix)) {
        Ok(d) => Ok(BigInt::from(d)),
        Err(Error::Overflow) => det_exact::<BigInt>(&widen(matrix)),
        Err(e) => Err(e),
    }
}

/// Materialized rank of `i64` rows, trying `i128` before falling back to [`BigInt`].
pub fn rank_i64(rows: &[Vec<i64>], width: usize) -> Result<usize> {
    match rank_fraction_free::<i128>(&widen(rows), width) {
        Err(Error::Overflow) => rank_fraction_free::<BigInt>(&widen(rows), width),
        r => r,
    }
}
