//! The `(c+1) x (c+1)` sign-pattern matrices whose determinants certify the
//! lower rank bound, with their closed-form determinants.
//!
//! `Plus` layout, for `a = (a_1, ..., a_{c+1})`:
//!
//! ```text
//! a_1     -1  1 ...  1  1
//! a_2      1 -1 ...  1  1
//! ...
//! a_c      1  1 ...  1 -1
//! a_{c+1} -1 -1 ... -1 -1
//! ```
//!
//! `Minus` is the same matrix with its last column negated.

use crate::error::{Error, Result};
use crate::scalar::ExactInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaVariant {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaMatrix<T> {
    pub a: Vec<T>,
    pub variant: LemmaVariant,
    pub entries: Vec<Vec<T>>,
}

impl<T> LemmaMatrix<T> {
    /// Number of crossings `c`; the matrix is `(c+1) x (c+1)`.
    pub fn c(&self) -> usize {
        self.a.len() - 1
    }
}

fn crossings_of<T>(a: &[T]) -> Result<usize> {
    let c = a.len().saturating_sub(1);
    if c < 2 {
        return Err(Error::TooShort { min: 2, got: c });
    }
    Ok(c)
}

pub fn lemma_matrix<T: ExactInt>(a: &[T], variant: LemmaVariant) -> Result<LemmaMatrix<T>> {
    let c = crossings_of(a)?;
    let one = T::one();
    let minus = -T::one();
    let entries = (0..=c)
        .map(|i| {
            let mut row = Vec::with_capacity(c + 1);
            row.push(a[i].clone());
            for j in 1..=c {
                let v = if i == c || i + 1 == j { minus.clone() } else { one.clone() };
                let v = if j == c && variant == LemmaVariant::Minus { -v } else { v };
                row.push(v);
            }
            row
        })
        .collect();
    Ok(LemmaMatrix {
        a: a.to_vec(),
        variant,
        entries,
    })
}

/// `-2^{c-1} (a_1 + ... + a_c + (c-2) a_{c+1})` for `Plus`, the negation for `Minus`.
pub fn lemma_det_closed_form<T: ExactInt>(a: &[T], variant: LemmaVariant) -> Result<T> {
    let c = crossings_of(a)?;
    let mut power = T::one();
    for _ in 1..c {
        power = power.checked_add(&power).ok_or(Error::Overflow)?;
    }
    let mut sum = T::zero();
    for v in &a[..c] {
        sum = sum.checked_add(v).ok_or(Error::Overflow)?;
    }
    let tail = T::from_usize(c - 2)
        .and_then(|k| k.checked_mul(&a[c]))
        .ok_or(Error::Overflow)?;
    sum = sum.checked_add(&tail).ok_or(Error::Overflow)?;
    let magnitude = power.checked_mul(&sum).ok_or(Error::Overflow)?;
    Ok(match variant {
        LemmaVariant::Plus => -magnitude,
        LemmaVariant::Minus => magnitude,
    })
}
