//! Canonical representatives under row permutation and cyclic column shift.

use crate::warpcore::IncidenceMatrix;
use crate::warpmat::{MatrixDoc, OuMatrix, WarpingMatrix};

/// Column shift and row order of the canonical representative.
///
/// For each shift `s` (new column `j` is old column `j + s`), rows are sorted; the
/// shift whose sorted rows concatenate to the lexicographically least sequence wins,
/// the smallest such `s` on ties.
pub fn canonical_layout<T: Ord + Clone>(rows: &[Vec<T>]) -> (usize, Vec<usize>) {
    let width = rows.first().map_or(0, |r| r.len());
    let rotate = |r: &Vec<T>, s: usize| -> Vec<T> { r[s..].iter().chain(&r[..s]).cloned().collect() };
    let mut best: Option<(Vec<Vec<T>>, usize, Vec<usize>)> = None;
    for s in 0..width.max(1) {
        let rotated: Vec<Vec<T>> = rows.iter().map(|r| rotate(r, s.min(r.len()))).collect();
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&a, &b| rotated[a].cmp(&rotated[b]).then(a.cmp(&b)));
        let sorted: Vec<Vec<T>> = order.iter().map(|&i| rotated[i].clone()).collect();
        if best.as_ref().is_none_or(|(b, _, _)| sorted < *b) {
            best = Some((sorted, s, order));
        }
    }
    best.map(|(_, s, o)| (s, o)).unwrap_or((0, Vec::new()))
}

fn apply<T: Clone>(rows: &[Vec<T>], shift: usize, order: &[usize]) -> Vec<Vec<T>> {
    order
        .iter()
        .map(|&i| {
            let r = &rows[i];
            let s = shift.min(r.len());
            r[s..].iter().chain(&r[..s]).cloned().collect()
        })
        .collect()
}

pub trait Canonical: Sized {
    fn canonical_form(&self) -> Self;
}

impl Canonical for WarpingMatrix {
    fn canonical_form(&self) -> Self {
        let (shift, order) = canonical_layout(self.rows());
        WarpingMatrix::from_parts(
            self.crossing_count(),
            order.iter().map(|&i| self.labels()[i]).collect(),
            apply(self.rows(), shift, &order),
        )
    }
}

impl Canonical for OuMatrix {
    fn canonical_form(&self) -> Self {
        let (shift, order) = canonical_layout(self.rows());
        OuMatrix::from_parts(
            order.iter().map(|&i| self.labels()[i]).collect(),
            apply(self.rows(), shift, &order),
        )
    }
}

impl Canonical for IncidenceMatrix {
    fn canonical_form(&self) -> Self {
        let (shift, order) = canonical_layout(self.rows());
        IncidenceMatrix::from_rows(apply(self.rows(), shift, &order))
            .expect("row permutation and column rotation keep the shape")
    }
}

impl Canonical for MatrixDoc {
    fn canonical_form(&self) -> Self {
        let (shift, order) = canonical_layout(&self.rows);
        MatrixDoc {
            c: self.c,
            labels: self
                .labels
                .as_ref()
                .map(|l| order.iter().map(|&i| l[i]).collect()),
            rows: apply(&self.rows, shift, &order),
        }
    }
}

pub fn canonical_form<M: Canonical>(m: &M) -> M {
    m.canonical_form()
}

/// True when the two row sets are equal up to row permutation and cyclic column shift.
pub fn equivalent<T: Ord + Clone>(a: &[Vec<T>], b: &[Vec<T>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (sa, oa) = canonical_layout(a);
    let (sb, ob) = canonical_layout(b);
    apply(a, sa, &oa) == apply(b, sb, &ob)
}
