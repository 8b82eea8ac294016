//! Warping crossing points, warping degrees and the warping incidence matrix.

use crate::error::{Error, Result};
use crate::knotio::{EdgeIndex, KnotDiagram, KnotProjection, PassKind};

/// Warping degrees `d(D_{b_j})` for `j = 1..=2c`, stored zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WarpingDegreeSequence(pub Vec<i64>);

impl WarpingDegreeSequence {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

/// Zero-based position of the pass of crossing `chord` met first from base point `start`.
#[inline]
fn first_met(chord: (usize, usize), start: usize) -> usize {
    let (first, second) = chord;
    if start <= first || start > second {
        first
    } else {
        second
    }
}

fn check_crossing(diagram: &KnotDiagram, k: usize) -> Result<(usize, usize)> {
    diagram.projection().chord(k)
}

/// Whether crossing `k` is first met as an undercrossing when travelling from `b_j`.
pub fn is_warping_crossing(diagram: &KnotDiagram, j: EdgeIndex, k: usize) -> Result<bool> {
    let start = j.position(diagram.crossing_count())?;
    let chord = check_crossing(diagram, k)?;
    Ok(diagram.kind_at(first_met(chord, start)) == PassKind::Under)
}

/// Number of warping crossing points of `D_{b_j}`.
pub fn warping_degree(diagram: &KnotDiagram, j: EdgeIndex) -> Result<usize> {
    let start = j.position(diagram.crossing_count())?;
    Ok(diagram
        .projection()
        .chords()
        .iter()
        .filter(|&&chord| diagram.kind_at(first_met(chord, start)) == PassKind::Under)
        .count())
}

/// Warping degree sequence of the diagram with assignment `assignment` over `projection`,
/// written into `out` (length `2c`).
///
/// From `b_1` every crossing is first met at its first pass, so `d(b_1)` is the number
/// of crossings whose first pass is under. Stepping over pass `j` changes the degree by
/// `+1` when that pass is over and `-1` when it is under.
pub fn fill_sequence(projection: &KnotProjection, assignment: u64, out: &mut [i64]) {
    let c = projection.crossing_count();
    debug_assert_eq!(out.len(), 2 * c);
    let overs = if c >= 64 {
        assignment.count_ones()
    } else {
        (assignment & ((1u64 << c) - 1)).count_ones()
    };
    let mut d = (c as u32 - overs) as i64;
    let chords = projection.chords();
    for (pos, &label) in projection.passes().iter().enumerate() {
        out[pos] = d;
        let first_over = assignment >> (label - 1) & 1 == 1;
        let is_first = chords[label - 1].0 == pos;
        d += if first_over == is_first { 1 } else { -1 };
    }
}

pub fn warping_degree_sequence(diagram: &KnotDiagram) -> WarpingDegreeSequence {
    let mut out = vec![0; diagram.projection().edge_count()];
    fill_sequence(diagram.projection(), diagram.assignment_index(), &mut out);
    WarpingDegreeSequence(out)
}

/// The `c x 2c` warping incidence matrix; entry `(i, j)` is 1 iff crossing `i` is a
/// warping crossing point from base point `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    rows: Vec<Vec<u8>>,
}

impl IncidenceMatrix {
    /// Wraps raw rows, checking only that they are rectangular 0/1 data of width `2 * rows`.
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        let width = 2 * rows.len();
        if rows.is_empty() {
            return Err(Error::MalformedSource("incidence matrix has no rows".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::WidthMismatch {
                    row: i,
                    got: row.len(),
                    expected: width,
                });
            }
            if row.iter().any(|&v| v > 1) {
                return Err(Error::MalformedSource(format!("row {} is not 0/1", i + 1)));
            }
        }
        Ok(IncidenceMatrix { rows })
    }

    pub fn crossing_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Row of crossing `k` (1-based).
    pub fn row(&self, k: usize) -> &[u8] {
        &self.rows[k - 1]
    }

    pub fn column_sums(&self) -> Vec<i64> {
        let width = 2 * self.rows.len();
        (0..width)
            .map(|j| self.rows.iter().map(|r| r[j] as i64).sum())
            .collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect()
    }

    /// One-based columns `l` where row `k` steps from 0 (at `l - 1`, cyclically) to 1
    /// while every other row is unchanged.
    pub fn isolated_rises(&self, k: usize) -> Vec<usize> {
        let width = 2 * self.rows.len();
        (0..width)
            .filter(|&l| {
                let prev = (l + width - 1) % width;
                self.rows.iter().enumerate().all(|(i, row)| {
                    if i + 1 == k {
                        row[prev] == 0 && row[l] == 1
                    } else {
                        row[prev] == row[l]
                    }
                })
            })
            .map(|l| l + 1)
            .collect()
    }
}

pub fn incidence_matrix(diagram: &KnotDiagram) -> IncidenceMatrix {
    let width = diagram.projection().edge_count();
    let rows = diagram
        .projection()
        .chords()
        .iter()
        .map(|&chord| {
            (0..width)
                .map(|start| (diagram.kind_at(first_met(chord, start)) == PassKind::Under) as u8)
                .collect()
        })
        .collect();
    IncidenceMatrix { rows }
}

/// Swaps over and under at crossing `i` (1-based).
pub fn crossing_change(diagram: &KnotDiagram, i: usize) -> Result<KnotDiagram> {
    check_crossing(diagram, i)?;
    Ok(diagram.with_assignment(diagram.assignment_index() ^ (1 << (i - 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotio::{diagram_from_assignment, parse_diagram, parse_projection};

    fn seq(code: &str) -> Vec<i64> {
        warping_degree_sequence(&parse_diagram(code).unwrap()).into_inner()
    }

    #[test]
    fn warping_crossing_examples() {
        let t = parse_diagram("O1 U2 O3 U1 O2 U3").unwrap();
        assert!(is_warping_crossing(&t, EdgeIndex::new(1), 2).unwrap());
        assert!(!is_warping_crossing(&t, EdgeIndex::new(1), 1).unwrap());
        let d = parse_diagram("O1 O2 U2 U1").unwrap();
        assert!(!is_warping_crossing(&d, EdgeIndex::new(1), 1).unwrap());
        // b_4 sits just before crossing 1's under pass
        assert!(is_warping_crossing(&d, EdgeIndex::new(4), 1).unwrap());
    }

    #[test]
    fn index_errors() {
        let d = parse_diagram("O1 U1").unwrap();
        assert!(matches!(
            is_warping_crossing(&d, EdgeIndex::new(3), 1),
            Err(Error::IndexOutOfRange { what: "edge", .. })
        ));
        assert!(matches!(
            is_warping_crossing(&d, EdgeIndex::new(0), 1),
            Err(Error::IndexOutOfRange { what: "edge", .. })
        ));
        assert!(matches!(
            is_warping_crossing(&d, EdgeIndex::new(1), 2),
            Err(Error::IndexOutOfRange { what: "crossing", .. })
        ));
        assert!(warping_degree(&d, EdgeIndex::new(5)).is_err());
        assert!(crossing_change(&d, 0).is_err());
    }

    #[test]
    fn warping_degree_examples() {
        let d = parse_diagram("O1 O2 U2 U1").unwrap();
        assert_eq!(warping_degree(&d, EdgeIndex::new(1)).unwrap(), 0);
        assert_eq!(warping_degree(&d, EdgeIndex::new(3)).unwrap(), 2);
        let t = parse_diagram("O1 U2 O3 U1 O2 U3").unwrap();
        assert_eq!(warping_degree(&t, EdgeIndex::new(1)).unwrap(), 1);
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(seq("O1 O2 U2 U1"), vec![0, 1, 2, 1]);
        assert_eq!(seq("O1 U2 O2 U1"), vec![1, 2, 1, 2]);
        assert_eq!(seq("O1 U2 O3 U1 O2 U3"), vec![1, 2, 1, 2, 1, 2]);
        assert_eq!(seq("O1 U1"), vec![0, 1]);
        assert_eq!(seq("U1 O1"), vec![1, 0]);
    }

    #[test]
    fn incremental_matches_pointwise() {
        let p = parse_projection("1 2 3 4 2 1 4 3").unwrap();
        for idx in 0..16 {
            let d = diagram_from_assignment(&p, idx).unwrap();
            let s = warping_degree_sequence(&d);
            for j in 1..=8 {
                assert_eq!(s.values()[j - 1], warping_degree(&d, EdgeIndex::new(j)).unwrap() as i64);
            }
        }
    }

    #[test]
    fn incidence_examples() {
        let t = incidence_matrix(&parse_diagram("O1 U2 O3 U1 O2 U3").unwrap());
        assert_eq!(
            t.rows(),
            &[
                vec![0, 1, 1, 1, 0, 0],
                vec![1, 1, 0, 0, 0, 1],
                vec![0, 0, 0, 1, 1, 1]
            ]
        );
        assert_eq!(t.column_sums(), vec![1, 2, 1, 2, 1, 2]);
        let d = incidence_matrix(&parse_diagram("O1 O2 U2 U1").unwrap());
        assert_eq!(d.rows(), &[vec![0, 1, 1, 1], vec![0, 0, 1, 0]]);
        assert_eq!(d.column_sums(), vec![0, 1, 2, 1]);
        let curl = incidence_matrix(&parse_diagram("O1 U1").unwrap());
        assert_eq!(curl.rows(), &[vec![0, 1]]);
    }

    #[test]
    fn isolated_rise_is_unique() {
        let t = incidence_matrix(&parse_diagram("O1 U2 O3 U1 O2 U3").unwrap());
        assert_eq!(t.isolated_rises(1), vec![2]);
        assert_eq!(t.isolated_rises(2), vec![6]);
        assert_eq!(t.isolated_rises(3), vec![4]);
    }

    #[test]
    fn crossing_change_flips_row() {
        let d = parse_diagram("O1 O2 U2 U1").unwrap();
        let e = crossing_change(&d, 1).unwrap();
        assert_eq!(e.to_string(), "U1 O2 U2 O1");
        assert_eq!(crossing_change(&e, 1).unwrap(), d);
        let m = incidence_matrix(&d);
        let n = incidence_matrix(&e);
        assert_eq!(n.row(1), &m.row(1).iter().map(|v| 1 - v).collect::<Vec<_>>()[..]);
        assert_eq!(n.row(2), m.row(2));
    }

    #[test]
    fn incidence_from_rows_validates() {
        assert!(IncidenceMatrix::from_rows(vec![]).is_err());
        assert!(IncidenceMatrix::from_rows(vec![vec![0, 1, 1]]).is_err());
        assert!(IncidenceMatrix::from_rows(vec![vec![0, 2]]).is_err());
        assert!(IncidenceMatrix::from_rows(vec![vec![0, 1]]).is_ok());
    }
}
