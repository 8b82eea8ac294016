//! Unsigned Gauss (chord) diagrams and their recovery from matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::knotio::KnotProjection;
use crate::warpcore::IncidenceMatrix;
use crate::warpmat::OuMatrix;

/// Perfect matching on positions `1..=2c`, one chord per crossing.
///
/// Chords are stored as `(low, high)` with `low < high`, sorted by `low`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    points: usize,
    pairs: Vec<(usize, usize)>,
}

impl ChordDiagram {
    /// Validates that `pairs` is a perfect matching of `1..=points`.
    pub fn new(points: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = vec![false; points];
        let mut out = Vec::new();
        for (a, b) in pairs {
            let (lo, hi) = (a.min(b), a.max(b));
            if lo == 0 || hi > points || lo == hi {
                return Err(Error::MalformedSource(format!("chord {{{a},{b}}} out of range")));
            }
            for p in [lo, hi] {
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(Error::MalformedSource(format!("position {p} used twice")));
                }
            }
            out.push((lo, hi));
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedSource(format!("position {} unmatched", p + 1)));
        }
        out.sort_unstable();
        Ok(ChordDiagram { points, pairs: out })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn chord_count(&self) -> usize {
        self.pairs.len()
    }

    /// Same chords with every position moved `shift` steps forward, cyclically.
    pub fn rotated(&self, shift: usize) -> ChordDiagram {
        let n = self.points;
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| ((a - 1 + shift) % n + 1, (b - 1 + shift) % n + 1));
        ChordDiagram::new(n, pairs).expect("rotation preserves matchings")
    }

    /// Least rotation, a representative of the class up to cyclic relabelling.
    pub fn canonical(&self) -> ChordDiagram {
        (0..self.points.max(1))
            .map(|s| self.rotated(s))
            .min()
            .unwrap_or_else(|| self.clone())
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{{{a},{b}}}")?;
        }
        Ok(())
    }
}

/// Anything from which the unsigned Gauss diagram can be read off.
pub trait GaussSource {
    fn gauss_diagram(&self) -> Result<ChordDiagram>;
}

impl GaussSource for KnotProjection {
    fn gauss_diagram(&self) -> Result<ChordDiagram> {
        ChordDiagram::new(
            self.edge_count(),
            self.chords().iter().map(|&(a, b)| (a + 1, b + 1)),
        )
    }
}

impl GaussSource for OuMatrix {
    fn gauss_diagram(&self) -> Result<ChordDiagram> {
        column_pairs(self).map_err(|e| Error::MalformedSource(e.to_string()))
    }
}

impl GaussSource for IncidenceMatrix {
    /// Row `k` is one cyclic block of 1s. The column before the block's first 1 and the
    /// block's last column are the two passes of crossing `k`.
    fn gauss_diagram(&self) -> Result<ChordDiagram> {
        let width = 2 * self.crossing_count();
        let mut pairs = Vec::with_capacity(self.crossing_count());
        for (k, row) in self.rows().iter().enumerate() {
            let rises: Vec<usize> = (0..width)
                .filter(|&j| row[(j + width - 1) % width] == 0 && row[j] == 1)
                .collect();
            let falls: Vec<usize> = (0..width)
                .filter(|&j| row[j] == 1 && row[(j + 1) % width] == 0)
                .collect();
            if rises.len() != 1 || falls.len() != 1 {
                return Err(Error::MalformedSource(format!(
                    "row {} is not a single cyclic block of 1s",
                    k + 1
                )));
            }
            // rise at zero-based column r means pass r - 1 (zero-based) comes first
            let first = (rises[0] + width - 1) % width;
            pairs.push((first + 1, falls[0] + 1));
        }
        ChordDiagram::new(width, pairs)
    }
}

pub fn gauss_diagram<S: GaussSource + ?Sized>(source: &S) -> Result<ChordDiagram> {
    source.gauss_diagram()
}

/// The unique matching of columns of an ou matrix into zero-sum pairs.
pub fn column_pairs(ou: &OuMatrix) -> Result<ChordDiagram> {
    let width = ou.width();
    let rows = ou.rows();
    let cancels = |a: usize, b: usize| rows.iter().all(|r| r[a] + r[b] == 0);
    let mut partner = vec![None; width];
    for a in 0..width {
        let mut found = None;
        for b in 0..width {
            if a != b && cancels(a, b) {
                if found.is_some() {
                    return Err(Error::PairingNotUnique(a + 1));
                }
                found = Some(b);
            }
        }
        match found {
            Some(b) => partner[a] = Some(b),
            None => return Err(Error::PairingIncomplete(a + 1)),
        }
    }
    let pairs = partner
        .iter()
        .enumerate()
        .filter_map(|(a, b)| b.filter(|&b| a < b).map(|b| (a + 1, b + 1)));
    ChordDiagram::new(width, pairs)
}
