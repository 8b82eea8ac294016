//! Gauss codes for knot projections and diagrams.
//!
//! A projection is a cyclic double-occurrence word: each crossing label is met
//! twice along the curve. Labels are renumbered to `1..=c` in order of first
//! appearance, so structurally equal codes compare equal.
//!
//! Positions along the word are the *passes* `1..=2c`. Edge `e_j` (and its base
//! point `b_j`) is the arc that ends at pass `j`: starting from `b_j`, the first
//! pass met is pass `j`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Not;

use crate::error::{Error, Result};

/// Largest crossing count a diagram can carry; assignments are `u64` bitmasks.
pub const MAX_DIAGRAM_CROSSINGS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PassKind {
    Over,
    Under,
}

impl PassKind {
    pub fn sign(self) -> i64 {
        match self {
            PassKind::Over => 1,
            PassKind::Under => -1,
        }
    }

    fn prefix(self) -> char {
        match self {
            PassKind::Over => 'O',
            PassKind::Under => 'U',
        }
    }
}

impl Not for PassKind {
    type Output = PassKind;

    fn not(self) -> PassKind {
        match self {
            PassKind::Over => PassKind::Under,
            PassKind::Under => PassKind::Over,
        }
    }
}

/// One-based edge / base point index `j` in `1..=2c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeIndex(usize);

impl EdgeIndex {
    pub fn new(j: usize) -> Self {
        EdgeIndex(j)
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Zero-based pass position, checked against a projection with `crossings` crossings.
    pub(crate) fn position(self, crossings: usize) -> Result<usize> {
        let edges = 2 * crossings;
        if self.0 == 0 || self.0 > edges {
            return Err(Error::IndexOutOfRange {
                what: "edge",
                index: self.0 as u64,
                max: edges as u64,
            });
        }
        Ok(self.0 - 1)
    }
}

impl From<usize> for EdgeIndex {
    fn from(j: usize) -> Self {
        EdgeIndex(j)
    }
}

/// Normalized Gauss code of a knot projection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotProjection {
    /// Crossing label (1-based) at each pass.
    passes: Vec<usize>,
    /// Zero-based positions of the two passes of each crossing, first < second.
    chords: Vec<(usize, usize)>,
}

impl KnotProjection {
    /// Builds a projection from any double-occurrence word of positive labels.
    pub fn from_labels(labels: &[u64]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut renumber: HashMap<u64, usize> = HashMap::new();
        let mut order = Vec::new();
        let mut counts = Vec::new();
        let mut passes = Vec::with_capacity(labels.len());
        for &label in labels {
            let next = renumber.len() + 1;
            let id = *renumber.entry(label).or_insert_with(|| {
                order.push(label);
                counts.push(0usize);
                next
            });
            counts[id - 1] += 1;
            passes.push(id);
        }
        if let Some(i) = counts.iter().position(|&n| n != 2) {
            return Err(Error::LabelNotTwice {
                label: order[i],
                count: counts[i],
            });
        }
        let mut chords = vec![(usize::MAX, usize::MAX); order.len()];
        for (pos, &id) in passes.iter().enumerate() {
            let chord = &mut chords[id - 1];
            if chord.0 == usize::MAX {
                chord.0 = pos;
            } else {
                chord.1 = pos;
            }
        }
        Ok(KnotProjection { passes, chords })
    }

    pub fn crossing_count(&self) -> usize {
        self.chords.len()
    }

    /// Number of edges, `2c`.
    pub fn edge_count(&self) -> usize {
        self.passes.len()
    }

    /// Normalized labels along the traversal.
    pub fn passes(&self) -> &[usize] {
        &self.passes
    }

    /// Zero-based positions `(first, second)` of each crossing's passes, indexed by crossing - 1.
    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    /// Zero-based positions of crossing `k` (1-based).
    pub fn chord(&self, k: usize) -> Result<(usize, usize)> {
        if k == 0 || k > self.crossing_count() {
            return Err(Error::IndexOutOfRange {
                what: "crossing",
                index: k as u64,
                max: self.crossing_count() as u64,
            });
        }
        Ok(self.chords[k - 1])
    }

    /// Number of over/under assignments, `2^c`. Only valid for diagram-sized projections.
    pub fn assignment_count(&self) -> Result<u64> {
        let c = self.crossing_count();
        if c > MAX_DIAGRAM_CROSSINGS {
            return Err(Error::TooManyCrossings {
                crossings: c,
                limit: MAX_DIAGRAM_CROSSINGS,
            });
        }
        Ok(1u64 << c)
    }
}

impl fmt::Display for KnotProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, label) in self.passes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

/// A projection with over/under information at every crossing.
///
/// The assignment is stored as a bitmask: bit `i` set means the first pass of
/// crossing `i + 1` is over. The second pass is always the opposite kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    projection: KnotProjection,
    assignment: u64,
}

impl KnotDiagram {
    pub fn projection(&self) -> &KnotProjection {
        &self.projection
    }

    pub fn crossing_count(&self) -> usize {
        self.projection.crossing_count()
    }

    pub fn assignment_index(&self) -> u64 {
        self.assignment
    }

    /// Kind of the first pass of crossing `k` (1-based).
    pub fn first_kind(&self, k: usize) -> PassKind {
        if self.assignment >> (k - 1) & 1 == 1 {
            PassKind::Over
        } else {
            PassKind::Under
        }
    }

    /// Kind of the pass at zero-based position `pos`.
    pub fn kind_at(&self, pos: usize) -> PassKind {
        let k = self.projection.passes[pos];
        let first = self.first_kind(k);
        if self.projection.chords[k - 1].0 == pos {
            first
        } else {
            !first
        }
    }

    /// Pass kinds along the traversal.
    pub fn kinds(&self) -> Vec<PassKind> {
        (0..self.projection.edge_count())
            .map(|pos| self.kind_at(pos))
            .collect()
    }

    pub(crate) fn with_assignment(&self, assignment: u64) -> KnotDiagram {
        KnotDiagram {
            projection: self.projection.clone(),
            assignment,
        }
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, label) in self.projection.passes.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{label}", self.kind_at(pos).prefix())?;
        }
        Ok(())
    }
}

struct Token {
    kind: Option<PassKind>,
    label: u64,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    for (i, raw) in text.split_whitespace().enumerate() {
        let position = i + 1;
        let (kind, digits) = match raw.chars().next() {
            Some('O' | 'o') => (Some(PassKind::Over), &raw[1..]),
            Some('U' | 'u') => (Some(PassKind::Under), &raw[1..]),
            _ => (None, raw),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::BadToken(position));
        }
        let label: u64 = digits.parse().map_err(|_| Error::BadToken(position))?;
        if label == 0 {
            return Err(Error::BadToken(position));
        }
        tokens.push(Token { kind, label });
    }
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(tokens)
}

/// Parses a Gauss code, ignoring any O/U prefixes.
pub fn parse_projection(text: &str) -> Result<KnotProjection> {
    let labels: Vec<u64> = tokenize(text)?.iter().map(|t| t.label).collect();
    KnotProjection::from_labels(&labels)
}

/// Parses an annotated Gauss code such as `O1 U2 O3 U1 O2 U3`.
pub fn parse_diagram(text: &str) -> Result<KnotDiagram> {
    let tokens = tokenize(text)?;
    let labels: Vec<u64> = tokens.iter().map(|t| t.label).collect();
    let projection = KnotProjection::from_labels(&labels)?;
    if let Some(i) = tokens.iter().position(|t| t.kind.is_none()) {
        return Err(Error::MissingKind(i + 1));
    }
    if projection.crossing_count() > MAX_DIAGRAM_CROSSINGS {
        return Err(Error::TooManyCrossings {
            crossings: projection.crossing_count(),
            limit: MAX_DIAGRAM_CROSSINGS,
        });
    }
    let mut assignment = 0u64;
    for (k, &(first, second)) in projection.chords.iter().enumerate() {
        let a = tokens[first].kind.unwrap();
        let b = tokens[second].kind.unwrap();
        if a == b {
            return Err(Error::InconsistentKind(tokens[first].label));
        }
        if a == PassKind::Over {
            assignment |= 1 << k;
        }
    }
    Ok(KnotDiagram {
        projection,
        assignment,
    })
}

/// Diagram over `projection` whose first-pass kinds are encoded by `index`.
pub fn diagram_from_assignment(projection: &KnotProjection, index: u64) -> Result<KnotDiagram> {
    let count = projection.assignment_count()?;
    if index >= count {
        return Err(Error::IndexOutOfRange {
            what: "assignment",
            index,
            max: count - 1,
        });
    }
    Ok(KnotDiagram {
        projection: projection.clone(),
        assignment: index,
    })
}

pub fn shadow(diagram: &KnotDiagram) -> KnotProjection {
    diagram.projection.clone()
}

/// Either kind of knot object, for callers that accept both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotCode {
    Projection(KnotProjection),
    Diagram(KnotDiagram),
}

impl KnotCode {
    /// Parses as a diagram when every token carries a prefix, else as a projection.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        if tokens.iter().all(|t| t.kind.is_some()) {
            parse_diagram(text).map(KnotCode::Diagram)
        } else {
            parse_projection(text).map(KnotCode::Projection)
        }
    }

    pub fn projection(&self) -> &KnotProjection {
        match self {
            KnotCode::Projection(p) => p,
            KnotCode::Diagram(d) => d.projection(),
        }
    }
}

pub fn render(code: &KnotCode) -> String {
    match code {
        KnotCode::Projection(p) => p.to_string(),
        KnotCode::Diagram(d) => d.to_string(),
    }
}
