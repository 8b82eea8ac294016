//! Built-in projections and word generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::knotio::{parse_projection, KnotProjection};

pub const NAMED: [(&str, &str); 5] = [
    ("curl", "1 1"),
    ("double-twist", "1 2 2 1"),
    ("interlaced", "1 2 1 2"),
    ("trefoil", "1 2 3 1 2 3"),
    ("figure-eight", "1 2 3 4 2 1 4 3"),
];

pub fn named_corpus() -> Vec<(&'static str, KnotProjection)> {
    NAMED
        .iter()
        .map(|&(name, code)| (name, parse_projection(code).expect("corpus codes parse")))
        .collect()
}

/// Every double-occurrence word on `c` letters in first-appearance normal form,
/// i.e. every perfect matching of `2c` cyclically ordered positions: `(2c - 1)!!` words.
pub fn double_occurrence_words(c: usize) -> Vec<KnotProjection> {
    fn fill(word: &mut [u64], next: u64, out: &mut Vec<KnotProjection>) {
        let Some(first) = word.iter().position(|&l| l == 0) else {
            out.push(KnotProjection::from_labels(word).expect("complete matching"));
            return;
        };
        word[first] = next;
        for second in first + 1..word.len() {
            if word[second] == 0 {
                word[second] = next;
                fill(word, next + 1, out);
                word[second] = 0;
            }
        }
        word[first] = 0;
    }
    let mut out = Vec::new();
    if c > 0 {
        fill(&mut vec![0; 2 * c], 1, &mut out);
    }
    out
}

/// Uniform shuffle of the multiset `{1, 1, ..., c, c}`.
pub fn random_word<R: Rng + ?Sized>(c: usize, rng: &mut R) -> KnotProjection {
    let mut labels: Vec<u64> = (1..=c as u64).flat_map(|k| [k, k]).collect();
    labels.shuffle(rng);
    KnotProjection::from_labels(&labels).expect("shuffled pairs form a word")
}
