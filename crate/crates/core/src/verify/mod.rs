//! Executable checks of the warping-matrix rank and independence results.
//!
//! Each check returns [`VerificationReport`]s instead of failing, so a run over a
//! large scope lists every counterexample. Gauss words are never tested for
//! planarity; every report carries `realizability: "unchecked"`.

mod claims;
pub mod corpus;

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use claims::{
    verify_crossing_change_independence, verify_incidence_claims, verify_lemma_determinants,
    verify_matrix_properties, verify_ou_consistency, verify_streaming_oracle, verify_unsigned_rank,
    verify_warping_rank,
};

use crate::knotio::{diagram_from_assignment, KnotDiagram, KnotProjection};
use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    AdjacentDifference,
    ColumnBinomial,
    RankWarpingMatrix,
    RankUnsignedMatrix,
    OuProductDirect,
    OuColumnPairs,
    GaussDiagramAgree,
    StreamingRankOracle,
    LemmaDeterminant,
    IncidenceRowSum,
    IncidenceUniqueRise,
    IncidenceCrossingFlip,
    IncidenceRank,
    IncidenceWithOnesRank,
    CrossingChangeIndependence,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::AdjacentDifference => "adjacent-difference",
            Claim::ColumnBinomial => "column-binomial",
            Claim::RankWarpingMatrix => "rank-warping-matrix",
            Claim::RankUnsignedMatrix => "rank-unsigned-matrix",
            Claim::OuProductDirect => "ou-product-direct",
            Claim::OuColumnPairs => "ou-column-pairs",
            Claim::GaussDiagramAgree => "gauss-diagram-agree",
            Claim::StreamingRankOracle => "streaming-rank-oracle",
            Claim::LemmaDeterminant => "lemma-determinant",
            Claim::IncidenceRowSum => "incidence-row-sum",
            Claim::IncidenceUniqueRise => "incidence-unique-rise",
            Claim::IncidenceCrossingFlip => "incidence-crossing-flip",
            Claim::IncidenceRank => "incidence-rank",
            Claim::IncidenceWithOnesRank => "incidence-with-ones-rank",
            Claim::CrossingChangeIndependence => "crossing-change-independence",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Realizability {
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub instance: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub runtime_ms: f64,
    pub realizability: Realizability,
}

impl VerificationReport {
    pub fn new(
        claim: Claim,
        instance: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        runtime: Duration,
    ) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        VerificationReport {
            claim,
            instance: instance.into(),
            pass: expected == actual,
            expected,
            actual,
            runtime_ms: runtime.as_secs_f64() * 1e3,
            realizability: Realizability::Unchecked,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Times `f` and wraps its `(expected, actual)` in a report.
pub(crate) fn timed<E: fmt::Display, A: fmt::Display>(
    claim: Claim,
    instance: impl Into<String>,
    f: impl FnOnce() -> (E, A),
) -> VerificationReport {
    let start = Instant::now();
    let (expected, actual) = f();
    VerificationReport::new(claim, instance, expected, actual, start.elapsed())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Corpus,
    /// Every word with `1..=max_crossings` crossings and every diagram over it.
    Exhaustive { max_crossings: usize },
    /// `n` uniform random words with `crossings` crossings.
    Random { n: usize, crossings: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub jobs: Option<usize>,
    pub lemma_trials: usize,
    pub lemma_seed: u64,
    /// Diagrams checked per word in random scope; exhaustive and corpus scopes check all.
    pub diagram_sample: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            jobs: None,
            lemma_trials: 10_000,
            lemma_seed: 42,
            diagram_sample: 8,
        }
    }
}

/// Checks on a projection alone.
pub fn verify_projection(p: &KnotProjection) -> Vec<VerificationReport> {
    let mut out = verify_matrix_properties(p);
    out.push(verify_warping_rank(p));
    out.extend(verify_ou_consistency(p));
    out.push(verify_streaming_oracle(p));
    out
}

/// Checks on a single diagram.
pub fn verify_diagram(d: &KnotDiagram) -> Vec<VerificationReport> {
    let mut out = vec![verify_unsigned_rank(d)];
    out.extend(verify_incidence_claims(d));
    out.push(verify_crossing_change_independence(d));
    out
}

struct Task {
    projection: KnotProjection,
    diagrams: Vec<u64>,
}

fn all_diagrams(p: KnotProjection) -> Task {
    let count = p.assignment_count().expect("verification scopes stay small");
    Task {
        diagrams: (0..count).collect(),
        projection: p,
    }
}

fn tasks(scope: Scope, opts: &VerifyOptions) -> Vec<Task> {
    match scope {
        Scope::Corpus => corpus::named_corpus()
            .into_iter()
            .map(|(_, p)| all_diagrams(p))
            .collect(),
        Scope::Exhaustive { max_crossings } => (1..=max_crossings)
            .flat_map(corpus::double_occurrence_words)
            .map(all_diagrams)
            .collect(),
        Scope::Random { n, crossings, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| {
                    let p = corpus::random_word(crossings, &mut rng);
                    let count = p.assignment_count().expect("verification scopes stay small");
                    let take = (opts.diagram_sample as u64).min(count) as usize;
                    let mut diagrams: Vec<u64> = index::sample(&mut rng, count as usize, take)
                        .into_iter()
                        .map(|i| i as u64)
                        .collect();
                    diagrams.sort_unstable();
                    Task {
                        projection: p,
                        diagrams,
                    }
                })
                .collect()
        }
    }
}

/// Runs every check over `scope`. Reports are sorted by claim, then instance.
pub fn verify_all(scope: Scope, opts: &VerifyOptions) -> Vec<VerificationReport> {
    let tasks = tasks(scope, opts);
    let mut reports = parallel::install(opts.jobs, || {
        let mut reports: Vec<VerificationReport> = tasks
            .par_iter()
            .flat_map_iter(|t| {
                let mut out = verify_projection(&t.projection);
                for &idx in &t.diagrams {
                    let d = diagram_from_assignment(&t.projection, idx).expect("index in range");
                    out.extend(verify_diagram(&d));
                }
                out
            })
            .collect();
        if opts.lemma_trials > 0 {
            reports.push(verify_lemma_determinants(opts.lemma_trials, opts.lemma_seed, 2..=10));
        }
        reports
    });
    reports.sort_by(|a, b| (a.claim, &a.instance).cmp(&(b.claim, &b.instance)));
    reports
}

/// Aligned plain-text table.
pub fn render_table(reports: &[VerificationReport]) -> String {
    let claim_w = reports.iter().map(|r| r.claim.as_str().len()).max().unwrap_or(5).max(5);
    let inst_w = reports.iter().map(|r| r.instance.len()).max().unwrap_or(8).max(8);
    let mut out = format!(
        "{:<4}  {:<claim_w$}  {:<inst_w$}  expected / actual\n",
        "ok", "claim", "instance"
    );
    for r in reports {
        out.push_str(&format!(
            "{:<4}  {:<claim_w$}  {:<inst_w$}  {} / {}\n",
            if r.pass { "pass" } else { "FAIL" },
            r.claim.as_str(),
            r.instance,
            r.expected,
            r.actual
        ));
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    out.push_str(&format!("{} reports, {} failed\n", reports.len(), failed));
    out
}
