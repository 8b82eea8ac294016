use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{timed, Claim, VerificationReport};
use crate::error::Result;
use crate::exactla::{det_i64, lemma_det_closed_form, lemma_matrix, rank_exact, rank_i64, LemmaVariant};
use crate::knotio::{KnotDiagram, KnotProjection};
use crate::warpcore::{crossing_change, incidence_matrix, warping_degree_sequence};
use crate::warpmat::{
    column_pairs, gauss_diagram, ou_matrix, warping_matrix, warping_matrix_rank_streaming,
    warping_matrix_without_signs, BuildOptions, OuMatrix,
};

fn binomial_row(c: usize) -> Vec<u64> {
    let mut row = vec![1u64; c + 1];
    for n in 1..c {
        row[n] = row[n - 1] * (c - n + 1) as u64 / n as u64;
    }
    row
}

fn show_counts(counts: &[u64]) -> String {
    let mut s = String::from("(");
    for (n, k) in counts.iter().enumerate() {
        if n > 0 {
            s.push_str(", ");
        }
        write!(s, "{n}:{k}").unwrap();
    }
    s.push(')');
    s
}

fn show<T: std::fmt::Display>(r: Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Adjacent entries of every row differ by one, and every column of `M(P)` holds
/// the value `n` exactly `C(c, n)` times.
pub fn verify_matrix_properties(p: &KnotProjection) -> Vec<VerificationReport> {
    let instance = p.to_string();
    let c = p.crossing_count();
    let built = warping_matrix(p);
    let adjacent = timed(Claim::AdjacentDifference, instance.clone(), || {
        let actual = match &built {
            Ok(m) => {
                let bad = m
                    .rows()
                    .iter()
                    .filter(|row| {
                        (0..row.len()).any(|j| (row[(j + 1) % row.len()] - row[j]).abs() != 1)
                    })
                    .count();
                format!("{bad} rows violating")
            }
            Err(e) => format!("error: {e}"),
        };
        ("0 rows violating".to_string(), actual)
    });
    let columns = timed(Claim::ColumnBinomial, instance, || {
        let want = show_counts(&binomial_row(c));
        let actual = match &built {
            Ok(m) => {
                let mut verdict = format!("{want} in every column");
                for j in 0..m.width() {
                    let mut counts = vec![0u64; c + 1];
                    let mut outside = false;
                    for row in m.rows() {
                        match usize::try_from(row[j]).ok().filter(|&v| v <= c) {
                            Some(v) => counts[v] += 1,
                            None => outside = true,
                        }
                    }
                    if outside || counts != binomial_row(c) {
                        verdict = format!("column {} counts {}", j + 1, show_counts(&counts));
                        break;
                    }
                }
                verdict
            }
            Err(e) => format!("error: {e}"),
        };
        (format!("{want} in every column"), actual)
    });
    vec![adjacent, columns]
}

/// Rank of `M(P)` is `c + 1`, computed by the streaming accumulator.
pub fn verify_warping_rank(p: &KnotProjection) -> VerificationReport {
    timed(Claim::RankWarpingMatrix, p.to_string(), || {
        let rank = warping_matrix_rank_streaming(p, &BuildOptions::streaming());
        (p.crossing_count() + 1, show(rank))
    })
}

/// Streaming rank agrees with fraction-free elimination of the materialized matrix.
pub fn verify_streaming_oracle(p: &KnotProjection) -> VerificationReport {
    timed(Claim::StreamingRankOracle, p.to_string(), || {
        let materialized = warping_matrix(p).and_then(|m| rank_i64(m.rows(), m.width()));
        let streaming = warping_matrix_rank_streaming(p, &BuildOptions::streaming());
        (show(materialized), show(streaming))
    })
}

/// Rank of `M(P)` with the row of `d` deleted is still `c + 1`.
pub fn verify_unsigned_rank(d: &KnotDiagram) -> VerificationReport {
    timed(Claim::RankUnsignedMatrix, d.to_string(), || {
        let rank = warping_matrix_without_signs(d).and_then(|m| rank_exact(m.rows(), m.width()));
        (d.crossing_count() + 1, show(rank))
    })
}

/// Product route equals direct route; columns pair into `c` zero-sum pairs matching
/// the word's own chords; incidence matrices of every diagram recover the same chords.
pub fn verify_ou_consistency(p: &KnotProjection) -> Vec<VerificationReport> {
    let instance = p.to_string();
    let direct = ou_matrix(p);
    let product = timed(Claim::OuProductDirect, instance.clone(), || {
        let product = warping_matrix(p).and_then(|m| OuMatrix::from_warping_matrix(&m));
        let actual = match (&direct, &product) {
            (Ok(a), Ok(b)) if a == b => "equal".to_string(),
            (Ok(_), Ok(_)) => "differ".to_string(),
            (Err(e), _) | (_, Err(e)) => format!("error: {e}"),
        };
        ("equal", actual)
    });
    let own = gauss_diagram(p);
    let pairs = timed(Claim::OuColumnPairs, instance.clone(), || {
        let actual = match direct.as_ref().map(column_pairs) {
            Ok(Ok(chords)) if Ok(&chords) == own.as_ref() => format!("{chords}"),
            Ok(Ok(chords)) => format!("{chords} (word has {})", show(own.clone())),
            Ok(Err(e)) => format!("error: {e}"),
            Err(e) => format!("error: {e}"),
        };
        (show(own.clone()), actual)
    });
    let agree = timed(Claim::GaussDiagramAgree, instance, || {
        let count = p.assignment_count().unwrap_or(0);
        let mut disagreements = 0u64;
        for idx in 0..count {
            let d = crate::knotio::diagram_from_assignment(p, idx).expect("index in range");
            if gauss_diagram(&incidence_matrix(&d)).ok() != own.as_ref().ok().cloned() {
                disagreements += 1;
            }
        }
        if direct.as_ref().ok().map(|u| gauss_diagram(u).ok()) != Some(own.as_ref().ok().cloned()) {
            disagreements += 1;
        }
        ("0 disagreements", format!("{disagreements} disagreements"))
    });
    vec![product, pairs, agree]
}

/// The five incidence-matrix checks for one diagram.
pub fn verify_incidence_claims(d: &KnotDiagram) -> Vec<VerificationReport> {
    let instance = d.to_string();
    let c = d.crossing_count();
    let m = incidence_matrix(d);
    let width = 2 * c;

    let row_sum = timed(Claim::IncidenceRowSum, instance.clone(), || {
        let s = warping_degree_sequence(d);
        (format!("{:?}", s.values()), format!("{:?}", m.column_sums()))
    });
    let unique_rise = timed(Claim::IncidenceUniqueRise, instance.clone(), || {
        let unique = (1..=c).filter(|&k| m.isolated_rises(k).len() == 1).count();
        (format!("{c} rows with a unique rise"), format!("{unique} rows with a unique rise"))
    });
    let flip = timed(Claim::IncidenceCrossingFlip, instance.clone(), || {
        let ok = (1..=c)
            .filter(|&i| {
                let changed = incidence_matrix(&crossing_change(d, i).expect("crossing in range"));
                m.rows().iter().zip(changed.rows()).enumerate().all(|(r, (a, b))| {
                    if r + 1 == i {
                        a.iter().zip(b).all(|(x, y)| x + y == 1)
                    } else {
                        a == b
                    }
                })
            })
            .count();
        (format!("{c} crossings flip one row"), format!("{ok} crossings flip one row"))
    });
    let rows = m.to_i64_rows();
    let rank = timed(Claim::IncidenceRank, instance.clone(), || {
        (c, show(rank_exact(&rows, width)))
    });
    let with_ones = timed(Claim::IncidenceWithOnesRank, instance, || {
        let mut all = rows.clone();
        all.push(vec![1; width]);
        (c + 1, show(rank_exact(&all, width)))
    });
    vec![row_sum, unique_rise, flip, rank, with_ones]
}

/// `s(D)` and the sequences of the `c` single crossing changes have rank `c + 1`.
pub fn verify_crossing_change_independence(d: &KnotDiagram) -> VerificationReport {
    timed(Claim::CrossingChangeIndependence, d.to_string(), || {
        let c = d.crossing_count();
        let mut rows = vec![warping_degree_sequence(d).into_inner()];
        for i in 1..=c {
            let changed = crossing_change(d, i).expect("crossing in range");
            rows.push(warping_degree_sequence(&changed).into_inner());
        }
        (c + 1, show(rank_exact(&rows, 2 * c)))
    })
}

/// Random `a` with entries in `-50..=50` and `c` drawn from `crossings`: the exact
/// determinant of both sign-pattern matrices equals the closed form.
pub fn verify_lemma_determinants(trials: usize, seed: u64, crossings: RangeInclusive<usize>) -> VerificationReport {
    let instance = format!(
        "trials={trials} seed={seed} c={}..={}",
        crossings.start(),
        crossings.end()
    );
    timed(Claim::LemmaDeterminant, instance, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut agree = 0usize;
        let mut first_failure: BTreeMap<usize, String> = BTreeMap::new();
        for t in 0..trials {
            let c = rng.random_range(crossings.clone());
            let a: Vec<i64> = (0..=c).map(|_| rng.random_range(-50..=50)).collect();
            let ok = [LemmaVariant::Plus, LemmaVariant::Minus].iter().all(|&v| {
                let m = lemma_matrix(&a, v).map(|m| m.entries);
                match (m.and_then(|m| det_i64(&m)), lemma_det_closed_form(&a, v)) {
                    (Ok(x), Ok(y)) => x == BigInt::from(y),
                    _ => false,
                }
            });
            if ok {
                agree += 1;
            } else if first_failure.is_empty() {
                first_failure.insert(t, format!("{a:?}"));
            }
        }
        let mut actual = format!("{agree} trials agree");
        if let Some((t, a)) = first_failure.iter().next() {
            write!(actual, ", first failure at trial {t} a={a}").unwrap();
        }
        (format!("{trials} trials agree"), actual)
    })
}
