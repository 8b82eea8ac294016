use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use warpmatrix::verify::{self, corpus, Scope, VerifyOptions};
use warpmatrix::warpmat::{
    ou_matrix_with, warping_matrix_with, warping_matrix_without_signs_with, DEFAULT_MATERIALIZE_LIMIT,
    DEFAULT_STREAMING_LIMIT,
};
use warpmatrix::{
    column_pairs, diagram_from_assignment, gauss_diagram, incidence_matrix, parse_diagram,
    parse_projection, rank_exact, rank_i64, warping_matrix_rank_streaming, BuildOptions, Canonical,
    Error, KnotCode, KnotDiagram, MatrixDoc, MatrixFormat, OuMatrix,
};

const EXIT_FAILURES: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LIMIT: u8 = 3;
const EXIT_DATA: u8 = 4;

#[derive(Parser)]
#[command(name = "warpmatrix", version, about = "Warping matrices of knot projections and diagrams")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "WARPMATRIX_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

impl From<Format> for MatrixFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => MatrixFormat::Text,
            Format::Csv => MatrixFormat::Csv,
            Format::Json => MatrixFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Corpus,
    Exhaustive,
    Random,
}

#[derive(clap::Args)]
struct DiagramArg {
    /// Annotated code such as "O1 U2 O3 U1 O2 U3", or a plain code with --assignment.
    code: String,
    /// Assignment index: bit i set means the first pass of crossing i+1 is over.
    #[arg(long)]
    assignment: Option<u64>,
}

impl DiagramArg {
    fn diagram(&self) -> Result<KnotDiagram, Error> {
        match self.assignment {
            Some(idx) => diagram_from_assignment(&parse_projection(&self.code)?, idx),
            None => parse_diagram(&self.code),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Warping matrix M(P) of a projection.
    Wm {
        code: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MATERIALIZE_LIMIT)]
        max_crossings: usize,
    },
    /// Warping matrix of a diagram without signs: M(P) minus the diagram's own row.
    Wmbar {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MATERIALIZE_LIMIT)]
        max_crossings: usize,
    },
    /// Ou matrix U(P) = M(P) A.
    Ou {
        code: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Compute through the matrix product instead of directly from pass kinds.
        #[arg(long)]
        product: bool,
        #[arg(long, default_value_t = DEFAULT_MATERIALIZE_LIMIT)]
        max_crossings: usize,
    },
    /// Warping incidence matrix m(D).
    Incidence {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Zero-sum column pairs of the ou matrix.
    Pairs {
        code: String,
        #[arg(long, default_value_t = DEFAULT_MATERIALIZE_LIMIT)]
        max_crossings: usize,
    },
    /// Unsigned Gauss diagram, from a projection or from a diagram's incidence matrix.
    Gauss {
        code: String,
        #[arg(long)]
        assignment: Option<u64>,
    },
    /// Canonical form of a matrix read from standard input.
    Canon {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact rank of M(P) for a code, or of a matrix read from standard input.
    Rank {
        code: Option<String>,
        /// Never hold more than the reduced basis in memory.
        #[arg(long)]
        streaming: bool,
        /// Defaults to 20, or 28 with --streaming.
        #[arg(long)]
        max_crossings: Option<usize>,
    },
    /// Check every claim over a scope; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "corpus")]
        scope: ScopeArg,
        /// Largest word size in exhaustive scope.
        #[arg(long, default_value_t = 4)]
        max_crossings: usize,
        /// Number of random words.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Crossings per random word.
        #[arg(long, default_value_t = 8)]
        crossings: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials of the determinant identity.
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Diagrams checked per random word.
        #[arg(long, default_value_t = 8)]
        sample: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Built-in projections.
    Corpus {
        /// List the named projections.
        #[arg(long)]
        list: bool,
        /// List every normalized word with this many crossings.
        #[arg(long)]
        words: Option<usize>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooManyCrossings { .. } => EXIT_LIMIT,
        Error::EmptyInput
        | Error::LabelNotTwice { .. }
        | Error::BadToken(_)
        | Error::InconsistentKind(_)
        | Error::MissingKind(_)
        | Error::IndexOutOfRange { .. }
        | Error::Format(_) => EXIT_INPUT,
        _ => EXIT_DATA,
    }
}

fn read_stdin_doc() -> Result<MatrixDoc, Error> {
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Error::Format(e.to_string()))?;
    MatrixDoc::parse(&text)
}

fn limit(max_crossings: usize, jobs: Option<usize>) -> BuildOptions {
    BuildOptions { max_crossings, jobs }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Error> {
    let jobs = cli.jobs;
    let text = match cli.command {
        Command::Wm {
            code,
            format,
            max_crossings,
        } => {
            let p = parse_projection(&code)?;
            warping_matrix_with(&p, &limit(max_crossings, jobs))?
                .to_doc()
                .render(format.into())
        }
        Command::Wmbar {
            diagram,
            format,
            max_crossings,
        } => {
            let d = diagram.diagram()?;
            warping_matrix_without_signs_with(&d, &limit(max_crossings, jobs))?
                .to_doc()
                .render(format.into())
        }
        Command::Ou {
            code,
            format,
            product,
            max_crossings,
        } => {
            let p = parse_projection(&code)?;
            let opts = limit(max_crossings, jobs);
            let u = if product {
                OuMatrix::from_warping_matrix(&warping_matrix_with(&p, &opts)?)?
            } else {
                ou_matrix_with(&p, &opts)?
            };
            u.to_doc().render(format.into())
        }
        Command::Incidence { diagram, format } => {
            let m = incidence_matrix(&diagram.diagram()?);
            MatrixDoc {
                c: Some(m.crossing_count()),
                labels: Some((1..=m.crossing_count() as u64).collect()),
                rows: m.to_i64_rows(),
            }
            .render(format.into())
        }
        Command::Pairs { code, max_crossings } => {
            let p = parse_projection(&code)?;
            let u = ou_matrix_with(&p, &limit(max_crossings, jobs))?;
            format!("{}\n", column_pairs(&u)?)
        }
        Command::Gauss { code, assignment } => {
            let chords = match (KnotCode::parse(&code)?, assignment) {
                (KnotCode::Diagram(d), _) => gauss_diagram(&incidence_matrix(&d))?,
                (KnotCode::Projection(p), Some(idx)) => {
                    gauss_diagram(&incidence_matrix(&diagram_from_assignment(&p, idx)?))?
                }
                (KnotCode::Projection(p), None) => gauss_diagram(&p)?,
            };
            format!("{chords}\n")
        }
        Command::Canon { format } => read_stdin_doc()?.canonical_form().render(format.into()),
        Command::Rank {
            code,
            streaming,
            max_crossings,
        } => {
            let rank = match code {
                Some(code) => {
                    let p = parse_projection(&code)?;
                    if streaming {
                        let max = max_crossings.unwrap_or(DEFAULT_STREAMING_LIMIT);
                        warping_matrix_rank_streaming(&p, &limit(max, jobs))?
                    } else {
                        let max = max_crossings.unwrap_or(DEFAULT_MATERIALIZE_LIMIT);
                        let m = warping_matrix_with(&p, &limit(max, jobs))?;
                        rank_i64(m.rows(), m.width())?
                    }
                }
                None => {
                    let doc = read_stdin_doc()?;
                    let width = doc.width().unwrap_or(0);
                    if streaming {
                        rank_exact(&doc.rows, width)?
                    } else {
                        rank_i64(&doc.rows, width)?
                    }
                }
            };
            format!("{rank}\n")
        }
        Command::Verify {
            scope,
            max_crossings,
            n,
            crossings,
            seed,
            trials,
            sample,
            format,
        } => {
            let scope = match scope {
                ScopeArg::Corpus => Scope::Corpus,
                ScopeArg::Exhaustive => Scope::Exhaustive { max_crossings },
                ScopeArg::Random => Scope::Random { n, crossings, seed },
            };
            let opts = VerifyOptions {
                jobs,
                lemma_trials: trials,
                lemma_seed: seed,
                diagram_sample: sample,
            };
            let reports = verify::verify_all(scope, &opts);
            let body = match format {
                Format::Json => reports
                    .iter()
                    .map(|r| r.to_json_line() + "\n")
                    .collect::<String>(),
                _ => verify::render_table(&reports),
            };
            out.write_all(body.as_bytes())
                .map_err(|e| Error::Format(e.to_string()))?;
            let failed = reports.iter().any(|r| !r.pass);
            return Ok(if failed { EXIT_FAILURES } else { 0 });
        }
        Command::Corpus { list, words } => {
            let mut s = String::new();
            if list || words.is_none() {
                for (name, p) in corpus::named_corpus() {
                    s.push_str(&format!("{name}\t{p}\n"));
                }
            }
            if let Some(c) = words {
                for p in corpus::double_occurrence_words(c) {
                    s.push_str(&format!("{p}\n"));
                }
            }
            s
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Format(e.to_string()))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
