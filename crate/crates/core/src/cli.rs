//! Command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 malformed input, 3 constraint
//! violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::io::{self, ReportFormat};
use crate::kst::KnowledgeStructure;
use crate::order::Execution;
use crate::synth::{self, SynthError, SynthSpec};
use crate::table::{Flexibility, FlexibilityError, JudgmentTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONSTRAINT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "surmise",
    version,
    about = "Prerequisite hierarchies from model judgment tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classes, order relation, covering edges and layers of a table.
    Analyze {
        /// Judgment table: header `model,<target>...`, one 0/1 row per model.
        csv: PathBuf,
        /// Tolerated percentage of counterexample models, 0 <= P < 50.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        flexibility: String,
        /// Emit JSON.
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Emit plain text (the default).
        #[arg(long)]
        text: bool,
        /// Also list pair counts for every ordered target pair.
        #[arg(long)]
        counts: bool,
    },
    /// The hierarchy diagram as Graphviz DOT (default) or JSON.
    Hasse {
        /// Judgment table: header `model,<target>...`, one 0/1 row per model.
        csv: PathBuf,
        /// Tolerated percentage of counterexample models, 0 <= P < 50.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        flexibility: String,
        /// Emit Graphviz DOT (the default).
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Emit nodes with layers, and edges, as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Model counts for the four response patterns on one target pair.
    Counts {
        /// Judgment table: header `model,<target>...`, one 0/1 row per model.
        csv: PathBuf,
        /// First target of the pair.
        #[arg(long = "p", value_name = "NAME")]
        p: String,
        /// Second target of the pair.
        #[arg(long = "q", value_name = "NAME")]
        q: String,
    },
    /// States, states per item, concepts and discriminative reduction, reading
    /// each CSV row as one state.
    Structure {
        /// Table whose rows are read as states.
        csv: PathBuf,
        /// Do not add the empty and the full state.
        #[arg(long)]
        no_complete: bool,
    },
    /// A random table generated from a random planted order, as CSV.
    Synth {
        /// Number of targets in the planted order (at most 20).
        #[arg(long)]
        targets: usize,
        /// Number of model rows to sample.
        #[arg(long)]
        models: usize,
        /// Seed for the order and the sampled rows.
        #[arg(long)]
        seed: u64,
        /// Per-cell flip probability.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        noise: f64,
        /// Probability of each forward prerequisite edge before reduction.
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        density: f64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Constraint(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Constraint(_) => EXIT_CONSTRAINT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Constraint(m) => m,
        }
    }
}

impl From<SynthError> for Failure {
    fn from(e: SynthError) -> Self {
        Failure::Constraint(e.to_string())
    }
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                EXIT_INPUT
            }
        },
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.code()
        }
    }
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Analyze {
            csv,
            flexibility,
            json,
            text: _,
            counts,
        } => {
            let table = load_table(&csv)?;
            let alpha = parse_flexibility(&flexibility)?;
            let analysis = run_analysis(&table, alpha)?;
            let report = io::AnalysisReport::new(&table, &analysis, counts);
            let format = if json {
                ReportFormat::Json
            } else {
                ReportFormat::Text
            };
            Ok(io::emit_report(&report, format))
        }
        Command::Hasse {
            csv,
            flexibility,
            dot: _,
            json,
        } => {
            let table = load_table(&csv)?;
            let alpha = parse_flexibility(&flexibility)?;
            let analysis = run_analysis(&table, alpha)?;
            Ok(if json {
                io::emit_diagram_json(&analysis.diagram)
            } else {
                io::emit_dot(&analysis.diagram)
            })
        }
        Command::Counts { csv, p, q } => {
            let table = load_table(&csv)?;
            let p = table
                .target_index(&p)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let q = table
                .target_index(&q)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let counts = table
                .pair_counts(p, q)
                .expect("indices come from the table");
            Ok(format!("{counts}\n"))
        }
        Command::Structure { csv, no_complete } => {
            let table = load_table(&csv)?;
            let structure = KnowledgeStructure::from_table(&table, !no_complete);
            Ok(io::render_structure(&structure))
        }
        Command::Synth {
            targets,
            models,
            seed,
            noise,
            density,
        } => {
            if targets == 0 || targets > synth::MAX_ELEMENTS {
                return Err(Failure::Constraint(format!(
                    "--targets must be between 1 and {}, got {targets}",
                    synth::MAX_ELEMENTS
                )));
            }
            let poset = synth::random_poset(targets, density, seed)?;
            let spec = SynthSpec::new(poset, models, noise, seed.wrapping_add(1))?;
            let table = synth::sample_models(&spec)?;
            Ok(io::write_csv(&table))
        }
    }
}

fn load_table(path: &Path) -> Result<JudgmentTable, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    io::parse_csv(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_flexibility(text: &str) -> Result<Flexibility, Failure> {
    text.parse().map_err(|e: FlexibilityError| match e {
        FlexibilityError::Malformed(_) => Failure::Usage(e.to_string()),
        FlexibilityError::OutOfRange(_) => Failure::Constraint(e.to_string()),
    })
}

fn run_analysis(table: &JudgmentTable, alpha: Flexibility) -> Result<io::Analysis, Failure> {
    io::analyze(table, alpha, Execution::Parallel)
        .map_err(|e| Failure::Constraint(format!("internal invariant violated: {e}")))
}
