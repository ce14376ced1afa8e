//! `logcsm`: file-based verification jobs from the command line.
//!
//! Exit codes: 0 verified / true, 1 false, 2 inconclusive or resource limit,
//! 3 input error. Usage errors also exit 3.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logcsm::verify::{batch_verify, run_job, JobKind, JobOptions, JobOutcome, JobSpec, EXIT_INPUT_ERROR, EXIT_OK};
use logcsm::Execution;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "logcsm", version, about = "Exact checks of c_SM(1_U) = c(Der(-log D)) ∩ [X]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare both sides for a central arrangement and check the hypotheses.
    Verify(Common),
    /// Search for a Saito basis of an arrangement or a polynomial.
    Freeness {
        #[command(flatten)]
        common: Common,
        /// Defining polynomial, instead of --input.
        #[arg(long, conflicts_with = "input")]
        polynomial: Option<String>,
        /// Ring variables for --polynomial, comma separated.
        #[arg(long, value_delimiter = ',')]
        variables: Option<Vec<String>>,
    },
    /// Decide whether an ideal is of linear type.
    LinearType {
        #[command(flatten)]
        common: Common,
        /// Ideal generators, comma separated, instead of --input.
        #[arg(long, value_delimiter = ',', conflicts_with = "input")]
        generators: Option<Vec<String>>,
        /// Ring variables for --generators, comma separated.
        #[arg(long, value_delimiter = ',')]
        variables: Option<Vec<String>>,
    },
    /// Characteristic polynomial of an arrangement.
    Charpoly(Common),
    /// Replay the projective-bundle chain of equalities for rank n.
    ProofChain {
        #[command(flatten)]
        common: Common,
        /// Rank, instead of --input.
        #[arg(long, conflicts_with = "input")]
        n: Option<usize>,
    },
    /// Run every job file in a directory.
    Batch(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Job file (or bare arrangement JSON); a directory for `batch`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report file; an output directory for `batch`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long)]
    step_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Common {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }

    fn overrides(&self) -> JobOptions {
        JobOptions {
            degree_bound: self.degree_bound,
            step_cap: self.step_cap,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                code(EXIT_INPUT_ERROR)
            } else {
                code(EXIT_OK)
            };
        }
    };
    code(run(cli.command))
}

fn code(exit: i32) -> ExitCode {
    ExitCode::from(exit as u8)
}

fn input_error(message: String) -> JobOutcome {
    JobOutcome {
        kind: None,
        report: json!({ "status": "input-error", "error": message }),
        exit: EXIT_INPUT_ERROR,
        text: format!("input-error: {message}\n"),
    }
}

fn run(command: Command) -> i32 {
    let (common, kind, inline) = match command {
        Command::Batch(common) => return run_batch(&common),
        Command::Verify(common) => (common, JobKind::VerifyArrangement, None),
        Command::Charpoly(common) => (common, JobKind::CharPoly, None),
        Command::Freeness {
            common,
            polynomial,
            variables,
        } => {
            let inline = polynomial.map(|p| json!({ "polynomial": p, "variables": variables }));
            (common, JobKind::Freeness, inline)
        }
        Command::LinearType {
            common,
            generators,
            variables,
        } => {
            let inline = generators.map(|g| json!({ "generators": g, "variables": variables }));
            (common, JobKind::LinearType, inline)
        }
        Command::ProofChain { common, n } => (common, JobKind::ProofChain, n.map(|n| json!({ "n": n }))),
    };
    let outcome = match job_spec(kind, common.input.as_deref(), inline) {
        Ok(mut spec) => {
            spec.options = spec.options.overridden_by(common.overrides());
            run_job(&spec, common.execution())
        }
        Err(message) => input_error(message),
    };
    emit(&common, &outcome.report, &outcome.text, outcome.exit)
}

/// Builds the job from an input file or inline flags. The subcommand sets the
/// kind, so a job file written for another kind is reused for its payload; a
/// bare arrangement object is wrapped.
fn job_spec(kind: JobKind, input: Option<&Path>, inline: Option<Value>) -> Result<JobSpec, String> {
    let kind_value = serde_json::to_value(kind).expect("kind serializes");
    let mut value = match (input, inline) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            serde_json::from_str::<Value>(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, Some(v)) => v,
        (None, None) => return Err("no --input given".into()),
    };
    let object = value.as_object_mut().ok_or("job must be a JSON object")?;
    object.retain(|_, v| !v.is_null());
    if !object.contains_key("kind") && object.contains_key("hyperplanes") {
        value = json!({ "arrangement": value });
    }
    value["kind"] = kind_value;
    JobSpec::from_json(&value.to_string()).map_err(|e| e.to_string())
}

fn emit(common: &Common, report: &Value, text: &str, exit: i32) -> i32 {
    let pretty = serde_json::to_string_pretty(report).expect("report serializes");
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, format!("{pretty}\n")) {
            eprintln!("{}: {e}", path.display());
            return EXIT_INPUT_ERROR;
        }
    }
    match common.format {
        Format::Json => println!("{pretty}"),
        Format::Text => print!("{text}"),
    }
    exit
}

fn run_batch(common: &Common) -> i32 {
    let Some(dir) = common.input.as_deref() else {
        eprintln!("batch needs --input <dir>");
        return EXIT_INPUT_ERROR;
    };
    if common.degree_bound.is_some() || common.step_cap.is_some() {
        eprintln!("batch takes options from each job file");
        return EXIT_INPUT_ERROR;
    }
    match batch_verify(dir, common.out.as_deref(), common.execution()) {
        Ok(summary) => {
            match common.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("summary serializes")
                ),
                Format::Text => println!("{summary}"),
            }
            summary.exit
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_INPUT_ERROR
        }
    }
}
