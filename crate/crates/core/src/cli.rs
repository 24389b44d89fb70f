//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::run_corpus;
use crate::hodge::HodgeError;
use crate::monodromy::{validate_jordan_data, JordanBlockData};
use crate::report::{analyze_text, jordan_report, render_analysis_markdown, render_jordan_markdown, AnalyzeOptions, Style};
use crate::verify::run_verify;

pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const NOT_CONVENIENT: i32 = 2;
    pub const INVALID_JORDAN: i32 = 3;
    pub const PROPERTY_FAILURE: i32 = 4;
    pub const CORPUS_FAILURE: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(name = "singhodge", version, about = "Newton-boundary invariants and weight tables of isolated hypersurface singularities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Md,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a polynomial given inline or in a file.
    Analyze(AnalyzeArgs),
    /// Validate Jordan data and print every table it determines.
    Jordan(JordanArgs),
    /// Run the randomized self-checks.
    Verify(VerifyArgs),
    /// Run a fixture directory.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["poly", "file"])))]
pub struct AnalyzeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Skip the face checks and mark every face as assumed non-degenerate.
    #[arg(long)]
    pub assume_nondegenerate: bool,
}

#[derive(Debug, Args)]
pub struct JordanArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Ambient dimension; must match the file when both are given.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub iters: usize,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long)]
    pub dir: PathBuf,
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let rendered = e.render();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match cli.command {
        Command::Analyze(a) => cmd_analyze(a, out, err),
        Command::Jordan(a) => cmd_jordan(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Corpus(a) => cmd_corpus(a, out, err),
    }
}

fn cmd_analyze(args: AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match (&args.poly, &args.file) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) => match fs::read_to_string(path) {
            Ok(t) => t.trim().to_string(),
            Err(e) => {
                let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
                return exit::PARSE;
            }
        },
        (None, None) => unreachable!("clap requires an input"),
    };
    let options = AnalyzeOptions {
        assume_nondegenerate: args.assume_nondegenerate,
    };
    let report = match analyze_text(&text, options) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit::PARSE;
        }
    };
    let _ = match args.format {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Md => write!(out, "{}", render_analysis_markdown(&report, Style::from_env())),
    };
    if report.formulas_available() {
        exit::OK
    } else {
        let _ = writeln!(err, "error: f is not convenient");
        exit::NOT_CONVENIENT
    }
}

fn cmd_jordan(args: JordanArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", args.file.display());
            return exit::PARSE;
        }
    };
    let j = match JordanBlockData::from_json(&text) {
        Ok(j) => j,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit::PARSE;
        }
    };
    if let Some(n) = args.n {
        if n != j.n() {
            let _ = writeln!(err, "error: file is for n = {} but --n {n} was given", j.n());
            return exit::INVALID_JORDAN;
        }
    }
    if let Err(violations) = validate_jordan_data(&j) {
        let _ = writeln!(err, "error: invalid Jordan data (sizes are bounded by n for λ != 1 and by n-1 for λ = 1)");
        for v in violations {
            let _ = writeln!(err, "  {v}");
        }
        return exit::INVALID_JORDAN;
    }
    let report = match jordan_report(&j) {
        Ok(r) => r,
        Err(HodgeError::InvalidJordanData(vs)) => {
            for v in vs {
                let _ = writeln!(err, "  {v}");
            }
            return exit::INVALID_JORDAN;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit::INVALID_JORDAN;
        }
    };
    let _ = match args.format {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Md => write!(out, "{}", render_jordan_markdown(&report, Style::from_env())),
    };
    exit::OK
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> i32 {
    let summary = run_verify(args.seed, args.iters);
    for line in summary.lines() {
        let _ = writeln!(out, "{line}");
    }
    if summary.passed() {
        return exit::OK;
    }
    let dump = serde_json::to_string_pretty(&summary.counterexamples).expect("serializable");
    let _ = writeln!(out, "counterexamples:\n{dump}");
    exit::PROPERTY_FAILURE
}

fn cmd_corpus(args: CorpusArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let summary = match run_corpus(&args.dir) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit::CORPUS_FAILURE;
        }
    };
    for w in &summary.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    for r in &summary.results {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{mark}  {:<24} {}", r.name, r.file);
        for d in &r.differences {
            let _ = writeln!(out, "      {d}");
        }
    }
    let failing: Vec<&str> = summary.failing().map(|r| r.file.as_str()).collect();
    let _ = writeln!(out, "{}/{} fixtures pass", summary.results.len() - failing.len(), summary.results.len());
    if failing.is_empty() {
        exit::OK
    } else {
        let _ = writeln!(err, "failing fixtures: {}", failing.join(", "));
        exit::CORPUS_FAILURE
    }
}
