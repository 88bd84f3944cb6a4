//! The `daxiom` command line: argument parsing, input loading and reports.

pub mod reproduce;
pub mod render;
pub mod report;

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use decision_axioms::Error;

use report::{ErrorBody, Inputs, Report};

#[derive(Parser, Debug)]
#[command(name = "daxiom", version, about = "Classify, reduce and audit decision axioms over finite domains")]
pub struct Cli {
    /// Largest set the tool will enumerate.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Reserved; every pipeline is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Example1,
    ListVsRule,
    ArrowMicro,
    #[value(name = "black-3c")]
    Black3c,
}

#[derive(Args, Debug, Clone)]
pub struct AxiomInput {
    /// Domain file.
    #[arg(long, conflicts_with = "builtin", requires = "axiom")]
    pub domain: Option<PathBuf>,
    /// Axiom file.
    #[arg(long, conflicts_with = "builtin", requires = "domain")]
    pub axiom: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Which classes an axiom belongs to.
    Classify(AxiomInput),
    /// Blackbox reduction.
    Reduce(AxiomInput),
    /// Procedural extension of the reduction.
    Extend {
        #[command(flatten)]
        input: AxiomInput,
        /// Most rules to list.
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// Extensional equivalence of two axioms over one domain.
    Equiv {
        #[command(flatten)]
        input: AxiomInput,
        /// The second axiom file.
        #[arg(long)]
        other: Option<PathBuf>,
    },
    /// Profiles no rule can decide while obeying the axiom.
    Impasse(AxiomInput),
    /// Whether no rule obeys the axiom everywhere.
    Arrovian(AxiomInput),
    /// Whether the axiom permits exactly one outcome per profile.
    Forcing(AxiomInput),
    /// The rule a forcing axiom implies.
    ImpliedRule(AxiomInput),
    /// Whether deciding with the implied rule violates the axiom.
    Paradox {
        #[command(flatten)]
        input: AxiomInput,
        /// Also check every member of the procedural extension.
        #[arg(long)]
        general: bool,
    },
    /// Sweep every axiom of a small all-functions domain.
    Census {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// Apply a voting rule to a profile file.
    Vote {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        profile: PathBuf,
    },
    /// Witness profiles and the paradox for the Condorcet-else-Borda axiom.
    BlackParadox {
        #[arg(long, default_value_t = 3)]
        candidates: usize,
        /// Largest voter count searched.
        #[arg(long, default_value_t = 5)]
        voters: usize,
    },
    /// Emit the domain file of a voting configuration.
    ArrowDomain {
        #[arg(long, default_value_t = 2)]
        voters: usize,
        #[arg(long, default_value_t = 3)]
        candidates: usize,
        #[arg(long, default_value = "linear")]
        orders: String,
        #[arg(long, default_value = "social-order")]
        outcomes: String,
        /// Write the domain here and print a report instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three rules agreeing at a profile, each obeying two of the three Arrow axioms.
    Posthoc {
        #[arg(long)]
        profile: PathBuf,
    },
    /// Whether a statement about a decision is deceptive under an axiom.
    DeceptionCheck {
        #[command(flatten)]
        input: AxiomInput,
        /// The actual decision, `x,f,y` or `x,f,_`.
        #[arg(long, allow_hyphen_values = true)]
        actual: String,
        /// The statement, `x,f,y` with `_` for unspecified components.
        #[arg(long, allow_hyphen_values = true)]
        statement: String,
        /// Also report transparency for this set of observed components.
        #[arg(long)]
        mask: Option<String>,
    },
    /// Run every reproduction criterion.
    VerifyPaper {
        /// Replacement for the built-in example 1 domain file.
        #[arg(long)]
        example1_domain: Option<PathBuf>,
        /// Replacement for the built-in example 1 axiom file.
        #[arg(long)]
        example1_axiom: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Reduce(_) => "reduce",
            Command::Extend { .. } => "extend",
            Command::Equiv { .. } => "equiv",
            Command::Impasse(_) => "impasse",
            Command::Arrovian(_) => "arrovian",
            Command::Forcing(_) => "forcing",
            Command::ImpliedRule(_) => "implied-rule",
            Command::Paradox { .. } => "paradox",
            Command::Census { .. } => "census",
            Command::Vote { .. } => "vote",
            Command::BlackParadox { .. } => "black-paradox",
            Command::ArrowDomain { .. } => "arrow-domain",
            Command::Posthoc { .. } => "posthoc",
            Command::DeceptionCheck { .. } => "deception-check",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Failures a command reports: usage problems exit 2, the rest exit 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String, String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidParameter(_) => Failure::Usage(e.code().to_owned(), e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

pub(crate) fn usage(code: &str, message: impl Into<String>) -> Failure {
    Failure::Usage(code.to_owned(), message.into())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new(), report: None }
            } else {
                Outcome { code, stdout: String::new(), stderr: text, report: None }
            };
        }
    };
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let result = commands::execute(&cli, &mut inputs);
    let name = cli.command.name().to_owned();
    let mut raw = None;
    let mut extra_timing = serde_json::Value::Null;
    let (code, body, stderr) = match result {
        Ok(done) => {
            raw = done.raw;
            extra_timing = done.timing;
            (if done.ok { 0 } else { 1 }, Ok(done.value), String::new())
        }
        Err(Failure::Usage(code, message)) => {
            (2, Err(ErrorBody { code: code.clone(), message: message.clone() }), format!("error [{code}]: {message}\n"))
        }
        Err(Failure::Domain(e)) => {
            let body = ErrorBody { code: e.code().to_owned(), message: e.to_string() };
            (1, Err(body), format!("error [{}]: {e}\n", e.code()))
        }
    };
    let mut timing = serde_json::json!({ "total_ms": start.elapsed().as_millis() });
    if let Some(extra) = extra_timing.as_object() {
        for (k, v) in extra {
            timing[k] = v.clone();
        }
    }
    let report = Report { command: name, inputs, body, timing };
    let stdout = match (raw, cli.format) {
        (Some(text), _) => text,
        (None, Format::Json) => report.render_json() + "\n",
        (None, Format::Text) => report.render_text(),
    };
    Outcome { code, stdout, stderr, report: Some(report) }
}
