//! Batch driver over the atlas, action and ν-commutant suites.
//!
//! Chart indices are written `{i,j}|{r,s}`, with `∅` or `{}` for the empty
//! set, e.g. `∅|{1}` or `{1,2}|{3}`.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::action::{verify_action_axioms, verify_action_gluing, verify_transitivity, BasePoint, GluingScope};
use crate::atlas::{verify_cocycle, Atlas, Dims};
use crate::error::{Error, Result};
use crate::nulie::nulie_report;
use crate::report::Suite;
use crate::supermatrix::IndexPair;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "nugrass", version, about = "ν-Grassmannians: charts, transitions and exact identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List charts, α|β and labels.
    Atlas(Common),
    /// Symbolic transition map between two charts.
    Transition {
        #[command(flatten)]
        common: Common,
        /// Source chart, e.g. `∅|{1}`.
        #[arg(long)]
        from: IndexPair,
        /// Target chart, e.g. `∅|{2}`.
        #[arg(long)]
        to: IndexPair,
    },
    /// Cocycle identities: identity, inverse and triple compositions.
    VerifyCocycle(Common),
    /// Gluing of the action and the action axioms.
    VerifyAction(Common),
    /// Transitivity witnesses and stabilizer samples; `-r` defaults to 2mn.
    Transitivity(Common),
    /// The ν-commutant 𝔥 and the bracket checks.
    Nulie(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(short = 'k')]
    pub k: usize,
    #[arg(short = 'l')]
    pub l: usize,
    #[arg(short = 'm')]
    pub m: usize,
    #[arg(short = 'n')]
    pub n: usize,
    /// Number of odd generators of the Grassmann algebra of points.
    #[arg(short = 'r')]
    pub r: Option<usize>,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Common {
    fn dims(&self) -> Result<Dims> {
        Dims::new(self.k, self.l, self.m, self.n)
    }
}

/// Rendered output and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub passed: bool,
}

fn suite_outcome(suites: Vec<Suite>) -> Outcome {
    let passed = suites.iter().all(Suite::all_passed);
    let text = suites.iter().map(Suite::text).collect::<Vec<_>>().join("\n");
    Outcome {
        text,
        json: json!({ "passed": passed, "suites": suites }),
        passed,
    }
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Atlas(c) => {
            let atlas = Atlas::new(c.dims()?)?;
            let d = atlas.dims;
            let mut text = format!("{d}: {} charts, α|β = {}|{}\n", atlas.charts().len(), d.alpha(), d.beta());
            for ch in atlas.charts() {
                let kind = if ch.is_standard() { "standard" } else { "non-standard" };
                text.push_str(&format!("\n{} ({kind}), coordinates {}\n{}\n", ch.index, ch.coordinate_names().join(", "), ch.label_pretty()));
            }
            let charts: Vec<_> = atlas
                .charts()
                .iter()
                .map(|ch| {
                    json!({"index": ch.index.to_string(), "standard": ch.is_standard(),
                           "coordinates": ch.coordinate_names(), "label": ch.label_tokens()})
                })
                .collect();
            Ok(Outcome {
                text,
                json: json!({"dims": d.to_string(), "alpha": d.alpha(), "beta": d.beta(), "charts": charts}),
                passed: true,
            })
        }
        Command::Transition { common, from, to } => {
            let atlas = Atlas::new(common.dims()?)?;
            let t = atlas.transition_symbolic(from, to)?;
            Ok(Outcome {
                text: format!("{from} -> {to}\n{}\n", t.lines().join("\n")),
                json: json!({"from": from.to_string(), "to": to.to_string(), "assignments": t.lines()}),
                passed: true,
            })
        }
        Command::VerifyCocycle(c) => {
            let suite = verify_cocycle(c.dims()?, c.r.unwrap_or(2), c.samples as usize, c.seed)?;
            Ok(suite_outcome(vec![suite]))
        }
        Command::VerifyAction(c) => {
            let dims = c.dims()?;
            let charts = Atlas::new(dims)?.charts().len();
            let scope = if charts <= 3 { GluingScope::All } else { GluingScope::StandardSampled };
            let (r, s) = (c.r.unwrap_or(2), c.samples as usize);
            let gluing = verify_action_gluing(dims, r, s, c.seed, scope)?;
            let axioms = verify_action_axioms(dims, r, s, c.seed)?;
            Ok(suite_outcome(vec![gluing, axioms]))
        }
        Command::Transitivity(c) => {
            let dims = c.dims()?;
            let r = c.r.unwrap_or(2 * dims.m * dims.n);
            let suite = verify_transitivity(dims, r, c.samples as usize, c.seed, &BasePoint::standard(dims))?;
            Ok(suite_outcome(vec![suite]))
        }
        Command::Nulie(c) => {
            let rep = nulie_report(c.dims()?)?;
            let mut text = format!("𝔥 ⊆ 𝔤𝔩({}|{}) for {}: dim {}|{}\n", rep.dims.m, rep.dims.n, rep.dims, rep.dim_even, rep.dim_odd);
            for (i, b) in rep.basis_display.iter().enumerate() {
                text.push_str(&format!("  h{} = {b}\n", i + 1));
            }
            let sign = rep.sign_s.map_or("none".to_string(), |s| format!("{s:+}"));
            text.push_str(&format!("sign s = {sign}, defect residual {}\n", rep.defect_residual));
            for c in &rep.checks {
                text.push_str(&c.line());
                text.push('\n');
            }
            let passed = rep.passed();
            Ok(Outcome {
                text,
                json: serde_json::to_value(&rep).map_err(|e| Error::Parse(e.to_string()))?,
                passed,
            })
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Atlas(c)
        | Command::VerifyCocycle(c)
        | Command::VerifyAction(c)
        | Command::Transitivity(c)
        | Command::Nulie(c) => c,
        Command::Transition { common, .. } => common,
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidDimensions(..) | Error::Parse(_) | Error::IndexOutOfRange(_) | Error::NoOddGenerators | Error::UncoveredCase { .. }
    )
}

/// Runs one invocation and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let opts = common(&cli.command);
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return if is_usage(&e) { EXIT_USAGE } else { EXIT_FAIL };
        }
    };
    let body = match opts.format {
        Format::Text => outcome.text,
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("report serializes") + "\n",
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{body}"),
    }
    if outcome.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
