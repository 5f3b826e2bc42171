mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use ainfty::exactla::{Field, PrimeField, Rationals};
use ainfty::Error;
use clap::Parser;
use serde_json::{json, Value};

use report::{Command, Settings};
use spec::{ingest, AlgebraSpec};

const REPORT_SCHEMA: &str = "ainfty.report/1";
const DEFAULT_FIELD: &str = "fp:32003";
const DEFAULT_BOUND: i64 = 6;
const DEFAULT_ARITY: usize = 5;

/// Exact computations with bigraded A∞-algebras: bar and cobar constructions, Koszul duals,
/// Ext, Koszulness, Frobenius and Artin-Schelter checks.
#[derive(Parser, Debug)]
#[command(name = "ainfty", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Algebra document (JSON). Use --preset instead for a named fixture.
    input: Option<PathBuf>,
    /// Named fixture, e.g. "B(3)", "exterior(0,1;0,2)", "truncated(0,1;3)", "k".
    #[arg(long)]
    preset: Option<String>,
    /// `q` or `fp:P`. Overrides the document; defaults to fp:32003.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    adams_bound: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    coh_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    coh_max: Option<i64>,
    /// Highest arity for Stasheff checks and explicit tables.
    #[arg(long)]
    arity: Option<usize>,
    #[arg(long)]
    json_out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Empty Adams weights required above the top class of HE before it counts as finite.
    #[arg(long)]
    certify_spread: Option<i64>,
    /// Accept finiteness of HE at window level when no empty run is visible.
    #[arg(long)]
    accept_window: bool,
    /// Add wall-clock time to the report (makes it run-dependent).
    #[arg(long)]
    timing: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Malformed(_) | Error::InvalidField(_) | Error::IdentityFailure(_) => 1,
        Error::NotAdamsConnected(_)
        | Error::HypothesisViolation(_)
        | Error::NonzeroDifferential
        | Error::NotFiniteDimensional(_)
        | Error::NotConnected(_)
        | Error::WindowOverflow(_) => 2,
        Error::Invariant(_) | Error::Inconsistent | Error::DivisionByZero => 3,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::IdentityFailure(_) => "stasheff",
        Error::Malformed(_) | Error::InvalidField(_) => "schema",
        _ if exit_code(e) == 2 => "hypothesis",
        _ => "internal",
    }
}

fn load(cli: &Cli) -> Result<AlgebraSpec, Error> {
    match (&cli.input, &cli.preset) {
        (Some(p), None) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?;
            AlgebraSpec::parse(&text)
        }
        (None, Some(name)) => Ok(AlgebraSpec::preset(name)),
        (Some(_), Some(_)) => Err(Error::Malformed("give either an input document or --preset, not both".into())),
        (None, None) => Err(Error::Malformed("no algebra given: pass an input document or --preset".into())),
    }
}

fn settings(cli: &Cli, spec: &AlgebraSpec) -> Settings {
    let w = &spec.window;
    Settings {
        bound: cli.adams_bound.or(w.adams_bound).unwrap_or(DEFAULT_BOUND),
        coh_min: cli.coh_min.or(w.coh_min),
        coh_max: cli.coh_max.or(w.coh_max),
        arity: cli.arity.or(w.arity_bound).unwrap_or(DEFAULT_ARITY),
        spread: cli.certify_spread,
        accept_window: cli.accept_window,
    }
}

fn compute<F: Field>(k: F, cli: &Cli, spec: &AlgebraSpec, s: &Settings) -> Result<Value, Error> {
    let a = ingest(k.clone(), spec, s.bound, s.arity)?;
    report::run(k, cli.command, spec, &a, s)
}

fn execute(cli: &Cli) -> Result<Value, Error> {
    let spec = load(cli)?;
    let s = settings(cli, &spec);
    let field = cli.field.clone().or(spec.field.clone()).unwrap_or_else(|| DEFAULT_FIELD.into());
    let start = Instant::now();
    let (name, result) = if field == "q" {
        (Rationals.name(), compute(Rationals, cli, &spec, &s)?)
    } else if let Some(p) = field.strip_prefix("fp:") {
        let p = p.parse::<u64>().map_err(|_| Error::InvalidField(format!("bad prime in {field:?}")))?;
        let k = PrimeField::new(p)?;
        (k.name(), compute(k, cli, &spec, &s)?)
    } else {
        return Err(Error::InvalidField(format!("{field:?}: expected q or fp:P")));
    };
    let mut out = json!({
        "schema": REPORT_SCHEMA,
        "command": cli.command.name(),
        "field": name,
        "algebra": spec.to_json(),
        "window": s.window_json(),
        "result": result,
    });
    if cli.timing {
        out["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        // a second global pool cannot be installed; the default one is fine then
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("report serializes") + "\n";
            match &cli.json_out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text) {
                        eprintln!("{}", json!({"error": "io", "message": e.to_string()}));
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("{}", json!({"error": error_kind(&e), "message": e.to_string(), "exit": code}));
            ExitCode::from(code)
        }
    }
}
