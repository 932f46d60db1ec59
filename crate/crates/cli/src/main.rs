//! `lcverify`: verification suites, majorants, Orlicz norms and random
//! log-concave instances from the command line.
//!
//! Exit status is 0 when every check passes, 1 on a violated inequality or
//! equality mismatch, and 2 on malformed input or arguments.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use logconcave::extremal::{certify_majorant_c, certify_majorant_d};
use logconcave::logconcave::{gen_logconcave_c, gen_logconcave_d, is_logconcave_c, is_logconcave_d, load_csv, LoadedDensity};
use logconcave::verify::{run_suites, Suite, Tolerances};
use logconcave::{ContinuousGenConfig, DiscreteGenConfig, Error, Law, YoungFunction};

#[derive(Parser)]
#[command(name = "lcverify", version, about = "Anti-concentration checks for log-concave laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Trials per suite (defaults: 1000, orlicz-sandwich 200, order-machinery 500).
    #[arg(long, global = true)]
    trials: Option<usize>,

    #[arg(long, global = true, default_value_t = 20240601)]
    seed: u64,

    /// Violation tolerance on slacks.
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Omit the timestamp so identical runs give identical bytes.
    #[arg(long, global = true)]
    reproducible: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    C,
    D,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite or `all`.
    Verify { suite: String },
    /// Asymmetric Laplace majorant of a density at a point.
    Majorize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Centered Orlicz norm for the power Young function `x^p`.
    Orlicz {
        #[arg(long)]
        input: PathBuf,
        /// Written as `p=<p>`.
        #[arg(long)]
        psi: String,
    },
    /// Random log-concave density (`c`, `x,logf`) or pmf (`d`, `n,p`).
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
    },
}

enum Failure {
    Violation(String),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Malformed(e.to_string())
    }
}

fn malformed(msg: impl Into<String>) -> Failure {
    Failure::Malformed(msg.into())
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| malformed(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| malformed(e.to_string()))
        }
    }
}

fn read_input(path: &PathBuf) -> Result<LoadedDensity, Failure> {
    let text = fs::read_to_string(path).map_err(|e| malformed(format!("cannot read {}: {e}", path.display())))?;
    Ok(load_csv(&text)?)
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

/// Key/value pairs as a two-row CSV.
fn to_csv(pairs: &[(&str, String)]) -> String {
    let header: Vec<&str> = pairs.iter().map(|(k, _)| *k).collect();
    let row: Vec<&str> = pairs.iter().map(|(_, v)| v.as_str()).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).and_then(|_| w.write_record(&row)).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

fn run_verify(cli: &Cli, suite: &str) -> Result<(), Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::parse(suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            malformed(format!("unknown suite `{suite}` (expected one of {} or all)", names.join(", ")))
        })?]
    };
    if !(cli.tol >= 0.0) {
        return Err(malformed(format!("tolerance must be non-negative, got {}", cli.tol)));
    }
    let tol = Tolerances { num_tol: cli.tol, ..Tolerances::default() };
    let report = run_suites(&suites, cli.trials, cli.seed, tol, cli.reproducible)?;
    let text = match cli.format {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report.to_csv()?,
    };
    emit(cli, &text)?;
    let s = report.summary;
    eprintln!("{} checks, {} failures, {} equalities, {} equality mismatches", s.total, s.failures, s.equalities, s.equality_mismatches);
    if s.all_passed() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("{} failures, {} equality mismatches", s.failures, s.equality_mismatches)))
    }
}

fn run_majorize(cli: &Cli, input: &PathBuf, point: &str) -> Result<(), Failure> {
    let tol = 1e-8_f64.max(cli.tol * 0.1);
    let pairs: Vec<(&str, String)> = match read_input(input)? {
        LoadedDensity::Grid(f) => {
            let t: f64 = point.parse().map_err(|_| malformed(format!("point `{point}` is not a number")))?;
            if !is_logconcave_c(&f) {
                return Err(malformed("input density is not log-concave"));
            }
            let (m, cert) = certify_majorant_c(&f, t, tol)?;
            let mean = f.mean();
            vec![
                ("kind", "continuous".into()),
                ("point", t.to_string()),
                ("lambda1", m.lambda1.to_string()),
                ("lambda2", m.lambda2.to_string()),
                ("mode", m.mode.to_string()),
                ("density_at_point", f.pdf(t).to_string()),
                ("mean", mean.to_string()),
                ("variance", f.variance().to_string()),
                ("majorant_variance", m.mean_var().1.to_string()),
                ("crossings", cert.crossings.count().to_string()),
                ("verdict", format!("{:?}", cert.verdict).to_lowercase()),
            ]
        }
        LoadedDensity::Pmf(g) => {
            let n: i64 = point.parse().map_err(|_| malformed(format!("point `{point}` is not an integer")))?;
            if !is_logconcave_d(&g) {
                return Err(malformed("input pmf is not log-concave"));
            }
            let (m, cert) = certify_majorant_d(&g, n, tol)?;
            vec![
                ("kind", "discrete".into()),
                ("point", n.to_string()),
                ("p", m.p.to_string()),
                ("q", m.q.to_string()),
                ("mode", m.mode.to_string()),
                ("mass_at_point", g.pmf(n).to_string()),
                ("mean", g.mean().to_string()),
                ("variance", g.variance().to_string()),
                ("majorant_variance", m.mean_var().1.to_string()),
                ("crossings", cert.crossings.count().to_string()),
                ("verdict", format!("{:?}", cert.verdict).to_lowercase()),
            ]
        }
    };
    let certified = pairs.iter().any(|(k, v)| *k == "verdict" && v == "certified");
    let text = match cli.format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                pairs.iter().map(|(k, v)| (k.to_string(), json_value(v))).collect();
            to_json(&serde_json::Value::Object(map))
        }
        Format::Csv => to_csv(&pairs),
    };
    emit(cli, &text)?;
    if certified {
        Ok(())
    } else {
        Err(Failure::Violation("convex order against the majorant was not certified".into()))
    }
}

fn json_value(v: &str) -> serde_json::Value {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => json!(x),
        _ => json!(v),
    }
}

fn run_orlicz(cli: &Cli, input: &PathBuf, psi: &str) -> Result<(), Failure> {
    let p: f64 = psi
        .strip_prefix("p=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| malformed(format!("--psi must look like p=<number>, got `{psi}`")))?;
    let young = YoungFunction::power(p)?;
    let law: Box<dyn Law> = match read_input(input)? {
        LoadedDensity::Grid(f) => Box::new(f),
        LoadedDensity::Pmf(g) => Box::new(g),
    };
    let norm = logconcave::orlicz_norm_centered(law.as_ref(), &young, 1e-11)?;
    let pairs = [("psi", psi.to_string()), ("p", p.to_string()), ("norm", norm.to_string()), ("max_density", law.max_density().to_string())];
    let text = match cli.format {
        Format::Json => to_json(&json!({ "psi": psi, "p": p, "norm": norm, "max_density": law.max_density() })),
        Format::Csv => to_csv(&pairs),
    };
    emit(cli, &text)
}

fn run_gen(cli: &Cli, kind: Kind) -> Result<(), Failure> {
    let mut buf = Vec::new();
    match kind {
        Kind::C => gen_logconcave_c(cli.seed, &ContinuousGenConfig::default())?.to_csv(&mut buf)?,
        Kind::D => gen_logconcave_d(cli.seed, &DiscreteGenConfig::default())?.to_csv(&mut buf)?,
    }
    emit(cli, &String::from_utf8(buf).map_err(|e| malformed(e.to_string()))?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Verify { suite } => run_verify(&cli, suite),
        Command::Majorize { input, point } => run_majorize(&cli, input, point),
        Command::Orlicz { input, psi } => run_orlicz(&cli, input, psi),
        Command::Gen { kind } => run_gen(&cli, *kind),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
