use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use mumford_tame::frobenius::{genus_of, DEFAULT_BUDGET};
use mumford_tame::galois::{GaloisError, SpecFile, TypeSpec};
use mumford_tame::pipeline::{self, ConstructOptions, IgpOptions, PipelineError, Report};
use serde_json::Value;

/// Exit code for malformed invocations.
const EXIT_USAGE: u8 = 64;
const EXIT_RUNTIME: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "mumford-tame", version, about = "Tame mod-p Galois representations from Mumford curves")]
struct Cli {
    /// Genus.
    #[arg(long, global = true)]
    g: Option<usize>,
    /// Prime.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Exponent m for the m-th power periods (default p).
    #[arg(long, global = true)]
    m: Option<u32>,
    /// Truncation length; for `goldbach`, the even number.
    #[arg(long, global = true)]
    n: Option<u64>,
    /// p-adic working precision.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Largest finite field size to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for randomised searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Explicit construction for (g, p), or a typed polynomial from a spec file.
    Construct {
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        spec_file: Option<PathBuf>,
    },
    /// Inverse Galois checklist for (g, p).
    Igp,
    /// Frobenius table rows: fast, all, or a comma list such as 3-7,4-5.
    TableCheck {
        #[arg(long, default_value = "fast")]
        rows: String,
    },
    /// Goldbach triples for the even number given by --n.
    Goldbach,
    /// Excluded primes for every genus up to --g-max.
    Excluded {
        #[arg(long)]
        g_max: u64,
    },
    /// Local type of f at --p.
    TypeCheck {
        #[arg(long)]
        f: String,
        #[arg(long)]
        t: u32,
        /// Comma-separated block degrees.
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<u64>,
    },
    /// Point counts and Frobenius characteristic polynomial.
    Frobenius {
        #[arg(long)]
        f: String,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Closed-form and truncated period matrices.
    Period,
    /// Hyperelliptic model from truncated theta values.
    Model,
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T, PipelineError> {
    x.ok_or_else(|| PipelineError::Usage(format!("--{flag} is required")))
}

fn truncation(cli: &Cli, default: usize) -> usize {
    cli.n.map(|n| n as usize).unwrap_or(default)
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let report = match &cli.command {
        Command::Construct { degree, spec_file } => {
            if let Some(path) = spec_file {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let mut spec = SpecFile::from_json(&text).map_err(|e| PipelineError::Usage(e.to_string()))?;
                if let Some(d) = degree {
                    spec.degree = *d;
                }
                pipeline::cmd_construct_typed(&spec)?
            } else if degree.is_some() {
                return Err(PipelineError::Usage("--degree needs --spec-file".into()).into());
            } else {
                let opts = ConstructOptions { m: cli.m, n: truncation(cli, 2), precision: cli.precision };
                pipeline::cmd_construct(need(cli.g, "g")?, need(cli.p, "p")?, &opts)?
            }
        }
        Command::Igp => {
            let opts = IgpOptions { n: truncation(cli, 1), ..Default::default() };
            pipeline::cmd_igp(need(cli.g, "g")? as u64, need(cli.p, "p")?, &opts)?
        }
        Command::TableCheck { rows } => pipeline::cmd_tablecheck(&rows.parse()?, cli.budget)?,
        Command::Goldbach => pipeline::cmd_goldbach(need(cli.n, "n")?)?,
        Command::Excluded { g_max } => pipeline::cmd_excluded(*g_max)?,
        Command::TypeCheck { f, t, blocks } => {
            let f = pipeline::parse_poly_arg(f)?;
            let spec = TypeSpec::new(need(cli.p, "p")?, *t, blocks.clone()).map_err(|e| PipelineError::Usage(e.to_string()))?;
            pipeline::cmd_type_check(&f, &spec, cli.precision)?
        }
        Command::Frobenius { f, ell, genus } => {
            let f = pipeline::parse_poly_arg(f)?;
            let g = genus.unwrap_or_else(|| genus_of(&f));
            pipeline::cmd_frobenius(&f, *ell, g, cli.budget, cli.seed)?
        }
        Command::Period => pipeline::cmd_period(need(cli.g, "g")?, need(cli.p, "p")?, truncation(cli, 2))?,
        Command::Model => pipeline::cmd_model(need(cli.g, "g")?, need(cli.p, "p")?, truncation(cli, 2))?,
    };
    Ok(report)
}

fn render_text(report: &Report) -> String {
    let mut out = vec![
        format!("{}: {:?} (exit {})", report.command, report.outcome, report.outcome.exit_code()),
    ];
    if !report.failed.is_empty() {
        out.push(format!("failed: {}", report.failed.join(", ")));
    }
    let r = &report.result;
    let lists = [
        r.pointer("/certificate/conditions"),
        r.pointer("/report/conditions"),
        r.pointer("/checklist/items"),
    ];
    let mut listed = false;
    for items in lists.into_iter().flatten() {
        for c in items.as_array().into_iter().flatten() {
            out.push(format!("  [{}] {}: {}", str_of(&c["status"]), str_of(&c["id"]), str_of(&c["witness"])));
        }
        listed = true;
    }
    if let Some(rows) = r.get("rows").and_then(Value::as_array) {
        for row in rows {
            if row.get("frobenius").is_some() {
                out.push(format!(
                    "  ({}, {}) l = {}: irreducible mod p {}, trace {} -> {}",
                    row["g"], row["p"], row["ell"], row["irreducible_mod_p"], row["trace_mod_p"], row["pass"]
                ));
            } else {
                out.push(format!("  {row}"));
            }
        }
        listed = true;
    }
    if !listed {
        out.push(serde_json::to_string_pretty(r).unwrap_or_default());
    }
    out.join("\n")
}

fn str_of(v: &Value) -> String {
    v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            other => other.context("writing stdout"),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("json"),
                Format::Text => render_text(&report),
            };
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_RUNTIME);
            }
            ExitCode::from(report.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<PipelineError>() {
                Some(PipelineError::Usage(_)) | Some(PipelineError::Galois(GaloisError::OddInput(_))) => {
                    ExitCode::from(EXIT_USAGE)
                }
                Some(PipelineError::ExcludedPrime { .. }) => ExitCode::from(2),
                _ => ExitCode::from(EXIT_RUNTIME),
            }
        }
    }
}
