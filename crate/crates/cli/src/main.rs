use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use sfcgroup::chartab::verify_table;
use sfcgroup::sfc::KnownStatusTable;
use sfcgroup::{Error, DEFAULT_ORDER_CAP};
use sfcgroup_cli::cache::TableCache;
use sfcgroup_cli::exit::{exit_code, INPUT, INTERNAL, OK};
use sfcgroup_cli::report::{render_info, render_report, render_table, to_json_pretty, Analyzer};
use sfcgroup_cli::survey::{self, Format};

/// Finite group analysis and stably free cancellation verdicts for integral
/// group rings.
#[derive(Parser)]
#[command(name = "sfcgroup", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV (survey only).
    #[arg(long, global = true)]
    csv: bool,

    /// Refuse groups larger than this.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,

    /// Print every evaluated rule with its hypothesis check.
    #[arg(long, global = true)]
    explain: bool,

    /// Evaluate all rules and run the invariant checks.
    #[arg(long, global = true)]
    verify: bool,

    /// Directory for cached character tables.
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,

    /// Known-status table to use instead of the built-in one.
    #[arg(long, global = true, value_name = "FILE")]
    table: Option<PathBuf>,

    /// Worker threads for survey (0 = all cores).
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Structural data: order, classes, real Wedderburn type, m_H.
    Info { spec: String },
    /// Character table with Frobenius-Schur indicators.
    Chartab { spec: String },
    /// Full report and verdict.
    Classify { spec: String },
    /// Classify every line of a file.
    Survey { file: PathBuf },
}

fn analyzer(cli: &Cli) -> Result<Analyzer> {
    let mut a = Analyzer::default();
    a.cap = cli.max_order;
    a.explain = cli.explain;
    a.verify = cli.verify;
    a.cache = cli.cache.as_deref().map(TableCache::open).transpose()?;
    if let Some(path) = &cli.table {
        a = a.with_table(KnownStatusTable::load(path)?);
    }
    Ok(a)
}

fn run(cli: &Cli) -> Result<i32> {
    let a = analyzer(cli)?;
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Info { spec } => {
            let info = a.info(spec)?;
            if cli.json {
                out.write_all(to_json_pretty(&info)?.as_bytes())?;
            } else {
                out.write_all(render_info(&info).as_bytes())?;
            }
        }
        Command::Chartab { spec } => {
            let (g, t) = a.chartab(spec)?;
            if cli.json {
                out.write_all(to_json_pretty(&*t)?.as_bytes())?;
            } else {
                out.write_all(render_table(&t).as_bytes())?;
            }
            if cli.verify {
                let v = verify_table(&t, &g)?;
                if !v.ok {
                    for f in &v.failures {
                        eprintln!("table check failed: {f}");
                    }
                    return Ok(INTERNAL);
                }
                eprintln!("table checks passed");
            }
        }
        Command::Classify { spec } => {
            let r = a.classify(spec)?;
            if cli.json {
                out.write_all(to_json_pretty(&r)?.as_bytes())?;
            } else {
                out.write_all(render_report(&r).as_bytes())?;
            }
        }
        Command::Survey { file } => {
            let text = std::fs::read_to_string(file)
                .with_context(|| format!("cannot read {}", file.display()))?;
            let format = if cli.json {
                Format::Json
            } else if cli.csv {
                Format::Csv
            } else {
                Format::Text
            };
            let outcomes = survey::run(&a, survey::read_lines(&text), cli.jobs)?;
            let code = survey::emit(&outcomes, format, &mut out, &mut io::stderr().lock())?;
            out.flush()?;
            return Ok(code);
        }
    }
    out.flush()?;
    Ok(OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; exit 2 is reserved for caps
            return ExitCode::from(if e.use_stderr() {
                INPUT as u8
            } else {
                OK as u8
            });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(Error::RuleConflict(_) | Error::Internal(_)) = e.downcast_ref::<Error>() {
                eprintln!("this indicates a bug; please report it with the command line above");
            }
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
