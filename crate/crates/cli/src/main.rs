use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conelab::config::{FileConfig, Format, RunConfig, SuitesValue, TValue};
use conelab::error::{CliResult, EXIT_CHECK_FAILED, EXIT_OK};
use conelab::{serial, SeriesKind};

#[derive(Parser)]
#[command(name = "conelab", version, about = "Exact checks of genus-zero Givental cone identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exit status 0 iff every check passes.
    Verify(RunArgs),
    /// Print a series in the JSON record format.
    Series {
        #[arg(value_enum)]
        which: Which,
        /// Basis index for `tangent`.
        #[arg(long, default_value_t = 0)]
        alpha: usize,
        /// z-power for `tangent`.
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List every fixed-locus splitting with its contribution.
    Splittings(RunArgs),
    /// Evaluate one correlator, e.g. `d=1; (2,0) (2,0)`.
    Correlator {
        #[arg(long)]
        target: String,
        query: String,
        #[arg(long, default_value = "human")]
        format: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Cone,
    #[value(name = "SL", alias = "sl")]
    Sl,
    Locsum,
    Tangent,
}

#[derive(Args)]
struct RunArgs {
    /// TOML file with the same keys as these flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    target: Option<String>,
    /// Novikov order.
    #[arg(long = "D")]
    d: Option<u32>,
    /// epsilon order.
    #[arg(long = "E")]
    e: Option<u32>,
    /// Degree of t in z.
    #[arg(long = "T")]
    t_degree: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    z_min: Option<i32>,
    #[arg(long)]
    z_max: Option<i32>,
    #[arg(long)]
    seed: Option<u64>,
    /// `zero`, `random`, or comma-separated rationals ordered by z-power then basis.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// `all` or a comma list of suite names.
    #[arg(long)]
    suites: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// human or json.
    #[arg(long)]
    format: Option<String>,
}

impl RunArgs {
    fn resolve(self) -> CliResult<RunConfig> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let flags = FileConfig {
            target: self.target,
            d: self.d,
            e: self.e,
            t_degree: self.t_degree,
            z_min: self.z_min,
            z_max: self.z_max,
            seed: self.seed,
            t: self.t.map(TValue::Text),
            suites: self.suites.map(SuitesValue::Text),
            out: self.out,
            format: self.format,
        };
        RunConfig::resolve(file.overlay(flags))
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Verify(args) => {
            let cfg = args.resolve()?;
            let report = conelab::verify(&cfg)?;
            let text = match cfg.format {
                Format::Human => report.to_human(),
                Format::Json => report.to_json(),
            };
            if let Some(path) = &cfg.out {
                std::fs::write(path, &text)?;
                if cfg.format == Format::Json {
                    print!("{}", report.to_human());
                } else {
                    print!("{text}");
                }
            } else {
                print!("{text}");
            }
            Ok(if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Series { which, alpha, k, run } => {
            let cfg = run.resolve()?;
            let kind = match which {
                Which::Cone => SeriesKind::Cone,
                Which::Sl => SeriesKind::SL,
                Which::Locsum => SeriesKind::LocSum,
                Which::Tangent => SeriesKind::Tangent { alpha, k },
            };
            let s = conelab::series(&cfg, kind)?;
            emit(&serial::dump(&s), cfg.out.as_ref())?;
            Ok(EXIT_OK)
        }
        Command::Splittings(args) => {
            let cfg = args.resolve()?;
            let records = conelab::splittings(&cfg)?;
            let mut text = serde_json::to_string_pretty(&records).expect("plain data serializes");
            text.push('\n');
            emit(&text, cfg.out.as_ref())?;
            Ok(EXIT_OK)
        }
        Command::Correlator { target, query, format } => {
            let format = Format::parse(&format)?;
            let v = conelab::correlator(&target, &query)?;
            match format {
                Format::Human => println!("{v}"),
                Format::Json => println!("{}", serde_json::json!({ "num": v.numer().to_string(), "den": v.denom().to_string() })),
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
