use std::path::PathBuf;
use std::process::ExitCode;

use cayley_ic::cayley::Method;
use cayley_ic::pipeline::WeilMode;
use cayley_ic::{ComponentSpec, Group};
use cayley_ic_cli::cache::Cache;
use cayley_ic_cli::render::{render, Format};
use cayley_ic_cli::verify::{verify, Corpus, DEFAULT_CORPUS};
use cayley_ic_cli::{exit, run_job, CliError};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "cayley-ic",
    version,
    about = "Poincaré and Hodge polynomials of Higgs moduli and Cayley components"
)]
struct Cli {
    /// Directory of cached results; omitted means no caching.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads for the partition sums (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant.
    Compute {
        #[command(flatten)]
        target: Target,
        #[arg(short = 'n', long)]
        rank: Option<u32>,
        #[arg(short = 'g', long)]
        genus: u32,
        #[command(flatten)]
        opts: Options,
    },
    /// Check printed polynomials and structural properties.
    Verify {
        /// Corpus file replacing the built-in printed polynomials.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Early)]
        mode: ModeArg,
    },
    /// Compute an invariant for a range of ranks and genera.
    Table {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1)]
        min_rank: u32,
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
        #[arg(long, default_value_t = 2)]
        min_genus: u32,
        #[arg(long, default_value_t = 3)]
        max_genus: u32,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Args)]
struct Target {
    /// gl, pgl, so, so0, so012, so0-nn2 (alias so-odd), e6, unn, punn.
    #[arg(long)]
    group: String,
    #[arg(short = 'l', long)]
    twist: Option<u32>,
}

#[derive(Args)]
struct Options {
    #[arg(long, value_enum, default_value_t = MethodArg::Pipeline)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Early)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Pipeline,
    Closed,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Early,
    Late,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Pipeline => Method::Pipeline,
            MethodArg::Closed => Method::Closed,
            MethodArg::Both => Method::Both,
        }
    }
}

impl From<ModeArg> for WeilMode {
    fn from(m: ModeArg) -> WeilMode {
        match m {
            ModeArg::Early => WeilMode::Early,
            ModeArg::Late => WeilMode::Late,
        }
    }
}

fn spec(target: &Target, rank: Option<u32>, genus: u32) -> Result<ComponentSpec, CliError> {
    let group: Group = target.group.parse()?;
    let rank = if group == Group::E6 { None } else { rank };
    Ok(ComponentSpec::new(group, rank, genus, target.twist)?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Other(e.to_string()))?;
    }
    let cache = cli.cache_dir.map(Cache::new);
    match cli.command {
        Command::Compute {
            target,
            rank,
            genus,
            opts,
        } => {
            let spec = spec(&target, rank, genus)?;
            let record = run_job(&spec, opts.method.into(), opts.mode.into(), cache.as_ref())?;
            println!("{}", render(&record, opts.format));
            Ok(())
        }
        Command::Verify { corpus, mode } => {
            let text = match corpus {
                Some(path) => std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?,
                None => DEFAULT_CORPUS.to_string(),
            };
            let corpus = Corpus::parse(&text).map_err(CliError::Invalid)?;
            let report = verify(&corpus, mode.into(), cache.as_ref());
            println!("{report}");
            match report.failures() {
                0 => Ok(()),
                k => Err(CliError::VerifyFailed(k)),
            }
        }
        Command::Table {
            target,
            min_rank,
            max_rank,
            min_genus,
            max_genus,
            opts,
        } => {
            let group: Group = target.group.parse()?;
            let ranks: Vec<Option<u32>> = if group == Group::E6 {
                vec![None]
            } else {
                (min_rank..=max_rank).map(Some).collect()
            };
            for g in min_genus..=max_genus {
                for &n in &ranks {
                    // Skip parameter combinations the group does not admit.
                    let Ok(spec) = ComponentSpec::new(group, n, g, target.twist) else {
                        continue;
                    };
                    let record =
                        run_job(&spec, opts.method.into(), opts.mode.into(), cache.as_ref())?;
                    let body = render(&record, opts.format);
                    let n_str = n.map_or_else(|| "-".to_string(), |n| n.to_string());
                    match opts.format {
                        Format::Json => println!("{body}"),
                        Format::Plain => println!("n={n_str} g={g}: {body}"),
                        Format::Latex => println!("{n_str} & {g} & ${body}$ \\\\"),
                    }
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
