//! `lefschetz`: command-line access to the lattice, Gromov-invariant,
//! pencil, Brill-Noether and Hilbert-scheme computations.

mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lefschetz_core::fourmanifold::{catalog, lattice_from_json, FourManifoldLattice, HomologyClass, ManifoldFileError};
use lefschetz_core::hilb_local::Stratum;

use report::{Outcome, Report};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 1729;

/// Environment variable fixing the number of worker threads.
pub const WORKERS_ENV: &str = "LEFSCHETZ_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "lefschetz",
    version,
    about = "Exact checks for symplectic four-manifolds and Lefschetz pencils"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for sampled commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct ManifoldArg {
    /// Manifold JSON file, or `catalog:<name>` for a bundled example.
    manifold: String,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    /// Divisor class, comma separated (e.g. `1,0,-2`).
    #[arg(long, allow_hyphen_values = true)]
    class: String,
    /// `h^0(D)`.
    #[arg(long)]
    h0: i64,
    /// `h^0(K - D)`.
    #[arg(long = "h0-dual")]
    h0_dual: i64,
    /// Number of point constraints.
    #[arg(long, default_value_t = 0)]
    r: i64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a manifold file and print its characteristic numbers.
    ManifoldCheck(ManifoldArg),
    /// Gromov invariant of a divisor class from its section dimensions.
    Gromov {
        #[command(flatten)]
        m: ManifoldArg,
        #[command(flatten)]
        p: ProfileArgs,
    },
    /// Compare the invariants of `D` and `K - D`.
    Duality {
        #[command(flatten)]
        m: ManifoldArg,
        #[command(flatten)]
        p: ProfileArgs,
    },
    /// Numerology of the degree-`k` pencil.
    Pencil {
        #[command(flatten)]
        m: ManifoldArg,
        #[arg(long)]
        k: u64,
        /// Class whose fibre degree is reported, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
    },
    /// Decide the standard surface count of a class where the cited results allow.
    Count {
        #[command(flatten)]
        m: ManifoldArg,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// `h^0(D)`, enabling the Kähler formula as a last resort.
        #[arg(long, requires = "h0_dual")]
        h0: Option<i64>,
        /// `h^0(K - D)`.
        #[arg(long = "h0-dual", requires = "h0")]
        h0_dual: Option<i64>,
    },
    /// Brill-Noether number of `g^s_r` on a genus-`g` curve.
    Bn {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
    /// Fibre dimensions of the Abel-Jacobi map in degree `r`.
    AjFibres {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
    },
    /// Certify kernel dimensions of the relative Hilbert-scheme equations.
    Hilb {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 50)]
        samples: u64,
        /// smooth, singular, singular:N,M, b1zero, absolute-diagonal or absolute-cyclic.
        #[arg(long, default_value = "smooth")]
        stratum: Stratum,
        /// Include per-sample outcomes.
        #[arg(long)]
        outcomes: bool,
    },
    /// Run every applicable check on a manifold.
    Classify {
        #[command(flatten)]
        m: ManifoldArg,
        /// JSON array of classes to count, e.g. `[[1], [0]]`.
        #[arg(long)]
        classes: Option<PathBuf>,
    },
}

/// Failure before a report could be produced; exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_manifold_source(arg: &str) -> Result<String, InputError> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        let known: Vec<&str> = catalog::names().collect();
        return catalog::source(name)
            .map(str::to_string)
            .ok_or_else(|| InputError(format!("unknown catalog entry {name:?}; known: {}", known.join(", "))));
    }
    std::fs::read_to_string(arg).map_err(|e| InputError(format!("{arg}: {e}")))
}

fn load_manifold(arg: &str) -> Result<FourManifoldLattice, InputError> {
    Ok(lattice_from_json(&read_manifold_source(arg)?)?)
}

fn parse_class(s: &str, x: &FourManifoldLattice) -> Result<HomologyClass, InputError> {
    let coords = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| InputError(format!("bad class coordinate {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let a = HomologyClass::new(coords);
    x.check_class(&a)?;
    Ok(a)
}

fn read_classes(path: &PathBuf, x: &FourManifoldLattice) -> Result<Vec<HomologyClass>, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let raw: Vec<Vec<i64>> = serde_json::from_str(&text)?;
    raw.into_iter()
        .map(|v| {
            let a = HomologyClass::new(v);
            x.check_class(&a)?;
            Ok(a)
        })
        .collect()
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    Ok(match &cli.command {
        Command::ManifoldCheck(m) => match lattice_from_json(&read_manifold_source(&m.manifold)?) {
            Ok(x) => report::manifold_check(&x),
            Err(ManifoldFileError::Lattice(e)) => report::manifold_invalid(&e),
            Err(e) => return Err(e.into()),
        },
        Command::Gromov { m, p } => {
            let x = load_manifold(&m.manifold)?;
            let d = parse_class(&p.class, &x)?;
            report::gromov(&x, d, p.h0, p.h0_dual, p.r)?
        }
        Command::Duality { m, p } => {
            let x = load_manifold(&m.manifold)?;
            let d = parse_class(&p.class, &x)?;
            report::duality(&x, d, p.h0, p.h0_dual, p.r)?
        }
        Command::Pencil { m, k, class } => {
            let x = load_manifold(&m.manifold)?;
            let a = class.as_deref().map(|c| parse_class(c, &x)).transpose()?;
            report::pencil(&x, *k, a.as_ref())?
        }
        Command::Count { m, class, h0, h0_dual } => {
            let x = load_manifold(&m.manifold)?;
            let a = parse_class(class, &x)?;
            report::count(&x, &a, h0.zip(*h0_dual))?
        }
        Command::Bn { g, r, s } => report::bn(*g, *r, *s)?,
        Command::AjFibres { g, r } => report::aj_fibres(*g, *r)?,
        Command::Hilb {
            r,
            samples,
            stratum,
            outcomes,
        } => report::hilb(*stratum, *r, *samples, cli.seed, *outcomes)?,
        Command::Classify { m, classes } => {
            let x = load_manifold(&m.manifold)?;
            let cs = match classes {
                Some(p) => read_classes(p, &x)?,
                None => Vec::new(),
            };
            report::classify(&x, &cs)?
        }
    })
}

fn configure_workers() -> Result<(), InputError> {
    let Ok(v) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| InputError(format!("{WORKERS_ENV}={v:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_workers().and_then(|()| run(&cli));
    match result {
        Ok(rep) => {
            let out = match cli.format {
                Format::Json => render::json(&rep.body),
                Format::Text => render::text(&rep.body),
            };
            print!("{out}");
            match rep.outcome {
                Outcome::Success => ExitCode::SUCCESS,
                Outcome::CheckFailed => ExitCode::from(1),
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
