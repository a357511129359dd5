use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use origami_core::action::{orbit, ActionError};
use origami_core::catalog::{catalog_query, catalog_write, enumerate, CatalogError, CatalogQuery};
use origami_core::cylinders::{decomposition_in_direction, CylinderRecord};
use origami_core::flow::{discrepancy, summarize, trace_rational, FlowState};
use origami_core::lshape::LSurface;
use origami_core::origami::{stratum_dim_abelian, stratum_dim_quadratic, Origami, Stratum};
use origami_core::quadfield::QuadNum;

/// Square-tiled surfaces: invariants, SL(2,Z)-orbits, cylinders, flows and
/// L-shaped surfaces. Origamis are written `n; h=<cycles>; v=<cycles>`, for
/// example `3; h=(1,2); v=(1,3)`.
#[derive(Parser)]
#[command(name = "origami", version)]
struct Cli {
    /// Print compact single-line JSON instead of indented JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, stratum, cone angles and reducedness.
    Info { origami: String },
    /// SL(2,Z)-orbit: index, cusps, elliptic points, genus of the curve.
    Orbit { origami: String },
    /// Cylinder decomposition in a rational direction.
    Cylinders {
        origami: String,
        /// Direction `p,q`.
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        dir: String,
    },
    /// Exact straight-line flow, or `flow discrepancy` for equidistribution.
    Flow(FlowArgs),
    /// The L-shaped surface with long side `(1 + sqrt(d)) / 2`.
    Lshape {
        #[arg(long)]
        d: u64,
        /// Slide the top square left by this amount, e.g. `1/3`.
        #[arg(long)]
        shift: Option<String>,
    },
    /// All origamis with `n` squares and their orbits.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        stratum: Option<String>,
        #[arg(long)]
        reduced: bool,
        /// Append the entries to this catalog instead of printing them.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Query a catalog file.
    Catalog {
        path: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        stratum: Option<String>,
        #[arg(long)]
        orbit_id: Option<String>,
    },
    /// Dimension of a stratum given its zero orders, e.g. `--abelian 1,1`.
    StrataDim {
        #[arg(long, conflicts_with = "quadratic", allow_hyphen_values = true)]
        abelian: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        quadratic: Option<String>,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct FlowArgs {
    #[command(subcommand)]
    mode: Option<FlowMode>,
    origami: Option<String>,
    /// Direction `p,q`.
    #[arg(long, allow_hyphen_values = true)]
    dir: Option<String>,
    /// Start point `square:x:y`, square 1-based, coordinates rational.
    #[arg(long)]
    start: Option<String>,
    /// Give up after this many edge crossings.
    #[arg(long, default_value_t = 10_000)]
    max: usize,
}

#[derive(Subcommand)]
enum FlowMode {
    /// Largest anchored-box deviation of a float orbit from uniform.
    Discrepancy {
        origami: String,
        #[arg(long)]
        slope: f64,
        #[arg(long, default_value_t = 100_000)]
        crossings: usize,
        #[arg(long, default_value_t = 10)]
        grid: usize,
    },
}

enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "error: {e:#}"),
            Failure::Internal(e) => write!(f, "internal error: {e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn action_failure(e: ActionError) -> Failure {
    match e {
        ActionError::InvariantViolation(_) => Failure::Internal(e.into()),
        other => Failure::Input(other.into()),
    }
}

fn catalog_failure(e: CatalogError) -> Failure {
    match e {
        CatalogError::Action(a) => action_failure(a),
        other => Failure::Input(other.into()),
    }
}

fn parse_origami(text: &str) -> anyhow::Result<Origami> {
    text.parse().with_context(|| format!("reading origami {text:?}"))
}

fn parse_direction(text: &str) -> anyhow::Result<(i64, i64)> {
    let (p, q) = text
        .split_once(',')
        .ok_or_else(|| anyhow!("direction {text:?} is not of the form p,q"))?;
    Ok((
        p.trim().parse().with_context(|| format!("direction {text:?}"))?,
        q.trim().parse().with_context(|| format!("direction {text:?}"))?,
    ))
}

fn parse_rational(text: &str) -> anyhow::Result<BigRational> {
    text.trim().parse().map_err(|_| anyhow!("{text:?} is not a rational number"))
}

fn parse_orders<T: std::str::FromStr>(text: &str) -> anyhow::Result<Vec<T>> {
    text.split(',')
        .map(|k| k.trim().parse().map_err(|_| anyhow!("bad order {k:?} in {text:?}")))
        .collect()
}

fn emit<T: Serialize>(value: &T, compact: bool) -> Result<String, Failure> {
    let out = if compact {
        serde_json::to_string(value)
    } else {
        serde_json::to_string_pretty(value)
    };
    out.map_err(|e| Failure::Internal(e.into()))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let compact = cli.json;
    match cli.command {
        Command::Info { origami } => emit(&parse_origami(&origami)?.record(), compact),
        Command::Orbit { origami } => {
            let o = parse_origami(&origami)?;
            let report = orbit(&o).map_err(action_failure)?;
            emit(&report.summary(), compact)
        }
        Command::Cylinders { origami, dir } => {
            let o = parse_origami(&origami)?;
            let (p, q) = parse_direction(&dir)?;
            let cyls = decomposition_in_direction(&o, p, q).map_err(anyhow::Error::from)?;
            let rows: Vec<CylinderRecord> = cyls.iter().map(CylinderRecord::from).collect();
            emit(&rows, compact)
        }
        Command::Flow(args) => run_flow(args, compact),
        Command::Lshape { d, shift } => {
            let mut l = LSurface::from_d(d).map_err(anyhow::Error::from)?;
            if let Some(s) = shift {
                let s: QuadNum = s.parse().map_err(|e| anyhow!("shift {s:?}: {e}"))?;
                l = l.with_shift(s).map_err(anyhow::Error::from)?;
            }
            emit(&l.report().map_err(anyhow::Error::from)?, compact)
        }
        Command::Enumerate {
            n,
            stratum,
            reduced,
            catalog,
        } => {
            let stratum: Option<Stratum> = stratum.map(|s| s.parse()).transpose().map_err(anyhow::Error::from)?;
            let entries = enumerate(n, stratum.as_ref(), reduced).map_err(catalog_failure)?;
            match catalog {
                Some(path) => {
                    let stats = catalog_write(&path, &entries).map_err(catalog_failure)?;
                    emit(
                        &serde_json::json!({"written": stats.written, "skipped": stats.skipped}),
                        compact,
                    )
                }
                None => emit(&entries, compact),
            }
        }
        Command::Catalog {
            path,
            n,
            stratum,
            orbit_id,
        } => {
            let query = CatalogQuery {
                n,
                stratum: stratum.map(|s| s.parse()).transpose().map_err(anyhow::Error::from)?,
                orbit_id,
            };
            emit(&catalog_query(&path, &query).map_err(catalog_failure)?, compact)
        }
        Command::StrataDim { abelian, quadratic } => {
            let dim = match (abelian, quadratic) {
                (Some(text), None) => {
                    let orders: Vec<u32> = parse_orders(&text)?;
                    let sum: u32 = orders.iter().sum();
                    if !sum.is_multiple_of(2) {
                        return Err(anyhow!("orders of an abelian differential have even sum, got {sum}").into());
                    }
                    stratum_dim_abelian(&orders, (sum as usize + 2) / 2).map_err(anyhow::Error::from)?
                }
                (None, Some(text)) => {
                    let orders: Vec<i32> = parse_orders(&text)?;
                    let sum: i32 = orders.iter().sum();
                    if sum < 0 || sum % 4 != 0 {
                        return Err(anyhow!("orders of a quadratic differential sum to 4g-4, got {sum}").into());
                    }
                    stratum_dim_quadratic(&orders, (sum as usize + 4) / 4).map_err(anyhow::Error::from)?
                }
                _ => return Err(anyhow!("give exactly one of --abelian or --quadratic").into()),
            };
            emit(&dim, compact)
        }
    }
}

fn run_flow(args: FlowArgs, compact: bool) -> Result<String, Failure> {
    if let Some(FlowMode::Discrepancy {
        origami,
        slope,
        crossings,
        grid,
    }) = args.mode
    {
        let o = parse_origami(&origami)?;
        if crossings == 0 || grid == 0 || !slope.is_finite() {
            return Err(anyhow!("crossings and grid must be positive and the slope finite").into());
        }
        return emit(&discrepancy(&o, slope, crossings, grid), compact);
    }
    let origami = args.origami.ok_or_else(|| anyhow!("flow needs an origami"))?;
    let o = parse_origami(&origami)?;
    let (p, q) = parse_direction(args.dir.as_deref().ok_or_else(|| anyhow!("flow needs --dir p,q"))?)?;
    let start = args.start.ok_or_else(|| anyhow!("flow needs --start square:x:y"))?;
    let parts: Vec<&str> = start.split(':').collect();
    let [sq, x, y] = parts[..] else {
        return Err(anyhow!("start {start:?} is not of the form square:x:y").into());
    };
    let sq: usize = sq.trim().parse().with_context(|| format!("square in {start:?}"))?;
    if sq == 0 || sq > o.n() {
        return Err(anyhow!("square {sq} does not exist").into());
    }
    let state = FlowState::new(sq - 1, parse_rational(x)?, parse_rational(y)?);
    let report = trace_rational(&o, &state, p, q, args.max).map_err(anyhow::Error::from)?;
    emit(&summarize(&report, p, q), compact)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(out)) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Err(failure)) => {
            eprintln!("{failure}");
            ExitCode::from(match failure {
                Failure::Input(_) => 1,
                Failure::Internal(_) => 2,
            })
        }
        Err(_) => ExitCode::from(2),
    }
}
