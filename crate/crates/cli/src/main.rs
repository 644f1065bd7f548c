mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use moorelab_core::block::canonical_blocks;
use moorelab_core::drg::{compare_with_reference, intersection_numbers, IntersectionArray};
use moorelab_core::error::Error as CoreError;
use moorelab_core::perm::{assemble_moore, build_h, moore_report, search_with, verify_h};
use moorelab_core::{expect, BlockId, SearchBudget, SearchOptions, SearchOutcome};

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "moorelab", version, about = "Triple intersection numbers and Moore graph existence checks")]
struct Cli {
    /// Intersection array "b0,b1,b2;c1,c2,c3".
    #[arg(long, global = true, default_value = "55,54,2;1,1,54")]
    array: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection numbers p^1, p^2, p^3 and multiplicities.
    Pnums,
    /// Block systems, solution enumeration and the counts table.
    #[command(alias = "block")]
    Blocks {
        #[command(subcommand)]
        action: BlocksAction,
    },
    /// Check stored fixtures, the null basis and the grid lemmas.
    Verify(VerifyArgs),
    /// Common line-mate counts on an n x n rook's graph.
    GridOracle {
        #[arg(long, default_value_t = 56)]
        n: usize,
    },
    /// Backtracking search for a permutation system of the given degree.
    Search(SearchArgs),
    /// Everything above in one document.
    Report,
}

#[derive(Subcommand, Debug)]
enum BlocksAction {
    /// The eight canonical blocks.
    List,
    /// Right-hand side and constraints of one block.
    Build { block: String },
    /// All constrained solutions of one block, or "all".
    Enumerate {
        block: String,
        #[arg(long, value_enum, default_value_t = Reference::Fixture)]
        reference: Reference,
    },
    /// Solution counts per canonical block.
    Summary {
        /// Exit 1 unless the counts match the stored expectations.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reference {
    /// The stored particular solution of the block.
    Fixture,
    /// The lexicographically smallest solution.
    Base,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Fixture file to check instead of the built-in one.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Grid sizes "a:b" (inclusive) for the line-mate checks.
    #[arg(long, default_value = "5:10")]
    grid_range: String,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    degree: usize,
    /// Node limit, e.g. 1000000, 10^6 or 1e6.
    #[arg(long)]
    budget_nodes: Option<String>,
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Shuffle candidate order with this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Search all pairs instead of fixing bijections to the last part.
    #[arg(long)]
    no_normalize: bool,
    /// Write the assembled graph's edge list here when a system is found.
    #[arg(long)]
    export_edges: Option<PathBuf>,
}

/// Bad input from the user; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok,
    Failed,
    Budget,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Budget => 3,
        }
    }
}

fn parse_array(s: &str) -> anyhow::Result<IntersectionArray> {
    s.parse().map_err(|e: CoreError| usage(e.to_string()))
}

fn parse_block(s: &str) -> anyhow::Result<BlockId> {
    let b: BlockId = s.parse().map_err(|e: CoreError| usage(e.to_string()))?;
    if !canonical_blocks().contains(&b) {
        return Err(usage(format!(
            "{b} is not a canonical block; expected one of {}",
            canonical_blocks().map(|c| c.to_string()).join(", ")
        )));
    }
    Ok(b)
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let bad = || usage(format!("grid range {s:?} must look like a:b with 4 <= a <= b"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a < 4 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Accepts plain integers, `_` separators, `B^E` and `MeE`.
fn parse_count(s: &str) -> anyhow::Result<u64> {
    let t = s.trim().replace('_', "");
    let bad = || usage(format!("cannot read {s:?} as a node count"));
    let pow = |base: &str, exp: &str| -> anyhow::Result<u64> {
        let base: u64 = base.parse().map_err(|_| bad())?;
        let exp: u32 = exp.parse().map_err(|_| bad())?;
        base.checked_pow(exp).ok_or_else(bad)
    };
    if let Some((b, e)) = t.split_once('^') {
        pow(b, e)
    } else if let Some((m, e)) = t.split_once(['e', 'E']) {
        let scale = pow("10", e)?;
        m.parse::<u64>().map_err(|_| bad())?.checked_mul(scale).ok_or_else(bad)
    } else {
        t.parse().map_err(|_| bad())
    }
}

/// Only the intersection numbers make sense for other arrays; everything
/// else is tied to the degree-57 instance.
fn require_default_array(array: &IntersectionArray, what: &str) -> anyhow::Result<()> {
    if *array != IntersectionArray::moore57() {
        return Err(usage(format!("{what} is only available for the default array")));
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut String) -> anyhow::Result<Status> {
    let array = parse_array(&cli.array)?;
    let fmt = cli.format;
    match &cli.command {
        Command::Pnums => {
            let p = intersection_numbers(&array).map_err(anyhow::Error::from)?;
            let diagnostics = if array == IntersectionArray::moore57() {
                compare_with_reference(&p, &expect::reference_pnums())
            } else {
                Vec::new()
            };
            render::pnums(out, fmt, &array, &p, &diagnostics)?;
            Ok(Status::Ok)
        }
        Command::Blocks { action } => {
            require_default_array(&array, "blocks")?;
            match action {
                BlocksAction::List => render::block_list(out, fmt)?,
                BlocksAction::Build { block } => render::block_build(out, fmt, parse_block(block)?)?,
                BlocksAction::Enumerate { block, reference } => {
                    let blocks = if block == "all" {
                        canonical_blocks().to_vec()
                    } else {
                        vec![parse_block(block)?]
                    };
                    render::enumerate(out, fmt, &blocks, *reference)?;
                }
                BlocksAction::Summary { check } => {
                    let ok = render::summary(out, fmt, *check)?;
                    if !ok {
                        return Ok(Status::Failed);
                    }
                }
            }
            Ok(Status::Ok)
        }
        Command::Verify(args) => {
            require_default_array(&array, "verify")?;
            let range = parse_range(&args.grid_range)?;
            let fixtures = match &args.fixtures {
                Some(path) => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    expect::parse_fixtures(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
                }
                None => expect::fixtures(),
            };
            let ok = render::verify(out, fmt, &fixtures, range)?;
            Ok(if ok { Status::Ok } else { Status::Failed })
        }
        Command::GridOracle { n } => {
            let grid = moorelab_core::GridModel::new(*n).map_err(|e| usage(e.to_string()))?;
            let ok = render::grid_oracle(out, fmt, &grid)?;
            Ok(if ok { Status::Ok } else { Status::Failed })
        }
        Command::Search(args) => search_cmd(args, fmt, out),
        Command::Report => {
            require_default_array(&array, "report")?;
            let ok = render::report(out, fmt)?;
            Ok(if ok { Status::Ok } else { Status::Failed })
        }
    }
}

/// Degrees above this need an explicit budget.
const UNBUDGETED_MAX_DEGREE: usize = 6;

fn search_cmd(args: &SearchArgs, fmt: Format, out: &mut String) -> anyhow::Result<Status> {
    if args.degree < 2 {
        return Err(usage(format!("degree must be at least 2, got {}", args.degree)));
    }
    let max_nodes = args.budget_nodes.as_deref().map(parse_count).transpose()?;
    let max_time = match args.budget_seconds {
        Some(s) if !(s.is_finite() && s > 0.0) => return Err(usage("--budget-seconds must be positive")),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    if args.degree > UNBUDGETED_MAX_DEGREE && max_nodes.is_none() && max_time.is_none() {
        return Err(usage(format!(
            "degree {} needs --budget-nodes or --budget-seconds",
            args.degree
        )));
    }
    let budget = SearchBudget {
        max_nodes: max_nodes.unwrap_or(u64::MAX),
        max_time,
    };
    let options = SearchOptions {
        normalize: !args.no_normalize,
        seed: args.seed,
    };
    let report = search_with(args.degree, budget, options)?;
    let moore = match &report.outcome {
        SearchOutcome::Found(sys) => {
            let h = build_h(sys);
            let hr = verify_h(&h, args.degree);
            let g = assemble_moore(&h, args.degree)?;
            if let Some(path) = &args.export_edges {
                fs::write(path, g.to_edge_list()).with_context(|| format!("writing {}", path.display()))?;
            }
            Some((hr, moore_report(&g, args.degree)))
        }
        _ => None,
    };
    render::search(out, fmt, &report, moore.as_ref())?;
    Ok(match report.outcome {
        SearchOutcome::BudgetExceeded => Status::Budget,
        _ => Status::Ok,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = String::new();
    let status = match run(&cli, &mut out) {
        Ok(status) => status,
        Err(e) => {
            let code = if e.downcast_ref::<Usage>().is_some() { 2 } else { 1 };
            eprintln!("error: {e:#}");
            return ExitCode::from(code);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &out).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(out.as_bytes()).context("writing output"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(status.code())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("10^6").unwrap(), 1_000_000);
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("2E3").unwrap(), 2000);
        assert_eq!(parse_count("1_000").unwrap(), 1000);
        assert!(parse_count("ten").is_err());
        assert!(parse_count("10^40").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5:10").unwrap(), (5, 10));
        assert!(parse_range("10:5").is_err());
        assert!(parse_range("3:5").is_err());
        assert!(parse_range("5").is_err());
    }

    #[test]
    fn blocks() {
        assert!(parse_block("221").is_ok());
        assert!(parse_block("122").is_err());
        assert!(parse_block("abc").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn status_codes() {
        assert_eq!(Status::Ok.code(), 0);
        assert_eq!(Status::Failed.code(), 1);
        assert_eq!(Status::Budget.code(), 3);
    }
}
