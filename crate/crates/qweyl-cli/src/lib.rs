//! Command line parsing for the `qweyl` binary, kept in a library so it can be tested and fuzzed.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qweyl::report::{Backend, GridPoint, Suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "qweyl", version, about = "Run identity checks and monodromy comparisons for quantum Weyl groups of gl2/sl2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and h-adic algebraic identities.
    Verify(RunArgs),
    /// Monodromy of Casimir connections against the quantum Weyl group action.
    Monodromy(RunArgs),
    /// Print every registered check with its anchor.
    List,
}

#[derive(Debug, Default, Args)]
pub struct RunArgs {
    /// JSON config; flags given on the command line override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Number of tensor factors.
    #[arg(long)]
    pub k: Option<usize>,
    /// Highest weights, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub lambda: Option<Vec<u32>>,
    /// Evaluation shifts, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub s: Option<Vec<f64>>,
    /// Step of the connection, hbar = 4 pi i h.
    #[arg(long, allow_negative_numbers = true)]
    pub h: Option<f64>,
    /// Power of hbar the series backend works modulo.
    #[arg(long)]
    pub order: Option<usize>,
    /// Truncation of the float lattice sums.
    #[arg(long)]
    pub rmax: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub backend: Option<BackendArg>,
    /// Largest degree for classical and finite quantum group checks.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Level window of the loop generators.
    #[arg(long)]
    pub window: Option<usize>,
    /// Longest braid word compared.
    #[arg(long)]
    pub words: Option<usize>,
    /// Only run these check ids, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub only: Option<Vec<String>>,
    /// Leave timings out of the report.
    #[arg(long)]
    pub no_timings: bool,
    /// Where to write the JSON report, `-` for stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BackendArg {
    Exact,
    Series,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Series => Backend::Series,
            BackendArg::Float => Backend::Float,
        }
    }
}

/// Merge flags over an optional JSON config (given as text) for `suite`.
pub fn build_config(suite: Suite, json: Option<&str>, args: &RunArgs) -> anyhow::Result<SuiteConfig> {
    let mut c = match json {
        Some(text) => {
            let c = SuiteConfig::from_json(text)?;
            if c.suite != suite {
                anyhow::bail!("config is for suite {}, command runs {}", c.suite.name(), suite.name());
            }
            c
        }
        None => SuiteConfig::for_suite(suite),
    };
    if args.k.is_some() || args.lambda.is_some() || args.s.is_some() || args.h.is_some() {
        let base = c.grid.first().cloned().unwrap_or_else(|| SuiteConfig::for_suite(suite).grid[0].clone());
        c.grid = vec![grid_point(suite, &base, args)?];
    }
    if let Some(v) = args.order {
        c.order = v;
    }
    if let Some(v) = args.rmax {
        c.r_max = v;
    }
    if let Some(v) = args.tol {
        c.tol = v;
    }
    if let Some(v) = args.degree {
        c.degree = v;
    }
    if let Some(v) = args.window {
        c.window = v;
    }
    if let Some(v) = args.words {
        c.word_budget = v;
    }
    if let Some(b) = args.backend {
        c.backend = Some(b.into());
    }
    if let Some(only) = &args.only {
        c.only = only.clone();
    }
    if args.no_timings {
        c.timings = false;
    }
    c.validate()?;
    Ok(c)
}

fn grid_point(suite: Suite, base: &GridPoint, args: &RunArgs) -> anyhow::Result<GridPoint> {
    let lambda = match (&args.lambda, args.k) {
        (Some(l), Some(k)) if l.len() != k => anyhow::bail!("--k {k} but {} highest weights", l.len()),
        (Some(l), _) => l.clone(),
        (None, Some(k)) => vec![1; k],
        (None, None) => base.lambda.clone(),
    };
    let k = lambda.len();
    let s = match &args.s {
        Some(s) => s.clone(),
        None if base.s.len() == k => base.s.clone(),
        // Distinct shifts, half integers for the exact backends.
        None => (0..k)
            .map(|a| match suite {
                Suite::AlgebraicIdentities => 2.0 * a as f64 + 1.0,
                Suite::MonodromyMainTheorem => 0.2 + 0.3 * a as f64,
            })
            .collect(),
    };
    Ok(GridPoint { lambda, s, h: args.h.unwrap_or(base.h) })
}

/// Parse a command line (including the program name) into a config, reading
/// the config file if one is named.
pub fn config_from_args<I, T>(argv: I) -> anyhow::Result<Option<SuiteConfig>>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (suite, args) = match &cli.command {
        Command::Verify(a) => (Suite::AlgebraicIdentities, a),
        Command::Monodromy(a) => (Suite::MonodromyMainTheorem, a),
        Command::List => return Ok(None),
    };
    let json = args.config.as_ref().map(std::fs::read_to_string).transpose()?;
    build_config(suite, json.as_deref(), args).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> anyhow::Result<Option<SuiteConfig>> {
        config_from_args(line.split_whitespace())
    }

    #[test]
    fn defaults_per_subcommand() {
        let v = parse("qweyl verify").unwrap().unwrap();
        assert_eq!(v, SuiteConfig::for_suite(Suite::AlgebraicIdentities));
        let m = parse("qweyl monodromy").unwrap().unwrap();
        assert_eq!(m.grid[0].s, vec![0.2, 0.5]);
        assert!(parse("qweyl list").unwrap().is_none());
    }

    #[test]
    fn flags_build_one_grid_point() {
        let c = parse("qweyl monodromy --lambda 1,2 --s -0.1,0.4 --h 0.02 --rmax 30 --tol 1e-9 --backend float --out r.json")
            .unwrap()
            .unwrap();
        assert_eq!(c.grid, vec![GridPoint { lambda: vec![1, 2], s: vec![-0.1, 0.4], h: 0.02 }]);
        assert_eq!(c.r_max, 30);
        assert_eq!(c.tol, 1e-9);
        assert_eq!(c.backend, Some(Backend::Float));
    }

    #[test]
    fn k_alone_fills_weights_and_distinct_shifts() {
        let c = parse("qweyl verify --k 3 --order 8").unwrap().unwrap();
        assert_eq!(c.grid[0].lambda, vec![1, 1, 1]);
        assert_eq!(c.grid[0].s, vec![1.0, 3.0, 5.0]);
        assert_eq!(c.order, 8);
    }

    #[test]
    fn bad_flags_are_errors() {
        for line in [
            "qweyl verify --k 2 --lambda 1,1,1",
            "qweyl verify --k 9",
            "qweyl verify --order 0",
            "qweyl verify --backend quantum",
            "qweyl verify --only nope",
            "qweyl monodromy --h 3",
            "qweyl frobnicate",
        ] {
            assert!(parse(line).is_err(), "{line}");
        }
    }

    #[test]
    fn config_suite_must_match_command() {
        let args = RunArgs::default();
        let json = r#"{"suite": "monodromy-main-theorem"}"#;
        assert!(build_config(Suite::AlgebraicIdentities, Some(json), &args).is_err());
        let c = build_config(Suite::MonodromyMainTheorem, Some(json), &args).unwrap();
        assert_eq!(c.suite, Suite::MonodromyMainTheorem);
    }
}
