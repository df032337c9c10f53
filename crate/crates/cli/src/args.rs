use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "subclose", version, about = "Exact computations on subclose families, optimal graphs and Grassmann codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Maximum number of candidate families or graphs scanned per value.
    #[arg(long, default_value_t = subclose::families::DEFAULT_FAMILY_BUDGET, global = true)]
    pub budget_families: u128,
    /// Maximum number of subspaces enumerated per higher weight.
    #[arg(long, default_value_t = subclose::codes::DEFAULT_SUBSPACE_BUDGET, global = true)]
    pub budget_subspaces: u128,
    /// Seed for randomized sampling.
    #[arg(long, default_value_t = 2024, global = true)]
    pub seed: u64,
    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,
    /// Run single-threaded.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KrMode {
    /// Closed form where one applies, exhaustive search elsewhere.
    Closed,
    /// Exhaustive search for every r.
    Oracle,
    /// Both, failing on any disagreement.
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Values of K_r(ell, m) over a range of r.
    KrTable {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        m: usize,
        /// A single value or an inclusive range such as 1..10.
        #[arg(long, value_parser = parse_range)]
        r: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = KrMode::Both)]
        mode: KrMode,
    },
    /// Graphs on m vertices with r edges maximizing the sum of squared degrees.
    Optimal {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_range)]
        r: RangeInclusive<usize>,
    },
    /// Compares higher weights with subclose coordinate sections.
    Verify {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = parse_range)]
        r: RangeInclusive<usize>,
        /// Schubert index as an increasing comma-separated tuple, e.g. 2,4.
        #[arg(long, value_parser = parse_alpha)]
        alpha: Option<Alpha>,
    },
    /// Exports the generator matrix of a Grassmann or Schubert code.
    Code {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = parse_alpha)]
        alpha: Option<Alpha>,
    },
    /// Runs the built-in identity and oracle suites.
    Selftest {
        #[arg(long, conflicts_with = "full")]
        fast: bool,
        #[arg(long)]
        full: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("invalid number {t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

/// A Schubert index such as `(2, 4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alpha(pub Vec<usize>);

pub fn parse_alpha(s: &str) -> Result<Alpha, String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("invalid entry {t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("alpha must be strictly increasing, got {s}"));
    }
    Ok(Alpha(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..10").unwrap(), 1..=10);
        assert_eq!(parse_range("1..=3").unwrap(), 1..=3);
        assert_eq!(parse_range("0").unwrap(), 0..=0);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn alphas() {
        assert_eq!(parse_alpha("3,4").unwrap(), Alpha(vec![3, 4]));
        assert!(parse_alpha("4,3").is_err());
        assert!(parse_alpha("1,,2").is_err());
    }

    #[test]
    fn command_line_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
