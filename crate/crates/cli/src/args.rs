use std::path::PathBuf;

use bosebound::{Potential, DEFAULT_OPT_TOL};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bosebound", version, about = "Ground-state energy bounds for semirelativistic N-boson systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Absolute tolerance on the one-body kernel e(m)
    #[arg(long, global = true, default_value_t = 1e-8, value_parser = positive)]
    pub tol_energy: f64,

    /// Relative tolerance on optimizer locations
    #[arg(long, global = true, default_value_t = DEFAULT_OPT_TOL, value_parser = positive)]
    pub tol_opt: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Kernel table file; loaded when its settings match, (re)written otherwise
    #[arg(long, global = true)]
    pub kernel_cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate e(m) and e(m) - m by direct solves
    Kernel {
        #[arg(long, value_parser = parse_grid)]
        m_grid: MassGrid,
    },
    /// Lower and upper bound at a single (N, m)
    Bounds {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long, value_parser = non_negative)]
        mass: f64,
        /// power:c=<c>,q=<q>
        #[arg(long, value_parser = parse_potential)]
        potential: Potential,
    },
    /// Bounds over a mass grid for one or more N
    Curve {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..), conflicts_with = "n_range", required_unless_present = "n_range")]
        n: Option<u64>,
        /// a:b (inclusive) or a comma list
        #[arg(long, value_parser = parse_n_range)]
        n_range: Option<NRange>,
        #[arg(long, value_parser = parse_grid)]
        m_grid: MassGrid,
        #[arg(long, value_parser = parse_potential)]
        potential: Potential,
    },
    /// Build or inspect a kernel table file
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Build the default table and write it to --kernel-cache
    Build,
    /// Summarize the table stored at --kernel-cache
    Show,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MassGrid(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct NRange(pub Vec<usize>);

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("expected a finite number >= 0, got `{s}`")),
    }
}

fn parse_potential(s: &str) -> Result<Potential, String> {
    s.parse::<Potential>().map_err(|e| e.to_string())
}

/// `min:max:count:lin|log`, or a comma-separated list of masses.
pub fn parse_grid(s: &str) -> Result<MassGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let masses = match parts.as_slice() {
        [min, max, count, spacing] => {
            let min = non_negative(min)?;
            let max = non_negative(max)?;
            let count: usize = count
                .parse()
                .map_err(|_| format!("bad point count `{count}`"))?;
            if count == 0 {
                return Err("point count must be >= 1".into());
            }
            if count == 1 {
                if min != max {
                    return Err("a single-point grid needs min == max".into());
                }
                vec![min]
            } else {
                let steps = (count - 1) as f64;
                match *spacing {
                    "lin" => (0..count)
                        .map(|i| if i + 1 == count { max } else { min + (max - min) * i as f64 / steps })
                        .collect(),
                    "log" => {
                        if min <= 0.0 {
                            return Err("log grid needs min > 0".into());
                        }
                        let ratio = (max / min).ln();
                        (0..count)
                            .map(|i| if i + 1 == count { max } else { min * (ratio * i as f64 / steps).exp() })
                            .collect()
                    }
                    other => return Err(format!("spacing must be lin or log, got `{other}`")),
                }
            }
        }
        [_] => s
            .split(',')
            .map(|v| non_negative(v.trim()))
            .collect::<Result<Vec<_>, _>>()?,
        _ => return Err(format!("expected min:max:count:lin|log or a comma list, got `{s}`")),
    };
    if masses.windows(2).any(|w| !(w[0] < w[1])) {
        return Err("mass grid must be strictly increasing".into());
    }
    Ok(MassGrid(masses))
}

/// `a:b` (inclusive) or a comma-separated list, all >= 2 and increasing.
pub fn parse_n_range(s: &str) -> Result<NRange, String> {
    let parse_n = |v: &str| -> Result<usize, String> {
        match v.trim().parse::<usize>() {
            Ok(n) if n >= 2 => Ok(n),
            _ => Err(format!("particle counts must be integers >= 2, got `{v}`")),
        }
    };
    let ns: Vec<usize> = match s.split_once(':') {
        Some((a, b)) => (parse_n(a)?..=parse_n(b)?).collect(),
        None => s.split(',').map(parse_n).collect::<Result<_, _>>()?,
    };
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("empty or non-increasing particle range `{s}`"));
    }
    Ok(NRange(ns))
}
