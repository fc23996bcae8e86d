mod args;
mod output;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use bosebound::radial::config_hash;
use bosebound::{
    bounds_for, default_mass_grid, read_kernel, solve_state, sweep_curve, write_kernel,
    BoundsError, Kernel, Mass, OptimError, Potential, RadialError, SolverConfig, System,
};
use clap::Parser;
use rayon::prelude::*;

use args::{CacheAction, Cli, Command, Common};
use output::{Cell, Metadata, Table};

#[derive(Debug)]
enum Failure {
    Usage(String),
    NonConvergence(String),
    Validity(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Usage(_) => 2,
            Failure::NonConvergence(_) => 3,
            Failure::Validity(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::NonConvergence(m) | Failure::Validity(m) | Failure::Other(m) => m,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn radial_failure(e: &RadialError, message: String) -> Failure {
    match e {
        RadialError::NonConvergence { .. } | RadialError::DomainTooSmall { .. } => {
            Failure::NonConvergence(message)
        }
        RadialError::InvalidMass(_) | RadialError::Config(_) => Failure::Usage(message),
        _ => Failure::Other(message),
    }
}

fn bounds_failure(e: &BoundsError) -> Failure {
    let message = e.to_string();
    match e.root() {
        BoundsError::CouplingTooStrong { .. }
        | BoundsError::Domain(_)
        | BoundsError::Potential(_)
        | BoundsError::OrderingViolation { .. } => Failure::Validity(message),
        BoundsError::Optim(OptimError::BracketFailure { .. } | OptimError::NonFinite { .. }) => {
            Failure::NonConvergence(message)
        }
        BoundsError::Radial(r) => radial_failure(r, message),
        BoundsError::InvalidParticleCount(_)
        | BoundsError::InvalidMass(_)
        | BoundsError::InvalidCoupling(_) => Failure::Usage(message),
        _ => Failure::Other(message),
    }
}

fn solver_config(common: &Common) -> Result<SolverConfig, Failure> {
    let cfg = SolverConfig {
        tol_energy: common.tol_energy,
        ..SolverConfig::default()
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn build_kernel(cfg: &SolverConfig) -> Result<Kernel, Failure> {
    Kernel::build(&default_mass_grid(), cfg).map_err(|e| radial_failure(&e, format!("kernel construction: {e}")))
}

fn save_kernel(kernel: &Kernel, path: &Path) -> Result<(), Failure> {
    let mut w = BufWriter::new(File::create(path)?);
    write_kernel(kernel, &mut w)?;
    w.flush()?;
    Ok(())
}

fn load_kernel(path: &Path) -> Result<Kernel, Failure> {
    let file = File::open(path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
    read_kernel(BufReader::new(file)).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

/// Loads the cached table when it was built with `cfg`, otherwise builds one
/// (and stores it when a cache path is given).
fn obtain_kernel(common: &Common, cfg: &SolverConfig) -> Result<Kernel, Failure> {
    if let Some(path) = &common.kernel_cache {
        if path.exists() {
            if let Ok(k) = load_kernel(path) {
                if k.config() == cfg {
                    return Ok(k);
                }
            }
        }
        let k = build_kernel(cfg)?;
        save_kernel(&k, path)?;
        return Ok(k);
    }
    build_kernel(cfg)
}

fn metadata(common: &Common, command: &'static str, cfg: Option<&SolverConfig>) -> Metadata {
    let describe = cfg.map(SolverConfig::describe);
    Metadata {
        version: env!("CARGO_PKG_VERSION"),
        command,
        tol_energy: common.tol_energy,
        tol_opt: common.tol_opt,
        kernel_config_hash: describe.as_deref().map(config_hash),
        kernel_config: describe,
    }
}

fn emit(common: &Common, table: &Table, meta: &Metadata) -> Result<(), Failure> {
    match &common.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(common.format, meta, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(common.format, meta, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn cmd_kernel(common: &Common, grid: &[f64]) -> Result<(), Failure> {
    let cfg = solver_config(common)?;
    let states: Vec<_> = grid
        .par_iter()
        .map(|&m| Mass::new(m).and_then(|m| solve_state(m, &cfg)))
        .collect();
    let mut table = Table::new(vec!["m", "e", "e_minus_m"]);
    for (i, (state, &m)) in states.into_iter().zip(grid).enumerate() {
        let s = state.map_err(|e| radial_failure(&e, format!("row {i} (m = {m}): {e}")))?;
        table.push(vec![Cell::Num(m), Cell::Num(s.energy), Cell::Num(s.binding)]);
    }
    emit(common, &table, &metadata(common, "kernel", Some(&cfg)))
}

fn percent_gap(pair: &bosebound::Bounds) -> Option<f64> {
    pair.relative_gap().map(|g| 100.0 * g)
}

fn cmd_bounds(common: &Common, n: usize, m: f64, potential: &Potential) -> Result<(), Failure> {
    let cfg = solver_config(common)?;
    let system = System::new(n, m).map_err(|e| Failure::Usage(e.to_string()))?;
    let kernel = obtain_kernel(common, &cfg)?;
    let pair = bounds_for(&system, potential, &kernel, common.tol_opt).map_err(|e| bounds_failure(&e))?;
    let mut table = Table::new(vec![
        "N", "m", "potential", "lower", "t_star", "upper", "mu_star", "gap_percent",
    ]);
    table.push(vec![
        Cell::Int(n),
        Cell::Num(m),
        Cell::Text(potential.descriptor().to_string()),
        pair.lower.map(|b| b.value).into(),
        pair.lower.and_then(|b| b.optimizer).into(),
        pair.upper.map(|b| b.value).into(),
        pair.upper.and_then(|b| b.optimizer).into(),
        percent_gap(&pair).into(),
    ]);
    emit(common, &table, &metadata(common, "bounds", Some(&cfg)))
}

fn cmd_curve(common: &Common, ns: &[usize], grid: &[f64], potential: &Potential) -> Result<(), Failure> {
    let cfg = solver_config(common)?;
    let kernel = obtain_kernel(common, &cfg)?;
    let mut table = Table::new(vec!["N", "m", "lower", "upper", "gap_percent", "status"]);
    for &n in ns {
        let curve = sweep_curve(n, potential, &kernel, grid, common.tol_opt).map_err(|e| bounds_failure(&e))?;
        for (i, row) in curve.rows.iter().enumerate() {
            let cells = match &row.result {
                Ok(pair) => {
                    let status = if curve.gap_increases.contains(&i) { "gap-increase" } else { "ok" };
                    vec![
                        pair.lower.map(|b| b.value).into(),
                        pair.upper.map(|b| b.value).into(),
                        percent_gap(pair).into(),
                        Cell::Text(status.into()),
                    ]
                }
                Err(e) => vec![
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Text(format!("error: {e}")),
                ],
            };
            let mut full = vec![Cell::Int(n), Cell::Num(row.m)];
            full.extend(cells);
            table.push(full);
        }
    }
    emit(common, &table, &metadata(common, "curve", Some(&cfg)))
}

fn cmd_cache(common: &Common, action: &CacheAction) -> Result<(), Failure> {
    let path = common
        .kernel_cache
        .as_deref()
        .ok_or_else(|| Failure::Usage("cache commands need --kernel-cache PATH".into()))?;
    let kernel = match action {
        CacheAction::Build => {
            let cfg = solver_config(common)?;
            let k = build_kernel(&cfg)?;
            save_kernel(&k, path)?;
            k
        }
        CacheAction::Show => load_kernel(path)?,
    };
    let describe = kernel.config().describe();
    let mut out = io::stdout().lock();
    writeln!(out, "path          {}", path.display())?;
    writeln!(out, "config        {describe}")?;
    writeln!(out, "config-hash   {}", config_hash(&describe))?;
    writeln!(out, "nodes         {}", kernel.nodes().len())?;
    writeln!(out, "mass range    {:.16e} .. {:.16e}", kernel.m_min(), kernel.m_max())?;
    let worst = kernel.nodes().iter().map(|n| n.error).fold(0.0, f64::max);
    writeln!(out, "max node err  {worst:.3e}")?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::Kernel { m_grid } => cmd_kernel(common, &m_grid.0),
        Command::Bounds { n, mass, potential } => cmd_bounds(common, *n as usize, *mass, potential),
        Command::Curve { n, n_range, m_grid, potential } => {
            let ns = match (n, n_range) {
                (Some(n), _) => vec![*n as usize],
                (None, Some(r)) => r.0.clone(),
                (None, None) => return Err(Failure::Usage("need --n or --n-range".into())),
            };
            cmd_curve(common, &ns, &m_grid.0, potential)
        }
        Command::Cache { action } => cmd_cache(common, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
