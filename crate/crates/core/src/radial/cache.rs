//! Text table for a [`KernelFunction`].
//!
//! ```text
//! # bosebound kernel table v1
//! # config-hash 3f2a9c0d11b7e845
//! # config r_max=auto grid_points=20000 tol_energy=0.00000001 max_bisections=200
//! # columns m e err slope
//! 0 2.338107410459... 0.00000001 0
//! ...
//! ```
//!
//! Numbers use the shortest representation that parses back to the same
//! bits, so a write/read cycle reproduces the table exactly.

use std::io::{BufRead, Write};

use sha2::{Digest, Sha256};

use super::{EigensolveConfig, KernelFunction, KernelNode, RadialError};
use crate::scalar::Real;

pub const CACHE_MAGIC: &str = "# bosebound kernel table v1";
const COLUMNS: &str = "# columns m e err slope";

/// First 16 hex digits of the SHA-256 of the config line.
pub fn config_hash(description: &str) -> String {
    let digest = Sha256::digest(description.as_bytes());
    hex::encode(&digest[..8])
}

pub fn write_kernel<T: Real, W: Write>(kernel: &KernelFunction<T>, mut out: W) -> std::io::Result<()> {
    let description = kernel.config().describe();
    writeln!(out, "{CACHE_MAGIC}")?;
    writeln!(out, "# config-hash {}", config_hash(&description))?;
    writeln!(out, "# config {description}")?;
    writeln!(out, "{COLUMNS}")?;
    for node in kernel.nodes() {
        writeln!(out, "{} {} {} {}", node.mass, node.energy, node.error, node.slope)?;
    }
    out.flush()
}

pub fn read_kernel<T: Real, R: BufRead>(input: R) -> Result<KernelFunction<T>, RadialError> {
    let mut lines = input.lines();
    let mut next_line = |what: &str| -> Result<String, RadialError> {
        match lines.next() {
            Some(Ok(line)) => Ok(line),
            Some(Err(e)) => Err(RadialError::Cache(e.to_string())),
            None => Err(RadialError::Cache(format!("missing {what}"))),
        }
    };

    if next_line("header")?.trim_end() != CACHE_MAGIC {
        return Err(RadialError::Cache("not a kernel table (bad header)".into()));
    }
    let hash_line = next_line("config hash")?;
    let hash = hash_line
        .strip_prefix("# config-hash ")
        .ok_or_else(|| RadialError::Cache("missing config-hash line".into()))?
        .trim();
    let config_line = next_line("config")?;
    let description = config_line
        .strip_prefix("# config ")
        .ok_or_else(|| RadialError::Cache("missing config line".into()))?
        .trim_end();
    if config_hash(description) != hash {
        return Err(RadialError::Cache("config hash does not match config line".into()));
    }
    let config = parse_config::<T>(description)?;
    if next_line("columns")?.trim_end() != COLUMNS {
        return Err(RadialError::Cache("unexpected column header".into()));
    }

    let mut nodes = Vec::new();
    for (row, line) in lines.enumerate() {
        let line = line.map_err(|e| RadialError::Cache(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<T> = line
            .split_whitespace()
            .map(|f| f.parse::<T>())
            .collect::<Result<_, _>>()
            .map_err(|_| RadialError::Cache(format!("row {row}: unparsable number")))?;
        let [mass, energy, error, slope] = fields[..] else {
            return Err(RadialError::Cache(format!(
                "row {row}: expected 4 columns, got {}",
                fields.len()
            )));
        };
        nodes.push(KernelNode { mass, energy, error, slope });
    }
    KernelFunction::from_nodes(nodes, config)
}

fn parse_config<T: Real>(description: &str) -> Result<EigensolveConfig<T>, RadialError> {
    let mut config = EigensolveConfig::<T>::default();
    let bad = |field: &str| RadialError::Cache(format!("bad config field `{field}`"));
    for field in description.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| bad(field))?;
        match key {
            "r_max" if value == "auto" => config.r_max = None,
            "r_max" => config.r_max = Some(value.parse().map_err(|_| bad(field))?),
            "grid_points" => config.grid_points = value.parse().map_err(|_| bad(field))?,
            "tol_energy" => config.tol_energy = value.parse().map_err(|_| bad(field))?,
            "max_bisections" => config.max_bisections = value.parse().map_err(|_| bad(field))?,
            _ => return Err(bad(field)),
        }
    }
    config.validate()?;
    Ok(config)
}
