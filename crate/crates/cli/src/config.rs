//! TOML run lists for the `report` verb.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use canring::strata::{self, Report, Target};
use canring::PrimeField;

use crate::{Cli, Failure, Knobs};

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub prime: Option<u32>,
    #[serde(default)]
    pub run: Vec<Entry>,
    #[serde(skip)]
    base: PathBuf,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub target: String,
    pub seed: Option<u64>,
    pub resolve: Option<bool>,
    #[serde(default)]
    pub through_0010: bool,
    pub lambdas: Option<Vec<u32>>,
    pub truncation: Option<u32>,
    /// Ideal file to verify instead of a generated instance, relative to the config.
    pub ideal: Option<PathBuf>,
}

pub fn load(path: &Path) -> Result<Config, Failure> {
    let text = crate::read(path)?;
    let mut cfg: Config =
        toml::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    for e in &cfg.run {
        e.target.parse::<Target>().map_err(|err| Failure::Parse(err.to_string()))?;
    }
    cfg.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(cfg)
}

/// Runs every entry, in parallel, and returns the reports in config order.
pub fn run_all(cfg: &Config, cli: &Cli, jobs: Option<usize>) -> Result<Vec<Report>, Failure> {
    let prime = cfg.prime.unwrap_or(cli.prime);
    let field = PrimeField::new(prime).map_err(|e| Failure::Parse(e.to_string()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    pool.install(|| cfg.run.par_iter().map(|e| run_entry(cfg, e, field, cli)).collect())
}

fn run_entry(cfg: &Config, e: &Entry, field: PrimeField, cli: &Cli) -> Result<Report, Failure> {
    let target: Target = e.target.parse().map_err(|err: canring::Error| Failure::Parse(err.to_string()))?;
    let knobs = Knobs {
        resolve: e.resolve == Some(true),
        no_resolve: e.resolve == Some(false),
        through_0010: e.through_0010,
        lambdas: e.lambdas.clone().unwrap_or_else(|| vec![1, 2, 3]),
    };
    let mut opts = cli.verify_opts(&knobs);
    if let Some(t) = e.truncation {
        opts.truncation = t;
    }
    let seed = e.seed.unwrap_or(cli.seed);
    match &e.ideal {
        Some(p) => crate::verify_file(target, &cfg.base.join(p), &opts),
        None => Ok(strata::verify(target, field, seed, &opts)),
    }
}
