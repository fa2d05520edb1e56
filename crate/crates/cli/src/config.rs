use std::path::Path;

use serde::Deserialize;

use crate::args::{Format, GlobalOpts};
use crate::CliError;

/// Optional TOML defaults. Every key may be omitted.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub group: Option<String>,
    pub ordering: Option<String>,
    pub strands: Option<usize>,
    pub radius: Option<usize>,
    pub bound: Option<u32>,
    pub budget: Option<u64>,
    pub degree: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path.display(), e)))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {}", path.display(), e)))
    }
}

/// Resolved settings: flags, then the config file, then defaults.
///
/// Defaults: format text, strands 3, bound 8, budget 10⁶, Magnus degree 8,
/// seed 20240517; radius, group and ordering default per command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub group: Option<String>,
    pub ordering: Option<String>,
    pub strands: usize,
    pub radius: Option<usize>,
    pub bound: u32,
    pub budget: u64,
    pub degree: usize,
    pub seed: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: None,
            ordering: None,
            strands: 3,
            radius: None,
            bound: ord_core::oracle::DEFAULT_POWER_BOUND,
            budget: ord_core::braid::DEFAULT_BUDGET,
            degree: ord_core::free::DEFAULT_DEGREE,
            seed: ord_core::suites::DEFAULT_SEED,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn resolve(opts: &GlobalOpts) -> Result<Self, CliError> {
        let file = match &opts.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let d = RunConfig::default();
        Ok(RunConfig {
            group: file.group,
            ordering: file.ordering,
            strands: file.strands.unwrap_or(d.strands),
            radius: opts.radius.or(file.radius),
            bound: opts.bound.or(file.bound).unwrap_or(d.bound),
            budget: opts.budget.or(file.budget).unwrap_or(d.budget),
            degree: opts.degree.or(file.degree).unwrap_or(d.degree),
            seed: opts.seed.or(file.seed).unwrap_or(d.seed),
            format: opts.format.or(file.format).unwrap_or(d.format),
        })
    }

    pub fn radius_or(&self, default: usize) -> usize {
        self.radius.unwrap_or(default)
    }

    pub fn strands_or(&self, flag: Option<usize>) -> usize {
        flag.unwrap_or(self.strands)
    }

    pub fn ordering_or<'a>(&'a self, flag: &'a Option<String>, default: &'a str) -> &'a str {
        flag.as_deref().or(self.ordering.as_deref()).unwrap_or(default)
    }

    pub fn group_or<'a>(&'a self, flag: &'a Option<String>, default: &'a str) -> &'a str {
        flag.as_deref().or(self.group.as_deref()).unwrap_or(default)
    }
}
