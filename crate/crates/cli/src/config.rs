use std::path::Path;

use anyhow::{bail, Context, Result};
use lipderiv::harness::SuiteConfig;
use lipderiv::RadiusGrid;
use serde::Deserialize;

/// Settings read from a TOML file. Every field is optional; command-line
/// flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub metric: Option<String>,
    pub value_norm: Option<String>,
    /// Absolute slack when validating a distance matrix.
    pub metric_tolerance: Option<f64>,
    pub rmax: Option<f64>,
    pub q: Option<f64>,
    pub steps: Option<usize>,
    pub tail: Option<usize>,
    pub h: Option<f64>,
    pub gamma: Option<f64>,
    pub seed: Option<u64>,
    pub check: Option<SuiteConfig>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

pub const DEFAULT_RMAX: f64 = 0.5;
pub const DEFAULT_Q: f64 = 0.5;
pub const DEFAULT_STEPS: usize = 10;
pub const DEFAULT_TAIL: usize = 3;

/// Grid flags as given on the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct GridFlags {
    pub rmax: Option<f64>,
    pub q: Option<f64>,
    pub steps: Option<usize>,
    pub tail: Option<usize>,
}

impl GridFlags {
    pub fn resolve(&self, file: &FileConfig) -> Result<RadiusGrid> {
        let r_max = self.rmax.or(file.rmax).unwrap_or(DEFAULT_RMAX);
        let q = self.q.or(file.q).unwrap_or(DEFAULT_Q);
        let steps = self.steps.or(file.steps).unwrap_or(DEFAULT_STEPS);
        let tail = self.tail.or(file.tail).unwrap_or(DEFAULT_TAIL.min(steps));
        if !(q > 0.0 && q < 1.0) {
            bail!("--q must lie in (0, 1), got {q}");
        }
        Ok(RadiusGrid::new(r_max, q, steps, tail)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: FileConfig = toml::from_str("rmax = 1.0\nsteps = 4\n").unwrap();
        let grid = GridFlags { steps: Some(6), ..Default::default() }.resolve(&file).unwrap();
        assert_eq!(grid.radii().len(), 6);
        assert_eq!(grid.radii()[0], 1.0);
    }

    #[test]
    fn unknown_keys_and_bad_q_are_errors() {
        assert!(toml::from_str::<FileConfig>("radius = 1\n").is_err());
        assert!(GridFlags { q: Some(1.5), ..Default::default() }.resolve(&FileConfig::default()).is_err());
    }

    #[test]
    fn check_section_parses() {
        let file: FileConfig = toml::from_str("[check]\nsuites = [\"frechet\"]\nseed = 3\n").unwrap();
        assert_eq!(file.check.unwrap().seed, 3);
    }
}
