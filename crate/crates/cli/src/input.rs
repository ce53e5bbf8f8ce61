use std::fs::File;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use lipderiv::{io, zoo, FiniteMetricSpace, Norm, SampledMap, ScalarField};

use crate::config::FileConfig;

#[derive(Clone, Debug, PartialEq)]
pub enum MetricChoice {
    Euclidean(Norm),
    Discrete,
    Matrix,
}

impl MetricChoice {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "discrete" => Ok(Self::Discrete),
            "matrix" => Ok(Self::Matrix),
            _ => match s.strip_prefix("euclidean-") {
                Some(p) => Ok(Self::Euclidean(Norm::parse(p)?)),
                None => {
                    bail!("unknown metric '{s}' (expected euclidean-1, euclidean-2, euclidean-inf, discrete or matrix)")
                }
            },
        }
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct InputArgs {
    /// Point cloud CSV (`id,x1,..,xn,<values>`), or the distance table with
    /// `--metric matrix`, or an `id,<values>` table with `--metric discrete`.
    #[arg(long, conflicts_with = "zoo")]
    pub input: Option<PathBuf>,
    /// euclidean-1 | euclidean-2 | euclidean-inf | discrete | matrix
    #[arg(long)]
    pub metric: Option<String>,
    /// `id,<values>` table for `--metric matrix`.
    #[arg(long)]
    pub values: Option<PathBuf>,
    /// Norm on vector values: 1, 2 or inf.
    #[arg(long)]
    pub value_norm: Option<String>,
    /// Use a built-in reference function instead of a file.
    #[arg(long)]
    pub zoo: Option<String>,
    /// Grid spacing for `--zoo`.
    #[arg(long, default_value_t = 1e-3)]
    pub resolution: f64,
}

/// A metric space with one row of numbers per point.
pub struct Loaded {
    pub space: Arc<FiniteMetricSpace>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub value_norm: Norm,
}

fn open(path: &PathBuf) -> Result<File> {
    File::open(path).with_context(|| format!("cannot open {}", path.display()))
}

impl InputArgs {
    pub fn load(&self, file: &FileConfig) -> Result<Loaded> {
        let value_norm = Norm::parse(self.value_norm.as_deref().or(file.value_norm.as_deref()).unwrap_or("2"))?;
        if let Some(name) = &self.zoo {
            let e = zoo::entry(name, self.resolution)?;
            let rows = (0..e.map.len()).map(|i| e.map.value_components(i)).collect();
            let columns = if e.map.real_values().is_some() {
                vec!["value".into()]
            } else {
                (1..=e.map.value_components(0).len()).map(|k| format!("v{k}")).collect()
            };
            return Ok(Loaded { space: e.map.domain_arc().clone(), columns, rows, value_norm });
        }
        let path = self.input.as_ref().ok_or_else(|| anyhow!("no input: pass --input or --zoo"))?;
        let metric = MetricChoice::parse(self.metric.as_deref().or(file.metric.as_deref()).unwrap_or("euclidean-2"))?;
        let ctx = || format!("reading {}", path.display());
        match metric {
            MetricChoice::Euclidean(norm) => {
                let cloud = io::read_point_cloud(open(path)?).with_context(ctx)?;
                let space = Arc::new(cloud.space(norm)?);
                Ok(Loaded { space, columns: cloud.value_names, rows: cloud.values, value_norm })
            }
            MetricChoice::Discrete => {
                let table = io::read_table(open(path)?).with_context(ctx)?;
                let space = Arc::new(FiniteMetricSpace::discrete(table.ids.clone())?);
                let rows = table.aligned_to(&space)?;
                Ok(Loaded { space, columns: table.columns, rows, value_norm })
            }
            MetricChoice::Matrix => {
                let space = io::read_distance_matrix(open(path)?).with_context(ctx)?;
                let tol = file.metric_tolerance.unwrap_or(lipderiv::METRIC_TOLERANCE);
                let report = space.validate(tol)?;
                if let Some(v) = report.violations.first() {
                    bail!("{} is not a metric: {v:?}", path.display());
                }
                let vpath = self.values.as_ref().ok_or_else(|| anyhow!("--metric matrix needs --values"))?;
                let table = io::read_table(open(vpath)?).with_context(|| format!("reading {}", vpath.display()))?;
                let rows = table.aligned_to(&space).with_context(|| format!("reading {}", vpath.display()))?;
                Ok(Loaded { space: Arc::new(space), columns: table.columns, rows, value_norm })
            }
        }
    }
}

impl Loaded {
    /// The sampled map: real-valued for one column, vector-valued otherwise.
    pub fn map(&self) -> Result<SampledMap> {
        match self.columns.len() {
            0 => bail!("input has no value column"),
            1 => Ok(SampledMap::real(self.space.clone(), self.rows.iter().map(|r| r[0]).collect())?),
            _ => Ok(SampledMap::vector(self.space.clone(), &self.rows, self.value_norm)?),
        }
    }

    /// The single value column as a field; infinities are allowed.
    pub fn field(&self) -> Result<ScalarField> {
        if self.columns.len() != 1 {
            bail!("a scalar field needs exactly one value column, found {}", self.columns.len());
        }
        Ok(ScalarField::new(self.space.clone(), self.rows.iter().map(|r| r[0]).collect())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_names() {
        assert_eq!(MetricChoice::parse("euclidean-2").unwrap(), MetricChoice::Euclidean(Norm::L2));
        assert_eq!(MetricChoice::parse("euclidean-inf").unwrap(), MetricChoice::Euclidean(Norm::LInf));
        assert_eq!(MetricChoice::parse("matrix").unwrap(), MetricChoice::Matrix);
        assert!(MetricChoice::parse("euclidean").is_err());
        assert!(MetricChoice::parse("hamming").is_err());
    }
}
