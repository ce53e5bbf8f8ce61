//! Linear maps between finite-dimensional normed spaces and a sampled
//! estimate of their operator norm.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::Norm;

/// An `m × n` real matrix acting from `(ℝⁿ, domain_norm)` to `(ℝᵐ, codomain_norm)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearMapSpec {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    pub domain_norm: Norm,
    pub codomain_norm: Norm,
}

impl LinearMapSpec {
    pub fn new(rows: Vec<Vec<f64>>, domain_norm: Norm, codomain_norm: Norm) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::input("matrix rows have different lengths"));
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::input(format!("matrix entry {bad} is not finite")));
        }
        Ok(Self { rows: m, cols: n, data, domain_norm, codomain_norm })
    }

    /// Euclidean on both sides.
    pub fn euclidean(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(rows, Norm::L2, Norm::L2)
    }

    /// Parses `"a,b;c,d"` (rows separated by `;`).
    pub fn parse(s: &str, domain_norm: Norm, codomain_norm: Norm) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|t| t.trim().parse::<f64>().map_err(|e| Error::input(format!("bad matrix entry '{t}': {e}"))))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows, domain_norm, codomain_norm)
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::euclidean(vec![vec![c, -s], vec![s, c]]).expect("finite")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Lower bound on `‖A‖ = sup_{‖e‖=1} ‖Ae‖` from the signed axis vectors
    /// followed by `sphere_samples` seeded random directions. Each sample
    /// set is a prefix of the next larger one, so the estimate is
    /// nondecreasing in `sphere_samples` for a fixed seed.
    pub fn operator_norm(&self, sphere_samples: usize, seed: u64) -> Result<f64> {
        if self.cols == 0 {
            return Err(Error::input("operator norm of a map on a zero-dimensional space"));
        }
        if sphere_samples == 0 {
            return Err(Error::input("sphere_samples must be at least 1"));
        }
        let mut best = 0.0f64;
        let mut e = vec![0.0; self.cols];
        for j in 0..self.cols {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[j] = 1.0;
            best = best.max(self.codomain_norm.norm(&self.apply(&e)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..sphere_samples {
            e.iter_mut().for_each(|x| *x = StandardNormal.sample(&mut rng));
            let len = self.domain_norm.norm(&e);
            if len == 0.0 {
                continue;
            }
            e.iter_mut().for_each(|x| *x /= len);
            best = best.max(self.codomain_norm.norm(&self.apply(&e)));
        }
        Ok(best)
    }
}
