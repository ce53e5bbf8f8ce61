use std::sync::Arc;

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Norm, METRIC_TOLERANCE};

/// Where the values of a sampled map live and how they are compared.
#[derive(Clone, Debug)]
pub enum Codomain {
    /// ℝ with `|a − b|`.
    Real(Vec<f64>),
    /// ℝᵐ with a p-norm; row-major, one row per domain point.
    Vector { dim: usize, values: Vec<f64>, norm: Norm },
    /// Points of another finite metric space, by index.
    Space { space: Arc<FiniteMetricSpace>, image: Vec<usize> },
}

/// A map `f: X → Y` known on every point of a finite metric space `X`.
#[derive(Clone, Debug)]
pub struct SampledMap {
    domain: Arc<FiniteMetricSpace>,
    codomain: Codomain,
}

impl SampledMap {
    pub fn real(domain: impl Into<Arc<FiniteMetricSpace>>, values: Vec<f64>) -> Result<Self> {
        let domain = domain.into();
        if values.len() != domain.len() {
            return Err(Error::input(format!("{} values for {} domain points", values.len(), domain.len())));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::input(format!("value at point '{}' is not finite", domain.id(i))));
        }
        Ok(Self { domain, codomain: Codomain::Real(values) })
    }

    pub fn vector(domain: impl Into<Arc<FiniteMetricSpace>>, values: &[Vec<f64>], norm: Norm) -> Result<Self> {
        let domain = domain.into();
        if values.len() != domain.len() {
            return Err(Error::input(format!("{} values for {} domain points", values.len(), domain.len())));
        }
        let dim = values.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::input("vector values need at least one component"));
        }
        let mut flat = Vec::with_capacity(dim * values.len());
        for (i, v) in values.iter().enumerate() {
            if v.len() != dim || v.iter().any(|c| !c.is_finite()) {
                return Err(Error::input(format!("bad value vector at point '{}'", domain.id(i))));
            }
            flat.extend_from_slice(v);
        }
        Ok(Self { domain, codomain: Codomain::Vector { dim, values: flat, norm } })
    }

    /// Map into a finite metric space given by a table. The codomain metric
    /// is validated on construction.
    pub fn into_space(
        domain: impl Into<Arc<FiniteMetricSpace>>,
        codomain: impl Into<Arc<FiniteMetricSpace>>,
        image: Vec<usize>,
    ) -> Result<Self> {
        let domain = domain.into();
        let space = codomain.into();
        if image.len() != domain.len() {
            return Err(Error::input(format!("{} images for {} domain points", image.len(), domain.len())));
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= space.len()) {
            return Err(Error::input(format!("image index {bad} outside codomain")));
        }
        let report = space.validate(METRIC_TOLERANCE)?;
        if !report.is_valid() {
            return Err(Error::input(format!("codomain is not a metric space: {:?}", report.violations[0])));
        }
        Ok(Self { domain, codomain: Codomain::Space { space, image } })
    }

    pub fn domain(&self) -> &FiniteMetricSpace {
        &self.domain
    }

    pub fn domain_arc(&self) -> &Arc<FiniteMetricSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Codomain {
        &self.codomain
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// Real values, when the codomain is ℝ.
    pub fn real_values(&self) -> Option<&[f64]> {
        match &self.codomain {
            Codomain::Real(v) => Some(v),
            _ => None,
        }
    }

    /// Value components at point `i` (a single component for real maps).
    pub fn value_components(&self, i: usize) -> Vec<f64> {
        match &self.codomain {
            Codomain::Real(v) => vec![v[i]],
            Codomain::Vector { dim, values, .. } => values[i * dim..(i + 1) * dim].to_vec(),
            Codomain::Space { image, .. } => vec![image[i] as f64],
        }
    }

    /// `|f(a) − f(b)|_Y`; symmetric bit-for-bit.
    #[inline]
    pub fn value_dist(&self, a: usize, b: usize) -> f64 {
        match &self.codomain {
            Codomain::Real(v) => (v[a] - v[b]).abs(),
            Codomain::Vector { dim, values, norm } => {
                norm.distance(&values[a * dim..(a + 1) * dim], &values[b * dim..(b + 1) * dim])
            }
            Codomain::Space { space, image } => space.dist(image[a], image[b]),
        }
    }

    /// Difference quotient `|f(a) − f(b)|_Y / |a − b|_X` for `a ≠ b`.
    #[inline]
    pub fn quotient(&self, a: usize, b: usize) -> f64 {
        self.value_dist(a, b) / self.domain.dist(a, b)
    }

    /// The map `j ↦ f(picks[j])` on a new domain, keeping the codomain.
    pub fn pulled_back(&self, domain: impl Into<Arc<FiniteMetricSpace>>, picks: &[usize]) -> Result<Self> {
        let domain = domain.into();
        if picks.len() != domain.len() {
            return Err(Error::input(format!("{} picks for {} domain points", picks.len(), domain.len())));
        }
        if let Some(&bad) = picks.iter().find(|&&i| i >= self.len()) {
            return Err(Error::input(format!("pick {bad} outside the domain")));
        }
        let codomain = match &self.codomain {
            Codomain::Real(v) => Codomain::Real(picks.iter().map(|&i| v[i]).collect()),
            Codomain::Vector { dim, values, norm } => Codomain::Vector {
                dim: *dim,
                values: picks.iter().flat_map(|&i| values[i * dim..(i + 1) * dim].iter().copied()).collect(),
                norm: *norm,
            },
            Codomain::Space { space, image } => {
                Codomain::Space { space: space.clone(), image: picks.iter().map(|&i| image[i]).collect() }
            }
        };
        Ok(Self { domain, codomain })
    }

    /// Same map with every real value replaced by `g(value)`; used for
    /// building composite fields in tests and the harness.
    pub fn map_real(&self, g: impl Fn(f64) -> f64) -> Result<Self> {
        let v = self.real_values().ok_or_else(|| Error::input("map_real needs a real-valued map"))?;
        Self::real(self.domain.clone(), v.iter().map(|&x| g(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_distances() {
        let x = FiniteMetricSpace::line(&[0.0, 1.0]).unwrap();
        let f = SampledMap::vector(x, &[vec![0.0, 0.0], vec![3.0, 4.0]], Norm::L2).unwrap();
        assert_eq!(f.value_dist(0, 1), 5.0);
        assert_eq!(f.quotient(1, 0), 5.0);
    }

    #[test]
    fn table_codomain_is_validated() {
        let x = FiniteMetricSpace::line(&[0.0, 1.0, 2.0]).unwrap();
        let bad = FiniteMetricSpace::from_matrix(
            vec!["p".into(), "q".into(), "r".into()],
            vec![0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0],
        )
        .unwrap();
        assert!(SampledMap::into_space(x.clone(), bad, vec![0, 1, 2]).is_err());
        let y = FiniteMetricSpace::discrete(vec!["p".into(), "q".into()]).unwrap();
        let f = SampledMap::into_space(x, y, vec![0, 1, 1]).unwrap();
        assert_eq!(f.value_dist(0, 2), 1.0);
        assert_eq!(f.value_dist(1, 2), 0.0);
    }

    #[test]
    fn non_finite_values_rejected() {
        let x = FiniteMetricSpace::line(&[0.0, 1.0]).unwrap();
        assert!(SampledMap::real(x, vec![0.0, f64::NAN]).is_err());
    }
}
