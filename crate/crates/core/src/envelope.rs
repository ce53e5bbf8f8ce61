//! Baire envelopes and semicontinuity defects of scalar fields at a fixed
//! scale `h`, with balls `B(x,h)` standing in for neighbourhoods of `x`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{check_radius, FiniteMetricSpace};
use crate::par;
use crate::sampled::SampledMap;
use crate::scales::{functional_field, Functional};

/// An extended-real value at every point of a finite metric space.
#[derive(Clone, Debug, Serialize)]
pub struct ScalarField {
    #[serde(skip)]
    space: Arc<FiniteMetricSpace>,
    values: Vec<f64>,
}

impl ScalarField {
    /// `±∞` are allowed, NaN is not.
    pub fn new(space: impl Into<Arc<FiniteMetricSpace>>, values: Vec<f64>) -> Result<Self> {
        let space = space.into();
        if values.len() != space.len() {
            return Err(Error::input(format!("field has {} values for {} points", values.len(), space.len())));
        }
        if let Some(i) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::input(format!("field value at '{}' is NaN", space.id(i))));
        }
        Ok(Self { space, values })
    }

    /// `x ↦ F_r f(x)` for one of the scale functionals.
    pub fn from_functional(f: &SampledMap, which: Functional, r: f64) -> Result<Self> {
        Self::new(f.domain_arc().clone(), functional_field(f, which, r)?)
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<FiniteMetricSpace> {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, x: usize) -> f64 {
        self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self { space: self.space.clone(), values: self.values.iter().map(|v| -v).collect() }
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    fn map_balls(&self, h: f64, punctured: bool, reduce: impl Fn(&[usize], usize) -> f64 + Sync) -> Result<Self> {
        check_radius(h)?;
        let values = par::map_points(self.len(), |x| {
            let mut ball: Vec<usize> = self.space.neighbors(x, h, false).into_iter().map(|(_, u)| u).collect();
            if !punctured {
                ball.push(x);
            }
            reduce(&ball, x)
        });
        Ok(Self { space: self.space.clone(), values })
    }
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.space.ids() == other.space.ids()
    }
}

/// `a − b` where `a > b`, else 0; never NaN for extended reals.
fn excess(a: f64, b: f64) -> f64 {
    if a > b {
        a - b
    } else {
        0.0
    }
}

/// `x ↦ max_{u ∈ B(x,h)} g(u)`.
pub fn baire_upper(g: &ScalarField, h: f64) -> Result<ScalarField> {
    g.map_balls(h, false, |ball, _| ball.iter().map(|&u| g.values[u]).fold(f64::NEG_INFINITY, f64::max))
}

/// `x ↦ min_{u ∈ B(x,h)} g(u)`.
pub fn baire_lower(g: &ScalarField, h: f64) -> Result<ScalarField> {
    g.map_balls(h, false, |ball, _| ball.iter().map(|&u| g.values[u]).fold(f64::INFINITY, f64::min))
}

/// How far `g` jumps up near `x`: `max(0, max_{B(x,h)∖{x}} g − g(x))`.
pub fn usc_defect(g: &ScalarField, h: f64) -> Result<ScalarField> {
    g.map_balls(h, true, |ball, x| {
        let m = ball.iter().map(|&u| g.values[u]).fold(f64::NEG_INFINITY, f64::max);
        excess(m, g.values[x])
    })
}

/// How far `g` jumps down near `x`: `max(0, g(x) − min_{B(x,h)∖{x}} g)`.
pub fn lsc_defect(g: &ScalarField, h: f64) -> Result<ScalarField> {
    g.map_balls(h, true, |ball, x| {
        let m = ball.iter().map(|&u| g.values[u]).fold(f64::INFINITY, f64::min);
        excess(g.values[x], m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: i32, step: f64) -> Arc<FiniteMetricSpace> {
        let pts: Vec<f64> = (-n..=n).map(|i| i as f64 * step).collect();
        Arc::new(FiniteMetricSpace::line(&pts).unwrap())
    }

    fn field(space: &Arc<FiniteMetricSpace>, g: impl Fn(f64) -> f64) -> ScalarField {
        let vals = (0..space.len()).map(|i| g(space.coords(i).unwrap()[0])).collect();
        ScalarField::new(space.clone(), vals).unwrap()
    }

    #[test]
    fn rejects_nan_and_wrong_length() {
        let s = grid(1, 1.0);
        assert!(ScalarField::new(s.clone(), vec![0.0, f64::NAN, 1.0]).is_err());
        assert!(ScalarField::new(s.clone(), vec![0.0]).is_err());
        assert!(ScalarField::new(s, vec![f64::INFINITY, 0.0, f64::NEG_INFINITY]).is_ok());
    }

    #[test]
    fn upper_envelope_of_spike() {
        let s = grid(10, 0.1);
        let g = field(&s, |u| if u == 0.0 { 1.0 } else { 0.0 });
        let up = baire_upper(&g, 0.15).unwrap();
        for i in 0..s.len() {
            let expect = if (9..=11).contains(&i) { 1.0 } else { 0.0 };
            assert_eq!(up.value(i), expect, "at {i}");
        }
        let low = baire_lower(&g, 0.15).unwrap();
        assert!(low.values().iter().all(|&v| v == 0.0));
        // balls are singletons below the spacing
        assert_eq!(baire_lower(&g, 0.05).unwrap(), g);
        assert_eq!(baire_upper(&g, 0.05).unwrap(), g);
    }

    #[test]
    fn constants_are_fixed() {
        let s = grid(5, 0.2);
        let g = field(&s, |_| 4.5);
        assert_eq!(baire_upper(&g, 0.7).unwrap(), g);
        assert_eq!(baire_lower(&g, 0.7).unwrap(), g);
        assert!(usc_defect(&g, 0.7).unwrap().values().iter().all(|&v| v == 0.0));
        assert!(lsc_defect(&g, 0.7).unwrap().values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn defect_of_open_interval_indicator() {
        let s = grid(20, 0.1);
        let g = field(&s, |u| if u > 0.0 && u < 1.0 { 1.0 } else { 0.0 });
        let d = usc_defect(&g, 0.15).unwrap();
        assert_eq!(d.value(20), 1.0);
        assert_eq!(lsc_defect(&g, 0.15).unwrap().value(20), 0.0);
    }

    #[test]
    fn infinite_values_do_not_produce_nan() {
        let s = grid(2, 1.0);
        let g = ScalarField::new(s, vec![f64::INFINITY, 0.0, f64::INFINITY, f64::NEG_INFINITY, 1.0]).unwrap();
        for h in [0.5, 1.5, 3.0] {
            for d in [usc_defect(&g, h).unwrap(), lsc_defect(&g, h).unwrap()] {
                assert!(d.values().iter().all(|v| !v.is_nan()));
            }
        }
        let d = usc_defect(&g, 1.5).unwrap();
        assert_eq!(d.value(0), 0.0);
        assert_eq!(d.value(1), f64::INFINITY);
        assert_eq!(baire_lower(&g, 1.5).unwrap().value(4), f64::NEG_INFINITY);
    }

    #[test]
    fn abs_fields_have_no_defect() {
        let s = grid(100, 0.01);
        let f = SampledMap::real(s.clone(), (0..s.len()).map(|i| s.coords(i).unwrap()[0].abs()).collect()).unwrap();
        let loc = ScalarField::from_functional(&f, Functional::Loc, 0.1).unwrap();
        assert!(usc_defect(&loc, 0.1).unwrap().max() < 1e-12);
        let big = ScalarField::from_functional(&f, Functional::BigBelow, 0.1).unwrap();
        assert!(lsc_defect(&big, 0.1).unwrap().max() <= 0.2);
    }

    #[test]
    fn bad_scale_is_an_error() {
        let s = grid(1, 1.0);
        let g = field(&s, |u| u);
        assert!(baire_upper(&g, 0.0).is_err());
        assert!(usc_defect(&g, f64::NAN).is_err());
    }
}
