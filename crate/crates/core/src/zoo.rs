//! Reference functions with known Lipschitz derivatives, sampled on uniform
//! grids.
//!
//! One-dimensional grids are `u_i = i·h` restricted to the domain interval,
//! so `0` is a grid point whenever the interval contains it.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::envelope::ScalarField;
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::linear::LinearMapSpec;
use crate::metric::{check_radius, FiniteMetricSpace, Norm};
use crate::sampled::SampledMap;

/// Analytic `(lip f(x), Lip f(x), 𝕃ip f(x))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleTriple {
    pub lip: f64,
    pub big: f64,
    pub loc: f64,
}

impl OracleTriple {
    pub const fn all(v: f64) -> Self {
        Self { lip: v, big: v, loc: v }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OracleKind {
    Little,
    Big,
    Local,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum DomainShape {
    Interval { lo: f64, hi: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Discrete,
}

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub map: SampledMap,
    pub resolution: f64,
    pub shape: DomainShape,
    /// Per-point analytic derivatives.
    pub oracle: Vec<OracleTriple>,
    /// Analytic `‖f‖_lip` of the underlying function (may be `+∞`).
    pub lip_norm: f64,
    pub continuous: bool,
    /// `sup |f″|` where finite; drives the semicontinuity-defect bound.
    pub second_derivative_bound: Option<f64>,
    /// Coordinates where the analytic `Lip f` is `+∞`.
    pub infinite_points: Vec<Vec<f64>>,
}

impl ZooEntry {
    pub fn convex(&self) -> bool {
        !matches!(self.shape, DomainShape::Discrete)
    }

    pub fn domain(&self) -> &FiniteMetricSpace {
        self.map.domain()
    }

    /// Grid point at the given coordinates.
    pub fn point_at(&self, coords: &[f64]) -> Option<usize> {
        let emb = self.domain().embedding()?;
        (0..self.map.len()).find(|&i| emb.norm().distance(emb.point(i), coords) <= 1e-9 * self.resolution)
    }

    /// Distance from point `i` to the boundary of the domain.
    pub fn boundary_distance(&self, i: usize) -> f64 {
        let Some(c) = self.domain().coords(i) else {
            return f64::INFINITY;
        };
        match &self.shape {
            DomainShape::Interval { lo, hi } => (c[0] - lo).min(hi - c[0]),
            DomainShape::Box { lo, hi } => {
                c.iter().zip(lo.iter().zip(hi)).map(|(x, (l, h))| (x - l).min(h - x)).fold(f64::INFINITY, f64::min)
            }
            DomainShape::Discrete => f64::INFINITY,
        }
    }

    /// Distance from point `i` to the nearest point where `Lip f = +∞`.
    pub fn distance_to_infinite(&self, i: usize) -> f64 {
        let Some(emb) = self.domain().embedding() else {
            return f64::INFINITY;
        };
        self.infinite_points.iter().map(|p| emb.norm().distance(emb.point(i), p)).fold(f64::INFINITY, f64::min)
    }
}

/// Entry names accepted by [`entry`].
pub const NAMES: &[&str] = &[
    "constant",
    "affine",
    "sin",
    "square",
    "cube",
    "abs",
    "sqrt-abs",
    "dyadic",
    "oscillator",
    "linear-diag",
    "linear-rotation",
    "linear-shear",
    "discrete-pair",
    "bhmv",
];

/// Levels of the dyadic staircase; below `2^-DYADIC_LEVELS` it is 0.
pub const DYADIC_LEVELS: i32 = 20;

/// Rotation angle of the `linear-rotation` entry.
pub const ROTATION_ANGLE: f64 = 0.7;

/// The set `E` of the `bhmv` entry.
pub fn bhmv_set() -> IntervalUnion {
    IntervalUnion::new([(0.5, 1.0), (2.0, 2.5)]).expect("valid intervals")
}

pub fn dyadic(u: f64) -> f64 {
    let a = u.abs();
    (0..=DYADIC_LEVELS).map(|n| 2f64.powi(-n)).find(|&t| a >= t).unwrap_or(0.0)
}

pub fn oscillator(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u * u * (1.0 / u).sin()
    }
}

fn oscillator_slope(u: f64) -> f64 {
    (2.0 * u * (1.0 / u).sin() - (1.0 / u).cos()).abs()
}

/// Upper bound on `|f″|` over `|u| ≥ a` for the entries that are smooth
/// except at the origin.
pub fn second_derivative_bound_beyond(name: &str, a: f64) -> Option<f64> {
    if !(a > 0.0) {
        return None;
    }
    match name {
        // f″(u) = −|u|^{-3/2} / 4
        "sqrt-abs" => Some(0.25 * a.powf(-1.5)),
        // f″(u) = (2 − 1/u²) sin(1/u) − 2 cos(1/u) / u
        "oscillator" => Some(2.0 + 1.0 / (a * a) + 2.0 / a),
        _ => None,
    }
}

/// `u ↦ µ([lo, u] ∩ E)`.
pub fn measure_function(e: &IntervalUnion, lo: f64) -> impl Fn(f64) -> f64 + '_ {
    move |u| e.measure_within(lo, u)
}

/// Grid `i·h` inside `[lo, hi]`.
pub fn interval_grid(lo: f64, hi: f64, h: f64) -> Vec<f64> {
    let first = (lo / h - 1e-9).ceil() as i64;
    let last = (hi / h + 1e-9).floor() as i64;
    (first..=last).map(|i| i as f64 * h).collect()
}

fn line_entry(
    name: &'static str,
    description: &'static str,
    (lo, hi): (f64, f64),
    h: f64,
    f: impl Fn(f64) -> f64,
    oracle: impl Fn(f64) -> OracleTriple,
) -> Result<ZooEntry> {
    let pts = interval_grid(lo, hi, h);
    let space = Arc::new(FiniteMetricSpace::line(&pts)?);
    let map = SampledMap::real(space, pts.iter().map(|&u| f(u)).collect())?;
    Ok(ZooEntry {
        name,
        description,
        map,
        resolution: h,
        shape: DomainShape::Interval { lo, hi },
        oracle: pts.iter().map(|&u| oracle(u)).collect(),
        lip_norm: 0.0,
        continuous: true,
        second_derivative_bound: None,
        infinite_points: Vec::new(),
    })
}

fn linear_entry(
    name: &'static str,
    description: &'static str,
    a: LinearMapSpec,
    norm: f64,
    h: f64,
) -> Result<ZooEntry> {
    let half = (0.5f64).min(100.0 * h);
    let m = (half / h).round() as i64;
    let mut pts = Vec::new();
    for i in -m..=m {
        for j in -m..=m {
            pts.push(vec![i as f64 * h, j as f64 * h]);
        }
    }
    let ids = (0..pts.len()).map(|i| i.to_string()).collect();
    let space = Arc::new(FiniteMetricSpace::from_points(ids, &pts, Norm::L2)?);
    let values: Vec<Vec<f64>> = pts.iter().map(|p| a.apply(p)).collect();
    let map = SampledMap::vector(space, &values, Norm::L2)?;
    let edge = m as f64 * h;
    Ok(ZooEntry {
        name,
        description,
        map,
        resolution: h,
        shape: DomainShape::Box { lo: vec![-edge; 2], hi: vec![edge; 2] },
        oracle: vec![OracleTriple::all(norm); pts.len()],
        lip_norm: norm,
        continuous: true,
        second_derivative_bound: Some(0.0),
        infinite_points: Vec::new(),
    })
}

/// One entry sampled at resolution `h`.
pub fn entry(name: &str, h: f64) -> Result<ZooEntry> {
    check_radius(h)?;
    let e = match name {
        "constant" => ZooEntry {
            lip_norm: 0.0,
            second_derivative_bound: Some(0.0),
            ..line_entry(name_of(name), "f(u) = 1.5 on [-1, 1]", (-1.0, 1.0), h, |_| 1.5, |_| OracleTriple::all(0.0))?
        },
        "affine" => ZooEntry {
            lip_norm: 3.0,
            second_derivative_bound: Some(0.0),
            ..line_entry(
                name_of(name),
                "f(u) = 3u on [-1, 1]",
                (-1.0, 1.0),
                h,
                |u| 3.0 * u,
                |_| OracleTriple::all(3.0),
            )?
        },
        "sin" => ZooEntry {
            lip_norm: 1.0,
            second_derivative_bound: Some(1.0),
            ..line_entry(name_of(name), "f(u) = sin u on [0, pi]", (0.0, PI), h, f64::sin, |u| {
                OracleTriple::all(u.cos().abs())
            })?
        },
        "square" => ZooEntry {
            lip_norm: 4.0,
            second_derivative_bound: Some(2.0),
            ..line_entry(
                name_of(name),
                "f(u) = u^2 on [0, 2]",
                (0.0, 2.0),
                h,
                |u| u * u,
                |u| OracleTriple::all((2.0 * u).abs()),
            )?
        },
        "cube" => ZooEntry {
            lip_norm: 3.0,
            second_derivative_bound: Some(6.0),
            ..line_entry(
                name_of(name),
                "f(u) = u^3 on [-1, 1]",
                (-1.0, 1.0),
                h,
                |u| u * u * u,
                |u| OracleTriple::all(3.0 * u * u),
            )?
        },
        "abs" => ZooEntry {
            lip_norm: 1.0,
            // every scale field of |u| is constant on a uniform grid
            second_derivative_bound: Some(0.0),
            ..line_entry(name_of(name), "f(u) = |u| on [-1, 1]", (-1.0, 1.0), h, f64::abs, |_| OracleTriple::all(1.0))?
        },
        "sqrt-abs" => ZooEntry {
            lip_norm: f64::INFINITY,
            infinite_points: vec![vec![0.0]],
            ..line_entry(
                name_of(name),
                "f(u) = sqrt|u| on [-1, 1]",
                (-1.0, 1.0),
                h,
                |u| u.abs().sqrt(),
                |u| OracleTriple::all(if u == 0.0 { f64::INFINITY } else { 0.5 / u.abs().sqrt() }),
            )?
        },
        "dyadic" => {
            let jumps: Vec<f64> = (0..=DYADIC_LEVELS).map(|n| 2f64.powi(-n)).collect();
            let is_jump = |u: f64| jumps.contains(&u.abs());
            let mut infinite_points = vec![vec![0.0]];
            for &t in &jumps {
                infinite_points.push(vec![t]);
                infinite_points.push(vec![-t]);
            }
            ZooEntry {
                lip_norm: f64::INFINITY,
                continuous: false,
                infinite_points,
                ..line_entry(
                    name_of(name),
                    "f(u) = 2^-n for 2^-n <= |u| < 2^(1-n), f(0) = 0, on [-1, 1]",
                    (-1.0, 1.0),
                    h,
                    dyadic,
                    |u| {
                        if u == 0.0 {
                            OracleTriple { lip: 0.5, big: 1.0, loc: f64::INFINITY }
                        } else if is_jump(u) {
                            OracleTriple::all(f64::INFINITY)
                        } else {
                            OracleTriple::all(0.0)
                        }
                    },
                )?
            }
        }
        "oscillator" => {
            let n = 200_000;
            let sup = (1..=n).map(|i| oscillator_slope(i as f64 / n as f64)).fold(0.0, f64::max);
            ZooEntry {
                lip_norm: sup,
                ..line_entry(
                    name_of(name),
                    "f(u) = u^2 sin(1/u), f(0) = 0, on [-1, 1]",
                    (-1.0, 1.0),
                    h,
                    oscillator,
                    |u| {
                        if u == 0.0 {
                            OracleTriple { lip: 0.0, big: 0.0, loc: 1.0 }
                        } else {
                            OracleTriple::all(oscillator_slope(u))
                        }
                    },
                )?
            }
        }
        "linear-diag" => linear_entry(
            name_of(name),
            "f(x) = diag(2, 1) x on a square",
            LinearMapSpec::euclidean(vec![vec![2.0, 0.0], vec![0.0, 1.0]])?,
            2.0,
            h,
        )?,
        "linear-rotation" => linear_entry(
            name_of(name),
            "f(x) = R x for a rotation R on a square",
            LinearMapSpec::rotation(ROTATION_ANGLE),
            1.0,
            h,
        )?,
        "linear-shear" => linear_entry(
            name_of(name),
            "f(x) = [[1, 1], [0, 1]] x on a square",
            LinearMapSpec::euclidean(vec![vec![1.0, 1.0], vec![0.0, 1.0]])?,
            (1.0 + 5f64.sqrt()) / 2.0,
            h,
        )?,
        "discrete-pair" => {
            let space = FiniteMetricSpace::discrete(vec!["a".into(), "b".into()])?;
            ZooEntry {
                name: name_of(name),
                description: "two points at distance 1, f(a) = 0, f(b) = 1",
                map: SampledMap::real(space, vec![0.0, 1.0])?,
                resolution: h,
                shape: DomainShape::Discrete,
                oracle: vec![OracleTriple::all(0.0); 2],
                lip_norm: 1.0,
                continuous: true,
                second_derivative_bound: Some(0.0),
                infinite_points: Vec::new(),
            }
        }
        "bhmv" => {
            let e = bhmv_set();
            let f = measure_function(&e, 0.0);
            let ind = |u: f64| OracleTriple::all(if e.contains(u) { 1.0 } else { 0.0 });
            ZooEntry {
                lip_norm: 1.0,
                ..line_entry(name_of(name), "f(u) = measure of [0, u] within E on [0, 3]", (0.0, 3.0), h, f, ind)?
            }
        }
        _ => return Err(Error::input(format!("unknown zoo entry '{name}'; known: {}", NAMES.join(", ")))),
    };
    Ok(e)
}

fn name_of(name: &str) -> &'static str {
    NAMES.iter().find(|n| **n == name).copied().expect("listed name")
}

/// Every entry at resolution `h`.
pub fn make_zoo(h: f64) -> Result<Vec<ZooEntry>> {
    NAMES.iter().map(|n| entry(n, h)).collect()
}

/// One component of the oracle as a field on the entry's domain.
pub fn oracle_field(e: &ZooEntry, which: OracleKind) -> Result<ScalarField> {
    let values = e
        .oracle
        .iter()
        .map(|o| match which {
            OracleKind::Little => o.lip,
            OracleKind::Big => o.big,
            OracleKind::Local => o.loc,
        })
        .collect();
    ScalarField::new(e.map.domain_arc().clone(), values)
}
