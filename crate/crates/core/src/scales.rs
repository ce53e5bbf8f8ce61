//! Scale-indexed Lipschitz functionals of a sampled map and their limit
//! estimates.
//!
//! For a point `x` and radius `r`:
//!
//! | function                    | value                                                       |
//! |-----------------------------|-------------------------------------------------------------|
//! | [`lip_upper_r`]             | `Lip^r f(x)   = sup_{u ∈ B(x,r)} |f(u) − f(x)| / r`          |
//! | [`lip_upper_r_closed`]      | `Lip^r_+ f(x) = sup_{u ∈ B[x,r]} |f(u) − f(x)| / r`          |
//! | [`big_lip_below_r`]         | `Lip_r f(x)   = sup_{0<ρ<r} Lip^ρ f(x)`                      |
//! | [`little_lip_below_r`]      | `lip_r f(x)   = inf_{0<ρ<r} Lip^ρ f(x)`                      |
//! | [`loc_lip_r`]               | `𝕃ip^r f(x)   = ‖f restricted to B(x,r)‖_lip`               |
//!
//! On a finite sample all of these are step functions of `ρ` whose
//! breakpoints are the distances from `x` to the other sample points, so each
//! one is evaluated exactly by a single scan over the sorted distances.
//! Empty suprema are 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::check_radius;
use crate::par;
use crate::sampled::SampledMap;

/// Result of an infimum over `ρ` that may have nothing to range over.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LittleLip {
    pub value: f64,
    /// No other sample point lies within the radius; the value is the
    /// `sup ∅ = 0` convention, not a measurement.
    pub unresolved: bool,
}

/// Sorted distance breakpoints around one point with the running quantities
/// every functional is read from. Distances are grouped by exact equality.
#[derive(Clone, Debug)]
pub struct PointScan {
    /// Distinct positive distances `d_1 < d_2 < …` within the scan radius.
    dists: Vec<f64>,
    /// `M_k = max_{d(u,x) ≤ d_k} |f(u) − f(x)|`.
    running_max: Vec<f64>,
    /// `max_{0 < d(u,x) ≤ d_k} |f(u) − f(x)| / d(u,x)`.
    ratio_max: Vec<f64>,
    /// `min_{j ≤ k} M_j / d_{j+1}` (only defined while `d_{j+1}` exists).
    gap_min: Vec<f64>,
    /// `min_{j ≤ k} M_j / d_j`.
    breakpoint_min: Vec<f64>,
    /// Lipschitz constant of `f` on `{x} ∪ {u : d(u,x) ≤ d_k}`; empty for
    /// radial scans.
    loc: Vec<f64>,
    pairs: bool,
}

impl PointScan {
    /// Scans the closed ball `B[x, radius]`.
    pub fn new(f: &SampledMap, x: usize, radius: f64) -> Result<Self> {
        Self::scan(f, x, radius, true)
    }

    /// Like [`PointScan::new`] but skips the quadratic pair enumeration, so
    /// [`PointScan::loc`] is unavailable.
    pub fn radial(f: &SampledMap, x: usize, radius: f64) -> Result<Self> {
        Self::scan(f, x, radius, false)
    }

    fn scan(f: &SampledMap, x: usize, radius: f64, pairs: bool) -> Result<Self> {
        f.domain().check_point(x)?;
        check_radius(radius)?;
        let nbrs = f.domain().neighbors(x, radius, true);

        let mut scan = PointScan {
            dists: Vec::new(),
            running_max: Vec::new(),
            ratio_max: Vec::new(),
            gap_min: Vec::new(),
            breakpoint_min: Vec::new(),
            loc: Vec::new(),
            pairs,
        };
        let mut members: Vec<usize> = Vec::with_capacity(nbrs.len() + 1);
        members.push(x);
        let (mut m, mut ratio, mut pair_max) = (0.0f64, 0.0f64, 0.0f64);

        let mut i = 0;
        while i < nbrs.len() {
            let d = nbrs[i].0;
            let mut j = i;
            while j < nbrs.len() && nbrs[j].0 == d {
                let u = nbrs[j].1;
                let delta = f.value_dist(x, u);
                m = m.max(delta);
                ratio = ratio.max(delta / d);
                if pairs {
                    for &v in &members {
                        pair_max = pair_max.max(f.quotient(u, v));
                    }
                    members.push(u);
                }
                j += 1;
            }
            if let Some(&prev_m) = scan.running_max.last() {
                let g = prev_m / d;
                let g = scan.gap_min.last().map_or(g, |&p: &f64| p.min(g));
                scan.gap_min.push(g);
            }
            let b = m / d;
            let b = scan.breakpoint_min.last().map_or(b, |&p: &f64| p.min(b));
            scan.dists.push(d);
            scan.running_max.push(m);
            scan.ratio_max.push(ratio);
            scan.breakpoint_min.push(b);
            if pairs {
                scan.loc.push(pair_max);
            }
            i = j;
        }
        Ok(scan)
    }

    /// Distinct positive distances found within the scan radius.
    pub fn breakpoints(&self) -> &[f64] {
        &self.dists
    }

    /// Distance to the nearest other point, if within the scan radius.
    pub fn nearest(&self) -> Option<f64> {
        self.dists.first().copied()
    }

    fn open_count(&self, r: f64) -> usize {
        self.dists.partition_point(|&d| d < r)
    }

    fn closed_count(&self, r: f64) -> usize {
        self.dists.partition_point(|&d| d <= r)
    }

    pub fn lip_upper(&self, r: f64) -> f64 {
        match self.open_count(r) {
            0 => 0.0,
            k => self.running_max[k - 1] / r,
        }
    }

    pub fn lip_upper_closed(&self, r: f64) -> f64 {
        match self.closed_count(r) {
            0 => 0.0,
            k => self.running_max[k - 1] / r,
        }
    }

    pub fn big_below(&self, r: f64) -> f64 {
        match self.open_count(r) {
            0 => 0.0,
            k => self.ratio_max[k - 1],
        }
    }

    /// Exact `inf` of `Lip^ρ` over `ρ ∈ (d_1, r)`: on `(d_k, d_{k+1}]` the
    /// open ball is fixed, so `Lip^ρ = M_k / ρ` and the infimum of each
    /// segment sits at its right end.
    pub fn little_below(&self, r: f64) -> LittleLip {
        match self.open_count(r) {
            0 => LittleLip { value: 0.0, unresolved: true },
            k => {
                let last = self.running_max[k - 1] / r;
                let value = if k >= 2 { self.gap_min[k - 2].min(last) } else { last };
                LittleLip { value, unresolved: false }
            }
        }
    }

    /// `min` over sample breakpoints `d_k < r` of `Lip^{d_k}_+ f(x) = M_k / d_k`:
    /// the closed-ball functional read only where the sample carries
    /// information. This is the estimator behind `lip̂`.
    pub fn little_at_breakpoints(&self, r: f64) -> LittleLip {
        match self.open_count(r) {
            0 => LittleLip { value: 0.0, unresolved: true },
            k => LittleLip { value: self.breakpoint_min[k - 1], unresolved: false },
        }
    }

    /// # Panics
    /// On a scan built with [`PointScan::radial`].
    pub fn loc(&self, r: f64) -> f64 {
        assert!(self.pairs, "radial scan has no pair data");
        match self.open_count(r) {
            0 => 0.0,
            k => self.loc[k - 1],
        }
    }
}

/// `Lip^r f(x)`.
pub fn lip_upper_r(f: &SampledMap, x: usize, r: f64) -> Result<f64> {
    Ok(PointScan::radial(f, x, r)?.lip_upper(r))
}

/// `Lip^r_+ f(x)` (closed ball).
pub fn lip_upper_r_closed(f: &SampledMap, x: usize, r: f64) -> Result<f64> {
    Ok(PointScan::radial(f, x, r)?.lip_upper_closed(r))
}

/// `Lip_r f(x)`, computed as the largest difference quotient
/// `|f(u) − f(x)| / d(u,x)` over `0 < d(u,x) < r`, which equals
/// `sup_{0<ρ<r} Lip^ρ f(x)`.
pub fn big_lip_below_r(f: &SampledMap, x: usize, r: f64) -> Result<f64> {
    Ok(PointScan::radial(f, x, r)?.big_below(r))
}

/// `lip_r f(x)` restricted to radii above the nearest-neighbour distance.
/// Below it the open punctured ball is empty and `Lip^ρ = 0`, so the result
/// is flagged `unresolved` when no other point lies within `r`.
pub fn little_lip_below_r(f: &SampledMap, x: usize, r: f64) -> Result<LittleLip> {
    Ok(PointScan::radial(f, x, r)?.little_below(r))
}

/// Breakpoint form of the little derivative; see [`PointScan::little_at_breakpoints`].
pub fn little_lip_at_breakpoints(f: &SampledMap, x: usize, r: f64) -> Result<LittleLip> {
    Ok(PointScan::radial(f, x, r)?.little_at_breakpoints(r))
}

/// `𝕃ip^r f(x)`: Lipschitz constant of `f` on the open ball `B(x, r)`.
pub fn loc_lip_r(f: &SampledMap, x: usize, r: f64) -> Result<f64> {
    Ok(PointScan::new(f, x, r)?.loc(r))
}

/// `‖f‖_lip`: the largest difference quotient over all pairs.
pub fn lip_norm(f: &SampledMap) -> f64 {
    let n = f.len();
    par::map_points(n, |a| (a + 1..n).map(|b| f.quotient(a, b)).fold(0.0, f64::max)).into_iter().fold(0.0, f64::max)
}

/// Geometric radius grid `r_k = r_max · q^k`, `k = 0 … steps−1`.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct RadiusGrid {
    pub r_max: f64,
    pub q: f64,
    pub steps: usize,
    /// How many of the smallest radii feed the divergence test.
    pub tail_window: usize,
}

impl RadiusGrid {
    pub fn new(r_max: f64, q: f64, steps: usize, tail_window: usize) -> Result<Self> {
        let g = Self { r_max, q, steps, tail_window };
        g.validate()?;
        Ok(g)
    }

    /// A single radius of 1.5 grid cells: the finest scale at which every
    /// interior point of a uniform grid sees its immediate neighbours.
    pub fn finest(spacing: f64) -> Self {
        Self { r_max: 1.5 * spacing, q: 0.5, steps: 1, tail_window: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        check_radius(self.r_max)?;
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::input(format!("grid factor q must lie in (0,1), got {}", self.q)));
        }
        if self.steps == 0 {
            return Err(Error::input("grid needs at least one step"));
        }
        if self.tail_window == 0 || self.tail_window > self.steps {
            return Err(Error::input(format!("tail window {} must lie in 1..={}", self.tail_window, self.steps)));
        }
        let smallest = self.r_max * self.q.powi(self.steps as i32 - 1);
        if !(smallest > 0.0) {
            return Err(Error::input("grid radii underflow to zero"));
        }
        Ok(())
    }

    /// Radii in decreasing order.
    pub fn radii(&self) -> Vec<f64> {
        (0..self.steps).map(|k| self.r_max * self.q.powi(k as i32)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileOptions {
    /// Tail growth of `Lip^r` beyond this factor sets the divergence flag.
    pub divergence_factor: f64,
    /// Also report `min` of `Lip^r` over the tail window.
    pub liminf_surrogate: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self { divergence_factor: 2.0, liminf_surrogate: false }
    }
}

/// The five functionals at one radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaleRow {
    pub radius: f64,
    pub lip_upper: f64,
    pub lip_upper_closed: f64,
    pub big_below: f64,
    pub little_below: f64,
    pub loc: f64,
    pub unresolved: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointProfile {
    pub point: usize,
    /// One row per grid radius, largest radius first.
    pub rows: Vec<ScaleRow>,
    /// Nearest-neighbour distance; scales at or below it are unresolved.
    pub nearest: f64,
    /// Smallest grid radius above `nearest`, where the estimates are read.
    pub estimate_radius: Option<f64>,
    /// `lip̂`: breakpoint form of the little derivative at `estimate_radius`.
    pub lip_hat: f64,
    /// `Lip̂ = Lip_r f(x)` at `estimate_radius`.
    pub big_hat: f64,
    /// `𝕃ip̂ = 𝕃ip^r f(x)` at `estimate_radius`.
    pub loc_hat: f64,
    pub divergent: bool,
    pub liminf_surrogate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaleProfile {
    pub grid: RadiusGrid,
    pub points: Vec<PointProfile>,
    pub warnings: Vec<String>,
}

impl ScaleProfile {
    pub fn point(&self, x: usize) -> Option<&PointProfile> {
        self.points.iter().find(|p| p.point == x)
    }
}

/// Profile of a single point.
pub fn profile_point(f: &SampledMap, x: usize, grid: &RadiusGrid, opts: &ProfileOptions) -> Result<PointProfile> {
    grid.validate()?;
    let radii = grid.radii();
    let scan = PointScan::new(f, x, grid.r_max)?;
    let rows: Vec<ScaleRow> = radii
        .iter()
        .map(|&r| {
            let little = scan.little_below(r);
            ScaleRow {
                radius: r,
                lip_upper: scan.lip_upper(r),
                lip_upper_closed: scan.lip_upper_closed(r),
                big_below: scan.big_below(r),
                little_below: little.value,
                loc: scan.loc(r),
                unresolved: little.unresolved,
            }
        })
        .collect();

    let nearest = scan.nearest().unwrap_or_else(|| f.domain().nearest_distance(x));
    let estimate_radius = radii.iter().rev().copied().find(|&r| r > nearest);
    let (lip_hat, big_hat, loc_hat) = match estimate_radius {
        Some(r) => (scan.little_at_breakpoints(r).value, scan.big_below(r), scan.loc(r)),
        None => (0.0, 0.0, 0.0),
    };

    let tail: Vec<f64> = rows[rows.len() - grid.tail_window..]
        .iter()
        .filter(|row| !row.unresolved && row.lip_upper > 0.0)
        .map(|row| row.lip_upper)
        .collect();
    let divergent = tail.len() >= 2
        && tail.windows(2).all(|w| w[1] >= w[0])
        && tail[tail.len() - 1] > opts.divergence_factor * tail[0];
    let liminf_surrogate = opts.liminf_surrogate.then(|| tail.iter().copied().fold(f64::INFINITY, f64::min)).map(|v| {
        if v.is_finite() {
            v
        } else {
            0.0
        }
    });

    Ok(PointProfile {
        point: x,
        rows,
        nearest,
        estimate_radius,
        lip_hat,
        big_hat,
        loc_hat,
        divergent,
        liminf_surrogate,
    })
}

/// Profiles of the given points.
pub fn profile_points(
    f: &SampledMap,
    points: &[usize],
    grid: &RadiusGrid,
    opts: &ProfileOptions,
) -> Result<ScaleProfile> {
    grid.validate()?;
    let results = par::map_points(points.len(), |i| profile_point(f, points[i], grid, opts));
    let points = results.into_iter().collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    // the diameter is quadratic to compute; only bother for small spaces or
    // when the grid is suspiciously large
    if f.len() <= 5_000 {
        let diam = f.domain().diameter();
        if grid.r_max > diam {
            warnings.push(format!("r_max {} exceeds the domain diameter {diam}", grid.r_max));
        }
    }
    Ok(ScaleProfile { grid: grid.clone(), points, warnings })
}

/// Profiles of every point of the domain.
pub fn scale_profile(f: &SampledMap, grid: &RadiusGrid) -> Result<ScaleProfile> {
    scale_profile_with(f, grid, &ProfileOptions::default())
}

pub fn scale_profile_with(f: &SampledMap, grid: &RadiusGrid, opts: &ProfileOptions) -> Result<ScaleProfile> {
    let all: Vec<usize> = (0..f.len()).collect();
    profile_points(f, &all, grid, opts)
}

/// One functional evaluated at every point at a fixed radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Functional {
    LipUpper,
    LipUpperClosed,
    BigBelow,
    LittleBelow,
    LittleAtBreakpoints,
    Loc,
}

/// Field `x ↦ F_r f(x)` for one functional `F`.
pub fn functional_field(f: &SampledMap, which: Functional, r: f64) -> Result<Vec<f64>> {
    check_radius(r)?;
    par::map_points(f.len(), |x| {
        let scan = if which == Functional::Loc { PointScan::new(f, x, r)? } else { PointScan::radial(f, x, r)? };
        Ok(match which {
            Functional::LipUpper => scan.lip_upper(r),
            Functional::LipUpperClosed => scan.lip_upper_closed(r),
            Functional::BigBelow => scan.big_below(r),
            Functional::LittleBelow => scan.little_below(r).value,
            Functional::LittleAtBreakpoints => scan.little_at_breakpoints(r).value,
            Functional::Loc => scan.loc(r),
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FiniteMetricSpace;

    fn line_map(points: &[f64], g: impl Fn(f64) -> f64) -> SampledMap {
        let x = FiniteMetricSpace::line(points).unwrap();
        SampledMap::real(x, points.iter().map(|&p| g(p)).collect()).unwrap()
    }

    fn discrete_pair() -> SampledMap {
        let x = FiniteMetricSpace::discrete(vec!["a".into(), "b".into()]).unwrap();
        SampledMap::real(x, vec![0.0, 1.0]).unwrap()
    }

    #[test]
    fn constant_map_is_flat() {
        let f = line_map(&[0.0, 0.3, 0.7, 1.0], |_| 2.0);
        for r in [0.1, 0.5, 2.0] {
            assert_eq!(lip_upper_r(&f, 1, r).unwrap(), 0.0);
            assert_eq!(lip_upper_r_closed(&f, 1, r).unwrap(), 0.0);
            assert_eq!(big_lip_below_r(&f, 1, r).unwrap(), 0.0);
            assert_eq!(little_lip_below_r(&f, 1, r).unwrap().value, 0.0);
            assert_eq!(loc_lip_r(&f, 1, r).unwrap(), 0.0);
        }
        assert_eq!(lip_norm(&f), 0.0);
    }

    #[test]
    fn lip_upper_identity_map() {
        let f = line_map(&[-0.9, -0.5, 0.0, 0.5, 0.9], |u| u);
        assert!((lip_upper_r(&f, 2, 1.0).unwrap() - 0.9).abs() < 1e-15);
        // u = 0.9 joins the closed ball at r = 0.9
        assert_eq!(lip_upper_r_closed(&f, 2, 0.9).unwrap(), 1.0);
    }

    #[test]
    fn discrete_metric_open_versus_closed() {
        let f = discrete_pair();
        assert_eq!(lip_upper_r(&f, 0, 1.0).unwrap(), 0.0);
        assert_eq!(lip_upper_r_closed(&f, 0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn big_lip_of_square() {
        let pts = [-0.9, -0.5, -0.1, 0.0, 0.1, 0.5, 0.9];
        let f = line_map(&pts, |u| u * u);
        assert!((big_lip_below_r(&f, 3, 1.0).unwrap() - 0.9).abs() < 1e-15);
    }

    #[test]
    fn little_lip_hand_scan() {
        // neighbours at 0.25, 0.5, 1.0 with |Δf| = 0.25, 0.25, 1.0
        let f = line_map(&[0.0, 0.25, 0.5, 1.0], |u| if u == 0.5 { 0.25 } else { u });
        let l = little_lip_below_r(&f, 0, 1.0).unwrap();
        assert!(!l.unresolved);
        assert_eq!(l.value, 0.25);
    }

    #[test]
    fn little_lip_unresolved_below_nearest_neighbour() {
        let f = line_map(&[0.0, 1.0], |u| u);
        let l = little_lip_below_r(&f, 0, 0.5).unwrap();
        assert!(l.unresolved);
        assert_eq!(l.value, 0.0);
    }

    #[test]
    fn loc_lip_of_abs() {
        let f = line_map(&[-0.5, -0.1, 0.1, 0.5], |u| u.abs());
        assert!((loc_lip_r(&f, 1, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let single = line_map(&[0.0, 5.0], |u| u);
        assert_eq!(loc_lip_r(&single, 0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn lip_norm_examples() {
        let f = line_map(&[-1.0, 0.25, 2.0, 3.5], |u| 3.0 * u);
        assert!((lip_norm(&f) - 3.0).abs() < 1e-14);
        let g = line_map(&[0.0, 2.0], |u| if u == 0.0 { 0.0 } else { 1.0 });
        assert_eq!(lip_norm(&g), 0.5);
        let one = line_map(&[1.0], |u| u);
        assert_eq!(lip_norm(&one), 0.0);
    }

    #[test]
    fn unknown_point_and_bad_radius() {
        let f = line_map(&[0.0, 1.0], |u| u);
        assert!(lip_upper_r(&f, 9, 1.0).is_err());
        assert!(big_lip_below_r(&f, 0, -1.0).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(RadiusGrid::new(1.0, 1.0, 3, 1).is_err());
        assert!(RadiusGrid::new(1.0, 0.5, 0, 1).is_err());
        assert!(RadiusGrid::new(1.0, 0.5, 3, 4).is_err());
        let g = RadiusGrid::new(1.0, 0.5, 3, 2).unwrap();
        assert_eq!(g.radii(), vec![1.0, 0.5, 0.25]);
    }

    #[test]
    fn square_profile_near_one() {
        let pts: Vec<f64> = (0..=2000).map(|i| i as f64 * 1e-3).collect();
        let f = line_map(&pts, |u| u * u);
        let grid = RadiusGrid::new(0.5, 0.5, 8, 4).unwrap();
        let p = profile_point(&f, 1000, &grid, &ProfileOptions::default()).unwrap();
        assert!((1.98..=2.02).contains(&p.lip_hat), "{}", p.lip_hat);
        assert!((1.98..=2.02).contains(&p.big_hat), "{}", p.big_hat);
        assert!(!p.divergent);
    }

    #[test]
    fn sqrt_diverges_at_zero() {
        let pts: Vec<f64> = (-1000..=1000).map(|i| i as f64 * 1e-3).collect();
        let f = line_map(&pts, |u| u.abs().sqrt());
        let grid = RadiusGrid::new(0.5, 0.5, 8, 4).unwrap();
        let p = profile_point(&f, 1000, &grid, &ProfileOptions::default()).unwrap();
        assert!(p.divergent);
        assert!(p.big_hat > 10.0);
    }

    #[test]
    fn constant_profile_is_zero() {
        let pts: Vec<f64> = (0..50).map(|i| i as f64 * 0.02).collect();
        let f = line_map(&pts, |_| -1.0);
        let prof = scale_profile(&f, &RadiusGrid::new(0.4, 0.5, 4, 2).unwrap()).unwrap();
        for p in &prof.points {
            assert!(p.rows.iter().all(|r| r.lip_upper == 0.0 && r.loc == 0.0 && r.big_below == 0.0));
            assert_eq!((p.lip_hat, p.big_hat, p.loc_hat), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn oversized_grid_warns() {
        let f = line_map(&[0.0, 1.0], |u| u);
        let prof = scale_profile(&f, &RadiusGrid::new(5.0, 0.5, 2, 1).unwrap()).unwrap();
        assert_eq!(prof.warnings.len(), 1);
    }

    #[test]
    fn liminf_surrogate_is_optional() {
        let f = line_map(&[0.0, 0.1, 0.2, 0.3], |u| u);
        let g = RadiusGrid::new(0.3, 0.5, 2, 2).unwrap();
        let off = profile_point(&f, 0, &g, &ProfileOptions::default()).unwrap();
        assert!(off.liminf_surrogate.is_none());
        let on = profile_point(&f, 0, &g, &ProfileOptions { liminf_surrogate: true, ..Default::default() }).unwrap();
        assert!(on.liminf_surrogate.is_some());
    }
}
