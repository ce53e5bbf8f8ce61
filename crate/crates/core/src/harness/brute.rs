//! Direct enumeration of the scale functionals from their definitions, used
//! to cross-check the breakpoint scans.

use crate::sampled::SampledMap;

/// Number of uniformly spaced radii in the dense sweeps.
pub const DENSE_RHO: usize = 10_000;

/// Distance/increment pairs `(d(u,x), |f(u) − f(x)|)` for every `u ≠ x`.
pub struct BruteScan {
    pairs: Vec<(f64, f64)>,
}

impl BruteScan {
    pub fn new(f: &SampledMap, x: usize) -> Self {
        let d = f.domain();
        let pairs = (0..f.len()).filter(|&u| u != x).map(|u| (d.dist(x, u), f.value_dist(x, u))).collect();
        Self { pairs }
    }

    /// `sup_{d(u,x) < ρ} |Δf| / ρ`.
    pub fn lip_upper(&self, rho: f64) -> f64 {
        self.pairs.iter().filter(|p| p.0 < rho).map(|p| p.1 / rho).fold(0.0, f64::max)
    }

    /// `sup_{d(u,x) ≤ ρ} |Δf| / ρ`.
    pub fn lip_upper_closed(&self, rho: f64) -> f64 {
        self.pairs.iter().filter(|p| p.0 <= rho).map(|p| p.1 / rho).fold(0.0, f64::max)
    }

    fn distances_below(&self, r: f64) -> Vec<f64> {
        let mut d: Vec<f64> = self.pairs.iter().map(|p| p.0).filter(|&d| d < r).collect();
        d.sort_by(f64::total_cmp);
        d.dedup();
        d
    }

    fn dense(r: f64) -> impl Iterator<Item = f64> {
        (1..DENSE_RHO).map(move |i| r * i as f64 / DENSE_RHO as f64)
    }

    /// `sup_{0<ρ<r} Lip^ρ` over a dense grid plus the radii just above each
    /// breakpoint.
    pub fn big_below(&self, r: f64) -> f64 {
        let above = self.distances_below(r).into_iter().map(f64::next_up).filter(|&p| p < r);
        Self::dense(r).chain(above).map(|rho| self.lip_upper(rho)).fold(0.0, f64::max)
    }

    /// `inf_{d_1<ρ<r} Lip^ρ` over a dense grid plus each breakpoint and the
    /// radius just below `r`; `None` when no point lies within `r`.
    pub fn little_below(&self, r: f64) -> Option<f64> {
        let ds = self.distances_below(r);
        let d1 = *ds.first()?;
        let candidates = Self::dense(r).chain(ds.iter().copied()).chain([r.next_down()]);
        Some(candidates.filter(|&rho| rho > d1 && rho < r).map(|rho| self.lip_upper(rho)).fold(f64::INFINITY, f64::min))
            .map(|v| if v.is_finite() { v } else { self.lip_upper(r) })
    }

    /// `min` over breakpoints `d_k < r` of `Lip^{d_k}_+`.
    pub fn little_at_breakpoints(&self, r: f64) -> Option<f64> {
        let ds = self.distances_below(r);
        if ds.is_empty() {
            return None;
        }
        Some(ds.into_iter().map(|d| self.lip_upper_closed(d)).fold(f64::INFINITY, f64::min))
    }
}

/// Lipschitz constant of `f` on the open ball `B(x, r)` by pair enumeration.
pub fn loc(f: &SampledMap, x: usize, r: f64) -> f64 {
    let d = f.domain();
    let ball: Vec<usize> = (0..f.len()).filter(|&u| d.dist(x, u) < r).collect();
    let mut best: f64 = 0.0;
    for &u in &ball {
        for &v in &ball {
            if u != v {
                best = best.max(f.value_dist(u, v) / d.dist(u, v));
            }
        }
    }
    best
}

/// `‖f‖_lip` by enumeration of ordered pairs.
pub fn lip_norm(f: &SampledMap) -> f64 {
    let d = f.domain();
    let mut best: f64 = 0.0;
    for u in 0..f.len() {
        for v in 0..f.len() {
            if u != v {
                best = best.max(f.value_dist(u, v) / d.dist(u, v));
            }
        }
    }
    best
}
