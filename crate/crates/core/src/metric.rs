//! Finite metric spaces: dense distance tables or coordinate embeddings
//! under a p-norm, together with ball queries and metric validation.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used when checking the metric axioms.
pub const METRIC_TOLERANCE: f64 = 1e-12;

/// A p-norm on ℝⁿ, p ∈ {1, 2, ∞}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

impl Norm {
    pub fn norm(self, v: &[f64]) -> f64 {
        match self {
            Norm::L1 => v.iter().map(|x| x.abs()).sum(),
            Norm::L2 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Norm::LInf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }

    /// `‖a − b‖` without allocating.
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Norm::L1 => diffs.sum(),
            Norm::L2 => {
                // 1D is by far the most common case; keep it exact.
                if a.len() == 1 {
                    (a[0] - b[0]).abs()
                } else {
                    diffs.map(|d| d * d).sum::<f64>().sqrt()
                }
            }
            Norm::LInf => diffs.fold(0.0, f64::max),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "l1" => Ok(Norm::L1),
            "2" | "l2" => Ok(Norm::L2),
            "inf" | "linf" | "max" => Ok(Norm::LInf),
            other => Err(Error::input(format!("unknown norm '{other}' (expected 1, 2 or inf)"))),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L1 => "1",
            Norm::L2 => "2",
            Norm::LInf => "inf",
        })
    }
}

/// Row-major point coordinates in ℝⁿ with the norm that induces the metric.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    dim: usize,
    coords: Vec<f64>,
    norm: Norm,
    /// Point indices sorted by first coordinate, and those coordinates.
    order: Vec<usize>,
    keys: Vec<f64>,
}

impl Embedding {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    fn new(dim: usize, coords: Vec<f64>, norm: Norm) -> Self {
        let n = coords.len() / dim;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| coords[a * dim].total_cmp(&coords[b * dim]).then(a.cmp(&b)));
        let keys = order.iter().map(|&i| coords[i * dim]).collect();
        Self { dim, coords, norm, order, keys }
    }

    /// Every point whose first coordinate is within `r` of that of `x`,
    /// a superset of the closed ball since no p-norm is below the first
    /// coordinate difference. The window is widened by a few ulps.
    fn slab(&self, x: usize, r: f64) -> &[usize] {
        let c = self.coords[x * self.dim];
        let slack = 1e-12 * (r + c.abs());
        let lo = self.keys.partition_point(|&k| k < c - r - slack);
        let hi = self.keys.partition_point(|&k| k <= c + r + slack);
        &self.order[lo..hi]
    }
}

/// A finite metric space `X` with `|·−·|_X` given either by a dense distance
/// table or by an embedding into a normed space (distances computed on
/// demand). Points are addressed by index; string identifiers are kept for
/// I/O.
///
/// Distances are always read from the upper triangle of the table, so
/// `dist(a, b) == dist(b, a)` holds bit-for-bit even when the input table is
/// slightly asymmetric. [`FiniteMetricSpace::validate`] reports such input.
#[derive(Clone, Debug)]
pub struct FiniteMetricSpace {
    ids: Vec<String>,
    embedding: Option<Embedding>,
    table: Option<Vec<f64>>,
}

/// A violated metric axiom with the witnessing points (indices).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Diagonal { point: usize, value: f64 },
    Asymmetric { a: usize, b: usize, ab: f64, ba: f64 },
    NonPositive { a: usize, b: usize, value: f64 },
    Triangle { a: usize, b: usize, c: usize, excess: f64 },
    EmbeddingMismatch { a: usize, b: usize, table: f64, embedded: f64 },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MetricReport {
    pub violations: Vec<Violation>,
}

impl MetricReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn default_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_unique(ids: &[String]) -> Result<()> {
    let mut seen = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if let Some(j) = seen.insert(id.as_str(), i) {
            return Err(Error::input(format!("duplicate point id '{id}' (rows {j} and {i})")));
        }
    }
    Ok(())
}

impl FiniteMetricSpace {
    /// Space backed by a dense `n × n` row-major distance table. Missing
    /// entries may be passed as NaN; they are rejected by [`Self::validate`].
    pub fn from_matrix(ids: Vec<String>, matrix: Vec<f64>) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::input("metric space must have at least one point"));
        }
        if matrix.len() != n * n {
            return Err(Error::input(format!("distance table has {} entries, expected {n}×{n}", matrix.len())));
        }
        check_unique(&ids)?;
        Ok(Self { ids, embedding: None, table: Some(matrix) })
    }

    /// Space of points in ℝⁿ with the metric induced by `norm`.
    pub fn from_points(ids: Vec<String>, points: &[Vec<f64>], norm: Norm) -> Result<Self> {
        if ids.len() != points.len() {
            return Err(Error::input(format!("{} ids for {} points", ids.len(), points.len())));
        }
        let Some(first) = points.first() else {
            return Err(Error::input("metric space must have at least one point"));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::input("points must have at least one coordinate"));
        }
        let mut coords = Vec::with_capacity(dim * points.len());
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::input(format!("point {i} has {} coordinates, expected {dim}", p.len())));
            }
            if let Some(bad) = p.iter().find(|c| !c.is_finite()) {
                return Err(Error::input(format!("point {i} has non-finite coordinate {bad}")));
            }
            coords.extend_from_slice(p);
        }
        check_unique(&ids)?;
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            points[a]
                .iter()
                .zip(&points[b])
                .map(|(x, y)| (x + 0.0).total_cmp(&(y + 0.0)))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        if let Some(w) = order.windows(2).find(|w| points[w[0]] == points[w[1]]) {
            return Err(Error::input(format!("points '{}' and '{}' coincide", ids[w[0]], ids[w[1]])));
        }
        Ok(Self { ids, embedding: Some(Embedding::new(dim, coords, norm)), table: None })
    }

    /// Points on the real line with the usual distance; ids are indices.
    pub fn line(points: &[f64]) -> Result<Self> {
        let pts: Vec<Vec<f64>> = points.iter().map(|&p| vec![p]).collect();
        Self::from_points(default_ids(points.len()), &pts, Norm::L2)
    }

    /// Discrete metric on `n` points (all off-diagonal distances 1).
    pub fn discrete(ids: Vec<String>) -> Result<Self> {
        let n = ids.len();
        let matrix = (0..n * n).map(|k| if k / n == k % n { 0.0 } else { 1.0 }).collect();
        Self::from_matrix(ids, matrix)
    }

    /// Adds a dense table computed from the embedding (no-op for table spaces).
    pub fn materialized(mut self) -> Self {
        if self.table.is_none() {
            let n = self.len();
            let mut m = vec![0.0; n * n];
            for a in 0..n {
                for b in 0..n {
                    m[a * n + b] = self.dist(a, b);
                }
            }
            self.table = Some(m);
        }
        self
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Raw table entry `(a, b)` as stored, if a table is present.
    pub fn table_entry(&self, a: usize, b: usize) -> Option<f64> {
        self.table.as_ref().map(|t| t[a * self.len() + b])
    }

    pub fn coords(&self, i: usize) -> Option<&[f64]> {
        self.embedding.as_ref().map(|e| e.point(i))
    }

    pub(crate) fn check_point(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::input(format!("unknown point index {x} (space has {} points)", self.len())))
        }
    }

    /// `|a − b|_X`.
    #[inline]
    pub fn dist(&self, a: usize, b: usize) -> f64 {
        if a == b {
            return 0.0;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        match (&self.table, &self.embedding) {
            (Some(t), _) => t[lo * self.len() + hi],
            (None, Some(e)) => e.norm.distance(e.point(lo), e.point(hi)),
            (None, None) => unreachable!("space without table or embedding"),
        }
    }

    /// Checks the metric axioms within `tol`. Triangle checking is cubic in
    /// the number of points.
    pub fn validate(&self, tol: f64) -> Result<MetricReport> {
        let n = self.len();
        let mut violations = Vec::new();
        if let Some(t) = &self.table {
            if let Some(k) = t.iter().position(|v| v.is_nan()) {
                return Err(Error::input(format!("missing distance entry ({}, {})", self.ids[k / n], self.ids[k % n])));
            }
            for a in 0..n {
                let d = t[a * n + a];
                if d.abs() > tol {
                    violations.push(Violation::Diagonal { point: a, value: d });
                }
                for b in a + 1..n {
                    let (ab, ba) = (t[a * n + b], t[b * n + a]);
                    if (ab - ba).abs() > tol {
                        violations.push(Violation::Asymmetric { a, b, ab, ba });
                    }
                }
            }
            if let Some(e) = &self.embedding {
                for a in 0..n {
                    for b in a + 1..n {
                        let embedded = e.norm.distance(e.point(a), e.point(b));
                        let table = t[a * n + b];
                        if (embedded - table).abs() > tol {
                            violations.push(Violation::EmbeddingMismatch { a, b, table, embedded });
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let d = self.dist(a, b);
                if !(d > 0.0) || !d.is_finite() {
                    violations.push(Violation::NonPositive { a, b, value: d });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if b == a {
                    continue;
                }
                for c in a + 1..n {
                    if c == b {
                        continue;
                    }
                    let excess = self.dist(a, c) - (self.dist(a, b) + self.dist(b, c));
                    if excess > tol {
                        violations.push(Violation::Triangle { a, b, c, excess });
                    }
                }
            }
        }
        Ok(MetricReport { violations })
    }

    /// Points that may lie within `r` of `x`, in no particular order.
    fn candidates(&self, x: usize, r: f64) -> Box<dyn Iterator<Item = usize> + '_> {
        match &self.embedding {
            Some(e) if self.table.is_none() && r.is_finite() => Box::new(e.slab(x, r).iter().copied()),
            _ => Box::new(0..self.len()),
        }
    }

    /// `B(x, r)` (open) or `B[x, r]` (closed), as sorted point indices.
    pub fn ball(&self, x: usize, r: f64, closed: bool) -> Result<Vec<usize>> {
        self.check_point(x)?;
        check_radius(r)?;
        let mut out: Vec<usize> = self
            .candidates(x, r)
            .filter(|&u| {
                let d = self.dist(u, x);
                if closed {
                    d <= r
                } else {
                    d < r
                }
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Other points within distance `< r` of `x` (or `<= r` when `closed`),
    /// sorted by distance, ties by index. Excludes `x` itself.
    pub fn neighbors(&self, x: usize, r: f64, closed: bool) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = self
            .candidates(x, r)
            .filter(|&u| u != x)
            .map(|u| (self.dist(u, x), u))
            .filter(|&(d, _)| if closed { d <= r } else { d < r })
            .collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        out
    }

    /// Distance from `x` to its nearest other point; `+∞` for a singleton.
    pub fn nearest_distance(&self, x: usize) -> f64 {
        let Some(e) = self.embedding.as_ref().filter(|_| self.table.is_none()) else {
            return (0..self.len()).filter(|&u| u != x).map(|u| self.dist(u, x)).fold(f64::INFINITY, f64::min);
        };
        // Walk outwards in first-coordinate order until the coordinate gap
        // alone exceeds the best distance found.
        let c = e.coords[x * e.dim];
        let pos = e.keys.partition_point(|&k| k < c);
        let mut best = f64::INFINITY;
        for &u in &e.order[pos..] {
            if e.coords[u * e.dim] - c > best {
                break;
            }
            if u != x {
                best = best.min(self.dist(u, x));
            }
        }
        for &u in e.order[..pos].iter().rev() {
            if c - e.coords[u * e.dim] > best {
                break;
            }
            best = best.min(self.dist(u, x));
        }
        best
    }

    /// Sampling resolution: the largest nearest-neighbour distance. For a
    /// uniform grid this is the grid spacing.
    pub fn resolution(&self) -> f64 {
        let r = crate::par::map_points(self.len(), |x| self.nearest_distance(x)).into_iter().fold(0.0, f64::max);
        if r.is_finite() {
            r
        } else {
            0.0
        }
    }

    /// Smallest positive interpoint distance; `+∞` for a singleton.
    pub fn min_separation(&self) -> f64 {
        crate::par::map_points(self.len(), |x| self.nearest_distance(x)).into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut d = 0.0f64;
        for a in 0..n {
            for b in a + 1..n {
                d = d.max(self.dist(a, b));
            }
        }
        d
    }

    /// Points with no other point within distance `h`: the resolution-`h`
    /// stand-in for the isolated points of `X`.
    pub fn resolution_isolated(&self, h: f64) -> Result<Vec<usize>> {
        check_radius(h)?;
        Ok((0..self.len()).filter(|&x| self.nearest_distance(x) >= h).collect())
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::input(format!("radius must be positive and finite, got {r}")))
    }
}
