//! Finite unions of closed real intervals and their Lebesgue measure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A normalized finite union of closed intervals: sorted, pairwise disjoint,
/// with overlapping or touching pieces merged.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(pieces: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut v: Vec<(f64, f64)> = Vec::new();
        for (a, b) in pieces {
            if !a.is_finite() || !b.is_finite() || a > b {
                return Err(Error::input(format!("invalid interval [{a}, {b}]")));
            }
            v.push((a, b));
        }
        v.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Ok(Self { intervals: merged })
    }

    /// Parses an inline list such as `[0,1], [2,3]`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "[]" {
            return Ok(Self::empty());
        }
        let mut pieces = Vec::new();
        for chunk in s.split(']') {
            let chunk = chunk.trim().trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let inner =
                chunk.strip_prefix('[').ok_or_else(|| Error::input(format!("expected '[a,b]', got '{chunk}'")))?;
            let (a, b) =
                inner.split_once(',').ok_or_else(|| Error::input(format!("expected '[a,b]', got '[{inner}]'")))?;
            let parse = |t: &str| {
                t.trim().parse::<f64>().map_err(|e| Error::input(format!("bad interval endpoint '{t}': {e}")))
            };
            pieces.push((parse(a)?, parse(b)?));
        }
        Self::new(pieces)
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// `µ([a, b] ∩ E)`; zero when `b <= a`.
    pub fn measure_within(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        self.intervals.iter().map(|&(lo, hi)| (hi.min(b) - lo.max(a)).max(0.0)).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= x && x <= b)
    }

    /// Distance from `x` to the union; `+∞` when empty.
    pub fn distance_to(&self, x: f64) -> f64 {
        self.intervals
            .iter()
            .map(|&(a, b)| {
                if x < a {
                    a - x
                } else if x > b {
                    x - b
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.intervals.iter().chain(&other.intervals).copied()).expect("normalized pieces stay valid")
    }
}
