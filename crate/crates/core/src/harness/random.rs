//! Seeded random finite metric spaces with maps on them.
//!
//! [`exact_map`] draws spaces whose distances and value increments are exact
//! in floating point (dyadic lattice points under `ℓ¹`/`ℓ^∞`, or integer
//! shortest-path metrics), so identities that rely on the triangle inequality
//! hold without rounding slack. [`euclidean_map`] draws generic points.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::{FiniteMetricSpace, Norm};
use crate::sampled::SampledMap;

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Lattice points `k/8` in the plane under `ℓ¹` or `ℓ^∞`.
fn lattice(rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
    let mut cells: Vec<(i32, i32)> = (-8..=8).flat_map(|a| (-8..=8).map(move |b| (a, b))).collect();
    cells.shuffle(rng);
    let pts: Vec<Vec<f64>> = cells[..n].iter().map(|&(a, b)| vec![a as f64 / 8.0, b as f64 / 8.0]).collect();
    let norm = if rng.gen_bool(0.5) { Norm::L1 } else { Norm::LInf };
    FiniteMetricSpace::from_points(ids(n), &pts, norm).expect("distinct lattice points")
}

/// Shortest-path metric of a random connected graph with integer weights.
fn graph(rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
    let inf = f64::INFINITY;
    let mut d = vec![inf; n * n];
    for i in 0..n {
        d[i * n + i] = 0.0;
    }
    let link = |d: &mut Vec<f64>, a: usize, b: usize, w: f64| {
        if w < d[a * n + b] {
            d[a * n + b] = w;
            d[b * n + a] = w;
        }
    };
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let w = rng.gen_range(1..=6) as f64;
        link(&mut d, i, j, w);
    }
    for _ in 0..n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let w = rng.gen_range(1..=6) as f64;
            link(&mut d, a, b, w);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i * n + k] + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    FiniteMetricSpace::from_matrix(ids(n), d).expect("shortest paths form a metric")
}

fn dyadic_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-16..=16) as f64 / 16.0).collect()
}

/// A map with exact distances and increments on 2 to `max_points` points.
pub fn exact_map(seed: u64, max_points: usize) -> SampledMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_points.max(2));
    let space = Arc::new(if rng.gen_bool(0.5) { lattice(&mut rng, n) } else { graph(&mut rng, n) });
    match rng.gen_range(0..4) {
        0 => {
            let vals: Vec<Vec<f64>> = (0..n).map(|_| dyadic_values(&mut rng, 2)).collect();
            SampledMap::vector(space, &vals, Norm::LInf).expect("finite values")
        }
        1 => {
            let m = rng.gen_range(2..=6);
            let target = Arc::new(graph(&mut rng, m));
            let image = (0..n).map(|_| rng.gen_range(0..target.len())).collect();
            SampledMap::into_space(space, target, image).expect("valid image")
        }
        _ => {
            let vals = dyadic_values(&mut rng, n);
            SampledMap::real(space, vals).expect("finite values")
        }
    }
}

/// Uniform points in a unit cube of dimension 1 to 3 with uniform real values.
pub fn euclidean_map(seed: u64, max_points: usize) -> SampledMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_points.max(2));
    let dim = rng.gen_range(1..=3);
    let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect();
    let space = FiniteMetricSpace::from_points(ids(n), &pts, Norm::L2).expect("finite points");
    let vals = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    SampledMap::real(space, vals).expect("finite values")
}

/// Alternates between the exact and Euclidean generators.
pub fn any_map(seed: u64, max_points: usize) -> SampledMap {
    if seed % 3 == 2 {
        euclidean_map(seed, max_points)
    } else {
        exact_map(seed, max_points)
    }
}

/// A handful of radii spread over the distance range of the domain,
/// including values equal to interpoint distances.
pub fn probe_radii(f: &SampledMap, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let d = f.domain();
    let n = f.len();
    let diam = d.diameter();
    let mut radii = vec![diam * 0.3, diam * 0.7, diam * 1.2];
    for _ in 0..3 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            radii.push(d.dist(a, b));
        }
    }
    radii.retain(|&r| r > 0.0);
    radii
}
