use std::sync::Arc;

use super::brute::{self, BruteScan};
use super::{CheckResult, Worst};
use crate::envelope::{baire_upper, lsc_defect, usc_defect, ScalarField};
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::linear::LinearMapSpec;
use crate::metric::FiniteMetricSpace;
use crate::par;
use crate::sampled::{Codomain, SampledMap};
use crate::scales::{
    big_lip_below_r, functional_field, lip_norm, lip_upper_r, lip_upper_r_closed, little_lip_at_breakpoints,
    little_lip_below_r, loc_lip_r, profile_point, profile_points, scale_profile, Functional, ProfileOptions,
    RadiusGrid, ScaleProfile,
};
use crate::setclass::{
    all_topologies, check_duality_props, check_sup_inf_props, complements, is_A_lower_sc, is_A_upper_sc, random_family,
    random_topology, sigma_closure, verify_family_identity, Extremum, FamilyIdentity, FiniteField, Semicontinuity,
    SetFamily,
};
use crate::zoo::{interval_grid, measure_function, ZooEntry};

fn id(f: &SampledMap, x: usize) -> &str {
    f.domain().id(x)
}

/// Finest scale of a sample: 1.5 times its resolution.
pub fn finest_radius(f: &SampledMap) -> f64 {
    1.5 * f.domain().resolution()
}

/// `little ≤ big ≤ loc` at every point and radius of a profile, and
/// `lip̂ ≤ Lip̂ ≤ 𝕃ip̂` for its estimates.
pub fn check_chain_profile(profile: &ScaleProfile, space: &FiniteMetricSpace) -> CheckResult {
    let mut worst = Worst::new();
    for p in &profile.points {
        for row in &p.rows {
            let v = (row.little_below - row.big_below).max(row.big_below - row.loc);
            worst.observe(v, || {
                format!(
                    "x={} r={}: little={} big={} loc={}",
                    space.id(p.point),
                    row.radius,
                    row.little_below,
                    row.big_below,
                    row.loc
                )
            });
        }
        let v = (p.lip_hat - p.big_hat).max(p.big_hat - p.loc_hat);
        worst.observe(v, || {
            format!("x={} estimates: lip={} Lip={} LLip={}", space.id(p.point), p.lip_hat, p.big_hat, p.loc_hat)
        });
    }
    CheckResult::measured("chain", worst.value, 0.0, "exact", worst.witness)
}

pub fn check_chain(f: &SampledMap, grid: &RadiusGrid) -> Result<CheckResult> {
    Ok(check_chain_profile(&scale_profile(f, grid)?, f.domain()))
}

/// `α(r) = β(r) = γ(r)`: the suprema of `Lip^ρ` and `Lip^ρ_+` over sampled
/// `ρ < r` against the ratio formula, with `ρ` sweeping every breakpoint and
/// the next float above it.
pub fn check_plus_variant(f: &SampledMap, x: usize, r: f64) -> Result<CheckResult> {
    let nbrs = f.domain().ball(x, r, false)?;
    let mut ds: Vec<f64> = nbrs.iter().filter(|&&u| u != x).map(|&u| f.domain().dist(x, u)).collect();
    if ds.is_empty() {
        return Ok(CheckResult::skipped("plus-variant", "no neighbour within r"));
    }
    ds.sort_by(f64::total_cmp);
    ds.dedup();
    let rhos: Vec<f64> = ds.iter().flat_map(|&d| [d, d.next_up()]).filter(|&p| p < r).collect();
    let mut alpha: f64 = 0.0;
    let mut beta: f64 = 0.0;
    for &rho in &rhos {
        alpha = alpha.max(lip_upper_r(f, x, rho)?);
        beta = beta.max(lip_upper_r_closed(f, x, rho)?);
    }
    let gamma = big_lip_below_r(f, x, r)?;
    let disc = (alpha - beta).abs().max((beta - gamma).abs()).max((alpha - gamma).abs());
    Ok(CheckResult::measured(
        "plus-variant",
        disc,
        1e-12,
        "absolute 1e-12",
        Some(format!("x={} r={r}: alpha={alpha} beta={beta} gamma={gamma}", id(f, x))),
    ))
}

/// `Lip̂` at `x0` of `u ↦ Au` sampled on a lattice `x0 + resolution·k`.
pub fn frechet_estimate(a: &LinearMapSpec, x0: &[f64], resolution: f64) -> Result<f64> {
    let n = a.cols();
    if x0.len() != n {
        return Err(Error::input(format!("base point has {} coordinates, matrix has {n} columns", x0.len())));
    }
    crate::metric::check_radius(resolution)?;
    let k: i64 = match n {
        1 | 2 => 10,
        3 => 4,
        4 => 2,
        _ => return Err(Error::Capacity { what: "domain dimension", size: n, limit: 4 }),
    };
    let side = (2 * k + 1) as usize;
    let total = side.pow(n as u32);
    let mut pts = Vec::with_capacity(total);
    let mut center = 0;
    for flat in 0..total {
        let mut rest = flat;
        let mut p = Vec::with_capacity(n);
        let mut is_center = true;
        for c in x0 {
            let step = (rest % side) as i64 - k;
            rest /= side;
            is_center &= step == 0;
            p.push(c + resolution * step as f64);
        }
        if is_center {
            center = flat;
        }
        pts.push(p);
    }
    let ids = (0..total).map(|i| i.to_string()).collect();
    let space = Arc::new(FiniteMetricSpace::from_points(ids, &pts, a.domain_norm)?);
    let values: Vec<Vec<f64>> = pts.iter().map(|p| a.apply(p)).collect();
    let f = SampledMap::vector(space, &values, a.codomain_norm)?;
    let grid = RadiusGrid::new(8.0 * resolution, 0.5, 2, 1)?;
    Ok(profile_point(&f, center, &grid, &ProfileOptions::default())?.big_hat)
}

/// [`frechet_estimate`] against the operator norm, as a relative gap.
pub fn check_frechet(a: &LinearMapSpec, x0: &[f64], resolution: f64, seed: u64, rel_tol: f64) -> Result<CheckResult> {
    let est = frechet_estimate(a, x0, resolution)?;
    let norm = a.operator_norm(10_000, seed)?;
    let disc = if norm > 0.0 {
        (est - norm).abs() / norm
    } else if est == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(CheckResult::measured(
        "frechet",
        disc,
        rel_tol,
        format!("relative {rel_tol}"),
        Some(format!("x0={x0:?}: Lip={est} norm={norm}")),
    ))
}

fn pair_worst(f: &SampledMap, excess: impl Fn(usize, usize) -> f64 + Sync) -> Worst {
    let n = f.len();
    par::map_points(n, |a| {
        let mut w = Worst::new();
        for b in a + 1..n {
            w.observe(excess(a, b), || format!("pair ({}, {})", id(f, a), id(f, b)));
        }
        w
    })
    .into_iter()
    .fold(Worst::new(), |mut acc, w| {
        acc.merge(w);
        acc
    })
}

/// `lip_r f ≤ γ` at every point and scale of `grid` whenever every pair
/// quotient is at most `γ`. Needs no convexity. When `‖f‖_lip` exceeds `γ`
/// by more than rounding the check is skipped; otherwise the conclusion is
/// tested exactly against `max(γ, ‖f‖_lip)`.
pub fn check_gamma_forward(f: &SampledMap, gamma: f64, grid: &RadiusGrid) -> Result<CheckResult> {
    let norm = lip_norm(f);
    if !(norm <= gamma * (1.0 + 4.0 * f64::EPSILON)) {
        return Ok(gamma_forward_unmet(norm, gamma));
    }
    Ok(check_gamma_forward_profile(&scale_profile(f, grid)?, f.domain(), norm, gamma))
}

fn gamma_forward_unmet(norm: f64, gamma: f64) -> CheckResult {
    CheckResult::skipped(
        "gamma-forward",
        format!("hypothesis not met: sampled Lipschitz constant {norm} exceeds gamma {gamma}"),
    )
}

/// [`check_gamma_forward`] on an existing profile of a map with sampled
/// Lipschitz constant `norm`.
pub fn check_gamma_forward_profile(
    prof: &ScaleProfile,
    space: &FiniteMetricSpace,
    norm: f64,
    gamma: f64,
) -> CheckResult {
    if !(norm <= gamma * (1.0 + 4.0 * f64::EPSILON)) {
        return gamma_forward_unmet(norm, gamma);
    }
    let bound = gamma.max(norm);
    let mut worst = Worst::new();
    for p in &prof.points {
        for row in &p.rows {
            worst.observe(row.little_below - bound, || {
                format!("x={} r={}: lip_r={}", space.id(p.point), row.radius, row.little_below)
            });
        }
        worst.observe(p.lip_hat - bound, || format!("x={}: lip={}", space.id(p.point), p.lip_hat));
    }
    CheckResult::measured("gamma-forward", worst.value, 0.0, "exact", worst.witness)
}

/// Both directions of the characterization of `γ`-Lipschitz maps on convex
/// domains by `lip f ≤ γ`.
///
/// The forward direction assumes `‖f‖_lip ≤ γ` (up to rounding of the
/// sampled values) and checks `lip_r f ≤ max(γ, ‖f‖_lip)` exactly at every
/// point and scale. The converse assumes `lip̂ ≤ γ(1 + tol)` at the finest
/// scale and checks every pair quotient against `γ(1 + tol)` with
/// `tol = 2·resolution/diameter`.
pub fn check_gamma_lipschitz(f: &SampledMap, gamma: f64, grid: &RadiusGrid, convex: bool) -> Result<Vec<CheckResult>> {
    const FWD: &str = "gamma-lipschitz/forward";
    const CONV: &str = "gamma-lipschitz/converse";
    if !(gamma >= 0.0) {
        return Err(Error::input(format!("gamma must be nonnegative, got {gamma}")));
    }
    if !convex {
        return Ok(vec![
            CheckResult::skipped(FWD, "domain not convex"),
            CheckResult::skipped(CONV, "domain not convex"),
        ]);
    }
    let forward = check_gamma_forward(f, gamma, grid)?.named(FWD);

    let space = f.domain();
    let diam = space.diameter();
    let tol = if diam > 0.0 { 2.0 * space.resolution() / diam } else { 0.0 };
    let field = functional_field(f, Functional::LittleAtBreakpoints, finest_radius(f))?;
    let (argmax, max_lip) =
        field.iter().copied().enumerate().fold((0, 0.0f64), |(i, m), (j, v)| if v > m { (j, v) } else { (i, m) });
    let converse = if max_lip <= gamma * (1.0 + tol) {
        let worst = pair_worst(f, |a, b| {
            let q = f.quotient(a, b);
            if gamma > 0.0 {
                q / gamma - 1.0
            } else {
                q
            }
        });
        CheckResult::measured(CONV, worst.value, tol, "relative 2·resolution/diameter", worst.witness)
    } else {
        CheckResult::skipped(
            CONV,
            format!("hypothesis not met: lip estimate {max_lip} at x={} exceeds gamma {gamma}", id(f, argmax)),
        )
    };
    Ok(vec![forward, converse])
}

/// `‖f‖_lip` against `sup_x lip̂ f(x)` at the finest scale.
pub fn check_lipnorm_identity(f: &SampledMap, convex: bool, rel_tol: f64) -> Result<CheckResult> {
    if !convex {
        return Ok(CheckResult::skipped("lipnorm", "domain not convex"));
    }
    let norm = lip_norm(f);
    let field = functional_field(f, Functional::LittleAtBreakpoints, finest_radius(f))?;
    let sup = field.iter().copied().fold(0.0, f64::max);
    let (disc, tol, rule) = if norm > 0.0 {
        ((norm - sup).abs() / norm, rel_tol, format!("relative {rel_tol}"))
    } else {
        (sup, 0.0, "exact".to_string())
    };
    Ok(CheckResult::measured("lipnorm", disc, tol, rule, Some(format!("lip_norm={norm} sup_lip={sup}"))))
}

/// `lip g ≤ ‖b − a‖ · (Lip f ∘ T)` for `g = f ∘ T`, `T(t) = a + t(b − a)`,
/// at matched scales: `g`-radius `r` against `f`-radius `r‖b − a‖`.
pub fn check_segment_chain_rule(f: &SampledMap, a: &[f64], b: &[f64], tol: f64) -> Result<CheckResult> {
    let emb = f.domain().embedding().ok_or_else(|| Error::input("segment check needs point coordinates"))?;
    let n = emb.dim();
    if a.len() != n || b.len() != n {
        return Err(Error::input(format!("segment endpoints must have {n} coordinates")));
    }
    let len = emb.norm().distance(a, b);
    if !(len > 0.0) {
        return Err(Error::input("segment endpoints coincide"));
    }
    let close = 1e-9 * len;
    let find = |p: &[f64]| (0..f.len()).find(|&i| emb.norm().distance(emb.point(i), p) <= close);
    if find(a).is_none() || find(b).is_none() {
        return Err(Error::input("segment leaves the sampled domain: endpoints must be sample points"));
    }
    let dir: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let dir2: f64 = dir.iter().map(|v| v * v).sum();
    let mut on: Vec<(f64, usize)> = (0..f.len())
        .filter_map(|i| {
            let p = emb.point(i);
            let t = p.iter().zip(a).zip(&dir).map(|((p, a), d)| (p - a) * d).sum::<f64>() / dir2;
            if !(-1e-12..=1.0 + 1e-12).contains(&t) {
                return None;
            }
            let foot: Vec<f64> = a.iter().zip(&dir).map(|(a, d)| a + t * d).collect();
            (emb.norm().distance(p, &foot) <= close).then_some((t.clamp(0.0, 1.0), i))
        })
        .collect();
    on.sort_by(|x, y| x.0.total_cmp(&y.0));
    on.dedup_by(|x, y| x.0 == y.0);
    let ts: Vec<f64> = on.iter().map(|p| p.0).collect();
    let picks: Vec<usize> = on.iter().map(|p| p.1).collect();
    let g = f.pulled_back(FiniteMetricSpace::line(&ts)?, &picks)?;
    let r = finest_radius(&g);
    let mut worst = Worst::new();
    for j in 0..g.len() {
        let lhs = little_lip_at_breakpoints(&g, j, r)?.value;
        let rhs = len * big_lip_below_r(f, picks[j], r * len)?;
        worst.observe(lhs - rhs, || format!("t={} x={}: lip g={lhs} bound={rhs}", ts[j], id(f, picks[j])));
    }
    Ok(CheckResult::measured("segment-chain-rule", worst.value, tol, format!("absolute {tol}"), worst.witness))
}

/// Pair identity `|f_E(a) − f_E(b)| = µ([a,b] ∩ E)` for the measure function
/// of `E` on a grid of `span`, and `lip̂ f_E ≤ 1` on `E`, `0` away from it.
pub fn check_bhmv_bound(e: &IntervalUnion, span: (f64, f64), resolution: f64) -> Result<CheckResult> {
    let (lo, hi) = span;
    if !(lo < hi) {
        return Err(Error::input(format!("empty span [{lo}, {hi}]")));
    }
    crate::metric::check_radius(resolution)?;
    let e = IntervalUnion::new(e.intervals().iter().map(|&(a, b)| (a.max(lo), b.min(hi))).filter(|(a, b)| a <= b))?;
    let pts = interval_grid(lo, hi, resolution);
    let fe = measure_function(&e, lo);
    let vals: Vec<f64> = pts.iter().map(|&u| fe(u)).collect();
    let f = SampledMap::real(FiniteMetricSpace::line(&pts)?, vals)?;
    let mut worst = pair_worst(&f, |i, j| {
        let (a, b) = if pts[i] < pts[j] { (pts[i], pts[j]) } else { (pts[j], pts[i]) };
        (f.value_dist(i, j) - e.measure_within(a, b)).abs()
    });
    let r = finest_radius(&f);
    let field = functional_field(&f, Functional::LittleAtBreakpoints, r)?;
    for (i, &l) in field.iter().enumerate() {
        let bound = if e.distance_to(pts[i]) >= r { 0.0 } else { 1.0 };
        worst.observe(l - bound, || format!("u={}: lip={l} bound={bound}", pts[i]));
    }
    Ok(CheckResult::measured(
        "bhmv",
        worst.value,
        1e-12,
        "absolute 1e-12 on pair identity and lip bounds",
        worst.witness,
    ))
}

/// `(lip f)^∨ = (Lip f)^∨ = 𝕃ip f` at scale `h`: the finest-scale `lip̂` and
/// `Lip̂` fields are enveloped over `B(x, h)` and compared with `𝕃ip^h`.
///
/// Tolerance: the largest change of the `Lip̂` field between neighbouring
/// sample points plus `rel_tol · max 𝕃ip^h`.
pub fn check_envelope_identity(f: &SampledMap, h: f64, rel_tol: f64) -> Result<CheckResult> {
    if !matches!(f.codomain(), Codomain::Real(_)) {
        return Ok(CheckResult::skipped("envelope-identity", "stated for real-valued maps only"));
    }
    let space = f.domain_arc().clone();
    let res = space.resolution();
    if !(h > res) {
        return Err(Error::input(format!("scale {h} is not above the sample resolution {res}")));
    }
    let r = 1.5 * res;
    let lip = ScalarField::new(space.clone(), functional_field(f, Functional::LittleAtBreakpoints, r)?)?;
    let big = ScalarField::new(space.clone(), functional_field(f, Functional::BigBelow, r)?)?;
    let loc = functional_field(f, Functional::Loc, h)?;
    let up_lip = baire_upper(&lip, h)?;
    let up_big = baire_upper(&big, h)?;

    let osc = par::map_points(f.len(), |x| {
        space.neighbors(x, r, false).into_iter().map(|(_, y)| (big.value(x) - big.value(y)).abs()).fold(0.0, f64::max)
    })
    .into_iter()
    .fold(0.0, f64::max);
    let scale = loc.iter().copied().fold(0.0, f64::max);
    let tol = osc + rel_tol * scale;

    let mut worst = Worst::new();
    for (x, &l) in loc.iter().enumerate() {
        let v = (up_lip.value(x) - l).abs().max((up_big.value(x) - l).abs());
        worst.observe(v, || {
            format!("x={}: lip_env={} Lip_env={} LLip={}", id(f, x), up_lip.value(x), up_big.value(x), l)
        });
    }
    Ok(CheckResult::measured(
        "envelope-identity",
        worst.value,
        tol,
        format!("one-cell oscillation {osc} + {rel_tol}·{scale}"),
        worst.witness,
    ))
}

/// `𝕃ip^{r/2} f(x) ≤ 𝕃ip^r f(x0) < γ` for every sampled `x ∈ B(x0, r/2)`.
pub fn check_openness_surrogate(f: &SampledMap, x0: usize, r: f64, gamma: f64) -> Result<CheckResult> {
    openness(f, x0, r, gamma, 0.0)
}

/// Openness check with `bump` added to the computed `𝕃ip^{r/2} f(x0)`.
pub(crate) fn openness(f: &SampledMap, x0: usize, r: f64, gamma: f64, bump: f64) -> Result<CheckResult> {
    let l0 = loc_lip_r(f, x0, r)?;
    if !(l0 < gamma) {
        return Ok(CheckResult::skipped(
            "openness",
            format!("precondition fails: LLip^r f(x0) = {l0} is not below {gamma}"),
        ));
    }
    let mut worst = Worst::new();
    for x in f.domain().ball(x0, r / 2.0, false)? {
        let l = loc_lip_r(f, x, r / 2.0)? + if x == x0 { bump } else { 0.0 };
        worst.observe(l - l0, || format!("x0={} x={} r={r}: {l} > {l0}", id(f, x0), id(f, x)));
    }
    Ok(CheckResult::measured("openness", worst.value, 0.0, "exact", worst.witness))
}

/// Semicontinuity defects of the `lip_r` and `𝕃ip^r` fields (upper) and the
/// `Lip_r` field (lower) at scale `h`, against `ω(h) = slope·h`, evaluated at
/// `points`.
pub fn check_semicontinuity_fields(
    f: &SampledMap,
    r: f64,
    h: f64,
    slope: Option<f64>,
    continuous: bool,
    points: &[usize],
) -> Result<CheckResult> {
    const NAME: &str = "semicontinuity";
    if !continuous {
        return Ok(CheckResult::skipped(NAME, "map is not continuous"));
    }
    let Some(slope) = slope else {
        return Ok(CheckResult::skipped(NAME, "no bound on the second derivative"));
    };
    let res = f.domain().resolution();
    if h < 2.0 * res {
        return Err(Error::input(format!("scale {h} is below twice the resolution {res}")));
    }
    let space = f.domain_arc().clone();
    let field = |which| -> Result<ScalarField> { ScalarField::new(space.clone(), functional_field(f, which, r)?) };
    let defects = [
        ("usc lip_r", usc_defect(&field(Functional::LittleBelow)?, h)?),
        ("usc LLip^r", usc_defect(&field(Functional::Loc)?, h)?),
        ("lsc Lip_r", lsc_defect(&field(Functional::BigBelow)?, h)?),
    ];
    let mut worst = Worst::new();
    for (label, d) in &defects {
        for &x in points {
            worst.observe(d.value(x), || format!("{label} at x={}", id(f, x)));
        }
    }
    let tol = slope * h + 1e-12;
    Ok(CheckResult::measured(NAME, worst.value, tol, format!("{slope}·h + 1e-12"), worst.witness))
}

fn level_inclusion(prof: &ScaleProfile, space: &FiniteMetricSpace, gamma: f64, worst: &mut Worst) {
    let broken = |little: f64, big: f64, loc: f64| (loc <= gamma && big > gamma) || (big <= gamma && little > gamma);
    for p in &prof.points {
        for row in &p.rows {
            if broken(row.little_below, row.big_below, row.loc) {
                worst.observe(1.0, || format!("x={} r={}", space.id(p.point), row.radius));
            }
        }
        if broken(p.lip_hat, p.big_hat, p.loc_hat) {
            worst.observe(1.0, || format!("x={} estimates", space.id(p.point)));
        }
    }
}

/// `{𝕃ip ≤ γ} ⊆ {Lip ≤ γ} ⊆ {lip ≤ γ}` at every scale of the profile.
pub fn check_level_inclusion(f: &SampledMap, gamma: f64, grid: &RadiusGrid) -> Result<CheckResult> {
    Ok(check_level_inclusion_profile(&scale_profile(f, grid)?, f.domain(), gamma))
}

pub fn check_level_inclusion_profile(prof: &ScaleProfile, space: &FiniteMetricSpace, gamma: f64) -> CheckResult {
    let mut worst = Worst::new();
    level_inclusion(prof, space, gamma, &mut worst);
    CheckResult::measured("level-sets", worst.value, 0.0, "exact count of violations", worst.witness)
}

/// Level-set inclusion chain plus localization of `{Lip̂ > γ}`: every point
/// in it lies within `localization` of a point where the analytic `Lip f`
/// is infinite, and every point of `must_contain` belongs to it.
pub fn check_level_sets(
    entry: &ZooEntry,
    gamma: f64,
    grid: &RadiusGrid,
    localization: f64,
    must_contain: &[usize],
) -> Result<CheckResult> {
    let f = &entry.map;
    let prof = scale_profile(f, grid)?;
    let mut worst = Worst::new();
    level_inclusion(&prof, f.domain(), gamma, &mut worst);
    for p in &prof.points {
        if p.big_hat > gamma {
            let d = entry.distance_to_infinite(p.point);
            if d > localization {
                worst.observe(1.0, || {
                    format!("x={} has Lip={} at distance {d} from infinite points", id(f, p.point), p.big_hat)
                });
            }
        }
    }
    for &x in must_contain {
        let p = prof.point(x).ok_or_else(|| Error::input(format!("unknown point {x}")))?;
        if !(p.big_hat > gamma) {
            worst.observe(1.0, || format!("x={} expected in the level set, Lip={}", id(f, x), p.big_hat));
        }
    }
    Ok(CheckResult::measured("level-sets", worst.value, 0.0, "exact count of violations", worst.witness))
}

/// `|est − oracle| ≤ rel·|f′| + cells·resolution` for all three estimates at
/// every point at least `margin` from the domain boundary. Reported as the
/// largest ratio of error to allowance.
pub fn check_c1(entry: &ZooEntry, grid: &RadiusGrid, margin: f64, rel: f64, cells: f64) -> Result<CheckResult> {
    let pts: Vec<usize> = (0..entry.map.len()).filter(|&i| entry.boundary_distance(i) >= margin).collect();
    let prof = profile_points(&entry.map, &pts, grid, &ProfileOptions::default())?;
    let mut worst = Worst::new();
    for p in &prof.points {
        let o = entry.oracle[p.point];
        let allowance = rel * o.big + cells * entry.resolution;
        let err = (p.lip_hat - o.lip).abs().max((p.big_hat - o.big).abs()).max((p.loc_hat - o.loc).abs());
        worst.observe(err / allowance, || {
            format!(
                "x={}: lip={} Lip={} LLip={} oracle={}",
                id(&entry.map, p.point),
                p.lip_hat,
                p.big_hat,
                p.loc_hat,
                o.big
            )
        });
    }
    Ok(CheckResult::measured(
        "c1",
        worst.value,
        1.0,
        format!("error / ({rel}·|f'| + {cells}·resolution) ≤ 1"),
        worst.witness,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Estimate {
    Little,
    Big,
    Local,
}

/// One limit estimate at one point must lie in `[lo, hi]`.
pub fn check_estimate_window(
    f: &SampledMap,
    x: usize,
    grid: &RadiusGrid,
    which: Estimate,
    (lo, hi): (f64, f64),
) -> Result<CheckResult> {
    let p = profile_point(f, x, grid, &ProfileOptions::default())?;
    let (label, v) = match which {
        Estimate::Little => ("lip", p.lip_hat),
        Estimate::Big => ("Lip", p.big_hat),
        Estimate::Local => ("LLip", p.loc_hat),
    };
    let disc = if v < lo {
        lo - v
    } else if v > hi {
        v - hi
    } else {
        0.0
    };
    Ok(CheckResult::measured(
        format!("window/{label}"),
        disc,
        0.0,
        format!("{lo} ≤ {label} ≤ {hi}"),
        Some(format!("x={} {label}={v} at r={:?}", id(f, x), p.estimate_radius)),
    ))
}

/// Every scale functional against direct enumeration at each point and each
/// of `radii`, plus `‖f‖_lip`.
pub fn check_oracle_equivalence(f: &SampledMap, radii: &[f64], tol: f64) -> Result<CheckResult> {
    let mut worst = Worst::new();
    let gap = |a: f64, b: f64| if a == b { 0.0 } else { (a - b).abs() };
    for x in 0..f.len() {
        let bs = BruteScan::new(f, x);
        for &r in radii {
            let little = little_lip_below_r(f, x, r)?;
            let little_bp = little_lip_at_breakpoints(f, x, r)?;
            let pairs = [
                ("Lip^r", lip_upper_r(f, x, r)?, bs.lip_upper(r)),
                ("Lip^r_+", lip_upper_r_closed(f, x, r)?, bs.lip_upper_closed(r)),
                ("Lip_r", big_lip_below_r(f, x, r)?, bs.big_below(r)),
                ("lip_r", little.value, bs.little_below(r).unwrap_or(0.0)),
                ("lip_r breakpoints", little_bp.value, bs.little_at_breakpoints(r).unwrap_or(0.0)),
                ("LLip^r", loc_lip_r(f, x, r)?, brute::loc(f, x, r)),
            ];
            for (label, fast, slow) in pairs {
                worst.observe(gap(fast, slow), || format!("{label} at x={} r={r}: {fast} vs {slow}", id(f, x)));
            }
            if little.unresolved != bs.little_below(r).is_none() {
                worst.observe(f64::INFINITY, || format!("unresolved flag at x={} r={r}", id(f, x)));
            }
        }
    }
    let (fast, slow) = (lip_norm(f), brute::lip_norm(f));
    worst.observe(gap(fast, slow), || format!("lip_norm: {fast} vs {slow}"));
    Ok(CheckResult::measured("oracle-equivalence", worst.value, tol, format!("absolute {tol}"), worst.witness))
}

fn count_failures(name: &str, failures: Vec<String>) -> CheckResult {
    let n = failures.len() as f64;
    let witness = failures.into_iter().next();
    CheckResult::measured(name, n, 0.0, "exact count of failing cases", witness)
}

fn sweep_families(max_ground: usize, random_cases: usize, seed: u64) -> Result<Vec<SetFamily>> {
    let mut fams = Vec::new();
    for n in 0..=max_ground {
        fams.extend(all_topologies(n)?);
    }
    for k in 0..random_cases as u64 {
        let members = 1 + (k % 12) as usize;
        fams.push(random_family(5, members, seed.wrapping_add(k))?);
    }
    Ok(fams)
}

/// The three complement/closure identities on every topology with at most
/// `max_ground` points and on `random_cases` arbitrary families of subsets of
/// five points.
pub fn check_family_identities(max_ground: usize, random_cases: usize, seed: u64) -> Result<CheckResult> {
    let fams = sweep_families(max_ground, random_cases, seed)?;
    let failures = par::map_points(fams.len(), |i| {
        let fam = &fams[i];
        FamilyIdentity::ALL
            .iter()
            .filter_map(|&id| match verify_family_identity(fam, id) {
                Ok(o) if o.holds => None,
                Ok(o) => Some(format!(
                    "{} fails on family {:?}: {}",
                    id.label(),
                    fam.members(),
                    o.counterexample.map_or(String::new(), |s| fam.format_subset(s))
                )),
                Err(e) => Some(e.to_string()),
            })
            .collect::<Vec<_>>()
    });
    Ok(count_failures("setclass/identities", failures.into_iter().flatten().collect()))
}

const LEVELS: [f64; 4] = [f64::NEG_INFINITY, 0.0, 1.0, f64::INFINITY];

fn decode(code: usize, n: usize) -> Vec<f64> {
    (0..n).map(|i| LEVELS[code >> (2 * i) & 3]).collect()
}

/// Pointwise max (or min) of two codes; level indices are ordered like the
/// values they stand for.
fn combine(a: usize, b: usize, n: usize, pick: fn(usize, usize) -> usize) -> usize {
    (0..n).fold(0, |acc, i| acc | pick(a >> (2 * i) & 3, b >> (2 * i) & 3) << (2 * i))
}

fn duality_failures(f: &FiniteField, fam: &SetFamily, mode: Semicontinuity) -> Vec<String> {
    match check_duality_props(f, fam, mode) {
        Ok(cs) => cs
            .into_iter()
            .filter(|c| !c.holds)
            .map(|c| {
                format!(
                    "{mode:?} {} fails for field {:?} on {:?}: {}",
                    c.label,
                    f.values(),
                    fam.members(),
                    c.witness.unwrap_or_default()
                )
            })
            .collect(),
        Err(e) => vec![e.to_string()],
    }
}

fn extremum_failures(fam: &SetFamily, n: usize, usc: &[usize], lsc: &[usize]) -> Result<Vec<String>> {
    let target = sigma_closure(&complements(fam));
    let mut out = Vec::new();
    for (codes, mode) in [(usc, Extremum::Sup), (lsc, Extremum::Inf)] {
        let pick: fn(usize, usize) -> usize = match mode {
            Extremum::Sup => usize::max,
            Extremum::Inf => usize::min,
        };
        let mut seen = vec![false; 1 << (2 * n)];
        for &a in codes {
            for &b in codes {
                seen[combine(a, b, n, pick)] = true;
            }
        }
        for (g, _) in seen.iter().enumerate().filter(|p| *p.1) {
            let field = FiniteField::new(decode(g, n))?;
            let ok = match mode {
                Extremum::Sup => is_A_lower_sc(&field, &target)?,
                Extremum::Inf => is_A_upper_sc(&field, &target)?,
            };
            if !ok {
                out.push(format!("{mode:?} {:?} on {:?}", field.values(), fam.members()));
            }
        }
    }
    Ok(out)
}

/// Conclusions (i) to (iv) for upper and lower semicontinuous fields, and the
/// supremum/infimum statements for pairs of them, over every topology with at
/// most `max_ground` points and every field with values in `{−∞, 0, 1, +∞}`.
///
/// Pairwise suprema are checked once per distinct resulting field.
pub fn check_semicontinuity_algebra(max_ground: usize) -> Result<CheckResult> {
    let mut fams = Vec::new();
    for n in 0..=max_ground {
        fams.extend(all_topologies(n)?.into_iter().map(|f| (n, f)));
    }
    let per_family = par::map_points(fams.len(), |i| -> Result<Vec<String>> {
        let (n, fam) = &fams[i];
        let n = *n;
        let mut failures = Vec::new();
        let (mut usc, mut lsc) = (Vec::new(), Vec::new());
        for code in 0..1usize << (2 * n) {
            let f = FiniteField::new(decode(code, n))?;
            if is_A_upper_sc(&f, fam)? {
                usc.push(code);
                failures.extend(duality_failures(&f, fam, Semicontinuity::Upper));
            }
            if is_A_lower_sc(&f, fam)? {
                lsc.push(code);
                failures.extend(duality_failures(&f, fam, Semicontinuity::Lower));
            }
        }
        failures.extend(extremum_failures(fam, n, &usc, &lsc)?);
        Ok(failures)
    });
    let mut failures = Vec::new();
    for r in per_family {
        failures.extend(r?);
    }
    Ok(count_failures("setclass/semicontinuity", failures))
}

/// Seeded five-point cases: a random topology, two upper semicontinuous
/// fields built from chains of open sets, their negations, and every
/// conclusion applied to them.
pub fn check_semicontinuity_random(cases: usize, seed: u64) -> Result<CheckResult> {
    use rand::{Rng, SeedableRng};
    let per_case = par::map_points(cases, |k| -> Result<Vec<String>> {
        let case_seed = seed.wrapping_add(k as u64);
        let fam = random_topology(5, case_seed)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(case_seed ^ 0xc4a1);
        let mut field = || -> Result<FiniteField> {
            let open = |rng: &mut rand_chacha::ChaCha8Rng| fam.members()[rng.gen_range(0..fam.len())];
            let u3 = open(&mut rng);
            let u2 = u3 & open(&mut rng);
            let u1 = u2 & open(&mut rng);
            let values = (0..5)
                .map(|i| {
                    let bit = 1 << i;
                    if u1 & bit != 0 {
                        LEVELS[0]
                    } else if u2 & bit != 0 {
                        LEVELS[1]
                    } else if u3 & bit != 0 {
                        LEVELS[2]
                    } else {
                        LEVELS[3]
                    }
                })
                .collect();
            FiniteField::new(values)
        };
        let (f, g) = (field()?, field()?);
        let mut failures = Vec::new();
        for h in [&f, &g] {
            if !is_A_upper_sc(h, &fam)? {
                failures.push(format!("constructed field {:?} is not upper semicontinuous", h.values()));
                continue;
            }
            failures.extend(duality_failures(h, &fam, Semicontinuity::Upper));
            failures.extend(duality_failures(&h.negated(), &fam, Semicontinuity::Lower));
        }
        if failures.is_empty() {
            if !check_sup_inf_props(&[f.clone(), g.clone()], &fam, Extremum::Sup)? {
                failures.push(format!("sup of {:?} and {:?}", f.values(), g.values()));
            }
            if !check_sup_inf_props(&[f.negated(), g.negated()], &fam, Extremum::Inf)? {
                failures.push(format!("inf of negations of {:?} and {:?}", f.values(), g.values()));
            }
        }
        Ok(failures)
    });
    let mut failures = Vec::new();
    for r in per_case {
        failures.extend(r?);
    }
    Ok(count_failures("setclass/random", failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::random::{exact_map, probe_radii};
    use crate::harness::Status;
    use crate::metric::Norm;
    use crate::zoo;

    fn line(points: &[f64], g: impl Fn(f64) -> f64) -> SampledMap {
        SampledMap::real(FiniteMetricSpace::line(points).unwrap(), points.iter().map(|&u| g(u)).collect()).unwrap()
    }

    fn grid_points(lo: f64, hi: f64, h: f64) -> Vec<f64> {
        interval_grid(lo, hi, h)
    }

    fn plane(n: usize, step: f64, g: impl Fn(f64, f64) -> f64) -> SampledMap {
        let pts: Vec<Vec<f64>> =
            (0..=n).flat_map(|i| (0..=n).map(move |j| vec![i as f64 * step, j as f64 * step])).collect();
        let ids = (0..pts.len()).map(|i| i.to_string()).collect();
        let vals = pts.iter().map(|p| g(p[0], p[1])).collect();
        SampledMap::real(FiniteMetricSpace::from_points(ids, &pts, Norm::L2).unwrap(), vals).unwrap()
    }

    #[test]
    fn chain_holds_on_random_spaces_and_catches_faults() {
        for seed in 0..100 {
            let f = exact_map(seed, 10);
            let grid = RadiusGrid::new(1.2 * f.domain().diameter(), 0.5, 5, 2).unwrap();
            let c = check_chain(&f, &grid).unwrap();
            assert!(c.passed() && c.discrepancy == 0.0, "seed {seed}: {c:?}");
        }
        let f = line(&grid_points(-1.0, 1.0, 0.01), |u| u * u);
        let grid = RadiusGrid::new(0.1, 0.5, 3, 2).unwrap();
        let mut prof = scale_profile(&f, &grid).unwrap();
        prof.points[7].rows[1].little_below = prof.points[7].rows[1].big_below + 0.25;
        let c = check_chain_profile(&prof, f.domain());
        assert_eq!(c.status, Status::Fail);
        assert!(c.witness.unwrap().starts_with("x=7 "));
        assert!((c.discrepancy - 0.25).abs() < 1e-12);
    }

    #[test]
    fn plus_variant_examples() {
        let f = line(&grid_points(0.0, 1.0, 0.01), |u| u);
        assert!(check_plus_variant(&f, 50, 0.3).unwrap().passed());

        let pair = SampledMap::real(FiniteMetricSpace::discrete(vec!["a".into(), "b".into()]).unwrap(), vec![0.0, 1.0])
            .unwrap();
        // the single scale r = 1 separates the open and closed variants
        assert_eq!(lip_upper_r(&pair, 0, 1.0).unwrap(), 0.0);
        assert_eq!(lip_upper_r_closed(&pair, 0, 1.0).unwrap(), 1.0);
        assert!(check_plus_variant(&pair, 0, 1.5).unwrap().passed());
        assert_eq!(check_plus_variant(&pair, 0, 1.0).unwrap().status, Status::Skipped);

        for seed in 0..100 {
            let f = exact_map(seed, 8);
            for r in probe_radii(&f, seed) {
                for x in 0..f.len() {
                    let c = check_plus_variant(&f, x, r).unwrap();
                    assert_ne!(c.status, Status::Fail, "seed {seed}: {c:?}");
                }
            }
        }
    }

    #[test]
    fn frechet_examples() {
        let diag = LinearMapSpec::euclidean(vec![vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let est = frechet_estimate(&diag, &[0.3, -0.7], 1e-2).unwrap();
        assert!((1.96..=2.0).contains(&est), "{est}");
        assert!(check_frechet(&diag, &[0.3, -0.7], 1e-2, 1, 0.02).unwrap().passed());

        let zero = LinearMapSpec::euclidean(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(frechet_estimate(&zero, &[0.3, -0.7], 1e-2).unwrap(), 0.0);
        assert!(check_frechet(&zero, &[0.3, -0.7], 1e-2, 1, 0.02).unwrap().passed());

        let rot = LinearMapSpec::rotation(1.1);
        let est = frechet_estimate(&rot, &[0.3, -0.7], 1e-2).unwrap();
        assert!((0.98..=1.0 + 1e-12).contains(&est), "{est}");

        assert!(frechet_estimate(&diag, &[0.3], 1e-2).is_err());
    }

    #[test]
    fn gamma_lipschitz_examples() {
        let grid = RadiusGrid::new(0.05, 0.5, 4, 2).unwrap();
        let sin = zoo::entry("sin", 1e-3).unwrap();
        let v = check_gamma_lipschitz(&sin.map, 1.0, &grid, true).unwrap();
        assert!(v.iter().all(|c| c.passed()), "{v:?}");

        let constant = zoo::entry("constant", 1e-2).unwrap();
        let v = check_gamma_lipschitz(&constant.map, 0.0, &grid, true).unwrap();
        assert!(v.iter().all(|c| c.passed() && c.discrepancy == 0.0), "{v:?}");

        let sqrt = zoo::entry("sqrt-abs", 1e-3).unwrap();
        let v = check_gamma_lipschitz(&sqrt.map, 1.0, &grid, true).unwrap();
        assert!(v.iter().all(|c| c.status == Status::Skipped));
        assert!(v[1].note.as_deref().unwrap().starts_with("hypothesis not met"));

        let v = check_gamma_lipschitz(&sin.map, 1.0, &grid, false).unwrap();
        assert!(v.iter().all(|c| c.status == Status::Skipped));
        assert!(check_gamma_lipschitz(&sin.map, -1.0, &grid, true).is_err());
    }

    #[test]
    fn converse_needs_a_convex_domain() {
        // lip vanishes at every sample, yet the gap hides a jump; with the
        // domain wrongly flagged convex the converse reports the steep pair
        let pts = [0.0, 0.01, 0.02, 0.5, 0.51, 0.52];
        let f = line(&pts, |u| if u < 0.25 { 0.0 } else { 1.0 });
        let grid = RadiusGrid::new(0.015, 0.5, 1, 1).unwrap();
        let v = check_gamma_lipschitz(&f, 0.0, &grid, true).unwrap();
        assert!(v[0].status == Status::Skipped && v[1].status == Status::Fail);
        assert!(v[1].witness.as_deref().unwrap().starts_with("pair"));
    }

    #[test]
    fn lipnorm_examples() {
        let sin = zoo::entry("sin", 1e-3).unwrap();
        assert!(check_lipnorm_identity(&sin.map, true, 0.05).unwrap().passed());
        let c = zoo::entry("constant", 1e-2).unwrap();
        let r = check_lipnorm_identity(&c.map, true, 0.05).unwrap();
        assert!(r.passed() && r.discrepancy == 0.0);
        let a = zoo::entry("affine", 1e-3).unwrap();
        assert!(check_lipnorm_identity(&a.map, true, 1e-9).unwrap().passed());
    }

    #[test]
    fn segment_chain_rule_examples() {
        let f = plane(10, 0.1, |_, y| y);
        let c = check_segment_chain_rule(&f, &[0.0, 0.0], &[1.0, 0.0], 1e-9).unwrap();
        assert!(c.passed() && c.discrepancy == 0.0);

        let f = plane(10, 0.1, |x, y| x + y);
        assert!(check_segment_chain_rule(&f, &[0.0, 0.0], &[1.0, 1.0], 1e-9).unwrap().passed());
        assert!(check_segment_chain_rule(&f, &[0.0, 0.3], &[1.0, 0.3], 1e-9).unwrap().passed());

        let f = plane(10, 0.1, |_, _| 4.0);
        let c = check_segment_chain_rule(&f, &[0.0, 1.0], &[1.0, 0.0], 1e-9).unwrap();
        assert!(c.passed() && c.discrepancy == 0.0);

        assert!(check_segment_chain_rule(&f, &[0.0, 0.0], &[2.0, 0.0], 1e-9).is_err());
        assert!(check_segment_chain_rule(&f, &[0.0, 0.0], &[0.0, 0.0], 1e-9).is_err());
    }

    #[test]
    fn bhmv_examples() {
        let e = IntervalUnion::new([(0.0, 1.0), (2.0, 3.0)]).unwrap();
        assert!(check_bhmv_bound(&e, (0.0, 3.0), 1e-2).unwrap().passed());
        assert!(check_bhmv_bound(&IntervalUnion::empty(), (0.0, 3.0), 1e-2).unwrap().passed());
        assert!(check_bhmv_bound(&IntervalUnion::new([(0.0, 3.0)]).unwrap(), (0.0, 3.0), 1e-2).unwrap().passed());
        // the pair (0, 3) realizes the measure exactly
        let f = measure_function(&e, 0.0);
        assert_eq!(f(3.0) - f(0.0), 2.0);
        assert!(check_bhmv_bound(&e, (1.0, 1.0), 1e-2).is_err());
    }

    #[test]
    fn envelope_examples() {
        let abs = zoo::entry("abs", 1e-3).unwrap();
        assert!(check_envelope_identity(&abs.map, 0.05, 0.05).unwrap().passed());
        let c = zoo::entry("constant", 1e-3).unwrap();
        let r = check_envelope_identity(&c.map, 0.05, 0.05).unwrap();
        assert!(r.passed() && r.discrepancy == 0.0);

        let osc = zoo::entry("oscillator", 1e-3).unwrap();
        assert!(check_envelope_identity(&osc.map, 0.02, 0.05).unwrap().passed());
        // at a resolution that follows the oscillation near 0.02, both the
        // envelope of lip and the local constant at 0 approach 1 while lip
        // itself vanishes there
        let fine = zoo::entry("oscillator", 1e-4).unwrap();
        let zero = fine.point_at(&[0.0]).unwrap();
        let r = 1.5e-4;
        assert!(little_lip_at_breakpoints(&fine.map, zero, r).unwrap().value < 1e-3);
        let up = fine
            .domain()
            .ball(zero, 0.02, false)
            .unwrap()
            .into_iter()
            .map(|x| little_lip_at_breakpoints(&fine.map, x, r).unwrap().value)
            .fold(0.0, f64::max);
        let loc = loc_lip_r(&fine.map, zero, 0.02).unwrap();
        assert!((0.9..1.1).contains(&up) && (0.9..1.1).contains(&loc), "{up} {loc}");
        assert!((up - loc).abs() < 0.1);

        assert!(check_envelope_identity(&abs.map, 1e-3, 0.05).is_err());
        let v = SampledMap::vector(FiniteMetricSpace::line(&[0.0, 1.0]).unwrap(), &[vec![0.0], vec![1.0]], Norm::L2)
            .unwrap();
        assert_eq!(check_envelope_identity(&v, 2.0, 0.05).unwrap().status, Status::Skipped);
    }

    #[test]
    fn openness_on_random_spaces_and_fault() {
        for seed in 0..200 {
            let f = exact_map(seed, 12);
            for r in probe_radii(&f, seed) {
                for x0 in 0..f.len() {
                    let l0 = loc_lip_r(&f, x0, r).unwrap();
                    let c = check_openness_surrogate(&f, x0, r, l0 + 0.1).unwrap();
                    assert!(c.passed() && c.discrepancy == 0.0, "seed {seed}: {c:?}");
                    assert_eq!(check_openness_surrogate(&f, x0, r, l0).unwrap().status, Status::Skipped);
                }
            }
        }
        let f = zoo::entry("sin", 1e-2).unwrap().map;
        let c = openness(&f, 100, 0.2, 5.0, 0.5).unwrap();
        assert_eq!(c.status, Status::Fail);
        assert!(c.witness.unwrap().contains("x0=100"));
    }

    #[test]
    fn semicontinuity_examples() {
        let h = 1.0 / 1024.0;
        for (name, bound) in [("sin", 0.01), ("square", 0.02), ("constant", 0.0)] {
            let e = zoo::entry(name, h).unwrap();
            let pts: Vec<usize> = (0..e.map.len()).collect();
            let c = check_semicontinuity_fields(&e.map, 0.1, 0.01, e.second_derivative_bound, true, &pts).unwrap();
            assert!(c.passed() && c.discrepancy <= bound, "{name}: {c:?}");
        }
        let e = zoo::entry("dyadic", 1e-3).unwrap();
        let c = check_semicontinuity_fields(&e.map, 0.1, 0.01, None, false, &[0]).unwrap();
        assert_eq!(c.status, Status::Skipped);
        let e = zoo::entry("sin", 1e-2).unwrap();
        assert!(check_semicontinuity_fields(&e.map, 0.1, 0.01, Some(1.0), true, &[0]).is_err());
    }

    #[test]
    fn level_set_examples() {
        let grid = RadiusGrid::new(0.002, 0.5, 3, 2).unwrap();
        let e = zoo::entry("sqrt-abs", 5e-5).unwrap();
        let origin = e.point_at(&[0.0]).unwrap();
        assert!(check_level_sets(&e, 100.0, &grid, 1e-2, &[origin]).unwrap().passed());
        let prof = profile_points(&e.map, &[origin], &grid, &ProfileOptions::default()).unwrap();
        assert!(prof.points[0].big_hat > 100.0);

        let c = zoo::entry("constant", 1e-3).unwrap();
        let r = check_level_sets(&c, 1e-9, &grid, 0.0, &[]).unwrap();
        assert!(r.passed() && r.discrepancy == 0.0);
        // the constant entry has no point of infinite derivative to contain
        assert!(!check_level_sets(&c, 1e-9, &grid, 0.0, &[0]).unwrap().passed());
    }

    #[test]
    fn c1_and_windows() {
        let grid = RadiusGrid::new(0.05, 0.5, 6, 2).unwrap();
        for name in ["sin", "square"] {
            let e = zoo::entry(name, 1e-3).unwrap();
            assert!(check_c1(&e, &grid, 0.05, 0.02, 2.0).unwrap().passed(), "{name}");
        }
        let e = zoo::entry("abs", 1e-3).unwrap();
        let zero = e.point_at(&[0.0]).unwrap();
        let w = check_estimate_window(&e.map, zero, &grid, Estimate::Big, (0.99, 1.01)).unwrap();
        assert!(w.passed());
        let w = check_estimate_window(&e.map, zero, &grid, Estimate::Big, (2.0, 3.0)).unwrap();
        assert_eq!(w.status, Status::Fail);
        assert!((w.discrepancy - 1.0).abs() < 1e-9);
    }

    #[test]
    fn oracle_equivalence_small() {
        for seed in 0..20 {
            let f = crate::harness::random::any_map(seed, 8);
            let c = check_oracle_equivalence(&f, &probe_radii(&f, seed), 1e-9).unwrap();
            assert!(c.passed(), "seed {seed}: {c:?}");
        }
    }

    #[test]
    fn setclass_sweeps() {
        assert!(check_family_identities(3, 20, 1).unwrap().passed());
        assert!(check_semicontinuity_algebra(3).unwrap().passed());
        assert!(check_semicontinuity_random(20, 4).unwrap().passed());
    }

    #[test]
    fn level_codes_follow_value_order() {
        for a in 0..16 {
            for b in 0..16 {
                let m = decode(combine(a, b, 2, usize::max), 2);
                let (x, y) = (decode(a, 2), decode(b, 2));
                assert_eq!(m, vec![x[0].max(y[0]), x[1].max(y[1])]);
            }
        }
    }
}
