use serde::Deserialize;

use super::checks::*;
use super::random::{any_map, exact_map, probe_radii};
use super::{CheckResult, Report, Status};
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::linear::LinearMapSpec;
use crate::metric::{FiniteMetricSpace, Norm};
use crate::sampled::SampledMap;
use crate::scales::{lip_norm, loc_lip_r, scale_profile, RadiusGrid};
use crate::zoo::{self, DomainShape, ZooEntry, ROTATION_ANGLE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Oracle,
    PlusVariant,
    Frechet,
    C1,
    Separation,
    GammaLipschitz,
    Envelope,
    Setclass,
    Semicontinuity,
    LevelSets,
    All,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::Identities,
        Suite::Oracle,
        Suite::PlusVariant,
        Suite::Frechet,
        Suite::C1,
        Suite::Separation,
        Suite::GammaLipschitz,
        Suite::Envelope,
        Suite::Setclass,
        Suite::Semicontinuity,
        Suite::LevelSets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Oracle => "oracle",
            Suite::PlusVariant => "plus-variant",
            Suite::Frechet => "frechet",
            Suite::C1 => "c1",
            Suite::Separation => "separation",
            Suite::GammaLipschitz => "gamma-lipschitz",
            Suite::Envelope => "envelope",
            Suite::Setclass => "setclass",
            Suite::Semicontinuity => "semicontinuity",
            Suite::LevelSets => "level-sets",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::input(format!("unknown suite '{s}'")))
    }
}

/// Deliberate corruptions used to confirm that checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Raise one `lip_r` value of each zoo profile above `Lip_r`.
    Chain,
    /// Raise `𝕃ip^{r/2} f(x0)` above `𝕃ip^r f(x0)` in each openness check.
    Openness,
}

impl Fault {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(Fault::Chain),
            "openness" => Ok(Fault::Openness),
            _ => Err(Error::input(format!("unknown fault '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub frechet: f64,
    pub lipnorm: f64,
    pub envelope: f64,
    pub c1_relative: f64,
    pub c1_cells: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { frechet: 0.02, lipnorm: 0.05, envelope: 0.05, c1_relative: 0.02, c1_cells: 2.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub random_spaces: usize,
    pub max_points: usize,
    pub plus_variant_spaces: usize,
    pub plus_variant_points: usize,
    pub setclass_max_ground: usize,
    pub setclass_random_cases: usize,
    /// Grid spacing for one-dimensional zoo entries; planar entries use ten
    /// times this.
    pub zoo_resolution: f64,
    /// `"a,b;c,d"` or `"rotation"`/`"rotation:<angle>"`.
    pub frechet_matrices: Vec<String>,
    pub frechet_resolution: f64,
    pub faults: Vec<Fault>,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suites: Vec::new(),
            seed: 0,
            random_spaces: 200,
            max_points: 12,
            plus_variant_spaces: 100,
            plus_variant_points: 8,
            setclass_max_ground: 4,
            setclass_random_cases: 500,
            zoo_resolution: 1e-3,
            frechet_matrices: vec!["2,0;0,1".into(), "rotation".into(), "1,1;0,1".into()],
            frechet_resolution: 1e-2,
            faults: Vec::new(),
            tolerances: Tolerances::default(),
        }
    }
}

impl SuiteConfig {
    pub fn with_suites(suites: impl IntoIterator<Item = Suite>) -> Self {
        Self { suites: suites.into_iter().collect(), ..Self::default() }
    }

    /// The suites to run, with `all` expanded.
    pub fn selected(&self) -> Vec<Suite> {
        if self.suites.contains(&Suite::All) {
            return Suite::EACH.to_vec();
        }
        Suite::EACH.into_iter().filter(|s| self.suites.contains(s)).collect()
    }

    fn has(&self, fault: Fault) -> bool {
        self.faults.contains(&fault)
    }
}

/// Collapses many results into one: the worst failure if any, else the
/// worst passing discrepancy, else skipped.
fn merge(name: &str, results: Vec<CheckResult>) -> CheckResult {
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    let measured = results.iter().filter(|r| r.status != Status::Skipped).count();
    let worst = results
        .iter()
        .filter(|r| r.status == if failed > 0 { Status::Fail } else { Status::Pass })
        .max_by(|a, b| a.discrepancy.total_cmp(&b.discrepancy));
    match worst {
        Some(w) => {
            let mut out = w.clone().named(name);
            out.note = Some(format!("{failed} of {measured} cases failed, {} skipped", results.len() - measured));
            out
        }
        None => {
            let why = results.first().and_then(|r| r.note.clone()).unwrap_or_else(|| "no cases".into());
            CheckResult::skipped(name, why)
        }
    }
}

fn guarded(name: impl Into<String>, r: Result<CheckResult>) -> CheckResult {
    let name = name.into();
    match r {
        Ok(c) => c.named(name),
        Err(e) => CheckResult::input_error(name, &e),
    }
}

fn is_planar(name: &str) -> bool {
    name.starts_with("linear-")
}

fn suite_entry(name: &str, res: f64) -> Result<ZooEntry> {
    zoo::entry(name, if is_planar(name) { 10.0 * res } else { res })
}

/// `"a,b;c,d"`, `"rotation"` or `"rotation:<angle>"`, Euclidean on both sides.
pub fn parse_matrix(s: &str) -> Result<LinearMapSpec> {
    match s.split_once(':') {
        _ if s == "rotation" => Ok(LinearMapSpec::rotation(ROTATION_ANGLE)),
        Some(("rotation", a)) => {
            let theta: f64 = a.trim().parse().map_err(|e| Error::input(format!("bad rotation angle '{a}': {e}")))?;
            Ok(LinearMapSpec::rotation(theta))
        }
        _ => LinearMapSpec::parse(s, Norm::L2, Norm::L2),
    }
}

fn random_grid(f: &SampledMap) -> Result<RadiusGrid> {
    RadiusGrid::new(1.2 * f.domain().diameter(), 0.5, 5, 2)
}

fn zoo_grid() -> RadiusGrid {
    RadiusGrid::new(0.05, 0.5, 4, 2).expect("valid grid")
}

/// Points spread over the domain, used as openness centres.
fn spread(n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = [0, n / 4, n / 2, 3 * n / 4, n.saturating_sub(1)].into_iter().filter(|&i| i < n).collect();
    v.dedup();
    v
}

fn openness_cases(f: &SampledMap, radii: &[f64], centres: &[usize], bump: f64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for &x0 in centres {
        for &r in radii {
            let l0 = loc_lip_r(f, x0, r)?;
            out.push(openness(f, x0, r, l0 + 0.5, bump)?);
        }
    }
    Ok(out)
}

fn identities(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let bump = if cfg.has(Fault::Openness) { 1.0 } else { 0.0 };
    let mut out: Vec<CheckResult> = crate::par::map_points(zoo::NAMES.len(), |k| {
        let name = zoo::NAMES[k];
        let run = || -> Result<Vec<CheckResult>> {
            let e = suite_entry(name, cfg.zoo_resolution)?;
            let f = &e.map;
            let grid = zoo_grid();
            let mut prof = scale_profile(f, &grid)?;
            if cfg.has(Fault::Chain) {
                let mid = prof.points.len() / 2;
                let row = &mut prof.points[mid].rows[0];
                row.little_below = row.big_below + 1.0;
            }
            let space = f.domain();
            let norm = lip_norm(f);
            let levels = [1.0, 100.0].map(|g| check_level_inclusion_profile(&prof, space, g)).to_vec();
            Ok(vec![
                check_chain_profile(&prof, space).named(format!("identities/chain/{name}")),
                merge(
                    &format!("identities/openness/{name}"),
                    openness_cases(f, &[0.02, 0.05], &spread(f.len()), bump)?,
                ),
                check_gamma_forward_profile(&prof, space, norm, norm).named(format!("identities/gamma-forward/{name}")),
                merge(&format!("identities/level-inclusion/{name}"), levels),
            ])
        };
        run().unwrap_or_else(|e| vec![CheckResult::input_error(format!("identities/{name}"), &e)])
    })
    .into_iter()
    .flatten()
    .collect();

    let per_space = crate::par::map_points(cfg.random_spaces, |k| {
        let seed = cfg.seed.wrapping_add(k as u64);
        let f = exact_map(seed, cfg.max_points);
        let run = || -> Result<[CheckResult; 4]> {
            let prof = scale_profile(&f, &random_grid(&f)?)?;
            let radii = probe_radii(&f, seed);
            let centres: Vec<usize> = (0..f.len()).collect();
            let norm = lip_norm(&f);
            Ok([
                check_chain_profile(&prof, f.domain()),
                merge("openness", openness_cases(&f, &radii, &centres, bump)?),
                check_gamma_forward_profile(&prof, f.domain(), norm, norm),
                check_level_inclusion_profile(&prof, f.domain(), 0.5 * norm),
            ])
        };
        run().map_err(|e| CheckResult::input_error(format!("seed {seed}"), &e))
    });
    let mut cols: [Vec<CheckResult>; 4] = Default::default();
    for r in per_space {
        match r {
            Ok(cs) => {
                for (col, c) in cols.iter_mut().zip(cs) {
                    col.push(c);
                }
            }
            Err(e) => cols[0].push(e),
        }
    }
    if cfg.random_spaces > 0 {
        for (col, label) in cols.into_iter().zip(["chain", "openness", "gamma-forward", "level-inclusion"]) {
            out.push(merge(&format!("identities/random/{label}"), col));
        }
    }
    out
}

fn oracle(cfg: &SuiteConfig) -> Vec<CheckResult> {
    if cfg.random_spaces == 0 {
        return Vec::new();
    }
    let results = crate::par::map_points(cfg.random_spaces, |k| {
        let seed = cfg.seed.wrapping_add(k as u64);
        let f = any_map(seed, cfg.max_points);
        guarded(format!("seed {seed}"), check_oracle_equivalence(&f, &probe_radii(&f, seed), 1e-9))
            .with_note(format!("seed {seed}"))
    });
    vec![merge("oracle/random", results)]
}

fn plus_variant(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let fixed = || -> Result<Vec<CheckResult>> {
        let u: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
        let line = SampledMap::real(FiniteMetricSpace::line(&u)?, u.clone())?;
        let pair = SampledMap::real(FiniteMetricSpace::discrete(vec!["a".into(), "b".into()])?, vec![0.0, 1.0])?;
        Ok(vec![
            check_plus_variant(&line, 50, 0.3)?.named("plus-variant/identity-line"),
            check_plus_variant(&pair, 0, 1.5)?.named("plus-variant/discrete-pair"),
        ])
    };
    match fixed() {
        Ok(v) => out.extend(v),
        Err(e) => out.push(CheckResult::input_error("plus-variant/fixed", &e)),
    }
    if cfg.plus_variant_spaces > 0 {
        let results = crate::par::map_points(cfg.plus_variant_spaces, |k| {
            let seed = cfg.seed.wrapping_add(k as u64);
            let f = any_map(seed, cfg.plus_variant_points);
            let run = || -> Result<Vec<CheckResult>> {
                let mut v = Vec::new();
                for r in probe_radii(&f, seed) {
                    for x in 0..f.len() {
                        v.push(check_plus_variant(&f, x, r)?);
                    }
                }
                Ok(v)
            };
            run().unwrap_or_else(|e| vec![CheckResult::input_error(format!("seed {seed}"), &e)])
        });
        out.push(merge("plus-variant/random", results.into_iter().flatten().collect()));
    }
    out
}

fn frechet(cfg: &SuiteConfig) -> Vec<CheckResult> {
    const BASE: [f64; 4] = [0.3, -0.7, 0.2, 0.1];
    cfg.frechet_matrices
        .iter()
        .map(|s| {
            let name = format!("frechet/{s}");
            let run = || {
                let a = parse_matrix(s)?;
                let x0 = BASE.get(..a.cols()).ok_or_else(|| Error::input("matrix has more than 4 columns"))?;
                check_frechet(&a, x0, cfg.frechet_resolution, cfg.seed, cfg.tolerances.frechet)
            };
            guarded(name, run())
        })
        .collect()
}

fn c1(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let grid = RadiusGrid::new(0.05, 0.5, 6, 2).expect("valid grid");
    ["sin", "square"]
        .into_iter()
        .map(|name| {
            let t = &cfg.tolerances;
            let run = || check_c1(&zoo::entry(name, cfg.zoo_resolution)?, &grid, grid.r_max, t.c1_relative, t.c1_cells);
            guarded(format!("c1/{name}"), run())
        })
        .collect()
}

fn separation(_: &SuiteConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let dyadic = || -> Result<Vec<CheckResult>> {
        let e = zoo::entry("dyadic", 2f64.powi(-14))?;
        let x = e.point_at(&[0.0]).ok_or_else(|| Error::input("origin not sampled"))?;
        let grid = RadiusGrid::new(0.25, 0.5, 6, 2)?;
        Ok(vec![
            check_estimate_window(&e.map, x, &grid, Estimate::Little, (0.45, 0.55))?.named("separation/dyadic/lip"),
            check_estimate_window(&e.map, x, &grid, Estimate::Big, (0.95, 1.05))?.named("separation/dyadic/Lip"),
        ])
    };
    let oscillator = || -> Result<Vec<CheckResult>> {
        let e = zoo::entry("oscillator", 1e-4)?;
        let x = e.point_at(&[0.0]).ok_or_else(|| Error::input("origin not sampled"))?;
        let grid = RadiusGrid::new(0.1, 0.5, 2, 1)?;
        Ok(vec![
            check_estimate_window(&e.map, x, &grid, Estimate::Little, (0.0, 0.05))?.named("separation/oscillator/lip"),
            check_estimate_window(&e.map, x, &grid, Estimate::Local, (0.9, 1.05))?.named("separation/oscillator/LLip"),
        ])
    };
    for (label, r) in [("separation/dyadic", dyadic()), ("separation/oscillator", oscillator())] {
        match r {
            Ok(v) => out.extend(v),
            Err(e) => out.push(CheckResult::input_error(label, &e)),
        }
    }
    out
}

fn gamma_lipschitz(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let res = cfg.zoo_resolution;
    let grid = zoo_grid();
    let mut out = Vec::new();
    for (name, gamma) in [("sin", 1.0), ("affine", 3.0), ("constant", 0.0), ("bhmv", 1.0), ("sqrt-abs", 1.0)] {
        match zoo::entry(name, res).and_then(|e| check_gamma_lipschitz(&e.map, gamma, &grid, e.convex())) {
            Ok(v) => out.extend(v.into_iter().map(|c| {
                let dir = c.name.rsplit('/').next().unwrap_or_default().to_string();
                c.named(format!("gamma-lipschitz/{name}/{dir}"))
            })),
            Err(e) => out.push(CheckResult::input_error(format!("gamma-lipschitz/{name}"), &e)),
        }
    }
    for name in ["sin", "affine", "constant", "square", "abs"] {
        let r = zoo::entry(name, res).and_then(|e| check_lipnorm_identity(&e.map, e.convex(), cfg.tolerances.lipnorm));
        out.push(guarded(format!("lipnorm/{name}"), r));
    }
    let segment = |name: &str, a: [f64; 2], b: [f64; 2]| {
        let r = suite_entry(name, res).and_then(|e| check_segment_chain_rule(&e.map, &a, &b, 1e-9));
        guarded(format!("segment-chain-rule/{name}"), r)
    };
    out.push(segment("linear-diag", [-0.1, -0.1], [0.1, 0.1]));
    out.push(segment("linear-shear", [-0.1, 0.0], [0.1, 0.0]));
    let bhmv = |label: &str, e: Result<IntervalUnion>, span: (f64, f64)| {
        guarded(format!("bhmv/{label}"), e.and_then(|e| check_bhmv_bound(&e, span, res)))
    };
    out.push(bhmv("two-intervals", Ok(zoo::bhmv_set()), (0.0, 3.0)));
    out.push(bhmv("touching-span", IntervalUnion::new([(0.0, 1.0), (2.0, 3.0)]), (0.0, 3.0)));
    out.push(bhmv("empty", Ok(IntervalUnion::empty()), (0.0, 3.0)));
    out.push(bhmv("full", IntervalUnion::new([(0.0, 3.0)]), (0.0, 3.0)));
    out
}

fn envelope(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let names = ["constant", "affine", "sin", "square", "cube", "abs", "oscillator"];
    crate::par::map_points(names.len(), |k| {
        let name = names[k];
        let r = zoo::entry(name, cfg.zoo_resolution)
            .and_then(|e| check_envelope_identity(&e.map, 0.05, cfg.tolerances.envelope));
        guarded(format!("envelope/{name}"), r)
    })
}

fn setclass(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let (n, seed) = (cfg.setclass_max_ground, cfg.seed);
    vec![
        guarded("setclass/identities", check_family_identities(n, cfg.setclass_random_cases, seed)),
        guarded("setclass/semicontinuity", check_semicontinuity_algebra(n)),
        guarded("setclass/random", check_semicontinuity_random(cfg.setclass_random_cases, seed)),
    ]
}

/// Dyadic spacings keep every interpoint distance exact, so ball boundaries
/// at `r` and `h` are not blurred by rounding.
const SEMICONTINUITY_SPACING: f64 = 1.0 / 1024.0;
const SEMICONTINUITY_PLANAR_SPACING: f64 = 1.0 / 128.0;

/// Entries smooth except at the origin are checked at `|x| ≥` this, with the
/// second-derivative bound of the region their fields depend on.
const SINGULAR_CLEARANCE: f64 = 0.5;

fn semicontinuity(_: &SuiteConfig) -> Vec<CheckResult> {
    crate::par::map_points(zoo::NAMES.len(), |k| {
        let name = zoo::NAMES[k];
        let run = || {
            let (res, r, h) = if is_planar(name) {
                (SEMICONTINUITY_PLANAR_SPACING, 0.03, 0.02)
            } else {
                (SEMICONTINUITY_SPACING, 0.1, 0.01)
            };
            let e = zoo::entry(name, res)?;
            if e.shape == DomainShape::Discrete {
                return Ok(CheckResult::skipped("", "no scale below the point separation"));
            }
            let margin = match e.shape {
                DomainShape::Box { .. } => r + h,
                _ => 0.0,
            };
            let mut keep: Box<dyn Fn(usize) -> bool> = Box::new(|i| e.boundary_distance(i) >= margin);
            let mut slope = e.second_derivative_bound;
            let mut note = None;
            let coords = e.domain().embedding();
            let local = zoo::second_derivative_bound_beyond(name, SINGULAR_CLEARANCE - r - h);
            if let (None, Some(bound), Some(coords)) = (slope, local, coords) {
                slope = Some(bound);
                keep = Box::new(move |i| coords.point(i)[0].abs() >= SINGULAR_CLEARANCE);
                note = Some(format!("evaluated at |x| >= {SINGULAR_CLEARANCE}"));
            }
            if let (None, "bhmv", Some(coords)) = (slope, name, coords) {
                // affine between the interval endpoints of E
                let kinks: Vec<f64> = zoo::bhmv_set().intervals().iter().flat_map(|&(a, b)| [a, b]).collect();
                let clearance = r + h + res;
                slope = Some(0.0);
                keep = Box::new(move |i| kinks.iter().all(|k| (coords.point(i)[0] - k).abs() >= clearance));
                note = Some(format!("evaluated at least {clearance} from the kinks"));
            }
            let points: Vec<usize> = (0..e.map.len()).filter(|&i| keep(i)).collect();
            let c = check_semicontinuity_fields(&e.map, r, h, slope, e.continuous, &points)?;
            Ok(match note {
                Some(n) => c.with_note(n),
                None => c,
            })
        };
        guarded(format!("semicontinuity/{name}"), run())
    })
}

fn level_sets(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let grid = RadiusGrid::new(0.01, 0.5, 4, 2).expect("valid grid");
    let sqrt = || {
        let grid = RadiusGrid::new(0.002, 0.5, 3, 2)?;
        let e = zoo::entry("sqrt-abs", 5e-5)?;
        let origin = e.point_at(&[0.0]).ok_or_else(|| Error::input("origin not sampled"))?;
        check_level_sets(&e, 100.0, &grid, 1e-2, &[origin])
    };
    out.push(guarded("level-sets/sqrt-abs", sqrt()));
    out.extend(crate::par::map_points(zoo::NAMES.len(), |k| {
        let name = zoo::NAMES[k];
        let r = suite_entry(name, cfg.zoo_resolution).and_then(|e| {
            let localization = grid.r_max + e.resolution;
            check_level_sets(&e, 100.0, &grid, localization, &[])
        });
        guarded(format!("level-sets/zoo/{name}"), r)
    }));
    out
}

/// Runs every selected suite and gathers the results into one report.
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let suites = cfg.selected();
    let runs = crate::par::map_points(suites.len(), |k| match suites[k] {
        Suite::Identities => identities(cfg),
        Suite::Oracle => oracle(cfg),
        Suite::PlusVariant => plus_variant(cfg),
        Suite::Frechet => frechet(cfg),
        Suite::C1 => c1(cfg),
        Suite::Separation => separation(cfg),
        Suite::GammaLipschitz => gamma_lipschitz(cfg),
        Suite::Envelope => envelope(cfg),
        Suite::Setclass => setclass(cfg),
        Suite::Semicontinuity => semicontinuity(cfg),
        Suite::LevelSets => level_sets(cfg),
        Suite::All => Vec::new(),
    });
    Report::new(runs.into_iter().flatten().collect())
}
