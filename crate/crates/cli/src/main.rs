use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lipderiv::envelope::{baire_lower, baire_upper};
use lipderiv::harness::{run_suite, Fault, Suite, SuiteConfig};
use lipderiv::scales::{profile_points, Functional, ProfileOptions, ScaleProfile};
use lipderiv::{io, zoo, RadiusGrid, SampledMap, ScalarField};

mod config;
mod input;

use config::{FileConfig, GridFlags};
use input::InputArgs;

#[derive(Parser, Debug)]
#[command(name = "lipderiv", version, about = "Scale-indexed Lipschitz derivatives of sampled maps")]
struct Cli {
    /// TOML file with default settings; flags override it.
    #[arg(long, global = true, env = "LIPDERIV_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct GridArgs {
    /// Largest radius of the grid.
    #[arg(long)]
    rmax: Option<f64>,
    /// Ratio between consecutive radii, in (0, 1).
    #[arg(long)]
    q: Option<f64>,
    /// Number of radii.
    #[arg(long)]
    steps: Option<usize>,
    /// Radii at the fine end used for the divergence flag.
    #[arg(long)]
    tail: Option<usize>,
}

impl GridArgs {
    fn flags(&self) -> GridFlags {
        GridFlags { rmax: self.rmax, q: self.q, steps: self.steps, tail: self.tail }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-point, per-radius table of the scale functionals.
    Profile {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Also report the minimum of the upper functional over the tail.
        #[arg(long)]
        liminf: bool,
        /// Only these point ids (comma-separated); all points by default.
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
        /// Profile CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-point summary CSV.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run check suites and report discrepancies.
    Check {
        /// Suites to run (repeat or separate with commas).
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Seed for the randomised suites.
        #[arg(long)]
        seed: Option<u64>,
        /// Deliberately break a check to confirm the suite catches it.
        #[arg(long, value_delimiter = ',')]
        inject_fault: Vec<String>,
        /// Matrices for the frechet suite: "a,b;c,d", "rotation" or "rotation:<angle>".
        #[arg(long)]
        matrix: Vec<String>,
        /// JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Upper (and with --dual, lower) Baire envelope of a field at scale h.
    Envelope {
        #[command(flatten)]
        input: InputArgs,
        /// Field to envelope: the input values, or a functional of the map.
        #[arg(long, value_enum, default_value_t = FieldKind::Value)]
        field: FieldKind,
        /// Radius for functional fields; defaults to 1.5 times the sample resolution.
        #[arg(long)]
        radius: Option<f64>,
        /// Envelope scale; must exceed the sample resolution.
        #[arg(long)]
        h: Option<f64>,
        /// Write lower, value and upper columns.
        #[arg(long)]
        dual: bool,
        /// Output CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership in the γ-level sets of the three estimates.
    Sets {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Level; may also come from the config file.
        #[arg(long)]
        gamma: Option<f64>,
        /// Only these point ids (comma-separated); all points by default.
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
        /// Output CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Built-in reference functions.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Subcommand, Debug)]
enum ZooAction {
    /// List entry names with a short description.
    List,
    /// Write an entry as a point cloud (or a distance table plus values).
    Export {
        /// Entry name, see `zoo list`.
        name: String,
        /// Grid spacing.
        #[arg(long, default_value_t = 1e-3)]
        resolution: f64,
        /// Output CSV.
        #[arg(long)]
        out: PathBuf,
        /// Values table, required for entries without coordinates.
        #[arg(long)]
        values: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FieldKind {
    Value,
    Lip,
    Big,
    Loc,
    Upper,
}

/// Writes through a temporary file in the target directory so readers never
/// see a partial file.
fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    let Some(path) = path else {
        std::io::stdout().write_all(bytes)?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn render(f: impl FnOnce(&mut Vec<u8>) -> lipderiv::Result<()>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

fn profile_of(map: &SampledMap, ids: &[String], grid: &RadiusGrid, opts: &ProfileOptions) -> Result<ScaleProfile> {
    let space = map.domain();
    let points = if ids.is_empty() {
        (0..space.len()).collect()
    } else {
        ids.iter()
            .map(|id| space.index_of(id).ok_or_else(|| anyhow!("unknown point id '{id}'")))
            .collect::<Result<Vec<_>>>()?
    };
    let prof = profile_points(map, &points, grid, opts)?;
    for w in &prof.warnings {
        eprintln!("warning: {w}");
    }
    Ok(prof)
}

fn profile(
    file: &FileConfig,
    input: &InputArgs,
    grid: &GridArgs,
    liminf: bool,
    points: &[String],
    out: Option<&Path>,
    report: Option<&Path>,
) -> Result<()> {
    let loaded = input.load(file)?;
    let map = loaded.map()?;
    let grid = grid.flags().resolve(file)?;
    let opts = ProfileOptions { liminf_surrogate: liminf, ..ProfileOptions::default() };
    let prof = profile_of(&map, points, &grid, &opts)?;
    emit(out, &render(|b| io::write_profile(b, &prof, map.domain()))?)?;
    if let Some(path) = report {
        emit(Some(path), &render(|b| io::write_profile_summary(b, &prof, map.domain()))?)?;
    }
    Ok(())
}

fn check(
    file: &FileConfig,
    suites: &[String],
    seed: Option<u64>,
    faults: &[String],
    matrices: &[String],
    report: Option<&Path>,
) -> Result<i32> {
    let mut cfg = file.check.clone().unwrap_or_default();
    if !suites.is_empty() {
        cfg.suites = suites.iter().map(|s| Suite::parse(s)).collect::<lipderiv::Result<_>>()?;
    }
    if cfg.suites.is_empty() {
        cfg.suites = vec![Suite::All];
    }
    if let Some(seed) = seed.or(file.seed) {
        cfg.seed = seed;
    }
    if !faults.is_empty() {
        cfg.faults = faults.iter().map(|s| Fault::parse(s)).collect::<lipderiv::Result<_>>()?;
    }
    if !matrices.is_empty() {
        cfg.frechet_matrices = matrices.to_vec();
    }
    validate_matrices(&cfg)?;
    let result = run_suite(&cfg);
    print!("{}", result.to_table());
    if let Some(path) = report {
        emit(Some(path), result.to_json().as_bytes())?;
    }
    Ok(result.exit_code())
}

/// Malformed matrices are input errors, not failed checks.
fn validate_matrices(cfg: &SuiteConfig) -> Result<()> {
    if !cfg.selected().contains(&Suite::Frechet) {
        return Ok(());
    }
    for m in &cfg.frechet_matrices {
        lipderiv::harness::parse_matrix(m).with_context(|| format!("--matrix '{m}'"))?;
    }
    Ok(())
}

fn envelope(
    file: &FileConfig,
    input: &InputArgs,
    kind: FieldKind,
    radius: Option<f64>,
    h: Option<f64>,
    dual: bool,
    out: Option<&Path>,
) -> Result<()> {
    let loaded = input.load(file)?;
    let h = h.or(file.h).ok_or_else(|| anyhow!("missing envelope scale: pass --h"))?;
    let resolution = loaded.space.resolution();
    if h <= resolution {
        bail!("h = {h} is not above the sample resolution {resolution}");
    }
    let field = match kind {
        FieldKind::Value => loaded.field()?,
        _ => {
            let which = match kind {
                FieldKind::Lip => Functional::LittleAtBreakpoints,
                FieldKind::Big => Functional::BigBelow,
                FieldKind::Loc => Functional::Loc,
                _ => Functional::LipUpper,
            };
            let r = radius.unwrap_or(1.5 * resolution);
            ScalarField::from_functional(&loaded.map()?, which, r)?
        }
    };
    let upper = baire_upper(&field, h)?;
    let bytes = if dual {
        let lower = baire_lower(&field, h)?;
        render(|b| io::write_scalar_fields(b, &[("lower", &lower), ("value", &field), ("upper", &upper)]))?
    } else {
        render(|b| io::write_scalar_field(b, &upper))?
    };
    emit(out, &bytes)
}

fn sets(
    file: &FileConfig,
    input: &InputArgs,
    grid: &GridArgs,
    gamma: Option<f64>,
    points: &[String],
    out: Option<&Path>,
) -> Result<()> {
    let gamma = gamma.or(file.gamma).ok_or_else(|| anyhow!("missing threshold: pass --gamma"))?;
    if gamma.is_nan() {
        bail!("--gamma must be a number");
    }
    let loaded = input.load(file)?;
    let map = loaded.map()?;
    let grid = grid.flags().resolve(file)?;
    let prof = profile_of(&map, points, &grid, &ProfileOptions::default())?;
    emit(out, &render(|b| io::write_sets(b, &prof, map.domain(), gamma))?)
}

fn zoo_cmd(action: &ZooAction) -> Result<()> {
    match action {
        ZooAction::List => {
            for name in zoo::NAMES {
                let e = zoo::entry(name, 0.1)?;
                println!("{name:<16} {}", e.description);
            }
            Ok(())
        }
        ZooAction::Export { name, resolution, out, values } => {
            let e = zoo::entry(name, *resolution)?;
            if e.map.domain().embedding().is_some() {
                return emit(Some(out), &render(|b| io::write_point_cloud(b, &e.map))?);
            }
            let values = values.as_deref().ok_or_else(|| anyhow!("'{name}' has no coordinates; pass --values too"))?;
            emit(Some(out), &render(|b| io::write_distance_matrix(b, e.map.domain()))?)?;
            emit(Some(values), &render(|b| io::write_values(b, &e.map))?)
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match &cli.command {
        Command::Profile { input, grid, liminf, points, out, report } => {
            profile(&file, input, grid, *liminf, points, out.as_deref(), report.as_deref())?
        }
        Command::Check { suite, seed, inject_fault, matrix, report } => {
            return check(&file, suite, *seed, inject_fault, matrix, report.as_deref());
        }
        Command::Envelope { input, field, radius, h, dual, out } => {
            envelope(&file, input, *field, *radius, *h, *dual, out.as_deref())?
        }
        Command::Sets { input, grid, gamma, points, out } => sets(&file, input, grid, *gamma, points, out.as_deref())?,
        Command::Zoo { action } => zoo_cmd(action)?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
