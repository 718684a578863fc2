//! `entkit`: solvers, the Stein simulator and the verification batteries
//! from the command line.
//!
//! Exit codes: 0 success, 1 violations found, 2 usage or input validation,
//! 3 numerical failure.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use entkit::harness::{self, CheckReport, HarnessConfig, DEFAULT_RANDOM_POVMS};
use entkit::io::{density_to_json, read_density, read_povm, PovmFile};
use entkit::matqi::{isotropic, max_entangled, trace_norm, DensityMatrix};
use entkit::povm::{computational_basis_onelocc, default_onelocc_family, OneWayLoccPovm, Povm};
use entkit::sepopt::{fw_measured_ree_with, fw_ree_with, FwOptions, FwResult, DEFAULT_MAX_ITERS, DEFAULT_TOL_GAP};
use entkit::steinsim::{stein_csv, stein_sweep};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

/// Errors from reading or validating inputs are usage errors.
fn input(e: entkit::Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// Errors raised after the inputs were accepted.
fn numeric(e: entkit::Error) -> CliError {
    match e {
        entkit::Error::Domain(_) | entkit::Error::Shape(_) | entkit::Error::EnumerationCap(_) => {
            CliError::Usage(e.to_string())
        }
        other => CliError::Numeric(other.to_string()),
    }
}

#[derive(Parser)]
#[command(name = "entkit", version, about = "Entanglement measures from restricted measurements")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "ENTKIT_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measured relative entropy of Φ_d against the boundary isotropic state.
    PhiTable(PhiArgs),
    /// Relative entropy of entanglement with respect to separable states.
    Ree(ReeArgs),
    /// Separable-set relative entropy of the outcome distribution of one POVM.
    MeasuredRee(MeasuredReeArgs),
    /// One-way LOCC hypothesis-testing simulation over a range of copy counts.
    Stein(SteinArgs),
    /// Run one verification battery.
    Harness(HarnessArgs),
    /// Continuity bounds for a given pair of states.
    Continuity(ContinuityArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PhiArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=6))]
    dmax: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = DEFAULT_TOL_GAP)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: usize,
    #[arg(long)]
    seed: u64,
}

impl SolverArgs {
    fn options(&self) -> Result<FwOptions, CliError> {
        if !(self.tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        Ok(FwOptions::new(self.tol, self.max_iters, self.seed))
    }
}

#[derive(Args)]
struct ReeArgs {
    /// State JSON file.
    #[arg(long)]
    state: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct MeasuredReeArgs {
    #[arg(long)]
    state: PathBuf,
    /// POVM JSON file.
    #[arg(long)]
    povm: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SteinPreset {
    /// Φ₂ against isotropic(2, 1/3) with the computational-basis measurement.
    QubitPair,
}

#[derive(Args)]
struct SteinArgs {
    #[arg(long, value_enum, conflicts_with_all = ["rho", "sigma", "povm"])]
    preset: Option<SteinPreset>,
    #[arg(long, required_unless_present = "preset")]
    rho: Option<PathBuf>,
    #[arg(long, required_unless_present = "preset")]
    sigma: Option<PathBuf>,
    /// ONE_LOCC POVM JSON file.
    #[arg(long, required_unless_present = "preset")]
    povm: Option<PathBuf>,
    /// Largest copy count; runs n = 1..=n-max.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Battery {
    #[value(alias = "phi-table")]
    Phi,
    Ssa,
    ClassicalExtension,
    Pinsker,
    Continuity,
    DonaldHorodecki,
    PureState,
}

#[derive(Args)]
struct HarnessArgs {
    #[arg(value_enum)]
    battery: Battery,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Comma-separated subsystem dimensions; the battery default when absent.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(usize))]
    dims: Option<Vec<usize>>,
    /// Required by every randomized battery.
    #[arg(long)]
    seed: Option<u64>,
    /// Largest dimension for the phi battery.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(2..=6))]
    dmax: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    ensemble_size: u64,
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.05,0.1")]
    eps: Vec<f64>,
    /// Random one-way LOCC POVMs added to the default family.
    #[arg(long, default_value_t = DEFAULT_RANDOM_POVMS)]
    random_povms: usize,
    #[arg(long)]
    fw_tol: Option<f64>,
    #[arg(long)]
    fw_max_iters: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ContinuityArgs {
    #[arg(long)]
    rho: PathBuf,
    #[arg(long)]
    rho2: PathBuf,
    /// Extra one-way LOCC POVM files appended to the default family.
    #[arg(long)]
    povm: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_RANDOM_POVMS)]
    random_povms: usize,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

fn emit(output: &Output, text: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn load_state(path: &Path) -> Result<DensityMatrix, CliError> {
    read_density(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_povm(path: &Path) -> Result<PovmFile, CliError> {
    read_povm(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn bipartite(rho: &DensityMatrix) -> Result<(), CliError> {
    if rho.dims().len() != 2 {
        return Err(CliError::Usage(format!("state must be bipartite, got dims {:?}", rho.dims())));
    }
    Ok(())
}

fn fw_json(r: &FwResult) -> serde_json::Value {
    let mut v = r.to_json();
    let (lo, hi) = r.interval();
    v["interval"] = json!([lo, hi]);
    v["sigma"] = density_to_json(&r.sigma.to_density());
    v
}

fn cmd_phi_table(a: &PhiArgs) -> Result<u8, CliError> {
    let dmax = a.dmax as usize;
    let (text, pass) = match a.format {
        Format::Csv => {
            let rows = harness::phi_table(dmax).map_err(numeric)?;
            (harness::phi_table_csv(&rows), rows.iter().all(|r| r.pass))
        }
        Format::Json => {
            let r = harness::check_phi_table(dmax).map_err(numeric)?;
            (pretty(&r.to_json()), r.passed())
        }
    };
    emit(&a.output, &text)?;
    Ok(if pass { 0 } else { 1 })
}

fn cmd_ree(a: &ReeArgs) -> Result<u8, CliError> {
    let rho = load_state(&a.state)?;
    bipartite(&rho)?;
    let r = fw_ree_with(&rho, &a.solver.options()?).map_err(numeric)?;
    emit(&a.output, &pretty(&fw_json(&r)))?;
    Ok(0)
}

fn cmd_measured_ree(a: &MeasuredReeArgs) -> Result<u8, CliError> {
    let rho = load_state(&a.state)?;
    bipartite(&rho)?;
    let m = load_povm(&a.povm)?.to_povm().map_err(input)?;
    let r = fw_measured_ree_with(&rho, &m, &a.solver.options()?).map_err(numeric)?;
    let mut v = fw_json(&r);
    v["povm_class"] = json!(m.class());
    emit(&a.output, &pretty(&v))?;
    Ok(0)
}

fn stein_inputs(a: &SteinArgs) -> Result<(OneWayLoccPovm, DensityMatrix, DensityMatrix), CliError> {
    if a.preset == Some(SteinPreset::QubitPair) {
        let m = computational_basis_onelocc(2, 2).map_err(numeric)?;
        let rho = max_entangled(2).map_err(numeric)?;
        let sigma = isotropic(2, 1.0 / 3.0).map_err(numeric)?;
        return Ok((m, rho, sigma));
    }
    let missing = |flag: &str| CliError::Usage(format!("missing {flag}"));
    let rho = load_state(a.rho.as_deref().ok_or_else(|| missing("--rho"))?)?;
    let sigma = load_state(a.sigma.as_deref().ok_or_else(|| missing("--sigma"))?)?;
    let povm_path = a.povm.as_deref().ok_or_else(|| missing("--povm"))?;
    let m = match load_povm(povm_path)? {
        PovmFile::OneLocc(m) => m,
        PovmFile::Flat(_) => {
            return Err(CliError::Usage(format!("{}: stein needs a ONE_LOCC POVM file", povm_path.display())))
        }
    };
    if rho.dims() != sigma.dims() {
        return Err(CliError::Usage(format!("rho dims {:?} differ from sigma dims {:?}", rho.dims(), sigma.dims())));
    }
    Ok((m, rho, sigma))
}

fn cmd_stein(a: &SteinArgs) -> Result<u8, CliError> {
    if !(0.0..1.0).contains(&a.alpha) {
        return Err(CliError::Usage(format!("--alpha must lie in [0, 1), got {}", a.alpha)));
    }
    let (m, rho, sigma) = stein_inputs(a)?;
    let ns: Vec<usize> = (1..=a.n_max as usize).collect();
    let reports = stein_sweep(&m, &rho, &sigma, &ns, a.alpha).map_err(numeric)?;
    let text = match a.format {
        Format::Csv => stein_csv(&reports),
        Format::Json => pretty(&serde_json::to_value(&reports).expect("reports serialize")),
    };
    emit(&a.output, &text)?;
    Ok(0)
}

fn default_dims(b: Battery) -> Vec<usize> {
    match b {
        Battery::Ssa | Battery::Pinsker => vec![2, 2, 2],
        Battery::PureState => vec![3, 3],
        _ => vec![2, 2],
    }
}

fn cmd_harness(a: &HarnessArgs) -> Result<u8, CliError> {
    let samples = a.samples as usize;
    let dims = a.dims.clone().unwrap_or_else(|| default_dims(a.battery));
    let mut cfg = HarnessConfig::default();
    if let Some(t) = a.fw_tol {
        if !(t > 0.0) {
            return Err(CliError::Usage(format!("--fw-tol must be positive, got {t}")));
        }
        cfg.fw_tol = t;
    }
    if let Some(n) = a.fw_max_iters {
        cfg.fw_max_iters = n;
    }
    let seed = || a.seed.ok_or_else(|| CliError::Usage("--seed is required for randomized batteries".into()));
    let family = |seed: u64| -> Result<Vec<Povm>, CliError> {
        if dims.len() < 2 {
            return Err(CliError::Usage(format!("dims {dims:?} need at least two subsystems")));
        }
        default_onelocc_family([dims[0], dims[1]], a.random_povms, seed).map_err(numeric)
    };
    let report: CheckReport = match a.battery {
        Battery::Phi => harness::check_phi_table(a.dmax as usize).map_err(numeric)?,
        Battery::Ssa => {
            let s = seed()?;
            harness::check_ssa_strengthening_with(samples, &dims, &family(s)?, s, &cfg).map_err(numeric)?
        }
        Battery::ClassicalExtension => {
            harness::check_classical_extension_bound_with(samples, &dims, a.ensemble_size as usize, seed()?, &cfg)
                .map_err(numeric)?
        }
        Battery::Pinsker => {
            let s = seed()?;
            harness::check_pinsker_chain_with(samples, &dims, &family(s)?, s, &cfg).map_err(numeric)?
        }
        Battery::Continuity => {
            let s = seed()?;
            harness::check_asymptotic_continuity_with(samples, &dims, &family(s)?, &a.eps, s, &cfg).map_err(numeric)?
        }
        Battery::DonaldHorodecki => harness::check_donald_horodecki_with(samples, &dims, seed()?, &cfg).map_err(numeric)?,
        Battery::PureState => harness::check_pure_state_entropy_with(samples, &dims, seed()?, &cfg).map_err(numeric)?,
    };
    let text = match a.format {
        Format::Json => pretty(&report.to_json()),
        Format::Csv => harness::summary_csv(std::slice::from_ref(&report)),
    };
    emit(&a.output, &text)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_continuity(a: &ContinuityArgs) -> Result<u8, CliError> {
    let rho = load_state(&a.rho)?;
    let rho2 = load_state(&a.rho2)?;
    bipartite(&rho)?;
    if rho.dims() != rho2.dims() {
        return Err(CliError::Usage(format!("dims differ: {:?} vs {:?}", rho.dims(), rho2.dims())));
    }
    let dims = [rho.dims()[0], rho.dims()[1]];
    let mut family = default_onelocc_family(dims, a.random_povms, a.seed).map_err(numeric)?;
    for p in &a.povm {
        let m = load_povm(p)?.to_povm().map_err(input)?;
        if !m.class().is_one_way_locc() {
            return Err(CliError::Usage(format!("{}: family members must be LO or ONE_LOCC", p.display())));
        }
        family.push(m);
    }
    let opts = FwOptions { record_trace: false, ..FwOptions::new(a.tol, a.max_iters, a.seed) };
    let k = rho.dim();
    let one_over_e = (-1.0f64).exp();

    let eps = entkit::povm::measured_distance(&family, &rho, &rho2).map_err(numeric)?;
    let (v1, c1, _) = harness::family_measured_ree(&rho, &family, &opts).map_err(numeric)?;
    let (v2, c2, _) = harness::family_measured_ree(&rho2, &family, &opts).map_err(numeric)?;
    let measured = if eps > 0.0 && eps <= one_over_e {
        let bound = harness::continuity_bound(eps, k);
        let diff = (v1 - v2).abs();
        let slack = (v1 - c1) + (v2 - c2);
        json!({ "eps": eps, "bound": bound, "value_1": v1, "value_2": v2, "difference": diff,
                "slack": slack, "pass": diff <= bound + slack + harness::TOL_CHECK })
    } else {
        json!({ "eps": eps, "skipped": "measured distance outside (0, 1/e]" })
    };

    let delta = trace_norm(&(rho.matrix() - rho2.matrix())).map_err(numeric)?;
    let dh = if delta <= one_over_e {
        let r1 = fw_ree_with(&rho, &opts).map_err(numeric)?;
        let r2 = fw_ree_with(&rho2, &opts).map_err(numeric)?;
        let bound = harness::donald_horodecki_bound(delta, dims).map_err(numeric)?;
        let diff = (r1.value - r2.value).abs();
        let slack = r1.duality_gap + r2.duality_gap;
        json!({ "delta": delta, "bound": bound, "ree_1": r1.value, "ree_2": r2.value, "difference": diff,
                "slack": slack, "pass": diff <= bound + slack + harness::TOL_CHECK })
    } else {
        json!({ "delta": delta, "skipped": "trace-norm distance above 1/e" })
    };
    let failed = [&measured, &dh].iter().any(|v| v.get("pass") == Some(&json!(false)));
    let v = json!({ "seed": a.seed, "family_size": family.len(), "measured": measured, "donald_horodecki": dh,
                    "k": k });
    emit(&a.output, &pretty(&v))?;
    Ok(if failed { 1 } else { 0 })
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))?;
    }
    match &cli.command {
        Command::PhiTable(a) => cmd_phi_table(a),
        Command::Ree(a) => cmd_ree(a),
        Command::MeasuredRee(a) => cmd_measured_ree(a),
        Command::Stein(a) => cmd_stein(a),
        Command::Harness(a) => cmd_harness(a),
        Command::Continuity(a) => cmd_continuity(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("entkit: {e}");
            ExitCode::from(e.code())
        }
    }
}
