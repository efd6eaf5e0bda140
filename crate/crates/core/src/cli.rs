//! Command-line front end: `verify`, `sweep`, `state-info`, `check-paper-units`
//! and `relations`.
//!
//! Exit codes: 0 when every evaluated relation holds, 2 when any sample
//! violates a relation, 1 for usage, configuration and I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::duality::{
    entanglement_entropy, generalized_concurrence, info_content_s, LogBase, MeasureSet,
};
use crate::error::{Error, Result};
use crate::profile::{Bipartition, DimensionProfile};
use crate::relations::{
    evaluate_relation, list_relations, resolve_ids, run_ensemble, EnsembleReport, EnsembleSpec,
    EvalContext, RelationRecord, ReportStatus, RunConfig, Subject, DEFAULT_SAT_TOL, DEFAULT_TOL,
};
use crate::serial;
use crate::states::{named_profile, schmidt_pure, DensityMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "WPD_SEED";

const DEFAULT_DIMS: &str = "2x2";
const DEFAULT_ENSEMBLE: &str = "haar-pure";
const DEFAULT_SAMPLES: usize = 1000;
const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "wpd", version, about = "Wave-particle duality measures and relation checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate relations over a sampled ensemble and write a report.
    Verify(VerifyArgs),
    /// Evaluate relations across several dimension profiles and write CSV.
    Sweep(SweepArgs),
    /// Print every measure of one state and every applicable relation.
    StateInfo(StateInfoArgs),
    /// Compare unit conventions of the entanglement-information tradeoff.
    #[command(alias = "check-units")]
    CheckPaperUnits(UnitsArgs),
    /// List the relation catalog as JSON.
    Relations,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Default, Args)]
struct EnsembleArgs {
    /// Relation ids, comma separated, or "all".
    #[arg(long)]
    relations: Option<String>,
    /// Ensemble: haar-pure, ginibre[:k|:random], schmidt-sweep, named:<state>, unital-channel.
    #[arg(long)]
    ensemble: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = SEED_ENV)]
    seed: Option<u64>,
    /// 2 (bits) or e (nats).
    #[arg(long)]
    log_base: Option<LogBase>,
    /// Satisfaction slack.
    #[arg(long)]
    tol: Option<f64>,
    /// Saturation threshold on |margin|.
    #[arg(long)]
    sat_tol: Option<f64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; the report does not depend on this.
    #[arg(long)]
    threads: Option<usize>,
    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
    /// JSON file with any of the run fields; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    run: EnsembleArgs,
    /// Dimension profile such as 2x3.
    #[arg(long)]
    dims: Option<String>,
    /// Bipartition such as A|BC; defaults to the first party against the rest.
    #[arg(long)]
    cut: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    run: EnsembleArgs,
    /// Dimension profiles, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    dims: Vec<String>,
}

#[derive(Debug, Args)]
struct StateInfoArgs {
    /// Named state, schmidt:<w1,w2,...> weights, or a state record file.
    #[arg(long)]
    state: String,
    /// Profile for named or Schmidt states.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long)]
    cut: Option<String>,
    #[arg(long, default_value = "2")]
    log_base: LogBase,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_SAT_TOL)]
    sat_tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct UnitsArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Profile of the Haar ensemble.
    #[arg(long, default_value = DEFAULT_DIMS)]
    dims: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Config file contents; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    relations: Option<RelationList>,
    dims: Option<DimsList>,
    ensemble: Option<String>,
    samples: Option<usize>,
    seed: Option<u64>,
    log_base: Option<LogBase>,
    tol: Option<f64>,
    sat_tol: Option<f64>,
    cut: Option<String>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RelationList {
    One(String),
    Many(Vec<String>),
}

impl RelationList {
    fn into_vec(self) -> Vec<String> {
        match self {
            Self::One(s) => vec![s],
            Self::Many(v) => v,
        }
    }
}

type DimsList = RelationList;

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    match path {
        None => Ok(ConfigFile::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))
        }
    }
}

/// Run settings after merging flags, config file and defaults.
struct Resolved {
    relations: Vec<String>,
    ensemble: EnsembleSpec,
    samples: usize,
    seed: u64,
    log_base: LogBase,
    tol: f64,
    sat_tol: f64,
    out: Option<PathBuf>,
}

fn resolve(args: &EnsembleArgs, file: &mut ConfigFile) -> Result<Resolved> {
    let relations = match (&args.relations, file.relations.take()) {
        (Some(r), _) => vec![r.clone()],
        (None, Some(r)) => r.into_vec(),
        (None, None) => vec!["all".to_string()],
    };
    let relations = resolve_ids(&relations)?.into_iter().map(String::from).collect();
    let ensemble: EnsembleSpec = args
        .ensemble
        .clone()
        .or(file.ensemble.take())
        .unwrap_or_else(|| DEFAULT_ENSEMBLE.into())
        .parse()?;
    let samples = args.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES);
    if samples == 0 {
        return Err(Error::Config("samples must be at least 1".into()));
    }
    let tol = args.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
    let sat_tol = args.sat_tol.or(file.sat_tol).unwrap_or(DEFAULT_SAT_TOL);
    if !(tol >= 0.0 && sat_tol >= 0.0) {
        return Err(Error::Config("tolerances must be nonnegative".into()));
    }
    Ok(Resolved {
        relations,
        ensemble,
        samples,
        seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        log_base: args.log_base.or(file.log_base).unwrap_or_default(),
        tol,
        sat_tol,
        out: args.out.clone().or(file.out.take()),
    })
}

impl Resolved {
    fn run_config(&self, profile: DimensionProfile, cut: Option<Bipartition>) -> RunConfig {
        RunConfig {
            relations: self.relations.clone(),
            profile,
            ensemble: self.ensemble.clone(),
            samples: self.samples,
            seed: self.seed,
            log_base: self.log_base,
            tol: self.tol,
            sat_tol: self.sat_tol,
            cut,
        }
    }
}

/// Echo of the run configuration inside a report. Excludes the output path
/// and thread count so equal runs produce equal bytes.
#[derive(Debug, Serialize)]
struct ConfigEcho {
    command: &'static str,
    relations: Vec<String>,
    dims: Vec<String>,
    ensemble: String,
    samples: usize,
    seed: u64,
    log_base: LogBase,
    tol: f64,
    sat_tol: f64,
    cut: Option<String>,
}

#[derive(Debug, Serialize)]
struct FloatEnv {
    arch: &'static str,
    os: &'static str,
    float: &'static str,
    eigensolver: &'static str,
    rng: &'static str,
}

fn float_env() -> FloatEnv {
    FloatEnv {
        arch: std::env::consts::ARCH,
        os: std::env::consts::OS,
        float: "IEEE-754 binary64, round-to-nearest",
        eigensolver: "nalgebra SymmetricEigen (complex Hermitian)",
        rng: "ChaCha8, splitmix64 per-sample seeds",
    }
}

#[derive(Debug, Serialize)]
struct ReportFile<'a> {
    tool_version: &'static str,
    config: ConfigEcho,
    float_env: FloatEnv,
    reports: &'a [EnsembleReport],
    runtime_seconds: Option<f64>,
}

/// Parses arguments and runs one command. Never panics on bad input and
/// never calls `process::exit`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let target: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::StateInfo(a) => cmd_state_info(a, stdout),
        Command::CheckPaperUnits(a) => cmd_check_units(a, stdout),
        Command::Relations => cmd_relations(stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::Config("threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::Config(e.to_string())),
    }
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(bytes).map_err(Error::from),
    }
}

fn exit_code(reports: &[EnsembleReport]) -> Result<i32> {
    if reports.iter().all(|r| r.status == ReportStatus::Inapplicable) {
        let why: Vec<String> = reports
            .iter()
            .map(|r| format!("{} ({})", r.relation_id, r.note.as_deref().unwrap_or("no samples")))
            .collect();
        return Err(Error::Config(format!("no requested relation applies: {}", why.join("; "))));
    }
    Ok(if reports.iter().any(|r| r.violations > 0) { EXIT_VIOLATION } else { EXIT_OK })
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:e}")).unwrap_or_default()
}

fn reports_csv(reports: &[EnsembleReport], seed: u64) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "relation_id", "dims", "samples", "violations", "min_margin", "mean_margin",
        "max_margin", "saturation_count", "seed", "status",
    ])?;
    for r in reports {
        w.write_record([
            r.relation_id.clone(),
            r.dims.clone(),
            r.samples.to_string(),
            r.violations.to_string(),
            fmt_opt(r.min_margin),
            fmt_opt(r.mean_margin),
            fmt_opt(r.max_margin),
            r.saturation_count.to_string(),
            seed.to_string(),
            r.status.to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

fn report_json(echo: ConfigEcho, reports: &[EnsembleReport], runtime: Option<f64>) -> Result<Vec<u8>> {
    let file = ReportFile {
        tool_version: env!("CARGO_PKG_VERSION"),
        config: echo,
        float_env: float_env(),
        reports,
        runtime_seconds: runtime,
    };
    let mut bytes = serde_json::to_vec_pretty(&file)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn cmd_verify(args: VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mut file = load_config(args.run.config.as_deref())?;
    let r = resolve(&args.run, &mut file)?;
    let dims = match (args.dims, file.dims.take()) {
        (Some(d), _) => d,
        (None, Some(d)) => match d.into_vec().as_slice() {
            [one] => one.clone(),
            _ => return Err(Error::Config("verify takes a single dims profile".into())),
        },
        (None, None) => DEFAULT_DIMS.to_string(),
    };
    let profile = DimensionProfile::parse(&dims)?;
    let cut_spec = args.cut.or(file.cut.take());
    let cut = cut_spec.as_deref().map(|c| Bipartition::parse(c, &profile)).transpose()?;
    let format = args.format.or(file.format).unwrap_or(Format::Json);
    let config = r.run_config(profile.clone(), cut.clone());

    let start = Instant::now();
    let reports = with_threads(args.run.threads, || run_ensemble(&config))??;
    let runtime = args.run.timing.then(|| start.elapsed().as_secs_f64());

    let bytes = match format {
        Format::Json => report_json(
            ConfigEcho {
                command: "verify",
                relations: r.relations.clone(),
                dims: vec![profile.to_string()],
                ensemble: r.ensemble.to_string(),
                samples: r.samples,
                seed: r.seed,
                log_base: r.log_base,
                tol: r.tol,
                sat_tol: r.sat_tol,
                cut: cut.map(|c| c.display(&profile)),
            },
            &reports,
            runtime,
        )?,
        Format::Csv => reports_csv(&reports, r.seed)?,
    };
    emit(r.out.as_deref(), stdout, &bytes)?;
    exit_code(&reports)
}

fn cmd_sweep(args: SweepArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mut file = load_config(args.run.config.as_deref())?;
    let r = resolve(&args.run, &mut file)?;
    let dims: Vec<String> = if args.dims.is_empty() {
        file.dims.take().map(RelationList::into_vec).unwrap_or_default()
    } else {
        args.dims
    };
    let dims: Vec<String> = dims
        .iter()
        .flat_map(|d| d.split(','))
        .map(str::trim)
        .filter(|d| !d.is_empty())
        .map(String::from)
        .collect();
    if dims.is_empty() {
        return Err(Error::Config("sweep needs at least one dims profile".into()));
    }
    let profiles: Vec<DimensionProfile> =
        dims.iter().map(|d| DimensionProfile::parse(d)).collect::<Result<_>>()?;

    let mut reports = Vec::new();
    for profile in profiles {
        let config = r.run_config(profile, None);
        reports.extend(with_threads(args.run.threads, || run_ensemble(&config))??);
    }
    emit(r.out.as_deref(), stdout, &reports_csv(&reports, r.seed)?)?;
    Ok(if reports.iter().any(|r| r.violations > 0) { EXIT_VIOLATION } else { EXIT_OK })
}

/// Resolves a `--state` argument into a subject.
fn load_state(spec: &str, dims: Option<&str>) -> Result<Subject> {
    let profile = dims.map(DimensionProfile::parse).transpose()?;
    if let Some(weights) = spec.strip_prefix("schmidt:") {
        let w: Vec<f64> = weights
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad Schmidt weight '{x}'"))))
            .collect::<Result<_>>()?;
        let total: f64 = w.iter().sum();
        if w.iter().any(|&x| !(x >= 0.0)) || !(total > 0.0) {
            return Err(Error::InvalidState("Schmidt weights must be nonnegative with positive sum".into()));
        }
        let profile = match profile {
            Some(p) => p,
            None => DimensionProfile::new(vec![w.len().max(2); 2])?,
        };
        let coeffs: Vec<f64> = w.iter().map(|x| (x / total).sqrt()).collect();
        return Ok(Subject::from_pure(schmidt_pure(&coeffs, &profile)?));
    }
    match named_profile(spec, profile.as_ref()) {
        Ok((state, profile)) => {
            return Ok(match state.pure(&profile)? {
                Some(psi) => Subject::from_pure(psi),
                None => Subject::from_density(state.density(&profile)?),
            })
        }
        Err(Error::UnknownState(_)) => {}
        Err(e) => return Err(e),
    }
    let path = Path::new(spec);
    if path.is_file() {
        let rho = serial::from_record(&fs::read_to_string(path)?)?;
        if let Some(p) = profile {
            if p != *rho.profile() {
                return Err(Error::Config(format!(
                    "--dims {p} disagrees with the file's profile {}",
                    rho.profile()
                )));
            }
        }
        return Ok(Subject::from_density(rho));
    }
    Err(Error::UnknownState(spec.to_string()))
}

#[derive(Debug, Serialize)]
struct Measures {
    #[serde(flatten)]
    set: MeasureSet,
    info_s_squared: f64,
}

impl Measures {
    fn of(rho: &DensityMatrix, base: LogBase) -> Result<Self> {
        Ok(Self { set: MeasureSet::of(rho, base)?, info_s_squared: info_content_s(rho).powi(2) })
    }
}

#[derive(Debug, Serialize)]
struct Marginal {
    parties: String,
    dims: String,
    measures: Measures,
}

#[derive(Debug, Serialize)]
struct CutInfo {
    cut: String,
    sides: [Marginal; 2],
    entanglement_entropy: Option<f64>,
    concurrence: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Skipped {
    relation_id: &'static str,
    reason: String,
}

#[derive(Debug, Serialize)]
struct StateInfo {
    state: String,
    dims: String,
    pure: bool,
    fingerprint: String,
    measures: Measures,
    bipartite: Option<CutInfo>,
    marginals: Vec<Marginal>,
    context: &'static str,
    relations: Vec<RelationRecord>,
    inapplicable: Vec<Skipped>,
}

/// Largest party count for which every marginal is listed.
const MAX_MARGINAL_PARTIES: usize = 4;

fn marginal(rho: &DensityMatrix, keep: &[usize], base: LogBase) -> Result<Marginal> {
    let p = rho.profile();
    let reduced = rho.reduce(keep)?;
    Ok(Marginal {
        parties: keep.iter().map(|&i| p.labels()[i].as_str()).collect(),
        dims: reduced.profile().to_string(),
        measures: Measures::of(&reduced, base)?,
    })
}

fn cmd_state_info(args: StateInfoArgs, stdout: &mut dyn Write) -> Result<i32> {
    let subject = load_state(&args.state, args.dims.as_deref())?;
    let rho = subject.density();
    let profile = rho.profile().clone();
    let base = args.log_base;
    let cut = match &args.cut {
        Some(c) => Some(Bipartition::parse(c, &profile)?),
        None if profile.parties() >= 2 => Some(profile.default_cut()?),
        None => None,
    };
    let bipartite = cut
        .as_ref()
        .map(|c| -> Result<CutInfo> {
            let pure = subject.pure();
            Ok(CutInfo {
                cut: c.display(&profile),
                sides: [marginal(rho, c.left(), base)?, marginal(rho, c.right(), base)?],
                entanglement_entropy: pure.map(|psi| entanglement_entropy(psi, c, base)).transpose()?,
                concurrence: pure.map(|psi| generalized_concurrence(psi, c)).transpose()?,
            })
        })
        .transpose()?;
    let parties = profile.parties();
    let mut marginals = Vec::new();
    if (2..=MAX_MARGINAL_PARTIES).contains(&parties) {
        for mask in 1..(1usize << parties) - 1 {
            let keep: Vec<usize> = (0..parties).filter(|i| mask >> (parties - 1 - i) & 1 == 1).collect();
            marginals.push(marginal(rho, &keep, base)?);
        }
        marginals.sort_by(|a, b| a.parties.len().cmp(&b.parties.len()).then(a.parties.cmp(&b.parties)));
    }

    let sigma = DensityMatrix::maximally_mixed(profile.clone());
    let channel = KrausChannel::fully_depolarizing(rho.dim());
    let ctx = EvalContext {
        subject: &subject,
        sigma: Some(&sigma),
        channel: Some(&channel),
        cut: cut.as_ref(),
        base,
        tol: args.tol,
        sat_tol: args.sat_tol,
    };
    let mut relations = Vec::new();
    let mut inapplicable = Vec::new();
    for rel in list_relations() {
        match evaluate_relation(rel.id, &ctx) {
            Ok(rec) => relations.push(rec),
            Err(Error::Inapplicable { reason, .. }) => inapplicable.push(Skipped { relation_id: rel.id, reason }),
            Err(e) => return Err(e),
        }
    }
    let info = StateInfo {
        state: args.state.clone(),
        dims: profile.to_string(),
        pure: subject.pure().is_some(),
        fingerprint: serial::fingerprint(rho),
        measures: Measures::of(rho, base)?,
        bipartite,
        marginals,
        context: "second state I/n, channel fully depolarizing",
        relations,
        inapplicable,
    };
    let mut bytes = serde_json::to_vec_pretty(&info)?;
    bytes.push(b'\n');
    emit(args.out.as_deref(), stdout, &bytes)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct Reading {
    reading: &'static str,
    entropy_base: LogBase,
    constant: f64,
    lhs: f64,
    rhs: f64,
    margin: f64,
    satisfied: bool,
}

#[derive(Debug, Serialize)]
struct UnitsReport {
    state: &'static str,
    product_state: Vec<Reading>,
    ensemble: Vec<EnsembleReport>,
    config: ConfigEcho,
}

fn cmd_check_units(args: UnitsArgs, stdout: &mut dyn Write) -> Result<i32> {
    let profile = DimensionProfile::parse("2x2")?;
    let (state, _) = named_profile("basis:0", Some(&profile))?;
    let subject = Subject::from_pure(state.pure(&profile)?.expect("basis state is pure"));
    let readings = [
        ("literal: nats entropy, constant 1/(2 ln 2)", "R12-literal", LogBase::E, LogBase::Two.pinsker_constant()),
        ("base two: bits entropy, constant 1/(2 ln 2)", "R12", LogBase::Two, LogBase::Two.pinsker_constant()),
        ("consistent nats: nats entropy, constant 1/2", "R12", LogBase::E, LogBase::E.pinsker_constant()),
    ];
    let product_state = readings
        .into_iter()
        .map(|(reading, id, base, constant)| {
            let mut ctx = EvalContext::new(&subject);
            ctx.base = base;
            let rec = evaluate_relation(id, &ctx)?;
            Ok(Reading {
                reading,
                entropy_base: if id == "R12-literal" { LogBase::E } else { base },
                constant,
                lhs: rec.lhs_value,
                rhs: rec.rhs_value,
                margin: rec.margin,
                satisfied: rec.satisfied,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let ens_profile = DimensionProfile::parse(&args.dims)?;
    let config = RunConfig::new(
        vec!["R12-literal".into(), "R12".into()],
        ens_profile.clone(),
        EnsembleSpec::HaarPure,
        args.samples,
        args.seed,
    );
    let ensemble = run_ensemble(&config)?;
    let report = UnitsReport {
        state: "|00>",
        product_state,
        ensemble,
        config: ConfigEcho {
            command: "check-paper-units",
            relations: config.relations.clone(),
            dims: vec![ens_profile.to_string()],
            ensemble: config.ensemble.to_string(),
            samples: config.samples,
            seed: config.seed,
            log_base: config.log_base,
            tol: config.tol,
            sat_tol: config.sat_tol,
            cut: None,
        },
    };
    let mut bytes = serde_json::to_vec_pretty(&report)?;
    bytes.push(b'\n');
    emit(args.out.as_deref(), stdout, &bytes)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct RelationListing {
    id: &'static str,
    description: &'static str,
    statement: &'static str,
    direction: &'static str,
    tags: Vec<&'static str>,
    saturation_note: &'static str,
}

fn cmd_relations(stdout: &mut dyn Write) -> Result<i32> {
    let listing: Vec<RelationListing> = list_relations()
        .iter()
        .map(|r| RelationListing {
            id: r.id,
            description: r.description,
            statement: r.statement,
            direction: r.direction.symbol(),
            tags: r.tags(),
            saturation_note: r.saturation_note,
        })
        .collect();
    let mut bytes = serde_json::to_vec_pretty(&listing)?;
    bytes.push(b'\n');
    stdout.write_all(&bytes)?;
    Ok(EXIT_OK)
}
