use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::catalog::{find_relation, Requirement};
use super::{evaluate_relation, EvalContext, Subject, DEFAULT_SAT_TOL, DEFAULT_TOL, WITNESS_CAP};
use crate::channels::{random_unital, KrausChannel};
use crate::duality::LogBase;
use crate::error::{Error, Result};
use crate::profile::{Bipartition, DimensionProfile};
use crate::rng::{derive_seed, rng_from_seed};
use crate::serial;
use crate::states::{ginibre_mixed, haar_pure, named_pure, named_state, schmidt_pure, DensityMatrix};

/// Seed streams inside one sample.
const STREAM_STATE: u64 = 0;
const STREAM_SIGMA: u64 = 1;
const STREAM_CHANNEL: u64 = 2;
const STREAM_RANK: u64 = 3;

/// Largest number of Kraus unitaries in a random unital channel.
const MAX_UNITAL_TERMS: usize = 4;

/// How samples are drawn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnsembleSpec {
    HaarPure,
    /// Ginibre mixed states; `None` means full rank.
    Ginibre(Option<usize>),
    /// Ginibre with rank uniform in `1..=n`.
    GinibreRandomRank,
    /// Bipartite pure states on a grid of Schmidt weights, then Haar samples.
    SchmidtSweep,
    /// The same named state for every sample.
    Named(String),
    /// Random-rank Ginibre states, each paired with a random unital channel.
    UnitalChannel,
}

impl FromStr for EnsembleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("haar-pure", None) => Ok(Self::HaarPure),
            ("ginibre", None) => Ok(Self::Ginibre(None)),
            ("ginibre", Some("random")) => Ok(Self::GinibreRandomRank),
            ("ginibre", Some(k)) => k
                .parse::<usize>()
                .map(|k| Self::Ginibre(Some(k)))
                .map_err(|_| Error::Config(format!("bad Ginibre rank '{k}'"))),
            ("schmidt-sweep", None) => Ok(Self::SchmidtSweep),
            ("named", Some(name)) if !name.is_empty() => Ok(Self::Named(name.to_string())),
            ("unital-channel", None) => Ok(Self::UnitalChannel),
            _ => Err(Error::Config(format!("unknown ensemble '{s}'"))),
        }
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::HaarPure => f.write_str("haar-pure"),
            Self::Ginibre(None) => f.write_str("ginibre"),
            Self::Ginibre(Some(k)) => write!(f, "ginibre:{k}"),
            Self::GinibreRandomRank => f.write_str("ginibre:random"),
            Self::SchmidtSweep => f.write_str("schmidt-sweep"),
            Self::Named(n) => write!(f, "named:{n}"),
            Self::UnitalChannel => f.write_str("unital-channel"),
        }
    }
}

impl Serialize for EnsembleSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EnsembleSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One ensemble run over one profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub relations: Vec<String>,
    pub profile: DimensionProfile,
    pub ensemble: EnsembleSpec,
    pub samples: usize,
    pub seed: u64,
    pub log_base: LogBase,
    pub tol: f64,
    pub sat_tol: f64,
    pub cut: Option<Bipartition>,
}

impl RunConfig {
    pub fn new(relations: Vec<String>, profile: DimensionProfile, ensemble: EnsembleSpec, samples: usize, seed: u64) -> Self {
        Self {
            relations,
            profile,
            ensemble,
            samples,
            seed,
            log_base: LogBase::Two,
            tol: DEFAULT_TOL,
            sat_tol: DEFAULT_SAT_TOL,
            cut: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for ReportStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Inapplicable => "inapplicable",
        })
    }
}

/// A violating sample, reproducible from its seed or its state record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub sample_index: usize,
    pub sample_seed: u64,
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub relation_id: String,
    pub dims: String,
    pub ensemble: String,
    pub status: ReportStatus,
    pub samples: usize,
    /// Samples on which the relation could not be evaluated.
    pub inapplicable: usize,
    pub violations: usize,
    pub min_margin: Option<f64>,
    pub mean_margin: Option<f64>,
    pub max_margin: Option<f64>,
    pub saturation_count: usize,
    pub witnesses: Vec<Witness>,
    pub note: Option<String>,
}

struct Sample {
    subject: Subject,
    sigma: Option<DensityMatrix>,
    channel: Option<KrausChannel>,
}

enum Outcome {
    Evaluated { margin: f64, satisfied: bool, saturated: bool, witness: Option<Witness> },
    Skipped(String),
}

/// Simplex grid with `g` steps over `m` weights, in lexicographic order.
fn simplex_points(m: usize, g: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(m - 1, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, g, &mut Vec::with_capacity(m), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Grid used by the Schmidt sweep: the finest resolution whose point count
/// fits in half the sample budget.
fn schmidt_grid(m: usize, samples: usize) -> Vec<Vec<usize>> {
    let budget = (samples / 2) as u128;
    let mut g = 0;
    while binomial(g + 1 + m - 1, m - 1) <= budget {
        g += 1;
    }
    if g == 0 {
        return Vec::new();
    }
    simplex_points(m, g)
}

struct Sampler {
    config: RunConfig,
    grid: Vec<Vec<usize>>,
    needs_sigma: bool,
    needs_channel: bool,
}

impl Sampler {
    fn new(config: &RunConfig) -> Result<Self> {
        let profile = &config.profile;
        let mut needs_sigma = false;
        let mut needs_channel = matches!(config.ensemble, EnsembleSpec::UnitalChannel);
        for id in &config.relations {
            match find_relation(id)?.requirement {
                Requirement::Pair => needs_sigma = true,
                Requirement::Channel => needs_channel = true,
                _ => {}
            }
        }
        let grid = match &config.ensemble {
            EnsembleSpec::SchmidtSweep => {
                if profile.parties() != 2 {
                    return Err(Error::Config(format!(
                        "schmidt-sweep needs a bipartite profile, got {profile}"
                    )));
                }
                schmidt_grid(profile.dims()[0].min(profile.dims()[1]), config.samples)
            }
            EnsembleSpec::Ginibre(Some(k)) if *k == 0 || *k > profile.total_dim() => {
                return Err(Error::RankOutOfBounds { rank: *k, dim: profile.total_dim() });
            }
            EnsembleSpec::Named(name) => {
                named_state(name, Some(profile))?;
                Vec::new()
            }
            _ => Vec::new(),
        };
        Ok(Self { config: config.clone(), grid, needs_sigma, needs_channel })
    }

    fn random_rank(&self, seed: u64) -> usize {
        rng_from_seed(derive_seed(seed, STREAM_RANK)).gen_range(1..=self.config.profile.total_dim())
    }

    fn draw(&self, index: usize, seed: u64) -> Result<Sample> {
        let profile = &self.config.profile;
        let n = profile.total_dim();
        let state_seed = derive_seed(seed, STREAM_STATE);
        let subject = match &self.config.ensemble {
            EnsembleSpec::HaarPure => Subject::from_pure(haar_pure(profile, state_seed)),
            EnsembleSpec::Ginibre(k) => {
                Subject::from_density(ginibre_mixed(profile, k.unwrap_or(n), state_seed)?)
            }
            EnsembleSpec::GinibreRandomRank | EnsembleSpec::UnitalChannel => {
                Subject::from_density(ginibre_mixed(profile, self.random_rank(seed), state_seed)?)
            }
            EnsembleSpec::SchmidtSweep => match self.grid.get(index) {
                Some(point) => {
                    let g: usize = point.iter().sum();
                    let coeffs: Vec<f64> = point.iter().map(|&k| (k as f64 / g as f64).sqrt()).collect();
                    Subject::from_pure(schmidt_pure(&coeffs, profile)?)
                }
                None => Subject::from_pure(haar_pure(profile, state_seed)),
            },
            EnsembleSpec::Named(name) => match named_pure(name, Some(profile))? {
                Some(psi) => Subject::from_pure(psi),
                None => Subject::from_density(named_state(name, Some(profile))?),
            },
        };
        let sigma = if self.needs_sigma {
            Some(ginibre_mixed(profile, n, derive_seed(seed, STREAM_SIGMA))?)
        } else {
            None
        };
        let channel = if self.needs_channel {
            let mut rng = rng_from_seed(derive_seed(seed, STREAM_CHANNEL));
            let terms = rng.gen_range(1..=MAX_UNITAL_TERMS);
            Some(random_unital(n, terms, rng.gen())?)
        } else {
            None
        };
        Ok(Sample { subject, sigma, channel })
    }

    fn evaluate(&self, index: usize) -> Result<Vec<Outcome>> {
        let seed = derive_seed(self.config.seed, index as u64);
        let sample = self.draw(index, seed)?;
        let ctx = EvalContext {
            subject: &sample.subject,
            sigma: sample.sigma.as_ref(),
            channel: sample.channel.as_ref(),
            cut: self.config.cut.as_ref(),
            base: self.config.log_base,
            tol: self.config.tol,
            sat_tol: self.config.sat_tol,
        };
        self.config
            .relations
            .iter()
            .map(|id| match evaluate_relation(id, &ctx) {
                Ok(rec) => Ok(Outcome::Evaluated {
                    margin: rec.margin,
                    satisfied: rec.satisfied,
                    saturated: rec.saturated,
                    witness: (!rec.satisfied).then(|| Witness {
                        sample_index: index,
                        sample_seed: seed,
                        check: rec.check,
                        lhs: rec.lhs_value,
                        rhs: rec.rhs_value,
                        margin: rec.margin,
                        state: serial::to_record(sample.subject.density()),
                    }),
                }),
                Err(Error::Inapplicable { reason, .. }) => Ok(Outcome::Skipped(reason)),
                Err(e) => Err(e),
            })
            .collect()
    }
}

/// Evaluates every requested relation on `samples` draws. Samples are drawn in
/// parallel but aggregated in index order, so output does not depend on the
/// thread count.
pub fn run_ensemble(config: &RunConfig) -> Result<Vec<EnsembleReport>> {
    let mut config = config.clone();
    config.relations = config
        .relations
        .iter()
        .map(|id| find_relation(id).map(|r| r.id.to_string()))
        .collect::<Result<_>>()?;
    if config.samples == 0 {
        return Err(Error::Config("samples must be positive".into()));
    }
    if let Some(cut) = &config.cut {
        Bipartition::new(cut.left().to_vec(), cut.right().to_vec(), config.profile.parties())?;
    }
    let sampler = Sampler::new(&config)?;
    let outcomes: Vec<Vec<Outcome>> = (0..config.samples)
        .into_par_iter()
        .map(|i| sampler.evaluate(i))
        .collect::<Result<_>>()?;

    let reports = config
        .relations
        .iter()
        .enumerate()
        .map(|(r, id)| {
            let mut margins = Vec::new();
            let mut violations = 0;
            let mut saturation_count = 0;
            let mut inapplicable = 0;
            let mut witnesses = Vec::new();
            let mut reason = None;
            for per_sample in &outcomes {
                match &per_sample[r] {
                    Outcome::Evaluated { margin, satisfied, saturated, witness } => {
                        margins.push(*margin);
                        if !satisfied {
                            violations += 1;
                        }
                        if *saturated {
                            saturation_count += 1;
                        }
                        if let Some(w) = witness {
                            if witnesses.len() < WITNESS_CAP {
                                witnesses.push(w.clone());
                            }
                        }
                    }
                    Outcome::Skipped(why) => {
                        inapplicable += 1;
                        reason.get_or_insert_with(|| why.clone());
                    }
                }
            }
            let status = if margins.is_empty() {
                ReportStatus::Inapplicable
            } else if violations > 0 {
                ReportStatus::Fail
            } else {
                ReportStatus::Pass
            };
            let (min, max) = margins
                .iter()
                .fold((None::<f64>, None::<f64>), |(lo, hi), &m| {
                    (Some(lo.map_or(m, |x| x.min(m))), Some(hi.map_or(m, |x| x.max(m))))
                });
            let mean = (!margins.is_empty()).then(|| margins.iter().sum::<f64>() / margins.len() as f64);
            let note = reason.map(|why| format!("{inapplicable} sample(s) inapplicable: {why}"));
            EnsembleReport {
                relation_id: id.clone(),
                dims: config.profile.to_string(),
                ensemble: config.ensemble.to_string(),
                status,
                samples: config.samples,
                inapplicable,
                violations,
                min_margin: min,
                mean_margin: mean,
                max_margin: max,
                saturation_count,
                witnesses,
                note,
            }
        })
        .collect();
    Ok(reports)
}
