//! Scalar measures: predictability, visibility, the Hilbert-Schmidt and
//! trace-distance information contents, entropies, concurrences, and the
//! Pinsker-type quantities that bound relative entropy by trace distance.
//!
//! Predictability and visibility are basis dependent; they are always taken in
//! the computational basis of the stored matrix.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eig, HermitianOperator, DEFAULT_RANK_TOL};
use crate::profile::Bipartition;
use crate::states::{DensityMatrix, PureState, TwoQubitAmplitudes};

/// Two measures of the same quantity computed along different routes must agree to this.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Logarithm base for every entropy-like quantity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogBase {
    /// Bits.
    #[default]
    #[serde(rename = "2")]
    Two,
    /// Nats.
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    /// `ln(base)`.
    pub fn ln_base(self) -> f64 {
        match self {
            LogBase::Two => LN_2,
            LogBase::E => 1.0,
        }
    }

    /// Constant `c` in `D(rho||sigma) >= c ||rho - sigma||_1^2` with `D` in this base:
    /// `1/(2 ln 2)` in bits, `1/2` in nats.
    pub fn pinsker_constant(self) -> f64 {
        0.5 / self.ln_base()
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "2" | "two" | "bits" => Ok(LogBase::Two),
            "e" | "nats" => Ok(LogBase::E),
            other => Err(Error::Parse(format!("log base must be 2 or e, got '{other}'"))),
        }
    }
}

/// The measures of one state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureSet {
    pub dim: usize,
    pub predictability: f64,
    pub visibility: f64,
    pub info_s: f64,
    pub info_i: f64,
    pub purity: f64,
    pub entropy: f64,
    pub rank: usize,
    pub log_base: LogBase,
}

impl MeasureSet {
    pub fn of(rho: &DensityMatrix, base: LogBase) -> Result<Self> {
        Ok(Self {
            dim: rho.dim(),
            predictability: predictability(rho),
            visibility: visibility(rho),
            info_s: info_content_s(rho),
            info_i: info_content_i(rho)?,
            purity: rho.purity(),
            entropy: von_neumann_entropy(rho, base)?,
            rank: rho.rank()?,
            log_base: base,
        })
    }
}

fn sqrt_clamped(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

/// `sqrt(2 (sum_j rho_jj^2 - 1/n))`.
pub fn predictability(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let diag: f64 = (0..n).map(|j| rho.get(j, j).re.powi(2)).sum();
    sqrt_clamped(2.0 * (diag - 1.0 / n as f64))
}

/// `sqrt(2 sum_{j != k} |rho_jk|^2)`.
pub fn visibility(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let mut off = 0.0;
    for j in 0..n {
        for k in 0..n {
            if j != k {
                off += rho.get(j, k).norm_sqr();
            }
        }
    }
    (2.0 * off).sqrt()
}

/// Qubit predictability `|rho_11 - rho_22|`.
pub fn qubit_predictability(rho: &DensityMatrix) -> Result<f64> {
    check_qubit(rho)?;
    Ok((rho.get(0, 0).re - rho.get(1, 1).re).abs())
}

/// Qubit visibility `2 |rho_12|`.
pub fn qubit_visibility(rho: &DensityMatrix) -> Result<f64> {
    check_qubit(rho)?;
    Ok(2.0 * rho.get(0, 1).norm())
}

fn check_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: rho.dim() });
    }
    Ok(())
}

/// Hilbert-Schmidt information content `sqrt(2 (tr rho^2 - 1/n))`.
pub fn info_content_s(rho: &DensityMatrix) -> f64 {
    sqrt_clamped(2.0 * (rho.purity() - 1.0 / rho.dim() as f64))
}

/// Trace-distance information content `||rho - I/n||_1`.
pub fn info_content_i(rho: &DensityMatrix) -> Result<f64> {
    linalg::trace_norm(&minus_maximally_mixed(rho))
}

/// `rho - I/n`.
pub fn minus_maximally_mixed(rho: &DensityMatrix) -> HermitianOperator {
    let n = rho.dim();
    rho.op()
        .sub(&HermitianOperator::identity(n).scale(1.0 / n as f64))
        .expect("same dimension")
}

/// `2 (1 - 1/n)`: the pure-state value of both `S^2` and `I`.
pub fn pure_state_bound(n: usize) -> f64 {
    2.0 * (1.0 - 1.0 / n as f64)
}

fn entropy_of_spectrum(eigenvalues: &[f64], base: LogBase) -> f64 {
    -eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * base.log(l))
        .sum::<f64>()
}

/// `-tr(rho log rho)`, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    Ok(entropy_of_spectrum(&rho.eigenvalues()?, base).max(0.0))
}

/// `tr(rho (log rho - log sigma))`, or `+inf` when the support of `rho` is not
/// contained in the support of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix, base: LogBase) -> Result<f64> {
    check_pair(rho, sigma)?;
    let er = hermitian_eig(rho.op())?;
    let es = hermitian_eig(sigma.op())?;
    let rho_max = er.eigenvalues[0];
    let sigma_max = es.eigenvalues[0];

    // <v_j| rho |v_j> for each eigenvector of sigma
    let r = rho.op().as_matrix();
    let weights: Vec<f64> = (0..sigma.dim())
        .map(|j| {
            let v = es.eigenvectors.column(j);
            (v.adjoint() * r * v)[(0, 0)].re
        })
        .collect();

    let mut cross = 0.0;
    let mut kernel_weight = 0.0;
    for (&q, &w) in es.eigenvalues.iter().zip(&weights) {
        if q > DEFAULT_RANK_TOL * sigma_max {
            cross += w * base.log(q);
        } else {
            kernel_weight += w;
        }
    }
    if kernel_weight > DEFAULT_RANK_TOL * rho_max {
        return Ok(f64::INFINITY);
    }
    let self_term: f64 = er
        .eigenvalues
        .iter()
        .filter(|&&p| p > DEFAULT_RANK_TOL * rho_max)
        .map(|&p| p * base.log(p))
        .sum();
    Ok(self_term - cross)
}

fn check_pair(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: sigma.dim() });
    }
    Ok(())
}

/// Reduced states on the two sides of `cut`, left first.
pub fn reduced_pair(psi: &PureState, cut: &Bipartition) -> Result<[DensityMatrix; 2]> {
    check_cut(psi, cut)?;
    let rho = psi.density();
    Ok([rho.reduce(cut.left())?, rho.reduce(cut.right())?])
}

fn check_cut(psi: &PureState, cut: &Bipartition) -> Result<()> {
    let parties = psi.profile().parties();
    let covered = cut.left().len() + cut.right().len();
    if covered != parties || cut.sides().iter().flat_map(|s| s.iter()).any(|&p| p >= parties) {
        return Err(Error::InvalidCut(format!(
            "cut does not partition the {} parties of {}",
            parties,
            psi.profile()
        )));
    }
    Ok(())
}

/// Von Neumann entropy of either reduced state; both sides are computed and
/// must agree.
pub fn entanglement_entropy(psi: &PureState, cut: &Bipartition, base: LogBase) -> Result<f64> {
    let [a, b] = reduced_pair(psi, cut)?;
    let ea = von_neumann_entropy(&a, base)?;
    let eb = von_neumann_entropy(&b, base)?;
    if (ea - eb).abs() > SYMMETRY_TOL {
        return Err(Error::InvalidState(format!(
            "reduced entropies differ across the cut: {ea} vs {eb}"
        )));
    }
    Ok(0.5 * (ea + eb))
}

/// `sqrt(2 (1 - tr rho_k^2))`; both sides are computed and must agree.
pub fn generalized_concurrence(psi: &PureState, cut: &Bipartition) -> Result<f64> {
    let [a, b] = reduced_pair(psi, cut)?;
    let (pa, pb) = (a.purity(), b.purity());
    if (pa - pb).abs() > 1e-10 {
        return Err(Error::InvalidState(format!(
            "reduced purities differ across the cut: {pa} vs {pb}"
        )));
    }
    Ok(sqrt_clamped(2.0 * (1.0 - 0.5 * (pa + pb))))
}

/// Concurrence with predictabilities and visibilities of both qubits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitMeasures {
    pub c: f64,
    pub p1: f64,
    pub p2: f64,
    pub v1: f64,
    pub v2: f64,
}

pub fn two_qubit_pure_measures(amp: &TwoQubitAmplitudes) -> TwoQubitMeasures {
    let TwoQubitAmplitudes { a, b, c, d } = *amp;
    let (a2, b2, c2, d2) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr(), d.norm_sqr());
    TwoQubitMeasures {
        c: 2.0 * (a * d - b * c).norm(),
        p1: ((c2 + d2) - (a2 + b2)).abs(),
        p2: ((b2 + d2) - (a2 + c2)).abs(),
        v1: 2.0 * (a * c.conj() + b * d.conj()).norm(),
        // printed as a second "V_1" in the source; it is the second qubit's visibility
        v2: 2.0 * (a * b.conj() + c * d.conj()).norm(),
    }
}

/// `||rho - sigma||_1^2 / (2 ln 2)`, the bits form of the Pinsker bound.
pub fn pinsker_lower_bound(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(LogBase::Two.pinsker_constant() * trace_distance(rho, sigma)?.powi(2))
}

/// `||rho - sigma||_1`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_pair(rho, sigma)?;
    linalg::trace_norm(&rho.op().sub(sigma.op())?)
}

fn min_nonzero(eigenvalues: &[f64]) -> f64 {
    let max = eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    eigenvalues
        .iter()
        .copied()
        .filter(|l| l.abs() > DEFAULT_RANK_TOL * max)
        .fold(f64::INFINITY, f64::min)
}

/// Reverse-Pinsker coefficient
/// `M = lambda_max(rho) (log a_rho - log a_sigma) / (a_rho - a_sigma)`,
/// with `a` the smallest nonzero eigenvalues. Near `a_rho = a_sigma` the
/// difference quotient is replaced by its limit `lambda_max / (a ln base)`.
pub fn reverse_pinsker_m(rho: &DensityMatrix, sigma: &DensityMatrix, base: LogBase) -> Result<f64> {
    check_pair(rho, sigma)?;
    let er = rho.eigenvalues()?;
    let es = sigma.eigenvalues()?;
    let lambda = er[0];
    let (ar, a_s) = (min_nonzero(&er), min_nonzero(&es));
    if (ar - a_s).abs() < 1e-12 {
        return Ok(lambda / (ar * base.ln_base()));
    }
    Ok(lambda * (base.log(ar) - base.log(a_s)) / (ar - a_s))
}

/// `(rank rho + rank sigma) / (rank rho * rank sigma)`.
pub fn rank_factor_r(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_pair(rho, sigma)?;
    let (rr, rs) = (rho.rank()? as f64, sigma.rank()? as f64);
    Ok((rr + rs) / (rr * rs))
}
