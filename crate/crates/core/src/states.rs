//! Pure and mixed states, random ensembles, and named reference states.

use crate::error::{Error, Result};
use crate::linalg::{
    self, hermitian_eig, CMatrix, HermitianOperator, C64, DEFAULT_RANK_TOL,
};
use crate::rng::{complex_gaussian_matrix, complex_normal, rng_from_seed};

pub use crate::profile::{Bipartition, DimensionProfile};

pub const DEFAULT_PSD_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PURE_NORM_TOL: f64 = 1e-12;

/// Unit-trace positive semidefinite operator on a factorized Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
    profile: DimensionProfile,
    psd_tol: f64,
}

impl DensityMatrix {
    /// Validates trace, positivity and the profile without modifying `op`.
    pub fn new(op: HermitianOperator, profile: DimensionProfile) -> Result<Self> {
        Self::with_tol(op, profile, DEFAULT_PSD_TOL)
    }

    pub fn with_tol(op: HermitianOperator, profile: DimensionProfile, psd_tol: f64) -> Result<Self> {
        check_profile(&op, &profile)?;
        let tr = op.trace();
        if !((tr - 1.0).abs() <= TRACE_TOL) {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = linalg::eigenvalues(&op)?.last().copied().unwrap_or(0.0);
        if !(min >= -psd_tol) {
            return Err(Error::InvalidState(format!("eigenvalue {min:.3e} below -{psd_tol:.1e}")));
        }
        Ok(Self { op, profile, psd_tol })
    }

    /// Validation for numerically produced states: eigenvalues in `[-psd_tol, 0)`
    /// are clamped to zero and the spectrum renormalized to unit trace.
    pub fn from_sampled(op: HermitianOperator, profile: DimensionProfile) -> Result<Self> {
        check_profile(&op, &profile)?;
        let eig = hermitian_eig(&op)?;
        let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min >= 0.0 {
            return Self::new(op, profile);
        }
        if min < -DEFAULT_PSD_TOL {
            return Err(Error::InvalidState(format!("eigenvalue {min:.3e} below -{DEFAULT_PSD_TOL:.1e}")));
        }
        let clamped: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        let n = op.dim();
        let mut m = CMatrix::zeros(n, n);
        for (i, &l) in clamped.iter().enumerate() {
            if l > 0.0 {
                let v = eig.eigenvectors.column(i);
                m += v * v.adjoint() * C64::new(l / total, 0.0);
            }
        }
        Self::new(HermitianOperator::from_matrix(m)?, profile)
    }

    /// `I/n` on the given profile.
    pub fn maximally_mixed(profile: DimensionProfile) -> Self {
        let n = profile.total_dim();
        let op = HermitianOperator::identity(n).scale(1.0 / n as f64);
        Self { op, profile, psd_tol: DEFAULT_PSD_TOL }
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    pub fn psd_tol(&self) -> f64 {
        self.psd_tol
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.op.get(row, col)
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        linalg::hs_norm(&self.op).powi(2)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::eigenvalues(&self.op)
    }

    pub fn rank(&self) -> Result<usize> {
        linalg::numerical_rank(&self.op, DEFAULT_RANK_TOL)
    }

    /// Reduced state on `keep` (profile order).
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let op = linalg::partial_trace(&self.op, &self.profile, keep)?;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        let profile = self.profile.restrict(&kept)?;
        DensityMatrix::from_sampled(op, profile)
    }

    /// Same matrix viewed as a single party of dimension `n`.
    pub fn flattened(&self) -> DensityMatrix {
        Self {
            op: self.op.clone(),
            profile: DimensionProfile::single(self.dim()).expect("dim >= 2"),
            psd_tol: self.psd_tol,
        }
    }

    /// Recovers the state vector when the numerical rank is one.
    pub fn as_pure(&self) -> Option<PureState> {
        let eig = hermitian_eig(&self.op).ok()?;
        if linalg::rank_of_spectrum(&eig.eigenvalues, DEFAULT_RANK_TOL) != 1 {
            return None;
        }
        PureState::normalized(eig.eigenvector(0), self.profile.clone()).ok()
    }
}

fn check_profile(op: &HermitianOperator, profile: &DimensionProfile) -> Result<()> {
    if profile.total_dim() != op.dim() {
        return Err(Error::DimensionMismatch { expected: profile.total_dim(), found: op.dim() });
    }
    Ok(())
}

/// Normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    profile: DimensionProfile,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, profile: DimensionProfile) -> Result<Self> {
        if amplitudes.len() != profile.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: profile.total_dim(),
                found: amplitudes.len(),
            });
        }
        let norm = vector_norm(&amplitudes);
        if !((norm - 1.0).abs() <= PURE_NORM_TOL) {
            return Err(Error::Normalization { norm });
        }
        Ok(Self { amplitudes, profile })
    }

    /// Rescales to unit norm first.
    pub fn normalized(amplitudes: Vec<C64>, profile: DimensionProfile) -> Result<Self> {
        let norm = vector_norm(&amplitudes);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Normalization { norm });
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect(), profile)
    }

    /// Computational basis state `|k>`.
    pub fn basis(k: usize, profile: DimensionProfile) -> Result<Self> {
        let n = profile.total_dim();
        if k >= n {
            return Err(Error::UnknownState(format!("basis index {k} >= dimension {n}")));
        }
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[k] = C64::new(1.0, 0.0);
        Self::new(v, profile)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn density(&self) -> DensityMatrix {
        density_from_pure(self)
    }

    /// Reduced state on `keep`.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        self.density().reduce(keep)
    }
}

fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Amplitudes of `a|00> + b|01> + c|10> + d|11>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitAmplitudes {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl TwoQubitAmplitudes {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let norm = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr()).sqrt();
        if !((norm - 1.0).abs() <= PURE_NORM_TOL) {
            return Err(Error::Normalization { norm });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn from_pure(psi: &PureState) -> Result<Self> {
        if psi.profile().dims() != [2, 2] {
            return Err(Error::InvalidProfile(format!(
                "two-qubit amplitudes need a 2x2 profile, got {}",
                psi.profile()
            )));
        }
        let v = psi.amplitudes();
        Self::new(v[0], v[1], v[2], v[3])
    }
}

/// `|psi><psi|`.
pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    DensityMatrix {
        op: HermitianOperator::projector(&psi.amplitudes),
        profile: psi.profile.clone(),
        psd_tol: DEFAULT_PSD_TOL,
    }
}

/// Haar-random pure state: i.i.d. complex normal amplitudes, normalized.
pub fn haar_pure(profile: &DimensionProfile, seed: u64) -> PureState {
    let mut rng = rng_from_seed(seed);
    let v: Vec<C64> = (0..profile.total_dim()).map(|_| complex_normal(&mut rng)).collect();
    PureState::normalized(v, profile.clone()).expect("gaussian vector is nonzero")
}

/// `G G^dag / tr(G G^dag)` with `G` an `n x rank` complex Gaussian matrix.
pub fn ginibre_mixed(profile: &DimensionProfile, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let n = profile.total_dim();
    if rank == 0 || rank > n {
        return Err(Error::RankOutOfBounds { rank, dim: n });
    }
    let mut rng = rng_from_seed(seed);
    let g = complex_gaussian_matrix(&mut rng, n, rank);
    let w = &g * g.adjoint();
    let tr: f64 = (0..n).map(|i| w[(i, i)].re).sum();
    let op = HermitianOperator::from_matrix(w * C64::new(1.0 / tr, 0.0))?;
    DensityMatrix::from_sampled(op, profile.clone())
}

/// `sum_i c_i |i>|i>` on a bipartite profile.
pub fn schmidt_pure(coeffs: &[f64], profile: &DimensionProfile) -> Result<PureState> {
    if profile.parties() != 2 {
        return Err(Error::InvalidProfile(format!(
            "Schmidt states need a bipartite profile, got {profile}"
        )));
    }
    let (na, nb) = (profile.dims()[0], profile.dims()[1]);
    if coeffs.is_empty() || coeffs.len() > na.min(nb) {
        return Err(Error::InvalidState(format!(
            "{} Schmidt coefficients for local dimensions {na} and {nb}",
            coeffs.len()
        )));
    }
    if let Some(c) = coeffs.iter().find(|&&c| !(c >= 0.0)) {
        return Err(Error::InvalidState(format!("negative Schmidt coefficient {c}")));
    }
    let mut v = vec![C64::new(0.0, 0.0); na * nb];
    for (i, &c) in coeffs.iter().enumerate() {
        v[i * nb + i] = C64::new(c, 0.0);
    }
    PureState::new(v, profile.clone())
}

/// Reference states by name.
#[derive(Clone, Debug, PartialEq)]
pub enum NamedState {
    /// `I/n`.
    MaxMixed,
    /// Maximally entangled `sum_i |ii>/sqrt(d)` on `d x d`.
    Bell,
    /// `sum_i |i...i>/sqrt(d)` on `d x ... x d`.
    Ghz,
    /// Equal superposition of single excitations on qubits.
    W,
    /// Computational basis state `|k>`.
    Basis(usize),
    /// Uniform superposition of all basis states.
    Plus,
}

impl NamedState {
    /// Parses `max_mixed[:n]`, `bell`, `ghz`, `w`, `basis:k[:n]`, `plus[:n]`.
    /// Returns the state and the dimension given in the name, if any.
    pub fn parse(spec: &str) -> Result<(Self, Option<usize>)> {
        let mut parts = spec.trim().split(':');
        let name = parts.next().unwrap_or_default().to_ascii_lowercase();
        let args: Vec<usize> = parts
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::UnknownState(spec.into())))
            .collect::<Result<_>>()?;
        let (state, dim) = match (name.as_str(), args.as_slice()) {
            ("max_mixed" | "maxmixed", []) => (Self::MaxMixed, None),
            ("max_mixed" | "maxmixed", [n]) => (Self::MaxMixed, Some(*n)),
            ("bell", []) => (Self::Bell, None),
            ("ghz", []) => (Self::Ghz, None),
            ("w", []) => (Self::W, None),
            ("basis", [k]) => (Self::Basis(*k), None),
            ("basis", [k, n]) => (Self::Basis(*k), Some(*n)),
            ("plus", []) => (Self::Plus, None),
            ("plus", [n]) => (Self::Plus, Some(*n)),
            _ => return Err(Error::UnknownState(spec.into())),
        };
        Ok((state, dim))
    }

    fn default_profile(&self) -> DimensionProfile {
        let dims = match self {
            Self::Bell => vec![2, 2],
            Self::Ghz | Self::W => vec![2, 2, 2],
            Self::MaxMixed | Self::Basis(_) | Self::Plus => vec![2],
        };
        DimensionProfile::new(dims).expect("static profile")
    }

    /// State vector, or `None` for mixed states.
    pub fn pure(&self, profile: &DimensionProfile) -> Result<Option<PureState>> {
        let n = profile.total_dim();
        let zero = C64::new(0.0, 0.0);
        let v = match self {
            Self::MaxMixed => return Ok(None),
            Self::Basis(k) => return PureState::basis(*k, profile.clone()).map(Some),
            Self::Plus => vec![C64::new(1.0, 0.0); n],
            Self::Bell => {
                let d = profile.dims();
                if d.len() != 2 || d[0] != d[1] {
                    return Err(Error::InvalidProfile(format!("bell needs d x d, got {profile}")));
                }
                let mut v = vec![zero; n];
                for i in 0..d[0] {
                    v[i * d[0] + i] = C64::new(1.0, 0.0);
                }
                v
            }
            Self::Ghz => {
                let d = profile.dims();
                if d.len() < 2 || d.iter().any(|&x| x != d[0]) {
                    return Err(Error::InvalidProfile(format!(
                        "ghz needs equal local dimensions, got {profile}"
                    )));
                }
                // |i...i> has flat index i * (1 + d + d^2 + ...)
                let step: usize = (0..d.len()).map(|k| d[0].pow(k as u32)).sum();
                let mut v = vec![zero; n];
                for i in 0..d[0] {
                    v[i * step] = C64::new(1.0, 0.0);
                }
                v
            }
            Self::W => {
                let d = profile.dims();
                if d.len() < 2 || d.iter().any(|&x| x != 2) {
                    return Err(Error::InvalidProfile(format!("w needs qubits, got {profile}")));
                }
                let mut v = vec![zero; n];
                for k in 0..d.len() {
                    v[1 << (d.len() - 1 - k)] = C64::new(1.0, 0.0);
                }
                v
            }
        };
        PureState::normalized(v, profile.clone()).map(Some)
    }

    pub fn density(&self, profile: &DimensionProfile) -> Result<DensityMatrix> {
        match self.pure(profile)? {
            Some(psi) => Ok(psi.density()),
            None => Ok(DensityMatrix::maximally_mixed(profile.clone())),
        }
    }
}

/// Resolves a name and optional profile into the state's profile. A dimension
/// embedded in the name (`plus:3`) must agree with an explicit profile.
pub fn named_profile(spec: &str, profile: Option<&DimensionProfile>) -> Result<(NamedState, DimensionProfile)> {
    let (state, dim) = NamedState::parse(spec)?;
    let profile = match (profile, dim) {
        (Some(p), Some(n)) if p.total_dim() != n => {
            return Err(Error::DimensionMismatch { expected: n, found: p.total_dim() })
        }
        (Some(p), _) => p.clone(),
        (None, Some(n)) => DimensionProfile::single(n)?,
        (None, None) => state.default_profile(),
    };
    Ok((state, profile))
}

/// Canonical named state as a density matrix.
pub fn named_state(spec: &str, profile: Option<&DimensionProfile>) -> Result<DensityMatrix> {
    let (state, profile) = named_profile(spec, profile)?;
    state.density(&profile)
}

/// Canonical named state as a vector; `None` for `max_mixed`.
pub fn named_pure(spec: &str, profile: Option<&DimensionProfile>) -> Result<Option<PureState>> {
    let (state, profile) = named_profile(spec, profile)?;
    state.pure(&profile)
}
