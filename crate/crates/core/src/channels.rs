//! Quantum channels in Kraus form.

use rand::Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::linalg::{self, factor_offsets, CMatrix, HermitianOperator, C64};
use crate::profile::DimensionProfile;
use crate::rng::{complex_gaussian_matrix, rng_from_seed};
use crate::states::DensityMatrix;

pub const DEFAULT_CPTP_TOL: f64 = 1e-10;

/// CPTP map `rho -> sum_i K_i rho K_i^dag`. Kraus sets are checked for trace
/// preservation when built and never repaired.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    kraus: Vec<CMatrix>,
    in_dim: usize,
    out_dim: usize,
    out_profile: Option<DimensionProfile>,
    cptp_tol: f64,
}

impl KrausChannel {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        Self::with_tol(kraus, DEFAULT_CPTP_TOL)
    }

    pub fn with_tol(kraus: Vec<CMatrix>, cptp_tol: f64) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidChannel("no Kraus operators".into()))?;
        let (out_dim, in_dim) = first.shape();
        if let Some(k) = kraus.iter().find(|k| k.shape() != (out_dim, in_dim)) {
            return Err(Error::InvalidChannel(format!(
                "Kraus shapes differ: {:?} vs {:?}",
                k.shape(),
                (out_dim, in_dim)
            )));
        }
        let mut sum = CMatrix::zeros(in_dim, in_dim);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        sum -= CMatrix::identity(in_dim, in_dim);
        let deviation = sum.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        if !(deviation <= cptp_tol) {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self { kraus, in_dim, out_dim, out_profile: None, cptp_tol })
    }

    /// Labels the output space with a tensor structure.
    pub fn with_output_profile(mut self, profile: DimensionProfile) -> Result<Self> {
        if profile.total_dim() != self.out_dim {
            return Err(Error::DimensionMismatch { expected: self.out_dim, found: profile.total_dim() });
        }
        self.out_profile = Some(profile);
        Ok(self)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![CMatrix::identity(n, n)]).expect("identity is CPTP")
    }

    pub fn unitary(u: CMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    /// `rho -> tr(rho) I/n`, with Kraus operators `|i><j| / sqrt(n)`.
    pub fn fully_depolarizing(n: usize) -> Self {
        let s = C64::new(1.0 / (n as f64).sqrt(), 0.0);
        let kraus = (0..n)
            .flat_map(|i| {
                (0..n).map(move |j| {
                    let mut k = CMatrix::zeros(n, n);
                    k[(i, j)] = s;
                    k
                })
            })
            .collect();
        Self::new(kraus).expect("depolarizing is CPTP")
    }

    /// Trace over every party not in `keep`, as a channel. One Kraus operator
    /// `I_keep (x) <e|_env` per environment basis state `e`.
    pub fn partial_trace(profile: &DimensionProfile, keep: &[usize]) -> Result<Self> {
        let parties = profile.parties();
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        if let Some(&p) = kept.iter().find(|&&p| p >= parties) {
            return Err(Error::PartyIndex { index: p, parties });
        }
        let env: Vec<usize> = (0..parties).filter(|p| !kept.contains(p)).collect();
        let keep_off = factor_offsets(profile, &kept);
        let env_off = factor_offsets(profile, &env);
        let n = profile.total_dim();
        let kraus = env_off
            .iter()
            .map(|&e| {
                let mut k = CMatrix::zeros(keep_off.len(), n);
                for (row, &off) in keep_off.iter().enumerate() {
                    k[(row, off + e)] = C64::new(1.0, 0.0);
                }
                k
            })
            .collect();
        Self::new(kraus)?.with_output_profile(profile.restrict(&kept)?)
    }

    /// `K0 = diag(1, sqrt(1-g))`, `K1 = sqrt(g) |0><1|`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidChannel(format!("damping {gamma} outside [0, 1]")));
        }
        let z = C64::new(0.0, 0.0);
        let k0 = CMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), z, z, C64::new((1.0 - gamma).sqrt(), 0.0)]);
        let k1 = CMatrix::from_row_slice(2, 2, &[z, C64::new(gamma.sqrt(), 0.0), z, z]);
        Self::new(vec![k0, k1])
    }

    pub fn kraus_ops(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn cptp_tol(&self) -> f64 {
        self.cptp_tol
    }

    fn apply_op(&self, op: &HermitianOperator) -> Result<HermitianOperator> {
        if op.dim() != self.in_dim {
            return Err(Error::DimensionMismatch { expected: self.in_dim, found: op.dim() });
        }
        let mut out = CMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            out += k * op.as_matrix() * k.adjoint();
        }
        let sym = (&out + out.adjoint()) * C64::new(0.5, 0.0);
        HermitianOperator::from_matrix(sym)
    }

    /// `sum_i K_i rho K_i^dag`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.apply_op(rho.op())?;
        let profile = match &self.out_profile {
            Some(p) => p.clone(),
            None if self.out_dim == self.in_dim => rho.profile().clone(),
            None => DimensionProfile::single(self.out_dim)?,
        };
        DensityMatrix::from_sampled(out, profile)
    }

    /// Whether `||Phi(I/n_in) - I/n_out||_1 <= tol`.
    pub fn is_unital(&self, tol: f64) -> Result<bool> {
        let mixed_in = HermitianOperator::identity(self.in_dim).scale(1.0 / self.in_dim as f64);
        let mixed_out = HermitianOperator::identity(self.out_dim).scale(1.0 / self.out_dim as f64);
        let img = self.apply_op(&mixed_in)?;
        Ok(linalg::trace_norm(&img.sub(&mixed_out)?)? <= tol)
    }
}

/// Haar unitary: QR of a complex Gaussian matrix with the phases of `R`'s
/// diagonal folded into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = complex_gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Mixture of Haar unitaries `sum_i p_i U_i . U_i^dag` with weights uniform on
/// the simplex. Unital by construction.
pub fn random_unital(dim: usize, num_unitaries: usize, seed: u64) -> Result<KrausChannel> {
    if num_unitaries == 0 {
        return Err(Error::InvalidChannel("need at least one unitary".into()));
    }
    let mut rng = rng_from_seed(seed);
    let raw: Vec<f64> = (0..num_unitaries).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let kraus = raw
        .iter()
        .map(|w| haar_unitary(dim, &mut rng) * C64::new((w / total).sqrt(), 0.0))
        .collect();
    KrausChannel::new(kraus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::info_content_i;
    use crate::states::{ginibre_mixed, haar_pure};
    use approx::assert_abs_diff_eq;

    fn p(spec: &str) -> DimensionProfile {
        DimensionProfile::parse(spec).unwrap()
    }

    fn max_entry_diff(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
        a.op().sub(b.op()).unwrap().as_matrix().iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    #[test]
    fn identity_and_depolarizing() {
        let rho = ginibre_mixed(&p("3"), 2, 1).unwrap();
        let out = KrausChannel::identity(3).apply(&rho).unwrap();
        assert!(max_entry_diff(&out, &rho) < 1e-15);
        let dep = KrausChannel::fully_depolarizing(3);
        for seed in 0..5 {
            let rho = ginibre_mixed(&p("3"), 3, seed).unwrap();
            let out = dep.apply(&rho).unwrap();
            assert!(max_entry_diff(&out, &DensityMatrix::maximally_mixed(p("3"))) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_channel_matches_partial_trace() {
        let prof = p("2x3");
        for keep in [[0usize], [1]] {
            let ch = KrausChannel::partial_trace(&prof, &keep).unwrap();
            assert!(ch.is_unital(1e-12).unwrap());
            for seed in 0..10 {
                let rho = ginibre_mixed(&prof, 1 + (seed as usize % 6), seed).unwrap();
                let a = ch.apply(&rho).unwrap();
                let b = rho.reduce(&keep).unwrap();
                assert_eq!(a.profile(), b.profile());
                assert!(max_entry_diff(&a, &b) < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_invalid_kraus_sets() {
        assert!(KrausChannel::new(vec![]).is_err());
        let half = CMatrix::identity(2, 2) * C64::new(0.5, 0.0);
        assert!(matches!(KrausChannel::new(vec![half]), Err(Error::NotTracePreserving { .. })));
        let a = CMatrix::identity(2, 2);
        let b = CMatrix::zeros(3, 2);
        assert!(KrausChannel::new(vec![a, b]).is_err());
        let ch = KrausChannel::identity(2);
        assert!(ch.apply(&ginibre_mixed(&p("3"), 3, 1).unwrap()).is_err());
    }

    #[test]
    fn unitality() {
        let mut rng = rng_from_seed(3);
        let u = KrausChannel::unitary(haar_unitary(4, &mut rng)).unwrap();
        assert!(u.is_unital(1e-10).unwrap());
        // Phi(I/2) = diag(1/2 + g/2, 1/2 - g/2)
        let ad = KrausChannel::amplitude_damping(0.5).unwrap();
        assert!(!ad.is_unital(1e-10).unwrap());
        let img = ad.apply(&DensityMatrix::maximally_mixed(p("2"))).unwrap();
        assert_abs_diff_eq!(img.get(0, 0).re, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(img.get(1, 1).re, 0.25, epsilon = 1e-15);
        assert!(KrausChannel::amplitude_damping(1.5).is_err());
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = rng_from_seed(9);
        for n in 1..7 {
            let u = haar_unitary(n, &mut rng);
            let err = (u.adjoint() * &u - CMatrix::identity(n, n)).norm();
            assert!(err < 1e-13, "n={n} err={err}");
        }
    }

    #[test]
    fn random_unital_channels() {
        let single = random_unital(3, 1, 5).unwrap();
        assert_eq!(single.kraus_ops().len(), 1);
        for seed in 0..10 {
            let rho = ginibre_mixed(&p("3"), 3, seed).unwrap();
            let out = single.apply(&rho).unwrap();
            assert_abs_diff_eq!(info_content_i(&out).unwrap(), info_content_i(&rho).unwrap(), epsilon = 1e-10);
        }
        for seed in 0..20 {
            let ch = random_unital(3, 4, seed).unwrap();
            assert!(ch.is_unital(1e-10).unwrap());
            let rho = haar_pure(&p("3"), seed).density();
            assert!(info_content_i(&ch.apply(&rho).unwrap()).unwrap() <= info_content_i(&rho).unwrap() + 1e-10);
        }
        assert!(random_unital(3, 0, 1).is_err());
        let a = random_unital(2, 3, 77).unwrap();
        let b = random_unital(2, 3, 77).unwrap();
        assert_eq!(a.kraus_ops(), b.kraus_ops());
    }
}
