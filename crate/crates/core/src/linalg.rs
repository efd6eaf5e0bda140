//! Dense complex Hermitian linear algebra.
//!
//! Everything here works on small dense matrices (dimension up to a few dozen).
//! The eigensolver is nalgebra's Hermitian QR iteration; results are re-sorted
//! into descending order so downstream quantities are deterministic.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::profile::DimensionProfile;

pub type C64 = Complex<f64>;

/// Dense complex matrix of arbitrary shape (Kraus operators, intermediate products).
pub type CMatrix = DMatrix<C64>;

pub const DEFAULT_HERMITICITY_TOL: f64 = 1e-10;
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

const EIG_EPS: f64 = 1e-15;
const EIG_MAX_ITER: usize = 10_000;

/// Square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(CMatrix);

impl ComplexMatrix {
    /// Builds from `dim * dim` entries in row-major order.
    pub fn from_row_major(dim: usize, entries: &[C64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::NotSquare { rows: 0, cols: 0 });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        Ok(Self(CMatrix::from_row_slice(dim, dim, entries)))
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        Ok(Self(m))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(CMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(CMatrix::identity(dim, dim))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self(CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// Largest `|a_jk - conj(a_kj)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for j in 0..n {
            for k in j..n {
                worst = worst.max((self.0[(j, k)] - self.0[(k, j)].conj()).norm());
            }
        }
        worst
    }
}

/// A Hermitian operator. Construction symmetrizes inputs that are Hermitian to
/// within the tolerance and rejects the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
    hermiticity_tol: f64,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_HERMITICITY_TOL)
    }

    pub fn with_tol(matrix: ComplexMatrix, hermiticity_tol: f64) -> Result<Self> {
        let deviation = matrix.hermiticity_deviation();
        if !(deviation <= hermiticity_tol) {
            return Err(Error::NotHermitian { deviation, tol: hermiticity_tol });
        }
        let m = matrix.into_matrix();
        let sym = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        Ok(Self { matrix: ComplexMatrix(sym), hermiticity_tol })
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(ComplexMatrix::from_matrix(m)?)
    }

    pub fn from_row_major(dim: usize, entries: &[C64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_row_major(dim, entries)?)
    }

    pub fn zeros(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::zeros(dim), hermiticity_tol: DEFAULT_HERMITICITY_TOL }
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(dim), hermiticity_tol: DEFAULT_HERMITICITY_TOL }
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diagonal(diag),
            hermiticity_tol: DEFAULT_HERMITICITY_TOL,
        }
    }

    /// `|v><v|` (unnormalized if `v` is).
    pub fn projector(v: &[C64]) -> Self {
        let n = v.len();
        let m = CMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
        Self { matrix: ComplexMatrix(m), hermiticity_tol: DEFAULT_HERMITICITY_TOL }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.matrix.get(row, col)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn as_matrix(&self) -> &CMatrix {
        self.matrix.as_matrix()
    }

    pub fn hermiticity_tol(&self) -> f64 {
        self.hermiticity_tol
    }

    /// Real part of the trace (the imaginary part vanishes for Hermitian operators).
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i).re).sum()
    }

    /// `tr(A B)` for Hermitian `A`, `B`.
    pub fn trace_product(&self, other: &Self) -> Result<f64> {
        check_same_dim(self, other)?;
        let a = self.as_matrix();
        let b = other.as_matrix();
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for k in 0..n {
                acc += (a[(i, k)] * b[(k, i)]).re;
            }
        }
        Ok(acc)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(self.map_matrix(self.as_matrix() - other.as_matrix()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(self.map_matrix(self.as_matrix() + other.as_matrix()))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_matrix(self.as_matrix() * C64::new(s, 0.0))
    }

    /// `U A U^dag`; Hermiticity is preserved exactly up to rounding, so the
    /// result is re-symmetrized rather than re-validated.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        if u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.ncols() });
        }
        let m = u * self.as_matrix() * u.adjoint();
        let sym = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        Ok(Self { matrix: ComplexMatrix(sym), hermiticity_tol: self.hermiticity_tol })
    }

    fn map_matrix(&self, m: CMatrix) -> Self {
        Self { matrix: ComplexMatrix(m), hermiticity_tol: self.hermiticity_tol }
    }
}

fn check_same_dim(a: &HermitianOperator, b: &HermitianOperator) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

/// Eigenvalues in descending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl EigenDecomposition {
    /// `sum_i lambda_i v_i v_i^dag`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let mut out = CMatrix::zeros(n, n);
        for (i, &l) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvectors.column(i);
            out += v * v.adjoint() * C64::new(l, 0.0);
        }
        out
    }

    pub fn eigenvector(&self, i: usize) -> Vec<C64> {
        self.eigenvectors.column(i).iter().copied().collect()
    }
}

pub fn hermitian_eig(op: &HermitianOperator) -> Result<EigenDecomposition> {
    let n = op.dim();
    let eig = SymmetricEigen::try_new(op.as_matrix().clone(), EIG_EPS, EIG_MAX_ITER)
        .ok_or(Error::EigenConvergence { dim: n })?;
    if eig.eigenvalues.iter().any(|l| !l.is_finite()) {
        return Err(Error::EigenConvergence { dim: n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    // descending; ties keep solver order
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// Eigenvalues only, descending.
pub fn eigenvalues(op: &HermitianOperator) -> Result<Vec<f64>> {
    Ok(hermitian_eig(op)?.eigenvalues)
}

/// `A (x) B` with lexicographic index pairing: entry `((i,k),(j,l)) = a_ij b_kl`.
pub fn tensor_product(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator {
        matrix: ComplexMatrix(a.as_matrix().kronecker(b.as_matrix())),
        hermiticity_tol: a.hermiticity_tol.max(b.hermiticity_tol),
    }
}

/// Traces out every party not in `keep`. Kept parties appear in profile order.
pub fn partial_trace(
    op: &HermitianOperator,
    profile: &DimensionProfile,
    keep: &[usize],
) -> Result<HermitianOperator> {
    if profile.total_dim() != op.dim() {
        return Err(Error::DimensionMismatch { expected: profile.total_dim(), found: op.dim() });
    }
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let parties = profile.parties();
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    for w in kept.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidProfile(format!("party {} kept twice", w[0])));
        }
    }
    if let Some(&p) = kept.iter().find(|&&p| p >= parties) {
        return Err(Error::PartyIndex { index: p, parties });
    }
    let env: Vec<usize> = (0..parties).filter(|p| !kept.contains(p)).collect();

    let keep_off = factor_offsets(profile, &kept);
    let env_off = factor_offsets(profile, &env);

    let a = op.as_matrix();
    let dk = keep_off.len();
    let out = CMatrix::from_fn(dk, dk, |r, c| {
        env_off
            .iter()
            .map(|&e| a[(keep_off[r] + e, keep_off[c] + e)])
            .sum()
    });
    Ok(HermitianOperator { matrix: ComplexMatrix(out), hermiticity_tol: op.hermiticity_tol })
}

/// Flat-index contribution of every joint basis index of `group` (row-major
/// over the group's parties). A full basis index is the sum of one offset from
/// each group of a partition.
pub(crate) fn factor_offsets(profile: &DimensionProfile, group: &[usize]) -> Vec<usize> {
    let dims = profile.dims();
    let parties = dims.len();
    let mut strides = vec![1usize; parties];
    for p in (0..parties.saturating_sub(1)).rev() {
        strides[p] = strides[p + 1] * dims[p + 1];
    }
    let size: usize = group.iter().map(|&p| dims[p]).product();
    (0..size)
        .map(|mut idx| {
            let mut off = 0;
            for &p in group.iter().rev() {
                off += (idx % dims[p]) * strides[p];
                idx /= dims[p];
            }
            off
        })
        .collect()
}

/// `||A||_1 = sum_i |lambda_i|` for Hermitian `A`.
pub fn trace_norm(op: &HermitianOperator) -> Result<f64> {
    Ok(eigenvalues(op)?.iter().map(|l| l.abs()).sum())
}

/// `||A||_2 = sqrt(sum_jk |a_jk|^2)`.
pub fn hs_norm(op: &HermitianOperator) -> f64 {
    op.as_matrix().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Count of eigenvalues with `|lambda| > rel_tol * max |lambda|`; 0 for the zero matrix.
pub fn numerical_rank(op: &HermitianOperator, rel_tol: f64) -> Result<usize> {
    Ok(rank_of_spectrum(&eigenvalues(op)?, rel_tol))
}

pub fn rank_of_spectrum(eigenvalues: &[f64], rel_tol: f64) -> usize {
    let max = eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    eigenvalues.iter().filter(|l| l.abs() > rel_tol * max).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pauli_x() -> HermitianOperator {
        HermitianOperator::from_row_major(2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap()
    }

    fn pauli_z() -> HermitianOperator {
        HermitianOperator::diagonal(&[1.0, -1.0])
    }

    #[test]
    fn symmetrizes_within_tolerance() {
        let m = ComplexMatrix::from_row_major(2, &[c(1., 0.), c(0.5, 1e-12), c(0.5, 0.), c(0., 0.)])
            .unwrap();
        let h = HermitianOperator::new(m).unwrap();
        assert_eq!(h.get(0, 1), h.get(1, 0).conj());
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_row_major(2, &[c(1., 0.), c(1., 0.), c(0., 0.), c(0., 0.)])
            .unwrap();
        assert!(matches!(HermitianOperator::new(m), Err(Error::NotHermitian { .. })));
        assert!(ComplexMatrix::from_row_major(2, &[c(1., 0.); 3]).is_err());
    }

    #[test]
    fn tensor_identity() {
        let i4 = tensor_product(&HermitianOperator::identity(2), &HermitianOperator::identity(2));
        assert_eq!(i4, HermitianOperator::identity(4));
    }

    #[test]
    fn tensor_diagonal_product() {
        let p0 = HermitianOperator::diagonal(&[1.0, 0.0]);
        let mixed = HermitianOperator::diagonal(&[0.5, 0.5]);
        let t = tensor_product(&p0, &mixed);
        assert_eq!(t, HermitianOperator::diagonal(&[0.5, 0.5, 0.0, 0.0]));
    }

    #[test]
    fn tensor_matches_index_pairing() {
        let a = pauli_z();
        let b = pauli_x();
        let t = tensor_product(&a, &b);
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        assert_eq!(t.get(i * 2 + k, j * 2 + l), a.get(i, j) * b.get(k, l));
                    }
                }
            }
        }
    }

    #[test]
    fn partial_trace_bell() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = HermitianOperator::projector(&[c(h, 0.), c(0., 0.), c(0., 0.), c(h, 0.)]);
        let p = DimensionProfile::parse("2x2").unwrap();
        let a = partial_trace(&bell, &p, &[0]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 0.5 } else { 0.0 };
                assert_abs_diff_eq!(a.get(i, j).re, want, epsilon = 1e-15);
                assert_abs_diff_eq!(a.get(i, j).im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn partial_trace_ghz_matches_contraction() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![c(0., 0.); 8];
        v[0] = c(h, 0.);
        v[7] = c(h, 0.);
        let ghz = HermitianOperator::projector(&v);
        let p = DimensionProfile::parse("2x2x2").unwrap();
        let ab = partial_trace(&ghz, &p, &[0, 1]).unwrap();
        // sum over the environment basis index e of <ab e|rho|a'b' e>
        for r in 0..4 {
            for col in 0..4 {
                let want: C64 = (0..2).map(|e| ghz.get(r * 2 + e, col * 2 + e)).sum();
                assert_abs_diff_eq!((ab.get(r, col) - want).norm(), 0.0, epsilon = 1e-15);
            }
        }
        assert_abs_diff_eq!(ab.get(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ab.get(3, 3).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ab.get(0, 3).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn partial_trace_keeps_non_contiguous_parties() {
        // rho_A (x) rho_B (x) rho_C, keep {A, C}
        let a = HermitianOperator::diagonal(&[0.7, 0.3]);
        let b = HermitianOperator::diagonal(&[0.2, 0.5, 0.3]);
        let cc = HermitianOperator::diagonal(&[0.9, 0.1]);
        let abc = tensor_product(&tensor_product(&a, &b), &cc);
        let p = DimensionProfile::new(vec![2, 3, 2]).unwrap();
        let ac = partial_trace(&abc, &p, &[2, 0]).unwrap();
        let want = tensor_product(&a, &cc);
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!((ac.get(i, j) - want.get(i, j)).norm(), 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn partial_trace_errors() {
        let p = DimensionProfile::parse("2x2").unwrap();
        let op = HermitianOperator::identity(4);
        assert!(matches!(partial_trace(&op, &p, &[]), Err(Error::EmptyKeepSet)));
        assert!(partial_trace(&HermitianOperator::identity(3), &p, &[0]).is_err());
        assert!(partial_trace(&op, &p, &[2]).is_err());
        assert!(partial_trace(&op, &p, &[0, 0]).is_err());
    }

    #[test]
    fn eig_identity_and_diagonal() {
        let e = hermitian_eig(&HermitianOperator::identity(5)).unwrap();
        assert!(e.eigenvalues.iter().all(|&l| (l - 1.0).abs() < 1e-14));
        let e = hermitian_eig(&HermitianOperator::diagonal(&[0.25, 0.75])).unwrap();
        assert_abs_diff_eq!(e.eigenvalues[0], 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(e.eigenvalues[1], 0.25, epsilon = 1e-15);
    }

    #[test]
    fn norms_of_simple_operators() {
        assert_eq!(trace_norm(&HermitianOperator::zeros(3)).unwrap(), 0.0);
        assert_eq!(hs_norm(&HermitianOperator::zeros(3)), 0.0);
        let half = HermitianOperator::diagonal(&[0.5, 0.5]);
        assert_eq!(hs_norm(&half.sub(&half).unwrap()), 0.0);
        let d = HermitianOperator::diagonal(&[1.0, 0.0]).sub(&half).unwrap();
        assert_abs_diff_eq!(hs_norm(&d), 0.5_f64.sqrt(), epsilon = 1e-15);
        for n in 2..8 {
            let mut diag = vec![0.0; n];
            diag[0] = 1.0;
            let a = HermitianOperator::diagonal(&diag)
                .sub(&HermitianOperator::identity(n).scale(1.0 / n as f64))
                .unwrap();
            assert_abs_diff_eq!(
                trace_norm(&a).unwrap(),
                2.0 * (1.0 - 1.0 / n as f64),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn rank_counts() {
        assert_eq!(numerical_rank(&HermitianOperator::zeros(3), DEFAULT_RANK_TOL).unwrap(), 0);
        let mm = HermitianOperator::identity(4).scale(0.25);
        assert_eq!(numerical_rank(&mm, DEFAULT_RANK_TOL).unwrap(), 4);
        let p = HermitianOperator::projector(&[c(0.6, 0.), c(0., 0.8)]);
        assert_eq!(numerical_rank(&p, DEFAULT_RANK_TOL).unwrap(), 1);
    }
}
