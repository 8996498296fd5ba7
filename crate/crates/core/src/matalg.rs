//! Dense Hermitian linear algebra on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{ensure, Error, Result};

/// Dense complex matrix, column-major as stored by `nalgebra`.
pub type ComplexMatrix = DMatrix<Complex64>;

/// Asymmetry below `HERMITIAN_TOL * max(1, max|M_ij|)` is symmetrized away,
/// anything larger is rejected.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Validates and symmetrizes `m` as `(M + M*)/2`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        ensure!(m.is_square(), Validation, "matrix is {}x{}, not square", m.nrows(), m.ncols());
        ensure!(m.nrows() >= 1, Validation, "empty matrix");
        ensure!(m.iter().all(|z| z.re.is_finite() && z.im.is_finite()), Validation, "non-finite entry");
        let asym = max_asymmetry(&m);
        let scale = max_abs(&m).max(1.0);
        ensure!(
            asym <= HERMITIAN_TOL * scale,
            Validation,
            "matrix is not Hermitian (max |M_ij - conj(M_ji)| = {asym:e})"
        );
        let sym = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Self(sym))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n, n))
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        Self(ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(d[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.diagonal().iter().map(|z| z.re).sum()
    }

    /// `max |M_ij|`.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.0)
    }

    /// `U M U*`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        ensure!(u.ncols() == self.dim(), Parameter, "dimension mismatch in conjugation");
        Self::new(u * &self.0 * u.adjoint())
    }

    /// Leading `q x q` block.
    pub fn top_left(&self, q: usize) -> Result<Self> {
        ensure!(q >= 1 && q <= self.dim(), Parameter, "block size {q} out of range");
        Ok(Self(self.0.view((0, 0), (q, q)).into_owned()))
    }
}

pub(crate) fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn max_asymmetry(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Real eigenvalues sorted descending, `λ_1 ≥ … ≥ λ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.0[0]
    }

    pub fn smallest(&self) -> f64 {
        self.0[self.0.len() - 1]
    }
}

/// Eigendecomposition `M = V diag(λ) V*` with `λ` descending and the columns
/// of `V` permuted to match.
pub fn eig_hermitian(m: &HermitianMatrix) -> (Spectrum, ComplexMatrix) {
    let eig = m.as_matrix().clone().symmetric_eigen();
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (Spectrum(values), vectors)
}

/// Eigenvalues only.
pub fn eigenvalues(m: &HermitianMatrix) -> Spectrum {
    let vals = m.as_matrix().clone().symmetric_eigenvalues();
    Spectrum::from_unsorted(vals.iter().copied().collect())
}

/// `M^{-1/2}` for positive definite `M`.
///
/// `eps` defaults to `1e-12 * λ_max`; an eigenvalue at or below it is a
/// [`Error::Singular`].
pub fn inv_sqrt_psd(m: &HermitianMatrix, eps: Option<f64>) -> Result<HermitianMatrix> {
    let (spec, v) = eig_hermitian(m);
    let lmax = spec.largest();
    let eps = eps.unwrap_or(1e-12 * lmax.abs());
    let lmin = spec.smallest();
    if !(lmin > eps) {
        return Err(Error::Singular(format!("smallest eigenvalue {lmin:e} <= {eps:e}")));
    }
    let scaled = ComplexMatrix::from_fn(v.nrows(), v.ncols(), |i, j| {
        v[(i, j)] * (1.0 / spec.values()[j].sqrt())
    });
    HermitianMatrix::new(scaled * v.adjoint())
}

/// Cosines of the principal angles between `range(b1)` and `range(b2)`,
/// i.e. the singular values of `b1* b2`, descending.
pub fn principal_cosines(b1: &ComplexMatrix, b2: &ComplexMatrix) -> Result<Vec<f64>> {
    ensure!(b1.nrows() == b2.nrows(), Parameter, "bases live in different dimensions");
    check_orthonormal_columns(b1)?;
    check_orthonormal_columns(b2)?;
    let cross = b1.adjoint() * b2;
    let sv = cross.singular_values();
    let mut out: Vec<f64> = sv.iter().copied().collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

fn check_orthonormal_columns(b: &ComplexMatrix) -> Result<()> {
    let gram = b.adjoint() * b;
    let k = gram.nrows();
    let mut worst = 0.0f64;
    for j in 0..k {
        for i in 0..k {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    ensure!(worst < 1e-10, Validation, "columns are not orthonormal (deviation {worst:e})");
    Ok(())
}

/// Real symmetric tridiagonal matrix, handled by Sturm-sequence bisection.
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        ensure!(!diag.is_empty(), Parameter, "empty tridiagonal matrix");
        ensure!(off.len() + 1 == diag.len(), Parameter, "off-diagonal must have length n-1");
        Ok(Self { diag, off })
    }

    /// `BᵀB` for the upper bidiagonal `B` with diagonal `d` and superdiagonal `e`.
    pub fn gram_of_upper_bidiagonal(d: &[f64], e: &[f64]) -> Result<Self> {
        ensure!(e.len() + 1 == d.len(), Parameter, "superdiagonal must have length n-1");
        let n = d.len();
        let diag = (0..n)
            .map(|i| d[i] * d[i] + if i > 0 { e[i - 1] * e[i - 1] } else { 0.0 })
            .collect();
        let off = (0..n - 1).map(|i| d[i] * e[i]).collect();
        Self::new(diag, off)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = self.diag[0] - x;
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let prev = if d == 0.0 { f64::EPSILON * (self.off[i - 1].abs() + 1e-300) } else { d };
            d = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / prev;
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th largest eigenvalue (`k = 0` is the largest).
    pub fn eigenvalue_descending(&self, k: usize) -> f64 {
        let n = self.dim();
        assert!(k < n);
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        // eigenvalue index from the bottom
        let target = n - 1 - k;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > target {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 2.0 * f64::EPSILON * scale {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalue_descending(0)
    }

    pub fn eigenvalues(&self) -> Spectrum {
        Spectrum((0..self.dim()).map(|k| self.eigenvalue_descending(k)).collect())
    }
}
