//! Jacobi unitary ensemble samplers and the rank-reduction rules relating
//! products of projectors of arbitrary ranks to a canonical pair.
//!
//! The ensemble of parameter `(n, a, b)` has density proportional to
//! `det(1-M)^a det(M)^b` on `0 ≤ M ≤ 1`. Three samplers produce it:
//!
//! * [`projector_product`]: compress a uniformly rotated projector of rank
//!   `q̃` to the range of a fixed projector of rank `q`.
//! * [`jacobi_wishart`]: `(X+X')^{-1/2} X (X+X')^{-1/2}` for independent
//!   Wishart matrices.
//! * [`jacobi_tridiagonal`]: a random bidiagonal model whose squared
//!   singular values have the same law, cheap enough for `n` in the hundreds.

use rand::Rng;
use rand_distr::{Beta, Distribution};

use crate::error::{ensure, Error, Result};
use crate::matalg::{eigenvalues, inv_sqrt_psd, HermitianMatrix, Spectrum, SymTridiagonal};
use crate::randgen::{complex_ginibre, random_projector};
use crate::scalar::Real;

/// Ranks of the fixed projector (`q`) and the rotated one (`q_tilde`) in `C^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjectorPair {
    pub n: usize,
    pub q: usize,
    pub q_tilde: usize,
}

impl ProjectorPair {
    pub fn new(n: usize, q: usize, q_tilde: usize) -> Result<Self> {
        ensure!(n >= 1, Parameter, "dimension must be positive");
        ensure!(q >= 1 && q <= n, Parameter, "rank q = {q} must lie in 1..={n}");
        ensure!(q_tilde >= 1 && q_tilde <= n, Parameter, "rank q_tilde = {q_tilde} must lie in 1..={n}");
        Ok(Self { n, q, q_tilde })
    }

    /// `q ≤ q̃` and `q + q̃ ≤ n`.
    pub fn is_canonical(&self) -> bool {
        self.q <= self.q_tilde && self.q + self.q_tilde <= self.n
    }

    /// Ensemble parameter `(q, n-q-q̃, q̃-q)` of a canonical pair.
    pub fn jacobi_params(&self) -> Result<EnsembleParams<f64>> {
        ensure!(self.is_canonical(), Parameter, "pair {self:?} is not canonical");
        EnsembleParams::new(
            self.q,
            (self.n - self.q - self.q_tilde) as f64,
            (self.q_tilde - self.q) as f64,
        )
    }
}

/// Size `n` and exponents `a` (on `1-M`) and `b` (on `M`) of a Jacobi ensemble.
///
/// In the polynomial variable `x = 2λ - 1` these become the weight
/// `(1-x)^a (1+x)^b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleParams<T> {
    pub n: usize,
    pub a: T,
    pub b: T,
}

impl<T: Real> EnsembleParams<T> {
    pub fn new(n: usize, a: T, b: T) -> Result<Self> {
        ensure!(n >= 1, Parameter, "ensemble size must be positive");
        ensure!(a >= T::zero() && a.is_finite(), Parameter, "a = {a} must be finite and nonnegative");
        ensure!(b >= T::zero() && b.is_finite(), Parameter, "b = {b} must be finite and nonnegative");
        Ok(Self { n, a, b })
    }

    /// `a / n`.
    pub fn alpha(&self) -> T {
        self.a / T::from_usize_lossy(self.n)
    }

    /// `b / n`.
    pub fn beta(&self) -> T {
        self.b / T::from_usize_lossy(self.n)
    }

    /// Parameters with `a` and `b` exchanged (law of `1 - M`).
    pub fn swapped(&self) -> Self {
        Self { n: self.n, a: self.b, b: self.a }
    }
}

/// How eigenvalues of the canonical ensemble map back to the original product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenMap {
    Identity,
    /// `λ → 1 - λ`
    Reflect,
}

impl EigenMap {
    pub fn apply(&self, x: f64) -> f64 {
        match self {
            Self::Identity => x,
            Self::Reflect => 1.0 - x,
        }
    }
}

/// Which rewriting brought a pair to canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionCase {
    AlreadyCanonical,
    /// Exchange the roles of `q` and `q̃`.
    Swap,
    /// Replace the rotated projector by its complement.
    Reflect,
    /// Swap, then replace by the complement.
    SwapThenReflect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReductionPlan {
    pub original: ProjectorPair,
    pub canonical: ProjectorPair,
    pub case: ReductionCase,
    pub eigen_map: EigenMap,
    /// Number of eigenvalues of the `q x q` compression that are not
    /// deterministically 0 or 1.
    pub kept_count: usize,
}

/// Canonical pair and eigenvalue map for the product `π π̃ π` of ranks `(q, q̃)`.
///
/// The non-trivial spectrum of `π π̃ π` equals that of `π̃ π π̃`, so `q` and
/// `q̃` may be exchanged. Replacing `π̃` by `1 - π̃` turns the compressed
/// block `B` into `1 - B`, which handles `q + q̃ > n`.
pub fn reduce_ranks(n: usize, q: usize, q_tilde: usize) -> Result<ReductionPlan> {
    let original = ProjectorPair::new(n, q, q_tilde)?;
    let (canonical, case, eigen_map) = if original.is_canonical() {
        (original, ReductionCase::AlreadyCanonical, EigenMap::Identity)
    } else if q + q_tilde <= n {
        (ProjectorPair::new(n, q_tilde, q)?, ReductionCase::Swap, EigenMap::Identity)
    } else if q_tilde >= q {
        // a full-rank projector reflects to rank 0: nothing random is left
        (ProjectorPair { n, q: n - q_tilde, q_tilde: q }, ReductionCase::Reflect, EigenMap::Reflect)
    } else {
        (ProjectorPair { n, q: n - q, q_tilde }, ReductionCase::SwapThenReflect, EigenMap::Reflect)
    };
    debug_assert!(canonical.is_canonical());
    Ok(ReductionPlan { original, canonical, case, eigen_map, kept_count: canonical.q })
}

/// `W W*` for an `n x q` complex Ginibre `W` with entry variance `scale`.
pub fn wishart<R: Rng + ?Sized>(rng: &mut R, n: usize, q: usize, scale: f64) -> Result<HermitianMatrix> {
    let w = complex_ginibre(rng, n, q, scale)?;
    HermitianMatrix::new(&w * w.adjoint())
}

/// `(X+X')^{-1/2} X (X+X')^{-1/2}` with `X`, `X'` independent `n x n`
/// Wishart matrices built from `p` and `p'` columns of variance `1/n`.
///
/// For `p, p' ≥ n` this is the Jacobi ensemble with `det(M)^{p-n}` and
/// `det(1-M)^{p'-n}`.
pub fn wishart_ratio<R: Rng + ?Sized>(rng: &mut R, n: usize, p: usize, p_prime: usize) -> Result<HermitianMatrix> {
    ensure!(n >= 1 && p >= 1 && p_prime >= 1, Parameter, "dimensions must be positive");
    ensure!(p + p_prime >= n, Parameter, "p + p' = {} < n = {n}: X + X' is singular", p + p_prime);
    let scale = 1.0 / n as f64;
    let x = wishart(rng, n, p, scale)?;
    let x_prime = wishart(rng, n, p_prime, scale)?;
    let sum = HermitianMatrix::new(x.as_matrix() + x_prime.as_matrix())?;
    let r = inv_sqrt_psd(&sum, None)?;
    HermitianMatrix::new(r.as_matrix() * x.as_matrix() * r.as_matrix())
}

/// Jacobi ensemble of a canonical pair through the Wishart construction.
///
/// The numerator carries `q̃` columns and the complement `n - q̃`, which
/// gives `det(M)^{q̃-q} det(1-M)^{n-q-q̃}` and `E tr J = q q̃ / n`.
pub fn jacobi_wishart<R: Rng + ?Sized>(rng: &mut R, n: usize, q: usize, q_tilde: usize) -> Result<HermitianMatrix> {
    let pair = ProjectorPair::new(n, q, q_tilde)?;
    ensure!(pair.is_canonical(), Parameter, "need q <= q_tilde and q + q_tilde <= n, got {pair:?}");
    wishart_ratio(rng, q, q_tilde, n - q_tilde)
}

/// `q x q` compression of `π π̃ π` with `π = diag(1_q, 0)` and `π̃` a
/// uniformly rotated projector of rank `q̃`.
pub fn projector_product<R: Rng + ?Sized>(rng: &mut R, pair: ProjectorPair) -> Result<HermitianMatrix> {
    let rotated = random_projector(rng, pair.n, pair.q_tilde)?;
    rotated.top_left(pair.q)
}

/// Symmetric tridiagonal matrix whose eigenvalues follow the Jacobi
/// ensemble `(n, a, b)`, as `BᵀB` for a random bidiagonal `B` with
/// independent Beta-distributed angles.
pub fn jacobi_tridiagonal<R: Rng + ?Sized>(rng: &mut R, params: EnsembleParams<f64>) -> Result<SymTridiagonal> {
    let n = params.n;
    // exponent on λ, exponent on 1 - λ
    let (p, r) = (params.b, params.a);
    let beta = |x: f64, y: f64, rng: &mut R| -> Result<f64> {
        let d = Beta::new(x, y).map_err(|e| Error::Parameter(format!("beta({x}, {y}): {e}")))?;
        Ok(d.sample(rng))
    };
    let mut c = vec![0.0; n + 1];
    let mut s = vec![0.0; n + 1];
    for k in 1..=n {
        let kf = k as f64;
        let v = beta(p + kf, r + kf, rng)?;
        c[k] = v.sqrt();
        s[k] = (1.0 - v).sqrt();
    }
    let mut cp = vec![0.0; n];
    let mut sp = vec![0.0; n];
    for k in 1..n {
        let kf = k as f64;
        let v = beta(kf, p + r + 1.0 + kf, rng)?;
        cp[k] = v.sqrt();
        sp[k] = (1.0 - v).sqrt();
    }
    let diag: Vec<f64> = (0..n).map(|i| if i == 0 { c[n] } else { c[n - i] * sp[n - i] }).collect();
    let sup: Vec<f64> = (0..n.saturating_sub(1)).map(|i| -s[n - i] * cp[n - 1 - i]).collect();
    SymTridiagonal::gram_of_upper_bidiagonal(&diag, &sup)
}

/// Sampling route for the canonical ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Projector,
    Wishart,
    Tridiagonal,
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "projector" => Ok(Self::Projector),
            "wishart" => Ok(Self::Wishart),
            "tridiagonal" | "bidiagonal" => Ok(Self::Tridiagonal),
            other => Err(Error::Parameter(format!("unknown route '{other}'"))),
        }
    }
}

/// Eigenvalues of a canonical pair's ensemble by the chosen route, descending.
pub fn sample_canonical<R: Rng + ?Sized>(rng: &mut R, pair: ProjectorPair, route: Route) -> Result<Spectrum> {
    ensure!(pair.is_canonical(), Parameter, "pair {pair:?} is not canonical");
    if pair.q == 0 {
        return Ok(Spectrum::from_unsorted(Vec::new()));
    }
    match route {
        Route::Projector => Ok(eigenvalues(&projector_product(rng, pair)?)),
        Route::Wishart => Ok(eigenvalues(&jacobi_wishart(rng, pair.n, pair.q, pair.q_tilde)?)),
        Route::Tridiagonal => Ok(jacobi_tridiagonal(rng, pair.jacobi_params()?)?.eigenvalues()),
    }
}

/// Non-trivial eigenvalues of `π π̃ π` for arbitrary ranks: the canonical
/// ensemble is sampled and its eigenvalues mapped back, descending.
pub fn sample_nontrivial<R: Rng + ?Sized>(rng: &mut R, plan: &ReductionPlan, route: Route) -> Result<Spectrum> {
    let spec = sample_canonical(rng, plan.canonical, route)?;
    Ok(Spectrum::from_unsorted(spec.values().iter().map(|&x| plan.eigen_map.apply(x)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirics::{ks_distance, EmpiricalSample};
    use crate::randgen::SeededStream;

    #[test]
    fn reduction_cases() {
        let p = reduce_ranks(10, 3, 5).unwrap();
        assert_eq!((p.canonical.q, p.canonical.q_tilde, p.eigen_map), (3, 5, EigenMap::Identity));
        let p = reduce_ranks(10, 5, 3).unwrap();
        assert_eq!((p.canonical.q, p.canonical.q_tilde, p.eigen_map), (3, 5, EigenMap::Identity));
        assert_eq!(p.case, ReductionCase::Swap);
        let p = reduce_ranks(10, 4, 8).unwrap();
        assert_eq!((p.canonical.q, p.canonical.q_tilde, p.eigen_map), (2, 4, EigenMap::Reflect));
        let p = reduce_ranks(10, 8, 4).unwrap();
        assert_eq!((p.canonical.q, p.canonical.q_tilde, p.case), (2, 4, ReductionCase::SwapThenReflect));
        assert!(reduce_ranks(10, 0, 4).is_err());
        assert!(reduce_ranks(10, 4, 11).is_err());
        for n in 1..12 {
            for q in 1..=n {
                for qt in 1..=n {
                    assert!(reduce_ranks(n, q, qt).unwrap().canonical.is_canonical());
                }
            }
        }
    }

    #[test]
    fn wishart_trace_and_rank() {
        let mut rng = SeededStream::new(2, 0).rng();
        let draws = 10_000;
        let mut tr = 0.0;
        for _ in 0..draws {
            let w = wishart(&mut rng, 4, 6, 1.0).unwrap();
            assert!(eigenvalues(&w).smallest() > -1e-10);
            tr += w.trace();
        }
        assert!((tr / draws as f64 - 24.0).abs() < 0.5);
        let spec = eigenvalues(&wishart(&mut rng, 4, 2, 1.0).unwrap());
        assert_eq!(spec.values().iter().filter(|l| l.abs() < 1e-10).count(), 2);
    }

    #[test]
    fn wishart_route_spectrum_in_unit_interval() {
        let mut rng = SeededStream::new(5, 0).rng();
        let j = jacobi_wishart(&mut rng, 48, 12, 18).unwrap();
        assert_eq!(j.dim(), 12);
        let spec = eigenvalues(&j);
        assert!(spec.smallest() >= -1e-10 && spec.largest() <= 1.0 + 1e-10);
        assert!(spec.largest() < 1.0 - 1e-8);
        assert!(jacobi_wishart(&mut rng, 20, 12, 10).is_err());
    }

    #[test]
    fn projector_route_examples() {
        let mut rng = SeededStream::new(6, 0).rng();
        let spec = eigenvalues(&projector_product(&mut rng, ProjectorPair::new(10, 4, 8).unwrap()).unwrap());
        assert!(spec.values().iter().filter(|&&l| (l - 1.0).abs() < 1e-8).count() >= 2);
        assert!(spec.smallest() >= -1e-10 && spec.largest() <= 1.0 + 1e-10);

        let id = projector_product(&mut rng, ProjectorPair::new(6, 3, 6).unwrap()).unwrap();
        assert_eq!(id, HermitianMatrix::identity(3));

        let pair = ProjectorPair::new(10, 3, 5).unwrap();
        let draws = 10_000;
        let mean: f64 = (0..draws).map(|_| projector_product(&mut rng, pair).unwrap().trace()).sum::<f64>() / draws as f64;
        assert!((mean - 1.5).abs() < 0.05, "{mean}");
    }

    #[test]
    fn wishart_route_mean_trace_matches_projector_route() {
        // q q̃ / n = 12 * 18 / 48
        let mut rng = SeededStream::new(8, 0).rng();
        let draws = 2000;
        let mean: f64 = (0..draws).map(|_| jacobi_wishart(&mut rng, 48, 12, 18).unwrap().trace()).sum::<f64>() / draws as f64;
        assert!((mean - 4.5).abs() < 0.05, "{mean}");
    }

    fn pooled(route: Route, pair: ProjectorPair, draws: u64, seed: u64) -> EmpiricalSample {
        let mut all = Vec::new();
        for t in 0..draws {
            let mut rng = SeededStream::new(seed, t).rng();
            all.extend_from_slice(sample_canonical(&mut rng, pair, route).unwrap().values());
        }
        EmpiricalSample::new(all)
    }

    #[test]
    fn tridiagonal_route_matches_wishart_route() {
        let pair = ProjectorPair::new(17, 6, 8).unwrap();
        let a = pooled(Route::Tridiagonal, pair, 3000, 1);
        let b = pooled(Route::Wishart, pair, 3000, 2);
        let d = ks_distance(&a, &b).unwrap();
        assert!(d < 0.02, "{d}");
    }

    #[test]
    fn reduction_round_trip() {
        // (9, 6, 5) swaps and reflects to the canonical pair (3, 5)
        let plan = reduce_ranks(9, 6, 5).unwrap();
        let draws = 3000;
        let mut direct = Vec::new();
        let mut mapped = Vec::new();
        for t in 0..draws {
            let mut rng = SeededStream::new(31, t).rng();
            let block = projector_product(&mut rng, plan.original).unwrap();
            let spec = eigenvalues(&block);
            // two unit eigenvalues and one zero are trivial
            direct.extend_from_slice(&spec.values()[2..2 + plan.kept_count]);
            let mut rng = SeededStream::new(32, t).rng();
            mapped.extend_from_slice(sample_nontrivial(&mut rng, &plan, Route::Wishart).unwrap().values());
        }
        let d = ks_distance(&EmpiricalSample::new(direct), &EmpiricalSample::new(mapped)).unwrap();
        assert!(d < 0.03, "{d}");
    }

    #[test]
    fn route_parsing() {
        assert_eq!("wishart".parse::<Route>().unwrap(), Route::Wishart);
        assert!("other".parse::<Route>().is_err());
    }
}
