//! Gap probabilities `det(I - K)` on an interval by Nyström discretization.
//!
//! The kernel is sampled at Gauss–Legendre nodes and weighted symmetrically,
//! `A_ij = √w_i K(x_i, x_j) √w_j`, and `det(I - A)` is taken by partially
//! pivoted LU.

use crate::cdkernel::{kernel, KernelSpec};
use crate::ensembles::EnsembleParams;
use crate::error::{ensure, Error, Result};
use crate::limits::airy_kernel;
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;

/// Default number of quadrature nodes.
pub const DEFAULT_QUAD: usize = 64;
/// Default truncation length of `[t, ∞)` for the Airy kernel.
pub const DEFAULT_TAIL: f64 = 12.0;

/// A kernel restricted to `[lo, hi]`, discretized with `m` nodes.
pub struct GapQuery<'a, T> {
    pub kernel: &'a (dyn Fn(T, T) -> Result<T> + Sync),
    pub lo: T,
    pub hi: T,
    pub m: usize,
}

impl<'a, T: Real> GapQuery<'a, T> {
    pub fn new(kernel: &'a (dyn Fn(T, T) -> Result<T> + Sync), lo: T, hi: T, m: usize) -> Result<Self> {
        ensure!(lo < hi, Parameter, "interval needs lo < hi, got [{lo}, {hi}]");
        ensure!(m >= 8, Parameter, "need at least 8 quadrature nodes, got {m}");
        Ok(Self { kernel, lo, hi, m })
    }
}

/// Determinant of a dense row-major `n x n` matrix by LU with partial
/// pivoting.
pub fn determinant<T: Real>(mut a: Vec<T>, n: usize) -> Result<T> {
    ensure!(a.len() == n * n, Parameter, "matrix has {} entries, expected {}", a.len(), n * n);
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().partial_cmp(&a[j * n + col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        let p = a[pivot * n + col];
        if p == T::zero() {
            return Ok(T::zero());
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            det = -det;
        }
        det *= p;
        for row in col + 1..n {
            let f = a[row * n + col] / p;
            if f != T::zero() {
                for k in col + 1..n {
                    let v = a[col * n + k];
                    a[row * n + k] -= f * v;
                }
            }
        }
    }
    Ok(det)
}

/// `det(I - K)` on `[lo, hi]`.
pub fn gap_probability<T: Real>(q: &GapQuery<'_, T>) -> Result<T> {
    let rule = GaussLegendre::<T>::new(q.m)?;
    let (x, w) = rule.on_interval(q.lo, q.hi);
    let m = q.m;
    let sw: Vec<T> = w.iter().map(|w| w.sqrt()).collect();
    let mut a = vec![T::zero(); m * m];
    for i in 0..m {
        for j in i..m {
            let k = (q.kernel)(x[i], x[j])?;
            ensure!(k.is_finite(), Numeric, "kernel is not finite at ({}, {})", x[i], x[j]);
            let v = -sw[i] * k * sw[j];
            a[i * m + j] = v;
            a[j * m + i] = v;
        }
        a[i * m + i] += T::one();
    }
    let det = determinant(a, m)?;
    ensure!(det.is_finite(), Numeric, "determinant is not finite");
    if det < T::lit(-1e-8) {
        return Err(Error::Consistency(format!("gap probability {det} is negative")));
    }
    Ok(det)
}

/// `P(x_max ≤ x)` for the finite-`n` ensemble in the polynomial variable,
/// as the gap probability of `[x, 1]`.
pub fn largest_eval_cdf<T: Real>(params: &EnsembleParams<T>, x: T, m: usize) -> Result<T> {
    ensure!(x.abs() < T::one(), Domain, "x = {x} must lie in (-1, 1)");
    let spec = KernelSpec::new(*params);
    // nodes never reach 1, where the kernel is undefined
    let k = move |u: T, v: T| kernel(&spec, u, v);
    gap_probability(&GapQuery::new(&k, x, T::one(), m)?)
}

/// `F₂(t) = det(I - K_Ai)` on `[t, t + tail]`.
pub fn tracy_widom_cdf<T: Real>(t: T, m: usize, tail: T) -> Result<T> {
    ensure!(t.is_finite(), Domain, "t must be finite");
    ensure!(tail > T::zero(), Parameter, "tail length must be positive");
    let k = |u: T, v: T| Ok(airy_kernel(u, v));
    gap_probability(&GapQuery::new(&k, t, t + tail, m)?)
}

/// Solves `F₂(t) = p` by bisection on `[-8, 6]`.
pub fn tracy_widom_quantile(p: f64, m: usize, tail: f64) -> Result<f64> {
    ensure!(p > 0.0 && p < 1.0, Domain, "probability {p} must lie in (0, 1)");
    let (mut lo, mut hi) = (-8.0, 6.0);
    ensure!(tracy_widom_cdf(lo, m, tail)? < p && tracy_widom_cdf(hi, m, tail)? > p, Numeric, "quantile {p} outside [-8, 6]");
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if tracy_widom_cdf(mid, m, tail)? < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
