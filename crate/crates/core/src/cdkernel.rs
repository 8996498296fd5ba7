//! Christoffel–Darboux kernel of the Jacobi ensemble and its bulk, soft-edge
//! and hard-edge rescalings.
//!
//! In the variable `x = 2λ - 1` the eigenvalues form a determinantal process
//! with kernel `K_n(x,y) = √(w(x)w(y)) Σ_{j<n} p_j(x) p_j(y)`, the `p_j`
//! orthonormal for `w(x) = (1-x)^a (1+x)^b`. Products of `γ_n`, weights and
//! polynomial values are assembled in [`ScaledValue`] form and exponentiated
//! once.

use crate::ensembles::EnsembleParams;
use crate::error::{ensure, Error, Result};
use crate::limits::edge_profile;
use crate::orthopoly::{chi, chi_prime, gamma_n, jacobi_pair, weight};
use crate::scalar::{ln_gamma, Real};
use crate::scaled::ScaledValue;

/// Default distance below which the kernel switches to its confluent form.
pub const DIAG_SWITCH_TOL: f64 = 1e-6;

/// Ensemble parameters plus the diagonal switch tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec<T> {
    pub params: EnsembleParams<T>,
    pub diag_switch_tol: T,
}

impl<T: Real> KernelSpec<T> {
    pub fn new(params: EnsembleParams<T>) -> Self {
        Self { params, diag_switch_tol: T::lit(DIAG_SWITCH_TOL) }
    }

    /// Shorthand for `KernelSpec::new(EnsembleParams::new(n, a, b)?)`.
    pub fn from_parts(n: usize, a: T, b: T) -> Result<Self> {
        Ok(Self::new(EnsembleParams::new(n, a, b)?))
    }

    fn nf(&self) -> T {
        T::from_usize_lossy(self.params.n)
    }
}

fn check_open<T: Real>(x: T) -> Result<()> {
    ensure!(x.abs() < T::one(), Domain, "x = {x} must lie in (-1, 1)");
    Ok(())
}

fn sqrt_weight<T: Real>(spec: &KernelSpec<T>, x: T) -> Result<ScaledValue<T>> {
    let half = T::lit(0.5);
    weight(spec.params.a * half, spec.params.b * half, x)
}

/// `K_n(x, y)`.
///
/// Off the diagonal this is `γ_n √(w(x)w(y)) [P_n(x)P_{n-1}(y) -
/// P_{n-1}(x)P_n(y)] / (x - y)`. When `|x - y|` is below
/// `diag_switch_tol · max(1, |x|, |y|)` the confluent value at the midpoint
/// is returned; the kernel is even in `y - x` about the midpoint, so this is
/// accurate to second order.
pub fn kernel<T: Real>(spec: &KernelSpec<T>, x: T, y: T) -> Result<T> {
    check_open(x)?;
    check_open(y)?;
    let scale = T::one().max(x.abs()).max(y.abs());
    if (x - y).abs() < spec.diag_switch_tol * scale {
        return kernel_diagonal(spec, (x + y) * T::lit(0.5));
    }
    let p = &spec.params;
    let (pm_x, pn_x) = jacobi_pair(p.n, p.a, p.b, x);
    let (pm_y, pn_y) = jacobi_pair(p.n, p.a, p.b, y);
    let num = pn_x * pm_y - pm_x * pn_y;
    let pre = gamma_n(p.n, p.a, p.b)? * sqrt_weight(spec, x)? * sqrt_weight(spec, y)?;
    let val = (pre * num).value() / (x - y);
    ensure!(val.is_finite(), Numeric, "kernel value at ({x}, {y}) is not finite");
    Ok(val)
}

/// `K_n(x, x) = γ_n w(x) [P_{n-1}(x) P_n'(x) - P_n(x) P_{n-1}'(x)]`.
pub fn kernel_diagonal<T: Real>(spec: &KernelSpec<T>, x: T) -> Result<T> {
    check_open(x)?;
    let p = &spec.params;
    let n = p.n;
    let one = T::one();
    let half = T::lit(0.5);
    let (pm, pn) = jacobi_pair(n, p.a, p.b, x);
    // P_n' and P_{n-1}' from the shifted family
    let (dpm_raw, dpn_raw) = if n >= 1 {
        jacobi_pair(n - 1, p.a + one, p.b + one, x)
    } else {
        (ScaledValue::zero(), ScaledValue::zero())
    };
    let nf = spec.nf();
    let dpn = dpn_raw.scale((nf + p.a + p.b + one) * half);
    let dpm = if n >= 2 { dpm_raw.scale((nf + p.a + p.b) * half) } else { ScaledValue::zero() };
    let bracket = pm * dpn - pn * dpm;
    let val = (gamma_n(n, p.a, p.b)? * weight(p.a, p.b, x)? * bracket).value();
    ensure!(val.is_finite(), Numeric, "kernel diagonal at {x} is not finite");
    Ok(val)
}

/// `n⁻¹ K_n(x, x)` in the form
/// `γ_n w(x) { (n+a+b)/2 [P_{n-1} P⁺_{n-1} - P_n P⁺_{n-2}] + ½ P_{n-1} P⁺_{n-1} } / n`,
/// where `P⁺` has parameters `(a+1, b+1)`.
pub fn one_point_density<T: Real>(spec: &KernelSpec<T>, x: T) -> Result<T> {
    check_open(x)?;
    let p = &spec.params;
    let n = p.n;
    if n == 1 {
        return kernel_by_sum(spec, x, x);
    }
    let one = T::one();
    let half = T::lit(0.5);
    let nf = spec.nf();
    let (pm, pn) = jacobi_pair(n, p.a, p.b, x);
    let (plus_m2, plus_m1) = jacobi_pair(n - 1, p.a + one, p.b + one, x);
    let main = (pm * plus_m1 - pn * plus_m2).scale((nf + p.a + p.b) * half);
    let extra = (pm * plus_m1).scale(half);
    let val = (gamma_n(n, p.a, p.b)? * weight(p.a, p.b, x)? * (main + extra)).value() / nf;
    ensure!(val.is_finite(), Numeric, "one-point density at {x} is not finite");
    Ok(val)
}

/// `ln h_j`, `h_j = ∫ P_j² w = 2^{a+b+1} Γ(j+a+1)Γ(j+b+1) / ((2j+a+b+1) Γ(j+a+b+1) j!)`.
fn ln_norm<T: Real>(j: usize, a: T, b: T) -> T {
    let jf = T::from_usize_lossy(j);
    let one = T::one();
    let two = T::lit(2.0);
    (a + b + one) * two.ln() + ln_gamma(jf + a + one) + ln_gamma(jf + b + one)
        - (two * jf + a + b + one).ln()
        - ln_gamma(jf + a + b + one)
        - ln_gamma(jf + one)
}

/// `K_n(x, y)` summed term by term from orthonormalized polynomials. Costs
/// `O(n²)`; meant as an independent check of [`kernel`] for small `n`.
pub fn kernel_by_sum<T: Real>(spec: &KernelSpec<T>, x: T, y: T) -> Result<T> {
    check_open(x)?;
    check_open(y)?;
    let p = &spec.params;
    let mut sum = ScaledValue::zero();
    for j in 0..p.n {
        let px = jacobi_pair(j, p.a, p.b, x).1;
        let py = jacobi_pair(j, p.a, p.b, y).1;
        sum = sum + px * py * ScaledValue::from_ln(-ln_norm(j, p.a, p.b), false);
    }
    Ok((sum * sqrt_weight(spec, x)? * sqrt_weight(spec, y)?).value())
}

/// Local bulk scale `n f_n(x)`, with `f_n` the limiting density at the
/// finite-`n` ratios `a/n`, `b/n`.
pub fn bulk_scale<T: Real>(spec: &KernelSpec<T>, x: T) -> Result<T> {
    let prof = edge_profile(spec.params.alpha(), spec.params.beta())?;
    let f = prof.density(x)?;
    ensure!(f > T::zero(), Domain, "x = {x} is outside the bulk ({}, {})", prof.r, prof.s);
    Ok(spec.nf() * f)
}

/// `K_n(x + u/(n f_n(x)), x + v/(n f_n(x))) / (n f_n(x))`.
pub fn rescaled_bulk<T: Real>(spec: &KernelSpec<T>, x: T, u: T, v: T) -> Result<T> {
    let c = bulk_scale(spec, x)?;
    Ok(kernel(spec, x + u / c, x + v / c)? / c)
}

/// Soft-edge location and scale `(s_n, h_n)`: `s_n` is the largest zero
/// of `χ_n` in `(-1, 1)` and `h_n = (-χ_n'(s_n))^{1/3}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoftEdge<T> {
    pub s_n: T,
    pub h_n: T,
}

/// Bisection on `χ_n` between the bulk centre and `1 - 1e-12`, then Newton
/// polishing with `χ_n'`.
pub fn soft_edge<T: Real>(params: &EnsembleParams<T>) -> Result<SoftEdge<T>> {
    let (n, a, b) = (params.n, params.a, params.b);
    let prof = edge_profile(params.alpha(), params.beta())?;
    let mut lo = prof.midpoint();
    let mut hi = T::one() - T::lit(1e-12);
    let f = |x: T| chi(n, a, b, x);
    ensure!(f(lo)? > T::zero(), Numeric, "chi is not positive at the bulk centre {lo}");
    if f(hi)? >= T::zero() {
        return Err(Error::Numeric(format!("chi has no zero in ({lo}, 1): a = {a} too small for a soft edge")));
    }
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if f(mid)? > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < T::lit(1e-13) {
            break;
        }
    }
    let mut s = (lo + hi) * T::lit(0.5);
    for _ in 0..5 {
        let step = f(s)? / chi_prime(n, a, b, s)?;
        let next = s - step;
        if next > lo - T::lit(1e-12) && next < hi + T::lit(1e-12) {
            s = next;
        }
        if step.abs() < T::lit(1e-15) {
            break;
        }
    }
    let d = chi_prime(n, a, b, s)?;
    ensure!(d < T::zero(), Numeric, "chi' at the soft edge is {d}, expected negative");
    Ok(SoftEdge { s_n: s, h_n: (-d).cbrt() })
}

/// Large-`n` approximation
/// `h_n ≈ n^{2/3} (2 √((1+α)(1+β)(1+α+β)) / (1 - s_n²)²)^{1/3}`.
pub fn soft_scale_asymptotic<T: Real>(params: &EnsembleParams<T>, s_n: T) -> T {
    let one = T::one();
    let (al, be) = (params.alpha(), params.beta());
    let nf = T::from_usize_lossy(params.n);
    let inner = T::lit(2.0) * ((one + al) * (one + be) * (one + al + be)).sqrt() / (one - s_n * s_n).powi(2);
    nf.powf(T::lit(2.0 / 3.0)) * inner.cbrt()
}

/// `K_n(s_n + u/h_n, s_n + v/h_n) / h_n`.
pub fn rescaled_soft<T: Real>(spec: &KernelSpec<T>, u: T, v: T) -> Result<T> {
    let edge = soft_edge(&spec.params)?;
    rescaled_soft_at(spec, edge, u, v)
}

/// [`rescaled_soft`] with a precomputed edge.
pub fn rescaled_soft_at<T: Real>(spec: &KernelSpec<T>, edge: SoftEdge<T>, u: T, v: T) -> Result<T> {
    let h = edge.h_n;
    Ok(kernel(spec, edge.s_n + u / h, edge.s_n + v / h)? / h)
}

/// Hard-edge scale `c_n = 2n²(1 + a/n)`.
pub fn hard_scale<T: Real>(params: &EnsembleParams<T>) -> T {
    let nf = T::from_usize_lossy(params.n);
    T::lit(2.0) * nf * nf * (T::one() + params.alpha())
}

/// `K_n(-1 + u/c_n, -1 + v/c_n) / c_n`; `b` must be a nonnegative integer.
pub fn rescaled_hard<T: Real>(spec: &KernelSpec<T>, u: T, v: T) -> Result<T> {
    let b = spec.params.b;
    ensure!(b == b.round(), Parameter, "hard-edge limit needs an integer b, got {b}");
    ensure!(u >= T::zero() && v >= T::zero(), Domain, "u, v must be nonnegative");
    let c = hard_scale(&spec.params);
    let one = T::one();
    Ok(kernel(spec, -one + u / c, -one + v / c)? / c)
}
