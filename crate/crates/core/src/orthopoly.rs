//! Jacobi polynomials `P_n^{a,b}`, orthogonal for `(1-x)^a (1+x)^b` on
//! `[-1, 1]` and normalized by `P_n^{a,b}(1) = C(n+a, n)`.

use num_complex::Complex;

use crate::error::{ensure, Result};
use crate::scalar::{ln_gamma, Field, Real};
use crate::scaled::ScaledValue;

/// Degree and parameters of a Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams<T> {
    pub n: usize,
    pub a: T,
    pub b: T,
}

impl<T: Real> JacobiParams<T> {
    pub fn new(n: usize, a: T, b: T) -> Result<Self> {
        ensure!(a >= T::zero() && b >= T::zero(), Parameter, "a = {a}, b = {b} must be nonnegative");
        Ok(Self { n, a, b })
    }
}

/// Coefficients `(c1, c2)` of `P_k = c1(x) P_{k-1} - c2 P_{k-2}` for `k ≥ 2`.
fn recurrence<T: Real>(k: usize, a: T, b: T, x: T) -> (T, T) {
    let one = T::one();
    let two = T::lit(2.0);
    let k = T::from_usize_lossy(k);
    let s = two * k + a + b;
    let den = two * k * (k + a + b) * (s - two);
    let c1 = (s - one) * (s * (s - two) * x + a * a - b * b) / den;
    let c2 = two * (k + a - one) * (k + b - one) * s / den;
    (c1, c2)
}

fn degree_one<T: Real>(a: T, b: T, x: T) -> T {
    let half = T::lit(0.5);
    (a + T::one()) + (a + b + T::lit(2.0)) * (x - T::one()) * half
}

/// `(P_{n-1}(x), P_n(x))` by forward recurrence in scaled arithmetic.
/// For `n = 0` the first entry is zero.
pub fn jacobi_pair<T: Real>(n: usize, a: T, b: T, x: T) -> (ScaledValue<T>, ScaledValue<T>) {
    if n == 0 {
        return (ScaledValue::zero(), ScaledValue::one());
    }
    let mut prev = ScaledValue::one();
    let mut cur = ScaledValue::from_value(degree_one(a, b, x));
    for k in 2..=n {
        let (c1, c2) = recurrence(k, a, b, x);
        let next = cur.scale(c1) - prev.scale(c2);
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// `P_n^{a,b}(x)`.
pub fn jacobi_eval<T: Real>(p: JacobiParams<T>, x: T) -> ScaledValue<T> {
    jacobi_pair(p.n, p.a, p.b, x).1
}

/// `P_n^{a,b}(x)` by the same recurrence in any field, e.g. exact rationals.
pub fn jacobi_exact<T: Field>(n: usize, a: T, b: T, x: T) -> T {
    let c = |k: usize| T::from_usize(k).expect("small integer");
    if n == 0 {
        return T::one();
    }
    let two = c(2);
    let mut prev = T::one();
    let mut cur = (a.clone() + T::one()) + (a.clone() + b.clone() + two.clone()) * (x.clone() - T::one()) / two.clone();
    for k in 2..=n {
        let kk = c(k);
        let s = two.clone() * kk.clone() + a.clone() + b.clone();
        let den = two.clone() * kk.clone() * (kk.clone() + a.clone() + b.clone()) * (s.clone() - two.clone());
        let c1 = (s.clone() - T::one())
            * (s.clone() * (s.clone() - two.clone()) * x.clone() + a.clone() * a.clone() - b.clone() * b.clone());
        let c2 = two.clone() * (kk.clone() + a.clone() - T::one()) * (kk + b.clone() - T::one()) * s;
        let next = (c1 * cur.clone() - c2 * prev) / den;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(P_n^{a,b})'(x) = (n+a+b+1)/2 · P_{n-1}^{a+1,b+1}(x)`.
pub fn jacobi_deriv<T: Real>(p: JacobiParams<T>, x: T) -> ScaledValue<T> {
    if p.n == 0 {
        return ScaledValue::zero();
    }
    let one = T::one();
    let factor = (T::from_usize_lossy(p.n) + p.a + p.b + one) * T::lit(0.5);
    jacobi_pair(p.n - 1, p.a + one, p.b + one, x).1.scale(factor)
}

/// `w^{a,b}(x) = (1-x)^a (1+x)^b`, computed through logarithms.
pub fn weight<T: Real>(a: T, b: T, x: T) -> Result<ScaledValue<T>> {
    let one = T::one();
    ensure!(x >= -one && x <= one, Domain, "x = {x} outside [-1, 1]");
    let term = |e: T, base: T| if e == T::zero() { T::zero() } else { e * base.ln() };
    let ln = term(a, one - x) + term(b, one + x);
    Ok(ScaledValue::from_ln(ln, false))
}

/// `g_n(x) = (1-x)^{(a+1)/2} (1+x)^{(b+1)/2} P_n^{a,b}(x)`, which solves
/// `g'' + χ_n g = 0` with `χ_n` from [`chi`].
pub fn g_n<T: Real>(p: JacobiParams<T>, x: T) -> Result<ScaledValue<T>> {
    let half = T::lit(0.5);
    let w = weight((p.a + T::one()) * half, (p.b + T::one()) * half, x)?;
    Ok(w * jacobi_eval(p, x))
}

/// `γ_n = 2^{-a-b}/(2n+a+b) · Γ(n+1)Γ(n+a+b+1) / (Γ(n+a)Γ(n+b))`, the
/// constant in front of the Christoffel–Darboux sum.
pub fn gamma_n<T: Real>(n: usize, a: T, b: T) -> Result<ScaledValue<T>> {
    ensure!(n >= 1, Parameter, "gamma_n needs n >= 1");
    ensure!(a >= T::zero() && b >= T::zero(), Parameter, "a = {a}, b = {b} must be nonnegative");
    let nf = T::from_usize_lossy(n);
    let one = T::one();
    let two = T::lit(2.0);
    let ln = -(a + b) * two.ln() - (two * nf + a + b).ln() + ln_gamma(nf + one) + ln_gamma(nf + a + b + one)
        - ln_gamma(nf + a)
        - ln_gamma(nf + b);
    ensure!(ln.is_finite(), Numeric, "log gamma_n is not finite");
    Ok(ScaledValue::from_ln(ln, false))
}

/// Stirling approximant of [`gamma_n`] for `a = αn`, `b = βn`.
pub fn gamma_n_stirling<T: Real>(n: usize, a: T, b: T) -> ScaledValue<T> {
    let nf = T::from_usize_lossy(n);
    let one = T::one();
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let (al, be) = (a / nf, b / nf);
    let ln = nf.ln() - (a + b) * two.ln() + (nf + a + b + half) * (one + al + be).ln()
        - (nf + a - half) * (one + al).ln()
        - (nf + b - half) * (one + be).ln()
        - (two + al + be).ln();
    ScaledValue::from_ln(ln, false)
}

fn check_open<T: Real>(x: T) -> Result<()> {
    ensure!(x.abs() < T::one(), Domain, "x = {x} must lie in (-1, 1)");
    Ok(())
}

fn chi_constant<T: Real>(n: usize, a: T, b: T) -> T {
    let nf = T::from_usize_lossy(n);
    let one = T::one();
    T::lit(2.0) * nf * (nf + a + b + one) + (a + one) * (b + one)
}

/// `χ_n(x) = (1-a²)/(4(1-x)²) + (1-b²)/(4(1+x)²) + C/(2(1-x²))` with
/// `C = 2n(n+a+b+1) + (a+1)(b+1)`.
pub fn chi<T: Real>(n: usize, a: T, b: T, x: T) -> Result<T> {
    check_open(x)?;
    let one = T::one();
    let four = T::lit(4.0);
    let (l, r) = (one - x, one + x);
    Ok((one - a * a) / (four * l * l) + (one - b * b) / (four * r * r) + chi_constant(n, a, b) / (T::lit(2.0) * l * r))
}

/// `dχ_n/dx`.
pub fn chi_prime<T: Real>(n: usize, a: T, b: T, x: T) -> Result<T> {
    check_open(x)?;
    let one = T::one();
    let two = T::lit(2.0);
    let (l, r) = (one - x, one + x);
    let lr = l * r;
    Ok((one - a * a) / (two * l * l * l) - (one - b * b) / (two * r * r * r) + chi_constant(n, a, b) * x / (lr * lr))
}

/// Discriminant and angles of the oscillatory-region expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorAsymptotics<T> {
    pub delta: T,
    pub rho: T,
    pub theta: T,
    pub gamma: T,
}

/// `Δ = [α(x+1) + β(x-1)]² - 4(1+α+β)(1-x²)`.
pub fn interior_delta<T: Real>(alpha: T, beta: T, x: T) -> T {
    let one = T::one();
    let u = alpha * (x + one) + beta * (x - one);
    u * u - T::lit(4.0) * (one + alpha + beta) * (one - x * x)
}

/// Angles `ρ, θ, γ ∈ (-π, π]` at `α = a/n`, `β = b/n`; requires `Δ < 0`.
pub fn interior_angles<T: Real>(n: usize, a: T, b: T, x: T) -> Result<InteriorAsymptotics<T>> {
    ensure!(n >= 1, Parameter, "degree must be positive");
    check_open(x)?;
    let nf = T::from_usize_lossy(n);
    let (al, be) = (a / nf, b / nf);
    let delta = interior_delta(al, be, x);
    ensure!(delta < T::zero(), Domain, "Delta = {delta} >= 0: x = {x} is outside the oscillatory region");
    let one = T::one();
    let two = T::lit(2.0);
    let sq = (-delta).sqrt();
    let rho = Complex::new(al * (x + one) + be * (x - one), sq).arg();
    let s = al + be + one;
    let theta = (Complex::new((al + be + two) * x - (T::lit(3.0) * al + be + two), -sq) / (two * (x - one) * s)).arg();
    let gamma = (Complex::new((al + be + two) * x + (al + T::lit(3.0) * be + two), -sq) / (two * (x + one) * s)).arg();
    Ok(InteriorAsymptotics { delta, rho, theta, gamma })
}

/// Leading-order saddle-point approximation of `P_n^{a,b}(x)` for `a, b`
/// proportional to `n`, valid where `Δ < 0`. Relative accuracy is `O(1/n)`
/// away from the zeros of the cosine factor.
pub fn interior_asymptotic<T: Real>(n: usize, a: T, b: T, x: T) -> Result<ScaledValue<T>> {
    let ang = interior_angles(n, a, b, x)?;
    let nf = T::from_usize_lossy(n);
    let (al, be) = (a / nf, b / nf);
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let pi = T::PI();
    let s = al + be + one;
    let sq = (-ang.delta).sqrt();
    let amp = half * (T::lit(4.0) / (pi * nf * sq)).ln()
        + (-nf * (al + one) * half - quarter) * ((one - x) * s / (two * (al + one))).ln()
        + (-nf * (be + one) * half - quarter) * ((one + x) * s / (two * (be + one))).ln()
        + (nf * half + quarter) * ((one - x * x) * s / T::lit(4.0)).ln();
    let phase = -((one + al) * nf + half) * ang.theta - ((one + be) * nf + half) * ang.gamma
        + (nf + half) * ang.rho
        - nf * pi
        - pi * quarter;
    Ok(ScaledValue::from_ln(amp, false).scale(phase.cos()))
}
