//! Airy functions `Ai`, `Ai'`, `Bi` and the Airy kernel.
//!
//! On `[0, 5.5]` the Maclaurin series is summed directly. For negative
//! arguments the ODE `y'' = x y` is integrated from the origin by local Taylor
//! steps, which keeps the error at the level of the oscillation amplitude
//! instead of the size of the largest series term. Large `|x|` use the
//! standard asymptotic expansions, truncated at their smallest term.

use crate::scalar::Real;

const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_6;
const GAMMA_TWO_THIRDS: f64 = 1.354_117_939_426_400_4;

const SERIES_MAX: f64 = 5.5;
const STEP_MIN: f64 = -30.0;
const DIAG_TOL: f64 = 1e-6;

/// `Ai(0) = 3^{-2/3} / Γ(2/3)`.
pub fn ai_zero<T: Real>() -> T {
    T::lit(3f64.powf(-2.0 / 3.0) / GAMMA_TWO_THIRDS)
}

/// `Ai'(0) = -3^{-1/3} / Γ(1/3)`.
pub fn ai_prime_zero<T: Real>() -> T {
    T::lit(-(3f64.powf(-1.0 / 3.0)) / GAMMA_ONE_THIRD)
}

fn bi_zero<T: Real>() -> T {
    T::lit(3f64.powf(-1.0 / 6.0) / GAMMA_TWO_THIRDS)
}

fn bi_prime_zero<T: Real>() -> T {
    T::lit(3f64.powf(1.0 / 6.0) / GAMMA_ONE_THIRD)
}

/// `(f, f', g, g')` for the two power series with `y'' = x y`,
/// `f(0) = 1, f'(0) = 0, g(0) = 0, g'(0) = 1`.
fn maclaurin<T: Real>(x: T) -> (T, T, T, T) {
    let x3 = x * x * x;
    let (mut f, mut fp, mut g, mut gp) = (T::one(), T::zero(), x, T::one());
    // term_f = coefficient * x^{3k}, term_g = coefficient * x^{3k+1}
    let mut tf = T::one();
    let mut tg = x;
    // derivative terms carried separately so x = 0 needs no special case
    let mut tfp = T::zero();
    let mut tgp = T::one();
    for k in 1..200 {
        let k3 = T::from_usize_lossy(3 * k);
        tf = tf * x3 / (k3 * (k3 - T::one()));
        tg = tg * x3 / (k3 * (k3 + T::one()));
        // d/dx x^{3k} = 3k x^{3k-1}; built from the previous term's power
        tfp = if k == 1 { x * x / T::lit(2.0) } else { tfp * x3 / ((k3 - T::lit(3.0)) * (k3 - T::one())) };
        tgp = tgp * x3 / ((k3 - T::lit(2.0)) * k3);
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        let scale = f.abs() + g.abs() + fp.abs() + gp.abs();
        if tf.abs() + tg.abs() + tfp.abs() + tgp.abs() <= T::epsilon() * T::lit(0.01) * scale {
            break;
        }
    }
    (f, fp, g, gp)
}

/// Advances `(y, y')` of `y'' = x y` from `x0` to `x1` by Taylor steps.
fn integrate<T: Real>(mut y: T, mut yp: T, x0: T, x1: T) -> (T, T) {
    let span = x1 - x0;
    let steps = (span.abs() / T::lit(0.25)).ceil().to_usize().unwrap_or(1).max(1);
    let h = span / T::from_usize_lossy(steps);
    let mut x = x0;
    let mut d = [T::zero(); 64];
    for _ in 0..steps {
        d[0] = y;
        d[1] = yp;
        // y^{(k+2)} = x y^{(k)} + k y^{(k-1)}
        for k in 0..62 {
            let prev = if k >= 1 { T::from_usize_lossy(k) * d[k - 1] } else { T::zero() };
            d[k + 2] = x * d[k] + prev;
        }
        let (mut ny, mut nyp) = (T::zero(), T::zero());
        let mut hk = T::one();
        let mut fact = T::one();
        for k in 0..63 {
            if k > 0 {
                hk *= h;
                fact *= T::from_usize_lossy(k);
            }
            let c = hk / fact;
            ny += d[k] * c;
            nyp += d[k + 1] * c;
            if k > 8 && (d[k].abs() + d[k + 1].abs()) * c.abs() < T::epsilon() * T::lit(1e-3) * (ny.abs() + nyp.abs()) {
                break;
            }
        }
        y = ny;
        yp = nyp;
        x += h;
    }
    (y, yp)
}

/// Coefficients `u_k` of the asymptotic expansions.
fn asymptotic_u<T: Real>(k_max: usize) -> Vec<T> {
    let mut u = vec![T::one()];
    for k in 1..=k_max {
        let kk = k as f64;
        let ratio = (6.0 * kk - 5.0) * (6.0 * kk - 3.0) * (6.0 * kk - 1.0) / ((2.0 * kk - 1.0) * 216.0 * kk);
        let prev = u[k - 1];
        u.push(prev * T::lit(ratio));
    }
    u
}

fn asymptotic_v<T: Real>(u: &[T]) -> Vec<T> {
    u.iter()
        .enumerate()
        .map(|(k, &uk)| {
            if k == 0 {
                T::one()
            } else {
                let kk = k as f64;
                -uk * T::lit((6.0 * kk + 1.0) / (6.0 * kk - 1.0))
            }
        })
        .collect()
}

/// `Σ (±1)^k c_k ζ^{-k}` stopped before the terms start growing.
fn truncated_sum<T: Real>(c: &[T], zeta: T, alternate: bool) -> T {
    let mut sum = T::zero();
    let mut zk = T::one();
    let mut last = T::infinity();
    for (k, &ck) in c.iter().enumerate() {
        let term = ck / zk;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        sum += if alternate && k % 2 == 1 { -term } else { term };
        zk *= zeta;
    }
    sum
}

fn ai_large_positive<T: Real>(x: T) -> (T, T) {
    let zeta = T::lit(2.0 / 3.0) * x * x.sqrt();
    let u = asymptotic_u::<T>(40);
    let v = asymptotic_v(&u);
    let pre = (-zeta).exp() / (T::lit(2.0) * T::PI().sqrt());
    let q = x.sqrt().sqrt();
    (pre / q * truncated_sum(&u, zeta, true), -pre * q * truncated_sum(&v, zeta, true))
}

fn ai_large_negative<T: Real>(x: T) -> (T, T) {
    let y = -x;
    let zeta = T::lit(2.0 / 3.0) * y * y.sqrt();
    let u = asymptotic_u::<T>(40);
    let v = asymptotic_v(&u);
    // split even and odd orders, each alternating
    let split = |c: &[T], parity: usize| -> T {
        let mut s = T::zero();
        let mut last = T::infinity();
        for (k, &ck) in c.iter().enumerate() {
            let term = ck / zeta.powi(k as i32);
            if term.abs() > last {
                break;
            }
            last = term.abs();
            if k % 2 == parity {
                let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
                s += sign * term;
            }
        }
        s
    };
    let (p, q) = (split(&u, 0), split(&u, 1));
    let (r, s) = (split(&v, 0), split(&v, 1));
    let phase = zeta + T::FRAC_PI_4();
    let root = y.sqrt().sqrt();
    let sp = T::PI().sqrt();
    let ai = (phase.sin() * p - phase.cos() * q) / (sp * root);
    let aip = -root / sp * (phase.cos() * r + phase.sin() * s);
    (ai, aip)
}

/// `(Ai(x), Ai'(x))`. Absolute accuracy about `1e-13` on `[-15, 15]` in
/// double precision.
pub fn airy_pair<T: Real>(x: T) -> (T, T) {
    let (a0, a1) = (ai_zero::<T>(), ai_prime_zero::<T>());
    if x > T::lit(SERIES_MAX) {
        ai_large_positive(x)
    } else if x >= T::zero() {
        let (f, fp, g, gp) = maclaurin(x);
        (a0 * f + a1 * g, a0 * fp + a1 * gp)
    } else if x >= T::lit(STEP_MIN) {
        integrate(a0, a1, T::zero(), x)
    } else {
        ai_large_negative(x)
    }
}

pub fn airy<T: Real>(x: T) -> T {
    airy_pair(x).0
}

pub fn airy_prime<T: Real>(x: T) -> T {
    airy_pair(x).1
}

/// `Bi(x)`, best effort outside `[-30, 8]`.
pub fn bi<T: Real>(x: T) -> T {
    let (b0, b1) = (bi_zero::<T>(), bi_prime_zero::<T>());
    if x > T::lit(8.0) {
        let zeta = T::lit(2.0 / 3.0) * x * x.sqrt();
        let u = asymptotic_u::<T>(40);
        zeta.exp() / (T::PI().sqrt() * x.sqrt().sqrt()) * truncated_sum(&u, zeta, false)
    } else if x >= T::zero() {
        let (f, _, g, _) = maclaurin(x);
        b0 * f + b1 * g
    } else {
        integrate(b0, b1, T::zero(), x).0
    }
}

/// `(Ai(u)Ai'(v) - Ai(v)Ai'(u)) / (u - v)`, with the confluent value
/// `Ai'(m)² - m Ai(m)²` at the midpoint when `|u - v| < 1e-6`.
pub fn airy_kernel<T: Real>(u: T, v: T) -> T {
    if (u - v).abs() < T::lit(DIAG_TOL) {
        let m = (u + v) * T::lit(0.5);
        let (a, ap) = airy_pair(m);
        return ap * ap - m * a * a;
    }
    let (au, apu) = airy_pair(u);
    let (av, apv) = airy_pair(v);
    (au * apv - av * apu) / (u - v)
}
