//! Bessel functions of integer order and the hard-edge Bessel kernel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{ensure, Result};
use crate::scalar::Real;

const SERIES_MAX: f64 = 12.0;
const DIAG_TOL: f64 = 1e-6;

/// `J_b(z) = (z/2)^b Σ (-1)^k (z/2)^{2k} / ((k+b)! k!)`.
///
/// The series is summed with Kahan compensation for `z ≤ 12`. Beyond that
/// its terms grow like `e^z`, so Miller's backward recurrence normalized by
/// `J_0 + 2 Σ J_{2k} = 1` is used instead. Negative `z` is a domain error.
pub fn bessel_j<T: Real>(b: u32, z: T) -> Result<T> {
    ensure!(z >= T::zero() && z.is_finite(), Domain, "Bessel argument {z} must be finite and nonnegative");
    if z <= T::lit(SERIES_MAX) {
        Ok(series(b, z))
    } else {
        Ok(miller(b, z))
    }
}

fn series<T: Real>(b: u32, z: T) -> T {
    let half = z * T::lit(0.5);
    let h2 = half * half;
    // (z/2)^b / b!
    let mut term = T::one();
    for k in 1..=b {
        term = term * half / T::from_usize_lossy(k as usize);
    }
    if term == T::zero() {
        return T::zero();
    }
    let (mut sum, mut comp) = (T::zero(), T::zero());
    for k in 0..500usize {
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let next = -term * h2 / (T::from_usize_lossy(k + 1) * T::from_usize_lossy(k + 1 + b as usize));
        if next.abs() <= T::lit(1e-17) * sum.abs() {
            break;
        }
        term = next;
    }
    sum
}

fn miller<T: Real>(b: u32, z: T) -> T {
    let top = z.max(T::from_usize_lossy(b as usize)).to_f64().unwrap_or(0.0);
    let mut start = (top + 30.0 + (40.0 * top).sqrt()) as usize;
    start += start % 2;
    let two = T::lit(2.0);
    let (mut next, mut cur) = (T::zero(), T::lit(1e-30));
    let mut norm = T::zero();
    let mut want = T::zero();
    for k in (1..=start).rev() {
        // J_{k-1} = (2k/z) J_k - J_{k+1}
        let prev = two * T::from_usize_lossy(k) / z * cur - next;
        next = cur;
        cur = prev;
        let order = k - 1;
        if order == b as usize {
            want = cur;
        }
        if order % 2 == 0 && order > 0 {
            norm += two * cur;
        }
        // rescale to avoid overflow in long runs
        if cur.abs() > T::lit(1e250) {
            let s = T::lit(1e-250);
            cur *= s;
            next *= s;
            norm *= s;
            want *= s;
        }
    }
    norm += cur;
    if b == 0 {
        want = cur;
    }
    want / norm
}

/// `z J_b'(z) = b J_b(z) - z J_{b+1}(z)`, finite at `z = 0`.
fn z_times_derivative<T: Real>(b: u32, z: T) -> Result<T> {
    Ok(T::from_usize_lossy(b as usize) * bessel_j(b, z)? - z * bessel_j(b + 1, z)?)
}

/// `F_b(u,v) = [J_b(√u) √v J_b'(√v) - J_b(√v) √u J_b'(√u)] / (2(u - v))`.
///
/// Within `1e-6` of the diagonal the midpoint value
/// `F_b(m,m) = [J_b(√m)² - J_{b+1}(√m) J_{b-1}(√m)] / 4` is returned.
pub fn bessel_kernel<T: Real>(b: u32, u: T, v: T) -> Result<T> {
    ensure!(u > T::zero() && v > T::zero(), Domain, "Bessel kernel needs u, v > 0, got ({u}, {v})");
    if (u - v).abs() < T::lit(DIAG_TOL) {
        return bessel_kernel_diagonal(b, (u + v) * T::lit(0.5));
    }
    let (su, sv) = (u.sqrt(), v.sqrt());
    let num = bessel_j(b, su)? * z_times_derivative(b, sv)? - bessel_j(b, sv)? * z_times_derivative(b, su)?;
    Ok(num / (T::lit(2.0) * (u - v)))
}

/// `F_b(u,u)`.
pub fn bessel_kernel_diagonal<T: Real>(b: u32, u: T) -> Result<T> {
    ensure!(u > T::zero(), Domain, "Bessel kernel needs u > 0, got {u}");
    let z = u.sqrt();
    let jb = bessel_j(b, z)?;
    let jp = bessel_j(b + 1, z)?;
    // J_{-1} = -J_1
    let jm = if b == 0 { -jp } else { bessel_j(b - 1, z)? };
    Ok((jb * jb - jp * jm) * T::lit(0.25))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn pow2(e: i64) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        BigRational::one() / num_traits::pow(two, (-e) as usize)
    }
}

/// Exact coefficient of `u^{k+b/2} v^{l+b/2}` in the numerator
/// `J_b(√u)√v J_b'(√v) - J_b(√v)√u J_b'(√u)`, obtained by multiplying the
/// defining power series.
pub fn kernel_numerator_coefficient(b: u32, k: u32, l: u32) -> BigRational {
    // J_b(√u) = Σ_k j_k u^{k+b/2}, √u J_{b+1}(√u) = Σ_k m_k u^{k+1+b/2}
    let j = |k: u32| -> BigRational {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        pow2(-((2 * k + b) as i64)) * BigRational::new(BigInt::from(sign), factorial(k + b) * factorial(k))
    };
    let m = |k: u32| -> BigRational {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        pow2(-((2 * k + b + 1) as i64)) * BigRational::new(BigInt::from(sign), factorial(k + b + 1) * factorial(k))
    };
    // numerator = -J_b(√u) √v J_{b+1}(√v) + J_b(√v) √u J_{b+1}(√u); the b J_b J_b terms cancel
    let mut c = BigRational::zero();
    if l >= 1 {
        c -= j(k) * m(l - 1);
    }
    if k >= 1 {
        c += j(l) * m(k - 1);
    }
    c
}

/// Closed form of [`kernel_numerator_coefficient`]:
/// `(-1)^{k+l+1} 2^{1-2(k+l+b)} (k-l) / ((b+k)! k! (b+l)! l!)`.
pub fn kernel_numerator_coefficient_closed_form(b: u32, k: u32, l: u32) -> BigRational {
    let sign: i64 = if (k + l + 1).is_multiple_of(2) { 1 } else { -1 };
    let den = factorial(b + k) * factorial(k) * factorial(b + l) * factorial(l);
    pow2(1 - 2 * (k + l + b) as i64) * BigRational::new(BigInt::from(sign * (k as i64 - l as i64)), den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_j(0, 0.0f64).unwrap(), 1.0);
        for b in 1..5 {
            assert_eq!(bessel_j(b, 0.0f64).unwrap(), 0.0);
        }
        assert!(bessel_j(0, -1.0f64).is_err());
    }

    #[test]
    fn derivative_identity() {
        let h = 1e-5;
        let (b, z) = (2, 3.0f64);
        let fd = (bessel_j(b, z + h).unwrap() - bessel_j(b, z - h).unwrap()) / (2.0 * h);
        let exact = -bessel_j(b + 1, z).unwrap() + b as f64 * bessel_j(b, z).unwrap() / z;
        assert!((fd - exact).abs() < 1e-7);
    }

    #[test]
    fn series_and_recurrence_agree_at_the_switch() {
        for b in [0, 1, 2, 5] {
            let s = series(b, 12.0f64);
            let m = miller(b, 12.0f64);
            assert!((s - m).abs() < 1e-12, "b={b}: {s} vs {m}");
        }
    }

    #[test]
    fn neumann_sum_and_large_argument() {
        // J_0² + 2 Σ J_k² = 1
        for z in [5.0f64, 20.0, 45.0] {
            let mut s = bessel_j(0, z).unwrap().powi(2);
            for k in 1..120 {
                s += 2.0 * bessel_j(k, z).unwrap().powi(2);
            }
            assert!((s - 1.0).abs() < 1e-12, "z={z}: {s}");
        }
    }

    #[test]
    fn kernel_symmetry_and_diagonal() {
        let a = bessel_kernel(0, 4.0f64, 1.0).unwrap();
        let b = bessel_kernel(0, 1.0f64, 4.0).unwrap();
        assert!((a - b).abs() < 1e-15);
        let d = bessel_kernel(0, 1.0f64, 1.0).unwrap();
        assert!(d > 0.0);
        let two_sided = 0.5 * (bessel_kernel(0, 1.0 + 1e-4, 1.0 - 1e-4).unwrap() + bessel_kernel(0, 1.0 - 1e-4, 1.0 + 1e-4).unwrap());
        assert!((d - two_sided).abs() < 1e-6);
        for b in 0..4 {
            for u in [0.3f64, 2.0, 9.0] {
                let near = bessel_kernel(b, u, u + 1e-4).unwrap();
                let diag = bessel_kernel(b, u + 5e-5, u + 5e-5).unwrap();
                assert!((near - diag).abs() < 1e-8, "b={b} u={u}");
            }
        }
        assert!(bessel_kernel(0, 0.0f64, 1.0).is_err());
    }

    #[test]
    fn numerator_coefficients_are_exact() {
        for b in 0..3 {
            for k in 0..=3 {
                for l in 0..=3 {
                    assert_eq!(
                        kernel_numerator_coefficient(b, k, l),
                        kernel_numerator_coefficient_closed_form(b, k, l),
                        "b={b} k={k} l={l}"
                    );
                }
            }
        }
    }
}
