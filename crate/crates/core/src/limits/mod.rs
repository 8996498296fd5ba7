//! Large-`n` objects: support and density of the limiting spectrum, the
//! free multiplicative convolution of two projector laws, and the sine,
//! Airy and Bessel limit kernels.

mod airy;
mod bessel;

pub use airy::{ai_prime_zero, ai_zero, airy, airy_kernel, airy_pair, airy_prime, bi};
pub use bessel::{
    bessel_j, bessel_kernel, bessel_kernel_diagonal, kernel_numerator_coefficient,
    kernel_numerator_coefficient_closed_form,
};

use crate::error::{ensure, Result};
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;

/// Support of the limiting density in the polynomial variable `x ∈ [-1, 1]`
/// for `a/n → α`, `b/n → β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitProfile<T> {
    pub alpha: T,
    pub beta: T,
    /// `α / (2 + α + β)`
    pub a_coef: T,
    /// `β / (2 + α + β)`
    pub b_coef: T,
    pub d: T,
    pub r: T,
    pub s: T,
}

/// `A, B`, `D = √((1+A+B)(1-A-B)(1-A+B)(1+A-B))` and `r, s = B² - A² ∓ D`.
pub fn edge_profile<T: Real>(alpha: T, beta: T) -> Result<LimitProfile<T>> {
    ensure!(
        alpha >= T::zero() && beta >= T::zero() && alpha.is_finite() && beta.is_finite(),
        Parameter,
        "alpha = {alpha}, beta = {beta} must be finite and nonnegative"
    );
    let one = T::one();
    let den = T::lit(2.0) + alpha + beta;
    let (a, b) = (alpha / den, beta / den);
    let d = ((one + a + b) * (one - a - b) * (one - a + b) * (one + a - b)).sqrt();
    let c = b * b - a * a;
    Ok(LimitProfile { alpha, beta, a_coef: a, b_coef: b, d, r: c - d, s: c + d })
}

impl<T: Real> LimitProfile<T> {
    pub fn midpoint(&self) -> T {
        (self.r + self.s) * T::lit(0.5)
    }

    /// `f(x) = √((x-r)(s-x)) / (π (1-A-B)(1-x²))` on `[r, s]`, zero outside.
    pub fn density(&self, x: T) -> Result<T> {
        let one = T::one();
        ensure!(self.a_coef + self.b_coef < one, Regime, "A + B >= 1: the limit law has atoms");
        if x <= self.r || x >= self.s || x.abs() >= one {
            return Ok(T::zero());
        }
        let rad = (x - self.r) * (self.s - x);
        Ok(rad.sqrt() / (T::PI() * (one - self.a_coef - self.b_coef) * (one - x * x)))
    }
}

/// [`LimitProfile::density`] as a free function.
pub fn limit_density<T: Real>(profile: &LimitProfile<T>, x: T) -> Result<T> {
    profile.density(x)
}

/// A point mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom<T> {
    pub location: T,
    pub mass: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum FreeLaw<T> {
    ProjectorProduct { alpha: T, beta: T },
    WishartRatio { alpha: T, beta: T },
}

/// Measure made of a continuous part `√((hi-x)(x-lo)) / (2π x(1-x))` on
/// `[lo, hi]` and a list of atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeDensity<T> {
    pub lo: T,
    pub hi: T,
    pub atoms: Vec<Atom<T>>,
    law: FreeLaw<T>,
}

impl<T: Real> FreeDensity<T> {
    /// Value of the continuous part.
    pub fn density(&self, x: T) -> T {
        let one = T::one();
        if !(x > self.lo && x < self.hi) || self.hi <= self.lo {
            return T::zero();
        }
        ((self.hi - x) * (x - self.lo)).sqrt() / (T::lit(2.0) * T::PI() * x * (one - x))
    }

    /// Mass of the continuous part, by Gauss–Legendre after
    /// `x = lo + (hi-lo)(1 - cos t)/2`, which removes the square-root ends.
    pub fn continuous_mass(&self, order: usize) -> Result<T> {
        if self.hi <= self.lo {
            return Ok(T::zero());
        }
        let q = GaussLegendre::<T>::new(order)?;
        let half = (self.hi - self.lo) * T::lit(0.5);
        let one = T::one();
        Ok(q.integrate(T::zero(), T::PI(), |t| {
            let x = self.lo + half * (one - t.cos());
            let s = t.sin();
            half * half * s * s / (T::lit(2.0) * T::PI() * x * (one - x))
        }))
    }

    pub fn atom_mass(&self) -> T {
        self.atoms.iter().fold(T::zero(), |s, a| s + a.mass)
    }

    /// Continuous mass plus atoms.
    pub fn total_mass(&self, order: usize) -> Result<T> {
        Ok(self.continuous_mass(order)? + self.atom_mass())
    }

    /// `total_mass - 1`; nonzero when the measure as stated is not a
    /// probability measure.
    pub fn normalization_defect(&self, order: usize) -> Result<T> {
        Ok(self.total_mass(order)? - T::one())
    }

    /// `(α, β)` the measure was built from.
    pub fn parameters(&self) -> (T, T) {
        match self.law {
            FreeLaw::ProjectorProduct { alpha, beta } | FreeLaw::WishartRatio { alpha, beta } => (alpha, beta),
        }
    }
}

/// Free multiplicative convolution of two projector laws with traces `α`
/// and `β`: atoms `1 - min(α,β)` at 0 and `max(α+β-1, 0)` at 1 plus a
/// continuous part on `[r₋, r₊]`,
/// `r± = α + β - 2αβ ± √(4αβ(1-α)(1-β))`.
pub fn free_product_density<T: Real>(alpha: T, beta: T) -> Result<FreeDensity<T>> {
    let one = T::one();
    let unit = |x: T| x >= T::zero() && x <= one;
    ensure!(unit(alpha) && unit(beta), Parameter, "alpha = {alpha}, beta = {beta} must lie in [0, 1]");
    let two = T::lit(2.0);
    let c = alpha + beta - two * alpha * beta;
    let w = (T::lit(4.0) * alpha * beta * (one - alpha) * (one - beta)).sqrt();
    let mut atoms = Vec::new();
    let m0 = one - alpha.min(beta);
    if m0 > T::zero() {
        atoms.push(Atom { location: T::zero(), mass: m0 });
    }
    let m1 = (alpha + beta - one).max(T::zero());
    if m1 > T::zero() {
        atoms.push(Atom { location: one, mass: m1 });
    }
    Ok(FreeDensity { lo: c - w, hi: c + w, atoms, law: FreeLaw::ProjectorProduct { alpha, beta } })
}

/// Limit law of `(X+X')^{-1/2} X (X+X')^{-1/2}` for Wishart matrices with
/// `p/n → α ≥ 1`, `p'/n → β ≥ 1`, taken as stated: continuous part on
/// `[λ₋, λ₊]` with
/// `λ± = (√(α/(α+β) (1 - 1/(α+β))) ± √(1/(α+β) (1 - α/(α+β))))²`
/// and atoms `max(0, α-1)` at 0, `max(0, β-1)` at 1.
///
/// The stated atoms are not normalized: check
/// [`FreeDensity::normalization_defect`].
pub fn wishart_ratio_density<T: Real>(alpha: T, beta: T) -> Result<FreeDensity<T>> {
    let one = T::one();
    ensure!(alpha >= one && beta >= one, Parameter, "alpha = {alpha}, beta = {beta} must be at least 1");
    let s = alpha + beta;
    let p = (alpha / s * (one - one / s)).sqrt();
    let q = (one / s * (one - alpha / s)).sqrt();
    let mut atoms = Vec::new();
    if alpha > one {
        atoms.push(Atom { location: T::zero(), mass: alpha - one });
    }
    if beta > one {
        atoms.push(Atom { location: one, mass: beta - one });
    }
    Ok(FreeDensity { lo: (p - q) * (p - q), hi: (p + q) * (p + q), atoms, law: FreeLaw::WishartRatio { alpha, beta } })
}

/// Ensemble exponents per unit size `(a/q, b/q)` for the compression of a
/// rank `αn` projector against a uniformly rotated rank `βn` one, `α ≤ β`,
/// `α + β ≤ 1`: `((1-α-β)/α, (β-α)/α)`.
pub fn rank_fractions_to_exponents<T: Real>(alpha: T, beta: T) -> Result<(T, T)> {
    let one = T::one();
    ensure!(alpha > T::zero() && beta > T::zero(), Parameter, "rank fractions must be positive");
    ensure!(alpha + beta < one, Regime, "alpha + beta = {} must be below 1", alpha + beta);
    let (lo, hi) = if alpha <= beta { (alpha, beta) } else { (beta, alpha) };
    Ok(((one - lo - hi) / lo, (hi - lo) / lo))
}

/// Largest squared cosine of principal angles, asymptotically, between
/// uniformly random subspaces of dimensions `αn` and `βn` in `C^n`.
///
/// The compression of one projector to the other is a Jacobi ensemble with
/// exponents from [`rank_fractions_to_exponents`]; its top edge in the
/// eigenvalue variable `λ = (1+x)/2` is `(1+s)/2`, which equals `r₊` of
/// [`free_product_density`].
pub fn banach_cos2<T: Real>(alpha: T, beta: T) -> Result<T> {
    let (aj, bj) = rank_fractions_to_exponents(alpha, beta)?;
    let prof = edge_profile(aj, bj)?;
    Ok((T::one() + prof.s) * T::lit(0.5))
}

/// `θ = arccos √(cos²θ)` with `cos²θ` from [`banach_cos2`].
pub fn banach_angle<T: Real>(alpha: T, beta: T) -> Result<T> {
    Ok(banach_cos2(alpha, beta)?.sqrt().acos())
}

/// `sin π(u-v) / (π(u-v))`, equal to 1 on the diagonal.
pub fn sine_kernel<T: Real>(u: T, v: T) -> T {
    let d = T::PI() * (u - v);
    if d.abs() < T::lit(1e-6) {
        T::one() - d * d / T::lit(6.0)
    } else {
        d.sin() / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_examples() {
        let p = edge_profile(0.0f64, 0.0).unwrap();
        assert_eq!((p.a_coef, p.b_coef, p.d, p.r, p.s), (0.0, 0.0, 1.0, -1.0, 1.0));
        let p = edge_profile(0.7f64, 0.7).unwrap();
        assert!((p.r + p.s).abs() < 1e-15);
        let p = edge_profile(1.0f64, 0.5).unwrap();
        assert!((p.a_coef - 2.0 / 7.0).abs() < 1e-15 && (p.b_coef - 1.0 / 7.0).abs() < 1e-15);
        // endpoints are where the radicand changes sign
        let rad = |x: f64| (x - p.r) * (p.s - x);
        assert!(rad(p.r + 1e-9) > 0.0 && rad(p.r - 1e-9) < 0.0);
        assert!(rad(p.s - 1e-9) > 0.0 && rad(p.s + 1e-9) < 0.0);
        assert!(edge_profile(-0.1f64, 0.0).is_err());
    }

    #[test]
    fn density_examples() {
        let p = edge_profile(0.0f64, 0.0).unwrap();
        assert!((p.density(0.0).unwrap() - std::f64::consts::FRAC_1_PI).abs() < 1e-15);
        let x: f64 = 0.6;
        assert!((p.density(x).unwrap() - 1.0 / (std::f64::consts::PI * (1.0 - x * x).sqrt())).abs() < 1e-14);
        let q = edge_profile(0.5f64, 0.25).unwrap();
        assert_eq!(q.density(q.r).unwrap(), 0.0);
        assert_eq!(q.density(q.s).unwrap(), 0.0);
        assert_eq!(q.density(q.s + 0.01).unwrap(), 0.0);
    }

    #[test]
    fn density_integrates_to_one() {
        let gl = GaussLegendre::<f64>::new(512).unwrap();
        for (al, be) in [(0.5, 0.25), (1.0, 1.0)] {
            let p = edge_profile(al, be).unwrap();
            // substitute x = mid - half cos t to absorb the square-root edges
            let (mid, half) = (p.midpoint(), (p.s - p.r) * 0.5);
            let total = gl.integrate(0.0, std::f64::consts::PI, |t| {
                p.density(mid - half * t.cos()).unwrap() * half * t.sin()
            });
            assert!((total - 1.0).abs() < 1e-8, "({al}, {be}): {total}");
        }
    }

    #[test]
    fn free_product_examples() {
        let m = free_product_density(0.5f64, 0.5).unwrap();
        assert!(m.lo.abs() < 1e-15 && (m.hi - 1.0).abs() < 1e-15);
        assert_eq!(m.atoms, vec![Atom { location: 0.0, mass: 0.5 }]);
        for (a, b) in [(0.3f64, 0.6), (0.5, 0.5), (0.8, 0.7)] {
            let total = free_product_density(a, b).unwrap().total_mass(512).unwrap();
            assert!((total - 1.0).abs() < 1e-8, "({a}, {b}): {total}");
        }
        let m = free_product_density(1.0f64, 0.3).unwrap();
        assert!((m.atom_mass() - 1.0).abs() < 1e-15);
        assert!(m.continuous_mass(64).unwrap().abs() < 1e-15);
        assert!(free_product_density(1.2f64, 0.3).is_err());
    }

    #[test]
    fn limit_density_is_the_free_product_in_other_coordinates() {
        // rank fractions (α, β) give ensemble size αn; x = 2λ - 1
        for (al, be) in [(0.25f64, 0.3), (0.2, 0.5), (0.4, 0.4)] {
            let (aj, bj) = rank_fractions_to_exponents(al, be).unwrap();
            let prof = edge_profile(aj, bj).unwrap();
            let free = free_product_density(al, be).unwrap();
            assert!(((1.0 + prof.s) / 2.0 - free.hi).abs() < 1e-12);
            assert!(((1.0 + prof.r) / 2.0 - free.lo).abs() < 1e-12);
            for k in 1..20 {
                let lam = free.lo + (free.hi - free.lo) * k as f64 / 20.0;
                let g = free.density(lam);
                let f = prof.density(2.0 * lam - 1.0).unwrap();
                assert!((g - al.min(be) * 2.0 * f).abs() < 1e-8 * g.max(1.0), "λ={lam}");
            }
        }
    }

    #[test]
    fn wishart_ratio_examples() {
        let m = wishart_ratio_density(1.0f64, 1.0).unwrap();
        assert!(m.lo.abs() < 1e-15 && (m.hi - 1.0).abs() < 1e-15);
        for k in 1..10 {
            assert!(m.density(k as f64 / 10.0) >= 0.0);
        }
        assert!(wishart_ratio_density(0.5f64, 2.0).is_err());
        // continuous mass 1/(α+β) against atoms α-1 and β-1
        let m = wishart_ratio_density(2.0f64, 3.0).unwrap();
        assert!((m.continuous_mass(512).unwrap() - 0.2).abs() < 1e-8);
        assert!((m.normalization_defect(512).unwrap() - 2.2).abs() < 1e-8);
    }

    #[test]
    fn banach_examples() {
        let t = banach_angle(0.3f64, 0.3).unwrap();
        assert!(t > 0.0 && t < std::f64::consts::FRAC_PI_2);
        assert!(banach_angle(0.5f64, 0.49999999).unwrap() < 1e-3);
        assert!((banach_cos2(0.25f64, 0.3).unwrap() - 0.7969).abs() < 1e-4);
        assert!(banach_angle(0.5f64, 0.5).is_err());
        assert!((banach_cos2(0.25f64, 0.3).unwrap() - banach_cos2(0.3, 0.25).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn sine_kernel_examples() {
        assert_eq!(sine_kernel(0.0f64, 0.0), 1.0);
        assert!((sine_kernel(0.5f64, 0.0) - 2.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!(sine_kernel(1.0f64, 0.0).abs() < 1e-15);
    }
}
