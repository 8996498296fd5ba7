//! Monte Carlo harness: empirical samples, KS distances, interval counts and
//! convergence reports for the kernel limits.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cdkernel::{
    bulk_scale, kernel, one_point_density, rescaled_hard, rescaled_soft_at, soft_edge, KernelSpec,
};
use crate::ensembles::EnsembleParams;
use crate::error::{ensure, Error, Result};
use crate::limits::{airy_kernel, bessel_kernel, edge_profile, sine_kernel};
use crate::randgen::{SeededStream, StreamRng};

/// Where a sample came from.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SampleMeta {
    pub params: String,
    pub route: String,
    pub seed: u64,
    pub trials: usize,
}

/// Sorted (ascending) real sample.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EmpiricalSample {
    values: Vec<f64>,
    pub meta: Option<SampleMeta>,
}

impl EmpiricalSample {
    /// Sorts the values; NaNs are placed last.
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| a.total_cmp(b));
        Self { values, meta: None }
    }

    pub fn with_meta(mut self, meta: SampleMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Fraction of points `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }
}

fn nonempty(s: &EmpiricalSample) -> Result<()> {
    ensure!(!s.is_empty(), Parameter, "empirical sample is empty");
    Ok(())
}

/// Two-sample KS statistic `sup |F₁ - F₂|`.
pub fn ks_distance(s1: &EmpiricalSample, s2: &EmpiricalSample) -> Result<f64> {
    nonempty(s1)?;
    nonempty(s2)?;
    let (a, b) = (s1.values(), s2.values());
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut best: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        best = best.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(best)
}

/// One-sample KS statistic against a CDF.
pub fn ks_against_density<F: FnMut(f64) -> f64>(s: &EmpiricalSample, mut cdf: F) -> Result<f64> {
    nonempty(s)?;
    let n = s.len() as f64;
    let mut best: f64 = 0.0;
    for (i, &x) in s.values().iter().enumerate() {
        let f = cdf(x);
        ensure!(f.is_finite(), Numeric, "cdf({x}) is not finite");
        best = best.max((f - i as f64 / n).abs()).max((f - (i + 1) as f64 / n).abs());
    }
    Ok(best)
}

/// Number of points in `[lo, hi]`.
pub fn interval_count(s: &EmpiricalSample, lo: f64, hi: f64) -> usize {
    if hi < lo {
        return 0;
    }
    let v = s.values();
    v.partition_point(|&x| x <= hi) - v.partition_point(|&x| x < lo)
}

/// Runs `f(rng, trial)` for each trial in parallel, trial `t` drawing from
/// stream `t` of `seed`. Results come back in trial order, so the output
/// does not depend on the worker count.
pub fn monte_carlo<T, F>(seed: u64, trials: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut StreamRng, usize) -> Result<T> + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| f(&mut SeededStream::new(seed, t as u64).rng(), t))
        .collect()
}

/// Which kernel limit an experiment measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    OnePoint,
    Bulk,
    Soft,
    Hard,
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "onepoint" => Ok(Regime::OnePoint),
            "bulk" => Ok(Regime::Bulk),
            "soft" => Ok(Regime::Soft),
            "hard" => Ok(Regime::Hard),
            _ => Err(Error::Parameter(format!("unknown regime {s:?}"))),
        }
    }
}

/// `count` equally spaced points from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        ensure!(lo.is_finite() && hi.is_finite(), Parameter, "grid ends must be finite");
        ensure!(count >= 1, Parameter, "grid needs at least one point");
        ensure!(lo < hi || (lo == hi && count == 1), Parameter, "grid needs lo < hi, got {lo}:{hi}");
        Ok(Self { lo, hi, count })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.lo + step * i as f64).collect()
    }
}

/// A convergence experiment.
///
/// For every `n` the ensemble has `a = α n`; `b = β n`, except in the hard
/// regime where `b = hard_b` is held fixed. `grid` is the `x` grid for
/// `onepoint` (empty means `[r+0.1, s-0.1]` with 41 points) and the `u = v`
/// grid otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    pub regime: Regime,
    pub ns: Vec<usize>,
    pub alpha: f64,
    pub beta: f64,
    pub hard_b: u32,
    pub grid: Option<Grid>,
}

impl Experiment {
    pub fn new(regime: Regime, ns: Vec<usize>, alpha: f64, beta: f64) -> Self {
        Self { regime, ns, alpha, beta, hard_b: 0, grid: None }
    }

    pub fn with_hard_b(mut self, b: u32) -> Self {
        self.hard_b = b;
        self
    }

    pub fn with_grid(mut self, grid: Grid) -> Self {
        self.grid = Some(grid);
        self
    }

    fn default_grid(&self) -> Result<Grid> {
        match self.regime {
            Regime::OnePoint => {
                let p = edge_profile(self.alpha, self.beta)?;
                Grid::new(p.r + 0.1, p.s - 0.1, 41)
            }
            Regime::Bulk => Grid::new(-2.0, 2.0, 9),
            Regime::Soft => Grid::new(-3.0, 1.5, 7),
            Regime::Hard => Grid::new(0.5, 16.0, 7),
        }
    }

    fn params(&self, n: usize) -> Result<EnsembleParams<f64>> {
        let nf = n as f64;
        let b = if self.regime == Regime::Hard { self.hard_b as f64 } else { self.beta * nf };
        EnsembleParams::new(n, self.alpha * nf, b)
    }

    /// Sup-norm error at a single `n`.
    pub fn error_at(&self, n: usize) -> Result<f64> {
        let grid = self.grid.map_or_else(|| self.default_grid(), Ok)?.points();
        let spec = KernelSpec::new(self.params(n)?);
        let mut worst: f64 = 0.0;
        let mut track = |e: f64| -> Result<()> {
            ensure!(e.is_finite(), Numeric, "non-finite error at n = {n}");
            worst = worst.max(e);
            Ok(())
        };
        match self.regime {
            Regime::OnePoint => {
                let prof = edge_profile(self.alpha, self.beta)?;
                for &x in &grid {
                    track((one_point_density(&spec, x)? - prof.density(x)?).abs())?;
                }
            }
            Regime::Bulk => {
                let x = edge_profile(self.alpha, self.beta)?.midpoint();
                let c = bulk_scale(&spec, x)?;
                for &u in &grid {
                    for &v in &grid {
                        let k = kernel(&spec, x + u / c, x + v / c)? / c;
                        track((k - sine_kernel(u, v)).abs())?;
                    }
                }
            }
            Regime::Soft => {
                let edge = soft_edge(&spec.params)?;
                for &u in &grid {
                    for &v in &grid {
                        track((rescaled_soft_at(&spec, edge, u, v)? - airy_kernel(u, v)).abs())?;
                    }
                }
            }
            Regime::Hard => {
                for &u in &grid {
                    for &v in &grid {
                        track((rescaled_hard(&spec, u, v)? - bessel_kernel(self.hard_b, u, v)?).abs())?;
                    }
                }
            }
        }
        Ok(worst)
    }
}

/// Per-`n` errors and the least-squares slope of `ln error` against `ln n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub experiment: Experiment,
    pub ns: Vec<usize>,
    pub errors: Vec<f64>,
    pub slope: f64,
}

impl ConvergenceReport {
    pub fn strictly_decreasing(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    ensure!(x.len() == y.len() && x.len() >= 2, Parameter, "slope fit needs two or more matched points");
    let m = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / m, y.iter().sum::<f64>() / m);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    ensure!(sxx > 0.0, Parameter, "slope fit needs distinct abscissae");
    Ok(sxy / sxx)
}

/// Evaluates the experiment at each `n` (in parallel) and fits the decay.
pub fn run_experiment(exp: &Experiment) -> Result<ConvergenceReport> {
    ensure!(!exp.ns.is_empty(), Parameter, "experiment needs at least one n");
    let errors: Vec<f64> = exp.ns.par_iter().map(|&n| exp.error_at(n)).collect::<Result<_>>()?;
    let slope = if exp.ns.len() >= 2 && errors.iter().all(|&e| e > 0.0) {
        let ln_n: Vec<f64> = exp.ns.iter().map(|&n| (n as f64).ln()).collect();
        let ln_e: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
        fit_slope(&ln_n, &ln_e)?
    } else {
        f64::NAN
    };
    Ok(ConvergenceReport { experiment: exp.clone(), ns: exp.ns.clone(), errors, slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn s(v: &[f64]) -> EmpiricalSample {
        EmpiricalSample::new(v.to_vec())
    }

    #[test]
    fn ks_examples() {
        assert_eq!(ks_distance(&s(&[1.0, 2.0]), &s(&[2.0, 1.0])).unwrap(), 0.0);
        assert_eq!(ks_distance(&s(&[1.0]), &s(&[2.0])).unwrap(), 1.0);
        assert_eq!(ks_distance(&s(&[1.0, 3.0]), &s(&[2.0])).unwrap(), 0.5);
        assert!(ks_distance(&s(&[]), &s(&[1.0])).is_err());
    }

    #[test]
    fn one_sample_ks() {
        assert_eq!(ks_against_density(&s(&[0.5]), |x| x).unwrap(), 0.5);
        assert!(ks_against_density(&s(&[]), |x| x).is_err());
        let mut rng = SeededStream::new(11, 0).rng();
        let u: Vec<f64> = (0..10_000).map(|_| rng.random::<f64>()).collect();
        assert!(ks_against_density(&EmpiricalSample::new(u), |x| x.clamp(0.0, 1.0)).unwrap() < 0.02);
    }

    #[test]
    fn counts() {
        let x = s(&[0.1, 0.5, 0.5, 0.9]);
        assert_eq!(interval_count(&x, 0.0, 1.0), 4);
        assert_eq!(interval_count(&x, 0.5, 0.5), 2);
        assert_eq!(interval_count(&x, 2.0, 3.0), 0);
        assert_eq!(interval_count(&x, 1.0, 0.0), 0);
    }

    #[test]
    fn monte_carlo_ignores_thread_count() {
        let run = || monte_carlo(5, 64, |rng, t| Ok(rng.random::<f64>() + t as f64)).unwrap();
        let many = run();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(run);
        assert_eq!(many, one);
    }

    #[test]
    fn slope_of_a_power_law() {
        let x: Vec<f64> = [1.0f64, 2.0, 4.0].iter().map(|v| v.ln()).collect();
        let y: Vec<f64> = [1.0f64, 0.5, 0.25].iter().map(|v| v.ln()).collect();
        assert!((fit_slope(&x, &y).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn onepoint_errors_decrease() {
        let r = run_experiment(&Experiment::new(Regime::OnePoint, vec![50, 100, 200], 0.5, 0.25)).unwrap();
        assert!(r.strictly_decreasing(), "{:?}", r.errors);
        assert!(r.errors.iter().all(|&e| e >= 0.0));
        assert_eq!(r, run_experiment(&r.experiment).unwrap());
    }

    #[test]
    fn regime_parsing() {
        assert_eq!("hard".parse::<Regime>().unwrap(), Regime::Hard);
        assert!("edge".parse::<Regime>().is_err());
        assert!(Grid::new(1.0, 0.0, 3).is_err());
        assert_eq!(Grid::new(0.0, 1.0, 3).unwrap().points(), vec![0.0, 0.5, 1.0]);
    }

    proptest! {
        #[test]
        fn ks_symmetric_and_triangle(
            a in prop::collection::vec(-5.0f64..5.0, 1..30),
            b in prop::collection::vec(-5.0f64..5.0, 1..30),
            c in prop::collection::vec(-5.0f64..5.0, 1..30),
        ) {
            let (a, b, c) = (s(&a), s(&b), s(&c));
            let ab = ks_distance(&a, &b).unwrap();
            prop_assert_eq!(ab, ks_distance(&b, &a).unwrap());
            prop_assert!((0.0..=1.0).contains(&ab));
            let ac = ks_distance(&a, &c).unwrap();
            prop_assert!(ac <= ab + ks_distance(&b, &c).unwrap() + 1e-12);
        }
    }
}
