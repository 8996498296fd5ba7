//! Jacobi unitary ensembles built from products of random projectors:
//! samplers, Christoffel–Darboux kernels, limit laws and kernels, Fredholm
//! gap probabilities and a Monte Carlo harness.
//!
//! The analytic side is generic over [`scalar::Real`]; the aliases below fix
//! the scalar to `f64`.

// NaN must fail range checks, so `!(x > lo)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cdkernel;
pub mod empirics;
pub mod ensembles;
pub mod error;
pub mod fredholm;
pub mod limits;
pub mod matalg;
pub mod orthopoly;
pub mod quadrature;
pub mod randgen;
pub mod scalar;
pub mod scaled;

pub use error::{Error, Result};

pub type Scaled = scaled::ScaledValue<f64>;
pub type Params = ensembles::EnsembleParams<f64>;
pub type Kernel = cdkernel::KernelSpec<f64>;
pub type Profile = limits::LimitProfile<f64>;
pub type Free = limits::FreeDensity<f64>;
pub type Edge = cdkernel::SoftEdge<f64>;
pub type Quadrature = quadrature::GaussLegendre<f64>;
