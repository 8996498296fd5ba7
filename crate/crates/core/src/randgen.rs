//! Reproducible complex Gaussian, Ginibre, Haar and random-projector sampling.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{ensure, Result};
use crate::matalg::{ComplexMatrix, HermitianMatrix};

/// Generator behind every [`SeededStream`].
pub type StreamRng = ChaCha20Rng;

/// A `(seed, stream_id)` pair naming an independent random stream.
///
/// Monte Carlo loops use the trial index as `stream_id`, so results do not
/// depend on how trials are distributed over threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeededStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl SeededStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> StreamRng {
        let mut state = splitmix64(self.seed ^ splitmix64(self.stream_id.wrapping_add(0x632b_e59b_d9b4_e019)));
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            state = splitmix64(state);
            chunk.copy_from_slice(&state.to_le_bytes());
        }
        ChaCha20Rng::from_seed(key)
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One complex Gaussian with `E|z|² = variance`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let sd = (0.5 * variance).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(sd * re, sd * im)
}

/// `rows x cols` matrix of i.i.d. complex Gaussians, drawn in row-major order.
pub fn complex_ginibre<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    variance: f64,
) -> Result<ComplexMatrix> {
    ensure!(rows >= 1 && cols >= 1, Parameter, "dimensions must be positive, got {rows}x{cols}");
    ensure!(variance > 0.0 && variance.is_finite(), Parameter, "variance must be positive, got {variance}");
    let entries: Vec<Complex64> = (0..rows * cols).map(|_| complex_gaussian(rng, variance)).collect();
    Ok(ComplexMatrix::from_row_slice(rows, cols, &entries))
}

/// First `k` columns of a Haar unitary: thin QR of an `n x k` Ginibre
/// matrix with column `j` of `Q` multiplied by the phase of `R_jj`.
pub fn haar_frame<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<ComplexMatrix> {
    ensure!(n >= 1, Parameter, "dimension must be positive");
    ensure!(k >= 1 && k <= n, Parameter, "frame width {k} must lie in 1..={n}");
    let g = complex_ginibre(rng, n, k, 1.0)?;
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..k {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Haar-distributed `n x n` unitary.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<ComplexMatrix> {
    haar_frame(rng, n, n)
}

/// Uniformly rotated orthogonal projector of rank `q` in dimension `n`.
pub fn random_projector<R: Rng + ?Sized>(rng: &mut R, n: usize, q: usize) -> Result<HermitianMatrix> {
    ensure!(n >= 1 && q >= 1 && q <= n, Parameter, "projector rank {q} must lie in 1..={n}");
    if q == n {
        return Ok(HermitianMatrix::identity(n));
    }
    let f = haar_frame(rng, n, q)?;
    HermitianMatrix::new(&f * f.adjoint())
}
