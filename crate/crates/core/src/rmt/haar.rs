//! Haar-distributed unitary matrices and Monte Carlo averages over U(N).
//!
//! A sample is the QR factor of a complex Ginibre matrix with the phases
//! of R's diagonal moved into Q, which makes Q exactly Haar distributed.
//! Samples are drawn in fixed-size shards, each from its own ChaCha stream
//! of the run seed, so results do not depend on the thread count.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::symfn::SpectrumStats;

/// Samples per RNG stream.
pub const SHARD_SIZE: usize = 4096;

pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    loop {
        let z = DMatrix::from_fn(dim, dim, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        });
        let qr = z.qr();
        let r = qr.r();
        if (0..dim).any(|i| r[(i, i)].norm() < 1e-300) {
            continue;
        }
        let mut q = qr.q();
        for i in 0..dim {
            let phase = r[(i, i)] / r[(i, i)].norm();
            for row in 0..dim {
                q[(row, i)] *= phase;
            }
        }
        return q;
    }
}

/// Eigenvalues of a unitary matrix (the diagonal of its Schur form).
pub fn unitary_eigenvalues(u: DMatrix<Complex64>) -> Vec<Complex64> {
    let (_, t) = Schur::new(u).unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

pub fn haar_eigenvalues<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    unitary_eigenvalues(haar_unitary(dim, rng))
}

/// Power traces of one Haar sample, up to `max_power`.
pub fn haar_sample<R: Rng + ?Sized>(dim: usize, max_power: usize, rng: &mut R) -> SpectrumStats {
    SpectrumStats::from_eigenvalues(&haar_eigenvalues(dim, rng), max_power)
}

#[derive(Clone, Debug)]
pub struct HaarSample {
    pub eigenvalues: Vec<Complex64>,
    pub stats: SpectrumStats,
}

/// Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub samples: usize,
}

impl McEstimate {
    /// |mean − exact| ≤ sigmas · stderr, with a floor for zero-variance
    /// statistics.
    pub fn agrees_with(&self, exact: Complex64, sigmas: f64) -> bool {
        (self.mean - exact).norm() <= sigmas * self.stderr + 1e-12
    }

    pub fn z_score(&self, exact: Complex64) -> f64 {
        (self.mean - exact).norm() / self.stderr.max(1e-300)
    }
}

/// A reusable set of Haar samples on U(N).
#[derive(Clone, Debug)]
pub struct HaarEnsemble {
    pub dim: usize,
    pub seed: u64,
    pub samples: Vec<HaarSample>,
}

impl HaarEnsemble {
    pub fn generate(dim: usize, count: usize, max_power: usize, seed: u64) -> Self {
        let shards = count.div_ceil(SHARD_SIZE);
        let samples = (0..shards)
            .into_par_iter()
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(s as u64);
                let len = SHARD_SIZE.min(count - s * SHARD_SIZE);
                (0..len)
                    .map(|_| {
                        let eigenvalues = haar_eigenvalues(dim, &mut rng);
                        let stats = SpectrumStats::from_eigenvalues(&eigenvalues, max_power);
                        HaarSample { eigenvalues, stats }
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        HaarEnsemble { dim, seed, samples }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Mean and standard error of `f` over the ensemble.
    pub fn estimate(&self, f: impl Fn(&HaarSample) -> Complex64 + Sync) -> McEstimate {
        let values: Vec<Complex64> = self.samples.par_iter().map(&f).collect();
        estimate_values(&values)
    }
}

/// Mean and standard error of a sequence of samples. Partial sums are taken
/// per shard and combined in shard order, so the result does not depend on
/// the thread count.
pub fn estimate_values(values: &[Complex64]) -> McEstimate {
    let partial: Vec<(Complex64, f64)> = values
        .par_chunks(SHARD_SIZE)
        .map(|chunk| {
            chunk.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(s, s2), &v| (s + v, s2 + v.norm_sqr()))
        })
        .collect();
    let (sum, sum_sq) = partial
        .into_iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(a, b), (s, s2)| (a + s, b + s2));
    let n = values.len();
    let mean = sum / n as f64;
    let var = if n > 1 {
        ((sum_sq - n as f64 * mean.norm_sqr()) / (n - 1) as f64).max(0.0)
    } else {
        0.0
    };
    McEstimate { mean, stderr: (var / n as f64).sqrt(), samples: n }
}

/// Monte Carlo integral of a class function of the spectrum over U(N).
pub fn mc_integrate(
    f: impl Fn(&SpectrumStats) -> Complex64 + Sync,
    dim: usize,
    samples: usize,
    max_power: usize,
    seed: u64,
) -> McEstimate {
    HaarEnsemble::generate(dim, samples, max_power, seed).estimate(|s| f(&s.stats))
}
