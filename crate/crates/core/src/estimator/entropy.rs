//! kNN (Kozachenko-Leonenko) differential entropy.

use serde::{Deserialize, Serialize};

use super::digamma::digamma;
use super::knn::{knn_distances, Norm};
use super::matrix::SampleMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Zero k-th neighbor diameters are clamped to this before taking logs.
pub const MIN_DIAMETER: f64 = 1e-15;

/// Settings shared by every kNN-based estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    /// Neighbor count.
    pub k: usize,
    pub norm: Norm,
    /// Scale of the uniform tie-breaking noise added before ranking; 0 disables it.
    pub jitter_scale: f64,
    pub seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            k: 3,
            norm: Norm::Chebyshev,
            jitter_scale: 0.0,
            seed: 0,
        }
    }
}

impl EstimatorConfig {
    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_norm(mut self, norm: Norm) -> Self {
        self.norm = norm;
        self
    }

    pub fn with_jitter(mut self, scale: f64, seed: u64) -> Self {
        self.jitter_scale = scale;
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if !self.jitter_scale.is_finite() || self.jitter_scale < 0.0 {
            return Err(Error::Config(format!(
                "jitter_scale must be a finite nonnegative number, got {}",
                self.jitter_scale
            )));
        }
        Ok(())
    }
}

/// Differential entropy estimate in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyEstimate<F> {
    pub value: F,
    /// Points whose k-th neighbor sat at distance zero and were clamped.
    pub clamped: usize,
}

/// `H = psi(T) - psi(k) + ln c_d + (d/T) sum_t ln eps_t`, where `eps_t` is
/// twice the k-th neighbor distance of point `t` and `c_d` the volume of the
/// unit-diameter ball of the norm.
pub fn knn_entropy<F: Scalar>(
    points: &SampleMatrix<F>,
    cfg: &EstimatorConfig,
) -> Result<EntropyEstimate<F>> {
    cfg.validate()?;
    let (n, d) = (points.rows(), points.cols());
    if n <= cfg.k {
        return Err(Error::InsufficientSample {
            available: n,
            k: cfg.k,
        });
    }
    let first = points.row(0);
    if (1..n).all(|t| points.row(t) == first) {
        return Err(Error::Degenerate(format!(
            "all {n} observations are identical"
        )));
    }

    let dists = knn_distances(points, cfg.k, cfg.norm)?;
    let floor = F::lit(MIN_DIAMETER);
    let two = F::lit(2.0);
    let mut clamped = 0;
    let mut log_sum = F::zero();
    for r in dists {
        let mut eps = two * r;
        if eps <= F::zero() {
            clamped += 1;
            eps = floor;
        }
        log_sum = log_sum + eps.ln();
    }
    if clamped > 0 {
        log::debug!("knn_entropy: clamped {clamped} of {n} zero neighbor distances");
    }
    let value = digamma(F::count(n))? - digamma(F::count(cfg.k))?
        + F::lit(cfg.norm.unit_diameter_ball_volume(d).ln())
        + F::count(d) * log_sum / F::count(n);
    Ok(EntropyEstimate { value, clamped })
}
