//! Numerical kernels: rank transform, kNN queries, digamma, kNN entropy.

mod digamma;
mod entropy;
mod knn;
mod matrix;
mod rank;

pub use digamma::digamma;
pub use entropy::{knn_entropy, EntropyEstimate, EstimatorConfig, MIN_DIAMETER};
pub use knn::{knn_distances, knn_distances_brute_force, Norm};
pub use matrix::SampleMatrix;
pub use rank::{empirical_copula_transform, jitter, PseudoObservations};
