//! Time-lag identification with copula-entropy transfer entropy.
//!
//! Transfer entropy from a source series to a target is written as a sum of
//! copula entropies, each estimated nonparametrically: the sample is mapped
//! to pseudo-observations through its empirical marginal CDFs, and the
//! entropy of those is estimated from k-th nearest neighbor distances.
//! Scanning candidate lags and taking the argmax identifies the delay at
//! which the source influences the target.
//!
//! The numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! at the crate root fix `f64`, which the simulators, ingest and CLI use.
//!
//! ```
//! use timelag_core::{scan_lags, simulate, LagScanConfig, SimulatorSpec, SystemKind};
//!
//! let spec = SimulatorSpec::new(SystemKind::GaussianShift, 2).with_seed(11);
//! let tr = simulate::<f64>(&spec).unwrap();
//! let curve = scan_lags(&tr.state.values, &tr.output.unwrap().values, &LagScanConfig::default()).unwrap();
//! assert_eq!(curve.identified_lag, 2);
//! ```

pub mod error;
pub mod estimator;
pub mod ingest;
pub mod repro;
pub mod scalar;
pub mod scan;
pub mod series;
pub mod sim;
pub mod te;

pub use error::{Error, Result};
pub use estimator::{
    digamma, empirical_copula_transform, knn_distances, knn_distances_brute_force, knn_entropy,
    EntropyEstimate, EstimatorConfig, Norm, PseudoObservations, SampleMatrix,
};
pub use ingest::{
    lag_grid_hours, load_csv, pairwise_scan_matrix, CurveMatrix, Dataset, DatasetSchema,
    DateWindow, IngestOptions, NamedSeries,
};
pub use repro::{repro_cases, repro_scan_config, run_case, ReproCase, ReproOutcome};
pub use scalar::Scalar;
pub use scan::{identify_lag, scan_both, scan_lags, self_scan, Direction, LagScanConfig, TeCurve};
pub use series::TimeSeries;
pub use sim::{
    simulate, simulate_system1, simulate_system2, simulate_system3, simulate_system4, SimWarning,
    SimulatorSpec, SystemKind, Trajectory,
};
pub use te::{
    build_lagged_embedding, build_self_embedding, copula_entropy, mutual_information,
    transfer_entropy, transfer_entropy_from_embedding, CeEstimate, LaggedEmbedding, TeEstimate,
    TeTerms,
};

pub type Matrix = SampleMatrix<f64>;
pub type Matrix32 = SampleMatrix<f32>;
pub type Series = TimeSeries<f64>;
pub type Series32 = TimeSeries<f32>;
pub type Curve = TeCurve<f64>;
pub type Curve32 = TeCurve<f32>;
pub type Ce = CeEstimate<f64>;
pub type Te = TeEstimate<f64>;
pub type Embedding = LaggedEmbedding<f64>;
pub type SimTrajectory = Trajectory<f64>;
