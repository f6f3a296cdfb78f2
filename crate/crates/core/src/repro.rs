//! The simulated lag-identification experiments with fixed seeds: every
//! system at true lags 1 to 4, scanned over lags 1 to 8 with the default
//! estimator.

use serde::Serialize;

use crate::error::Result;
use crate::scan::{scan_lags, self_scan, LagScanConfig, TeCurve};
use crate::sim::{simulate, SimulatorSpec, SystemKind};

pub const REPRO_LAGS: [usize; 4] = [1, 2, 3, 4];

/// Seed base; case (system `s`, lag `l`) uses `REPRO_SEED_BASE + 10 * s + l`.
pub const REPRO_SEED_BASE: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReproCase {
    pub system: SystemKind,
    pub lag: usize,
    pub seed: u64,
}

impl ReproCase {
    pub fn new(system: SystemKind, lag: usize) -> Self {
        Self {
            system,
            lag,
            seed: REPRO_SEED_BASE + 10 * u64::from(system.number()) + lag as u64,
        }
    }

    pub fn spec(&self) -> SimulatorSpec {
        SimulatorSpec::new(self.system, self.lag).with_seed(self.seed)
    }
}

/// The four cases of one system, ascending by lag.
pub fn repro_cases(system: SystemKind) -> Vec<ReproCase> {
    REPRO_LAGS
        .iter()
        .map(|&l| ReproCase::new(system, l))
        .collect()
}

/// Lags 1 to 8, one history sample.
pub fn repro_scan_config() -> LagScanConfig {
    LagScanConfig::default()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproOutcome {
    pub case: ReproCase,
    pub curve: TeCurve<f64>,
}

impl ReproOutcome {
    pub fn correct(&self) -> bool {
        self.curve.identified_lag == self.case.lag
    }
}

/// Simulates one case and scans it: cross transfer entropy x -> y for the
/// output-delay systems, self transfer entropy for the delayed AR system.
pub fn run_case(case: &ReproCase, cfg: &LagScanConfig) -> Result<ReproOutcome> {
    let tr = simulate::<f64>(&case.spec())?;
    let curve = match &tr.output {
        Some(y) => scan_lags(&tr.state.values, &y.values, cfg)?,
        None => self_scan(&tr.state.values, cfg)?,
    };
    Ok(ReproOutcome { case: *case, curve })
}
