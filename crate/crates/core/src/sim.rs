//! Seeded simulators for four lagged stochastic systems.
//!
//! Noise `N(mu, delta)` takes `delta` as a variance. Each noise source draws
//! from its own ChaCha8 stream of `SimulatorSpec::seed`: stream 0 feeds the state
//! noise, stream 1 the output noise. Draws are standard normals in `f64`,
//! scaled, then converted to the scalar type, so `f32` and `f64`
//! trajectories share one random sequence.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TimeSeries;

/// Samples simulated and discarded before the delayed-AR system is returned.
pub const DELAYED_AR_WARMUP: usize = 100;

const STATE_STREAM: u64 = 0;
const OUTPUT_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    /// `X_i ~ N`, `Y_{i+l} = X_i + noise`.
    GaussianShift,
    /// As `GaussianShift` with a `sin(2 pi i / m)` mean on the state.
    SineShift,
    /// Random-walk state, shifted noisy output.
    WienerShift,
    /// `X_i = alpha X_{i-1} + beta X_{i-l} + noise`, state only.
    DelayedAr,
}

impl SystemKind {
    pub const ALL: [SystemKind; 4] = [
        SystemKind::GaussianShift,
        SystemKind::SineShift,
        SystemKind::WienerShift,
        SystemKind::DelayedAr,
    ];

    /// Systems are numbered 1 to 4.
    pub fn from_number(n: u32) -> Option<Self> {
        Self::ALL.get((n as usize).checked_sub(1)?).copied()
    }

    pub fn number(self) -> u32 {
        match self {
            SystemKind::GaussianShift => 1,
            SystemKind::SineShift => 2,
            SystemKind::WienerShift => 3,
            SystemKind::DelayedAr => 4,
        }
    }

    pub fn has_output(self) -> bool {
        self != SystemKind::DelayedAr
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulatorSpec {
    pub system: SystemKind,
    pub lag: usize,
    pub mu1: f64,
    pub mu2: f64,
    /// Variance of the state noise.
    pub delta1: f64,
    /// Variance of the output noise.
    pub delta2: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Simulated length `m`. Output-delay systems return `m - lag` aligned samples.
    pub length: usize,
    pub seed: u64,
}

impl SimulatorSpec {
    /// Spec with the default parameters: zero means, variances 0.001,
    /// length 500, alpha 0.2, beta 0.8.
    pub fn new(system: SystemKind, lag: usize) -> Self {
        Self {
            system,
            lag,
            mu1: 0.0,
            mu2: 0.0,
            delta1: 0.001,
            delta2: 0.001,
            alpha: 0.2,
            beta: 0.8,
            length: 500,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_length(mut self, length: usize) -> Self {
        self.length = length;
        self
    }

    pub fn with_variances(mut self, delta1: f64, delta2: f64) -> Self {
        self.delta1 = delta1;
        self.delta2 = delta2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.lag == 0 {
            return Err(Error::InvalidSpec("lag must be at least 1".into()));
        }
        for (name, v) in [("delta1", self.delta1), ("delta2", self.delta2)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidSpec(format!(
                    "{name} must be a finite variance >= 0, got {v}"
                )));
            }
        }
        for (name, v) in [
            ("mu1", self.mu1),
            ("mu2", self.mu2),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidSpec(format!("{name} must be finite")));
            }
        }
        if self.length <= self.lag {
            return Err(Error::InvalidSpec(format!(
                "length {} must exceed lag {}",
                self.length, self.lag
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimWarning {
    /// `|alpha| + |beta| >= 1`: the delayed recursion is not stationary.
    NonStationary { alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<F> {
    pub state: TimeSeries<F>,
    /// `None` for the state-only delayed-AR system.
    pub output: Option<TimeSeries<F>>,
    pub true_lag: usize,
    pub warnings: Vec<SimWarning>,
}

struct Noise {
    rng: ChaCha8Rng,
    mu: f64,
    sd: f64,
}

impl Noise {
    fn new(seed: u64, stream: u64, mu: f64, variance: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self {
            rng,
            mu,
            sd: variance.sqrt(),
        }
    }

    fn draw<F: Scalar>(&mut self) -> F {
        let z: f64 = StandardNormal.sample(&mut self.rng);
        F::lit(self.mu + self.sd * z)
    }
}

/// Runs the system named in `spec`.
pub fn simulate<F: Scalar>(spec: &SimulatorSpec) -> Result<Trajectory<F>> {
    match spec.system {
        SystemKind::GaussianShift => simulate_system1(spec),
        SystemKind::SineShift => simulate_system2(spec),
        SystemKind::WienerShift => simulate_system3(spec),
        SystemKind::DelayedAr => simulate_system4(spec),
    }
}

// State X_1..X_m, output Y_{i+l} = X_i + noise; both cropped to the common
// index range l+1..m.
fn shift_output<F: Scalar>(spec: &SimulatorSpec, state: Vec<F>) -> Trajectory<F> {
    let (m, l) = (spec.length, spec.lag);
    let mut noise = Noise::new(spec.seed, OUTPUT_STREAM, spec.mu2, spec.delta2);
    // y_full[j] holds Y at index l + 1 + j for j = 0..m-l
    let output: Vec<F> = state[..m - l]
        .iter()
        .map(|&x| x + noise.draw::<F>())
        .collect();
    let state = state[l..].to_vec();
    Trajectory {
        state: TimeSeries::from_values(state),
        output: Some(TimeSeries::from_values(output)),
        true_lag: l,
        warnings: Vec::new(),
    }
}

fn expect_system(spec: &SimulatorSpec, kind: SystemKind) -> Result<()> {
    spec.validate()?;
    if spec.system != kind {
        return Err(Error::InvalidSpec(format!(
            "spec is for system {}, not system {}",
            spec.system.number(),
            kind.number()
        )));
    }
    Ok(())
}

/// White Gaussian state with a shifted noisy copy as output.
pub fn simulate_system1<F: Scalar>(spec: &SimulatorSpec) -> Result<Trajectory<F>> {
    expect_system(spec, SystemKind::GaussianShift)?;
    let mut noise = Noise::new(spec.seed, STATE_STREAM, spec.mu1, spec.delta1);
    let state = (0..spec.length).map(|_| noise.draw()).collect();
    Ok(shift_output(spec, state))
}

/// Sine-modulated state, one period over the simulated length.
pub fn simulate_system2<F: Scalar>(spec: &SimulatorSpec) -> Result<Trajectory<F>> {
    expect_system(spec, SystemKind::SineShift)?;
    let mut noise = Noise::new(spec.seed, STATE_STREAM, spec.mu1, spec.delta1);
    let m = spec.length as f64;
    let state = (1..=spec.length)
        .map(|i| {
            let phase = 2.0 * std::f64::consts::PI * i as f64 / m;
            F::lit(phase.sin()) + noise.draw::<F>()
        })
        .collect();
    Ok(shift_output(spec, state))
}

/// Random-walk state starting from `X_0 = 0`.
pub fn simulate_system3<F: Scalar>(spec: &SimulatorSpec) -> Result<Trajectory<F>> {
    expect_system(spec, SystemKind::WienerShift)?;
    let mut noise = Noise::new(spec.seed, STATE_STREAM, spec.mu1, spec.delta1);
    let mut level = F::zero();
    let state = (0..spec.length)
        .map(|_| {
            level = level + noise.draw::<F>();
            level
        })
        .collect();
    Ok(shift_output(spec, state))
}

/// Delayed first-order recursion. The first `lag` values are noise draws and
/// [`DELAYED_AR_WARMUP`] samples are dropped before the returned `length`.
pub fn simulate_system4<F: Scalar>(spec: &SimulatorSpec) -> Result<Trajectory<F>> {
    expect_system(spec, SystemKind::DelayedAr)?;
    let l = spec.lag;
    let total = spec.length + DELAYED_AR_WARMUP;
    let (alpha, beta) = (F::lit(spec.alpha), F::lit(spec.beta));
    let mut noise = Noise::new(spec.seed, STATE_STREAM, spec.mu1, spec.delta1);
    let mut x: Vec<F> = Vec::with_capacity(total);
    for i in 0..total {
        let v = if i < l.max(1) {
            noise.draw()
        } else {
            alpha * x[i - 1] + beta * x[i - l] + noise.draw::<F>()
        };
        x.push(v);
    }
    let mut warnings = Vec::new();
    if spec.alpha.abs() + spec.beta.abs() >= 1.0 {
        log::warn!(
            "delayed AR system with |alpha| + |beta| = {} >= 1 is not stationary",
            spec.alpha.abs() + spec.beta.abs()
        );
        warnings.push(SimWarning::NonStationary {
            alpha: spec.alpha,
            beta: spec.beta,
        });
    }
    Ok(Trajectory {
        state: TimeSeries::from_values(x.split_off(DELAYED_AR_WARMUP)),
        output: None,
        true_lag: l,
        warnings,
    })
}
