//! Transfer entropy as a function of lag, and the lag of maximal transfer.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::EstimatorConfig;
use crate::scalar::Scalar;
use crate::te::{build_lagged_embedding, build_self_embedding, transfer_entropy_from_embedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    #[default]
    XToY,
    YToX,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagScanConfig {
    pub lag_min: usize,
    pub lag_max: usize,
    /// Spacing between candidate lags; 1 scans every lag.
    pub lag_step: usize,
    pub history_order: usize,
    pub estimator: EstimatorConfig,
    pub direction: Direction,
    /// Evaluate lags on the rayon pool. Results do not depend on it.
    pub parallel: bool,
}

impl Default for LagScanConfig {
    fn default() -> Self {
        Self {
            lag_min: 1,
            lag_max: 8,
            lag_step: 1,
            history_order: 1,
            estimator: EstimatorConfig::default(),
            direction: Direction::XToY,
            parallel: true,
        }
    }
}

impl LagScanConfig {
    pub fn with_lags(mut self, lag_min: usize, lag_max: usize) -> Self {
        self.lag_min = lag_min;
        self.lag_max = lag_max;
        self
    }

    pub fn with_direction(mut self, direction: Direction) -> Self {
        self.direction = direction;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    /// Candidate lags, ascending.
    pub fn lags(&self) -> Vec<usize> {
        (self.lag_min..=self.lag_max)
            .step_by(self.lag_step.max(1))
            .collect()
    }

    /// Checks the lag range against a series of length `len`.
    pub fn validate(&self, len: usize) -> Result<()> {
        self.estimator.validate()?;
        if self.lag_min == 0 || self.lag_min > self.lag_max {
            return Err(Error::Config(format!(
                "lag range must satisfy 1 <= lag_min <= lag_max, got {}..{}",
                self.lag_min, self.lag_max
            )));
        }
        if self.lag_step == 0 {
            return Err(Error::Config("lag step must be at least 1".into()));
        }
        if self.history_order == 0 {
            return Err(Error::Config("history order must be at least 1".into()));
        }
        let shortest = len as isize - self.lag_max as isize - self.history_order as isize;
        if shortest < self.estimator.k as isize {
            return Err(Error::Config(format!(
                "lag_max {} leaves too few aligned samples of a length-{len} series for k = {}",
                self.lag_max, self.estimator.k
            )));
        }
        Ok(())
    }
}

/// Estimated transfer entropy per lag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TeCurve<F> {
    /// `(lag, te)` pairs in nats, ascending by lag.
    pub entries: Vec<(usize, F)>,
    pub identified_lag: usize,
    pub max_te: F,
    pub direction: Direction,
}

impl<F: Scalar> TeCurve<F> {
    fn from_entries(entries: Vec<(usize, F)>, direction: Direction) -> Result<Self> {
        let (identified_lag, max_te) = identify_lag(&entries)?;
        Ok(Self {
            entries,
            identified_lag,
            max_te,
            direction,
        })
    }

    pub fn values(&self) -> Vec<F> {
        self.entries.iter().map(|&(_, v)| v).collect()
    }

    pub fn te_at(&self, lag: usize) -> Option<F> {
        self.entries
            .iter()
            .find(|&&(l, _)| l == lag)
            .map(|&(_, v)| v)
    }
}

/// Smallest lag attaining the maximum transfer entropy.
pub fn identify_lag<F: Scalar>(entries: &[(usize, F)]) -> Result<(usize, F)> {
    let mut iter = entries.iter();
    let &(mut best_lag, mut best) = iter
        .next()
        .ok_or_else(|| Error::InvalidInput("cannot identify a lag from an empty curve".into()))?;
    for &(lag, te) in iter {
        if te > best || (te == best && lag < best_lag) {
            best = te;
            best_lag = lag;
        }
    }
    Ok((best_lag, best))
}

fn run<F, E>(
    cfg: &LagScanConfig,
    len: usize,
    direction: Direction,
    estimate: E,
) -> Result<TeCurve<F>>
where
    F: Scalar,
    E: Fn(usize) -> Result<F> + Sync,
{
    cfg.validate(len)?;
    let lags = cfg.lags();
    let at = |lag: usize| -> Result<(usize, F)> {
        estimate(lag).map(|te| (lag, te)).map_err(|e| Error::AtLag {
            lag,
            source: Box::new(e),
        })
    };
    let entries: Result<Vec<_>> = if cfg.parallel {
        lags.par_iter().map(|&l| at(l)).collect()
    } else {
        lags.iter().map(|&l| at(l)).collect()
    };
    TeCurve::from_entries(entries?, direction)
}

/// Transfer entropy curve between two series in `cfg.direction`, which must
/// be a single direction; see [`scan_both`].
pub fn scan_lags<F: Scalar>(x: &[F], y: &[F], cfg: &LagScanConfig) -> Result<TeCurve<F>> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "series lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let (source, target) = match cfg.direction {
        Direction::XToY => (x, y),
        Direction::YToX => (y, x),
        Direction::Both => {
            return Err(Error::Config(
                "scan_lags takes a single direction; use scan_both".into(),
            ))
        }
    };
    run(cfg, x.len(), cfg.direction, |lag| {
        let emb = build_lagged_embedding(source, target, lag, cfg.history_order)?;
        Ok(transfer_entropy_from_embedding(&emb, &cfg.estimator)?.value)
    })
}

/// Forward (`x -> y`) and backward (`y -> x`) curves.
pub fn scan_both<F: Scalar>(
    x: &[F],
    y: &[F],
    cfg: &LagScanConfig,
) -> Result<(TeCurve<F>, TeCurve<F>)> {
    let fwd = scan_lags(x, y, &cfg.clone().with_direction(Direction::XToY))?;
    let bwd = scan_lags(x, y, &cfg.clone().with_direction(Direction::YToX))?;
    Ok((fwd, bwd))
}

/// Transfer entropy from a series to its own future at each lag,
/// conditioning on the samples just before the future (never the source
/// sample itself).
pub fn self_scan<F: Scalar>(x: &[F], cfg: &LagScanConfig) -> Result<TeCurve<F>> {
    // lag 1 pushes the history back one step past the source
    let extra = usize::from(cfg.lag_min <= cfg.history_order);
    let mut check = cfg.clone();
    check.history_order += extra;
    check.validate(x.len())?;
    run(cfg, x.len(), Direction::XToY, |lag| {
        let emb = build_self_embedding(x, lag, cfg.history_order)?;
        Ok(transfer_entropy_from_embedding(&emb, &cfg.estimator)?.value)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_max() {
        assert_eq!(
            identify_lag(&[(1, 0.1), (2, 0.9), (3, 0.2)]).unwrap(),
            (2, 0.9)
        );
    }

    #[test]
    fn tie_goes_to_smallest_lag() {
        assert_eq!(identify_lag(&[(1, 0.5), (2, 0.5)]).unwrap(), (1, 0.5));
        assert_eq!(identify_lag(&[(3, 0.5), (2, 0.5)]).unwrap(), (2, 0.5));
    }

    #[test]
    fn negative_values() {
        assert_eq!(identify_lag(&[(1, -0.02), (2, -0.01)]).unwrap(), (2, -0.01));
    }

    #[test]
    fn empty_curve() {
        assert!(matches!(
            identify_lag::<f64>(&[]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn lag_grid_with_step() {
        let cfg = LagScanConfig {
            lag_min: 6,
            lag_max: 144,
            lag_step: 6,
            ..Default::default()
        };
        let lags = cfg.lags();
        assert_eq!(lags.len(), 24);
        assert_eq!((lags[0], lags[23]), (6, 144));
    }

    #[test]
    fn invalid_ranges() {
        let base = LagScanConfig::default();
        assert!(base.clone().with_lags(0, 3).validate(100).is_err());
        assert!(base.clone().with_lags(4, 3).validate(100).is_err());
        // lag 8 on 12 samples leaves 4 aligned rows, just above k = 3
        assert!(base.clone().with_lags(1, 8).validate(11).is_err());
        assert!(base.with_lags(1, 8).validate(12).is_ok());
    }

    #[test]
    fn both_direction_rejected_by_single_scan() {
        let x: Vec<f64> = (0..30).map(|i| ((i * 7) % 30) as f64).collect();
        let cfg = LagScanConfig::default().with_direction(Direction::Both);
        assert!(matches!(scan_lags(&x, &x, &cfg), Err(Error::Config(_))));
    }
}
