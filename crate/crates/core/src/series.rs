use chrono::{NaiveDateTime, TimeDelta};

use crate::scalar::Scalar;

/// Uniformly sampled scalar sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<F> {
    pub values: Vec<F>,
    pub sample_interval: TimeDelta,
    /// Timestamp of the first sample, when the series comes from dated data.
    pub start: Option<NaiveDateTime>,
}

impl<F: Scalar> TimeSeries<F> {
    /// Series indexed by sample number, one unit (second) apart.
    pub fn from_values(values: Vec<F>) -> Self {
        Self {
            values,
            sample_interval: TimeDelta::seconds(1),
            start: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[F] {
        &self.values
    }
}

impl<F> AsRef<[F]> for TimeSeries<F> {
    fn as_ref(&self) -> &[F] {
        &self.values
    }
}
