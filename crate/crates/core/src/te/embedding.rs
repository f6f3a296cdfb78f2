use crate::error::{Error, Result};
use crate::estimator::SampleMatrix;
use crate::scalar::Scalar;

/// Target future, target history, and source columns aligned on a common
/// index `t` (the source time).
#[derive(Debug, Clone, PartialEq)]
pub struct LaggedEmbedding<F> {
    pub future: Vec<F>,
    /// One column per history step, newest first.
    pub history: Vec<Vec<F>>,
    pub source: Vec<F>,
    pub lag: usize,
}

impl<F: Scalar> LaggedEmbedding<F> {
    pub fn effective_length(&self) -> usize {
        self.future.len()
    }

    pub fn history_order(&self) -> usize {
        self.history.len()
    }

    /// Columns in the fixed order `[future, history..., source]`.
    pub fn to_matrix(&self) -> Result<SampleMatrix<F>> {
        let mut cols: Vec<&[F]> = Vec::with_capacity(self.history.len() + 2);
        cols.push(&self.future);
        cols.extend(self.history.iter().map(Vec::as_slice));
        cols.push(&self.source);
        SampleMatrix::from_columns(&cols)
    }
}

fn check_args(lag: usize, history_order: usize) -> Result<()> {
    if lag == 0 {
        return Err(Error::Config("lag must be at least 1".into()));
    }
    if history_order == 0 {
        return Err(Error::Config("history order must be at least 1".into()));
    }
    Ok(())
}

fn gather<F: Scalar>(
    source: &[F],
    target: &[F],
    lag: usize,
    history_offsets: &[isize],
) -> Result<LaggedEmbedding<F>> {
    let n = source.len() as isize;
    let lag_i = lag as isize;
    let earliest = history_offsets.iter().copied().min().unwrap_or(0).min(0);
    let t_min = -earliest;
    let len = n - lag_i - t_min;
    if len < 1 {
        return Err(Error::InsufficientSample {
            available: len.max(0) as usize,
            k: 0,
        });
    }
    let range = t_min..t_min + len;
    let at = |series: &[F], off: isize| -> Vec<F> {
        range.clone().map(|t| series[(t + off) as usize]).collect()
    };
    Ok(LaggedEmbedding {
        future: at(target, lag_i),
        history: history_offsets.iter().map(|&o| at(target, o)).collect(),
        source: at(source, 0),
        lag,
    })
}

/// Aligns `future = y[t + lag]`, `history = (y[t], y[t-1], ...)`, `source = x[t]`.
pub fn build_lagged_embedding<F: Scalar>(
    x: &[F],
    y: &[F],
    lag: usize,
    history_order: usize,
) -> Result<LaggedEmbedding<F>> {
    check_args(lag, history_order)?;
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "series lengths differ: source {} vs target {}",
            x.len(),
            y.len()
        )));
    }
    let offsets: Vec<isize> = (0..history_order as isize).map(|j| -j).collect();
    gather(x, y, lag, &offsets)
}

/// Embedding of a series against itself: `future = x[t + lag]`,
/// `source = x[t]`, and history the `history_order` samples immediately
/// preceding the future, skipping index `t` so history and source never
/// coincide. At `lag = 1` the history therefore starts at `x[t-1]`.
pub fn build_self_embedding<F: Scalar>(
    x: &[F],
    lag: usize,
    history_order: usize,
) -> Result<LaggedEmbedding<F>> {
    check_args(lag, history_order)?;
    let offsets: Vec<isize> = (1..)
        .map(|back| lag as isize - back)
        .filter(|&o| o != 0)
        .take(history_order)
        .collect();
    gather(x, x, lag, &offsets)
}
