use super::copula::{constant_column, ranked_copula_entropy};
use super::embedding::{build_lagged_embedding, LaggedEmbedding};
use crate::error::{Error, Result};
use crate::estimator::{empirical_copula_transform, jitter, EstimatorConfig, SampleMatrix};
use crate::scalar::Scalar;

/// The copula entropies a transfer-entropy estimate is assembled from, with
/// `A` the target future, `C` the target history and `B` the source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeTerms<F> {
    /// `H_c(A, C)`
    pub future_history: F,
    /// `H_c(B, C)`
    pub source_history: F,
    /// `H_c(A, C, B)`
    pub joint: F,
    /// `H_c(C)`; exactly zero for a single history column.
    pub history: F,
}

impl<F: Scalar> TeTerms<F> {
    /// `I(A; B | C) = H_c(A,C) + H_c(B,C) - H_c(A,C,B) - H_c(C)`.
    pub fn combine(&self) -> F {
        self.future_history + self.source_history - self.joint - self.history
    }
}

/// Transfer entropy estimate in nats. May be slightly negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeEstimate<F> {
    pub value: F,
    pub lag: usize,
    pub history_order: usize,
    pub effective_length: usize,
    pub terms: TeTerms<F>,
}

/// Transfer entropy from `x` to `y` at `lag`, conditioning on
/// `history_order` past samples of `y`.
pub fn transfer_entropy<F: Scalar>(
    x: &[F],
    y: &[F],
    lag: usize,
    history_order: usize,
    cfg: &EstimatorConfig,
) -> Result<TeEstimate<F>> {
    let emb = build_lagged_embedding(x, y, lag, history_order)?;
    transfer_entropy_from_embedding(&emb, cfg)
}

/// Estimates transfer entropy on a prepared embedding.
///
/// All copula-entropy terms are computed on the same rows. Jitter, when
/// enabled, is applied once to the whole embedding before ranking.
pub fn transfer_entropy_from_embedding<F: Scalar>(
    emb: &LaggedEmbedding<F>,
    cfg: &EstimatorConfig,
) -> Result<TeEstimate<F>> {
    cfg.validate()?;
    let n = emb.effective_length();
    if n <= cfg.k {
        return Err(Error::InsufficientSample {
            available: n,
            k: cfg.k,
        });
    }
    let order = emb.history_order();
    let raw = jitter(&emb.to_matrix()?, cfg.jitter_scale, cfg.seed)?;
    let u = empirical_copula_transform(&raw).into_matrix();
    if let Some(col) = constant_column(&u) {
        let role = match col {
            0 => "target future".to_string(),
            c if c <= order => format!("target history column {}", c - 1),
            _ => "source".to_string(),
        };
        return Err(Error::Degenerate(format!("{role} is constant")));
    }

    let future = 0;
    let history: Vec<usize> = (1..=order).collect();
    let source = order + 1;
    let cols = |head: &[usize], tail: &[usize]| -> Vec<usize> {
        head.iter().chain(tail).copied().collect()
    };
    let ac = cols(&[future], &history);
    let bc = cols(&history, &[source]);
    let acb = cols(&ac, &[source]);

    let ce = |which: &[usize]| -> Result<F> {
        let sub: SampleMatrix<F> = u.select_columns(which)?;
        Ok(ranked_copula_entropy(&sub, cfg)?.value)
    };
    let ((future_history, source_history), (joint, hist)) = rayon::join(
        || rayon::join(|| ce(&ac), || ce(&bc)),
        || {
            rayon::join(
                || ce(&acb),
                || {
                    if order > 1 {
                        ce(&history)
                    } else {
                        Ok(F::zero())
                    }
                },
            )
        },
    );
    let terms = TeTerms {
        future_history: future_history?,
        source_history: source_history?,
        joint: joint?,
        history: hist?,
    };
    Ok(TeEstimate {
        value: terms.combine(),
        lag: emb.lag,
        history_order: order,
        effective_length: n,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_source_is_degenerate() {
        let y: Vec<f64> = (0..40).map(|i| ((i * 17) % 40) as f64).collect();
        let x = vec![1.0; 40];
        let err = transfer_entropy(&x, &y, 1, 1, &EstimatorConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Degenerate(ref m) if m.contains("source")));
    }

    #[test]
    fn too_short_for_k() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y = [5.0, 3.0, 1.0, 2.0, 4.0];
        assert!(matches!(
            transfer_entropy(&x, &y, 2, 1, &EstimatorConfig::default()),
            Err(Error::InsufficientSample { available: 3, k: 3 })
        ));
    }
}
