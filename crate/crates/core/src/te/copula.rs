use crate::error::{Error, Result};
use crate::estimator::{
    empirical_copula_transform, jitter, knn_entropy, EstimatorConfig, SampleMatrix,
};
use crate::scalar::Scalar;

/// Copula entropy estimate in nats. Equals minus the mutual information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CeEstimate<F> {
    pub value: F,
    pub sample_size: usize,
    pub config: EstimatorConfig,
    /// Zero-distance neighbors clamped by the entropy step.
    pub clamped: usize,
}

/// Two-step copula entropy: rank-transform each column, then take the kNN
/// entropy of the pseudo-observations.
pub fn copula_entropy<F: Scalar>(
    x: &SampleMatrix<F>,
    cfg: &EstimatorConfig,
) -> Result<CeEstimate<F>> {
    cfg.validate()?;
    if x.cols() < 2 {
        return Err(Error::Dimension(format!(
            "copula entropy needs at least 2 variables, got {}",
            x.cols()
        )));
    }
    let x = jitter(x, cfg.jitter_scale, cfg.seed)?;
    let u = empirical_copula_transform(&x).into_matrix();
    if let Some(col) = constant_column(&u) {
        return Err(Error::Degenerate(format!("column {col} is constant")));
    }
    ranked_copula_entropy(&u, cfg)
}

/// kNN entropy of data that is already on the pseudo-observation grid.
pub(crate) fn ranked_copula_entropy<F: Scalar>(
    u: &SampleMatrix<F>,
    cfg: &EstimatorConfig,
) -> Result<CeEstimate<F>> {
    let h = knn_entropy(u, cfg)?;
    Ok(CeEstimate {
        value: h.value,
        sample_size: u.rows(),
        config: *cfg,
        clamped: h.clamped,
    })
}

/// Index of the first column whose entries are all equal.
///
/// On pseudo-observations that means every entry is 1.
pub(crate) fn constant_column<F: Scalar>(u: &SampleMatrix<F>) -> Option<usize> {
    (0..u.cols()).find(|&i| {
        let first = u.get(0, i);
        (1..u.rows()).all(|t| u.get(t, i) == first)
    })
}

/// Mutual information as negative copula entropy.
pub fn mutual_information<F: Scalar>(x: &SampleMatrix<F>, cfg: &EstimatorConfig) -> Result<F> {
    Ok(-copula_entropy(x, cfg)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_variable_is_rejected() {
        let m = SampleMatrix::from_column(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert!(matches!(
            copula_entropy(&m, &EstimatorConfig::default()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn constant_column_is_degenerate() {
        let a: Vec<f64> = (0..20).map(|i| (i * 7 % 20) as f64).collect();
        let b = vec![0.0; 20];
        let m = SampleMatrix::from_columns(&[&a, &b]).unwrap();
        let err = copula_entropy(&m, &EstimatorConfig::default()).unwrap_err();
        assert!(err.is_degenerate());
    }

    #[test]
    fn mi_is_negated_ce() {
        let a: Vec<f64> = (0..50).map(|i| ((i * 37) % 50) as f64).collect();
        let b: Vec<f64> = (0..50)
            .map(|i| ((i * 11) % 50) as f64 + 0.5 * i as f64)
            .collect();
        let m = SampleMatrix::from_columns(&[&a, &b]).unwrap();
        let cfg = EstimatorConfig::default();
        let ce = copula_entropy(&m, &cfg).unwrap().value;
        let mi = mutual_information(&m, &cfg).unwrap();
        assert_eq!(mi.to_bits(), (-ce).to_bits());
    }
}
