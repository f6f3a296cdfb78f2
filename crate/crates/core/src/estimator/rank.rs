//! Empirical-CDF rank transform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix::SampleMatrix;
use crate::error::Result;
use crate::scalar::Scalar;

/// A sample mapped through its per-column empirical CDFs.
///
/// Entries lie on the grid `{1/T, 2/T, ..., 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoObservations<F>(SampleMatrix<F>);

impl<F: Scalar> PseudoObservations<F> {
    pub fn as_matrix(&self) -> &SampleMatrix<F> {
        &self.0
    }

    pub fn into_matrix(self) -> SampleMatrix<F> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.rows()
    }

    pub fn cols(&self) -> usize {
        self.0.cols()
    }
}

/// `u[t][i] = #{s : x[s][i] <= x[t][i]} / T`.
///
/// Only the ordering of each column matters, so the output is unchanged by
/// any strictly increasing transform applied to a column.
pub fn empirical_copula_transform<F: Scalar>(x: &SampleMatrix<F>) -> PseudoObservations<F> {
    let (rows, cols) = (x.rows(), x.cols());
    let total = F::count(rows);
    let mut out = x.clone();
    let mut order: Vec<usize> = (0..rows).collect();
    for i in 0..cols {
        order.sort_unstable_by(|&a, &b| {
            x.get(a, i)
                .partial_cmp(&x.get(b, i))
                .expect("sample matrix holds finite values")
        });
        let data = out.data_mut();
        let mut start = 0;
        while start < rows {
            let value = x.get(order[start], i);
            let mut end = start + 1;
            while end < rows && x.get(order[end], i) == value {
                end += 1;
            }
            // weak inequality: a tie group shares the rank of its last member
            let u = F::count(end) / total;
            for &t in &order[start..end] {
                data[t * cols + i] = u;
            }
            start = end;
        }
    }
    PseudoObservations(out)
}

/// Adds seeded uniform noise in `[0, scale)` to every entry.
///
/// Used to break ties in raw data before ranking. `scale == 0` returns an
/// unchanged copy.
pub fn jitter<F: Scalar>(x: &SampleMatrix<F>, scale: f64, seed: u64) -> Result<SampleMatrix<F>> {
    let mut out = x.clone();
    if scale > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in out.data_mut() {
            let noise: f64 = rng.random::<f64>() * scale;
            *v = *v + F::lit(noise);
        }
        // re-validate: large scales could overflow f32
        return SampleMatrix::from_row_major(out.as_slice().to_vec(), x.rows(), x.cols());
    }
    Ok(out)
}
