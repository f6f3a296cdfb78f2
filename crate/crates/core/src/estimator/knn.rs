//! k-th nearest neighbor distance queries.
//!
//! [`knn_distances_brute_force`] is the reference path. [`knn_distances`]
//! sweeps outward from each query along the first coordinate of a sorted
//! copy and stops once the projected gap alone exceeds the current k-th
//! distance; it returns exactly the same values.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::SampleMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Distance used between observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    /// Maximum absolute coordinate difference.
    #[default]
    Chebyshev,
    Euclidean,
}

impl Norm {
    #[inline]
    pub fn distance<F: Scalar>(self, a: &[F], b: &[F]) -> F {
        match self {
            Norm::Chebyshev => a
                .iter()
                .zip(b)
                .fold(F::zero(), |acc, (&p, &q)| acc.max((p - q).abs())),
            Norm::Euclidean => a
                .iter()
                .zip(b)
                .fold(F::zero(), |acc, (&p, &q)| acc + (p - q) * (p - q))
                .sqrt(),
        }
    }

    /// Volume of the ball of unit *diameter* in `d` dimensions.
    pub fn unit_diameter_ball_volume(self, d: usize) -> f64 {
        match self {
            Norm::Chebyshev => 1.0,
            Norm::Euclidean => {
                let half = d as f64 / 2.0;
                std::f64::consts::PI.powf(half)
                    / 2f64.powi(d as i32)
                    / gamma_half_integer(half + 1.0)
            }
        }
    }
}

impl std::str::FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chebyshev" | "chebychev" | "max" => Ok(Norm::Chebyshev),
            "euclidean" | "l2" => Ok(Norm::Euclidean),
            other => Err(Error::Config(format!("unknown norm `{other}`"))),
        }
    }
}

impl std::fmt::Display for Norm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Norm::Chebyshev => "chebyshev",
            Norm::Euclidean => "euclidean",
        })
    }
}

// Gamma at positive integers and half-integers, exact recurrences.
fn gamma_half_integer(x: f64) -> f64 {
    let mut acc = 1.0;
    let mut v = x;
    while v > 1.0 {
        v -= 1.0;
        acc *= v;
    }
    if (v - 0.5).abs() < 1e-12 {
        acc * std::f64::consts::PI.sqrt()
    } else {
        acc
    }
}

fn check_sample<F: Scalar>(points: &SampleMatrix<F>, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    if points.rows() <= k {
        return Err(Error::InsufficientSample {
            available: points.rows(),
            k,
        });
    }
    Ok(())
}

/// Keeps the `k` smallest values seen, ascending.
struct Smallest<F> {
    k: usize,
    vals: Vec<F>,
}

impl<F: Scalar> Smallest<F> {
    fn new(k: usize) -> Self {
        Self {
            k,
            vals: Vec::with_capacity(k + 1),
        }
    }

    #[inline]
    fn push(&mut self, d: F) {
        if self.vals.len() == self.k {
            if d >= self.vals[self.k - 1] {
                return;
            }
            self.vals.pop();
        }
        let pos = self.vals.partition_point(|&v| v <= d);
        self.vals.insert(pos, d);
    }

    #[inline]
    fn kth(&self) -> Option<F> {
        (self.vals.len() == self.k).then(|| self.vals[self.k - 1])
    }
}

/// Exhaustive O(T^2 d) k-th neighbor distances, excluding the query point.
pub fn knn_distances_brute_force<F: Scalar>(
    points: &SampleMatrix<F>,
    k: usize,
    norm: Norm,
) -> Result<Vec<F>> {
    check_sample(points, k)?;
    let n = points.rows();
    Ok((0..n)
        .into_par_iter()
        .map(|t| {
            let q = points.row(t);
            let mut best = Smallest::new(k);
            for s in (0..n).filter(|&s| s != t) {
                best.push(norm.distance(q, points.row(s)));
            }
            best.kth().expect("n > k")
        })
        .collect())
}

/// k-th neighbor distance of every point, excluding the point itself.
pub fn knn_distances<F: Scalar>(points: &SampleMatrix<F>, k: usize, norm: Norm) -> Result<Vec<F>> {
    check_sample(points, k)?;
    let n = points.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        points
            .get(a, 0)
            .partial_cmp(&points.get(b, 0))
            .expect("finite")
            .then(a.cmp(&b))
    });
    let keys: Vec<F> = order.iter().map(|&t| points.get(t, 0)).collect();
    // For the Euclidean norm the rounded distance may undercut the rounded
    // projected gap by an ulp or so; shrink the gap before pruning.
    let slack = match norm {
        Norm::Chebyshev => F::one(),
        Norm::Euclidean => F::one() - F::lit(8.0) * F::epsilon(),
    };

    let mut out = vec![F::zero(); n];
    let by_sorted: Vec<(usize, F)> = (0..n)
        .into_par_iter()
        .map(|p| {
            let t = order[p];
            let q = points.row(t);
            let key = keys[p];
            let mut best = Smallest::new(k);
            let (mut lo, mut hi) = (p, p + 1);
            loop {
                let left_gap = (lo > 0).then(|| (key - keys[lo - 1]).abs());
                let right_gap = (hi < n).then(|| (keys[hi] - key).abs());
                let take_left = match (left_gap, right_gap) {
                    (None, None) => break,
                    (Some(_), None) => true,
                    (None, Some(_)) => false,
                    (Some(l), Some(r)) => l <= r,
                };
                let gap = if take_left { left_gap } else { right_gap }.expect("one side open");
                if let Some(kth) = best.kth() {
                    if gap * slack > kth {
                        break;
                    }
                }
                let s = if take_left {
                    lo -= 1;
                    order[lo]
                } else {
                    hi += 1;
                    order[hi - 1]
                };
                best.push(norm.distance(q, points.row(s)));
            }
            (t, best.kth().expect("n > k"))
        })
        .collect();
    for (t, d) in by_sorted {
        out[t] = d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_hand_case() {
        let m = SampleMatrix::from_column(&[0.0, 1.0, 3.0]).unwrap();
        assert_eq!(
            knn_distances(&m, 1, Norm::Chebyshev).unwrap(),
            vec![1.0, 1.0, 2.0]
        );
        assert_eq!(
            knn_distances_brute_force(&m, 1, Norm::Chebyshev).unwrap(),
            vec![1.0, 1.0, 2.0]
        );
    }

    #[test]
    fn two_dimensional_chebyshev_hand_case() {
        let m = SampleMatrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert_eq!(
            knn_distances(&m, 1, Norm::Chebyshev).unwrap(),
            vec![1.0, 1.0, 2.0]
        );
    }

    #[test]
    fn euclidean_hand_case() {
        let m = SampleMatrix::from_rows(&[vec![0.0, 0.0], vec![3.0, 4.0], vec![0.0, 1.0]]).unwrap();
        let d = knn_distances(&m, 2, Norm::Euclidean).unwrap();
        assert_eq!(d, vec![5.0, 5.0, 18f64.sqrt()]);
    }

    #[test]
    fn too_few_points() {
        let m = SampleMatrix::from_column(&[0.0, 1.0, 3.0]).unwrap();
        assert!(matches!(
            knn_distances(&m, 3, Norm::Chebyshev),
            Err(Error::InsufficientSample { available: 3, k: 3 })
        ));
    }

    #[test]
    fn unit_ball_volumes() {
        // diameter-1 balls: segment, disc of radius 1/2, sphere of radius 1/2
        assert!((Norm::Euclidean.unit_diameter_ball_volume(1) - 1.0).abs() < 1e-15);
        assert!(
            (Norm::Euclidean.unit_diameter_ball_volume(2) - std::f64::consts::PI / 4.0).abs()
                < 1e-15
        );
        assert!(
            (Norm::Euclidean.unit_diameter_ball_volume(3) - std::f64::consts::PI / 6.0).abs()
                < 1e-15
        );
        assert_eq!(Norm::Chebyshev.unit_diameter_ball_volume(5), 1.0);
    }
}
