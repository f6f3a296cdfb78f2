mod common;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use timelag_core::{
    empirical_copula_transform, knn_distances, knn_distances_brute_force, knn_entropy,
    EstimatorConfig, Matrix, Norm, SampleMatrix,
};

use common::{gaussian, permutation, rng, uniform};
use rand::Rng;

fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut r = rng(seed);
    let data = (0..rows * cols).map(|_| r.random::<f64>()).collect();
    Matrix::from_row_major(data, rows, cols).unwrap()
}

#[test]
fn accelerated_knn_matches_brute_force_on_seeded_instances() {
    for seed in 0..200u64 {
        let mut r = rng(10_000 + seed);
        let rows = r.random_range(5..120);
        let cols = r.random_range(1..5);
        let k = r.random_range(1..5).min(rows - 1);
        let mut m = random_matrix(rows, cols, seed);
        if seed % 3 == 0 {
            // put the points on a coarse grid so distances tie
            let grid: Vec<f64> = m
                .as_slice()
                .iter()
                .map(|v| (v * 8.0).floor() / 8.0)
                .collect();
            m = Matrix::from_row_major(grid, rows, cols).unwrap();
        }
        for norm in [Norm::Chebyshev, Norm::Euclidean] {
            let fast = knn_distances(&m, k, norm).unwrap();
            let slow = knn_distances_brute_force(&m, k, norm).unwrap();
            assert_eq!(fast, slow, "seed {seed}, norm {norm}, {rows}x{cols}, k {k}");
        }
    }
}

#[test]
fn hundred_uniform_points_k3_agree() {
    let m = random_matrix(100, 1, 42);
    assert_eq!(
        knn_distances(&m, 3, Norm::Chebyshev).unwrap(),
        knn_distances_brute_force(&m, 3, Norm::Chebyshev).unwrap()
    );
}

#[test]
fn gaussian_entropy_oracle() {
    let expected = 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E).ln();
    let m = Matrix::from_column(&gaussian(2000, 1)).unwrap();
    let h = knn_entropy(&m, &EstimatorConfig::default()).unwrap();
    assert_abs_diff_eq!(h.value, expected, epsilon = 0.05);
    assert_eq!(h.clamped, 0);
}

#[test]
fn uniform_entropy_oracle() {
    let m = Matrix::from_column(&uniform(2000, 2)).unwrap();
    let h = knn_entropy(&m, &EstimatorConfig::default()).unwrap();
    assert_abs_diff_eq!(h.value, 0.0, epsilon = 0.05);
}

#[test]
fn euclidean_two_dimensional_gaussian() {
    // independent standard normals: H = ln(2 pi e)
    let a = gaussian(2000, 3);
    let b = gaussian(2000, 4);
    let m = Matrix::from_columns(&[&a, &b]).unwrap();
    let cfg = EstimatorConfig::default().with_norm(Norm::Euclidean);
    let h = knn_entropy(&m, &cfg).unwrap().value;
    assert_abs_diff_eq!(
        h,
        (2.0 * std::f64::consts::PI * std::f64::consts::E).ln(),
        epsilon = 0.1
    );
}

#[test]
fn single_precision_entropy() {
    let g: Vec<f32> = gaussian(2000, 1).into_iter().map(|v| v as f32).collect();
    let m = SampleMatrix::<f32>::from_column(&g).unwrap();
    let h = knn_entropy(&m, &EstimatorConfig::default()).unwrap().value;
    assert!((h - 1.418_938_5).abs() < 0.05, "{h}");
}

#[test]
fn entropy_invariant_under_permutation_and_translation() {
    let m = random_matrix(300, 2, 5);
    let cfg = EstimatorConfig::default();
    let base = knn_entropy(&m, &cfg).unwrap().value;
    let permuted = m.permute_rows(&permutation(300, 6)).unwrap();
    assert_eq!(
        knn_entropy(&permuted, &cfg).unwrap().value.to_bits(),
        base.to_bits()
    );
    // 0.5 and 0.25 are exact in binary and keep every coordinate difference exact
    let shifted = m
        .map_column(0, |v| v + 0.5)
        .unwrap()
        .map_column(1, |v| v - 0.25)
        .unwrap();
    let shifted_entropy = knn_entropy(&shifted, &cfg).unwrap().value;
    assert_abs_diff_eq!(shifted_entropy, base, epsilon = 1e-12);
}

#[test]
fn translation_of_pseudo_observations_is_exact() {
    // on the rank grid, shifting by a whole grid step keeps distances bit-identical
    let m = random_matrix(256, 2, 7);
    let u = empirical_copula_transform(&m).into_matrix();
    let cfg = EstimatorConfig::default();
    let shifted = u
        .map_column(0, |v| v + 1.0)
        .unwrap()
        .map_column(1, |v| v + 2.0)
        .unwrap();
    assert_eq!(
        knn_entropy(&u, &cfg).unwrap().value.to_bits(),
        knn_entropy(&shifted, &cfg).unwrap().value.to_bits()
    );
}

fn column_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-50.0f64..50.0, 1..60)
}

proptest! {
    #[test]
    fn ranks_are_invariant_under_increasing_maps(col in column_strategy()) {
        let m = Matrix::from_column(&col).unwrap();
        let base = empirical_copula_transform(&m);
        for f in [
            (|v: f64| v.exp()) as fn(f64) -> f64,
            |v| v * v * v,
            |v| 3.5 * v + 7.0,
        ] {
            let g = m.map_column(0, f).unwrap();
            // increasing maps can merge distinct floats; skip those inputs
            let merged = {
                let mut a: Vec<f64> = col.clone(); a.sort_by(f64::total_cmp); a.dedup();
                let mut b: Vec<f64> = g.column(0); b.sort_by(f64::total_cmp); b.dedup();
                a.len() != b.len()
            };
            if !merged {
                prop_assert_eq!(&empirical_copula_transform(&g), &base);
            }
        }
    }

    #[test]
    fn ranks_are_permutation_equivariant(col in column_strategy(), seed in 0u64..1000) {
        let m = Matrix::from_column(&col).unwrap();
        let order = permutation(col.len(), seed);
        let lhs = empirical_copula_transform(&m.permute_rows(&order).unwrap());
        let rhs = empirical_copula_transform(&m).into_matrix().permute_rows(&order).unwrap();
        prop_assert_eq!(lhs.as_matrix(), &rhs);
    }

    #[test]
    fn ranks_lie_on_grid(col in column_strategy()) {
        let n = col.len() as f64;
        let u = empirical_copula_transform(&Matrix::from_column(&col).unwrap()).into_matrix();
        prop_assert!(u.as_slice().iter().all(|&v| v > 0.0 && v <= 1.0));
        prop_assert!(u.as_slice().contains(&1.0));
        prop_assert!(u.as_slice().iter().all(|&v| (v * n - (v * n).round()).abs() < 1e-9));
    }

    #[test]
    fn tie_free_columns_are_permutations(seed in 0u64..500, n in 1usize..80) {
        let u = empirical_copula_transform(&Matrix::from_column(&uniform(n, seed)).unwrap()).into_matrix();
        let mut ranks: Vec<usize> = u.as_slice().iter().map(|v| (v * n as f64).round() as usize).collect();
        ranks.sort_unstable();
        prop_assert_eq!(ranks, (1..=n).collect::<Vec<_>>());
    }
}
