mod common;

use timelag_core::{
    identify_lag, scan_both, scan_lags, self_scan, simulate, transfer_entropy, Direction,
    LagScanConfig, SimulatorSpec, SystemKind, TeCurve,
};

use common::gaussian;

fn trajectory(kind: SystemKind, lag: usize, seed: u64) -> (Vec<f64>, Option<Vec<f64>>) {
    let tr = simulate::<f64>(&SimulatorSpec::new(kind, lag).with_seed(seed)).unwrap();
    (tr.state.values, tr.output.map(|s| s.values))
}

fn cross_curve(kind: SystemKind, lag: usize, seed: u64, cfg: &LagScanConfig) -> TeCurve<f64> {
    let (x, y) = trajectory(kind, lag, seed);
    scan_lags(&x, &y.unwrap(), cfg).unwrap()
}

#[test]
fn system1_lag2_is_identified() {
    let curve = cross_curve(SystemKind::GaussianShift, 2, 1, &LagScanConfig::default());
    assert_eq!(curve.identified_lag, 2);
    assert_eq!(curve.entries.len(), 8);
    assert_eq!(
        curve.entries.iter().map(|e| e.0).collect::<Vec<_>>(),
        (1..=8).collect::<Vec<_>>()
    );
}

#[test]
fn system4_lag3_self_scan() {
    let (x, _) = trajectory(SystemKind::DelayedAr, 3, 2);
    assert_eq!(
        self_scan(&x, &LagScanConfig::default())
            .unwrap()
            .identified_lag,
        3
    );
}

#[test]
fn system4_boundary_lags_self_scan() {
    for lag in [1, 4] {
        let (x, _) = trajectory(SystemKind::DelayedAr, lag, 3);
        assert_eq!(
            self_scan(&x, &LagScanConfig::default())
                .unwrap()
                .identified_lag,
            lag
        );
    }
}

#[test]
fn white_noise_self_scan_is_flat() {
    // The argmax of a pure-noise curve lands on an arbitrary lag, so only
    // the level of the curve is checked, averaged over seeds.
    let cfg = LagScanConfig::default();
    let curves: Vec<TeCurve<f64>> = (0..10)
        .map(|s| self_scan(&gaussian(2000, 500 + s), &cfg).unwrap())
        .collect();
    for j in 0..8 {
        let mean = curves.iter().map(|c| c.entries[j].1).sum::<f64>() / 10.0;
        assert!(mean.abs() <= 0.05, "lag {}: {mean}", j + 1);
    }
    let mean_max = curves.iter().map(|c| c.max_te).sum::<f64>() / 10.0;
    assert!(mean_max <= 0.05, "{mean_max}");
}

#[test]
fn constant_curve_picks_smallest_lag() {
    let entries: Vec<(usize, f64)> = (3..=7).map(|l| (l, 0.25)).collect();
    assert_eq!(identify_lag(&entries).unwrap(), (3, 0.25));
}

#[test]
fn scan_equals_individual_estimates() {
    let (x, y) = trajectory(SystemKind::WienerShift, 2, 5);
    let y = y.unwrap();
    let cfg = LagScanConfig::default();
    let curve = scan_lags(&x, &y, &cfg).unwrap();
    for &(lag, te) in &curve.entries {
        let single = transfer_entropy(&x, &y, lag, 1, &cfg.estimator)
            .unwrap()
            .value;
        assert_eq!(te.to_bits(), single.to_bits(), "lag {lag}");
    }
}

#[test]
fn parallel_scan_equals_sequential() {
    let (x, y) = trajectory(SystemKind::SineShift, 3, 6);
    let y = y.unwrap();
    let cfg = LagScanConfig::default();
    assert_eq!(
        scan_lags(&x, &y, &cfg).unwrap(),
        scan_lags(&x, &y, &cfg.clone().sequential()).unwrap()
    );
    let (s, _) = trajectory(SystemKind::DelayedAr, 2, 6);
    assert_eq!(
        self_scan(&s, &cfg).unwrap(),
        self_scan(&s, &cfg.sequential()).unwrap()
    );
}

#[test]
fn increasing_transforms_leave_curve_unchanged() {
    let (x, y) = trajectory(SystemKind::GaussianShift, 4, 7);
    let y = y.unwrap();
    let cfg = LagScanConfig::default();
    let base = scan_lags(&x, &y, &cfg).unwrap();
    let xt: Vec<f64> = x.iter().map(|v| v.atan()).collect();
    let yt: Vec<f64> = y.iter().map(|v| (v * 5.0).exp() - 3.0).collect();
    assert_eq!(scan_lags(&xt, &yt, &cfg).unwrap(), base);
}

#[test]
fn curve_length_matches_range() {
    let (x, y) = trajectory(SystemKind::GaussianShift, 1, 8);
    let y = y.unwrap();
    for (lo, hi) in [(1, 1), (2, 5), (1, 12)] {
        let cfg = LagScanConfig::default().with_lags(lo, hi);
        assert_eq!(scan_lags(&x, &y, &cfg).unwrap().entries.len(), hi - lo + 1);
    }
}

#[test]
fn reverse_direction() {
    let (x, y) = trajectory(SystemKind::GaussianShift, 2, 9);
    let y = y.unwrap();
    let cfg = LagScanConfig::default();
    let (fwd, bwd) = scan_both(&x, &y, &cfg).unwrap();
    assert_eq!(
        bwd,
        scan_lags(&y, &x, &cfg)
            .unwrap()
            .tap_direction(Direction::YToX)
    );
    assert_eq!(bwd.direction, Direction::YToX);
    assert!(fwd.max_te > bwd.max_te);
}

trait TapDirection {
    fn tap_direction(self, d: Direction) -> Self;
}

impl TapDirection for TeCurve<f64> {
    fn tap_direction(mut self, d: Direction) -> Self {
        self.direction = d;
        self
    }
}

#[test]
fn per_lag_errors_name_the_lag() {
    let x = gaussian(40, 10);
    let y = vec![1.0; 40];
    let err = scan_lags(&x, &y, &LagScanConfig::default()).unwrap_err();
    assert!(matches!(err, timelag_core::Error::AtLag { .. }), "{err}");
    assert!(err.is_degenerate());
}
