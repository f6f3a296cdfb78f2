#![allow(dead_code)]

use std::fmt::Write as _;

use chrono::{NaiveDate, TimeDelta};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| StandardNormal.sample(&mut r)).collect()
}

pub fn uniform(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| r.random::<f64>()).collect()
}

/// Standard bivariate Gaussian with correlation `rho`.
pub fn bivariate_gaussian(n: usize, rho: f64, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut r = rng(seed);
    let s = (1.0 - rho * rho).sqrt();
    (0..n)
        .map(|_| {
            let a: f64 = StandardNormal.sample(&mut r);
            let b: f64 = StandardNormal.sample(&mut r);
            (a, rho * a + s * b)
        })
        .unzip()
}

pub fn shuffled<T: Clone>(v: &[T], seed: u64) -> Vec<T> {
    let mut out = v.to_vec();
    out.shuffle(&mut rng(seed));
    out
}

pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    shuffled(&(0..n).collect::<Vec<_>>(), seed)
}

pub const TETOUAN_HEADER: &str =
    "DateTime,Temperature,Humidity,Wind Speed,general diffuse flows,diffuse flows,\
Zone 1 Power Consumption,Zone 2  Power Consumption,Zone 3  Power Consumption";

/// Synthetic 10-minute data in the UCI Tetouan layout for `days` days from
/// `first`. Weather follows a daily cycle and each zone's load responds to
/// temperature and solar flow a few hours later.
pub fn synthetic_tetouan_csv(first: NaiveDate, days: usize, seed: u64) -> String {
    let mut r = rng(seed);
    let n = days * 144;
    let mut noise = |sd: f64| -> f64 {
        let z: f64 = StandardNormal.sample(&mut r);
        sd * z
    };
    let hour = |i: usize| (i % 144) as f64 / 6.0;
    let day_cycle = |h: f64| (2.0 * std::f64::consts::PI * (h - 9.0) / 24.0).sin();
    let mut temp = Vec::with_capacity(n);
    let mut flow = Vec::with_capacity(n);
    let mut wind = 0.5;
    let mut rows = String::from(TETOUAN_HEADER);
    rows.push('\n');
    let start = first.and_hms_opt(0, 0, 0).unwrap();
    for i in 0..n {
        let h = hour(i);
        temp.push(18.0 + 5.0 * day_cycle(h) + noise(0.4));
        flow.push(
            (400.0 * (std::f64::consts::PI * (h - 6.0) / 12.0).sin()).max(0.0) + noise(5.0).abs(),
        );
        wind = (0.9 * wind + noise(0.2)).abs();
        let humidity = 70.0 - 15.0 * day_cycle(h) + noise(2.0);
        let diffuse = 0.4 * flow[i] + noise(3.0).abs();
        let back = |d: usize| i.saturating_sub(d);
        let lagged_t = temp[back(24)];
        let lagged_f = flow[back(24)];
        let z1 = 30000.0 + 900.0 * lagged_t + 8.0 * lagged_f + noise(400.0);
        let z2 = 20000.0 + 700.0 * lagged_t + 6.0 * lagged_f + noise(300.0);
        let z3 = 15000.0 + 500.0 * lagged_t + 5.0 * lagged_f + noise(300.0);
        let stamp = start + TimeDelta::minutes(10 * i as i64);
        writeln!(
            rows,
            "{},{:.3},{:.2},{:.3},{:.3},{:.3},{:.5},{:.5},{:.5}",
            stamp.format("%-m/%-d/%Y %-H:%M"),
            temp[i],
            humidity,
            0.05 + wind,
            flow[i],
            diffuse,
            z1,
            z2,
            z3
        )
        .unwrap();
    }
    rows
}
