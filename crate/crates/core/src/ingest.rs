//! CSV ingestion: dated multi-column datasets (the Tetouan power profile or
//! any remapped schema) and simulated trajectories.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use chrono::{NaiveDate, NaiveDateTime, TimeDelta, Timelike};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scan::{scan_lags, Direction, LagScanConfig, TeCurve};
use crate::series::TimeSeries;
use crate::sim::Trajectory;

/// Datetime layouts tried, in order, on the first data row.
const DATETIME_FORMATS: &[&str] = &[
    "%m/%d/%Y %H:%M",
    "%m/%d/%Y %H:%M:%S",
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%dT%H:%M",
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m-%d %H:%M",
];

/// Maps dataset roles to CSV column names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetSchema {
    pub datetime: String,
    pub factors: Vec<String>,
    pub targets: Vec<String>,
}

impl DatasetSchema {
    /// Column names of the UCI Tetouan City power consumption file.
    pub fn tetouan() -> Self {
        Self {
            datetime: "DateTime".into(),
            factors: vec![
                "Temperature".into(),
                "Humidity".into(),
                "Wind Speed".into(),
                "general diffuse flows".into(),
                "diffuse flows".into(),
            ],
            targets: vec![
                "Zone 1 Power Consumption".into(),
                "Zone 2  Power Consumption".into(),
                "Zone 3  Power Consumption".into(),
            ],
        }
    }

    /// Parses a TOML document with `datetime`, `factors` and `targets` keys.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let schema: Self = toml::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        if schema.factors.is_empty() || schema.targets.is_empty() {
            return Err(Error::Schema(
                "schema needs at least one factor and one target".into(),
            ));
        }
        Ok(schema)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("schema serializes")
    }
}

/// Inclusive range of calendar days.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DateWindow {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl DateWindow {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self> {
        if end < start {
            return Err(Error::Config(format!(
                "window end {end} precedes start {start}"
            )));
        }
        Ok(Self { start, end })
    }

    pub fn contains(&self, t: &NaiveDateTime) -> bool {
        let day = t.date();
        day >= self.start && day <= self.end
    }

    pub fn days(&self) -> i64 {
        (self.end - self.start).num_days() + 1
    }
}

impl std::str::FromStr for DateWindow {
    type Err = Error;

    /// `YYYY-MM-DD..YYYY-MM-DD`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| Error::Config(format!("window `{s}` is not START..END")))?;
        let day = |v: &str| {
            NaiveDate::parse_from_str(v.trim(), "%Y-%m-%d")
                .map_err(|e| Error::Config(format!("bad window date `{v}`: {e}")))
        };
        Self::new(day(a)?, day(b)?)
    }
}

impl std::fmt::Display for DateWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestOptions {
    /// Repeat the previous row across sampling gaps instead of failing.
    pub forward_fill: bool,
    /// Average samples within each clock hour.
    pub hourly_mean: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedSeries {
    pub name: String,
    pub series: TimeSeries<f64>,
}

/// Series selected from one file, all on the same time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub factors: Vec<NamedSeries>,
    pub targets: Vec<NamedSeries>,
    pub sample_interval: TimeDelta,
    pub start: NaiveDateTime,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.factors.first().map_or(0, |s| s.series.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn normalize(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

fn column_index(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    let want = normalize(name);
    headers
        .iter()
        .position(|h| normalize(h) == want)
        .ok_or_else(|| Error::MissingColumn(name.to_string()))
}

fn parse_value(raw: &str, row: usize, col: usize) -> Result<f64> {
    let v: f64 = raw.trim().parse().map_err(|_| {
        Error::InvalidInput(format!(
            "non-numeric value `{raw}` at data row {row}, column {col}"
        ))
    })?;
    if !v.is_finite() {
        return Err(Error::NonFinite { row, col });
    }
    Ok(v)
}

fn detect_format(value: &str, row: usize) -> Result<&'static str> {
    DATETIME_FORMATS
        .iter()
        .copied()
        .find(|f| NaiveDateTime::parse_from_str(value.trim(), f).is_ok())
        .ok_or_else(|| Error::Datetime {
            value: value.to_string(),
            row,
        })
}

/// Reads the schema's columns from a dated CSV, keeping rows whose calendar
/// day falls in `window`.
///
/// Sampling must be uniform inside the window; gaps fail unless
/// `opts.forward_fill` is set.
pub fn load_csv(
    path: &Path,
    schema: &DatasetSchema,
    window: &DateWindow,
    opts: &IngestOptions,
) -> Result<Dataset> {
    load_csv_from_reader(open(path)?, schema, window, opts)
}

pub fn load_csv_from_reader<R: Read>(
    reader: R,
    schema: &DatasetSchema,
    window: &DateWindow,
    opts: &IngestOptions,
) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let dt_col = column_index(&headers, &schema.datetime)?;
    let value_cols: Vec<usize> = schema
        .factors
        .iter()
        .chain(&schema.targets)
        .map(|n| column_index(&headers, n))
        .collect::<Result<_>>()?;

    let mut format = None;
    let mut stamps: Vec<NaiveDateTime> = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        let raw = record.get(dt_col).unwrap_or("");
        let fmt = match format {
            Some(f) => f,
            None => *format.insert(detect_format(raw, row)?),
        };
        let stamp = NaiveDateTime::parse_from_str(raw, fmt).map_err(|_| Error::Datetime {
            value: raw.to_string(),
            row,
        })?;
        if !window.contains(&stamp) {
            continue;
        }
        let values = value_cols
            .iter()
            .map(|&c| parse_value(record.get(c).unwrap_or(""), row, c))
            .collect::<Result<Vec<_>>>()?;
        stamps.push(stamp);
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(Error::EmptyWindow(window.to_string()));
    }
    if rows.len() < 2 {
        return Err(Error::InvalidInput(
            "window holds a single row; cannot infer the sample interval".into(),
        ));
    }

    let interval = stamps[1] - stamps[0];
    if interval <= TimeDelta::zero() {
        return Err(Error::InvalidInput(format!(
            "timestamps not increasing at {}",
            stamps[1]
        )));
    }
    let (mut stamps, mut rows) = regularize(stamps, rows, interval, opts.forward_fill)?;
    let mut interval = interval;
    if opts.hourly_mean {
        (stamps, rows) = hourly_mean(&stamps, &rows, interval)?;
        interval = TimeDelta::hours(1);
    }

    let start = stamps[0];
    let column = |j: usize, name: &str| NamedSeries {
        name: name.to_string(),
        series: TimeSeries {
            values: rows.iter().map(|r| r[j]).collect(),
            sample_interval: interval,
            start: Some(start),
        },
    };
    let nf = schema.factors.len();
    Ok(Dataset {
        factors: schema
            .factors
            .iter()
            .enumerate()
            .map(|(j, n)| column(j, n))
            .collect(),
        targets: schema
            .targets
            .iter()
            .enumerate()
            .map(|(j, n)| column(nf + j, n))
            .collect(),
        sample_interval: interval,
        start,
    })
}

fn regularize(
    stamps: Vec<NaiveDateTime>,
    rows: Vec<Vec<f64>>,
    interval: TimeDelta,
    forward_fill: bool,
) -> Result<(Vec<NaiveDateTime>, Vec<Vec<f64>>)> {
    let mut out_stamps: Vec<NaiveDateTime> = Vec::with_capacity(stamps.len());
    let mut out_rows: Vec<Vec<f64>> = Vec::with_capacity(rows.len());
    for (stamp, row) in stamps.into_iter().zip(rows) {
        if let Some(&prev) = out_stamps.last() {
            let step = stamp - prev;
            if step != interval {
                let gap = || Error::Gap {
                    before: prev.to_string(),
                    after: stamp.to_string(),
                };
                let whole =
                    step > interval && step.num_milliseconds() % interval.num_milliseconds() == 0;
                if !(forward_fill && whole) {
                    return Err(gap());
                }
                let fill = out_rows.last().cloned().expect("previous row exists");
                let mut t = prev + interval;
                while t < stamp {
                    out_stamps.push(t);
                    out_rows.push(fill.clone());
                    t += interval;
                }
            }
        }
        out_stamps.push(stamp);
        out_rows.push(row);
    }
    Ok((out_stamps, out_rows))
}

fn hourly_mean(
    stamps: &[NaiveDateTime],
    rows: &[Vec<f64>],
    interval: TimeDelta,
) -> Result<(Vec<NaiveDateTime>, Vec<Vec<f64>>)> {
    samples_per_hour(interval)?;
    let mut out_stamps: Vec<NaiveDateTime> = Vec::new();
    let mut out_rows: Vec<Vec<f64>> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for (stamp, row) in stamps.iter().zip(rows) {
        let hour = stamp
            .date()
            .and_hms_opt(stamp.hour(), 0, 0)
            .expect("valid hour");
        if out_stamps.last() != Some(&hour) {
            out_stamps.push(hour);
            out_rows.push(vec![0.0; row.len()]);
            counts.push(0);
        }
        let acc = out_rows.last_mut().expect("bucket exists");
        for (a, v) in acc.iter_mut().zip(row) {
            *a += v;
        }
        *counts.last_mut().expect("bucket exists") += 1;
    }
    for (acc, n) in out_rows.iter_mut().zip(counts) {
        for a in acc.iter_mut() {
            *a /= n as f64;
        }
    }
    Ok((out_stamps, out_rows))
}

fn samples_per_hour(interval: TimeDelta) -> Result<usize> {
    let ms = interval.num_milliseconds();
    let hour = TimeDelta::hours(1).num_milliseconds();
    if ms <= 0 || ms > hour || hour % ms != 0 {
        return Err(Error::Config(format!(
            "sample interval of {}s does not divide one hour",
            interval.num_seconds()
        )));
    }
    Ok((hour / ms) as usize)
}

/// Hourly lags `hmin..=hmax` expressed in samples of `interval`.
pub fn lag_grid_hours(hmin: usize, hmax: usize, interval: TimeDelta) -> Result<Vec<usize>> {
    let per_hour = samples_per_hour(interval)?;
    if hmin == 0 || hmin > hmax {
        return Err(Error::Config(format!(
            "hour range must satisfy 1 <= min <= max, got {hmin}..{hmax}"
        )));
    }
    Ok((hmin..=hmax).map(|h| h * per_hour).collect())
}

/// Scan configuration over hourly lags `hmin..=hmax` on data sampled every
/// `interval`, keeping the other settings of `base`.
pub fn hourly_scan_config(
    hmin: usize,
    hmax: usize,
    interval: TimeDelta,
    base: &LagScanConfig,
) -> Result<LagScanConfig> {
    let lags = lag_grid_hours(hmin, hmax, interval)?;
    Ok(LagScanConfig {
        lag_min: lags[0],
        lag_max: *lags.last().expect("non-empty grid"),
        lag_step: samples_per_hour(interval)?,
        direction: Direction::XToY,
        ..base.clone()
    })
}

/// One transfer-entropy curve per (factor, target) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveMatrix {
    pub factors: Vec<String>,
    pub targets: Vec<String>,
    /// `curves[i][j]` runs from factor `i` to target `j`.
    pub curves: Vec<Vec<TeCurve<f64>>>,
}

impl CurveMatrix {
    pub fn get(&self, factor: usize, target: usize) -> &TeCurve<f64> {
        &self.curves[factor][target]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, &TeCurve<f64>)> {
        self.factors
            .iter()
            .zip(&self.curves)
            .flat_map(move |(f, row)| {
                self.targets
                    .iter()
                    .zip(row)
                    .map(move |(t, c)| (f.as_str(), t.as_str(), c))
            })
    }
}

/// Transfer entropy curves from every factor to every target.
pub fn pairwise_scan_matrix(
    factors: &[NamedSeries],
    targets: &[NamedSeries],
    cfg: &LagScanConfig,
) -> Result<CurveMatrix> {
    let interval = factors.first().map(|s| s.series.sample_interval);
    let len = factors.first().map(|s| s.series.len());
    for s in factors.iter().chain(targets) {
        if Some(s.series.sample_interval) != interval || Some(s.series.len()) != len {
            return Err(Error::InvalidInput(format!(
                "series `{}` does not share the length and interval of the others",
                s.name
            )));
        }
    }
    let cfg = LagScanConfig {
        direction: Direction::XToY,
        ..cfg.clone()
    };
    let pairs: Vec<(usize, usize)> = (0..factors.len())
        .flat_map(|i| (0..targets.len()).map(move |j| (i, j)))
        .collect();
    let one = |&(i, j): &(usize, usize)| -> Result<TeCurve<f64>> {
        let (f, t) = (&factors[i], &targets[j]);
        scan_lags(&f.series.values, &t.series.values, &cfg).map_err(|e| Error::AtPair {
            factor: f.name.clone(),
            target: t.name.clone(),
            source: Box::new(e),
        })
    };
    let flat: Vec<TeCurve<f64>> = if cfg.parallel {
        pairs.par_iter().map(one).collect::<Result<_>>()?
    } else {
        pairs.iter().map(one).collect::<Result<_>>()?
    };
    let mut flat = flat.into_iter();
    let curves = (0..factors.len())
        .map(|_| flat.by_ref().take(targets.len()).collect())
        .collect();
    Ok(CurveMatrix {
        factors: factors.iter().map(|s| s.name.clone()).collect(),
        targets: targets.iter().map(|s| s.name.clone()).collect(),
        curves,
    })
}

/// Writes `index,x,y` (or `index,x` for state-only systems).
pub fn write_trajectory_csv<W: Write>(out: W, trajectory: &Trajectory<f64>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let x = &trajectory.state.values;
    match &trajectory.output {
        Some(y) => {
            w.write_record(["index", "x", "y"])?;
            for (t, (a, b)) in x.iter().zip(&y.values).enumerate() {
                w.write_record([t.to_string(), a.to_string(), b.to_string()])?;
            }
        }
        None => {
            w.write_record(["index", "x"])?;
            for (t, a) in x.iter().enumerate() {
                w.write_record([t.to_string(), a.to_string()])?;
            }
        }
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

/// Reads the named numeric columns of a CSV.
pub fn read_columns(path: &Path, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    read_columns_from_reader(open(path)?, names)
}

pub fn read_columns_from_reader<R: Read>(reader: R, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let idx: Vec<usize> = names
        .iter()
        .map(|n| column_index(&headers, n))
        .collect::<Result<_>>()?;
    let mut cols = vec![Vec::new(); idx.len()];
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        for (col, &c) in cols.iter_mut().zip(&idx) {
            col.push(parse_value(record.get(c).unwrap_or(""), row, c)?);
        }
    }
    Ok(cols)
}

/// Reads a trajectory file written by [`write_trajectory_csv`].
pub fn read_trajectory_csv(path: &Path) -> Result<(TimeSeries<f64>, Option<TimeSeries<f64>>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(open(path)?);
    let has_y = rdr.headers()?.iter().any(|h| h == "y");
    let names: &[&str] = if has_y { &["x", "y"] } else { &["x"] };
    let mut cols = read_columns(path, names)?.into_iter();
    let x = TimeSeries::from_values(cols.next().expect("x column"));
    Ok((x, cols.next().map(TimeSeries::from_values)))
}
