use serde_json::json;
use timelag_core::ingest::{hourly_scan_config, read_columns, write_trajectory_csv};
use timelag_core::repro::{repro_cases, repro_scan_config, run_case, ReproOutcome, REPRO_LAGS};
use timelag_core::{
    load_csv, pairwise_scan_matrix, scan_both, scan_lags, self_scan, simulate, DatasetSchema,
    Direction, Error, IngestOptions, LagScanConfig, SimulatorSpec, SystemKind, TeCurve,
};

use crate::args::{ReproArgs, ScanArgs, SimulateArgs, Suite, TetouanArgs};
use crate::error::{code, CliError};
use crate::output::{
    curve_json, ensure_dir, slug, to_bits, with_suffix, write_csv, write_json, InputRecord, Run,
};

type CliResult = Result<(), CliError>;

fn unit(bits: bool) -> &'static str {
    if bits {
        "bits"
    } else {
        "nats"
    }
}

fn shown(nats: f64, bits: bool) -> f64 {
    if bits {
        to_bits(nats)
    } else {
        nats
    }
}

fn print_curve(label: &str, curve: &TeCurve<f64>, bits: bool) {
    println!("{label}");
    println!("{:>6}  {:>12}", "lag", format!("te_{}", unit(bits)));
    for &(lag, te) in &curve.entries {
        let mark = if lag == curve.identified_lag {
            "  *"
        } else {
            ""
        };
        println!("{lag:>6}  {:>12.6}{mark}", shown(te, bits));
    }
    println!(
        "identified lag {} (te = {:.6} {})",
        curve.identified_lag,
        shown(curve.max_te, bits),
        unit(bits)
    );
}

pub fn simulate_cmd(a: &SimulateArgs, run: &Run) -> CliResult {
    let system = SystemKind::from_number(a.system).expect("clap restricts the range");
    let mut spec = SimulatorSpec::new(system, a.lag).with_seed(a.seed);
    if let Some(v) = a.length {
        spec.length = v;
    }
    let overrides = [
        (&mut spec.mu1, a.mu1),
        (&mut spec.mu2, a.mu2),
        (&mut spec.delta1, a.delta1),
        (&mut spec.delta2, a.delta2),
        (&mut spec.alpha, a.alpha),
        (&mut spec.beta, a.beta),
    ];
    for (field, value) in overrides {
        if let Some(v) = value {
            *field = v;
        }
    }
    let tr = simulate::<f64>(&spec)?;
    // the simulator logs its own warnings; they are also kept in the manifest
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        ensure_dir(dir)?;
    }
    let file = std::fs::File::create(&a.out).map_err(|e| CliError::io(&a.out, e))?;
    write_trajectory_csv(std::io::BufWriter::new(file), &tr)?;
    let config = json!({
        "spec": spec,
        "samples": tr.state.len(),
        "true_lag": tr.true_lag,
        "warnings": tr.warnings,
    });
    write_json(
        &with_suffix(&a.out, ".manifest.json"),
        &run.manifest(config, Vec::new()),
    )?;
    println!(
        "system {} lag {} seed {}: {} samples -> {}",
        system.number(),
        spec.lag,
        spec.seed,
        tr.state.len(),
        a.out.display()
    );
    Ok(())
}

enum ScanInput {
    Cross {
        x: Vec<f64>,
        y: Vec<f64>,
        y_col: String,
    },
    SelfOnly {
        x: Vec<f64>,
    },
}

fn read_scan_input(a: &ScanArgs) -> Result<ScanInput, CliError> {
    let x_only = || -> Result<ScanInput, CliError> {
        let mut cols = read_columns(&a.input, &[&a.x_col])?;
        Ok(ScanInput::SelfOnly { x: cols.remove(0) })
    };
    if a.self_scan {
        return x_only();
    }
    let y_col = a.y_col.clone().unwrap_or_else(|| "y".into());
    match read_columns(&a.input, &[&a.x_col, &y_col]) {
        Ok(mut cols) => {
            let y = cols.pop().expect("two columns");
            let x = cols.pop().expect("two columns");
            Ok(ScanInput::Cross { x, y, y_col })
        }
        // no target column and none was asked for: scan the source against itself
        Err(Error::MissingColumn(name)) if a.y_col.is_none() && name == y_col => {
            log::info!(
                "no `{y_col}` column in {}; running a self scan",
                a.input.display()
            );
            x_only()
        }
        Err(e) => Err(e.into()),
    }
}

pub fn scan_cmd(a: &ScanArgs, run: &Run) -> CliResult {
    let direction: Direction = if a.reverse {
        Direction::YToX
    } else {
        a.direction.into()
    };
    let cfg = LagScanConfig {
        lag_min: a.lags.0,
        lag_max: a.lags.1,
        history_order: a.estimator.history_order,
        estimator: a.estimator.config(),
        direction,
        ..LagScanConfig::default()
    };
    let input = read_scan_input(a)?;
    let (mode, curves) = match &input {
        ScanInput::SelfOnly { x } => {
            if direction != Direction::XToY {
                return Err(CliError::new(
                    code::USAGE,
                    "a self scan has no direction to choose",
                ));
            }
            ("self", vec![self_scan(x, &cfg)?])
        }
        ScanInput::Cross { x, y, .. } => match direction {
            Direction::Both => {
                let (f, b) = scan_both(x, y, &cfg)?;
                ("cross", vec![f, b])
            }
            _ => ("cross", vec![scan_lags(x, y, &cfg)?]),
        },
    };

    let columns = match &input {
        ScanInput::Cross { y_col, .. } => json!({ "x": a.x_col, "y": y_col }),
        ScanInput::SelfOnly { .. } => json!({ "x": a.x_col }),
    };
    for c in &curves {
        let label = match (mode, c.direction) {
            ("self", _) => format!("self transfer entropy of `{}`", a.x_col),
            (_, Direction::YToX) => "transfer entropy y -> x".to_string(),
            _ => "transfer entropy x -> y".to_string(),
        };
        print_curve(&label, c, a.bits);
    }

    if let Some(prefix) = &a.out {
        if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
            ensure_dir(dir)?;
        }
        let header: Vec<String> = match curves.len() {
            1 => vec!["lag".into(), "te_nats".into()],
            _ => vec![
                "lag".into(),
                "te_x_to_y_nats".into(),
                "te_y_to_x_nats".into(),
            ],
        };
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows = curves[0].entries.iter().enumerate().map(|(i, &(lag, _))| {
            std::iter::once(lag.to_string())
                .chain(curves.iter().map(move |c| c.entries[i].1.to_string()))
                .collect::<Vec<_>>()
        });
        write_csv(&with_suffix(prefix, ".csv"), &header, rows)?;
        let config = json!({ "mode": mode, "columns": columns, "scan": cfg });
        let doc = json!({
            "manifest": run.manifest(config, vec![InputRecord::hash(&a.input)?]),
            "curves": curves.iter().map(curve_json).collect::<Vec<_>>(),
        });
        write_json(&with_suffix(prefix, ".json"), &doc)?;
    }
    Ok(())
}

pub fn tetouan_cmd(a: &TetouanArgs, run: &Run) -> CliResult {
    let schema = match &a.schema {
        Some(p) => DatasetSchema::load(p)?,
        None => DatasetSchema::tetouan(),
    };
    let opts = IngestOptions {
        forward_fill: a.forward_fill,
        hourly_mean: a.hourly_mean,
    };
    let data = load_csv(&a.csv, &schema, &a.window, &opts)?;
    let base = LagScanConfig {
        history_order: a.estimator.history_order,
        estimator: a.estimator.config(),
        ..LagScanConfig::default()
    };
    let cfg = hourly_scan_config(a.lag_hours.0, a.lag_hours.1, data.sample_interval, &base)?;
    let per_hour = cfg.lag_step;
    log::info!(
        "{} samples every {} s from {}; lags {}..{} samples",
        data.len(),
        data.sample_interval.num_seconds(),
        data.start,
        cfg.lag_min,
        cfg.lag_max
    );
    let matrix = pairwise_scan_matrix(&data.factors, &data.targets, &cfg)?;

    ensure_dir(&a.out_dir)?;
    let mut summary = Vec::new();
    for (factor, target, curve) in matrix.iter() {
        let name = format!("curve__{}__{}.csv", slug(factor), slug(target));
        let rows = curve
            .entries
            .iter()
            .map(|&(lag, te)| vec![(lag / per_hour).to_string(), te.to_string()]);
        write_csv(&a.out_dir.join(name), &["lag_hours", "te_nats"], rows)?;
        let hours = curve.identified_lag / per_hour;
        println!(
            "{factor:<24} -> {target:<28} lag {hours:>2} h  te {:.6} {}",
            shown(curve.max_te, a.bits),
            unit(a.bits)
        );
        summary.push(vec![
            factor.to_string(),
            target.to_string(),
            hours.to_string(),
            curve.max_te.to_string(),
        ]);
    }
    write_csv(
        &a.out_dir.join("summary.csv"),
        &["factor", "network", "identified_lag_hours", "max_te_nats"],
        summary,
    )?;
    let config = json!({
        "schema": schema,
        "window": a.window.to_string(),
        "lag_hours": [a.lag_hours.0, a.lag_hours.1],
        "ingest": opts,
        "samples": data.len(),
        "sample_interval_seconds": data.sample_interval.num_seconds(),
        "scan": cfg,
    });
    write_json(
        &a.out_dir.join("manifest.json"),
        &run.manifest(config, vec![InputRecord::hash(&a.csv)?]),
    )
}

fn suite_systems(s: Suite) -> Vec<SystemKind> {
    match s {
        Suite::Sim1 => vec![SystemKind::GaussianShift],
        Suite::Sim2 => vec![SystemKind::SineShift],
        Suite::Sim3 => vec![SystemKind::WienerShift],
        Suite::Sim4 => vec![SystemKind::DelayedAr],
        Suite::All => SystemKind::ALL.to_vec(),
    }
}

pub fn repro_cmd(a: &ReproArgs, run: &Run) -> CliResult {
    let cfg = repro_scan_config();
    let mut outcomes: Vec<ReproOutcome> = Vec::new();
    for system in suite_systems(a.suite) {
        for case in repro_cases(system) {
            let out = run_case(&case, &cfg)?;
            println!(
                "{} sim{} lag={} seed={} identified={} te={:.6} {}",
                if out.correct() { "PASS" } else { "FAIL" },
                system.number(),
                case.lag,
                case.seed,
                out.curve.identified_lag,
                shown(out.curve.max_te, a.bits),
                unit(a.bits)
            );
            outcomes.push(out);
        }
    }
    let passed = outcomes.iter().filter(|o| o.correct()).count();
    println!("{passed}/{} cases identified the true lag", outcomes.len());

    if let Some(dir) = &a.out_dir {
        ensure_dir(dir)?;
        for system in suite_systems(a.suite) {
            let cases: Vec<&ReproOutcome> = outcomes
                .iter()
                .filter(|o| o.case.system == system)
                .collect();
            let header: Vec<String> = std::iter::once("lag".to_string())
                .chain(REPRO_LAGS.iter().map(|l| format!("te_l{l}")))
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows = cfg.lags().into_iter().map(|lag| {
                std::iter::once(lag.to_string())
                    .chain(
                        cases
                            .iter()
                            .map(move |o| o.curve.te_at(lag).expect("scanned lag").to_string()),
                    )
                    .collect::<Vec<_>>()
            });
            write_csv(
                &dir.join(format!("sim{}.csv", system.number())),
                &header,
                rows,
            )?;
        }
        let rows = outcomes.iter().map(|o| {
            vec![
                format!("sim{}", o.case.system.number()),
                o.case.lag.to_string(),
                o.case.seed.to_string(),
                o.curve.identified_lag.to_string(),
                o.curve.max_te.to_string(),
                o.correct().to_string(),
            ]
        });
        write_csv(
            &dir.join("summary.csv"),
            &[
                "system",
                "true_lag",
                "seed",
                "identified_lag",
                "max_te_nats",
                "correct",
            ],
            rows,
        )?;
        let config = json!({ "suite": format!("{:?}", a.suite).to_lowercase(), "scan": cfg });
        write_json(
            &dir.join("manifest.json"),
            &run.manifest(config, Vec::new()),
        )?;
    }
    if passed == outcomes.len() {
        Ok(())
    } else {
        Err(CliError::new(
            code::FAILURE,
            format!(
                "{} of {} cases missed the true lag",
                outcomes.len() - passed,
                outcomes.len()
            ),
        ))
    }
}
