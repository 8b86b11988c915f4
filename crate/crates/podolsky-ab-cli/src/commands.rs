//! Implementations of the four subcommands.

use crate::config::FileConfig;
use crate::output::{emit, Cell, OutputFormat, Table};
use crate::{
    CliError, Level, Method, PhaseArgs, ProfileArgs, Quantity, Scenario, SweepArgs, VerifyArgs,
};
use podolsky_ab::electric::{
    self, BeamPairGeometry, FieldMethod, PhiGauge, PotentialMethod, TubeConfig, PHI_ZETA_MAX,
};
use podolsky_ab::magnetic::{self, PodolskyScale, RadialPoint, SolenoidConfig};
use podolsky_ab::verify::{self, VerifyLevel};
use std::process::ExitCode;

fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Deterministic fan-out: rows are computed in index order per chunk and
/// reassembled by index, so the output is independent of scheduling.
fn parallel_rows<T: Send>(
    count: usize,
    jobs: usize,
    f: &(dyn Fn(usize) -> Result<T, CliError> + Sync),
) -> Result<Vec<T>, CliError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let jobs = jobs.clamp(1, count);
    let mut slots: Vec<Option<Result<T, CliError>>> = Vec::with_capacity(count);
    slots.resize_with(count, || None);
    let chunk = count.div_ceil(jobs);
    std::thread::scope(|sc| {
        for (t, slice) in slots.chunks_mut(chunk).enumerate() {
            let base = t * chunk;
            sc.spawn(move || {
                for (k, slot) in slice.iter_mut().enumerate() {
                    *slot = Some(f(base + k));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("row computed"))
        .collect()
}

/// Resolve the coupling from exactly one of --A or (--a-metres,
/// --R-metres), falling back to the config file.
fn resolve_scale(
    a_over_r: Option<f64>,
    a_metres: Option<f64>,
    r_metres: Option<f64>,
    cfg: &FileConfig,
) -> Result<(PodolskyScale, Option<f64>), CliError> {
    let a_over_r = match a_over_r {
        Some(v) => Some(v),
        None => cfg.get_f64("A")?,
    };
    let a_metres = match a_metres {
        Some(v) => Some(v),
        None => cfg.get_f64("a-metres")?,
    };
    let r_metres = match r_metres {
        Some(v) => Some(v),
        None => cfg.get_f64("R-metres")?,
    };
    let scale = match (a_over_r, a_metres, r_metres) {
        (Some(a), None, None) => PodolskyScale::new(a)?,
        // R alone is allowed alongside A: it only sets the SI length unit
        (Some(a), None, Some(_)) => PodolskyScale::new(a)?,
        (None, Some(am), Some(rm)) => {
            if !(am > 0.0) || !(rm > 0.0) {
                return Err(CliError::Usage(
                    "--a-metres and --R-metres must be positive".into(),
                ));
            }
            PodolskyScale::new(am / rm)?
        }
        (None, None, None) => {
            return Err(CliError::Usage(
                "specify the coupling: --A, or --a-metres with --R-metres".into(),
            ))
        }
        (None, Some(_), None) | (None, None, Some(_)) => {
            return Err(CliError::Usage(
                "--a-metres and --R-metres must be given together".into(),
            ))
        }
        (Some(_), Some(_), _) => {
            return Err(CliError::Usage(
                "give exactly one of --A or the (--a-metres, --R-metres) pair".into(),
            ))
        }
    };
    if scale.exceeds_thin_limit() {
        eprintln!(
            "warning: A = {} is outside the thin-coupling regime (R >> a); \
             large-ratio and asymptotic branches are unreliable",
            scale.value()
        );
    }
    Ok((scale, r_metres))
}

fn require_scenario(flag: Option<Scenario>, cfg: &FileConfig) -> Result<Scenario, CliError> {
    match flag {
        Some(s) => Ok(s),
        None => cfg
            .parse_enum::<Scenario>("scenario")?
            .ok_or_else(|| CliError::Usage("--scenario is required (solenoid or tube)".into())),
    }
}

// ---------------------------------------------------------------------
// profile
// ---------------------------------------------------------------------

pub fn profile(args: ProfileArgs, cfg: &FileConfig) -> Result<ExitCode, CliError> {
    let scenario = require_scenario(args.scenario, cfg)?;
    let (scale, _) = resolve_scale(args.a_over_r, args.a_metres, args.r_metres, cfg)?;
    let s_min = args.s_min.or(cfg.get_f64("s-min")?).unwrap_or(0.0);
    let s_max = args.s_max.or(cfg.get_f64("s-max")?).unwrap_or(3.0);
    let s_count = args.s_count.or(cfg.get_usize("s-count")?).unwrap_or(301);
    if s_count == 0 {
        return Err(CliError::Usage(
            "--s-count must be at least 1 (empty S range)".into(),
        ));
    }
    if !(s_min >= 0.0) || s_max < s_min {
        return Err(CliError::Usage(format!(
            "S range [{s_min}, {s_max}] is empty or negative"
        )));
    }
    let quantity = match args.quantity {
        Some(q) => q,
        None => cfg
            .parse_enum::<Quantity>("quantity")?
            .unwrap_or(Quantity::Field),
    };
    let method = match args.method {
        Some(m) => m,
        None => cfg.parse_enum::<Method>("method")?.unwrap_or(Method::Auto),
    };
    let format = match args.format {
        Some(f) => f,
        None => cfg
            .parse_enum::<OutputFormat>("format")?
            .unwrap_or(OutputFormat::Csv),
    };
    let jobs = args
        .jobs
        .or(cfg.get_usize("jobs")?)
        .unwrap_or_else(default_jobs);

    if method == Method::Asymptotic
        && scenario == Scenario::Solenoid
        && s_min <= 2.0 * scale.value()
    {
        eprintln!(
            "warning: asymptotic interior branch is invalid for S <= 2A = {}; \
             values near the axis are unreliable",
            2.0 * scale.value()
        );
    }

    let sample = |i: usize| -> Result<(f64, f64, &'static str, &'static str), CliError> {
        let s = if s_count == 1 {
            s_min
        } else {
            s_min + (s_max - s_min) * i as f64 / (s_count - 1) as f64
        };
        let pt = RadialPoint::new(s)?;
        let (value, branch) = match (scenario, quantity) {
            (Scenario::Solenoid, Quantity::Field) => match method {
                Method::Auto | Method::Exact => (magnetic::b_z(pt, scale)?, "exact"),
                Method::LargeRatio => (magnetic::b_z_large_ratio(pt, scale)?, "large_ratio"),
                Method::Asymptotic => (magnetic::b_z_approx(pt, scale), "asymptotic"),
            },
            (Scenario::Solenoid, Quantity::Potential) => match method {
                Method::Auto | Method::Exact => (magnetic::a_phi(pt, scale)?, "exact"),
                Method::LargeRatio => (magnetic::a_phi_large_ratio(pt, scale)?, "large_ratio"),
                Method::Asymptotic => (magnetic::a_phi_approx(pt, scale), "asymptotic"),
            },
            (Scenario::Tube, Quantity::Field) => match method {
                Method::Auto | Method::Exact => {
                    (electric::e_r(pt, scale, FieldMethod::Exact)?, "exact")
                }
                Method::LargeRatio => (
                    electric::e_r(pt, scale, FieldMethod::LargeRatio)?,
                    "large_ratio",
                ),
                Method::Asymptotic => (
                    electric::e_r(pt, scale, FieldMethod::Asymptotic)?,
                    "asymptotic",
                ),
            },
            (Scenario::Tube, Quantity::Potential) => {
                let gauge = PhiGauge::default();
                match method {
                    Method::Exact => (electric::phi(pt, scale, gauge)?, "exact"),
                    Method::Auto => {
                        if s / scale.value() <= PHI_ZETA_MAX {
                            (electric::phi(pt, scale, gauge)?, "exact")
                        } else {
                            (electric::phi_asymptotic(pt, scale, gauge), "asymptotic")
                        }
                    }
                    Method::Asymptotic => {
                        (electric::phi_asymptotic(pt, scale, gauge), "asymptotic")
                    }
                    Method::LargeRatio => {
                        return Err(CliError::Usage(
                            "large-ratio is not defined for the tube potential; \
                             use auto, exact or asymptotic"
                                .into(),
                        ))
                    }
                }
            }
        };
        Ok((s, value, pt.region().label(), branch))
    };

    let rows = parallel_rows(s_count, jobs, &sample)?;
    let mut table = Table::new(vec!["s", "value_normalized", "region", "branch"]);
    for (s, value, region, branch) in rows {
        table.push(vec![
            Cell::Float(s),
            Cell::Float(value),
            Cell::Text(region.to_string()),
            Cell::Text(branch.to_string()),
        ]);
    }
    emit(&table, format, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// phase
// ---------------------------------------------------------------------

pub fn phase(args: PhaseArgs, cfg: &FileConfig) -> Result<ExitCode, CliError> {
    let scenario = require_scenario(args.scenario, cfg)?;
    let (scale, r_metres) = resolve_scale(args.a_over_r, args.a_metres, args.r_metres, cfg)?;
    let format = match args.format {
        Some(f) => f,
        None => cfg
            .parse_enum::<OutputFormat>("format")?
            .unwrap_or(OutputFormat::Csv),
    };
    let table = match scenario {
        Scenario::Solenoid => magnetic_phase_table(&args, cfg, scale, r_metres)?,
        Scenario::Tube => electric_phase_table(&args, cfg, scale, r_metres)?,
    };
    emit(&table, format, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn magnetic_phase_table(
    args: &PhaseArgs,
    cfg: &FileConfig,
    scale: PodolskyScale,
    r_metres: Option<f64>,
) -> Result<Table, CliError> {
    let s = args
        .s
        .or(cfg.get_f64("s")?)
        .ok_or_else(|| CliError::Usage("magnetic phase needs --s (loop radius, >= 1)".into()))?;
    let pt = RadialPoint::new(s)?;
    let (ratio, correction) = magnetic::delta_g_ratio(pt, scale)?;

    let n = args.n_per_metre.or(cfg.get_f64("n-per-metre")?);
    let current = args.current_amperes.or(cfg.get_f64("current-amperes")?);
    let charge = args.charge_coulombs.or(cfg.get_f64("charge-coulombs")?);
    let si = match (n, current, charge, r_metres) {
        (Some(n), Some(i), Some(q), Some(r)) => {
            let cfg = SolenoidConfig {
                radius: r,
                turns_per_metre: n,
                current: i,
                podolsky_length: scale.value() * r,
            };
            Some(magnetic::delta_g_magnetic_si(&cfg, q, s * r)?)
        }
        _ => None,
    };

    let mut table = Table::new(vec![
        "scenario",
        "a_over_r",
        "s",
        "delta_g_correction",
        "ge_ratio",
        "branch",
        "maxwell_phase_rad",
        "total_phase_rad",
    ]);
    table.push(vec![
        Cell::Text("solenoid".into()),
        Cell::Float(scale.value()),
        Cell::Float(s),
        Cell::Float(correction),
        Cell::Float(ratio),
        Cell::Text("asymptotic".into()),
        si.map(|r| Cell::Float(r.maxwell_phase))
            .unwrap_or(Cell::Missing),
        si.map(|r| Cell::Float(r.total_phase()))
            .unwrap_or(Cell::Missing),
    ]);
    Ok(table)
}

fn electric_phase_table(
    args: &PhaseArgs,
    cfg: &FileConfig,
    scale: PodolskyScale,
    r_metres: Option<f64>,
) -> Result<Table, CliError> {
    let s1 = args
        .s1
        .or(cfg.get_f64("s1")?)
        .ok_or_else(|| CliError::Usage("electric phase needs --s1 in [0, 1)".into()))?;
    let s2 = args
        .s2
        .or(cfg.get_f64("s2")?)
        .ok_or_else(|| CliError::Usage("electric phase needs --s2 in [0, 1)".into()))?;
    let method = match args.method {
        Some(m) => m,
        None => cfg.parse_enum::<Method>("method")?.unwrap_or(Method::Auto),
    };
    let (pot_method, branch) = match method {
        Method::Exact => (PotentialMethod::Exact, "exact"),
        Method::Asymptotic => (PotentialMethod::Asymptotic, "asymptotic"),
        Method::LargeRatio => (PotentialMethod::Expansion, "expansion"),
        Method::Auto => {
            if s1.max(s2) / scale.value() <= PHI_ZETA_MAX {
                (PotentialMethod::Exact, "exact")
            } else {
                (PotentialMethod::Asymptotic, "asymptotic")
            }
        }
    };

    let transit = args.transit_time_s.or(cfg.get_f64("transit-time-s")?);
    let charge = args.charge_coulombs.or(cfg.get_f64("charge-coulombs")?);
    let sigma = args.sigma_c_m2.or(cfg.get_f64("sigma-c-m2")?);
    let dphi_maxwell = args
        .delta_phi_maxwell_volts
        .or(cfg.get_f64("delta-phi-maxwell-volts")?)
        .unwrap_or(0.0);

    let geom = BeamPairGeometry {
        s1,
        s2,
        transit_time: transit.unwrap_or(1.0),
        charge: charge.unwrap_or(1.0),
    };
    let dphi_norm = electric::delta_phi_podolsky(&geom, scale, pot_method)?;

    // SI conversion needs the potential unit sigma R / epsilon_0
    let si = match (sigma, r_metres) {
        (Some(sg), Some(r)) => {
            let tube = TubeConfig {
                radius: r,
                sigma: sg,
                podolsky_length: scale.value() * r,
            };
            tube.validate()?;
            let dphi_volts = dphi_norm * tube.potential_unit();
            let total = dphi_volts + dphi_maxwell;
            let dg = match (transit, charge) {
                (Some(_), Some(_)) => Some(electric::delta_g_electric(&geom, total)?),
                _ => None,
            };
            Some((dphi_volts, total, dg))
        }
        _ => None,
    };

    let mut table = Table::new(vec![
        "scenario",
        "a_over_r",
        "s1",
        "s2",
        "method",
        "delta_phi_podolsky_norm",
        "delta_phi_podolsky_volts",
        "delta_phi_total_volts",
        "delta_g_rad",
    ]);
    table.push(vec![
        Cell::Text("tube".into()),
        Cell::Float(scale.value()),
        Cell::Float(s1),
        Cell::Float(s2),
        Cell::Text(branch.into()),
        Cell::Float(dphi_norm),
        si.map(|(v, _, _)| Cell::Float(v)).unwrap_or(Cell::Missing),
        si.map(|(_, t, _)| Cell::Float(t)).unwrap_or(Cell::Missing),
        si.and_then(|(_, _, g)| g)
            .map(Cell::Float)
            .unwrap_or(Cell::Missing),
    ]);
    Ok(table)
}

// ---------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------

pub fn sweep(args: SweepArgs, cfg: &FileConfig) -> Result<ExitCode, CliError> {
    let scenario = require_scenario(args.scenario, cfg)?;
    let a_min = args.a_min.or(cfg.get_f64("a-min")?).unwrap_or(1e-3);
    let a_max = args.a_max.or(cfg.get_f64("a-max")?).unwrap_or(0.2);
    let a_count = args.a_count.or(cfg.get_usize("a-count")?).unwrap_or(10);
    if a_count == 0 {
        return Err(CliError::Usage("--a-count must be at least 1".into()));
    }
    if !(a_min > 0.0) || a_max < a_min {
        return Err(CliError::Usage(format!(
            "coupling sweep [{a_min}, {a_max}] is empty or nonpositive"
        )));
    }
    let format = match args.format {
        Some(f) => f,
        None => cfg
            .parse_enum::<OutputFormat>("format")?
            .unwrap_or(OutputFormat::Csv),
    };
    let jobs = args
        .jobs
        .or(cfg.get_usize("jobs")?)
        .unwrap_or_else(default_jobs);
    let method = match args.method {
        Some(m) => m,
        None => cfg.parse_enum::<Method>("method")?.unwrap_or(Method::Auto),
    };

    let coupling = |i: usize| -> f64 {
        if a_count == 1 {
            a_min
        } else {
            a_min * (a_max / a_min).powf(i as f64 / (a_count - 1) as f64)
        }
    };

    let table = match scenario {
        Scenario::Solenoid => {
            let s = args.s.or(cfg.get_f64("s")?).unwrap_or(1.0);
            let rows = parallel_rows(a_count, jobs, &|i| {
                let a = coupling(i);
                let scale = PodolskyScale::new(a)?;
                let (ratio, corr) = magnetic::delta_g_ratio(RadialPoint::new(s)?, scale)?;
                Ok((a, corr, ratio))
            })?;
            let mut table = Table::new(vec!["a_over_r", "s", "delta_g_correction", "ge_ratio"]);
            for (a, corr, ratio) in rows {
                table.push(vec![
                    Cell::Float(a),
                    Cell::Float(s),
                    Cell::Float(corr),
                    Cell::Float(ratio),
                ]);
            }
            table
        }
        Scenario::Tube => {
            let s1 = args.s1.or(cfg.get_f64("s1")?).unwrap_or(0.0);
            let s2 = args.s2.or(cfg.get_f64("s2")?).unwrap_or(0.5);
            let rows = parallel_rows(a_count, jobs, &|i| {
                let a = coupling(i);
                let scale = PodolskyScale::new(a)?;
                let geom = BeamPairGeometry {
                    s1,
                    s2,
                    transit_time: 1.0,
                    charge: 1.0,
                };
                let (m, label) = match method {
                    Method::Exact => (PotentialMethod::Exact, "exact"),
                    Method::Asymptotic => (PotentialMethod::Asymptotic, "asymptotic"),
                    Method::LargeRatio => (PotentialMethod::Expansion, "expansion"),
                    Method::Auto => {
                        if s1.max(s2) / a <= PHI_ZETA_MAX {
                            (PotentialMethod::Exact, "exact")
                        } else {
                            (PotentialMethod::Asymptotic, "asymptotic")
                        }
                    }
                };
                let dphi = electric::delta_phi_podolsky(&geom, scale, m)?;
                Ok((a, dphi, label))
            })?;
            let mut table = Table::new(vec![
                "a_over_r",
                "s1",
                "s2",
                "method",
                "delta_phi_podolsky_norm",
            ]);
            for (a, dphi, label) in rows {
                table.push(vec![
                    Cell::Float(a),
                    Cell::Float(s1),
                    Cell::Float(s2),
                    Cell::Text(label.into()),
                    Cell::Float(dphi),
                ]);
            }
            table
        }
    };
    emit(&table, format, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

pub fn verify(args: VerifyArgs, cfg: &FileConfig) -> Result<ExitCode, CliError> {
    let level = match args.level {
        Some(Level::Fast) => VerifyLevel::Fast,
        Some(Level::Full) => VerifyLevel::Full,
        None => match cfg.get_str("level") {
            Some("fast") | None => VerifyLevel::Fast,
            Some("full") => VerifyLevel::Full,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "config field level: expected fast or full, got {other:?}"
                )))
            }
        },
    };
    let format = match args.format {
        Some(f) => f,
        None => cfg
            .parse_enum::<OutputFormat>("format")?
            .unwrap_or(OutputFormat::Json),
    };
    let report = verify::run(level);
    let mut table = Table::new(vec!["level", "name", "tolerance", "observed", "passed"]);
    for check in &report.checks {
        table.push(vec![
            Cell::Text(level.label().into()),
            Cell::Text(check.name.clone()),
            Cell::Float(check.tolerance),
            Cell::Float(check.observed),
            Cell::Bool(check.passed),
        ]);
    }
    emit(&table, format, args.out.as_deref())?;
    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "verify {}: {} of {} checks failed",
            level.label(),
            report.checks.iter().filter(|c| !c.passed).count(),
            report.checks.len()
        );
        Ok(ExitCode::from(1))
    }
}
