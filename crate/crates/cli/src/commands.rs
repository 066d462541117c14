use std::f64::consts::PI;

use log::{info, warn};
use mirrorpress_core::fluctuations::{fdt_check, noise_analysis};
use mirrorpress_core::mirror::{validate_model, ValidationTolerances};
use mirrorpress_core::motion::{jerk_susceptibility_spectrum, susceptibility_spectrum, TrajectoryPerturbation};
use mirrorpress_core::numerics::causality::{causality_report, default_time_span, time_grid};
use mirrorpress_core::squeezing::oscillation_squeeze_lines;
use mirrorpress_core::state::StateKind;
use mirrorpress_core::{Complex64, Mat2, Spectrum};
use serde_json::{json, Value};

use crate::config::{CommandKind, Inject, RunConfig};
use crate::output::Report;

/// Largest negative-time energy fraction accepted as causal.
pub const NEGATIVE_TIME_LIMIT: f64 = 1e-3;

/// Relative size of the spectrum edges above which the transforms warn.
const TAIL_TOL: f64 = 1e-2;

pub fn run(cfg: &RunConfig) -> anyhow::Result<Report> {
    match cfg.command {
        CommandKind::Validate => validate(cfg),
        CommandKind::Susceptibility => susceptibility(cfg),
        CommandKind::Noise => noise(cfg),
        CommandKind::Fdt => fdt(cfg),
        CommandKind::Causality => causality(cfg),
        CommandKind::Squeeze => squeeze(cfg),
    }
}

fn validate(cfg: &RunConfig) -> anyhow::Result<Report> {
    let model = cfg.mirror()?;
    let tol = ValidationTolerances {
        algebraic: cfg.tol,
        ..Default::default()
    };
    let rep = validate_model(&model, &cfg.frequency_grid()?, &tol)?;
    let mut out = Report::new(vec!["check", "residual", "threshold", "passed"]);
    for (name, c) in rep.checks() {
        out.row(vec![name.into(), c.residual.into(), c.threshold.into(), c.passed.into()]);
        if !c.passed {
            warn!("{name} check failed: residual {:e} > {:e}", c.residual, c.threshold);
        }
    }
    if rep.transparency.is_none() {
        out.note("transparency", "not applicable");
    }
    let mut warnings = rep.warnings.clone();
    warnings.dedup();
    for w in &warnings {
        warn!("{w}");
    }
    out.note("warnings", warnings);
    out.passed = rep.passed();
    Ok(out)
}

fn susceptibility(cfg: &RunConfig) -> anyhow::Result<Report> {
    let (model, state) = (cfg.mirror()?, cfg.field_state()?);
    let chi = susceptibility_spectrum(&model, &state, &cfg.frequency_grid()?, &cfg.quadrature()?)?;
    let mut out = Report::new(vec!["omega", "re_chi", "im_chi"]);
    for (w, z) in chi.iter() {
        out.row(vec![w.into(), z.re.into(), z.im.into()]);
    }
    Ok(out)
}

fn noise(cfg: &RunConfig) -> anyhow::Result<Report> {
    let (model, state) = (cfg.mirror()?, cfg.field_state()?);
    let grid = cfg.frequency_grid()?;
    let res = noise_analysis(&model, &state, &grid, &cfg.quadrature()?)?;
    let mut out = Report::new(vec!["omega", "cff", "xiff"]);
    let cff = res.cff_spectrum.values();
    for ((w, c), x) in grid.points().iter().zip(cff).zip(res.xi_spectrum.values()) {
        out.row(vec![(*w).into(), c.re.into(), x.re.into()]);
    }
    out.note("fdt_residual", res.fdt_residual);

    if let (StateKind::Thermal { temperature }, true) = (state.kind(), grid.is_symmetric()) {
        let mut worst: f64 = 0.0;
        for (i, &w) in grid.points().iter().enumerate().filter(|(_, &w)| w > 0.0) {
            let ratio = cff[grid.mirror_index(i)].re / cff[i].re;
            let boltzmann = (-state.hbar() * w / temperature).exp();
            info!("ω = {w}: cff(−ω)/cff(ω) = {ratio:.12e}, e^(−ħω/T) = {boltzmann:.12e}");
            worst = worst.max((ratio - boltzmann).abs() / boltzmann);
        }
        out.note("detailed_balance_deviation", worst);
    }
    Ok(out)
}

fn fdt(cfg: &RunConfig) -> anyhow::Result<Report> {
    let (model, state) = (cfg.mirror()?, cfg.field_state()?);
    let grid = cfg.frequency_grid()?;
    let rep = fdt_check(&model, &state, &grid, &cfg.quadrature()?)?;
    let mut out = Report::new(vec!["omega", "xi_commutator", "xi_noise", "xi_chi", "cff", "re_chi", "im_chi"]);
    for (i, &w) in grid.points().iter().enumerate() {
        out.row(vec![
            w.into(),
            rep.xi_commutator[i].into(),
            rep.xi_noise[i].into(),
            rep.xi_chi[i].into(),
            rep.cff[i].into(),
            rep.chi[i].re.into(),
            rep.chi[i].im.into(),
        ]);
    }
    out.note("max_deviation", rep.max_deviation);
    out.note("peak", rep.peak);
    out.note("relative_deviation", rep.relative_deviation);
    out.note("imag_residual", rep.imag_residual);
    out.passed = rep.relative_deviation <= cfg.tol;
    if let Some(db) = rep.detailed_balance {
        out.note("detailed_balance", db);
        out.passed &= db <= cfg.tol;
    }
    Ok(out)
}

fn causality(cfg: &RunConfig) -> anyhow::Result<Report> {
    let grid = cfg.frequency_grid()?;
    let spectrum = match cfg.inject {
        Some(Inject::Cubic) => {
            let k = cfg.hbar / (6.0 * PI);
            Spectrum::from_fn(&grid, "kappa", "injected cubic law", |_| Complex64::new(k, 0.0))
        }
        Some(Inject::Exponential) => {
            Spectrum::from_fn(&grid, "kappa", "injected exponential pair", |w| Complex64::new(1.0, w) / (1.0 + w * w))
        }
        None => {
            let (model, state) = (cfg.mirror()?, cfg.field_state()?);
            jerk_susceptibility_spectrum(&model, &state, &grid, &cfg.quadrature()?)?
        }
    };
    let times = time_grid(default_time_span(&spectrum), 2001);
    let rep = causality_report(&spectrum, &times, TAIL_TOL)?;
    for w in &rep.warnings {
        warn!("{w}");
    }
    let mut out = Report::new(vec!["omega", "re_kappa", "im_kappa"]);
    for (w, z) in spectrum.iter() {
        out.row(vec![w.into(), z.re.into(), z.im.into()]);
    }
    out.note("spectrum", spectrum.provenance.clone());
    out.note("negative_time_fraction", rep.negative_time_fraction);
    out.note("negative_time_limit", NEGATIVE_TIME_LIMIT);
    out.note("kk_residual", rep.kk_residual);
    out.note("tail_coefficient", rep.tail_coefficient);
    out.note("time_span", *times.last().unwrap());
    out.note("warnings", rep.warnings.clone());
    out.passed = rep.negative_time_fraction < NEGATIVE_TIME_LIMIT && rep.kk_residual <= cfg.tol;
    Ok(out)
}

fn entries(m: &Mat2) -> Value {
    Value::Array(m.entries().iter().map(|z| json!([z.re, z.im])).collect())
}

fn squeeze(cfg: &RunConfig) -> anyhow::Result<Report> {
    let (model, state) = (cfg.mirror()?, cfg.field_state()?);
    let osc = TrajectoryPerturbation::monochromatic(cfg.osc_amp.unwrap(), cfg.osc_freq.unwrap())?;
    let lines = oscillation_squeeze_lines(&model, &state, &osc, &cfg.frequency_grid()?)?;

    let mut columns = vec!["omega", "omega2", "line", "same_sign"];
    columns.extend(["dc00_re", "dc00_im", "dc01_re", "dc01_im", "dc10_re", "dc10_im", "dc11_re", "dc11_im"]);
    columns.push("magnitude");
    let mut out = Report::new(columns);
    let mut json_rows = Vec::with_capacity(lines.len());
    let (mut on, mut off): (f64, f64) = (0.0, 0.0);
    for l in &lines {
        let mut cells = vec![l.omega.into(), l.omega2.into(), l.line.into(), l.same_sign.into()];
        for z in l.delta_cout.entries() {
            cells.extend([z.re.into(), z.im.into()]);
        }
        cells.push(l.magnitude.into());
        out.row(cells);
        json_rows.push(json!({
            "omega": l.omega,
            "omega2": l.omega2,
            "line": l.line,
            "same_sign": l.same_sign,
            "delta_cout": entries(&l.delta_cout),
            "derivative_covariance": entries(&l.derivative_covariance),
            "magnitude": l.magnitude,
        }));
        if l.same_sign {
            on = on.max(l.delta_cout.max_abs());
        } else {
            off = off.max(l.delta_cout.max_abs());
        }
    }
    out.json_rows = Some(json_rows);
    out.note("same_sign_peak", on);
    out.note("opposite_sign_peak", off);
    out.note("peak_magnitude", lines.iter().map(|l| l.magnitude).fold(0.0, f64::max));
    // Opposite-sign pairs are forbidden only when the input is the vacuum.
    if state.is_vacuum() {
        out.passed = off <= cfg.tol * on.max(f64::MIN_POSITIVE);
        out.note("support_rule", if out.passed { "holds" } else { "violated" });
    }
    Ok(out)
}
