//! The six experiments behind the subcommands. Each writes its artifacts
//! into the output directory and returns whether every verdict passed.

use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use hwave_core::decay::{
    fit_log_slope, measure_decay, EnvelopeKind,
};
use hwave_core::duhamel::{
    coupled_iterate, picard_iterate, verify_nonlinear_decay, FixedPointConfig, WeightProfile,
};
use hwave_core::error::{Error, Result};
use hwave_core::fixtures;
use hwave_core::fourier::{calibrated_setup, inverse_transform, plancherel_norm};
use hwave_core::oracle::{
    check_exp_poly_bound, check_f_positivity, check_gagliardo_nirenberg, check_integral_lemma,
    check_riemann_lebesgue, check_zone_estimates, check_uniform_estimates, f_positivity_sweep,
    gen_mode_samples, gn_theta, sqrt_inequality_sweep, IntegralLemma, Quantity, Zone,
};
use hwave_core::params::ModelParams;
use hwave_core::report::{
    write_convergence_csv, write_decay_csv, write_json, write_trajectory_csv, DecaySummary,
    VerifyRecord,
};

use crate::config::RunConfig;

pub type Runner = fn(&RunConfig, &Path, u64) -> Result<bool>;

#[derive(Serialize)]
struct RoundtripSummary {
    c_n: f64,
    calibration_residuals: Vec<f64>,
    members: Vec<RoundtripMember>,
    all_ok: bool,
}

#[derive(Serialize)]
struct RoundtripMember {
    width: f64,
    plancherel_rel_err: f64,
    origin_rel_err: f64,
    sup_coeff_over_l1: f64,
    ok: bool,
}

/// Plancherel calibration plus forward/inverse self-consistency on the
/// Gaussian family: relative norm error <= 3%, pointwise inverse at the
/// origin within 5%, coefficient bound within 2% of the L^1 norm.
pub fn roundtrip(config: &RunConfig, out: &Path, _seed: u64) -> Result<bool> {
    let pgrid = config.physical_grid()?;
    let sspec = config.spectral_spec_or(fixtures::roundtrip_spectral_spec());
    let family = fixtures::gaussian_family(&pgrid);
    let (_sgrid, plan, cal) = calibrated_setup(
        config.model.n,
        &sspec,
        Arc::clone(&pgrid),
        &family,
        config.gh_points(),
    )?;
    let mut members = Vec::new();
    let origin = vec![0.0; pgrid.dim()];
    for (i, f) in family.iter().enumerate() {
        let coeff = plan.forward(f)?;
        let pl = plancherel_norm(&coeff);
        let l2 = f.l2_norm();
        let plancherel_rel_err = (pl - l2).abs() / l2;
        let at_origin = inverse_transform(&coeff, &origin)?;
        // the family members all have value 1 at the origin
        let origin_rel_err = (at_origin.re - 1.0).abs().max(at_origin.im.abs());
        let sup_coeff_over_l1 = coeff.max_abs() / f.l1_norm();
        let ok = plancherel_rel_err <= 0.03 && origin_rel_err <= 0.05 && sup_coeff_over_l1 <= 1.02;
        members.push(RoundtripMember {
            width: fixtures::GAUSSIAN_WIDTHS[i],
            plancherel_rel_err,
            origin_rel_err,
            sup_coeff_over_l1,
            ok,
        });
    }
    let all_ok = members.iter().all(|m| m.ok);
    let summary = RoundtripSummary {
        c_n: cal.c_n,
        calibration_residuals: cal.residuals.clone(),
        members,
        all_ok,
    };
    write_json(&out.join("roundtrip.json"), &summary)?;
    Ok(all_ok)
}

fn envelope_kind_from_id(id: &str) -> Result<EnvelopeKind> {
    let kind = match id {
        "linear.l2.energy" => EnvelopeKind::L2Mass,
        "linear.halpha.energy" => EnvelopeKind::HalphaMass,
        "linear.dt.energy" => EnvelopeKind::DtMass,
        "linear.l2.l1" => EnvelopeKind::L2L1,
        "linear.halpha.l1" => EnvelopeKind::HalphaL1,
        "linear.dt.l1" => EnvelopeKind::DtL1,
        other => {
            return Err(Error::Config(format!(
                "unknown envelope id '{other}'"
            )))
        }
    };
    Ok(kind)
}

/// Evolve the configured data and record measured-versus-envelope series
/// for the selected linear envelopes.
pub fn simulate_linear(config: &RunConfig, out: &Path, _seed: u64) -> Result<bool> {
    let pgrid = config.physical_grid()?;
    let sspec = config.spectral_spec_or(fixtures::decay_spectral_spec());
    let family = fixtures::gaussian_family(&pgrid);
    let (sgrid, plan, _cal) = calibrated_setup(
        config.model.n,
        &sspec,
        Arc::clone(&pgrid),
        &family,
        config.gh_points(),
    )?;
    let (f0, f1, norms) = config.build_data(&plan, &sgrid)?;
    let times = config.times();
    let kinds: Vec<EnvelopeKind> = match &config.experiment.envelopes {
        Some(ids) => ids
            .iter()
            .map(|id| envelope_kind_from_id(id))
            .collect::<Result<_>>()?,
        None => EnvelopeKind::LINEAR.to_vec(),
    };
    let mut all_ok = true;
    let mut summaries = Vec::new();
    for kind in kinds {
        let report = measure_decay(&f0, &f1, &config.model, &norms, &times, kind)?;
        let ok = report.dominance_constant.is_finite();
        all_ok &= ok;
        let stem = kind.id().replace('.', "_");
        write_decay_csv(&out.join(format!("decay_{stem}.csv")), &report)?;
        summaries.push(DecaySummary::from_report(&report));
    }
    write_json(&out.join("decay_summary.json"), &summaries)?;
    Ok(all_ok)
}

/// Fit the polynomial decay rate: of a synthetic series when one is
/// configured, otherwise of a fresh linear run with the `L^1`-data `L^2`
/// envelope.
pub fn fit_decay(config: &RunConfig, out: &Path, _seed: u64) -> Result<bool> {
    let strip = config.model.m / (2.0 * config.model.b);
    let summary = if let Some(series) = &config.experiment.series {
        let (times, values): (Vec<f64>, Vec<f64>) = series.iter().copied().unzip();
        let slope = fit_log_slope(&times, &values, strip);
        json!({
            "check_id": "fit.synthetic_series",
            "fitted_slope": slope,
            "sample_count": times.len(),
        })
    } else {
        let pgrid = config.physical_grid()?;
        let sspec = config.spectral_spec_or(fixtures::decay_spectral_spec());
        let family = fixtures::gaussian_family(&pgrid);
        let (sgrid, plan, _cal) = calibrated_setup(
            config.model.n,
            &sspec,
            Arc::clone(&pgrid),
            &family,
            config.gh_points(),
        )?;
        let (f0, f1, norms) = config.build_data(&plan, &sgrid)?;
        let report = measure_decay(
            &f0,
            &f1,
            &config.model,
            &norms,
            &config.times(),
            EnvelopeKind::L2L1,
        )?;
        write_decay_csv(&out.join("decay_linear_l2_l1.csv"), &report)?;
        json!({
            "check_id": report.kind_id,
            "fitted_slope": report.fitted_slope,
            "theoretical_slope": report.theoretical_slope,
            "dominance_constant": report.dominance_constant,
        })
    };
    write_json(&out.join("fit_decay.json"), &summary)?;
    Ok(true)
}

/// The full oracle suite: pointwise inequalities, zone and uniform mode
/// estimates, the five integral estimates, interpolation-inequality ratios
/// and the coefficient bound. One JSON record per check.
pub fn verify(config: &RunConfig, out: &Path, seed: u64) -> Result<bool> {
    let params = &config.model;
    let mut records: Vec<VerifyRecord> = Vec::new();

    records.push(VerifyRecord::from_bool(
        "pointwise.sqrt_inequality",
        json!({ "samples": 10_000 }),
        sqrt_inequality_sweep(10_000)?,
    ));

    for (gamma, delta, beta, closed) in [
        (1.0, 1.0, 2.0, Some((-1.0_f64).exp())),
        (2.0, 1.0, 3.0, Some(4.0 * (-2.0_f64).exp())),
        (0.5, 0.3, 1.0, None),
    ] {
        let r = check_exp_poly_bound(gamma, delta, beta)?;
        let mut ok = r.verdict;
        if let Some(c) = closed {
            ok &= (r.sup_ratio - c).abs() < 1e-9;
        }
        records.push(VerifyRecord {
            check_id: "pointwise.exp_poly_bound".to_string(),
            params: json!({ "gamma": gamma, "delta": delta, "beta": beta }),
            sup_ratio: r.sup_ratio,
            verdict: ok,
        });
    }

    records.push(VerifyRecord::from_bool(
        "pointwise.exponent_gap_positivity",
        json!({ "samples": 1000, "seed": seed }),
        check_f_positivity(1.0, 0.0)?
            && check_f_positivity(2.0, 0.9)?
            && f_positivity_sweep(1000, seed)?,
    ));

    let zone_params = ModelParams::new(params.n, 2.0, 0.5, 1.0)?;
    for zone in [Zone::Small, Zone::Large] {
        let samples = gen_mode_samples(zone, 1000, seed.wrapping_add(zone as u64), &zone_params, 6)?;
        for quantity in [Quantity::U, Quantity::DtU, Quantity::FracU] {
            let r = check_zone_estimates(zone, quantity, &samples, &zone_params)?;
            records.push(VerifyRecord::from_ratio(
                format!("mode.zone_estimate.{zone:?}.{quantity:?}").to_lowercase(),
                json!({ "b": 2.0, "m": 0.5, "alpha": 1.0, "samples": samples.len() }),
                &r,
            ));
        }
    }
    {
        let mut samples = gen_mode_samples(Zone::Small, 500, seed.wrapping_add(11), &zone_params, 6)?;
        samples.extend(gen_mode_samples(Zone::Large, 500, seed.wrapping_add(13), &zone_params, 6)?);
        for quantity in [Quantity::U, Quantity::DtU, Quantity::FracU] {
            let r = check_uniform_estimates(quantity, &samples, &zone_params)?;
            records.push(VerifyRecord::from_ratio(
                format!("mode.uniform_estimate.{quantity:?}").to_lowercase(),
                json!({ "b": 2.0, "m": 0.5, "alpha": 1.0, "samples": samples.len() }),
                &r,
            ));
        }
    }

    let t_grid: Vec<f64> = (0..32).map(|i| 1.0 + 3.2 * i as f64).collect();
    let lemmas = [
        IntegralLemma::ConvolutionPowers { theta: 0.0, a: 1.0, b: 2.0 },
        IntegralLemma::ConvolutionPowers { theta: 0.5, a: 0.5, b: 1.0 },
        IntegralLemma::ConvolutionPowers { theta: 0.3, a: 0.2, b: 0.3 },
        IntegralLemma::ConvolutionPowers { theta: 0.0, a: 3.0, b: 2.0 },
        IntegralLemma::ConvolutionPowers { theta: 0.5, a: 0.5005, b: 0.9 },
        IntegralLemma::FarHalf { sigma: 1.0, beta: 2.0 },
        IntegralLemma::NearHalf { sigma: 0.5, beta: 2.5 },
        IntegralLemma::NearHalfHarmonic { sigma: 0.5, beta: 1.5 },
        IntegralLemma::ExpKernel { c: 1.0, sigma: 0.0 },
        IntegralLemma::ExpKernel { c: 0.05, sigma: 1.5 },
    ];
    for lemma in lemmas {
        let r = check_integral_lemma(lemma, &t_grid)?;
        records.push(VerifyRecord::from_ratio(
            lemma.id(),
            serde_json::to_value(lemma).unwrap_or(json!(null)),
            &r,
        ));
    }

    // interpolation inequality: exponent examples plus family ratios
    let q_dim = params.homogeneous_dim();
    let theta_ok = gn_theta(2.0, 1.0, 2.0, 4)? == 0.0
        && (gn_theta(3.0, 1.0, 2.0, 4)? - 2.0 / 3.0).abs() < 1e-12;
    records.push(VerifyRecord::from_bool(
        "interpolation.exponent",
        json!({ "Q": q_dim }),
        theta_ok,
    ));

    let pgrid = config.physical_grid()?;
    let sspec = config.spectral_spec_or(fixtures::roundtrip_spectral_spec());
    let family = fixtures::gaussian_family(&pgrid);
    let (_sgrid, plan, _cal) = calibrated_setup(
        params.n,
        &sspec,
        Arc::clone(&pgrid),
        &family,
        config.gh_points(),
    )?;
    let mut ratios = Vec::new();
    let mut rl_ok = true;
    for f in &family {
        let coeff = plan.forward(f)?;
        rl_ok &= check_riemann_lebesgue(f, &coeff);
        for q in [3.0, 4.0] {
            let r = check_gagliardo_nirenberg(f, &coeff, q, 1.0, params)?;
            ratios.push(r.sup_ratio);
            records.push(VerifyRecord::from_ratio(
                "interpolation.family_ratio",
                json!({ "q": q }),
                &r,
            ));
        }
    }
    let spread_ok = ratios.iter().all(|r| r.is_finite())
        && ratios.iter().cloned().fold(0.0, f64::max)
            <= 4.0 * ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    records.push(VerifyRecord::from_bool(
        "interpolation.family_spread",
        json!({ "qs": [3.0, 4.0], "widths": fixtures::GAUSSIAN_WIDTHS }),
        spread_ok,
    ));
    records.push(VerifyRecord::from_bool(
        "transform.coefficient_bound",
        json!({ "widths": fixtures::GAUSSIAN_WIDTHS }),
        rl_ok,
    ));

    let all_ok = records.iter().all(|r| r.verdict);
    for r in &records {
        println!(
            "{} {}: sup_ratio = {:.6e}",
            if r.verdict { "PASS" } else { "FAIL" },
            r.check_id,
            r.sup_ratio
        );
    }
    write_json(&out.join("verify.json"), &records)?;
    Ok(all_ok)
}

#[derive(Serialize)]
struct NonlinearSummary {
    profile: String,
    p: f64,
    epsilon: f64,
    data_size: f64,
    converged: bool,
    iters: usize,
    final_x_norm: f64,
    contraction_ratios: Vec<f64>,
    bound_ok: bool,
    decay: Vec<DecaySummary>,
    verdict: bool,
    notes: String,
}

/// Picard run at the configured (or calibrated) smallness scale, with
/// convergence artifacts and nonlinear decay verification.
pub fn simulate_nonlinear(config: &RunConfig, out: &Path, _seed: u64) -> Result<bool> {
    let settings = config.experiment.fixed_point.clone().unwrap_or_default();
    let profile = settings.profile()?;
    let pgrid = config.reduced_physical_grid()?;
    let sspec = config.spectral_spec_or(fixtures::reduced_spectral_spec());
    let family = fixtures::gaussian_family(&pgrid);
    let (sgrid, plan, _cal) = calibrated_setup(
        config.model.n,
        &sspec,
        Arc::clone(&pgrid),
        &family,
        config
            .experiment
            .gh_points
            .unwrap_or(fixtures::GH_POINTS_REDUCED),
    )?;
    let epsilon = settings.epsilon.unwrap_or(match profile {
        WeightProfile::ZMass => fixtures::EPSILON_MASSIVE,
        _ => fixtures::EPSILON_SEMILINEAR,
    });
    let core_config: FixedPointConfig = settings.to_core(epsilon);
    let (f0_raw, f1_raw, raw_norms) = config.build_data(&plan, &sgrid)?;
    let (f0, f1, norms) =
        RunConfig::scaled_to_epsilon(&f0_raw, &f1_raw, &raw_norms, profile, epsilon, 0.95);
    match picard_iterate(&f0, &f1, &norms, &core_config, profile, &config.model, &plan) {
        Ok((traj, report)) => {
            write_convergence_csv(&out.join("convergence.csv"), &report)?;
            write_trajectory_csv(&out.join("trajectory.csv"), &traj, &config.model)?;
            let decay =
                verify_nonlinear_decay(&traj, &report, &norms, profile, &config.model)?;
            let mut ok = report.converged
                && report.ratios.iter().all(|&r| r < 1.0)
                && report.bound_ok;
            let mut summaries = Vec::new();
            for d in &decay {
                ok &= d.dominance_constant.is_finite();
                let stem = d.kind_id.replace('.', "_");
                write_decay_csv(&out.join(format!("decay_{stem}.csv")), d)?;
                summaries.push(DecaySummary::from_report(d));
            }
            let summary = NonlinearSummary {
                profile: profile.id().to_string(),
                p: core_config.p,
                epsilon,
                data_size: report.data_size,
                converged: report.converged,
                iters: report.iters,
                final_x_norm: report.final_x_norm,
                contraction_ratios: report.ratios.clone(),
                bound_ok: report.bound_ok,
                decay: summaries,
                verdict: ok,
                notes: report.notes.clone(),
            };
            write_json(&out.join("nonlinear.json"), &summary)?;
            Ok(ok)
        }
        Err(Error::NonContraction { epsilon: at, run }) => {
            write_json(
                &out.join("nonlinear.json"),
                &json!({
                    "profile": profile.id(),
                    "p": core_config.p,
                    "epsilon": epsilon,
                    "converged": false,
                    "non_contraction_at": at,
                    "divergent_ratio_run": run,
                    "verdict": false,
                }),
            )?;
            Ok(false)
        }
        Err(e) => Err(e),
    }
}

/// Coupled run with the symmetric-specialization cross-check when the data
/// is symmetric.
pub fn simulate_coupled(config: &RunConfig, out: &Path, _seed: u64) -> Result<bool> {
    let mut settings = config.experiment.fixed_point.clone().unwrap_or_default();
    if settings.profile == "x-l1" {
        // coupled runs live in the massive profile
        settings.profile = "z-mass".to_string();
    }
    let profile = settings.profile()?;
    if profile != WeightProfile::ZMass {
        return Err(Error::Config(
            "the coupled experiment runs in the z-mass profile".to_string(),
        ));
    }
    let q_exp = settings.q.unwrap_or(settings.p);
    let pgrid = config.reduced_physical_grid()?;
    let sspec = config.spectral_spec_or(fixtures::reduced_spectral_spec());
    let family = fixtures::gaussian_family(&pgrid);
    let (sgrid, plan, _cal) = calibrated_setup(
        config.model.n,
        &sspec,
        Arc::clone(&pgrid),
        &family,
        config
            .experiment
            .gh_points
            .unwrap_or(fixtures::GH_POINTS_REDUCED),
    )?;
    let epsilon = settings.epsilon.unwrap_or(fixtures::EPSILON_COUPLED);
    let core_config = settings.to_core(epsilon);
    let (f0_raw, f1_raw, raw_norms) = config.build_data(&plan, &sgrid)?;
    // scale so that the joint size (both components) sits at 95% of epsilon
    let (f0, f1, norms) = RunConfig::scaled_to_epsilon(
        &f0_raw,
        &f1_raw,
        &raw_norms,
        profile,
        0.5 * epsilon,
        0.95,
    );
    match coupled_iterate(
        &f0,
        &f1,
        &f0,
        &f1,
        &norms,
        &norms,
        &core_config,
        q_exp,
        &config.model,
        &plan,
    ) {
        Ok((u, v, report)) => {
            write_convergence_csv(&out.join("convergence.csv"), &report)?;
            write_trajectory_csv(&out.join("trajectory_u.csv"), &u, &config.model)?;
            write_trajectory_csv(&out.join("trajectory_v.csv"), &v, &config.model)?;
            // symmetric data with p = q: the two components must coincide
            let symmetric = (core_config.p - q_exp).abs() < 1e-15;
            let component_gap = if symmetric { u.max_abs_diff(&v)? } else { f64::NAN };
            let ok = report.converged && (!symmetric || component_gap <= 1e-12);
            write_json(
                &out.join("coupled.json"),
                &json!({
                    "profile": profile.id(),
                    "p": core_config.p,
                    "q": q_exp,
                    "epsilon": epsilon,
                    "data_size": report.data_size,
                    "converged": report.converged,
                    "iters": report.iters,
                    "final_z_norm": report.final_x_norm,
                    "contraction_ratios": report.ratios,
                    "symmetric_component_gap": component_gap,
                    "verdict": ok,
                }),
            )?;
            Ok(ok)
        }
        Err(Error::NonContraction { epsilon: at, run }) => {
            write_json(
                &out.join("coupled.json"),
                &json!({
                    "profile": profile.id(),
                    "converged": false,
                    "non_contraction_at": at,
                    "divergent_ratio_run": run,
                    "verdict": false,
                }),
            )?;
            Ok(false)
        }
        Err(e) => Err(e),
    }
}
