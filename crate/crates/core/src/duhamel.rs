//! Semilinear solver: Picard iteration on the Duhamel formula, the weighted
//! solution-space norms the contraction is measured in, and the weakly
//! coupled system. The iteration is global-in-window, so the empirical
//! contraction factor is directly observable as the ratio of successive
//! whole-trajectory differences.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decay::{
    decay_envelope, dominance_constant, fit_log_slope, sobolev_seminorm, DecayReport,
    DerivOrder, EnvelopeKind,
};
use crate::error::{Error, Result};
use crate::fields::{CoefficientField, DataNorms, PhysicalField};
use crate::fourier::{plancherel_norm, TransformPlan};
use crate::params::ModelParams;
use crate::propagator::{damped_a0, damped_a1, evolve_field, ModeFrequency};
use crate::quadrature::uniform_simpson_weights;

/// Weighted solution-space profile: which reciprocal decay profiles
/// `f_1, f_2, f_3` weight the three norms, and which middle norm is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightProfile {
    /// Massless problem with `L^1 cap L^2` data: polynomial profiles with
    /// the full-dimension gain `Q/4alpha`.
    XL1,
    /// Massless problem with `L^2`-only data: profiles `1, (1+t)^{-1/2},
    /// (1+t)^{-1}` and the homogeneous seminorm in the middle.
    XL2,
    /// Massive problem (single or coupled): exponential profiles
    /// `e^{-mt/2b}` times the `L^2`-only polynomial factors.
    ZMass,
}

impl WeightProfile {
    /// The three weight profiles at time `t`.
    pub fn weights(self, t: f64, params: &ModelParams) -> [f64; 3] {
        let q4a = params.q() / (4.0 * params.alpha);
        match self {
            WeightProfile::XL1 => [
                (1.0 + t).powf(-q4a),
                (1.0 + t).powf(-q4a - 0.5),
                (1.0 + t).powf(-q4a - 1.0),
            ],
            WeightProfile::XL2 => {
                [1.0, (1.0 + t).powf(-0.5), (1.0 + t).powf(-1.0)]
            }
            WeightProfile::ZMass => {
                let e = (-params.m * t / (2.0 * params.b)).exp();
                [
                    e,
                    (1.0 + t).powf(-0.5) * e,
                    ((1.0 + t).powf(-1.0) + params.m) * e,
                ]
            }
        }
    }

    /// Middle norm of every profile: the homogeneous seminorm, which is the
    /// quantity the weighted rates hold for (the `L^2` part of the
    /// inhomogeneous norm only decays at the first profile's rate).
    fn mid_norm(self, f: &CoefficientField, alpha: f64) -> f64 {
        let _ = self;
        sobolev_seminorm(f, alpha)
    }

    /// Size of the Cauchy data in the norm the smallness condition refers
    /// to.
    pub fn data_size(self, norms: &DataNorms) -> f64 {
        match self {
            WeightProfile::XL1 => norms.energy_with_l1(),
            WeightProfile::XL2 | WeightProfile::ZMass => norms.energy(),
        }
    }

    /// Envelope family verified after a converged run.
    pub fn envelope_kind(self, d: DerivOrder) -> EnvelopeKind {
        match self {
            WeightProfile::XL1 => EnvelopeKind::NonlinL1(d),
            WeightProfile::XL2 => EnvelopeKind::NonlinL2(d),
            WeightProfile::ZMass => EnvelopeKind::NonlinMass(d),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            WeightProfile::XL1 => "x_l1",
            WeightProfile::XL2 => "x_l2",
            WeightProfile::ZMass => "z_mass",
        }
    }
}

/// Discrete-time solution: states `(u, du/dt)` on the Fourier side at each
/// node of a uniform time grid starting at 0.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<(CoefficientField, CoefficientField)>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Componentwise difference, for contraction monitoring.
    pub fn sub(&self, other: &Trajectory) -> Result<Trajectory> {
        if self.times != other.times {
            return Err(Error::invalid("trajectories live on different time grids"));
        }
        let states = self
            .states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| Ok((a.0.sub(&b.0)?, a.1.sub(&b.1)?)))
            .collect::<Result<_>>()?;
        Ok(Trajectory {
            times: self.times.clone(),
            states,
        })
    }

    /// Largest entrywise deviation from another trajectory.
    pub fn max_abs_diff(&self, other: &Trajectory) -> Result<f64> {
        let diff = self.sub(other)?;
        Ok(diff
            .states
            .iter()
            .map(|(u, v)| u.max_abs().max(v.max_abs()))
            .fold(0.0, f64::max))
    }
}

/// Parameters of a fixed-point run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointConfig {
    /// Nonlinearity exponent.
    pub p: f64,
    /// Smallness bound the data must satisfy in the profile's norm.
    pub epsilon: f64,
    /// Window length `T`.
    pub horizon: f64,
    /// Number of uniform time nodes on `[0, T]` (at least 3).
    pub time_nodes: usize,
    pub max_iters: usize,
    /// Convergence threshold on the weighted-norm difference of successive
    /// iterates.
    pub tol: f64,
    /// Contraction margin `r > 1` entering the a-posteriori bound check.
    pub r: f64,
}

impl FixedPointConfig {
    fn validate(&self) -> Result<()> {
        if self.time_nodes < 3 {
            return Err(Error::config(
                "fixed-point run needs at least 3 time nodes for the Duhamel quadrature"
                    .to_string(),
            ));
        }
        if !(self.horizon > 0.0) || !(self.tol > 0.0) || self.max_iters == 0 {
            return Err(Error::config(
                "fixed-point run needs positive horizon, tolerance and iteration budget"
                    .to_string(),
            ));
        }
        if !(self.r > 1.0) {
            return Err(Error::config("contraction margin r must exceed 1".to_string()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::config("epsilon must be positive".to_string()));
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        let step = self.horizon / (self.time_nodes - 1) as f64;
        (0..self.time_nodes).map(|i| step * i as f64).collect()
    }
}

/// Check the exponent `p` against the admissible window of the profile's
/// global-existence regime.
pub fn validate_exponent(p: f64, profile: WeightProfile, params: &ModelParams) -> Result<()> {
    let q = params.q();
    let a = params.alpha;
    let upper = if q > 2.0 * a {
        1.0 + 2.0 * a / (q - 2.0 * a)
    } else {
        f64::INFINITY
    };
    match profile {
        WeightProfile::XL1 => {
            if params.m != 0.0 {
                return Err(Error::config(
                    "the L1-data profile applies to the massless equation (m = 0)".to_string(),
                ));
            }
            if !(a >= 1.0 && 2.0 * a < q && q <= 4.0 * a) {
                return Err(Error::config(format!(
                    "L1-data regime needs alpha >= 1 and 2 alpha < Q <= 4 alpha; \
                     got alpha = {a}, Q = {q}"
                )));
            }
            if !(2.0 <= p && p <= upper + 1e-12) {
                return Err(Error::config(format!(
                    "exponent p = {p} outside the admissible window 2 <= p <= {upper}"
                )));
            }
        }
        WeightProfile::XL2 => {
            if params.m != 0.0 {
                return Err(Error::config(
                    "the L2-data profile applies to the massless equation (m = 0)".to_string(),
                ));
            }
            if !(a > 1.0 && 2.0 * a < q && q < 4.0 * a) {
                return Err(Error::config(format!(
                    "L2-data regime needs alpha > 1 and 2 alpha < Q < 4 alpha; \
                     got alpha = {a}, Q = {q}"
                )));
            }
            let lower = 1.0 + 4.0 * a / q;
            if !(p > lower && p <= upper + 1e-12) {
                return Err(Error::config(format!(
                    "exponent p = {p} outside the admissible window {lower} < p <= {upper}"
                )));
            }
        }
        WeightProfile::ZMass => {
            if !(q > 2.0 * a) {
                return Err(Error::config(format!(
                    "massive regime needs Q > 2 alpha; got alpha = {a}, Q = {q}"
                )));
            }
            if !(p > 1.0 && p <= upper + 1e-12) {
                return Err(Error::config(format!(
                    "exponent p = {p} outside the admissible window 1 < p <= {upper}"
                )));
            }
        }
    }
    Ok(())
}

/// Trajectory of the homogeneous evolution at the given times.
pub fn linear_part(
    times: &[f64],
    f0: &CoefficientField,
    f1: &CoefficientField,
    params: &ModelParams,
) -> Result<Trajectory> {
    let states = times
        .iter()
        .map(|&t| evolve_field(t, f0, f1, params))
        .collect::<Result<_>>()?;
    Ok(Trajectory {
        times: times.to_vec(),
        states,
    })
}

/// Transform of `|u|^p`: reconstruct `u` on the plan's physical grid, take
/// the real part, apply the power nonlinearity and transform back.
///
/// An imaginary part above 10% of the field magnitude signals that the
/// truncation is too aggressive to represent the state and is reported as a
/// consistency error.
pub fn nonlinearity_transform(
    state: &CoefficientField,
    p: f64,
    plan: &TransformPlan,
) -> Result<CoefficientField> {
    if !(p > 1.0) {
        return Err(Error::invalid(format!("nonlinearity exponent p = {p} must exceed 1")));
    }
    let phys = plan.inverse(state)?;
    let rel_imag = phys.relative_imag();
    if rel_imag > 0.10 {
        return Err(Error::Inconsistent(format!(
            "reconstructed state has relative imaginary part {rel_imag:.3}; \
             truncation too aggressive for the nonlinearity"
        )));
    }
    let powered: Vec<Complex64> = phys
        .to_dense()
        .iter()
        .map(|z| Complex64::new(z.re.abs().powf(p), 0.0))
        .collect();
    let field = PhysicalField::from_dense(Arc::clone(plan.physical_grid()), powered)?;
    plan.forward(&field)
}

/// One Duhamel evaluation: integrate the damped multipliers against the
/// source history up to `times[t_index]` with composite Simpson weights.
/// The integrand vanishes at the upper endpoint since the sine-type
/// multiplier vanishes at 0.
pub fn duhamel_step(
    t_index: usize,
    times: &[f64],
    sources: &[CoefficientField],
    params: &ModelParams,
) -> Result<(CoefficientField, CoefficientField)> {
    if times.len() < 3 {
        return Err(Error::config(
            "duhamel_step needs at least 3 nodes on the time grid".to_string(),
        ));
    }
    if t_index >= times.len() || sources.len() < t_index + 1 {
        return Err(Error::invalid(
            "duhamel_step: index outside the supplied history",
        ));
    }
    let grid = Arc::clone(sources[0].grid());
    let mut out_u = CoefficientField::zeros(Arc::clone(&grid));
    let mut out_dt = CoefficientField::zeros(Arc::clone(&grid));
    if t_index == 0 {
        return Ok((out_u, out_dt));
    }
    let t = times[t_index];
    let step = times[1] - times[0];
    let weights = uniform_simpson_weights(t_index + 1, step);
    let nk = grid.rows().len();
    let nl = grid.cols().len();
    let alpha = params.alpha;
    let half_b = 0.5 * params.b;
    for (li, &lambda) in grid.lambda_nodes().iter().enumerate() {
        for (ki, &mu) in grid.mu_rows().iter().enumerate() {
            let s = ModeFrequency((lambda.abs() * mu).powf(alpha));
            let base = (li * nk + ki) * nl;
            for (l, &w) in weights.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                let dt = t - times[l];
                let a1 = damped_a1(dt, s, params);
                let a0 = damped_a0(dt, s, params);
                let ku = w * a1;
                let kdt = w * (a0 - half_b * a1);
                let src = &sources[l].values()[base..base + nl];
                for (c, &sv) in src.iter().enumerate() {
                    out_u.values_mut()[base + c] += sv * ku;
                    out_dt.values_mut()[base + c] += sv * kdt;
                }
            }
        }
    }
    Ok((out_u, out_dt))
}

/// Weighted solution-space norm of a trajectory: the supremum over time of
/// the three reciprocal-weighted norms.
pub fn x_norm(traj: &Trajectory, profile: WeightProfile, params: &ModelParams) -> f64 {
    traj.times
        .iter()
        .zip(&traj.states)
        .map(|(&t, (u, dt))| {
            let w = profile.weights(t, params);
            plancherel_norm(u) / w[0]
                + profile.mid_norm(u, params.alpha) / w[1]
                + plancherel_norm(dt) / w[2]
        })
        .fold(0.0, f64::max)
}

/// Coupled-system norm: the supremum over time of the summed weighted norms
/// of both components.
pub fn z_norm(
    u: &Trajectory,
    v: &Trajectory,
    profile: WeightProfile,
    params: &ModelParams,
) -> f64 {
    u.times
        .iter()
        .zip(u.states.iter().zip(&v.states))
        .map(|(&t, ((uu, udt), (vu, vdt)))| {
            let w = profile.weights(t, params);
            plancherel_norm(uu) / w[0]
                + profile.mid_norm(uu, params.alpha) / w[1]
                + plancherel_norm(udt) / w[2]
                + plancherel_norm(vu) / w[0]
                + profile.mid_norm(vu, params.alpha) / w[1]
                + plancherel_norm(vdt) / w[2]
        })
        .fold(0.0, f64::max)
}

/// Record of a fixed-point run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub iters: usize,
    /// Weighted-norm difference of successive iterates.
    pub diffs: Vec<f64>,
    /// Successive difference ratios: the empirical contraction factor.
    pub ratios: Vec<f64>,
    pub final_x_norm: f64,
    /// Empirical linear-bound constant `||u_lin||_X / ||data||`.
    pub a_emp: f64,
    /// Data size in the profile norm.
    pub data_size: f64,
    pub epsilon: f64,
    /// Whether `||u||_X <= 2 A_emp epsilon`, the a-posteriori form of the
    /// closed-ball bound.
    pub bound_ok: bool,
    pub converged: bool,
    pub notes: String,
}

const DIVERGENCE_RUN: usize = 3;

struct PicardDriver<'a> {
    times: Vec<f64>,
    params: &'a ModelParams,
    plan: &'a TransformPlan,
}

impl PicardDriver<'_> {
    /// One application of the solution operator: linear part plus Duhamel
    /// of the transformed nonlinearity of `traj`.
    fn apply(
        &self,
        lin: &Trajectory,
        traj: &Trajectory,
        p: f64,
    ) -> Result<Trajectory> {
        let sources: Vec<CoefficientField> = traj
            .states
            .iter()
            .map(|(u, _)| nonlinearity_transform(u, p, self.plan))
            .collect::<Result<_>>()?;
        let mut states = Vec::with_capacity(self.times.len());
        for i in 0..self.times.len() {
            let (nu, ndt) = duhamel_step(i, &self.times, &sources, self.params)?;
            states.push((lin.states[i].0.add(&nu)?, lin.states[i].1.add(&ndt)?));
        }
        Ok(Trajectory {
            times: self.times.clone(),
            states,
        })
    }
}

/// Picard iteration `u^{j+1} = u_lin + Duhamel(|u^j|^p)` on the full window,
/// starting from the linear part, with contraction monitoring.
///
/// Divergence (non-finite differences, or difference ratios above 1 for
/// three consecutive iterations) raises [`Error::NonContraction`] carrying
/// the offending data size.
pub fn picard_iterate(
    f0: &CoefficientField,
    f1: &CoefficientField,
    norms: &DataNorms,
    config: &FixedPointConfig,
    profile: WeightProfile,
    params: &ModelParams,
    plan: &TransformPlan,
) -> Result<(Trajectory, ConvergenceReport)> {
    config.validate()?;
    validate_exponent(config.p, profile, params)?;
    let data_size = profile.data_size(norms);
    if data_size >= config.epsilon {
        return Err(Error::invalid(format!(
            "data size {data_size:.6e} is not below the smallness bound {:.6e}",
            config.epsilon
        )));
    }
    let times = config.times();
    let driver = PicardDriver {
        times: times.clone(),
        params,
        plan,
    };
    let lin = linear_part(&times, f0, f1, params)?;
    let a_emp = if data_size > 0.0 {
        x_norm(&lin, profile, params) / data_size
    } else {
        0.0
    };
    let mut current = lin.clone();
    let mut diffs = Vec::new();
    let mut ratios = Vec::new();
    let mut converged = false;
    let mut bad_run = 0usize;
    for _ in 0..config.max_iters {
        let next = driver.apply(&lin, &current, config.p)?;
        let diff = x_norm(&next.sub(&current)?, profile, params);
        if !diff.is_finite() {
            return Err(Error::NonContraction {
                epsilon: data_size,
                run: bad_run.max(1),
            });
        }
        if let Some(&prev) = diffs.last() {
            let ratio = if prev > 0.0 { diff / prev } else { 0.0 };
            ratios.push(ratio);
            if ratio > 1.0 {
                bad_run += 1;
                if bad_run >= DIVERGENCE_RUN {
                    return Err(Error::NonContraction {
                        epsilon: data_size,
                        run: bad_run,
                    });
                }
            } else {
                bad_run = 0;
            }
        }
        diffs.push(diff);
        current = next;
        if diff < config.tol {
            converged = true;
            break;
        }
    }
    let final_x_norm = x_norm(&current, profile, params);
    let bound_ok = final_x_norm <= 2.0 * a_emp * config.epsilon * (1.0 + 1e-9);
    let notes = match profile {
        WeightProfile::XL2 => {
            "L2-only regime: the L1 ingredient is deliberately omitted from data norms \
             and envelopes"
                .to_string()
        }
        _ => String::new(),
    };
    let report = ConvergenceReport {
        iters: diffs.len(),
        diffs,
        ratios,
        final_x_norm,
        a_emp,
        data_size,
        epsilon: config.epsilon,
        bound_ok,
        converged,
        notes,
    };
    Ok((current, report))
}

/// Simultaneous Picard iteration for the weakly coupled system: the source
/// `|v|^p` feeds `u` and `|u|^q` feeds `v`, measured in the massive profile.
/// With identical data and `p = q` the two components perform identical
/// arithmetic, so the specialization to the single equation is exact.
#[allow(clippy::too_many_arguments)]
pub fn coupled_iterate(
    f0u: &CoefficientField,
    f1u: &CoefficientField,
    f0v: &CoefficientField,
    f1v: &CoefficientField,
    norms_u: &DataNorms,
    norms_v: &DataNorms,
    config: &FixedPointConfig,
    q_exponent: f64,
    params: &ModelParams,
    plan: &TransformPlan,
) -> Result<(Trajectory, Trajectory, ConvergenceReport)> {
    config.validate()?;
    if params.m <= 0.0 {
        return Err(Error::config(
            "the coupled run requires a positive mass term".to_string(),
        ));
    }
    validate_exponent(config.p, WeightProfile::ZMass, params)?;
    validate_exponent(q_exponent, WeightProfile::ZMass, params)?;
    let profile = WeightProfile::ZMass;
    let data_size = profile.data_size(norms_u) + profile.data_size(norms_v);
    if data_size >= config.epsilon {
        return Err(Error::invalid(format!(
            "joint data size {data_size:.6e} is not below the smallness bound {:.6e}",
            config.epsilon
        )));
    }
    let times = config.times();
    let driver = PicardDriver {
        times: times.clone(),
        params,
        plan,
    };
    let lin_u = linear_part(&times, f0u, f1u, params)?;
    let lin_v = linear_part(&times, f0v, f1v, params)?;
    let a_emp = if data_size > 0.0 {
        z_norm(&lin_u, &lin_v, profile, params) / data_size
    } else {
        0.0
    };
    let mut cur_u = lin_u.clone();
    let mut cur_v = lin_v.clone();
    let mut diffs = Vec::new();
    let mut ratios = Vec::new();
    let mut converged = false;
    let mut bad_run = 0usize;
    for _ in 0..config.max_iters {
        // u is driven by |v|^p, v by |u|^q
        let next_u = driver.apply(&lin_u, &cur_v, config.p)?;
        let next_v = driver.apply(&lin_v, &cur_u, q_exponent)?;
        let diff = z_norm(
            &next_u.sub(&cur_u)?,
            &next_v.sub(&cur_v)?,
            profile,
            params,
        );
        if !diff.is_finite() {
            return Err(Error::NonContraction {
                epsilon: data_size,
                run: bad_run.max(1),
            });
        }
        if let Some(&prev) = diffs.last() {
            let ratio = if prev > 0.0 { diff / prev } else { 0.0 };
            ratios.push(ratio);
            if ratio > 1.0 {
                bad_run += 1;
                if bad_run >= DIVERGENCE_RUN {
                    return Err(Error::NonContraction {
                        epsilon: data_size,
                        run: bad_run,
                    });
                }
            } else {
                bad_run = 0;
            }
        }
        diffs.push(diff);
        cur_u = next_u;
        cur_v = next_v;
        if diff < config.tol {
            converged = true;
            break;
        }
    }
    let final_norm = z_norm(&cur_u, &cur_v, profile, params);
    let bound_ok = final_norm <= 2.0 * a_emp * config.epsilon * (1.0 + 1e-9);
    let report = ConvergenceReport {
        iters: diffs.len(),
        diffs,
        ratios,
        final_x_norm: final_norm,
        a_emp,
        data_size,
        epsilon: config.epsilon,
        bound_ok,
        converged,
        notes: String::new(),
    };
    Ok((cur_u, cur_v, report))
}

/// Compare a converged trajectory against the nonlinear decay envelopes for
/// all three derivative orders; reports one dominance series per order.
pub fn verify_nonlinear_decay(
    traj: &Trajectory,
    convergence: &ConvergenceReport,
    norms: &DataNorms,
    profile: WeightProfile,
    params: &ModelParams,
) -> Result<Vec<DecayReport>> {
    if !convergence.converged {
        return Err(Error::invalid(
            "verify_nonlinear_decay requires a converged trajectory",
        ));
    }
    let strip = params.m / (2.0 * params.b);
    let mut out = Vec::with_capacity(3);
    for d in DerivOrder::ALL {
        let kind = profile.envelope_kind(d);
        let measured: Vec<f64> = traj
            .states
            .iter()
            .map(|(u, dt)| match d {
                DerivOrder::Value => plancherel_norm(u),
                DerivOrder::Fractional => sobolev_seminorm(u, params.alpha),
                DerivOrder::TimeDerivative => plancherel_norm(dt),
            })
            .collect();
        let envelope: Vec<f64> = traj
            .times
            .iter()
            .map(|&t| decay_envelope(t, kind, params, norms))
            .collect::<Result<_>>()?;
        out.push(DecayReport {
            kind_id: kind.id(),
            times: traj.times.clone(),
            measured: measured.clone(),
            envelope: envelope.clone(),
            fitted_slope: fit_log_slope(&traj.times, &measured, strip),
            theoretical_slope: fit_log_slope(&traj.times, &envelope, strip),
            dominance_constant: dominance_constant(&measured, &envelope),
            notes: format!("profile {}", profile.id()),
        });
    }
    Ok(out)
}

/// Bisect for the largest data scale with observed contraction: scales the
/// given unit data by `a`, runs the iteration, and brackets the breakdown.
/// Returns the largest scale that still contracted.
#[allow(clippy::too_many_arguments)]
pub fn calibrate_epsilon(
    f0: &CoefficientField,
    f1: &CoefficientField,
    norms: &DataNorms,
    config: &FixedPointConfig,
    profile: WeightProfile,
    params: &ModelParams,
    plan: &TransformPlan,
    bisection_steps: usize,
) -> Result<f64> {
    let try_scale = |a: f64| -> Result<bool> {
        let sf0 = f0.scale(Complex64::new(a, 0.0));
        let sf1 = f1.scale(Complex64::new(a, 0.0));
        let snorms = DataNorms {
            l1: a * norms.l1,
            l2: a * norms.l2,
            h_alpha_seminorm: a * norms.h_alpha_seminorm,
        };
        let cfg = FixedPointConfig {
            epsilon: profile.data_size(&snorms) * (1.0 + 1e-9) + f64::MIN_POSITIVE,
            ..*config
        };
        match picard_iterate(&sf0, &sf1, &snorms, &cfg, profile, params, plan) {
            Ok((_, report)) => Ok(report.converged),
            Err(Error::NonContraction { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let mut lo = 1.0_f64;
    if !try_scale(lo)? {
        // shrink until the iteration contracts
        let mut found = false;
        for _ in 0..60 {
            lo *= 0.5;
            if try_scale(lo)? {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::NonContraction {
                epsilon: lo * profile.data_size(norms),
                run: DIVERGENCE_RUN,
            });
        }
    }
    let mut hi = lo;
    for _ in 0..60 {
        hi *= 2.0;
        if !try_scale(hi)? {
            break;
        }
        lo = hi;
    }
    for _ in 0..bisection_steps {
        let mid = 0.5 * (lo + hi);
        if try_scale(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo * profile.data_size(norms))
}
