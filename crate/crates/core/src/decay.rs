//! Norms of evolved fields and quantitative comparison against theoretical
//! decay envelopes, including the low/high frequency-zone split.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{CoefficientField, DataNorms};
use crate::fourier::{plancherel_norm, weighted_plancherel_norm};
use crate::hermite::MultiIndex;
use crate::params::ModelParams;
use crate::propagator::evolve_field;

/// Which member of the `(d/dt)^i (-L)^{j/2}` family a nonlinear envelope
/// tracks: `(i,j)` in `{(0,0), (0,alpha), (1,0)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DerivOrder {
    /// `(i,j) = (0,0)`: the solution itself in `L^2`.
    Value,
    /// `(i,j) = (0,alpha)`: the fractional derivative in `L^2`.
    Fractional,
    /// `(i,j) = (1,0)`: the time derivative in `L^2`.
    TimeDerivative,
}

impl DerivOrder {
    pub const ALL: [DerivOrder; 3] = [
        DerivOrder::Value,
        DerivOrder::Fractional,
        DerivOrder::TimeDerivative,
    ];

    /// Polynomial decay offset `j/(2 alpha) + i` contributed by the order.
    fn rate_offset(self) -> f64 {
        match self {
            DerivOrder::Value => 0.0,
            DerivOrder::Fractional => 0.5,
            DerivOrder::TimeDerivative => 1.0,
        }
    }

    fn i(self) -> f64 {
        match self {
            DerivOrder::TimeDerivative => 1.0,
            _ => 0.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DerivOrder::Value => "u",
            DerivOrder::Fractional => "frac_u",
            DerivOrder::TimeDerivative => "dt_u",
        }
    }
}

/// The decay envelopes tracked by the suite. Linear kinds split by which
/// data norm feeds the bound (energy-only versus additional `L^1`); the
/// nonlinear kinds carry the derivative order of the estimated quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EnvelopeKind {
    /// `||u||_{L^2} <~ e^{(-b/2 + sqrt(b^2/4 - m)) t} ||data||_{L^2}`.
    L2Mass,
    /// `|u|_{Hdot^alpha} <~ (1+t)^{-1/2} e^{-mt/2b} ||data||_energy`.
    HalphaMass,
    /// `||du/dt||_{L^2} <~ [(1+t)^{-1} + m] e^{-mt/2b} ||data||_energy`.
    DtMass,
    /// `||u||_{L^2} <~ (1+t)^{-Q/4a} e^{-mt/2b} (L^1 + L^2 data)`.
    L2L1,
    /// `|u|_{Hdot^alpha} <~ (1+t)^{-Q/4a - 1/2} e^{-mt/2b} (L^1 + energy)`.
    HalphaL1,
    /// `||du/dt||_{L^2} <~ [(1+t)^{-Q/4a-1} + m (1+t)^{-Q/4a}] e^{-mt/2b} (L^1 + energy)`.
    DtL1,
    /// Semilinear, massless, `L^1 cap L^2` data: rate `-Q/4a - j/2a - i`.
    NonlinL1(DerivOrder),
    /// Semilinear, massless, `L^2`-only data: rate `-j/2a - i`.
    NonlinL2(DerivOrder),
    /// Semilinear with mass: `[(1+t)^{-j/2a - i} + m i] e^{-mt/2b}`.
    NonlinMass(DerivOrder),
}

impl EnvelopeKind {
    pub fn id(self) -> String {
        match self {
            EnvelopeKind::L2Mass => "linear.l2.energy".into(),
            EnvelopeKind::HalphaMass => "linear.halpha.energy".into(),
            EnvelopeKind::DtMass => "linear.dt.energy".into(),
            EnvelopeKind::L2L1 => "linear.l2.l1".into(),
            EnvelopeKind::HalphaL1 => "linear.halpha.l1".into(),
            EnvelopeKind::DtL1 => "linear.dt.l1".into(),
            EnvelopeKind::NonlinL1(d) => format!("nonlinear.l1data.{}", d.label()),
            EnvelopeKind::NonlinL2(d) => format!("nonlinear.l2data.{}", d.label()),
            EnvelopeKind::NonlinMass(d) => format!("nonlinear.mass.{}", d.label()),
        }
    }

    /// All six linear kinds.
    pub const LINEAR: [EnvelopeKind; 6] = [
        EnvelopeKind::L2Mass,
        EnvelopeKind::HalphaMass,
        EnvelopeKind::DtMass,
        EnvelopeKind::L2L1,
        EnvelopeKind::HalphaL1,
        EnvelopeKind::DtL1,
    ];
}

/// Fractional Sobolev seminorm: the Plancherel norm with the multiplier
/// `(|lambda| mu_k)^{alpha/2}` applied per mode.
pub fn sobolev_seminorm(coeff: &CoefficientField, alpha: f64) -> f64 {
    let half = 0.5 * alpha;
    weighted_plancherel_norm(coeff, |lam, mu| (lam * mu).powf(half))
}

/// Inhomogeneous Sobolev norm in the equivalent sum-of-squares form
/// `sqrt(||.||_{L^2}^2 + |.|_{H^alpha}^2)`.
pub fn h_alpha_norm(coeff: &CoefficientField, alpha: f64) -> f64 {
    let l2 = plancherel_norm(coeff);
    let semi = sobolev_seminorm(coeff, alpha);
    (l2 * l2 + semi * semi).sqrt()
}

/// Splitting frequency: modes with `|lambda|` below the threshold decay
/// polynomially from `L^1` data, modes above decay exponentially from `L^2`
/// data.
pub fn zone_threshold(k: &MultiIndex, params: &ModelParams) -> Result<f64> {
    let offset = params.discriminant_offset();
    if offset <= 0.0 {
        return Err(Error::domain(format!(
            "zone_threshold undefined: b^2/4 - m = {offset} must be positive"
        )));
    }
    Ok((0.5 * offset).powf(1.0 / params.alpha) / k.mu())
}

/// Evaluate the envelope named by `kind` at time `t` with constant 1.
pub fn decay_envelope(
    t: f64,
    kind: EnvelopeKind,
    params: &ModelParams,
    norms: &DataNorms,
) -> Result<f64> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::invalid(format!("envelope time must be >= 0, got {t}")));
    }
    let q4a = params.q() / (4.0 * params.alpha);
    let mass_exp = (-params.m * t / (2.0 * params.b)).exp();
    let poly = |rate: f64| (1.0 + t).powf(-rate);
    let v = match kind {
        EnvelopeKind::L2Mass => {
            let rate = -0.5 * params.b + params.discriminant_offset().sqrt();
            (rate * t).exp() * norms.l2
        }
        EnvelopeKind::HalphaMass => poly(0.5) * mass_exp * norms.energy(),
        EnvelopeKind::DtMass => (poly(1.0) + params.m) * mass_exp * norms.energy(),
        EnvelopeKind::L2L1 => poly(q4a) * mass_exp * (norms.l1 + norms.l2),
        EnvelopeKind::HalphaL1 => poly(q4a + 0.5) * mass_exp * (norms.l1 + norms.energy()),
        EnvelopeKind::DtL1 => {
            (poly(q4a + 1.0) + params.m * poly(q4a)) * mass_exp * (norms.l1 + norms.energy())
        }
        EnvelopeKind::NonlinL1(d) => {
            require_massless(kind, params)?;
            poly(q4a + d.rate_offset()) * norms.energy_with_l1()
        }
        EnvelopeKind::NonlinL2(d) => {
            require_massless(kind, params)?;
            poly(d.rate_offset()) * norms.energy()
        }
        EnvelopeKind::NonlinMass(d) => {
            (poly(d.rate_offset()) + params.m * d.i()) * mass_exp * norms.energy()
        }
    };
    Ok(v)
}

fn require_massless(kind: EnvelopeKind, params: &ModelParams) -> Result<()> {
    if params.m != 0.0 {
        return Err(Error::invalid(format!(
            "envelope {} applies to the massless equation, but m = {}",
            kind.id(),
            params.m
        )));
    }
    Ok(())
}

/// Time series of a measured norm against its envelope, with the fitted
/// polynomial rate and the empirical dominance constant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayReport {
    pub kind_id: String,
    pub times: Vec<f64>,
    pub measured: Vec<f64>,
    pub envelope: Vec<f64>,
    /// Log-log slope of `measured * e^{+mt/2b}` against `1+t` over the tail
    /// half of the window.
    pub fitted_slope: f64,
    /// Same fit applied to the envelope itself.
    pub theoretical_slope: f64,
    /// Smallest `C` with `measured <= C * envelope` over the window.
    pub dominance_constant: f64,
    /// Conventions that differ from the literal norms up to constants.
    pub notes: String,
}

/// Least-squares slope of `ln(value * e^{+strip_rate * t})` against
/// `ln(1 + t)` over the tail half of the series. Returns 0 when fewer than
/// two usable points exist.
pub fn fit_log_slope(times: &[f64], values: &[f64], strip_rate: f64) -> f64 {
    let start = times.len() / 2;
    let pts: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .skip(start)
        .filter(|(_, &v)| v > 0.0)
        .map(|(&t, &v)| ((1.0 + t).ln(), v.ln() + strip_rate * t))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return 0.0;
    }
    (n * sxy - sx * sy) / denom
}

/// Smallest constant dominating `measured <= C * envelope` across the
/// window; infinite if the envelope vanishes where the measurement does not.
pub fn dominance_constant(measured: &[f64], envelope: &[f64]) -> f64 {
    let mut sup = 0.0_f64;
    for (&m, &e) in measured.iter().zip(envelope) {
        if e > 0.0 {
            sup = sup.max(m / e);
        } else if m > 0.0 {
            return f64::INFINITY;
        }
    }
    sup
}

/// Evolve the data to each requested time, measure the norm selected by
/// `kind`, evaluate the envelope, fit rates and record the dominance
/// constant.
pub fn measure_decay(
    f0: &CoefficientField,
    f1: &CoefficientField,
    params: &ModelParams,
    norms: &DataNorms,
    times: &[f64],
    kind: EnvelopeKind,
) -> Result<DecayReport> {
    if times.is_empty() {
        return Err(Error::invalid("measure_decay: empty time list"));
    }
    if times.windows(2).any(|w| w[0] > w[1])
        || times.iter().any(|&t| t < 0.0 || !t.is_finite())
    {
        return Err(Error::invalid(
            "measure_decay: times must be nonnegative, finite and nondecreasing",
        ));
    }
    let mut measured = Vec::with_capacity(times.len());
    let mut envelope = Vec::with_capacity(times.len());
    for &t in times {
        let (fu, fdt) = evolve_field(t, f0, f1, params)?;
        measured.push(measured_norm(kind, &fu, &fdt, params.alpha));
        envelope.push(decay_envelope(t, kind, params, norms)?);
    }
    let strip = params.m / (2.0 * params.b);
    let fitted_slope = fit_log_slope(times, &measured, strip);
    let theoretical_slope = fit_log_slope(times, &envelope, strip);
    Ok(DecayReport {
        kind_id: kind.id(),
        times: times.to_vec(),
        measured: measured.clone(),
        envelope: envelope.clone(),
        fitted_slope,
        theoretical_slope,
        dominance_constant: dominance_constant(&measured, &envelope),
        notes: "fractional kinds measure the homogeneous seminorm; envelopes carry constant 1".into(),
    })
}

/// The measured quantity of each kind. The fractional kinds measure the
/// homogeneous seminorm: the `L^2` part of the inhomogeneous norm decays
/// strictly slower than the fractional rates, so only the seminorm satisfies
/// them (the inhomogeneous variant is available as [`h_alpha_norm`]).
fn measured_norm(
    kind: EnvelopeKind,
    fu: &CoefficientField,
    fdt: &CoefficientField,
    alpha: f64,
) -> f64 {
    match kind {
        EnvelopeKind::L2Mass | EnvelopeKind::L2L1 => plancherel_norm(fu),
        EnvelopeKind::HalphaMass | EnvelopeKind::HalphaL1 => sobolev_seminorm(fu, alpha),
        EnvelopeKind::DtMass | EnvelopeKind::DtL1 => plancherel_norm(fdt),
        EnvelopeKind::NonlinL1(d) | EnvelopeKind::NonlinL2(d) | EnvelopeKind::NonlinMass(d) => {
            match d {
                DerivOrder::Value => plancherel_norm(fu),
                DerivOrder::Fractional => sobolev_seminorm(fu, alpha),
                DerivOrder::TimeDerivative => plancherel_norm(fdt),
            }
        }
    }
}

/// Split the squared Plancherel norm into the low-frequency part
/// (`|lambda| < threshold(k)`) and its complement. The parts partition the
/// modes, so they sum to the squared norm exactly.
pub fn zone_split_norm(coeff: &CoefficientField, params: &ModelParams) -> Result<(f64, f64)> {
    let grid = coeff.grid();
    let n = grid.n() as i32;
    let nk = grid.rows().len();
    let nl = grid.cols().len();
    let c = grid.plancherel_constant();
    let thresholds: Vec<f64> = grid
        .rows()
        .iter()
        .map(|k| zone_threshold(k, params))
        .collect::<Result<_>>()?;
    let mut low = 0.0;
    let mut high = 0.0;
    for (li, &lambda) in grid.lambda_nodes().iter().enumerate() {
        let w = grid.lambda_weights()[li] * lambda.abs().powi(n);
        for (ki, &thr) in thresholds.iter().enumerate() {
            let base = (li * nk + ki) * nl;
            let part: f64 = coeff.values()[base..base + nl]
                .iter()
                .map(|z| z.norm_sqr())
                .sum();
            if lambda.abs() < thr {
                low += c * w * part;
            } else {
                high += c * w * part;
            }
        }
    }
    Ok((low, high))
}
