//! Exact Fourier-side evolution of the linear damped mode family
//! `u'' + b u' + (s + m) u = 0`, `s = |lambda|^alpha mu_k^alpha`: the two
//! fundamental multipliers in their hyperbolic / degenerate / oscillatory
//! forms, the solution and time-derivative formulas, and the fractional
//! symbol itself.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::CoefficientField;
use crate::hermite::MultiIndex;
use crate::params::ModelParams;

/// The spectral value `s = |lambda|^alpha mu_k^alpha` of one mode.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ModeFrequency(pub f64);

impl ModeFrequency {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Which branch of the characteristic roots a mode falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `s < b^2/4 - m`: two real roots.
    Hyperbolic,
    /// `s = b^2/4 - m` within tolerance: double root.
    Degenerate,
    /// `s > b^2/4 - m`: complex pair.
    Oscillatory,
}

/// Relative half-width of the degenerate band around `s = b^2/4 - m`.
const DEGENERATE_TOL: f64 = 1e-10;
/// Below this argument the `sinh(x)/x`-type quotients switch to series.
const SMALL_ARG: f64 = 1e-4;

/// Fractional sub-Laplacian symbol `|lambda|^alpha (2|k| + n)^alpha`.
pub fn fractional_symbol(
    lambda: f64,
    k: &MultiIndex,
    params: &ModelParams,
) -> Result<ModeFrequency> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::invalid(format!(
            "fractional_symbol: lambda must be finite and nonzero, got {lambda}"
        )));
    }
    if k.dim() != params.n {
        return Err(Error::invalid(format!(
            "fractional_symbol: multi-index length {} does not match n = {}",
            k.dim(),
            params.n
        )));
    }
    Ok(ModeFrequency(
        (lambda.abs() * k.mu()).powf(params.alpha),
    ))
}

/// Discriminant `d = b^2/4 - m - s`, the quantity whose sign selects the
/// regime.
fn discriminant(s: ModeFrequency, params: &ModelParams) -> f64 {
    params.discriminant_offset() - s.value()
}

/// Classify a mode, treating a relative band of width [`DEGENERATE_TOL`]
/// around the double root as degenerate.
pub fn classify(s: ModeFrequency, params: &ModelParams) -> Regime {
    let d = discriminant(s, params);
    let scale = params.b * params.b / 4.0 + 1.0;
    if d.abs() < DEGENERATE_TOL * scale {
        Regime::Degenerate
    } else if d > 0.0 {
        Regime::Hyperbolic
    } else {
        Regime::Oscillatory
    }
}

/// Characteristic roots of the mode ODE.
pub fn char_roots(s: ModeFrequency, params: &ModelParams) -> (Complex64, Complex64) {
    let half_b = 0.5 * params.b;
    match classify(s, params) {
        Regime::Hyperbolic => {
            let g = discriminant(s, params).sqrt();
            (
                Complex64::new(-half_b + g, 0.0),
                Complex64::new(-half_b - g, 0.0),
            )
        }
        Regime::Degenerate => (
            Complex64::new(-half_b, 0.0),
            Complex64::new(-half_b, 0.0),
        ),
        Regime::Oscillatory => {
            let w = (-discriminant(s, params)).sqrt();
            (
                Complex64::new(-half_b, w),
                Complex64::new(-half_b, -w),
            )
        }
    }
}

/// First fundamental multiplier: `cosh(sqrt(d) t)`, `1`, or `cos(sqrt(-d) t)`
/// by regime. Plain (undamped) form; meant for moderate arguments.
pub fn a0(t: f64, s: ModeFrequency, params: &ModelParams) -> f64 {
    let d = discriminant(s, params);
    match classify(s, params) {
        Regime::Hyperbolic => (d.sqrt() * t).cosh(),
        Regime::Degenerate => 1.0,
        Regime::Oscillatory => ((-d).sqrt() * t).cos(),
    }
}

/// Second fundamental multiplier: `sinh(sqrt(d) t)/sqrt(d)`, `t`, or
/// `sin(sqrt(-d) t)/sqrt(-d)` by regime, with series evaluation near the
/// degenerate point for continuity.
pub fn a1(t: f64, s: ModeFrequency, params: &ModelParams) -> f64 {
    let d = discriminant(s, params);
    match classify(s, params) {
        Regime::Hyperbolic => {
            let g = d.sqrt();
            let x = g * t;
            if x.abs() < SMALL_ARG {
                t * (1.0 + x * x / 6.0)
            } else {
                x.sinh() / g
            }
        }
        Regime::Degenerate => t,
        Regime::Oscillatory => {
            let w = (-d).sqrt();
            let x = w * t;
            if x.abs() < SMALL_ARG {
                t * (1.0 - x * x / 6.0)
            } else {
                x.sin() / w
            }
        }
    }
}

/// Damped product `e^{-bt/2} A0(t)`, evaluated without ever forming a large
/// hyperbolic cosine: under `b^2 > 4m` both exponents `(-b/2 +- sqrt(d)) t`
/// are nonpositive.
pub fn damped_a0(t: f64, s: ModeFrequency, params: &ModelParams) -> f64 {
    let half_b = 0.5 * params.b;
    let d = discriminant(s, params);
    match classify(s, params) {
        Regime::Hyperbolic => {
            let g = d.sqrt();
            0.5 * (((-half_b + g) * t).exp() + ((-half_b - g) * t).exp())
        }
        Regime::Degenerate => (-half_b * t).exp(),
        Regime::Oscillatory => (-half_b * t).exp() * ((-d).sqrt() * t).cos(),
    }
}

/// Damped product `e^{-bt/2} A1(t)`, overflow-safe in the same way.
pub fn damped_a1(t: f64, s: ModeFrequency, params: &ModelParams) -> f64 {
    let half_b = 0.5 * params.b;
    let d = discriminant(s, params);
    match classify(s, params) {
        Regime::Hyperbolic => {
            let g = d.sqrt();
            let x = g * t;
            if x.abs() < SMALL_ARG {
                (-half_b * t).exp() * t * (1.0 + x * x / 6.0)
            } else {
                0.5 * (((-half_b + g) * t).exp() - ((-half_b - g) * t).exp()) / g
            }
        }
        Regime::Degenerate => (-half_b * t).exp() * t,
        Regime::Oscillatory => {
            let w = (-d).sqrt();
            let x = w * t;
            let quotient = if x.abs() < SMALL_ARG {
                t * (1.0 - x * x / 6.0)
            } else {
                x.sin() / w
            };
            (-half_b * t).exp() * quotient
        }
    }
}

/// Solution formula for one mode:
/// `u(t) = e^{-bt/2} A0 u0 + e^{-bt/2} A1 (b/2 u0 + u1)`.
pub fn evolve_coefficient(
    t: f64,
    u0: Complex64,
    u1: Complex64,
    s: ModeFrequency,
    params: &ModelParams,
) -> Complex64 {
    let da0 = damped_a0(t, s, params);
    let da1 = damped_a1(t, s, params);
    u0 * da0 + (u0 * (0.5 * params.b) + u1) * da1
}

/// Time derivative of the solution formula:
/// `u'(t) = e^{-bt/2} A0 u1 - e^{-bt/2} A1 (b/2 u1 + (s + m) u0)`.
pub fn evolve_time_derivative(
    t: f64,
    u0: Complex64,
    u1: Complex64,
    s: ModeFrequency,
    params: &ModelParams,
) -> Complex64 {
    let da0 = damped_a0(t, s, params);
    let da1 = damped_a1(t, s, params);
    u1 * da0 - (u1 * (0.5 * params.b) + u0 * (s.value() + params.m)) * da1
}

/// Evolve a coefficient pair fieldwise; the multiplier depends on
/// `(lambda, k)` only, the column index rides along.
pub fn evolve_field(
    t: f64,
    f0: &CoefficientField,
    f1: &CoefficientField,
    params: &ModelParams,
) -> Result<(CoefficientField, CoefficientField)> {
    if !f0.same_layout(f1) {
        return Err(Error::invalid(
            "evolve_field: coefficient fields live on different spectral grids",
        ));
    }
    if t < 0.0 || !t.is_finite() {
        return Err(Error::invalid(format!(
            "evolve_field: time must be finite and nonnegative, got {t}"
        )));
    }
    let mut out0 = CoefficientField::zeros(std::sync::Arc::clone(f0.grid()));
    let mut out1 = CoefficientField::zeros(std::sync::Arc::clone(f0.grid()));
    let sgrid = f0.grid();
    let nk = sgrid.rows().len();
    let nl = sgrid.cols().len();
    let alpha = params.alpha;
    for (li, &lambda) in sgrid.lambda_nodes().iter().enumerate() {
        for (ki, &mu) in sgrid.mu_rows().iter().enumerate() {
            let s = ModeFrequency((lambda.abs() * mu).powf(alpha));
            let da0 = damped_a0(t, s, params);
            let da1 = damped_a1(t, s, params);
            let sm = s.value() + params.m;
            let base = (li * nk + ki) * nl;
            for col in 0..nl {
                let u0 = f0.values()[base + col];
                let u1 = f1.values()[base + col];
                out0.values_mut()[base + col] = u0 * da0 + (u0 * (0.5 * params.b) + u1) * da1;
                out1.values_mut()[base + col] = u1 * da0 - (u1 * (0.5 * params.b) + u0 * sm) * da1;
            }
        }
    }
    Ok((out0, out1))
}

/// Absolute residual of the mode ODE at time `t`, with fourth-order central
/// differences of the exact solution formula at step `h`.
pub fn ode_residual(
    t: f64,
    u0: Complex64,
    u1: Complex64,
    s: ModeFrequency,
    params: &ModelParams,
    h: f64,
) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid("ode_residual: t must be positive"));
    }
    if !(h > 0.0) || t - 2.0 * h <= 0.0 {
        return Err(Error::invalid(
            "ode_residual: step must satisfy 0 < 2h < t",
        ));
    }
    let f = |tt: f64| evolve_coefficient(tt, u0, u1, s, params);
    let fm2 = f(t - 2.0 * h);
    let fm1 = f(t - h);
    let f0 = f(t);
    let fp1 = f(t + h);
    let fp2 = f(t + 2.0 * h);
    let d1 = (fm2 - fm1 * 8.0 + fp1 * 8.0 - fp2) / (12.0 * h);
    let d2 = (-fm2 + fm1 * 16.0 - f0 * 30.0 + fp1 * 16.0 - fp2) / (12.0 * h * h);
    let residual = d2 + d1 * params.b + f0 * (s.value() + params.m);
    Ok(residual.norm())
}
