//! Quadrature rules: Gauss-Hermite, Gauss-Legendre, composite Simpson on
//! uniform nodes, and adaptive quadrature with algebraic endpoint grading.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermite::hermite_values;

/// Nodes and positive weights of a one-dimensional quadrature rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Affine image of the rule on `[a, b]`; valid for rules defined on
    /// `[-1, 1]` with respect to `dx` (Gauss-Legendre).
    pub fn mapped_to(&self, a: f64, b: f64) -> QuadratureRule {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        QuadratureRule {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| w * half).collect(),
        }
    }
}

/// Gauss-Hermite rule: `sum_i w_i p(x_i) = int e^{-x^2} p(x) dx` exactly for
/// polynomials of degree `<= 2 count - 1`.
///
/// Nodes by Newton iteration on the normalized Hermite function (stable at
/// every k since the Gaussian is folded in), weights through the Christoffel
/// function of the orthonormal system.
pub fn gauss_hermite_rule(count: usize) -> Result<QuadratureRule> {
    if !(2..=256).contains(&count) {
        return Err(Error::invalid(format!(
            "gauss_hermite_rule: count must lie in 2..=256, got {count}"
        )));
    }
    let n = count;
    let nf = n as f64;
    let mut nodes = vec![0.0_f64; n];
    let mut buf = vec![0.0_f64; n + 1];

    // positive roots, largest first
    let half = n / 2;
    let mut z = 0.0_f64;
    for i in 0..half {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        // Newton on h_n; h_n'(x) = sqrt(2n) h_{n-1}(x) - x h_n(x)
        for _ in 0..100 {
            hermite_values(n, z, &mut buf);
            let f = buf[n];
            let df = (2.0 * nf).sqrt() * buf[n - 1] - z * f;
            let dz = f / df;
            z -= dz;
            if dz.abs() < 1e-15 * (1.0 + z.abs()) {
                break;
            }
        }
        nodes[i] = z;
    }

    // nodes[0..half] holds the positive roots largest-first
    let mut all = Vec::with_capacity(n);
    for &x in &nodes[..half] {
        all.push(-x);
    }
    if n % 2 == 1 {
        all.push(0.0);
    }
    for &x in nodes[..half].iter().rev() {
        all.push(x);
    }

    // w_i e^{x_i^2} = 1 / sum_{k<n} h_k(x_i)^2 (Christoffel function of the
    // orthonormal functions); multiply back the Gaussian for the raw weight.
    let mut weights = Vec::with_capacity(n);
    for &x in &all {
        hermite_values(n - 1, x, &mut buf);
        let chris: f64 = buf[..n].iter().map(|h| h * h).sum();
        weights.push((-x * x).exp() / chris);
    }
    Ok(QuadratureRule {
        nodes: all,
        weights,
    })
}

/// Gauss-Hermite nodes with the exponential-corrected weights
/// `w_i e^{x_i^2}`, i.e. the rule for plain integrals `int f(x) dx` of
/// Gaussian-decaying integrands. Computed directly from the Christoffel sum,
/// so no large exponentials are ever formed.
pub(crate) fn gauss_hermite_physicists(count: usize) -> Result<QuadratureRule> {
    let raw = gauss_hermite_rule(count)?;
    let mut buf = vec![0.0_f64; count];
    let weights = raw
        .nodes
        .iter()
        .map(|&x| {
            hermite_values(count - 1, x, &mut buf);
            1.0 / buf.iter().map(|h| h * h).sum::<f64>()
        })
        .collect();
    Ok(QuadratureRule {
        nodes: raw.nodes,
        weights,
    })
}

/// Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_rule(count: usize) -> Result<QuadratureRule> {
    if !(1..=512).contains(&count) {
        return Err(Error::invalid(format!(
            "gauss_legendre_rule: count must lie in 1..=512, got {count}"
        )));
    }
    let n = count;
    let nf = n as f64;
    let mut nodes = vec![0.0_f64; n];
    let mut weights = vec![0.0_f64; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0_f64;
            let mut p2 = 0.0_f64;
            for j in 0..n {
                let jf = j as f64;
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Weights of a composite Newton-Cotes rule on `count` uniform nodes with
/// spacing `step`, covering `[0, (count-1) step]`.
///
/// Simpson where the interval count is even; odd interval counts close with a
/// 3/8 block (or a single trapezoid when only two nodes exist).
pub fn uniform_simpson_weights(count: usize, step: f64) -> Vec<f64> {
    let mut w = vec![0.0_f64; count];
    if count < 2 {
        return w;
    }
    if count == 2 {
        w[0] = 0.5 * step;
        w[1] = 0.5 * step;
        return w;
    }
    let intervals = count - 1;
    let simpson_intervals = if intervals % 2 == 0 { intervals } else { intervals - 3 };
    if simpson_intervals > 0 {
        w[0] += step / 3.0;
        w[simpson_intervals] += step / 3.0;
        for (i, wi) in w[1..simpson_intervals].iter_mut().enumerate() {
            *wi += if i % 2 == 0 { 4.0 * step / 3.0 } else { 2.0 * step / 3.0 };
        }
    }
    if intervals % 2 == 1 {
        if intervals == 1 {
            unreachable!("count == 2 handled above");
        }
        let s = simpson_intervals;
        w[s] += 3.0 * step / 8.0;
        w[s + 1] += 9.0 * step / 8.0;
        w[s + 2] += 9.0 * step / 8.0;
        w[s + 3] += 3.0 * step / 8.0;
    }
    w
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn adaptive_simpson<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson_rec<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Integral of `(t - tau)^{-theta} g(tau)` over `[lo, t]` where `g` is smooth
/// up to the endpoint and `theta` in `[0, 1)`.
///
/// Substituting `t - tau = v^r` with `r = 3/(1-theta)` turns the integrand
/// into `r v^2 g(t - v^r)`, an algebraically graded mesh toward `tau = t`
/// strong enough that composite Simpson keeps its accuracy; `panels` uniform
/// panels are used in the transformed variable.
pub fn graded_endpoint_integral<F: FnMut(f64) -> f64>(
    g: &mut F,
    lo: f64,
    t: f64,
    theta: f64,
    panels: usize,
) -> f64 {
    debug_assert!((0.0..1.0).contains(&theta));
    debug_assert!(t >= lo);
    if t <= lo {
        return 0.0;
    }
    let r = if theta == 0.0 { 1.0 } else { 3.0 / (1.0 - theta) };
    let vmax = (t - lo).powf(1.0 / r);
    // int_lo^t (t-tau)^{-theta} g(tau) dtau = r int_0^vmax v^{r(1-theta)-1} g(t - v^r) dv
    let expo = r * (1.0 - theta) - 1.0;
    let count = 2 * panels + 1;
    let step = vmax / (count - 1) as f64;
    let w = uniform_simpson_weights(count, step);
    let mut acc = 0.0;
    for (i, wi) in w.iter().enumerate() {
        let v = step * i as f64;
        let tau = t - v.powf(r);
        // v^expo evaluates to 1 at v = 0 when expo = 0 (no singularity) and
        // to 0 when expo > 0, so the endpoint term is handled uniformly
        acc += wi * v.powf(expo) * g(tau.clamp(lo, t));
    }
    acc * r
}
