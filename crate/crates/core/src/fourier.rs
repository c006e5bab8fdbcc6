//! Truncated operator-valued group Fourier transform on the Heisenberg
//! group: representation matrix elements against the Hermite basis, forward
//! and inverse transforms, and Plancherel-side norms.
//!
//! The irreducible representations act on `L^2(R^n)` by shift, modulation and
//! a central phase. Matrix elements are overlap integrals evaluated by
//! Gauss-Hermite quadrature centered at the midpoint of the shift, which
//! keeps every intermediate bounded and cancels the `xy/2` phase against the
//! modulation exactly.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{CoefficientField, DataNorms, FieldData, PhysicalField};
use crate::grids::{PhysicalGrid, SpectralGrid, SpectralGridSpec};
use crate::hermite::{hermite_values, MultiIndex};
use crate::params::ModelParams;
use crate::quadrature::gauss_hermite_physicists;

/// Default Gauss-Hermite point count for overlap integrals.
pub const DEFAULT_GH_POINTS: usize = 64;

/// Cap on precomputed plan size (complex entries).
const MAX_PLAN_ENTRIES: usize = 1 << 26;

fn signed_sqrt(lambda: f64) -> f64 {
    lambda.signum() * lambda.abs().sqrt()
}

/// One-dimensional overlap block: `M[a][b] = int e^{i w u} h_b(u + s) h_a(u) du`
/// evaluated with the quadrature centered at `-s/2`. `rule` must carry the
/// exponential-corrected weights.
#[allow(clippy::too_many_arguments)]
fn overlap_block_1d(
    max_deg: usize,
    shift: f64,
    omega: f64,
    rule: &crate::quadrature::QuadratureRule,
    hplus: &mut [f64],
    hminus: &mut [f64],
    out: &mut [Complex64],
) {
    let nd = max_deg + 1;
    out.fill(Complex64::new(0.0, 0.0));
    for (i, (&xi, &wi)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let _ = i;
        hermite_values(max_deg, xi + 0.5 * shift, hplus);
        hermite_values(max_deg, xi - 0.5 * shift, hminus);
        let phase = Complex64::from_polar(wi, omega * xi);
        for a in 0..nd {
            let c = phase * hminus[a];
            let row = &mut out[a * nd..(a + 1) * nd];
            for (b, slot) in row.iter_mut().enumerate() {
                *slot += c * hplus[b];
            }
        }
    }
}

/// Matrix element `(pi_lambda(eta) e_l, e_k)` of the Schroedinger
/// representation against the tensor Hermite basis, by Gauss-Hermite
/// quadrature of the shifted-and-modulated overlap.
///
/// `eta` is `(x_1..x_n, y_1..y_n, t)`.
pub fn rep_matrix_element(
    lambda: f64,
    eta: &[f64],
    k: &MultiIndex,
    l: &MultiIndex,
) -> Result<Complex64> {
    rep_matrix_element_with(lambda, eta, k, l, DEFAULT_GH_POINTS)
}

/// As [`rep_matrix_element`] with an explicit quadrature size.
pub fn rep_matrix_element_with(
    lambda: f64,
    eta: &[f64],
    k: &MultiIndex,
    l: &MultiIndex,
    gh_points: usize,
) -> Result<Complex64> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::invalid(format!(
            "rep_matrix_element: lambda must be finite and nonzero, got {lambda}"
        )));
    }
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::invalid("row and column multi-indices differ in length"));
    }
    if eta.len() != 2 * n + 1 {
        return Err(Error::invalid(format!(
            "eta has {} coordinates, expected {}",
            eta.len(),
            2 * n + 1
        )));
    }
    let rule = gauss_hermite_physicists(gh_points)?;
    let root_abs = lambda.abs().sqrt();
    let root_signed = signed_sqrt(lambda);
    let max_deg = k
        .entries()
        .iter()
        .chain(l.entries())
        .copied()
        .max()
        .unwrap_or(0);
    let nd = max_deg + 1;
    let mut hplus = vec![0.0; nd];
    let mut hminus = vec![0.0; nd];
    let mut block = vec![Complex64::new(0.0, 0.0); nd * nd];
    let t = eta[2 * n];
    let mut acc = Complex64::from_polar(1.0, lambda * t);
    for j in 0..n {
        let shift = root_abs * eta[j];
        let omega = root_signed * eta[n + j];
        overlap_block_1d(max_deg, shift, omega, &rule, &mut hplus, &mut hminus, &mut block);
        acc *= block[k.entries()[j] * nd + l.entries()[j]];
    }
    Ok(acc)
}

/// Precomputed representation tables binding one physical grid to one
/// spectral grid. Building the plan costs one sweep of overlap quadratures;
/// every transform afterwards is a pair of tensor contractions.
#[derive(Debug, Clone)]
pub struct TransformPlan {
    pgrid: Arc<PhysicalGrid>,
    sgrid: Arc<SpectralGrid>,
    tables: Arc<PlanTables>,
}

#[derive(Debug)]
struct PlanTables {
    /// Per frequency node: `nxy * nk * nl` entries of
    /// `e^{-i lambda t} == 1` parts, i.e. the matrix element with the central
    /// phase stripped.
    rep: Vec<Vec<Complex64>>,
    /// Per frequency node: `e^{-i lambda t_j}` over the central axis.
    forward_t_phases: Vec<Vec<Complex64>>,
}

impl TransformPlan {
    pub fn new(
        pgrid: Arc<PhysicalGrid>,
        sgrid: Arc<SpectralGrid>,
        gh_points: usize,
    ) -> Result<Self> {
        let n = sgrid.n();
        if pgrid.n() != n {
            return Err(Error::config(format!(
                "physical grid is over R^{} but the spectral grid expects n = {n}",
                pgrid.dim()
            )));
        }
        let nxy = pgrid.xy_points();
        let nk = sgrid.rows().len();
        let nl = sgrid.cols().len();
        let n_lambda = sgrid.lambda_nodes().len();
        let entries = n_lambda
            .checked_mul(nxy)
            .and_then(|v| v.checked_mul(nk * nl))
            .ok_or_else(|| Error::config("transform plan size overflows".to_string()))?;
        if entries > MAX_PLAN_ENTRIES {
            return Err(Error::config(format!(
                "transform plan would hold {entries} entries; shrink the grids"
            )));
        }
        // the central-axis Riemann sums are pure discrete Fourier sums, so
        // the frequency window must sit below the axis' sampling limit or
        // every coefficient beyond it is an alias artifact
        let t_axis = pgrid.dim() - 1;
        let nyquist = std::f64::consts::PI * pgrid.counts()[t_axis] as f64
            / (2.0 * pgrid.half_widths()[t_axis]);
        let lambda_top = sgrid
            .lambda_nodes()
            .last()
            .copied()
            .unwrap_or(0.0)
            .abs();
        if lambda_top >= nyquist {
            return Err(Error::config(format!(
                "central axis too coarse: sampling limit {nyquist:.3} does not cover                  the frequency window (top node {lambda_top:.3}); raise the last axis                  count or shrink lambda_max"
            )));
        }
        let rule = gauss_hermite_physicists(gh_points)?;
        let max_deg = sgrid.rows().max_degree().max(sgrid.cols().max_degree());
        let nd = max_deg + 1;

        let t_coords = pgrid.axis_coords(pgrid.dim() - 1);
        let axis_coords: Vec<Vec<f64>> = (0..2 * n).map(|j| pgrid.axis_coords(j)).collect();

        let mut rep = Vec::with_capacity(n_lambda);
        let mut forward_t_phases = Vec::with_capacity(n_lambda);
        let mut hplus = vec![0.0; nd];
        let mut hminus = vec![0.0; nd];
        let mut block = vec![Complex64::new(0.0, 0.0); nd * nd];

        for &lambda in sgrid.lambda_nodes() {
            let root_abs = lambda.abs().sqrt();
            let root_signed = signed_sqrt(lambda);

            // 1-D blocks per axis pair (x_j, y_j) and coordinate pair
            let mut blocks_1d: Vec<Vec<Complex64>> = Vec::with_capacity(n);
            for j in 0..n {
                let xs = &axis_coords[j];
                let ys = &axis_coords[n + j];
                let mut table =
                    vec![Complex64::new(0.0, 0.0); xs.len() * ys.len() * nd * nd];
                for (ix, &x) in xs.iter().enumerate() {
                    for (iy, &y) in ys.iter().enumerate() {
                        let base = (ix * ys.len() + iy) * nd * nd;
                        overlap_block_1d(
                            max_deg,
                            root_abs * x,
                            root_signed * y,
                            &rule,
                            &mut hplus,
                            &mut hminus,
                            &mut block,
                        );
                        table[base..base + nd * nd].copy_from_slice(&block);
                    }
                }
                blocks_1d.push(table);
            }

            // assemble the tensor-product matrix per xy point
            let mut lam_table = vec![Complex64::new(0.0, 0.0); nxy * nk * nl];
            let xy_counts: Vec<usize> = (0..2 * n).map(|j| pgrid.counts()[j]).collect();
            let mut coords = vec![0usize; 2 * n];
            for xy in 0..nxy {
                // decode row-major xy index
                let mut rem = xy;
                for j in (0..2 * n).rev() {
                    coords[j] = rem % xy_counts[j];
                    rem /= xy_counts[j];
                }
                let dst = &mut lam_table[xy * nk * nl..(xy + 1) * nk * nl];
                for (ki, kidx) in sgrid.rows().iter().enumerate() {
                    for (li, lidx) in sgrid.cols().iter().enumerate() {
                        let mut v = Complex64::new(1.0, 0.0);
                        for j in 0..n {
                            let ix = coords[j];
                            let iy = coords[n + j];
                            let ys_len = xy_counts[n + j];
                            let base = (ix * ys_len + iy) * nd * nd;
                            v *= blocks_1d[j]
                                [base + kidx.entries()[j] * nd + lidx.entries()[j]];
                        }
                        dst[ki * nl + li] = v;
                    }
                }
            }
            rep.push(lam_table);
            forward_t_phases.push(
                t_coords
                    .iter()
                    .map(|&t| Complex64::from_polar(1.0, -lambda * t))
                    .collect(),
            );
        }

        Ok(TransformPlan {
            pgrid,
            sgrid,
            tables: Arc::new(PlanTables {
                rep,
                forward_t_phases,
            }),
        })
    }

    pub fn physical_grid(&self) -> &Arc<PhysicalGrid> {
        &self.pgrid
    }

    pub fn spectral_grid(&self) -> &Arc<SpectralGrid> {
        &self.sgrid
    }

    /// Rebind the plan to a grid with the same mesh (typically the calibrated
    /// copy); the tables are shared, not recomputed.
    pub fn with_spectral_grid(&self, sgrid: Arc<SpectralGrid>) -> Result<TransformPlan> {
        if !self.sgrid.same_mesh(&sgrid) {
            return Err(Error::config(
                "cannot rebind plan: spectral meshes differ".to_string(),
            ));
        }
        Ok(TransformPlan {
            pgrid: Arc::clone(&self.pgrid),
            sgrid,
            tables: Arc::clone(&self.tables),
        })
    }

    /// Forward transform: Riemann sum of `f` against the adjoint
    /// representation, `F[lambda, k, l] = int f (pi_lambda^* e_k, e_l)`.
    pub fn forward(&self, f: &PhysicalField) -> Result<CoefficientField> {
        if !Arc::ptr_eq(f.grid(), &self.pgrid) && f.grid().as_ref() != self.pgrid.as_ref() {
            return Err(Error::invalid(
                "field lives on a different grid than the plan",
            ));
        }
        if self.pgrid.counts().iter().any(|&c| c < 4) {
            return Err(Error::config(
                "forward transform needs at least 4 nodes per axis".to_string(),
            ));
        }
        let nxy = self.pgrid.xy_points();
        let nt = self.pgrid.t_count();
        let nk = self.sgrid.rows().len();
        let nl = self.sgrid.cols().len();
        let vol = self.pgrid.cell_volume();
        let mut out = CoefficientField::zeros(Arc::clone(&self.sgrid));

        // the xy-dependent part of a separable field does not change with
        // lambda; precompute it once
        let sep = match f.data() {
            FieldData::Separable(factors) => {
                let mut xyprod = vec![Complex64::new(1.0, 0.0)];
                for fac in &factors[..factors.len() - 1] {
                    let mut next = Vec::with_capacity(xyprod.len() * fac.len());
                    for &acc in &xyprod {
                        for &v in fac {
                            next.push(acc * v);
                        }
                    }
                    xyprod = next;
                }
                Some((xyprod, factors.last().unwrap().clone()))
            }
            FieldData::Dense(_) => None,
        };
        let dense: Option<&[Complex64]> = match f.data() {
            FieldData::Dense(v) => Some(v),
            FieldData::Separable(_) => None,
        };

        let mut s_buf = vec![Complex64::new(0.0, 0.0); nxy];
        for (li, _lambda) in self.sgrid.lambda_nodes().iter().enumerate() {
            let phases = &self.tables.forward_t_phases[li];
            match (&sep, dense) {
                (Some((xyprod, tfactor)), _) => {
                    let tsum: Complex64 = tfactor
                        .iter()
                        .zip(phases)
                        .map(|(&g, &p)| g * p)
                        .sum();
                    for (s, &xp) in s_buf.iter_mut().zip(xyprod) {
                        *s = xp * tsum;
                    }
                }
                (None, Some(values)) => {
                    for (xy, s) in s_buf.iter_mut().enumerate() {
                        let chunk = &values[xy * nt..(xy + 1) * nt];
                        *s = chunk
                            .iter()
                            .zip(phases)
                            .map(|(&v, &p)| v * p)
                            .sum();
                    }
                }
                (None, None) => unreachable!(),
            }
            let table = &self.tables.rep[li];
            let dst =
                &mut out.values_mut()[li * nk * nl..(li + 1) * nk * nl];
            for (xy, &s) in s_buf.iter().enumerate() {
                let src = &table[xy * nk * nl..(xy + 1) * nk * nl];
                for (d, &r) in dst.iter_mut().zip(src) {
                    *d += s * r.conj();
                }
            }
            for d in dst.iter_mut() {
                *d *= vol;
            }
        }
        Ok(out)
    }

    /// Inverse transform onto the plan's physical grid: the truncated trace
    /// `sum_lambda w c_n |lambda|^n Tr[pi_lambda(eta) F(lambda)]` at every
    /// grid point, returned dense.
    pub fn inverse(&self, coeff: &CoefficientField) -> Result<PhysicalField> {
        if !coeff.grid().same_mesh(&self.sgrid) {
            return Err(Error::invalid(
                "coefficient field lives on a different spectral grid than the plan",
            ));
        }
        let n = self.sgrid.n() as i32;
        let nxy = self.pgrid.xy_points();
        let nt = self.pgrid.t_count();
        let nk = self.sgrid.rows().len();
        let nl = self.sgrid.cols().len();
        let c_n = self.sgrid.plancherel_constant();
        let t_coords = self.pgrid.axis_coords(self.pgrid.dim() - 1);
        let mut values = vec![Complex64::new(0.0, 0.0); nxy * nt];
        let mut b_buf = vec![Complex64::new(0.0, 0.0); nxy];
        for (li, &lambda) in self.sgrid.lambda_nodes().iter().enumerate() {
            let table = &self.tables.rep[li];
            let fslice = &coeff.values()[li * nk * nl..(li + 1) * nk * nl];
            for (xy, b) in b_buf.iter_mut().enumerate() {
                let src = &table[xy * nk * nl..(xy + 1) * nk * nl];
                *b = src.iter().zip(fslice).map(|(&r, &f)| r * f).sum();
            }
            let scale = c_n * self.sgrid.lambda_weights()[li] * lambda.abs().powi(n);
            for (ti, &t) in t_coords.iter().enumerate() {
                let phase = Complex64::from_polar(scale, lambda * t);
                for (xy, &b) in b_buf.iter().enumerate() {
                    values[xy * nt + ti] += phase * b;
                }
            }
        }
        PhysicalField::from_dense(Arc::clone(&self.pgrid), values)
    }
}

/// One-shot forward transform; builds a throwaway plan. Prefer holding a
/// [`TransformPlan`] when transforming repeatedly on the same grids.
pub fn forward_transform(
    f: &PhysicalField,
    sgrid: &Arc<SpectralGrid>,
) -> Result<CoefficientField> {
    TransformPlan::new(Arc::clone(f.grid()), Arc::clone(sgrid), DEFAULT_GH_POINTS)?.forward(f)
}

/// Pointwise inverse transform at `eta`, plan-free.
pub fn inverse_transform(coeff: &CoefficientField, eta: &[f64]) -> Result<Complex64> {
    let sgrid = coeff.grid();
    let n = sgrid.n();
    if eta.len() != 2 * n + 1 {
        return Err(Error::invalid(format!(
            "eta has {} coordinates, expected {}",
            eta.len(),
            2 * n + 1
        )));
    }
    let rule = gauss_hermite_physicists(DEFAULT_GH_POINTS)?;
    let max_deg = sgrid.rows().max_degree().max(sgrid.cols().max_degree());
    let nd = max_deg + 1;
    let nk = sgrid.rows().len();
    let nl = sgrid.cols().len();
    let c_n = sgrid.plancherel_constant();
    let t = eta[2 * n];
    let mut hplus = vec![0.0; nd];
    let mut hminus = vec![0.0; nd];
    let mut block = vec![Complex64::new(0.0, 0.0); nd * nd];
    let mut acc = Complex64::new(0.0, 0.0);
    for (li, &lambda) in sgrid.lambda_nodes().iter().enumerate() {
        let root_abs = lambda.abs().sqrt();
        let root_signed = signed_sqrt(lambda);
        let mut blocks_1d: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        for j in 0..n {
            overlap_block_1d(
                max_deg,
                root_abs * eta[j],
                root_signed * eta[n + j],
                &rule,
                &mut hplus,
                &mut hminus,
                &mut block,
            );
            blocks_1d.push(block.clone());
        }
        let fslice = &coeff.values()[li * nk * nl..(li + 1) * nk * nl];
        let mut tr = Complex64::new(0.0, 0.0);
        for (ki, kidx) in sgrid.rows().iter().enumerate() {
            for (lidx_i, lidx) in sgrid.cols().iter().enumerate() {
                let mut rep = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    rep *= blocks_1d[j][kidx.entries()[j] * nd + lidx.entries()[j]];
                }
                tr += rep * fslice[ki * nl + lidx_i];
            }
        }
        let scale = sgrid.lambda_weights()[li] * lambda.abs().powi(n as i32);
        acc += Complex64::from_polar(c_n * scale, lambda * t) * tr;
    }
    Ok(acc)
}

/// Plancherel-side `L^2` norm of a coefficient field.
pub fn plancherel_norm(coeff: &CoefficientField) -> f64 {
    weighted_plancherel_norm(coeff, |_, _| 1.0)
}

/// Plancherel norm with an entrywise multiplier `m(|lambda|, mu_k)` applied
/// before squaring.
pub fn weighted_plancherel_norm(
    coeff: &CoefficientField,
    multiplier: impl Fn(f64, f64) -> f64,
) -> f64 {
    let sgrid = coeff.grid();
    let n = sgrid.n() as i32;
    let nk = sgrid.rows().len();
    let nl = sgrid.cols().len();
    let mut acc = 0.0;
    for (li, &lambda) in sgrid.lambda_nodes().iter().enumerate() {
        let w = sgrid.lambda_weights()[li] * lambda.abs().powi(n);
        let mut lam_acc = 0.0;
        for (ki, &mu) in sgrid.mu_rows().iter().enumerate() {
            let m = multiplier(lambda.abs(), mu);
            let m2 = m * m;
            let base = (li * nk + ki) * nl;
            let row = &coeff.values()[base..base + nl];
            lam_acc += m2 * row.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        acc += w * lam_acc;
    }
    (sgrid.plancherel_constant() * acc).sqrt()
}

/// Data norms of a Cauchy pair: `L^1` on the physical side, `L^2` and the
/// fractional seminorm on the Plancherel side.
pub fn data_norms(
    u0: &PhysicalField,
    u1: &PhysicalField,
    f0: &CoefficientField,
    f1: &CoefficientField,
    params: &ModelParams,
) -> Result<DataNorms> {
    if !f0.same_layout(f1) {
        return Err(Error::invalid(
            "data coefficient fields live on different spectral grids",
        ));
    }
    if u0.grid().as_ref() != u1.grid().as_ref() {
        return Err(Error::invalid("data fields live on different physical grids"));
    }
    let half_alpha = 0.5 * params.alpha;
    Ok(DataNorms {
        l1: u0.l1_norm() + u1.l1_norm(),
        l2: plancherel_norm(f0) + plancherel_norm(f1),
        h_alpha_seminorm: weighted_plancherel_norm(f0, |lam, mu| (lam * mu).powf(half_alpha)),
    })
}

/// Result of Plancherel-constant calibration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CalibrationReport {
    /// Fitted constant.
    pub c_n: f64,
    /// Relative norm mismatch per calibration member after fitting.
    pub residuals: Vec<f64>,
}

/// Least-squares fit of the Plancherel constant on a calibration family:
/// returns the calibrated grid (same mesh, constant replaced) and the
/// per-member residuals.
pub fn calibrate_plancherel(
    sgrid: &Arc<SpectralGrid>,
    plan: &TransformPlan,
    family: &[PhysicalField],
) -> Result<(Arc<SpectralGrid>, CalibrationReport)> {
    if family.is_empty() {
        return Err(Error::invalid("calibration family is empty"));
    }
    let base = sgrid.with_plancherel_constant(1.0);
    let base = Arc::new(base);
    let plan1 = plan.with_spectral_grid(Arc::clone(&base))?;
    let mut p = Vec::with_capacity(family.len());
    let mut l = Vec::with_capacity(family.len());
    for f in family {
        let coeff = plan1.forward(f)?;
        let pl = plancherel_norm(&coeff);
        p.push(pl * pl);
        let ln = f.l2_norm();
        l.push(ln * ln);
    }
    let num: f64 = p.iter().zip(&l).map(|(&a, &b)| a * b).sum();
    let den: f64 = p.iter().map(|&a| a * a).sum();
    if den == 0.0 {
        return Err(Error::invalid(
            "calibration family has vanishing spectral content",
        ));
    }
    let c = num / den;
    let residuals = p
        .iter()
        .zip(&l)
        .map(|(&pi, &li)| {
            if li == 0.0 {
                0.0
            } else {
                ((c * pi).sqrt() - li.sqrt()).abs() / li.sqrt()
            }
        })
        .collect();
    let calibrated = Arc::new(sgrid.with_plancherel_constant(c));
    Ok((calibrated, CalibrationReport { c_n: c, residuals }))
}

/// Convenience: build grid + plan, calibrate on the family, return the
/// calibrated pieces.
pub fn calibrated_setup(
    n: usize,
    sspec: &SpectralGridSpec,
    pgrid: Arc<PhysicalGrid>,
    family: &[PhysicalField],
    gh_points: usize,
) -> Result<(Arc<SpectralGrid>, TransformPlan, CalibrationReport)> {
    let grid = Arc::new(SpectralGrid::new(n, sspec)?);
    let plan = TransformPlan::new(pgrid, Arc::clone(&grid), gh_points)?;
    let (calibrated, report) = calibrate_plancherel(&grid, &plan, family)?;
    let plan = plan.with_spectral_grid(Arc::clone(&calibrated))?;
    Ok((calibrated, plan, report))
}
