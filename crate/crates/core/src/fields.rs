//! Sampled functions on the physical box and coefficient tensors on the
//! spectral grid.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grids::{PhysicalGrid, SpectralGrid};

/// Storage for a sampled function: either one factor table per axis (the
/// canonical ingestion format) or a dense row-major tensor.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldData {
    /// `f(x_1,..,t) = prod_j g_j(axis_j)`, one table per axis.
    Separable(Vec<Vec<Complex64>>),
    /// Row-major over the axes in grid order (the central axis varies
    /// fastest).
    Dense(Vec<Complex64>),
}

/// A function sampled on a [`PhysicalGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField {
    grid: Arc<PhysicalGrid>,
    data: FieldData,
}

impl PhysicalField {
    pub fn from_dense(grid: Arc<PhysicalGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.total_points() {
            return Err(Error::invalid(format!(
                "dense field carries {} values but the grid has {} points",
                values.len(),
                grid.total_points()
            )));
        }
        Ok(PhysicalField {
            grid,
            data: FieldData::Dense(values),
        })
    }

    pub fn from_factors(grid: Arc<PhysicalGrid>, factors: Vec<Vec<Complex64>>) -> Result<Self> {
        if factors.len() != grid.dim() {
            return Err(Error::invalid(format!(
                "separable field carries {} factors but the grid has {} axes",
                factors.len(),
                grid.dim()
            )));
        }
        for (j, f) in factors.iter().enumerate() {
            if f.len() != grid.counts()[j] {
                return Err(Error::invalid(format!(
                    "factor {j} has {} samples but axis {j} has {} nodes",
                    f.len(),
                    grid.counts()[j]
                )));
            }
        }
        Ok(PhysicalField {
            grid,
            data: FieldData::Separable(factors),
        })
    }

    /// Sample a separable function given one closure per axis.
    pub fn from_axis_fns(
        grid: Arc<PhysicalGrid>,
        fns: &[&dyn Fn(f64) -> Complex64],
    ) -> Result<Self> {
        if fns.len() != grid.dim() {
            return Err(Error::invalid("one axis function per axis required"));
        }
        let factors = fns
            .iter()
            .enumerate()
            .map(|(j, f)| grid.axis_coords(j).into_iter().map(f).collect())
            .collect();
        PhysicalField::from_factors(grid, factors)
    }

    pub fn zero(grid: Arc<PhysicalGrid>) -> Self {
        let factors = grid
            .counts()
            .iter()
            .map(|&c| vec![Complex64::new(0.0, 0.0); c])
            .collect();
        PhysicalField {
            grid,
            data: FieldData::Separable(factors),
        }
    }

    pub fn grid(&self) -> &Arc<PhysicalGrid> {
        &self.grid
    }

    pub fn data(&self) -> &FieldData {
        &self.data
    }

    /// Materialize the dense tensor (row-major, central axis fastest).
    pub fn to_dense(&self) -> Vec<Complex64> {
        match &self.data {
            FieldData::Dense(v) => v.clone(),
            FieldData::Separable(factors) => {
                let mut out = vec![Complex64::new(1.0, 0.0)];
                for f in factors {
                    let mut next = Vec::with_capacity(out.len() * f.len());
                    for &acc in &out {
                        for &v in f {
                            next.push(acc * v);
                        }
                    }
                    out = next;
                }
                out
            }
        }
    }

    /// Riemann-sum `L^2` norm over the box.
    pub fn l2_norm(&self) -> f64 {
        let vol = self.grid.cell_volume();
        match &self.data {
            FieldData::Dense(v) => {
                (v.iter().map(|z| z.norm_sqr()).sum::<f64>() * vol).sqrt()
            }
            FieldData::Separable(factors) => {
                // |f|^2 factorizes; cell volume factorizes with it
                let mut acc = vol;
                for f in factors {
                    acc *= f.iter().map(|z| z.norm_sqr()).sum::<f64>();
                }
                acc.sqrt()
            }
        }
    }

    /// Riemann-sum `L^1` norm over the box.
    pub fn l1_norm(&self) -> f64 {
        let vol = self.grid.cell_volume();
        match &self.data {
            FieldData::Dense(v) => v.iter().map(|z| z.norm()).sum::<f64>() * vol,
            FieldData::Separable(factors) => {
                let mut acc = vol;
                for f in factors {
                    acc *= f.iter().map(|z| z.norm()).sum::<f64>();
                }
                acc
            }
        }
    }

    /// Riemann-sum `L^q` norm over the box.
    pub fn lq_norm(&self, q: f64) -> f64 {
        let vol = self.grid.cell_volume();
        match &self.data {
            FieldData::Dense(v) => {
                (v.iter().map(|z| z.norm().powf(q)).sum::<f64>() * vol).powf(1.0 / q)
            }
            FieldData::Separable(factors) => {
                let mut acc = vol;
                for f in factors {
                    acc *= f.iter().map(|z| z.norm().powf(q)).sum::<f64>();
                }
                acc.powf(1.0 / q)
            }
        }
    }

    /// Largest imaginary magnitude relative to the largest magnitude; used to
    /// detect unusable spectral reconstructions of real data.
    pub fn relative_imag(&self) -> f64 {
        let dense;
        let values = match &self.data {
            FieldData::Dense(v) => v,
            FieldData::Separable(_) => {
                dense = self.to_dense();
                &dense
            }
        };
        let max_abs = values.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
        if max_abs == 0.0 {
            return 0.0;
        }
        let max_im = values.iter().map(|z| z.im.abs()).fold(0.0_f64, f64::max);
        max_im / max_abs
    }
}

/// Riemann-sum `L^2` norm of a sampled function.
pub fn physical_l2_norm(f: &PhysicalField) -> f64 {
    f.l2_norm()
}

/// Riemann-sum `L^1` norm of a sampled function.
pub fn l1_norm(f: &PhysicalField) -> f64 {
    f.l1_norm()
}

/// Matrix coefficients of a group Fourier transform on a [`SpectralGrid`]:
/// a dense tensor indexed by (frequency node, row index k, column index l).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientField {
    grid: Arc<SpectralGrid>,
    values: Vec<Complex64>,
}

impl CoefficientField {
    pub fn zeros(grid: Arc<SpectralGrid>) -> Self {
        let len = grid.tensor_len();
        CoefficientField {
            grid,
            values: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn from_values(grid: Arc<SpectralGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.tensor_len() {
            return Err(Error::invalid(format!(
                "coefficient tensor length {} does not match grid ({})",
                values.len(),
                grid.tensor_len()
            )));
        }
        Ok(CoefficientField { grid, values })
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    #[inline]
    pub fn flat_index(&self, lambda_idx: usize, row: usize, col: usize) -> usize {
        (lambda_idx * self.grid.rows().len() + row) * self.grid.cols().len() + col
    }

    #[inline]
    pub fn get(&self, lambda_idx: usize, row: usize, col: usize) -> Complex64 {
        self.values[self.flat_index(lambda_idx, row, col)]
    }

    #[inline]
    pub fn set(&mut self, lambda_idx: usize, row: usize, col: usize, v: Complex64) {
        let i = self.flat_index(lambda_idx, row, col);
        self.values[i] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn same_layout(&self, other: &CoefficientField) -> bool {
        self.grid.same_mesh(&other.grid)
    }

    pub fn add(&self, other: &CoefficientField) -> Result<CoefficientField> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CoefficientField) -> Result<CoefficientField> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> CoefficientField {
        CoefficientField {
            grid: Arc::clone(&self.grid),
            values: self.values.iter().map(|&v| c * v).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &CoefficientField,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<CoefficientField> {
        if !self.same_layout(other) {
            return Err(Error::invalid(
                "coefficient fields live on different spectral grids",
            ));
        }
        Ok(CoefficientField {
            grid: Arc::clone(&self.grid),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }
}

/// The data norms entering every decay envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataNorms {
    /// `||u0||_{L^1} + ||u1||_{L^1}`.
    pub l1: f64,
    /// Plancherel-side `||u0||_{L^2} + ||u1||_{L^2}`.
    pub l2: f64,
    /// Homogeneous seminorm of the position datum,
    /// `|| (-L)^{alpha/2} u0 ||_{L^2}` on the Fourier side.
    pub h_alpha_seminorm: f64,
}

impl DataNorms {
    pub const ZERO: DataNorms = DataNorms {
        l1: 0.0,
        l2: 0.0,
        h_alpha_seminorm: 0.0,
    };

    /// Energy-space size `||u0||_{H^alpha} + ||u1||_{L^2}` up to the
    /// equivalent sum form.
    pub fn energy(&self) -> f64 {
        self.l2 + self.h_alpha_seminorm
    }

    /// Size with the additional `L^1` ingredient.
    pub fn energy_with_l1(&self) -> f64 {
        self.l1 + self.l2 + self.h_alpha_seminorm
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::SpectralGridSpec;

    fn gaussian_field(width: f64, half: f64, count: usize) -> PhysicalField {
        let grid = Arc::new(PhysicalGrid::cube(1, half, count).unwrap());
        let g = move |x: f64| Complex64::new((-(x * x) / (2.0 * width * width)).exp(), 0.0);
        PhysicalField::from_axis_fns(grid, &[&g, &g, &g]).unwrap()
    }

    #[test]
    fn l2_norm_of_unit_gaussian() {
        // ||e^{-|eta|^2/2}||_{L^2}^2 = pi^{3/2} over R^3
        let f = gaussian_field(1.0, 8.0, 33);
        let expect = std::f64::consts::PI.powf(0.75);
        assert!((f.l2_norm() - expect).abs() < 1e-6, "{}", f.l2_norm());
    }

    #[test]
    fn l1_norm_of_unit_gaussian() {
        let f = gaussian_field(1.0, 8.0, 33);
        let expect = (2.0 * std::f64::consts::PI).powf(1.5);
        assert!((f.l1_norm() - expect).abs() < 1e-6, "{}", f.l1_norm());
    }

    #[test]
    fn constant_field_norms() {
        let grid = Arc::new(PhysicalGrid::cube(1, 1.0, 5).unwrap());
        let one = |_: f64| Complex64::new(1.0, 0.0);
        let f = PhysicalField::from_axis_fns(Arc::clone(&grid), &[&one, &one, &one]).unwrap();
        let vol = grid.volume();
        assert!((f.l2_norm() - vol.sqrt()).abs() < 1e-12);
        assert!((f.l1_norm() - vol).abs() < 1e-12);
        let z = PhysicalField::zero(grid);
        assert_eq!(z.l2_norm(), 0.0);
        assert_eq!(z.l1_norm(), 0.0);
    }

    #[test]
    fn dense_and_separable_agree() {
        let f = gaussian_field(0.9, 4.0, 9);
        let dense =
            PhysicalField::from_dense(Arc::clone(f.grid()), f.to_dense()).unwrap();
        assert!((f.l2_norm() - dense.l2_norm()).abs() < 1e-12);
        assert!((f.l1_norm() - dense.l1_norm()).abs() < 1e-12);
        assert!((f.lq_norm(3.0) - dense.lq_norm(3.0)).abs() < 1e-12);
    }

    #[test]
    fn coefficient_field_linear_ops() {
        let grid = Arc::new(
            SpectralGrid::new(
                1,
                &SpectralGridSpec {
                    max_degree: 2,
                    node_count: 3,
                    ..Default::default()
                },
            )
            .unwrap(),
        );
        let mut a = CoefficientField::zeros(Arc::clone(&grid));
        a.set(0, 1, 2, Complex64::new(2.0, -1.0));
        let b = a.scale(Complex64::new(0.0, 1.0));
        let s = a.add(&b).unwrap();
        assert_eq!(s.get(0, 1, 2), Complex64::new(3.0, 1.0));
        let d = s.sub(&a).unwrap();
        assert_eq!(d.get(0, 1, 2), Complex64::new(1.0, 2.0));
        assert_eq!(d.get(1, 0, 0), Complex64::new(0.0, 0.0));
    }
}
