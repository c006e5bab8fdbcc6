//! Discretization grids: the symmetric central-frequency mesh with Hermite
//! truncation on the spectral side, and the uniform box mesh with Lebesgue
//! cell volume on the physical side.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermite::{enumerate_multi_indices, TruncationSet};
use crate::quadrature::gauss_legendre_rule;

/// Construction parameters for a [`SpectralGrid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralGridSpec {
    /// Hermite truncation degree for rows and columns.
    pub max_degree: usize,
    /// Number of quadrature nodes on the positive half-line (mirrored to the
    /// negative side, so the grid carries `2 * node_count` nodes).
    pub node_count: usize,
    /// Lower edge of the positive frequency window; the excluded
    /// neighborhood of 0 carries vanishing measure weight `|lambda|^n`.
    pub lambda_min: f64,
    /// Upper edge of the frequency window.
    pub lambda_max: f64,
    /// Optional interior split: when set, the positive window is covered by
    /// two Gauss-Legendre panels `[lambda_min, split]` and
    /// `[split, lambda_max]`, which resolves the slow modes that dominate
    /// late-time decay.
    pub lambda_split: Option<f64>,
}

impl Default for SpectralGridSpec {
    fn default() -> Self {
        SpectralGridSpec {
            max_degree: 6,
            node_count: 20,
            lambda_min: 0.01,
            lambda_max: 12.0,
            lambda_split: None,
        }
    }
}

/// Quadrature mesh in the central frequency plus the Hermite truncation sets,
/// with the Plancherel constant attached after calibration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralGrid {
    lambda_nodes: Vec<f64>,
    lambda_weights: Vec<f64>,
    plancherel_constant: f64,
    rows: TruncationSet,
    cols: TruncationSet,
    /// Cached oscillator eigenvalues `2|k| + n` per row index.
    mu_rows: Vec<f64>,
    n: usize,
}

impl SpectralGrid {
    /// Build the grid for group index `n`; the Plancherel constant starts at
    /// 1 and is replaced by calibration.
    pub fn new(n: usize, spec: &SpectralGridSpec) -> Result<Self> {
        if spec.node_count < 2 {
            return Err(Error::config(
                "spectral grid needs at least 2 nodes per half-line",
            ));
        }
        if !(spec.lambda_min > 0.0 && spec.lambda_max > spec.lambda_min) {
            return Err(Error::config(format!(
                "frequency window must satisfy 0 < lambda_min < lambda_max, got [{}, {}]",
                spec.lambda_min, spec.lambda_max
            )));
        }
        let mut pos_nodes = Vec::new();
        let mut pos_weights = Vec::new();
        match spec.lambda_split {
            Some(split) if split > spec.lambda_min && split < spec.lambda_max => {
                let half = spec.node_count / 2;
                let lo = gauss_legendre_rule(spec.node_count - half)?
                    .mapped_to(spec.lambda_min, split);
                let hi = gauss_legendre_rule(half.max(1))?.mapped_to(split, spec.lambda_max);
                pos_nodes.extend(lo.nodes);
                pos_weights.extend(lo.weights);
                pos_nodes.extend(hi.nodes);
                pos_weights.extend(hi.weights);
            }
            Some(split) => {
                return Err(Error::config(format!(
                    "lambda_split {split} falls outside ({}, {})",
                    spec.lambda_min, spec.lambda_max
                )));
            }
            None => {
                let rule = gauss_legendre_rule(spec.node_count)?
                    .mapped_to(spec.lambda_min, spec.lambda_max);
                pos_nodes.extend(rule.nodes);
                pos_weights.extend(rule.weights);
            }
        }
        let mut lambda_nodes = Vec::with_capacity(2 * pos_nodes.len());
        let mut lambda_weights = Vec::with_capacity(2 * pos_nodes.len());
        for i in (0..pos_nodes.len()).rev() {
            lambda_nodes.push(-pos_nodes[i]);
            lambda_weights.push(pos_weights[i]);
        }
        lambda_nodes.extend(&pos_nodes);
        lambda_weights.extend(&pos_weights);

        let rows = enumerate_multi_indices(n, spec.max_degree)?;
        let cols = rows.clone();
        let mu_rows = rows.iter().map(|k| k.mu()).collect();
        Ok(SpectralGrid {
            lambda_nodes,
            lambda_weights,
            plancherel_constant: 1.0,
            rows,
            cols,
            mu_rows,
            n,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda_nodes(&self) -> &[f64] {
        &self.lambda_nodes
    }

    pub fn lambda_weights(&self) -> &[f64] {
        &self.lambda_weights
    }

    pub fn rows(&self) -> &TruncationSet {
        &self.rows
    }

    pub fn cols(&self) -> &TruncationSet {
        &self.cols
    }

    pub fn mu_rows(&self) -> &[f64] {
        &self.mu_rows
    }

    pub fn plancherel_constant(&self) -> f64 {
        self.plancherel_constant
    }

    pub fn with_plancherel_constant(&self, c: f64) -> SpectralGrid {
        let mut g = self.clone();
        g.plancherel_constant = c;
        g
    }

    /// Number of coefficient entries per frequency node.
    pub fn matrix_len(&self) -> usize {
        self.rows.len() * self.cols.len()
    }

    /// Total tensor length of a coefficient field on this grid.
    pub fn tensor_len(&self) -> usize {
        self.lambda_nodes.len() * self.matrix_len()
    }

    /// True when both grids share nodes, weights and truncation (the
    /// Plancherel constant may differ).
    pub fn same_mesh(&self, other: &SpectralGrid) -> bool {
        self.n == other.n
            && self.lambda_nodes == other.lambda_nodes
            && self.lambda_weights == other.lambda_weights
            && self.rows == other.rows
            && self.cols == other.cols
    }
}

/// Uniform tensor mesh over the box `prod_j [-half_width_j, half_width_j]`
/// in `R^{2n+1}`, cell-centered, with Lebesgue cell volume.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalGrid {
    half_widths: Vec<f64>,
    counts: Vec<usize>,
}

impl PhysicalGrid {
    pub fn new(half_widths: Vec<f64>, counts: Vec<usize>) -> Result<Self> {
        if half_widths.len() != counts.len() {
            return Err(Error::config(format!(
                "axis mismatch: {} half-widths vs {} counts",
                half_widths.len(),
                counts.len()
            )));
        }
        if half_widths.len() % 2 != 1 {
            return Err(Error::config(
                "physical grid must have 2n+1 axes (x_1..x_n, y_1..y_n, t)",
            ));
        }
        if half_widths.iter().any(|&h| !(h > 0.0)) {
            return Err(Error::config("half-widths must be positive"));
        }
        if counts.contains(&0) {
            return Err(Error::config("axis counts must be positive"));
        }
        Ok(PhysicalGrid {
            half_widths,
            counts,
        })
    }

    /// Cube helper: same half-width and count on every axis of `R^{2n+1}`.
    pub fn cube(n: usize, half_width: f64, count: usize) -> Result<Self> {
        PhysicalGrid::new(vec![half_width; 2 * n + 1], vec![count; 2 * n + 1])
    }

    pub fn dim(&self) -> usize {
        self.half_widths.len()
    }

    /// Group index implied by the axis count.
    pub fn n(&self) -> usize {
        (self.dim() - 1) / 2
    }

    pub fn half_widths(&self) -> &[f64] {
        &self.half_widths
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn cell_volume(&self) -> f64 {
        self.half_widths
            .iter()
            .zip(&self.counts)
            .map(|(&h, &c)| 2.0 * h / c as f64)
            .product()
    }

    pub fn volume(&self) -> f64 {
        self.half_widths.iter().map(|&h| 2.0 * h).product()
    }

    pub fn total_points(&self) -> usize {
        self.counts.iter().product()
    }

    /// Cell-center coordinates along axis `axis`.
    pub fn axis_coords(&self, axis: usize) -> Vec<f64> {
        let h = self.half_widths[axis];
        let c = self.counts[axis];
        let step = 2.0 * h / c as f64;
        (0..c).map(|i| -h + (i as f64 + 0.5) * step).collect()
    }

    /// Number of (x, y) tuples, i.e. points of the grid with the central
    /// axis removed.
    pub fn xy_points(&self) -> usize {
        self.counts[..self.dim() - 1].iter().product()
    }

    /// Count along the central `t` axis (always the last axis).
    pub fn t_count(&self) -> usize {
        self.counts[self.dim() - 1]
    }
}
