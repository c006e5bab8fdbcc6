//! Field ingestion: a JSON description of the grid plus either separable
//! per-axis factor tables or a flat dense array (row-major over the axes in
//! grid order, central axis fastest). Documented in the repository README.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::PhysicalField;
use crate::grids::PhysicalGrid;

/// On-disk description of a sampled field. Complex samples are `[re, im]`
/// pairs; plain numbers are taken as real.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldFile {
    pub half_widths: Vec<f64>,
    pub counts: Vec<usize>,
    /// One factor table per axis, each of that axis' length.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separable: Option<Vec<Vec<Sample>>>,
    /// Flat row-major samples over the whole grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense: Option<Vec<Sample>>,
}

/// A sample that may be written as a bare real or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sample {
    Real(f64),
    Complex([f64; 2]),
}

impl Sample {
    fn to_complex(self) -> Complex64 {
        match self {
            Sample::Real(re) => Complex64::new(re, 0.0),
            Sample::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

impl FieldFile {
    pub fn into_field(self) -> Result<PhysicalField> {
        let grid = Arc::new(PhysicalGrid::new(self.half_widths, self.counts)?);
        match (self.separable, self.dense) {
            (Some(factors), None) => {
                let factors = factors
                    .into_iter()
                    .map(|f| f.into_iter().map(Sample::to_complex).collect())
                    .collect();
                PhysicalField::from_factors(grid, factors)
            }
            (None, Some(values)) => {
                let values = values.into_iter().map(Sample::to_complex).collect();
                PhysicalField::from_dense(grid, values)
            }
            (Some(_), Some(_)) => Err(Error::Parse(
                "field file carries both 'separable' and 'dense' blocks".to_string(),
            )),
            (None, None) => Err(Error::Parse(
                "field file carries neither 'separable' nor 'dense' samples".to_string(),
            )),
        }
    }
}

/// Read a field file, with parse diagnostics carrying line and column.
pub fn read_field(path: &Path) -> Result<PhysicalField> {
    let text = std::fs::read_to_string(path)?;
    let file: FieldFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.into_field()
}

/// Write a field as a dense field file.
pub fn write_field(path: &Path, field: &PhysicalField) -> Result<()> {
    let file = FieldFile {
        half_widths: field.grid().half_widths().to_vec(),
        counts: field.grid().counts().to_vec(),
        separable: None,
        dense: Some(
            field
                .to_dense()
                .into_iter()
                .map(|z| Sample::Complex([z.re, z.im]))
                .collect(),
        ),
    };
    let text = serde_json::to_string(&file).map_err(|e| Error::Parse(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}
