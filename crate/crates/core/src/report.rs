//! Report emission: CSV series with fixed schemas and JSON summaries with
//! stable field names, written so identical runs produce identical bytes.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decay::DecayReport;
use crate::duhamel::{ConvergenceReport, Trajectory};
use crate::error::Result;
use crate::fourier::plancherel_norm;
use crate::oracle::RatioReport;
use crate::params::ModelParams;

/// Fixed float formatting for CSV cells: round-trippable and byte-stable.
fn cell(v: f64) -> String {
    format!("{v:.17e}")
}

/// `t,measured,envelope,ratio` rows of a decay report.
pub fn write_decay_csv(path: &Path, report: &DecayReport) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    writeln!(out, "t,measured,envelope,ratio")?;
    for i in 0..report.times.len() {
        let ratio = if report.envelope[i] > 0.0 {
            report.measured[i] / report.envelope[i]
        } else {
            0.0
        };
        writeln!(
            out,
            "{},{},{},{}",
            cell(report.times[i]),
            cell(report.measured[i]),
            cell(report.envelope[i]),
            cell(ratio)
        )?;
    }
    Ok(())
}

/// JSON summary of a decay report (series omitted).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecaySummary {
    pub check_id: String,
    pub fitted_slope: f64,
    pub theoretical_slope: f64,
    pub dominance_constant: f64,
    pub notes: String,
}

impl DecaySummary {
    pub fn from_report(report: &DecayReport) -> Self {
        DecaySummary {
            check_id: report.kind_id.clone(),
            fitted_slope: report.fitted_slope,
            theoretical_slope: report.theoretical_slope,
            dominance_constant: report.dominance_constant,
            notes: report.notes.clone(),
        }
    }
}

/// `iter,x_diff,ratio` rows of a convergence report.
pub fn write_convergence_csv(path: &Path, report: &ConvergenceReport) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    writeln!(out, "iter,x_diff,ratio")?;
    for (i, &d) in report.diffs.iter().enumerate() {
        let ratio = if i == 0 { f64::NAN } else { report.ratios[i - 1] };
        writeln!(out, "{},{},{}", i + 1, cell(d), cell(ratio))?;
    }
    Ok(())
}

/// `t,L2,Halpha,dtL2` rows of trajectory norms.
pub fn write_trajectory_csv(path: &Path, traj: &Trajectory, params: &ModelParams) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    writeln!(out, "t,L2,Halpha,dtL2")?;
    for (t, (u, dt)) in traj.times.iter().zip(&traj.states) {
        writeln!(
            out,
            "{},{},{},{}",
            cell(*t),
            cell(plancherel_norm(u)),
            cell(crate::decay::h_alpha_norm(u, params.alpha)),
            cell(plancherel_norm(dt))
        )?;
    }
    Ok(())
}

/// One record of the verification suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub check_id: String,
    pub params: serde_json::Value,
    pub sup_ratio: f64,
    pub verdict: bool,
}

impl VerifyRecord {
    pub fn from_ratio(check_id: impl Into<String>, params: serde_json::Value, r: &RatioReport) -> Self {
        VerifyRecord {
            check_id: check_id.into(),
            params,
            sup_ratio: r.sup_ratio,
            verdict: r.verdict,
        }
    }

    pub fn from_bool(check_id: impl Into<String>, params: serde_json::Value, ok: bool) -> Self {
        VerifyRecord {
            check_id: check_id.into(),
            params,
            sup_ratio: if ok { 1.0 } else { f64::INFINITY },
            verdict: ok,
        }
    }
}

/// Serialize any summary value as stable pretty JSON.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| crate::error::Error::Parse(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_cells_are_stable() {
        assert_eq!(cell(1.0), "1.00000000000000000e0");
        assert_eq!(cell(0.1), cell(0.1));
        let r = DecayReport {
            kind_id: "linear.l2.l1".into(),
            times: vec![0.0, 1.0],
            measured: vec![1.0, 0.5],
            envelope: vec![2.0, 1.0],
            fitted_slope: -1.0,
            theoretical_slope: -1.0,
            dominance_constant: 0.5,
            notes: String::new(),
        };
        let dir = std::env::temp_dir().join("hwave_report_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("decay.csv");
        write_decay_csv(&path, &r).unwrap();
        let a = std::fs::read(&path).unwrap();
        write_decay_csv(&path, &r).unwrap();
        let b = std::fs::read(&path).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("t,measured,envelope,ratio\n"));
        std::fs::remove_file(&path).ok();
    }
}
