use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Equation parameters for the damped mode family
/// `u'' + b u' + (|λ|^α μ_k^α) u + m u = 0` together with the group index.
///
/// The homogeneous dimension `Q = 2n + 2` is derived, not stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Heisenberg index; the underlying manifold is `R^{2n+1}`.
    pub n: usize,
    /// Damping coefficient, strictly positive.
    pub b: f64,
    /// Mass coefficient, nonnegative; the under-damping hypothesis
    /// `b^2 > 4m` is required throughout.
    pub m: f64,
    /// Fractional order of the sub-Laplacian power, strictly positive.
    pub alpha: f64,
}

impl ModelParams {
    pub fn new(n: usize, b: f64, m: f64, alpha: f64) -> Result<Self> {
        let p = ModelParams { n, b, m, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 3 {
            return Err(Error::invalid(format!(
                "group index n must lie in 1..=3, got {}",
                self.n
            )));
        }
        if !(self.b > 0.0) || !self.b.is_finite() {
            return Err(Error::invalid(format!(
                "damping b must be positive and finite, got {}",
                self.b
            )));
        }
        if !(self.m >= 0.0) || !self.m.is_finite() {
            return Err(Error::invalid(format!(
                "mass m must be nonnegative and finite, got {}",
                self.m
            )));
        }
        if self.b * self.b <= 4.0 * self.m {
            return Err(Error::invalid(format!(
                "under-damping hypothesis b^2 > 4m violated: b^2 = {}, 4m = {}",
                self.b * self.b,
                4.0 * self.m
            )));
        }
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::invalid(format!(
                "fractional order alpha must be positive and finite, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Homogeneous dimension `Q = 2n + 2`.
    pub fn homogeneous_dim(&self) -> usize {
        2 * self.n + 2
    }

    /// `Q` as a float, for exponent arithmetic.
    pub fn q(&self) -> f64 {
        self.homogeneous_dim() as f64
    }

    /// The discriminant offset `b^2/4 - m`; positive under the standing
    /// hypothesis.
    pub fn discriminant_offset(&self) -> f64 {
        self.b * self.b / 4.0 - self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_admissible_parameters() {
        let p = ModelParams::new(1, 2.0, 0.5, 1.0).unwrap();
        assert_eq!(p.homogeneous_dim(), 4);
        assert_eq!(p.discriminant_offset(), 0.5);
    }

    #[test]
    fn rejects_overdamped() {
        assert!(ModelParams::new(1, 1.0, 1.0, 1.0).is_err());
        // boundary b^2 = 4m is also rejected
        assert!(ModelParams::new(1, 2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn rejects_bad_scalars() {
        assert!(ModelParams::new(1, 0.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(1, 2.0, -0.1, 1.0).is_err());
        assert!(ModelParams::new(1, 2.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(0, 2.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(4, 2.0, 0.0, 1.0).is_err());
    }
}
