//! Numerical tolerances shared by the checks.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Distance of an L-root from its critical circle.
    pub root: f64,
    /// Character orthogonality and unit-sum residuals.
    pub orthogonality: f64,
    /// Coefficientwise spectrum → L-polynomial reconstruction.
    pub reconstruction: f64,
    /// L-polynomial coefficients below this are treated as zero.
    pub coeff_zero: f64,
    /// Monte Carlo gate, in standard errors.
    pub mc_sigmas: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root: 1e-6,
            orthogonality: 1e-10,
            reconstruction: 1e-6,
            coeff_zero: 1e-6,
            mc_sigmas: 5.0,
        }
    }
}
