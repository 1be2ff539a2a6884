//! The 2×2 ratio theorem for characteristic polynomials on U(N).

use num_complex::Complex64;

use super::haar::{HaarEnsemble, McEstimate};
use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl RatioParams {
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        let z = |x| Complex64::new(x, 0.0);
        RatioParams { a: z(a), b: z(b), c: z(c), d: z(d) }
    }

    fn validate(&self) -> Result<()> {
        let one = Complex64::new(1.0, 0.0);
        if self.c.norm() >= 1.0 || self.d.norm() >= 1.0 {
            return domain("ratio theorem needs |C| < 1 and |D| < 1");
        }
        if (self.a * self.b - one).norm() < 1e-12 || (self.c * self.d - one).norm() < 1e-12 {
            return domain("ratio theorem parameters sit on a pole (AB = 1 or CD = 1)");
        }
        Ok(())
    }
}

/// det(1 − A g) det(1 − B g^{−1}) / (det(1 − C g) det(1 − D g^{−1})).
pub fn ratio_integrand(p: &RatioParams, eigs: &[Complex64]) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    eigs.iter().fold(one, |acc, &w| {
        let wb = w.conj();
        acc * (one - p.a * w) * (one - p.b * wb) / ((one - p.c * w) * (one - p.d * wb))
    })
}

/// (1−BC)(1−AD)/((1−AB)(1−CD)) + (AB)^N (A−C)(B−D)/((AB−1)(1−CD)).
pub fn ratio_closed_form(p: &RatioParams, dim: usize) -> Result<Complex64> {
    p.validate()?;
    let one = Complex64::new(1.0, 0.0);
    let ab = p.a * p.b;
    let cd = p.c * p.d;
    let first = (one - p.b * p.c) * (one - p.a * p.d) / ((one - ab) * (one - cd));
    let second = ab.powu(dim as u32) * (p.a - p.c) * (p.b - p.d) / ((ab - one) * (one - cd));
    Ok(first + second)
}

#[derive(Clone, Copy, Debug)]
pub struct RatioCheck {
    pub lhs: McEstimate,
    pub rhs: Complex64,
    pub pass: bool,
}

pub fn ratio_theorem_check(p: &RatioParams, ensemble: &HaarEnsemble, sigmas: f64) -> Result<RatioCheck> {
    let rhs = ratio_closed_form(p, ensemble.dim)?;
    let lhs = ensemble.estimate(|s| ratio_integrand(p, &s.eigenvalues));
    Ok(RatioCheck { lhs, rhs, pass: lhs.agrees_with(rhs, sigmas) })
}
