//! The generating identity (−1)^j Z^{(j)}/Z(β) = Σ_r e^{−βr} H_j^{(r)} for
//! Z(β) = det(1 − e^{−β} g), checked by truncating the series.

use num_complex::Complex64;

use super::hstat::h_table;
use super::symfn::SpectrumStats;
use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug)]
pub struct LogDerivativeCheck {
    /// (−1)^j Z^{(j)}/Z evaluated from the expanded characteristic polynomial.
    pub direct: Complex64,
    /// Σ_{r=1}^{K} x^r H_j^{(r)}.
    pub series: Complex64,
    /// Upper bound on the omitted terms r > K.
    pub tail_bound: f64,
}

impl LogDerivativeCheck {
    pub fn residual(&self) -> f64 {
        (self.direct - self.series).norm()
    }

    pub fn within_bound(&self) -> bool {
        self.residual() <= self.tail_bound + 1e-10
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Evaluates both sides at x = e^{−β} (|x| < 1) with `terms` series terms.
pub fn log_derivative_check(j: u32, x: Complex64, eigs: &[Complex64], terms: usize) -> Result<LogDerivativeCheck> {
    if j == 0 || terms == 0 {
        return domain("need j >= 1 and at least one series term");
    }
    let r = x.norm();
    if r >= 1.0 {
        return domain("the series converges only for |e^{-β}| < 1");
    }
    let dim = eigs.len();
    // coefficients of Π (1 − ω_i y) = Σ (−1)^n e_n y^n
    let mut poly = vec![Complex64::new(0.0, 0.0); dim + 1];
    poly[0] = Complex64::new(1.0, 0.0);
    for (i, &w) in eigs.iter().enumerate() {
        for n in (1..=i + 1).rev() {
            let prev = poly[n - 1];
            poly[n] -= w * prev;
        }
    }
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = Complex64::new(0.0, 0.0);
    for (n, &c) in poly.iter().enumerate() {
        let xn = x.powu(n as u32);
        den += c * xn;
        num += c * xn * (n as f64).powi(j as i32);
    }
    let direct = num / den;

    let stats = SpectrumStats::from_eigenvalues(eigs, terms);
    let table = h_table(j, terms, &stats)?;
    let series = (1..=terms).map(|k| x.powu(k as u32) * table[j as usize][k]).sum();

    // |H_j^{(r)}| ≤ Σ_ν ν^j C(N,ν) C(r−ν+N−1, N−1)
    let mut tail_bound = 0.0;
    let mut k = terms + 1;
    loop {
        let bound: f64 = (1..=k.min(dim))
            .map(|nu| (nu as f64).powi(j as i32) * binomial(dim, nu) * binomial(k - nu + dim - 1, dim - 1))
            .sum();
        let term = r.powi(k as i32) * bound;
        tail_bound += term;
        if term < 1e-18 * tail_bound.max(1e-300) || k > terms + 10_000 {
            break;
        }
        k += 1;
    }
    Ok(LogDerivativeCheck { direct, series, tail_bound })
}
