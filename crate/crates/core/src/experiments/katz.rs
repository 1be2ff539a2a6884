//! Averages of H_j^{(n)}(Θ_χ) conj(H_k^{(n)}(Θ_χ)) over the Frobenius
//! classes of even primitive characters mod T^{M+1}, compared with the
//! Haar integral over U(M − 1).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::UnitGroup;
use crate::config::Tolerances;
use crate::error::{domain, Result};
use crate::lfunc::frobenius_spectrum;
use crate::rmt::{h_covariance_exact, h_statistic};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KatzReport {
    pub q: u32,
    #[serde(rename = "M")]
    pub big_m: usize,
    pub j: u32,
    pub k: u32,
    pub n: usize,
    pub characters: usize,
    pub ensemble_re: f64,
    pub ensemble_im: f64,
    pub haar: i128,
    pub deviation: f64,
    pub seed: u64,
}

/// Ensemble average over even primitive χ mod T^{M+1} (`group` must be the
/// unit group of that modulus) paired with h_covariance_exact(j,k,n,n,M−1).
pub fn frobenius_ensemble_average(
    group: &UnitGroup,
    j: u32,
    k: u32,
    n: usize,
    tol: &Tolerances,
) -> Result<(Complex64, i128, usize)> {
    let big_m = group.modulus_degree().saturating_sub(1);
    if big_m < 2 {
        return domain("the ensemble needs M >= 2 (modulus T^{M+1})");
    }
    if j == 0 || k == 0 || n == 0 {
        return domain("need j, k, n >= 1");
    }
    let ids = group.select(|f| f.is_even && f.is_primitive);
    let values: Vec<Complex64> = ids
        .par_iter()
        .map(|&id| {
            let s = frobenius_spectrum(&group.character(id), tol)?.stats(n);
            Ok(h_statistic(j, n, &s)? * h_statistic(k, n, &s)?.conj())
        })
        .collect::<Result<Vec<_>>>()?;
    let count = values.len();
    let mean = values.into_iter().sum::<Complex64>() / count as f64;
    Ok((mean, h_covariance_exact(j, k, n, n, big_m - 1), count))
}

pub fn katz_report(group: &UnitGroup, j: u32, k: u32, n: usize, seed: u64, tol: &Tolerances) -> Result<KatzReport> {
    let (avg, haar, count) = frobenius_ensemble_average(group, j, k, n, tol)?;
    Ok(KatzReport {
        q: group.field().q(),
        big_m: group.modulus_degree() - 1,
        j,
        k,
        n,
        characters: count,
        ensemble_re: avg.re,
        ensemble_im: avg.im,
        haar,
        deviation: (avg - Complex64::new(haar as f64, 0.0)).norm(),
        seed,
    })
}
