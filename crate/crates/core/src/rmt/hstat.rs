//! The random-matrix analogues H_j^{(n)} of Λ_j and their Haar covariances.

use num_complex::Complex64;

use super::symfn::{HookPartition, SpectrumStats};
use crate::error::{domain, Result};

/// H_j^{(n)} from H_1^{(n)} = −p_n and
/// H_j^{(n)} = Σ_{ℓ+λ=n} H_1^{(λ)} H_{j−1}^{(ℓ)} + n H_{j−1}^{(n)}.
pub fn h_statistic(j: u32, n: usize, s: &SpectrumStats) -> Result<Complex64> {
    Ok(h_table(j, n, s)?[j as usize][n])
}

/// `table[j'][n']` = H_{j'}^{(n')} for 1 ≤ j' ≤ j, 1 ≤ n' ≤ n (zero elsewhere).
pub fn h_table(j: u32, n: usize, s: &SpectrumStats) -> Result<Vec<Vec<Complex64>>> {
    if j == 0 || n == 0 {
        return domain("H_j^(n) needs j >= 1 and n >= 1");
    }
    if n > s.max_power() {
        return domain(format!("H_j^({n}) needs power traces up to {n}"));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut t = vec![vec![zero; n + 1]; j as usize + 1];
    for (r, slot) in t[1].iter_mut().enumerate().skip(1) {
        *slot = -s.power(r)?;
    }
    for jj in 2..=j as usize {
        for r in 1..=n {
            let mut acc = t[jj - 1][r] * r as f64;
            for l in 1..r {
                acc += t[1][r - l] * t[jj - 1][l];
            }
            t[jj][r] = acc;
        }
    }
    Ok(t)
}

/// ν^j − (ν−1)^j, with 0^0 = 1.
pub fn increment(nu: usize, j: u32) -> i64 {
    let a = (nu as i64).pow(j);
    let b = if nu == 0 { 0 } else { ((nu - 1) as i64).pow(j) };
    a - b
}

/// The hook expansion
/// H_j^{(r)} = Σ_{ν=1}^{r∧N} (−1)^ν (ν^j − (ν−1)^j) s_{(r−ν+1,1^{ν−1})}.
pub fn h_to_schur_coeffs(j: u32, r: usize, n: usize) -> Vec<(HookPartition, i64)> {
    (1..=r.min(n))
        .map(|nu| {
            let sign = if nu % 2 == 0 { 1 } else { -1 };
            (HookPartition { arm: r - nu + 1, leg: nu - 1 }, sign * increment(nu, j))
        })
        .collect()
}

/// Σ_{d=1}^{upper} (d^j − (d−1)^j)(d^k − (d−1)^k).
pub fn increment_product_sum(j: u32, k: u32, upper: usize) -> i128 {
    (1..=upper)
        .map(|d| increment(d, j) as i128 * increment(d, k) as i128)
        .sum()
}

/// ∫_{U(N)} H_j^{(n)} conj(H_k^{(m)}) dg in closed form.
pub fn h_covariance_exact(j: u32, k: u32, n: usize, m: usize, dim: usize) -> i128 {
    if n != m {
        return 0;
    }
    increment_product_sum(j, k, n.min(dim))
}

/// The same integral from the hook expansions and orthonormality of Schur
/// functions on U(N).
pub fn h_covariance_via_schur(j: u32, k: u32, n: usize, m: usize, dim: usize) -> i128 {
    let a = h_to_schur_coeffs(j, n, dim);
    let b = h_to_schur_coeffs(k, m, dim);
    let mut total = 0i128;
    for (la, ca) in &a {
        for (lb, cb) in &b {
            if la == lb && la.length() <= dim {
                total += *ca as i128 * *cb as i128;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let s = SpectrumStats::from_angles(&[0.11, 0.42, 0.77], 5);
        let p = s.powers().to_vec();
        assert!((h_statistic(1, 3, &s).unwrap() + p[3]).norm() < 1e-14);
        let h22 = h_statistic(2, 2, &s).unwrap();
        assert!((h22 - (p[1] * p[1] - p[2] * 2.0)).norm() < 1e-12);
        assert!(h_statistic(1, 6, &s).is_err());
        assert!(h_statistic(0, 2, &s).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let c = h_to_schur_coeffs(2, 2, 3);
        assert_eq!(c, vec![(HookPartition { arm: 2, leg: 0 }, -1), (HookPartition { arm: 1, leg: 1 }, 3)]);
        for (nu, (hook, coeff)) in h_to_schur_coeffs(1, 4, 9).into_iter().enumerate() {
            assert_eq!(hook.size(), 4);
            assert_eq!(coeff, if nu % 2 == 0 { -1 } else { 1 });
        }
    }

    #[test]
    fn covariance_examples() {
        for n in 1..7 {
            for dim in 1..7 {
                assert_eq!(h_covariance_exact(1, 1, n, n, dim), n.min(dim) as i128);
            }
        }
        assert_eq!(h_covariance_exact(2, 2, 2, 2, 2), 10);
        assert_eq!(h_covariance_exact(2, 3, 2, 3, 4), 0);
        assert_eq!(increment_product_sum(1, 2, 2), 4);
        assert_eq!(increment_product_sum(3, 3, 0), 0);
    }
}
