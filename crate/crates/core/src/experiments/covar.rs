//! Empirical covariances of Λ_j, Λ̃_j and of the interval sums Ψ̃_j over
//! M_n, and their q → ∞ limits.

use rayon::prelude::*;

use crate::arith::{lambda_j_of_shape, lambda_mean, per_shape};
use crate::error::{domain, Result};
use crate::fq::MonicTable;
use crate::intervals::psi_tilde_buckets;
use crate::rmt::increment_product_sum;
use crate::Rational;

/// Σ_{d=1}^{upper} (d^j − (d−1)^j)(d^k − (d−1)^k).
pub fn limit_sum(j: u32, k: u32, upper: usize) -> i128 {
    increment_product_sum(j, k, upper)
}

fn q_pow(table: &MonicTable, n: usize) -> i128 {
    (table.field().q() as i128).pow(n as u32)
}

fn check_degree(table: &MonicTable, n: usize) -> Result<()> {
    if n == 0 || n > table.max_deg() {
        return domain(format!("need 1 <= n <= {}", table.max_deg()));
    }
    Ok(())
}

/// Σ_{f ∈ M_n} w_j(f) w_k(f) for per-shape weights.
fn product_sum(table: &MonicTable, n: usize, wj: &[i64], wk: &[i64]) -> i128 {
    table
        .shape_ids(n)
        .par_chunks(1 << 16)
        .map(|c| c.iter().map(|&id| wj[id as usize] as i128 * wk[id as usize] as i128).sum::<i128>())
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// (1/q^n) Σ_{f ∈ M_n} Λ_j(f) Λ_k(f).
pub fn covar1_empirical(table: &MonicTable, n: usize, j: u32, k: u32) -> Result<Rational> {
    check_degree(table, n)?;
    let wj = per_shape(table, |s| lambda_j_of_shape(s, j));
    let wk = per_shape(table, |s| lambda_j_of_shape(s, k));
    Ok(Rational::new(product_sum(table, n, &wj, &wk), q_pow(table, n)))
}

/// (1/q^n) Σ_{f ∈ M_n} Λ̃_j(f) Λ̃_k(f), summed directly.
pub fn covar2_empirical(table: &MonicTable, n: usize, j: u32, k: u32) -> Result<Rational> {
    check_degree(table, n)?;
    let wj = per_shape(table, |s| lambda_j_of_shape(s, j) - lambda_mean(j, n));
    let wk = per_shape(table, |s| lambda_j_of_shape(s, k) - lambda_mean(k, n));
    Ok(Rational::new(product_sum(table, n, &wj, &wk), q_pow(table, n)))
}

/// covar1 − (n^j − (n−1)^j)(n^k − (n−1)^k), which equals covar2.
pub fn covar2_subtracted(table: &MonicTable, n: usize, j: u32, k: u32) -> Result<Rational> {
    let mean = lambda_mean(j, n) as i128 * lambda_mean(k, n) as i128;
    Ok(covar1_empirical(table, n, j, k)? - Rational::from_integer(mean))
}

/// (1/q^{h+1}) (1/q^n) Σ_{f ∈ M_n} Ψ̃_j(f;h) Ψ̃_k(f;h), from one pass of
/// interval sums. Each interval has q^{h+1} centers, so this is
/// Σ_{intervals I} Ψ̃_j(I) Ψ̃_k(I) / q^n.
pub fn covar3_empirical(table: &MonicTable, n: usize, h: usize, j: u32, k: u32) -> Result<Rational> {
    check_degree(table, n)?;
    let sj = psi_tilde_buckets(table, j, n, h)?;
    let sk = if j == k { sj.clone() } else { psi_tilde_buckets(table, k, n, h)? };
    let total: i128 = sj.iter().zip(&sk).map(|(&a, &b)| a as i128 * b as i128).sum();
    Ok(Rational::new(total, q_pow(table, n)))
}

/// Whether (n, h) satisfies the hypothesis 0 ≤ h ≤ n − 4 under which the
/// covar3 limit is proven.
pub fn covar3_in_proven_range(n: usize, h: usize) -> bool {
    h + 4 <= n
}

/// The limiting value of each covariance: Σ up to n, n − 1, n − h − 2.
pub fn covar_limit(experiment: u8, n: usize, h: i64, j: u32, k: u32) -> i128 {
    let upper = match experiment {
        1 => n as i64,
        2 => n as i64 - 1,
        _ => n as i64 - h - 2,
    };
    limit_sum(j, k, upper.max(0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FieldParams;

    fn table(q: u32, n: usize) -> MonicTable {
        MonicTable::build(FieldParams::new(q).unwrap(), n, 1 << 24).unwrap()
    }

    #[test]
    fn limit_examples() {
        assert_eq!(limit_sum(1, 1, 7), 7);
        assert_eq!(limit_sum(1, 2, 2), 4);
        assert_eq!(limit_sum(2, 2, 2), 10);
        assert_eq!(limit_sum(2, 2, 0), 0);
        assert_eq!(covar_limit(3, 6, 2, 1, 1), 2);
        assert_eq!(covar_limit(2, 2, -1, 1, 1), 1);
    }

    #[test]
    fn covar1_examples() {
        assert_eq!(covar1_empirical(&table(2, 2), 2, 1, 1).unwrap(), Rational::new(3, 2));
        assert_eq!(covar1_empirical(&table(3, 2), 2, 1, 1).unwrap(), Rational::new(5, 3));
        assert_eq!(covar1_empirical(&table(5, 2), 2, 1, 1).unwrap(), Rational::new(9, 5));
    }

    #[test]
    fn covar2_forms_agree() {
        assert_eq!(covar2_empirical(&table(2, 2), 2, 1, 1).unwrap(), Rational::new(1, 2));
        for q in [2u32, 3, 5] {
            let t = table(q, 5);
            for n in 1..=5 {
                for j in 1..=3 {
                    for k in 1..=3 {
                        assert_eq!(covar2_empirical(&t, n, j, k).unwrap(), covar2_subtracted(&t, n, j, k).unwrap());
                    }
                }
            }
        }
    }
}
