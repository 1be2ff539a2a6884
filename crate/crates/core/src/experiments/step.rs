//! The exact finite-q identity between the congruence form of the ♮
//! covariance and its expansion over even characters mod T^{n−h}:
//!
//! (q^{h+1}/(q−1)) Σ_{g_1,g_2 ∈ P_n^♮} [g_1 ≡ g_2 mod T^{n−h}] Λ̃_j^♮(g_1) Λ̃_k^♮(g_2)
//!   = q^{h+1}(q−1)/Φ(T^{n−h}) Σ_{χ ≠ χ_0 even} S_j(χ) conj(S_k(χ)),
//! with S_j(χ) = Σ_{g ∈ M_n} Λ_j(g) χ(g) and P_n^♮ the degree-n
//! polynomials (any leading coefficient) with nonzero constant term. The
//! left side is also Σ_{f ∈ M_n} Ψ̃_j^♮(f;h) Ψ̃_k^♮(f;h).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{e_natural, lambda_j_of_shape, per_shape};
use crate::characters::UnitGroup;
use crate::error::{domain, Result};
use crate::fq::MonicTable;
use crate::intervals::psi_tilde_natural_buckets;
use crate::Rational;

#[derive(Clone, Copy, Debug)]
pub struct StepIdentity {
    /// Congruence form, exact.
    pub lhs: Rational,
    /// Σ_f Ψ̃_j^♮ Ψ̃_k^♮ over M_n from interval sums, exact.
    pub interval_form: Rational,
    /// Character form, floating point.
    pub rhs: f64,
    /// |lhs − rhs|.
    pub residual: f64,
    /// 1e−6 · q^{n+h+1}.
    pub tolerance: f64,
}

impl StepIdentity {
    pub fn holds(&self) -> bool {
        self.residual <= self.tolerance && self.lhs == self.interval_form
    }
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Residue sums of b·Λ̃_j^♮ over M_n^♮ mod T^{m}, b = |M_n^♮| (integral).
fn scaled_natural_residue_sums(table: &MonicTable, j: u32, n: usize, m: usize) -> Result<Vec<i128>> {
    let q = table.field().q() as usize;
    let modulus = q.pow(m as u32);
    let b = (q.pow(n as u32 - 1) * (q - 1)) as i128;
    let mean = e_natural(table, j, n)?;
    let mean_b = mean * b;
    debug_assert!(mean_b.is_integer());
    let mean_b = mean_b.to_integer();
    let vals = per_shape(table, |s| lambda_j_of_shape(s, j));
    let mut sums = vec![0i128; modulus];
    for (idx, &id) in table.shape_ids(n).iter().enumerate() {
        if idx % q != 0 {
            sums[idx % modulus] += vals[id as usize] as i128 * b - mean_b;
        }
    }
    Ok(sums)
}

fn scale_residue(q: usize, m: usize, r: usize, c: u32) -> usize {
    let mut x = r;
    let mut out = 0usize;
    let mut place = 1usize;
    for _ in 0..m {
        out += ((x % q) * c as usize % q) * place;
        x /= q;
        place *= q;
    }
    out
}

pub fn step_identity_check(
    table: &MonicTable,
    group: &UnitGroup,
    n: usize,
    h: usize,
    j: u32,
    k: u32,
) -> Result<StepIdentity> {
    Ok(step_identity_checks(table, group, n, h, &[(j, k)])?.remove(0))
}

/// The identity for several order pairs, sharing one pass over the
/// characters mod T^{n−h}.
pub fn step_identity_checks(
    table: &MonicTable,
    group: &UnitGroup,
    n: usize,
    h: usize,
    pairs: &[(u32, u32)],
) -> Result<Vec<StepIdentity>> {
    let q = table.field().q() as usize;
    if h >= n || n > table.max_deg() {
        return domain("step identity needs 0 <= h < n within the table");
    }
    let m = n - h;
    if group.modulus_degree() != m || group.field() != table.field() {
        return domain(format!("step identity needs the unit group mod T^{m}"));
    }
    let b = (q.pow(n as u32 - 1) * (q - 1)) as i128;
    let qh1 = q.pow(h as u32 + 1) as i128;
    let modulus = q.pow(m as u32);
    let mut orders: Vec<u32> = pairs.iter().flat_map(|&(j, k)| [j, k]).collect();
    orders.sort_unstable();
    orders.dedup();
    let pos = |j: u32| orders.binary_search(&j).unwrap();

    // congruence form over P_n^♮ = { c·g : c ∈ F_q^×, g ∈ M_n^♮ }: residue
    // sums of b·Λ̃^♮ over all scalar multiples
    let inv: Vec<u32> = (1..q as u32).map(|c| table.field().inv(c).unwrap()).collect();
    let mut scaled = Vec::with_capacity(orders.len());
    for &j in &orders {
        let a = scaled_natural_residue_sums(table, j, n, m)?;
        let mut out = vec![0i128; modulus];
        for r in (0..modulus).filter(|r| r % q != 0) {
            out[r] = inv.iter().map(|&c| a[scale_residue(q, m, r, c)]).sum();
        }
        scaled.push(out);
    }

    let mut buckets = Vec::with_capacity(orders.len());
    for &j in &orders {
        buckets.push(psi_tilde_natural_buckets(table, j, n, h)?);
    }

    // character form: S_j(χ) from residue sums of Λ_j over M_n
    let mut residue_sums = vec![vec![0i64; modulus]; orders.len()];
    for (o, &j) in orders.iter().enumerate() {
        let w = per_shape(table, |s| lambda_j_of_shape(s, j));
        for (idx, &id) in table.shape_ids(n).iter().enumerate() {
            residue_sums[o][idx % modulus] += w[id as usize];
        }
    }
    let ids = group.select(|f| f.is_even && !f.is_trivial);
    let sums: Vec<Vec<Complex64>> = ids
        .par_iter()
        .map(|&id| {
            let chi = group.character(id);
            residue_sums
                .iter()
                .map(|c| {
                    (0..modulus)
                        .filter(|r| r % q != 0)
                        .map(|r| chi.values[r] * c[r] as f64)
                        .sum()
                })
                .collect()
        })
        .collect();

    let mut out = Vec::with_capacity(pairs.len());
    for &(j, k) in pairs {
        let (pj, pk) = (pos(j), pos(k));
        let acc: i128 = scaled[pj].iter().zip(&scaled[pk]).map(|(&x, &y)| x * y).sum();
        let lhs = Rational::new(acc * qh1, b * b * (q as i128 - 1));
        let interval_form = buckets[pj]
            .iter()
            .zip(&buckets[pk])
            .fold(Rational::from_integer(0), |s, (&x, &y)| s + x * y)
            * qh1;
        let total: Complex64 = sums.iter().map(|s| s[pj] * s[pk].conj()).sum();
        let rhs = total.re * qh1 as f64 * (q - 1) as f64 / group.order() as f64;
        let residual = (to_f64(lhs) - rhs).abs().max(total.im.abs() * qh1 as f64);
        let tolerance = 1e-6 * (q as f64).powi((n + h + 1) as i32);
        out.push(StepIdentity { lhs, interval_form, rhs, residual, tolerance });
    }
    Ok(out)
}
