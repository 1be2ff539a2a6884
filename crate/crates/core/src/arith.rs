//! Möbius function, higher-order von Mangoldt functions Λ_j, their
//! centered versions, ♮-averages and truncated Möbius sums δ_m.
//!
//! Every function here depends on `f` only through its factorization
//! shape, so each has a `*_of_shape` form used by the enumeration code and
//! a `Poly` form that factors its argument first. Λ_j has two independent
//! implementations: the Möbius-inversion form (the default) and the
//! divisor-sum recursion over exponent vectors.

use std::collections::HashMap;

use crate::error::{domain, Result};
use crate::fq::{factor, FactorShape, Factorization, MonicTable, Poly};
use crate::Rational;

fn nonzero_factorization(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return domain("arithmetic function of the zero polynomial");
    }
    factor(f)
}

fn int_pow(base: usize, j: u32) -> i64 {
    (base as i64).pow(j)
}

/// Sums `(-1)^|S| * g(deg of S)` over subsets S of the distinct primes.
fn signed_subset_sum(shape: &FactorShape, mut g: impl FnMut(usize) -> i64) -> i64 {
    let degs: Vec<usize> = shape.parts().iter().map(|&(d, _)| d).collect();
    let k = degs.len();
    let mut total = 0i64;
    for mask in 0u32..(1u32 << k) {
        let sub: usize = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| degs[i]).sum();
        let term = g(sub);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn mobius_of_shape(shape: &FactorShape) -> i64 {
    if !shape.is_squarefree() {
        0
    } else if shape.num_distinct().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn mobius(f: &Poly) -> Result<i64> {
    Ok(mobius_of_shape(&FactorShape::from(&nonzero_factorization(f)?)))
}

/// Λ_j via Σ_{d|f} μ(d) deg(f/d)^j, with 0^0 = 1 so that Λ_0 = [f constant].
pub fn lambda_j_of_shape(shape: &FactorShape, j: u32) -> i64 {
    let n = shape.degree();
    signed_subset_sum(shape, |sub| int_pow(n - sub, j))
}

pub fn lambda_j_mobius(j: u32, f: &Poly) -> Result<i64> {
    Ok(lambda_j_of_shape(&FactorShape::from(&nonzero_factorization(f)?), j))
}

/// Λ_j via Λ_j(f) = Σ_{d|f} Λ_{j-1}(d) Λ(f/d) + Λ_{j-1}(f) deg f, starting
/// from Λ_0 = [f constant]. Divisors are exponent vectors below those of f.
pub fn lambda_j_recursive(j: u32, f: &Poly) -> Result<i64> {
    let fac = nonzero_factorization(f)?;
    let degs: Vec<usize> = fac.factors.iter().map(|(p, _)| p.degree().unwrap()).collect();
    let exps: Vec<u32> = fac.factors.iter().map(|&(_, e)| e).collect();
    let mut memo = HashMap::new();
    Ok(recursive_on_exponents(j, &exps, &degs, &mut memo))
}

fn von_mangoldt_exps(exps: &[u32], degs: &[usize]) -> i64 {
    let mut support = exps.iter().zip(degs).filter(|(&e, _)| e > 0);
    match (support.next(), support.next()) {
        (Some((_, &d)), None) => d as i64,
        _ => 0,
    }
}

fn recursive_on_exponents(
    j: u32,
    exps: &[u32],
    degs: &[usize],
    memo: &mut HashMap<(u32, Vec<u32>), i64>,
) -> i64 {
    if j == 0 {
        return i64::from(exps.iter().all(|&e| e == 0));
    }
    if let Some(&v) = memo.get(&(j, exps.to_vec())) {
        return v;
    }
    let deg: usize = exps.iter().zip(degs).map(|(&e, &d)| e as usize * d).sum();
    let mut total = recursive_on_exponents(j - 1, exps, degs, memo) * deg as i64;
    let mut d = vec![0u32; exps.len()];
    loop {
        let cofactor: Vec<u32> = exps.iter().zip(&d).map(|(e, x)| e - x).collect();
        let lam = von_mangoldt_exps(&cofactor, degs);
        if lam != 0 {
            total += recursive_on_exponents(j - 1, &d, degs, memo) * lam;
        }
        // next exponent vector in the box 0..=exps
        let mut i = 0;
        while i < d.len() && d[i] == exps[i] {
            d[i] = 0;
            i += 1;
        }
        if i == d.len() {
            break;
        }
        d[i] += 1;
    }
    memo.insert((j, exps.to_vec()), total);
    total
}

/// n^j − (n−1)^j, the mean of Λ_j over monic polynomials of degree n.
pub fn lambda_mean(j: u32, n: usize) -> i64 {
    if n == 0 {
        return i64::from(j == 0);
    }
    int_pow(n, j) - int_pow(n - 1, j)
}

pub fn lambda_tilde_of_shape(shape: &FactorShape, j: u32) -> i64 {
    lambda_j_of_shape(shape, j) - lambda_mean(j, shape.degree())
}

pub fn lambda_tilde(j: u32, f: &Poly) -> Result<i64> {
    Ok(lambda_tilde_of_shape(&FactorShape::from(&nonzero_factorization(f)?), j))
}

/// Σ μ(d) over monic divisors d of degree < m.
pub fn delta_m_of_shape(shape: &FactorShape, m: usize) -> i64 {
    signed_subset_sum(shape, |sub| i64::from(sub < m))
}

pub fn delta_m(m: usize, f: &Poly) -> Result<i64> {
    if m == 0 {
        return domain("delta_m needs m >= 1");
    }
    Ok(delta_m_of_shape(&FactorShape::from(&nonzero_factorization(f)?), m))
}

/// q^n (n^j − (n−1)^j) = Σ_{f monic, deg n} Λ_j(f).
pub fn vm_average_closed(q: u32, j: u32, n: usize) -> i128 {
    (q as i128).pow(n as u32) * lambda_mean(j, n) as i128
}

/// Evaluates `g` once per distinct shape of `table`, indexed by shape id.
pub fn per_shape<T>(table: &MonicTable, g: impl Fn(&FactorShape) -> T) -> Vec<T> {
    table.shapes().iter().map(g).collect()
}

/// E_j^♮(n): the exact mean of Λ_j over monic f of degree n with f(0) ≠ 0.
pub fn e_natural(table: &MonicTable, j: u32, n: usize) -> Result<Rational> {
    if n == 0 || n > table.max_deg() {
        return domain(format!("e_natural needs 1 <= n <= {}", table.max_deg()));
    }
    if let Some(v) = table.e_natural_cache.lock().unwrap().get(&(j, n)) {
        return Ok(*v);
    }
    let q = table.field().q() as usize;
    let values = per_shape(table, |s| lambda_j_of_shape(s, j));
    let ids = table.shape_ids(n);
    let (sum, count) = ids
        .iter()
        .enumerate()
        .filter(|(idx, _)| idx % q != 0)
        .fold((0i128, 0i128), |(s, c), (_, &id)| (s + values[id as usize] as i128, c + 1));
    let mean = Rational::new(sum, count);
    table.e_natural_cache.lock().unwrap().insert((j, n), mean);
    Ok(mean)
}
