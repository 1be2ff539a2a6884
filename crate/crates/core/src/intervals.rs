//! Short intervals I(f;h) = {g : deg(f − g) ≤ h}, the sums Ψ_j, Ψ̃_j and
//! Ψ̃_j^♮ over them, the reversal involution and the T-adic shift maps.
//!
//! For monic f of degree n and h < n the interval consists of the monic
//! polynomials agreeing with f in coefficients h+1..n. In monic-index
//! order those are the q^{h+1} consecutive indices sharing the quotient
//! `index / q^{h+1}`, which is what the single-pass bucket sums use.

use rayon::prelude::*;

use crate::arith::{e_natural, lambda_j_mobius, lambda_j_of_shape, lambda_mean, per_shape};
use crate::error::{domain, Result};
use crate::fq::{enumerate_monics, MonicTable, Poly};
use crate::Rational;

/// An interval I(center; h). The center is normalized to the member with
/// its low h+1 coefficients zeroed, so equal specs mean equal intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalSpec {
    center: Poly,
    h: usize,
}

impl IntervalSpec {
    pub fn new(center: &Poly, h: usize) -> Result<Self> {
        let n = match center.degree() {
            Some(n) if center.is_monic() => n,
            _ => return domain("interval center must be monic"),
        };
        if h >= n {
            return domain(format!("interval radius h = {h} must be below deg f = {n}"));
        }
        let center = center.truncate_low(h + 1).shift_up(h + 1);
        Ok(IntervalSpec { center, h })
    }

    pub fn center(&self) -> &Poly {
        &self.center
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn degree(&self) -> usize {
        self.center.degree().unwrap()
    }

    pub fn len(&self) -> usize {
        (self.center.field().q() as usize).pow(self.h as u32 + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position of this interval among all degree-n intervals of radius h.
    pub fn bucket(&self) -> usize {
        self.center.monic_index().unwrap() as usize / self.len()
    }

    pub fn contains(&self, g: &Poly) -> bool {
        g.field() == self.center.field()
            && (&self.center - g).degree().is_none_or(|d| d <= self.h)
    }

    /// All members in monic-index order.
    pub fn members(&self) -> impl Iterator<Item = Poly> + '_ {
        let base = self.bucket() * self.len();
        (0..self.len()).map(move |i| {
            Poly::from_monic_index(self.center.field(), self.degree(), (base + i) as u64)
        })
    }

    fn shape_ids<'t>(&self, table: &'t MonicTable) -> Result<&'t [u32]> {
        if table.field() != self.center.field() || self.degree() > table.max_deg() {
            return domain("interval is outside the table");
        }
        let start = self.bucket() * self.len();
        Ok(&table.shape_ids(self.degree())[start..start + self.len()])
    }
}

/// Ψ_j(f;h) = Σ_{g ∈ I(f;h)} Λ_j(g).
pub fn psi_j(table: &MonicTable, j: u32, spec: &IntervalSpec) -> Result<i64> {
    let ids = spec.shape_ids(table)?;
    Ok(ids.iter().map(|&id| lambda_j_of_shape(&table.shapes()[id as usize], j)).sum())
}

/// Ψ̃_j(f;h) = Σ_{g ∈ I(f;h)} Λ̃_j(g).
pub fn psi_j_tilde(table: &MonicTable, j: u32, spec: &IntervalSpec) -> Result<i64> {
    Ok(psi_j(table, j, spec)? - spec.len() as i64 * lambda_mean(j, spec.degree()))
}

/// Ψ̃_j^♮(f;h) = Σ_{g ∈ I(f;h), g(0) ≠ 0} (Λ_j(g) − E_j^♮(deg g)).
pub fn psi_j_tilde_natural(table: &MonicTable, j: u32, spec: &IntervalSpec) -> Result<Rational> {
    let ids = spec.shape_ids(table)?;
    let q = table.field().q() as usize;
    let mean = e_natural(table, j, spec.degree())?;
    let mut total = Rational::from_integer(0);
    for (i, &id) in ids.iter().enumerate() {
        if i % q != 0 {
            total += Rational::from_integer(lambda_j_of_shape(&table.shapes()[id as usize], j) as i128)
                - mean;
        }
    }
    Ok(total)
}

/// f* = a_n + a_{n−1}T + … + a_0T^n, for f(0) ≠ 0.
pub fn involution_star(f: &Poly) -> Result<Poly> {
    f.reversal()
}

/// f^{[i]} with f = T^i f^{[i]}.
pub fn shift_map(f: &Poly, i: usize) -> Result<Poly> {
    if !f.is_zero() && f.t_valuation().unwrap() < i {
        return domain(format!("T^{i} does not divide {f}"));
    }
    Ok(f.truncate_low(i))
}

/// Checks Ψ_j(f;h) = Σ_{i=0}^{h} Σ_{g ∈ M_{n−i}^♮, deg(T^i g − f) ≤ h} Λ_j(T^i g)
/// + Λ_j(T^{h+1} f^{[h+1]}), the right side by factoring each term directly.
pub fn valuation_decomposition_check(table: &MonicTable, j: u32, spec: &IntervalSpec) -> Result<bool> {
    let lhs = psi_j(table, j, spec)?;
    let f = spec.center();
    let n = spec.degree();
    let h = spec.h();
    let mut rhs = 0i64;
    for i in 0..=h {
        for g in enumerate_monics(f.field(), n - i).filter(|g| g.coeff(0) != 0) {
            let tg = g.shift_up(i);
            if spec.contains(&tg) {
                rhs += lambda_j_mobius(j, &tg)?;
            }
        }
    }
    let top = f.truncate_low(h + 1).shift_up(h + 1);
    rhs += lambda_j_mobius(j, &top)?;
    Ok(lhs == rhs)
}

fn check_radius(table: &MonicTable, n: usize, h: usize) -> Result<usize> {
    if n == 0 || h >= n || n > table.max_deg() {
        return domain(format!("need 0 <= h < n <= {}, got n = {n}, h = {h}", table.max_deg()));
    }
    Ok((table.field().q() as usize).pow(h as u32 + 1))
}

/// Ψ̃_j(f;h) for every interval of M_n, in bucket order.
pub fn psi_tilde_buckets(table: &MonicTable, j: u32, n: usize, h: usize) -> Result<Vec<i64>> {
    let width = check_radius(table, n, h)?;
    let vals = per_shape(table, |s| lambda_j_of_shape(s, j));
    let centered = width as i64 * lambda_mean(j, n);
    Ok(table
        .shape_ids(n)
        .par_chunks(width)
        .map(|c| c.iter().map(|&id| vals[id as usize]).sum::<i64>() - centered)
        .collect())
}

/// Ψ̃_j^♮(f;h) for every interval of M_n, in bucket order.
pub fn psi_tilde_natural_buckets(table: &MonicTable, j: u32, n: usize, h: usize) -> Result<Vec<Rational>> {
    let width = check_radius(table, n, h)?;
    let q = table.field().q() as usize;
    let vals = per_shape(table, |s| lambda_j_of_shape(s, j));
    let mean = e_natural(table, j, n)?;
    let units = (width - width / q) as i128;
    Ok(table
        .shape_ids(n)
        .par_chunks(width)
        .map(|c| {
            let s: i128 = c
                .iter()
                .enumerate()
                .filter(|(i, _)| i % q != 0)
                .map(|(_, &id)| vals[id as usize] as i128)
                .sum();
            Rational::from_integer(s) - mean * units
        })
        .collect())
}
