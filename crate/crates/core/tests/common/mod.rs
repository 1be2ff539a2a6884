//! Brute-force number theory in F_q[T] by trial division over all monic
//! polynomials, independent of the factorization code.

#![allow(dead_code)]

use ffcovar::fq::{FieldParams, Poly};

pub fn field(q: u32) -> FieldParams {
    FieldParams::new(q).unwrap()
}

pub fn monics(f: FieldParams, n: usize) -> impl Iterator<Item = Poly> {
    (0..(f.q() as u64).pow(n as u32)).map(move |i| Poly::from_monic_index(f, n, i))
}

fn deg(f: &Poly) -> usize {
    f.degree().expect("nonzero")
}

/// Monic divisors of `f`, found by trying every monic of degree ≤ deg f.
pub fn monic_divisors(f: &Poly) -> Vec<Poly> {
    (0..=deg(f))
        .flat_map(|d| monics(f.field(), d))
        .filter(|d| f.divmod(d).unwrap().1.is_zero())
        .collect()
}

pub fn is_irreducible(p: &Poly) -> bool {
    let n = deg(p);
    n >= 1 && (1..=n / 2).all(|d| monics(p.field(), d).all(|g| !p.divmod(&g).unwrap().1.is_zero()))
}

pub fn mobius(d: &Poly) -> i64 {
    let primes: Vec<Poly> = monic_divisors(d).into_iter().filter(is_irreducible).collect();
    if primes.iter().any(|p| d.divmod(&(p * p)).unwrap().1.is_zero()) {
        0
    } else if primes.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Σ_{d | f} μ(d) deg(f/d)^j with 0^0 = 1.
pub fn lambda_j(j: u32, f: &Poly) -> i64 {
    let n = deg(f);
    monic_divisors(f).iter().map(|d| mobius(d) * ((n - deg(d)) as i64).pow(j)).sum()
}

/// Number of distinct monic irreducible factors.
pub fn omega(f: &Poly) -> usize {
    monic_divisors(f).into_iter().filter(is_irreducible).count()
}

/// Classical von Mangoldt: deg P on powers of an irreducible P.
pub fn von_mangoldt(f: &Poly) -> i64 {
    let primes: Vec<Poly> = monic_divisors(f).into_iter().filter(is_irreducible).collect();
    match primes.as_slice() {
        [p] => deg(p) as i64,
        _ => 0,
    }
}

/// Σ_{d | f, deg d < m} μ(d).
pub fn delta_m(m: usize, f: &Poly) -> i64 {
    monic_divisors(f).iter().filter(|d| deg(d) < m).map(mobius).sum()
}
