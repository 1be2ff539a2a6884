//! Complete factorization over a prime field: squarefree decomposition,
//! distinct-degree splitting, then randomized equal-degree splitting
//! (Cantor–Zassenhaus, with the trace map in characteristic 2).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FieldParams;
use super::poly::Poly;
use crate::error::{domain, Result};

/// `unit * prod P_i^{e_i}` with distinct monic irreducible `P_i`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub field: FieldParams,
    pub unit: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn reconstruct(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.field, self.unit), |acc, (p, e)| &acc * &p.pow(*e))
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(p, e)| p.degree().unwrap_or(0) * *e as usize)
            .sum()
    }

    pub fn num_distinct(&self) -> usize {
        self.factors.len()
    }

    /// `(deg P_i, e_i)` pairs, the only data the arithmetic functions need.
    pub fn degree_multiplicities(&self) -> Vec<(usize, u32)> {
        self.factors
            .iter()
            .map(|(p, e)| (p.degree().unwrap_or(0), *e))
            .collect()
    }
}

/// Factors `f` with a fixed seed for the equal-degree step.
pub fn factor(f: &Poly) -> Result<Factorization> {
    factor_seeded(f, 0)
}

pub fn factor_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    factor_with_rng(f, &mut rng)
}

pub fn factor_with_rng<R: Rng + ?Sized>(f: &Poly, rng: &mut R) -> Result<Factorization> {
    if f.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    let (unit, monic) = f.monic_part();
    let mut factors = Vec::new();
    for (sqfree, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&sqfree) {
            for p in equal_degree(&block, d, rng) {
                factors.push((p, mult));
            }
        }
    }
    factors.sort();
    // Squarefree parts are pairwise coprime, so factors are already
    // distinct; merging guards against a caller-supplied non-monic quirk.
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        match merged.last_mut() {
            Some((last, le)) if *last == p => *le += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization { field: f.field(), unit, factors: merged })
}

/// `p`-th root of a polynomial whose derivative vanishes (prime field, so
/// coefficients are their own p-th roots).
fn pth_root(f: &Poly) -> Poly {
    let p = f.field().q() as usize;
    let coeffs = f.coeffs().iter().step_by(p).map(|&c| c as u64).collect::<Vec<_>>();
    Poly::new(f.field(), coeffs)
}

/// Monic squarefree `g_i` with multiplicities, `f = prod g_i^{m_i}`.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().q();
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).expect("gcd divides f");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).expect("gcd divides w");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).expect("w divides c");
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree `d`.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.q() as u64;
    let x = Poly::t(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest).expect("nonzero modulus");
        let g = rest.gcd(&(&h - &x));
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero modulus");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    out
}

fn random_poly<R: Rng + ?Sized>(field: FieldParams, deg_below: usize, rng: &mut R) -> Poly {
    let q = field.q();
    Poly::new(field, (0..deg_below).map(|_| rng.random_range(0..q) as u64))
}

/// Splitting polynomial: `a^{(q^d-1)/2} - 1` for odd q, the trace
/// `a + a^2 + ... + a^{2^{d-1}}` for q = 2.
fn splitter(a: &Poly, d: usize, modulus: &Poly) -> Poly {
    let field = a.field();
    let q = field.q() as u64;
    if q == 2 {
        let mut term = a.clone();
        let mut acc = a.clone();
        for _ in 1..d {
            term = (&term * &term).rem(modulus).expect("nonzero modulus");
            acc = &acc + &term;
        }
        acc
    } else {
        // (q^d - 1)/2 = ((q-1)/2) * (1 + q + ... + q^{d-1})
        let mut frob = a.clone();
        let mut norm_like = a.clone();
        for _ in 1..d {
            frob = frob.pow_mod(q, modulus).expect("nonzero modulus");
            norm_like = (&norm_like * &frob).rem(modulus).expect("nonzero modulus");
        }
        let b = norm_like.pow_mod((q - 1) / 2, modulus).expect("nonzero modulus");
        &b - &Poly::one(field)
    }
}

/// Splits a monic squarefree product of degree-`d` irreducibles.
pub fn equal_degree<R: Rng + ?Sized>(f: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    loop {
        let a = random_poly(field, n, rng);
        if a.is_constant() {
            continue;
        }
        let g = f.gcd(&splitter(&a, d, f));
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let other = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

pub fn is_irreducible(f: &Poly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(_) => factor(f)
            .map(|fac| fac.factors.len() == 1 && fac.factors[0].1 == 1)
            .unwrap_or(false),
    }
}
