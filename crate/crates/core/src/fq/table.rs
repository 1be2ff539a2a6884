//! Factorization shapes of every monic polynomial up to a degree bound,
//! computed by a smallest-irreducible-factor sieve.
//!
//! Monic polynomials of degree `d` are addressed by the base-q integer of
//! their lower coefficients `a_0..a_{d-1}` (a_0 least significant), the
//! same order in which [`enumerate_monics`] yields them. Each reducible
//! `f` is produced exactly once as `P * g` where `P` is its smallest
//! irreducible factor and every factor of `g` is at least `P`; whatever
//! the sieve does not reach in degree `d` is irreducible.

use std::collections::HashMap;
use std::sync::Mutex;

use super::field::FieldParams;
use super::poly::Poly;
use super::shape::FactorShape;
use crate::error::{domain, Error, Result};
use crate::Rational;

const UNSET: u32 = u32::MAX;

pub struct MonicTable {
    field: FieldParams,
    max_deg: usize,
    offsets: Vec<usize>,
    shape_ids: Vec<u32>,
    shapes: Vec<FactorShape>,
    spf: Vec<u32>,
    exp: Vec<u8>,
    rest: Vec<u32>,
    pub(crate) e_natural_cache: Mutex<HashMap<(u32, usize), Rational>>,
}

/// Number of monic polynomials of degree `0..=max_deg`, or `None` on overflow.
pub fn monic_count_upto(q: u32, max_deg: usize) -> Option<u128> {
    let mut total = 0u128;
    let mut term = 1u128;
    for _ in 0..=max_deg {
        total = total.checked_add(term)?;
        term = term.checked_mul(q as u128)?;
    }
    Some(total)
}

impl MonicTable {
    /// Sieves all monic polynomials of degree `<= max_deg`. `budget` bounds
    /// the number of table entries.
    pub fn build(field: FieldParams, max_deg: usize, budget: u64) -> Result<Self> {
        let q = field.q() as usize;
        let needed = monic_count_upto(field.q(), max_deg).unwrap_or(u128::MAX);
        if needed > budget as u128 || needed >= UNSET as u128 {
            return Err(Error::Resource {
                what: format!("monic table over F_{q} up to degree {max_deg}"),
                needed,
                budget: budget as u128,
            });
        }
        if max_deg > 255 {
            return domain("degree bound too large");
        }
        let total = needed as usize;
        let mut offsets = Vec::with_capacity(max_deg + 2);
        let mut acc = 0usize;
        let mut block = 1usize;
        for _ in 0..=max_deg {
            offsets.push(acc);
            acc += block;
            block *= q;
        }
        offsets.push(acc);

        let mut t = MonicTable {
            field,
            max_deg,
            offsets,
            shape_ids: vec![0; total],
            shapes: vec![FactorShape::default()],
            spf: vec![UNSET; total],
            exp: vec![0; total],
            rest: vec![0; total],
            e_natural_cache: Mutex::new(HashMap::new()),
        };
        let mut interned: HashMap<FactorShape, u32> = HashMap::new();
        interned.insert(FactorShape::default(), 0);
        let mut transitions: HashMap<(u32, usize, u8), u32> = HashMap::new();
        let mut shape_after = |t: &mut MonicTable, base: u32, deg: usize, mult: u8| -> u32 {
            *transitions.entry((base, deg, mult)).or_insert_with(|| {
                let s = t.shapes[base as usize].with_part(deg, mult as u32);
                *interned.entry(s.clone()).or_insert_with(|| {
                    t.shapes.push(s);
                    (t.shapes.len() - 1) as u32
                })
            })
        };

        // degree 0: the constant 1
        t.spf[0] = 0;

        let mut pc = vec![0u32; max_deg + 1];
        let mut gc = vec![0u32; max_deg + 1];
        let mut prod = vec![0u64; max_deg + 1];
        for d in 1..=max_deg {
            for e in 1..=d / 2 {
                let g_deg = d - e;
                for p_local in 0..t.count(e) {
                    let p_idx = t.offsets[e] + p_local;
                    if t.spf[p_idx] as usize != p_idx {
                        continue;
                    }
                    decode(q, p_local, e, &mut pc);
                    for g_local in 0..t.count(g_deg) {
                        let g_idx = t.offsets[g_deg] + g_local;
                        if (t.spf[g_idx] as usize) < p_idx {
                            continue;
                        }
                        decode(q, g_local, g_deg, &mut gc);
                        let f_local = monic_product_index(q, &pc[..=e], &gc[..=g_deg], &mut prod);
                        let f_idx = t.offsets[d] + f_local;
                        debug_assert_eq!(t.spf[f_idx], UNSET);
                        let (exp, rest) = if t.spf[g_idx] as usize == p_idx {
                            (t.exp[g_idx] + 1, t.rest[g_idx])
                        } else {
                            (1, g_idx as u32)
                        };
                        t.spf[f_idx] = p_idx as u32;
                        t.exp[f_idx] = exp;
                        t.rest[f_idx] = rest;
                        let base = t.shape_ids[rest as usize];
                        t.shape_ids[f_idx] = shape_after(&mut t, base, e, exp);
                    }
                }
            }
            let irreducible_shape = shape_after(&mut t, 0, d, 1);
            for f_idx in t.offsets[d]..t.offsets[d + 1] {
                if t.spf[f_idx] == UNSET {
                    t.spf[f_idx] = f_idx as u32;
                    t.exp[f_idx] = 1;
                    t.rest[f_idx] = 0;
                    t.shape_ids[f_idx] = irreducible_shape;
                }
            }
        }
        Ok(t)
    }

    pub fn field(&self) -> FieldParams {
        self.field
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    /// q^deg, the number of monic polynomials of degree `deg`.
    pub fn count(&self, deg: usize) -> usize {
        self.offsets[deg + 1] - self.offsets[deg]
    }

    pub fn shapes(&self) -> &[FactorShape] {
        &self.shapes
    }

    /// Shape ids of all monic polynomials of degree `deg`, in index order.
    pub fn shape_ids(&self, deg: usize) -> &[u32] {
        &self.shape_ids[self.offsets[deg]..self.offsets[deg + 1]]
    }

    pub fn shape(&self, deg: usize, local: usize) -> &FactorShape {
        &self.shapes[self.shape_ids(deg)[local] as usize]
    }

    pub fn is_irreducible(&self, deg: usize, local: usize) -> bool {
        deg > 0 && self.spf[self.offsets[deg] + local] as usize == self.offsets[deg] + local
    }

    fn check_poly(&self, f: &Poly) -> Result<(usize, usize)> {
        if f.field() != self.field {
            return domain("polynomial over a different field than the table");
        }
        let d = match f.degree() {
            None => return domain("zero polynomial has no factorization"),
            Some(d) => d,
        };
        if d > self.max_deg {
            return domain(format!("degree {d} exceeds the table bound {}", self.max_deg));
        }
        let idx = f.make_monic().monic_index().expect("monic");
        Ok((d, idx as usize))
    }

    /// Shape of any nonzero polynomial in range (units are ignored).
    pub fn shape_of(&self, f: &Poly) -> Result<&FactorShape> {
        let (d, local) = self.check_poly(f)?;
        Ok(self.shape(d, local))
    }

    /// Monic irreducible factors with multiplicities, in sieve order.
    pub fn factors_of(&self, deg: usize, local: usize) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        let mut idx = self.offsets[deg] + local;
        while idx != 0 {
            let p = self.spf[idx] as usize;
            out.push((self.poly_at(p), self.exp[idx] as u32));
            idx = self.rest[idx] as usize;
        }
        out
    }

    fn poly_at(&self, global: usize) -> Poly {
        let deg = self.offsets.partition_point(|&o| o <= global) - 1;
        Poly::from_monic_index(self.field, deg, (global - self.offsets[deg]) as u64)
    }

    /// Monic irreducibles of degree `deg`, in index order.
    pub fn irreducibles(&self, deg: usize) -> impl Iterator<Item = Poly> + '_ {
        (0..self.count(deg))
            .filter(move |&i| self.is_irreducible(deg, i))
            .map(move |i| Poly::from_monic_index(self.field, deg, i as u64))
    }
}

fn decode(q: usize, mut local: usize, deg: usize, out: &mut [u32]) {
    for c in out.iter_mut().take(deg) {
        *c = (local % q) as u32;
        local /= q;
    }
    out[deg] = 1;
}

/// Index of the monic product of two monic coefficient vectors.
fn monic_product_index(q: usize, a: &[u32], b: &[u32], prod: &mut [u64]) -> usize {
    let d = a.len() + b.len() - 2;
    let qq = q as u64;
    prod[..=d].iter_mut().for_each(|c| *c = 0);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
        if i % 8 == 7 {
            prod[..=d].iter_mut().for_each(|c| *c %= qq);
        }
    }
    prod[..d].iter().rev().fold(0usize, |acc, &c| acc * q + (c % qq) as usize)
}

/// All `q^n` monic polynomials of degree `n`, a_0 varying fastest.
pub fn enumerate_monics(field: FieldParams, n: usize) -> impl Iterator<Item = Poly> {
    let count = (field.q() as u64).pow(n as u32);
    (0..count).map(move |i| Poly::from_monic_index(field, n, i))
}
