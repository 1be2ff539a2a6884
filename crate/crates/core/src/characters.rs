//! Dirichlet characters modulo T^m.
//!
//! Residues mod T^m are addressed by the base-q integer of their
//! coefficients a_0..a_{m−1} (a_0 least significant); a residue is a unit
//! iff a_0 ≠ 0. The unit group is presented as a direct product of cyclic
//! groups found by greedy extraction of elements of maximal order in the
//! remaining quotient, and every unit gets its exponent vector (discrete
//! log) by walking the whole group once. A character is an exponent
//! vector `k`; its value on a unit with logs `e` is
//! exp(2πi Σ k_i e_i / d_i), kept as an integer phase modulo the group
//! order so classification is exact.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::fq::{FieldParams, Poly};

/// Default bound on Φ(T^m) for unit-group construction.
pub const MAX_GROUP_ORDER: u64 = 100_000;

const NOT_UNIT: u32 = u32::MAX;

/// Φ(T^m) = q^m − q^{m−1}.
pub fn phi(q: u64, m: u32) -> u64 {
    if m == 0 {
        1
    } else {
        q.pow(m) - q.pow(m - 1)
    }
}

/// Number of even characters, q^{m−1} (1 for m = 0).
pub fn phi_even(q: u64, m: u32) -> u64 {
    if m == 0 {
        1
    } else {
        q.pow(m - 1)
    }
}

/// Number of primitive characters mod T^m: q^{m−2}(q−1)^2 for m ≥ 2.
/// Modulo T every nontrivial character is primitive (q − 2 of them), and
/// the unique character modulo 1 counts as primitive.
pub fn phi_primitive(q: u64, m: u32) -> u64 {
    match m {
        0 => 1,
        1 => q - 2,
        _ => q.pow(m - 2) * (q - 1) * (q - 1),
    }
}

/// Number of even primitive characters mod T^m: q^{m−2}(q−1) for m ≥ 2.
pub fn phi_even_primitive(q: u64, m: u32) -> u64 {
    match m {
        0 => 1,
        1 => 0,
        _ => q.pow(m - 2) * (q - 1),
    }
}

/// Truncated multiplication in F_q[T]/(T^m) on coefficient vectors.
#[derive(Clone, Copy, Debug)]
struct Residues {
    field: FieldParams,
    m: usize,
}

impl Residues {
    fn decode(&self, mut idx: usize) -> Vec<u32> {
        let q = self.field.q() as usize;
        (0..self.m)
            .map(|_| {
                let c = idx % q;
                idx /= q;
                c as u32
            })
            .collect()
    }

    fn encode(&self, c: &[u32]) -> usize {
        let q = self.field.q() as usize;
        c.iter().rev().fold(0, |acc, &x| acc * q + x as usize)
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let q = self.field.q() as u64;
        let mut out = vec![0u64; self.m];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b[..self.m - i].iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % q;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = self.decode(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The unit group (F_q[T]/T^m)^× as a product of cyclic factors.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    field: FieldParams,
    m: usize,
    order: u64,
    generators: Vec<(usize, u32)>,
    /// Mixed-radix code of each residue's exponent vector (first
    /// generator varies fastest), `NOT_UNIT` off the group.
    logs: Vec<u32>,
    roots: Vec<Complex64>,
}

/// Builds the unit group mod T^m with the default size bound.
pub fn build_unit_group(q: u32, m: usize) -> Result<UnitGroup> {
    UnitGroup::new(FieldParams::new(q)?, m, MAX_GROUP_ORDER)
}

impl UnitGroup {
    pub fn new(field: FieldParams, m: usize, max_order: u64) -> Result<Self> {
        if m == 0 {
            return domain("modulus T^m needs m >= 1");
        }
        let q = field.q() as u64;
        let order = q
            .checked_pow(m as u32 - 1)
            .and_then(|x| x.checked_mul(q - 1))
            .unwrap_or(u64::MAX);
        if order > max_order {
            return Err(Error::Resource {
                what: format!("unit group mod T^{m} over F_{q}"),
                needed: order as u128,
                budget: max_order as u128,
            });
        }
        let ring = Residues { field, m };
        let size = (q as usize).pow(m as u32);
        let primes = prime_factors(order);

        let mut logs = vec![NOT_UNIT; size];
        let mut members: Vec<usize> = vec![1];
        logs[1] = 0;
        let mut generators: Vec<(usize, u32)> = Vec::new();
        while (members.len() as u64) < order {
            let in_h = |c: &[u32], logs: &[u32]| logs[ring.encode(c)] != NOT_UNIT;
            let mut best: Option<(u64, usize)> = None;
            for x in (1..size).filter(|x| x % q as usize != 0 && logs[*x] == NOT_UNIT) {
                let xc = ring.decode(x);
                let mut d = order;
                for &l in &primes {
                    while d.is_multiple_of(l) && in_h(&ring.pow(&xc, d / l), &logs) {
                        d /= l;
                    }
                }
                if best.is_none_or(|(bd, _)| d > bd) {
                    best = Some((d, x));
                }
            }
            let (d, x) = best.expect("a unit outside the current subgroup");
            let xc = ring.decode(x);
            // x^d lies in H; strip its H-part so the new generator has order d.
            let mut code = logs[ring.encode(&ring.pow(&xc, d))] as u64;
            let mut h = xc;
            for &(g, gd) in &generators {
                let t = code % gd as u64;
                code /= gd as u64;
                if !t.is_multiple_of(d) {
                    return Err(Error::Integrity(format!(
                        "cyclic decomposition mod T^{m}: exponent {t} not divisible by {d}"
                    )));
                }
                let back = (gd as u64 - t / d) % gd as u64;
                h = ring.mul(&h, &ring.pow(&ring.decode(g), back));
            }
            let h_idx = ring.encode(&h);
            let stride = members.len() as u32;
            let mut power = ring.decode(1);
            let mut added = Vec::with_capacity(members.len() * (d as usize - 1));
            for t in 1..d as u32 {
                power = ring.mul(&power, &h);
                for &y in &members {
                    let z = ring.encode(&ring.mul(&ring.decode(y), &power));
                    debug_assert_eq!(logs[z], NOT_UNIT);
                    logs[z] = logs[y] + t * stride;
                    added.push(z);
                }
            }
            members.extend(added);
            generators.push((h_idx, d as u32));
        }
        let roots = (0..order)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / order as f64))
            .collect();
        Ok(UnitGroup { field, m, order, generators, logs, roots })
    }

    pub fn field(&self) -> FieldParams {
        self.field
    }

    pub fn modulus_degree(&self) -> usize {
        self.m
    }

    /// Φ(T^m).
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Number of residues mod T^m, q^m.
    pub fn num_residues(&self) -> usize {
        self.logs.len()
    }

    /// `(residue index, order)` of each cyclic factor.
    pub fn generators(&self) -> &[(usize, u32)] {
        &self.generators
    }

    pub fn is_unit(&self, residue: usize) -> bool {
        self.logs[residue] != NOT_UNIT
    }

    /// Exponent vector of a unit with respect to the generators.
    pub fn discrete_log(&self, residue: usize) -> Option<Vec<u32>> {
        let code = self.logs[residue];
        (code != NOT_UNIT).then(|| self.decode_exponents(code as u64))
    }

    fn decode_exponents(&self, mut code: u64) -> Vec<u32> {
        self.generators
            .iter()
            .map(|&(_, d)| {
                let e = (code % d as u64) as u32;
                code /= d as u64;
                e
            })
            .collect()
    }

    /// Phase of χ_k at a unit, as an integer modulo Φ.
    fn phase(&self, k: &[u32], residue: usize) -> Option<u64> {
        let mut code = self.logs[residue];
        if code == NOT_UNIT {
            return None;
        }
        let mut acc = 0u64;
        for (&(_, d), &ki) in self.generators.iter().zip(k) {
            let e = code % d;
            code /= d;
            acc = (acc + (ki as u64 * e as u64 % d as u64) * (self.order / d as u64)) % self.order;
        }
        Some(acc)
    }

    /// χ_k(residue) without tabulating the character.
    pub fn value(&self, k: &[u32], residue: usize) -> Complex64 {
        self.phase(k, residue)
            .map_or(Complex64::new(0.0, 0.0), |p| self.roots[p as usize])
    }

    /// Exponent vector of character number `id` (mixed radix over the
    /// generator orders, first generator fastest).
    pub fn exponents(&self, id: u64) -> Vec<u32> {
        self.decode_exponents(id)
    }

    /// Classifies character number `id` from a handful of phases.
    pub fn flags(&self, id: u64) -> CharacterFlags {
        let k = self.decode_exponents(id);
        let q = self.field.q() as usize;
        let is_trivial = k.iter().all(|&x| x == 0);
        let is_even = (1..q).all(|c| self.phase(&k, c) == Some(0));
        let is_primitive = if self.m == 1 {
            !is_trivial
        } else {
            self.phase(&k, 1 + q.pow(self.m as u32 - 1)) != Some(0)
        };
        CharacterFlags { is_even, is_primitive, is_trivial }
    }

    /// Character number `id` with its full value table.
    pub fn character(&self, id: u64) -> Character {
        let k = self.decode_exponents(id);
        let flags = self.flags(id);
        let values = (0..self.num_residues()).map(|r| self.value(&k, r)).collect();
        Character {
            q: self.field.q(),
            m: self.m,
            id,
            exponents: k,
            is_even: flags.is_even,
            is_primitive: flags.is_primitive,
            is_trivial: flags.is_trivial,
            values,
        }
    }

    /// Ids of the characters whose flags satisfy `keep`, in id order.
    pub fn select(&self, keep: impl Fn(CharacterFlags) -> bool) -> Vec<u64> {
        (0..self.order).filter(|&id| keep(self.flags(id))).collect()
    }

    /// All Φ(T^m) characters in id order; value tables are built one at a time.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order).map(|id| self.character(id))
    }

    pub fn character_from_record(&self, rec: &CharacterRecord) -> Result<Character> {
        if rec.q != self.field.q() || rec.m != self.m {
            return domain("character record belongs to a different modulus");
        }
        if rec.exponent_vector.len() != self.generators.len()
            || rec.exponent_vector.iter().zip(&self.generators).any(|(&k, &(_, d))| k >= d)
        {
            return domain("exponent vector does not fit the cyclic factors");
        }
        let id = rec
            .exponent_vector
            .iter()
            .zip(&self.generators)
            .rev()
            .fold(0u64, |acc, (&k, &(_, d))| acc * d as u64 + k as u64);
        let chi = self.character(id);
        if chi.is_even != rec.is_even || chi.is_primitive != rec.is_primitive {
            return Err(Error::Integrity("character record flags disagree with its values".into()));
        }
        Ok(chi)
    }

    /// |(1/Φ) Σ_χ conj(χ(f)) χ(g) − [f ≡ g, fg coprime to T]|.
    pub fn orthogonality_residual(&self, f: &Poly, g: &Poly) -> f64 {
        let a = f.residue_index(self.m) as usize;
        let b = g.residue_index(self.m) as usize;
        let indicator = if a == b && self.is_unit(a) { 1.0 } else { 0.0 };
        let sum: Complex64 = (0..self.order)
            .map(|id| {
                let k = self.decode_exponents(id);
                self.value(&k, a).conj() * self.value(&k, b)
            })
            .sum();
        (sum / self.order as f64 - indicator).norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterFlags {
    pub is_even: bool,
    pub is_primitive: bool,
    pub is_trivial: bool,
}

/// A character with its value on every residue mod T^m.
#[derive(Clone, Debug)]
pub struct Character {
    pub q: u32,
    pub m: usize,
    pub id: u64,
    pub exponents: Vec<u32>,
    pub is_even: bool,
    pub is_primitive: bool,
    pub is_trivial: bool,
    pub values: Vec<Complex64>,
}

/// Serialized form of a character; values are rebuilt from the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub q: u32,
    pub m: usize,
    pub exponent_vector: Vec<u32>,
    pub is_even: bool,
    pub is_primitive: bool,
}

impl CharacterRecord {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct")
    }
}

impl Character {
    /// λ_χ = [χ is even].
    pub fn lambda(&self) -> u32 {
        self.is_even as u32
    }

    pub fn value(&self, f: &Poly) -> Complex64 {
        self.values[f.residue_index(self.m) as usize]
    }

    pub fn record(&self) -> CharacterRecord {
        CharacterRecord {
            q: self.q,
            m: self.m,
            exponent_vector: self.exponents.clone(),
            is_even: self.is_even,
            is_primitive: self.is_primitive,
        }
    }

    /// Σ_{c ∈ F_q^×} χ(c).
    pub fn unit_sum(&self) -> Complex64 {
        self.values[1..self.q as usize].iter().sum()
    }

    /// Checks Σ_{c ∈ F_q^×} χ(c) = (q − 1)[χ even] within `tol`.
    pub fn unit_sum_check(&self, tol: f64) -> bool {
        let want = if self.is_even { (self.q - 1) as f64 } else { 0.0 };
        (self.unit_sum() - want).norm() <= tol
    }
}
