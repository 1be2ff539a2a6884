use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::FieldParams;
use crate::error::{domain, Result};

/// Dense polynomial over a prime field, lowest coefficient first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and `degree()` is `None` for it. `None`
/// orders below every `Some(d)`, which is the only comparison the code
/// needs on the zero sentinel.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldParams,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds a polynomial from raw coefficients, reducing mod q and
    /// trimming trailing zeros.
    pub fn new(field: FieldParams, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        Self::from_reduced(field, coeffs)
    }

    pub(crate) fn from_reduced(field: FieldParams, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldParams) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldParams) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: FieldParams, c: u32) -> Self {
        Self::from_reduced(field, vec![c % field.q()])
    }

    /// `c * T^i`.
    pub fn monomial(field: FieldParams, i: usize, c: u32) -> Self {
        let mut coeffs = vec![0; i + 1];
        coeffs[i] = c % field.q();
        Self::from_reduced(field, coeffs)
    }

    /// The variable `T`.
    pub fn t(field: FieldParams) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// The monic polynomial of degree `deg` whose lower coefficients are the
    /// base-q digits of `index` (a_0 is the least significant digit).
    pub fn from_monic_index(field: FieldParams, deg: usize, mut index: u64) -> Self {
        let q = field.q() as u64;
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push((index % q) as u32);
            index /= q;
        }
        coeffs.push(1);
        Poly { field, coeffs }
    }

    /// Inverse of [`Poly::from_monic_index`]; `None` unless monic.
    pub fn monic_index(&self) -> Option<u64> {
        if !self.is_monic() {
            return None;
        }
        let q = self.field.q() as u64;
        let n = self.coeffs.len() - 1;
        Some(self.coeffs[..n].iter().rev().fold(0u64, |acc, &c| acc * q + c as u64))
    }

    #[inline]
    pub fn field(&self) -> FieldParams {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// |f| = q^deg f, with |0| = 0.
    pub fn norm(&self) -> u128 {
        match self.degree() {
            None => 0,
            Some(d) => (self.field.q() as u128).pow(d as u32),
        }
    }

    /// Largest i with T^i | f; `None` for the zero polynomial.
    pub fn t_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self::from_reduced(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Returns `(lc, f / lc)`; the zero polynomial is returned unchanged
    /// with unit 0.
    pub fn monic_part(&self) -> (u32, Self) {
        let lc = self.leading_coeff();
        if lc == 0 || lc == 1 {
            return (lc, self.clone());
        }
        let inv = self.field.inv(lc).expect("nonzero leading coefficient");
        (lc, self.scale(inv))
    }

    pub fn make_monic(&self) -> Self {
        self.monic_part().1
    }

    /// `T^i * f`.
    pub fn shift_up(&self, i: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; i];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs }
    }

    /// Drops the `i` lowest coefficients: `a_i + a_{i+1} T + ...`.
    pub fn truncate_low(&self, i: usize) -> Self {
        if i >= self.coeffs.len() {
            return Self::zero(self.field);
        }
        Poly { field: self.field, coeffs: self.coeffs[i..].to_vec() }
    }

    /// `f(T^i)`.
    pub fn compose_monomial(&self, i: usize) -> Self {
        assert!(i >= 1, "composition with T^0 is not a substitution");
        let mut coeffs = vec![0; self.degree().map_or(0, |d| d * i + 1)];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * i] = c;
        }
        Self::from_reduced(self.field, coeffs)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect();
        Self::from_reduced(f, coeffs)
    }

    fn check_field(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    /// Euclidean division. Errors on division by zero.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(g);
        let Some(dg) = g.degree() else {
            return domain("division by the zero polynomial");
        };
        let f = self.field;
        let inv_lc = f.inv(g.leading_coeff())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dg];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dg], inv_lc);
            quot[i] = c;
            if c != 0 {
                for (k, &gk) in g.coeffs.iter().enumerate() {
                    rem[i + k] = f.sub(rem[i + k], f.mul(c, gk));
                }
            }
        }
        rem.truncate(dg);
        Ok((Poly::from_reduced(f, quot), Poly::from_reduced(f, rem)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(g)?.1)
    }

    /// Exact quotient; errors if `g` does not divide `self`.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly> {
        let (quot, rem) = self.divmod(g)?;
        if !rem.is_zero() {
            return domain("exact division with nonzero remainder");
        }
        Ok(quot)
    }

    pub fn divides(&self, f: &Poly) -> bool {
        !self.is_zero() && f.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, g: &Poly) -> Poly {
        self.check_field(g);
        let mut a = self.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient reversal `a_n + a_{n-1} T + ... + a_0 T^n`, defined for
    /// polynomials with nonzero constant term.
    pub fn reversal(&self) -> Result<Poly> {
        if self.coeff(0) == 0 {
            return domain("coefficient reversal requires f(0) != 0");
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Poly { field: self.field, coeffs })
    }

    /// Residue of `self` mod `T^m` as a base-q integer (a_0 least significant).
    pub fn residue_index(&self, m: usize) -> u64 {
        let q = self.field.q() as u64;
        (0..m).rev().fold(0u64, |acc, i| acc * q + self.coeff(i) as u64)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_reduced(f, (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_reduced(f, (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly { field: f, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let q = f.q() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % q;
            }
        }
        Poly::from_reduced(f, acc.into_iter().map(|c| c as u32).collect())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
