//! L-polynomials of characters mod T^m, their zeros, the unitarized
//! Frobenius spectrum and the explicit formulas linking character sums of
//! Λ, Λ_j and δ_m to symmetric functions of that spectrum.
//!
//! For a primitive χ mod T^m, L(u,χ) = (1 − λ_χ u) Π_{i=1}^{N} (1 − q^{1/2} e^{2πiθ_i} u)
//! with N = m − 1 − λ_χ. Roots come from companion-matrix eigenvalues,
//! polished by Newton steps on the original polynomial.

use std::f64::consts::TAU;
use std::io::{Read, Write};

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{delta_m_of_shape, lambda_j_of_shape, per_shape};
use crate::characters::Character;
use crate::config::Tolerances;
use crate::error::{domain, Error, Result};
use crate::fq::MonicTable;
use crate::rmt::{h_statistic, hook_schur, sym_fn_values, HookPartition, SpectrumStats};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// c_0..c_{m−1} with c_n = Σ_{f ∈ M_n} χ(f).
#[derive(Clone, Debug, PartialEq)]
pub struct LPolynomial {
    pub q: u32,
    pub m: usize,
    pub char_id: u64,
    pub coeffs: Vec<Complex64>,
}

/// Sums the character over monic polynomials of each degree below m. The
/// degree-n monics reduce to the residues q^n..2q^n − 1.
pub fn l_polynomial(chi: &Character) -> Result<LPolynomial> {
    if chi.is_trivial {
        return domain("the trivial character's L-function is out of scope");
    }
    let q = chi.q as usize;
    let coeffs = (0..chi.m)
        .map(|n| {
            let start = q.pow(n as u32);
            chi.values[start..2 * start].iter().sum()
        })
        .collect();
    Ok(LPolynomial { q: chi.q, m: chi.m, char_id: chi.id, coeffs })
}

impl LPolynomial {
    pub fn eval(&self, u: Complex64) -> Complex64 {
        eval_poly(&self.coeffs, u)
    }

    /// Degree after dropping trailing coefficients of modulus ≤ `tol`.
    pub fn degree(&self, tol: f64) -> usize {
        self.coeffs.iter().rposition(|c| c.norm() > tol).unwrap_or(0)
    }

    /// All roots, after trimming negligible top coefficients.
    pub fn roots(&self, tol: f64) -> Result<Vec<Complex64>> {
        polynomial_roots(&self.coeffs[..=self.degree(tol)])
    }
}

fn eval_poly(c: &[Complex64], u: Complex64) -> Complex64 {
    c.iter().rev().fold(zero(), |acc, &x| acc * u + x)
}

/// Roots of Σ c_k u^k, whose top coefficient must be nonzero.
pub fn polynomial_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = c.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = c[d];
    if lead.norm() == 0.0 {
        return domain("leading coefficient is zero");
    }
    let companion = DMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            zero()
        }
    });
    let schur = Schur::try_new(companion, 1e-15, 10_000)
        .ok_or_else(|| Error::Integrity("companion-matrix eigenvalues did not converge".into()))?;
    let (_, t) = schur.unpack();
    let deriv: Vec<Complex64> = (1..=d).map(|k| c[k] * k as f64).collect();
    Ok((0..d)
        .map(|i| {
            let mut z = t[(i, i)];
            for _ in 0..3 {
                let dz = eval_poly(&deriv, z);
                if dz.norm() == 0.0 {
                    break;
                }
                let pz = eval_poly(c, z);
                let next = z - pz / dz;
                // near a multiple root the derivative is tiny and a raw
                // Newton step can overshoot; keep only improving steps
                if !next.is_finite() || eval_poly(c, next).norm() >= pz.norm() {
                    break;
                }
                z = next;
            }
            z
        })
        .collect())
}

/// Whether every root lies within `tol` of |u| = q^{−1/2} or |u| = 1.
pub fn roots_on_critical_circles(roots: &[Complex64], q: u32, tol: f64) -> bool {
    let r = (q as f64).sqrt().recip();
    roots
        .iter()
        .all(|u| (u.norm() - r).abs() <= tol || (u.norm() - 1.0).abs() <= tol)
}

/// Eigenvalue angles θ_1..θ_N of Θ_χ (sorted, in [0,1)) and λ_χ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrobeniusSpectrum {
    pub q: u32,
    pub m: usize,
    pub char_id: u64,
    pub lambda_chi: u32,
    pub thetas: Vec<f64>,
}

impl FrobeniusSpectrum {
    pub fn dimension(&self) -> usize {
        self.thetas.len()
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.thetas.iter().map(|&t| Complex64::from_polar(1.0, TAU * t)).collect()
    }

    pub fn stats(&self, max_power: usize) -> SpectrumStats {
        SpectrumStats::from_angles(&self.thetas, max_power)
    }

    /// Coefficients of (1 − λ_χ u) Π (1 − q^{1/2} e^{2πiθ} u).
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let sq = (self.q as f64).sqrt();
        let mut c = vec![Complex64::new(1.0, 0.0)];
        let mut factors: Vec<Complex64> = self.eigenvalues().into_iter().map(|w| w * sq).collect();
        if self.lambda_chi == 1 {
            factors.push(Complex64::new(1.0, 0.0));
        }
        for a in factors {
            let mut next = c.clone();
            next.push(zero());
            for (k, &x) in c.iter().enumerate() {
                next[k + 1] -= a * x;
            }
            c = next;
        }
        c
    }

    /// Largest coefficientwise difference between the reconstruction and `l`.
    pub fn reconstruction_error(&self, l: &LPolynomial) -> f64 {
        let r = self.reconstruct();
        (0..r.len().max(l.coeffs.len()))
            .map(|k| (r.get(k).copied().unwrap_or(zero()) - l.coeffs.get(k).copied().unwrap_or(zero())).norm())
            .fold(0.0, f64::max)
    }
}

/// The Frobenius spectrum of a primitive character mod T^m, m ≥ 2.
/// Fails with an integrity error if a zero is off its critical circle.
pub fn frobenius_spectrum(chi: &Character, tol: &Tolerances) -> Result<FrobeniusSpectrum> {
    if !chi.is_primitive || chi.m < 2 {
        return domain("Frobenius spectra need a primitive character mod T^m, m >= 2");
    }
    let l = l_polynomial(chi)?;
    let d = chi.m - 1;
    if l.coeffs[d].norm() < tol.coeff_zero {
        return Err(Error::Integrity(format!(
            "primitive character {} has an L-polynomial of degree below {d}",
            chi.id
        )));
    }
    let mut c = l.coeffs.clone();
    if chi.is_even {
        let at_one = l.eval(Complex64::new(1.0, 0.0));
        if at_one.norm() > tol.root * (chi.q as f64).powf(d as f64 / 2.0).max(1.0) {
            return Err(Error::Integrity(format!("even character {} has L(1) = {at_one}", chi.id)));
        }
        // divide by (1 − u)
        let mut r = vec![zero(); d];
        r[0] = c[0];
        for k in 1..d {
            r[k] = c[k] + r[k - 1];
        }
        c = r;
    }
    let target = (chi.q as f64).sqrt().recip();
    let mut thetas = Vec::with_capacity(c.len() - 1);
    for u in polynomial_roots(&c)? {
        if (u.norm() - target).abs() > tol.root {
            return Err(Error::Integrity(format!(
                "zero of L(u, chi_{}) at |u| = {} off the circle q^(-1/2) = {target}",
                chi.id,
                u.norm()
            )));
        }
        let inv = u.inv();
        thetas.push((inv.arg() / TAU).rem_euclid(1.0) % 1.0);
    }
    thetas.sort_by(f64::total_cmp);
    Ok(FrobeniusSpectrum { q: chi.q, m: chi.m, char_id: chi.id, lambda_chi: chi.lambda(), thetas })
}

/// Σ_{f ∈ M_n} w(f) χ(f) for a weight depending on the factorization
/// shape, given per shape id.
pub fn weighted_character_sum(table: &MonicTable, chi: &Character, n: usize, weights: &[i64]) -> Result<Complex64> {
    if n > table.max_deg() || table.field().q() != chi.q {
        return domain("character sum outside the table");
    }
    let q = chi.q as usize;
    let ids = table.shape_ids(n);
    let mut acc = zero();
    if n >= chi.m {
        let modulus = q.pow(chi.m as u32);
        for (idx, &id) in ids.iter().enumerate() {
            let w = weights[id as usize];
            if w != 0 {
                acc += chi.values[idx % modulus] * w as f64;
            }
        }
    } else {
        let offset = q.pow(n as u32);
        for (idx, &id) in ids.iter().enumerate() {
            let w = weights[id as usize];
            if w != 0 {
                acc += chi.values[idx + offset] * w as f64;
            }
        }
    }
    Ok(acc)
}

/// |Σ_{M_n} Λ(f)χ(f) + q^{n/2} Tr(Θ^n) + λ_χ|.
pub fn explicit_formula_residual(table: &MonicTable, chi: &Character, spec: &FrobeniusSpectrum, n: usize) -> Result<f64> {
    let weights = per_shape(table, |s| lambda_j_of_shape(s, 1));
    let lhs = weighted_character_sum(table, chi, n, &weights)?;
    let trace = spec.stats(n).power(n)?;
    let scale = (chi.q as f64).powf(n as f64 / 2.0);
    Ok((lhs + trace * scale + spec.lambda_chi as f64).norm())
}

/// |q^{−n/2} Σ_{M_n} Λ_j(f)χ(f) − H_j^{(n)}(Θ)|, small only on average.
pub fn explicit_formula_j_residual(
    table: &MonicTable,
    chi: &Character,
    spec: &FrobeniusSpectrum,
    j: u32,
    n: usize,
) -> Result<f64> {
    let weights = per_shape(table, |s| lambda_j_of_shape(s, j));
    let lhs = weighted_character_sum(table, chi, n, &weights)?;
    let scale = (chi.q as f64).powf(-(n as f64) / 2.0);
    Ok((lhs * scale - h_statistic(j, n, &spec.stats(n))?).norm())
}

/// Both sides of the δ_m / hook-Schur correspondence.
#[derive(Clone, Copy, Debug)]
pub struct DeltaSchur {
    /// q^{−(m+k)/2} Σ_{f ∈ M_{m+k}} δ_m(f) χ(f).
    pub normalized_sum: Complex64,
    /// s_{(m,1^k)}(Θ_χ), zero when k + 1 exceeds the spectrum's dimension.
    pub schur: Complex64,
    pub k: usize,
}

impl DeltaSchur {
    /// |(−1)^{k+1} normalized_sum − s_{(m,1^k)}|.
    pub fn residual(&self) -> f64 {
        let sign = if self.k % 2 == 1 { 1.0 } else { -1.0 };
        (self.normalized_sum * sign - self.schur).norm()
    }

    /// The same comparison with the opposite sign (−1)^k.
    pub fn opposite_sign_residual(&self) -> f64 {
        let sign = if self.k.is_multiple_of(2) { 1.0 } else { -1.0 };
        (self.normalized_sum * sign - self.schur).norm()
    }
}

pub fn delta_schur(
    table: &MonicTable,
    chi: &Character,
    spec: &FrobeniusSpectrum,
    m: usize,
    k: usize,
) -> Result<DeltaSchur> {
    let hook = HookPartition::new(m, k)?;
    let weights = per_shape(table, |s| delta_m_of_shape(s, m));
    let sum = weighted_character_sum(table, chi, m + k, &weights)?;
    let normalized_sum = sum * (chi.q as f64).powf(-((m + k) as f64) / 2.0);
    let schur = hook_schur(hook, &sym_fn_values(&spec.stats(m + k)))?;
    Ok(DeltaSchur { normalized_sum, schur, k })
}

/// `delta_schur(..).residual()`.
pub fn delta_schur_residual(
    table: &MonicTable,
    chi: &Character,
    spec: &FrobeniusSpectrum,
    m: usize,
    k: usize,
) -> Result<f64> {
    Ok(delta_schur(table, chi, spec, m, k)?.residual())
}

/// Writes spectra as CSV with columns q, m, char_id, lambda_chi,
/// theta_1..theta_{m−1}; rows with λ_χ = 1 leave the last column empty.
pub fn write_spectrum_csv<W: Write>(spectra: &[FrobeniusSpectrum], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(false).from_writer(out);
    let width = spectra.iter().map(|s| s.m - 1).max().unwrap_or(0);
    let mut header = vec!["q".to_string(), "m".into(), "char_id".into(), "lambda_chi".into()];
    header.extend((1..=width).map(|i| format!("theta_{i}")));
    let io = |e: csv::Error| Error::Output(e.to_string());
    w.write_record(&header).map_err(io)?;
    for s in spectra {
        let mut row = vec![s.q.to_string(), s.m.to_string(), s.char_id.to_string(), s.lambda_chi.to_string()];
        row.extend(s.thetas.iter().map(|t| t.to_string()));
        row.resize(4 + width, String::new());
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Output(e.to_string()))?;
    Ok(())
}

/// Parses the format written by [`write_spectrum_csv`], validating every row.
pub fn read_spectrum_csv<R: Read>(input: R) -> Result<Vec<FrobeniusSpectrum>> {
    let mut r = csv::ReaderBuilder::new().flexible(false).from_reader(input);
    let perr = |msg: String| Error::Parse(msg);
    let header = r.headers().map_err(|e| perr(e.to_string()))?.clone();
    let fixed = ["q", "m", "char_id", "lambda_chi"];
    if header.len() < 4 || header.iter().take(4).ne(fixed) {
        return Err(perr("spectrum header must start with q,m,char_id,lambda_chi".into()));
    }
    for (i, name) in header.iter().skip(4).enumerate() {
        if name != format!("theta_{}", i + 1) {
            return Err(perr(format!("unexpected column {name}")));
        }
    }
    let width = header.len() - 4;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| perr(e.to_string()))?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        let q: u32 = field(0).parse().map_err(|_| perr(format!("bad q {:?}", field(0))))?;
        let m: usize = field(1).parse().map_err(|_| perr(format!("bad m {:?}", field(1))))?;
        let char_id: u64 = field(2).parse().map_err(|_| perr(format!("bad char_id {:?}", field(2))))?;
        let lambda_chi: u32 = match field(3) {
            "0" => 0,
            "1" => 1,
            other => return Err(perr(format!("bad lambda_chi {other:?}"))),
        };
        if m < 2 || m - 1 > width || (m - 1) < lambda_chi as usize {
            return Err(perr(format!("modulus degree {m} does not fit {width} angle columns")));
        }
        let n = m - 1 - lambda_chi as usize;
        let mut thetas = Vec::with_capacity(n);
        for i in 0..width {
            let s = field(4 + i);
            if i < n {
                let t: f64 = s.parse().map_err(|_| perr(format!("bad angle {s:?}")))?;
                if !(0.0..1.0).contains(&t) {
                    return Err(perr(format!("angle {t} outside [0, 1)")));
                }
                thetas.push(t);
            } else if !s.is_empty() {
                return Err(perr(format!("unexpected angle {s:?} beyond N = {n}")));
            }
        }
        out.push(FrobeniusSpectrum { q, m, char_id, lambda_chi, thetas });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::build_unit_group;

    #[test]
    fn double_root_stays_put() {
        // (v^2 − iv − 1)(v + i)^2 with v = √7 u, a real case at q = 7, m = 5
        let s7 = 7f64.sqrt();
        let c = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -s7),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 7.0 * s7),
            Complex64::new(49.0, 0.0),
        ];
        let r = polynomial_roots(&c).unwrap();
        assert!(roots_on_critical_circles(&r, 7, 1e-6), "{r:?}");
        let near = r.iter().filter(|z| (**z - Complex64::new(0.0, -1.0 / s7)).norm() < 1e-6).count();
        assert_eq!(near, 2);
    }

    #[test]
    fn roots_of_known_polynomials() {
        let c = |x: f64| Complex64::new(x, 0.0);
        // (1 − 2u)(1 − 3u) = 1 − 5u + 6u^2
        let mut r = polynomial_roots(&[c(1.0), c(-5.0), c(6.0)]).unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - c(1.0 / 3.0)).norm() < 1e-12);
        assert!((r[1] - c(0.5)).norm() < 1e-12);
        assert!(polynomial_roots(&[c(1.0)]).unwrap().is_empty());
    }

    #[test]
    fn first_coefficients() {
        let g = build_unit_group(5, 3).unwrap();
        for chi in g.characters().filter(|c| !c.is_trivial) {
            let l = l_polynomial(&chi).unwrap();
            assert_eq!(l.coeffs[0], Complex64::new(1.0, 0.0));
            let c1: Complex64 = (0..5u32)
                .map(|a| chi.value(&crate::fq::Poly::new(crate::fq::FieldParams::new(5).unwrap(), [a as u64, 1])))
                .sum();
            assert!((l.coeffs[1] - c1).norm() < 1e-12);
        }
        assert!(l_polynomial(&g.character(0)).is_err());
    }

    #[test]
    fn spectra_reconstruct_their_l_polynomials() {
        let tol = Tolerances::default();
        let g = build_unit_group(5, 4).unwrap();
        let mut seen_even = false;
        for chi in g.characters().filter(|c| c.is_primitive) {
            let s = frobenius_spectrum(&chi, &tol).unwrap();
            assert_eq!(s.dimension(), 3 - chi.lambda() as usize);
            let l = l_polynomial(&chi).unwrap();
            assert!(s.reconstruction_error(&l) < 1e-6);
            if chi.is_even {
                seen_even = true;
                assert!(l.eval(Complex64::new(1.0, 0.0)).norm() < 1e-6);
            }
        }
        assert!(seen_even);
        assert!(frobenius_spectrum(&g.character(0), &tol).is_err());
    }

    #[test]
    fn spectrum_csv_round_trip() {
        let tol = Tolerances::default();
        let g = build_unit_group(3, 3).unwrap();
        let spectra: Vec<_> = g
            .characters()
            .filter(|c| c.is_primitive)
            .map(|c| frobenius_spectrum(&c, &tol).unwrap())
            .collect();
        let mut buf = Vec::new();
        write_spectrum_csv(&spectra, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("q,m,char_id,lambda_chi,theta_1,theta_2\n"));
        assert_eq!(read_spectrum_csv(buf.as_slice()).unwrap(), spectra);
        assert!(read_spectrum_csv("q,m,char_id,lambda_chi,theta_1\n3,2,1,0,1.5\n".as_bytes()).is_err());
        assert!(read_spectrum_csv("q,m,x\n".as_bytes()).is_err());
    }
}
