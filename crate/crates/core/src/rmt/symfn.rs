//! Power traces, elementary and complete homogeneous symmetric functions,
//! and hook Schur functions of a unitary spectrum.

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Power traces p_0..p_K of a spectrum of N unit-modulus eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumStats {
    n: usize,
    powers: Vec<Complex64>,
}

impl SpectrumStats {
    /// p_k = Σ ω_i^k for k = 0..=max_power.
    pub fn from_eigenvalues(eigs: &[Complex64], max_power: usize) -> Self {
        let mut powers = vec![Complex64::new(0.0, 0.0); max_power + 1];
        for &w in eigs {
            let mut x = Complex64::new(1.0, 0.0);
            for p in powers.iter_mut() {
                *p += x;
                x *= w;
            }
        }
        SpectrumStats { n: eigs.len(), powers }
    }

    /// From angles θ_i with eigenvalues e^{2πiθ_i}.
    pub fn from_angles(thetas: &[f64], max_power: usize) -> Self {
        let eigs: Vec<Complex64> = thetas
            .iter()
            .map(|&t| Complex64::from_polar(1.0, std::f64::consts::TAU * t))
            .collect();
        Self::from_eigenvalues(&eigs, max_power)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn max_power(&self) -> usize {
        self.powers.len() - 1
    }

    /// Tr(g^k).
    pub fn power(&self, k: usize) -> Result<Complex64> {
        match self.powers.get(k) {
            Some(&p) => Ok(p),
            None => domain(format!("power trace p_{k} not available (max {})", self.max_power())),
        }
    }

    pub fn powers(&self) -> &[Complex64] {
        &self.powers
    }

    /// The statistics of e^{iφ}g: p_k picks up e^{ikφ}.
    pub fn rotated(&self, phi: f64) -> Self {
        let powers = self
            .powers
            .iter()
            .enumerate()
            .map(|(k, &p)| p * Complex64::from_polar(1.0, phi * k as f64))
            .collect();
        SpectrumStats { n: self.n, powers }
    }
}

/// e_0..e_K and h_0..h_K, with e_k = 0 for k > N.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFnValues {
    pub n: usize,
    pub e: Vec<Complex64>,
    pub h: Vec<Complex64>,
}

/// Newton's identities: k e_k = Σ_{i=1}^k (−1)^{i−1} e_{k−i} p_i and
/// k h_k = Σ_{i=1}^k h_{k−i} p_i.
pub fn sym_fn_values(s: &SpectrumStats) -> SymFnValues {
    let k_max = s.max_power();
    let p = s.powers();
    let mut e = vec![Complex64::new(0.0, 0.0); k_max + 1];
    let mut h = vec![Complex64::new(0.0, 0.0); k_max + 1];
    e[0] = Complex64::new(1.0, 0.0);
    h[0] = Complex64::new(1.0, 0.0);
    for k in 1..=k_max {
        let mut se = Complex64::new(0.0, 0.0);
        let mut sh = Complex64::new(0.0, 0.0);
        for i in 1..=k {
            let term = e[k - i] * p[i];
            se += if i % 2 == 1 { term } else { -term };
            sh += h[k - i] * p[i];
        }
        if k <= s.n {
            e[k] = se / k as f64;
        }
        h[k] = sh / k as f64;
    }
    SymFnValues { n: s.n, e, h }
}

/// The hook partition (arm, 1^leg).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HookPartition {
    pub arm: usize,
    pub leg: usize,
}

impl HookPartition {
    pub fn new(arm: usize, leg: usize) -> Result<Self> {
        if arm == 0 {
            return domain("hook partitions need arm >= 1");
        }
        Ok(HookPartition { arm, leg })
    }

    pub fn size(&self) -> usize {
        self.arm + self.leg
    }

    pub fn length(&self) -> usize {
        self.leg + 1
    }
}

/// s_{(m,1^k)} = Σ_{i=0}^{m−1} (−1)^i e_{k+1+i} h_{m−1−i}, which telescopes
/// the Pieri relation e_a h_b = s_{(b+1,1^{a−1})} + s_{(b,1^a)}. Zero when
/// the hook is longer than N.
pub fn hook_schur(lambda: HookPartition, v: &SymFnValues) -> Result<Complex64> {
    let (m, k) = (lambda.arm, lambda.leg);
    if k + 1 > v.n {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if k + m >= v.e.len() || m > v.h.len() {
        return domain(format!("symmetric functions up to degree {} are needed", k + m));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..m {
        let term = v.e[k + 1 + i] * v.h[m - 1 - i];
        acc += if i % 2 == 0 { term } else { -term };
    }
    Ok(acc)
}
