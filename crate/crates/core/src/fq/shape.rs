use super::factor::Factorization;

/// The degree/multiplicity multiset of a factorization, sorted.
///
/// μ, Λ_j and δ_m depend on a polynomial only through this data, so
/// enumeration code evaluates them once per distinct shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FactorShape(Vec<(usize, u32)>);

impl FactorShape {
    pub fn new(mut parts: Vec<(usize, u32)>) -> Self {
        parts.retain(|&(d, e)| d > 0 && e > 0);
        parts.sort_unstable();
        FactorShape(parts)
    }

    pub fn parts(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(d, e)| d * e as usize).sum()
    }

    pub fn num_distinct(&self) -> usize {
        self.0.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    pub(crate) fn with_part(&self, deg: usize, mult: u32) -> Self {
        let mut parts = self.0.clone();
        parts.push((deg, mult));
        Self::new(parts)
    }
}

impl From<&Factorization> for FactorShape {
    fn from(f: &Factorization) -> Self {
        FactorShape::new(f.degree_multiplicities())
    }
}
