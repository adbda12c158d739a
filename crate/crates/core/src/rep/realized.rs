use crate::groups::IndexedGroup;
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

/// Unitary matrices for every element of an enumerated group, indexed by
/// element position. The realized coordinates are the measurement basis.
#[derive(Clone, Debug)]
pub struct RealizedIrrep {
    pub label: String,
    pub dim: usize,
    /// How the basis was produced, e.g. `young-orthogonal` or `projection(seed=7)`.
    pub provenance: String,
    mats: Vec<CMat>,
}

impl RealizedIrrep {
    pub fn new(label: String, provenance: String, mats: Vec<CMat>) -> RealizedIrrep {
        let dim = mats.first().map_or(0, |m| m.nrows());
        RealizedIrrep { label, dim, provenance, mats }
    }

    pub fn matrix(&self, g: usize) -> &CMat {
        &self.mats[g]
    }

    pub fn trace(&self, g: usize) -> Complex64 {
        self.mats[g].trace()
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    /// Max entrywise error of rho(ab) - rho(a)rho(b) over the given pairs.
    pub fn homomorphism_error(&self, group: &IndexedGroup, pairs: &[(usize, usize)]) -> f64 {
        pairs
            .iter()
            .map(|&(a, b)| max_abs(&(&self.mats[group.mul(a, b)] - &self.mats[a] * &self.mats[b])))
            .fold(0.0, f64::max)
    }

    /// Max entrywise error of rho(g)^dagger rho(g) - I over all g.
    pub fn unitarity_error(&self) -> f64 {
        let id = CMat::identity(self.dim, self.dim);
        self.mats.iter().map(|m| max_abs(&(m.adjoint() * m - &id))).fold(0.0, f64::max)
    }
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}
