use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Character table over the conjugacy classes of an enumerated group. Column
/// order follows [`crate::groups::ConjugacyClasses`].
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub class_sizes: Vec<usize>,
    #[serde(skip)]
    pub values: Vec<Vec<Complex64>>,
}

impl CharacterTable {
    pub fn group_order(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    pub fn num_irreps(&self) -> usize {
        self.labels.len()
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn dim_square_sum(&self) -> usize {
        self.dims.iter().map(|d| d * d).sum()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// (1/|G|) sum_C |C| a(C) conj(b(C)).
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let total: Complex64 =
            self.class_sizes.iter().zip(a.iter().zip(b)).map(|(&s, (x, y))| x * y.conj() * s as f64).sum();
        total / self.group_order() as f64
    }

    /// Largest deviation of the Gram matrix of the rows from the identity.
    pub fn orthogonality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.num_irreps() {
            for j in 0..self.num_irreps() {
                let ip = self.inner(&self.values[i], &self.values[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }

    /// Multiplicity of irrep `s` in the class function `chi`, rounded; fails if
    /// the inner product is not an integer within `tol`.
    pub fn multiplicity(&self, chi: &[Complex64], s: usize, tol: f64) -> Result<u64> {
        let ip = self.inner(chi, &self.values[s]);
        let r = ip.re.round();
        if (ip - Complex64::new(r, 0.0)).norm() > tol || r < -tol {
            return Err(Error::Numerical(format!(
                "inner product with {} is {ip}, not a non-negative integer",
                self.labels[s]
            )));
        }
        Ok(r as u64)
    }

    /// Pointwise chi_r * conj(chi_r), the character of rho tensor rho*.
    pub fn tensor_dual(&self, r: usize) -> Vec<Complex64> {
        self.values[r].iter().map(|z| z * z.conj()).collect()
    }

    /// Irreps occurring in rho tensor rho*.
    pub fn constituents_of_tensor_dual(&self, r: usize, tol: f64) -> Result<Vec<usize>> {
        let chi = self.tensor_dual(r);
        let mut out = Vec::new();
        for s in 0..self.num_irreps() {
            if self.multiplicity(&chi, s, tol)? > 0 {
                out.push(s);
            }
        }
        Ok(out)
    }
}

/// `re+im i` rendering used in CSV output.
pub fn format_complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im < 0.0 {
        format!("{re:.12}{im:.12}i")
    } else {
        format!("{re:.12}+{im:.12}i")
    }
}
