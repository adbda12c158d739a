use super::partition::{dimension, Partition};
use crate::error::{Error, Result};
use crate::groups::{IndexedGroup, Perm};
use crate::rep::{CMat, RealizedIrrep};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::HashMap;

/// Default cap on d_lambda for explicit Young orthogonal matrices.
pub const DEFAULT_YOR_DIM_CAP: u128 = 5000;

/// Standard Young tableaux of shape lambda, each stored as the (row, col) cell
/// of letters 0..n. Generated by placing the largest letter in a removable
/// corner, recursively.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut shape = lambda.parts().to_vec();
    let mut cells = vec![(0, 0); lambda.size()];
    place(&mut shape, &mut cells, &mut out);
    out
}

fn place(shape: &mut Vec<usize>, cells: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    let n: usize = shape.iter().sum();
    if n == 0 {
        out.push(cells.clone());
        return;
    }
    for r in 0..shape.len() {
        let removable = shape[r] > 0 && (r + 1 == shape.len() || shape[r + 1] < shape[r]);
        if removable {
            shape[r] -= 1;
            cells[n - 1] = (r, shape[r]);
            place(shape, cells, out);
            shape[r] += 1;
        }
    }
}

/// Young's orthogonal form: real orthogonal matrices for the adjacent
/// transpositions s_0, .., s_{n-2} in the standard-tableau basis.
#[derive(Clone, Debug)]
pub struct YoungOrthogonal {
    pub lambda: Partition,
    pub tableaux: Vec<Vec<(usize, usize)>>,
    pub generators: Vec<DMatrix<f64>>,
}

/// Builds Young's orthogonal form for lambda.
pub fn yor_matrices(lambda: &Partition) -> Result<YoungOrthogonal> {
    let d = dimension(lambda);
    if d > DEFAULT_YOR_DIM_CAP {
        return Err(Error::CapExceeded { what: "irrep dimension", size: d, cap: DEFAULT_YOR_DIM_CAP });
    }
    let tableaux = standard_tableaux(lambda);
    let index: HashMap<Vec<(usize, usize)>, usize> =
        tableaux.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let n = lambda.size();
    let content = |c: (usize, usize)| c.1 as f64 - c.0 as f64;
    let mut generators = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let mut m = DMatrix::<f64>::zeros(tableaux.len(), tableaux.len());
        for (t, cells) in tableaux.iter().enumerate() {
            let axial = content(cells[i + 1]) - content(cells[i]);
            m[(t, t)] = 1.0 / axial;
            if axial.abs() > 1.0 {
                let mut swapped = cells.clone();
                swapped.swap(i, i + 1);
                let s = index[&swapped];
                m[(s, t)] = (1.0 - 1.0 / (axial * axial)).sqrt();
            }
        }
        generators.push(m);
    }
    Ok(YoungOrthogonal { lambda: lambda.clone(), tableaux, generators })
}

impl YoungOrthogonal {
    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    /// rho(pi) as the product over an adjacent-transposition word of pi.
    pub fn matrix(&self, pi: &Perm) -> DMatrix<f64> {
        let d = self.dim();
        pi.adjacent_word().iter().fold(DMatrix::identity(d, d), |acc, &i| acc * &self.generators[i])
    }

    /// Realization over an enumerated S_n.
    pub fn realize(&self, group: &IndexedGroup) -> Result<RealizedIrrep> {
        let mats = group
            .elements()
            .iter()
            .map(|e| {
                let p = e.as_perm().ok_or_else(|| Error::GroupMismatch("Young matrices need S_n".into()))?;
                Ok(self.matrix(p).map(|x| Complex64::new(x, 0.0)))
            })
            .collect::<Result<Vec<CMat>>>()?;
        Ok(RealizedIrrep::new(self.lambda.to_string(), "young-orthogonal".into(), mats))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symrep::{mn_character, partitions};

    #[test]
    fn s3_standard() {
        let y = yor_matrices(&Partition::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(y.dim(), 2);
        let t = Perm::from_cycles("(12)", 3).unwrap();
        let c = Perm::from_cycles("(123)", 3).unwrap();
        assert!(y.matrix(&t).trace().abs() < 1e-12);
        assert!((y.matrix(&c).trace() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_and_sign() {
        for n in 2..6 {
            let triv = yor_matrices(&Partition::new(vec![n]).unwrap()).unwrap();
            let sign = yor_matrices(&Partition::new(vec![1; n]).unwrap()).unwrap();
            for i in 0..n - 1 {
                assert_eq!(triv.generators[i][(0, 0)], 1.0);
                assert_eq!(sign.generators[i][(0, 0)], -1.0);
            }
        }
    }

    #[test]
    fn coxeter_relations() {
        for lam in partitions(6).unwrap() {
            let y = yor_matrices(&lam).unwrap();
            let d = y.dim();
            let id = DMatrix::<f64>::identity(d, d);
            for i in 0..5 {
                let s = &y.generators[i];
                assert!((s * s - &id).abs().max() < 1e-12);
                if i + 1 < 5 {
                    let t = &y.generators[i + 1];
                    let st = s * t;
                    assert!((&st * &st * &st - &id).abs().max() < 1e-12);
                }
                for j in i + 2..5 {
                    let t = &y.generators[j];
                    assert!((s * t - t * s).abs().max() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn traces_match_characters_s5() {
        let parts = partitions(5).unwrap();
        for lam in &parts {
            let y = yor_matrices(lam).unwrap();
            for pi in Perm::all(5) {
                let mu = Partition::new(pi.cycle_type()).unwrap();
                let chi = mn_character(lam, &mu).unwrap() as f64;
                assert!((y.matrix(&pi).trace() - chi).abs() < 1e-9);
            }
        }
    }
}
