use super::realized::{CMat, RealizedIrrep};
use crate::error::{Error, Result};
use crate::groups::IndexedGroup;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

/// Default cap on |G| for realization through the regular representation.
pub const DEFAULT_REALIZE_CAP: usize = 5000;

/// Realizes the irrep with character `chi` (indexed by element) and dimension
/// `dim` inside the left regular representation.
///
/// The isotypic component is the column space of the character projector. A
/// seeded random Hermitian map averaged over G commutes with the action; on the
/// isotypic component it acts as `I (x) B` for a generic `B`, so its top
/// eigenspace is one irreducible copy. The result is unitary.
pub fn realize_by_projection(
    group: &IndexedGroup,
    chi: &[Complex64],
    dim: usize,
    label: &str,
    seed: u64,
    cap: usize,
) -> Result<RealizedIrrep> {
    let n = group.order();
    if n > cap {
        return Err(Error::CapExceeded { what: "realization group order", size: n as u128, cap: cap as u128 });
    }
    if dim == 1 {
        let mats = chi.iter().map(|&z| CMat::from_element(1, 1, z)).collect();
        return Ok(RealizedIrrep::new(label.to_string(), "character".into(), mats));
    }
    let iso_dim = dim * dim;
    let scale = dim as f64 / n as f64;

    // Orthonormal basis of the isotypic component: columns P e_h, where
    // (P e_h)(x) = (d/|G|) conj(chi(x h^{-1})).
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(iso_dim);
    for h in 0..n {
        if basis.len() == iso_dim {
            break;
        }
        let hinv = group.inv(h);
        let mut v: Vec<Complex64> = (0..n).map(|x| chi[group.mul(x, hinv)].conj() * scale).collect();
        for _ in 0..2 {
            for b in &basis {
                let c: Complex64 = b.iter().zip(&v).map(|(bi, vi)| bi.conj() * vi).sum();
                v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= c * bi);
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|z| *z /= norm);
            basis.push(v);
        }
    }
    if basis.len() != iso_dim {
        return Err(Error::Numerical(format!(
            "isotypic component of {label} has dimension {} instead of {iso_dim}",
            basis.len()
        )));
    }
    let q = CMat::from_fn(n, iso_dim, |i, j| basis[j][i]);

    // Restricted action on generators: (L(s) v)(x) = v(s^{-1} x).
    let gens = group.generators();
    let restrict = |s: usize| -> CMat {
        let sinv = group.inv(s);
        let shifted = CMat::from_fn(n, iso_dim, |x, j| q[(group.mul(sinv, x), j)]);
        q.adjoint() * shifted
    };
    let gen_mats: Vec<CMat> = gens.iter().map(|&s| restrict(s)).collect();
    let iso = extend_from_generators(group, &gens, &gen_mats, iso_dim);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = CMat::from_fn(iso_dim, iso_dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let a = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let mut t = CMat::zeros(iso_dim, iso_dim);
    for m in &iso {
        t += m * &a * m.adjoint();
    }
    t /= Complex64::new(n as f64, 0.0);
    let t = (&t + t.adjoint()) * Complex64::new(0.5, 0.0);
    let u = top_eigenspace(&t, dim).ok_or_else(|| {
        Error::Numerical(format!("no separated eigenspace of dimension {dim} for {label}; change the seed"))
    })?;
    let mut mats: Vec<CMat> = iso.iter().map(|m| u.adjoint() * m * &u).collect();
    mats[group.identity()] = CMat::identity(dim, dim);
    Ok(RealizedIrrep::new(label.to_string(), format!("projection(seed={seed})"), mats))
}

/// Matrices for every element from matrices on generators, by breadth-first
/// search over the Cayley graph.
pub fn extend_from_generators(group: &IndexedGroup, gens: &[usize], gen_mats: &[CMat], dim: usize) -> Vec<CMat> {
    let n = group.order();
    let mut mats: Vec<Option<CMat>> = vec![None; n];
    mats[group.identity()] = Some(CMat::identity(dim, dim));
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for (s, ms) in gens.iter().zip(gen_mats) {
            let y = group.mul(x, *s);
            if mats[y].is_none() {
                mats[y] = Some(mats[x].as_ref().unwrap() * ms);
                queue.push_back(y);
            }
        }
    }
    mats.into_iter().map(|m| m.expect("generators generate the group")).collect()
}

/// Orthonormal basis of the top eigenspace of `t`, which acts as `I (x) B` on
/// `V (x) C^dim` with `B` having `dim` simple eigenvalues.
///
/// Only eigenvalues are taken from the eigensolver (via the real symmetric
/// embedding [[A, -B], [B, A]] of A + iB, where each eigenvalue doubles). The
/// eigenspace is the column space of the spectral projector
/// prod_{mu != lambda} (t - mu) / (lambda - mu), which stays accurate when the
/// eigenvalues are repeated.
fn top_eigenspace(t: &CMat, dim: usize) -> Option<CMat> {
    let n = t.nrows();
    let real = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = t[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut values: Vec<f64> = real.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match clusters.last_mut() {
            Some(c) if (c[0] - v).abs() < 1e-6 => c.push(v),
            _ => clusters.push(vec![v]),
        }
    }
    if clusters.iter().any(|c| c.len() != 2 * (n / dim)) || clusters.len() * (n / dim) != n {
        return None;
    }
    let centers: Vec<f64> = clusters.iter().map(|c| c.iter().sum::<f64>() / c.len() as f64).collect();
    let lambda = centers[0];
    let id = CMat::identity(n, n);
    let mut proj = id.clone();
    for &mu in &centers[1..] {
        proj = proj * (t - &id * Complex64::new(mu, 0.0)) / Complex64::new(lambda - mu, 0.0);
    }
    let mut candidates: Vec<DVector<Complex64>> = proj.column_iter().map(|c| c.clone_owned()).collect();
    candidates.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let mut cols: Vec<DVector<Complex64>> = Vec::with_capacity(dim);
    for mut v in candidates {
        if cols.len() == n / dim {
            break;
        }
        for _ in 0..2 {
            for b in &cols {
                let c = b.dotc(&v);
                v -= b * c;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            cols.push(v / Complex64::new(norm, 0.0));
        }
    }
    if cols.len() != n / dim {
        return None;
    }
    let u = CMat::from_columns(&cols);
    let residual = (t * &u - &u * Complex64::new(lambda, 0.0)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    (residual < 1e-9).then_some(u)
}
