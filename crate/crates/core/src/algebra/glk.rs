use super::field::Field;
use super::matrix::MatrixFq;
use crate::error::{Error, Result};
use std::collections::HashSet;

/// Default cap on |GL_k(F_q)| for exhaustive enumeration.
pub const DEFAULT_GLK_CAP: u128 = 1_000_000;

/// |GL_k(F_q)| = prod_{i<k} (q^k - q^i).
pub fn glk_order(k: usize, q: u32) -> u128 {
    fix_product(k, 0, q)
}

fn fix_product(k: usize, r: usize, q: u32) -> u128 {
    let q = q as u128;
    (r..k).map(|i| q.pow(k as u32) - q.pow(i as u32)).product()
}

/// |Fix(M)| for a k x n matrix M of rank r: prod_{i=r}^{k-1} (q^k - q^i).
pub fn fix_size_formula(m: &MatrixFq, f: &Field) -> u128 {
    fix_product(m.rows(), m.column_rank(f), f.q())
}

/// All of GL_k(F_q), rows chosen in increasing encoding order.
pub fn enumerate_glk(k: usize, f: &Field, cap: u128) -> Result<Vec<MatrixFq>> {
    let order = glk_order(k, f.q());
    if order > cap {
        return Err(Error::CapExceeded { what: "GL_k order", size: order, cap });
    }
    let q = f.q() as u64;
    let vectors: Vec<Vec<u32>> = (0..q.pow(k as u32))
        .map(|mut idx| {
            let mut v = vec![0u32; k];
            for slot in v.iter_mut().rev() {
                *slot = (idx % q) as u32;
                idx /= q;
            }
            v
        })
        .collect();
    let mut out = Vec::with_capacity(order as usize);
    let mut rows: Vec<usize> = Vec::with_capacity(k);
    extend_rows(k, f, &vectors, &mut rows, &mut out);
    debug_assert_eq!(out.len() as u128, order);
    Ok(out)
}

fn extend_rows(k: usize, f: &Field, vectors: &[Vec<u32>], rows: &mut Vec<usize>, out: &mut Vec<MatrixFq>) {
    if rows.len() == k {
        let data = rows.iter().flat_map(|&i| vectors[i].iter().copied()).collect();
        out.push(MatrixFq::from_vec(k, k, data));
        return;
    }
    let chosen: Vec<Vec<u32>> = rows.iter().map(|&i| vectors[i].clone()).collect();
    for (idx, v) in vectors.iter().enumerate() {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        let m = MatrixFq::from_vec(trial.len(), k, trial.concat());
        if m.column_rank(f) == trial.len() {
            rows.push(idx);
            extend_rows(k, f, vectors, rows, out);
            rows.pop();
        }
    }
}

/// Fix(M) = {A in GL_k : AM = M}, by exhaustive enumeration.
pub fn fix_group_elements(m: &MatrixFq, f: &Field, cap: u128) -> Result<Vec<MatrixFq>> {
    let all = enumerate_glk(m.rows(), f, cap)?;
    let mut out = Vec::new();
    for a in all {
        if a.mul(m, f)? == *m {
            out.push(a);
        }
    }
    Ok(out)
}

/// Size of the orbit {AM : A in GL_k}.
pub fn orbit_size(m: &MatrixFq, f: &Field, cap: u128) -> Result<usize> {
    let mut seen = HashSet::new();
    for a in enumerate_glk(m.rows(), f, cap)? {
        seen.insert(a.mul(m, f)?);
    }
    Ok(seen.len())
}

/// Uniform element of GL_k(F_q) by rejection sampling.
pub fn random_invertible<R: rand::Rng + ?Sized>(k: usize, f: &Field, rng: &mut R) -> MatrixFq {
    loop {
        let a = MatrixFq::random(k, k, f, rng);
        if a.is_invertible(f) {
            return a;
        }
    }
}
