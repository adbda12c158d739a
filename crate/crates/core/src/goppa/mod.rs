//! Rational Goppa codes: generator matrices, exact minimum distance, permutation
//! automorphism groups and the check that automorphisms come from PGL_2(F_q).

use crate::algebra::{poly, Field, MatrixFq};
use crate::error::{invalid, Error, Result};
use crate::groups::Perm;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Cap on the number of codewords enumerated for the minimum distance.
pub const DEFAULT_CODEWORD_CAP: u128 = 1 << 24;
/// Largest length for automorphism enumeration over all of S_n.
pub const MAX_AUT_LENGTH: usize = 8;

/// Points gamma_i in F_q, degree bound r, and polynomials g, h with ascending
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalGoppaSpec {
    pub q: u32,
    pub gamma: Vec<u32>,
    pub r: usize,
    pub g: Vec<u32>,
    pub h: Vec<u32>,
}

impl RationalGoppaSpec {
    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    /// Checks distinct points, r < n, gcd(g, h) = 1 and g, h nonzero at every point.
    pub fn validate(&self) -> Result<Field> {
        let f = Field::with_order(self.q)?;
        for &x in self.gamma.iter().chain(&self.g).chain(&self.h) {
            f.check(x)?;
        }
        let mut sorted = self.gamma.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.gamma.len() {
            return invalid("evaluation points must be distinct");
        }
        if self.r + 1 > self.n() {
            return invalid(format!("r + 1 = {} exceeds n = {}", self.r + 1, self.n()));
        }
        if poly::degree(&self.g).is_none() || poly::degree(&self.h).is_none() {
            return invalid("g and h must be nonzero");
        }
        if poly::degree(&poly::gcd(&self.g, &self.h, &f)) != Some(0) {
            return invalid("g and h must be coprime");
        }
        for &x in &self.gamma {
            if poly::eval(&self.g, x, &f) == 0 || poly::eval(&self.h, x, &f) == 0 {
                return invalid(format!("g or h vanishes at the point {x}"));
            }
        }
        Ok(f)
    }
}

/// A linear code given by a generator matrix over F_q.
#[derive(Clone, Debug)]
pub struct LinearCode {
    pub field: Arc<Field>,
    pub generator: MatrixFq,
}

impl LinearCode {
    pub fn new(field: Arc<Field>, generator: MatrixFq) -> LinearCode {
        LinearCode { field, generator }
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    /// Dimension of the row space.
    pub fn dimension(&self) -> usize {
        self.generator.column_rank(&self.field)
    }

    pub fn is_full_rank(&self) -> bool {
        self.dimension() == self.generator.rows()
    }

    /// Canonical form: the nonzero rows of the reduced row echelon form.
    pub fn canonical(&self) -> MatrixFq {
        self.generator.row_space_basis(&self.field)
    }

    /// Exact minimum Hamming weight over all nonzero codewords.
    pub fn min_distance(&self, cap: u128) -> Result<usize> {
        let basis = self.canonical();
        let k = basis.rows();
        let q = self.field.q() as u128;
        let total = q.checked_pow(k as u32).unwrap_or(u128::MAX);
        if total > cap {
            return Err(Error::CapExceeded { what: "codewords", size: total, cap });
        }
        if k == 0 {
            return invalid("the zero code has no minimum distance");
        }
        let f = &self.field;
        let n = self.n();
        let best = (1..total as u64)
            .into_par_iter()
            .map(|mut idx| {
                let mut word = vec![0u32; n];
                for i in 0..k {
                    let c = (idx % q as u64) as u32;
                    idx /= q as u64;
                    if c != 0 {
                        for (w, &m) in word.iter_mut().zip(basis.row(i)) {
                            *w = f.add(*w, f.mul(c, m));
                        }
                    }
                }
                word.iter().filter(|&&x| x != 0).count()
            })
            .min()
            .unwrap();
        Ok(best)
    }

    /// The code with generator M P, column i moved to position perm[i].
    pub fn permuted(&self, perm: &Perm) -> Result<LinearCode> {
        Ok(LinearCode::new(self.field.clone(), self.generator.permute_columns(&perm.images())?))
    }
}

/// The (r+1) x n matrix with entries gamma_i^j g(gamma_i) / h(gamma_i).
pub fn build_goppa(spec: &RationalGoppaSpec) -> Result<LinearCode> {
    let f = spec.validate()?;
    let n = spec.n();
    let mut m = MatrixFq::zeros(spec.r + 1, n);
    for (i, &x) in spec.gamma.iter().enumerate() {
        let v = f.div(poly::eval(&spec.g, x, &f), poly::eval(&spec.h, x, &f)).ok_or(Error::Singular)?;
        let mut pw = 1;
        for j in 0..=spec.r {
            m.set(j, i, f.mul(pw, v));
            pw = f.mul(pw, x);
        }
    }
    Ok(LinearCode::new(Arc::new(f), m))
}

/// Permutation automorphisms with the group order and minimal degree.
#[derive(Clone, Debug, Serialize)]
pub struct CodeAutReport {
    pub automorphisms: Vec<Vec<usize>>,
    pub order: usize,
    /// Smallest support of a non-identity automorphism; `None` for the trivial group.
    pub minimal_degree: Option<usize>,
}

impl CodeAutReport {
    pub fn perms(&self) -> Vec<Perm> {
        self.automorphisms.iter().map(|p| Perm::from_images(p).unwrap()).collect()
    }
}

/// All pi in S_n with C pi = C, by comparing canonical forms.
pub fn automorphisms(code: &LinearCode) -> Result<CodeAutReport> {
    let n = code.n();
    if n > MAX_AUT_LENGTH {
        return Err(Error::CapExceeded {
            what: "automorphism search length",
            size: n as u128,
            cap: MAX_AUT_LENGTH as u128,
        });
    }
    let target = code.canonical();
    let perms: Vec<Perm> = Perm::all(n)
        .into_par_iter()
        .filter(|p| code.permuted(p).map(|c| c.canonical() == target).unwrap_or(false))
        .collect();
    let minimal_degree = perms.iter().filter(|p| !p.is_identity()).map(|p| p.support_size()).min();
    Ok(CodeAutReport { order: perms.len(), automorphisms: perms.iter().map(|p| p.images()).collect(), minimal_degree })
}

/// x -> (a x + b) / (c x + d), normalized with c = 1, or c = 0 and d = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mobius {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Mobius {
    /// `None` when x maps to infinity.
    pub fn apply(&self, x: u32, f: &Field) -> Option<u32> {
        let den = f.add(f.mul(self.c, x), self.d);
        if den == 0 {
            return None;
        }
        f.div(f.add(f.mul(self.a, x), self.b), den)
    }
}

/// One representative per element of PGL_2(F_q); q(q^2 - 1) in total.
pub fn pgl2_elements(f: &Field) -> Vec<Mobius> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for d in f.elements() {
                if f.sub(f.mul(a, d), b) != 0 {
                    out.push(Mobius { a, b, c: 1, d });
                }
            }
        }
    }
    for a in f.nonzero() {
        for b in f.elements() {
            out.push(Mobius { a, b, c: 0, d: 1 });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct StichtenothReport {
    pub holds: bool,
    pub pgl2_order: usize,
    pub aut_order: usize,
    /// Automorphisms with no inducing fractional-linear map.
    pub unmatched: Vec<Vec<usize>>,
}

/// Whether every automorphism pi satisfies sigma(gamma_i) = gamma_{pi(i)} for
/// some sigma in PGL_2(F_q). Requires 1 <= r <= n - 3.
pub fn stichtenoth_check(spec: &RationalGoppaSpec, report: &CodeAutReport) -> Result<StichtenothReport> {
    let f = spec.validate()?;
    let n = spec.n();
    if spec.r < 1 || spec.r + 3 > n {
        return Err(Error::Precondition(format!("need 1 <= r <= n - 3, got r = {} and n = {n}", spec.r)));
    }
    let pgl = pgl2_elements(&f);
    let induced: Vec<Vec<usize>> = pgl
        .iter()
        .filter_map(|s| {
            spec.gamma
                .iter()
                .map(|&x| s.apply(x, &f).and_then(|y| spec.gamma.iter().position(|&z| z == y)))
                .collect::<Option<Vec<usize>>>()
        })
        .collect();
    let unmatched: Vec<Vec<usize>> = report.automorphisms.iter().filter(|p| !induced.contains(p)).cloned().collect();
    Ok(StichtenothReport { holds: unmatched.is_empty(), pgl2_order: pgl.len(), aut_order: report.order, unmatched })
}

/// Random spec with distinct points and g, h of degree at most 2, coprime and
/// nonzero on the points. Requires n <= q.
pub fn random_spec<R: Rng + ?Sized>(q: u32, n: usize, r: usize, rng: &mut R) -> Result<RationalGoppaSpec> {
    let f = Field::with_order(q)?;
    if n > q as usize {
        return invalid(format!("n = {n} points do not fit in F_{q}"));
    }
    let mut points: Vec<u32> = f.elements().collect();
    points.shuffle(rng);
    points.truncate(n);
    loop {
        let g: Vec<u32> = (0..3).map(|_| rng.gen_range(0..q)).collect();
        let h: Vec<u32> = (0..3).map(|_| rng.gen_range(0..q)).collect();
        let spec = RationalGoppaSpec { q, gamma: points.clone(), r, g: poly::trim(g), h: poly::trim(h) };
        if spec.validate().is_ok() {
            return Ok(spec);
        }
    }
}
