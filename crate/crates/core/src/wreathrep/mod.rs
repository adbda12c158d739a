//! Irreducible characters and explicit matrices of G wr Z_2 built from those
//! of G, the hidden subgroup K = ((H0, s^-1 H0 s), 0) u ((H0 s, s^-1 H0), 1),
//! and maximal normalized characters on K.

use crate::error::{Error, Result};
use crate::groups::{Element, GroupHandle, IndexedGroup};
use crate::rep::{kron, CMat, CharacterTable, RealizedIrrep};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WreathKind {
    /// Induced from rho (x) sigma, rho != sigma, stored with rho < sigma.
    Pair(usize, usize),
    /// rho (x) rho extended by +1 on the swap.
    Plus(usize),
    /// rho (x) rho extended by -1 on the swap.
    Minus(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct WreathIrrep {
    pub kind: WreathKind,
    pub label: String,
    pub dim: usize,
}

/// All irreps of G wr Z_2: plus and minus for each base irrep, then unordered
/// pairs; |G^|^2/2 + 3|G^|/2 in total.
pub fn wreath_char_table(base: &CharacterTable) -> Vec<WreathIrrep> {
    let m = base.num_irreps();
    let mut out = Vec::with_capacity(m * (m + 3) / 2);
    for i in 0..m {
        let d = base.dims[i];
        out.push(WreathIrrep { kind: WreathKind::Plus(i), label: format!("{{{}}}+", base.labels[i]), dim: d * d });
        out.push(WreathIrrep { kind: WreathKind::Minus(i), label: format!("{{{}}}-", base.labels[i]), dim: d * d });
    }
    for i in 0..m {
        for j in i + 1..m {
            out.push(WreathIrrep {
                kind: WreathKind::Pair(i, j),
                label: format!("{{{},{}}}", base.labels[i], base.labels[j]),
                dim: 2 * base.dims[i] * base.dims[j],
            });
        }
    }
    out
}

/// Character value at ((x, y), b) from base character values at x, y and xy
/// (each indexed by base irrep).
pub fn wreath_character(
    kind: WreathKind,
    at_x: &[Complex64],
    at_y: &[Complex64],
    at_xy: &[Complex64],
    b: bool,
) -> Complex64 {
    match (kind, b) {
        (WreathKind::Pair(i, j), false) => at_x[i] * at_y[j] + at_y[i] * at_x[j],
        (WreathKind::Pair(..), true) => Complex64::new(0.0, 0.0),
        (WreathKind::Plus(i) | WreathKind::Minus(i), false) => at_x[i] * at_y[i],
        (WreathKind::Plus(i), true) => at_xy[i],
        (WreathKind::Minus(i), true) => -at_xy[i],
    }
}

fn swap_columns(k: &CMat, d: usize) -> CMat {
    CMat::from_fn(k.nrows(), k.ncols(), |r, c| k[(r, (c % d) * d + c / d)])
}

/// Realizes a wreath irrep from unitary base realizations.
///
/// Plus/minus: ((x,y),b) maps to (rho(x) (x) rho(y)) SWAP^b, with a sign on b=1
/// for minus. Pair: block diagonal diag(rho(x)(x)sigma(y), rho(y)(x)sigma(x))
/// at b=0 and the same blocks placed anti-diagonally at b=1.
pub fn wreath_realize(
    irrep: &WreathIrrep,
    base_realized: &[RealizedIrrep],
    base_group: &IndexedGroup,
    group: &IndexedGroup,
) -> Result<RealizedIrrep> {
    for r in base_realized {
        if r.unitarity_error() > 1e-8 {
            return Err(Error::Numerical(format!("base realization {} is not unitary", r.label)));
        }
    }
    let mut mats = Vec::with_capacity(group.order());
    for e in group.elements() {
        let (x, y, b) = e.as_wreath().ok_or_else(|| Error::GroupMismatch("wreath element expected".into()))?;
        let (ix, iy) = (base_group.index_of(x)?, base_group.index_of(y)?);
        let m = match irrep.kind {
            WreathKind::Plus(i) | WreathKind::Minus(i) => {
                let r = &base_realized[i];
                let k = kron(r.matrix(ix), r.matrix(iy));
                let mut k = if b { swap_columns(&k, r.dim) } else { k };
                if b && matches!(irrep.kind, WreathKind::Minus(_)) {
                    k.neg_mut();
                }
                k
            }
            WreathKind::Pair(i, j) => {
                let (r, s) = (&base_realized[i], &base_realized[j]);
                let a = kron(r.matrix(ix), s.matrix(iy));
                let c = kron(r.matrix(iy), s.matrix(ix));
                let h = a.nrows();
                let mut m = CMat::zeros(2 * h, 2 * h);
                let (top, bottom) = if b { (h, 0) } else { (0, h) };
                m.view_mut((0, top), (h, h)).copy_from(&a);
                m.view_mut((h, bottom), (h, h)).copy_from(&c);
                m
            }
        };
        mats.push(m);
    }
    let provenance = match irrep.kind {
        WreathKind::Plus(_) => "wreath-plus",
        WreathKind::Minus(_) => "wreath-minus",
        WreathKind::Pair(..) => "wreath-pair",
    };
    let base_prov = match irrep.kind {
        WreathKind::Plus(i) | WreathKind::Minus(i) => base_realized[i].provenance.clone(),
        WreathKind::Pair(i, j) => format!("{},{}", base_realized[i].provenance, base_realized[j].provenance),
    };
    Ok(RealizedIrrep::new(irrep.label.clone(), format!("{provenance}({base_prov})"), mats))
}

/// Explicit K built from H0 and s, with closure verified.
#[derive(Clone, Debug)]
pub struct KSubgroup {
    pub h0: Vec<Element>,
    pub s: Element,
    pub elements: Vec<Element>,
}

fn check_closed(base: &GroupHandle, set: &[Element]) -> Result<()> {
    let lookup: HashSet<&Element> = set.iter().collect();
    for a in set {
        for b in set {
            let c = base.mul_unchecked(a, b);
            if !lookup.contains(&c) {
                return Err(Error::NotClosed(format!("{a} * {b} = {c}")));
            }
        }
    }
    Ok(())
}

/// K = ((H0, s^-1 H0 s), 0) u ((H0 s, s^-1 H0), 1) inside G wr Z_2.
pub fn k_build(base: &GroupHandle, h0: &[Element], s: &Element) -> Result<KSubgroup> {
    for h in h0 {
        if !base.contains(h) {
            return Err(Error::GroupMismatch(format!("{h} is not in {}", base.name())));
        }
    }
    if !base.contains(s) {
        return Err(Error::GroupMismatch(format!("{s} is not in {}", base.name())));
    }
    let mut h0: Vec<Element> = h0.to_vec();
    if !h0.contains(&base.identity()) {
        h0.push(base.identity());
    }
    h0.sort();
    h0.dedup();
    check_closed(base, &h0)?;
    let sinv = base.inv_unchecked(s);
    let mut elements = Vec::with_capacity(2 * h0.len() * h0.len());
    for flip in [false, true] {
        for h in &h0 {
            for hp in &h0 {
                let e = if flip {
                    Element::wreath(base.mul_unchecked(h, s), base.mul_unchecked(&sinv, hp), true)
                } else {
                    Element::wreath(h.clone(), base.mul_unchecked(&base.mul_unchecked(&sinv, hp), s), false)
                };
                elements.push(e);
            }
        }
    }
    let wreath = GroupHandle::wreath(base.clone());
    check_closed(&wreath, &elements)?;
    let distinct: HashSet<&Element> = elements.iter().collect();
    if distinct.len() != 2 * h0.len() * h0.len() {
        return Err(Error::Numerical("K has repeated elements".into()));
    }
    Ok(KSubgroup { h0, s: s.clone(), elements })
}

impl KSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Maximal normalized characters of a wreath irrep on K, computed directly and
/// compared with closed forms.
#[derive(Clone, Debug, Serialize)]
pub struct KCharReport {
    pub label: String,
    pub kind: WreathKind,
    /// max over k in K, k != 1, of |chi(k)| / dim.
    pub direct: f64,
    /// chi_bar(H0) of the base irreps involved.
    pub base_chi_bar: Vec<f64>,
    /// Stated closed form: chi_bar_rho chi_bar_sigma for pairs,
    /// max(chi_bar_rho^2, 1/d_rho) for plus/minus.
    pub stated_value: f64,
    /// Pairs: direct <= stated. Plus/minus: direct == stated.
    pub stated_relation_holds: bool,
    /// Plus/minus only: direct <= stated.
    pub stated_upper_bound_holds: bool,
    /// Closed form obtained by splitting K by which coordinates are trivial:
    /// (chi_bar_rho + chi_bar_sigma)/2 for pairs (an upper bound),
    /// max(chi_bar_rho, 1/d_rho) for plus/minus (exact).
    pub derived_value: f64,
    pub derived_relation_holds: bool,
}

/// `base_values(e)` returns the base character values at `e`, one per base irrep.
pub fn k_max_normalized_char(
    irrep: &WreathIrrep,
    k: &KSubgroup,
    base: &GroupHandle,
    base_dims: &[usize],
    base_values: &dyn Fn(&Element) -> Result<Vec<Complex64>>,
    tol: f64,
) -> Result<KCharReport> {
    if k.order() <= 1 {
        return Err(Error::Precondition("K is trivial".into()));
    }
    let ident = GroupHandle::wreath(base.clone()).identity();
    let mut direct = 0.0f64;
    for e in k.elements.iter().filter(|&e| *e != ident) {
        let (x, y, b) = e.as_wreath().unwrap();
        let vx = base_values(x)?;
        let vy = base_values(y)?;
        let vxy = base_values(&base.mul_unchecked(x, y))?;
        let chi = wreath_character(irrep.kind, &vx, &vy, &vxy, b);
        direct = direct.max(chi.norm() / irrep.dim as f64);
    }
    let chi_bar = |i: usize| -> Result<f64> {
        let mut best = 0.0f64;
        for h in k.h0.iter().filter(|&h| *h != base.identity()) {
            best = best.max(base_values(h)?[i].norm() / base_dims[i] as f64);
        }
        Ok(best)
    };
    let report = match irrep.kind {
        WreathKind::Pair(i, j) => {
            let (a, b) = (chi_bar(i)?, chi_bar(j)?);
            let stated = a * b;
            let derived = (a + b) / 2.0;
            KCharReport {
                label: irrep.label.clone(),
                kind: irrep.kind,
                direct,
                base_chi_bar: vec![a, b],
                stated_value: stated,
                stated_relation_holds: direct <= stated + tol,
                stated_upper_bound_holds: direct <= stated + tol,
                derived_value: derived,
                derived_relation_holds: direct <= derived + tol,
            }
        }
        WreathKind::Plus(i) | WreathKind::Minus(i) => {
            let a = chi_bar(i)?;
            let inv_d = 1.0 / base_dims[i] as f64;
            let stated = (a * a).max(inv_d);
            let derived = a.max(inv_d);
            KCharReport {
                label: irrep.label.clone(),
                kind: irrep.kind,
                direct,
                base_chi_bar: vec![a],
                stated_value: stated,
                stated_relation_holds: (direct - stated).abs() <= tol,
                stated_upper_bound_holds: direct <= stated + tol,
                derived_value: derived,
                derived_relation_holds: (direct - derived).abs() <= tol,
            }
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Perm;

    fn s3_table() -> CharacterTable {
        CharacterTable {
            labels: vec!["[3]".into(), "[2,1]".into(), "[1,1,1]".into()],
            dims: vec![1, 2, 1],
            class_sizes: vec![1, 3, 2],
            values: vec![],
        }
    }

    #[test]
    fn s3_wreath_dimensions() {
        let irreps = wreath_char_table(&s3_table());
        assert_eq!(irreps.len(), 9);
        let mut dims: Vec<usize> = irreps.iter().map(|r| r.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 2, 4, 4, 4, 4]);
        assert_eq!(dims.iter().map(|d| d * d).sum::<usize>(), 72);
    }

    #[test]
    fn k_examples() {
        let s3 = GroupHandle::symmetric(3);
        let id = s3.identity();
        let k = k_build(&s3, std::slice::from_ref(&id), &id).unwrap();
        assert_eq!(
            k.elements,
            vec![Element::wreath(id.clone(), id.clone(), false), Element::wreath(id.clone(), id.clone(), true)]
        );
        let s = Element::Perm(Perm::from_cycles("(123)", 3).unwrap());
        let k = k_build(&s3, &[], &s).unwrap();
        assert_eq!(k.order(), 2);
        assert!(k.elements.contains(&Element::wreath(s.clone(), s3.inv(&s).unwrap(), true)));
        let t = Element::Perm(Perm::from_cycles("(12)", 3).unwrap());
        assert_eq!(k_build(&s3, &[id.clone(), t], &s).unwrap().order(), 8);
        let c = Element::Perm(Perm::from_cycles("(123)", 3).unwrap());
        assert!(matches!(k_build(&s3, &[id, c], &s), Err(Error::NotClosed(_))));
    }
}
