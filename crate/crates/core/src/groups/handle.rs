use super::element::Element;
use super::perm::Perm;
use crate::algebra::{enumerate_glk, glk_order, random_invertible, Field, MatrixFq};
use crate::error::{invalid, Error, Result};
use serde_json::{json, Value};
use std::sync::Arc;

/// Description of a finite group; products are computed on element payloads
/// without enumerating the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupHandle {
    Symmetric(usize),
    GeneralLinear { k: usize, field: Arc<Field> },
    Product(Box<GroupHandle>, Box<GroupHandle>),
    WreathZ2(Box<GroupHandle>),
}

impl GroupHandle {
    pub fn symmetric(n: usize) -> GroupHandle {
        GroupHandle::Symmetric(n)
    }

    pub fn general_linear(k: usize, q: u32) -> Result<GroupHandle> {
        if k == 0 {
            return invalid("GL_0 is not supported");
        }
        Ok(GroupHandle::GeneralLinear { k, field: Arc::new(Field::with_order(q)?) })
    }

    pub fn product(a: GroupHandle, b: GroupHandle) -> GroupHandle {
        GroupHandle::Product(Box::new(a), Box::new(b))
    }

    pub fn wreath(base: GroupHandle) -> GroupHandle {
        GroupHandle::WreathZ2(Box::new(base))
    }

    /// Parses names such as `s3`, `gl2-3`, `gl2-2*s3`, `wr(s3)`, `wr(gl2-2*s3)`.
    pub fn parse(s: &str) -> Result<GroupHandle> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let (g, rest) = parse_expr(&t)?;
        if !rest.is_empty() {
            return Err(Error::Parse(format!("trailing input '{rest}' in group name {s}")));
        }
        Ok(g)
    }

    /// Canonical name accepted by [`GroupHandle::parse`].
    pub fn name(&self) -> String {
        match self {
            GroupHandle::Symmetric(n) => format!("s{n}"),
            GroupHandle::GeneralLinear { k, field } => format!("gl{k}-{}", field.q()),
            GroupHandle::Product(a, b) => {
                let wrap = |g: &GroupHandle| match g {
                    GroupHandle::Product(..) => format!("({})", g.name()),
                    _ => g.name(),
                };
                format!("{}*{}", wrap(a), wrap(b))
            }
            GroupHandle::WreathZ2(b) => format!("wr({})", b.name()),
        }
    }

    pub fn order(&self) -> u128 {
        match self {
            GroupHandle::Symmetric(n) => (1..=*n as u128).product(),
            GroupHandle::GeneralLinear { k, field } => glk_order(*k, field.q()),
            GroupHandle::Product(a, b) => a.order().saturating_mul(b.order()),
            GroupHandle::WreathZ2(b) => b.order().saturating_mul(b.order()).saturating_mul(2),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupHandle::Symmetric(n) => Element::Perm(Perm::identity(*n)),
            GroupHandle::GeneralLinear { k, .. } => Element::Mat(MatrixFq::identity(*k)),
            GroupHandle::Product(a, b) => Element::pair(a.identity(), b.identity()),
            GroupHandle::WreathZ2(b) => Element::wreath(b.identity(), b.identity(), false),
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (GroupHandle::Symmetric(n), Element::Perm(p)) => p.degree() == *n,
            (GroupHandle::GeneralLinear { k, field }, Element::Mat(m)) => {
                m.rows() == *k && m.cols() == *k && m.data().iter().all(|&x| x < field.q()) && m.is_invertible(field)
            }
            (GroupHandle::Product(a, b), Element::Pair(x, y)) => a.contains(x) && b.contains(y),
            (GroupHandle::WreathZ2(base), Element::Wreath(x, y, _)) => base.contains(x) && base.contains(y),
            _ => false,
        }
    }

    fn require(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{} does not contain {e}", self.name())))
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.require(a)?;
        self.require(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        self.require(a)?;
        Ok(self.inv_unchecked(a))
    }

    /// Product without membership checks; callers guarantee membership.
    pub fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (GroupHandle::Symmetric(_), Element::Perm(x), Element::Perm(y)) => Element::Perm(x.mul(y)),
            (GroupHandle::GeneralLinear { field, .. }, Element::Mat(x), Element::Mat(y)) => {
                Element::Mat(x.mul(y, field).expect("square matrices of equal size"))
            }
            (GroupHandle::Product(g, h), Element::Pair(a1, a2), Element::Pair(b1, b2)) => {
                Element::pair(g.mul_unchecked(a1, b1), h.mul_unchecked(a2, b2))
            }
            (GroupHandle::WreathZ2(base), Element::Wreath(x1, y1, s1), Element::Wreath(x2, y2, s2)) => {
                let (u, v) = if *s1 { (y2, x2) } else { (x2, y2) };
                Element::wreath(base.mul_unchecked(x1, u), base.mul_unchecked(y1, v), s1 ^ s2)
            }
            _ => panic!("mul_unchecked called with elements outside {}", self.name()),
        }
    }

    pub fn inv_unchecked(&self, a: &Element) -> Element {
        match (self, a) {
            (GroupHandle::Symmetric(_), Element::Perm(x)) => Element::Perm(x.inverse()),
            (GroupHandle::GeneralLinear { field, .. }, Element::Mat(x)) => {
                Element::Mat(x.inverse(field).expect("group elements are invertible"))
            }
            (GroupHandle::Product(g, h), Element::Pair(x, y)) => Element::pair(g.inv_unchecked(x), h.inv_unchecked(y)),
            (GroupHandle::WreathZ2(base), Element::Wreath(x, y, s)) => {
                let (xi, yi) = (base.inv_unchecked(x), base.inv_unchecked(y));
                if *s {
                    Element::wreath(yi, xi, true)
                } else {
                    Element::wreath(xi, yi, false)
                }
            }
            _ => panic!("inv_unchecked called with an element outside {}", self.name()),
        }
    }

    /// All elements, failing if the order exceeds `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Element>> {
        let order = self.order();
        if order > cap {
            return Err(Error::CapExceeded { what: "group order", size: order, cap });
        }
        Ok(match self {
            GroupHandle::Symmetric(n) => Perm::all(*n).into_iter().map(Element::Perm).collect(),
            GroupHandle::GeneralLinear { k, field } => {
                enumerate_glk(*k, field, cap)?.into_iter().map(Element::Mat).collect()
            }
            GroupHandle::Product(a, b) => {
                let (ea, eb) = (a.elements(cap)?, b.elements(cap)?);
                let mut out = Vec::with_capacity(ea.len() * eb.len());
                for x in &ea {
                    for y in &eb {
                        out.push(Element::pair(x.clone(), y.clone()));
                    }
                }
                out
            }
            GroupHandle::WreathZ2(base) => {
                let eb = base.elements(cap)?;
                let mut out = Vec::with_capacity(2 * eb.len() * eb.len());
                for s in [false, true] {
                    for x in &eb {
                        for y in &eb {
                            out.push(Element::wreath(x.clone(), y.clone(), s));
                        }
                    }
                }
                out
            }
        })
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Element {
        match self {
            GroupHandle::Symmetric(n) => {
                use rand::seq::SliceRandom;
                let mut img: Vec<usize> = (0..*n).collect();
                img.shuffle(rng);
                Element::Perm(Perm::from_images(&img).unwrap())
            }
            GroupHandle::GeneralLinear { k, field } => Element::Mat(random_invertible(*k, field, rng)),
            GroupHandle::Product(a, b) => Element::pair(a.random_element(rng), b.random_element(rng)),
            GroupHandle::WreathZ2(base) => {
                let x = base.random_element(rng);
                let y = base.random_element(rng);
                Element::wreath(x, y, rng.gen())
            }
        }
    }

    /// JSON form: permutations as image arrays, matrices as row arrays, pairs as
    /// two-element arrays, wreath elements as `{"x":..,"y":..,"b":0|1}`.
    pub fn element_to_json(&self, e: &Element) -> Value {
        match e {
            Element::Perm(p) => json!(p.images()),
            Element::Mat(m) => json!(m.to_rows()),
            Element::Pair(a, b) => match self {
                GroupHandle::Product(g, h) => json!([g.element_to_json(a), h.element_to_json(b)]),
                _ => Value::Null,
            },
            Element::Wreath(x, y, s) => match self {
                GroupHandle::WreathZ2(base) => {
                    json!({"x": base.element_to_json(x), "y": base.element_to_json(y), "b": u8::from(*s)})
                }
                _ => Value::Null,
            },
        }
    }

    pub fn element_from_json(&self, v: &Value) -> Result<Element> {
        let bad = || Error::Parse(format!("cannot read {v} as an element of {}", self.name()));
        let e = match self {
            GroupHandle::Symmetric(_) => {
                let img: Vec<usize> = serde_json::from_value(v.clone()).map_err(|_| bad())?;
                Element::Perm(Perm::from_images(&img)?)
            }
            GroupHandle::GeneralLinear { field, .. } => {
                let rows: Vec<Vec<u32>> = serde_json::from_value(v.clone()).map_err(|_| bad())?;
                Element::Mat(MatrixFq::from_rows(&rows, field)?)
            }
            GroupHandle::Product(g, h) => {
                let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
                Element::pair(g.element_from_json(&arr[0])?, h.element_from_json(&arr[1])?)
            }
            GroupHandle::WreathZ2(base) => {
                let obj = v.as_object().ok_or_else(bad)?;
                let x = base.element_from_json(obj.get("x").ok_or_else(bad)?)?;
                let y = base.element_from_json(obj.get("y").ok_or_else(bad)?)?;
                let b = obj.get("b").and_then(Value::as_u64).ok_or_else(bad)?;
                if b > 1 {
                    return Err(bad());
                }
                Element::wreath(x, y, b == 1)
            }
        };
        self.require(&e)?;
        Ok(e)
    }
}

fn parse_expr(s: &str) -> Result<(GroupHandle, &str)> {
    let (mut g, mut rest) = parse_term(s)?;
    while let Some(r) = rest.strip_prefix('*') {
        let (h, r2) = parse_term(r)?;
        g = GroupHandle::product(g, h);
        rest = r2;
    }
    Ok((g, rest))
}

fn parse_term(s: &str) -> Result<(GroupHandle, &str)> {
    if let Some(r) = s.strip_prefix("wr(") {
        let (g, r) = parse_expr(r)?;
        let r = r.strip_prefix(')').ok_or_else(|| Error::Parse("missing ')' after wr(".into()))?;
        return Ok((GroupHandle::wreath(g), r));
    }
    if let Some(r) = s.strip_prefix('(') {
        let (g, r) = parse_expr(r)?;
        let r = r.strip_prefix(')').ok_or_else(|| Error::Parse("missing ')'".into()))?;
        return Ok((g, r));
    }
    let digits_end = |t: &str| t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
    if let Some(r) = s.strip_prefix("gl") {
        let e = digits_end(r);
        let k: usize = r[..e].parse().map_err(|_| Error::Parse(format!("bad GL degree in {s}")))?;
        let r = r[e..].strip_prefix('-').ok_or_else(|| Error::Parse(format!("expected gl<k>-<q> in {s}")))?;
        let e = digits_end(r);
        let q: u32 = r[..e].parse().map_err(|_| Error::Parse(format!("bad field order in {s}")))?;
        return Ok((GroupHandle::general_linear(k, q)?, &r[e..]));
    }
    if let Some(r) = s.strip_prefix('s') {
        let e = digits_end(r);
        let n: usize = r[..e].parse().map_err(|_| Error::Parse(format!("bad degree in {s}")))?;
        return Ok((GroupHandle::symmetric(n), &r[e..]));
    }
    Err(Error::Parse(format!("unrecognised group at '{s}'")))
}
