use crate::algebra::{Embedding, Field, MatrixFq};
use crate::error::{invalid, Error, Result};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// Largest q accepted for closed-form GL_2(F_q) data.
pub const MAX_GL2_Q: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Gl2ClassTag {
    /// Scalar x I.
    A,
    /// Non-diagonalizable with eigenvalue x.
    B,
    /// Diagonalizable with distinct eigenvalues x < y in F_q.
    C,
    /// Eigenvalues xi, xi^q in F_{q^2} \ F_q.
    D,
}

/// Conjugacy class of GL_2(F_q). For tag D, `x` and `y` are the coordinates of
/// the canonical eigenvalue xi = x + gamma y, and `trace`/`det` identify the
/// class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Gl2Class {
    pub tag: Gl2ClassTag,
    pub x: u32,
    pub y: u32,
    pub trace: u32,
    pub det: u32,
    pub size: u64,
    /// Canonical eigenvalue in F_{q^2} (embedded coordinates); for tags A-C
    /// this is the image of x.
    #[serde(skip)]
    pub xi: u32,
}

impl Gl2Class {
    pub fn label(&self) -> String {
        match self.tag {
            Gl2ClassTag::A => format!("a_{}", self.x),
            Gl2ClassTag::B => format!("b_{}", self.x),
            Gl2ClassTag::C => format!("c_{},{}", self.x, self.y),
            Gl2ClassTag::D => format!("d_{},{}", self.x, self.y),
        }
    }
}

/// F_q, F_{q^2}, the embedding between them, gamma and the list of classes.
#[derive(Clone, Debug)]
pub struct Gl2Context {
    pub field: Arc<Field>,
    pub big: Field,
    pub embed: Embedding,
    /// Fixed element of F_{q^2} \ F_q: a square root of the generator for odd q,
    /// the smallest non-F_q element for even q.
    pub gamma: u32,
    pub classes: Vec<Gl2Class>,
    lookup: HashMap<(Gl2ClassTag, u32, u32), usize>,
}

impl Gl2Context {
    pub fn new(q: u32) -> Result<Gl2Context> {
        if q > MAX_GL2_Q {
            return Err(Error::CapExceeded { what: "GL_2 field order", size: q as u128, cap: MAX_GL2_Q as u128 });
        }
        let field = Field::with_order(q)?;
        Gl2Context::from_field(Arc::new(field))
    }

    pub fn from_field(field: Arc<Field>) -> Result<Gl2Context> {
        let q = field.q();
        if q > MAX_GL2_Q {
            return Err(Error::CapExceeded { what: "GL_2 field order", size: q as u128, cap: MAX_GL2_Q as u128 });
        }
        let big = Field::new(field.p(), 2 * field.n())?;
        let embed = Embedding::new(&field, &big)?;
        let in_fq = |z: u32| embed.preimage(z).is_some();
        let gamma = if q % 2 == 1 {
            let eps = embed.map(field.generator());
            big.elements().find(|&z| big.mul(z, z) == eps).expect("the generator is a square in F_{q^2}")
        } else {
            big.elements().find(|&z| !in_fq(z)).unwrap()
        };
        let qq = q as u64;
        let mut classes = Vec::new();
        for x in field.nonzero() {
            classes.push(Gl2Class {
                tag: Gl2ClassTag::A,
                x,
                y: x,
                trace: field.add(x, x),
                det: field.mul(x, x),
                size: 1,
                xi: embed.map(x),
            });
        }
        for x in field.nonzero() {
            classes.push(Gl2Class {
                tag: Gl2ClassTag::B,
                x,
                y: x,
                trace: field.add(x, x),
                det: field.mul(x, x),
                size: qq * qq - 1,
                xi: embed.map(x),
            });
        }
        for x in field.nonzero() {
            for y in x + 1..q {
                classes.push(Gl2Class {
                    tag: Gl2ClassTag::C,
                    x,
                    y,
                    trace: field.add(x, y),
                    det: field.mul(x, y),
                    size: qq * qq + qq,
                    xi: embed.map(x),
                });
            }
        }
        // Coordinates of big-field elements in the basis {1, gamma}.
        let mut coords = HashMap::new();
        for x in field.elements() {
            for y in field.elements() {
                coords.insert(big.add(embed.map(x), big.mul(gamma, embed.map(y))), (x, y));
            }
        }
        let mut seen = HashMap::new();
        for xi in big.nonzero() {
            if in_fq(xi) {
                continue;
            }
            let conj = big.pow(xi, qq);
            let tr = embed.preimage(big.add(xi, conj)).expect("trace lies in F_q");
            let det = embed.preimage(big.mul(xi, conj)).expect("norm lies in F_q");
            if seen.contains_key(&(tr, det)) {
                continue;
            }
            let (a, b) = (coords[&xi], coords[&conj]);
            let (canon, (x, y)) = if (a.1, a.0) <= (b.1, b.0) { (xi, a) } else { (conj, b) };
            seen.insert((tr, det), ());
            classes.push(Gl2Class { tag: Gl2ClassTag::D, x, y, trace: tr, det, size: qq * qq - qq, xi: canon });
        }
        let lookup = classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let key = match c.tag {
                    Gl2ClassTag::D => (c.tag, c.trace, c.det),
                    _ => (c.tag, c.x, c.y),
                };
                (key, i)
            })
            .collect();
        Ok(Gl2Context { field, big, embed, gamma, classes, lookup })
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Class of an invertible 2x2 matrix, by eigenvalue analysis.
    pub fn classify(&self, g: &MatrixFq) -> Result<usize> {
        let f = &*self.field;
        if g.rows() != 2 || g.cols() != 2 {
            return invalid("classify expects a 2x2 matrix");
        }
        let det = g.det(f)?;
        if det == 0 {
            return Err(Error::Singular);
        }
        let tr = g.trace(f);
        let roots: Vec<u32> = f.elements().filter(|&t| f.add(f.sub(f.mul(t, t), f.mul(tr, t)), det) == 0).collect();
        let key = match roots.as_slice() {
            [] => (Gl2ClassTag::D, tr, det),
            [x, y] => (Gl2ClassTag::C, *x.min(y), *x.max(y)),
            [x] => {
                if g.get(0, 1) == 0 && g.get(1, 0) == 0 && g.get(0, 0) == g.get(1, 1) {
                    (Gl2ClassTag::A, *x, *x)
                } else {
                    (Gl2ClassTag::B, *x, *x)
                }
            }
            _ => unreachable!("a quadratic has at most two roots"),
        };
        Ok(self.lookup[&key])
    }

    /// Table 1 representative of a class.
    pub fn representative(&self, c: usize) -> MatrixFq {
        let cl = &self.classes[c];
        let f = &*self.field;
        match cl.tag {
            Gl2ClassTag::A => MatrixFq::from_vec(2, 2, vec![cl.x, 0, 0, cl.x]),
            Gl2ClassTag::B => MatrixFq::from_vec(2, 2, vec![cl.x, 1, 0, cl.x]),
            Gl2ClassTag::C => MatrixFq::from_vec(2, 2, vec![cl.x, 0, 0, cl.y]),
            Gl2ClassTag::D => MatrixFq::from_vec(2, 2, vec![0, f.neg(cl.det), 1, cl.trace]),
        }
    }

    pub fn is_scalar_class(&self, c: usize) -> bool {
        self.classes[c].tag == Gl2ClassTag::A
    }

    pub fn group_order(&self) -> u64 {
        let q = self.q() as u64;
        (q * q - 1) * (q * q - q)
    }
}
