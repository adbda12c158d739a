use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Largest field order accepted by [`Field::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Finite field F_q with q = p^n.
///
/// Elements are integers in `0..q`: the base-p digits of an element are the
/// coefficients (constant term first) of its residue modulo the defining
/// polynomial. The defining polynomial is the smallest monic irreducible of
/// degree n when its lower coefficients are read as a base-p integer, and the
/// distinguished generator is the smallest element of multiplicative order q-1.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Serializable identity of a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldId {
    pub q: u32,
    pub p: u32,
    pub n: u32,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n
    }
}
impl Eq for Field {}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p (ascending coefficients).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
    }
    r
}

fn monic_from_index(idx: u64, degree: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(degree as usize + 1);
    let mut x = idx;
    for _ in 0..degree {
        v.push((x % p as u64) as u32);
        x /= p as u64;
    }
    v.push(1);
    v
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = (f.len() - 1) as u32;
    for d in 1..=n / 2 {
        for idx in 0..(p as u64).pow(d) {
            let g = monic_from_index(idx, d, p);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

impl Field {
    /// Builds F_{p^n}. Fails unless p is prime, n >= 1 and p^n <= [`MAX_FIELD_ORDER`].
    pub fn new(p: u32, n: u32) -> Result<Field> {
        if !is_prime(p) {
            return invalid(format!("p={p} is not prime"));
        }
        if n == 0 {
            return invalid("extension degree must be at least 1");
        }
        let q = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::CapExceeded { what: "field order", size: q as u128, cap: MAX_FIELD_ORDER as u128 });
        }
        let q = q as u32;
        let modulus = (0..(p as u64).pow(n))
            .map(|i| monic_from_index(i, n, p))
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree");
        let mut field = Field { p, n, q, modulus, generator: 0, exp: Vec::new(), log: Vec::new() };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| field.slow_pow(g, order / r) != 1))
            .expect("the multiplicative group is cyclic");
        field.generator = generator;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = field.slow_mul(x, generator);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u32) -> Result<Field> {
        if q < 2 {
            return invalid(format!("q={q} is not a prime power"));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut n = 0;
        let mut m = q;
        while m.is_multiple_of(p) {
            m /= p;
            n += 1;
        }
        if m != 1 {
            return invalid(format!("q={q} is not a prime power"));
        }
        Field::new(p, n)
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.n as usize);
        let mut x = a;
        for _ in 0..self.n {
            d.push(x % self.p);
            x /= self.p;
        }
        d
    }

    fn encode_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.n as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.encode_digits(&r)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn id(&self) -> FieldId {
        FieldId { q: self.q, p: self.p, n: self.n }
    }
    /// Defining polynomial, ascending coefficients, monic of degree n.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// Distinguished generator of the multiplicative group.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if a < self.q {
            Ok(a)
        } else {
            invalid(format!("{a} is not an element of F_{}", self.q))
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if self.n == 1 {
            (a + b) % self.p
        } else {
            let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
            while x > 0 || y > 0 {
                out += ((x % self.p + y % self.p) % self.p) * place;
                x /= self.p;
                y /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            a
        } else if self.n == 1 {
            (self.p - a) % self.p
        } else {
            let (mut x, mut out, mut place) = (a, 0, 1);
            while x > 0 {
                out += ((self.p - x % self.p) % self.p) * place;
                x /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % (self.q - 1)) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (e % (self.q as u64 - 1));
        self.exp[(l % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm to the distinguished generator; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0 && a < self.q).then(|| self.log[a as usize])
    }

    /// generator^e.
    pub fn exp(&self, e: u64) -> u32 {
        self.exp[(e % (self.q as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Option<u32> {
        let l = self.log(a)?;
        let m = self.q - 1;
        Some(m / gcd(l, m))
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn nonzero(&self) -> std::ops::Range<u32> {
        1..self.q
    }

    /// The prime-field element `k mod p`.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds F_{p^n}; thin alias for [`Field::new`].
pub fn field_make(p: u32, n: u32) -> Result<Field> {
    Field::new(p, n)
}

/// Embedding of a subfield into an extension, determined by sending the
/// subfield's polynomial root to the smallest root of its defining polynomial
/// in the extension.
#[derive(Clone, Debug)]
pub struct Embedding {
    image: Vec<u32>,
}

impl Embedding {
    pub fn new(sub: &Field, ext: &Field) -> Result<Embedding> {
        if sub.p != ext.p || !ext.n.is_multiple_of(sub.n) {
            return invalid(format!("F_{} is not a subfield of F_{}", sub.q, ext.q));
        }
        let eval = |z: u32| sub.modulus.iter().rev().fold(0u32, |acc, &c| ext.add(ext.mul(acc, z), c));
        let root =
            if sub.n == 1 { 0 } else { ext.elements().find(|&z| eval(z) == 0).expect("the extension contains a root") };
        let image = sub
            .elements()
            .map(|a| {
                sub.digits(a).iter().rev().fold(0u32, |acc, &c| {
                    let acc = if sub.n == 1 { acc } else { ext.mul(acc, root) };
                    ext.add(acc, c)
                })
            })
            .collect();
        Ok(Embedding { image })
    }

    #[inline]
    pub fn map(&self, a: u32) -> u32 {
        self.image[a as usize]
    }

    /// Inverse image, if `b` lies in the embedded subfield.
    pub fn preimage(&self, b: u32) -> Option<u32> {
        self.image.iter().position(|&x| x == b).map(|i| i as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_modulus_and_generator() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.generator(), 2);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
    }

    #[test]
    fn prime_field_generators() {
        assert_eq!(Field::new(2, 1).unwrap().generator(), 1);
        assert_eq!(Field::new(3, 1).unwrap().generator(), 2);
        assert_eq!(Field::new(5, 1).unwrap().generator(), 2);
        assert_eq!(Field::new(7, 1).unwrap().generator(), 3);
    }

    #[test]
    fn f8_and_f9_moduli() {
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 0).is_err());
        assert!(matches!(Field::new(2, 30), Err(Error::CapExceeded { .. })));
        assert!(Field::with_order(6).is_err());
        assert_eq!(Field::with_order(9).unwrap().n(), 2);
    }

    #[test]
    fn field_axioms_small() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)] {
            let f = Field::new(p, n).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.order(f.generator()), Some(f.q() - 1));
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        for (p, n) in [(2, 1), (2, 2), (3, 1), (5, 1), (2, 3)] {
            let sub = Field::new(p, n).unwrap();
            let ext = Field::new(p, 2 * n).unwrap();
            let e = Embedding::new(&sub, &ext).unwrap();
            for a in sub.elements() {
                assert_eq!(e.preimage(e.map(a)), Some(a));
                for b in sub.elements() {
                    assert_eq!(e.map(sub.add(a, b)), ext.add(e.map(a), e.map(b)));
                    assert_eq!(e.map(sub.mul(a, b)), ext.mul(e.map(a), e.map(b)));
                }
            }
        }
    }
}
