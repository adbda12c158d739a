use super::field::Field;

/// Polynomial over F_q with ascending coefficients; trailing zeros are trimmed
/// by every operation.
pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Horner evaluation.
pub fn eval(a: &[u32], x: u32, f: &Field) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn rem(a: &[u32], b: &[u32], f: &Field) -> Poly {
    let db = degree(b).expect("division by the zero polynomial");
    let inv_lead = f.inv(b[db]).unwrap();
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = f.mul(r[dr], inv_lead);
        for i in 0..=db {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(factor, b[i]));
        }
        r = trim(r);
    }
    r
}

/// Monic greatest common divisor; the zero polynomial has gcd(0, 0) = 0.
pub fn gcd(a: &[u32], b: &[u32], f: &Field) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while degree(&y).is_some() {
        let r = rem(&x, &y, f);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = f.inv(x[d]).unwrap();
        x.iter_mut().for_each(|c| *c = f.mul(*c, inv));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_eval() {
        let f5 = Field::new(5, 1).unwrap();
        // (x-1)(x-2) = x^2 - 3x + 2 and (x-1)(x-3) = x^2 - 4x + 3
        let a = vec![2, 2, 1];
        let b = vec![3, 1, 1];
        assert_eq!(gcd(&a, &b, &f5), vec![4, 1]);
        assert_eq!(eval(&a, 1, &f5), 0);
        assert_eq!(eval(&a, 3, &f5), 2);
        assert_eq!(gcd(&[1], &a, &f5), vec![1]);
    }
}
