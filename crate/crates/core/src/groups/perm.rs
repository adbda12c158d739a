use crate::error::{invalid, Result};
use std::fmt;

/// Permutation of `{0, .., n-1}` stored as its image array.
///
/// The product `a.mul(b)` applies `a` first, so `(a*b)[i] = b[a[i]]`. With the
/// permutation matrix `P_a[i][a[i]] = 1` this makes `P_{a*b} = P_a P_b`, which is
/// the convention used when permutations act on the right of row vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n > u8::MAX as usize {
            return invalid(format!("degree {n} exceeds 255"));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return invalid(format!("{images:?} is not a permutation"));
            }
            seen[x] = true;
        }
        Ok(Perm(images.iter().map(|&x| x as u8).collect()))
    }

    /// Parses cycle notation with 1-based points, e.g. `(1 2 3)(4 5)` or `(123)`.
    /// Without separators each digit is its own point.
    pub fn from_cycles(s: &str, n: usize) -> Result<Perm> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return invalid(format!("malformed cycle notation: {s}"));
            };
            let Some(end) = stripped.find(')') else {
                return invalid(format!("unclosed cycle in {s}"));
            };
            let body = &stripped[..end];
            let points: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|e| crate::Error::Parse(e.to_string())))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10).map(|d| d as usize).ok_or_else(|| crate::Error::Parse(format!("bad point {c}")))
                    })
                    .collect::<Result<_>>()?
            };
            if points.iter().any(|&p| p == 0 || p > n) {
                return invalid(format!("cycle {body} has points outside 1..={n}"));
            }
            for (i, &p) in points.iter().enumerate() {
                img[p - 1] = points[(i + 1) % points.len()] - 1;
            }
            rest = stripped[end + 1..].trim_start();
        }
        Perm::from_images(&img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&a| other.0[a as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            inv[a as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &a)| i == a as usize)
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Number of moved points.
    pub fn support_size(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &a)| *i != a as usize).count()
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let parity = self.cycle_type().iter().map(|&l| l - 1).sum::<usize>() % 2;
        if parity == 0 {
            1
        } else {
            -1
        }
    }

    /// Adjacent transposition swapping `i` and `i+1`.
    pub fn adjacent(n: usize, i: usize) -> Perm {
        let mut p = Perm::identity(n);
        p.0.swap(i, i + 1);
        p
    }

    /// Word `[i1, .., ik]` with `self = s_{i1} * .. * s_{ik}` in adjacent transpositions.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut cur = self.0.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..cur.len().saturating_sub(1) {
                if cur[i] > cur[i + 1] {
                    cur.swap(i, i + 1);
                    word.push(i);
                    continue 'outer;
                }
            }
            return word;
        }
    }

    /// All permutations of degree n in lexicographic order of image arrays.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut cur: Vec<u8> = (0..n as u8).collect();
        let mut out = vec![Perm(cur.clone())];
        loop {
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { return out };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Perm(cur.clone()));
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_convention() {
        let a = Perm::from_images(&[1, 0, 2]).unwrap();
        let b = Perm::from_images(&[0, 2, 1]).unwrap();
        assert_eq!(a.mul(&b).images(), vec![2, 0, 1]);
    }

    #[test]
    fn cycles_parse() {
        assert_eq!(Perm::from_cycles("(12)", 3).unwrap().images(), vec![1, 0, 2]);
        assert_eq!(Perm::from_cycles("(1 2 3)", 3).unwrap().images(), vec![1, 2, 0]);
        assert_eq!(Perm::from_cycles("(12)(34)", 4).unwrap().cycle_type(), vec![2, 2]);
        assert!(Perm::from_cycles("(14)", 3).is_err());
    }

    #[test]
    fn all_permutations() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::all(0).len(), 1);
    }

    #[test]
    fn adjacent_words_reconstruct() {
        for p in Perm::all(5) {
            let w = p.adjacent_word();
            let rebuilt = w.iter().fold(Perm::identity(5), |acc, &i| acc.mul(&Perm::adjacent(5, i)));
            assert_eq!(rebuilt, p);
            assert_eq!(p.sign(), if w.len() % 2 == 0 { 1 } else { -1 });
        }
    }
}
