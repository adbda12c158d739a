use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default cap on n for partition enumeration.
pub const DEFAULT_PARTITION_CAP: usize = 40;

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.contains(&0) {
            return invalid("partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        Partition((0..cols).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect())
    }

    /// Hook length of every cell, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push(row - j + conj.0[j] - i - 1);
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All partitions of n, in decreasing lexicographic order: (n), (n-1,1), ...
pub fn partitions(n: usize) -> Result<Vec<Partition>> {
    partitions_capped(n, DEFAULT_PARTITION_CAP)
}

pub fn partitions_capped(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n > cap {
        return Err(Error::CapExceeded { what: "partition size", size: n as u128, cap: cap as u128 });
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    Ok(out)
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for part in (1..=rest.min(max)).rev() {
        cur.push(part);
        fill(rest - part, part, cur, out);
        cur.pop();
    }
}

/// Number of partitions p(n).
pub fn partition_count(n: usize) -> u64 {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

fn primes_upto(n: usize) -> Vec<usize> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn add_factorization(mut m: usize, primes: &[usize], exps: &mut [i64], sign: i64) {
    for (k, &p) in primes.iter().enumerate() {
        while m.is_multiple_of(p) {
            exps[k] += sign;
            m /= p;
        }
    }
}

/// d_lambda = n! / prod(hooks), with exact cancellation over prime exponents.
pub fn dimension(lambda: &Partition) -> u128 {
    let n = lambda.size();
    let primes = primes_upto(n);
    let mut exps = vec![0i64; primes.len()];
    for m in 2..=n {
        add_factorization(m, &primes, &mut exps, 1);
    }
    for h in lambda.hooks() {
        add_factorization(h, &primes, &mut exps, -1);
    }
    primes.iter().zip(&exps).fold(1u128, |acc, (&p, &e)| {
        assert!(e >= 0, "hook product does not divide n!");
        acc * (p as u128).pow(e as u32)
    })
}
