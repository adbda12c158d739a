use super::partition::Partition;
use crate::error::{invalid, Result};
use std::collections::HashMap;

/// chi_lambda at permutations of cycle type `mu`, by the Murnaghan-Nakayama rule.
/// Rim hooks are removed on the beta-set (abacus) of lambda.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return invalid(format!("|{lambda}| != |{mu}|"));
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(lambda.parts().to_vec(), mu.parts(), &mut memo))
}

fn mn_rec(lambda: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    if mu.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0];
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[i] = b - r;
        nb.sort_unstable_by(|a, c| c.cmp(a));
        let shape: Vec<usize> = nb.iter().enumerate().map(|(j, &x)| x + j + 1 - l).filter(|&p| p > 0).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(shape, &mu[1..], memo);
    }
    memo.insert(key, total);
    total
}

/// Full character table of S_n: rows and columns both indexed by `partitions(n)`.
pub fn sn_character_table(parts: &[Partition]) -> Result<Vec<Vec<i64>>> {
    parts.iter().map(|l| parts.iter().map(|m| mn_character(l, m)).collect()).collect()
}

/// Size of the conjugacy class of cycle type mu: n! / prod_k (k^{m_k} m_k!).
pub fn class_size(mu: &Partition) -> u128 {
    let n = mu.size();
    let mut denom = 1u128;
    let mut counts: HashMap<usize, u32> = HashMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_default() += 1;
    }
    for (k, m) in counts {
        denom *= (k as u128).pow(m) * (1..=m as u128).product::<u128>();
    }
    (1..=n as u128).product::<u128>() / denom
}
