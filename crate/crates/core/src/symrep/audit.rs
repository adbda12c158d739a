use super::characters::mn_character;
use super::partition::{dimension, partition_count, partitions, Partition};
use crate::error::{invalid, Result};
use crate::groups::Perm;
use serde::Serialize;

/// Parameters of the unbalanced-diagram family Lambda_c; c = num/den.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaCConfig {
    pub n: usize,
    pub c_num: u64,
    pub c_den: u64,
}

impl LambdaCConfig {
    /// Requires 0 < c < 1/4.
    pub fn new(n: usize, c_num: u64, c_den: u64) -> Result<LambdaCConfig> {
        if c_den == 0 || c_num == 0 || 4 * c_num >= c_den {
            return invalid(format!("cutoff c = {c_num}/{c_den} must lie in (0, 1/4)"));
        }
        Ok(LambdaCConfig { n, c_num, c_den })
    }

    /// Parses `a/b` or a decimal such as `0.125`.
    pub fn parse(n: usize, c: &str) -> Result<LambdaCConfig> {
        if let Some((a, b)) = c.split_once('/') {
            let a = a.trim().parse().map_err(|_| crate::Error::Parse(format!("bad cutoff {c}")))?;
            let b = b.trim().parse().map_err(|_| crate::Error::Parse(format!("bad cutoff {c}")))?;
            return LambdaCConfig::new(n, a, b);
        }
        let digits = c.trim().split_once('.').map_or(0, |(_, frac)| frac.len()) as u32;
        let den = 10u64.pow(digits);
        let num: u64 = c.trim().replace('.', "").parse().map_err(|_| crate::Error::Parse(format!("bad cutoff {c}")))?;
        LambdaCConfig::new(n, num, den)
    }

    pub fn c(&self) -> f64 {
        self.c_num as f64 / self.c_den as f64
    }

    /// ceil(c n).
    pub fn ceil_cn(&self) -> usize {
        (self.c_num as usize * self.n).div_ceil(self.c_den as usize)
    }
}

/// lambda_1 >= (1-c) n or lambda'_1 >= (1-c) n, compared exactly.
pub fn lambda_c_membership(lambda: &Partition, cfg: &LambdaCConfig) -> bool {
    let threshold = (cfg.c_den - cfg.c_num) as u128 * cfg.n as u128;
    let den = cfg.c_den as u128;
    lambda.first() as u128 * den >= threshold || lambda.len() as u128 * den >= threshold
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaCAudit {
    pub config: LambdaCConfig,
    /// Integer used in place of cn inside p(.) and the exponent.
    pub cn_rounded: usize,
    pub members: Vec<String>,
    pub size: usize,
    pub size_bound: u128,
    pub size_bound_holds: bool,
    pub max_dimension: u128,
    pub dimension_bound: u128,
    pub dimension_bound_holds: bool,
    /// min d_lambda over partitions outside Lambda_c, if any.
    pub min_dimension_outside: Option<u128>,
}

/// Evaluates |Lambda_c| <= 2 m p(m) and max d_mu < n^m with m = ceil(cn).
pub fn lambda_c_audit(cfg: &LambdaCConfig) -> Result<LambdaCAudit> {
    let parts = partitions(cfg.n)?;
    let members: Vec<&Partition> = parts.iter().filter(|l| lambda_c_membership(l, cfg)).collect();
    let m = cfg.ceil_cn();
    let size_bound = 2 * m as u128 * partition_count(m) as u128;
    let max_dimension = members.iter().map(|l| dimension(l)).max().unwrap_or(0);
    let dimension_bound = (cfg.n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    let min_dimension_outside = parts.iter().filter(|l| !lambda_c_membership(l, cfg)).map(dimension).min();
    Ok(LambdaCAudit {
        config: *cfg,
        cn_rounded: m,
        members: members.iter().map(|l| l.to_string()).collect(),
        size: members.len(),
        size_bound,
        size_bound_holds: members.len() as u128 <= size_bound,
        max_dimension,
        dimension_bound,
        dimension_bound_holds: max_dimension < dimension_bound,
        min_dimension_outside,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RoichmanRow {
    pub n: usize,
    pub c: f64,
    pub support: usize,
    pub max_ratio: f64,
    /// -ln(max_ratio)/support; infinite when every ratio vanishes.
    pub alpha_hat: f64,
}

/// For each support size s > 0, the largest |chi_lambda(pi)|/d_lambda over
/// lambda outside Lambda_c and pi moving exactly s points.
pub fn roichman_report(cfg: &LambdaCConfig) -> Result<Vec<RoichmanRow>> {
    if cfg.n > 10 {
        return invalid("Roichman report requires n <= 10");
    }
    let parts = partitions(cfg.n)?;
    let outside: Vec<&Partition> = parts.iter().filter(|l| !lambda_c_membership(l, cfg)).collect();
    let mut best = vec![None::<f64>; cfg.n + 1];
    for mu in &parts {
        let support = cfg.n - mu.parts().iter().filter(|&&p| p == 1).count();
        if support == 0 {
            continue;
        }
        for lam in &outside {
            let ratio = mn_character(lam, mu)?.unsigned_abs() as f64 / dimension(lam) as f64;
            let slot = &mut best[support];
            *slot = Some(slot.map_or(ratio, |b: f64| b.max(ratio)));
        }
    }
    Ok(best
        .iter()
        .enumerate()
        .filter_map(|(s, r)| {
            r.map(|max_ratio| RoichmanRow {
                n: cfg.n,
                c: cfg.c(),
                support: s,
                max_ratio,
                alpha_hat: if max_ratio > 0.0 { -max_ratio.ln() / s as f64 } else { f64::INFINITY },
            })
        })
        .collect())
}

/// Support size of a permutation; re-exported for report consumers.
pub fn support(pi: &Perm) -> usize {
    pi.support_size()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let cfg = LambdaCConfig::new(12, 1, 6).unwrap();
        assert!(lambda_c_membership(&Partition::new(vec![12]).unwrap(), &cfg));
        assert!(lambda_c_membership(&Partition::new(vec![1; 12]).unwrap(), &cfg));
        assert!(!lambda_c_membership(&Partition::new(vec![6, 6]).unwrap(), &cfg));
        assert!(lambda_c_membership(&Partition::new(vec![10, 2]).unwrap(), &cfg));
        assert!(!lambda_c_membership(&Partition::new(vec![9, 3]).unwrap(), &cfg));
    }

    #[test]
    fn config_validation() {
        assert!(LambdaCConfig::new(6, 1, 4).is_err());
        assert!(LambdaCConfig::new(6, 0, 4).is_err());
        assert_eq!(LambdaCConfig::parse(6, "1/6").unwrap().c_den, 6);
        assert_eq!(LambdaCConfig::parse(6, "0.125").unwrap().c_num, 125);
        assert_eq!(LambdaCConfig::new(8, 1, 6).unwrap().ceil_cn(), 2);
        assert_eq!(LambdaCConfig::new(6, 1, 6).unwrap().ceil_cn(), 1);
    }

    #[test]
    fn audit_n12() {
        let a = lambda_c_audit(&LambdaCConfig::new(12, 1, 6).unwrap()).unwrap();
        assert_eq!(a.size_bound, 8);
        assert_eq!(a.size, 8);
        assert!(a.size_bound_holds && a.dimension_bound_holds);
    }

    #[test]
    fn roichman_excludes_identity() {
        let rows = roichman_report(&LambdaCConfig::new(6, 1, 6).unwrap()).unwrap();
        assert!(rows.iter().all(|r| r.support > 0 && r.max_ratio <= 1.0));
    }
}
