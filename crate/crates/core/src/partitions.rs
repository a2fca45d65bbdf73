//! Partitions and the enumeration of partition pairs contributing to a
//! Shiraishi function at bounded order in the elliptic parameter.

use crate::error::{Error, Result};
use std::fmt;

/// A partition: weakly decreasing positive parts, trailing zeros implicit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// 1-based part access; parts beyond the length are 0.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            panic!("parts are 1-indexed");
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| *p as u64).sum()
    }

    /// Sum of parts at even 1-based positions: p_2 + p_4 + ...
    pub fn even_index_sum(&self) -> u64 {
        self.parts
            .iter()
            .skip(1)
            .step_by(2)
            .map(|p| *p as u64)
            .sum()
    }

    /// Sum of parts at odd 1-based positions: p_1 + p_3 + ...
    pub fn odd_index_sum(&self) -> u64 {
        self.parts
            .iter()
            .step_by(2)
            .map(|p| *p as u64)
            .sum()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("partition must be bracketed: {text}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> =
            inner.split(',').map(|p| p.trim().parse()).collect();
        Partition::new(parts.map_err(|e| Error::Parse(format!("{e}")))?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// The power of p carried by a pair's summand.
pub fn p_degree(lambda: &Partition, mu: &Partition) -> u64 {
    lambda.even_index_sum() + mu.odd_index_sum()
}

/// All partitions whose counted-position sum stays within `budget`.
/// `count_even` selects which 1-based positions count (even for lambda,
/// odd for mu); parts are bounded by `max_first`.
fn gen_partitions(max_first: u32, budget: u64, count_even: bool) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix: Vec<u32> = Vec::new();
    fn rec(
        prefix: &mut Vec<u32>,
        max_next: u32,
        budget_left: u64,
        count_even: bool,
        out: &mut Vec<Partition>,
    ) {
        out.push(Partition {
            parts: prefix.clone(),
        });
        let pos = prefix.len() + 1;
        let counted = if count_even { pos % 2 == 0 } else { pos % 2 == 1 };
        for part in 1..=max_next {
            if counted && part as u64 > budget_left {
                break;
            }
            let next_budget = if counted {
                budget_left - part as u64
            } else {
                budget_left
            };
            prefix.push(part);
            rec(prefix, part, next_budget, count_even, out);
            prefix.pop();
        }
    }
    rec(&mut prefix, max_first, budget, count_even, &mut out);
    out
}

/// Finite superset of all pairs (lambda, mu) with nonvanishing contribution
/// at p-order <= dmax: lambda_1 <= mu_1 + j, the even-position sum of lambda
/// and the odd-position sum of mu are each <= dmax. Pairs with vanishing
/// coefficient are permitted; they contribute zero.
pub fn enumerate_pairs(j: usize, dmax: usize) -> Vec<(Partition, Partition)> {
    let dmax = dmax as u64;
    let mut pairs = Vec::new();
    // mu_1 participates in the odd-position sum, so mu_1 <= dmax; the
    // leftover budget bounds lambda's even-position sum so that the joint
    // p-degree stays <= dmax.
    for mu in gen_partitions(dmax.min(u32::MAX as u64) as u32, dmax, false) {
        let lam_max = mu.part(1) as u64 + j as u64;
        let lam_budget = dmax - mu.odd_index_sum();
        for lambda in gen_partitions(lam_max.min(u32::MAX as u64) as u32, lam_budget, true) {
            pairs.push((lambda, mu.clone()));
        }
    }
    pairs.sort();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn p_degree_examples() {
        assert_eq!(p_degree(&Partition::empty(), &Partition::empty()), 0);
        // lambda=(n), mu=(1,1) -> 1 for any n
        for n in 1..6 {
            assert_eq!(p_degree(&p(&[n]), &p(&[1, 1])), 1);
        }
        // lambda=(3,2,2), mu=(2,1) -> lambda_2 + mu_1 = 2 + 2 = 4
        assert_eq!(p_degree(&p(&[3, 2, 2]), &p(&[2, 1])), 4);
    }

    #[test]
    fn enumerate_j2_d0() {
        let pairs = enumerate_pairs(2, 0);
        let expect: Vec<(Partition, Partition)> = vec![
            (Partition::empty(), Partition::empty()),
            (p(&[1]), Partition::empty()),
            (p(&[2]), Partition::empty()),
        ];
        assert_eq!(pairs, expect);
    }

    #[test]
    fn enumerate_contains_prop5_families() {
        // j=1, dmax=1 must contain the four stated families.
        let pairs = enumerate_pairs(1, 1);
        let has = |l: &[u32], m: &[u32]| pairs.contains(&(p(l), p(m)));
        for n in 0..=2u32 {
            // lambda=(n), mu=(1,1) and mu=(1), n = 0..j+1
            if n == 0 {
                assert!(has(&[], &[1, 1]));
                assert!(has(&[], &[1]));
            } else {
                assert!(has(&[n], &[1, 1]));
                assert!(has(&[n], &[1]));
            }
        }
        // lambda=(n,1), mu=empty and lambda=(n,1,1), n = 1..j
        assert!(has(&[1, 1], &[]));
        assert!(has(&[1, 1, 1], &[]));
    }

    #[test]
    fn enumeration_is_monotone_in_order() {
        let small = enumerate_pairs(2, 1);
        let large = enumerate_pairs(2, 2);
        for pair in &small {
            assert!(large.contains(pair));
        }
    }

    #[test]
    fn degrees_respect_bound() {
        for (l, m) in enumerate_pairs(3, 2) {
            assert!(p_degree(&l, &m) <= 2);
        }
    }

    #[test]
    fn display_roundtrip() {
        let a = p(&[3, 2, 2]);
        assert_eq!(a.to_string(), "[3,2,2]");
        assert_eq!(Partition::parse("[3,2,2]").unwrap(), a);
        assert_eq!(Partition::parse("[]").unwrap(), Partition::empty());
    }
}
