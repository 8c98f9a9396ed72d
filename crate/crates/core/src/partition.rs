//! Bounded integer partitions and their distinct orderings (arrangements).

use num_bigint::BigUint;
use num_integer::binomial as num_binomial;
use num_traits::One;

use crate::error::{Error, Result};

/// Default cap on the number of arrangements materialised at once.
pub const DEFAULT_ARRANGEMENT_CAP: usize = 1_000_000;

/// A non-increasing sequence of parts in `[1, max_part]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundedPartition {
    parts: Vec<u32>,
    target: u32,
}

/// Distinct part values (descending) and how often each occurs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicities {
    pub values: Vec<u32>,
    pub counts: Vec<u32>,
}

impl BoundedPartition {
    /// Builds a partition from parts in any order.
    pub fn from_parts(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Bounds("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let target = parts.iter().sum();
        Ok(BoundedPartition { parts, target })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn target(&self) -> u32 {
        self.target
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn multiplicities(&self) -> Multiplicities {
        let mut values = Vec::new();
        let mut counts = Vec::new();
        for &p in &self.parts {
            if values.last() == Some(&p) {
                *counts.last_mut().unwrap() += 1;
            } else {
                values.push(p);
                counts.push(1);
            }
        }
        Multiplicities { values, counts }
    }
}

/// `C(n, k)` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    num_binomial(BigUint::from(n), BigUint::from(k))
}

/// Partitions of `r - c * max_part` into at most `max_parts` parts, each in
/// `[1, max_part]`, in descending lexicographic order.
///
/// A non-positive target yields no partitions.
pub fn enumerate_partitions(
    r: u32,
    c: u32,
    max_part: u32,
    max_parts: usize,
) -> Result<Vec<BoundedPartition>> {
    let target = shifted_target(r, c, max_part)?;
    let mut out = Vec::new();
    if let Some(target) = target.filter(|&t| t > 0) {
        let mut stack = Vec::new();
        collect(target, max_part, 1, max_parts, &mut stack, &mut out);
    }
    Ok(out)
}

/// Partitions of `target` into exactly `parts` parts in `[1, max_part]`,
/// in descending lexicographic order.
pub fn partitions_with_parts(
    target: u32,
    parts: usize,
    max_part: u32,
) -> Result<Vec<BoundedPartition>> {
    if max_part == 0 {
        return Err(Error::Bounds("largest part must be positive".into()));
    }
    let mut out = Vec::new();
    if parts == 0 || target == 0 {
        return Ok(out);
    }
    if (target as u64) < parts as u64 || target as u64 > parts as u64 * max_part as u64 {
        return Ok(out);
    }
    let mut stack = Vec::new();
    collect(target, max_part, parts, parts, &mut stack, &mut out);
    Ok(out)
}

fn shifted_target(r: u32, c: u32, max_part: u32) -> Result<Option<u32>> {
    if max_part == 0 {
        return Err(Error::Bounds("largest part must be positive".into()));
    }
    let shift = c as u64 * max_part as u64;
    Ok((r as u64).checked_sub(shift).map(|t| t as u32))
}

fn collect(
    remaining: u32,
    cap: u32,
    min_parts: usize,
    max_parts: usize,
    stack: &mut Vec<u32>,
    out: &mut Vec<BoundedPartition>,
) {
    if remaining == 0 {
        if stack.len() >= min_parts {
            let target = stack.iter().sum();
            out.push(BoundedPartition {
                parts: stack.clone(),
                target,
            });
        }
        return;
    }
    let slots = max_parts - stack.len();
    if slots == 0 || remaining as u64 > slots as u64 * cap as u64 {
        return;
    }
    let needed = min_parts.saturating_sub(stack.len());
    for p in (1..=cap.min(remaining)).rev() {
        // the other needed parts need at least one unit each
        if needed > 1 && ((remaining - p) as usize) < needed - 1 {
            continue;
        }
        stack.push(p);
        collect(remaining - p, p, min_parts, max_parts, stack, out);
        stack.pop();
    }
}

/// `t! / (r_1! ⋯ r_l!)`: the number of distinct orderings of the parts.
pub fn arrangement_count(b: &BoundedPartition) -> BigUint {
    let mut placed = 0u64;
    let mut total = BigUint::one();
    for &m in &b.multiplicities().counts {
        placed += m as u64;
        total *= binomial(placed, m as u64);
    }
    total
}

/// Distinct orderings of the parts in lexicographic order.
pub fn enumerate_arrangements(b: &BoundedPartition) -> Result<Vec<Vec<u32>>> {
    enumerate_arrangements_with_cap(b, DEFAULT_ARRANGEMENT_CAP)
}

pub fn enumerate_arrangements_with_cap(b: &BoundedPartition, cap: usize) -> Result<Vec<Vec<u32>>> {
    let count = arrangement_count(b);
    if count > BigUint::from(cap) {
        return Err(Error::Explosion {
            what: "arrangement",
            count: u128::try_from(&count).unwrap_or(u128::MAX),
            cap: cap as u128,
        });
    }
    let mut current: Vec<u32> = b.parts.iter().rev().copied().collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    Ok(out)
}

/// Advances to the next lexicographic permutation; false after the last.
pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
