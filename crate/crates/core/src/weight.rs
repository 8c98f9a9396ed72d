//! Symbol weights on `Z_q` and the block weight classes they induce.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};

/// Soft defects of a custom weight table. None of them affect the
/// distribution formulas; they only matter for the metric property.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WeightWarning {
    /// `w(a) != w(q - a)`.
    Asymmetric { symbol: u32 },
    /// `w(a + b) > w(a) + w(b)`.
    NotSubadditive { a: u32, b: u32 },
}

/// A non-negative integer weight on `Z_q` with `w(0) = 0` and `w(a) > 0`
/// for `a != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightModel {
    q: u32,
    table: Vec<u32>,
    min_weight: u32,
    max_weight: u32,
    class_sizes: Vec<u64>,
    warnings: Vec<WeightWarning>,
}

fn check_alphabet(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::Bounds(format!("alphabet size {q} is below 2")));
    }
    Ok(())
}

impl WeightModel {
    /// Lee weight `min(a, q - a)`.
    pub fn lee(q: u32) -> Result<Self> {
        check_alphabet(q)?;
        Self::custom((0..q).map(|a| a.min(q - a)).collect())
    }

    /// Hamming weight: 1 on every non-zero symbol.
    pub fn hamming(q: u32) -> Result<Self> {
        check_alphabet(q)?;
        Self::custom((0..q).map(|a| u32::from(a != 0)).collect())
    }

    /// `scale` times the Hamming weight.
    pub fn scaled_hamming(q: u32, scale: u32) -> Result<Self> {
        check_alphabet(q)?;
        Self::custom((0..q).map(|a| if a == 0 { 0 } else { scale }).collect())
    }

    /// Arbitrary table indexed by symbol; `table.len()` is the alphabet size.
    pub fn custom(table: Vec<u32>) -> Result<Self> {
        let q = u32::try_from(table.len())
            .map_err(|_| Error::InvalidWeight("table too long".into()))?;
        if q < 2 {
            return Err(Error::InvalidWeight(format!(
                "table has {q} entries, need at least 2"
            )));
        }
        if table[0] != 0 {
            return Err(Error::InvalidWeight(format!(
                "w(0) = {} but must be 0",
                table[0]
            )));
        }
        if let Some(a) = (1..q).find(|&a| table[a as usize] == 0) {
            return Err(Error::InvalidWeight(format!(
                "w({a}) = 0 for a non-zero symbol"
            )));
        }
        let min_weight = table[1..].iter().copied().min().unwrap_or(0);
        let max_weight = table.iter().copied().max().unwrap_or(0);
        let mut class_sizes = vec![0u64; max_weight as usize + 1];
        for &w in &table {
            class_sizes[w as usize] += 1;
        }
        let mut warnings = Vec::new();
        for a in 1..q {
            if table[a as usize] != table[(q - a) as usize] {
                warnings.push(WeightWarning::Asymmetric { symbol: a });
            }
        }
        'outer: for a in 1..q {
            for b in a..q {
                let s = ((a + b) % q) as usize;
                if table[s] > table[a as usize] + table[b as usize] {
                    warnings.push(WeightWarning::NotSubadditive { a, b });
                    break 'outer;
                }
            }
        }
        Ok(WeightModel {
            q,
            table,
            min_weight,
            max_weight,
            class_sizes,
            warnings,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn weight(&self, symbol: u32) -> u32 {
        self.table[symbol as usize]
    }

    /// `m_w`: smallest non-zero weight.
    pub fn min_weight(&self) -> u32 {
        self.min_weight
    }

    /// `M_w`: largest weight.
    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// `|D_r|` for `0 <= r <= M_w`.
    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn class_size(&self, r: u32) -> u64 {
        self.class_sizes.get(r as usize).copied().unwrap_or(0)
    }

    pub fn warnings(&self) -> &[WeightWarning] {
        &self.warnings
    }

    /// Symmetric and subadditive, so the induced distance is a metric.
    pub fn is_metric_safe(&self) -> bool {
        self.warnings.is_empty()
    }

    pub fn is_hamming(&self) -> bool {
        self.max_weight == 1
    }

    /// Every non-zero symbol has the same weight.
    pub fn is_scaled_hamming(&self) -> bool {
        self.min_weight == self.max_weight
    }

    /// Number of `k`-blocks whose largest symbol weight is exactly `r`:
    /// `(Σ_{i<=r} |D_i|)^k - (Σ_{i<r} |D_i|)^k`.
    pub fn block_class_size(&self, r: u32, k: u32) -> Result<BigUint> {
        if r > self.max_weight {
            return Err(Error::Bounds(format!(
                "block weight {r} exceeds M_w = {}",
                self.max_weight
            )));
        }
        if k == 0 {
            return Err(Error::Bounds("block length must be positive".into()));
        }
        if r == 0 {
            return Ok(BigUint::one());
        }
        let upto: u64 = self.class_sizes[..=r as usize].iter().sum();
        let below = upto - self.class_sizes[r as usize];
        Ok(Pow::pow(BigUint::from(upto), k) - Pow::pow(BigUint::from(below), k))
    }
}

/// `|D_r^k|` for every `r` and every block length up to `max_len`,
/// indexed `[k][r]` (row 0 unused).
#[derive(Clone, Debug)]
pub(crate) struct BlockClassTable {
    rows: Vec<Vec<BigUint>>,
}

impl BlockClassTable {
    pub(crate) fn new(weight: &WeightModel, max_len: u32) -> Self {
        let mut rows = vec![Vec::new()];
        for k in 1..=max_len {
            rows.push(
                (0..=weight.max_weight())
                    .map(|r| weight.block_class_size(r, k).expect("r within range"))
                    .collect(),
            );
        }
        BlockClassTable { rows }
    }

    #[inline]
    pub(crate) fn get(&self, r: u32, k: u32) -> &BigUint {
        &self.rows[k as usize][r as usize]
    }
}
