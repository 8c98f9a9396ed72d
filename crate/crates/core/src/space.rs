//! `Z_q^N` split into labelled blocks, and the weighted poset block weight.
//!
//! A vector is stored flat; block `i` (1-indexed) occupies
//! `entries[offset_i .. offset_i + k_i]`.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::poset::{bit, indices_of, ElementSet, Poset};
use crate::weight::WeightModel;

/// Block lengths `(k_1, …, k_n)` with prefix-sum offsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelMap {
    lens: Vec<u32>,
    offsets: Vec<usize>,
    total: usize,
}

impl LabelMap {
    pub fn new(lens: Vec<u32>) -> Result<Self> {
        if lens.is_empty() {
            return Err(Error::Bounds("label map has no blocks".into()));
        }
        if let Some(i) = lens.iter().position(|&k| k == 0) {
            return Err(Error::Bounds(format!("block {} has length 0", i + 1)));
        }
        let mut offsets = Vec::with_capacity(lens.len());
        let mut total = 0usize;
        for &k in &lens {
            offsets.push(total);
            total += k as usize;
        }
        Ok(LabelMap {
            lens,
            offsets,
            total,
        })
    }

    /// `n` blocks of length `k`.
    pub fn uniform(n: usize, k: u32) -> Result<Self> {
        Self::new(vec![k; n])
    }

    /// Number of blocks `n`.
    pub fn len(&self) -> usize {
        self.lens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lens.is_empty()
    }

    /// `N = Σ k_i`.
    pub fn total_len(&self) -> usize {
        self.total
    }

    pub fn lens(&self) -> &[u32] {
        &self.lens
    }

    /// `k_i` for a 1-indexed block label.
    pub fn block_len(&self, label: usize) -> u32 {
        self.lens[label - 1]
    }

    /// Coordinate range of 0-indexed block `i`.
    #[inline]
    pub fn range(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i] + self.lens[i] as usize
    }

    /// Common block length, if all blocks agree.
    pub fn uniform_len(&self) -> Option<u32> {
        let k = self.lens[0];
        self.lens.iter().all(|&x| x == k).then_some(k)
    }

    /// `Σ_{i ∈ set} k_i`.
    pub fn span(&self, set: ElementSet) -> usize {
        indices_of(set).map(|i| self.lens[i] as usize).sum()
    }

    /// 0-indexed block of each coordinate.
    pub fn block_of_coordinate(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total);
        for (i, &k) in self.lens.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, k as usize));
        }
        out
    }
}

/// An element of `Z_q^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockVector(pub Vec<u32>);

impl BlockVector {
    pub fn new(entries: Vec<u32>) -> Self {
        BlockVector(entries)
    }

    pub fn zero(len: usize) -> Self {
        BlockVector(vec![0; len])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == 0)
    }

    /// Componentwise difference mod `q`.
    pub fn sub_mod(&self, other: &BlockVector, q: u32) -> BlockVector {
        BlockVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| (a + q - b) % q)
                .collect(),
        )
    }

    pub fn add_mod(&self, other: &BlockVector, q: u32) -> BlockVector {
        BlockVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| (a + b) % q)
                .collect(),
        )
    }
}

impl From<Vec<u32>> for BlockVector {
    fn from(v: Vec<u32>) -> Self {
        BlockVector(v)
    }
}

/// Largest symbol weight in a block; zero iff the block is zero.
#[inline]
pub fn block_weight(weight: &WeightModel, block: &[u32]) -> u32 {
    block.iter().map(|&s| weight.weight(s)).max().unwrap_or(0)
}

/// Indices (as a mask) of the non-zero blocks of `entries`.
#[inline]
pub fn pi_support(labels: &LabelMap, entries: &[u32]) -> ElementSet {
    (0..labels.len())
        .filter(|&i| entries[labels.range(i)].iter().any(|&s| s != 0))
        .fold(0, |m, i| m | bit(i))
}

/// The `(P, w, π)` space: a poset on the block labels, the block lengths and
/// the symbol weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockSpace {
    poset: Poset,
    labels: LabelMap,
    weight: WeightModel,
}

impl BlockSpace {
    pub fn new(poset: Poset, labels: LabelMap, weight: WeightModel) -> Result<Self> {
        if poset.len() != labels.len() {
            return Err(Error::Dimension(format!(
                "poset has {} elements but the label map has {} blocks",
                poset.len(),
                labels.len()
            )));
        }
        Ok(BlockSpace {
            poset,
            labels,
            weight,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn labels(&self) -> &LabelMap {
        &self.labels
    }

    pub fn weight_model(&self) -> &WeightModel {
        &self.weight
    }

    pub fn q(&self) -> u32 {
        self.weight.q()
    }

    /// Number of blocks `n`.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// `N`.
    pub fn total_len(&self) -> usize {
        self.labels.total_len()
    }

    /// `n · M_w`, the largest attainable weight.
    pub fn max_total_weight(&self) -> u32 {
        self.n() as u32 * self.weight.max_weight()
    }

    /// Same poset and blocks under a different symbol weight.
    pub fn with_weight(&self, weight: WeightModel) -> Result<Self> {
        if weight.q() != self.q() {
            return Err(Error::Dimension(format!(
                "weight on Z_{} replacing one on Z_{}",
                weight.q(),
                self.q()
            )));
        }
        Self::new(self.poset.clone(), self.labels.clone(), weight)
    }

    pub fn with_poset(&self, poset: Poset) -> Result<Self> {
        Self::new(poset, self.labels.clone(), self.weight.clone())
    }

    /// `q^N` when it fits in 128 bits.
    pub fn space_size(&self) -> Option<u128> {
        (self.q() as u128).checked_pow(u32::try_from(self.total_len()).ok()?)
    }

    pub fn check_vector(&self, x: &BlockVector) -> Result<()> {
        if x.len() != self.total_len() {
            return Err(Error::Dimension(format!(
                "vector of length {} in a space of length {}",
                x.len(),
                self.total_len()
            )));
        }
        if let Some(s) = x.0.iter().find(|&&s| s >= self.q()) {
            return Err(Error::Bounds(format!("symbol {s} is not in Z_{}", self.q())));
        }
        Ok(())
    }

    /// Non-zero blocks of `x` as a mask.
    pub fn pi_support(&self, x: &BlockVector) -> Result<ElementSet> {
        self.check_vector(x)?;
        Ok(pi_support(&self.labels, &x.0))
    }

    /// Block weights `w̃^{k_i}(x_i)` for every block.
    pub fn block_weights(&self, x: &BlockVector) -> Result<Vec<u32>> {
        self.check_vector(x)?;
        Ok((0..self.n())
            .map(|i| block_weight(&self.weight, &x.0[self.labels.range(i)]))
            .collect())
    }

    /// Weight from per-block weights: maximal blocks of `⟨supp⟩` contribute
    /// their block weight, every other member contributes `M_w`.
    #[inline]
    pub fn weight_from_block_weights(&self, block_weights: &[u32]) -> u32 {
        let supp = block_weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0)
            .fold(0u64, |m, (i, _)| m | bit(i));
        let ideal = self.poset.closure_mask(supp);
        let maximals = self.poset.maximals_of(ideal);
        let top: u32 = indices_of(maximals).map(|i| block_weights[i]).sum();
        top + (ideal & !maximals).count_ones() * self.weight.max_weight()
    }

    #[inline]
    pub(crate) fn weight_of_entries(&self, entries: &[u32]) -> u32 {
        let mut bw = [0u32; 64];
        for (i, slot) in bw.iter_mut().enumerate().take(self.n()) {
            *slot = block_weight(&self.weight, &entries[self.labels.range(i)]);
        }
        self.weight_from_block_weights(&bw[..self.n()])
    }

    /// The `(P, w, π)`-weight of `x`.
    pub fn weight(&self, x: &BlockVector) -> Result<u32> {
        self.check_vector(x)?;
        Ok(self.weight_of_entries(&x.0))
    }

    #[inline]
    pub(crate) fn ppi_weight_of_entries(&self, entries: &[u32]) -> u32 {
        self.poset
            .closure_mask(pi_support(&self.labels, entries))
            .count_ones()
    }

    /// The `(P, π)`-weight `|⟨supp_π(x)⟩|`.
    pub fn ppi_weight(&self, x: &BlockVector) -> Result<u32> {
        self.check_vector(x)?;
        Ok(self.ppi_weight_of_entries(&x.0))
    }

    /// `w(x - y)` with subtraction mod `q`.
    pub fn distance(&self, x: &BlockVector, y: &BlockVector) -> Result<u32> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.weight_of_entries(&x.sub_mod(y, self.q()).0))
    }
}
