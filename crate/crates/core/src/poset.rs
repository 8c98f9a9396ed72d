//! Finite posets on `[n]` and their ideals.
//!
//! Elements are labelled `1..=n` at every public boundary. Internally element
//! `i` occupies bit `i - 1` of a `u64` mask, so a poset holds at most 64
//! elements; the default construction cap is lower (see [`DEFAULT_MAX_ELEMENTS`]).

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};

/// Default cap on the ground set size.
pub const DEFAULT_MAX_ELEMENTS: usize = 24;
/// Default cap on the number of ideals produced by [`Poset::ideals`].
pub const DEFAULT_IDEAL_CAP: usize = 1 << 22;
/// Hard limit imposed by the bitmask representation.
pub const MAX_SUPPORTED_ELEMENTS: usize = 64;

/// Set of poset elements as a bitmask (bit `i - 1` is element `i`).
pub type ElementSet = u64;

#[inline]
pub(crate) fn bit(index: usize) -> u64 {
    1u64 << index
}

/// Mask of the 1-indexed labels in `labels`.
pub fn mask_of(labels: &[usize]) -> ElementSet {
    labels.iter().fold(0, |m, &l| m | bit(l - 1))
}

/// Ascending 1-indexed labels contained in `mask`.
pub fn labels_of(mask: ElementSet) -> Vec<usize> {
    indices_of(mask).map(|i| i + 1).collect()
}

/// Ascending 0-indexed positions set in `mask`.
pub(crate) fn indices_of(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

/// A partial order on `[n]`, stored as per-element down-sets and up-sets
/// (both reflexive).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    down: Vec<u64>,
    up: Vec<u64>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `relations`, where `(a, b)`
    /// means `a ⪯ b`. Labels are 1-indexed.
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        Self::with_max_elements(n, relations, DEFAULT_MAX_ELEMENTS)
    }

    pub fn with_max_elements(
        n: usize,
        relations: &[(usize, usize)],
        max_elements: usize,
    ) -> Result<Self> {
        let limit = max_elements.min(MAX_SUPPORTED_ELEMENTS);
        if n == 0 || n > limit {
            return Err(Error::Bounds(format!(
                "poset size {n} must lie in 1..={limit}"
            )));
        }
        let mut down: Vec<u64> = (0..n).map(bit).collect();
        for &(a, b) in relations {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::Bounds(format!(
                    "relation ({a}, {b}) names an element outside [1, {n}]"
                )));
            }
            down[b - 1] |= bit(a - 1);
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            let dk = down[k];
            for row in down.iter_mut() {
                if *row & bit(k) != 0 {
                    *row |= dk;
                }
            }
        }
        for i in 0..n {
            for j in indices_of(down[i] & !bit(i)) {
                if down[j] & bit(i) != 0 {
                    return Err(Error::Cycle { a: j + 1, b: i + 1 });
                }
            }
        }
        Ok(Self::from_down_sets(down))
    }

    fn from_down_sets(down: Vec<u64>) -> Self {
        let n = down.len();
        let mut up = vec![0u64; n];
        for (j, &d) in down.iter().enumerate() {
            for i in indices_of(d) {
                up[i] |= bit(j);
            }
        }
        Poset { n, down, up }
    }

    /// The antichain on `[n]`.
    pub fn antichain(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    /// The chain `1 ⪯ 2 ⪯ … ⪯ n`.
    pub fn chain(n: usize) -> Result<Self> {
        let rel: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::new(n, &rel)
    }

    /// The chain visiting the labels of `order` from bottom to top.
    pub fn chain_in_order(order: &[usize]) -> Result<Self> {
        let rel: Vec<_> = order.windows(2).map(|w| (w[0], w[1])).collect();
        Self::new(order.len(), &rel)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Mask of the whole ground set.
    pub fn ground(&self) -> ElementSet {
        full_mask(self.n)
    }

    /// `a ⪯ b` for 1-indexed labels.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b - 1] & bit(a - 1) != 0
    }

    /// Reflexive down-set `⟨label⟩`.
    pub fn down_set(&self, label: usize) -> ElementSet {
        self.down[label - 1]
    }

    /// Ideal generated by `set`.
    #[inline]
    pub fn closure_mask(&self, set: ElementSet) -> ElementSet {
        indices_of(set).fold(0, |acc, i| acc | self.down[i])
    }

    /// Maximal elements of `set`.
    #[inline]
    pub fn maximals_of(&self, set: ElementSet) -> ElementSet {
        indices_of(set)
            .filter(|&i| self.up[i] & set == bit(i))
            .fold(0, |acc, i| acc | bit(i))
    }

    /// `⟨S⟩` together with its maximal elements.
    pub fn ideal_closure(&self, set: ElementSet) -> Result<Ideal> {
        if set & !self.ground() != 0 {
            return Err(Error::Bounds(format!(
                "subset {:?} is not contained in [1, {}]",
                labels_of(set),
                self.n
            )));
        }
        Ok(self.ideal_unchecked(self.closure_mask(set)))
    }

    fn ideal_unchecked(&self, members: u64) -> Ideal {
        Ideal {
            members,
            maximals: self.maximals_of(members),
        }
    }

    /// Returns `Some` when `set` is downward closed.
    pub fn as_ideal(&self, set: ElementSet) -> Option<Ideal> {
        (set & !self.ground() == 0 && self.closure_mask(set) == set)
            .then(|| self.ideal_unchecked(set))
    }

    /// Enumerates all ideals (including the empty one) with the default cap.
    pub fn ideals(&self) -> Result<IdealFamily> {
        self.ideals_with_cap(DEFAULT_IDEAL_CAP)
    }

    /// Enumerates all ideals level by level: every ideal of size `s + 1` is an
    /// ideal of size `s` plus one minimal element of its complement.
    pub fn ideals_with_cap(&self, cap: usize) -> Result<IdealFamily> {
        let mut all = vec![0u64];
        let mut frontier = vec![0u64];
        while !frontier.is_empty() {
            let mut next = HashSet::new();
            for &ideal in &frontier {
                for i in indices_of(self.ground() & !ideal) {
                    if self.down[i] & !bit(i) & !ideal == 0 {
                        next.insert(ideal | bit(i));
                    }
                }
            }
            if all.len() + next.len() > cap {
                return Err(Error::Explosion {
                    what: "ideal",
                    count: (all.len() + next.len()) as u128,
                    cap: cap as u128,
                });
            }
            frontier = next.into_iter().collect();
            all.extend_from_slice(&frontier);
        }
        all.sort_unstable();
        Ok(IdealFamily::new(
            all.into_iter().map(|m| self.ideal_unchecked(m)).collect(),
        ))
    }

    /// The order-reversed poset.
    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            down: self.up.clone(),
            up: self.down.clone(),
        }
    }

    /// Heights and levels.
    pub fn levels(&self) -> LevelDecomposition {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&i| self.down[i].count_ones());
        let mut heights = vec![0usize; self.n];
        for &i in &order {
            heights[i] = 1 + indices_of(self.down[i] & !bit(i))
                .map(|j| heights[j])
                .max()
                .unwrap_or(0);
        }
        let h = heights.iter().copied().max().unwrap_or(0);
        let mut levels = vec![0u64; h];
        for (i, &hi) in heights.iter().enumerate() {
            levels[hi - 1] |= bit(i);
        }
        let level_sizes = levels.iter().map(|l| l.count_ones() as usize).collect();
        LevelDecomposition {
            heights,
            levels,
            level_sizes,
        }
    }

    pub fn classify(&self) -> Classification {
        let levels = self.levels();
        let is_hierarchical = levels.levels.iter().enumerate().all(|(a, &lower)| {
            let above: u64 = levels.levels[a + 1..].iter().fold(0, |m, l| m | l);
            indices_of(lower).all(|i| self.up[i] & above == above)
        });
        let is_antichain = levels.height() == 1;
        let is_chain = is_hierarchical && levels.level_sizes.iter().all(|&s| s == 1);
        Classification {
            is_chain,
            is_antichain,
            is_hierarchical,
            levels,
        }
    }

    /// Whether `other` is finer than `self`: every relation of `self` also
    /// holds in `other`.
    pub fn is_finer(&self, other: &Poset) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "posets on {} and {} elements",
                self.n, other.n
            )));
        }
        Ok(self
            .down
            .iter()
            .zip(&other.down)
            .all(|(mine, theirs)| mine & !theirs == 0))
    }

    /// Cover relations `(a, b)` of the Hasse diagram, 1-indexed, sorted.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.n {
            let below = self.down[b] & !bit(b);
            for a in indices_of(below) {
                let between = below & self.up[a] & !bit(a);
                if between == 0 {
                    out.push((a + 1, b + 1));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// A down-set of a poset with its maximal elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    pub members: ElementSet,
    pub maximals: ElementSet,
}

impl Ideal {
    pub const EMPTY: Ideal = Ideal {
        members: 0,
        maximals: 0,
    };

    pub fn size(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn max_count(&self) -> usize {
        self.maximals.count_ones() as usize
    }

    /// Members that are not maximal.
    pub fn non_maximals(&self) -> ElementSet {
        self.members & !self.maximals
    }

    pub fn contains(&self, label: usize) -> bool {
        self.members & bit(label - 1) != 0
    }

    /// Sorted 1-indexed members.
    pub fn labels(&self) -> Vec<usize> {
        labels_of(self.members)
    }

    /// Sorted 1-indexed maximal elements.
    pub fn maximal_labels(&self) -> Vec<usize> {
        labels_of(self.maximals)
    }
}

/// All ideals of a poset, grouped by `(cardinality, number of maximals)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFamily {
    ideals: Vec<Ideal>,
    by_card_and_max: BTreeMap<(usize, usize), Vec<Ideal>>,
}

impl IdealFamily {
    fn new(ideals: Vec<Ideal>) -> Self {
        let mut by_card_and_max: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for ideal in &ideals {
            by_card_and_max
                .entry((ideal.size(), ideal.max_count()))
                .or_default()
                .push(*ideal);
        }
        IdealFamily {
            ideals,
            by_card_and_max,
        }
    }

    /// Every ideal, ascending by bitmask.
    pub fn all(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// `I_j^i`: ideals of cardinality `i` with `j` maximal elements.
    pub fn family(&self, card: usize, maxes: usize) -> &[Ideal] {
        self.by_card_and_max
            .get(&(card, maxes))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Non-empty `(i, j) → |I_j^i|` entries.
    pub fn counts(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.by_card_and_max.iter().map(|(&k, v)| (k, v.len()))
    }

    /// `I^i`: ideals of cardinality `card`.
    pub fn of_size(&self, card: usize) -> impl Iterator<Item = &Ideal> + '_ {
        self.ideals.iter().filter(move |i| i.size() == card)
    }

    /// `|I^i|`.
    pub fn total(&self, card: usize) -> usize {
        self.of_size(card).count()
    }

    /// The ideal of cardinality `card` when it is the only one.
    pub fn unique_of_size(&self, card: usize) -> Option<Ideal> {
        let mut it = self.of_size(card);
        match (it.next(), it.next()) {
            (Some(i), None) => Some(*i),
            _ => None,
        }
    }
}

/// Heights `h(i)` and the levels `Γ_1, …, Γ_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDecomposition {
    /// Height of each element, indexed by `label - 1`.
    pub heights: Vec<usize>,
    pub levels: Vec<ElementSet>,
    pub level_sizes: Vec<usize>,
}

impl LevelDecomposition {
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn height_of(&self, label: usize) -> usize {
        self.heights[label - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_chain: bool,
    pub is_antichain: bool,
    pub is_hierarchical: bool,
    pub levels: LevelDecomposition,
}
