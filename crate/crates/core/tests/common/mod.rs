// Shared fixtures for the integration tests and the acceptance harness.
// The reference computations here deliberately avoid the library's weight,
// ideal and distribution code so they can serve as an independent check.
#![allow(dead_code)]

use posetblock::{BlockSpace, LabelMap, Poset, WeightModel};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub enum WeightKind {
    Lee,
    Hamming,
    Scaled(u32),
    Table(Vec<u32>),
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub q: u32,
    pub n: usize,
    pub relations: Vec<(usize, usize)>,
    pub lens: Vec<u32>,
    pub weight: WeightKind,
}

impl Instance {
    pub fn new(q: u32, n: usize, relations: &[(usize, usize)], lens: &[u32], weight: WeightKind) -> Self {
        Instance {
            q,
            n,
            relations: relations.to_vec(),
            lens: lens.to_vec(),
            weight,
        }
    }

    pub fn weight_table(&self) -> Vec<u32> {
        let q = self.q;
        match &self.weight {
            WeightKind::Lee => (0..q).map(|a| a.min(q - a)).collect(),
            WeightKind::Hamming => (0..q).map(|a| u32::from(a != 0)).collect(),
            WeightKind::Scaled(p) => (0..q).map(|a| if a == 0 { 0 } else { *p }).collect(),
            WeightKind::Table(t) => t.clone(),
        }
    }

    pub fn space(&self) -> BlockSpace {
        let weight = match &self.weight {
            WeightKind::Lee => WeightModel::lee(self.q),
            WeightKind::Hamming => WeightModel::hamming(self.q),
            WeightKind::Scaled(p) => WeightModel::scaled_hamming(self.q, *p),
            WeightKind::Table(t) => WeightModel::custom(t.clone()),
        }
        .unwrap();
        BlockSpace::new(
            Poset::new(self.n, &self.relations).unwrap(),
            LabelMap::new(self.lens.clone()).unwrap(),
            weight,
        )
        .unwrap()
    }

    pub fn total_len(&self) -> usize {
        self.lens.iter().sum::<u32>() as usize
    }

    pub fn space_size(&self) -> u64 {
        (self.q as u64).pow(self.total_len() as u32)
    }

    pub fn reference(&self) -> Reference {
        Reference::new(self)
    }
}

/// Brute-force weight computation straight from the definitions.
pub struct Reference {
    pub q: u32,
    pub n: usize,
    /// `below[a][b]`: `a ⪯ b` (0-based, reflexive).
    pub below: Vec<Vec<bool>>,
    pub lens: Vec<usize>,
    pub table: Vec<u32>,
    pub big_m: u32,
}

impl Reference {
    fn new(inst: &Instance) -> Self {
        let n = inst.n;
        let mut below = vec![vec![false; n]; n];
        for (i, row) in below.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &inst.relations {
            below[a - 1][b - 1] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if below[i][k] && below[k][j] {
                        below[i][j] = true;
                    }
                }
            }
        }
        let table = inst.weight_table();
        let big_m = *table.iter().max().unwrap();
        Reference {
            q: inst.q,
            n,
            below,
            lens: inst.lens.iter().map(|&k| k as usize).collect(),
            table,
            big_m,
        }
    }

    pub fn is_ideal(&self, set: &[bool]) -> bool {
        (0..self.n).all(|b| !set[b] || (0..self.n).all(|a| !self.below[a][b] || set[a]))
    }

    /// All ideals as 0-based membership vectors.
    pub fn ideals(&self) -> Vec<Vec<bool>> {
        (0u32..1 << self.n)
            .map(|m| (0..self.n).map(|i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| self.is_ideal(s))
            .collect()
    }

    pub fn maximals(&self, set: &[bool]) -> Vec<bool> {
        (0..self.n)
            .map(|a| set[a] && (0..self.n).all(|b| b == a || !set[b] || !self.below[a][b]))
            .collect()
    }

    fn blocks(&self, v: &[u32]) -> Vec<u32> {
        let mut at = 0;
        self.lens
            .iter()
            .map(|&k| {
                let w = v[at..at + k].iter().map(|&s| self.table[s as usize]).max().unwrap();
                at += k;
                w
            })
            .collect()
    }

    /// Blocks holding a non-zero symbol.
    pub fn support(&self, v: &[u32]) -> Vec<bool> {
        self.blocks(v).iter().map(|&w| w > 0).collect()
    }

    /// Closure of the π-support.
    pub fn support_ideal(&self, v: &[u32]) -> Vec<bool> {
        let bw = self.blocks(v);
        (0..self.n)
            .map(|a| (0..self.n).any(|b| bw[b] > 0 && self.below[a][b]))
            .collect()
    }

    pub fn weight(&self, v: &[u32]) -> u32 {
        let bw = self.blocks(v);
        let ideal = self.support_ideal(v);
        let maxes = self.maximals(&ideal);
        (0..self.n)
            .filter(|&i| ideal[i])
            .map(|i| if maxes[i] { bw[i] } else { self.big_m })
            .sum()
    }

    pub fn ppi_weight(&self, v: &[u32]) -> u32 {
        self.support_ideal(v).iter().filter(|&&b| b).count() as u32
    }

    pub fn total_len(&self) -> usize {
        self.lens.iter().sum()
    }

    /// Every vector of `Z_q^N` in odometer order.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let len = self.total_len();
        let total = (self.q as u64).pow(len as u32);
        let q = self.q as u64;
        (0..total).map(move |mut x| {
            (0..len)
                .map(|_| {
                    let d = (x % q) as u32;
                    x /= q;
                    d
                })
                .collect()
        })
    }

    pub fn distribution(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n * self.big_m as usize + 1];
        for v in self.vectors() {
            counts[self.weight(&v) as usize] += 1;
        }
        counts
    }

    /// `Σ_{i∈I} k_i` for a membership vector.
    pub fn span(&self, set: &[bool]) -> usize {
        (0..self.n).filter(|&i| set[i]).map(|i| self.lens[i]).sum()
    }
}

/// `x - y` over `Z_q`.
pub fn sub(q: u32, x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().zip(y).map(|(&a, &b)| (a + q - b) % q).collect()
}

/// Every `Z_q`-combination of the rows, duplicates removed.
pub fn span_of(q: u32, len: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut words = std::collections::BTreeSet::new();
    words.insert(vec![0; len]);
    for row in rows {
        let current: Vec<Vec<u32>> = words.iter().cloned().collect();
        for w in current {
            for a in 1..q {
                words.insert(w.iter().zip(row).map(|(&x, &y)| (x + a * y) % q).collect());
            }
        }
    }
    words.into_iter().collect()
}

/// Labels (1-based) of a membership vector.
pub fn labels(set: &[bool]) -> Vec<usize> {
    (0..set.len()).filter(|&i| set[i]).map(|i| i + 1).collect()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random poset on `[n]` whose relations respect a random linear order.
pub fn random_relations(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((order[i], order[j]));
            }
        }
    }
    rel
}

/// A chain visiting the labels in a random order.
pub fn random_chain(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    order.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Hierarchical poset with random level sizes: every element of one level
/// lies below every element of the next.
pub fn random_hierarchical(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut rest = &order[..];
    while !rest.is_empty() {
        let size = rng.gen_range(1..=rest.len().min(3));
        levels.push(rest[..size].to_vec());
        rest = &rest[size..];
    }
    let mut rel = Vec::new();
    for pair in levels.windows(2) {
        for &a in &pair[0] {
            for &b in &pair[1] {
                rel.push((a, b));
            }
        }
    }
    rel
}

/// Random symbol weight: Lee, Hamming, scaled Hamming, or a table that may
/// be asymmetric and may skip values.
pub fn random_weight(rng: &mut ChaCha8Rng, q: u32) -> WeightKind {
    match rng.gen_range(0..4) {
        0 => WeightKind::Lee,
        1 => WeightKind::Hamming,
        2 => WeightKind::Scaled(rng.gen_range(2..=3)),
        _ => {
            let mut t = vec![0];
            t.extend((1..q).map(|_| [1, 2, 4][rng.gen_range(0..3)]));
            WeightKind::Table(t)
        }
    }
}

/// Shrinks block lengths until `q^N <= cap`.
fn fit(rng: &mut ChaCha8Rng, q: u32, lens: &mut [u32], cap: u64) {
    while (q as u64).pow(lens.iter().sum()) > cap {
        let big: Vec<usize> = (0..lens.len()).filter(|&i| lens[i] > 1).collect();
        let i = big[rng.gen_range(0..big.len())];
        lens[i] -= 1;
    }
}

/// The `index`-th instance of a seeded family that cycles through poset
/// shapes; `q^N` never exceeds `cap`.
pub fn random_instance(rng: &mut ChaCha8Rng, index: usize, cap: u64) -> Instance {
    const QS: [u32; 4] = [2, 3, 5, 7];
    let q = QS[index % 4];
    let mut n = rng.gen_range(1..=5);
    // keep at least one block per element within the cap
    while (q as u64).pow(n as u32) > cap {
        n -= 1;
    }
    let relations = match index % 5 {
        0 => random_chain(rng, n),
        1 => random_hierarchical(rng, n),
        2 => Vec::new(),
        3 => random_relations(rng, n, 0.5),
        _ => random_relations(rng, n, 0.25),
    };
    let mut lens: Vec<u32> = match (index / 5) % 3 {
        0 => vec![1; n],
        1 => vec![rng.gen_range(1..=3); n],
        _ => (0..n).map(|_| rng.gen_range(1..=3)).collect(),
    };
    fit(rng, q, &mut lens, cap);
    let weight = random_weight(rng, q);
    Instance {
        q,
        n,
        relations,
        lens,
        weight,
    }
}

/// Five blocks of lengths 2, 3, 4, 2, 2 over `Z_7` with Lee weight, `1 ⪯ 2`.
pub fn five_blocks_lee7() -> Instance {
    Instance::new(7, 5, &[(1, 2)], &[2, 3, 4, 2, 2], WeightKind::Lee)
}

/// `1, 2 ⪯ 4`, `3 ⪯ 5`, blocks 3, 2, 1, 1, 1 over `Z_7` with Lee weight.
pub fn repetition_instance() -> Instance {
    Instance::new(7, 5, &[(1, 4), (2, 4), (3, 5)], &[3, 2, 1, 1, 1], WeightKind::Lee)
}

/// The code `{(0, …, 0, a, a)}` on [`repetition_instance`].
pub fn repetition_generator() -> Vec<Vec<u32>> {
    vec![vec![0, 0, 0, 0, 0, 0, 1, 1]]
}

/// `1, 2, 3 ⪯ 4, 5`, five blocks of length 2 over `Z_7` with Lee weight.
pub fn two_level_instance() -> Instance {
    let rel: Vec<(usize, usize)> = (1..=3).flat_map(|a| [(a, 4), (a, 5)]).collect();
    Instance::new(7, 5, &rel, &[2; 5], WeightKind::Lee)
}

/// The code `{(0, …, 0, a, b, a, b)}` on [`two_level_instance`].
pub fn two_level_generator() -> Vec<Vec<u32>> {
    vec![
        vec![0, 0, 0, 0, 0, 0, 1, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 0, 0, 1, 0, 1],
    ]
}

/// Random `rows x len` matrix over `Z_q`.
pub fn random_matrix(rng: &mut ChaCha8Rng, q: u32, rows: usize, len: usize) -> Vec<Vec<u32>> {
    (0..rows)
        .map(|_| (0..len).map(|_| rng.gen_range(0..q)).collect())
        .collect()
}
