//! Exact weight distributions `|A_r|` and ball volumes `|B_r|`.
//!
//! Every method returns the full table `r = 0 ..= n·M_w`. Counts are exact
//! big integers; the parallel sums are therefore schedule independent.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{
    arrangement_count, binomial, enumerate_arrangements_with_cap, partitions_with_parts,
    DEFAULT_ARRANGEMENT_CAP,
};
use crate::poset::{indices_of, Classification, DEFAULT_IDEAL_CAP};
use crate::space::BlockSpace;
use crate::weight::BlockClassTable;

/// Closed forms for the classical special cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Specialization {
    /// Weighted poset space: every block has length 1.
    Pw,
    /// Poset block space: Hamming weight.
    Ppi,
    /// Block space: Hamming weight on an antichain.
    Pi,
    /// Poset space: Hamming weight and blocks of length 1.
    P,
}

/// How a table was (or should be) computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    General,
    EqualBlocks,
    Hierarchical,
    Chain,
    Specialized(Specialization),
    Oracle,
}

/// Either a forced method or automatic selection
/// (chain, then hierarchical, then equal blocks, then general).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Forced(Method),
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::General => "general",
            Method::EqualBlocks => "equal-block",
            Method::Hierarchical => "hierarchical",
            Method::Chain => "chain",
            Method::Specialized(Specialization::Pw) => "pw",
            Method::Specialized(Specialization::Ppi) => "ppi",
            Method::Specialized(Specialization::Pi) => "pi",
            Method::Specialized(Specialization::P) => "p",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "general" => Method::General,
            "equal" | "equal-block" | "equal-blocks" => Method::EqualBlocks,
            "hierarchical" => Method::Hierarchical,
            "chain" => Method::Chain,
            "pw" => Method::Specialized(Specialization::Pw),
            "ppi" => Method::Specialized(Specialization::Ppi),
            "pi" => Method::Specialized(Specialization::Pi),
            "p" => Method::Specialized(Specialization::P),
            "oracle" => Method::Oracle,
            other => return Err(Error::Config(format!("unknown method `{other}`"))),
        })
    }
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            Ok(MethodChoice::Auto)
        } else {
            s.parse().map(MethodChoice::Forced)
        }
    }
}

/// Coarse shape of the poset, recorded with each table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosetClass {
    Chain,
    Antichain,
    Hierarchical,
    General,
}

impl PosetClass {
    pub fn of(c: &Classification) -> Self {
        if c.is_chain {
            PosetClass::Chain
        } else if c.is_antichain {
            PosetClass::Antichain
        } else if c.is_hierarchical {
            PosetClass::Hierarchical
        } else {
            PosetClass::General
        }
    }
}

/// Limits and parallelism for the distribution sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionOptions {
    pub ideal_cap: usize,
    pub arrangement_cap: usize,
    /// `Some(1)` forces sequential evaluation; `None` uses rayon's default.
    pub threads: Option<usize>,
}

impl Default for DistributionOptions {
    fn default() -> Self {
        DistributionOptions {
            ideal_cap: DEFAULT_IDEAL_CAP,
            arrangement_cap: DEFAULT_ARRANGEMENT_CAP,
            threads: None,
        }
    }
}

/// `|A_r|` for `r = 0 ..= n·M_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub q: u32,
    pub total_len: usize,
    pub method: Method,
    pub poset_class: Option<PosetClass>,
    pub counts: Vec<BigUint>,
}

#[derive(Serialize, Deserialize)]
struct TableRecord {
    q: u32,
    #[serde(rename = "N")]
    total_len: usize,
    method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poset_class: Option<PosetClass>,
    counts: Vec<CountRecord>,
}

#[derive(Serialize, Deserialize)]
struct CountRecord {
    r: u32,
    count: String,
}

impl DistributionTable {
    /// Largest weight in the table, `n·M_w`.
    pub fn max_weight(&self) -> u32 {
        self.counts.len() as u32 - 1
    }

    pub fn count(&self, r: u32) -> BigUint {
        self.counts.get(r as usize).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `|B_r| = Σ_{t <= r} |A_t|`.
    pub fn ball_volume(&self, r: u32) -> Result<BigUint> {
        if r as usize >= self.counts.len() {
            return Err(Error::Bounds(format!(
                "radius {r} exceeds the largest weight {}",
                self.max_weight()
            )));
        }
        Ok(self.counts[..=r as usize].iter().sum())
    }

    /// All ball volumes `|B_0|, …, |B_{n·M_w}|`.
    pub fn ball_volumes(&self) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        self.counts
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }

    /// Same counts, compared ignoring how they were produced.
    pub fn same_counts(&self, other: &DistributionTable) -> bool {
        self.q == other.q && self.total_len == other.total_len && self.counts == other.counts
    }

    pub fn to_json(&self) -> String {
        let record = TableRecord {
            q: self.q,
            total_len: self.total_len,
            method: self.method.name().to_string(),
            poset_class: self.poset_class,
            counts: self
                .counts
                .iter()
                .enumerate()
                .map(|(r, c)| CountRecord {
                    r: r as u32,
                    count: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&record).expect("table serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: TableRecord =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let counts = collect_counts(record.counts.into_iter().map(|c| (c.r, c.count)))?;
        Ok(DistributionTable {
            q: record.q,
            total_len: record.total_len,
            method: record.method.parse()?,
            poset_class: record.poset_class,
            counts,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,count\n");
        for (r, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{r},{c}\n"));
        }
        out
    }

    /// Parses the `r,count` rows written by [`to_csv`](Self::to_csv).
    pub fn counts_from_csv(text: &str) -> Result<Vec<BigUint>> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        if lines.next().map(str::trim) != Some("r,count") {
            return Err(Error::Config("missing `r,count` header".into()));
        }
        let rows = lines
            .map(|line| {
                let (r, c) = line
                    .split_once(',')
                    .ok_or_else(|| Error::Config(format!("malformed row `{line}`")))?;
                let r = r
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad radius `{r}`")))?;
                Ok((r, c.trim().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        collect_counts(rows)
    }
}

fn collect_counts(rows: impl IntoIterator<Item = (u32, String)>) -> Result<Vec<BigUint>> {
    let mut counts = Vec::new();
    for (expected, (r, c)) in rows.into_iter().enumerate() {
        if r as usize != expected {
            return Err(Error::Config(format!("expected radius {expected}, found {r}")));
        }
        counts.push(
            c.parse::<BigUint>()
                .map_err(|_| Error::Config(format!("bad count `{c}`")))?,
        );
    }
    if counts.is_empty() {
        return Err(Error::Config("table has no rows".into()));
    }
    Ok(counts)
}

/// Runs `f` on a pool with the requested number of threads.
pub(crate) fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn qpow(q: u32, e: u64) -> BigUint {
    Pow::pow(BigUint::from(q), e)
}

fn add_into(mut acc: Vec<BigUint>, other: Vec<BigUint>) -> Vec<BigUint> {
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
    acc
}

struct Context<'a> {
    space: &'a BlockSpace,
    m: u32,
    len: usize,
    classes: BlockClassTable,
    class: PosetClass,
}

impl<'a> Context<'a> {
    fn new(space: &'a BlockSpace) -> Self {
        let max_k = space.labels().lens().iter().copied().max().unwrap_or(1);
        let m = space.weight_model().max_weight();
        Context {
            space,
            m,
            len: space.max_total_weight() as usize + 1,
            classes: BlockClassTable::new(space.weight_model(), max_k),
            class: PosetClass::of(&space.poset().classify()),
        }
    }

    fn zero(&self) -> Vec<BigUint> {
        vec![BigUint::zero(); self.len]
    }

    fn table(&self, method: Method, mut counts: Vec<BigUint>) -> DistributionTable {
        counts[0] = BigUint::one();
        DistributionTable {
            q: self.space.q(),
            total_len: self.space.total_len(),
            method,
            poset_class: Some(self.class),
            counts,
        }
    }

    /// Σ over partitions of `s` into `j` parts of `Π_s |D_{t_s}^k|^{r_s}` times
    /// the number of arrangements, for a uniform block length `k`.
    fn uniform_sum(&self, s: u32, j: usize, k: u32) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for b in partitions_with_parts(s, j, self.m)? {
            let mult = b.multiplicities();
            let mut term = arrangement_count(&b);
            for (&v, &r) in mult.values.iter().zip(&mult.counts) {
                term *= Pow::pow(self.classes.get(v, k), r);
            }
            total += term;
        }
        Ok(total)
    }

    /// Σ over arrangements of partitions of `s` into `ks.len()` parts of
    /// `Π_p |D_{b_p}^{ks[p]}|`, arrangements taken from `bank`.
    fn arranged_sum(&self, tuples: &[Vec<u32>], ks: &[u32]) -> BigUint {
        tuples
            .iter()
            .map(|t| {
                t.iter()
                    .zip(ks)
                    .fold(BigUint::one(), |acc, (&b, &k)| acc * self.classes.get(b, k))
            })
            .sum()
    }
}

/// For a part count `j`: entry `s - j` lists every arrangement of every
/// partition of `s` into `j` parts in `[1, M_w]`.
fn arrangement_bank(j: usize, m: u32, cap: usize) -> Result<Vec<Vec<Vec<u32>>>> {
    let mut bank = Vec::new();
    let mut stored = 0usize;
    for s in j as u32..=j as u32 * m {
        let mut tuples = Vec::new();
        for b in partitions_with_parts(s, j, m)? {
            let remaining = cap.saturating_sub(stored);
            let list = enumerate_arrangements_with_cap(&b, remaining).map_err(|e| match e {
                Error::Explosion { count, .. } => Error::Explosion {
                    what: "arrangement",
                    count: count + stored as u128,
                    cap: cap as u128,
                },
                other => other,
            })?;
            stored += list.len();
            tuples.extend(list);
        }
        bank.push(tuples);
    }
    Ok(bank)
}

/// Sums over every non-empty ideal and every arrangement of the partitions
/// with `|Max(I)|` parts; maximal blocks are paired with the tuple in label order.
pub fn distribution_general(
    space: &BlockSpace,
    opts: &DistributionOptions,
) -> Result<DistributionTable> {
    let ctx = Context::new(space);
    let family = space.poset().ideals_with_cap(opts.ideal_cap)?;
    let lens = space.labels().lens();

    // ideals with the same non-maximal count, non-maximal length and
    // maximal block lengths contribute identically
    let mut groups: HashMap<(u32, u64, Vec<u32>), u64> = HashMap::new();
    for ideal in family.all().iter().filter(|i| i.members != 0) {
        let non_max = ideal.non_maximals();
        let key = (
            non_max.count_ones(),
            indices_of(non_max).map(|i| lens[i] as u64).sum(),
            indices_of(ideal.maximals).map(|i| lens[i]).collect(),
        );
        *groups.entry(key).or_default() += 1;
    }

    let mut banks = BTreeMap::new();
    for (_, _, ks) in groups.keys() {
        if let std::collections::btree_map::Entry::Vacant(e) = banks.entry(ks.len()) {
            e.insert(arrangement_bank(ks.len(), ctx.m, opts.arrangement_cap)?);
        }
    }

    let groups: Vec<_> = groups.into_iter().collect();
    let counts = in_pool(opts.threads, || {
        groups
            .par_iter()
            .map(|((i, non_max_len, ks), multiplicity)| {
                let mut local = ctx.zero();
                let factor = qpow(space.q(), *non_max_len) * *multiplicity;
                let j = ks.len();
                for (offset, tuples) in banks[&j].iter().enumerate() {
                    let r = (i * ctx.m) as usize + j + offset;
                    local[r] += ctx.arranged_sum(tuples, ks) * &factor;
                }
                local
            })
            .reduce(|| ctx.zero(), add_into)
    })?;
    Ok(ctx.table(Method::General, counts))
}

/// Equal block lengths: multinomials replace arrangement enumeration, and an
/// ideal only matters through its size and maximal count.
pub fn distribution_equal_blocks(
    space: &BlockSpace,
    opts: &DistributionOptions,
) -> Result<DistributionTable> {
    let k = space.labels().uniform_len().ok_or_else(|| {
        Error::Precondition("equal-block method needs all blocks of one length".into())
    })?;
    equal_blocks_with(space, opts, k, Method::EqualBlocks)
}

fn equal_blocks_with(
    space: &BlockSpace,
    opts: &DistributionOptions,
    k: u32,
    method: Method,
) -> Result<DistributionTable> {
    let ctx = Context::new(space);
    let family = space.poset().ideals_with_cap(opts.ideal_cap)?;
    let cells: Vec<((usize, usize), usize)> =
        family.counts().filter(|&((card, _), _)| card > 0).collect();
    let counts = in_pool(opts.threads, || {
        cells
            .par_iter()
            .map(|&((card, j), n_ideals)| -> Result<Vec<BigUint>> {
                let mut local = ctx.zero();
                let i = card - j;
                let factor = qpow(space.q(), k as u64 * i as u64) * n_ideals;
                for s in j as u32..=j as u32 * ctx.m {
                    let r = i * ctx.m as usize + s as usize;
                    local[r] += ctx.uniform_sum(s, j, k)? * &factor;
                }
                Ok(local)
            })
            .try_reduce(|| ctx.zero(), |a, b| Ok(add_into(a, b)))
    })??;
    Ok(ctx.table(method, counts))
}

/// Level by level: an ideal of a hierarchical poset is all levels below some
/// `Γ_λ` together with a non-empty subset of `Γ_λ`.
pub fn distribution_hierarchical(
    space: &BlockSpace,
    opts: &DistributionOptions,
) -> Result<DistributionTable> {
    let cls = space.poset().classify();
    if !cls.is_hierarchical {
        return Err(Error::Precondition("poset is not hierarchical".into()));
    }
    let ctx = Context::new(space);
    let lens = space.labels().lens();
    let mut below = Vec::new();
    let (mut t, mut lower_len) = (0usize, 0u64);
    for &level in &cls.levels.levels {
        below.push((level, t, lower_len));
        t += level.count_ones() as usize;
        lower_len += indices_of(level).map(|i| lens[i] as u64).sum::<u64>();
    }
    let counts = in_pool(opts.threads, || {
        below
            .par_iter()
            .map(|&(level, t, lower_len)| -> Result<Vec<BigUint>> {
                let mut local = ctx.zero();
                let factor = qpow(space.q(), lower_len);
                let members: Vec<usize> = indices_of(level).collect();
                let n_level = members.len();
                let ks: Vec<u32> = members.iter().map(|&i| lens[i]).collect();
                let base = t * ctx.m as usize;
                if ks.iter().all(|&k| k == ks[0]) {
                    for l in 1..=n_level {
                        let choose = binomial(n_level as u64, l as u64) * &factor;
                        for s in l as u32..=l as u32 * ctx.m {
                            local[base + s as usize] += ctx.uniform_sum(s, l, ks[0])? * &choose;
                        }
                    }
                } else {
                    let subsets = (1u128 << n_level) - 1;
                    if subsets > opts.ideal_cap as u128 {
                        return Err(Error::Explosion {
                            what: "level subset",
                            count: subsets,
                            cap: opts.ideal_cap as u128,
                        });
                    }
                    let mut groups: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
                    for sub in 1u64..1 << n_level {
                        let chosen = indices_of(sub).map(|p| ks[p]).collect();
                        *groups.entry(chosen).or_default() += 1;
                    }
                    let mut banks = BTreeMap::new();
                    for (chosen, mult) in groups {
                        let l = chosen.len();
                        if let std::collections::btree_map::Entry::Vacant(e) = banks.entry(l) {
                            e.insert(arrangement_bank(l, ctx.m, opts.arrangement_cap)?);
                        }
                        let scale = &factor * mult;
                        for (offset, tuples) in banks[&l].iter().enumerate() {
                            local[base + l + offset] += ctx.arranged_sum(tuples, &chosen) * &scale;
                        }
                    }
                }
                Ok(local)
            })
            .try_reduce(|| ctx.zero(), |a, b| Ok(add_into(a, b)))
    })??;
    Ok(ctx.table(Method::Hierarchical, counts))
}

/// Chains: `|A_{t·M_w + a}| = q^{k_1 + … + k_t} |D_a^{k_{t+1}}|` with blocks
/// taken bottom up.
pub fn distribution_chain(space: &BlockSpace) -> Result<DistributionTable> {
    let cls = space.poset().classify();
    if !cls.is_chain {
        return Err(Error::Precondition("poset is not a chain".into()));
    }
    let ctx = Context::new(space);
    let lens = space.labels().lens();
    let mut order: Vec<usize> = (0..space.n()).collect();
    order.sort_by_key(|&i| cls.levels.heights[i]);
    let mut counts = ctx.zero();
    let mut prefix = 0u64;
    for (t, &block) in order.iter().enumerate() {
        let below = qpow(space.q(), prefix);
        for a in 1..=ctx.m {
            counts[t * ctx.m as usize + a as usize] = &below * ctx.classes.get(a, lens[block]);
        }
        prefix += lens[block] as u64;
    }
    Ok(ctx.table(Method::Chain, counts))
}

/// Closed forms for the classical specialisations.
pub fn distribution_specialized(
    kind: Specialization,
    space: &BlockSpace,
    opts: &DistributionOptions,
) -> Result<DistributionTable> {
    let lens = space.labels().lens();
    let unit_blocks = lens.iter().all(|&k| k == 1);
    let hamming = space.weight_model().is_hamming();
    let method = Method::Specialized(kind);
    let q = space.q();
    match kind {
        Specialization::Pw => {
            if !unit_blocks {
                return Err(Error::Precondition("pw needs blocks of length 1".into()));
            }
            equal_blocks_with(space, opts, 1, method)
        }
        Specialization::Ppi => {
            if !hamming {
                return Err(Error::Precondition("ppi needs the Hamming weight".into()));
            }
            let ctx = Context::new(space);
            let family = space.poset().ideals_with_cap(opts.ideal_cap)?;
            let counts = in_pool(opts.threads, || {
                family
                    .all()
                    .par_iter()
                    .filter(|i| i.members != 0)
                    .map(|ideal| {
                        let mut local = ctx.zero();
                        let top = indices_of(ideal.maximals)
                            .fold(BigUint::one(), |acc, i| acc * (qpow(q, lens[i] as u64) - 1u32));
                        let rest: u64 = indices_of(ideal.non_maximals()).map(|i| lens[i] as u64).sum();
                        local[ideal.size()] = top * qpow(q, rest);
                        local
                    })
                    .reduce(|| ctx.zero(), add_into)
            })?;
            Ok(ctx.table(method, counts))
        }
        Specialization::Pi => {
            if !hamming || !space.poset().classify().is_antichain {
                return Err(Error::Precondition(
                    "pi needs the Hamming weight on an antichain".into(),
                ));
            }
            let ctx = Context::new(space);
            // elementary symmetric polynomials of q^{k_i} - 1
            let mut e = ctx.zero();
            e[0] = BigUint::one();
            for (seen, &k) in lens.iter().enumerate() {
                let v = qpow(q, k as u64) - 1u32;
                for r in (1..=seen + 1).rev() {
                    let add = &e[r - 1] * &v;
                    e[r] += add;
                }
            }
            Ok(ctx.table(method, e))
        }
        Specialization::P => {
            if !hamming || !unit_blocks {
                return Err(Error::Precondition(
                    "p needs the Hamming weight and blocks of length 1".into(),
                ));
            }
            let ctx = Context::new(space);
            let family = space.poset().ideals_with_cap(opts.ideal_cap)?;
            let mut counts = ctx.zero();
            for ((card, j), n_ideals) in family.counts().filter(|&((c, _), _)| c > 0) {
                counts[card] += Pow::pow(BigUint::from(q - 1), j as u64)
                    * qpow(q, (card - j) as u64)
                    * n_ideals;
            }
            Ok(ctx.table(method, counts))
        }
    }
}

/// The method automatic selection would use for this space.
pub fn auto_method(space: &BlockSpace) -> Method {
    let cls = space.poset().classify();
    if cls.is_chain {
        Method::Chain
    } else if cls.is_hierarchical {
        Method::Hierarchical
    } else if space.labels().uniform_len().is_some() {
        Method::EqualBlocks
    } else {
        Method::General
    }
}

/// Every closed-form method whose preconditions the space satisfies.
pub fn applicable_methods(space: &BlockSpace) -> Vec<Method> {
    let cls = space.poset().classify();
    let unit_blocks = space.labels().lens().iter().all(|&k| k == 1);
    let hamming = space.weight_model().is_hamming();
    let mut out = vec![Method::General];
    if space.labels().uniform_len().is_some() {
        out.push(Method::EqualBlocks);
    }
    if cls.is_hierarchical {
        out.push(Method::Hierarchical);
    }
    if cls.is_chain {
        out.push(Method::Chain);
    }
    if unit_blocks {
        out.push(Method::Specialized(Specialization::Pw));
    }
    if hamming {
        out.push(Method::Specialized(Specialization::Ppi));
        if cls.is_antichain {
            out.push(Method::Specialized(Specialization::Pi));
        }
        if unit_blocks {
            out.push(Method::Specialized(Specialization::P));
        }
    }
    out
}

/// Computes the distribution with the chosen method.
pub fn distribution(
    space: &BlockSpace,
    choice: MethodChoice,
    opts: &DistributionOptions,
) -> Result<DistributionTable> {
    let method = match choice {
        MethodChoice::Auto => auto_method(space),
        MethodChoice::Forced(m) => m,
    };
    match method {
        Method::General => distribution_general(space, opts),
        Method::EqualBlocks => distribution_equal_blocks(space, opts),
        Method::Hierarchical => distribution_hierarchical(space, opts),
        Method::Chain => distribution_chain(space),
        Method::Specialized(kind) => distribution_specialized(kind, space, opts),
        Method::Oracle => {
            let oracle_opts = crate::oracle::OracleOptions {
                threads: opts.threads,
                ..Default::default()
            };
            Ok(crate::oracle::oracle_distribution(space, &oracle_opts)?.to_table(space))
        }
    }
}

/// `|B_r|` from a table.
pub fn ball_volume(table: &DistributionTable, r: u32) -> Result<BigUint> {
    table.ball_volume(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use crate::space::LabelMap;
    use crate::weight::WeightModel;

    fn space(p: Poset, lens: Vec<u32>, w: WeightModel) -> BlockSpace {
        BlockSpace::new(p, LabelMap::new(lens).unwrap(), w).unwrap()
    }

    fn example() -> BlockSpace {
        space(
            Poset::new(5, &[(1, 2)]).unwrap(),
            vec![2, 3, 4, 2, 2],
            WeightModel::lee(7).unwrap(),
        )
    }

    fn opts() -> DistributionOptions {
        DistributionOptions::default()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn lee7_five_blocks_spot_counts() {
        let t = distribution_general(&example(), &opts()).unwrap();
        assert_eq!(t.count(3), big(35384));
        assert_eq!(t.count(14), big(22_829_377_536));
        assert_eq!(t.count(0), big(1));
        assert_eq!(t.total(), qpow(7, 13));
        assert_eq!(t.max_weight(), 15);
    }

    #[test]
    fn hamming_chain_of_three() {
        let s = space(Poset::chain(3).unwrap(), vec![1, 1, 1], WeightModel::hamming(3).unwrap());
        let expected: Vec<BigUint> = [1u64, 2, 6, 18].into_iter().map(big).collect();
        for m in [Method::General, Method::Chain, Method::Hierarchical, Method::EqualBlocks] {
            let t = distribution(&s, MethodChoice::Forced(m), &opts()).unwrap();
            assert_eq!(t.counts, expected, "{m}");
        }
    }

    #[test]
    fn preconditions() {
        let s = example();
        assert!(matches!(distribution_equal_blocks(&s, &opts()), Err(Error::Precondition(_))));
        assert!(matches!(distribution_hierarchical(&s, &opts()), Err(Error::Precondition(_))));
        assert!(matches!(distribution_chain(&s), Err(Error::Precondition(_))));
        for kind in [Specialization::Pw, Specialization::Ppi, Specialization::Pi, Specialization::P] {
            assert!(matches!(
                distribution_specialized(kind, &s, &opts()),
                Err(Error::Precondition(_))
            ));
        }
    }

    #[test]
    fn auto_dispatch_order() {
        let lee = WeightModel::lee(5).unwrap();
        let chain = space(Poset::chain(3).unwrap(), vec![1, 2, 1], lee.clone());
        assert_eq!(auto_method(&chain), Method::Chain);
        let hier = space(
            Poset::new(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap(),
            vec![1, 2, 1, 1],
            lee.clone(),
        );
        assert_eq!(auto_method(&hier), Method::Hierarchical);
        let equal = space(Poset::new(3, &[(1, 2)]).unwrap(), vec![2, 2, 2], lee.clone());
        assert_eq!(auto_method(&equal), Method::EqualBlocks);
        assert_eq!(auto_method(&example()), Method::General);
        let t = distribution(&equal, MethodChoice::Auto, &opts()).unwrap();
        assert_eq!(t.method, Method::EqualBlocks);
        assert_eq!(t.poset_class, Some(PosetClass::General));
    }

    #[test]
    fn equal_block_top_count() {
        // three maximal elements among five, blocks of length 2, Lee on Z_5
        let s = space(
            Poset::new(5, &[(1, 3), (2, 4)]).unwrap(),
            vec![2; 5],
            WeightModel::lee(5).unwrap(),
        );
        let t = distribution_equal_blocks(&s, &opts()).unwrap();
        let top = qpow(5, 2) - qpow(3, 2);
        assert_eq!(t.count(10), Pow::pow(top, 3u32) * qpow(5, 4));
        assert!(t.same_counts(&distribution_general(&s, &opts()).unwrap()));
    }

    #[test]
    fn antichain_hamming_binomials() {
        let s = space(Poset::antichain(5).unwrap(), vec![3; 5], WeightModel::hamming(4).unwrap());
        let t = distribution_equal_blocks(&s, &opts()).unwrap();
        for r in 0..=5u64 {
            assert_eq!(t.count(r as u32), binomial(5, r) * Pow::pow(big(63), r));
        }
    }

    #[test]
    fn hierarchical_hamming_closed_form() {
        // levels of sizes 2, 3, 2 with blocks of length 2 over Z_3
        let rel: Vec<(usize, usize)> = [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]
            .into_iter()
            .chain([3, 4, 5].into_iter().flat_map(|a| [(a, 6), (a, 7)]))
            .collect();
        let s = space(Poset::new(7, &rel).unwrap(), vec![2; 7], WeightModel::hamming(3).unwrap());
        let t = distribution_hierarchical(&s, &opts()).unwrap();
        // top level: t = 5, n_j = 2
        for a in 1..=2u64 {
            let r = 5 + a;
            let expect = binomial(2, a) * Pow::pow(big(8), a) * qpow(3, 2 * (r - a));
            assert_eq!(t.count(r as u32), expect);
        }
        assert!(t.same_counts(&distribution_general(&s, &opts()).unwrap()));
    }

    #[test]
    fn hierarchical_with_mixed_level_lengths() {
        let s = space(
            Poset::new(5, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap(),
            vec![1, 2, 3, 1, 2],
            WeightModel::lee(5).unwrap(),
        );
        let h = distribution_hierarchical(&s, &opts()).unwrap();
        assert!(h.same_counts(&distribution_general(&s, &opts()).unwrap()));
        assert_eq!(h.total(), qpow(5, 9));
    }

    #[test]
    fn chain_closed_forms() {
        let lee = WeightModel::lee(7).unwrap();
        let s = space(Poset::chain(4).unwrap(), vec![1; 4], lee.clone());
        let t = distribution_chain(&s).unwrap();
        for tt in 0..4u32 {
            for a in 1..=3u32 {
                assert_eq!(t.count(tt * 3 + a), qpow(7, tt as u64) * lee.class_size(a));
            }
        }
        let ham = space(Poset::chain(3).unwrap(), vec![2, 1, 3], WeightModel::hamming(3).unwrap());
        let t = distribution_chain(&ham).unwrap();
        assert_eq!(t.count(1), big(8));
        assert_eq!(t.count(2), big(2 * 9));
        assert_eq!(t.count(3), big(26 * 27));
        // chain given against label order
        let rev = space(Poset::chain_in_order(&[3, 1, 2]).unwrap(), vec![2, 1, 3], lee);
        let t = distribution_chain(&rev).unwrap();
        assert!(t.same_counts(&distribution_general(&rev, &opts()).unwrap()));
    }

    #[test]
    fn chain_balls_at_level_boundaries() {
        let s = space(Poset::chain(3).unwrap(), vec![2, 1, 2], WeightModel::lee(7).unwrap());
        let t = distribution_chain(&s).unwrap();
        assert_eq!(t.ball_volume(0).unwrap(), big(1));
        assert_eq!(t.ball_volume(3).unwrap(), big(49));
        assert_eq!(t.ball_volume(6).unwrap(), big(343));
        assert_eq!(t.ball_volume(9).unwrap(), qpow(7, 5));
        assert!(matches!(t.ball_volume(10), Err(Error::Bounds(_))));
    }

    #[test]
    fn specialisations() {
        let h3 = WeightModel::hamming(3).unwrap();
        let p = space(Poset::chain(4).unwrap(), vec![1; 4], h3.clone());
        let t = distribution_specialized(Specialization::P, &p, &opts()).unwrap();
        for r in 1..=4u32 {
            assert_eq!(t.count(r), qpow(3, r as u64 - 1) * 2u32);
        }
        let pw = distribution_specialized(Specialization::Pw, &p, &opts()).unwrap();
        assert!(pw.same_counts(&t));

        let pi = space(Poset::antichain(3).unwrap(), vec![2; 3], WeightModel::hamming(2).unwrap());
        let t = distribution_specialized(Specialization::Pi, &pi, &opts()).unwrap();
        for r in 0..=3u64 {
            assert_eq!(t.count(r as u32), binomial(3, r) * Pow::pow(big(3), r));
        }

        let ppi = space(Poset::new(4, &[(1, 3), (2, 3)]).unwrap(), vec![2, 1, 1, 3], h3.clone());
        let a = distribution_specialized(Specialization::Ppi, &ppi, &opts()).unwrap();
        assert!(a.same_counts(&distribution_general(&ppi, &opts()).unwrap()));
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let base = distribution_general(&example(), &opts()).unwrap();
        for threads in [1, 2, 4] {
            let o = DistributionOptions {
                threads: Some(threads),
                ..opts()
            };
            assert_eq!(distribution_general(&example(), &o).unwrap(), base);
        }
    }

    #[test]
    fn caps_raise_explosion() {
        let s = space(Poset::antichain(12).unwrap(), vec![1; 12], WeightModel::lee(5).unwrap());
        let o = DistributionOptions {
            ideal_cap: 100,
            ..opts()
        };
        assert!(matches!(distribution_general(&s, &o), Err(Error::Explosion { .. })));
        let o = DistributionOptions {
            arrangement_cap: 50,
            ..opts()
        };
        assert!(matches!(distribution_general(&s, &o), Err(Error::Explosion { .. })));
    }

    #[test]
    fn json_and_csv_round_trip() {
        let t = distribution_general(&example(), &opts()).unwrap();
        let back = DistributionTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(DistributionTable::counts_from_csv(&t.to_csv()).unwrap(), t.counts);
        assert!(t.to_json().contains("\"count\": \"22829377536\""));
        assert!(DistributionTable::counts_from_csv("r,count\n1,5\n").is_err());
        assert!(DistributionTable::from_json("{}").is_err());
    }

    #[test]
    fn method_names_parse() {
        for m in [
            Method::General,
            Method::EqualBlocks,
            Method::Hierarchical,
            Method::Chain,
            Method::Specialized(Specialization::Ppi),
            Method::Oracle,
        ] {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!("equal".parse::<Method>().unwrap(), Method::EqualBlocks);
        assert_eq!("auto".parse::<MethodChoice>().unwrap(), MethodChoice::Auto);
        assert!("fast".parse::<Method>().is_err());
    }
}
