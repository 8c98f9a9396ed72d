//! Linear codes over `F_q` inside a block space and the checks run on them.

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distribution::{distribution, in_pool, DistributionOptions, MethodChoice};
use crate::error::{Error, Result};
use crate::oracle::default_space_cap;
use crate::poset::{indices_of, ElementSet, Ideal};
use crate::space::{pi_support, BlockSpace, BlockVector};

/// Default cap on `q^k` for materialising codewords.
pub const DEFAULT_CODEWORD_CAP: u128 = 1_000_000;

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn inv_mod(a: u32, q: u32) -> u32 {
    let (mut result, mut base, mut e) = (1u64, a as u64 % q as u64, q as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q as u64;
        }
        base = base * base % q as u64;
        e >>= 1;
    }
    result as u32
}

/// Row-reduced echelon form over `F_q`; zero rows dropped. Returns the rows
/// and their pivot columns.
fn rref(mut rows: Vec<Vec<u32>>, q: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let qq = q as u64;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = inv_mod(rows[rank][col], q) as u64;
        for x in rows[rank].iter_mut() {
            *x = (*x as u64 * inv % qq) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let f = row[col] as u64;
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = ((*x as u64 + qq * qq - f * p as u64) % qq) as u32;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

fn rank_of(rows: Vec<Vec<u32>>, q: u32) -> usize {
    rref(rows, q).1.len()
}

/// A linear code given by a generator matrix, stored in reduced form.
/// Codewords are materialised on first use, up to a cap on `q^k`.
#[derive(Clone, Debug)]
pub struct LinearCode {
    q: u32,
    len: usize,
    generator: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    codeword_cap: u128,
    codewords: OnceLock<Vec<BlockVector>>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.len == other.len && self.generator == other.generator
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// The row space of `rows` in `F_q^len`. Dependent rows are allowed.
    pub fn new(q: u32, len: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NonPrime(q));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != len {
                return Err(Error::Dimension(format!(
                    "generator row {} has length {}, expected {len}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(&s) = row.iter().find(|&&s| s >= q) {
                return Err(Error::Bounds(format!("generator entry {s} is not in F_{q}")));
            }
        }
        let (generator, pivots) = rref(rows, q);
        Ok(LinearCode {
            q,
            len,
            generator,
            pivots,
            codeword_cap: DEFAULT_CODEWORD_CAP,
            codewords: OnceLock::new(),
        })
    }

    pub fn full_space(q: u32, len: usize) -> Result<Self> {
        let rows = (0..len)
            .map(|i| (0..len).map(|j| u32::from(i == j)).collect())
            .collect();
        Self::new(q, len, rows)
    }

    pub fn zero(q: u32, len: usize) -> Result<Self> {
        Self::new(q, len, Vec::new())
    }

    pub fn with_codeword_cap(mut self, cap: u128) -> Self {
        self.codeword_cap = cap;
        self.codewords = OnceLock::new();
        self
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Length `N`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Dimension `k`.
    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    /// Reduced generator rows.
    pub fn generator(&self) -> &[Vec<u32>] {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `q^k`.
    pub fn size(&self) -> BigUint {
        Pow::pow(BigUint::from(self.q), self.dimension())
    }

    /// All `q^k` codewords, coefficient vectors in odometer order.
    pub fn codewords(&self) -> Result<&[BlockVector]> {
        if let Some(words) = self.codewords.get() {
            return Ok(words);
        }
        let size = (self.q as u128)
            .checked_pow(self.dimension() as u32)
            .unwrap_or(u128::MAX);
        if size > self.codeword_cap {
            return Err(Error::Explosion {
                what: "codeword",
                count: size,
                cap: self.codeword_cap,
            });
        }
        Ok(self.codewords.get_or_init(|| self.enumerate(size as usize)))
    }

    fn enumerate(&self, size: usize) -> Vec<BlockVector> {
        let q = self.q;
        let k = self.dimension();
        let mut coeffs = vec![0u32; k];
        let mut word = vec![0u32; self.len];
        let mut out = Vec::with_capacity(size);
        out.push(BlockVector::new(word.clone()));
        for _ in 1..size {
            // incrementing coefficient i by one adds row i; wrapping from
            // q - 1 back to 0 also amounts to adding row i once
            for (c, row) in coeffs.iter_mut().zip(&self.generator) {
                for (w, &g) in word.iter_mut().zip(row) {
                    *w = (*w + g) % q;
                }
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
            out.push(BlockVector::new(word.clone()));
        }
        out
    }

    /// Rows of a parity-check matrix `H` with `G·H^T = 0`.
    pub fn parity_check(&self) -> Vec<Vec<u32>> {
        let q = self.q;
        let mut is_pivot = vec![false; self.len];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.len)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut h = vec![0u32; self.len];
                h[j] = 1;
                for (row, &p) in self.generator.iter().zip(&self.pivots) {
                    h[p] = (q - row[j]) % q;
                }
                h
            })
            .collect()
    }

    pub fn syndrome(&self, x: &BlockVector) -> Result<Vec<u32>> {
        if x.len() != self.len {
            return Err(Error::Dimension(format!(
                "vector of length {} for a code of length {}",
                x.len(),
                self.len
            )));
        }
        let q = self.q as u64;
        Ok(self
            .parity_check()
            .iter()
            .map(|h| (h.iter().zip(x.entries()).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % q) as u32)
            .collect())
    }

    pub fn contains(&self, x: &BlockVector) -> Result<bool> {
        Ok(self.syndrome(x)?.iter().all(|&s| s == 0))
    }

    /// The dual under the standard inner product.
    pub fn dual_code(&self) -> LinearCode {
        LinearCode::new(self.q, self.len, self.parity_check())
            .expect("parity check rows are valid")
            .with_codeword_cap(self.codeword_cap)
    }

    /// Whether no non-zero codeword has all its non-zero blocks in `set`.
    fn avoids(&self, space: &BlockSpace, set: ElementSet) -> Result<bool> {
        match self.codewords() {
            Ok(words) => Ok(words
                .par_iter()
                .filter(|c| pi_support(space.labels(), c.entries()) & !set == 0)
                .count()
                == 1),
            Err(Error::Explosion { .. }) => {
                // a·G vanishes outside `set` only for a = 0 iff the columns
                // outside `set` have full rank k
                let outside: Vec<usize> = outside_coordinates(space, set);
                let cols: Vec<Vec<u32>> = self
                    .generator
                    .iter()
                    .map(|row| outside.iter().map(|&c| row[c]).collect())
                    .collect();
                Ok(rank_of(cols, self.q) == self.dimension())
            }
            Err(e) => Err(e),
        }
    }
}

fn outside_coordinates(space: &BlockSpace, set: ElementSet) -> Vec<usize> {
    (0..space.n())
        .filter(|&i| set >> i & 1 == 0)
        .flat_map(|i| space.labels().range(i))
        .collect()
}

fn inside_coordinates(space: &BlockSpace, set: ElementSet) -> Vec<usize> {
    indices_of(set).flat_map(|i| space.labels().range(i)).collect()
}

fn check_code(code: &LinearCode, space: &BlockSpace) -> Result<()> {
    if code.len() != space.total_len() || code.q() != space.q() {
        return Err(Error::Dimension(format!(
            "code of length {} over F_{} in a space of length {} over Z_{}",
            code.len(),
            code.q(),
            space.total_len(),
            space.q()
        )));
    }
    Ok(())
}

/// Limits and parallelism for code analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeOptions {
    /// Cap on `q^N` for the exhaustive coset sweep.
    pub space_cap: u128,
    pub distribution: DistributionOptions,
}

impl Default for CodeOptions {
    fn default() -> Self {
        CodeOptions {
            space_cap: default_space_cap(),
            distribution: DistributionOptions::default(),
        }
    }
}

/// Minimum distances of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Distances {
    pub pwpi: u32,
    /// Under the Hamming specialisation: `min |⟨supp_π(c)⟩|`.
    pub ppi: u32,
}

/// Minimum non-zero codeword weights, by exhaustive enumeration.
pub fn min_distance(code: &LinearCode, space: &BlockSpace) -> Result<Distances> {
    check_code(code, space)?;
    if code.dimension() == 0 {
        return Err(Error::TrivialCode);
    }
    let words = code.codewords()?;
    let (pwpi, ppi) = words
        .par_iter()
        .filter(|c| !c.is_zero())
        .map(|c| (space.weight_of_entries(c.entries()), space.ppi_weight_of_entries(c.entries())))
        .reduce(|| (u32::MAX, u32::MAX), |a, b| (a.0.min(b.0), a.1.min(b.1)));
    Ok(Distances { pwpi, ppi })
}

/// Whether `supp_π(center - x) ⊆ I`.
pub fn i_ball_contains(
    space: &BlockSpace,
    ideal: &Ideal,
    center: &BlockVector,
    x: &BlockVector,
) -> Result<bool> {
    space.check_vector(center)?;
    space.check_vector(x)?;
    let diff = center.sub_mod(x, space.q());
    Ok(pi_support(space.labels(), diff.entries()) & !ideal.members == 0)
}

/// `|B_I(u)| = q^{Σ_{i∈I} k_i}`.
pub fn i_ball_size(space: &BlockSpace, ideal: &Ideal) -> BigUint {
    Pow::pow(BigUint::from(space.q()), space.labels().span(ideal.members))
}

/// I-perfect: the I-balls around the codewords partition the space.
/// Covering amounts to `Σ_{i∈I} k_i = N - k`, packing to `B_I(0) ∩ C = {0}`.
pub fn is_i_perfect(code: &LinearCode, space: &BlockSpace, ideal: &Ideal) -> Result<bool> {
    check_code(code, space)?;
    let span = space.labels().span(ideal.members);
    let covering = span + code.dimension() == space.total_len();
    let packing = code.avoids(space, ideal.members)?;
    if cfg!(debug_assertions) && covering {
        // packing again, as injectivity of the syndrome map on B_I(0)
        let h = code.parity_check();
        let inside = inside_coordinates(space, ideal.members);
        let cols: Vec<Vec<u32>> = inside
            .iter()
            .map(|&c| h.iter().map(|row| row[c]).collect())
            .collect();
        let independent = cols.is_empty() || rank_of(cols, code.q()) == inside.len();
        if independent != packing {
            return Err(Error::Consistency(format!(
                "packing by enumeration is {packing}, by syndromes {independent}"
            )));
        }
    }
    Ok(covering && packing)
}

/// The two halves of r-perfectness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BallVerdict {
    pub disjoint: bool,
    pub covering: bool,
}

/// Exact verdict by sweeping `Z_q^N`: the radius-`r` balls around codewords
/// are disjoint iff each coset holds at most one vector of weight `<= r`,
/// and cover iff each coset holds at least one.
fn coset_sweep(code: &LinearCode, space: &BlockSpace, r: u32, threads: Option<usize>) -> Result<BallVerdict> {
    let q = code.q();
    let qq = q as u64;
    let h = code.parity_check();
    let redundancy = h.len();
    let columns: Vec<Vec<u32>> = (0..code.len())
        .map(|c| h.iter().map(|row| row[c]).collect())
        .collect();
    let cosets = qq.pow(redundancy as u32);
    let total = qq.pow(code.len() as u32);
    let hits: Vec<AtomicU32> = (0..cosets).map(|_| AtomicU32::new(0)).collect();
    let pieces = (total / 4096).clamp(1, 1024);
    let step = total.div_ceil(pieces);
    in_pool(threads, || {
        (0..pieces).into_par_iter().for_each(|p| {
            let (start, end) = (p * step, ((p + 1) * step).min(total));
            if start >= end {
                return;
            }
            let mut digits: Vec<u32> = {
                let mut t = start;
                (0..code.len())
                    .map(|_| {
                        let d = (t % qq) as u32;
                        t /= qq;
                        d
                    })
                    .collect()
            };
            let mut syn = vec![0u32; redundancy];
            for (c, &d) in digits.iter().enumerate() {
                for (s, &hc) in syn.iter_mut().zip(&columns[c]) {
                    *s = ((*s as u64 + hc as u64 * d as u64) % qq) as u32;
                }
            }
            for _ in start..end {
                if space.weight_of_entries(&digits) <= r {
                    let idx = syn.iter().rev().fold(0u64, |acc, &s| acc * qq + s as u64);
                    hits[idx as usize].fetch_add(1, Ordering::Relaxed);
                }
                // every digit touched by the increment moves up by one mod q
                for c in 0..digits.len() {
                    for (s, &hc) in syn.iter_mut().zip(&columns[c]) {
                        *s = (*s + hc) % q;
                    }
                    digits[c] += 1;
                    if digits[c] < q {
                        break;
                    }
                    digits[c] = 0;
                }
            }
        })
    })?;
    let (disjoint, covering) = hits
        .par_iter()
        .map(|h| {
            let h = h.load(Ordering::Relaxed);
            (h <= 1, h >= 1)
        })
        .reduce(|| (true, true), |a, b| (a.0 && b.0, a.1 && b.1));
    Ok(BallVerdict { disjoint, covering })
}

/// Verdicts from the minimum distance and ball volume alone, where they
/// settle the question.
struct VolumeVerdict {
    disjoint: Option<bool>,
    perfect: Option<bool>,
}

fn volume_route(code: &LinearCode, space: &BlockSpace, r: u32, opts: &CodeOptions) -> Result<VolumeVerdict> {
    let d = if code.dimension() == 0 {
        None
    } else {
        match min_distance(code, space) {
            Ok(d) => Some(d.pwpi),
            Err(Error::Explosion { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    let disjoint = match d {
        None if code.dimension() == 0 => Some(true),
        None => None,
        Some(d) if d <= r => Some(false),
        Some(d) if space.weight_model().is_metric_safe() && d as u64 > 2 * r as u64 => Some(true),
        Some(_) => None,
    };
    let perfect = match disjoint {
        Some(false) => Some(false),
        Some(true) => {
            let table = distribution(space, MethodChoice::Auto, &opts.distribution)?;
            let volume = table.ball_volume(r.min(table.max_weight()))?;
            let whole = Pow::pow(BigUint::from(space.q()), space.total_len());
            Some(code.size() * volume == whole)
        }
        None => None,
    };
    Ok(VolumeVerdict { disjoint, perfect })
}

/// Disjointness and perfectness of the radius-`r` balls. Below the space cap
/// the coset sweep decides and the volume route, where decisive, must agree;
/// above it only a decisive volume route is accepted.
fn decide(code: &LinearCode, space: &BlockSpace, r: u32, opts: &CodeOptions) -> Result<(bool, bool)> {
    check_code(code, space)?;
    let size = space.space_size().unwrap_or(u128::MAX);
    let volume = volume_route(code, space, r, opts)?;
    if size > opts.space_cap {
        return match (volume.disjoint, volume.perfect) {
            (Some(disjoint), Some(perfect)) => Ok((disjoint, perfect)),
            _ => Err(Error::Explosion {
                what: "vector space",
                count: size,
                cap: opts.space_cap,
            }),
        };
    }
    let exact = coset_sweep(code, space, r, opts.distribution.threads)?;
    let perfect = exact.disjoint && exact.covering;
    if let Some(d) = volume.disjoint {
        if d != exact.disjoint {
            return Err(Error::Consistency(format!(
                "radius {r}: disjointness {} by sweep, {d} by minimum distance",
                exact.disjoint
            )));
        }
    }
    if let Some(p) = volume.perfect {
        if p != perfect {
            return Err(Error::Consistency(format!(
                "radius {r}: perfect {perfect} by sweep, {p} by volume"
            )));
        }
    }
    Ok((exact.disjoint, perfect))
}

/// Exact disjointness and coverage of the radius-`r` balls by the coset
/// sweep; needs `q^N` within the space cap.
pub fn ball_packing(code: &LinearCode, space: &BlockSpace, r: u32, opts: &CodeOptions) -> Result<BallVerdict> {
    check_code(code, space)?;
    let size = space.space_size().unwrap_or(u128::MAX);
    if size > opts.space_cap {
        return Err(Error::Explosion {
            what: "vector space",
            count: size,
            cap: opts.space_cap,
        });
    }
    coset_sweep(code, space, r, opts.distribution.threads)
}

/// r-error-correcting: radius-`r` balls around codewords are pairwise disjoint.
pub fn is_r_error_correcting(
    code: &LinearCode,
    space: &BlockSpace,
    r: u32,
    opts: &CodeOptions,
) -> Result<bool> {
    let (disjoint, _) = decide(code, space, r, opts)?;
    let m = space.weight_model().max_weight();
    if cfg!(debug_assertions) && disjoint && r.is_multiple_of(m) && code.dimension() > 0 {
        // x - y avoids every B_{I ∪ J} with I, J of cardinality r / M_w
        let t = (r / m) as usize;
        if t <= space.n() {
            let family = space.poset().ideals_with_cap(opts.distribution.ideal_cap)?;
            let level: Vec<Ideal> = family.of_size(t).copied().collect();
            for a in &level {
                for b in &level {
                    if !code.avoids(space, a.members | b.members)? {
                        return Err(Error::Consistency(format!(
                            "{r}-error-correcting code has a codeword inside a union of two ideals of size {t}"
                        )));
                    }
                }
            }
        }
    }
    Ok(disjoint)
}

/// r-perfect: radius-`r` balls around codewords partition the space.
pub fn is_r_perfect(code: &LinearCode, space: &BlockSpace, r: u32, opts: &CodeOptions) -> Result<bool> {
    Ok(decide(code, space, r, opts)?.1)
}

/// Singleton bound summary of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub n: usize,
    #[serde(rename = "N")]
    pub total_len: usize,
    pub k: usize,
    pub d_pwpi: u32,
    pub d_ppi: u32,
    /// `⌊(d_pwpi - m_w) / M_w⌋`.
    pub r_wtilde: u32,
    /// `max_{J ∈ I^{r_wtilde}} Σ_{i∈J} k_i`.
    pub singleton_lhs: usize,
    /// `N - ⌈log_q |C|⌉`.
    pub singleton_rhs: usize,
    /// `max_{J ∈ I^{d_ppi - 1}} Σ_{i∈J} k_i`.
    pub singleton_lhs_ppi: usize,
    pub is_mds_pwpi: bool,
    pub is_mds_ppi: bool,
}

/// `max_{J ∈ I^t} Σ_{i∈J} k_i`.
pub fn max_ideal_span(space: &BlockSpace, t: usize, ideal_cap: usize) -> Result<usize> {
    if t > space.n() {
        return Err(Error::Bounds(format!(
            "no ideal of cardinality {t} in a poset on {} elements",
            space.n()
        )));
    }
    let family = space.poset().ideals_with_cap(ideal_cap)?;
    Ok(family
        .of_size(t)
        .map(|i| space.labels().span(i.members))
        .max()
        .unwrap_or(0))
}

/// `r_wtilde` and the left side of the Singleton bound for distance `d`.
pub fn singleton_lhs(space: &BlockSpace, d: u32, ideal_cap: usize) -> Result<(u32, usize)> {
    let w = space.weight_model();
    if d < w.min_weight() {
        return Err(Error::Bounds(format!("distance {d} below m_w = {}", w.min_weight())));
    }
    let r = (d - w.min_weight()) / w.max_weight();
    Ok((r, max_ideal_span(space, r as usize, ideal_cap)?))
}

/// `⌈log_q size⌉` by integer arithmetic.
pub fn ceil_log(q: u32, size: &BigUint) -> usize {
    let mut e = 0;
    let mut power = BigUint::one();
    while &power < size {
        power *= q;
        e += 1;
    }
    e
}

/// Singleton bound for an arbitrary (possibly non-linear) code given its
/// size and minimum distance: returns `(lhs, rhs)` with `lhs <= rhs`
/// whenever such a code exists.
pub fn singleton_bound(space: &BlockSpace, size: &BigUint, d: u32, ideal_cap: usize) -> Result<(usize, usize)> {
    let (_, lhs) = singleton_lhs(space, d, ideal_cap)?;
    let rhs = space.total_len().saturating_sub(ceil_log(space.q(), size));
    Ok((lhs, rhs))
}

pub fn singleton_report(code: &LinearCode, space: &BlockSpace, ideal_cap: usize) -> Result<CodeReport> {
    let d = min_distance(code, space)?;
    let (r_wtilde, lhs) = singleton_lhs(space, d.pwpi, ideal_cap)?;
    let lhs_ppi = max_ideal_span(space, d.ppi as usize - 1, ideal_cap)?;
    let rhs = space.total_len() - code.dimension();
    Ok(CodeReport {
        n: space.n(),
        total_len: space.total_len(),
        k: code.dimension(),
        d_pwpi: d.pwpi,
        d_ppi: d.ppi,
        r_wtilde,
        singleton_lhs: lhs,
        singleton_rhs: rhs,
        singleton_lhs_ppi: lhs_ppi,
        is_mds_pwpi: lhs == rhs,
        is_mds_ppi: lhs_ppi == rhs,
    })
}

/// MDS status, taking the zero code to have distance `n·M_w + m_w` so that
/// it meets the bound.
pub fn is_mds(code: &LinearCode, space: &BlockSpace, ideal_cap: usize) -> Result<bool> {
    check_code(code, space)?;
    if code.dimension() == 0 {
        return Ok(true);
    }
    Ok(singleton_report(code, space, ideal_cap)?.is_mds_pwpi)
}

/// Outcome of checking the four-way duality equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// The unique ideal of cardinality `n - k/s`, as labels.
    pub ideal: Vec<usize>,
    pub code_mds: bool,
    pub code_i_perfect: bool,
    pub dual_complement_perfect: bool,
    pub dual_mds_in_dual_poset: bool,
}

impl DualityReport {
    /// All four statements agree.
    pub fn holds(&self) -> bool {
        let v = [
            self.code_mds,
            self.code_i_perfect,
            self.dual_complement_perfect,
            self.dual_mds_in_dual_poset,
        ];
        v.iter().all(|&b| b == v[0])
    }
}

/// The ideal `I ∈ I^{n - k/s}` when blocks all have length `s`, `s | k`
/// and that ideal is unique.
pub fn duality_ideal(code: &LinearCode, space: &BlockSpace, ideal_cap: usize) -> Result<Ideal> {
    let s = space
        .labels()
        .uniform_len()
        .ok_or_else(|| Error::Hypothesis("blocks must share one length".into()))? as usize;
    let k = code.dimension();
    if !k.is_multiple_of(s) {
        return Err(Error::Hypothesis(format!("block length {s} does not divide k = {k}")));
    }
    let t = space.n() - k / s;
    let family = space.poset().ideals_with_cap(ideal_cap)?;
    family.unique_of_size(t).ok_or_else(|| {
        Error::Hypothesis(format!(
            "{} ideals of cardinality {t}, need exactly one",
            family.total(t)
        ))
    })
}

/// Checks: C is MDS, C is I-perfect, C⊥ is I^c-perfect in the dual poset,
/// and C⊥ is MDS in the dual poset.
pub fn verify_duality(code: &LinearCode, space: &BlockSpace, ideal_cap: usize) -> Result<DualityReport> {
    check_code(code, space)?;
    let ideal = duality_ideal(code, space, ideal_cap)?;
    let dual = code.dual_code();
    let dual_space = space.with_poset(space.poset().dual())?;
    let complement = dual_space
        .poset()
        .as_ideal(space.poset().ground() & !ideal.members)
        .expect("complement of an ideal is a dual ideal");
    Ok(DualityReport {
        ideal: ideal.labels(),
        code_mds: is_mds(code, space, ideal_cap)?,
        code_i_perfect: is_i_perfect(code, space, &ideal)?,
        dual_complement_perfect: is_i_perfect(&dual, &dual_space, &complement)?,
        dual_mds_in_dual_poset: is_mds(&dual, &dual_space, ideal_cap)?,
    })
}

fn checked_ideal(space: &BlockSpace, set: ElementSet) -> Result<Ideal> {
    if set & !space.poset().ground() != 0 {
        return Err(Error::Bounds("ideal mentions labels outside the poset".into()));
    }
    space
        .poset()
        .as_ideal(set)
        .ok_or_else(|| Error::Precondition("the given set is not an ideal".into()))
}

/// The span of the unit vectors on every coordinate outside the blocks of
/// `ideal`: an I-perfect code of dimension `N - Σ_{i∈I} k_i`.
pub fn construct_i_perfect(space: &BlockSpace, ideal: ElementSet) -> Result<LinearCode> {
    construct_i_perfect_with(space, ideal, || 0)
}

/// As [`construct_i_perfect`], but the generator entries on the coordinates
/// inside the ideal are random, giving a varied family of I-perfect codes.
pub fn construct_random_i_perfect<R: Rng>(space: &BlockSpace, ideal: ElementSet, rng: &mut R) -> Result<LinearCode> {
    let q = space.q();
    construct_i_perfect_with(space, ideal, || rng.gen_range(0..q))
}

fn construct_i_perfect_with(
    space: &BlockSpace,
    ideal: ElementSet,
    mut fill: impl FnMut() -> u32,
) -> Result<LinearCode> {
    let ideal = checked_ideal(space, ideal)?;
    let inside = inside_coordinates(space, ideal.members);
    let rows = outside_coordinates(space, ideal.members)
        .into_iter()
        .map(|c| {
            let mut row = vec![0u32; space.total_len()];
            row[c] = 1;
            for &i in &inside {
                row[i] = fill();
            }
            row
        })
        .collect();
    LinearCode::new(space.q(), space.total_len(), rows)
}

/// Weight distribution of an MDS code on a chain with blocks of length `s`,
/// with the codeword counts of the balls `B(0, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsChainDistribution {
    /// `|A_r(C)|`.
    pub counts: Vec<BigUint>,
    /// `|B(0, r) ∩ C|`.
    pub ball_counts: Vec<BigUint>,
}

pub fn mds_chain_distribution(code: &LinearCode, space: &BlockSpace, ideal_cap: usize) -> Result<MdsChainDistribution> {
    check_code(code, space)?;
    if !space.poset().classify().is_chain {
        return Err(Error::Precondition("poset is not a chain".into()));
    }
    let s = space
        .labels()
        .uniform_len()
        .ok_or_else(|| Error::Precondition("blocks must share one length".into()))?;
    let k = code.dimension() as u64;
    if !k.is_multiple_of(s as u64) {
        return Err(Error::Precondition(format!("block length {s} does not divide k = {k}")));
    }
    if !is_mds(code, space, ideal_cap)? {
        return Err(Error::Precondition("code is not MDS".into()));
    }
    let w = space.weight_model();
    let m = w.max_weight();
    let n = space.n() as u64;
    let floor = n - k / s as u64;
    let q = BigUint::from(space.q());
    let top = space.max_total_weight();
    let class = |l: u32| w.block_class_size(l, s).expect("class within range");
    let scale = |t: u64| -> BigUint {
        // q^{k - s(n - t)}, only used once t >= n - k/s
        Pow::pow(&q, k - s as u64 * (n - t))
    };

    let mut counts = vec![BigUint::zero(); top as usize + 1];
    counts[0] = BigUint::one();
    for r in 1..=top {
        let t = (r.div_ceil(m) - 1) as u64;
        let l = r - t as u32 * m;
        if t >= floor {
            counts[r as usize] = class(l) * scale(t);
        }
    }

    let mut ball_counts = vec![BigUint::zero(); top as usize + 1];
    for r in 0..=top {
        ball_counts[r as usize] = if r as u64 <= m as u64 * floor {
            BigUint::one()
        } else if r % m == 0 {
            scale(r as u64 / m as u64)
        } else {
            let t = (r / m) as u64;
            let within: BigUint = (1..=r % m).map(class).sum();
            (BigUint::one() + within) * scale(t)
        };
    }
    Ok(MdsChainDistribution {
        counts,
        ball_counts,
    })
}

/// `|A_r(C)|` by weighing every codeword.
pub fn codeword_weight_distribution(code: &LinearCode, space: &BlockSpace) -> Result<Vec<BigUint>> {
    check_code(code, space)?;
    let mut counts = vec![0u64; space.max_total_weight() as usize + 1];
    for c in code.codewords()? {
        counts[space.weight_of_entries(c.entries()) as usize] += 1;
    }
    Ok(counts.into_iter().map(BigUint::from).collect())
}
