//! Exhaustive ground truth over all of `Z_q^N`.
//!
//! Nothing here uses the closed forms; weights come from the block-space
//! weight function alone.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU32, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::LinearCode;
use crate::distribution::{in_pool, DistributionTable, Method, PosetClass};
use crate::error::{Error, Result};
use crate::poset::{ElementSet, Ideal};
use crate::space::{block_weight, pi_support, BlockSpace, BlockVector};

/// Default cap on `q^N`.
pub const DEFAULT_SPACE_CAP: u128 = 10_000_000;

/// Environment variable overriding [`DEFAULT_SPACE_CAP`].
pub const SPACE_CAP_ENV: &str = "POSETBLOCK_CAP_SPACE";

/// Cap on `q^N`, honouring `POSETBLOCK_CAP_SPACE` when it parses.
pub fn default_space_cap() -> u128 {
    std::env::var(SPACE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SPACE_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub space_cap: u128,
    pub threads: Option<usize>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            space_cap: default_space_cap(),
            threads: None,
        }
    }
}

/// Identifies the instance an oracle run belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub q: u32,
    pub poset_hash: u64,
    pub block_lengths: Vec<u32>,
    pub weight_hash: u64,
}

impl Fingerprint {
    pub fn of(space: &BlockSpace) -> Self {
        let hash = |v: &dyn Fn(&mut DefaultHasher)| {
            let mut h = DefaultHasher::new();
            v(&mut h);
            h.finish()
        };
        Fingerprint {
            q: space.q(),
            poset_hash: hash(&|h| space.poset().hash(h)),
            block_lengths: space.labels().lens().to_vec(),
            weight_hash: hash(&|h| space.weight_model().hash(h)),
        }
    }
}

/// Histogram of weights over the whole space.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// `histogram[r]` vectors of weight `r`, for `r = 0 ..= n·M_w`.
    pub histogram: Vec<u64>,
    pub total: u64,
    pub elapsed: Duration,
    pub fingerprint: Fingerprint,
}

impl OracleResult {
    pub fn to_table(&self, space: &BlockSpace) -> DistributionTable {
        DistributionTable {
            q: space.q(),
            total_len: space.total_len(),
            method: Method::Oracle,
            poset_class: Some(PosetClass::of(&space.poset().classify())),
            counts: self.histogram.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }
}

fn checked_space_size(space: &BlockSpace, cap: u128) -> Result<u64> {
    let size = space.space_size().unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::Explosion {
            what: "vector space",
            count: size,
            cap,
        });
    }
    Ok(size as u64)
}

fn chunks(total: u64) -> Vec<(u64, u64)> {
    let pieces = (total / 4096).clamp(1, 1024);
    let step = total.div_ceil(pieces);
    (0..pieces)
        .map(|p| (p * step, ((p + 1) * step).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Odometer over `[start, end)` with coordinate 0 as the fastest digit.
/// Block weights are refreshed only for the blocks whose digits changed.
struct Odometer<'a> {
    space: &'a BlockSpace,
    block_of: Vec<usize>,
    digits: Vec<u32>,
    block_weights: Vec<u32>,
}

impl<'a> Odometer<'a> {
    fn at(space: &'a BlockSpace, mut index: u64) -> Self {
        let q = space.q() as u64;
        let digits: Vec<u32> = (0..space.total_len())
            .map(|_| {
                let d = (index % q) as u32;
                index /= q;
                d
            })
            .collect();
        let labels = space.labels();
        let block_weights = (0..labels.len())
            .map(|i| block_weight(space.weight_model(), &digits[labels.range(i)]))
            .collect();
        Odometer {
            space,
            block_of: labels.block_of_coordinate(),
            digits,
            block_weights,
        }
    }

    fn weight(&self) -> u32 {
        self.space.weight_from_block_weights(&self.block_weights)
    }

    fn advance(&mut self) {
        let q = self.space.q();
        let mut last_block = usize::MAX;
        for c in 0..self.digits.len() {
            let b = self.block_of[c];
            if b != last_block {
                if last_block != usize::MAX {
                    self.refresh(last_block);
                }
                last_block = b;
            }
            self.digits[c] += 1;
            if self.digits[c] < q {
                break;
            }
            self.digits[c] = 0;
        }
        if last_block != usize::MAX {
            self.refresh(last_block);
        }
    }

    fn refresh(&mut self, block: usize) {
        let range = self.space.labels().range(block);
        self.block_weights[block] = block_weight(self.space.weight_model(), &self.digits[range]);
    }
}

/// Exact weight histogram by evaluating the weight of every vector.
pub fn oracle_distribution(space: &BlockSpace, opts: &OracleOptions) -> Result<OracleResult> {
    let started = Instant::now();
    let total = checked_space_size(space, opts.space_cap)?;
    let len = space.max_total_weight() as usize + 1;
    let histogram = in_pool(opts.threads, || {
        chunks(total)
            .into_par_iter()
            .map(|(start, end)| {
                let mut hist = vec![0u64; len];
                let mut odo = Odometer::at(space, start);
                for _ in start..end {
                    hist[odo.weight() as usize] += 1;
                    odo.advance();
                }
                hist
            })
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    })?;
    Ok(OracleResult {
        histogram,
        total,
        elapsed: started.elapsed(),
        fingerprint: Fingerprint::of(space),
    })
}

/// Which balls to place around the codewords.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallMode {
    /// `B_I(c) = { x : supp_π(c - x) ⊆ I }`.
    Ideal(Ideal),
    /// `B(c, r) = { x : d(c, x) <= r }`.
    Radius(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerfectnessVerdict {
    pub disjoint: bool,
    pub covering: bool,
}

impl PerfectnessVerdict {
    pub fn perfect(&self) -> bool {
        self.disjoint && self.covering
    }
}

fn index_of(digits: &[u32], q: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * q + d as u64)
}

/// Marks every ball around every codeword and reads off disjointness and
/// coverage by counting how often each vector was hit.
pub fn oracle_perfectness(
    code: &LinearCode,
    mode: BallMode,
    space: &BlockSpace,
    opts: &OracleOptions,
) -> Result<PerfectnessVerdict> {
    if code.len() != space.total_len() || code.q() != space.q() {
        return Err(Error::Dimension(format!(
            "code of length {} over Z_{} in a space of length {} over Z_{}",
            code.len(),
            code.q(),
            space.total_len(),
            space.q()
        )));
    }
    let total = checked_space_size(space, opts.space_cap)?;
    let q = space.q();
    let labels = space.labels();
    let in_ball = |digits: &[u32]| match mode {
        BallMode::Ideal(ideal) => {
            let supp: ElementSet = pi_support(labels, digits);
            supp & !ideal.members == 0
        }
        BallMode::Radius(r) => space.weight_of_entries(digits) <= r,
    };

    // offsets v with the ball around c equal to { c - v }
    let ball: Vec<u64> = in_pool(opts.threads, || {
        chunks(total)
            .into_par_iter()
            .flat_map_iter(|(start, end)| {
                let mut odo = Odometer::at(space, start);
                let mut found = Vec::new();
                for idx in start..end {
                    if in_ball(&odo.digits) {
                        found.push(idx);
                    }
                    odo.advance();
                }
                found
            })
            .collect()
    })?;

    let words = code.codewords()?;
    let work = ball.len() as u128 * words.len() as u128;
    let work_cap = opts.space_cap.saturating_mul(64);
    if work > work_cap {
        return Err(Error::Explosion {
            what: "ball marking step",
            count: work,
            cap: work_cap,
        });
    }

    let hits: Vec<AtomicU32> = (0..total).map(|_| AtomicU32::new(0)).collect();
    let n_len = space.total_len();
    in_pool(opts.threads, || {
        words.par_iter().for_each(|c| {
            let mut v = vec![0u32; n_len];
            let mut x = vec![0u32; n_len];
            for &idx in &ball {
                let mut t = idx;
                for d in v.iter_mut() {
                    *d = (t % q as u64) as u32;
                    t /= q as u64;
                }
                for ((xi, &ci), &vi) in x.iter_mut().zip(c.entries()).zip(&v) {
                    *xi = (ci + q - vi) % q;
                }
                hits[index_of(&x, q as u64) as usize].fetch_add(1, Ordering::Relaxed);
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
    Ok(PerfectnessVerdict { disjoint, covering })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomKind {
    /// `d(x, y) = 0` does not coincide with `x = y`.
    Identity,
    Symmetry,
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub kind: AxiomKind,
    pub x: BlockVector,
    pub y: BlockVector,
    pub z: BlockVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetricReport {
    pub samples: u64,
    pub violation_count: u64,
    /// The first few witnesses.
    pub violations: Vec<AxiomViolation>,
}

impl MetricReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }
}

const KEPT_WITNESSES: usize = 16;

fn random_vector(rng: &mut ChaCha8Rng, space: &BlockSpace) -> Vec<u32> {
    (0..space.total_len()).map(|_| rng.gen_range(0..space.q())).collect()
}

/// Adds random symbols on a random handful of blocks, so nearby triples
/// show up as often as far ones.
fn perturb(rng: &mut ChaCha8Rng, space: &BlockSpace, base: &[u32]) -> Vec<u32> {
    let mut out = base.to_vec();
    let q = space.q();
    let touched = rng.gen_range(0..=space.n().min(2));
    for _ in 0..touched {
        let b = rng.gen_range(0..space.n());
        for c in space.labels().range(b) {
            if rng.gen_bool(0.5) {
                out[c] = (out[c] + rng.gen_range(0..q)) % q;
            }
        }
    }
    out
}

/// Samples `samples` seeded triples and checks the metric axioms on each.
pub fn oracle_metric_axioms(space: &BlockSpace, samples: u64, seed: u64) -> MetricReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MetricReport {
        samples,
        ..Default::default()
    };
    let q = space.q();
    let dist = |a: &[u32], b: &[u32]| {
        let diff: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| (x + q - y) % q).collect();
        space.weight_of_entries(&diff)
    };
    for s in 0..samples {
        let x = random_vector(&mut rng, space);
        let (y, z) = if s % 2 == 0 {
            (random_vector(&mut rng, space), random_vector(&mut rng, space))
        } else {
            let y = perturb(&mut rng, space, &x);
            let z = perturb(&mut rng, space, &y);
            (y, z)
        };
        let dxy = dist(&x, &y);
        let mut found = Vec::new();
        if dist(&x, &x) != 0 || (dxy == 0) != (x == y) {
            found.push(AxiomKind::Identity);
        }
        if dxy != dist(&y, &x) {
            found.push(AxiomKind::Symmetry);
        }
        if dist(&x, &z) > dxy + dist(&y, &z) {
            found.push(AxiomKind::Triangle);
        }
        for kind in found {
            report.violation_count += 1;
            if report.violations.len() < KEPT_WITNESSES {
                report.violations.push(AxiomViolation {
                    kind,
                    x: BlockVector::new(x.clone()),
                    y: BlockVector::new(y.clone()),
                    z: BlockVector::new(z.clone()),
                });
            }
        }
    }
    report
}
