//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`. Draws are turned into values with two fixed rules so a
//! corpus can be regenerated bit-for-bit from the seed alone:
//!
//! * `unit()`: `(next_u64() >> 11) * 2^-53`, uniform in `[0, 1)`;
//! * `below(k)`: `(next_u64() * k) >> 64` in 128-bit arithmetic.
//!
//! Weights are `10 * unit()`.

use std::collections::BTreeSet;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{IntersectionGraph, SubProblem};
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("no instance with max degree <= {max_degree} after {attempts} attempts")]
    RejectionExhausted { max_degree: usize, attempts: u64 },
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParams(msg.into())
}

struct Draw(ChaCha8Rng);

impl Draw {
    fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn below(&mut self, k: usize) -> usize {
        ((self.0.next_u64() as u128 * k as u128) >> 64) as usize
    }

    fn weight(&mut self) -> f64 {
        10.0 * self.unit()
    }

    fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

/// Parameters for [`gen_random`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub max_size: usize,
    /// Probability that an element slot reuses an already-used element.
    pub overlap: f64,
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        if self.m == 0 {
            return Err(invalid("m must be at least 1"));
        }
        if self.max_size == 0 || self.max_size > self.n {
            return Err(invalid(format!("max_size must be in [1, {}]", self.n)));
        }
        if !(0.0..=1.0).contains(&self.overlap) {
            return Err(invalid("overlap must be in [0, 1]"));
        }
        Ok(())
    }
}

/// Random instance. Each subset draws a size in `1..=max_size`; each slot
/// reuses a previously used element with probability `overlap` and takes a
/// fresh one otherwise (any element once fresh ones run out). Repeated
/// picks within a subset are dropped.
pub fn gen_random(cfg: &GenConfig) -> Result<Instance, GenError> {
    cfg.validate()?;
    let mut rng = Draw::new(cfg.seed);
    let mut fresh: Vec<usize> = (0..cfg.n).collect();
    let mut used: Vec<usize> = Vec::new();
    let mut subsets = Vec::with_capacity(cfg.m);
    let mut weights = Vec::with_capacity(cfg.m);
    for _ in 0..cfg.m {
        let size = 1 + rng.below(cfg.max_size);
        let mut set = BTreeSet::new();
        for _ in 0..size {
            let reuse = rng.unit() < cfg.overlap;
            let e = if reuse && !used.is_empty() {
                used[rng.below(used.len())]
            } else if !fresh.is_empty() {
                let e = fresh.swap_remove(rng.below(fresh.len()));
                used.push(e);
                e
            } else {
                rng.below(cfg.n)
            };
            set.insert(e);
        }
        subsets.push(set.into_iter().collect());
        weights.push(rng.weight());
    }
    Ok(Instance::new(cfg.n, subsets, weights).expect("generated subsets are valid"))
}

/// Rejection-samples [`gen_random`] over seeds `cfg.seed, cfg.seed + 1, ...`
/// until the intersection graph has max degree at most `max_degree`.
pub fn gen_bounded_degree(cfg: &GenConfig, max_degree: usize, attempts: u64) -> Result<Instance, GenError> {
    cfg.validate()?;
    for attempt in 0..attempts {
        let inst = gen_random(&GenConfig {
            seed: cfg.seed.wrapping_add(attempt),
            ..*cfg
        })?;
        let g = IntersectionGraph::build(&inst);
        let (_, d) = g.max_degree_node(&SubProblem::full(inst.m())).expect("m >= 1");
        if d <= max_degree {
            return Ok(inst);
        }
    }
    Err(GenError::RejectionExhausted { max_degree, attempts })
}

/// Path-shaped instance: `S_i = {2i, 2i+1, 2i+2}` with the last subset
/// `{2m-2, 2m-1}`, so consecutive subsets share exactly one element.
pub fn gen_path(m: usize, seed: u64) -> Result<Instance, GenError> {
    if m == 0 {
        return Err(invalid("path needs m >= 1"));
    }
    let mut rng = Draw::new(seed);
    let subsets = (0..m)
        .map(|i| {
            if i + 1 < m {
                vec![2 * i, 2 * i + 1, 2 * i + 2]
            } else {
                vec![2 * i, 2 * i + 1]
            }
        })
        .collect();
    let weights = (0..m).map(|_| rng.weight()).collect();
    Ok(Instance::new(2 * m, subsets, weights).expect("path subsets are valid"))
}

/// Ring-shaped instance: `S_i = {2i, 2i+1, (2i+2) mod 2m}`.
pub fn gen_ring(m: usize, seed: u64) -> Result<Instance, GenError> {
    if m < 3 {
        return Err(invalid("ring needs m >= 3"));
    }
    let mut rng = Draw::new(seed);
    let subsets = (0..m)
        .map(|i| {
            let mut s = vec![2 * i, 2 * i + 1, (2 * i + 2) % (2 * m)];
            s.sort_unstable();
            s
        })
        .collect();
    let weights = (0..m).map(|_| rng.weight()).collect();
    Ok(Instance::new(2 * m, subsets, weights).expect("ring subsets are valid"))
}

/// Instance with a planted partition of `0..n` into `k` near-equal blocks,
/// plus `noise` extra subsets, each a proper nonempty subset of one block.
/// Subset order is shuffled; the planted indices are returned ascending.
pub fn gen_planted(n: usize, k: usize, noise: usize, seed: u64) -> Result<(Instance, Vec<usize>), GenError> {
    if k == 0 || k > n {
        return Err(invalid(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if noise > 0 && n == k {
        return Err(invalid("noise needs a planted block with at least 2 elements"));
    }
    let mut rng = Draw::new(seed);
    let mut elements: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut elements);
    let mut blocks = Vec::with_capacity(k);
    let mut rest = elements.as_slice();
    for i in 0..k {
        let size = n / k + usize::from(i < n % k);
        let (head, tail) = rest.split_at(size);
        let mut block = head.to_vec();
        block.sort_unstable();
        blocks.push(block);
        rest = tail;
    }
    let splittable: Vec<usize> = (0..k).filter(|&b| blocks[b].len() >= 2).collect();

    // (is_planted, elements)
    let mut items: Vec<(bool, Vec<usize>)> = blocks.iter().map(|b| (true, b.clone())).collect();
    for _ in 0..noise {
        let mut block = blocks[splittable[rng.below(splittable.len())]].clone();
        let size = 1 + rng.below(block.len() - 1);
        rng.shuffle(&mut block);
        let mut subset = block[..size].to_vec();
        subset.sort_unstable();
        items.push((false, subset));
    }
    rng.shuffle(&mut items);

    let planted = items
        .iter()
        .enumerate()
        .filter(|(_, (p, _))| *p)
        .map(|(i, _)| i)
        .collect();
    let weights = items.iter().map(|_| rng.weight()).collect();
    let subsets = items.into_iter().map(|(_, s)| s).collect();
    let inst = Instance::new(n, subsets, weights).expect("planted subsets are valid");
    Ok((inst, planted))
}
