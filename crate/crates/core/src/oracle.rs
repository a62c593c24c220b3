//! Exhaustive reference solvers. Deliberately naive: every selection is
//! enumerated and overlap is tested by direct set intersection.

use thiserror::Error;

use crate::instance::{better, evaluate, Instance, Solution};
use crate::reduction::PackingInstance;

/// Largest `m` accepted by [`brute_force`].
pub const MAX_ORACLE_SUBSETS: usize = 25;
/// Largest triple count accepted by [`brute_force_packing`].
pub const MAX_ORACLE_TRIPLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{size} exceeds the brute-force limit of {limit}")]
pub struct OracleError {
    pub size: usize,
    pub limit: usize,
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Bit `j` of `conflicts[i]` is set when sets `i` and `j` intersect.
fn conflict_masks<T: AsRef<[usize]>>(sets: &[T]) -> Vec<u32> {
    let mut conflicts = vec![0u32; sets.len()];
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sorted_intersect(sets[i].as_ref(), sets[j].as_ref()) {
                conflicts[i] |= 1 << j;
                conflicts[j] |= 1 << i;
            }
        }
    }
    conflicts
}

fn pairwise_disjoint(conflicts: &[u32], mask: u32) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        if conflicts[i] & mask != 0 {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

/// Best selection over all `2^m` masks in ascending order; the first
/// selection found wins a full tie.
pub fn brute_force(inst: &Instance) -> Result<Solution, OracleError> {
    let m = inst.m();
    if m > MAX_ORACLE_SUBSETS {
        return Err(OracleError {
            size: m,
            limit: MAX_ORACLE_SUBSETS,
        });
    }
    let conflicts = conflict_masks(inst.subsets());
    let mut best = Solution::empty();
    for mask in 1u32..(1u32 << m) {
        if !pairwise_disjoint(&conflicts, mask) {
            continue;
        }
        let mut candidate = Solution {
            chosen: Vec::new(),
            covered: 0,
            weight: 0.0,
        };
        for i in (0..m).filter(|&i| mask & (1 << i) != 0) {
            candidate.chosen.push(i);
            candidate.covered += inst.subset(i).len();
            candidate.weight += inst.weight(i);
        }
        if better(&candidate, &best, 0.0) {
            best = candidate;
        }
    }
    Ok(evaluate(inst, &best.chosen).expect("oracle selections are disjoint"))
}

/// Maximum number of pairwise-disjoint triples.
pub fn brute_force_packing(p: &PackingInstance) -> Result<usize, OracleError> {
    let k = p.len();
    if k > MAX_ORACLE_TRIPLES {
        return Err(OracleError {
            size: k,
            limit: MAX_ORACLE_TRIPLES,
        });
    }
    // intern labels so triples become sorted integer sets
    let mut labels: Vec<&str> = p.triples().iter().flatten().map(String::as_str).collect();
    labels.sort_unstable();
    labels.dedup();
    let sets: Vec<Vec<usize>> = p
        .triples()
        .iter()
        .map(|t| {
            let mut s: Vec<usize> = t
                .iter()
                .map(|l| labels.binary_search(&l.as_str()).expect("interned"))
                .collect();
            s.sort_unstable();
            s
        })
        .collect();
    let conflicts = conflict_masks(&sets);
    Ok((0u32..(1u32 << k))
        .filter(|&mask| pairwise_disjoint(&conflicts, mask))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0))
}
