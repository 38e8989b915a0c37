//! Exact k-forcing numbers by exhaustive subset search.
//!
//! Sizes are tried in increasing order and subsets of each size in
//! lexicographic order, so the first success is the lexicographically
//! first minimum k-forcing set. Within a size the search space is split
//! into contiguous chunks by smallest element and the chunks run in
//! parallel; the earliest chunk with a success wins regardless of which
//! finishes first.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::forcing::close_in_place;
use crate::graph::Graph;

/// Default cap on closure evaluations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct ExactResult {
    pub f_k: usize,
    pub witness: VertexSet,
    /// Subsets tested in lexicographic order up to and including the
    /// witness. Independent of the worker count.
    pub subsets_tested: u64,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
    pub certification: &'static str,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

/// `C(n, r)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances `combo` (strictly increasing, values `< n`) to the next
/// combination in lexicographic order; false when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let r = combo.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if combo[i] < n - r + i {
            combo[i] += 1;
            for j in i + 1..r {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct SizeScan {
    /// Rank within this size of the first success, and the subset.
    hit: Option<(u64, Vec<usize>)>,
}

/// Scans size-`s` subsets with global rank `< limit`, returning the first
/// k-forcing one in lexicographic order.
fn scan_size(g: &Graph, k: usize, s: usize, limit: u64) -> SizeScan {
    let n = g.n();
    let mut offsets = Vec::with_capacity(n);
    let mut acc = 0u64;
    for first in 0..n {
        offsets.push(acc);
        acc = acc.saturating_add(binomial(n - 1 - first, s - 1));
    }
    let hit = (0..n)
        .into_par_iter()
        .filter(|&first| offsets[first] < limit && n - first >= s)
        .map(|first| scan_chunk(g, k, s, first, offsets[first], limit))
        .find_map_first(|x| x);
    SizeScan { hit }
}

fn scan_chunk(
    g: &Graph,
    k: usize,
    s: usize,
    first: usize,
    offset: u64,
    limit: u64,
) -> Option<(u64, Vec<usize>)> {
    let n = g.n();
    let mut combo: Vec<usize> = (first..first + s).collect();
    let mut colored = VertexSet::new(n);
    let mut rank = offset;
    loop {
        if rank >= limit {
            return None;
        }
        colored.clear();
        for &v in &combo {
            colored.insert(v);
        }
        close_in_place(g, &mut colored, k);
        if colored.is_full() {
            return Some((rank, combo));
        }
        rank += 1;
        // the first element stays fixed within a chunk
        if !next_combination(&mut combo[1..], n) {
            return None;
        }
    }
}

/// Minimum k-forcing number with the lexicographically first witness.
pub fn exact_f_k(g: &Graph, k: usize, budget: Option<u64>) -> Result<ExactResult> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let start = Instant::now();
    let n = g.n();
    let mut tested = 0u64;
    for s in 1..=n {
        let total = binomial(n, s);
        let limit = total.min(budget - tested);
        if let Some((rank, combo)) = scan_size(g, k, s, limit).hit {
            return Ok(ExactResult {
                f_k: s,
                witness: VertexSet::from_indices(n, combo),
                subsets_tested: tested + rank + 1,
                elapsed: start.elapsed(),
                certification: "exhaustive",
            });
        }
        tested += limit;
        if limit < total {
            return Err(Error::BudgetExceeded {
                proven_none_up_to: s - 1,
                tested,
            });
        }
    }
    unreachable!("V is always k-forcing")
}

/// Every minimum k-forcing set, in lexicographic order.
pub fn exact_all_minimum_sets(g: &Graph, k: usize, budget: Option<u64>) -> Result<Vec<VertexSet>> {
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let first = exact_f_k(g, k, Some(budget))?;
    let s = first.f_k;
    let n = g.n();
    let total = binomial(n, s);
    let spent = first.subsets_tested;
    if spent.saturating_add(total) > budget {
        return Err(Error::BudgetExceeded {
            proven_none_up_to: s - 1,
            tested: spent,
        });
    }
    let sets: Vec<Vec<VertexSet>> = (0..n)
        .into_par_iter()
        .filter(|&f| n - f >= s)
        .map(|f| {
            let mut out = Vec::new();
            let mut combo: Vec<usize> = (f..f + s).collect();
            let mut colored = VertexSet::new(n);
            loop {
                colored.clear();
                combo.iter().for_each(|&v| {
                    colored.insert(v);
                });
                close_in_place(g, &mut colored, k);
                if colored.is_full() {
                    out.push(VertexSet::from_indices(n, combo.iter().copied()));
                }
                if !next_combination(&mut combo[1..], n) {
                    break;
                }
            }
            out
        })
        .collect();
    Ok(sets.into_iter().flatten().collect())
}
