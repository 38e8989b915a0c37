//! Greedy construction of k-forcing sets.
//!
//! Dispatch on the degree extremes of a connected graph:
//!
//! | condition          | case      | set                         |
//! |--------------------|-----------|-----------------------------|
//! | `Δ <= k`           | `Prop1`   | one vertex                  |
//! | `δ < Δ = k + 1`    | `ThmI`    | one minimum-degree vertex   |
//! | `δ = Δ = k + 1`    | `ThmII`   | an adjacent pair            |
//! | `Δ >= k + 2`       | `ThmIII`  | seed plus stall augmentation|
//!
//! In the last case the seed is a minimum-degree vertex `v` together with
//! `max(0, δ - k)` of its neighbors. Whenever the process stalls, a colored
//! vertex `u` with `c > k` uncolored neighbors is chosen and `c - k` of
//! those neighbors are colored by hand so that `u` can force the rest.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::forcing::{self, ForcingTrace};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GreedyCase {
    #[serde(rename = "PROP1")]
    Prop1,
    #[serde(rename = "THM_I")]
    ThmI,
    #[serde(rename = "THM_II")]
    ThmII,
    #[serde(rename = "THM_III")]
    ThmIII,
}

impl GreedyCase {
    pub fn as_str(self) -> &'static str {
        match self {
            GreedyCase::Prop1 => "PROP1",
            GreedyCase::ThmI => "THM_I",
            GreedyCase::ThmII => "THM_II",
            GreedyCase::ThmIII => "THM_III",
        }
    }
}

impl std::fmt::Display for GreedyCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a stalled vertex is picked for augmentation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Fewest extra colorings needed, ties to the lowest index.
    #[default]
    MinAugmentation,
    /// Largest degree, ties to the lowest index. Experimental.
    MaxDegree,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-augmentation" | "min" => Ok(Strategy::MinAugmentation),
            "max-degree" | "max" => Ok(Strategy::MaxDegree),
            other => Err(Error::InvalidParameters(format!(
                "unknown strategy '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Augmentation {
    pub u: usize,
    /// Neighbors of `u` colored by hand at this stall.
    pub colored_neighbors: Vec<usize>,
    pub a_u: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyResult {
    pub forcing_set: VertexSet,
    pub case_taken: GreedyCase,
    /// The minimum-degree vertex, or both ends of the pair for `ThmII`.
    pub seed_vertex: Vec<usize>,
    /// Initial colored set before any augmentation.
    pub seed_set: VertexSet,
    pub augmentations: Vec<Augmentation>,
    /// Round-synchronous closure of `forcing_set`; certifies it reaches V.
    pub trace: ForcingTrace,
}

impl GreedyResult {
    pub fn size(&self) -> usize {
        self.forcing_set.len()
    }
}

pub fn greedy_k_forcing_set(g: &Graph, k: usize) -> Result<GreedyResult> {
    greedy_with_strategy(g, k, Strategy::default())
}

pub fn greedy_with_strategy(g: &Graph, k: usize, strategy: Strategy) -> Result<GreedyResult> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.n();
    let (delta, big_delta) = (g.min_degree(), g.max_degree());
    let v = (0..n)
        .find(|&x| g.degree(x) == delta)
        .expect("nonempty graph");

    let (case_taken, seed_vertex, seed) = if big_delta <= k {
        (GreedyCase::Prop1, vec![v], vec![v])
    } else if big_delta == k + 1 && delta < big_delta {
        (GreedyCase::ThmI, vec![v], vec![v])
    } else if big_delta == k + 1 {
        // regular, so vertex 0 has minimum degree and at least one neighbor
        let u = 0;
        let w = g.neighbors(u)[0];
        (GreedyCase::ThmII, vec![u, w], vec![u, w])
    } else {
        let mut seed = vec![v];
        seed.extend(g.neighbors(v).iter().take(delta.saturating_sub(k)));
        (GreedyCase::ThmIII, vec![v], seed)
    };

    let seed_set = VertexSet::from_indices(n, seed);
    let mut forcing_set = seed_set.clone();
    let mut augmentations = Vec::new();

    if case_taken == GreedyCase::ThmIII {
        let mut colored = forcing::closure_set(g, &seed_set, k);
        // v has at most k uncolored neighbors in the seed, so it never stalls
        debug_assert!(g.neighbors(v).iter().all(|&w| colored.contains(w)));
        while !colored.is_full() {
            let stalled = forcing::stalled_frontier(g, &colored, k)?;
            let (u, uncolored) = pick_stalled(g, &stalled, strategy)
                .expect("connected graph with a stall has a frontier vertex");
            assert_ne!(u, v, "seed vertex stalled");
            assert!(
                g.neighbors(u).iter().any(|&w| colored.contains(w)),
                "stalled vertex {u} has no colored neighbor"
            );
            let a_u = uncolored - k;
            assert!(a_u < g.degree(u) - k, "augmentation cap violated at {u}");
            let chosen: Vec<usize> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !colored.contains(w))
                .take(a_u)
                .collect();
            for &w in &chosen {
                colored.insert(w);
                forcing_set.insert(w);
            }
            forcing::close_in_place(g, &mut colored, k);
            augmentations.push(Augmentation {
                u,
                colored_neighbors: chosen,
                a_u,
            });
        }
    }

    let trace = forcing::closure(g, &forcing_set, k)?;
    assert!(trace.is_complete(), "greedy set does not force V");
    Ok(GreedyResult {
        forcing_set,
        case_taken,
        seed_vertex,
        seed_set,
        augmentations,
        trace,
    })
}

fn pick_stalled(
    g: &Graph,
    stalled: &[(usize, usize)],
    strategy: Strategy,
) -> Option<(usize, usize)> {
    // `stalled` is in ascending vertex order, so min_by_key keeps the lowest index on ties.
    match strategy {
        Strategy::MinAugmentation => stalled.iter().copied().min_by_key(|&(_, c)| c),
        Strategy::MaxDegree => stalled
            .iter()
            .copied()
            .min_by_key(|&(u, _)| std::cmp::Reverse(g.degree(u))),
    }
}

/// Runs the greedy construction on every connected component and maps the
/// results back to the original vertex labels.
pub fn greedy_per_component(g: &Graph, k: usize) -> Result<Vec<GreedyResult>> {
    greedy_per_component_with(g, k, Strategy::default())
}

pub fn greedy_per_component_with(
    g: &Graph,
    k: usize,
    strategy: Strategy,
) -> Result<Vec<GreedyResult>> {
    let components = g.components();
    if components.len() == 1 {
        return Ok(vec![greedy_with_strategy(g, k, strategy)?]);
    }
    let n = g.n();
    components
        .iter()
        .map(|comp| {
            let sub = g.induced_subgraph(comp)?;
            let r = greedy_with_strategy(&sub, k, strategy)?;
            let lift = |s: &VertexSet| VertexSet::from_indices(n, s.iter().map(|i| comp[i]));
            let forcing_set = lift(&r.forcing_set);
            Ok(GreedyResult {
                trace: forcing::closure(g, &forcing_set, k)?,
                forcing_set,
                case_taken: r.case_taken,
                seed_vertex: r.seed_vertex.iter().map(|&i| comp[i]).collect(),
                seed_set: lift(&r.seed_set),
                augmentations: r
                    .augmentations
                    .into_iter()
                    .map(|a| Augmentation {
                        u: comp[a.u],
                        colored_neighbors: a.colored_neighbors.iter().map(|&i| comp[i]).collect(),
                        a_u: a.a_u,
                    })
                    .collect(),
            })
        })
        .collect()
}
