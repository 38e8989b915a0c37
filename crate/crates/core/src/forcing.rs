//! The k-forcing color-change process.
//!
//! A colored vertex with at most `k` uncolored neighbors colors all of
//! them. [`closure`] applies the rule round-synchronously: in each round
//! every colored vertex with between 1 and `k` uncolored neighbors fires,
//! and everything it forces joins the colored set at the end of the round.
//! The fixed point does not depend on the firing order since the rule is
//! monotone; only the trace presentation does.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub type ColorState = VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcingEvent {
    pub round: usize,
    pub forcer: usize,
    pub forced: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcingTrace {
    pub initial: ColorState,
    pub events: Vec<ForcingEvent>,
    #[serde(rename = "final")]
    pub final_state: ColorState,
    pub rounds: usize,
}

impl ForcingTrace {
    pub fn is_complete(&self) -> bool {
        self.final_state.is_full()
    }

    /// Line-oriented form, one event per line: `round forcer -> forced...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            write!(out, "{} {} ->", e.round, e.forcer).unwrap();
            for w in &e.forced {
                write!(out, " {w}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ForcingTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidK)
    } else {
        Ok(())
    }
}

pub fn state_from(g: &Graph, vertices: &[usize]) -> Result<ColorState> {
    let mut s = VertexSet::new(g.n());
    for &v in vertices {
        g.check_vertex(v)?;
        s.insert(v);
    }
    Ok(s)
}

/// Round-synchronous closure of `initial`, recording every firing.
pub fn closure(g: &Graph, initial: &ColorState, k: usize) -> Result<ForcingTrace> {
    check_k(k)?;
    let initial = normalize(g, initial)?;
    let mut colored = initial.clone();
    let mut events = Vec::new();
    let mut round = 0;
    // Only vertices colored in the previous round, or neighbors of those,
    // can change their uncolored-neighbor count; everything else that
    // could fire already has.
    let mut candidates: Vec<usize> = colored.to_vec();
    let mut touched = VertexSet::new(g.n());
    loop {
        let mut newly = VertexSet::new(g.n());
        let mut fired = Vec::new();
        for &u in &candidates {
            let nbrs = g.neighbor_set(u);
            let uncolored = nbrs.count_difference(&colored);
            if (1..=k).contains(&uncolored) {
                let forced: Vec<usize> = g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&w| !colored.contains(w))
                    .collect();
                nbrs.union_difference_into(&colored, &mut newly);
                fired.push((u, forced));
            }
        }
        if fired.is_empty() {
            break;
        }
        round += 1;
        events.extend(fired.into_iter().map(|(forcer, forced)| ForcingEvent {
            round,
            forcer,
            forced,
        }));
        colored.union_with(&newly);

        touched.clear();
        for w in &newly {
            touched.insert(w);
            for &x in g.neighbors(w) {
                if colored.contains(x) {
                    touched.insert(x);
                }
            }
        }
        candidates = touched.to_vec();
    }
    Ok(ForcingTrace {
        initial,
        events,
        final_state: colored,
        rounds: round,
    })
}

/// Fixed point of the rule without a trace. `initial` must be sized for `g`.
pub fn closure_set(g: &Graph, initial: &ColorState, k: usize) -> ColorState {
    let mut colored = initial.clone();
    close_in_place(g, &mut colored, k);
    colored
}

/// Worklist closure that updates `colored` in place. Firing order is
/// arbitrary; the resulting set equals the round-synchronous fixed point.
pub(crate) fn close_in_place(g: &Graph, colored: &mut VertexSet, k: usize) {
    let mut stack: Vec<usize> = colored.to_vec();
    while let Some(u) = stack.pop() {
        let nbrs = g.neighbor_set(u);
        let uncolored = nbrs.count_difference(colored);
        if uncolored == 0 || uncolored > k {
            continue;
        }
        for &w in g.neighbors(u) {
            if colored.insert(w) {
                stack.push(w);
                // w's colored neighbors each lost one uncolored neighbor
                for &x in g.neighbors(w) {
                    if x != u && colored.contains(x) {
                        stack.push(x);
                    }
                }
            }
        }
    }
}

pub fn is_k_forcing_set(g: &Graph, s: &ColorState, k: usize) -> Result<bool> {
    check_k(k)?;
    let s = normalize(g, s)?;
    Ok(closure_set(g, &s, k).is_full())
}

/// Colored vertices that still touch the uncolored region, with their
/// uncolored-neighbor counts. At a fixed point each count exceeds `k`.
pub fn stalled_frontier(g: &Graph, state: &ColorState, k: usize) -> Result<Vec<(usize, usize)>> {
    check_k(k)?;
    let state = normalize(g, state)?;
    let mut out = Vec::new();
    for u in &state {
        let uncolored = g.neighbor_set(u).count_difference(&state);
        if uncolored == 0 {
            continue;
        }
        if uncolored <= k {
            return Err(Error::NotAFixedPoint(u));
        }
        out.push((u, uncolored));
    }
    Ok(out)
}

/// Re-homes `s` onto a set sized for `g`, rejecting out-of-range members.
fn normalize(g: &Graph, s: &ColorState) -> Result<ColorState> {
    if s.capacity() == g.n() {
        return Ok(s.clone());
    }
    let members = s.to_vec();
    state_from(g, &members)
}
