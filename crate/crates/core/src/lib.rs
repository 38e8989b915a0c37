//! k-forcing on simple graphs: the color-change process, a greedy
//! k-forcing set construction with a guaranteed size bound, an exhaustive
//! exact solver, closed-form bounds and a corpus verification harness.

pub mod bitset;
pub mod bounds;
pub mod error;
pub mod exact;
pub mod forcing;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod greedy;
pub mod harness;
pub mod io;
pub mod rng;

pub use bitset::VertexSet;
pub use bounds::{all_bounds, BoundName, BoundValue, BoundsReport, Rational};
pub use error::{Error, Result};
pub use exact::{exact_all_minimum_sets, exact_f_k, ExactResult};
pub use forcing::{closure, is_k_forcing_set, stalled_frontier, ColorState, ForcingTrace};
pub use generators::{is_bipartite, FamilySpec};
pub use graph::{DegreeSummary, Graph};
pub use graph6::{parse_graph6, serialize_graph6};
pub use greedy::{greedy_k_forcing_set, greedy_per_component, GreedyCase, GreedyResult, Strategy};

/// Environment variable holding the worker count for parallel searches.
pub const WORKERS_ENV: &str = "KFORCE_WORKERS";

/// Worker count from [`WORKERS_ENV`], defaulting to the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}
