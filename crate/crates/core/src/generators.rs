//! Deterministic graph families.
//!
//! Random families draw from [`SplitMix64`] seeded with the spec's seed,
//! so a `FamilySpec` names exactly one graph.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;

/// Attempts allowed for rejection-sampled families.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    /// `C_n(S)`: `i ~ j` iff `|i - j| mod n` (or its complement) is in `S`.
    Circulant {
        n: usize,
        connections: Vec<usize>,
    },
    Hypercube {
        dim: usize,
    },
    Petersen,
    RandomRegular {
        n: usize,
        d: usize,
        seed: u64,
    },
    GnpConnected {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl FamilySpec {
    pub fn family(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteBipartite { .. } => "complete_bipartite",
            FamilySpec::Circulant { .. } => "circulant",
            FamilySpec::Hypercube { .. } => "hypercube",
            FamilySpec::Petersen => "petersen",
            FamilySpec::RandomRegular { .. } => "random_regular",
            FamilySpec::GnpConnected { .. } => "gnp_connected",
        }
    }

    /// Compact identifier without spaces or commas, e.g.
    /// `circulant:10:1+5` or `random_regular:12:3:s7`.
    pub fn id(&self) -> String {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join("+")
        };
        match self {
            FamilySpec::Path { n } | FamilySpec::Cycle { n } | FamilySpec::Complete { n } => {
                format!("{}:{n}", self.family())
            }
            FamilySpec::CompleteBipartite { a, b } => format!("complete_bipartite:{a}:{b}"),
            FamilySpec::Circulant { n, connections } => {
                format!("circulant:{n}:{}", join(connections))
            }
            FamilySpec::Hypercube { dim } => format!("hypercube:{dim}"),
            FamilySpec::Petersen => "petersen".to_string(),
            FamilySpec::RandomRegular { n, d, seed } => format!("random_regular:{n}:{d}:s{seed}"),
            FamilySpec::GnpConnected { n, p, seed } => format!("gnp_connected:{n}:{p}:s{seed}"),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        let invalid = |msg: String| Err(Error::InvalidParameters(msg));
        match *self {
            FamilySpec::Path { n } => {
                if n == 0 {
                    return invalid("path needs n >= 1".into());
                }
                let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                Graph::from_edges(n, &edges)
            }
            FamilySpec::Cycle { n } => {
                if n < 3 {
                    return invalid("cycle needs n >= 3".into());
                }
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edges(n, &edges)
            }
            FamilySpec::Complete { n } => {
                if n == 0 {
                    return invalid("complete needs n >= 1".into());
                }
                let edges: Vec<_> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                Graph::from_edges(n, &edges)
            }
            FamilySpec::CompleteBipartite { a, b } => {
                if a == 0 || b == 0 {
                    return invalid("complete_bipartite needs a, b >= 1".into());
                }
                let edges: Vec<_> = (0..a)
                    .flat_map(|u| (a..a + b).map(move |v| (u, v)))
                    .collect();
                Graph::from_edges(a + b, &edges)
            }
            FamilySpec::Circulant { n, ref connections } => circulant(n, connections),
            FamilySpec::Hypercube { dim } => {
                if dim > 20 {
                    return invalid("hypercube dimension above 20".into());
                }
                let n = 1usize << dim;
                let edges: Vec<_> = (0..n)
                    .flat_map(|u| (0..dim).map(move |b| (u, u ^ (1 << b))))
                    .filter(|&(u, v)| u < v)
                    .collect();
                Graph::from_edges(n, &edges)
            }
            FamilySpec::Petersen => {
                let mut edges = Vec::with_capacity(15);
                for i in 0..5 {
                    edges.push((i, (i + 1) % 5));
                    edges.push((i, i + 5));
                    edges.push((5 + i, 5 + (i + 2) % 5));
                }
                Graph::from_edges(10, &edges)
            }
            FamilySpec::RandomRegular { n, d, seed } => random_regular(n, d, seed),
            FamilySpec::GnpConnected { n, p, seed } => gnp_connected(n, p, seed),
        }
    }
}

fn circulant(n: usize, connections: &[usize]) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameters("circulant needs n >= 2".into()));
    }
    if connections.is_empty() || connections.iter().any(|&s| s == 0 || s > n / 2) {
        return Err(Error::InvalidParameters(format!(
            "circulant connection set must be a nonempty subset of 1..={}",
            n / 2
        )));
    }
    let mut conn = connections.to_vec();
    conn.sort_unstable();
    conn.dedup();
    let mut edges = Vec::new();
    for i in 0..n {
        for &s in &conn {
            let j = (i + s) % n;
            // s = n/2 reaches the same antipode from both ends.
            if 2 * s == n && j < i {
                continue;
            }
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Pairing model with per-pair rejection: draw two remaining stubs,
/// reject the draw if it would make a loop or a repeated edge, and restart
/// from scratch when no acceptable pair turns up or the result is
/// disconnected.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n == 0 || d >= n || (n * d) % 2 == 1 {
        return Err(Error::InvalidParameters(format!(
            "random_regular needs d < n and n*d even (n={n}, d={d})"
        )));
    }
    const PAIR_TRIES: usize = 100;
    let mut rng = SplitMix64::new(seed);
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut seen = vec![false; n * n];
        let mut edges = Vec::with_capacity(n * d / 2);
        while !stubs.is_empty() {
            let len = stubs.len() as u64;
            let mut accepted = None;
            for _ in 0..PAIR_TRIES {
                let (i, j) = (rng.below(len) as usize, rng.below(len) as usize);
                let (u, v) = (stubs[i].min(stubs[j]), stubs[i].max(stubs[j]));
                if u != v && !seen[u * n + v] {
                    accepted = Some((i.max(j), i.min(j), u, v));
                    break;
                }
            }
            let Some((hi, lo, u, v)) = accepted else {
                continue 'attempt;
            };
            stubs.swap_remove(hi);
            stubs.swap_remove(lo);
            seen[u * n + v] = true;
            edges.push((u, v));
        }
        let g = Graph::from_edges(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

/// G(n, p) over pairs in lexicographic order, resampled until connected.
fn gnp_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameters(format!(
            "gnp_connected needs n >= 1 and 0 <= p <= 1 (n={n}, p={p})"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.unit() < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

/// Two-colors each component by BFS.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut side = vec![None; g.n()];
    for root in 0..g.n() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        stack.push(w);
                    }
                    Some(sw) if sw == su => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// A random connected bipartite circulant: even `n` in
/// `n_min..=n_max`, connection set a nonempty random subset of the odd
/// values in `1..=n/2`, redrawn until connected.
pub fn random_bipartite_circulant(n_min: usize, n_max: usize, seed: u64) -> Result<FamilySpec> {
    let evens: Vec<usize> = (n_min.max(4)..=n_max).filter(|n| n % 2 == 0).collect();
    if evens.is_empty() {
        return Err(Error::InvalidParameters(format!(
            "no even order >= 4 in {n_min}..={n_max}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let n = evens[rng.below(evens.len() as u64) as usize];
    let odds: Vec<usize> = (1..=n / 2).filter(|s| s % 2 == 1).collect();
    for _ in 0..MAX_ATTEMPTS {
        let connections: Vec<usize> = odds.iter().copied().filter(|_| rng.below(2) == 1).collect();
        if connections.is_empty() {
            continue;
        }
        let spec = FamilySpec::Circulant { n, connections };
        if spec.generate()?.is_connected() {
            return Ok(spec);
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

impl fmt::Display for FamilySpec {
    /// The textual form accepted by [`FamilySpec::from_str`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path { n } | FamilySpec::Cycle { n } | FamilySpec::Complete { n } => {
                write!(f, "{} {n}", self.family())
            }
            FamilySpec::CompleteBipartite { a, b } => write!(f, "complete_bipartite {a} {b}"),
            FamilySpec::Circulant { n, connections } => {
                let s: Vec<String> = connections.iter().map(usize::to_string).collect();
                write!(f, "circulant {n} {}", s.join(","))
            }
            FamilySpec::Hypercube { dim } => write!(f, "hypercube {dim}"),
            FamilySpec::Petersen => write!(f, "petersen"),
            FamilySpec::RandomRegular { n, d, seed } => {
                write!(f, "random_regular {n} {d} seed={seed}")
            }
            FamilySpec::GnpConnected { n, p, seed } => {
                write!(f, "gnp_connected {n} {p} seed={seed}")
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `family arg...`, e.g. `cycle 7`, `circulant 10 1,5`,
    /// `random_regular 12 3 seed=7`, `gnp_connected 10 0.3 seed=2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut seed = None;
        let mut args = Vec::new();
        for tok in s.split_whitespace() {
            match tok.strip_prefix("seed=") {
                Some(v) => seed = Some(parse_num::<u64>(v)?),
                None => args.push(tok),
            }
        }
        let Some((&family, params)) = args.split_first() else {
            return Err(Error::InvalidParameters("empty family spec".into()));
        };
        let arity = |want: usize| -> Result<()> {
            if params.len() == want {
                Ok(())
            } else {
                Err(Error::InvalidParameters(format!(
                    "{family} takes {want} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let int = |i: usize| parse_num::<usize>(params[i]);
        let seed = || seed.ok_or_else(|| Error::InvalidParameters(format!("{family} needs seed=")));
        let spec = match family {
            "path" => {
                arity(1)?;
                FamilySpec::Path { n: int(0)? }
            }
            "cycle" => {
                arity(1)?;
                FamilySpec::Cycle { n: int(0)? }
            }
            "complete" => {
                arity(1)?;
                FamilySpec::Complete { n: int(0)? }
            }
            "complete_bipartite" => {
                arity(2)?;
                FamilySpec::CompleteBipartite {
                    a: int(0)?,
                    b: int(1)?,
                }
            }
            "circulant" => {
                arity(2)?;
                FamilySpec::Circulant {
                    n: int(0)?,
                    connections: params[1]
                        .split(',')
                        .map(parse_num::<usize>)
                        .collect::<Result<_>>()?,
                }
            }
            "hypercube" => {
                arity(1)?;
                FamilySpec::Hypercube { dim: int(0)? }
            }
            "petersen" => {
                arity(0)?;
                FamilySpec::Petersen
            }
            "random_regular" => {
                arity(2)?;
                FamilySpec::RandomRegular {
                    n: int(0)?,
                    d: int(1)?,
                    seed: seed()?,
                }
            }
            "gnp_connected" => {
                arity(2)?;
                FamilySpec::GnpConnected {
                    n: int(0)?,
                    p: parse_num::<f64>(params[1])?,
                    seed: seed()?,
                }
            }
            other => {
                return Err(Error::InvalidParameters(format!(
                    "unknown family '{other}'"
                )))
            }
        };
        Ok(spec)
    }
}

fn parse_num<T: FromStr>(s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::InvalidParameters(format!("bad number '{s}'")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn named_families() {
        let c5 = gen("cycle 5");
        assert_eq!(c5.n(), 5);
        assert!(c5.is_connected());
        assert!(c5.degrees().is_regular() && c5.max_degree() == 2);
        assert_eq!(gen("complete 5").m(), 10);
        assert_eq!(gen("complete_bipartite 2 3").m(), 6);
        let q3 = gen("hypercube 3");
        assert_eq!((q3.n(), q3.m()), (8, 12));
        let p = gen("petersen");
        assert_eq!(
            (p.n(), p.m(), p.min_degree(), p.max_degree()),
            (10, 15, 3, 3)
        );
    }

    #[test]
    fn circulant_six_one_three() {
        let g = gen("circulant 6 1,3");
        assert!(g.is_connected());
        assert!(is_bipartite(&g));
        assert_eq!((g.min_degree(), g.max_degree()), (3, 3));
        assert_eq!(g.m(), 9);
    }

    #[test]
    fn circulant_degree_rule() {
        for n in 2..16usize {
            for s in 1..=n / 2 {
                for t in s..=n / 2 {
                    let conn = if s == t { vec![s] } else { vec![s, t] };
                    let g = FamilySpec::Circulant {
                        n,
                        connections: conn.clone(),
                    }
                    .generate()
                    .unwrap();
                    let half = n % 2 == 0 && conn.contains(&(n / 2));
                    let expect = 2 * conn.len() - half as usize;
                    assert!(g.degrees().is_regular());
                    assert_eq!(g.max_degree(), expect, "n={n} S={conn:?}");
                }
            }
        }
    }

    #[test]
    fn bipartiteness() {
        assert!(is_bipartite(&gen("cycle 4")));
        assert!(!is_bipartite(&gen("cycle 5")));
        assert!(!is_bipartite(&gen("petersen")));
        assert!(is_bipartite(&gen("hypercube 4")));
        assert!(is_bipartite(&gen("circulant 10 1,5")));
    }

    #[test]
    fn random_families_are_reproducible() {
        let a = gen("random_regular 12 3 seed=7");
        let b = gen("random_regular 12 3 seed=7");
        assert_eq!(a, b);
        assert!(a.degrees().is_regular() && a.max_degree() == 3 && a.is_connected());
        let c = gen("random_regular 12 3 seed=8");
        assert_ne!(a, c);
        let g = gen("gnp_connected 10 0.3 seed=2");
        assert_eq!(g, gen("gnp_connected 10 0.3 seed=2"));
        assert!(g.is_connected());
    }

    #[test]
    fn random_regular_many_seeds() {
        for seed in 0..30 {
            for (n, d) in [(10, 3), (12, 4), (14, 4), (8, 5)] {
                let g = FamilySpec::RandomRegular { n, d, seed }
                    .generate()
                    .unwrap_or_else(|e| panic!("{n} {d} {seed}: {e}"));
                assert!(g.degrees().is_regular() && g.max_degree() == d);
                assert!(g.is_connected());
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        for bad in [
            "cycle 2",
            "circulant 6 4",
            "circulant 6 0",
            "random_regular 5 3 seed=1",
            "random_regular 4 4 seed=1",
            "gnp_connected 5 1.5 seed=1",
            "complete_bipartite 0 3",
        ] {
            let res = bad.parse::<FamilySpec>().and_then(|s| s.generate());
            assert!(
                matches!(res, Err(Error::InvalidParameters(_))),
                "{bad}: {res:?}"
            );
        }
        assert!("random_regular 10 3".parse::<FamilySpec>().is_err());
        assert!("moebius 5".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn gnp_with_p_zero_fails() {
        let res = FamilySpec::GnpConnected {
            n: 3,
            p: 0.0,
            seed: 1,
        }
        .generate();
        assert_eq!(res, Err(Error::GenerationFailed(MAX_ATTEMPTS)));
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "path 4",
            "circulant 10 1,5",
            "random_regular 12 3 seed=7",
            "gnp_connected 10 0.3 seed=2",
            "petersen",
        ] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn random_bipartite_circulants() {
        for seed in 0..15 {
            let spec = random_bipartite_circulant(6, 14, seed).unwrap();
            let g = spec.generate().unwrap();
            assert!(is_bipartite(&g) && g.is_connected(), "{spec}");
            assert_eq!(spec, random_bipartite_circulant(6, 14, seed).unwrap());
        }
    }
}
