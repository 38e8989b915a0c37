use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::DEFAULT_BUDGET;
use crate::generators::{random_bipartite_circulant, FamilySpec};

/// Built-in corpus covering every family at desk scale.
pub const DEFAULT_CORPUS: &str = include_str!("../../corpora/default.toml");

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    #[serde(default)]
    pub name: String,
    pub k: Vec<usize>,
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Family specs; integer fields may be inclusive ranges `a..b`,
    /// including `seed=a..b`.
    #[serde(default)]
    pub graphs: Vec<String>,
    pub bipartite_circulants: Option<BipartiteCirculants>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteCirculants {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

impl CorpusSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: CorpusSpec = toml::from_str(text).map_err(|e| Error::Corpus(e.to_string()))?;
        if spec.k.is_empty() || spec.k.contains(&0) {
            return Err(Error::Corpus(
                "k must be a nonempty list of positive integers".into(),
            ));
        }
        Ok(spec)
    }

    pub fn default_corpus() -> Self {
        Self::parse(DEFAULT_CORPUS).expect("built-in corpus parses")
    }

    /// The graph list, in file order, followed by the bipartite circulants.
    pub fn expand(&self) -> Result<Vec<FamilySpec>> {
        let mut out = Vec::new();
        for line in &self.graphs {
            out.extend(expand_spec(line)?);
        }
        if let Some(bc) = &self.bipartite_circulants {
            let drawn = bipartite_circulants(bc, &out)?;
            out.extend(drawn);
        }
        Ok(out)
    }
}

/// Connected bipartite circulants drawn from consecutive seeds, distinct
/// from each other and from `existing`.
fn bipartite_circulants(
    bc: &BipartiteCirculants,
    existing: &[FamilySpec],
) -> Result<Vec<FamilySpec>> {
    let mut out: Vec<FamilySpec> = Vec::with_capacity(bc.count);
    let mut seed = bc.seed;
    let mut draws = 0;
    while out.len() < bc.count {
        let spec = random_bipartite_circulant(bc.n_min, bc.n_max, seed)?;
        if !out.contains(&spec) && !existing.contains(&spec) {
            out.push(spec);
        }
        seed = seed.wrapping_add(1);
        draws += 1;
        if draws > 100 * bc.count.max(1) {
            return Err(Error::Corpus(format!(
                "could not draw {} distinct bipartite circulants",
                bc.count
            )));
        }
    }
    Ok(out)
}

/// Expands `a..b` range tokens into the cartesian product of family
/// specs, leftmost token outermost.
pub fn expand_spec(line: &str) -> Result<Vec<FamilySpec>> {
    let mut variants: Vec<Vec<String>> = Vec::new();
    for tok in line.split_whitespace() {
        let (prefix, body) = match tok.strip_prefix("seed=") {
            Some(rest) => ("seed=", rest),
            None => ("", tok),
        };
        let choices = match body.split_once("..") {
            Some((lo, hi)) => {
                let parse = |s: &str| {
                    s.parse::<u64>()
                        .map_err(|_| Error::Corpus(format!("bad range '{tok}'")))
                };
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                if lo > hi {
                    return Err(Error::Corpus(format!("empty range '{tok}'")));
                }
                (lo..=hi).map(|v| format!("{prefix}{v}")).collect()
            }
            None => vec![tok.to_string()],
        };
        variants.push(choices);
    }
    let mut lines = vec![String::new()];
    for choices in &variants {
        lines = lines
            .iter()
            .flat_map(|head| {
                choices.iter().map(move |c| {
                    if head.is_empty() {
                        c.clone()
                    } else {
                        format!("{head} {c}")
                    }
                })
            })
            .collect();
    }
    lines.iter().map(|l| l.parse()).collect()
}
