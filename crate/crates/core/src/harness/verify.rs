//! Per-graph pipeline (exact, greedy, bounds) and the claim checks that
//! turn its numbers into flags.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::{all_bounds, format_rational, BoundName, BoundsReport, Rational};
use crate::error::{Error, Result};
use crate::exact::exact_f_k;
use crate::forcing::is_k_forcing_set;
use crate::generators::FamilySpec;
use crate::graph::Graph;
use crate::greedy::{greedy_k_forcing_set, greedy_per_component, GreedyCase};
use crate::harness::corpus::CorpusSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// Exact search ran out of budget; not a failure.
    Budget,
    GreedyNotForcing,
    ExactGtGreedy,
    /// `PROP1`/`THM_I` returned more than one vertex or `THM_II` not two.
    GreedyCaseSize,
    GreedyGtThm2iii,
    /// Exact value above the floor of an applicable bound (or, for the
    /// small-degree cases, different from the stated exact value).
    ExactViolates(BoundName),
    /// `F_k > F_{k-1}` on the same graph.
    FkNotMonotone,
    /// At `k = 1` the two rationals differ.
    Thm2iiiNeAcdp5AtK1,
    Thm2iiiGtAcdp4,
    Thm2iiiGtAcdp5,
    Thm2iiiGtCor2,
    Cor1NeThm2iii,
    /// Exact value meets the Cor 2 bound on a graph that is not
    /// `(k+2)`-regular.
    Cor2EqualityNotK2Regular,
}

impl Flag {
    pub fn is_failure(self) -> bool {
        self != Flag::Budget
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::Budget => f.write_str("budget"),
            Flag::GreedyNotForcing => f.write_str("greedy_not_forcing"),
            Flag::ExactGtGreedy => f.write_str("exact_gt_greedy"),
            Flag::GreedyCaseSize => f.write_str("greedy_case_size"),
            Flag::GreedyGtThm2iii => f.write_str("greedy_gt_thm2iii"),
            Flag::ExactViolates(b) => write!(f, "exact_violates_{b}"),
            Flag::FkNotMonotone => f.write_str("fk_not_monotone"),
            Flag::Thm2iiiNeAcdp5AtK1 => f.write_str("k1_thm2iii_ne_acdp5"),
            Flag::Thm2iiiGtAcdp4 => f.write_str("thm2iii_gt_acdp4"),
            Flag::Thm2iiiGtAcdp5 => f.write_str("thm2iii_gt_acdp5"),
            Flag::Thm2iiiGtCor2 => f.write_str("thm2iii_gt_cor2"),
            Flag::Cor1NeThm2iii => f.write_str("cor1_ne_thm2iii"),
            Flag::Cor2EqualityNotK2Regular => f.write_str("cor2_equality_not_k2_regular"),
        }
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn ser_rational_map<S: Serializer>(
    map: &BTreeMap<BoundName, Option<Rational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(
        map.iter()
            .map(|(k, v)| (k.as_str(), v.as_ref().map(format_rational))),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub graph_id: String,
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    #[serde(rename = "Delta")]
    pub big_delta: usize,
    pub k: usize,
    pub exact: Option<usize>,
    /// Largest size proven impossible when the budget ran out.
    pub exact_lower_bound: Option<usize>,
    pub greedy: Option<usize>,
    pub case: Option<GreedyCase>,
    #[serde(serialize_with = "ser_rational_map")]
    pub bounds: BTreeMap<BoundName, Option<Rational>>,
    pub flags: Vec<Flag>,
}

impl VerifyRow {
    pub fn bound(&self, name: BoundName) -> Option<Rational> {
        self.bounds.get(&name).copied().flatten()
    }

    pub fn failures(&self) -> impl Iterator<Item = Flag> + '_ {
        self.flags.iter().copied().filter(|f| f.is_failure())
    }

    pub fn is_regular_of_degree(&self, d: usize) -> bool {
        self.delta == d && self.big_delta == d
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityCase {
    pub graph_id: String,
    pub k: usize,
    pub bound: &'static str,
    /// `"exact"` or `"greedy"`.
    pub attained_by: &'static str,
    pub value: usize,
    pub regular: bool,
    #[serde(rename = "Delta")]
    pub big_delta: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub graphs: usize,
    pub rows: usize,
    pub failures: usize,
    pub budget_exhausted: usize,
    pub flag_counts: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub corpus: String,
    pub rows: Vec<VerifyRow>,
    pub summary: Summary,
    pub equality_log: Vec<EqualityCase>,
}

pub const CSV_COLUMNS: [&str; 17] = [
    "graph_id", "family", "n", "m", "delta", "Delta", "k", "exact", "greedy", "case", "thm2iii",
    "cor1", "cor2", "cor3", "acdp4", "acdp5", "flags",
];

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.summary.failures == 0
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Output(e.to_string());
        w.write_record(CSV_COLUMNS).map_err(err)?;
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        for row in &self.rows {
            let b = |name| {
                row.bound(name)
                    .as_ref()
                    .map(format_rational)
                    .unwrap_or_default()
            };
            let flags: Vec<String> = row.flags.iter().map(Flag::to_string).collect();
            w.write_record([
                row.graph_id.clone(),
                row.family.clone(),
                row.n.to_string(),
                row.m.to_string(),
                row.delta.to_string(),
                row.big_delta.to_string(),
                row.k.to_string(),
                opt(row.exact),
                opt(row.greedy),
                row.case.map(|c| c.to_string()).unwrap_or_default(),
                b(BoundName::Thm2iii),
                b(BoundName::Cor1),
                b(BoundName::Cor2),
                b(BoundName::Cor3),
                b(BoundName::Acdp4),
                b(BoundName::Acdp5),
                flags.join(";"),
            ])
            .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Output(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV of ASCII fields"))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Output(e.to_string()))
    }
}

/// Runs the pipeline for one graph at every `k`, flags included.
pub fn verify_graph(
    spec: &FamilySpec,
    g: &Graph,
    ks: &[usize],
    budget: u64,
) -> Result<Vec<VerifyRow>> {
    let mut rows: Vec<VerifyRow> = Vec::with_capacity(ks.len());
    for &k in ks {
        let mut row = pipeline(spec, g, k, budget)?;
        if let Some(prev) = rows.iter().find(|r| r.k + 1 == k) {
            if let (Some(a), Some(b)) = (prev.exact, row.exact) {
                if b > a {
                    row.flags.push(Flag::FkNotMonotone);
                }
            }
        }
        row.flags.sort();
        row.flags.dedup();
        rows.push(row);
    }
    Ok(rows)
}

fn pipeline(spec: &FamilySpec, g: &Graph, k: usize, budget: u64) -> Result<VerifyRow> {
    let mut flags = Vec::new();

    let (exact, exact_lower_bound) = match exact_f_k(g, k, Some(budget)) {
        Ok(r) => (Some(r.f_k), None),
        Err(Error::BudgetExceeded {
            proven_none_up_to, ..
        }) => {
            flags.push(Flag::Budget);
            (None, Some(proven_none_up_to))
        }
        Err(e) => return Err(e),
    };

    let (greedy, case) = if g.is_connected() {
        let r = greedy_k_forcing_set(g, k)?;
        if !is_k_forcing_set(g, &r.forcing_set, k)? {
            flags.push(Flag::GreedyNotForcing);
        }
        let size_ok = match r.case_taken {
            GreedyCase::Prop1 | GreedyCase::ThmI => r.size() == 1,
            GreedyCase::ThmII => r.size() == 2,
            GreedyCase::ThmIII => true,
        };
        if !size_ok {
            flags.push(Flag::GreedyCaseSize);
        }
        (Some(r.size()), Some(r.case_taken))
    } else {
        let total = greedy_per_component(g, k)?.iter().map(|r| r.size()).sum();
        (Some(total), None)
    };

    let mut report: BoundsReport = all_bounds(g, k);
    report.exact = exact;
    report.greedy = greedy;
    flags.extend(report.violations().into_iter().map(Flag::ExactViolates));

    let value = |name| report.get(name).value;
    let thm = value(BoundName::Thm2iii);

    if let (Some(e), Some(gr)) = (exact, greedy) {
        if e > gr {
            flags.push(Flag::ExactGtGreedy);
        }
    }
    if let (Some(t), Some(gr), Some(GreedyCase::ThmIII)) = (thm, greedy, case) {
        if gr as i64 > t.floor().to_integer() {
            flags.push(Flag::GreedyGtThm2iii);
        }
    }
    if let Some(t) = thm {
        if let Some(a5) = value(BoundName::Acdp5) {
            if k == 1 && t != a5 {
                flags.push(Flag::Thm2iiiNeAcdp5AtK1);
            }
            if k >= 2 && t > a5 {
                flags.push(Flag::Thm2iiiGtAcdp5);
            }
        }
        if let Some(a4) = value(BoundName::Acdp4) {
            if k >= 2 && t > a4 {
                flags.push(Flag::Thm2iiiGtAcdp4);
            }
        }
        if let Some(c2) = value(BoundName::Cor2) {
            if t > c2 {
                flags.push(Flag::Thm2iiiGtCor2);
            }
        }
        if k == 1 && value(BoundName::Cor1) != Some(t) {
            flags.push(Flag::Cor1NeThm2iii);
        }
    }
    if let (Some(e), Some(c2)) = (exact, value(BoundName::Cor2)) {
        let regular_k2 = g.min_degree() == k + 2 && g.max_degree() == k + 2;
        if Rational::from_integer(e as i64) == c2 && !regular_k2 {
            flags.push(Flag::Cor2EqualityNotK2Regular);
        }
    }

    Ok(VerifyRow {
        graph_id: spec.id(),
        family: spec.family().to_string(),
        n: g.n(),
        m: g.m(),
        delta: g.min_degree(),
        big_delta: g.max_degree(),
        k,
        exact,
        exact_lower_bound,
        greedy,
        case,
        bounds: report
            .bounds
            .iter()
            .filter(|b| !b.exact)
            .map(|b| (b.name, b.value))
            .collect(),
        flags,
    })
}

fn equality_cases(row: &VerifyRow) -> Vec<EqualityCase> {
    let mut out = Vec::new();
    for (&name, value) in &row.bounds {
        let Some(v) = value else { continue };
        for (who, x) in [("exact", row.exact), ("greedy", row.greedy)] {
            if let Some(x) = x {
                if Rational::from_integer(x as i64) == *v {
                    out.push(EqualityCase {
                        graph_id: row.graph_id.clone(),
                        k: row.k,
                        bound: name.as_str(),
                        attained_by: who,
                        value: x,
                        regular: row.delta == row.big_delta,
                        big_delta: row.big_delta,
                    });
                }
            }
        }
    }
    out
}

/// Verifies every graph of the corpus on `workers` threads. Rows come out
/// in corpus order whatever the completion order.
pub fn verify_corpus(corpus: &CorpusSpec, workers: usize) -> Result<VerifyReport> {
    let specs = corpus.expand()?;
    let per_graph: Vec<Vec<VerifyRow>> = crate::with_workers(workers, || {
        specs
            .par_iter()
            .map(|spec| {
                let g = spec.generate()?;
                verify_graph(spec, &g, &corpus.k, corpus.budget)
            })
            .collect::<Result<_>>()
    })?;
    let rows: Vec<VerifyRow> = per_graph.into_iter().flatten().collect();

    let mut flag_counts = BTreeMap::new();
    for f in rows.iter().flat_map(|r| &r.flags) {
        *flag_counts.entry(f.to_string()).or_insert(0) += 1;
    }
    let summary = Summary {
        graphs: specs.len(),
        rows: rows.len(),
        failures: rows
            .iter()
            .filter(|r| r.failures().next().is_some())
            .count(),
        budget_exhausted: rows
            .iter()
            .filter(|r| r.flags.contains(&Flag::Budget))
            .count(),
        flag_counts,
    };
    let equality_log = rows.iter().flat_map(equality_cases).collect();
    Ok(VerifyReport {
        corpus: corpus.name.clone(),
        rows,
        summary,
        equality_log,
    })
}
