//! Closed-form upper bounds (and exact values) for `F_k`, each with its
//! applicability check. Values are exact rationals.

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundName {
    /// Exact value 1 or 2 for `Δ <= k + 1`.
    Prop1Thm2,
    Thm2iii,
    Cor1,
    Cor2,
    Cor3,
    Acdp4,
    Acdp5,
}

impl BoundName {
    pub const ALL: [BoundName; 7] = [
        BoundName::Prop1Thm2,
        BoundName::Thm2iii,
        BoundName::Cor1,
        BoundName::Cor2,
        BoundName::Cor3,
        BoundName::Acdp4,
        BoundName::Acdp5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Prop1Thm2 => "prop1_thm2",
            BoundName::Thm2iii => "thm2iii",
            BoundName::Cor1 => "cor1",
            BoundName::Cor2 => "cor2",
            BoundName::Cor3 => "cor3",
            BoundName::Acdp4 => "acdp4",
            BoundName::Acdp5 => "acdp5",
        }
    }
}

impl std::fmt::Display for BoundName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub name: BoundName,
    /// `None` when applicable; otherwise the failed hypothesis.
    pub failure: Option<Error>,
    pub value: Option<Rational>,
    pub floor: Option<i64>,
    /// True when `value` is the exact `F_k` rather than an upper bound.
    pub exact: bool,
    /// Conditions checked, in words.
    pub hypotheses: String,
    /// For Cor 2: whether the graph is regular of degree `k + 2`.
    pub equality_candidate: Option<bool>,
}

impl BoundValue {
    fn applies(name: BoundName, hypotheses: impl Into<String>, value: Rational) -> Self {
        Self {
            name,
            failure: None,
            floor: Some(value.floor().to_integer()),
            value: Some(value),
            exact: false,
            hypotheses: hypotheses.into(),
            equality_candidate: None,
        }
    }

    fn fails(name: BoundName, hypotheses: impl Into<String>, failure: Error) -> Self {
        Self {
            name,
            failure: Some(failure),
            value: None,
            floor: None,
            exact: false,
            hypotheses: hypotheses.into(),
            equality_candidate: None,
        }
    }

    pub fn applicable(&self) -> bool {
        self.failure.is_none()
    }

    pub fn reason(&self) -> Option<String> {
        self.failure.as_ref().map(Error::to_string)
    }

    pub fn into_result(self) -> Result<Rational> {
        match self.failure {
            Some(e) => Err(e),
            None => Ok(self.value.expect("applicable bound has a value")),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundValue", 9)?;
        st.serialize_field("name", self.name.as_str())?;
        st.serialize_field("applicable", &self.applicable())?;
        st.serialize_field("num", &self.value.map(|v| *v.numer()))?;
        st.serialize_field("den", &self.value.map(|v| *v.denom()))?;
        st.serialize_field("floor", &self.floor)?;
        st.serialize_field("exact", &self.exact)?;
        st.serialize_field("hypotheses", &self.hypotheses)?;
        if let Some(reason) = self.reason() {
            st.serialize_field("reason", &reason)?;
        } else {
            st.skip_field("reason")?;
        }
        if let Some(eq) = self.equality_candidate {
            st.serialize_field("equality_candidate", &eq)?;
        } else {
            st.skip_field("equality_candidate")?;
        }
        st.end()
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct Params {
    n: i64,
    k: i64,
    delta: i64,
    big_delta: i64,
    connected: bool,
}

fn params(g: &Graph, k: usize) -> Params {
    Params {
        n: g.n() as i64,
        k: k as i64,
        delta: g.min_degree() as i64,
        big_delta: g.max_degree() as i64,
        connected: g.is_connected(),
    }
}

fn hyp(msg: String) -> Error {
    Error::HypothesisFailed(msg)
}

/// Exact `F_k` in the small-degree cases: 1 when `Δ <= k` or
/// `δ < Δ = k + 1`, and 2 when `δ = Δ = k + 1`.
pub fn bound_prop1_thm2_cases(g: &Graph, k: usize) -> BoundValue {
    let name = BoundName::Prop1Thm2;
    let p = params(g, k);
    let text = "connected, Δ <= k+1";
    if !p.connected {
        return BoundValue::fails(name, text, Error::NotConnected);
    }
    let value = if p.big_delta <= p.k || p.delta < p.big_delta && p.big_delta == p.k + 1 {
        1
    } else if p.delta == p.big_delta && p.big_delta == p.k + 1 {
        2
    } else {
        return BoundValue::fails(
            name,
            text,
            hyp(format!("Δ = {} >= k+2 = {}", p.big_delta, p.k + 2)),
        );
    };
    let mut b = BoundValue::applies(name, text, Rational::from_integer(value));
    b.exact = true;
    b
}

fn require_connected_and(
    name: BoundName,
    text: &str,
    p: &Params,
    ok: bool,
    why: impl FnOnce() -> String,
) -> Option<BoundValue> {
    if !p.connected {
        return Some(BoundValue::fails(name, text, Error::NotConnected));
    }
    if !ok {
        return Some(BoundValue::fails(name, text, hyp(why())));
    }
    None
}

/// `((Δ-k-1)n + max{δ(k+1-Δ)+k, k(δ-Δ+2)}) / (Δ-1)` for connected
/// graphs with `Δ >= k + 2`.
pub fn bound_thm2_iii(g: &Graph, k: usize) -> BoundValue {
    let name = BoundName::Thm2iii;
    let p = params(g, k);
    let text = "connected, Δ >= k+2";
    if let Some(fail) = require_connected_and(name, text, &p, p.big_delta >= p.k + 2, || {
        format!("Δ = {} < k+2 = {}", p.big_delta, p.k + 2)
    }) {
        return fail;
    }
    let (n, k, d, dd) = (p.n, p.k, p.delta, p.big_delta);
    let extra = (d * (k + 1 - dd) + k).max(k * (d - dd + 2));
    BoundValue::applies(name, text, Rational::new((dd - k - 1) * n + extra, dd - 1))
}

/// `((Δ-2)n - (Δ-δ) + 2) / (Δ-1)` for connected graphs with `Δ >= 3`.
pub fn bound_cor1(g: &Graph) -> BoundValue {
    let name = BoundName::Cor1;
    let p = params(g, 1);
    let text = "connected, Δ >= 3";
    if let Some(fail) = require_connected_and(name, text, &p, p.big_delta >= 3, || {
        format!("Δ = {} < 3", p.big_delta)
    }) {
        return fail;
    }
    let (n, d, dd) = (p.n, p.delta, p.big_delta);
    BoundValue::applies(
        name,
        text,
        Rational::new((dd - 2) * n - (dd - d) + 2, dd - 1),
    )
}

/// `((Δ-k-1)n + 2k) / (Δ-1)` for connected graphs with `Δ >= k + 2`.
pub fn bound_cor2(g: &Graph, k: usize) -> BoundValue {
    let name = BoundName::Cor2;
    let p = params(g, k);
    let text = "connected, Δ >= k+2";
    if let Some(fail) = require_connected_and(name, text, &p, p.big_delta >= p.k + 2, || {
        format!("Δ = {} < k+2 = {}", p.big_delta, p.k + 2)
    }) {
        return fail;
    }
    let (n, k, dd) = (p.n, p.k, p.big_delta);
    let mut b = BoundValue::applies(name, text, Rational::new((dd - k - 1) * n + 2 * k, dd - 1));
    b.equality_candidate = Some(p.delta == dd && dd == k + 2);
    b
}

/// `((Δ-2)n + 2) / (Δ-1)` for connected graphs with `Δ >= 2`.
pub fn bound_cor3(g: &Graph) -> BoundValue {
    let name = BoundName::Cor3;
    let p = params(g, 1);
    let text = "connected, Δ >= 2";
    if let Some(fail) = require_connected_and(name, text, &p, p.big_delta >= 2, || {
        format!("Δ = {} < 2", p.big_delta)
    }) {
        return fail;
    }
    let (n, dd) = (p.n, p.big_delta);
    BoundValue::applies(name, text, Rational::new((dd - 2) * n + 2, dd - 1))
}

/// `(Δ-k+1)n / (Δ-k+1+min{δ,k})` for `n >= 2`, `Δ >= k`, `δ >= 1`.
pub fn bound_acdp_thm4(g: &Graph, k: usize) -> BoundValue {
    let name = BoundName::Acdp4;
    let p = params(g, k);
    let text = "n >= 2, Δ >= k, δ >= 1";
    let failed = if p.n < 2 {
        Some(format!("n = {} < 2", p.n))
    } else if p.big_delta < p.k {
        Some(format!("Δ = {} < k = {}", p.big_delta, p.k))
    } else if p.delta < 1 {
        Some("δ = 0".to_string())
    } else {
        None
    };
    if let Some(msg) = failed {
        return BoundValue::fails(name, text, hyp(msg));
    }
    let (n, k, d, dd) = (p.n, p.k, p.delta, p.big_delta);
    BoundValue::applies(
        name,
        text,
        Rational::new((dd - k + 1) * n, dd - k + 1 + d.min(k)),
    )
}

/// `((Δ-2)n + 2) / (Δ+k-2)` for k-connected graphs with `n > k`, `Δ >= 2`.
pub fn bound_acdp_thm5(g: &Graph, k: usize) -> BoundValue {
    let name = BoundName::Acdp5;
    let p = params(g, k);
    let text = "k-connected, n > k, Δ >= 2";
    let failed = match g.is_k_connected(k) {
        Err(e) => Some(e.to_string()),
        Ok(false) => Some(format!("not {k}-connected")),
        Ok(true) if p.big_delta < 2 => Some(format!("Δ = {} < 2", p.big_delta)),
        Ok(true) => None,
    };
    if let Some(msg) = failed {
        return BoundValue::fails(name, text, hyp(msg));
    }
    let (n, k, dd) = (p.n, p.k, p.big_delta);
    BoundValue::applies(name, text, Rational::new((dd - 2) * n + 2, dd + k - 2))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    #[serde(rename = "Delta")]
    pub big_delta: usize,
    pub connected: bool,
    /// `(level, is level-connected)` for each level `1..=k` with `n > level`.
    pub k_connected: Vec<(usize, bool)>,
}

impl GraphSummary {
    pub fn of(g: &Graph, k: usize) -> Self {
        Self {
            n: g.n(),
            m: g.m(),
            delta: g.min_degree(),
            big_delta: g.max_degree(),
            connected: g.is_connected(),
            k_connected: (1..=k)
                .filter(|&level| g.n() > level)
                .map(|level| (level, g.is_k_connected(level).unwrap_or(false)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub graph: GraphSummary,
    pub k: usize,
    pub bounds: Vec<BoundValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub greedy: Option<usize>,
}

impl BoundsReport {
    pub fn get(&self, name: BoundName) -> &BoundValue {
        self.bounds
            .iter()
            .find(|b| b.name == name)
            .expect("every bound is evaluated")
    }

    /// Applicable bounds whose floor is below the attached exact value.
    pub fn violations(&self) -> Vec<BoundName> {
        let Some(exact) = self.exact else {
            return Vec::new();
        };
        self.bounds
            .iter()
            .filter(|b| match (b.floor, b.exact) {
                (Some(f), false) => (exact as i64) > f,
                (Some(f), true) => exact as i64 != f,
                _ => false,
            })
            .map(|b| b.name)
            .collect()
    }
}

pub fn all_bounds(g: &Graph, k: usize) -> BoundsReport {
    BoundsReport {
        graph: GraphSummary::of(g, k),
        k,
        bounds: vec![
            bound_prop1_thm2_cases(g, k),
            bound_thm2_iii(g, k),
            bound_cor1(g),
            bound_cor2(g, k),
            bound_cor3(g),
            bound_acdp_thm4(g, k),
            bound_acdp_thm5(g, k),
        ],
        exact: None,
        greedy: None,
    }
}
