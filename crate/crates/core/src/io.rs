//! Plain-text graph formats and input auto-detection.
//!
//! Edge list: first line `n m`, then `m` lines `u v` with 0-based
//! endpoints, whitespace separated. Blank lines and `#` comments are
//! ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::parse_graph6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edge-list" | "edges" => Ok(Format::EdgeList),
            other => Err(Error::EdgeList(format!("unknown format '{other}'"))),
        }
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::EdgeList("missing 'n m' header".into()))?;
    let (n, m) = parse_pair(header)?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        edges.push(parse_pair(line)?);
    }
    if edges.len() != m {
        return Err(Error::EdgeList(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges)
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let mut next = || -> Result<usize> {
        fields
            .next()
            .ok_or_else(|| Error::EdgeList(format!("expected two integers in '{line}'")))?
            .parse()
            .map_err(|_| Error::EdgeList(format!("bad integer in '{line}'")))
    };
    let pair = (next()?, next()?);
    if fields.next().is_some() {
        return Err(Error::EdgeList(format!("extra fields in '{line}'")));
    }
    Ok(pair)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads a graph, either in the given format or by sniffing: the first
/// line is taken as graph6 when its first byte is in `63..=126` and it
/// parses, otherwise the text is read as an edge list.
pub fn read_graph(text: &str, format: Option<Format>) -> Result<Graph> {
    match format {
        Some(Format::Graph6) => parse_graph6(first_line(text)),
        Some(Format::EdgeList) => parse_edge_list(text),
        None => {
            let line = first_line(text);
            if line
                .as_bytes()
                .first()
                .is_some_and(|b| (63..=126).contains(b))
            {
                if let Ok(g) = parse_graph6(line) {
                    return Ok(g);
                }
            }
            parse_edge_list(text)
        }
    }
}

fn first_line(text: &str) -> &str {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("")
}
