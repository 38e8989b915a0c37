//! graph6 encoding (short form, `n <= 62`).
//!
//! Header byte `63 + n`, then the upper triangle of the adjacency matrix
//! in column order (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits
//! per byte, most significant bit first, each byte offset by 63. The last
//! byte is zero-padded.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_SHORT_N: usize = 62;

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&header, data) = bytes.split_first().ok_or(Error::MalformedHeader)?;
    if !(63..=126).contains(&header) {
        return Err(Error::BadCharacter(header));
    }
    // 126 introduces the long-form header, which is not supported.
    if header == 126 {
        return Err(Error::MalformedHeader);
    }
    let n = (header - 63) as usize;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(&bad) = data.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::BadCharacter(bad));
    }
    let needed = data_len(n);
    if data.len() < needed {
        return Err(Error::Truncated);
    }
    if data.len() > needed {
        return Err(Error::TrailingData);
    }

    let bit = |idx: usize| (data[idx / 6] - 63) >> (5 - idx % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(idx) {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    // Padding bits must be zero.
    if (idx..needed * 6).any(bit) {
        return Err(Error::TrailingData);
    }
    Graph::from_edges(n, &edges)
}

pub fn serialize_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_SHORT_N {
        return Err(Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
