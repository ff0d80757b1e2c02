//! Text formats: graph6 (short header only) and a plain edge list.
//!
//! graph6 layout: one header byte `n + 63`, then the upper triangle of the
//! adjacency matrix in column-major order `(0,1), (0,2), (1,2), (0,3), ...`,
//! packed big-endian into 6-bit groups, each group offset by 63, with the
//! last group zero-padded.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Largest order encodable with the single-byte graph6 header.
pub const GRAPH6_MAX_ORDER: usize = 62;

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 { offset, message: message.into() }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let Some(&header) = bytes.first() else {
        return Err(g6_err(0, "empty input"));
    };
    if header == 126 {
        return Err(g6_err(0, format!("long-form header unsupported (order > {GRAPH6_MAX_ORDER})")));
    }
    if !(63..126).contains(&header) {
        return Err(g6_err(0, format!("invalid header byte {header:#04x}")));
    }
    let n = (header - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let len = bits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() < len {
        return Err(g6_err(bytes.len(), format!("truncated: expected {} bytes, found {}", len + 1, bytes.len())));
    }
    if body.len() > len {
        return Err(g6_err(len + 1, "trailing data after graph"));
    }

    let mut b = GraphBuilder::new(n)?;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let offset = 1 + k / 6;
            let byte = bytes[offset];
            if !(63..=126).contains(&byte) {
                return Err(g6_err(offset, format!("invalid data byte {byte:#04x}")));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                b.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    if !bits.is_multiple_of(6) {
        let offset = len;
        let byte = bytes[offset];
        if !(63..=126).contains(&byte) {
            return Err(g6_err(offset, format!("invalid data byte {byte:#04x}")));
        }
        let pad = 6 - bits % 6;
        if (byte - 63) & ((1 << pad) - 1) != 0 {
            return Err(g6_err(offset, "nonzero padding bits"));
        }
    }
    Ok(b.build())
}

pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: GRAPH6_MAX_ORDER });
    }
    let mut out = String::with_capacity(1 + (n * n).div_ceil(12));
    out.push((n as u8 + 63) as char);
    let mut group = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            group = group << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((group + 63) as char);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((group << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Parses `n <order>` followed by one `u v` pair per line. Blank lines and
/// lines starting with `#` are skipped; repeated edges are merged.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let err = |line: usize, message: String| Error::EdgeList { line, message };

    let (line, header) = lines.next().ok_or_else(|| err(1, "missing `n <order>` header".into()))?;
    let order = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", order] => order
            .parse::<usize>()
            .map_err(|e| err(line, format!("bad order `{order}`: {e}")))?,
        _ => return Err(err(line, format!("expected `n <order>`, found `{header}`"))),
    };
    let mut b = GraphBuilder::new(order).map_err(|e| err(line, e.to_string()))?;

    for (line, text) in lines {
        let fields: Vec<_> = text.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(err(line, format!("expected `u v`, found `{text}`")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|e| err(line, format!("bad vertex `{s}`: {e}")));
        let (u, v) = (parse(u)?, parse(v)?);
        if u == v {
            return Err(err(line, format!("self-loop at vertex {u}")));
        }
        if u >= order || v >= order {
            return Err(err(line, format!("vertex {} out of range for order {order}", u.max(v))));
        }
        b.add_edge(u, v).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(b.build())
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
