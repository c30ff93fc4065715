//! graph6 / sparse6 reader and writer.
//!
//! Format reference: <https://users.cecs.anu.edu.au/~bdm/data/formats.txt>.
//! graph6 cannot carry parallel edges; sparse6 can.

use std::path::Path;

use super::{CubicGraph, GraphError, VertexId};

/// A decoded graph before any degree validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGraph {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl RawGraph {
    pub fn into_cubic(self) -> Result<CubicGraph, GraphError> {
        CubicGraph::new(self.n, &self.edges)
    }
}

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::MalformedEncoding(msg.into())
}

fn six_bit_values(s: &str) -> Result<Vec<u8>, GraphError> {
    s.bytes()
        .map(|b| {
            if (63..=126).contains(&b) {
                Ok(b - 63)
            } else {
                Err(malformed(format!("byte {b} outside printable range 63..126")))
            }
        })
        .collect()
}

/// Decodes N(n); returns `(n, bytes consumed)`.
fn decode_order(vals: &[u8]) -> Result<(usize, usize), GraphError> {
    let take = |range: std::ops::Range<usize>| -> Result<usize, GraphError> {
        if vals.len() < range.end {
            return Err(malformed("truncated vertex count"));
        }
        Ok(vals[range].iter().fold(0usize, |acc, &v| (acc << 6) | v as usize))
    };
    match vals.first() {
        None => Err(malformed("empty input")),
        Some(&63) if vals.get(1) == Some(&63) => Ok((take(2..8)?, 8)),
        Some(&63) => Ok((take(1..4)?, 4)),
        Some(&v) => Ok((v as usize, 1)),
    }
}

fn encode_order(n: usize, out: &mut String) {
    let push = |out: &mut String, v: usize| out.push((v as u8 + 63) as char);
    if n <= 62 {
        push(out, n);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            push(out, (n >> shift) & 63);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            push(out, (n >> shift) & 63);
        }
    }
}

struct BitReader<'a> {
    vals: &'a [u8],
    pos: usize,
}

impl BitReader<'_> {
    fn remaining(&self) -> usize {
        self.vals.len() * 6 - self.pos
    }

    fn bit(&mut self) -> Option<bool> {
        if self.remaining() == 0 {
            return None;
        }
        let v = self.vals[self.pos / 6];
        let b = (v >> (5 - self.pos % 6)) & 1 == 1;
        self.pos += 1;
        Some(b)
    }

    fn bits(&mut self, k: usize) -> Option<usize> {
        let mut x = 0;
        for _ in 0..k {
            x = (x << 1) | self.bit()? as usize;
        }
        Some(x)
    }
}

#[derive(Default)]
struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    fn push_bits(&mut self, x: usize, k: usize) {
        for i in (0..k).rev() {
            self.bits.push((x >> i) & 1 == 1);
        }
    }

    fn finish(self, out: &mut String) {
        for chunk in self.bits.chunks(6) {
            let mut v = 0u8;
            for (i, &b) in chunk.iter().enumerate() {
                if b {
                    v |= 1 << (5 - i);
                }
            }
            out.push((v + 63) as char);
        }
    }
}

fn strip_header<'a>(line: &'a str, header: &str) -> &'a str {
    line.strip_prefix(header).unwrap_or(line)
}

pub fn decode_graph6(line: &str) -> Result<RawGraph, GraphError> {
    let body = strip_header(line.trim(), ">>graph6<<");
    let vals = six_bit_values(body)?;
    let (n, used) = decode_order(&vals)?;
    let data = &vals[used..];
    let needed_bits = n * n.saturating_sub(1) / 2;
    if data.len() != needed_bits.div_ceil(6) {
        return Err(malformed(format!(
            "graph6 body has {} bytes, expected {} for n={n}",
            data.len(),
            needed_bits.div_ceil(6)
        )));
    }
    let mut reader = BitReader { vals: data, pos: 0 };
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if reader.bit().expect("length checked") {
                edges.push((i, j));
            }
        }
    }
    Ok(RawGraph { n, edges })
}

pub fn encode_graph6(g: &RawGraph) -> Result<String, GraphError> {
    let n = g.n;
    let mut adj = vec![false; n * n];
    for &(u, v) in &g.edges {
        if u == v {
            return Err(GraphError::LoopPresent(u));
        }
        if adj[u * n + v] {
            return Err(malformed("graph6 cannot encode parallel edges"));
        }
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut out = String::new();
    encode_order(n, &mut out);
    let mut w = BitWriter::default();
    for j in 1..n {
        for i in 0..j {
            w.bits.push(adj[i * n + j]);
        }
    }
    w.finish(&mut out);
    Ok(out)
}

/// Number of bits needed to represent `n - 1`.
fn bits_for(n: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

pub fn decode_sparse6(line: &str) -> Result<RawGraph, GraphError> {
    let body = strip_header(line.trim(), ">>sparse6<<");
    let body = body
        .strip_prefix(':')
        .ok_or_else(|| malformed("sparse6 must start with ':'"))?;
    let vals = six_bit_values(body)?;
    let (n, used) = decode_order(&vals)?;
    let k = bits_for(n);
    let mut reader = BitReader { vals: &vals[used..], pos: 0 };
    let mut edges = Vec::new();
    let mut v = 0usize;
    while reader.remaining() > k {
        let b = reader.bit().expect("checked");
        if b {
            v += 1;
        }
        let x = reader.bits(k).expect("checked");
        if x > v {
            v = x;
        } else if v < n {
            edges.push((x, v));
        }
    }
    Ok(RawGraph { n, edges })
}

pub fn encode_sparse6(g: &RawGraph) -> String {
    let n = g.n;
    let k = bits_for(n);
    let mut edges: Vec<(usize, usize)> = g.edges.iter().map(|&(u, v)| (u.max(v), u.min(v))).collect();
    edges.sort();

    let mut out = String::from(":");
    encode_order(n, &mut out);
    let mut w = BitWriter::default();
    let mut current = 0usize;
    for &(hi, lo) in &edges {
        if hi == current {
            w.bits.push(false);
            w.push_bits(lo, k);
        } else if hi == current + 1 {
            w.bits.push(true);
            w.push_bits(lo, k);
        } else {
            w.bits.push(true);
            w.push_bits(hi, k);
            w.bits.push(false);
            w.push_bits(lo, k);
        }
        current = hi;
    }
    let pad = (6 - w.bits.len() % 6) % 6;
    if k < 6 && n == (1 << k) && pad > k && current + 2 == n {
        // a padding of all ones would decode as a spurious edge (n-1, n-1)
        w.bits.push(false);
        w.bits.extend(std::iter::repeat_n(true, pad - 1));
    } else {
        w.bits.extend(std::iter::repeat_n(true, pad));
    }
    w.finish(&mut out);
    out
}

/// Decodes one line in either format, dispatching on the leading `:`.
pub fn decode(line: &str) -> Result<RawGraph, GraphError> {
    let t = line.trim();
    if t.starts_with(':') || t.starts_with(">>sparse6<<") {
        decode_sparse6(t)
    } else if t.starts_with(';') || t.starts_with('&') {
        Err(malformed("incremental sparse6 and digraph6 are not supported"))
    } else {
        decode_graph6(t)
    }
}

/// Decodes a graph6 or sparse6 line into a cubic graph.
pub fn parse_graph6(text: &str) -> Result<CubicGraph, GraphError> {
    decode(text)?.into_cubic()
}

/// Reads a newline-separated multi-graph file. Blank lines are skipped; each
/// remaining line yields its own result.
pub fn read_graph_file(path: &Path) -> std::io::Result<Vec<Result<CubicGraph, GraphError>>> {
    let text = std::fs::read_to_string(path)?;
    Ok(text.lines().filter(|l| !l.trim().is_empty()).map(parse_graph6).collect())
}
