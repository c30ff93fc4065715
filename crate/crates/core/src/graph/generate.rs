//! Exhaustive generation of connected bridgeless cubic graphs.
//!
//! Graphs are produced in BFS-canonical labelings: the lowest vertex with a
//! free slot is always filled next, and its new neighbours are either
//! already-reached vertices or the next fresh label. Every connected cubic
//! graph has such a labeling, so every isomorphism class appears at least
//! once. `generate_unique` removes the repeats.

use std::collections::HashMap;

use super::iso::{are_isomorphic, invariant_key};
use super::{find_bridges, CubicGraph, VertexId};

struct Frame {
    v: VertexId,
    cands: Vec<VertexId>,
    next: usize,
    applied: Option<(VertexId, bool)>,
}

/// Streaming generator; see [`generate_cubic_bridgeless`].
pub struct CubicGenerator {
    n: usize,
    multi: bool,
    bridgeless: bool,
    degree: Vec<usize>,
    edges: Vec<(VertexId, VertexId)>,
    touched: usize,
    stack: Vec<Frame>,
}

impl CubicGenerator {
    fn new(n: usize, multi: bool, bridgeless: bool) -> Self {
        let mut gen = CubicGenerator {
            n,
            multi,
            bridgeless,
            degree: vec![0; n],
            edges: Vec::new(),
            touched: 1.min(n),
            stack: Vec::new(),
        };
        let feasible = n % 2 == 0 && if multi { n >= 2 } else { n >= 4 };
        if feasible {
            let cands = gen.candidates(0, 1);
            gen.stack.push(Frame { v: 0, cands, next: 0, applied: None });
        }
        gen
    }

    fn candidates(&self, v: VertexId, min: VertexId) -> Vec<VertexId> {
        let top = if self.touched < self.n { self.touched } else { self.n - 1 };
        (min.max(v + 1)..=top).filter(|&w| self.degree[w] < 3).collect()
    }

    fn undo(&mut self, v: VertexId, t: VertexId, fresh: bool) {
        self.edges.pop();
        self.degree[v] -= 1;
        self.degree[t] -= 1;
        if fresh {
            self.touched -= 1;
        }
    }
}

impl Iterator for CubicGenerator {
    type Item = CubicGraph;

    fn next(&mut self) -> Option<CubicGraph> {
        loop {
            let frame = self.stack.last_mut()?;
            let v = frame.v;
            if let Some((t, fresh)) = frame.applied.take() {
                self.undo(v, t, fresh);
            }
            let frame = self.stack.last_mut().expect("frame still present");
            if frame.next == frame.cands.len() {
                self.stack.pop();
                continue;
            }
            let t = frame.cands[frame.next];
            frame.next += 1;
            let fresh = t == self.touched;
            frame.applied = Some((t, fresh));
            self.edges.push((v, t));
            self.degree[v] += 1;
            self.degree[t] += 1;
            if fresh {
                self.touched += 1;
            }

            match (0..self.n).find(|&u| self.degree[u] < 3) {
                None => {
                    let g = CubicGraph::new(self.n, &self.edges).expect("generator keeps degrees at 3");
                    if !self.bridgeless || find_bridges(&g).map(|b| b.is_empty()).unwrap_or(false) {
                        return Some(g);
                    }
                }
                Some(u) if u >= self.touched => {}
                Some(u) => {
                    let min = if u == v {
                        if self.multi {
                            t
                        } else {
                            t + 1
                        }
                    } else {
                        u + 1
                    };
                    let cands = self.candidates(u, min);
                    self.stack.push(Frame { v: u, cands, next: 0, applied: None });
                }
            }
        }
    }
}

/// Every connected bridgeless cubic (multi)graph on `n` vertices, at least
/// once per isomorphism class. Yields nothing for odd `n`, `n < 2`, or
/// `n < 4` without multi-edges.
pub fn generate_cubic_bridgeless(n: usize, allow_multi: bool) -> CubicGenerator {
    CubicGenerator::new(n, allow_multi, true)
}

/// Like [`generate_cubic_bridgeless`] but keeps graphs with bridges.
pub fn generate_connected_cubic(n: usize, allow_multi: bool) -> CubicGenerator {
    CubicGenerator::new(n, allow_multi, false)
}

/// One representative per isomorphism class, in generation order.
pub fn generate_unique(n: usize, allow_multi: bool) -> Vec<CubicGraph> {
    let mut buckets: HashMap<Vec<Vec<usize>>, Vec<usize>> = HashMap::new();
    let mut reps: Vec<CubicGraph> = Vec::new();
    for g in generate_cubic_bridgeless(n, allow_multi) {
        let bucket = buckets.entry(invariant_key(&g)).or_default();
        if bucket.iter().any(|&i| are_isomorphic(&reps[i], &g)) {
            continue;
        }
        bucket.push(reps.len());
        reps.push(g);
    }
    reps
}
