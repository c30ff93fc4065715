//! Isomorphism and automorphisms of small cubic multigraphs by backtracking
//! along a BFS order of the source graph.

use std::collections::VecDeque;

use super::{CubicGraph, VertexId};

/// Per-vertex invariant: the number of vertices at each BFS distance,
/// followed by the number of distinct neighbours.
pub fn vertex_invariants(g: &CubicGraph) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut layers = vec![1usize];
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for w in g.neighbours(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        if layers.len() <= dist[w] {
                            layers.push(0);
                        }
                        layers[dist[w]] += 1;
                        q.push_back(w);
                    }
                }
            }
            let mut nb: Vec<_> = g.neighbours(s).collect();
            nb.sort_unstable();
            nb.dedup();
            layers.push(nb.len());
            layers
        })
        .collect()
}

/// Isomorphism-invariant key: the sorted multiset of vertex invariants.
pub fn invariant_key(g: &CubicGraph) -> Vec<Vec<usize>> {
    let mut inv = vertex_invariants(g);
    inv.sort();
    inv
}

fn multiplicity_matrix(g: &CubicGraph) -> Vec<Vec<u8>> {
    let n = g.order();
    let mut mat = vec![vec![0u8; n]; n];
    for &(u, v) in g.edges() {
        mat[u][v] += 1;
        mat[v][u] += 1;
    }
    mat
}

/// Vertex order in which each vertex after the first of its component has an
/// earlier neighbour; entries are (vertex, earlier neighbour).
fn bfs_order(g: &CubicGraph) -> Vec<(VertexId, Option<VertexId>)> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push((s, None));
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for w in g.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push((w, Some(u)));
                    q.push_back(w);
                }
            }
        }
    }
    order
}

struct Matcher<'a> {
    h: &'a CubicGraph,
    gm: Vec<Vec<u8>>,
    hm: Vec<Vec<u8>>,
    ginv: Vec<Vec<usize>>,
    hinv: Vec<Vec<usize>>,
    order: Vec<(VertexId, Option<VertexId>)>,
    map: Vec<Option<VertexId>>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a CubicGraph, h: &'a CubicGraph) -> Option<Self> {
        if g.order() != h.order() || g.size() != h.size() {
            return None;
        }
        let ginv = vertex_invariants(g);
        let hinv = vertex_invariants(h);
        let mut a = ginv.clone();
        let mut b = hinv.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
        Some(Matcher {
            h,
            gm: multiplicity_matrix(g),
            hm: multiplicity_matrix(h),
            ginv,
            hinv,
            order: bfs_order(g),
            map: vec![None; g.order()],
            used: vec![false; h.order()],
        })
    }

    fn consistent(&self, u: VertexId, x: VertexId, depth: usize) -> bool {
        if self.used[x] || self.ginv[u] != self.hinv[x] {
            return false;
        }
        self.order[..depth].iter().all(|&(w, _)| {
            let y = self.map[w].expect("earlier vertices are mapped");
            self.gm[u][w] == self.hm[x][y]
        })
    }

    /// Calls `visit` on every complete mapping; stops when it returns false.
    fn search(&mut self, depth: usize, visit: &mut dyn FnMut(&[VertexId]) -> bool) -> bool {
        if depth == self.order.len() {
            let full: Vec<VertexId> = self.map.iter().map(|m| m.unwrap()).collect();
            return visit(&full);
        }
        let (u, parent) = self.order[depth];
        let candidates: Vec<VertexId> = match parent {
            Some(p) => {
                let mut c: Vec<_> = self.h.neighbours(self.map[p].unwrap()).collect();
                c.sort_unstable();
                c.dedup();
                c
            }
            None => (0..self.h.order()).collect(),
        };
        for x in candidates {
            if !self.consistent(u, x, depth) {
                continue;
            }
            self.map[u] = Some(x);
            self.used[x] = true;
            let go_on = self.search(depth + 1, visit);
            self.used[x] = false;
            self.map[u] = None;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// A vertex bijection `f` with `f(g) = h`, if one exists.
pub fn find_isomorphism(g: &CubicGraph, h: &CubicGraph) -> Option<Vec<VertexId>> {
    let mut matcher = Matcher::new(g, h)?;
    let mut found = None;
    matcher.search(0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn are_isomorphic(g: &CubicGraph, h: &CubicGraph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Every automorphism as a vertex permutation (identity included).
pub fn automorphisms(g: &CubicGraph) -> Vec<Vec<VertexId>> {
    let mut matcher = Matcher::new(g, g).expect("a graph matches itself");
    let mut all = Vec::new();
    matcher.search(0, &mut |m| {
        all.push(m.to_vec());
        true
    });
    all
}
