//! Cubic multigraphs: representation, interchange formats and structural
//! predicates.
//!
//! Edges carry stable identifiers `0..m`. Parallel edges are distinct
//! identifiers, and everything downstream (matchings, cycles, certificates)
//! is phrased in terms of edge identifiers, so multigraphs need no special
//! handling.

mod codec;
mod colouring;
mod edgeset;
mod generate;
pub mod iso;
mod props;

use thiserror::Error;

pub use codec::{
    decode, decode_graph6, decode_sparse6, encode_graph6, encode_sparse6, parse_graph6, read_graph_file, RawGraph,
};
pub use colouring::{chromatic_index_is_3, three_edge_colouring};
pub use edgeset::EdgeSet;
pub use generate::{generate_connected_cubic, generate_cubic_bridgeless, generate_unique, CubicGenerator};
pub use props::{
    components, find_bridges, girth, is_bipartite_subgraph, is_connected, set_distance, shortest_cycle,
    shortest_path_between,
};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: VertexId, degree: usize },
    #[error("loop at vertex {0}")]
    LoopPresent(VertexId),
    #[error("edge endpoint {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex set is empty")]
    EmptySet,
}

/// An immutable 3-regular multigraph without loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubicGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<[EdgeId; 3]>,
}

impl std::fmt::Debug for CubicGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CubicGraph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

impl CubicGraph {
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::with_edge_map(n, edges).map(|(g, _)| g)
    }

    /// Builds the graph and reports, for every input edge, the identifier it
    /// received. Identifiers follow the lexicographic order of the normalized
    /// endpoint pair; parallel edges keep their input order.
    pub fn with_edge_map(n: usize, edges: &[(VertexId, VertexId)]) -> Result<(Self, Vec<EdgeId>), GraphError> {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopPresent(u));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some((vertex, &d)) = degree.iter().enumerate().find(|(_, &d)| d != 3) {
            return Err(GraphError::NotCubic { vertex, degree: d });
        }

        let mut order: Vec<usize> = (0..edges.len()).collect();
        let norm = |i: usize| {
            let (u, v) = edges[i];
            (u.min(v), u.max(v))
        };
        order.sort_by_key(|&i| norm(i));
        let mut id_of_input = vec![0; edges.len()];
        let mut sorted = Vec::with_capacity(edges.len());
        for (id, &i) in order.iter().enumerate() {
            id_of_input[i] = id;
            sorted.push(norm(i));
        }

        let mut incidence = vec![[usize::MAX; 3]; n];
        let mut fill = vec![0usize; n];
        for (id, &(u, v)) in sorted.iter().enumerate() {
            incidence[u][fill[u]] = id;
            fill[u] += 1;
            incidence[v][fill[v]] = id;
            fill[v] += 1;
        }
        Ok((CubicGraph { n, edges: sorted, incidence }, id_of_input))
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v, "edge {e} is not incident to {v}");
            a
        }
    }

    /// The three edges at `v`, in ascending identifier order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId; 3] {
        &self.incidence[v]
    }

    /// Neighbours of `v` with multiplicity, in edge-identifier order.
    pub fn neighbours(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence[v].iter().map(move |&e| self.other_end(e, v))
    }

    pub fn edges_between(&self, u: VertexId, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incidence[u].iter().copied().filter(move |&e| self.other_end(e, u) == v)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edges_between(u, v).next()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] != w[1])
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::from_ids(0..self.size())
    }

    /// True when no two edges of `set` share an endpoint.
    pub fn is_matching(&self, set: &EdgeSet) -> bool {
        let mut seen = vec![false; self.n];
        for e in set.iter() {
            if e >= self.size() {
                return false;
            }
            let (u, v) = self.edges[e];
            if seen[u] || seen[v] {
                return false;
            }
            seen[u] = true;
            seen[v] = true;
        }
        true
    }

    pub fn is_perfect_matching(&self, set: &EdgeSet) -> bool {
        set.len() * 2 == self.n && self.is_matching(set)
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph { n: self.n, edges: self.edges.clone() }
    }

    /// sparse6 encoding (handles parallel edges).
    pub fn to_sparse6(&self) -> String {
        encode_sparse6(&self.to_raw())
    }

    /// Stable 64-bit fingerprint of the labeled edge list.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a
        let mut h: u64 = 0xcbf29ce484222325;
        let mut feed = |x: usize| {
            for byte in (x as u64).to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        feed(self.n);
        for &(u, v) in &self.edges {
            feed(u);
            feed(v);
        }
        h
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> CubicGraph {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        CubicGraph::new(self.n, &edges).expect("relabeling preserves cubicity")
    }
}

/// A cycle given as a cyclic vertex sequence; `edges[i]` joins
/// `vertices[i]` to `vertices[(i + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Cycle {
    /// Validates adjacency, absence of repeated vertices and length ≥ 2.
    pub fn new(g: &CubicGraph, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Option<Cycle> {
        let len = vertices.len();
        if len < 2 || edges.len() != len {
            return None;
        }
        let mut seen = std::collections::HashSet::new();
        if !vertices.iter().all(|v| seen.insert(*v)) {
            return None;
        }
        if len == 2 && edges[0] == edges[1] {
            return None;
        }
        for i in 0..len {
            let (a, b) = (vertices[i], vertices[(i + 1) % len]);
            let e = edges[i];
            if e >= g.size() {
                return None;
            }
            let (x, y) = g.endpoints(e);
            if !((x == a && y == b) || (x == b && y == a)) {
                return None;
            }
        }
        Some(Cycle { vertices, edges })
    }

    pub(crate) fn from_parts(vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Cycle {
        Cycle { vertices, edges }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_ids_are_lexicographic_with_stable_multiplicity() {
        let (g, map) = CubicGraph::with_edge_map(2, &[(1, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(map, vec![0, 1, 2]);
        let (k4, map) =
            CubicGraph::with_edge_map(4, &[(2, 3), (0, 1), (1, 3), (0, 2), (1, 2), (0, 3)]).unwrap();
        assert_eq!(k4.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(map, vec![5, 0, 4, 1, 3, 2]);
        assert!(k4.is_simple());
        assert!(!g.is_simple());
    }

    #[test]
    fn rejects_loops_and_wrong_degrees() {
        assert_eq!(CubicGraph::new(2, &[(0, 0), (0, 1), (1, 1)]), Err(GraphError::LoopPresent(0)));
        assert!(matches!(CubicGraph::new(2, &[(0, 1), (0, 1)]), Err(GraphError::NotCubic { .. })));
        assert!(matches!(CubicGraph::new(2, &[(0, 5)]), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn degree_sum_is_three_n() {
        let g = crate::named::petersen();
        let total: usize = (0..g.order()).map(|v| g.incident(v).len()).sum();
        assert_eq!(total, 2 * g.size());
        assert_eq!(total, 3 * g.order());
    }

    #[test]
    fn cycle_validation() {
        let g = crate::named::k4();
        let e01 = g.edge_between(0, 1).unwrap();
        let e12 = g.edge_between(1, 2).unwrap();
        let e02 = g.edge_between(0, 2).unwrap();
        assert!(Cycle::new(&g, vec![0, 1, 2], vec![e01, e12, e02]).is_some());
        assert!(Cycle::new(&g, vec![0, 1, 2], vec![e01, e02, e12]).is_none());
        assert!(Cycle::new(&g, vec![0, 1], vec![e01, e01]).is_none());
    }
}
