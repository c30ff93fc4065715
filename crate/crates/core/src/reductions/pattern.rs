//! Small subgraph patterns and their embeddings into cubic hosts.

use serde::Serialize;

use crate::graph::{CubicGraph, EdgeId, RawGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    G8,
    PetersenMinusVertex,
}

/// A subcubic pattern. Vertices of internal degree 2 are attachment points,
/// each joined in the host to one boundary vertex outside the image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub kind: PatternKind,
    /// One character per vertex.
    pub labels: &'static str,
    pub edges: Vec<(usize, usize)>,
    /// Attachment points in boundary order.
    pub attachments: Vec<usize>,
}

impl Pattern {
    fn from_names(kind: PatternKind, labels: &'static str, edges: &str, attachments: &str) -> Pattern {
        let idx = |c: char| labels.find(c).expect("label in pattern");
        let edges = edges
            .split_whitespace()
            .map(|s| {
                let mut cs = s.chars();
                (idx(cs.next().unwrap()), idx(cs.next().unwrap()))
            })
            .collect();
        Pattern { kind, labels, edges, attachments: attachments.chars().map(idx).collect() }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex(&self, label: char) -> usize {
        self.labels.find(label).unwrap_or_else(|| panic!("no pattern vertex {label}"))
    }

    /// Index into [`Pattern::edges`] of the edge named by two labels.
    pub fn edge(&self, name: &str) -> usize {
        let mut cs = name.chars();
        let (u, v) = (self.vertex(cs.next().unwrap()), self.vertex(cs.next().unwrap()));
        self.edges
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .unwrap_or_else(|| panic!("no pattern edge {name}"))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph { n: self.order(), edges: self.edges.clone() }
    }
}

/// The 8-vertex pattern with attachment points a, b, c, d.
pub fn g8_pattern() -> Pattern {
    Pattern::from_names(PatternKind::G8, "abcdxyzt", "ax ay bx bt ct cz dy dz xz yt", "abcd")
}

/// Petersen with outer cycle abcde, spokes ax bt cy du ez and inner cycle
/// xyztu, minus a. Attachment points x, b, e.
pub fn petersen_minus_vertex_pattern() -> Pattern {
    Pattern::from_names(
        PatternKind::PetersenMinusVertex,
        "bcdexyztu",
        "bc cd de bt cy du ez xy yz zt tu ux",
        "xbe",
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub kind: PatternKind,
    /// Host vertex of each pattern vertex.
    pub vertex_map: Vec<VertexId>,
    /// Host edge of each pattern edge.
    pub edge_map: Vec<EdgeId>,
    /// Host neighbour outside the image of each attachment point.
    pub boundary: Vec<VertexId>,
    pub boundary_edges: Vec<EdgeId>,
}

impl Embedding {
    /// Checks injectivity, edge images and boundary placement.
    pub fn validate(&self, g: &CubicGraph, p: &Pattern) -> Result<(), String> {
        if self.kind != p.kind || self.vertex_map.len() != p.order() || self.edge_map.len() != p.edges.len() {
            return Err("embedding does not match the pattern".into());
        }
        if self.boundary.len() != p.attachments.len() || self.boundary_edges.len() != p.attachments.len() {
            return Err("one boundary vertex per attachment point required".into());
        }
        let mut image = vec![false; g.order()];
        for &v in &self.vertex_map {
            if v >= g.order() || std::mem::replace(&mut image[v], true) {
                return Err("vertex map is not injective".into());
            }
        }
        let mut used = vec![false; g.size()];
        for (i, &(u, v)) in p.edges.iter().enumerate() {
            let e = self.edge_map[i];
            let (x, y) = g.endpoints(e);
            let (a, b) = (self.vertex_map[u], self.vertex_map[v]);
            if !((x, y) == (a, b) || (x, y) == (b, a)) || std::mem::replace(&mut used[e], true) {
                return Err(format!("pattern edge {i} has no distinct host image"));
            }
        }
        for (k, &att) in p.attachments.iter().enumerate() {
            let h = self.vertex_map[att];
            let e = self.boundary_edges[k];
            if used[e] || !g.incident(h).contains(&e) || g.other_end(e, h) != self.boundary[k] {
                return Err(format!("boundary edge {k} is wrong"));
            }
            if image[self.boundary[k]] {
                return Err(format!("boundary vertex {} lies inside the image", self.boundary[k]));
            }
        }
        Ok(())
    }
}

/// First embedding in search order: pattern vertices are placed in BFS
/// order, each next to the image of its BFS parent.
pub fn find_embedding(g: &CubicGraph, p: &Pattern) -> Option<Embedding> {
    let mut found = None;
    for_each_embedding(g, p, |e| {
        found = Some(e);
        false
    });
    found
}

/// Calls `f` on embeddings until it returns false.
pub fn for_each_embedding(g: &CubicGraph, p: &Pattern, mut f: impl FnMut(Embedding) -> bool) {
    let n = p.order();
    if n > g.order() || n == 0 {
        return;
    }
    let adj = p.adjacency();
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for &w in &adj[order[i]] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = order[i];
                order.push(w);
            }
        }
        i += 1;
    }
    assert_eq!(order.len(), n, "patterns are connected");

    let mut map = vec![usize::MAX; n];
    let mut image = vec![false; g.order()];
    let mut go = true;
    for root in 0..g.order() {
        if !go {
            break;
        }
        map[order[0]] = root;
        image[root] = true;
        extend(g, p, &adj, &order, &parent, 1, &mut map, &mut image, &mut f, &mut go);
        image[root] = false;
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &CubicGraph,
    p: &Pattern,
    adj: &[Vec<usize>],
    order: &[usize],
    parent: &[usize],
    k: usize,
    map: &mut [VertexId],
    image: &mut [bool],
    f: &mut impl FnMut(Embedding) -> bool,
    go: &mut bool,
) {
    if !*go {
        return;
    }
    if k == order.len() {
        if let Some(e) = complete(g, p, map, image) {
            *go = f(e);
        }
        return;
    }
    let pv = order[k];
    let host_parent = map[parent[pv]];
    let mut cands: Vec<VertexId> = g.neighbours(host_parent).collect();
    cands.sort_unstable();
    cands.dedup();
    for h in cands {
        if image[h] {
            continue;
        }
        let fits = adj[pv].iter().all(|&w| map[w] == usize::MAX || g.edge_between(h, map[w]).is_some());
        if !fits {
            continue;
        }
        map[pv] = h;
        image[h] = true;
        extend(g, p, adj, order, parent, k + 1, map, image, f, go);
        image[h] = false;
        map[pv] = usize::MAX;
        if !*go {
            return;
        }
    }
}

/// Assigns distinct host edges to pattern edges and finds the boundary.
fn complete(g: &CubicGraph, p: &Pattern, map: &[VertexId], image: &[bool]) -> Option<Embedding> {
    let mut used = vec![false; g.size()];
    let mut edge_map = Vec::with_capacity(p.edges.len());
    for &(u, v) in &p.edges {
        let e = g.edges_between(map[u], map[v]).find(|&e| !used[e])?;
        used[e] = true;
        edge_map.push(e);
    }
    let mut boundary = Vec::new();
    let mut boundary_edges = Vec::new();
    for &att in &p.attachments {
        let h = map[att];
        let mut rest = g.incident(h).iter().filter(|&&e| !used[e]);
        let e = *rest.next()?;
        let b = g.other_end(e, h);
        if image[b] {
            return None;
        }
        boundary.push(b);
        boundary_edges.push(e);
    }
    Some(Embedding { kind: p.kind, vertex_map: map.to_vec(), edge_map, boundary, boundary_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{encode_sparse6, CubicGraph};
    use crate::named;

    /// Girth of a small simple graph by BFS from every vertex.
    fn girth(adj: &[Vec<usize>]) -> usize {
        let mut best = usize::MAX;
        for s in 0..adj.len() {
            let mut dist = vec![usize::MAX; adj.len()];
            let mut par = vec![usize::MAX; adj.len()];
            dist[s] = 0;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        par[w] = u;
                        q.push_back(w);
                    } else if par[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn g8_degrees_and_girth() {
        let p = g8_pattern();
        let adj = p.adjacency();
        for c in "abcd".chars() {
            assert_eq!(adj[p.vertex(c)].len(), 2);
        }
        for c in "xyzt".chars() {
            assert_eq!(adj[p.vertex(c)].len(), 3);
        }
        assert_eq!(girth(&adj), 5);
    }

    #[test]
    fn g8_completions_are_pattern_matchings() {
        let p = g8_pattern();
        let covers = |names: &[&str], skip: &str| {
            let mut hit = vec![0; p.order()];
            for s in names {
                let (u, v) = p.edges[p.edge(s)];
                hit[u] += 1;
                hit[v] += 1;
            }
            for c in skip.chars() {
                hit[p.vertex(c)] += 1;
            }
            hit.iter().all(|&h| h == 1)
        };
        assert!(covers(&["ax", "bt", "cz", "dy"], ""));
        assert!(covers(&["ay", "dz", "ct", "bx"], ""));
        assert!(covers(&["xz", "yt"], "abcd"));
        assert!(covers(&["yt", "bx", "dz"], "ac"));
        assert!(covers(&["bt", "xz", "dy"], "ac"));
        assert!(covers(&["ay", "xz", "ct"], "bd"));
    }

    #[test]
    fn g8_is_petersen_minus_an_edge() {
        let g = named::petersen();
        let p = g8_pattern();
        let emb = find_embedding(&g, &p).unwrap();
        emb.validate(&g, &p).unwrap();
        let rest: Vec<VertexId> = (0..10).filter(|v| !emb.vertex_map.contains(v)).collect();
        assert_eq!(rest.len(), 2);
        assert!(g.edge_between(rest[0], rest[1]).is_some());
        // the image spans 10 of the 15 edges, so it is all of Petersen minus the pair
        assert_eq!(15 - 5, p.edges.len());
    }

    #[test]
    fn pmv_pattern_is_petersen_minus_a() {
        let g = named::petersen();
        let p = petersen_minus_vertex_pattern();
        assert_eq!(p.edges.len(), 12);
        for (i, c) in p.labels.chars().enumerate() {
            assert_eq!(named::petersen_label(c) - 1, i);
        }
        for &(u, v) in &p.edges {
            assert!(g.edge_between(u + 1, v + 1).is_some());
        }
        let emb = find_embedding(&g, &p).unwrap();
        emb.validate(&g, &p).unwrap();
        assert!(emb.boundary.iter().all(|&b| b == emb.boundary[0]));
    }

    #[test]
    fn embedding_matches_naive_subgraph_scan() {
        // every injective map of the pattern, checked edge by edge, on a
        // graph small enough to enumerate
        let p = g8_pattern();
        for g in [named::petersen(), named::k33(), CubicGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap()] {
            let mut count = 0;
            for_each_embedding(&g, &p, |_| {
                count += 1;
                true
            });
            let mut naive = 0;
            let n = g.order();
            let mut map = vec![0; p.order()];
            fn rec(g: &CubicGraph, p: &Pattern, n: usize, k: usize, map: &mut Vec<usize>, naive: &mut usize) {
                if k == map.len() {
                    let edges_ok = p.edges.iter().all(|&(u, v)| g.edge_between(map[u], map[v]).is_some());
                    let outside = p.attachments.iter().all(|&a| {
                        let used = p.edges.iter().filter(|&&(u, v)| u == a || v == a).count();
                        used == 2 && g.neighbours(map[a]).filter(|w| !map.contains(w)).count() == 1
                    });
                    if edges_ok && outside {
                        *naive += 1;
                    }
                    return;
                }
                for h in 0..n {
                    if !map[..k].contains(&h) {
                        map[k] = h;
                        rec(g, p, n, k + 1, map, naive);
                    }
                }
            }
            if n >= p.order() {
                rec(&g, &p, n, 0, &mut map, &mut naive);
            }
            assert_eq!(count, naive);
        }
    }

    #[test]
    fn shipped_pattern_fixtures() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/patterns");
        let files = [
            ("g8.s6", encode_sparse6(&g8_pattern().to_raw())),
            ("petersen_minus_a.s6", encode_sparse6(&petersen_minus_vertex_pattern().to_raw())),
            ("petersen.s6", named::petersen().to_sparse6()),
        ];
        for (file, want) in files {
            let path = format!("{dir}/{file}");
            if std::env::var_os("FR_REGEN_FIXTURES").is_some() {
                std::fs::create_dir_all(dir).unwrap();
                std::fs::write(&path, format!("{want}\n")).unwrap();
            }
            let text = std::fs::read_to_string(&path).unwrap();
            assert_eq!(text.trim(), want, "{file}");
        }
    }
}
