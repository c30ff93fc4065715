use std::collections::{BTreeSet, VecDeque};

use super::{CubicGraph, Cycle, EdgeId, EdgeSet, GraphError, VertexId};

/// Connected components after deleting the edges in `removed`; returns the
/// component label of every vertex and the number of components.
pub fn components(g: &CubicGraph, removed: &EdgeSet) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; g.order()];
    let mut count = 0;
    for s in 0..g.order() {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in g.incident(u) {
                if removed.contains(e) {
                    continue;
                }
                let w = g.other_end(e, u);
                if label[w] == usize::MAX {
                    label[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

pub fn is_connected(g: &CubicGraph) -> bool {
    components(g, &EdgeSet::new()).1 <= 1
}

/// All cut edges, by low-link DFS over edge identifiers (so a parallel pair
/// is never reported).
pub fn find_bridges(g: &CubicGraph) -> Result<BTreeSet<EdgeId>, GraphError> {
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    let n = g.order();
    let mut bridges = BTreeSet::new();
    if n == 0 {
        return Ok(bridges);
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut clock = 0;
    // (vertex, edge used to enter it, next incidence slot)
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(0, None, 0)];
    disc[0] = 0;
    low[0] = 0;
    clock += 1;
    while let Some(&mut (u, parent_edge, ref mut slot)) = stack.last_mut() {
        if *slot < 3 {
            let e = g.incident(u)[*slot];
            *slot += 1;
            if Some(e) == parent_edge {
                continue;
            }
            let w = g.other_end(e, u);
            if disc[w] == usize::MAX {
                disc[w] = clock;
                low[w] = clock;
                clock += 1;
                stack.push((w, Some(e), 0));
            } else {
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if let (Some(e), Some(&(p, _, _))) = (parent_edge, stack.last()) {
                low[p] = low[p].min(low[u]);
                if low[u] > disc[p] {
                    bridges.insert(e);
                }
            }
        }
    }
    Ok(bridges)
}

/// A shortest cycle, as vertices and edge identifiers. Parallel edges give a
/// cycle of length 2.
pub fn shortest_cycle(g: &CubicGraph) -> Option<Cycle> {
    let n = g.order();
    let mut best: Option<(usize, VertexId, Vec<Option<(VertexId, EdgeId)>>, EdgeId)> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut found: Option<(usize, EdgeId)> = None;
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some((len, _)) = found {
                if 2 * dist[u] + 1 >= len {
                    break;
                }
            }
            for &e in g.incident(u) {
                if parent[u].map(|(_, pe)| pe) == Some(e) {
                    continue;
                }
                let w = g.other_end(e, u);
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = Some((u, e));
                    queue.push_back(w);
                } else {
                    let len = dist[u] + dist[w] + 1;
                    if found.is_none_or(|(l, _)| len < l) {
                        found = Some((len, e));
                    }
                    if len <= 2 {
                        break 'bfs;
                    }
                }
            }
        }
        if let Some((len, e)) = found {
            if best.as_ref().is_none_or(|b| len < b.0) {
                best = Some((len, root, parent, e));
            }
        }
        if best.as_ref().is_some_and(|b| b.0 == 2) {
            break;
        }
    }
    let (_, _, parent, closing) = best?;
    let (u, w) = g.endpoints(closing);
    let path_to_root = |mut v: VertexId| {
        let mut verts = vec![v];
        let mut edges = Vec::new();
        while let Some((p, e)) = parent[v] {
            edges.push(e);
            verts.push(p);
            v = p;
        }
        (verts, edges)
    };
    let (pu, eu) = path_to_root(u);
    let (pw, ew) = path_to_root(w);
    // pu: u .. root, pw: w .. root; at minimum length they meet only at root
    let mut vertices: Vec<VertexId> = pu.iter().rev().copied().collect();
    let mut edges: Vec<EdgeId> = eu.iter().rev().copied().collect();
    edges.push(closing);
    vertices.extend(pw[..pw.len() - 1].iter().copied());
    edges.extend(ew.iter().copied());
    debug_assert_eq!(vertices.len(), edges.len());
    Some(Cycle::from_parts(vertices, edges))
}

/// Length of a shortest cycle.
pub fn girth(g: &CubicGraph) -> usize {
    shortest_cycle(g).map(|c| c.len()).unwrap_or(usize::MAX)
}

/// Multi-source BFS distance between two vertex sets; 0 when they meet.
pub fn set_distance(g: &CubicGraph, xs: &[VertexId], ys: &[VertexId]) -> Result<usize, GraphError> {
    shortest_path_between(g, xs, ys)?
        .map(|(verts, _)| verts.len() - 1)
        .ok_or(GraphError::Disconnected)
}

/// A shortest path from `xs` to `ys` as (vertices, edges); `None` when no
/// path exists.
#[allow(clippy::type_complexity)]
pub fn shortest_path_between(
    g: &CubicGraph,
    xs: &[VertexId],
    ys: &[VertexId],
) -> Result<Option<(Vec<VertexId>, Vec<EdgeId>)>, GraphError> {
    if xs.is_empty() || ys.is_empty() {
        return Err(GraphError::EmptySet);
    }
    let n = g.order();
    for &v in xs.iter().chain(ys) {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
    }
    let mut target = vec![false; n];
    for &y in ys {
        target[y] = true;
    }
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut sources: Vec<VertexId> = xs.to_vec();
    sources.sort_unstable();
    sources.dedup();
    for &x in &sources {
        seen[x] = true;
        queue.push_back(x);
    }
    while let Some(u) = queue.pop_front() {
        if target[u] {
            let mut verts = vec![u];
            let mut edges = Vec::new();
            let mut v = u;
            while let Some((p, e)) = parent[v] {
                verts.push(p);
                edges.push(e);
                v = p;
            }
            verts.reverse();
            edges.reverse();
            return Ok(Some((verts, edges)));
        }
        for &e in g.incident(u) {
            let w = g.other_end(e, u);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}

/// Whether the subgraph formed by `edges` (over whatever vertices they touch)
/// is bipartite.
pub fn is_bipartite_subgraph(g: &CubicGraph, edges: &[EdgeId]) -> bool {
    let n = g.order();
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX || adj[s].is_empty() {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    stack.push(w);
                } else if side[w] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}
