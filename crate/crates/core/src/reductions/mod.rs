//! Reductions used against minimal counterexamples: the girth gate, removal
//! of a G8 subgraph, removal of a Petersen-minus-a-vertex subgraph, and the
//! lifts that turn three perfect matchings of the reduced graph into three
//! of the original.

mod pattern;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{components, shortest_cycle, CubicGraph, EdgeId, EdgeSet, VertexId};
use crate::matching::PerfectMatching;

pub use pattern::{
    find_embedding, for_each_embedding, g8_pattern, petersen_minus_vertex_pattern, Embedding, Pattern, PatternKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("no lift found: {0}")]
    CaseTableMiss(String),
    #[error("reduced matchings are not a valid non-intersecting triple: {0}")]
    InvalidTriple(String),
}

/// What a lift needs to map reduced matchings back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackMap {
    pub original: CubicGraph,
    pub embedding: Embedding,
    /// Original vertex of each reduced vertex; `None` for a new vertex.
    pub vertex_map: Vec<Option<VertexId>>,
    /// Original edge of each reduced edge; `None` for a replacement edge.
    pub edge_map: Vec<Option<EdgeId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub kind: PatternKind,
    pub reduced: CubicGraph,
    /// a′c′, b′d′ for G8; vx′, vb′, ve′ for Petersen minus a vertex.
    pub added_edges: Vec<EdgeId>,
    pub back_map: BackMap,
}

pub fn find_g8(g: &CubicGraph) -> Option<Embedding> {
    find_embedding(g, &g8_pattern())
}

pub fn find_petersen_minus_vertex(g: &CubicGraph) -> Option<Embedding> {
    find_embedding(g, &petersen_minus_vertex_pattern())
}

/// Deletes the image and adds `extra` edges over the kept vertices, plus
/// `new_vertices` fresh vertices numbered after them.
fn rebuild(
    g: &CubicGraph,
    emb: &Embedding,
    new_vertices: usize,
    extra: &[(Option<VertexId>, Option<VertexId>)],
) -> Result<ReductionResult, ReductionError> {
    let mut inside = vec![false; g.order()];
    for &v in &emb.vertex_map {
        inside[v] = true;
    }
    let mut vertex_map: Vec<Option<VertexId>> = (0..g.order()).filter(|&v| !inside[v]).map(Some).collect();
    let mut local = vec![usize::MAX; g.order()];
    for (i, v) in vertex_map.iter().enumerate() {
        local[v.unwrap()] = i;
    }
    let first_new = vertex_map.len();
    vertex_map.extend(std::iter::repeat_n(None, new_vertices));
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !inside[u] && !inside[v] {
            edges.push((local[u], local[v]));
            origin.push(Some(e));
        }
    }
    let resolve = |x: Option<VertexId>| x.map_or(first_new, |v| local[v]);
    for &(u, v) in extra {
        edges.push((resolve(u), resolve(v)));
        origin.push(None);
    }
    let (reduced, ids) = CubicGraph::with_edge_map(vertex_map.len(), &edges)
        .map_err(|e| ReductionError::InvalidEmbedding(e.to_string()))?;
    let mut edge_map = vec![None; reduced.size()];
    for (i, &id) in ids.iter().enumerate() {
        edge_map[id] = origin[i];
    }
    let added_edges = ids[ids.len() - extra.len()..].to_vec();
    Ok(ReductionResult {
        kind: emb.kind,
        reduced,
        added_edges,
        back_map: BackMap { original: g.clone(), embedding: emb.clone(), vertex_map, edge_map },
    })
}

/// Deletes the G8 image and joins a′ to c′ and b′ to d′.
pub fn reduce_g8(g: &CubicGraph, emb: &Embedding) -> Result<ReductionResult, ReductionError> {
    emb.validate(g, &g8_pattern()).map_err(ReductionError::InvalidEmbedding)?;
    let b = &emb.boundary;
    if b[0] == b[2] || b[1] == b[3] {
        return Err(ReductionError::InvalidEmbedding("a replacement edge would be a loop".into()));
    }
    rebuild(g, emb, 0, &[(Some(b[0]), Some(b[2])), (Some(b[1]), Some(b[3]))])
}

/// Replaces the image by one vertex v joined to x′, b′ and e′.
pub fn reduce_pmv(g: &CubicGraph, emb: &Embedding) -> Result<ReductionResult, ReductionError> {
    emb.validate(g, &petersen_minus_vertex_pattern()).map_err(ReductionError::InvalidEmbedding)?;
    let extra: Vec<_> = emb.boundary.iter().map(|&x| (None, Some(x))).collect();
    rebuild(g, emb, 1, &extra)
}

fn check_triple(g: &CubicGraph, ps: [&PerfectMatching; 3]) -> Result<(), ReductionError> {
    if ps.iter().any(|p| !g.is_perfect_matching(p.edges())) {
        return Err(ReductionError::InvalidTriple("not a perfect matching of the reduced graph".into()));
    }
    if !ps[0].edges().intersection(ps[1].edges()).intersection(ps[2].edges()).is_empty() {
        return Err(ReductionError::InvalidTriple("common edge".into()));
    }
    Ok(())
}

fn triple_ok(g: &CubicGraph, ms: &[EdgeSet; 3]) -> bool {
    ms.iter().all(|m| g.is_perfect_matching(m)) && ms[0].intersection(&ms[1]).intersection(&ms[2]).is_empty()
}

/// Original edges of `p` other than replacement edges.
fn kept(r: &ReductionResult, p: &PerfectMatching) -> EdgeSet {
    p.iter().filter_map(|e| r.back_map.edge_map[e]).collect()
}

fn into_matchings(g: &CubicGraph, ms: [EdgeSet; 3]) -> [PerfectMatching; 3] {
    ms.map(|m| PerfectMatching::new(g, m).expect("checked perfect"))
}

/// Edge sets inside the pattern, given by name, that complete a matching
/// once the listed attachment points are covered from outside.
fn completions(p: &Pattern, covered: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut hit = vec![false; p.order()];
    for &c in covered {
        hit[c] = true;
    }
    fn rec(p: &Pattern, hit: &mut [bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(v) = hit.iter().position(|&h| !h) else {
            out.push(chosen.clone());
            return;
        };
        for (i, &(a, b)) in p.edges.iter().enumerate() {
            if (a == v || b == v) && !hit[a] && !hit[b] {
                hit[a] = true;
                hit[b] = true;
                chosen.push(i);
                rec(p, hit, chosen, out);
                chosen.pop();
                hit[a] = false;
                hit[b] = false;
            }
        }
    }
    rec(p, &mut hit, &mut Vec::new(), &mut out);
    out
}

/// Per reduced matching: the boundary edges forced by the replacement edges
/// it uses, and the internal completions available to it.
struct LiftSide {
    forced: EdgeSet,
    options: Vec<Vec<usize>>,
}

fn lift_with(
    r: &ReductionResult,
    p: &Pattern,
    ps: [&PerfectMatching; 3],
    sides: [LiftSide; 3],
    table: Option<[Vec<usize>; 3]>,
) -> Result<Lifted, ReductionError> {
    let g = &r.back_map.original;
    let emb = &r.back_map.embedding;
    let build = |i: usize, internal: &[usize]| -> EdgeSet {
        let mut m = kept(r, ps[i]).union(&sides[i].forced);
        for &k in internal {
            m.insert(emb.edge_map[k]);
        }
        m
    };
    if let Some(t) = &table {
        let ms = [build(0, &t[0]), build(1, &t[1]), build(2, &t[2])];
        if triple_ok(g, &ms) {
            return Ok(Lifted { matchings: into_matchings(g, ms), via_table: true });
        }
        log::warn!("{:?} lift table output is not a valid triple; searching completions", p.kind);
    } else {
        log::warn!("{:?} lift table has no case for this input; searching completions", p.kind);
    }
    for x in &sides[0].options {
        for y in &sides[1].options {
            for z in &sides[2].options {
                let ms = [build(0, x), build(1, y), build(2, z)];
                if triple_ok(g, &ms) {
                    return Ok(Lifted { matchings: into_matchings(g, ms), via_table: false });
                }
            }
        }
    }
    Err(ReductionError::CaseTableMiss(format!("{:?}: no completion gives an empty intersection", p.kind)))
}

fn names(p: &Pattern, list: &[&str]) -> Vec<usize> {
    list.iter().map(|s| p.edge(s)).collect()
}

/// Three perfect matchings of the original graph with empty intersection,
/// from such a triple of the G8-reduced graph.
pub fn lift_g8(r: &ReductionResult, ps: [&PerfectMatching; 3]) -> Result<Lifted, ReductionError> {
    if r.kind != PatternKind::G8 {
        return Err(ReductionError::InvalidEmbedding("not a G8 reduction".into()));
    }
    check_triple(&r.reduced, ps)?;
    let p = g8_pattern();
    let emb = &r.back_map.embedding;
    let (ac, bd) = (r.added_edges[0], r.added_edges[1]);
    let uses: Vec<(bool, bool)> = ps.iter().map(|m| (m.contains(ac), m.contains(bd))).collect();

    let sides = [0, 1, 2].map(|i| {
        let (hac, hbd) = uses[i];
        let mut covered = Vec::new();
        let mut forced = EdgeSet::new();
        for (k, on) in [(0, hac), (2, hac), (1, hbd), (3, hbd)] {
            if on {
                covered.push(p.attachments[k]);
                forced.insert(emb.boundary_edges[k]);
            }
        }
        LiftSide { forced, options: completions(&p, &covered) }
    });

    let shared = |e: EdgeId| -> Option<(usize, usize)> {
        let who: Vec<usize> = (0..3).filter(|&i| ps[i].contains(e)).collect();
        (who.len() == 2).then(|| (who[0], who[1]))
    };
    let a1 = names(&p, &["ax", "bt", "cz", "dy"]);
    let a2 = names(&p, &["ay", "dz", "ct", "bx"]);
    let table = match (shared(ac), shared(bd)) {
        (None, None) => Some([a1.clone(), a2, a1]),
        (Some(s), Some(t)) if s == t => {
            let k = 3 - s.0 - s.1;
            let mut t: [Vec<usize>; 3] = Default::default();
            t[s.0] = names(&p, &["xz", "yt"]);
            t[s.1] = names(&p, &["xz", "yt"]);
            t[k] = a1;
            Some(t)
        }
        (Some((i, j)), None) => {
            let k = 3 - i - j;
            let mut t: [Vec<usize>; 3] = Default::default();
            t[i] = names(&p, &["yt", "xb", "dz"]);
            t[j] = names(&p, &["bt", "xz", "dy"]);
            t[k] = a1;
            Some(t)
        }
        (Some((i0, j0)), Some(other)) => {
            // the one sharing both replacement edges plays index 2
            let (i, j) = if other.0 == j0 || other.1 == j0 { (i0, j0) } else { (j0, i0) };
            let k = 3 - i - j;
            let mut t: [Vec<usize>; 3] = Default::default();
            t[i] = names(&p, &["yt", "xb", "dz"]);
            t[j] = names(&p, &["xz", "yt"]);
            t[k] = names(&p, &["ay", "xz", "ct"]);
            Some(t)
        }
        (None, Some(_)) => None,
    };
    lift_with(r, &p, ps, sides, table)
}

/// Three perfect matchings of the original graph with empty intersection,
/// from such a triple of the graph with Petersen minus a vertex contracted.
pub fn lift_pmv(r: &ReductionResult, ps: [&PerfectMatching; 3]) -> Result<Lifted, ReductionError> {
    if r.kind != PatternKind::PetersenMinusVertex {
        return Err(ReductionError::InvalidEmbedding("not a Petersen-minus-vertex reduction".into()));
    }
    check_triple(&r.reduced, ps)?;
    let p = petersen_minus_vertex_pattern();
    let emb = &r.back_map.embedding;
    let tables: [([&str; 4], [&str; 4]); 3] = [
        (["bt", "cy", "du", "ez"], ["tu", "bc", "yz", "ed"]),
        (["cy", "xu", "de", "zt"], ["cd", "ut", "ez", "xy"]),
        (["cd", "bt", "zy", "xu"], ["du", "xy", "zt", "bc"]),
    ];
    let kind: Vec<usize> = ps
        .iter()
        .map(|m| r.added_edges.iter().position(|&e| m.contains(e)).expect("v is covered once"))
        .collect();
    let sides = [0, 1, 2].map(|i| {
        let (m, mp) = &tables[kind[i]];
        LiftSide { forced: EdgeSet::from_ids([emb.boundary_edges[kind[i]]]), options: vec![names(&p, m), names(&p, mp)] }
    });
    let pair = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).find(|&(i, j)| kind[i] == kind[j]);
    let pick = |i: usize, primed: bool| names(&p, if primed { &tables[kind[i]].1 } else { &tables[kind[i]].0 });
    let table = match pair {
        Some((i, j)) => {
            let mut t: [Vec<usize>; 3] = Default::default();
            t[i] = pick(i, false);
            t[j] = pick(j, true);
            let k = 3 - i - j;
            t[k] = pick(k, false);
            t
        }
        None => [pick(0, false), pick(1, false), pick(2, false)],
    };
    lift_with(r, &p, ps, sides, Some(table))
}

/// A lifted triple. `via_table` is false when the case table did not apply
/// and the completion search supplied the triple instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifted {
    pub matchings: [PerfectMatching; 3],
    pub via_table: bool,
}

/// One connected component with its original labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: CubicGraph,
    pub vertices: Vec<VertexId>,
    /// Original edge of each component edge.
    pub edges: Vec<EdgeId>,
}

pub fn split_components(g: &CubicGraph) -> Vec<Component> {
    let (comp, count) = components(g, &EdgeSet::new());
    (0..count)
        .map(|c| {
            let vertices: Vec<VertexId> = (0..g.order()).filter(|&v| comp[v] == c).collect();
            let mut local = vec![usize::MAX; g.order()];
            for (i, &v) in vertices.iter().enumerate() {
                local[v] = i;
            }
            let orig: Vec<EdgeId> = (0..g.size()).filter(|&e| comp[g.endpoints(e).0] == c).collect();
            let list: Vec<_> = orig.iter().map(|&e| (local[g.endpoints(e).0], local[g.endpoints(e).1])).collect();
            let (graph, ids) = CubicGraph::with_edge_map(vertices.len(), &list).expect("components of cubic graphs are cubic");
            let mut edges = vec![0; orig.len()];
            for (i, &id) in ids.iter().enumerate() {
                edges[id] = orig[i];
            }
            Component { graph, vertices, edges }
        })
        .collect()
}

/// Unites per-component triples into a triple of the whole graph.
pub fn merge_component_triples(g: &CubicGraph, parts: &[(Component, [PerfectMatching; 3])]) -> [PerfectMatching; 3] {
    let mut ms = [EdgeSet::new(), EdgeSet::new(), EdgeSet::new()];
    for (c, triple) in parts {
        for (m, t) in ms.iter_mut().zip(triple) {
            for e in t.iter() {
                m.insert(c.edges[e]);
            }
        }
    }
    ms.map(|m| PerfectMatching::new(g, m).expect("components cover the graph"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ShortCycle { vertices: Vec<VertexId> },
    Embedding(Embedding),
    Order { vertices: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub pass: bool,
    /// What violates the condition, when it fails.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub order: usize,
    pub conditions: Vec<Condition>,
    /// Some condition fails, so `g` cannot be a smallest counterexample.
    pub certified_non_minimal: bool,
}

pub const MIN_COUNTEREXAMPLE_ORDER: usize = 32;

pub fn minimality_report(g: &CubicGraph) -> MinimalityReport {
    let short = shortest_cycle(g).filter(|c| c.len() < 5);
    let mut conditions = vec![Condition {
        name: "girth_at_least_5",
        pass: short.is_none(),
        witness: short.map(|c| Witness::ShortCycle { vertices: c.vertices().to_vec() }),
    }];
    for (name, emb) in [("no_g8_subgraph", find_g8(g)), ("no_petersen_minus_vertex", find_petersen_minus_vertex(g))] {
        conditions.push(Condition { name, pass: emb.is_none(), witness: emb.map(Witness::Embedding) });
    }
    let big = g.order() >= MIN_COUNTEREXAMPLE_ORDER;
    conditions.push(Condition {
        name: "order_at_least_32",
        pass: big,
        witness: (!big).then_some(Witness::Order { vertices: g.order() }),
    });
    let certified_non_minimal = conditions.iter().any(|c| !c.pass);
    MinimalityReport { order: g.order(), conditions, certified_non_minimal }
}

#[cfg(test)]
mod tests;
