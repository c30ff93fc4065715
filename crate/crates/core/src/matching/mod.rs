//! Perfect matchings, 2-factors and oddness.

mod uniform;

use std::ops::ControlFlow;

use thiserror::Error;

use crate::graph::{components, CubicGraph, Cycle, EdgeId, EdgeSet, VertexId};

pub use uniform::{uniform_pm_family, uniform_pm_family_with_cap, UniformFamily};

/// Default limit on the number of perfect matchings an operation needing the
/// complete list will enumerate.
pub const DEFAULT_ENUM_CAP: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("forced edges conflict: {0}")]
    ConflictingConstraints(String),
    #[error("edge set is not a perfect matching")]
    NotAPerfectMatching,
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("no perfect matching avoids {0:?} in a bridgeless cubic graph")]
    LemmaViolation(Vec<EdgeId>),
    #[error("at most two edges can be avoided, got {0}")]
    AvoidSetTooLarge(usize),
    #[error("more than {0} perfect matchings")]
    EnumerationCapExceeded(usize),
    #[error("edge set is not a 3-edge cut")]
    NotACut,
}

/// A perfect matching as a set of edge identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    edges: EdgeSet,
}

impl PerfectMatching {
    pub fn new(g: &CubicGraph, edges: EdgeSet) -> Result<Self, MatchingError> {
        if g.is_perfect_matching(&edges) {
            Ok(PerfectMatching { edges })
        } else {
            Err(MatchingError::NotAPerfectMatching)
        }
    }

    pub(crate) fn new_unchecked(edges: EdgeSet) -> Self {
        PerfectMatching { edges }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter()
    }

    /// The matching partner of `v`.
    pub fn mate(&self, g: &CubicGraph, v: VertexId) -> VertexId {
        g.other_end(self.mate_edge(g, v), v)
    }

    pub fn mate_edge(&self, g: &CubicGraph, v: VertexId) -> EdgeId {
        *g.incident(v).iter().find(|&&e| self.contains(e)).expect("perfect matching covers every vertex")
    }
}

/// Backtracking over perfect matchings containing `forced_in` and avoiding
/// `forced_out`. Branches on the lowest uncovered vertex, lowest edge first.
pub fn for_each_perfect_matching<F>(
    g: &CubicGraph,
    forced_in: &EdgeSet,
    forced_out: &EdgeSet,
    mut visit: F,
) -> Result<(), MatchingError>
where
    F: FnMut(&EdgeSet) -> ControlFlow<()>,
{
    let n = g.order();
    if !g.is_matching(forced_in) {
        return Err(MatchingError::ConflictingConstraints("forced edges do not form a matching".into()));
    }
    if !forced_in.is_disjoint(forced_out) {
        return Err(MatchingError::ConflictingConstraints("an edge is both forced in and out".into()));
    }
    let mut covered = vec![false; n];
    for e in forced_in.iter() {
        let (u, v) = g.endpoints(e);
        covered[u] = true;
        covered[v] = true;
    }
    let mut current = forced_in.clone();
    let mut search = Search { g, covered, forced_out, visit: &mut visit };
    let _ = search.run(0, &mut current);
    Ok(())
}

struct Search<'a, F> {
    g: &'a CubicGraph,
    covered: Vec<bool>,
    forced_out: &'a EdgeSet,
    visit: &'a mut F,
}

impl<F: FnMut(&EdgeSet) -> ControlFlow<()>> Search<'_, F> {
    fn has_option(&self, u: VertexId) -> bool {
        self.g
            .incident(u)
            .iter()
            .any(|&e| !self.forced_out.contains(e) && !self.covered[self.g.other_end(e, u)])
    }

    fn run(&mut self, from: VertexId, current: &mut EdgeSet) -> ControlFlow<()> {
        let Some(v) = (from..self.g.order()).find(|&u| !self.covered[u]) else {
            return (self.visit)(current);
        };
        for &e in self.g.incident(v) {
            if self.forced_out.contains(e) {
                continue;
            }
            let w = self.g.other_end(e, v);
            if self.covered[w] {
                continue;
            }
            self.covered[v] = true;
            self.covered[w] = true;
            let viable = [v, w].iter().all(|&x| {
                self.g.neighbours(x).all(|y| self.covered[y] || self.has_option(y))
            });
            if viable {
                current.insert(e);
                let flow = self.run(v + 1, current);
                current.remove(e);
                if flow.is_break() {
                    self.covered[v] = false;
                    self.covered[w] = false;
                    return flow;
                }
            }
            self.covered[v] = false;
            self.covered[w] = false;
        }
        ControlFlow::Continue(())
    }
}

/// Every perfect matching, in enumeration order, up to `cap` of them.
pub fn enumerate_perfect_matchings_capped(g: &CubicGraph, cap: usize) -> Result<Vec<PerfectMatching>, MatchingError> {
    let mut all = Vec::new();
    let mut over = false;
    for_each_perfect_matching(g, &EdgeSet::new(), &EdgeSet::new(), |m| {
        if all.len() == cap {
            over = true;
            return ControlFlow::Break(());
        }
        all.push(PerfectMatching::new_unchecked(m.clone()));
        ControlFlow::Continue(())
    })?;
    if over {
        Err(MatchingError::EnumerationCapExceeded(cap))
    } else {
        Ok(all)
    }
}

/// The complete duplicate-free list of perfect matchings.
pub fn enumerate_perfect_matchings(g: &CubicGraph) -> Vec<PerfectMatching> {
    enumerate_perfect_matchings_capped(g, usize::MAX).expect("no cap")
}

/// A perfect matching containing `forced_in` and disjoint from `forced_out`.
pub fn constrained_pm(
    g: &CubicGraph,
    forced_in: &EdgeSet,
    forced_out: &EdgeSet,
) -> Result<Option<PerfectMatching>, MatchingError> {
    let mut found = None;
    for_each_perfect_matching(g, forced_in, forced_out, |m| {
        found = Some(PerfectMatching::new_unchecked(m.clone()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// A perfect matching disjoint from at most two given edges. In a
/// bridgeless cubic graph one always exists, so absence is reported as
/// [`MatchingError::LemmaViolation`].
pub fn pm_avoiding(g: &CubicGraph, avoid: &EdgeSet) -> Result<PerfectMatching, MatchingError> {
    if avoid.len() > 2 {
        return Err(MatchingError::AvoidSetTooLarge(avoid.len()));
    }
    constrained_pm(g, &EdgeSet::new(), avoid)?.ok_or_else(|| MatchingError::LemmaViolation(avoid.to_vec()))
}

/// Cycle decomposition of the complement of a perfect matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactor {
    cycles: Vec<Cycle>,
    odd: Vec<usize>,
}

impl TwoFactor {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Indices into [`TwoFactor::cycles`] of the odd cycles.
    pub fn odd_cycle_ids(&self) -> &[usize] {
        &self.odd
    }

    pub fn odd_count(&self) -> usize {
        self.odd.len()
    }

    /// For each vertex, the index of its cycle.
    pub fn cycle_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (i, c) in self.cycles.iter().enumerate() {
            for &v in c.vertices() {
                of[v] = i;
            }
        }
        of
    }
}

/// Cycles start at their lowest vertex and leave it along the lower edge
/// identifier; cycles are listed by starting vertex.
pub fn two_factor(g: &CubicGraph, m: &PerfectMatching) -> Result<TwoFactor, MatchingError> {
    if !g.is_perfect_matching(m.edges()) {
        return Err(MatchingError::NotAPerfectMatching);
    }
    let n = g.order();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut v = s;
        let mut came: Option<EdgeId> = None;
        loop {
            seen[v] = true;
            vertices.push(v);
            let e = *g
                .incident(v)
                .iter()
                .find(|&&e| !m.contains(e) && Some(e) != came)
                .expect("two non-matching edges at every vertex");
            edges.push(e);
            let w = g.other_end(e, v);
            if w == s {
                break;
            }
            came = Some(e);
            v = w;
        }
        cycles.push(Cycle::from_parts(vertices, edges));
    }
    let odd = cycles.iter().enumerate().filter(|(_, c)| c.is_odd()).map(|(i, _)| i).collect();
    Ok(TwoFactor { cycles, odd })
}

/// Minimum number of odd cycles in a 2-factor, with the first matching (in
/// enumeration order) attaining it.
pub fn oddness(g: &CubicGraph) -> Result<(usize, PerfectMatching, TwoFactor), MatchingError> {
    oddness_with_cap(g, DEFAULT_ENUM_CAP)
}

pub fn oddness_with_cap(g: &CubicGraph, cap: usize) -> Result<(usize, PerfectMatching, TwoFactor), MatchingError> {
    let mut best: Option<(usize, PerfectMatching, TwoFactor)> = None;
    let mut count = 0usize;
    let mut over = false;
    for_each_perfect_matching(g, &EdgeSet::new(), &EdgeSet::new(), |edges| {
        count += 1;
        if count > cap {
            over = true;
            return ControlFlow::Break(());
        }
        let m = PerfectMatching::new_unchecked(edges.clone());
        let f = two_factor(g, &m).expect("enumerated matchings are perfect");
        if best.as_ref().is_none_or(|b| f.odd_count() < b.0) {
            let done = f.odd_count() == 0;
            best = Some((f.odd_count(), m, f));
            if done {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    if over {
        return Err(MatchingError::EnumerationCapExceeded(cap));
    }
    best.ok_or(MatchingError::NoPerfectMatching)
}

/// For a 3-edge cut, whether no perfect matching avoids all of it. Every
/// perfect matching meets an odd cut in an odd number of edges, so this
/// holds for every genuine 3-edge cut and serves as a negative control.
pub fn three_cut_obstruction(g: &CubicGraph, cut: &EdgeSet) -> Result<bool, MatchingError> {
    if cut.len() != 3 || cut.iter().any(|e| e >= g.size()) || components(g, cut).1 < 2 {
        return Err(MatchingError::NotACut);
    }
    Ok(constrained_pm(g, &EdgeSet::new(), cut)?.is_none())
}
