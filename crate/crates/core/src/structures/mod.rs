//! Good paths, good rings and good stars over the 2-factor G − M, and the
//! pair of disjoint balanced M-matchings they determine.

mod search;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::balanced::{find_disjoint_balanced_triples, is_balanced, BalancedError, BalancedMatching, ColouredCycle};
use crate::graph::{CubicGraph, Cycle, EdgeId, EdgeSet};
use crate::matching::{two_factor, PerfectMatching, TwoFactor};

pub use search::{find_partition, find_partition_with_budget, rings_of_length_two, DEFAULT_PARTITION_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("partition search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),
    #[error("no balanced witness: {0}")]
    WitnessSearchFailed(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(transparent)]
    Balanced(#[from] BalancedError),
}

/// Cycles C_0..C_k where consecutive cycles are joined by the M-edge
/// `junction_edges[i]`. Only the end cycles are odd, and each interior even
/// cycle is entered and left at positions of opposite parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPath {
    pub cycles: Vec<Cycle>,
    pub junction_edges: Vec<EdgeId>,
}

impl GoodPath {
    /// The cycle naming the index of this path's junction edges.
    pub fn index_cycle(&self) -> &Cycle {
        &self.cycles[0]
    }

    fn interior(&self) -> &[Cycle] {
        &self.cycles[1..self.cycles.len() - 1]
    }
}

/// Odd cycles C_0..C_{2p−1}; `paths[i]` joins C_i to C_{i+1 mod 2p}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodRing {
    pub odd_cycles: Vec<Cycle>,
    pub paths: Vec<GoodPath>,
    pub even_cycles: Vec<Cycle>,
}

impl GoodRing {
    /// Junction edges on paths of even index.
    pub fn even_index_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.paths.iter().step_by(2).flat_map(|p| p.junction_edges.iter().copied())
    }

    pub fn odd_index_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.paths.iter().skip(1).step_by(2).flat_map(|p| p.junction_edges.iter().copied())
    }
}

/// A chordless centre of length ≥ 7 whose M-neighbours lie on exactly three
/// leaves, each reached at least twice. `center_colouring[i]` is 1, 2 or 3
/// naming the leaf met from position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodStar {
    pub center: Cycle,
    pub leaves: [Cycle; 3],
    pub center_colouring: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorPartition {
    pub rings: Vec<GoodRing>,
    pub stars: Vec<GoodStar>,
    pub free_even_cycles: Vec<Cycle>,
}

fn invalid(msg: impl Into<String>) -> StructureError {
    StructureError::InvalidPartition(msg.into())
}

/// Lookup of a cycle's index in the 2-factor.
struct Index<'a> {
    f: &'a TwoFactor,
    of: Vec<usize>,
}

impl<'a> Index<'a> {
    fn new(g: &CubicGraph, f: &'a TwoFactor) -> Self {
        Index { f, of: f.cycle_of(g.order()) }
    }

    fn id(&self, c: &Cycle) -> Result<usize, StructureError> {
        let id = c.vertices().first().map(|&v| self.of[v]).ok_or_else(|| invalid("empty cycle"))?;
        if self.f.cycles()[id] != *c {
            return Err(invalid("cycle is not a cycle of the 2-factor"));
        }
        Ok(id)
    }
}

fn joins(g: &CubicGraph, m: &PerfectMatching, e: EdgeId, a: &Cycle, b: &Cycle) -> Option<(usize, usize)> {
    if !m.contains(e) {
        return None;
    }
    let (u, v) = g.endpoints(e);
    match (a.position(u), b.position(v), a.position(v), b.position(u)) {
        (Some(p), Some(q), _, _) => Some((p, q)),
        (_, _, Some(p), Some(q)) => Some((p, q)),
        _ => None,
    }
}

impl GoodPath {
    fn validate(&self, g: &CubicGraph, m: &PerfectMatching) -> Result<(), StructureError> {
        let k = self.cycles.len();
        if k < 2 || self.junction_edges.len() != k - 1 {
            return Err(invalid("a good path needs k + 1 cycles and k junction edges"));
        }
        if !self.cycles[0].is_odd() || !self.cycles[k - 1].is_odd() || self.interior().iter().any(Cycle::is_odd) {
            return Err(invalid("only the end cycles of a good path may be odd"));
        }
        let mut attach = vec![Vec::new(); k];
        for (i, &e) in self.junction_edges.iter().enumerate() {
            let (p, q) = joins(g, m, e, &self.cycles[i], &self.cycles[i + 1])
                .ok_or_else(|| invalid(format!("edge {e} does not join consecutive path cycles")))?;
            attach[i].push(p);
            attach[i + 1].push(q);
        }
        for (i, at) in attach.iter().enumerate().take(k - 1).skip(1) {
            if (at[0] + at[1]) % 2 == 0 {
                return Err(invalid(format!("junction edges cut an even arc on interior cycle {i}")));
            }
        }
        Ok(())
    }
}

impl GoodRing {
    fn validate(&self, g: &CubicGraph, m: &PerfectMatching) -> Result<(), StructureError> {
        let n = self.odd_cycles.len();
        if n < 2 || n % 2 == 1 || self.paths.len() != n {
            return Err(invalid("a good ring needs an even number ≥ 2 of odd cycles, one path each"));
        }
        let mut evens = Vec::new();
        let mut edges = BTreeSet::new();
        for (i, p) in self.paths.iter().enumerate() {
            p.validate(g, m)?;
            if p.cycles[0] != self.odd_cycles[i] || *p.cycles.last().unwrap() != self.odd_cycles[(i + 1) % n] {
                return Err(invalid(format!("path {i} does not join C_{i} to C_{}", (i + 1) % n)));
            }
            evens.extend(p.interior().iter().cloned());
            for &e in &p.junction_edges {
                if !edges.insert(e) {
                    return Err(invalid(format!("junction edge {e} is used twice")));
                }
            }
        }
        let mut listed = self.even_cycles.clone();
        listed.sort_by_key(|c| c.vertices()[0]);
        evens.sort_by_key(|c| c.vertices()[0]);
        if listed != evens || evens.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("even cycles of the ring must be exactly those of its paths, each once"));
        }
        Ok(())
    }
}

impl GoodStar {
    fn validate(&self, g: &CubicGraph, m: &PerfectMatching) -> Result<(), StructureError> {
        let c = &self.center;
        if c.len() < 7 {
            return Err(invalid("star centre is shorter than 7"));
        }
        let on_center: BTreeSet<EdgeId> = c.edges().iter().copied().collect();
        let mut counts = [0usize; 3];
        if self.center_colouring.len() != c.len() {
            return Err(invalid("one colour per centre vertex required"));
        }
        for (i, &v) in c.vertices().iter().enumerate() {
            for &e in g.incident(v) {
                if !on_center.contains(&e) && c.position(g.other_end(e, v)).is_some() {
                    return Err(invalid("star centre has a chord"));
                }
            }
            let w = m.mate(g, v);
            let leaf = self.leaves.iter().position(|l| l.position(w).is_some());
            match leaf {
                Some(l) if self.center_colouring[i] as usize == l + 1 => counts[l] += 1,
                Some(_) => return Err(invalid("centre colouring disagrees with the leaves")),
                None => return Err(invalid("star centre has a neighbour outside the star")),
            }
        }
        if counts.iter().any(|&k| k < 2) {
            return Err(invalid("star centre meets some leaf fewer than twice"));
        }
        for (i, a) in self.leaves.iter().enumerate() {
            for b in &self.leaves[i + 1..] {
                if a == b {
                    return Err(invalid("star leaves must be distinct"));
                }
                if a.vertices().iter().any(|&v| g.neighbours(v).any(|w| b.position(w).is_some())) {
                    return Err(invalid("two star leaves are adjacent"));
                }
            }
        }
        Ok(())
    }
}

impl FactorPartition {
    /// Checks every axiom against the 2-factor of `m`.
    pub fn validate(&self, g: &CubicGraph, m: &PerfectMatching) -> Result<(), StructureError> {
        let f = two_factor(g, m).map_err(|e| StructureError::PreconditionFailed(e.to_string()))?;
        let index = Index::new(g, &f);
        let mut seen = vec![false; f.cycles().len()];
        let mut mark = |c: &Cycle| -> Result<(), StructureError> {
            let id = index.id(c)?;
            if std::mem::replace(&mut seen[id], true) {
                return Err(invalid(format!("cycle {id} appears twice")));
            }
            Ok(())
        };
        for r in &self.rings {
            r.validate(g, m)?;
            r.odd_cycles.iter().chain(&r.even_cycles).try_for_each(&mut mark)?;
        }
        for s in &self.stars {
            s.validate(g, m)?;
            std::iter::once(&s.center).chain(&s.leaves).try_for_each(&mut mark)?;
        }
        for c in &self.free_even_cycles {
            if c.is_odd() {
                return Err(invalid("free cycles must be even"));
            }
            mark(c)?;
        }
        if let Some(id) = seen.iter().position(|&s| !s) {
            return Err(invalid(format!("cycle {id} is not covered")));
        }
        Ok(())
    }

    /// Edge sets A and B: ring junction edges split by index parity, and per
    /// star the M-edges at two disjoint rainbow balanced triples of its centre.
    pub fn edge_sets(&self, g: &CubicGraph, m: &PerfectMatching) -> Result<(EdgeSet, EdgeSet), StructureError> {
        let mut a: EdgeSet = self.rings.iter().flat_map(GoodRing::even_index_edges).collect();
        let mut b: EdgeSet = self.rings.iter().flat_map(GoodRing::odd_index_edges).collect();
        for s in &self.stars {
            let cc = ColouredCycle::new(s.center.vertices().to_vec(), s.center_colouring.clone())?;
            let (t, t2) = find_disjoint_balanced_triples(&cc)?;
            for v in t.vertices(&cc) {
                a.insert(m.mate_edge(g, v));
            }
            for v in t2.vertices(&cc) {
                b.insert(m.mate_edge(g, v));
            }
        }
        Ok((a, b))
    }
}

/// Two disjoint balanced M-matchings read off a valid partition.
pub fn balanced_pair_from_partition(
    g: &CubicGraph,
    m: &PerfectMatching,
    part: &FactorPartition,
) -> Result<(BalancedMatching, BalancedMatching), StructureError> {
    if part.rings.is_empty() && part.stars.is_empty() {
        return Err(StructureError::PreconditionFailed("partition has no odd cycles".into()));
    }
    let (a, b) = part.edge_sets(g, m)?;
    let witness = |set: EdgeSet, name: &str| {
        is_balanced(g, m, &set)?
            .map(|w| BalancedMatching { m: m.clone(), a: set, witness: w })
            .ok_or_else(|| StructureError::WitnessSearchFailed(format!("{name} is not balanced")))
    };
    Ok((witness(a, "A")?, witness(b, "B")?))
}
