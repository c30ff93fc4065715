//! Balanced M-matchings, and balanced triples and pairs on coloured cycles.
//!
//! A ⊆ M is balanced when some perfect matching M' has M ∩ M' = A. On the
//! 2-factor G − M this is a parity condition: every vertex not touched by A
//! must be matched along its own cycle, so each cycle met by A is cut into
//! odd arcs and each cycle missed by A is even.

mod pairs;
mod triples;

use thiserror::Error;

use crate::graph::{CubicGraph, EdgeSet, VertexId};
use crate::matching::{constrained_pm, two_factor, PerfectMatching};

pub use pairs::{find_disjoint_balanced_pairs, find_pairs_ab, second_colour};
pub use triples::{
    build_triple_table, canonical_key, find_disjoint_balanced_triples, find_disjoint_balanced_triples_with,
    oracle_disjoint_triples, rainbow_balanced_triples, render_table, TripleTables, HAND_CASES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalancedError {
    #[error("edge set is not a subset of the matching")]
    NotASubset,
    #[error("expected an odd cycle")]
    EvenCycle,
    #[error("expected an even cycle")]
    OddCycle,
    #[error("cycle colouring is not a good odd cycle")]
    NotGoodOddCycle,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid colouring: {0}")]
    InvalidColouring(String),
    #[error("no table entry for colouring {0}")]
    TableMiss(String),
}

/// A ⊆ M together with a perfect matching `witness` such that
/// M ∩ witness = A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedMatching {
    pub m: PerfectMatching,
    pub a: EdgeSet,
    pub witness: PerfectMatching,
}

/// A cycle whose positions carry colours 1, 2 or 3. Position `i` holds
/// vertex `vertices[i]`; consecutive positions are adjacent on the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredCycle {
    vertices: Vec<VertexId>,
    colours: Vec<u8>,
}

impl ColouredCycle {
    pub fn new(vertices: Vec<VertexId>, colours: Vec<u8>) -> Result<Self, BalancedError> {
        if vertices.len() != colours.len() {
            return Err(BalancedError::InvalidColouring("one colour per vertex required".into()));
        }
        if let Some(c) = colours.iter().find(|&&c| !(1..=3).contains(&c)) {
            return Err(BalancedError::InvalidColouring(format!("colour {c} outside 1..=3")));
        }
        Ok(ColouredCycle { vertices, colours })
    }

    /// A bare cycle x_0 … x_{L−1} where vertex `i` sits at position `i`.
    pub fn from_colours(colours: &[u8]) -> Result<Self, BalancedError> {
        Self::new((0..colours.len()).collect(), colours.to_vec())
    }

    /// Parses a colour string such as `"3331122"`.
    pub fn parse(s: &str) -> Result<Self, BalancedError> {
        let colours: Option<Vec<u8>> = s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect();
        Self::from_colours(&colours.ok_or_else(|| BalancedError::InvalidColouring(s.into()))?)
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colours(&self) -> &[u8] {
        &self.colours
    }

    pub fn colour(&self, pos: usize) -> u8 {
        self.colours[pos]
    }

    pub fn vertex(&self, pos: usize) -> VertexId {
        self.vertices[pos]
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// |A_1|, |A_2|, |A_3|.
    pub fn class_sizes(&self) -> [usize; 3] {
        let mut sizes = [0; 3];
        for &c in &self.colours {
            sizes[c as usize - 1] += 1;
        }
        sizes
    }

    /// Positions of colour `c`, ascending.
    pub fn class(&self, c: u8) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.colours[p] == c).collect()
    }
}

/// Three positions on an odd cycle, ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BalancedTriple(pub [usize; 3]);

/// Two positions on an even cycle, ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BalancedPair(pub [usize; 2]);

impl BalancedTriple {
    pub fn new(mut p: [usize; 3]) -> Self {
        p.sort_unstable();
        BalancedTriple(p)
    }

    pub fn vertices(&self, c: &ColouredCycle) -> [VertexId; 3] {
        self.0.map(|p| c.vertex(p))
    }

    pub fn is_disjoint(&self, other: &BalancedTriple) -> bool {
        self.0.iter().all(|p| !other.0.contains(p))
    }
}

impl BalancedPair {
    pub fn new(a: usize, b: usize) -> Self {
        BalancedPair([a.min(b), a.max(b)])
    }

    pub fn vertices(&self, c: &ColouredCycle) -> [VertexId; 2] {
        self.0.map(|p| c.vertex(p))
    }

    pub fn is_disjoint(&self, other: &BalancedPair) -> bool {
        self.0.iter().all(|p| !other.0.contains(p))
    }
}

/// Whether three distinct positions cut a cycle of length `len` into three
/// odd arcs.
pub fn is_balanced_triple(len: usize, t: &BalancedTriple) -> bool {
    let [a, b, c] = t.0;
    a < b && b < c && c < len && (b - a) % 2 == 1 && (c - b) % 2 == 1 && (len - c + a) % 2 == 1
}

/// Whether two distinct positions cut a cycle of length `len` into two odd
/// arcs.
pub fn is_balanced_pair(len: usize, p: &BalancedPair) -> bool {
    let [a, b] = p.0;
    a < b && b < len && (b - a) % 2 == 1 && (len - b + a) % 2 == 1
}

/// Length ≥ 7 and every colour class has at least two vertices.
pub fn is_good_odd_cycle(c: &ColouredCycle) -> Result<bool, BalancedError> {
    if c.len() % 2 == 0 {
        return Err(BalancedError::EvenCycle);
    }
    Ok(c.len() >= 7 && c.class_sizes().iter().all(|&s| s >= 2))
}

/// At most one colour class has fewer than two vertices.
pub fn is_good_even_cycle(c: &ColouredCycle) -> Result<bool, BalancedError> {
    if c.len() % 2 == 1 {
        return Err(BalancedError::OddCycle);
    }
    Ok(c.class_sizes().iter().filter(|&&s| s <= 1).count() <= 1)
}

/// A witness M' with M ∩ M' = A, if one exists.
pub fn is_balanced(
    g: &CubicGraph,
    m: &PerfectMatching,
    a: &EdgeSet,
) -> Result<Option<PerfectMatching>, BalancedError> {
    if !a.is_subset(m.edges()) {
        return Err(BalancedError::NotASubset);
    }
    let out = m.edges().difference(a);
    Ok(constrained_pm(g, a, &out).expect("A is a sub-matching disjoint from M \\ A"))
}

/// Parity bookkeeping for one cycle of the 2-factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDiagnostic {
    pub cycle: usize,
    pub length: usize,
    /// Positions on the cycle touched by the picked edges, ascending.
    pub hits: Vec<usize>,
    /// Arc lengths between consecutive hits, cyclically.
    pub arcs: Vec<usize>,
    pub ok: bool,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembly {
    pub balanced: Option<BalancedMatching>,
    pub diagnostics: Vec<CycleDiagnostic>,
}

impl Assembly {
    pub fn parity_ok(&self) -> bool {
        self.diagnostics.iter().all(|d| d.ok)
    }
}

/// Checks `picks` for balance and reports, cycle by cycle, whether the
/// parity condition holds.
pub fn assemble_balanced(g: &CubicGraph, m: &PerfectMatching, picks: &EdgeSet) -> Result<Assembly, BalancedError> {
    if !picks.is_subset(m.edges()) {
        return Err(BalancedError::NotASubset);
    }
    let f = two_factor(g, m).expect("M is perfect");
    let mut touched = vec![false; g.order()];
    for e in picks.iter() {
        let (u, v) = g.endpoints(e);
        touched[u] = true;
        touched[v] = true;
    }
    let diagnostics = f
        .cycles()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let hits: Vec<usize> = (0..c.len()).filter(|&p| touched[c.vertices()[p]]).collect();
            let arcs: Vec<usize> = (0..hits.len())
                .map(|k| {
                    let next = hits[(k + 1) % hits.len()];
                    (next + c.len() - hits[k] - 1) % c.len() + 1
                })
                .collect();
            let (ok, reason) = if hits.is_empty() {
                if c.is_odd() {
                    (false, Some(format!("odd cycle {i} is not met by the picks")))
                } else {
                    (true, None)
                }
            } else if let Some(k) = arcs.iter().position(|a| a % 2 == 0) {
                (false, Some(format!("cycle {i} has an even arc of length {} after position {}", arcs[k], hits[k])))
            } else {
                (true, None)
            };
            CycleDiagnostic { cycle: i, length: c.len(), hits, arcs, ok, reason }
        })
        .collect();
    let balanced = is_balanced(g, m, picks)?
        .map(|witness| BalancedMatching { m: m.clone(), a: picks.clone(), witness });
    Ok(Assembly { balanced, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate_perfect_matchings;
    use crate::named::{self, petersen_edge};

    fn spokes(p: &CubicGraph) -> PerfectMatching {
        let s: EdgeSet = ["ax", "bt", "cy", "du", "ez"].iter().map(|e| petersen_edge(p, e)).collect();
        PerfectMatching::new(p, s).unwrap()
    }

    #[test]
    fn petersen_spoke_is_balanced() {
        let p = named::petersen();
        let m = spokes(&p);
        let a = EdgeSet::from_ids([petersen_edge(&p, "ax")]);
        let w = is_balanced(&p, &m, &a).unwrap().unwrap();
        assert_eq!(w.edges().intersection(m.edges()), a);

        let asm = assemble_balanced(&p, &m, &a).unwrap();
        assert!(asm.balanced.is_some());
        assert_eq!(asm.diagnostics.len(), 2);
        for d in &asm.diagnostics {
            assert_eq!(d.hits.len(), 1);
            assert_eq!(d.arcs, vec![5]);
            assert!(d.ok);
        }
    }

    #[test]
    fn whole_matching_is_balanced() {
        for (_, g) in named::corpus() {
            for m in enumerate_perfect_matchings(&g).into_iter().take(5) {
                assert_eq!(is_balanced(&g, &m, m.edges()).unwrap(), Some(m.clone()));
            }
        }
    }

    #[test]
    fn empty_set_is_not_balanced_on_petersen() {
        let p = named::petersen();
        let all = enumerate_perfect_matchings(&p);
        for m in &all {
            for m2 in &all {
                assert!(m == m2 || !m.edges().is_disjoint(m2.edges()));
            }
            assert_eq!(is_balanced(&p, m, &EdgeSet::new()).unwrap(), None);
        }
    }

    #[test]
    fn not_a_subset() {
        let p = named::petersen();
        let m = spokes(&p);
        let bad = EdgeSet::from_ids([petersen_edge(&p, "ab")]);
        assert_eq!(is_balanced(&p, &m, &bad), Err(BalancedError::NotASubset));
    }

    #[test]
    fn untouched_odd_cycle_is_named() {
        // with no picks both 5-cycles of the spoke 2-factor stay closed
        let p = named::petersen();
        let m = spokes(&p);
        let asm = assemble_balanced(&p, &m, &EdgeSet::new()).unwrap();
        assert!(asm.balanced.is_none());
        assert!(asm.diagnostics.iter().all(|d| !d.ok && d.reason.as_ref().unwrap().contains("not met")));
    }

    #[test]
    fn even_arcs_are_reported() {
        // prism over C6: M = spokes, picks two spokes at rim positions 0 and 2
        let k = 6;
        let mut edges = Vec::new();
        for i in 0..k {
            edges.push((i, (i + 1) % k));
            edges.push((k + i, k + (i + 1) % k));
            edges.push((i, k + i));
        }
        let g = CubicGraph::new(2 * k, &edges).unwrap();
        let m = PerfectMatching::new(&g, (0..k).map(|i| g.edge_between(i, k + i).unwrap()).collect()).unwrap();
        let picks: EdgeSet = [0, 2].iter().map(|&i| g.edge_between(i, k + i).unwrap()).collect();
        let asm = assemble_balanced(&g, &m, &picks).unwrap();
        assert!(asm.balanced.is_none());
        assert!(!asm.parity_ok());
        assert!(asm.diagnostics.iter().any(|d| d.arcs.contains(&2) && !d.ok));
        assert_eq!(constrained_pm(&g, &picks, &m.edges().difference(&picks)).unwrap(), None);
    }

    #[test]
    fn parity_diagnostics_match_witness_search_on_corpus() {
        for (name, g) in named::corpus().into_iter().take(3) {
            let pms = enumerate_perfect_matchings(&g);
            for m in pms.iter().take(4) {
                let ids = m.edges().to_vec();
                for mask in 0u32..(1 << ids.len()) {
                    let picks: EdgeSet = (0..ids.len()).filter(|i| mask & (1 << i) != 0).map(|i| ids[i]).collect();
                    let asm = assemble_balanced(&g, m, &picks).unwrap();
                    assert_eq!(asm.balanced.is_some(), asm.parity_ok(), "{name} {picks:?}");
                }
            }
        }
    }

    #[test]
    fn goodness_predicates() {
        let c = |s: &str| ColouredCycle::parse(s).unwrap();
        assert!(is_good_odd_cycle(&c("1122333")).unwrap());
        assert!(!is_good_odd_cycle(&c("1222333")).unwrap());
        assert!(!is_good_odd_cycle(&c("11223")).unwrap());
        assert_eq!(is_good_odd_cycle(&c("112233")), Err(BalancedError::EvenCycle));
        assert!(is_good_even_cycle(&c("112233")).unwrap());
        assert!(!is_good_even_cycle(&c("233333")).unwrap());
        assert!(is_good_even_cycle(&c("2323")).unwrap());
        assert_eq!(is_good_even_cycle(&c("1122333")), Err(BalancedError::OddCycle));
    }

    /// Direct arc walk, independent of the parity formulas.
    fn arcs_odd(len: usize, points: &[usize]) -> bool {
        let mut on = vec![false; len];
        for &p in points {
            on[p] = true;
        }
        let start = points[0];
        let mut run = 0;
        for step in 1..=len {
            run += 1;
            if on[(start + step) % len] {
                if run % 2 == 0 {
                    return false;
                }
                run = 0;
            }
        }
        true
    }

    #[test]
    fn pair_parity_characterization() {
        for len in (4..=16).step_by(2) {
            for a in 0..len {
                for b in a + 1..len {
                    let p = BalancedPair::new(a, b);
                    assert_eq!(is_balanced_pair(len, &p), arcs_odd(len, &[a, b]));
                    assert_eq!(is_balanced_pair(len, &p), (a + b) % 2 == 1);
                }
            }
        }
    }

    #[test]
    fn triple_parity_characterization() {
        for len in (3..=13).step_by(2) {
            for a in 0..len {
                for b in a + 1..len {
                    for c in b + 1..len {
                        let t = BalancedTriple::new([a, b, c]);
                        assert_eq!(is_balanced_triple(len, &t), arcs_odd(len, &[a, b, c]));
                    }
                }
            }
        }
    }
}
