//! Backtracking search for a partition of the 2-factor into good rings,
//! good stars and even cycles.

use std::collections::BTreeMap;

use super::{FactorPartition, GoodPath, GoodRing, GoodStar, StructureError};
use crate::graph::{CubicGraph, EdgeId, VertexId};
use crate::matching::{PerfectMatching, TwoFactor};

pub const DEFAULT_PARTITION_BUDGET: u64 = 10_000_000;

/// Pairs the odd cycles so that each pair is joined by at least two M-edges,
/// giving rings of length 2. All even cycles are left free.
pub fn rings_of_length_two(g: &CubicGraph, m: &PerfectMatching, f: &TwoFactor) -> Option<FactorPartition> {
    let of = f.cycle_of(g.order());
    let mut between: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
    for e in m.iter() {
        let (u, v) = g.endpoints(e);
        let (a, b) = (of[u].min(of[v]), of[u].max(of[v]));
        if a != b && f.cycles()[a].is_odd() && f.cycles()[b].is_odd() {
            between.entry((a, b)).or_default().push(e);
        }
    }
    let odd = f.odd_cycle_ids();
    let mut paired = vec![false; f.cycles().len()];
    let mut pairs = Vec::new();

    fn rec(
        odd: &[usize],
        between: &BTreeMap<(usize, usize), Vec<EdgeId>>,
        paired: &mut [bool],
        pairs: &mut Vec<(usize, usize)>,
    ) -> bool {
        let Some(&a) = odd.iter().find(|&&c| !paired[c]) else {
            return true;
        };
        paired[a] = true;
        for &b in odd {
            if paired[b] || between.get(&(a.min(b), a.max(b))).is_none_or(|es| es.len() < 2) {
                continue;
            }
            paired[b] = true;
            pairs.push((a, b));
            if rec(odd, between, paired, pairs) {
                return true;
            }
            pairs.pop();
            paired[b] = false;
        }
        paired[a] = false;
        false
    }

    if !rec(odd, &between, &mut paired, &mut pairs) {
        return None;
    }
    let cy = |i: usize| f.cycles()[i].clone();
    let rings = pairs
        .into_iter()
        .map(|(a, b)| {
            let es = &between[&(a.min(b), a.max(b))];
            GoodRing {
                odd_cycles: vec![cy(a), cy(b)],
                paths: vec![
                    GoodPath { cycles: vec![cy(a), cy(b)], junction_edges: vec![es[0]] },
                    GoodPath { cycles: vec![cy(b), cy(a)], junction_edges: vec![es[1]] },
                ],
                even_cycles: Vec::new(),
            }
        })
        .collect();
    let free_even_cycles = f.cycles().iter().filter(|c| !c.is_odd()).cloned().collect();
    Some(FactorPartition { rings, stars: Vec::new(), free_even_cycles })
}

pub fn find_partition(
    g: &CubicGraph,
    m: &PerfectMatching,
    f: &TwoFactor,
) -> Result<Option<FactorPartition>, StructureError> {
    find_partition_with_budget(g, m, f, DEFAULT_PARTITION_BUDGET)
}

/// Tries rings of length 2 first, then a full search over ring, star-centre
/// and star-leaf roles for the lowest unplaced odd cycle. Star leaves are
/// restricted to odd cycles since an even leaf is met once by each side and
/// can never be balanced. A budget of 0 allows no work at all.
pub fn find_partition_with_budget(
    g: &CubicGraph,
    m: &PerfectMatching,
    f: &TwoFactor,
    budget: u64,
) -> Result<Option<FactorPartition>, StructureError> {
    if budget == 0 {
        return Err(StructureError::BudgetExceeded(0));
    }
    if let Some(p) = rings_of_length_two(g, m, f) {
        return Ok(Some(p));
    }
    let mut s = Search::new(g, m, f, budget);
    if !s.place()? {
        return Ok(None);
    }
    Ok(Some(s.build()))
}

#[derive(Clone)]
struct RingIds {
    odd: Vec<usize>,
    paths: Vec<(Vec<usize>, Vec<EdgeId>)>,
}

struct Search<'a> {
    g: &'a CubicGraph,
    f: &'a TwoFactor,
    of: Vec<usize>,
    pos: Vec<usize>,
    mate: Vec<(EdgeId, VertexId)>,
    used: Vec<bool>,
    used_edge: Vec<bool>,
    rings: Vec<RingIds>,
    stars: Vec<(usize, [usize; 3], Vec<u8>)>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a CubicGraph, m: &PerfectMatching, f: &'a TwoFactor, budget: u64) -> Self {
        let mut pos = vec![0; g.order()];
        for c in f.cycles() {
            for (i, &v) in c.vertices().iter().enumerate() {
                pos[v] = i;
            }
        }
        let mate = (0..g.order())
            .map(|v| {
                let e = m.mate_edge(g, v);
                (e, g.other_end(e, v))
            })
            .collect();
        Search {
            g,
            f,
            of: f.cycle_of(g.order()),
            pos,
            mate,
            used: vec![false; f.cycles().len()],
            used_edge: vec![false; g.size()],
            rings: Vec::new(),
            stars: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn tick(&mut self) -> Result<(), StructureError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(StructureError::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    fn is_odd(&self, c: usize) -> bool {
        self.f.cycles()[c].is_odd()
    }

    /// Leaves and centre colouring if `c` can centre a star on unplaced cycles.
    fn star_at(&self, c: usize) -> Option<([usize; 3], Vec<u8>)> {
        let cyc = &self.f.cycles()[c];
        if self.used[c] || !cyc.is_odd() || cyc.len() < 7 {
            return None;
        }
        let mut leaves: Vec<usize> = Vec::new();
        let mut counts = [0usize; 3];
        for &v in cyc.vertices() {
            let on_cycle = |w: VertexId| self.of[w] == c;
            let cycle_edges = cyc.edges();
            if self.g.incident(v).iter().any(|&e| !cycle_edges.contains(&e) && on_cycle(self.g.other_end(e, v))) {
                return None;
            }
            let l = self.of[self.mate[v].1];
            let k = match leaves.iter().position(|&x| x == l) {
                Some(k) => k,
                None if leaves.len() < 3 => {
                    leaves.push(l);
                    leaves.len() - 1
                }
                None => return None,
            };
            counts[k] += 1;
        }
        if leaves.len() < 3 || counts.iter().any(|&k| k < 2) {
            return None;
        }
        if leaves.iter().any(|&l| self.used[l] || !self.is_odd(l)) {
            return None;
        }
        for (i, &a) in leaves.iter().enumerate() {
            for &b in &leaves[i + 1..] {
                let adjacent = self.f.cycles()[a]
                    .vertices()
                    .iter()
                    .any(|&v| self.g.neighbours(v).any(|w| self.of[w] == b));
                if adjacent {
                    return None;
                }
            }
        }
        let mut sorted = leaves.clone();
        sorted.sort_unstable();
        let colouring = cyc
            .vertices()
            .iter()
            .map(|&v| sorted.iter().position(|&l| l == self.of[self.mate[v].1]).unwrap() as u8 + 1)
            .collect();
        Some(([sorted[0], sorted[1], sorted[2]], colouring))
    }

    fn try_star(&mut self, c: usize, leaves: [usize; 3], colouring: Vec<u8>) -> Result<bool, StructureError> {
        for x in std::iter::once(c).chain(leaves) {
            self.used[x] = true;
        }
        self.stars.push((c, leaves, colouring));
        if self.place()? {
            return Ok(true);
        }
        self.stars.pop();
        for x in std::iter::once(c).chain(leaves) {
            self.used[x] = false;
        }
        Ok(false)
    }

    /// Places the lowest unplaced odd cycle; true once every odd cycle is placed.
    fn place(&mut self) -> Result<bool, StructureError> {
        self.tick()?;
        let Some(c) = (0..self.used.len()).find(|&i| !self.used[i] && self.is_odd(i)) else {
            return Ok(true);
        };
        if let Some((leaves, colouring)) = self.star_at(c) {
            if self.try_star(c, leaves, colouring)? {
                return Ok(true);
            }
        }
        let mut centres: Vec<usize> = self.f.cycles()[c].vertices().iter().map(|&v| self.of[self.mate[v].1]).collect();
        centres.sort_unstable();
        centres.dedup();
        for d in centres {
            if d == c {
                continue;
            }
            if let Some((leaves, colouring)) = self.star_at(d) {
                if leaves.contains(&c) && self.try_star(d, leaves, colouring)? {
                    return Ok(true);
                }
            }
        }
        self.used[c] = true;
        let mut ring = RingIds { odd: vec![c], paths: Vec::new() };
        if self.extend_ring(c, &mut ring)? {
            return Ok(true);
        }
        self.used[c] = false;
        Ok(false)
    }

    /// Starts a good path of index `cur` along each unused M-edge leaving it.
    fn extend_ring(&mut self, cur: usize, ring: &mut RingIds) -> Result<bool, StructureError> {
        self.tick()?;
        let vs = self.f.cycles()[cur].vertices().to_vec();
        for v in vs {
            let (e, w) = self.mate[v];
            let x = self.of[w];
            if self.used_edge[e] || x == cur {
                continue;
            }
            self.used_edge[e] = true;
            let mut path = (vec![cur], vec![e]);
            let done = self.walk(x, w, &mut path, ring)?;
            self.used_edge[e] = false;
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Continues a path that has just entered cycle `x` at vertex `entry`.
    fn walk(
        &mut self,
        x: usize,
        entry: VertexId,
        path: &mut (Vec<usize>, Vec<EdgeId>),
        ring: &mut RingIds,
    ) -> Result<bool, StructureError> {
        self.tick()?;
        if self.is_odd(x) {
            path.0.push(x);
            let done = if x == ring.odd[0] {
                ring.odd.len() % 2 == 0 && {
                    ring.paths.push(path.clone());
                    self.rings.push(ring.clone());
                    let ok = self.place()?;
                    if !ok {
                        self.rings.pop();
                        ring.paths.pop();
                    }
                    ok
                }
            } else if !self.used[x] {
                self.used[x] = true;
                ring.odd.push(x);
                ring.paths.push(path.clone());
                let ok = self.extend_ring(x, ring)?;
                if !ok {
                    ring.paths.pop();
                    ring.odd.pop();
                    self.used[x] = false;
                }
                ok
            } else {
                false
            };
            path.0.pop();
            return Ok(done);
        }
        if self.used[x] {
            return Ok(false);
        }
        self.used[x] = true;
        path.0.push(x);
        let vs = self.f.cycles()[x].vertices().to_vec();
        for v in vs {
            if (self.pos[v] + self.pos[entry]) % 2 == 0 {
                continue;
            }
            let (e, w) = self.mate[v];
            let y = self.of[w];
            if y == x || self.used_edge[e] {
                continue;
            }
            self.used_edge[e] = true;
            path.1.push(e);
            let done = self.walk(y, w, path, ring)?;
            path.1.pop();
            self.used_edge[e] = false;
            if done {
                return Ok(true);
            }
        }
        path.0.pop();
        self.used[x] = false;
        Ok(false)
    }

    fn build(&self) -> FactorPartition {
        let cy = |i: usize| self.f.cycles()[i].clone();
        let rings = self
            .rings
            .iter()
            .map(|r| {
                let paths: Vec<GoodPath> = r
                    .paths
                    .iter()
                    .map(|(cs, es)| GoodPath { cycles: cs.iter().map(|&i| cy(i)).collect(), junction_edges: es.clone() })
                    .collect();
                let even_cycles = r.paths.iter().flat_map(|(cs, _)| cs[1..cs.len() - 1].iter().map(|&i| cy(i))).collect();
                GoodRing { odd_cycles: r.odd.iter().map(|&i| cy(i)).collect(), paths, even_cycles }
            })
            .collect();
        let stars = self
            .stars
            .iter()
            .map(|(c, l, col)| GoodStar { center: cy(*c), leaves: l.map(cy), center_colouring: col.clone() })
            .collect();
        let free_even_cycles = (0..self.used.len()).filter(|&i| !self.used[i]).map(cy).collect();
        FactorPartition { rings, stars, free_even_cycles }
    }
}
