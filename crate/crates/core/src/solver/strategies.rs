//! Constructions that turn the shape of one 2-factor into a certificate.

use super::{checked, from_balanced_pair, FRCertificate, SolverError, Strategy, Trail};
use crate::balanced::{find_disjoint_balanced_triples, is_balanced, BalancedError, BalancedMatching, ColouredCycle};
use crate::graph::{is_bipartite_subgraph, shortest_path_between, CubicGraph, EdgeId, EdgeSet};
use crate::matching::{pm_avoiding, PerfectMatching, TwoFactor};
use crate::structures::{balanced_pair_from_partition, find_partition_with_budget, StructureError};

/// M, a witness for the balanced set `a`, and a matching avoiding `a`.
fn via_avoidance(
    g: &CubicGraph,
    m: &PerfectMatching,
    a: EdgeSet,
    strategy: Strategy,
) -> Result<Option<FRCertificate>, SolverError> {
    let Some(w) = is_balanced(g, m, &a)? else {
        log::debug!("{strategy:?}: {:?} is not balanced", a.to_vec());
        return Ok(None);
    };
    let m3 = pm_avoiding(g, &a)?;
    let trail = Trail::Balanced { a: a.to_vec() };
    Ok(checked(g, FRCertificate { matchings: [m.clone(), w, m3], strategy, trail }))
}

fn odd_pair(f: &TwoFactor) -> Result<(usize, usize), SolverError> {
    match f.odd_cycle_ids() {
        &[a, b] => Ok((a, b)),
        other => Err(SolverError::WrongOddness { expected: 2, found: other.len() }),
    }
}

/// Two odd cycles at distance 1 or 3.
pub fn strategy_oddness2_close(
    g: &CubicGraph,
    m: &PerfectMatching,
    f: &TwoFactor,
) -> Result<Option<FRCertificate>, SolverError> {
    let (c1, c2) = odd_pair(f)?;
    let (x, y) = (f.cycles()[c1].vertices(), f.cycles()[c2].vertices());
    let Some((_, edges)) = shortest_path_between(g, x, y)? else {
        return Ok(None);
    };
    let a: EdgeSet = match edges.len() {
        1 => edges.iter().copied().collect(),
        3 => [edges[0], edges[2]].into_iter().collect(),
        d => {
            if d == 2 {
                log::warn!("odd cycles at distance 2: impossible for a 2-factor");
            }
            return Ok(None);
        }
    };
    if !a.is_subset(m.edges()) {
        return Ok(None);
    }
    via_avoidance(g, m, a, Strategy::Oddness2Close)
}

/// Two odd cycles and one even cycle C3 inducing a near-bipartite graph:
/// an M-edge from each odd cycle landing on C3 at opposite parity.
pub fn strategy_oddness2_near_bipartite(
    g: &CubicGraph,
    m: &PerfectMatching,
    f: &TwoFactor,
) -> Result<Option<FRCertificate>, SolverError> {
    if f.cycles().len() != 3 || f.odd_count() != 2 {
        return Err(SolverError::WrongShape("needs two odd cycles and one even cycle".into()));
    }
    let (c1, c2) = odd_pair(f)?;
    let c3 = 3 - c1 - c2;
    let even = &f.cycles()[c3];
    let of = f.cycle_of(g.order());
    let induced: Vec<EdgeId> = (0..g.size())
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            of[u] == c3 && of[v] == c3
        })
        .collect();
    let near = is_bipartite_subgraph(g, &induced)
        || induced.iter().any(|&e| {
            let rest: Vec<EdgeId> = induced.iter().copied().filter(|&x| x != e).collect();
            is_bipartite_subgraph(g, &rest)
        });
    if !near {
        return Ok(None);
    }
    let toward = |target: usize| -> Vec<(usize, EdgeId)> {
        even.vertices()
            .iter()
            .enumerate()
            .filter(|&(_, &v)| of[m.mate(g, v)] == target)
            .map(|(i, &v)| (i, m.mate_edge(g, v)))
            .collect()
    };
    let (to1, to2) = (toward(c1), toward(c2));
    for &(i, e) in &to1 {
        if let Some(&(_, f2)) = to2.iter().find(|(j, _)| (i + j) % 2 == 1) {
            return via_avoidance(g, m, EdgeSet::from_ids([e, f2]), Strategy::Oddness2NearBipartite);
        }
    }
    Ok(None)
}

/// Four odd cycles that pair up along direct edges.
pub fn strategy_oddness4_paired(
    g: &CubicGraph,
    m: &PerfectMatching,
    f: &TwoFactor,
) -> Result<Option<FRCertificate>, SolverError> {
    let odd = f.odd_cycle_ids();
    if odd.len() != 4 {
        return Err(SolverError::WrongOddness { expected: 4, found: odd.len() });
    }
    let of = f.cycle_of(g.order());
    let joining = |a: usize, b: usize| {
        m.iter().find(|&e| {
            let (u, v) = g.endpoints(e);
            (of[u], of[v]) == (a, b) || (of[u], of[v]) == (b, a)
        })
    };
    let [o0, o1, o2, o3] = [odd[0], odd[1], odd[2], odd[3]];
    for ((a, b), (c, d)) in [((o0, o1), (o2, o3)), ((o0, o2), (o1, o3)), ((o0, o3), (o1, o2))] {
        if let (Some(e1), Some(e2)) = (joining(a, b), joining(c, d)) {
            if let Some(cert) = via_avoidance(g, m, EdgeSet::from_ids([e1, e2]), Strategy::Oddness4Paired)? {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// Exactly four chordless odd cycles, one of which receives every M-edge
/// of the other three.
pub fn strategy_four_chordless(
    g: &CubicGraph,
    m: &PerfectMatching,
    f: &TwoFactor,
) -> Result<Option<FRCertificate>, SolverError> {
    if f.cycles().len() != 4 || f.odd_count() != 4 {
        return Err(SolverError::WrongShape("needs exactly four cycles, all odd".into()));
    }
    let of = f.cycle_of(g.order());
    if m.iter().any(|e| {
        let (u, v) = g.endpoints(e);
        of[u] == of[v]
    }) {
        return Err(SolverError::WrongShape("a cycle has a chord".into()));
    }
    for (c, centre) in f.cycles().iter().enumerate() {
        let others: Vec<usize> = (0..4).filter(|&x| x != c).collect();
        let star = others.iter().all(|&o| f.cycles()[o].vertices().iter().all(|&v| of[m.mate(g, v)] == c));
        if !star {
            continue;
        }
        let colours: Vec<u8> = centre
            .vertices()
            .iter()
            .map(|&v| others.iter().position(|&o| o == of[m.mate(g, v)]).unwrap() as u8 + 1)
            .collect();
        let cc = ColouredCycle::new(centre.vertices().to_vec(), colours)?;
        let (t, t2) = match find_disjoint_balanced_triples(&cc) {
            Ok(p) => p,
            Err(BalancedError::NotGoodOddCycle) => continue,
            Err(e) => return Err(e.into()),
        };
        let edges = |pos: [usize; 3]| -> EdgeSet { pos.iter().map(|&p| m.mate_edge(g, cc.vertex(p))).collect() };
        let (a, b) = (edges(t.0), edges(t2.0));
        let (Some(wa), Some(wb)) = (is_balanced(g, m, &a)?, is_balanced(g, m, &b)?) else {
            log::warn!("star triples on cycle {c} are not balanced");
            continue;
        };
        let ba = BalancedMatching { m: m.clone(), a, witness: wa };
        let bb = BalancedMatching { m: m.clone(), a: b, witness: wb };
        let mut cert = from_balanced_pair(g, m, &ba, &bb)?;
        cert.strategy = Strategy::FourChordless;
        return Ok(checked(g, cert));
    }
    Ok(None)
}

/// A partition into good rings, good stars and even cycles.
pub fn strategy_rings_stars(
    g: &CubicGraph,
    m: &PerfectMatching,
    f: &TwoFactor,
    budget: u64,
) -> Result<Option<FRCertificate>, SolverError> {
    if f.odd_count() == 0 {
        return Ok(None);
    }
    let Some(part) = find_partition_with_budget(g, m, f, budget)? else {
        return Ok(None);
    };
    let (a, b) = match balanced_pair_from_partition(g, m, &part) {
        Ok(pair) => pair,
        Err(StructureError::WitnessSearchFailed(msg)) => {
            log::error!("partition gave an unbalanced side: {msg}");
            return Ok(None);
        }
        Err(e) => return Err(e.into()),
    };
    let mut cert = from_balanced_pair(g, m, &a, &b)?;
    cert.strategy = Strategy::RingsStars;
    if let Trail::Pair { rings, stars, .. } = &mut cert.trail {
        *rings = Some(part.rings.len());
        *stars = Some(part.stars.len());
    }
    Ok(checked(g, cert))
}
