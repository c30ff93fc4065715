//! Finds three perfect matchings with empty common intersection, by a
//! cascade of constructions with brute force as the last resort.

mod json;
mod strategies;

use std::ops::ControlFlow;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::balanced::{BalancedError, BalancedMatching};
use crate::graph::{find_bridges, three_edge_colouring, CubicGraph, EdgeId, EdgeSet, GraphError, VertexId};
use crate::matching::{
    enumerate_perfect_matchings_capped, for_each_perfect_matching, two_factor, MatchingError, PerfectMatching,
    DEFAULT_ENUM_CAP,
};
use crate::reductions::{
    for_each_embedding, g8_pattern, lift_g8, lift_pmv, merge_component_triples, petersen_minus_vertex_pattern,
    reduce_g8, reduce_pmv, split_components, Embedding, PatternKind, ReductionError, ReductionResult,
};
use crate::structures::{StructureError, DEFAULT_PARTITION_BUDGET};

pub use json::{certificate_json, read_certificate, reverify_json};
pub use strategies::{
    strategy_four_chordless, strategy_oddness2_close, strategy_oddness2_near_bipartite, strategy_oddness4_paired,
    strategy_rings_stars,
};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String, bridges: Vec<EdgeId> },
    #[error("timed out after {0:?}")]
    Timeout(Duration),
    #[error("more than {0} perfect matchings")]
    EnumerationCapExceeded(usize),
    #[error("no triple exists among all {pm_count} perfect matchings")]
    Exhausted { pm_count: usize, persisted: Option<PathBuf> },
    #[error("no balanced-matching construction applied")]
    NotFound,
    #[error("balanced matchings share edges {0:?}")]
    NotDisjoint(Vec<EdgeId>),
    #[error("expected oddness {expected}, found {found}")]
    WrongOddness { expected: usize, found: usize },
    #[error("wrong 2-factor shape: {0}")]
    WrongShape(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Balanced(#[from] BalancedError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("persisting counterexample: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Matching(MatchingError),
}

impl From<MatchingError> for SolverError {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::EnumerationCapExceeded(c) => SolverError::EnumerationCapExceeded(c),
            e => SolverError::Matching(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    #[serde(rename = "3-edge-colouring")]
    Colouring,
    #[serde(rename = "oddness2-close")]
    Oddness2Close,
    #[serde(rename = "oddness2-near-bipartite")]
    Oddness2NearBipartite,
    #[serde(rename = "oddness4-paired")]
    Oddness4Paired,
    #[serde(rename = "four-chordless")]
    FourChordless,
    #[serde(rename = "rings-stars")]
    RingsStars,
    #[serde(rename = "balanced-pair")]
    BalancedPair,
    #[serde(rename = "g8-reduction")]
    G8Reduction,
    #[serde(rename = "petersen-minus-vertex-reduction")]
    PetersenMinusVertexReduction,
    #[serde(rename = "components")]
    Components,
    #[serde(rename = "brute-force")]
    BruteForce,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Colouring => "3-edge-colouring",
            Strategy::Oddness2Close => "oddness2-close",
            Strategy::Oddness2NearBipartite => "oddness2-near-bipartite",
            Strategy::Oddness4Paired => "oddness4-paired",
            Strategy::FourChordless => "four-chordless",
            Strategy::RingsStars => "rings-stars",
            Strategy::BalancedPair => "balanced-pair",
            Strategy::G8Reduction => "g8-reduction",
            Strategy::PetersenMinusVertexReduction => "petersen-minus-vertex-reduction",
            Strategy::Components => "components",
            Strategy::BruteForce => "brute-force",
        }
    }
}

/// How a certificate was obtained. `matchings[0]` is always the matching M
/// the balanced sets live in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Trail {
    Colouring,
    /// A balanced; the third matching avoids A.
    Balanced { a: Vec<EdgeId> },
    /// Disjoint balanced A and B.
    Pair { a: Vec<EdgeId>, b: Vec<EdgeId>, rings: Option<usize>, stars: Option<usize> },
    Reduction {
        pattern: PatternKind,
        vertex_map: Vec<VertexId>,
        reduced: String,
        via_table: bool,
        inner: Box<FRCertificate>,
    },
    Components { parts: Vec<ComponentPart> },
    BruteForce { indices: [usize; 3], pm_count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPart {
    pub vertices: Vec<VertexId>,
    pub certificate: FRCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FRCertificate {
    #[serde(serialize_with = "edge_ids")]
    pub matchings: [PerfectMatching; 3],
    pub strategy: Strategy,
    pub trail: Trail,
}

fn edge_ids<S: Serializer>(ms: &[PerfectMatching; 3], s: S) -> Result<S::Ok, S::Error> {
    let ids: Vec<Vec<EdgeId>> = ms.iter().map(|m| m.edges().to_vec()).collect();
    ids.serialize(s)
}

impl FRCertificate {
    pub fn edge_sets(&self) -> [&EdgeSet; 3] {
        [self.matchings[0].edges(), self.matchings[1].edges(), self.matchings[2].edges()]
    }
}

/// Checks three edge sets are perfect matchings of `g` with no common edge.
pub fn verify_edge_sets(g: &CubicGraph, sets: [&EdgeSet; 3]) -> Result<(), String> {
    for (i, s) in sets.iter().enumerate() {
        if !g.is_perfect_matching(s) {
            return Err(format!("matching {i} is not a perfect matching"));
        }
    }
    let common = sets[0].intersection(sets[1]).intersection(sets[2]);
    if common.is_empty() {
        Ok(())
    } else {
        Err(format!("common edges {:?}", common.to_vec()))
    }
}

pub fn verify_certificate(g: &CubicGraph, cert: &FRCertificate) -> bool {
    verify_edge_sets(g, cert.edge_sets()).is_ok()
}

fn checked(g: &CubicGraph, cert: FRCertificate) -> Option<FRCertificate> {
    match verify_edge_sets(g, cert.edge_sets()) {
        Ok(()) => Some(cert),
        Err(why) => {
            log::error!("{} produced a bad certificate: {why}", cert.strategy.name());
            None
        }
    }
}

/// Two disjoint balanced M-matchings give the triple (M, M_A, M_B).
pub fn from_balanced_pair(
    g: &CubicGraph,
    m: &PerfectMatching,
    a: &BalancedMatching,
    b: &BalancedMatching,
) -> Result<FRCertificate, SolverError> {
    let shared = a.a.intersection(&b.a);
    if !shared.is_empty() {
        return Err(SolverError::NotDisjoint(shared.to_vec()));
    }
    if &a.m != m || &b.m != m {
        return Err(SolverError::Balanced(BalancedError::PreconditionFailed(
            "balanced sets belong to another matching".into(),
        )));
    }
    let cert = FRCertificate {
        matchings: [m.clone(), a.witness.clone(), b.witness.clone()],
        strategy: Strategy::BalancedPair,
        trail: Trail::Pair { a: a.a.to_vec(), b: b.a.to_vec(), rings: None, stars: None },
    };
    if let Err(why) = verify_edge_sets(g, cert.edge_sets()) {
        return Err(SolverError::Balanced(BalancedError::PreconditionFailed(why)));
    }
    Ok(cert)
}

/// The converse: M1 ∩ M2 and M1 ∩ M3 are disjoint balanced M1-matchings.
pub fn balanced_pair_from_certificate(cert: &FRCertificate) -> (BalancedMatching, BalancedMatching) {
    let [m1, m2, m3] = &cert.matchings;
    let side = |w: &PerfectMatching| BalancedMatching { m: m1.clone(), a: m1.edges().intersection(w.edges()), witness: w.clone() };
    (side(m2), side(m3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Auto,
    Brute,
    /// Balanced-matching constructions only; no colouring, reductions or
    /// brute force.
    Balanced,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub mode: Mode,
    pub timeout: Option<Duration>,
    /// Perfect matchings tried as M by the constructions.
    pub max_pms: usize,
    /// Cap on a full perfect-matching enumeration.
    pub enum_cap: usize,
    pub partition_budget: u64,
    /// Where an exhausted graph is written.
    pub persist_dir: Option<PathBuf>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: Mode::Auto,
            timeout: None,
            max_pms: 64,
            enum_cap: DEFAULT_ENUM_CAP,
            partition_budget: DEFAULT_PARTITION_BUDGET,
            persist_dir: None,
        }
    }
}

/// Connected and bridgeless, or the reason why not.
pub fn check_input(g: &CubicGraph) -> Result<(), SolverError> {
    match find_bridges(g) {
        Err(GraphError::Disconnected) => {
            Err(SolverError::InvalidInput { reason: "graph is disconnected".into(), bridges: vec![] })
        }
        Err(e) => Err(e.into()),
        Ok(b) if !b.is_empty() => Err(SolverError::InvalidInput {
            reason: format!("graph has {} bridge(s)", b.len()),
            bridges: b.into_iter().collect(),
        }),
        Ok(_) => Ok(()),
    }
}

pub fn solve(g: &CubicGraph, config: &SolverConfig) -> Result<FRCertificate, SolverError> {
    check_input(g)?;
    let s = Solver::new(config);
    let found = match config.mode {
        Mode::Auto => s.solve_graph(g)?,
        Mode::Balanced => s.constructions(g)?,
        Mode::Brute => s.brute_force(g)?.map(|(c, _)| c),
    };
    if let Some(c) = found {
        return Ok(c);
    }
    if config.mode == Mode::Balanced {
        return Err(SolverError::NotFound);
    }
    Err(s.exhausted(g)?)
}

pub fn solve_bruteforce(g: &CubicGraph) -> Result<Option<FRCertificate>, SolverError> {
    Ok(Solver::new(&SolverConfig::default()).brute_force(g)?.map(|(c, _)| c))
}

/// Forces the reduction route: reduce along the first usable copy of the
/// pattern, solve the smaller graph, lift back.
pub fn solve_by_reduction(
    g: &CubicGraph,
    kind: PatternKind,
    config: &SolverConfig,
) -> Result<Option<FRCertificate>, SolverError> {
    check_input(g)?;
    Solver::new(config).via_reduction(g, kind)
}

type Attempt<'a> = Box<dyn Fn() -> Result<Option<FRCertificate>, SolverError> + 'a>;
type ReduceFn = fn(&CubicGraph, &Embedding) -> Result<ReductionResult, ReductionError>;

struct Solver<'a> {
    config: &'a SolverConfig,
    deadline: Option<Instant>,
}

impl<'a> Solver<'a> {
    fn new(config: &'a SolverConfig) -> Self {
        Solver { config, deadline: config.timeout.map(|t| Instant::now() + t) }
    }

    fn tick(&self) -> Result<(), SolverError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(SolverError::Timeout(self.config.timeout.unwrap_or_default())),
            _ => Ok(()),
        }
    }

    /// Any cubic graph; components are solved separately.
    fn solve_graph(&self, g: &CubicGraph) -> Result<Option<FRCertificate>, SolverError> {
        let comps = split_components(g);
        if comps.len() == 1 {
            return self.solve_connected(g);
        }
        let mut parts = Vec::new();
        let mut solved = Vec::new();
        for c in comps {
            let Some(cert) = self.solve_connected(&c.graph)? else {
                return Ok(None);
            };
            parts.push((c.clone(), cert.matchings.clone()));
            solved.push(ComponentPart { vertices: c.vertices, certificate: cert });
        }
        let matchings = merge_component_triples(g, &parts);
        Ok(checked(g, FRCertificate { matchings, strategy: Strategy::Components, trail: Trail::Components { parts: solved } }))
    }

    fn solve_connected(&self, g: &CubicGraph) -> Result<Option<FRCertificate>, SolverError> {
        self.tick()?;
        if let Some(c) = self.colouring(g) {
            return Ok(Some(c));
        }
        if !find_bridges(g).map(|b| b.is_empty()).unwrap_or(false) {
            log::debug!("bridged graph: only brute force applies");
            return Ok(self.brute_force(g)?.map(|(c, _)| c));
        }
        if let Some(c) = self.constructions(g)? {
            return Ok(Some(c));
        }
        for kind in [PatternKind::G8, PatternKind::PetersenMinusVertex] {
            if let Some(c) = self.via_reduction(g, kind)? {
                return Ok(Some(c));
            }
        }
        Ok(self.brute_force(g)?.map(|(c, _)| c))
    }

    fn colouring(&self, g: &CubicGraph) -> Option<FRCertificate> {
        let col = three_edge_colouring(g)?;
        let class = |k: u8| -> PerfectMatching {
            let set: EdgeSet = (0..g.size()).filter(|&e| col[e] == k).collect();
            PerfectMatching::new(g, set).expect("a colour class of a 3-edge-colouring is a perfect matching")
        };
        checked(g, FRCertificate { matchings: [class(0), class(1), class(2)], strategy: Strategy::Colouring, trail: Trail::Colouring })
    }

    /// The balanced-matching constructions over the first `max_pms` choices
    /// of M.
    fn constructions(&self, g: &CubicGraph) -> Result<Option<FRCertificate>, SolverError> {
        let mut seen = 0;
        let mut out: Result<Option<FRCertificate>, SolverError> = Ok(None);
        for_each_perfect_matching(g, &EdgeSet::new(), &EdgeSet::new(), |set| {
            seen += 1;
            let m = PerfectMatching::new_unchecked(set.clone());
            match self.tick().and_then(|_| self.constructions_for(g, &m)) {
                Ok(None) if seen < self.config.max_pms => ControlFlow::Continue(()),
                r => {
                    out = r;
                    ControlFlow::Break(())
                }
            }
        })?;
        out
    }

    fn constructions_for(&self, g: &CubicGraph, m: &PerfectMatching) -> Result<Option<FRCertificate>, SolverError> {
        let f = two_factor(g, m)?;
        let budget = self.config.partition_budget;
        let attempts: [(&str, Attempt<'_>); 5] = [
            ("oddness2-close", Box::new(|| strategy_oddness2_close(g, m, &f))),
            ("oddness2-near-bipartite", Box::new(|| strategy_oddness2_near_bipartite(g, m, &f))),
            ("oddness4-paired", Box::new(|| strategy_oddness4_paired(g, m, &f))),
            ("four-chordless", Box::new(|| strategy_four_chordless(g, m, &f))),
            ("rings-stars", Box::new(|| strategy_rings_stars(g, m, &f, budget))),
        ];
        for (name, run) in attempts {
            match run() {
                Ok(Some(c)) => return Ok(Some(c)),
                Ok(None) => {}
                Err(
                    SolverError::WrongOddness { .. }
                    | SolverError::WrongShape(_)
                    | SolverError::Structure(StructureError::BudgetExceeded(_)),
                ) => {}
                Err(e) => {
                    log::warn!("{name}: {e}");
                    return Err(e);
                }
            }
        }
        Ok(None)
    }

    fn via_reduction(&self, g: &CubicGraph, kind: PatternKind) -> Result<Option<FRCertificate>, SolverError> {
        let (pattern, reduce): (_, ReduceFn) = match kind {
            PatternKind::G8 => (g8_pattern(), reduce_g8),
            PatternKind::PetersenMinusVertex => (petersen_minus_vertex_pattern(), reduce_pmv),
        };
        let mut found = None;
        for_each_embedding(g, &pattern, |emb| match reduce(g, &emb) {
            Ok(r) => {
                found = Some(r);
                false
            }
            Err(e) => {
                log::debug!("skipping embedding: {e}");
                true
            }
        });
        let Some(r) = found else {
            return Ok(None);
        };
        let bridged = split_components(&r.reduced)
            .iter()
            .any(|c| !find_bridges(&c.graph).map(|b| b.is_empty()).unwrap_or(false));
        if bridged {
            log::debug!("reduced graph has a bridge");
            return Ok(None);
        }
        let Some(inner) = self.solve_graph(&r.reduced)? else {
            return Ok(None);
        };
        let [p1, p2, p3] = &inner.matchings;
        let lifted = match kind {
            PatternKind::G8 => lift_g8(&r, [p1, p2, p3])?,
            PatternKind::PetersenMinusVertex => lift_pmv(&r, [p1, p2, p3])?,
        };
        let strategy = match kind {
            PatternKind::G8 => Strategy::G8Reduction,
            PatternKind::PetersenMinusVertex => Strategy::PetersenMinusVertexReduction,
        };
        let trail = Trail::Reduction {
            pattern: kind,
            vertex_map: r.back_map.embedding.vertex_map.clone(),
            reduced: r.reduced.to_sparse6(),
            via_table: lifted.via_table,
            inner: Box::new(inner),
        };
        Ok(checked(g, FRCertificate { matchings: lifted.matchings, strategy, trail }))
    }

    /// Scans triples i ≤ j ≤ k of the full enumeration. Returns the
    /// certificate, or the matching count when none exists.
    fn brute_force(&self, g: &CubicGraph) -> Result<Option<(FRCertificate, usize)>, SolverError> {
        let pms = enumerate_perfect_matchings_capped(g, self.config.enum_cap)?;
        let n = pms.len();
        let mut steps = 0u64;
        for i in 0..n {
            for j in i..n {
                let ij = pms[i].edges().intersection(pms[j].edges());
                for k in j..n {
                    steps += 1;
                    if steps % 4096 == 0 {
                        self.tick()?;
                    }
                    if ij.is_disjoint(pms[k].edges()) {
                        let cert = FRCertificate {
                            matchings: [pms[i].clone(), pms[j].clone(), pms[k].clone()],
                            strategy: Strategy::BruteForce,
                            trail: Trail::BruteForce { indices: [i, j, k], pm_count: n },
                        };
                        return Ok(checked(g, cert).map(|c| (c, n)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Called when brute force found nothing: records the graph.
    fn exhausted(&self, g: &CubicGraph) -> Result<SolverError, SolverError> {
        let pms = enumerate_perfect_matchings_capped(g, self.config.enum_cap)?;
        let mut h = Sha256::new();
        for m in &pms {
            for e in m.iter() {
                h.update((e as u64).to_le_bytes());
            }
            h.update(u64::MAX.to_le_bytes());
        }
        let digest: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        log::error!("no triple among {} perfect matchings of {}", pms.len(), g.to_sparse6());
        let persisted = match &self.config.persist_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                let path = dir.join(format!("counterexample-{:016x}.json", g.fingerprint()));
                let body = serde_json::json!({
                    "graph": g.to_sparse6(),
                    "n": g.order(),
                    "pm_count": pms.len(),
                    "pm_digest_sha256": digest,
                });
                std::fs::write(&path, serde_json::to_string_pretty(&body).expect("json"))?;
                Some(path)
            }
            None => None,
        };
        Ok(SolverError::Exhausted { pm_count: pms.len(), persisted })
    }
}
