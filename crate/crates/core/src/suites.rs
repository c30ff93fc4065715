//! Exhaustive checks of the cycle lemmas and matching facts, each against
//! an independent brute-force answer. Used by the `lemmas` command and the
//! acceptance tests.

use serde::Serialize;

use crate::balanced::{
    find_disjoint_balanced_pairs, find_disjoint_balanced_triples_with, find_pairs_ab, is_balanced_pair,
    is_balanced_triple, is_good_even_cycle, is_good_odd_cycle, oracle_disjoint_triples, BalancedPair, ColouredCycle,
    TripleTables,
};
use crate::graph::{find_bridges, generate_unique, CubicGraph, EdgeSet};
use crate::matching::{constrained_pm, pm_avoiding, uniform_pm_family};
use crate::named;

const KEPT_FAILURES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failed: u64,
    /// The first few failures, each naming its case.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), cases: 0, failed: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }
}

/// Every word over {1,2,3} of length `len`.
fn for_each_colouring(len: usize, mut f: impl FnMut(&[u8])) {
    let mut colours = vec![1u8; len];
    loop {
        f(&colours);
        let mut i = 0;
        while i < len && colours[i] == 3 {
            colours[i] = 1;
            i += 1;
        }
        if i == len {
            return;
        }
        colours[i] += 1;
    }
}

fn word(colours: &[u8]) -> String {
    colours.iter().map(|c| char::from(b'0' + c)).collect()
}

pub fn triples_suite(lengths: &[usize]) -> SuiteReport {
    triples_suite_with(lengths, TripleTables::shipped())
}

/// All good colourings of each odd length: the construction's triples are
/// disjoint, balanced and rainbow, and the oracle agrees one exists.
pub fn triples_suite_with(lengths: &[usize], tables: &TripleTables) -> SuiteReport {
    let mut r = SuiteReport::new("triples");
    for &len in lengths {
        for_each_colouring(len, |cs| {
            let c = ColouredCycle::from_colours(cs).expect("colours in range");
            if !is_good_odd_cycle(&c).unwrap_or(false) {
                return;
            }
            let rainbow = |t: [usize; 3]| {
                let mut k: Vec<u8> = t.iter().map(|&p| cs[p]).collect();
                k.sort_unstable();
                k == [1, 2, 3]
            };
            let verdict = match find_disjoint_balanced_triples_with(&c, tables) {
                Ok((t, t2)) => {
                    if !t.is_disjoint(&t2) {
                        Err(format!("{t:?} and {t2:?} overlap"))
                    } else if !is_balanced_triple(len, &t) || !is_balanced_triple(len, &t2) {
                        Err(format!("{t:?} / {t2:?} not balanced"))
                    } else if !rainbow(t.0) || !rainbow(t2.0) {
                        Err(format!("{t:?} / {t2:?} not rainbow"))
                    } else if oracle_disjoint_triples(cs).is_none() {
                        Err("oracle finds no solution".into())
                    } else {
                        Ok(())
                    }
                }
                Err(e) => Err(e.to_string()),
            };
            r.check(verdict.is_ok(), || format!("{}: {}", word(cs), verdict.unwrap_err()));
        });
    }
    r
}

/// Disjoint balanced pairs, each meeting the given set once, by search.
fn oracle_pairs(len: usize, hit: impl Fn(usize) -> bool, other: impl Fn(usize) -> bool) -> bool {
    let pairs: Vec<BalancedPair> = (0..len)
        .flat_map(|a| (a + 1..len).map(move |b| BalancedPair::new(a, b)))
        .filter(|p| is_balanced_pair(len, p) && (hit(p.0[0]) != hit(p.0[1])) && (other(p.0[0]) || other(p.0[1])))
        .collect();
    pairs.iter().enumerate().any(|(i, p)| pairs[i + 1..].iter().any(|q| p.is_disjoint(q)))
}

/// Every good colouring of each even length and every colour class with at
/// least two vertices.
pub fn pairs_suite(lengths: &[usize]) -> SuiteReport {
    let mut r = SuiteReport::new("pairs");
    for &len in lengths {
        for_each_colouring(len, |cs| {
            let c = ColouredCycle::from_colours(cs).expect("colours in range");
            if !is_good_even_cycle(&c).unwrap_or(false) {
                return;
            }
            for i in 1..=3u8 {
                if c.class_sizes()[i as usize - 1] < 2 {
                    continue;
                }
                let verdict = match find_disjoint_balanced_pairs(&c, i) {
                    Ok((p, q)) => {
                        let once = |p: &BalancedPair| p.0.iter().filter(|&&x| cs[x] == i).count() == 1;
                        if !p.is_disjoint(&q) || !is_balanced_pair(len, &p) || !is_balanced_pair(len, &q) {
                            Err(format!("{p:?} / {q:?} not disjoint balanced"))
                        } else if !once(&p) || !once(&q) {
                            Err(format!("{p:?} / {q:?} do not meet class {i} once"))
                        } else if !oracle_pairs(len, |x| cs[x] == i, |_| true) {
                            Err("oracle finds no solution".into())
                        } else {
                            Ok(())
                        }
                    }
                    Err(e) => Err(e.to_string()),
                };
                r.check(verdict.is_ok(), || format!("{} colour {i}: {}", word(cs), verdict.unwrap_err()));
            }
        });
    }
    r
}

/// Every excluded pair and every admissible split of the rest into A and B.
pub fn pairs_ab_suite(lengths: &[usize]) -> SuiteReport {
    let mut r = SuiteReport::new("pairs_ab");
    for &len in lengths {
        let half = len / 2;
        for x in 0..len {
            for y in x + 1..len {
                let rest: Vec<usize> = (0..len).filter(|&v| v != x && v != y).collect();
                for mask in 0u32..1 << rest.len() {
                    let (mut a, mut b) = (Vec::new(), Vec::new());
                    for (k, &v) in rest.iter().enumerate() {
                        if (mask >> k) & 1 == 1 {
                            a.push(v);
                        } else {
                            b.push(v);
                        }
                    }
                    if a.len() + 2 < half || b.len() + 2 < half {
                        continue;
                    }
                    let verdict = match find_pairs_ab(len, [x, y], &a, &b) {
                        Ok((p, q)) => {
                            let split = |p: &BalancedPair| a.contains(&p.0[0]) != a.contains(&p.0[1])
                                && !p.0.iter().any(|v| *v == x || *v == y);
                            if !p.is_disjoint(&q) || !is_balanced_pair(len, &p) || !is_balanced_pair(len, &q) {
                                Err(format!("{p:?} / {q:?} not disjoint balanced"))
                            } else if !split(&p) || !split(&q) {
                                Err(format!("{p:?} / {q:?} not one vertex per side"))
                            } else if !oracle_pairs(len, |v| a.contains(&v), |v| v != x && v != y && !a.contains(&v))
                            {
                                Err("oracle finds no solution".into())
                            } else {
                                Ok(())
                            }
                        }
                        Err(e) => Err(e.to_string()),
                    };
                    r.check(verdict.is_ok(), || {
                        format!("C{len} excluded {{{x},{y}}} A={a:?} B={b:?}: {}", verdict.unwrap_err())
                    });
                }
            }
        }
    }
    r
}

/// Connected bridgeless simple cubic graphs on up to `max_n` vertices.
pub fn bridgeless_simple_graphs(max_n: usize) -> Vec<CubicGraph> {
    (4..=max_n)
        .step_by(2)
        .flat_map(|n| generate_unique(n, false))
        .filter(|g| find_bridges(g).map(|b| b.is_empty()).unwrap_or(false))
        .collect()
}

/// Every unordered edge pair of every graph is avoided by some perfect
/// matching.
pub fn avoidance_suite(max_n: usize) -> SuiteReport {
    let mut r = SuiteReport::new("avoidance");
    for g in bridgeless_simple_graphs(max_n) {
        for e in 0..g.size() {
            for f in e + 1..g.size() {
                let avoid = EdgeSet::from_ids([e, f]);
                let ok = pm_avoiding(&g, &avoid).map(|m| m.edges().is_disjoint(&avoid)).unwrap_or(false);
                r.check(ok, || format!("{} edges {e},{f}", g.to_sparse6()));
            }
        }
    }
    r
}

/// Uniform families on the corpus: every edge lies in exactly p members.
pub fn uniform_suite() -> SuiteReport {
    let mut r = SuiteReport::new("uniform");
    for (name, g) in named::corpus().into_iter().chain([("k4", named::k4())]) {
        match uniform_pm_family(&g) {
            Ok(fam) => {
                let counts = fam.edge_counts(&g);
                r.check(counts.iter().all(|&k| k == fam.p), || format!("{name}: counts {counts:?} for p={}", fam.p));
            }
            Err(e) => {
                r.cases += 1;
                r.fail(format!("{name}: {e}"));
            }
        }
    }
    r
}

/// No perfect matching avoids all three edges at a vertex.
pub fn three_cut_suite() -> SuiteReport {
    let mut r = SuiteReport::new("three_cut");
    for (name, g) in named::corpus().into_iter().chain([("k4", named::k4())]) {
        for v in 0..g.order() {
            let star = EdgeSet::from_ids(*g.incident(v));
            let none = matches!(constrained_pm(&g, &EdgeSet::new(), &star), Ok(None));
            r.check(none, || format!("{name}: vertex {v}"));
        }
    }
    r
}
