//! End-to-end acceptance checks. Run with `--nocapture` to see one line per
//! criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fanraspaud::balanced::{find_disjoint_balanced_triples, is_balanced, ColouredCycle, HAND_CASES};
use fanraspaud::graph::iso::are_isomorphic;
use fanraspaud::graph::{chromatic_index_is_3, find_bridges, generate_unique, girth, CubicGraph, EdgeSet};
use fanraspaud::matching::{enumerate_perfect_matchings, oddness, pm_avoiding, two_factor, uniform_pm_family, PerfectMatching};
use fanraspaud::named;
use fanraspaud::reductions::{find_g8, find_petersen_minus_vertex, lift_g8, lift_pmv, reduce_g8, reduce_pmv};
use fanraspaud::solver::{
    balanced_pair_from_certificate, from_balanced_pair, solve, solve_bruteforce, verify_certificate, verify_edge_sets,
    SolverConfig,
};
use fanraspaud::suites::{bridgeless_simple_graphs, pairs_ab_suite, pairs_suite, triples_suite};

fn no_common_edge(ms: [&PerfectMatching; 3]) -> bool {
    ms[0].edges().intersection(ms[1].edges()).intersection(ms[2].edges()).is_empty()
}

fn petersen_facts() {
    let g = named::petersen();
    let pms = enumerate_perfect_matchings(&g);
    assert_eq!(pms.len(), 6);
    assert_eq!(oddness(&g).unwrap().0, 2);
    assert_eq!(girth(&g), 5);
    assert!(!chromatic_index_is_3(&g));
    let mut triples = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                assert!(no_common_edge([&pms[i], &pms[j], &pms[k]]));
                assert!(verify_edge_sets(&g, [pms[i].edges(), pms[j].edges(), pms[k].edges()]).is_ok());
                triples += 1;
            }
        }
    }
    assert_eq!(triples, 20);
}

fn uniform_families() {
    let k4 = named::k4();
    let fam = uniform_pm_family(&k4).unwrap();
    assert_eq!(fam.p, 1);
    assert_eq!(fam.multiset().len(), 3);
    assert!(fam.edge_counts(&k4).iter().all(|&c| c == 1));
    let g = named::petersen();
    let fam = uniform_pm_family(&g).unwrap();
    assert_eq!(fam.p, 2);
    let members = fam.multiset();
    assert_eq!(members.len(), 6);
    let distinct: BTreeSet<_> = members.iter().map(|m| m.edges().to_vec()).collect();
    let all: BTreeSet<_> = enumerate_perfect_matchings(&g).iter().map(|m| m.edges().to_vec()).collect();
    assert_eq!(distinct, all);
    let counts = fam.edge_counts(&g);
    assert_eq!(counts.len(), 15);
    assert!(counts.iter().all(|&c| c == 2));
}

fn two_edge_avoidance() {
    let graphs = bridgeless_simple_graphs(12);
    assert!(graphs.iter().any(|g| g.order() == 12));
    let mut pairs = 0;
    for g in &graphs {
        let pms = enumerate_perfect_matchings(g);
        for e in 0..g.size() {
            for f in e + 1..g.size() {
                let avoid = EdgeSet::from_ids([e, f]);
                assert!(pms.iter().any(|m| m.edges().is_disjoint(&avoid)), "{} {e} {f}", g.to_sparse6());
                assert!(pm_avoiding(g, &avoid).unwrap().edges().is_disjoint(&avoid));
                pairs += 1;
            }
        }
    }
    println!("    {} graphs, {pairs} edge pairs", graphs.len());
}

fn balanced_triples() {
    let r = triples_suite(&[7, 9, 11, 13]);
    println!("    {} colourings", r.cases);
    assert!(r.passed(), "{:?}", r.failures);

    let expected: [(&str, [usize; 3], [usize; 3]); 9] = [
        ("3331122", [0, 3, 6], [1, 4, 5]),
        ("3331212", [2, 3, 4], [5, 6, 0]),
        ("3331221", [2, 3, 4], [5, 6, 0]),
        ("3313122", [1, 4, 5], [2, 3, 6]),
        ("3313212", [1, 4, 5], [2, 3, 6]),
        ("3313221", [1, 0, 6], [2, 3, 4]),
        ("3311322", [1, 2, 5], [0, 3, 6]),
        ("3312312", [1, 2, 3], [0, 5, 6]),
        ("3312321", [1, 2, 3], [0, 5, 6]),
    ];
    let sorted = |mut t: [usize; 3]| {
        t.sort_unstable();
        t
    };
    for (i, (word, t, t2)) in expected.iter().enumerate() {
        assert_eq!(HAND_CASES[i].0, *word);
        let c = ColouredCycle::parse(word).unwrap();
        let (got, got2) = find_disjoint_balanced_triples(&c).unwrap();
        assert_eq!(got2.0, sorted(*t2), "{word}");
        if i == 5 {
            // two vertices of colour 3: this listed T is not rainbow
            assert_eq!((c.colour(0), c.colour(1)), (3, 3));
            assert_eq!(got.0, [0, 5, 6]);
        } else {
            assert_eq!(got.0, sorted(*t), "{word}");
        }
    }
}

fn balanced_pairs() {
    let r = pairs_suite(&[4, 6, 8, 10, 12, 14]);
    println!("    {} (colouring, class) cases", r.cases);
    assert!(r.passed(), "{:?}", r.failures);
    let r = pairs_ab_suite(&[8, 10, 12]);
    println!("    {} (excluded, A, B) splits", r.cases);
    assert!(r.passed(), "{:?}", r.failures);
}

fn build(n: usize, cycles: &[Vec<usize>], m: &[(usize, usize)]) -> CubicGraph {
    let mut e = Vec::new();
    for c in cycles {
        for i in 0..c.len() {
            e.push((c[i], c[(i + 1) % c.len()]));
        }
    }
    e.extend_from_slice(m);
    CubicGraph::new(n, &e).unwrap()
}

fn r(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

fn balanced_equivalence() {
    let near = build(
        18,
        &[r(0, 5), r(5, 10), r(10, 18)],
        &[(1, 3), (6, 8), (0, 10), (2, 11), (4, 12), (5, 14), (7, 15), (9, 16), (13, 17)],
    );
    let close = build(12, &[r(0, 3), r(3, 6), r(6, 12)], &[(0, 6), (1, 8), (2, 10), (3, 7), (4, 9), (5, 11)]);
    let far = build(
        18,
        &[r(0, 3), r(3, 9), r(9, 15), r(15, 18)],
        &[(0, 3), (1, 5), (2, 7), (4, 9), (6, 11), (8, 13), (10, 15), (12, 16), (14, 17)],
    );
    for (name, g) in [("petersen", named::petersen()), ("blanusa1", named::blanusa1()), ("near", near), ("close", close), ("far", far)] {
        let pms = enumerate_perfect_matchings(&g);
        assert!(pms.iter().any(|m| two_factor(&g, m).unwrap().odd_count() == 2), "{name}");
        let (mut certs, mut pairs) = (0, 0);
        for m in &pms {
            // balanced subsets of M are exactly its intersections with matchings
            let balanced: BTreeSet<Vec<usize>> = pms.iter().map(|w| m.edges().intersection(w.edges()).to_vec()).collect();
            let ids = m.edges().to_vec();
            for mask in 0u32..1 << ids.len() {
                let a: EdgeSet = ids.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
                let got = is_balanced(&g, m, &a).unwrap();
                assert_eq!(got.is_some(), balanced.contains(&a.to_vec()), "{name}");
            }
            let sides: Vec<_> = balanced
                .iter()
                .map(|a| {
                    let a = EdgeSet::from_ids(a.iter().copied());
                    let w = is_balanced(&g, m, &a).unwrap().unwrap();
                    fanraspaud::balanced::BalancedMatching { m: m.clone(), a, witness: w }
                })
                .collect();
            for x in &sides {
                for y in &sides {
                    if x.a.is_disjoint(&y.a) {
                        let c = from_balanced_pair(&g, m, x, y).unwrap();
                        assert!(verify_certificate(&g, &c));
                        pairs += 1;
                    }
                }
            }
            for w2 in &pms {
                for w3 in &pms {
                    if !no_common_edge([m, w2, w3]) {
                        continue;
                    }
                    let c = fanraspaud::solver::FRCertificate {
                        matchings: [m.clone(), w2.clone(), w3.clone()],
                        strategy: fanraspaud::solver::Strategy::BruteForce,
                        trail: fanraspaud::solver::Trail::BruteForce { indices: [0, 0, 0], pm_count: pms.len() },
                    };
                    let (x, y) = balanced_pair_from_certificate(&c);
                    assert!(x.a.is_disjoint(&y.a));
                    assert!(balanced.contains(&x.a.to_vec()) && balanced.contains(&y.a.to_vec()));
                    certs += 1;
                }
            }
        }
        println!("    {name}: {certs} certificates, {pairs} balanced pairs");
    }
}

fn reductions_round_trip() {
    let mut e = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5), (2, 6), (3, 7)];
    let at = |c: char| 4 + "abcdxyzt".find(c).unwrap();
    for pair in ["ax", "ay", "bx", "bt", "ct", "cz", "dy", "dz", "xz", "yt"] {
        let v: Vec<char> = pair.chars().collect();
        e.push((at(v[0]), at(v[1])));
    }
    let cfg = SolverConfig::default();
    let g = CubicGraph::new(12, &e).unwrap();
    let t = Instant::now();
    let red = reduce_g8(&g, &find_g8(&g).unwrap()).unwrap();
    assert!(are_isomorphic(&red.reduced, &named::k4()));
    let inner = solve(&red.reduced, &cfg).unwrap();
    let [a, b, c] = &inner.matchings;
    let lifted = lift_g8(&red, [a, b, c]).unwrap();
    let [x, y, z] = &lifted.matchings;
    assert!(no_common_edge([x, y, z]) && verify_edge_sets(&g, [x.edges(), y.edges(), z.edges()]).is_ok());
    assert!(t.elapsed() < Duration::from_secs(1));

    let g = named::petersen();
    let t = Instant::now();
    let red = reduce_pmv(&g, &find_petersen_minus_vertex(&g).unwrap()).unwrap();
    assert_eq!(red.reduced.order(), 2);
    assert_eq!(red.reduced.size(), 3);
    let inner = solve(&red.reduced, &cfg).unwrap();
    let [a, b, c] = &inner.matchings;
    let lifted = lift_pmv(&red, [a, b, c]).unwrap();
    let [x, y, z] = &lifted.matchings;
    assert!(no_common_edge([x, y, z]) && verify_edge_sets(&g, [x.edges(), y.edges(), z.edges()]).is_ok());
    assert!(t.elapsed() < Duration::from_secs(1));
}

fn solver_vs_oracle() {
    let cfg = SolverConfig::default();
    let mut graphs: Vec<(String, CubicGraph)> = (2..=12)
        .step_by(2)
        .flat_map(|n| generate_unique(n, true))
        .filter(|g| find_bridges(g).map(|b| b.is_empty()).unwrap_or(false))
        .map(|g| (g.to_sparse6(), g))
        .collect();
    let generated = graphs.len();
    graphs.extend(named::corpus().into_iter().map(|(n, g)| (n.to_string(), g)));
    for (name, g) in &graphs {
        let c = solve(g, &cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(verify_certificate(g, &c), "{name}");
        let b = solve_bruteforce(g).unwrap().unwrap_or_else(|| panic!("{name}: brute force found nothing"));
        assert!(verify_certificate(g, &b), "{name}");
    }
    println!("    {generated} generated graphs and {} corpus graphs", graphs.len() - generated);
}

fn three_edge_cut_control() {
    let mut stars = 0;
    for (name, g) in named::corpus() {
        let pms = enumerate_perfect_matchings(&g);
        for v in 0..g.order() {
            let star = EdgeSet::from_ids(*g.incident(v));
            for m in &pms {
                assert_eq!(m.edges().intersection(&star).len(), 1, "{name} vertex {v}");
            }
            assert!(pm_avoiding(&g, &star).is_err());
            stars += 1;
        }
    }
    println!("    {stars} vertex stars");
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn(), Duration); 9] = [
        ("Petersen matchings, oddness, girth, class and triples", petersen_facts, Duration::from_secs(1)),
        ("uniform perfect-matching families", uniform_families, Duration::from_secs(1)),
        ("two-edge avoidance, n <= 12", two_edge_avoidance, Duration::from_secs(600)),
        ("disjoint balanced triples, lengths 7-13", balanced_triples, Duration::from_secs(300)),
        ("disjoint balanced pairs, lengths 4-14 and A/B splits", balanced_pairs, Duration::from_secs(300)),
        ("certificates and balanced pairs correspond", balanced_equivalence, Duration::from_secs(60)),
        ("G8 and Petersen-minus-vertex round trips", reductions_round_trip, Duration::from_secs(2)),
        ("solver agrees with brute force", solver_vs_oracle, Duration::from_secs(1800)),
        ("no matching avoids a vertex star", three_edge_cut_control, Duration::from_secs(60)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = t.elapsed();
        let ok = outcome.is_ok() && elapsed <= limit;
        println!(
            "[{}] {}. {name} ({:.2?}, limit {:?}){}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed,
            limit,
            if outcome.is_ok() && !ok { " over time" } else { "" }
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
