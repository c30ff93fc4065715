use super::*;
use crate::graph::iso::are_isomorphic;
use crate::graph::{find_bridges, generate_unique, is_connected};
use crate::matching::enumerate_perfect_matchings;
use crate::named;

fn certifies(g: &CubicGraph, ms: &[PerfectMatching; 3]) -> bool {
    ms.iter().all(|m| g.is_perfect_matching(m.edges()))
        && ms[0].edges().intersection(ms[1].edges()).intersection(ms[2].edges()).is_empty()
}

/// Unordered triples, repeats allowed, with empty common intersection.
fn triples(pms: &[PerfectMatching]) -> Vec<[&PerfectMatching; 3]> {
    let mut out = Vec::new();
    for i in 0..pms.len() {
        for j in i..pms.len() {
            let ij = pms[i].edges().intersection(pms[j].edges());
            for k in j..pms.len() {
                if ij.intersection(pms[k].edges()).is_empty() {
                    out.push([&pms[i], &pms[j], &pms[k]]);
                }
            }
        }
    }
    out
}

/// Replaces edges a′c′ and b′d′ of `r` by a copy of G8 on vertices n..n+8.
fn g8_host(r: &CubicGraph, ac: (usize, usize), bd: (usize, usize), skip: [EdgeId; 2]) -> (CubicGraph, Embedding) {
    let n = r.order();
    let p = g8_pattern();
    let mut edges: Vec<(usize, usize)> =
        r.edges().iter().enumerate().filter(|(e, _)| !skip.contains(e)).map(|(_, &uv)| uv).collect();
    edges.extend(p.edges.iter().map(|&(u, v)| (n + u, n + v)));
    for (outer, label) in [(ac.0, 'a'), (bd.0, 'b'), (ac.1, 'c'), (bd.1, 'd')] {
        edges.push((outer, n + p.vertex(label)));
    }
    let g = CubicGraph::new(n + 8, &edges).unwrap();
    let want: Vec<usize> = (n..n + 8).collect();
    let mut emb = None;
    for_each_embedding(&g, &p, |e| {
        if e.vertex_map == want {
            emb = Some(e);
            return false;
        }
        true
    });
    (g, emb.expect("the planted copy is an embedding"))
}

/// The pattern with its boundary closed into the 4-cycle a′b′c′d′.
fn g8_twelve() -> (CubicGraph, Embedding) {
    let c4 = CubicGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
    let skip = [c4.edge_between(0, 2).unwrap(), c4.edge_between(1, 3).unwrap()];
    g8_host(&c4, (0, 2), (1, 3), skip)
}

#[test]
fn g8_twelve_reduces_to_k4() {
    let (g, _) = g8_twelve();
    let emb = find_g8(&g).unwrap();
    let r = reduce_g8(&g, &emb).unwrap();
    assert_eq!(r.reduced.order(), g.order() - 8);
    assert!(are_isomorphic(&r.reduced, &named::k4()));
    assert_eq!(r.added_edges.len(), 2);
    let pms = enumerate_perfect_matchings(&r.reduced);
    for t in triples(&pms) {
        let lifted = lift_g8(&r, t).unwrap();
        assert!(certifies(&g, &lifted.matchings));
    }
}

#[test]
fn g8_case_with_both_replacement_edges_shared() {
    let (g, emb) = g8_twelve();
    let r = reduce_g8(&g, &emb).unwrap();
    let pms = enumerate_perfect_matchings(&r.reduced);
    let both = pms.iter().find(|m| r.added_edges.iter().all(|&e| m.contains(e))).unwrap();
    let other = pms.iter().find(|m| !m.contains(r.added_edges[0])).unwrap();
    let lifted = lift_g8(&r, [both, both, other]).unwrap();
    assert!(lifted.via_table);
    assert!(certifies(&g, &lifted.matchings));
    let p = g8_pattern();
    for m in &lifted.matchings[..2] {
        assert!(m.contains(emb.edge_map[p.edge("xz")]) && m.contains(emb.edge_map[p.edge("yt")]));
    }
}

#[test]
fn g8_round_trip_on_small_hosts() {
    // case counts: none shared, both shared together, a′c′ shared alone,
    // a′c′ and b′d′ shared by different pairs
    let mut cases = [0usize; 4];
    let mut fallbacks = 0;
    for n in [4, 6] {
        for r in generate_unique(n, true) {
            for e1 in 0..r.size() {
                for e2 in 0..r.size() {
                    if e1 == e2 {
                        continue;
                    }
                    let (u1, v1) = r.endpoints(e1);
                    let (u2, v2) = r.endpoints(e2);
                    let (g, emb) = g8_host(&r, (u1, v1), (u2, v2), [e1, e2]);
                    let red = match reduce_g8(&g, &emb) {
                        Ok(red) => red,
                        Err(ReductionError::InvalidEmbedding(_)) => continue,
                        Err(e) => panic!("{e}"),
                    };
                    assert!(are_isomorphic(&red.reduced, &r));
                    if find_bridges(&g).is_ok_and(|b| b.is_empty()) && is_connected(&red.reduced) {
                        assert!(find_bridges(&red.reduced).unwrap().is_empty());
                    }
                    let pms = enumerate_perfect_matchings(&red.reduced);
                    for t in triples(&pms) {
                        let shared = |e: EdgeId| t.iter().filter(|m| m.contains(e)).count() == 2;
                        let pairs_for = |e: EdgeId| {
                            (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).find(|&(i, j)| t[i].contains(e) && t[j].contains(e))
                        };
                        let (ac, bd) = (red.added_edges[0], red.added_edges[1]);
                        let case = match (shared(ac), shared(bd)) {
                            (false, false) => Some(0),
                            (true, true) if pairs_for(ac) == pairs_for(bd) => Some(1),
                            (true, false) => Some(2),
                            (true, true) => Some(3),
                            _ => None,
                        };
                        if let Some(c) = case {
                            cases[c] += 1;
                        }
                        let lifted = lift_g8(&red, t).unwrap();
                        assert!(certifies(&g, &lifted.matchings));
                        if !lifted.via_table {
                            fallbacks += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(cases.iter().all(|&c| c > 0), "{cases:?}");
    log::info!("G8 lift fell back to completion search {fallbacks} times");
}

#[test]
fn petersen_has_g8_but_no_loop_free_reduction() {
    let g = named::petersen();
    let emb = find_g8(&g).unwrap();
    assert!(matches!(reduce_g8(&g, &emb), Err(ReductionError::InvalidEmbedding(_))));
    assert!(find_g8(&named::k4()).is_none());
}

#[test]
fn petersen_reduces_to_dipole_and_lifts() {
    let g = named::petersen();
    let emb = find_petersen_minus_vertex(&g).unwrap();
    let r = reduce_pmv(&g, &emb).unwrap();
    assert_eq!(r.reduced.order(), 2);
    assert!(are_isomorphic(&r.reduced, &named::dipole()));
    let pms = enumerate_perfect_matchings(&r.reduced);
    assert_eq!(pms.len(), 3);
    let lifted = lift_pmv(&r, [&pms[0], &pms[1], &pms[2]]).unwrap();
    assert!(lifted.via_table);
    assert!(certifies(&g, &lifted.matchings));
    assert!(find_petersen_minus_vertex(&named::k33()).is_none());
}

/// Replaces vertex `v` of `r` by a copy of Petersen minus a.
fn pmv_host(r: &CubicGraph, v: usize, order: [usize; 3]) -> (CubicGraph, Embedding) {
    let n = r.order();
    let p = petersen_minus_vertex_pattern();
    let inc = r.incident(v);
    let relabel = |u: usize| if u < v { u } else { u - 1 };
    let mut edges: Vec<(usize, usize)> = r
        .edges()
        .iter()
        .enumerate()
        .filter(|(e, _)| !inc.contains(e))
        .map(|(_, &(a, b))| (relabel(a), relabel(b)))
        .collect();
    let base = n - 1;
    edges.extend(p.edges.iter().map(|&(a, b)| (base + a, base + b)));
    for (k, label) in "xbe".chars().enumerate() {
        let e = inc[order[k]];
        edges.push((relabel(r.other_end(e, v)), base + p.vertex(label)));
    }
    let g = CubicGraph::new(base + 9, &edges).unwrap();
    let want: Vec<usize> = (base..base + 9).collect();
    let mut emb = None;
    for_each_embedding(&g, &p, |e| {
        if e.vertex_map == want {
            emb = Some(e);
            return false;
        }
        true
    });
    (g, emb.expect("planted copy"))
}

#[test]
fn pmv_round_trip_on_small_hosts() {
    let (mut shared_case, mut distinct_case) = (0, 0);
    for n in [2, 4, 6] {
        for r in generate_unique(n, true) {
            for v in 0..n {
                if r.incident(v).iter().any(|&e| r.other_end(e, v) == v) {
                    continue;
                }
                for order in [[0, 1, 2], [1, 0, 2], [2, 1, 0]] {
                    let (g, emb) = pmv_host(&r, v, order);
                    let red = reduce_pmv(&g, &emb).unwrap();
                    assert_eq!(red.reduced.order(), g.order() - 8);
                    assert!(are_isomorphic(&red.reduced, &r));
                    let pms = enumerate_perfect_matchings(&red.reduced);
                    for t in triples(&pms) {
                        let kinds: Vec<usize> =
                            t.iter().map(|m| red.added_edges.iter().position(|&e| m.contains(e)).unwrap()).collect();
                        if kinds[0] == kinds[1] || kinds[1] == kinds[2] || kinds[0] == kinds[2] {
                            shared_case += 1;
                        } else {
                            distinct_case += 1;
                        }
                        let lifted = lift_pmv(&red, t).unwrap();
                        assert!(certifies(&g, &lifted.matchings));
                    }
                }
            }
        }
    }
    assert!(shared_case > 0 && distinct_case > 0);
}

#[test]
fn blanusa_pmv_agrees_with_subset_scan() {
    let g = named::blanusa1();
    let found = find_petersen_minus_vertex(&g).is_some();
    // a 9-set spans a copy exactly when it induces 12 edges, three of its
    // vertices have one outside neighbour, and closing those three onto a
    // new vertex gives Petersen
    let petersen = named::petersen();
    let n = g.order();
    let mut naive = false;
    let mut set = Vec::new();
    fn rec(g: &CubicGraph, p: &CubicGraph, start: usize, set: &mut Vec<usize>, hit: &mut bool) {
        if *hit {
            return;
        }
        if set.len() == 9 {
            let inside = |v: usize| set.contains(&v);
            let local = |v: usize| set.iter().position(|&x| x == v).unwrap();
            let mut edges = Vec::new();
            let mut deg2 = Vec::new();
            for &v in set.iter() {
                let out = g.neighbours(v).filter(|&w| !inside(w)).count();
                match out {
                    0 => {}
                    1 => deg2.push(local(v)),
                    _ => return,
                }
            }
            if deg2.len() != 3 {
                return;
            }
            for &(a, b) in g.edges() {
                if inside(a) && inside(b) {
                    edges.push((local(a), local(b)));
                }
            }
            edges.extend(deg2.iter().map(|&d| (d, 9)));
            if let Ok(h) = CubicGraph::new(10, &edges) {
                *hit |= are_isomorphic(&h, p);
            }
            return;
        }
        for v in start..g.order() {
            set.push(v);
            rec(g, p, v + 1, set, hit);
            set.pop();
        }
    }
    rec(&g, &petersen, 0, &mut set, &mut naive);
    assert_eq!(n, 18);
    assert_eq!(found, naive);
}

#[test]
fn minimality_reports() {
    let k4 = minimality_report(&named::k4());
    assert!(k4.certified_non_minimal);
    let girth = &k4.conditions[0];
    assert!(!girth.pass);
    assert!(matches!(&girth.witness, Some(Witness::ShortCycle { vertices }) if vertices.len() == 3));

    let p = minimality_report(&named::petersen());
    let by = |r: &MinimalityReport, name: &str| r.conditions.iter().find(|c| c.name == name).unwrap().pass;
    assert!(!by(&p, "order_at_least_32"));
    assert!(!by(&p, "no_petersen_minus_vertex"));
    assert!(by(&p, "girth_at_least_5"));

    let b = minimality_report(&named::blanusa1());
    assert!(!by(&b, "order_at_least_32") && b.certified_non_minimal);
    assert!(serde_json::to_string(&b).is_ok());
}

#[test]
fn components_split_and_merge() {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)];
    edges.extend([(4, 5), (5, 6), (4, 6), (7, 8), (8, 9), (7, 9), (4, 7), (5, 8), (6, 9)]);
    let g = CubicGraph::new(10, &edges).unwrap();
    let comps = split_components(&g);
    assert_eq!(comps.len(), 2);
    let parts: Vec<_> = comps
        .into_iter()
        .map(|c| {
            let pms = enumerate_perfect_matchings(&c.graph);
            let t = triples(&pms)[0].map(|m| m.clone());
            (c, t)
        })
        .collect();
    let merged = merge_component_triples(&g, &parts);
    assert!(certifies(&g, &merged));
}
