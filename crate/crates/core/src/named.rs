//! Small named graphs used throughout the tests and the bundled corpus.

use crate::graph::{CubicGraph, VertexId};

fn build(n: usize, edges: &[(VertexId, VertexId)]) -> CubicGraph {
    CubicGraph::new(n, edges).expect("named graph is cubic")
}

pub fn k4() -> CubicGraph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Two vertices joined by three parallel edges.
pub fn dipole() -> CubicGraph {
    build(2, &[(0, 1), (0, 1), (0, 1)])
}

pub fn k33() -> CubicGraph {
    let mut edges = Vec::new();
    for u in 0..3 {
        for v in 3..6 {
            edges.push((u, v));
        }
    }
    build(6, &edges)
}

const PETERSEN_LABELS: &str = "abcdexyztu";

/// Vertex of the Petersen graph by letter: outer cycle `abcde`, inner cycle
/// `xyztu`, spokes `ax bt cy du ez`.
pub fn petersen_label(c: char) -> VertexId {
    PETERSEN_LABELS.find(c).unwrap_or_else(|| panic!("no Petersen vertex {c}"))
}

pub fn petersen_letter(v: VertexId) -> char {
    PETERSEN_LABELS.as_bytes()[v] as char
}

pub fn petersen() -> CubicGraph {
    let pairs = [
        "ab", "bc", "cd", "de", "ea", "ax", "bt", "cy", "du", "ez", "xy", "yz", "zt", "tu", "ux",
    ];
    let edges: Vec<_> = pairs
        .iter()
        .map(|p| {
            let mut cs = p.chars();
            (petersen_label(cs.next().unwrap()), petersen_label(cs.next().unwrap()))
        })
        .collect();
    build(10, &edges)
}

/// Edge of the Petersen graph from a two-letter name such as `"ax"`.
pub fn petersen_edge(g: &CubicGraph, name: &str) -> crate::graph::EdgeId {
    let mut cs = name.chars();
    let u = petersen_label(cs.next().unwrap());
    let v = petersen_label(cs.next().unwrap());
    g.edge_between(u, v).unwrap_or_else(|| panic!("{name} is not a Petersen edge"))
}

// Both Blanuša snarks are dot products of two Petersen graphs: remove two
// independent edges from the first copy and two adjacent vertices from the
// second, then join the four degree-2 vertices of each side. Independent edges
// at distance 2 give the first snark (automorphism group of order 8), at
// distance 1 the second (order 4).
const BLANUSA_1: [(usize, usize); 27] = [
    (0, 4), (0, 5), (0, 12), (1, 2), (1, 8), (1, 13), (2, 3), (2, 6), (3, 4), (3, 10), (4, 7), (5, 6), (5, 9),
    (6, 7), (7, 8), (8, 9), (9, 16), (10, 11), (10, 14), (11, 12), (11, 17), (12, 15), (13, 14), (13, 17),
    (14, 15), (15, 16), (16, 17),
];

const BLANUSA_2: [(usize, usize); 27] = [
    (0, 4), (0, 5), (0, 12), (1, 2), (1, 8), (1, 13), (2, 6), (2, 10), (3, 4), (3, 9), (3, 16), (4, 7), (5, 6),
    (5, 9), (6, 7), (7, 8), (8, 9), (10, 11), (10, 14), (11, 12), (11, 17), (12, 15), (13, 14), (13, 17),
    (14, 15), (15, 16), (16, 17),
];

pub fn blanusa1() -> CubicGraph {
    build(18, &BLANUSA_1)
}

pub fn blanusa2() -> CubicGraph {
    build(18, &BLANUSA_2)
}

/// Flower snark J_k for odd k ≥ 3, on 4k vertices. Vertex `4i` is the centre
/// a_i, joined to b_i = 4i+1, c_i = 4i+2, d_i = 4i+3; the b_i form a k-cycle
/// and the c_i, d_i together form a single 2k-cycle.
pub fn flower(k: usize) -> CubicGraph {
    assert!(k >= 3 && k % 2 == 1, "flower snarks need odd k >= 3");
    let (a, b, c, d) = (|i: usize| 4 * i, |i: usize| 4 * i + 1, |i: usize| 4 * i + 2, |i: usize| 4 * i + 3);
    let mut edges = Vec::new();
    for i in 0..k {
        edges.extend([(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b((i + 1) % k))]);
        if i + 1 < k {
            edges.extend([(c(i), c(i + 1)), (d(i), d(i + 1))]);
        }
    }
    edges.extend([(c(k - 1), d(0)), (d(k - 1), c(0))]);
    build(4 * k, &edges)
}

/// The bundled snark corpus.
pub fn corpus() -> Vec<(&'static str, CubicGraph)> {
    vec![
        ("petersen", petersen()),
        ("blanusa1", blanusa1()),
        ("blanusa2", blanusa2()),
        ("flower5", flower(5)),
        ("flower7", flower(7)),
    ]
}
