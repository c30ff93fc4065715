use super::{CubicGraph, EdgeId};

const NONE: u8 = 3;

/// A proper 3-edge-colouring (colour per edge identifier, values 0..3), or
/// `None` when the chromatic index is 4.
pub fn three_edge_colouring(g: &CubicGraph) -> Option<Vec<u8>> {
    let m = g.size();
    let mut colour = vec![NONE; m];
    let mut used = vec![0u8; g.order()];
    if g.order() > 0 {
        // colours at one vertex are interchangeable
        for (c, &e) in g.incident(0).iter().enumerate() {
            if !assign(g, &mut colour, &mut used, e, c as u8) {
                return None;
            }
        }
    }
    if extend(g, &mut colour, &mut used) {
        Some(colour)
    } else {
        None
    }
}

pub fn chromatic_index_is_3(g: &CubicGraph) -> bool {
    three_edge_colouring(g).is_some()
}

fn assign(g: &CubicGraph, colour: &mut [u8], used: &mut [u8], e: EdgeId, c: u8) -> bool {
    let (u, v) = g.endpoints(e);
    let bit = 1 << c;
    if used[u] & bit != 0 || used[v] & bit != 0 {
        return false;
    }
    colour[e] = c;
    used[u] |= bit;
    used[v] |= bit;
    true
}

fn unassign(g: &CubicGraph, colour: &mut [u8], used: &mut [u8], e: EdgeId) {
    let (u, v) = g.endpoints(e);
    let bit = 1 << colour[e];
    used[u] &= !bit;
    used[v] &= !bit;
    colour[e] = NONE;
}

// most-constrained edge first
fn extend(g: &CubicGraph, colour: &mut [u8], used: &mut [u8]) -> bool {
    let mut best: Option<(EdgeId, u8)> = None;
    for e in 0..g.size() {
        if colour[e] != NONE {
            continue;
        }
        let (u, v) = g.endpoints(e);
        let free = !(used[u] | used[v]) & 0b111;
        if free == 0 {
            return false;
        }
        if best.is_none_or(|(_, f)| free.count_ones() < f.count_ones()) {
            best = Some((e, free));
            if free.count_ones() == 1 {
                break;
            }
        }
    }
    let Some((e, free)) = best else {
        return true;
    };
    for c in 0..3u8 {
        if free & (1 << c) != 0 {
            assign(g, colour, used, e, c);
            if extend(g, colour, used) {
                return true;
            }
            unassign(g, colour, used, e);
        }
    }
    false
}
