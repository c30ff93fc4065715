use serde_json::{json, Value};

use super::{verify_certificate, verify_edge_sets, FRCertificate};
use crate::graph::{decode, CubicGraph, EdgeSet};

pub fn certificate_json(g: &CubicGraph, cert: &FRCertificate) -> Value {
    let pairs: Vec<Vec<[usize; 2]>> = cert
        .matchings
        .iter()
        .map(|m| m.iter().map(|e| <[usize; 2]>::from(g.endpoints(e))).collect())
        .collect();
    let ids: Vec<Vec<usize>> = cert.matchings.iter().map(|m| m.edges().to_vec()).collect();
    json!({
        "graph": g.to_sparse6(),
        "n": g.order(),
        "matchings": pairs,
        "matching_edge_ids": ids,
        "strategy": cert.strategy.name(),
        "verified": verify_certificate(g, cert),
        "trail": cert.trail,
    })
}

/// The graph and three edge sets of a certificate document. Edge ids win
/// over endpoint pairs when both are present; pairs between the same
/// vertices take parallel edges in id order.
pub fn read_certificate(doc: &Value) -> Result<(CubicGraph, [EdgeSet; 3]), String> {
    let code = doc.get("graph").and_then(Value::as_str).ok_or("missing \"graph\"")?;
    let g = decode(code).and_then(|r| r.into_cubic()).map_err(|e| format!("graph: {e}"))?;
    let sets: Vec<EdgeSet> = if let Some(ids) = doc.get("matching_edge_ids").and_then(Value::as_array) {
        ids.iter()
            .map(|m| {
                let list = m.as_array().ok_or("matching_edge_ids entries must be arrays")?;
                list.iter()
                    .map(|e| match e.as_u64() {
                        Some(e) if (e as usize) < g.size() => Ok(e as usize),
                        _ => Err(format!("bad edge id {e}")),
                    })
                    .collect::<Result<EdgeSet, String>>()
            })
            .collect::<Result<_, _>>()?
    } else {
        let ms = doc.get("matchings").and_then(Value::as_array).ok_or("missing \"matchings\"")?;
        ms.iter().map(|m| edges_from_pairs(&g, m)).collect::<Result<_, _>>()?
    };
    let sets: [EdgeSet; 3] = sets.try_into().map_err(|v: Vec<_>| format!("expected 3 matchings, got {}", v.len()))?;
    Ok((g, sets))
}

fn edges_from_pairs(g: &CubicGraph, m: &Value) -> Result<EdgeSet, String> {
    let mut set = EdgeSet::new();
    for p in m.as_array().ok_or("matchings entries must be arrays")? {
        let uv: Vec<usize> = p
            .as_array()
            .filter(|a| a.len() == 2)
            .and_then(|a| a.iter().map(|x| x.as_u64().map(|x| x as usize)).collect())
            .ok_or_else(|| format!("bad endpoint pair {p}"))?;
        if uv.iter().any(|&v| v >= g.order()) {
            return Err(format!("vertex out of range in {p}"));
        }
        let e = g
            .edges_between(uv[0], uv[1])
            .find(|&e| !set.contains(e))
            .ok_or_else(|| format!("no edge {p}"))?;
        set.insert(e);
    }
    Ok(set)
}

/// Re-checks a certificate document from scratch.
pub fn reverify_json(doc: &Value) -> Result<(), String> {
    let (g, [a, b, c]) = read_certificate(doc)?;
    verify_edge_sets(&g, [&a, &b, &c])
}
