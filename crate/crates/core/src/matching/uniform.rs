//! Multisets of perfect matchings covering every edge equally often.
//!
//! A rational point of {w ≥ 0 : Σ_{M∋e} w_M = 1 for all e} is found by an
//! exact Phase-I simplex; clearing denominators gives a family with
//! p = lcd. A bounded integer search then looks for a smaller p.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{enumerate_perfect_matchings_capped, MatchingError, PerfectMatching, DEFAULT_ENUM_CAP};
use crate::graph::CubicGraph;

const MIN_P_SEARCH_NODES: u64 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformFamily {
    pub p: u64,
    /// Distinct members with their multiplicities, in enumeration order.
    pub members: Vec<(PerfectMatching, u64)>,
    /// Whether every smaller p was ruled out by the integer search.
    pub p_is_minimal: bool,
}

impl UniformFamily {
    /// Members repeated by multiplicity.
    pub fn multiset(&self) -> Vec<&PerfectMatching> {
        self.members.iter().flat_map(|(m, k)| std::iter::repeat_n(m, *k as usize)).collect()
    }

    /// How many members (with multiplicity) contain each edge.
    pub fn edge_counts(&self, g: &CubicGraph) -> Vec<u64> {
        let mut counts = vec![0; g.size()];
        for (m, k) in &self.members {
            for e in m.iter() {
                counts[e] += k;
            }
        }
        counts
    }
}

pub fn uniform_pm_family(g: &CubicGraph) -> Result<UniformFamily, MatchingError> {
    uniform_pm_family_with_cap(g, DEFAULT_ENUM_CAP)
}

pub fn uniform_pm_family_with_cap(g: &CubicGraph, cap: usize) -> Result<UniformFamily, MatchingError> {
    let pms = enumerate_perfect_matchings_capped(g, cap)?;
    if pms.is_empty() {
        return Err(MatchingError::NoPerfectMatching);
    }
    let columns: Vec<Vec<usize>> = pms.iter().map(|m| m.iter().collect()).collect();
    let weights = phase_one(g.size(), &columns).ok_or(MatchingError::NoPerfectMatching)?;

    let lcd = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let p0 = lcd.to_u64().expect("denominator fits in u64");
    let mut mult: Vec<u64> = weights
        .iter()
        .map(|w| (w * BigRational::from_integer(lcd.clone())).to_integer().to_u64().expect("small multiplicity"))
        .collect();
    let mut p = p0;
    let mut p_is_minimal = p0 == 1;
    for q in 1..p0 {
        match integer_family(g.size(), &columns, q) {
            Search::Found(x) => {
                mult = x;
                p = q;
                p_is_minimal = true;
                break;
            }
            Search::None => {
                if q + 1 == p0 {
                    p_is_minimal = true;
                }
            }
            Search::Budget => break,
        }
    }
    let members = pms.into_iter().zip(mult).filter(|(_, k)| *k > 0).collect();
    Ok(UniformFamily { p, members, p_is_minimal })
}

/// Exact Phase-I simplex with Bland's rule for `A w = 1, w ≥ 0`, where column
/// `j` of `A` is the indicator of `columns[j]` over `rows` rows.
fn phase_one(rows: usize, columns: &[Vec<usize>]) -> Option<Vec<BigRational>> {
    let n = columns.len();
    let width = n + rows + 1;
    let rhs = width - 1;
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut t = vec![vec![zero.clone(); width]; rows];
    for (j, col) in columns.iter().enumerate() {
        for &i in col {
            t[i][j] = one.clone();
        }
    }
    for (i, row) in t.iter_mut().enumerate() {
        row[n + i] = one.clone();
        row[rhs] = one.clone();
    }
    let mut basis: Vec<usize> = (n..n + rows).collect();
    // reduced costs of minimising the sum of artificials
    let mut obj = vec![zero.clone(); width];
    for j in (0..n).chain([rhs]) {
        obj[j] = -t.iter().map(|row| row[j].clone()).fold(zero.clone(), |a, b| a + b);
    }

    loop {
        let Some(enter) = (0..n + rows).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave?;
        let pivot = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        basis[r] = enter;
    }
    if !obj[rhs].is_zero() {
        return None;
    }
    let mut w = vec![zero; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            w[b] = t[i][rhs].clone();
        }
    }
    Some(w)
}

enum Search {
    Found(Vec<u64>),
    None,
    Budget,
}

/// Integer multiplicities with every row covered exactly `p` times.
fn integer_family(rows: usize, columns: &[Vec<usize>], p: u64) -> Search {
    let mut by_row: Vec<Vec<usize>> = vec![Vec::new(); rows];
    for (j, col) in columns.iter().enumerate() {
        for &i in col {
            by_row[i].push(j);
        }
    }
    let mut residual = vec![p; rows];
    let mut x = vec![0u64; columns.len()];
    let mut nodes = 0u64;

    fn rec(
        columns: &[Vec<usize>],
        by_row: &[Vec<usize>],
        residual: &mut [u64],
        x: &mut [u64],
        nodes: &mut u64,
    ) -> ControlFlow<bool> {
        *nodes += 1;
        if *nodes > MIN_P_SEARCH_NODES {
            return ControlFlow::Break(false);
        }
        let Some(row) = residual.iter().position(|&r| r > 0) else {
            return ControlFlow::Break(true);
        };
        for &j in &by_row[row] {
            if columns[j].iter().any(|&i| residual[i] == 0) {
                continue;
            }
            for &i in &columns[j] {
                residual[i] -= 1;
            }
            x[j] += 1;
            let flow = rec(columns, by_row, residual, x, nodes);
            if flow.is_break() {
                return flow;
            }
            x[j] -= 1;
            for &i in &columns[j] {
                residual[i] += 1;
            }
        }
        ControlFlow::Continue(())
    }

    match rec(columns, &by_row, &mut residual, &mut x, &mut nodes) {
        ControlFlow::Break(true) => Search::Found(x),
        ControlFlow::Break(false) => Search::Budget,
        ControlFlow::Continue(()) => Search::None,
    }
}
