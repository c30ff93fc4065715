//! Two disjoint balanced pairs on an even cycle. A pair is balanced exactly
//! when its positions have opposite parity.

use super::{is_good_even_cycle, BalancedError, BalancedPair, ColouredCycle};

/// The colour used as the origin class for colour `i`: the largest class
/// other than `i` with at least two vertices, ties to the lower colour.
pub fn second_colour(c: &ColouredCycle, i: u8) -> Option<u8> {
    let sizes = c.class_sizes();
    let mut others: Vec<u8> = (1..=3).filter(|&k| k != i && sizes[k as usize - 1] >= 2).collect();
    others.sort_by_key(|&k| (std::cmp::Reverse(sizes[k as usize - 1]), k));
    others.first().copied()
}

/// Two disjoint balanced pairs, each meeting A_i exactly once.
///
/// With x_0 the first vertex of the origin class, let x_a and x_b be the
/// first and last vertices of A_i. Unless a = 1 and b = L − 1 the pairs are
/// {x_{a−1}, x_a} and {x_b, x_{b+1}}. Otherwise take the next origin-class
/// vertex x_l and the first x_m ∈ A_i after it: {x_0, x_1} and
/// {x_{m−1}, x_m}.
pub fn find_disjoint_balanced_pairs(
    c: &ColouredCycle,
    i: u8,
) -> Result<(BalancedPair, BalancedPair), BalancedError> {
    if !(1..=3).contains(&i) {
        return Err(BalancedError::PreconditionFailed(format!("colour {i} outside 1..=3")));
    }
    if !is_good_even_cycle(c)? {
        return Err(BalancedError::PreconditionFailed("not a good even cycle".into()));
    }
    let len = c.len();
    if c.class_sizes()[i as usize - 1] < 2 {
        return Err(BalancedError::PreconditionFailed(format!("class {i} has fewer than two vertices")));
    }
    let c2 = second_colour(c, i)
        .ok_or_else(|| BalancedError::PreconditionFailed("no second class with two vertices".into()))?;
    let origin = c.class(c2)[0];
    let at = |k: usize| (origin + k) % len;
    let col = |k: usize| c.colour(at(k));

    let a = (1..len).find(|&k| col(k) == i).expect("class i is non-empty");
    let b = (1..len).rev().find(|&k| col(k) == i).expect("class i is non-empty");
    let (p, q) = if a != 1 || b != len - 1 {
        (BalancedPair::new(at(a - 1), at(a)), BalancedPair::new(at(b), at(b + 1)))
    } else {
        let l = (2..len - 1).find(|&k| col(k) == c2).expect("second origin-class vertex");
        let m = (l + 1..len).find(|&k| col(k) == i).expect("x_{L-1} is in A_i");
        (BalancedPair::new(at(0), at(1)), BalancedPair::new(at(m - 1), at(m)))
    };
    Ok((p, q))
}

/// Two disjoint balanced pairs, each with one vertex in `a` and one in `b`,
/// on an even cycle of length `len` = 2p ≥ 8 whose positions other than
/// `excluded` are split into `a` and `b` with |a|, |b| ≥ p − 2.
///
/// Positions are red when even and blue when odd. Either one side has two
/// vertices of one colour and the other two of the other colour, or each
/// side has both colours; in the second case red of `a` pairs with blue of
/// `b` and blue of `a` with red of `b`.
pub fn find_pairs_ab(
    len: usize,
    excluded: [usize; 2],
    a: &[usize],
    b: &[usize],
) -> Result<(BalancedPair, BalancedPair), BalancedError> {
    let fail = |m: &str| Err(BalancedError::PreconditionFailed(m.into()));
    if len % 2 == 1 || len < 8 {
        return fail("cycle length must be even and at least 8");
    }
    let half = len / 2;
    if excluded[0] == excluded[1] || excluded.iter().any(|&x| x >= len) {
        return fail("excluded vertices must be two distinct positions");
    }
    let mut seen = vec![0u8; len];
    for &x in excluded.iter().chain(a).chain(b) {
        if x >= len {
            return fail("position out of range");
        }
        seen[x] += 1;
    }
    if seen.iter().any(|&s| s != 1) {
        return fail("excluded, A and B must partition the cycle");
    }
    if a.len() + 2 < half || b.len() + 2 < half {
        return fail("A and B need at least p - 2 vertices each");
    }
    let split = |side: &[usize]| {
        let mut red: Vec<usize> = side.iter().copied().filter(|x| x % 2 == 0).collect();
        let mut blue: Vec<usize> = side.iter().copied().filter(|x| x % 2 == 1).collect();
        red.sort_unstable();
        blue.sort_unstable();
        (red, blue)
    };
    let (a_red, a_blue) = split(a);
    let (b_red, b_blue) = split(b);
    if a_red.len() >= 2 && b_blue.len() >= 2 {
        return Ok((BalancedPair::new(a_red[0], b_blue[0]), BalancedPair::new(a_red[1], b_blue[1])));
    }
    if a_blue.len() >= 2 && b_red.len() >= 2 {
        return Ok((BalancedPair::new(a_blue[0], b_red[0]), BalancedPair::new(a_blue[1], b_red[1])));
    }
    if !a_red.is_empty() && !a_blue.is_empty() && !b_red.is_empty() && !b_blue.is_empty() {
        return Ok((BalancedPair::new(a_red[0], b_blue[0]), BalancedPair::new(a_blue[0], b_red[0])));
    }
    fail("no red/blue configuration applies")
}
