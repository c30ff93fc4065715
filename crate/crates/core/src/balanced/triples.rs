//! Two disjoint rainbow balanced triples on a good odd cycle.
//!
//! Cycles of length 7 and 9 are answered from tables built by exhaustive
//! search (shipped as fixtures). Longer cycles shrink by deleting two
//! consecutive vertices whose classes stay large enough, which changes one
//! arc by 2 and so preserves balance of triples found on the smaller cycle.

use std::collections::HashMap;
use std::sync::LazyLock;

use super::{is_balanced_triple, is_good_odd_cycle, BalancedError, BalancedTriple, ColouredCycle};

const FIXTURE_7: &str = include_str!("../../fixtures/triples_7.txt");
const FIXTURE_9: &str = include_str!("../../fixtures/triples_9.txt");

/// Nine length-7 configurations with fixed answers, as (colouring
/// x_0..x_6, T, T′). The tables use these in place of the search result.
pub const HAND_CASES: [(&str, [usize; 3], [usize; 3]); 9] = [
    ("3331122", [0, 3, 6], [1, 4, 5]),
    ("3331212", [2, 3, 4], [5, 6, 0]),
    ("3331221", [2, 3, 4], [5, 6, 0]),
    ("3313122", [1, 4, 5], [2, 3, 6]),
    ("3313212", [1, 4, 5], [2, 3, 6]),
    ("3313221", [0, 5, 6], [2, 3, 4]),
    ("3311322", [1, 2, 5], [0, 3, 6]),
    ("3312312", [1, 2, 3], [0, 5, 6]),
    ("3312321", [1, 2, 3], [0, 5, 6]),
];

/// Answers for short cycles, keyed by canonical colour string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleTables {
    entries: HashMap<String, (BalancedTriple, BalancedTriple)>,
}

impl TripleTables {
    /// Parses fixture lines `len colouring a,b,c d,e,f`.
    pub fn parse(texts: &[&str]) -> Result<Self, String> {
        let mut entries = HashMap::new();
        for text in texts {
            for (no, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let fields: Vec<&str> = line.split_whitespace().collect();
                let bad = || format!("line {}: {line:?}", no + 1);
                if fields.len() != 4 {
                    return Err(bad());
                }
                let len: usize = fields[0].parse().map_err(|_| bad())?;
                if fields[1].len() != len {
                    return Err(bad());
                }
                let triple = |s: &str| -> Result<[usize; 3], String> {
                    let v: Vec<usize> = s.split(',').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
                    v.try_into().map_err(|_| bad())
                };
                let t = BalancedTriple(triple(fields[2])?);
                let t2 = BalancedTriple(triple(fields[3])?);
                entries.insert(fields[1].to_string(), (t, t2));
            }
        }
        Ok(TripleTables { entries })
    }

    /// Tables shipped with the crate.
    pub fn shipped() -> &'static TripleTables {
        static TABLES: LazyLock<TripleTables> =
            LazyLock::new(|| TripleTables::parse(&[FIXTURE_7, FIXTURE_9]).expect("shipped fixtures parse"));
        &TABLES
    }

    pub fn get(&self, key: &str) -> Option<(BalancedTriple, BalancedTriple)> {
        self.entries.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Replaces one entry; used to plant a deliberate fault in test runs.
    pub fn set(&mut self, key: &str, value: (BalancedTriple, BalancedTriple)) {
        self.entries.insert(key.to_string(), value);
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }
}

/// Renames colours so that classes are numbered by increasing size, ties
/// broken by the smallest position in the class.
pub fn canonical_key(colours: &[u8]) -> String {
    let mut info: Vec<(usize, usize, u8)> = (1..=3u8)
        .map(|c| {
            let size = colours.iter().filter(|&&x| x == c).count();
            let first = colours.iter().position(|&x| x == c).unwrap_or(usize::MAX);
            (size, first, c)
        })
        .collect();
    info.sort();
    let mut rename = [0u8; 4];
    for (new, &(_, _, old)) in info.iter().enumerate() {
        rename[old as usize] = new as u8 + 1;
    }
    colours.iter().map(|&c| char::from(b'0' + rename[c as usize])).collect()
}

/// All balanced triples meeting each colour once, in lexicographic order.
pub fn rainbow_balanced_triples(colours: &[u8]) -> Vec<BalancedTriple> {
    let len = colours.len();
    let mut out = Vec::new();
    for a in 0..len {
        for b in (a + 1..len).step_by(2) {
            if colours[b] == colours[a] {
                continue;
            }
            for c in (b + 1..len).step_by(2) {
                if colours[c] == colours[a] || colours[c] == colours[b] {
                    continue;
                }
                let t = BalancedTriple([a, b, c]);
                if is_balanced_triple(len, &t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// First (T, T′) with T before T′ lexicographically, by exhaustive search.
pub fn oracle_disjoint_triples(colours: &[u8]) -> Option<(BalancedTriple, BalancedTriple)> {
    let all = rainbow_balanced_triples(colours);
    for (i, t) in all.iter().enumerate() {
        for t2 in &all[i + 1..] {
            if t.is_disjoint(t2) {
                return Some((*t, *t2));
            }
        }
    }
    None
}

/// Every good colouring of length `len` (canonical form), with the oracle's
/// answer, hand cases overriding. Lines are sorted by colouring.
pub fn build_triple_table(len: usize) -> Vec<(String, BalancedTriple, BalancedTriple)> {
    let mut keys = std::collections::BTreeSet::new();
    let mut colours = vec![1u8; len];
    loop {
        let cyc = ColouredCycle::from_colours(&colours).expect("valid colours");
        if is_good_odd_cycle(&cyc).unwrap_or(false) {
            keys.insert(canonical_key(&colours));
        }
        let mut i = 0;
        while i < len && colours[i] == 3 {
            colours[i] = 1;
            i += 1;
        }
        if i == len {
            break;
        }
        colours[i] += 1;
    }
    keys.into_iter()
        .map(|key| {
            let cs: Vec<u8> = key.bytes().map(|b| b - b'0').collect();
            if let Some((_, t, t2)) = HAND_CASES.iter().find(|(k, _, _)| canonical_key(&parse_digits(k)) == key) {
                return (key, BalancedTriple::new(*t), BalancedTriple::new(*t2));
            }
            let (t, t2) = oracle_disjoint_triples(&cs).expect("every good cycle of length 7 or 9 has a solution");
            (key, t, t2)
        })
        .collect()
}

fn parse_digits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

/// Renders a table in fixture format.
pub fn render_table(len: usize, rows: &[(String, BalancedTriple, BalancedTriple)]) -> String {
    let fmt = |t: &BalancedTriple| format!("{},{},{}", t.0[0], t.0[1], t.0[2]);
    let mut s = format!("# length {len}: colouring T T'\n");
    for (k, t, t2) in rows {
        s.push_str(&format!("{len} {k} {} {}\n", fmt(t), fmt(t2)));
    }
    s
}

pub fn find_disjoint_balanced_triples(c: &ColouredCycle) -> Result<(BalancedTriple, BalancedTriple), BalancedError> {
    find_disjoint_balanced_triples_with(c, TripleTables::shipped())
}

/// Two disjoint balanced triples, each meeting every colour class once.
pub fn find_disjoint_balanced_triples_with(
    c: &ColouredCycle,
    tables: &TripleTables,
) -> Result<(BalancedTriple, BalancedTriple), BalancedError> {
    if !is_good_odd_cycle(c)? {
        return Err(BalancedError::NotGoodOddCycle);
    }
    solve(c.colours(), tables)
}

fn solve(colours: &[u8], tables: &TripleTables) -> Result<(BalancedTriple, BalancedTriple), BalancedError> {
    let len = colours.len();
    if len <= 9 {
        let key = canonical_key(colours);
        return tables.get(&key).ok_or(BalancedError::TableMiss(key));
    }
    let mut sizes = [0usize; 4];
    for &c in colours {
        sizes[c as usize] += 1;
    }
    let j = (0..len)
        .find(|&j| {
            let (a, b) = (colours[j], colours[(j + 1) % len]);
            if a == b {
                sizes[a as usize] >= 4
            } else {
                sizes[a as usize] >= 3 && sizes[b as usize] >= 3
            }
        })
        .ok_or_else(|| BalancedError::PreconditionFailed("no contractible pair of consecutive vertices".into()))?;
    let cut = [j, (j + 1) % len];
    let kept: Vec<usize> = (0..len).filter(|p| !cut.contains(p)).collect();
    let reduced: Vec<u8> = kept.iter().map(|&p| colours[p]).collect();
    let (t, t2) = solve(&reduced, tables)?;
    let lift = |t: BalancedTriple| BalancedTriple::new(t.0.map(|p| kept[p]));
    Ok((lift(t), lift(t2)))
}
