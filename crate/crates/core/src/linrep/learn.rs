//! Learning a linear representation from sequence values.
//!
//! Rows of a Hankel table are indexed by prefixes (msd-first digit strings
//! without leading zeros), columns by suffixes (all digit strings up to a
//! fixed length, leading zeros significant); entry `(p, s)` is the oracle at
//! `val(ps)`. Prefixes are explored breadth-first, shortest and then
//! lexicographically smallest first, and kept when their row is independent
//! of the rows kept so far. The kept prefixes become the states.

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use super::basis::RowBasis;
use super::rational::{Rational, RationalMatrix};
use super::LinearRepresentation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LearnConfig {
    pub rank_cap: usize,
    /// The oracle is consulted only below `2^training_depth`, and the result
    /// must reproduce it on all of `0..2^training_depth`.
    pub training_depth: usize,
}

impl Default for LearnConfig {
    fn default() -> Self {
        LearnConfig {
            rank_cap: 64,
            training_depth: 9,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Learned {
    pub rep: LinearRepresentation,
    /// State prefixes, in the order of the basis.
    pub prefixes: Vec<Vec<u8>>,
    /// Hankel columns.
    pub suffixes: Vec<Vec<u8>>,
    /// Number of distinct oracle calls.
    pub oracle_calls: usize,
}

impl Learned {
    pub fn rank(&self) -> usize {
        self.rep.rank()
    }
}

fn value(digits: &[u8]) -> u64 {
    digits.iter().fold(0u64, |acc, &d| (acc << 1) | d as u64)
}

/// All digit strings of length `0..=max_len`, by length then lexicographically.
fn all_strings(max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for len in 1..=max_len {
        for bits in 0..(1u64 << len) {
            out.push((0..len).rev().map(|k| ((bits >> k) & 1) as u8).collect());
        }
    }
    out
}

struct Memo<F> {
    oracle: F,
    cache: HashMap<u64, Rational>,
}

impl<F: FnMut(u64) -> Result<Rational>> Memo<F> {
    fn get(&mut self, n: u64) -> Result<Rational> {
        if let Some(x) = self.cache.get(&n) {
            return Ok(x.clone());
        }
        let x = (self.oracle)(n)?;
        self.cache.insert(n, x.clone());
        Ok(x)
    }
}

/// Learns a representation of `oracle` (an `n -> value` function).
///
/// With depth `D`, columns are all suffixes of length at most `D / 2` and
/// kept prefixes may be at most `D - D / 2 - 1` long, so every table entry
/// lies below `2^D`.
pub fn learn_from_oracle<F>(oracle: F, config: LearnConfig) -> Result<Learned>
where
    F: FnMut(u64) -> Result<Rational>,
{
    let depth = config.training_depth;
    if depth == 0 || depth > 40 {
        return Err(Error::Shape(format!(
            "training depth {depth} outside 1..=40"
        )));
    }
    let mut memo = Memo {
        oracle,
        cache: HashMap::new(),
    };
    let suffix_len = depth / 2;
    let max_prefix = depth - suffix_len - 1;
    let suffixes = all_strings(suffix_len);

    let mut basis = RowBasis::new(suffixes.len());
    let mut prefixes: Vec<Vec<u8>> = Vec::new();
    // coordinates of each explored candidate over the kept rows
    let mut coords: HashMap<Vec<u8>, Vec<Rational>> = HashMap::new();
    let mut queue: VecDeque<Vec<u8>> = VecDeque::from([Vec::new()]);
    while let Some(p) = queue.pop_front() {
        if coords.contains_key(&p) {
            continue;
        }
        let row = suffixes
            .iter()
            .map(|s| memo.get((value(&p) << s.len()) | value(s)))
            .collect::<Result<Vec<_>>>()?;
        match basis.insert(row) {
            Some(c) => {
                coords.insert(p, c);
            }
            None => {
                if p.len() > max_prefix {
                    return Err(Error::Inconsistent {
                        depth,
                        detail: format!(
                            "prefix {} adds a new state but exceeds the explorable length {max_prefix}",
                            digits_str(&p)
                        ),
                    });
                }
                let k = prefixes.len();
                if k + 1 > config.rank_cap {
                    return Err(Error::RankCap {
                        rank: k + 1,
                        cap: config.rank_cap,
                    });
                }
                let mut e = vec![Rational::zero(); k + 1];
                e[k] = Rational::from_integer(1.into());
                coords.insert(p.clone(), e);
                prefixes.push(p.clone());
                for d in 0..2u8 {
                    let mut q = p.clone();
                    // a leading zero reproduces the empty prefix
                    if !(q.is_empty() && d == 0) {
                        q.push(d);
                        queue.push_back(q);
                    }
                }
            }
        }
    }
    let r = prefixes.len();
    if r == 0 {
        let rep = LinearRepresentation::zero();
        validate(&rep, &mut memo, depth)?;
        return Ok(Learned {
            rep,
            prefixes,
            suffixes,
            oracle_calls: memo.cache.len(),
        });
    }
    let mut gamma = [RationalMatrix::zeros(r, r), RationalMatrix::zeros(r, r)];
    for (i, p) in prefixes.iter().enumerate() {
        for d in 0..2u8 {
            let c = if p.is_empty() && d == 0 {
                LinearRepresentation::one_hot(r, 0)
            } else {
                let mut q = p.clone();
                q.push(d);
                coords[&q].clone()
            };
            for (j, x) in c.into_iter().enumerate() {
                gamma[d as usize][(i, j)] = x;
            }
        }
    }
    let w = prefixes
        .iter()
        .map(|p| memo.get(value(p)))
        .collect::<Result<Vec<_>>>()?;
    let [g0, g1] = gamma;
    let rep = LinearRepresentation::new(LinearRepresentation::one_hot(r, 0), g0, g1, w)?;
    validate(&rep, &mut memo, depth)?;
    Ok(Learned {
        rep,
        prefixes,
        suffixes,
        oracle_calls: memo.cache.len(),
    })
}

fn validate<F: FnMut(u64) -> Result<Rational>>(
    rep: &LinearRepresentation,
    memo: &mut Memo<F>,
    depth: usize,
) -> Result<()> {
    let top = (1u64 << depth) - 1;
    let values = rep.values_up_to(top);
    for (n, got) in values.iter().enumerate() {
        let want = memo.get(n as u64)?;
        if *got != want {
            return Err(Error::Inconsistent {
                depth,
                detail: format!("learned value {got} differs from oracle {want} at n = {n}"),
            });
        }
    }
    Ok(())
}

fn digits_str(d: &[u8]) -> String {
    if d.is_empty() {
        return "(empty)".into();
    }
    d.iter().map(|x| char::from(b'0' + x)).collect()
}
