//! Brute-force factor counting: subword complexity and cyclic complexity.
//!
//! An infinite word is examined through a finite prefix. The prefix is grown
//! geometrically until one further doubling adds no new factor, which
//! certifies (for uniformly recurrent words, and for words of bounded factor
//! growth) that the counted set is the full factor set.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::words::{cyclic_equal, FactorWord, RotationScratch, Symbol, SymbolStream};

/// Default cap on the prefix length examined by the stabilization loop.
pub const DEFAULT_PREFIX_CAP: usize = 1 << 26;

const HASH_MOD: u64 = (1 << 61) - 1;
const HASH_BASE: u64 = 1_000_003;

fn mul_mod(a: u64, b: u64) -> u64 {
    let p = (a as u128) * (b as u128);
    let lo = (p as u64) & HASH_MOD;
    let hi = (p >> 61) as u64;
    let s = lo + hi;
    if s >= HASH_MOD {
        s - HASH_MOD
    } else {
        s
    }
}

/// The distinct length-`n` factors of a finite text, kept as first-occurrence
/// positions into the text.
#[derive(Debug, Clone)]
pub struct FactorSet {
    text: Vec<Symbol>,
    n: usize,
    starts: Vec<usize>,
}

impl FactorSet {
    /// Distinct windows of `text` of length `n`, in order of first occurrence.
    pub fn from_text(text: Vec<Symbol>, n: usize) -> Self {
        let starts = distinct_windows(&text, n);
        FactorSet { text, n, starts }
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    pub fn factor_len(&self) -> usize {
        self.n
    }

    /// Length of the examined prefix.
    pub fn prefix_len(&self) -> usize {
        self.text.len()
    }

    /// Offsets (relative to the domain start) of first occurrences.
    pub fn first_occurrences(&self) -> &[usize] {
        &self.starts
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Symbol]> + '_ {
        self.starts.iter().map(move |&i| &self.text[i..i + self.n])
    }

    pub fn to_words(&self) -> Vec<FactorWord> {
        self.iter().map(|s| FactorWord(s.to_vec())).collect()
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        w.len() == self.n && self.iter().any(|s| s == w)
    }

    /// Number of conjugacy classes among the factors.
    pub fn cyclic_count(&self) -> usize {
        let mut seen: HashSet<Vec<Symbol>> = HashSet::with_capacity(self.len());
        let mut booth = RotationScratch::default();
        let mut buf = Vec::with_capacity(self.n);
        for s in self.iter() {
            booth.canonical_into(s, &mut buf);
            if !seen.contains(buf.as_slice()) {
                seen.insert(buf.clone());
            }
        }
        seen.len()
    }
}

/// First-occurrence start positions of the distinct length-`n` windows.
fn distinct_windows(text: &[Symbol], n: usize) -> Vec<usize> {
    if text.len() < n {
        return Vec::new();
    }
    if n == 0 {
        return vec![0];
    }
    let count = text.len() - n + 1;
    if n <= 64 {
        // exact packing
        let mut seen = HashSet::new();
        let mut starts = Vec::new();
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let wide = text.iter().any(|&s| s > 1);
        if !wide {
            let mut key = 0u64;
            for (i, &s) in text.iter().enumerate() {
                key = ((key << 1) | s as u64) & mask;
                if i + 1 >= n && seen.insert(key) {
                    starts.push(i + 1 - n);
                }
            }
            return starts;
        }
    }
    let mut top = 1u64; // HASH_BASE^(n-1)
    for _ in 1..n {
        top = mul_mod(top, HASH_BASE);
    }
    let mut h = 0u64;
    for &s in &text[..n] {
        h = (mul_mod(h, HASH_BASE) + s as u64 + 1) % HASH_MOD;
    }
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut starts = Vec::new();
    for i in 0..count {
        if i > 0 {
            let out = mul_mod(text[i - 1] as u64 + 1, top);
            h = (h + HASH_MOD - out) % HASH_MOD;
            h = (mul_mod(h, HASH_BASE) + text[i + n - 1] as u64 + 1) % HASH_MOD;
        }
        let bucket = buckets.entry(h).or_default();
        let window = &text[i..i + n];
        if !bucket.iter().any(|&j| &text[j..j + n] == window) {
            bucket.push(i);
            starts.push(i);
        }
    }
    starts
}

/// The distinct length-`n` factors starting at offsets `i` with `i + n <= len`
/// (offsets relative to the stream's domain start).
pub fn factor_set(stream: &dyn SymbolStream, n: usize, len: usize) -> FactorSet {
    FactorSet::from_text(stream.prefix(len), n)
}

/// How much of a stream a query examines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixLength {
    /// Grow geometrically until the factor set is stable under one doubling.
    Auto { cap: usize },
    /// Use exactly this many symbols; must be at least `n`.
    Explicit(usize),
}

impl Default for PrefixLength {
    fn default() -> Self {
        PrefixLength::Auto {
            cap: DEFAULT_PREFIX_CAP,
        }
    }
}

/// A single counting query against a stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityQuery {
    pub n: usize,
    pub prefix_length: PrefixLength,
}

impl ComplexityQuery {
    pub fn new(n: usize) -> Self {
        ComplexityQuery {
            n,
            prefix_length: PrefixLength::default(),
        }
    }

    pub fn with_prefix(mut self, prefix_length: PrefixLength) -> Self {
        self.prefix_length = prefix_length;
        self
    }

    /// The factor set this query counts over.
    pub fn factors(&self, stream: &dyn SymbolStream) -> Result<FactorSet> {
        match self.prefix_length {
            PrefixLength::Explicit(len) => {
                if len < self.n {
                    return Err(Error::Shape(format!(
                        "prefix length {len} shorter than factor length {}",
                        self.n
                    )));
                }
                Ok(factor_set(stream, self.n, len))
            }
            PrefixLength::Auto { cap } => stabilized_factor_set(stream, self.n, cap),
        }
    }

    pub fn cyclic(&self, stream: &dyn SymbolStream) -> Result<u64> {
        Ok(self.factors(stream)?.cyclic_count() as u64)
    }

    pub fn subword(&self, stream: &dyn SymbolStream) -> Result<u64> {
        Ok(self.factors(stream)?.len() as u64)
    }
}

fn stabilized_factor_set(stream: &dyn SymbolStream, n: usize, cap: usize) -> Result<FactorSet> {
    let mut len = (2 * n).max(64);
    let mut text = stream.prefix(len.min(cap));
    if len > cap {
        return Err(Error::NoStabilization { n, cap });
    }
    let mut current = FactorSet::from_text(text.clone(), n);
    loop {
        let next_len = 2 * len;
        if next_len > cap {
            return Err(Error::NoStabilization { n, cap });
        }
        let start = stream.domain_start();
        text.extend((len as u64..next_len as u64).map(|k| stream.symbol(start + k)));
        let next = FactorSet::from_text(text.clone(), n);
        // factor sets of prefixes are nested, so equal size means equal sets
        if next.len() == current.len() {
            return Ok(current);
        }
        current = next;
        len = next_len;
    }
}

/// Smallest `L = max(2n, 64) * 2^k` whose factor set equals that of `2L`.
pub fn stabilized_prefix_length(stream: &dyn SymbolStream, n: usize) -> Result<usize> {
    stabilized_prefix_length_with_cap(stream, n, DEFAULT_PREFIX_CAP)
}

pub fn stabilized_prefix_length_with_cap(
    stream: &dyn SymbolStream,
    n: usize,
    cap: usize,
) -> Result<usize> {
    Ok(stabilized_factor_set(stream, n, cap)?.prefix_len())
}

/// Number of length-`n` factors counted up to rotation.
pub fn cyclic_complexity(stream: &dyn SymbolStream, n: usize) -> Result<u64> {
    ComplexityQuery::new(n).cyclic(stream)
}

/// Number of distinct length-`n` factors.
pub fn subword_complexity(stream: &dyn SymbolStream, n: usize) -> Result<u64> {
    ComplexityQuery::new(n).subword(stream)
}

/// Cyclic complexity by first-occurrence counting: position `i` counts iff no
/// earlier position starts a rotation of the window at `i`. Quadratic; kept as
/// an independent cross-check for small `n`.
pub fn cyclic_complexity_pairwise(stream: &dyn SymbolStream, n: usize) -> Result<u64> {
    let len = stabilized_prefix_length(stream, n)?;
    let text = stream.prefix(len);
    let mut firsts: Vec<FactorWord> = Vec::new();
    for i in 0..=(len - n) {
        let w = FactorWord(text[i..i + n].to_vec());
        if !firsts.iter().any(|u| cyclic_equal(&w, u)) {
            firsts.push(w);
        }
    }
    Ok(firsts.len() as u64)
}

/// Cyclic complexity of the characteristic word of the powers of two
/// (`p[i] = 1` iff `i` is a power of two, indexed from 1), computed from the
/// structure of its factors rather than by enumeration.
///
/// A window `[s, s + n)` holding two or more ones must have `s < n`, and its
/// conjugacy class is fixed by the cyclic sequence of gaps between the
/// ones, which depends only on the run `2^lo, ..., 2^hi` of powers it
/// covers. All windows with a single one are conjugate, and a window with
/// none always exists. So it suffices to find which runs occur.
pub fn cyclic_complexity_powers_of_two(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let n = n as u128;
    let top = 130 - n.leading_zeros() as usize; // beyond this no two powers share a window
    let mut classes: HashSet<Vec<u128>> = HashSet::new();
    for lo in 0..top {
        for hi in lo..top {
            let (plo, phi) = (1u128 << lo, 1u128 << hi);
            if phi - plo >= n {
                break;
            }
            // s is the window start: 2^(lo-1) < s <= 2^lo and 2^hi < s + n <= 2^(hi+1)
            let s_min = if lo == 0 { 1 } else { (plo >> 1) + 1 }.max((phi + 1).saturating_sub(n));
            let s_max = plo.min((phi << 1).saturating_sub(n));
            if s_min > s_max || s_max == 0 {
                continue;
            }
            let mut gaps: Vec<u128> = (lo..hi).map(|a| 1u128 << a).collect();
            gaps.push(n - (phi - plo));
            classes.insert(least_cyclic_shift(gaps));
        }
    }
    classes.len() as u64 + 1
}

fn least_cyclic_shift(v: Vec<u128>) -> Vec<u128> {
    (0..v.len())
        .map(|k| {
            let mut r = v.clone();
            r.rotate_left(k);
            r
        })
        .min()
        .unwrap_or(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{canonical_rotation, PowersOfTwo, ThueMorse};

    const TABLE1: [u64; 20] = [
        1, 2, 3, 2, 4, 4, 6, 8, 12, 8, 12, 16, 14, 18, 18, 18, 28, 20, 20, 28,
    ];

    #[test]
    fn powers_of_two_structure_matches_enumeration() {
        for n in 0..=300usize {
            assert_eq!(
                cyclic_complexity_powers_of_two(n as u64),
                cyclic_complexity(&PowersOfTwo, n).unwrap(),
                "n = {n}"
            );
        }
        for k in 0..=40u32 {
            assert_eq!(cyclic_complexity_powers_of_two(1 << k), k as u64 + 2);
        }
    }

    #[test]
    fn table_one() {
        for (n, &c) in TABLE1.iter().enumerate() {
            assert_eq!(cyclic_complexity(&ThueMorse, n).unwrap(), c, "n = {n}");
        }
    }

    #[test]
    fn factor_set_examples() {
        let s = factor_set(&ThueMorse, 1, 8);
        let mut w = s.to_words();
        w.sort();
        assert_eq!(w, vec![FactorWord(vec![0]), FactorWord(vec![1])]);
        assert_eq!(factor_set(&ThueMorse, 2, 4096).len(), 4);
        let e = factor_set(&ThueMorse, 0, 17);
        assert_eq!(e.len(), 1);
        assert!(e.to_words()[0].is_empty());
    }

    #[test]
    fn hashed_windows_match_packed_windows() {
        // n > 64 forces the rolling-hash path; compare against a plain set
        let text = ThueMorse.prefix(3000);
        for n in [65, 70, 100, 129] {
            let fs = FactorSet::from_text(text.clone(), n);
            let plain: HashSet<&[u8]> = text.windows(n).collect();
            assert_eq!(fs.len(), plain.len());
        }
        // alphabet wider than binary also takes the hashed path
        let text: Vec<u8> = (0..500u32).map(|i| (i * i % 7 % 3) as u8).collect();
        let fs = FactorSet::from_text(text.clone(), 5);
        let plain: HashSet<&[u8]> = text.windows(5).collect();
        assert_eq!(fs.len(), plain.len());
    }

    #[test]
    fn stabilization() {
        let l1 = stabilized_prefix_length(&ThueMorse, 1).unwrap();
        assert_eq!(factor_set(&ThueMorse, 1, l1).len(), 2);
        let l8 = stabilized_prefix_length(&ThueMorse, 8).unwrap();
        assert!(l8 >= 64 && (l8 / 64).is_power_of_two());
        assert_eq!(
            factor_set(&ThueMorse, 8, l8).cyclic_count(),
            factor_set(&ThueMorse, 8, 4 * l8).cyclic_count()
        );
        assert_eq!(cyclic_complexity(&ThueMorse, 8).unwrap(), 12);
        assert!(stabilized_prefix_length(&PowersOfTwo, 4).is_ok());
        assert!(matches!(
            stabilized_prefix_length_with_cap(&ThueMorse, 40, 100),
            Err(Error::NoStabilization { .. })
        ));
    }

    #[test]
    fn doubling_never_changes_counts() {
        for n in 0..=64 {
            let len = stabilized_prefix_length(&ThueMorse, n).unwrap();
            let a = factor_set(&ThueMorse, n, len);
            let b = factor_set(&ThueMorse, n, 2 * len);
            assert_eq!(a.len(), b.len());
            assert_eq!(a.cyclic_count(), b.cyclic_count());
        }
    }

    #[test]
    fn powers_of_two_word() {
        assert_eq!(cyclic_complexity(&PowersOfTwo, 16).unwrap(), 6);
        assert_eq!(cyclic_complexity(&PowersOfTwo, 1).unwrap(), 2);
    }

    #[test]
    fn subword_bounds() {
        assert_eq!(subword_complexity(&ThueMorse, 0).unwrap(), 1);
        assert_eq!(subword_complexity(&ThueMorse, 1).unwrap(), 2);
        for n in 1..=100usize {
            let rho = subword_complexity(&ThueMorse, n).unwrap();
            let c = cyclic_complexity(&ThueMorse, n).unwrap();
            assert!(c <= rho && rho <= n as u64 * c, "n = {n}");
        }
    }

    #[test]
    fn pairwise_scan_agrees_with_canonical_dedup() {
        for n in 0..=32 {
            assert_eq!(
                cyclic_complexity_pairwise(&ThueMorse, n).unwrap(),
                cyclic_complexity(&ThueMorse, n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn scratch_matches_word_canonical() {
        let mut scratch = RotationScratch::default();
        let mut buf = Vec::new();
        let text = ThueMorse.prefix(400);
        for n in [1, 2, 7, 31, 100] {
            for s in text.windows(n).take(50) {
                scratch.canonical_into(s, &mut buf);
                assert_eq!(buf, canonical_rotation(&FactorWord(s.to_vec())).0);
            }
        }
    }

    #[test]
    fn explicit_prefix_query() {
        let q = ComplexityQuery::new(3).with_prefix(PrefixLength::Explicit(2));
        assert!(q.cyclic(&ThueMorse).is_err());
        let q = ComplexityQuery::new(3).with_prefix(PrefixLength::Explicit(1000));
        assert_eq!(q.cyclic(&ThueMorse).unwrap(), 2);
    }
}
