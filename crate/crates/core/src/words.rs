//! Infinite words, factor extraction and conjugacy canonicalization.
//!
//! Symbols are small integers (`u8`). Every stream declares the first index
//! of its domain: the Thue-Morse word starts at 0, the characteristic word
//! of the powers of two starts at 1 so its prefix reads `11010001`.

use std::fmt;

use crate::error::{Error, Result};

pub type Symbol = u8;

/// An indexable infinite word over a finite alphabet.
pub trait SymbolStream: Send + Sync {
    /// Number of symbols in the alphabet; symbols are `0..alphabet_size()`.
    fn alphabet_size(&self) -> usize;

    /// First valid index.
    fn domain_start(&self) -> u64;

    /// Symbol at index `i`. Callers must respect [`SymbolStream::domain_start`].
    fn symbol(&self, i: u64) -> Symbol;

    /// Short identifier used in reports.
    fn name(&self) -> String;

    /// Checked access.
    fn at(&self, i: u64) -> Result<Symbol> {
        if i < self.domain_start() {
            return Err(Error::OutOfDomain {
                index: i,
                start: self.domain_start(),
            });
        }
        Ok(self.symbol(i))
    }

    /// The `len` symbols starting at the domain start.
    fn prefix(&self, len: usize) -> Vec<Symbol> {
        let start = self.domain_start();
        (0..len as u64).map(|k| self.symbol(start + k)).collect()
    }
}

/// The Thue-Morse word `t = 0110 1001 ...`, indexed from 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ThueMorse;

impl SymbolStream for ThueMorse {
    fn alphabet_size(&self) -> usize {
        2
    }
    fn domain_start(&self) -> u64 {
        0
    }
    fn symbol(&self, i: u64) -> Symbol {
        tm_at(i)
    }
    fn name(&self) -> String {
        "tm".to_string()
    }
    fn prefix(&self, len: usize) -> Vec<Symbol> {
        // t[2i] = t[i], t[2i+1] = 1 - t[i]
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let s = if i == 0 {
                0
            } else if i % 2 == 0 {
                out[i / 2]
            } else {
                1 - out[i / 2]
            };
            out.push(s);
        }
        out
    }
}

/// Characteristic word of the powers of two, `p = 1101 0001 ...`, indexed from 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PowersOfTwo;

impl SymbolStream for PowersOfTwo {
    fn alphabet_size(&self) -> usize {
        2
    }
    fn domain_start(&self) -> u64 {
        1
    }
    fn symbol(&self, i: u64) -> Symbol {
        u8::from(i.is_power_of_two())
    }
    fn name(&self) -> String {
        "p".to_string()
    }
}

/// Parity of the number of 1-bits of `i`.
pub fn tm_at(i: u64) -> Symbol {
    (i.count_ones() & 1) as Symbol
}

/// `1` iff `i` is a power of two. Index 0 lies outside the domain.
pub fn p_at(i: u64) -> Result<Symbol> {
    PowersOfTwo.at(i)
}

/// A finite word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FactorWord(pub Vec<Symbol>);

impl FactorWord {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        FactorWord(symbols)
    }

    /// Parses a word written with decimal digits, e.g. `"0110"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as Symbol)
                    .ok_or_else(|| Error::Parse(format!("bad symbol {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(FactorWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// Rotation moving the first `k` symbols to the end.
    pub fn rotate(&self, k: usize) -> FactorWord {
        let mut s = self.0.clone();
        if !s.is_empty() {
            let len = s.len();
            s.rotate_left(k % len);
        }
        FactorWord(s)
    }
}

impl fmt::Display for FactorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A conjugacy class, stored as its lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicClass {
    canonical: FactorWord,
}

impl CyclicClass {
    pub fn of(w: &FactorWord) -> Self {
        CyclicClass {
            canonical: canonical_rotation(w),
        }
    }

    pub fn canonical(&self) -> &FactorWord {
        &self.canonical
    }
}

/// The `n` symbols at positions `i..i+n`.
pub fn factor(stream: &dyn SymbolStream, i: u64, n: usize) -> Result<FactorWord> {
    if i < stream.domain_start() {
        return Err(Error::OutOfDomain {
            index: i,
            start: stream.domain_start(),
        });
    }
    Ok(FactorWord(
        (0..n as u64).map(|k| stream.symbol(i + k)).collect(),
    ))
}

/// Reusable buffers for repeated least-rotation computations (Booth's
/// algorithm, linear time).
#[derive(Debug, Default)]
pub struct RotationScratch {
    fail: Vec<usize>,
}

impl RotationScratch {
    /// Start index of the lexicographically least rotation of `s`.
    ///
    /// The failure function runs over the doubled word without materializing it.
    pub fn least_rotation(&mut self, s: &[Symbol]) -> usize {
        let n = s.len();
        if n == 0 {
            return 0;
        }
        self.fail.clear();
        self.fail.resize(2 * n, usize::MAX);
        let fail = &mut self.fail;
        let at = |i: usize| if i < n { s[i] } else { s[i - n] };
        let mut k = 0usize;
        for j in 1..2 * n {
            let sj = at(j);
            // usize::MAX plays the role of -1
            let mut i = fail[j - k - 1];
            while i != usize::MAX && sj != at(k + i + 1) {
                if sj < at(k + i + 1) {
                    k = j - i - 1;
                }
                i = fail[i];
            }
            if i == usize::MAX && sj != at(k) {
                if sj < at(k) {
                    k = j;
                }
                fail[j - k] = usize::MAX;
            } else {
                fail[j - k] = i.wrapping_add(1);
            }
        }
        k
    }

    /// Writes the least rotation of `s` into `out`.
    pub fn canonical_into(&mut self, s: &[Symbol], out: &mut Vec<Symbol>) {
        let k = self.least_rotation(s);
        out.clear();
        out.extend_from_slice(&s[k..]);
        out.extend_from_slice(&s[..k]);
    }
}

/// Start index of the lexicographically least rotation of `s`.
pub fn least_rotation(s: &[Symbol]) -> usize {
    RotationScratch::default().least_rotation(s)
}

/// Lexicographically least rotation of `w`.
pub fn canonical_rotation(w: &FactorWord) -> FactorWord {
    let mut out = Vec::with_capacity(w.len());
    RotationScratch::default().canonical_into(&w.0, &mut out);
    FactorWord(out)
}

/// True iff `x` is a rotation of `y`.
pub fn cyclic_equal(x: &FactorWord, y: &FactorWord) -> bool {
    if x.len() != y.len() {
        return false;
    }
    if x.is_empty() {
        return true;
    }
    // x occurs in yy
    let n = y.len();
    (0..n).any(|t| (0..n).all(|k| x.0[k] == y.0[(t + k) % n]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FactorWord {
        FactorWord::parse(s).unwrap()
    }

    fn naive_least(s: &FactorWord) -> FactorWord {
        (0..s.len().max(1))
            .map(|k| s.rotate(k))
            .min()
            .unwrap_or_default()
    }

    #[test]
    fn thue_morse_prefix() {
        assert_eq!(FactorWord(ThueMorse.prefix(8)), w("01101001"));
        assert_eq!(tm_at(0), 0);
        assert_eq!(tm_at(3), 0);
        assert_eq!(tm_at(4), 1);
        for k in 0..63 {
            assert_eq!(tm_at(1 << k), 1);
        }
    }

    #[test]
    fn thue_morse_morphism_recurrences() {
        for i in 0..100_000u64 {
            assert_eq!(tm_at(2 * i), tm_at(i));
            assert_eq!(tm_at(2 * i + 1), 1 - tm_at(i));
        }
        let pre = ThueMorse.prefix(4096);
        for (i, &s) in pre.iter().enumerate() {
            assert_eq!(s, tm_at(i as u64));
        }
    }

    #[test]
    fn powers_of_two_word() {
        let got: Vec<_> = (1..=8).map(|i| p_at(i).unwrap()).collect();
        assert_eq!(got, vec![1, 1, 0, 1, 0, 0, 0, 1]);
        assert_eq!(p_at(1024).unwrap(), 1);
        assert_eq!(p_at(12).unwrap(), 0);
        assert!(matches!(p_at(0), Err(Error::OutOfDomain { .. })));
        assert_eq!(FactorWord(PowersOfTwo.prefix(8)), w("11010001"));
    }

    #[test]
    fn factors() {
        assert_eq!(factor(&ThueMorse, 0, 8).unwrap(), w("01101001"));
        assert!(factor(&ThueMorse, 0, 0).unwrap().is_empty());
        assert_eq!(factor(&ThueMorse, 5, 3).unwrap(), w("001"));
        assert!(factor(&PowersOfTwo, 0, 3).is_err());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_rotation(&w("0110")), w("0011"));
        assert_eq!(canonical_rotation(&w("")), w(""));
        assert_eq!(canonical_rotation(&w("111")), w("111"));
        assert_eq!(canonical_rotation(&w("2101")), w("0121"));
    }

    #[test]
    fn cyclic_equal_examples() {
        assert!(cyclic_equal(&w("0110"), &w("0011")));
        assert!(!cyclic_equal(&w("0110"), &w("0101")));
        assert!(!cyclic_equal(&w("01"), &w("010")));
        assert!(cyclic_equal(&w(""), &w("")));
    }

    #[test]
    fn exhaustive_binary_words_up_to_12() {
        for len in 0..=12usize {
            let words: Vec<FactorWord> = (0..1u32 << len)
                .map(|bits| FactorWord((0..len).map(|k| ((bits >> k) & 1) as u8).collect()))
                .collect();
            let canon: Vec<FactorWord> = words.iter().map(canonical_rotation).collect();
            for (x, cx) in words.iter().zip(&canon) {
                assert_eq!(cx, &naive_least(x), "least rotation of {x}");
                assert_eq!(&canonical_rotation(cx), cx);
            }
            // cyclic_equal agrees with canonical equality on every pair
            for i in 0..words.len() {
                for j in 0..words.len() {
                    assert_eq!(
                        cyclic_equal(&words[i], &words[j]),
                        canon[i] == canon[j],
                        "{} vs {}",
                        words[i],
                        words[j]
                    );
                }
            }
        }
    }

    #[test]
    fn classes_compare_by_canonical_form() {
        assert_eq!(CyclicClass::of(&w("1001")), CyclicClass::of(&w("0011")));
        assert_eq!(CyclicClass::of(&w("1001")).canonical(), &w("0011"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rotations_share_canonical_form(v in proptest::collection::vec(0u8..3, 0..40), k in 0usize..64) {
                let x = FactorWord(v);
                let c = canonical_rotation(&x);
                prop_assert_eq!(&canonical_rotation(&x.rotate(k)), &c);
                prop_assert_eq!(&canonical_rotation(&c), &c);
                prop_assert_eq!(c, naive_least(&x));
                prop_assert!(cyclic_equal(&x, &x.rotate(k)));
            }
        }
    }
}
