//! Linear representations of 2-regular sequences over exact rationals.
//!
//! A representation `(v, gamma, w)` computes `n -> v * gamma(z) * w` where `z`
//! is the most-significant-digit-first binary expansion of `n` (empty for
//! `n = 0`). Representations with `v * gamma(0) = v` give the same value for
//! every zero-padded expansion; operations that work on digit strings rather
//! than integers first bring their input into that form.

pub mod basis;
mod json;
mod learn;
mod minimize;
pub mod poly;
pub mod rational;
mod table;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
pub use basis::RowBasis;
pub use json::RepJson;
pub use learn::{learn_from_oracle, LearnConfig, Learned};
pub use poly::{minimal_polynomial, Polynomial};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational, RationalMatrix};
pub use table::ValueTable;

/// Most-significant-digit-first binary expansion; empty for 0.
pub fn binary_digits(n: u64) -> Vec<u8> {
    if n == 0 {
        return Vec::new();
    }
    let len = 64 - n.leading_zeros() as usize;
    (0..len).rev().map(|k| ((n >> k) & 1) as u8).collect()
}

pub fn binary_digits_big(n: &BigUint) -> Vec<u8> {
    let len = n.bits() as usize;
    (0..len).rev().map(|k| u8::from(n.bit(k as u64))).collect()
}

/// Value of an msd-first digit string.
pub fn digits_value(digits: &[u8]) -> BigUint {
    digits
        .iter()
        .fold(BigUint::zero(), |acc, &d| (acc << 1u32) + BigUint::from(d))
}

/// Parses a digit string such as `"1011"`; the empty string is allowed.
pub fn parse_digits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("bad binary digit {c:?} in {s:?}"))),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearRepresentation {
    v: Vec<Rational>,
    gamma: [RationalMatrix; 2],
    w: Vec<Rational>,
}

impl LinearRepresentation {
    pub fn new(
        v: Vec<Rational>,
        gamma0: RationalMatrix,
        gamma1: RationalMatrix,
        w: Vec<Rational>,
    ) -> Result<Self> {
        let r = v.len();
        for (d, g) in [&gamma0, &gamma1].into_iter().enumerate() {
            if g.rows() != r || g.cols() != r {
                return Err(Error::Shape(format!(
                    "gamma({d}) is {}x{}, expected {r}x{r}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        if w.len() != r {
            return Err(Error::Shape(format!(
                "w has length {}, expected {r}",
                w.len()
            )));
        }
        Ok(LinearRepresentation {
            v,
            gamma: [gamma0, gamma1],
            w,
        })
    }

    /// The rank-0 representation of the zero sequence.
    pub fn zero() -> Self {
        LinearRepresentation {
            v: vec![],
            gamma: [RationalMatrix::zeros(0, 0), RationalMatrix::zeros(0, 0)],
            w: vec![],
        }
    }

    /// Rank-1 representation of a constant sequence.
    pub fn constant(c: Rational) -> Self {
        LinearRepresentation {
            v: vec![rat(1)],
            gamma: [RationalMatrix::identity(1), RationalMatrix::identity(1)],
            w: vec![c],
        }
    }

    /// Rank-2 representation of `n -> n`.
    pub fn identity_sequence() -> Self {
        LinearRepresentation {
            v: vec![rat(0), rat(1)],
            gamma: [
                RationalMatrix::from_i64(&[&[2, 0], &[0, 1]]),
                RationalMatrix::from_i64(&[&[2, 0], &[1, 1]]),
            ],
            w: vec![rat(1), rat(0)],
        }
    }

    pub fn rank(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn w(&self) -> &[Rational] {
        &self.w
    }

    pub fn gamma(&self, digit: u8) -> &RationalMatrix {
        &self.gamma[digit as usize]
    }

    /// `v * gamma(0) == v`.
    pub fn is_leading_zero_invariant(&self) -> bool {
        self.gamma[0].vec_mul(&self.v) == self.v
    }

    /// An equivalent representation (on integers) that is also invariant under
    /// leading zeros. Invariant inputs are returned unchanged; others gain one
    /// extra "nothing read yet" coordinate.
    pub fn normalized(&self) -> LinearRepresentation {
        if self.is_leading_zero_invariant() {
            return self.clone();
        }
        let r = self.rank();
        let mut v = vec![Rational::zero(); r + 1];
        v[0] = rat(1);
        let mut g0 = RationalMatrix::zeros(r + 1, r + 1);
        let mut g1 = RationalMatrix::zeros(r + 1, r + 1);
        g0[(0, 0)] = rat(1);
        let first = self.gamma[1].vec_mul(&self.v);
        for j in 0..r {
            g1[(0, j + 1)] = first[j].clone();
            for i in 0..r {
                g0[(i + 1, j + 1)] = self.gamma[0][(i, j)].clone();
                g1[(i + 1, j + 1)] = self.gamma[1][(i, j)].clone();
            }
        }
        let mut w = Vec::with_capacity(r + 1);
        w.push(rational::dot(&self.v, &self.w));
        w.extend(self.w.iter().cloned());
        LinearRepresentation {
            v,
            gamma: [g0, g1],
            w,
        }
    }

    /// `v * gamma(digits)`.
    pub fn state_after(&self, digits: &[u8]) -> Vec<Rational> {
        digits
            .iter()
            .fold(self.v.clone(), |u, &d| self.gamma[d as usize].vec_mul(&u))
    }

    /// `gamma(digits) * w`.
    pub fn column_for(&self, digits: &[u8]) -> Vec<Rational> {
        digits
            .iter()
            .rev()
            .fold(self.w.clone(), |u, &d| self.gamma[d as usize].mul_vec(&u))
    }

    /// `v * gamma(digits) * w`, taking the digits literally.
    pub fn evaluate_digits(&self, digits: &[u8]) -> Rational {
        rational::dot(&self.state_after(digits), &self.w)
    }

    /// Value at `n`, read from its binary expansion without leading zeros.
    pub fn evaluate(&self, n: u64) -> Rational {
        self.evaluate_digits(&binary_digits(n))
    }

    pub fn evaluate_big(&self, n: &BigUint) -> Rational {
        self.evaluate_digits(&binary_digits_big(n))
    }

    /// Representation of `n -> sum c_i f_i(n)` as a block-diagonal direct sum.
    pub fn linear_combine(terms: &[(Rational, &LinearRepresentation)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Empty("linear combination with no terms"));
        }
        let parts: Vec<LinearRepresentation> = terms.iter().map(|(_, r)| r.normalized()).collect();
        let mut v = Vec::new();
        let mut w = Vec::new();
        for ((c, _), p) in terms.iter().zip(&parts) {
            v.extend(p.v.iter().map(|x| x * c));
            w.extend(p.w.iter().cloned());
        }
        let g0: Vec<&RationalMatrix> = parts.iter().map(|p| &p.gamma[0]).collect();
        let g1: Vec<&RationalMatrix> = parts.iter().map(|p| &p.gamma[1]).collect();
        LinearRepresentation::new(
            v,
            RationalMatrix::direct_sum(&g0),
            RationalMatrix::direct_sum(&g1),
            w,
        )
    }

    /// `n -> f(2^|s| n + val(s))`.
    pub fn suffix_transform(&self, suffix: &[u8]) -> Result<Self> {
        if suffix.is_empty() {
            return Err(Error::Empty(
                "suffix transform needs a nonempty digit string",
            ));
        }
        let base = self.normalized();
        let w = base.column_for(suffix);
        LinearRepresentation::new(base.v, base.gamma[0].clone(), base.gamma[1].clone(), w)
    }

    /// The reversal `(w^T, gamma^T, v^T)`: reads digit strings backwards.
    pub fn reversed(&self) -> Self {
        LinearRepresentation {
            v: self.w.clone(),
            gamma: [self.gamma[0].transpose(), self.gamma[1].transpose()],
            w: self.v.clone(),
        }
    }

    /// `n -> f(n + d)`, minimized.
    ///
    /// Built least-significant-digit first: the reversed representation is
    /// composed with the carry transducer for `+d` (carries stay in `0..=d`,
    /// the initial carry is `d`), the final carry is flushed into the output
    /// vector, and the result is reversed back.
    pub fn shift_transform(&self, d: u64) -> Result<Self> {
        let base = self.normalized();
        if d == 0 {
            return Ok(base.minimize());
        }
        let r = base.rank();
        let carries = d as usize + 1;
        let dim = r * carries;
        let rev = base.reversed();
        // lsd-first composite: block (c, c') of input digit x holds
        // gamma((x + c) mod 2)^T when c' = (x + c) / 2
        let mut m = [
            RationalMatrix::zeros(dim, dim),
            RationalMatrix::zeros(dim, dim),
        ];
        for (x, mx) in m.iter_mut().enumerate() {
            for c in 0..carries {
                let o = (x + c) % 2;
                let c2 = (x + c) / 2;
                let g = &rev.gamma[o];
                for i in 0..r {
                    for j in 0..r {
                        mx[(c * r + i, c2 * r + j)] = g[(i, j)].clone();
                    }
                }
            }
        }
        let mut start = vec![Rational::zero(); dim];
        start[d as usize * r..(d as usize + 1) * r].clone_from_slice(&rev.v);
        let mut fin = vec![Rational::zero(); dim];
        for c in 0..carries {
            // flushing carry c emits its digits lsd first
            let col = base.state_after(&binary_digits(c as u64));
            fin[c * r..(c + 1) * r].clone_from_slice(&col);
        }
        let [m0, m1] = m;
        let out = LinearRepresentation::new(fin, m0.transpose(), m1.transpose(), start)?;
        Ok(out.minimize())
    }

    /// Equivalent representation of minimal rank.
    pub fn minimize(&self) -> Self {
        minimize::minimize(&self.normalized())
    }

    /// True iff both representations agree at every `n`.
    ///
    /// Decided on the span of the joint states `(v1 gamma1(x), v2 gamma2(x))`,
    /// which is reached by strings of length below `rank1 + rank2`.
    pub fn equivalent(&self, other: &Self) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        let (ra, rb) = (a.rank(), b.rank());
        let mut basis = RowBasis::new(ra + rb);
        let mut queue = std::collections::VecDeque::new();
        let joint = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
            x.iter().chain(y).cloned().collect()
        };
        queue.push_back((a.v.clone(), b.v.clone()));
        while let Some((x, y)) = queue.pop_front() {
            if rational::dot(&x, &a.w) != rational::dot(&y, &b.w) {
                return false;
            }
            if basis.insert(joint(&x, &y)).is_some() {
                continue;
            }
            for dgt in 0..2 {
                queue.push_back((a.gamma[dgt].vec_mul(&x), b.gamma[dgt].vec_mul(&y)));
            }
        }
        true
    }

    /// True iff every entry is an integer.
    pub fn is_integral(&self) -> bool {
        let int = |q: &Rational| q.is_integer();
        self.v.iter().all(int)
            && self.w.iter().all(int)
            && self
                .gamma
                .iter()
                .all(|g| (0..g.rows()).all(|i| g.row(i).iter().all(int)))
    }

    /// Scales the output vector.
    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for x in &mut out.w {
            *x = &*x * c;
        }
        out
    }

    /// Exact values at `0..=n_max`.
    pub fn values_up_to(&self, n_max: u64) -> Vec<Rational> {
        ValueTable::new(self).values_up_to(n_max)
    }

    pub fn one_hot(r: usize, i: usize) -> Vec<Rational> {
        let mut e = vec![Rational::zero(); r];
        e[i] = Rational::one();
        e
    }
}
