//! Derived sequences: rational combinations of `c(a*n + b)`.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! target := term (('+' | '-') term)*
//! term   := ['-'] [coef ['*']] 'c(' affine ')'
//! coef   := int | int '/' int
//! affine := [int] 'n' ['+' int] | int
//! ```

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linrep::{rat, LinearRepresentation, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Rational,
    /// Multiplier of `n`.
    pub a: u64,
    /// Offset.
    pub b: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    terms: Vec<Term>,
}

impl Target {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Empty("target has no terms"));
        }
        Ok(Target { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `n -> c(n)` itself.
    pub fn identity() -> Self {
        Target {
            terms: vec![Term {
                coefficient: rat(1),
                a: 1,
                b: 0,
            }],
        }
    }

    /// Largest argument of `c` needed to evaluate the target on `0..=n_max`.
    pub fn max_argument(&self, n_max: u64) -> u64 {
        self.terms
            .iter()
            .map(|t| t.a.saturating_mul(n_max).saturating_add(t.b))
            .max()
            .unwrap_or(0)
    }

    pub fn eval<F>(&self, n: u64, mut c: F) -> Result<Rational>
    where
        F: FnMut(u64) -> Result<Rational>,
    {
        let mut acc = Rational::zero();
        for t in &self.terms {
            acc += &t.coefficient * c(t.a * n + t.b)?;
        }
        Ok(acc)
    }

    /// Evaluates against a table of `c` values covering `max_argument(n)`.
    pub fn eval_table(&self, n: u64, c: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|t| &t.coefficient * &c[(t.a * n + t.b) as usize])
            .sum()
    }

    /// A representation of the target, built from one for `c`. Every
    /// multiplier must be a power of two.
    pub fn to_rep(&self, c: &LinearRepresentation) -> Result<LinearRepresentation> {
        let parts = self
            .terms
            .iter()
            .map(|t| affine_rep(c, t.a, t.b))
            .collect::<Result<Vec<_>>>()?;
        let weighted: Vec<(Rational, &LinearRepresentation)> = self
            .terms
            .iter()
            .zip(&parts)
            .map(|(t, r)| (t.coefficient.clone(), r))
            .collect();
        Ok(LinearRepresentation::linear_combine(&weighted)?.minimize())
    }
}

/// Representation of `n -> f(a*n + b)` for `a = 2^m`.
fn affine_rep(f: &LinearRepresentation, a: u64, b: u64) -> Result<LinearRepresentation> {
    if !a.is_power_of_two() {
        return Err(Error::Shape(format!(
            "multiplier {a} is not a power of two"
        )));
    }
    let m = a.trailing_zeros();
    let (q, r) = (b >> m, b & (a - 1));
    let suffix: Vec<u8> = (0..m).rev().map(|k| ((r >> k) & 1) as u8).collect();
    let s = if suffix.is_empty() {
        f.clone()
    } else {
        f.suffix_transform(&suffix)?
    };
    if q == 0 {
        Ok(s)
    } else {
        s.shift_transform(q)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coefficient.is_negative();
            let mag = t.coefficient.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{} ", mag.numer(), mag.denom())?;
                }
            }
            f.write_str("c(")?;
            match (t.a, t.b) {
                (0, b) => write!(f, "{b}")?,
                (1, 0) => f.write_str("n")?,
                (1, b) => write!(f, "n+{b}")?,
                (a, 0) => write!(f, "{a}n")?,
                (a, b) => write!(f, "{a}n+{b}")?,
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at position {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let compact: Vec<u8> = input.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
        let mut cur = Cursor {
            s: &compact,
            pos: 0,
        };
        let mut terms = Vec::new();
        while cur.peek().is_some() || terms.is_empty() {
            let sign = if terms.is_empty() {
                if cur.eat(b'-') {
                    rat(-1)
                } else {
                    rat(1)
                }
            } else if cur.eat(b'+') {
                rat(1)
            } else if cur.eat(b'-') {
                rat(-1)
            } else {
                return Err(cur.error("expected '+' or '-'"));
            };
            let mut coefficient = rat(1);
            if let Some(p) = cur.int() {
                let q = if cur.eat(b'/') {
                    cur.int().ok_or_else(|| cur.error("expected denominator"))?
                } else {
                    1
                };
                if q == 0 {
                    return Err(cur.error("zero denominator"));
                }
                coefficient = Rational::new(p.into(), q.into());
                cur.eat(b'*');
            }
            cur.expect(b'c')?;
            cur.expect(b'(')?;
            let lead = cur.int();
            let (a, b) = if cur.eat(b'n') {
                let b = if cur.eat(b'+') {
                    cur.int().ok_or_else(|| cur.error("expected offset"))?
                } else {
                    0
                };
                (lead.unwrap_or(1), b)
            } else {
                (0, lead.ok_or_else(|| cur.error("expected argument"))?)
            };
            cur.expect(b')')?;
            terms.push(Term {
                coefficient: sign * coefficient,
                a,
                b,
            });
        }
        Target::new(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::ratio;

    #[test]
    fn parse_and_display() {
        let t: Target = "c(2n)-2c(n)".parse().unwrap();
        assert_eq!(t.to_string(), "c(2n) - 2c(n)");
        let t: Target = "c(4n+3) - 1/2 c(2n) - c(2n+3) - 1/2*c(2n+4)"
            .parse()
            .unwrap();
        assert_eq!(t.terms().len(), 4);
        assert_eq!(t.terms()[1].coefficient, ratio(-1, 2));
        assert_eq!(t.to_string(), "c(4n+3) - 1/2 c(2n) - c(2n+3) - 1/2 c(2n+4)");
        let again: Target = t.to_string().parse().unwrap();
        assert_eq!(again, t);
        let t: Target = "-c(n+1) + 3c(7)".parse().unwrap();
        assert_eq!(t.to_string(), "-c(n+1) + 3c(7)");
        assert_eq!(t.max_argument(10), 11);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "c(n",
            "2",
            "c(n-1)",
            "c(2n)+-c(n)",
            "c(n)c(n)",
            "1/0c(n)",
            "d(n)",
        ] {
            assert!(bad.parse::<Target>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn evaluation_and_representation_agree() {
        // c = n -> n, so the target is linear in n
        let id = LinearRepresentation::identity_sequence();
        let t: Target = "c(4n+3) - 1/2 c(2n) - c(2n+3) - 1/2 c(2n+4)"
            .parse()
            .unwrap();
        let rep = t.to_rep(&id).unwrap();
        for n in 0..200u64 {
            let direct = t.eval(n, |m| Ok(rat(m as i64))).unwrap();
            assert_eq!(direct, rep.evaluate(n));
        }
        assert!("c(3n)".parse::<Target>().unwrap().to_rep(&id).is_err());
    }
}
