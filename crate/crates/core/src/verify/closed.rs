//! Exact closed forms for a representation along a parametrized family of
//! binary expansions, such as `1 0^{2i} 1 0^j`.
//!
//! Along such a family the value is `v * gamma(1) * gamma(0)^(2i) * ...`, so
//! it is a combination of the powers of the eigenvalues of the repeated
//! matrices. The coefficients are found by solving an exact linear system on
//! sample parameters and then checked on disjoint holdout parameters.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linrep::{LinearRepresentation, Rational, RationalMatrix, RowBasis};

/// An exponent `ci * i + cj * j + c0`. The letter `k` is read as `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Affine {
    pub ci: i64,
    pub cj: i64,
    pub c0: i64,
}

impl Affine {
    pub fn at(&self, i: u32, j: u32) -> i64 {
        self.ci * i as i64 + self.cj * j as i64 + self.c0
    }
}

impl FromStr for Affine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty exponent".into()));
        }
        let mut out = Affine::default();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body[1..].find(['+', '-']).map_or(body.len(), |p| p + 1);
            let (tok, tail) = body.split_at(end);
            rest = tail;
            let digits_end = tok.find(|c: char| !c.is_ascii_digit()).unwrap_or(tok.len());
            let (num, var) = tok.split_at(digits_end);
            let mult: i64 = if num.is_empty() {
                1
            } else {
                num.parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?
            };
            let mult = if neg { -mult } else { mult };
            match var {
                "" if !num.is_empty() => out.c0 += mult,
                "i" | "k" => out.ci += mult,
                "j" => out.cj += mult,
                _ => return Err(Error::Parse(format!("bad exponent {s:?}"))),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (c, v) in [(self.ci, "i"), (self.cj, "j")] {
            match c {
                0 => {}
                1 => parts.push(v.into()),
                -1 => parts.push(format!("-{v}")),
                c => parts.push(format!("{c}{v}")),
            }
        }
        if self.c0 != 0 || parts.is_empty() {
            parts.push(self.c0.to_string());
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if p.starts_with('-') {
                s.push_str(p);
            } else {
                s.push('+');
                s.push_str(p);
            }
        }
        f.write_str(&s)
    }
}

/// One basis function `2^(a*i + b*j) * (-1)^(c*i + d*j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisTerm {
    pub power_of_two: Affine,
    pub sign: Affine,
}

impl BasisTerm {
    pub fn eval(&self, i: u32, j: u32) -> Rational {
        let e = self.power_of_two.at(i, j);
        let mag = if e >= 0 {
            Rational::from_integer(BigInt::one() << e as usize)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        };
        if self.sign.at(i, j).rem_euclid(2) == 1 {
            -mag
        } else {
            mag
        }
    }
}

impl FromStr for BasisTerm {
    type Err = Error;
    /// Products of `2^{e}` / `2^e` and `(-1)^{e}` / `(-1)^e` factors, or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut term = BasisTerm {
            power_of_two: Affine::default(),
            sign: Affine::default(),
        };
        if s == "1" {
            return Ok(term);
        }
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (is_sign, after) = if let Some(r) = rest.strip_prefix("(-1)^") {
                (true, r)
            } else if let Some(r) = rest.strip_prefix("2^") {
                (false, r)
            } else {
                return Err(Error::Parse(format!("bad basis term {s:?}")));
            };
            let (expr, tail) = if let Some(r) = after.strip_prefix('{') {
                let close = r
                    .find('}')
                    .ok_or_else(|| Error::Parse(format!("unclosed brace in {s:?}")))?;
                (&r[..close], &r[close + 1..])
            } else {
                let end = after
                    .find(|c: char| !c.is_ascii_alphanumeric())
                    .unwrap_or(after.len());
                after.split_at(end)
            };
            let e: Affine = expr.parse()?;
            let slot = if is_sign {
                &mut term.sign
            } else {
                &mut term.power_of_two
            };
            slot.ci += e.ci;
            slot.cj += e.cj;
            slot.c0 += e.c0;
            rest = tail.trim_start_matches(['*', '·']);
        }
        Ok(term)
    }
}

impl fmt::Display for BasisTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = Affine::default();
        let mut wrote = false;
        if self.power_of_two != zero {
            write!(f, "2^{{{}}}", self.power_of_two)?;
            wrote = true;
        }
        if self.sign != zero {
            write!(f, "(-1)^{{{}}}", self.sign)?;
            wrote = true;
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Parses a comma-separated basis such as `2^{2i+j}, 2^j, 1`.
pub fn parse_basis(s: &str) -> Result<Vec<BasisTerm>> {
    s.split(',').map(|t| t.trim().parse()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub basis: Vec<BasisTerm>,
    pub coefficients: Vec<Rational>,
}

impl ClosedForm {
    pub fn new(basis: Vec<BasisTerm>, coefficients: Vec<Rational>) -> Result<Self> {
        if basis.len() != coefficients.len() {
            return Err(Error::Shape(format!(
                "{} basis terms but {} coefficients",
                basis.len(),
                coefficients.len()
            )));
        }
        Ok(ClosedForm {
            basis,
            coefficients,
        })
    }

    pub fn eval(&self, i: u32, j: u32) -> Rational {
        self.basis
            .iter()
            .zip(&self.coefficients)
            .map(|(b, c)| c * b.eval(i, j))
            .sum()
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.basis.iter().zip(&self.coefficients) {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = c.abs();
            let unit = b.power_of_two == Affine::default() && b.sign == Affine::default();
            let coef = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if unit {
                write!(f, "{sep}{coef}")?;
            } else if mag.is_one() {
                write!(f, "{sep}{b}")?;
            } else {
                write!(f, "{sep}{coef}*{b}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A family of binary expansions: blocks of one digit repeated an affine
/// number of times, e.g. `1 0^{2i} 1 0^j 1 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    blocks: Vec<(u8, Affine)>,
}

impl Pattern {
    /// Digits at `(i, j)`, or `None` when some repetition count is negative.
    pub fn digits(&self, i: u32, j: u32) -> Option<Vec<u8>> {
        let mut out = Vec::new();
        for (d, count) in &self.blocks {
            let k = count.at(i, j);
            if k < 0 {
                return None;
            }
            out.extend(std::iter::repeat_n(*d, k as usize));
        }
        Some(out)
    }

    /// The number at `(i, j)`, if it fits in a `u64`.
    pub fn value(&self, i: u32, j: u32) -> Option<u64> {
        let d = self.digits(i, j)?;
        let start = d.iter().position(|&x| x == 1).unwrap_or(d.len());
        if d.len() - start > 64 {
            return None;
        }
        Some(d.iter().fold(0u64, |acc, &x| (acc << 1) | x as u64))
    }
}

impl FromStr for Pattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for tok in s.split_whitespace() {
            if let Some((d, e)) = tok.split_once('^') {
                let digit = match d {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(Error::Parse(format!("bad block {tok:?}"))),
                };
                let e = e.trim_start_matches('{').trim_end_matches('}');
                blocks.push((digit, e.parse()?));
            } else {
                for ch in tok.chars() {
                    let digit = match ch {
                        '0' => 0,
                        '1' => 1,
                        _ => return Err(Error::Parse(format!("bad digit in {tok:?}"))),
                    };
                    blocks.push((
                        digit,
                        Affine {
                            c0: 1,
                            ..Affine::default()
                        },
                    ));
                }
            }
        }
        if blocks.is_empty() {
            return Err(Error::Parse("empty pattern".into()));
        }
        Ok(Pattern { blocks })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = Affine {
            c0: 1,
            ..Affine::default()
        };
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(d, e)| {
                if *e == one {
                    d.to_string()
                } else {
                    format!("{d}^{{{e}}}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Solves for the coefficients of `basis` reproducing `rep` along `pattern`.
///
/// Sample rows are taken greedily in the given order while they are
/// independent; the fit is then required to be exact on every holdout pair.
pub fn fit_closed_form(
    rep: &LinearRepresentation,
    pattern: &Pattern,
    basis: &[BasisTerm],
    samples: &[(u32, u32)],
    holdout: &[(u32, u32)],
) -> Result<ClosedForm> {
    let k = basis.len();
    if k == 0 {
        return Err(Error::Empty("closed-form basis"));
    }
    let value = |i: u32, j: u32| -> Result<Rational> {
        let d = pattern.digits(i, j).ok_or_else(|| {
            Error::Shape(format!(
                "pattern {pattern} undefined at (i, j) = ({i}, {j})"
            ))
        })?;
        Ok(rep.evaluate_digits(&d))
    };
    let mut chosen = RowBasis::new(k);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut tried = Vec::new();
    for &(i, j) in samples {
        if rows.len() == k {
            break;
        }
        let row: Vec<Rational> = basis.iter().map(|b| b.eval(i, j)).collect();
        tried.push(((i, j), row.clone()));
        if chosen.insert(row.clone()).is_none() {
            rows.push(row);
            rhs.push(value(i, j)?);
        }
    }
    if rows.len() < k {
        let shown: Vec<String> = tried
            .iter()
            .map(|((i, j), r)| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("({i},{j}): [{}]", cells.join(", "))
            })
            .collect();
        return Err(Error::Singular(format!(
            "sample rows span rank {} < {k} basis terms; rows {}",
            rows.len(),
            shown.join("; ")
        )));
    }
    let m = RationalMatrix::from_rows(rows)?;
    let inv = m
        .inverse()
        .ok_or_else(|| Error::Singular(format!("sample matrix\n{m}")))?;
    let form = ClosedForm::new(basis.to_vec(), inv.mul_vec(&rhs))?;
    for &(i, j) in holdout {
        let want = value(i, j)?;
        let got = form.eval(i, j);
        if got != want {
            return Err(Error::Holdout(format!(
                "{form} gives {got} at (i, j) = ({i}, {j}) but the representation gives {want}"
            )));
        }
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::{rat, ratio};

    #[test]
    fn parse_terms_and_patterns() {
        let b = parse_basis("2^{2i+j}, 2^j, 2^{2i}(-1)^j, (-1)^j, 1").unwrap();
        assert_eq!(b.len(), 5);
        assert_eq!(b[0].eval(1, 1), rat(8));
        assert_eq!(b[2].eval(1, 1), rat(-4));
        assert_eq!(b[3].eval(0, 2), rat(1));
        assert_eq!(b[4].eval(5, 5), rat(1));
        assert_eq!(b[2].to_string(), "2^{2i}(-1)^{j}");
        let k: BasisTerm = "2^k".parse().unwrap();
        assert_eq!(k.eval(5, 0), rat(32));
        let neg: BasisTerm = "2^{j-2}".parse().unwrap();
        assert_eq!(neg.eval(0, 0), ratio(1, 4));
        assert!("3^j".parse::<BasisTerm>().is_err());
        assert!("2^{x}".parse::<BasisTerm>().is_err());

        let p: Pattern = "1 0^{2i} 1 0^j".parse().unwrap();
        assert_eq!(p.value(1, 1), Some(18));
        assert_eq!(p.value(1, 0), Some(9));
        assert_eq!(p.to_string(), "1 0^{2i} 1 0^{j}");
        let q: Pattern = "1 0^{2i+1} 1^{j-2} 011".parse().unwrap();
        assert_eq!(q.value(1, 2), Some(67));
        assert_eq!(q.value(1, 1), None);
        assert!("1 2^{i}".parse::<Pattern>().is_err());
    }

    #[test]
    fn fit_identity_along_a_family() {
        // n -> n along 1 0^{2i} 1 0^j is 2^{2i+j+1} + 2^j
        let id = LinearRepresentation::identity_sequence();
        let p: Pattern = "1 0^{2i} 1 0^j".parse().unwrap();
        let basis = parse_basis("2^{2i+j}, 2^j, 1").unwrap();
        let samples: Vec<(u32, u32)> = (1..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        let holdout: Vec<(u32, u32)> = (3..6).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        let f = fit_closed_form(&id, &p, &basis, &samples, &holdout).unwrap();
        assert_eq!(f.coefficients, vec![rat(2), rat(1), rat(0)]);
        assert_eq!(f.to_string(), "2*2^{2i+j} + 2^{j}");
    }

    #[test]
    fn constant_has_a_single_coefficient() {
        let c = LinearRepresentation::constant(ratio(7, 3));
        let p: Pattern = "1 0^j".parse().unwrap();
        let f = fit_closed_form(&c, &p, &parse_basis("1").unwrap(), &[(0, 0)], &[(0, 5)]).unwrap();
        assert_eq!(f.coefficients, vec![ratio(7, 3)]);
    }

    #[test]
    fn degenerate_and_wrong_bases_are_reported() {
        let id = LinearRepresentation::identity_sequence();
        let p: Pattern = "1 0^{2i} 1 0^j".parse().unwrap();
        let basis = parse_basis("2^{2i+j}, 2^j, 1").unwrap();
        // j fixed: 2^j and 1 are proportional
        let same_j: Vec<(u32, u32)> = (1..6).map(|i| (i, 0)).collect();
        let e = fit_closed_form(&id, &p, &basis, &same_j, &[]).unwrap_err();
        assert!(matches!(e, Error::Singular(ref m) if m.contains("(1,0)")));
        // the family needs 2^{2i+j}; without it the holdout fails
        let small = parse_basis("2^j, 1").unwrap();
        let e = fit_closed_form(&id, &p, &small, &[(1, 0), (1, 1)], &[(2, 2)]).unwrap_err();
        assert!(matches!(e, Error::Holdout(_)));
    }
}
