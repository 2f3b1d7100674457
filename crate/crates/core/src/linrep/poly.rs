use std::fmt;

use num_traits::{One, Signed, Zero};

use super::basis::RowBasis;
use super::rational::{rat, Rational, RationalMatrix};
use crate::error::{Error, Result};

/// Polynomial over the rationals, coefficients from the constant term up.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::new(vec![rat(1)])
    }

    /// `X - root`.
    pub fn linear(root: Rational) -> Self {
        Polynomial::new(vec![-root, rat(1)])
    }

    /// Monic polynomial with the given roots (with multiplicity).
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Polynomial::one(), |acc, r| {
            acc.mul(&Polynomial::linear(r.clone()))
        })
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => Polynomial::new(self.coeffs.iter().map(|c| c / l).collect()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Euclidean division: `(q, r)` with `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Polynomial::new(q), Polynomial::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let g = self.gcd(other);
        let (q, _) = self.mul(other).div_rem(&g);
        q.monic()
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &RationalMatrix) -> Result<RationalMatrix> {
        if !m.is_square() {
            return Err(Error::Shape("polynomial of a non-square matrix".into()));
        }
        let n = m.rows();
        let mut acc = RationalMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&RationalMatrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// Multiplicity of `root` as a root.
    pub fn multiplicity(&self, root: &Rational) -> usize {
        let lin = Polynomial::linear(root.clone());
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{k}")?,
            }
        }
        Ok(())
    }
}

/// Monic minimal polynomial of a square matrix.
///
/// Krylov iteration from every standard basis vector: the first power of
/// `e_i M^k` that falls into the span of the earlier ones gives the minimal
/// polynomial of `e_i`; the matrix polynomial is the lcm over all `i`.
pub fn minimal_polynomial(m: &RationalMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::Shape(
            "minimal polynomial of a non-square matrix".into(),
        ));
    }
    let n = m.rows();
    let mut acc = Polynomial::one();
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = rat(1);
        let mut basis = RowBasis::new(n);
        let mut cur = e;
        let coords = loop {
            let next = m.vec_mul(&cur);
            if let Some(c) = basis.insert(cur) {
                break c;
            }
            cur = next;
        };
        // X^k - sum c_j X^j
        let mut coeffs: Vec<Rational> = coords.into_iter().map(|c| -c).collect();
        coeffs.push(rat(1));
        acc = acc.lcm(&Polynomial::new(coeffs));
    }
    Ok(acc)
}
