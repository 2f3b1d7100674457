//! Bulk evaluation of a representation on `0..=n_max`.
//!
//! Uses `state(2n + d) = state(n) * gamma(d)` over the binary tree of
//! prefixes. States are kept as an `i128` numerator vector over a common
//! denominator; any overflow drops back to exact big rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::rational::{dot, Rational};
use super::LinearRepresentation;

struct Scaled {
    /// gamma(d) = mat[d] / den[d], row-major
    mat: [Vec<i128>; 2],
    den: [i128; 2],
    w: Vec<i128>,
    w_den: i128,
}

fn common_scale(xs: &[Rational]) -> Option<(Vec<i128>, i128)> {
    let mut den = BigInt::from(1);
    for x in xs {
        den = den.lcm(x.denom());
    }
    let den_i = den.to_i128()?;
    let nums = xs
        .iter()
        .map(|x| (x.numer() * (&den / x.denom())).to_i128())
        .collect::<Option<Vec<_>>>()?;
    Some((nums, den_i))
}

pub struct ValueTable<'a> {
    rep: &'a LinearRepresentation,
}

impl<'a> ValueTable<'a> {
    pub fn new(rep: &'a LinearRepresentation) -> Self {
        ValueTable { rep }
    }

    pub fn values_up_to(&self, n_max: u64) -> Vec<Rational> {
        if let Some(v) = self.fast(n_max) {
            return v;
        }
        self.exact(n_max)
    }

    fn scaled(&self) -> Option<Scaled> {
        let r = self.rep.rank();
        let flat = |d: u8| -> Vec<Rational> {
            let g = self.rep.gamma(d);
            (0..r).flat_map(|i| g.row(i).to_vec()).collect()
        };
        let (m0, d0) = common_scale(&flat(0))?;
        let (m1, d1) = common_scale(&flat(1))?;
        let (w, w_den) = common_scale(self.rep.w())?;
        Some(Scaled {
            mat: [m0, m1],
            den: [d0, d1],
            w,
            w_den,
        })
    }

    fn fast(&self, n_max: u64) -> Option<Vec<Rational>> {
        let r = self.rep.rank();
        let mut out = vec![Rational::zero(); n_max as usize + 1];
        out[0] = self.rep.evaluate(0);
        if n_max == 0 || r == 0 {
            return Some(out);
        }
        let s = self.scaled()?;
        let (v, v_den) = common_scale(self.rep.v())?;
        let mut stack: Vec<(u64, Vec<i128>, i128)> = Vec::new();
        let (u, q) = step(&s, 1, &v, v_den, r)?;
        stack.push((1, u, q));
        while let Some((n, u, q)) = stack.pop() {
            let mut num: i128 = 0;
            for (a, b) in u.iter().zip(&s.w) {
                num = num.checked_add(a.checked_mul(*b)?)?;
            }
            let den = q.checked_mul(s.w_den)?;
            out[n as usize] = Rational::new(num.into(), den.into());
            for d in 0..2u64 {
                let m = 2 * n + d;
                if m <= n_max {
                    let (u2, q2) = step(&s, d as usize, &u, q, r)?;
                    stack.push((m, u2, q2));
                }
            }
        }
        Some(out)
    }

    fn exact(&self, n_max: u64) -> Vec<Rational> {
        let rep = self.rep;
        let mut out = vec![Rational::zero(); n_max as usize + 1];
        out[0] = rep.evaluate(0);
        if n_max == 0 {
            return out;
        }
        let mut stack = vec![(1u64, rep.gamma(1).vec_mul(rep.v()))];
        while let Some((n, u)) = stack.pop() {
            out[n as usize] = dot(&u, rep.w());
            for d in 0..2u8 {
                let m = 2 * n + d as u64;
                if m <= n_max {
                    stack.push((m, rep.gamma(d).vec_mul(&u)));
                }
            }
        }
        out
    }
}

fn step(s: &Scaled, d: usize, u: &[i128], q: i128, r: usize) -> Option<(Vec<i128>, i128)> {
    let m = &s.mat[d];
    let mut out = vec![0i128; r];
    for (k, &a) in u.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let row = &m[k * r..(k + 1) * r];
        for (o, &b) in out.iter_mut().zip(row) {
            if b != 0 {
                *o = o.checked_add(a.checked_mul(b)?)?;
            }
        }
    }
    let mut den = q.checked_mul(s.den[d])?;
    let mut g = den;
    for &x in &out {
        if g == 1 {
            break;
        }
        g = g.gcd(&x);
    }
    if g < 0 {
        g = -g;
    }
    if g > 1 {
        for x in &mut out {
            *x /= g;
        }
        den /= g;
    }
    Some((out, den))
}
