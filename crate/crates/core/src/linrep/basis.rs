use num_traits::Zero;

use super::rational::Rational;

#[derive(Debug, Clone)]
struct EchelonRow {
    pivot: usize,
    /// Normalized so that `row[pivot] == 1`; zero at every earlier pivot.
    row: Vec<Rational>,
    /// `row` as a combination of the inserted basis vectors.
    combo: Vec<Rational>,
}

/// Incrementally built basis of a subspace of `Q^dim`.
///
/// Vectors are offered one at a time; independent ones join the basis, and
/// dependent ones are expressed in coordinates over the vectors inserted so
/// far (in insertion order).
#[derive(Debug, Clone)]
pub struct RowBasis {
    dim: usize,
    echelon: Vec<EchelonRow>,
}

impl RowBasis {
    pub fn new(dim: usize) -> Self {
        RowBasis {
            dim,
            echelon: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of basis vectors.
    pub fn len(&self) -> usize {
        self.echelon.len()
    }

    pub fn is_empty(&self) -> bool {
        self.echelon.is_empty()
    }

    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim, "vector dimension");
        let mut r = v.to_vec();
        let mut acc = vec![Rational::zero(); self.len()];
        for e in &self.echelon {
            if r[e.pivot].is_zero() {
                continue;
            }
            let f = r[e.pivot].clone();
            for (x, y) in r.iter_mut().zip(&e.row).skip(e.pivot) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (a, c) in acc.iter_mut().zip(&e.combo) {
                if !c.is_zero() {
                    *a += &f * c;
                }
            }
        }
        (r, acc)
    }

    /// Coordinates of `v` over the basis, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (r, acc) = self.reduce(v);
        r.iter().all(Zero::is_zero).then_some(acc)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Adds `v` if independent (returns `None`), otherwise returns its coordinates.
    pub fn insert(&mut self, v: Vec<Rational>) -> Option<Vec<Rational>> {
        let (r, acc) = self.reduce(&v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return Some(acc);
        };
        let p = r[pivot].clone();
        let k = self.len();
        for e in &mut self.echelon {
            e.combo.push(Rational::zero());
        }
        let row: Vec<Rational> = r.into_iter().map(|x| x / &p).collect();
        let mut combo: Vec<Rational> = acc.into_iter().map(|a| -a / &p).collect();
        combo.push(Rational::from_integer(1.into()) / &p);
        debug_assert_eq!(combo.len(), k + 1);
        self.echelon.push(EchelonRow { pivot, row, combo });
        None
    }
}
