//! Two-pass rank reduction: restrict to the span of the reachable row
//! vectors `v gamma(x)`, then to the span of the observable column vectors
//! `gamma(x) w`. Both spans are explored breadth-first with digit 0 before 1.

use std::collections::VecDeque;

use num_traits::Zero;

use super::basis::RowBasis;
use super::rational::{dot, Rational, RationalMatrix};
use super::LinearRepresentation;

/// Basis of the span of `start * M_x` over all digit strings `x`, plus the
/// coordinates of `b_i * M_d` for every basis vector `b_i` and digit `d`.
fn forward_span(
    start: &[Rational],
    step: impl Fn(u8, &[Rational]) -> Vec<Rational>,
) -> (Vec<Vec<Rational>>, [Vec<Vec<Rational>>; 2]) {
    let dim = start.len();
    let mut basis = RowBasis::new(dim);
    let mut vectors: Vec<Vec<Rational>> = Vec::new();
    if start.iter().all(Zero::is_zero) {
        return (vectors, [vec![], vec![]]);
    }
    basis.insert(start.to_vec());
    vectors.push(start.to_vec());
    // images[d][i] = coordinates of vectors[i] * M_d, filled once known
    let mut pending: Vec<[Option<Vec<Rational>>; 2]> = vec![[None, None]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for d in 0..2u8 {
            let img = step(d, &vectors[i]);
            match basis.insert(img.clone()) {
                Some(coords) => pending[i][d as usize] = Some(coords),
                None => {
                    let k = vectors.len();
                    vectors.push(img);
                    pending.push([None, None]);
                    queue.push_back(k);
                    let mut e = vec![Rational::zero(); k + 1];
                    e[k] = Rational::from_integer(1.into());
                    pending[i][d as usize] = Some(e);
                }
            }
        }
    }
    let r = vectors.len();
    let mut images: [Vec<Vec<Rational>>; 2] = [Vec::with_capacity(r), Vec::with_capacity(r)];
    for p in pending {
        for (d, c) in p.into_iter().enumerate() {
            let mut c = c.expect("every basis vector was expanded");
            c.resize(r, Rational::zero());
            images[d].push(c);
        }
    }
    (vectors, images)
}

pub(super) fn minimize(rep: &LinearRepresentation) -> LinearRepresentation {
    // reachable part
    let (fwd, img) = forward_span(rep.v(), |d, u| rep.gamma(d).vec_mul(u));
    let r1 = fwd.len();
    if r1 == 0 {
        return LinearRepresentation::zero();
    }
    let g0 = RationalMatrix::from_rows(img[0].clone()).expect("square");
    let g1 = RationalMatrix::from_rows(img[1].clone()).expect("square");
    let v1 = LinearRepresentation::one_hot(r1, 0);
    let w1: Vec<Rational> = fwd.iter().map(|b| dot(b, rep.w())).collect();
    let reach = LinearRepresentation::new(v1, g0, g1, w1).expect("shapes");

    // observable part, working on columns
    let (bwd, img) = forward_span(reach.w(), |d, u| reach.gamma(d).mul_vec(u));
    let r2 = bwd.len();
    if r2 == 0 {
        return LinearRepresentation::zero();
    }
    // gamma(d) * G_j = sum_i out(d)[i][j] G_i, so img[d][j] is column j
    let g0 = RationalMatrix::from_rows(img[0].clone())
        .expect("square")
        .transpose();
    let g1 = RationalMatrix::from_rows(img[1].clone())
        .expect("square")
        .transpose();
    let v2: Vec<Rational> = bwd.iter().map(|col| dot(reach.v(), col)).collect();
    let w2 = LinearRepresentation::one_hot(r2, 0);
    LinearRepresentation::new(v2, g0, g1, w2).expect("shapes")
}
