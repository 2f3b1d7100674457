//! Known values used as fixtures and golden data.

use crate::linrep::{rat, ratio, LinearRepresentation, RationalMatrix};

/// `c_t(n)` for `n = 0..=19`.
pub const CT_INITIAL: [u64; 20] = [
    1, 2, 3, 2, 4, 4, 6, 8, 12, 8, 12, 16, 14, 18, 18, 18, 28, 20, 20, 28,
];

/// A known rank-7 representation of `a0(n) = c(2n) - 2c(n)`.
pub fn a0_reference_representation() -> LinearRepresentation {
    let v = vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(0), rat(0)];
    let g0 = RationalMatrix::from_i64(&[
        &[1, 0, 0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 0, 0, 0, 1],
    ]);
    let mut g1 = RationalMatrix::from_i64(&[
        &[0, 1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 0, 0, 1],
        &[0, 0, 0, 0, 0, 0, 0],
    ]);
    g1[(3, 4)] = ratio(1, 2);
    g1[(6, 4)] = ratio(1, 2);
    let w = [-1, -1, -2, 2, 4, 2, 6].iter().map(|&x| rat(x)).collect();
    LinearRepresentation::new(v, g0, g1, w).expect("rank-7 shapes")
}
