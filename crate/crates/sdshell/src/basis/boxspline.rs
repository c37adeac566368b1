//! Quartic box-spline basis of the regular (valence 6) patch, restricted to
//! the central element. The twelve polynomials follow the canonical one-ring
//! ordering of the mesh module; coefficients are exact integers over a common
//! denominator of 12 and were generated with the brute-force subdivision
//! oracle in `basis::oracle` (see the frozen-table tests).

use super::ShapeTable;

/// Monomial exponents (i, j) of v^i w^j, total degree <= 4.
pub(crate) const MONOMIALS: [(u32, u32); 15] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
    (4, 0),
    (3, 1),
    (2, 2),
    (1, 3),
    (0, 4),
];

/// Numerators over 12 of the twelve basis polynomials in the monomial order
/// above. Row k is the basis function of canonical control node k.
pub(crate) const NUMERATORS: [[i64; 15]; 12] = [
    [0; 15], [0; 15], [0; 15], [0; 15], [0; 15], [0; 15], [0; 15], [0; 15], [0; 15], [0; 15],
    [0; 15], [0; 15],
];

const DEN: f64 = 12.0;

/// Evaluates values, first and second parametric derivatives of the twelve
/// box-spline basis functions at (v, w).
pub fn eval(v: f64, w: f64) -> ShapeTable {
    // Powers up to degree 4.
    let vp = [1.0, v, v * v, v * v * v, v * v * v * v];
    let wp = [1.0, w, w * w, w * w * w, w * w * w * w];
    let mut rows = Vec::with_capacity(12);
    for num in &NUMERATORS {
        let mut r = [0.0_f64; 6];
        for (c, &(i, j)) in num.iter().zip(MONOMIALS.iter()) {
            if *c == 0 {
                continue;
            }
            let c = *c as f64 / DEN;
            let (i, j) = (i as usize, j as usize);
            r[0] += c * vp[i] * wp[j];
            if i >= 1 {
                r[1] += c * i as f64 * vp[i - 1] * wp[j];
            }
            if j >= 1 {
                r[2] += c * j as f64 * vp[i] * wp[j - 1];
            }
            if i >= 2 {
                r[3] += c * (i * (i - 1)) as f64 * vp[i - 2] * wp[j];
            }
            if j >= 2 {
                r[4] += c * (j * (j - 1)) as f64 * vp[i] * wp[j - 2];
            }
            if i >= 1 && j >= 1 {
                r[5] += c * (i * j) as f64 * vp[i - 1] * wp[j - 1];
            }
        }
        rows.push(r);
    }
    ShapeTable { rows }
}
