//! Geometric products in the Clifford algebra Cl(3).
//!
//! Multivectors are stored as `[f64; 8]` over the basis
//! `[1, e1, e2, e3, e12, e23, e31, e123]` with e1^2 = e2^2 = e3^2 = 1.
//! Spinors live in the even subalgebra (indices 0, 4, 5, 6); vectors are
//! grade 1 (indices 1..=3).

pub type Multivector = [f64; 8];

/// Full geometric product. The component formulas encode the Cl(3)
/// multiplication table for the basis order above.
pub fn product(a: &Multivector, b: &Multivector) -> Multivector {
    [
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
            - a[4] * b[4]
            - a[5] * b[5]
            - a[6] * b[6]
            - a[7] * b[7],
        a[0] * b[1] + a[1] * b[0] - a[2] * b[4] + a[4] * b[2] + a[3] * b[6]
            - a[6] * b[3]
            - a[5] * b[7]
            - a[7] * b[5],
        a[0] * b[2] + a[2] * b[0] + a[1] * b[4] - a[4] * b[1] + a[5] * b[3]
            - a[3] * b[5]
            - a[6] * b[7]
            - a[7] * b[6],
        a[0] * b[3] + a[3] * b[0] + a[2] * b[5] - a[5] * b[2] + a[6] * b[1]
            - a[1] * b[6]
            - a[4] * b[7]
            - a[7] * b[4],
        a[0] * b[4] + a[4] * b[0] + a[1] * b[2] - a[2] * b[1] - a[5] * b[6]
            + a[6] * b[5]
            + a[3] * b[7]
            + a[7] * b[3],
        a[0] * b[5] + a[5] * b[0] + a[2] * b[3] - a[3] * b[2] - a[6] * b[4]
            + a[4] * b[6]
            + a[1] * b[7]
            + a[7] * b[1],
        a[0] * b[6] + a[6] * b[0] + a[3] * b[1] - a[1] * b[3] - a[4] * b[5]
            + a[5] * b[4]
            + a[2] * b[7]
            + a[7] * b[2],
        a[0] * b[7] + a[7] * b[0] + a[1] * b[5] + a[5] * b[1] + a[2] * b[6]
            + a[6] * b[2]
            + a[3] * b[4]
            + a[4] * b[3],
    ]
}

/// Reversion: grades 2 and 3 change sign.
pub fn reverse(a: &Multivector) -> Multivector {
    [a[0], a[1], a[2], a[3], -a[4], -a[5], -a[6], -a[7]]
}

pub fn from_vector(v: [f64; 3]) -> Multivector {
    [0.0, v[0], v[1], v[2], 0.0, 0.0, 0.0, 0.0]
}

pub fn vector_part(m: &Multivector) -> [f64; 3] {
    [m[1], m[2], m[3]]
}

/// Even part as (scalar, e12, e23, e31).
pub fn even_part(m: &Multivector) -> (f64, f64, f64, f64) {
    (m[0], m[4], m[5], m[6])
}
