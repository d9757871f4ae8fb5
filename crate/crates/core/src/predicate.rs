//! Collision predicates over rotating segments and their quadratic forms.
//!
//! A constraint between a stationary segment (K, L) and a rotating segment
//! (A, B) plus an offset c evaluates, for a rotation spinor s, to
//!
//! ```text
//! G_s = (K x L) . Rot_s(A - B) + (K - L) . Rot_s(A x B) + c
//! ```
//!
//! With P = K x L, Q = A - B, U = K - L, V = A x B the same constraint is
//! `P . Rot_s(Q) + U . Rot_s(V) + c`, and on unit spinors it equals the
//! quadratic form s^T M s for an exact symmetric 4x4 matrix M assembled
//! here. All matrix entries are rational and exact; only the direct
//! rotation route uses floating point.

use crate::clifford;
use crate::rational::{sign, to_f64, RVec3, Rational};
use std::fmt;

/// Errors for predicate-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateError {
    /// The rotation formula needs an invertible spinor.
    ZeroSpinor,
    /// Normalization of the zero vector.
    ZeroVector,
    /// Direct reduced-predicate construction violating P.U = 0 or Q.V = 0.
    NotReduced,
}

impl fmt::Display for PredicateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateError::ZeroSpinor => write!(f, "spinor has zero norm"),
            PredicateError::ZeroVector => write!(f, "cannot normalize the zero vector"),
            PredicateError::NotReduced => {
                write!(f, "reduced predicate must satisfy P.U = 0 and Q.V = 0")
            }
        }
    }
}

impl std::error::Error for PredicateError {}

/// Rotation spinor coordinates in the fixed basis order (s12, s23, s31, s0).
///
/// The same order indexes every 4-vector and matrix in this crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor {
    pub s12: f64,
    pub s23: f64,
    pub s31: f64,
    pub s0: f64,
}

impl Spinor {
    pub const IDENTITY: Spinor = Spinor {
        s12: 0.0,
        s23: 0.0,
        s31: 0.0,
        s0: 1.0,
    };

    pub fn new(s12: f64, s23: f64, s31: f64, s0: f64) -> Self {
        Spinor { s12, s23, s31, s0 }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Spinor::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.s12, self.s23, self.s31, self.s0]
    }

    pub fn norm_sqr(self) -> f64 {
        self.s12 * self.s12 + self.s23 * self.s23 + self.s31 * self.s31 + self.s0 * self.s0
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

/// Raw collision constraint: stationary segment (K, L), rotating segment
/// (A, B), offset c. Degenerate inputs are allowed; classification absorbs
/// them downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPredicate {
    pub k: RVec3,
    pub l: RVec3,
    pub a: RVec3,
    pub b: RVec3,
    pub c: Rational,
}

impl GeneralPredicate {
    pub fn new(k: RVec3, l: RVec3, a: RVec3, b: RVec3, c: Rational) -> Self {
        GeneralPredicate { k, l, a, b, c }
    }

    /// Substitute P = K x L, Q = A - B, U = K - L, V = A x B. The output
    /// satisfies P.U = 0 and Q.V = 0 exactly.
    pub fn reduce(&self) -> ReducedPredicate {
        ReducedPredicate {
            p: self.k.cross(&self.l),
            q: self.a.sub(&self.b),
            u: self.k.sub(&self.l),
            v: self.a.cross(&self.b),
            c: self.c.clone(),
        }
    }
}

/// Predicate in P, Q, U, V form. Always satisfies P.U = 0 and Q.V = 0;
/// direct construction is validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPredicate {
    p: RVec3,
    q: RVec3,
    u: RVec3,
    v: RVec3,
    c: Rational,
}

/// Which squared product vanishes for a toroidal predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroSide {
    /// |P||Q| = 0 while |U||V| != 0.
    PQ,
    /// |U||V| = 0 while |P||Q| != 0.
    UV,
}

/// Exhaustive predicate taxonomy, decided by exact zero tests on the
/// squared products |P|^2|Q|^2 and |U|^2|V|^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredicateKind {
    /// Both products vanish; the constraint degenerates to the constant c.
    Improper,
    /// Exactly one product vanishes.
    ProperToroidal(ZeroSide),
    /// Both products are non-zero.
    ProperEllipsoidal,
}

impl fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateKind::Improper => write!(f, "improper"),
            PredicateKind::ProperToroidal(_) => write!(f, "toroidal"),
            PredicateKind::ProperEllipsoidal => write!(f, "ellipsoidal"),
        }
    }
}

/// Exact quantities shared by the matrix assembly and the spectrum:
/// R = P x Q + U x V, T = P.Q + U.V, their difference forms, the mixed
/// cross H = (P x U) x (Q x V), and the squared products a2, b2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedQuantities {
    pub r: RVec3,
    pub r_tilde: RVec3,
    pub h: RVec3,
    pub t: Rational,
    pub t_tilde: Rational,
    pub a2: Rational,
    pub b2: Rational,
}

impl ReducedPredicate {
    /// Validated construction from raw P, Q, U, V.
    pub fn new(
        p: RVec3,
        q: RVec3,
        u: RVec3,
        v: RVec3,
        c: Rational,
    ) -> Result<Self, PredicateError> {
        if sign(&p.dot(&u)) != 0 || sign(&q.dot(&v)) != 0 {
            return Err(PredicateError::NotReduced);
        }
        Ok(ReducedPredicate { p, q, u, v, c })
    }

    pub fn p(&self) -> &RVec3 {
        &self.p
    }

    pub fn q(&self) -> &RVec3 {
        &self.q
    }

    pub fn u(&self) -> &RVec3 {
        &self.u
    }

    pub fn v(&self) -> &RVec3 {
        &self.v
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn derived_quantities(&self) -> DerivedQuantities {
        let pq = self.p.cross(&self.q);
        let uv = self.u.cross(&self.v);
        DerivedQuantities {
            r: pq.add(&uv),
            r_tilde: pq.sub(&uv),
            h: self.p.cross(&self.u).cross(&self.q.cross(&self.v)),
            t: self.p.dot(&self.q) + self.u.dot(&self.v),
            t_tilde: self.p.dot(&self.q) - self.u.dot(&self.v),
            a2: self.p.norm_sqr() * self.q.norm_sqr(),
            b2: self.u.norm_sqr() * self.v.norm_sqr(),
        }
    }

    /// Exact symmetric matrix of the quadratic form s^T M s.
    pub fn spin_matrix(&self) -> SpinMatrix {
        let d = self.derived_quantities();
        let (p, q, u, v) = (&self.p, &self.q, &self.u, &self.v);
        let two = crate::rational::rat(2);
        let diag = |i: usize| -> Rational {
            &two * (p.get(i) * q.get(i) + u.get(i) * v.get(i)) - &d.t + &self.c
        };
        let mixed = |i: usize, j: usize| -> Rational {
            &two * (p.get(i) * q.get(j) + u.get(i) * v.get(j))
        };
        // Row/column order (s12, s23, s31, s0); the spatial index cycles
        // (3, 1, 2) down the diagonal.
        let m11 = diag(2);
        let m22 = diag(0);
        let m33 = diag(1);
        let m44 = &d.t + &self.c;
        let m12 = mixed(0, 2) + &d.r.y;
        let m13 = mixed(2, 1) + &d.r.x;
        let m23 = mixed(1, 0) + &d.r.z;
        let m14 = d.r.z.clone();
        let m24 = d.r.x.clone();
        let m34 = d.r.y.clone();
        SpinMatrix {
            upper: [m11, m12, m13, m14, m22, m23, m24, m33, m34, m44],
        }
    }

    /// Direct floating evaluation P.Rot_s(Q) + U.Rot_s(V) + c.
    pub fn evaluate_direct(&self, s: Spinor) -> Result<f64, PredicateError> {
        let rot_q = rotate_vector(s, self.q.to_f64())?;
        let rot_v = rotate_vector(s, self.v.to_f64())?;
        let p = self.p.to_f64();
        let u = self.u.to_f64();
        Ok(p[0] * rot_q[0]
            + p[1] * rot_q[1]
            + p[2] * rot_q[2]
            + u[0] * rot_v[0]
            + u[1] * rot_v[1]
            + u[2] * rot_v[2]
            + to_f64(&self.c))
    }

    /// Improper / toroidal / ellipsoidal, by exact zero tests on a2 and b2.
    pub fn classify(&self) -> PredicateKind {
        let a2_zero = self.p.is_zero() || self.q.is_zero();
        let b2_zero = self.u.is_zero() || self.v.is_zero();
        match (a2_zero, b2_zero) {
            (true, true) => PredicateKind::Improper,
            (true, false) => PredicateKind::ProperToroidal(ZeroSide::PQ),
            (false, true) => PredicateKind::ProperToroidal(ZeroSide::UV),
            (false, false) => PredicateKind::ProperEllipsoidal,
        }
    }
}

/// Apply the rotation represented by s to a vector: s v s^-1.
pub fn rotate_vector(s: Spinor, v: [f64; 3]) -> Result<[f64; 3], PredicateError> {
    let n2 = s.norm_sqr();
    if n2 == 0.0 {
        return Err(PredicateError::ZeroSpinor);
    }
    let sm = [s.s0, 0.0, 0.0, 0.0, s.s12, s.s23, s.s31, 0.0];
    let rotated = clifford::product(
        &clifford::product(&sm, &clifford::from_vector(v)),
        &clifford::reverse(&sm),
    );
    let r = clifford::vector_part(&rotated);
    Ok([r[0] / n2, r[1] / n2, r[2] / n2])
}

/// Unit-length floating image of v.
pub fn normalize_vector(v: &RVec3) -> Result<[f64; 3], PredicateError> {
    v.unit_f64().ok_or(PredicateError::ZeroVector)
}

/// Exact symmetric 4x4 matrix in the (s12, s23, s31, s0) basis, stored as
/// its upper triangle so symmetry holds by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinMatrix {
    // Row-major upper triangle: (0,0) (0,1) (0,2) (0,3) (1,1) (1,2) (1,3) (2,2) (2,3) (3,3)
    upper: [Rational; 10],
}

impl SpinMatrix {
    fn tri(i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match i {
            0 => j,
            1 => 3 + j,
            2 => 5 + j,
            3 => 9,
            _ => panic!("matrix index out of range"),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.upper[Self::tri(i, j)]
    }

    pub fn to_f64(&self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = to_f64(self.get(i, j));
            }
        }
        m
    }

    /// s^T M s in floating point.
    pub fn evaluate(&self, s: Spinor) -> f64 {
        let m = self.to_f64();
        let v = s.to_array();
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += v[i] * m[i][j] * v[j];
            }
        }
        acc
    }

    /// M v in floating point.
    pub fn mul_vec(&self, v: [f64; 4]) -> [f64; 4] {
        let m = self.to_f64();
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        let m = self.to_f64();
        m.iter()
            .flatten()
            .map(|e| e * e)
            .sum::<f64>()
            .sqrt()
    }

    /// Exact det(M - shift I) by cofactor expansion.
    pub fn det_shifted(&self, shift: &Rational) -> Rational {
        let mut m: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| self.get(i, j).clone()).collect())
            .collect();
        for i in 0..4 {
            m[i][i] = &m[i][i] - shift;
        }
        det4(&m)
    }
}

fn det3(m: &[Vec<Rational>], rows: [usize; 3], cols: [usize; 3]) -> Rational {
    let e = |i: usize, j: usize| &m[rows[i]][cols[j]];
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
        - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

fn det4(m: &[Vec<Rational>]) -> Rational {
    let mut acc = Rational::from_integer(0.into());
    for (j, sgn) in [(0usize, 1i64), (1, -1), (2, 1), (3, -1)] {
        let cols: [usize; 3] = match j {
            0 => [1, 2, 3],
            1 => [0, 2, 3],
            2 => [0, 1, 3],
            _ => [0, 1, 2],
        };
        let minor = det3(m, [1, 2, 3], cols);
        acc = acc + crate::rational::rat(sgn) * &m[0][j] * minor;
    }
    acc
}
