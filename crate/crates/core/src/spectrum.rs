//! Closed-form eigenstructure of the spin-quadric matrix.
//!
//! The four eigenvalues are c - (alpha a + beta b) for a = |P||Q|,
//! b = |U||V| and sign labels (alpha, beta). Eigenvectors come from a
//! pinor product for ellipsoidal predicates and from explicit eigenplane
//! formulas for toroidal ones; a numeric nullspace extraction backs the
//! closed forms wherever they degenerate.

use crate::clifford;
use crate::predicate::{PredicateKind, ReducedPredicate, SpinMatrix, ZeroSide};
use crate::rational::{to_f64, RVec3, Rational};
use nalgebra::Matrix4;
use std::fmt;

/// Fixed label order for eigenvalues and frame columns:
/// (+,+), (+,-), (-,+), (-,-).
pub const LABEL_ORDER: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumError {
    /// No eigenframe exists for an improper predicate (every direction is
    /// an eigenvector of the scalar matrix).
    ImproperPredicate,
    /// The pinor eigenvector vanished (w0 ~ 0); use a numeric fallback.
    DegenerateEigenvector,
    /// Every closed-form eigenplane candidate failed the residual check.
    NoEigenplane,
    /// Operation requires an ellipsoidal predicate.
    NotEllipsoidal,
    /// Operation requires a toroidal predicate.
    NotToroidal,
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::ImproperPredicate => write!(f, "improper predicate has no eigenframe"),
            SpectrumError::DegenerateEigenvector => {
                write!(f, "pinor eigenvector degenerates (w0 ~ 0)")
            }
            SpectrumError::NoEigenplane => {
                write!(f, "no closed-form eigenplane candidate passed the residual check")
            }
            SpectrumError::NotEllipsoidal => write!(f, "predicate is not ellipsoidal"),
            SpectrumError::NotToroidal => write!(f, "predicate is not toroidal"),
        }
    }
}

impl std::error::Error for SpectrumError {}

/// Eigenvalue with its sign label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledEigenvalue {
    pub alpha: i8,
    pub beta: i8,
    pub value: f64,
}

/// The spectrum of the quadratic form: exact squared data plus the four
/// labeled floating eigenvalues in the fixed label order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub a2: Rational,
    pub b2: Rational,
    pub c: Rational,
    pub a: f64,
    pub b: f64,
    pub lambdas: [LabeledEigenvalue; 4],
}

impl Spectrum {
    pub fn lambda(&self, alpha: i8, beta: i8) -> f64 {
        let c = to_f64(&self.c);
        c - (alpha as f64) * self.a - (beta as f64) * self.b
    }

    pub fn values(&self) -> [f64; 4] {
        [
            self.lambdas[0].value,
            self.lambdas[1].value,
            self.lambdas[2].value,
            self.lambdas[3].value,
        ]
    }
}

/// Closed-form eigenvalues c - (alpha a + beta b).
pub fn eigenvalues(r: &ReducedPredicate) -> Spectrum {
    let d = r.derived_quantities();
    let a = to_f64(&d.a2).sqrt();
    let b = to_f64(&d.b2).sqrt();
    let c = to_f64(r.c());
    let lam = |alpha: i8, beta: i8| LabeledEigenvalue {
        alpha,
        beta,
        value: c - (alpha as f64) * a - (beta as f64) * b,
    };
    Spectrum {
        a2: d.a2,
        b2: d.b2,
        c: r.c().clone(),
        a,
        b,
        lambdas: [lam(1, 1), lam(1, -1), lam(-1, 1), lam(-1, -1)],
    }
}

/// Exact check of the characteristic polynomial: returns
/// (det(M - (c - gamma) I) by cofactor expansion,
///  gamma^4 - 2 (a2 + b2) gamma^2 + (a2 - b2)^2).
/// The two are equal for every rational gamma.
pub fn characteristic_poly_check(
    r: &ReducedPredicate,
    gamma: &Rational,
) -> (Rational, Rational) {
    let d = r.derived_quantities();
    let m = r.spin_matrix();
    let det = m.det_shifted(&(r.c() - gamma));
    let g2 = gamma * gamma;
    let two = crate::rational::rat(2);
    let diff = &d.a2 - &d.b2;
    let h = &g2 * &g2 - two * (&d.a2 + &d.b2) * &g2 + &diff * &diff;
    (det, h)
}

/// Pinor eigenvector for an ellipsoidal predicate and label (alpha, beta):
/// the even-grade coefficients of
/// `w = 1 - alpha beta P^ U^ Q^ V^ - alpha P^ Q^ - beta U^ V^`,
/// returned as (w12, w23, w31, w0). Satisfies |W|^2 = 4 w0; fails with
/// `DegenerateEigenvector` when w0 collapses to zero.
pub fn eigenvector_ellipsoidal(
    r: &ReducedPredicate,
    alpha: i8,
    beta: i8,
) -> Result<[f64; 4], SpectrumError> {
    if r.classify() != PredicateKind::ProperEllipsoidal {
        return Err(SpectrumError::NotEllipsoidal);
    }
    let p = unit_mv(r.p());
    let q = unit_mv(r.q());
    let u = unit_mv(r.u());
    let v = unit_mv(r.v());
    let (af, bf) = (alpha as f64, beta as f64);

    let puqv = clifford::product(&clifford::product(&p, &u), &clifford::product(&q, &v));
    let pq = clifford::product(&p, &q);
    let uv = clifford::product(&u, &v);
    let mut w = [0.0f64; 8];
    w[0] = 1.0;
    for i in 0..8 {
        w[i] -= af * bf * puqv[i] + af * pq[i] + bf * uv[i];
    }
    let (w0, w12, w23, w31) = clifford::even_part(&w);
    if w0 <= 1e-12 {
        return Err(SpectrumError::DegenerateEigenvector);
    }
    Ok([w12, w23, w31, w0])
}

fn unit_mv(v: &RVec3) -> clifford::Multivector {
    clifford::from_vector(v.unit_f64().expect("non-zero vector"))
}

/// Two-dimensional eigenspace of a repeated toroidal eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenplane {
    pub basis: [[f64; 4]; 2],
    pub lambda: f64,
}

/// Eigenplane of the eigenvalue c - alpha m, where m is the non-zero
/// product of a toroidal predicate.
///
/// Tries the three closed-form planes in index order, then the planes of
/// the parallel special case; every candidate must pass the residual check
/// before it is returned.
pub fn eigenplanes_toroidal(
    r: &ReducedPredicate,
    alpha: i8,
) -> Result<Eigenplane, SpectrumError> {
    let side = match r.classify() {
        PredicateKind::ProperToroidal(side) => side,
        _ => return Err(SpectrumError::NotToroidal),
    };
    // Formulas run over the non-zero side's pair; for a vanishing P,Q
    // product the roles of (P,Q) are taken by (U,V).
    let (x_exact, y_exact) = match side {
        ZeroSide::UV => (r.p(), r.q()),
        ZeroSide::PQ => (r.u(), r.v()),
    };
    let xh = x_exact.unit_f64().expect("non-zero vector");
    let yh = y_exact.unit_f64().expect("non-zero vector");

    let spec = eigenvalues(r);
    let m_prod = match side {
        ZeroSide::UV => spec.a,
        ZeroSide::PQ => spec.b,
    };
    let lambda = to_f64(&spec.c) - (alpha as f64) * m_prod;

    let m = r.spin_matrix();
    let tol = crate::DEFAULT_TOLERANCE * (1.0 + m.frobenius_norm());
    let accept = |u4: [f64; 4], v4: [f64; 4]| -> Option<Eigenplane> {
        if norm4(u4) < 1e-9 || norm4(v4) < 1e-9 {
            return None;
        }
        if !independent(u4, v4) {
            return None;
        }
        if eigen_residual(&m, lambda, u4) > tol || eigen_residual(&m, lambda, v4) > tol {
            return None;
        }
        Some(Eigenplane {
            basis: [u4, v4],
            lambda,
        })
    };

    let af = alpha as f64;
    for j in 0..3 {
        let kappa = xh[1] * xh[j] - yh[1] * yh[j] - af * (xh[1] * yh[j] - xh[j] * yh[1]);
        let a_j = -xh[2] * xh[j] + yh[2] * yh[j] + af * (xh[2] * yh[j] - xh[j] * yh[2]);
        let b_j = -xh[0] * xh[j] - yh[0] * yh[j] + af * (xh[0] * yh[j] + xh[j] * yh[0]);
        let c_j = -xh[0] * xh[j] + yh[0] * yh[j] + af * (xh[0] * yh[j] - xh[j] * yh[0]);
        let d_j = xh[2] * xh[j] + yh[2] * yh[j] - af * (xh[2] * yh[j] + xh[j] * yh[2]);
        if let Some(plane) = accept([kappa, 0.0, a_j, b_j], [0.0, kappa, c_j, d_j]) {
            return Ok(plane);
        }
    }

    // Parallel special case: the non-zero pair is exactly collinear. The
    // scrambled direction m = (y3, y1, y2) splits the spectrum into the
    // plane {z4 = 0, m.z = 0} for the matching sign and the plane spanned
    // by e0 and (m, 0) for the opposite sign.
    if x_exact.cross(y_exact).is_zero() {
        let mh = [yh[2], yh[0], yh[1]];
        let alpha0 = crate::rational::sign(&x_exact.dot(y_exact));
        if i32::from(alpha) == -alpha0 {
            if let Some(plane) = accept([0.0, 0.0, 0.0, 1.0], [mh[0], mh[1], mh[2], 0.0]) {
                return Ok(plane);
            }
        } else {
            let cands = [
                cross3(mh, [1.0, 0.0, 0.0]),
                cross3(mh, [0.0, 1.0, 0.0]),
                cross3(mh, [0.0, 0.0, 1.0]),
            ];
            for i in 0..3 {
                for k in (i + 1)..3 {
                    let u4 = [cands[i][0], cands[i][1], cands[i][2], 0.0];
                    let v4 = [cands[k][0], cands[k][1], cands[k][2], 0.0];
                    if let Some(plane) = accept(u4, v4) {
                        return Ok(plane);
                    }
                }
            }
        }
    }

    Err(SpectrumError::NoEigenplane)
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot4(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn norm4(a: [f64; 4]) -> f64 {
    dot4(a, a).sqrt()
}

fn scale4(a: [f64; 4], s: f64) -> [f64; 4] {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

fn independent(a: [f64; 4], b: [f64; 4]) -> bool {
    // Gram determinant test; sin(angle) > ~1e-6
    let (na, nb) = (norm4(a), norm4(b));
    let d = dot4(a, b);
    let gram = na * na * nb * nb - d * d;
    gram > (1e-6 * na * nb).powi(2)
}

/// | (M - lambda I) v |.
pub fn eigen_residual(m: &SpinMatrix, lambda: f64, v: [f64; 4]) -> f64 {
    let mv = m.mul_vec(v);
    norm4([
        mv[0] - lambda * v[0],
        mv[1] - lambda * v[1],
        mv[2] - lambda * v[2],
        mv[3] - lambda * v[3],
    ])
}

/// Orthonormal eigenvector frame: the columns of Q in M = Q Lambda Q^T,
/// ordered by the fixed label convention.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenFrame {
    /// Orthonormal eigenvectors, one per label in `LABEL_ORDER`.
    pub columns: [[f64; 4]; 4],
    /// Eigenvalues matching the columns.
    pub lambdas: [f64; 4],
    pub labels: [(i8, i8); 4],
    /// Sign of det Q (+1 rotation, -1 reflection).
    pub det_sign: i8,
}

impl EigenFrame {
    /// s = Q t.
    pub fn apply(&self, t: [f64; 4]) -> [f64; 4] {
        let mut s = [0.0; 4];
        for j in 0..4 {
            for i in 0..4 {
                s[i] += self.columns[j][i] * t[j];
            }
        }
        s
    }

    pub fn determinant(&self) -> f64 {
        let c = &self.columns;
        Matrix4::from_fn(|i, j| c[j][i]).determinant()
    }
}

/// Numeric eigenvectors of M closest to `lambda` (fallback route).
fn numeric_eigenspace(m: &SpinMatrix, lambda: f64, dim: usize) -> Vec<[f64; 4]> {
    let mf = m.to_f64();
    let ma = Matrix4::from_fn(|i, j| mf[i][j]);
    let se = ma.symmetric_eigen();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| {
        let di = (se.eigenvalues[i] - lambda).abs();
        let dj = (se.eigenvalues[j] - lambda).abs();
        di.partial_cmp(&dj).unwrap().then(i.cmp(&j))
    });
    order
        .into_iter()
        .take(dim)
        .map(|k| {
            let col = se.eigenvectors.column(k);
            [col[0], col[1], col[2], col[3]]
        })
        .collect()
}

/// Modified Gram-Schmidt. Returns None if the set degenerates.
fn orthonormalize(vecs: &[[f64; 4]]) -> Option<Vec<[f64; 4]>> {
    let mut out: Vec<[f64; 4]> = Vec::with_capacity(vecs.len());
    for &v in vecs {
        let mut w = v;
        for q in &out {
            let d = dot4(w, *q);
            for i in 0..4 {
                w[i] -= d * q[i];
            }
        }
        let n = norm4(w);
        if n < 1e-6 {
            return None;
        }
        out.push(scale4(w, 1.0 / n));
    }
    Some(out)
}

/// Build the orthonormal eigenframe for a proper predicate.
///
/// Closed-form eigenvectors are used where valid; any degeneracy (vanishing
/// pinor, dependent plane vectors, missing eigenplane) falls back to a
/// numeric nullspace extraction on the exact matrix.
pub fn orthonormal_frame(r: &ReducedPredicate) -> Result<EigenFrame, SpectrumError> {
    let kind = r.classify();
    let spec = eigenvalues(r);
    let m = r.spin_matrix();
    let tol = crate::DEFAULT_TOLERANCE * (1.0 + m.frobenius_norm());

    let mut columns = [[0.0f64; 4]; 4];
    let lambdas = spec.values();

    match kind {
        PredicateKind::Improper => return Err(SpectrumError::ImproperPredicate),
        PredicateKind::ProperEllipsoidal => {
            // Labels 1 and 2 share lambda = c exactly when a = b.
            let groups: Vec<Vec<usize>> = if spec.a2 == spec.b2 {
                vec![vec![0], vec![1, 2], vec![3]]
            } else {
                vec![vec![0], vec![1], vec![2], vec![3]]
            };
            for group in groups {
                let lambda = lambdas[group[0]];
                let closed: Option<Vec<[f64; 4]>> = group
                    .iter()
                    .map(|&gi| {
                        let (alpha, beta) = LABEL_ORDER[gi];
                        eigenvector_ellipsoidal(r, alpha, beta).ok()
                    })
                    .collect();
                let ortho = closed
                    .and_then(|vs| orthonormalize(&vs))
                    .filter(|vs| vs.iter().all(|&v| eigen_residual(&m, lambda, v) <= tol));
                let basis = match ortho {
                    Some(vs) => vs,
                    None => numeric_eigenspace(&m, lambda, group.len()),
                };
                for (slot, vec) in group.iter().zip(basis) {
                    columns[*slot] = vec;
                }
            }
        }
        PredicateKind::ProperToroidal(side) => {
            // Column slots sharing one eigenvalue, per label order.
            let slots: [[usize; 2]; 2] = match side {
                ZeroSide::UV => [[0, 1], [2, 3]], // lambda = c -/+ a
                ZeroSide::PQ => [[0, 2], [1, 3]], // lambda = c -/+ b
            };
            for (alpha, pair) in [(1i8, slots[0]), (-1i8, slots[1])] {
                let lambda = lambdas[pair[0]];
                let basis = match eigenplanes_toroidal(r, alpha) {
                    Ok(plane) => orthonormalize(&plane.basis)
                        .filter(|vs| vs.iter().all(|&v| eigen_residual(&m, lambda, v) <= tol))
                        .unwrap_or_else(|| numeric_eigenspace(&m, lambda, 2)),
                    Err(_) => numeric_eigenspace(&m, lambda, 2),
                };
                for (slot, vec) in pair.iter().zip(basis) {
                    columns[*slot] = vec;
                }
            }
        }
    }

    let mut frame = EigenFrame {
        columns,
        lambdas,
        labels: LABEL_ORDER,
        det_sign: 0,
    };
    frame.det_sign = if frame.determinant() >= 0.0 { 1 } else { -1 };
    Ok(frame)
}
