//! Case dispatch and chart evaluation for spin-quadric parameterization.
//!
//! In the eigenframe coordinates t = (x, y, z, w) the surface is
//!
//! ```text
//! (a+b) x^2 + (a-b) y^2 + (-a+b) z^2 + (-a-b) w^2 = c,   |t| = 1.
//! ```
//!
//! The shape of the solution set depends only on how c sits relative to
//! +-a +- b. Every comparison here is exact: c, a^2 and b^2 are rational
//! and signs of expressions c - alpha a - beta b are decided by squaring
//! with sign bookkeeping, never by floating point. Floating point enters
//! only inside the trigonometric chart evaluators.

use crate::rational::{sign, Rational};
use crate::spectrum::{EigenFrame, Spectrum};
use crate::Spinor;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum ParamError {
    /// Improper predicates have no parameterization case.
    ImproperPredicate,
    /// The empty case has nothing to evaluate.
    EmptyCase,
    /// A chart parameter left its stated domain.
    OutOfDomain(String),
    /// A radicand fell below -1e-12: the case decision and the chart
    /// disagree, which signals a misclassification.
    NegativeRadicand(f64),
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::ImproperPredicate => write!(f, "improper predicate has no chart"),
            ParamError::EmptyCase => write!(f, "empty case has no chart points"),
            ParamError::OutOfDomain(msg) => write!(f, "chart parameter out of domain: {msg}"),
            ParamError::NegativeRadicand(v) => write!(f, "negative radicand {v}"),
        }
    }
}

impl std::error::Error for ParamError {}

/// The 11 ellipsoidal parameterization types, numbered 1..=11.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EllipsoidalCase {
    Empty,
    PointPair,
    SeparateEllipsoids,
    YTouching,
    YzCrossed,
    ZTouching,
    YBarrel,
    ZBarrel,
    NotchedYBarrel,
    NotchedZBarrel,
    YzCaps,
}

/// The 7 toroidal parameterization types, numbered 1..=7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ToroidalCase {
    Empty,
    XyZwTorus,
    XyCircle,
    ZwCircle,
    XzYwTorus,
    XzCircle,
    YwCircle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamCase {
    Ellipsoidal(EllipsoidalCase),
    Toroidal(ToroidalCase),
}

/// Shape class of the locus w = 0 where the two w-sign chart branches meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainHole {
    Empty,
    PointPair,
    Circle,
    DeformedEllipse,
    /// Two deformed ellipses sharing two points (notched barrels).
    DeformedEllipsePair,
}

impl fmt::Display for DomainHole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainHole::Empty => "empty",
            DomainHole::PointPair => "point-pair",
            DomainHole::Circle => "circle",
            DomainHole::DeformedEllipse => "deformed-ellipse",
            DomainHole::DeformedEllipsePair => "deformed-ellipse-pair-with-common-points",
        };
        write!(f, "{s}")
    }
}

/// Per-case topology facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseMetadata {
    pub component_count: u8,
    /// -1 for empty, 0 for points, 1 for circles, 2 for surfaces.
    pub dimension: i8,
    pub domain_hole: DomainHole,
    pub is_manifold: bool,
}

impl ParamCase {
    /// Case number in the 1..=11 (ellipsoidal) or 1..=7 (toroidal) lists.
    pub fn type_number(&self) -> u8 {
        match self {
            ParamCase::Ellipsoidal(e) => match e {
                EllipsoidalCase::Empty => 1,
                EllipsoidalCase::PointPair => 2,
                EllipsoidalCase::SeparateEllipsoids => 3,
                EllipsoidalCase::YTouching => 4,
                EllipsoidalCase::YzCrossed => 5,
                EllipsoidalCase::ZTouching => 6,
                EllipsoidalCase::YBarrel => 7,
                EllipsoidalCase::ZBarrel => 8,
                EllipsoidalCase::NotchedYBarrel => 9,
                EllipsoidalCase::NotchedZBarrel => 10,
                EllipsoidalCase::YzCaps => 11,
            },
            ParamCase::Toroidal(t) => match t {
                ToroidalCase::Empty => 1,
                ToroidalCase::XyZwTorus => 2,
                ToroidalCase::XyCircle => 3,
                ToroidalCase::ZwCircle => 4,
                ToroidalCase::XzYwTorus => 5,
                ToroidalCase::XzCircle => 6,
                ToroidalCase::YwCircle => 7,
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ParamCase::Ellipsoidal(e) => match e {
                EllipsoidalCase::Empty => "empty",
                EllipsoidalCase::PointPair => "pair-of-points",
                EllipsoidalCase::SeparateEllipsoids => "pair-of-separate-ellipsoids",
                EllipsoidalCase::YTouching => "y-touching",
                EllipsoidalCase::YzCrossed => "yz-crossed",
                EllipsoidalCase::ZTouching => "z-touching",
                EllipsoidalCase::YBarrel => "y-barrel",
                EllipsoidalCase::ZBarrel => "z-barrel",
                EllipsoidalCase::NotchedYBarrel => "notched-y-barrel",
                EllipsoidalCase::NotchedZBarrel => "notched-z-barrel",
                EllipsoidalCase::YzCaps => "yz-caps",
            },
            ParamCase::Toroidal(t) => match t {
                ToroidalCase::Empty => "empty",
                ToroidalCase::XyZwTorus => "xy/zw-torus",
                ToroidalCase::XyCircle => "xy-circle",
                ToroidalCase::ZwCircle => "zw-circle",
                ToroidalCase::XzYwTorus => "xz/yw-torus",
                ToroidalCase::XzCircle => "xz-circle",
                ToroidalCase::YwCircle => "yw-circle",
            },
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(
            self,
            ParamCase::Ellipsoidal(EllipsoidalCase::Empty)
                | ParamCase::Toroidal(ToroidalCase::Empty)
        )
    }

    pub fn metadata(&self) -> CaseMetadata {
        use DomainHole as H;
        let m = |components, dimension, domain_hole, is_manifold| CaseMetadata {
            component_count: components,
            dimension,
            domain_hole,
            is_manifold,
        };
        match self {
            ParamCase::Ellipsoidal(e) => match e {
                EllipsoidalCase::Empty => m(0, -1, H::Empty, true),
                EllipsoidalCase::PointPair => m(2, 0, H::Empty, true),
                EllipsoidalCase::SeparateEllipsoids => m(2, 2, H::Empty, true),
                EllipsoidalCase::YTouching => m(1, 2, H::PointPair, false),
                EllipsoidalCase::YzCrossed => m(1, 2, H::Circle, false),
                EllipsoidalCase::ZTouching => m(1, 2, H::PointPair, false),
                EllipsoidalCase::YBarrel => m(1, 2, H::DeformedEllipse, true),
                EllipsoidalCase::ZBarrel => m(1, 2, H::DeformedEllipse, true),
                EllipsoidalCase::NotchedYBarrel => m(1, 2, H::DeformedEllipsePair, false),
                EllipsoidalCase::NotchedZBarrel => m(1, 2, H::DeformedEllipsePair, false),
                EllipsoidalCase::YzCaps => m(2, 2, H::DeformedEllipse, true),
            },
            ParamCase::Toroidal(t) => match t {
                ToroidalCase::Empty => m(0, -1, H::Empty, true),
                ToroidalCase::XyZwTorus | ToroidalCase::XzYwTorus => m(1, 2, H::Empty, true),
                _ => m(1, 1, H::Empty, true),
            },
        }
    }
}

impl fmt::Display for ParamCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Sign of p + q sqrt(r) for rationals p, q and r >= 0.
fn sign_plus_sqrt(p: &Rational, q: &Rational, r: &Rational) -> i32 {
    debug_assert!(sign(r) >= 0);
    if sign(r) == 0 {
        return sign(p);
    }
    let (sp, sq) = (sign(p), sign(q));
    if sq == 0 {
        return sp;
    }
    if sp == 0 {
        return sq;
    }
    if sp == sq {
        return sp;
    }
    // opposite signs: compare p^2 against q^2 r
    let t = sign(&(p * p - q * q * r));
    sp * t
}

/// Exact sign of c - alpha a - beta b with a = sqrt(a2), b = sqrt(b2).
fn sign_c_minus_gamma(c: &Rational, alpha: i32, beta: i32, a2: &Rational, b2: &Rational) -> i32 {
    // X = c - alpha a, Y = beta b; result is sign(X - Y)
    let minus_alpha = crate::rational::rat(-i64::from(alpha));
    let s_x = sign_plus_sqrt(c, &minus_alpha, a2);
    let s_y = if sign(b2) == 0 { 0 } else { beta.signum() };
    if s_y == 0 {
        return s_x;
    }
    if s_x == 0 {
        return -s_y;
    }
    if s_x != s_y {
        return s_x;
    }
    // same strict sign: compare X^2 = c^2 + a2 - 2 alpha c a against b2
    let p = c * c + a2 - b2;
    let q = crate::rational::rat(-2 * i64::from(alpha)) * c;
    let t = sign_plus_sqrt(&p, &q, a2);
    if s_x > 0 {
        t
    } else {
        -t
    }
}

/// Decide the parameterization case from exact squared data.
///
/// All boundary comparisons (c against +-a +- b, a against b) are exact.
pub fn classify_case(a2: &Rational, b2: &Rational, c: &Rational) -> Result<ParamCase, ParamError> {
    let a2_zero = sign(a2) == 0;
    let b2_zero = sign(b2) == 0;
    match (a2_zero, b2_zero) {
        (true, true) => Err(ParamError::ImproperPredicate),
        (false, false) => Ok(ParamCase::Ellipsoidal(classify_ellipsoidal(a2, b2, c))),
        (true, false) => Ok(ParamCase::Toroidal(classify_toroidal(b2, c, false))),
        (false, true) => Ok(ParamCase::Toroidal(classify_toroidal(a2, c, true))),
    }
}

fn classify_ellipsoidal(a2: &Rational, b2: &Rational, c: &Rational) -> EllipsoidalCase {
    use EllipsoidalCase::*;
    match sign_c_minus_gamma(c, -1, -1, a2, b2) {
        -1 => return Empty,
        0 => return PointPair,
        _ => {}
    }
    match sign_c_minus_gamma(c, 1, 1, a2, b2) {
        1 => return Empty,
        0 => return YzCaps,
        _ => {}
    }
    match sign(&(a2 - b2)) {
        0 => {
            // a = b; the only interior boundary is c = 0
            match sign(c) {
                -1 => SeparateEllipsoids,
                0 => YzCrossed,
                _ => YzCaps,
            }
        }
        -1 => {
            // a < b: boundaries at a - b < 0 and b - a > 0
            match sign_c_minus_gamma(c, 1, -1, a2, b2) {
                -1 => return SeparateEllipsoids,
                0 => return YTouching,
                _ => {}
            }
            match sign_c_minus_gamma(c, -1, 1, a2, b2) {
                -1 => YBarrel,
                0 => NotchedYBarrel,
                _ => YzCaps,
            }
        }
        _ => {
            // a > b: boundaries at b - a < 0 and a - b > 0
            match sign_c_minus_gamma(c, -1, 1, a2, b2) {
                -1 => return SeparateEllipsoids,
                0 => return ZTouching,
                _ => {}
            }
            match sign_c_minus_gamma(c, 1, -1, a2, b2) {
                -1 => ZBarrel,
                0 => NotchedZBarrel,
                _ => YzCaps,
            }
        }
    }
}

/// `pq_side`: true when the non-zero product is a = |P||Q| (the U,V side
/// vanished), which selects the xy/zw family; false selects xz/yw.
fn classify_toroidal(m2: &Rational, c: &Rational, pq_side: bool) -> ToroidalCase {
    use ToroidalCase::*;
    let minus_one = crate::rational::rat(-1);
    let one = crate::rational::rat(1);
    // sign(c - m) and sign(c + m) with m = sqrt(m2)
    let upper = sign_plus_sqrt(c, &minus_one, m2);
    let lower = sign_plus_sqrt(c, &one, m2);
    match (lower, upper) {
        (-1, _) | (_, 1) => Empty,
        (0, _) => {
            if pq_side {
                ZwCircle
            } else {
                YwCircle
            }
        }
        (_, 0) => {
            if pq_side {
                XyCircle
            } else {
                XzCircle
            }
        }
        _ => {
            if pq_side {
                XyZwTorus
            } else {
                XzYwTorus
            }
        }
    }
}

/// Convenience dispatch from a spectrum (exact a2, b2, c).
pub fn classify_spectrum(spec: &Spectrum) -> Result<ParamCase, ParamError> {
    classify_case(&spec.a2, &spec.b2, &spec.c)
}

/// Chart parameters: an angle `alpha` in [0, 2pi), a second continuous
/// parameter (`beta` or `h`, case dependent), and the discrete branch
/// signs sigma (side) and w_sign (w root).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartParams {
    pub alpha: f64,
    pub second: f64,
    pub sigma: i8,
    pub w_sign: i8,
}

impl ChartParams {
    pub fn new(alpha: f64, second: f64, sigma: i8, w_sign: i8) -> Self {
        ChartParams {
            alpha,
            second,
            sigma,
            w_sign,
        }
    }
}

/// A point in eigenframe coordinates together with the parameters that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub t: [f64; 4],
    pub params: ChartParams,
}

const RADICAND_CLAMP: f64 = 1e-12;

fn guarded_sqrt(x: f64) -> Result<f64, ParamError> {
    if x < -RADICAND_CLAMP {
        return Err(ParamError::NegativeRadicand(x));
    }
    // radicands within the clamp of zero are analytic zeros blurred by
    // rounding; snapping keeps the w-sign branches in exact agreement on
    // the domain hole
    if x <= RADICAND_CLAMP {
        return Ok(0.0);
    }
    Ok(x.sqrt())
}

fn check_angle(alpha: f64) -> Result<(), ParamError> {
    if !(0.0..2.0 * std::f64::consts::PI).contains(&alpha) {
        return Err(ParamError::OutOfDomain(format!("alpha = {alpha}")));
    }
    Ok(())
}

fn check_range(v: f64, lo: f64, hi: f64, name: &str) -> Result<(), ParamError> {
    if !(lo..=hi).contains(&v) {
        return Err(ParamError::OutOfDomain(format!("{name} = {v}")));
    }
    Ok(())
}

fn check_sign(s: i8, name: &str) -> Result<f64, ParamError> {
    match s {
        1 => Ok(1.0),
        -1 => Ok(-1.0),
        _ => Err(ParamError::OutOfDomain(format!("{name} = {s}"))),
    }
}

/// Evaluate a chart at parameters `omega`, producing t-coordinates that
/// satisfy the diagonalized system to floating accuracy.
pub fn eval_t(case: &ParamCase, a: f64, b: f64, c: f64, omega: &ChartParams) -> Result<ChartPoint, ParamError> {
    let t = match case {
        ParamCase::Ellipsoidal(e) => eval_ellipsoidal(*e, a, b, c, omega)?,
        ParamCase::Toroidal(t) => eval_toroidal(*t, a, b, c, omega)?,
    };
    Ok(ChartPoint { t, params: *omega })
}

fn eval_ellipsoidal(
    case: EllipsoidalCase,
    a: f64,
    b: f64,
    c: f64,
    omega: &ChartParams,
) -> Result<[f64; 4], ParamError> {
    use EllipsoidalCase::*;
    match case {
        Empty => Err(ParamError::EmptyCase),
        PointPair => {
            let sigma = check_sign(omega.sigma, "sigma")?;
            Ok([0.0, 0.0, 0.0, sigma])
        }
        SeparateEllipsoids | YTouching | YzCrossed | ZTouching => {
            check_angle(omega.alpha)?;
            check_range(omega.second, 0.0, std::f64::consts::PI, "beta")?;
            let sigma = check_sign(omega.sigma, "sigma")?;
            let rx = guarded_sqrt((a + b + c) / (2.0 * (a + b)))?;
            let ry = guarded_sqrt((a + b + c) / (2.0 * a))?;
            let rz = guarded_sqrt((a + b + c) / (2.0 * b))?;
            let (sb, cb) = omega.second.sin_cos();
            let (sa, ca) = omega.alpha.sin_cos();
            let x = rx * sb * ca;
            let y = ry * sb * sa;
            let z = rz * cb;
            let w = sigma * guarded_sqrt(1.0 - x * x - y * y - z * z)?;
            Ok([x, y, z, w])
        }
        YBarrel | NotchedYBarrel => {
            check_angle(omega.alpha)?;
            check_range(omega.second, -1.0, 1.0, "h")?;
            let ws = check_sign(omega.w_sign, "w_sign")?;
            let h = omega.second;
            let (sa, ca) = omega.alpha.sin_cos();
            let u = guarded_sqrt((b - a + c) / (2.0 * b))? * ca;
            let v = guarded_sqrt((b - a + c) / (2.0 * (b - a)))? * sa;
            let h2 = h * h;
            let k = guarded_sqrt(
                (a + b + c)
                    / (2.0 * (a * h2 + (a * (1.0 - h2) + b) * u * u + (b - a * h2) * v * v)),
            )?;
            let x = u * k;
            let y = h * k * guarded_sqrt(1.0 - u * u - v * v)?;
            let z = v * k;
            let w = ws * guarded_sqrt(1.0 - k * k * (h2 + (1.0 - h2) * (u * u + v * v)))?;
            Ok([x, y, z, w])
        }
        ZBarrel | NotchedZBarrel => {
            check_angle(omega.alpha)?;
            check_range(omega.second, -1.0, 1.0, "h")?;
            let ws = check_sign(omega.w_sign, "w_sign")?;
            let h = omega.second;
            let (sa, ca) = omega.alpha.sin_cos();
            let u = guarded_sqrt((a - b + c) / (2.0 * a))? * ca;
            // radicand mirrored from the y-barrel chart: 2(a-b), not 2(b-a)
            let v = guarded_sqrt((a - b + c) / (2.0 * (a - b)))? * sa;
            let h2 = h * h;
            let k = guarded_sqrt(
                (a + b + c)
                    / (2.0 * (b * h2 + (b * (1.0 - h2) + a) * u * u + (a - b * h2) * v * v)),
            )?;
            let x = u * k;
            let y = v * k;
            let z = h * k * guarded_sqrt(1.0 - u * u - v * v)?;
            let w = ws * guarded_sqrt(1.0 - k * k * (h2 + (1.0 - h2) * (u * u + v * v)))?;
            Ok([x, y, z, w])
        }
        YzCaps => {
            check_angle(omega.alpha)?;
            check_range(omega.second, 0.0, 1.0, "h")?;
            let sigma = check_sign(omega.sigma, "sigma")?;
            let ws = check_sign(omega.w_sign, "w_sign")?;
            let h = omega.second;
            let (sa, ca) = omega.alpha.sin_cos();
            let u = guarded_sqrt((a + b - c) / (2.0 * b))? * ca;
            let v = guarded_sqrt((a + b - c) / (2.0 * a))? * sa;
            let h2 = h * h;
            let k = guarded_sqrt(
                (a + b + c)
                    / (2.0
                        * (a + b
                            - (a * (1.0 - h2) + b) * u * u
                            - (b * (1.0 - h2) + a) * v * v)),
            )?;
            let x = sigma * k * guarded_sqrt(1.0 - u * u - v * v)?;
            let y = h * k * u;
            let z = h * k * v;
            let w = ws * guarded_sqrt(1.0 - k * k * (1.0 - (1.0 - h2) * (u * u + v * v)))?;
            Ok([x, y, z, w])
        }
    }
}

fn eval_toroidal(
    case: ToroidalCase,
    a: f64,
    b: f64,
    c: f64,
    omega: &ChartParams,
) -> Result<[f64; 4], ParamError> {
    use ToroidalCase::*;
    if case == Empty {
        return Err(ParamError::EmptyCase);
    }
    check_angle(omega.alpha)?;
    let (sa, ca) = omega.alpha.sin_cos();
    match case {
        XyZwTorus | XzYwTorus => {
            if !(0.0..2.0 * std::f64::consts::PI).contains(&omega.second) {
                return Err(ParamError::OutOfDomain(format!("beta = {}", omega.second)));
            }
        }
        _ => {}
    }
    let (sb, cb) = omega.second.sin_cos();
    match case {
        Empty => unreachable!(),
        XyZwTorus => {
            let r1 = guarded_sqrt((a + c) / (2.0 * a))?;
            let r2 = guarded_sqrt((a - c) / (2.0 * a))?;
            Ok([r1 * ca, r1 * sa, r2 * cb, r2 * sb])
        }
        XyCircle => {
            let r = guarded_sqrt((a + c) / (2.0 * a))?;
            Ok([r * ca, r * sa, 0.0, 0.0])
        }
        ZwCircle => {
            let r = guarded_sqrt((a - c) / (2.0 * a))?;
            Ok([0.0, 0.0, r * ca, r * sa])
        }
        XzYwTorus => {
            let r1 = guarded_sqrt((b + c) / (2.0 * b))?;
            let r2 = guarded_sqrt((b - c) / (2.0 * b))?;
            Ok([r1 * ca, r2 * cb, r1 * sa, r2 * sb])
        }
        XzCircle => {
            let r = guarded_sqrt((b + c) / (2.0 * b))?;
            Ok([r * ca, 0.0, r * sa, 0.0])
        }
        YwCircle => {
            let r = guarded_sqrt((b - c) / (2.0 * b))?;
            Ok([0.0, r * ca, 0.0, r * sa])
        }
    }
}

/// Residuals of the diagonalized system at t: (|sum gamma_i t_i^2 - c|,
/// | |t|^2 - 1 |), with gamma = (a+b, a-b, -a+b, -a-b).
pub fn system_residual(a: f64, b: f64, c: f64, t: &[f64; 4]) -> (f64, f64) {
    let gammas = [a + b, a - b, -a + b, -a - b];
    let mut form = 0.0;
    let mut norm = 0.0;
    for i in 0..4 {
        form += gammas[i] * t[i] * t[i];
        norm += t[i] * t[i];
    }
    ((form - c).abs(), (norm - 1.0).abs())
}

/// s = Q t through the orthonormal eigenframe.
pub fn eval_spinor(frame: &EigenFrame, t: &ChartPoint) -> Spinor {
    Spinor::from_array(frame.apply(t.t))
}

/// One sampled surface point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub spinor: Spinor,
    /// Index into `SampleSet::branch_names`.
    pub branch: usize,
    pub alpha: f64,
    pub second: f64,
}

/// Grid connectivity of one chart branch: `slots[iv * nu + iu]` indexes
/// into the sample list (boundary repeats share one sample).
#[derive(Debug, Clone, PartialEq)]
pub struct GridPatch {
    pub branch: usize,
    pub nu: usize,
    pub nv: usize,
    pub periodic_u: bool,
    pub periodic_v: bool,
    pub slots: Vec<usize>,
}

/// All samples of one predicate's quadric at a given resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub case: ParamCase,
    pub resolution: usize,
    pub branch_names: Vec<String>,
    pub samples: Vec<Sample>,
    pub grids: Vec<GridPatch>,
}

impl SampleSet {
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Branch descriptors per case: (suffix, sigma, w_sign, two continuous parameters?).
fn branches(case: &ParamCase) -> Vec<(&'static str, i8, i8)> {
    use EllipsoidalCase::*;
    match case {
        ParamCase::Ellipsoidal(e) => match e {
            Empty => vec![],
            PointPair => vec![(":s+", 1, 1), (":s-", -1, 1)],
            SeparateEllipsoids | YTouching | YzCrossed | ZTouching => {
                vec![(":s+", 1, 1), (":s-", -1, 1)]
            }
            YBarrel | NotchedYBarrel | ZBarrel | NotchedZBarrel => {
                vec![(":w+", 1, 1), (":w-", 1, -1)]
            }
            YzCaps => vec![
                (":s+w+", 1, 1),
                (":s+w-", 1, -1),
                (":s-w+", -1, 1),
                (":s-w-", -1, -1),
            ],
        },
        ParamCase::Toroidal(t) => match t {
            ToroidalCase::Empty => vec![],
            _ => vec![("", 1, 1)],
        },
    }
}

/// Grid domain of the second parameter: (lo, hi, closed) or None when the
/// chart has a single continuous parameter.
fn second_domain(case: &ParamCase) -> Option<(f64, f64, bool)> {
    use EllipsoidalCase::*;
    match case {
        ParamCase::Ellipsoidal(e) => match e {
            Empty | PointPair => None,
            SeparateEllipsoids | YTouching | YzCrossed | ZTouching => {
                Some((0.0, std::f64::consts::PI, true))
            }
            YBarrel | NotchedYBarrel | ZBarrel | NotchedZBarrel => Some((-1.0, 1.0, true)),
            YzCaps => Some((0.0, 1.0, true)),
        },
        ParamCase::Toroidal(t) => match t {
            ToroidalCase::Empty => None,
            ToroidalCase::XyZwTorus | ToroidalCase::XzYwTorus => {
                Some((0.0, 2.0 * std::f64::consts::PI, false))
            }
            _ => None,
        },
    }
}

/// Sample every branch of the chart on a uniform grid: `resolution` points
/// along each continuous parameter, half-open for periodic angles, closed
/// otherwise. Exact duplicate points (degenerate rows, shared seams)
/// collapse to one sample; grids keep the full slot structure for meshing.
pub fn sample_chart(
    spec: &Spectrum,
    case: &ParamCase,
    frame: &EigenFrame,
    resolution: usize,
) -> Result<SampleSet, ParamError> {
    assert!(resolution >= 2, "resolution must be at least 2");
    let n = resolution;
    let (a, b, c) = (spec.a, spec.b, crate::rational::to_f64(&spec.c));

    let mut set = SampleSet {
        case: *case,
        resolution: n,
        branch_names: Vec::new(),
        samples: Vec::new(),
        grids: Vec::new(),
    };
    if case.is_empty() {
        return Ok(set);
    }

    let mut dedup: HashMap<[u64; 4], usize> = HashMap::new();
    let mut push_sample =
        |set: &mut SampleSet, s: Spinor, branch: usize, alpha: f64, second: f64| -> usize {
            // normalize -0.0 so exact duplicates hash identically
            let key = [
                (s.s12 + 0.0).to_bits(),
                (s.s23 + 0.0).to_bits(),
                (s.s31 + 0.0).to_bits(),
                (s.s0 + 0.0).to_bits(),
            ];
            if let Some(&idx) = dedup.get(&key) {
                return idx;
            }
            let idx = set.samples.len();
            set.samples.push(Sample {
                spinor: s,
                branch,
                alpha,
                second,
            });
            dedup.insert(key, idx);
            idx
        };

    for (suffix, sigma, w_sign) in branches(case) {
        let branch = set.branch_names.len();
        set.branch_names.push(format!("{}{}", case.name(), suffix));

        if matches!(case, ParamCase::Ellipsoidal(EllipsoidalCase::PointPair)) {
            let omega = ChartParams::new(0.0, 0.0, sigma, w_sign);
            let pt = eval_t(case, a, b, c, &omega)?;
            let s = eval_spinor(frame, &pt);
            let idx = push_sample(&mut set, s, branch, 0.0, 0.0);
            set.grids.push(GridPatch {
                branch,
                nu: 1,
                nv: 1,
                periodic_u: false,
                periodic_v: false,
                slots: vec![idx],
            });
            continue;
        }

        let two_pi = 2.0 * std::f64::consts::PI;
        let alphas: Vec<f64> = (0..n).map(|i| two_pi * i as f64 / n as f64).collect();
        match second_domain(case) {
            None => {
                // single-parameter circle charts
                let mut slots = Vec::with_capacity(n);
                for &alpha in &alphas {
                    let omega = ChartParams::new(alpha, 0.0, sigma, w_sign);
                    let pt = eval_t(case, a, b, c, &omega)?;
                    let s = eval_spinor(frame, &pt);
                    slots.push(push_sample(&mut set, s, branch, alpha, 0.0));
                }
                set.grids.push(GridPatch {
                    branch,
                    nu: n,
                    nv: 1,
                    periodic_u: true,
                    periodic_v: false,
                    slots,
                });
            }
            Some((lo, hi, closed)) => {
                let seconds: Vec<f64> = if closed {
                    (0..n)
                        .map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64)
                        .collect()
                } else {
                    (0..n).map(|j| lo + (hi - lo) * j as f64 / n as f64).collect()
                };
                let mut slots = Vec::with_capacity(n * n);
                for &second in &seconds {
                    for &alpha in &alphas {
                        let omega = ChartParams::new(alpha, second, sigma, w_sign);
                        let pt = eval_t(case, a, b, c, &omega)?;
                        let s = eval_spinor(frame, &pt);
                        slots.push(push_sample(&mut set, s, branch, alpha, second));
                    }
                }
                set.grids.push(GridPatch {
                    branch,
                    nu: n,
                    nv: n,
                    periodic_u: true,
                    periodic_v: !closed,
                    slots,
                });
            }
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicate::ReducedPredicate;
    use crate::rational::{rat, ratio, RVec3};
    use crate::spectrum::{eigenvalues, orthonormal_frame};

    /// Axis-aligned reduced predicate with |P||Q| = a and |U||V| = b
    /// (exact integers) and offset c.
    pub(crate) fn exact_pred(a: i64, b: i64, c: &Rational) -> ReducedPredicate {
        let (p, q) = if a == 0 {
            (RVec3::zero(), RVec3::zero())
        } else {
            (RVec3::from_ints(1, 0, 0), RVec3::from_ints(a, 0, 0))
        };
        let (u, v) = if b == 0 {
            (RVec3::zero(), RVec3::zero())
        } else {
            (RVec3::from_ints(0, 1, 0), RVec3::from_ints(0, 0, b))
        };
        ReducedPredicate::new(p, q, u, v, c.clone()).unwrap()
    }

    fn classify_ints(a: i64, b: i64, c: &Rational) -> ParamCase {
        classify_case(&rat(a * a), &rat(b * b), c).unwrap()
    }

    #[test]
    fn classify_examples() {
        use EllipsoidalCase as E;
        assert_eq!(
            classify_ints(2, 1, &rat(-5)),
            ParamCase::Ellipsoidal(E::Empty)
        );
        assert_eq!(
            classify_ints(1, 2, &rat(0)),
            ParamCase::Ellipsoidal(E::YBarrel)
        );
        // a2 = b2 = 2, c = 0: crossed ellipsoids
        assert_eq!(
            classify_case(&rat(2), &rat(2), &rat(0)).unwrap(),
            ParamCase::Ellipsoidal(E::YzCrossed)
        );
        assert_eq!(
            classify_ints(0, 2, &rat(0)),
            ParamCase::Toroidal(ToroidalCase::XzYwTorus)
        );
        assert_eq!(
            classify_case(&rat(0), &rat(0), &rat(1)).unwrap_err(),
            ParamError::ImproperPredicate
        );
    }

    #[test]
    fn table_sequences_all_regimes() {
        // c sweep over boundaries and midpoints reproduces the published
        // type rows for a<b, a=b, a>b and both toroidal families.
        let seq = |a: i64, b: i64, cs: &[Rational]| -> Vec<u8> {
            cs.iter()
                .map(|c| classify_ints(a, b, c).type_number())
                .collect()
        };
        // a = 1 < b = 2: boundaries -3, -1, 1, 3
        let cs: Vec<Rational> = [-4, -3, -2, -1, 0, 1, 2, 3, 4].iter().map(|&x| rat(x)).collect();
        assert_eq!(seq(1, 2, &cs), vec![1, 2, 3, 4, 7, 9, 11, 11, 1]);
        // a = b = 2: boundaries -4, 0, 4
        let cs: Vec<Rational> = [-5, -4, -2, 0, 2, 4, 5].iter().map(|&x| rat(x)).collect();
        assert_eq!(seq(2, 2, &cs), vec![1, 2, 3, 5, 11, 11, 1]);
        // a = 2 > b = 1: boundaries -3, -1, 1, 3
        let cs: Vec<Rational> = [-4, -3, -2, -1, 0, 1, 2, 3, 4].iter().map(|&x| rat(x)).collect();
        assert_eq!(seq(2, 1, &cs), vec![1, 2, 3, 6, 8, 10, 11, 11, 1]);
        // toroidal, non-zero product 2: boundaries -2, 2
        let cs: Vec<Rational> = [-3, -2, 0, 2, 3].iter().map(|&x| rat(x)).collect();
        assert_eq!(seq(2, 0, &cs), vec![1, 4, 2, 3, 1]);
        assert_eq!(seq(0, 2, &cs), vec![1, 7, 5, 6, 1]);
    }

    #[test]
    fn classify_irrational_boundaries() {
        // non-square a2, b2: exact sign procedure must still work
        // a2 = 2, b2 = 3: a-b < 0; c = 0 lies in (a-b, b-a) => y-barrel
        assert_eq!(
            classify_case(&rat(2), &rat(3), &rat(0)).unwrap(),
            ParamCase::Ellipsoidal(EllipsoidalCase::YBarrel)
        );
        // c^2 = a2 + b2 + 2ab has no rational solution, so touching cases
        // cannot trigger; c = -3 is below -(a+b) ~ -3.146
        assert_eq!(
            classify_case(&rat(2), &rat(3), &rat(-3)).unwrap(),
            ParamCase::Ellipsoidal(EllipsoidalCase::SeparateEllipsoids)
        );
        assert_eq!(
            classify_case(&rat(2), &rat(3), &ratio(-63, 20)).unwrap(),
            ParamCase::Ellipsoidal(EllipsoidalCase::Empty)
        );
    }

    #[test]
    fn metadata_examples() {
        let m = ParamCase::Ellipsoidal(EllipsoidalCase::SeparateEllipsoids).metadata();
        assert_eq!(
            (m.component_count, m.dimension, m.domain_hole, m.is_manifold),
            (2, 2, DomainHole::Empty, true)
        );
        let m = ParamCase::Ellipsoidal(EllipsoidalCase::YBarrel).metadata();
        assert_eq!(
            (m.component_count, m.dimension, m.domain_hole, m.is_manifold),
            (1, 2, DomainHole::DeformedEllipse, true)
        );
        assert!(!ParamCase::Ellipsoidal(EllipsoidalCase::YzCrossed)
            .metadata()
            .is_manifold);
        // empty <=> dimension -1
        for case in all_cases() {
            let m = case.metadata();
            assert_eq!(case.is_empty(), m.dimension == -1);
            if let ParamCase::Toroidal(t) = case {
                if !case.is_empty() {
                    assert_eq!(m.component_count, 1, "{t:?}");
                }
            }
        }
    }

    pub(crate) fn all_cases() -> Vec<ParamCase> {
        use EllipsoidalCase as E;
        use ToroidalCase as T;
        let mut v: Vec<ParamCase> = [
            E::Empty,
            E::PointPair,
            E::SeparateEllipsoids,
            E::YTouching,
            E::YzCrossed,
            E::ZTouching,
            E::YBarrel,
            E::ZBarrel,
            E::NotchedYBarrel,
            E::NotchedZBarrel,
            E::YzCaps,
        ]
        .into_iter()
        .map(ParamCase::Ellipsoidal)
        .collect();
        v.extend(
            [
                T::Empty,
                T::XyZwTorus,
                T::XyCircle,
                T::ZwCircle,
                T::XzYwTorus,
                T::XzCircle,
                T::YwCircle,
            ]
            .into_iter()
            .map(ParamCase::Toroidal),
        );
        v
    }

    #[test]
    fn eval_t_point_pair() {
        let case = ParamCase::Ellipsoidal(EllipsoidalCase::PointPair);
        let pt = eval_t(&case, 1.0, 1.0, -2.0, &ChartParams::new(0.0, 0.0, 1, 1)).unwrap();
        assert_eq!(pt.t, [0.0, 0.0, 0.0, 1.0]);
        let pt = eval_t(&case, 1.0, 1.0, -2.0, &ChartParams::new(0.0, 0.0, -1, 1)).unwrap();
        assert_eq!(pt.t, [0.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn eval_t_separate_ellipsoids_example() {
        // a = 2, b = 1, c = -2, beta = 0, sigma = +1: t = (0, 0, sqrt(1/2), sqrt(1/2))
        let case = ParamCase::Ellipsoidal(EllipsoidalCase::SeparateEllipsoids);
        let pt = eval_t(&case, 2.0, 1.0, -2.0, &ChartParams::new(0.0, 0.0, 1, 1)).unwrap();
        let h = 0.5f64.sqrt();
        assert!((pt.t[0]).abs() < 1e-15);
        assert!((pt.t[1]).abs() < 1e-15);
        assert!((pt.t[2] - h).abs() < 1e-15);
        assert!((pt.t[3] - h).abs() < 1e-15);
        let (f, n) = system_residual(2.0, 1.0, -2.0, &pt.t);
        assert!(f < 1e-12 && n < 1e-12);
    }

    #[test]
    fn eval_t_torus_example() {
        // a = 1, c = 0, alpha = beta = 0: t = (sqrt(1/2), 0, sqrt(1/2), 0)
        let case = ParamCase::Toroidal(ToroidalCase::XyZwTorus);
        let pt = eval_t(&case, 1.0, 0.0, 0.0, &ChartParams::new(0.0, 0.0, 1, 1)).unwrap();
        let h = 0.5f64.sqrt();
        assert!((pt.t[0] - h).abs() < 1e-15);
        assert!(pt.t[1].abs() < 1e-15);
        assert!((pt.t[2] - h).abs() < 1e-15);
        assert!(pt.t[3].abs() < 1e-15);
    }

    #[test]
    fn eval_t_circle_radius_one_at_boundary() {
        // c = a: the xy-circle radius sqrt((a+c)/(2a)) = 1
        let case = ParamCase::Toroidal(ToroidalCase::XyCircle);
        for k in 0..8 {
            let alpha = 2.0 * std::f64::consts::PI * k as f64 / 8.0;
            let pt = eval_t(&case, 3.0, 0.0, 3.0, &ChartParams::new(alpha, 0.0, 1, 1)).unwrap();
            assert!((pt.t[0] - alpha.cos()).abs() < 1e-15);
            assert!((pt.t[1] - alpha.sin()).abs() < 1e-15);
            assert_eq!(pt.t[2], 0.0);
            assert_eq!(pt.t[3], 0.0);
        }
    }

    #[test]
    fn eval_t_errors() {
        let case = ParamCase::Ellipsoidal(EllipsoidalCase::Empty);
        assert_eq!(
            eval_t(&case, 1.0, 1.0, -9.0, &ChartParams::new(0.0, 0.0, 1, 1)).unwrap_err(),
            ParamError::EmptyCase
        );
        let case = ParamCase::Ellipsoidal(EllipsoidalCase::SeparateEllipsoids);
        assert!(matches!(
            eval_t(&case, 1.0, 1.0, -1.0, &ChartParams::new(-0.1, 0.0, 1, 1)).unwrap_err(),
            ParamError::OutOfDomain(_)
        ));
        assert!(matches!(
            eval_t(&case, 1.0, 1.0, -1.0, &ChartParams::new(0.0, 4.0, 1, 1)).unwrap_err(),
            ParamError::OutOfDomain(_)
        ));
        // wrong case for the data: c far above a+b makes radicands negative
        let case = ParamCase::Toroidal(ToroidalCase::ZwCircle);
        assert!(matches!(
            eval_t(&case, 1.0, 0.0, 9.0, &ChartParams::new(0.0, 0.0, 1, 1)).unwrap_err(),
            ParamError::NegativeRadicand(_)
        ));
    }

    #[test]
    fn barrel_w_branches_agree_on_hole() {
        // at h = +-1 the w radicand vanishes, so both branches meet
        let case = ParamCase::Ellipsoidal(EllipsoidalCase::YBarrel);
        let (a, b, c) = (1.0, 2.0, 0.25);
        for k in 0..8 {
            let alpha = 2.0 * std::f64::consts::PI * k as f64 / 8.0;
            for h in [-1.0, 1.0] {
                let plus = eval_t(&case, a, b, c, &ChartParams::new(alpha, h, 1, 1)).unwrap();
                let minus = eval_t(&case, a, b, c, &ChartParams::new(alpha, h, 1, -1)).unwrap();
                for i in 0..4 {
                    assert!((plus.t[i] - minus.t[i]).abs() < 1e-9);
                }
                assert!(plus.t[3].abs() < 1e-9);
            }
        }
    }

    fn sampled_counts(a: i64, b: i64, c: Rational, n: usize) -> (usize, ParamCase) {
        let r = exact_pred(a, b, &c);
        let spec = eigenvalues(&r);
        let case = classify_spectrum(&spec).unwrap();
        let frame = orthonormal_frame(&r).unwrap();
        let set = sample_chart(&spec, &case, &frame, n).unwrap();
        // every sample must lie on the quadric and the unit sphere
        let m = r.spin_matrix();
        let tol = 1e-9 * (1.0 + m.frobenius_norm());
        for s in &set.samples {
            assert!(m.evaluate(s.spinor).abs() <= tol);
            assert!((s.spinor.norm_sqr() - 1.0).abs() <= 1e-12);
        }
        (set.samples.len(), case)
    }

    #[test]
    fn sample_point_pair_exactly_two() {
        let (count, case) = sampled_counts(1, 1, rat(-2), 9);
        assert_eq!(case, ParamCase::Ellipsoidal(EllipsoidalCase::PointPair));
        assert_eq!(count, 2);
    }

    #[test]
    fn sample_torus_grid() {
        let (count, case) = sampled_counts(2, 0, rat(0), 16);
        assert_eq!(case, ParamCase::Toroidal(ToroidalCase::XyZwTorus));
        assert_eq!(count, 256);
    }

    #[test]
    fn sample_separate_ellipsoids_residuals() {
        let (count, case) = sampled_counts(2, 1, rat(-2), 8);
        assert_eq!(
            case,
            ParamCase::Ellipsoidal(EllipsoidalCase::SeparateEllipsoids)
        );
        // two branches; the beta = 0 row collapses to one sample per
        // branch (sin 0 is exactly zero, sin pi is not)
        assert_eq!(count, 2 * (1 + 7 * 8));
    }

    #[test]
    fn sample_empty_case() {
        let r = exact_pred(1, 1, &rat(-9));
        let spec = eigenvalues(&r);
        let case = classify_spectrum(&spec).unwrap();
        assert!(case.is_empty());
        let frame = orthonormal_frame(&r).unwrap();
        let set = sample_chart(&spec, &case, &frame, 8).unwrap();
        assert!(set.is_empty());
        assert_eq!(set.case.metadata().dimension, -1);
    }

    #[test]
    fn torus_separated_system_structure() {
        // torus chart satisfies x^2 + y^2 = (a+c)/(2a) and z^2 + w^2 = (a-c)/(2a)
        let case = ParamCase::Toroidal(ToroidalCase::XyZwTorus);
        let (a, c) = (2.0, 0.5);
        for i in 0..5 {
            for j in 0..5 {
                let alpha = 2.0 * std::f64::consts::PI * i as f64 / 5.0;
                let beta = 2.0 * std::f64::consts::PI * j as f64 / 5.0;
                let pt = eval_t(&case, a, 0.0, c, &ChartParams::new(alpha, beta, 1, 1)).unwrap();
                let xy = pt.t[0] * pt.t[0] + pt.t[1] * pt.t[1];
                let zw = pt.t[2] * pt.t[2] + pt.t[3] * pt.t[3];
                assert!((xy - (a + c) / (2.0 * a)).abs() < 1e-12);
                assert!((zw - (a - c) / (2.0 * a)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn all_proper_cases_on_surface() {
        // one representative (a, b, c) per parameterization type; every
        // sample must satisfy the on-surface residual
        let reps: Vec<(i64, i64, Rational, u8)> = vec![
            (1, 1, rat(-2), 2),
            (1, 1, rat(-1), 3),
            (1, 2, rat(-1), 4),
            (1, 1, rat(0), 5),
            (2, 1, rat(-1), 6),
            (1, 2, rat(0), 7),
            (2, 1, rat(0), 8),
            (1, 2, rat(1), 9),
            (2, 1, rat(1), 10),
            (1, 1, ratio(1, 2), 11),
            (1, 1, rat(2), 11), // boundary c = a + b stays in the caps chart
            (2, 0, rat(0), 2),
            (2, 0, rat(2), 3),
            (2, 0, rat(-2), 4),
            (0, 2, rat(0), 5),
            (0, 2, rat(2), 6),
            (0, 2, rat(-2), 7),
        ];
        for (a, b, c, want_type) in reps {
            let (count, case) = sampled_counts(a, b, c.clone(), 12);
            assert_eq!(
                case.type_number(),
                want_type,
                "a={a} b={b} c={c} -> {case:?}"
            );
            assert!(count > 0);
        }
    }
}
