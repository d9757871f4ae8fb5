//! Exact rational scalars and 3-vectors.
//!
//! All scene inputs and every decision that affects classification are kept
//! in arbitrary-precision rational arithmetic. Floating point enters only
//! where square roots or trigonometric charts make it unavoidable.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};

/// Exact rational scalar. `BigRational` keeps the canonical reduced form
/// (gcd(num, den) = 1, den > 0) on every construction.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest f64. Desk-scale values are well inside f64 range.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Sign of a rational: -1, 0 or +1.
pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact 3-vector over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RVec3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl RVec3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        RVec3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        RVec3::new(rat(x), rat(y), rat(z))
    }

    pub fn zero() -> Self {
        RVec3::from_ints(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Component by index 0..=2 (x, y, z).
    pub fn get(&self, i: usize) -> &Rational {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("RVec3 index out of range: {i}"),
        }
    }

    pub fn add(&self, o: &RVec3) -> RVec3 {
        RVec3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn sub(&self, o: &RVec3) -> RVec3 {
        RVec3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn neg(&self) -> RVec3 {
        RVec3::new(-&self.x, -&self.y, -&self.z)
    }

    pub fn scale(&self, s: &Rational) -> RVec3 {
        RVec3::new(&self.x * s, &self.y * s, &self.z * s)
    }

    pub fn dot(&self, o: &RVec3) -> Rational {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn cross(&self, o: &RVec3) -> RVec3 {
        RVec3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    /// Exact squared Euclidean norm.
    pub fn norm_sqr(&self) -> Rational {
        self.dot(self)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [to_f64(&self.x), to_f64(&self.y), to_f64(&self.z)]
    }

    /// Unit-length floating image, or None for the zero vector.
    pub fn unit_f64(&self) -> Option<[f64; 3]> {
        if self.is_zero() {
            return None;
        }
        let [x, y, z] = self.to_f64();
        let n = (x * x + y * y + z * z).sqrt();
        Some([x / n, y / n, z / n])
    }
}
