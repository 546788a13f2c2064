use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::Num;

/// Field-like scalar the numeric modules are written against.
///
/// Exact types (`BigRational`, `Rational64`) make every identity in the
/// crate hold bit-exactly; `f32`/`f64` also satisfy the bound and are useful
/// for quick experiments, with the usual rounding caveats.
pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialEq + Debug + Display {
    fn from_i64(v: i64) -> Self {
        let mut acc = Self::zero();
        let unit = if v < 0 { -Self::one() } else { Self::one() };
        for _ in 0..v.unsigned_abs() {
            acc = acc + unit.clone();
        }
        acc
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for num_rational::Rational64 {
    fn from_i64(v: i64) -> Self {
        num_rational::Rational64::from_integer(v)
    }
}

impl Scalar for num_rational::BigRational {
    fn from_i64(v: i64) -> Self {
        num_rational::BigRational::from_integer(v.into())
    }
}
