//! Double-double scalar for extended-precision reference values.
//!
//! Wraps `twofloat::TwoFloat`, whose `TwoFloat / TwoFloat` loses the low
//! word on targets without a fused multiply-add; division is redone here
//! from the exact `TwoFloat / f64` kernel. Only arithmetic and `sqrt` are
//! accurate to double-double precision; transcendental functions are not
//! used by the references.

use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_traits::{Float, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Dd(pub TwoFloat);

impl Dd {
    pub fn hi(self) -> f64 {
        self.0.hi()
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd(<TwoFloat as From<f64>>::from(x))
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::LowerExp for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerExp::fmt(&self.0, f)
    }
}

fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let (bh, bl) = (b.hi(), b.lo());
    let q = a / bh;
    if bl == 0.0 || !q.is_finite() {
        return q;
    }
    // a / (bh (1 + δ)) = q (1 − δ + O(δ²)) with |δ| ≤ 2^-53
    q - q.hi() * (bl / bh)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $f:expr) => {
        impl $tr for Dd {
            type Output = Dd;
            #[inline]
            fn $m(self, rhs: Dd) -> Dd {
                Dd($f(self.0, rhs.0))
            }
        }
        impl $atr for Dd {
            #[inline]
            fn $am(&mut self, rhs: Dd) {
                *self = $tr::$m(*self, rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, |a: TwoFloat, b| a + b);
binop!(Sub, sub, SubAssign, sub_assign, |a: TwoFloat, b| a - b);
binop!(Mul, mul, MulAssign, mul_assign, |a: TwoFloat, b| a * b);
binop!(Div, div, DivAssign, div_assign, div);
binop!(Rem, rem, RemAssign, rem_assign, |a: TwoFloat, b| a % b);

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0)
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd(<TwoFloat as From<f64>>::from(0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0 && self.0.lo() == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd(<TwoFloat as From<f64>>::from(1.0))
    }
}

impl Num for Dd {
    type FromStrRadixErr = <TwoFloat as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        TwoFloat::from_str_radix(s, radix).map(Dd)
    }
}

impl ToPrimitive for Dd {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0.hi() + self.0.lo())
    }
}

impl FromPrimitive for Dd {
    fn from_i64(n: i64) -> Option<Self> {
        TwoFloat::from_i64(n).map(Dd)
    }
    fn from_u64(n: u64) -> Option<Self> {
        TwoFloat::from_u64(n).map(Dd)
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Dd(<TwoFloat as From<f64>>::from(x)))
    }
}

impl NumCast for Dd {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        n.to_f64().map(|x| Dd(<TwoFloat as From<f64>>::from(x)))
    }
}

macro_rules! unary {
    ($($m:ident),*) => {
        $(
            #[inline]
            fn $m(self) -> Self {
                Dd(<TwoFloat as Float>::$m(self.0))
            }
        )*
    };
}

macro_rules! constant {
    ($($m:ident),*) => {
        $(
            fn $m() -> Self {
                Dd(<TwoFloat as Float>::$m())
            }
        )*
    };
}

macro_rules! predicate {
    ($($m:ident),*) => {
        $(
            fn $m(self) -> bool {
                <TwoFloat as Float>::$m(self.0)
            }
        )*
    };
}

impl Float for Dd {
    constant!(nan, infinity, neg_infinity, neg_zero, min_value, min_positive_value, max_value);
    predicate!(is_nan, is_infinite, is_finite, is_normal, is_sign_positive, is_sign_negative);
    unary!(
        floor, ceil, round, trunc, fract, abs, signum, sqrt, exp, exp2, ln, log2, log10, cbrt, sin, cos, tan,
        asin, acos, atan, exp_m1, ln_1p, sinh, cosh, tanh, asinh, acosh, atanh
    );

    fn classify(self) -> FpCategory {
        self.0.classify()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc *= self;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
    fn powf(self, n: Self) -> Self {
        Dd(self.0.powf(n.0))
    }
    fn log(self, base: Self) -> Self {
        Dd(<TwoFloat as Float>::log(self.0, base.0))
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Self::zero()
        }
    }
    fn hypot(self, other: Self) -> Self {
        (self * self + other * other).sqrt()
    }
    fn atan2(self, other: Self) -> Self {
        Dd(self.0.atan2(other.0))
    }
    fn sin_cos(self) -> (Self, Self) {
        (self.sin(), self.cos())
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.0.hi().integer_decode()
    }
    fn epsilon() -> Self {
        Dd(<TwoFloat as From<f64>>::from(f64::EPSILON * f64::EPSILON))
    }
}

impl idrbf::Scalar for Dd {
    fn machine_epsilon() -> f64 {
        f64::EPSILON * f64::EPSILON
    }
}
