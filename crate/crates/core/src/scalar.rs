//! Real scalar abstraction shared by the Gaussian engine.
//!
//! Everything in the symplectic pipeline is generic over [`Real`] so the same
//! code runs in `f64` and in [`Extended`] precision. Hyperbolic (unstable)
//! couplings amplify quadratures exponentially; once entries of a transform
//! reach ~1e8 no `f64` matrix can be symplectic to 1e-10 any more, and the
//! engine re-runs in extended precision instead.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_base::{Abs, SquareRoot};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

/// Working precision of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Double,
    Extended,
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Double => f.write_str("double"),
            Precision::Extended => f.write_str("extended"),
        }
    }
}

pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    const PRECISION: Precision;

    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;

    fn cosh(&self) -> Self {
        let e = self.exp();
        let inv = Self::one() / &e;
        (e + inv) / Self::from_f64(2.0)
    }

    fn sinh(&self) -> Self {
        let e = self.exp();
        let inv = Self::one() / &e;
        (e - inv) / Self::from_f64(2.0)
    }

    /// Unit roundoff.
    fn epsilon() -> f64;

    fn is_finite(&self) -> bool;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Real for f64 {
    const PRECISION: Precision = Precision::Double;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }

    #[inline]
    fn to_f64(&self) -> f64 {
        *self
    }

    #[inline]
    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    #[inline]
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    #[inline]
    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }

    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }

    fn epsilon() -> f64 {
        f64::EPSILON / 2.0
    }

    #[inline]
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

/// Significand bits carried by [`Extended`].
pub const EXTENDED_BITS: usize = 256;

type Big = FBig<HalfEven, 2>;

/// Binary floating point with [`EXTENDED_BITS`] significand bits.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Extended(Big);

impl Extended {
    fn wrap(x: Big) -> Self {
        Extended(x)
    }
}

impl fmt::Debug for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl Real for Extended {
    const PRECISION: Precision = Precision::Extended;

    fn from_f64(x: f64) -> Self {
        // f64 -> binary float is exact; widen the context so later
        // arithmetic rounds at the extended precision.
        let v = Big::try_from(x).expect("finite f64");
        Extended(v.with_precision(EXTENDED_BITS).value())
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    fn abs(&self) -> Self {
        Extended(self.0.clone().abs())
    }

    fn sqrt(&self) -> Self {
        Extended(self.0.sqrt())
    }

    fn exp(&self) -> Self {
        Extended(self.0.exp())
    }

    fn epsilon() -> f64 {
        2f64.powi(-(EXTENDED_BITS as i32))
    }

    fn is_finite(&self) -> bool {
        true
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Extended {
            type Output = Extended;
            #[inline]
            fn $method(self, rhs: Extended) -> Extended {
                Extended::wrap($tr::$method(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a Extended> for Extended {
            type Output = Extended;
            #[inline]
            fn $method(self, rhs: &'a Extended) -> Extended {
                Extended::wrap($tr::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Extended {
    type Output = Extended;
    fn neg(self) -> Extended {
        Extended(-self.0)
    }
}
