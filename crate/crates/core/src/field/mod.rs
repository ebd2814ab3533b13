//! Exact arithmetic for `k = Q(t)` and `K = Q(t)(x)`.

mod elem;
mod frac;
mod param;
mod poly;
mod ring;

use std::ops::{Add, Div, Mul, Neg, Sub};

pub use elem::{clear_kpoly, FieldElem};
pub use frac::{Frac, Weighted};
pub use param::ParamScalar;
pub use poly::Poly;
pub use ring::{Field, GcdDomain, IntCoeffs, Ring};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// `Z[t]`
pub type ZPoly = Poly<num_bigint::BigInt>;
/// `Z[t][x]`
pub type ZtPoly = Poly<ZPoly>;
/// `Q[t]`
pub type QPoly = Poly<Rational>;
/// `k[x]`
pub type KPoly = Poly<ParamScalar>;

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn from_bigint(n: &num_bigint::BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
}

impl Field for Rational {
    fn inv_ref(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(num_traits::Inv::inv(self))
        }
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

macro_rules! field_ops {
    ($t:ty) => {
        impl Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                self.add_ref(&rhs)
            }
        }
        impl Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                self.sub_ref(&rhs)
            }
        }
        impl Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                self.mul_ref(rhs)
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                self.mul_ref(&rhs)
            }
        }
        /// Panics on division by zero; use `div_ref` for a checked variant.
        impl Div<&$t> for &$t {
            type Output = $t;
            fn div(self, rhs: &$t) -> $t {
                self.div_ref(rhs).expect("division by zero")
            }
        }
        impl Div for $t {
            type Output = $t;
            fn div(self, rhs: $t) -> $t {
                self.div_ref(&rhs).expect("division by zero")
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
    };
}

field_ops!(ParamScalar);
field_ops!(FieldElem);
