//! Algebraic traits shared by the coefficient tower.
//!
//! The tower is `Z` -> `Z[t]` -> `Z[t][x]`, with fraction fields
//! `Q(t) = Frac(Z[t])` and `K = Q(t)(x) = Frac(Z[t][x])`. Every ring in the
//! tower is a GCD domain whose only units are `+1` and `-1`, so a fraction in
//! lowest terms with a sign-normalized denominator is a unique representative.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity.
pub trait Ring: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_int(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_bigint(n: &BigInt) -> Self;
}

/// A GCD domain whose units are exactly `{1, -1}`.
pub trait GcdDomain: Ring {
    /// Greatest common divisor, sign-normalized (see [`GcdDomain::is_sign_normal`]).
    fn gcd(&self, rhs: &Self) -> Self;

    /// Division that is known to be exact. Panics in debug builds otherwise.
    fn exact_div(&self, rhs: &Self) -> Self;

    /// The exact quotient, or `None` when `rhs` does not divide `self`.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    /// Whether the element is the positive associate of its class.
    fn is_sign_normal(&self) -> bool;

    fn sign_normalize(&self) -> Self {
        if self.is_sign_normal() {
            self.clone()
        } else {
            self.neg_ref()
        }
    }
}

/// A field. Division by zero yields `None`.
pub trait Field: Ring {
    fn inv_ref(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv_ref().map(|inv| self.mul_ref(&inv))
    }

    /// Size heuristic for pivot selection; smaller is cheaper.
    fn weight(&self) -> usize;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
        BigInt::from(n)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl GcdDomain for BigInt {
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        Zero::is_zero(&r).then_some(q)
    }
    fn is_sign_normal(&self) -> bool {
        !self.is_negative()
    }
}

/// Rings of polynomials with integer coefficients in any number of variables,
/// with the operations needed for evaluation at and reconstruction from integers.
pub trait IntCoeffs: GcdDomain {
    /// Largest absolute value of an integer coefficient.
    fn max_norm(&self) -> BigInt;
    /// Integer coefficients reduced into `(-m/2, m/2]`.
    fn symmod(&self, m: &BigInt) -> Self;
    /// Division of every integer coefficient by `m`, assumed exact.
    fn div_int(&self, m: &BigInt) -> Self;
    fn scale_int(&self, m: &BigInt) -> Self;
}

impl IntCoeffs for BigInt {
    fn max_norm(&self) -> BigInt {
        self.abs()
    }
    fn symmod(&self, m: &BigInt) -> Self {
        let r = self.mod_floor(m);
        if &r + &r > *m {
            r - m
        } else {
            r
        }
    }
    fn div_int(&self, m: &BigInt) -> Self {
        self / m
    }
    fn scale_int(&self, m: &BigInt) -> Self {
        self * m
    }
}
