//! Fraction field of a GCD domain, kept in lowest terms.

use std::hash::Hash;

use num_bigint::BigInt;

use super::ring::{Field, GcdDomain, Ring};

/// `num / den` with `gcd(num, den) = 1` and a sign-normal `den`.
///
/// Zero is always `0 / 1`, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Frac<R> {
    num: R,
    den: R,
}

impl<R: GcdDomain> Frac<R> {
    /// Builds a reduced fraction. Returns `None` when `den` is zero.
    pub fn new(num: R, den: R) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::from_num(R::zero()));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        if !d.is_sign_normal() {
            n = n.neg_ref();
            d = d.neg_ref();
        }
        Some(Frac { num: n, den: d })
    }

    pub fn from_num(num: R) -> Self {
        Frac { num, den: R::one() }
    }

    pub fn num(&self) -> &R {
        &self.num
    }

    pub fn den(&self) -> &R {
        &self.den
    }

    pub fn into_parts(self) -> (R, R) {
        (self.num, self.den)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Caller guarantees the parts are already reduced and sign-normal.
    pub(crate) fn from_reduced(num: R, den: R) -> Self {
        debug_assert!(den.is_sign_normal() && !den.is_zero());
        Frac { num, den }
    }
}

impl<R: GcdDomain + Hash> Ring for Frac<R> {
    fn zero() -> Self {
        Self::from_num(R::zero())
    }

    fn one() -> Self {
        Self::from_num(R::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::new(self.num.add_ref(&rhs.num), self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = self.num.mul_ref(&rhs.den).add_ref(&rhs.num.mul_ref(&self.den));
            // Coprime reduced denominators leave nothing to cancel.
            if num.is_zero() {
                return Self::zero();
            }
            return Self::from_reduced(num, self.den.mul_ref(&rhs.den));
        }
        let d1 = self.den.exact_div(&g);
        let d2 = rhs.den.exact_div(&g);
        let num = self.num.mul_ref(&d2).add_ref(&rhs.num.mul_ref(&d1));
        Self::new(num, d1.mul_ref(&rhs.den)).unwrap()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.exact_div(&g1) };
        let d2 = if g1.is_one() { rhs.den.clone() } else { rhs.den.exact_div(&g1) };
        let n2 = if g2.is_one() { rhs.num.clone() } else { rhs.num.exact_div(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.exact_div(&g2) };
        let mut num = n1.mul_ref(&n2);
        let mut den = d1.mul_ref(&d2);
        if !den.is_sign_normal() {
            num = num.neg_ref();
            den = den.neg_ref();
        }
        Frac { num, den }
    }

    fn neg_ref(&self) -> Self {
        Frac {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    fn from_int(n: i64) -> Self {
        Self::from_num(R::from_int(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_num(R::from_bigint(n))
    }
}

impl<R: GcdDomain + Hash + Weighted> Field for Frac<R> {
    fn inv_ref(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if !den.is_sign_normal() {
            num = num.neg_ref();
            den = den.neg_ref();
        }
        Some(Frac { num, den })
    }

    fn weight(&self) -> usize {
        self.num.weight() + self.den.weight()
    }
}

/// Size measure used by pivoting heuristics.
pub trait Weighted {
    fn weight(&self) -> usize;
}

impl Weighted for BigInt {
    fn weight(&self) -> usize {
        self.bits() as usize
    }
}

impl<R: Ring + Weighted> Weighted for super::poly::Poly<R> {
    fn weight(&self) -> usize {
        // Degree dominates; coefficient size breaks ties.
        let deg = self.coeffs().len();
        let size: usize = self.coeffs().iter().map(|c| c.weight()).sum();
        deg * 64 + size
    }
}
