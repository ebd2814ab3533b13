//! The constant field `k = Q(t)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::frac::Frac;
use super::poly::Poly;
use super::ring::{Field, Ring};
use super::{QPoly, Rational, ZPoly};

/// An element of `k = Q(t)`: a reduced quotient of integer polynomials in `t`.
///
/// Internally the parts live in `Z[t]` with a positive leading coefficient on
/// the denominator; [`ParamScalar::numerator`] and [`ParamScalar::denominator`]
/// give the equivalent `Q[t]` presentation with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamScalar(pub(crate) Frac<ZPoly>);

impl ParamScalar {
    pub fn from_int(n: i64) -> Self {
        ParamScalar(Frac::from_num(ZPoly::constant(BigInt::from(n))))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        ParamScalar(Frac::from_num(ZPoly::constant(n.clone())))
    }

    pub fn from_rational(r: &Rational) -> Self {
        ParamScalar(
            Frac::new(ZPoly::constant(r.numer().clone()), ZPoly::constant(r.denom().clone()))
                .expect("rational with zero denominator"),
        )
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        ParamScalar(Frac::from_num(ZPoly::var()))
    }

    pub fn from_zpoly(p: ZPoly) -> Self {
        ParamScalar(Frac::from_num(p))
    }

    /// `num / den`, or `None` if `den` is zero.
    pub fn from_zpolys(num: ZPoly, den: ZPoly) -> Option<Self> {
        Frac::new(num, den).map(ParamScalar)
    }

    pub fn num_z(&self) -> &ZPoly {
        self.0.num()
    }

    pub fn den_z(&self) -> &ZPoly {
        self.0.den()
    }

    /// Numerator over `Q`, scaled so the matching denominator is monic.
    pub fn numerator(&self) -> QPoly {
        let lc = self.den_z().lc().cloned().unwrap_or_else(<BigInt as Ring>::one);
        to_qpoly(self.num_z(), &lc)
    }

    /// Monic denominator over `Q`.
    pub fn denominator(&self) -> QPoly {
        let lc = self.den_z().lc().cloned().unwrap_or_else(<BigInt as Ring>::one);
        to_qpoly(self.den_z(), &lc)
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.is_integral()
    }

    /// The value as a rational number when it does not depend on `t`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num_z().degree().unwrap_or(0) == 0 && self.den_z().degree() == Some(0) {
            let n = self.num_z().coeff(0);
            let d = self.den_z().coeff(0);
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }

    pub fn is_constant_in_t(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Derivative with respect to `t`.
    pub fn d_t(&self) -> Self {
        let (n, d) = (self.num_z(), self.den_z());
        if d.is_constant() {
            return ParamScalar(Frac::new(n.derivative(), d.clone()).unwrap());
        }
        let num = &(&n.derivative() * d) - &(n * &d.derivative());
        ParamScalar(Frac::new(num, d * d).unwrap())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Evaluate at a rational value of `t`; `None` at a pole.
    pub fn eval_t(&self, t0: &Rational) -> Option<Rational> {
        let ev = |p: &ZPoly| {
            p.coeffs()
                .iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * t0 + BigRational::from_integer(c.clone()))
        };
        let d = ev(self.den_z());
        if d.is_zero() {
            return None;
        }
        Some(ev(self.num_z()) / d)
    }

    /// Total size in `t`-degree, used to rank candidates.
    pub fn t_degree(&self) -> usize {
        self.num_z().degree().unwrap_or(0) + self.den_z().degree().unwrap_or(0)
    }
}

fn to_qpoly(p: &ZPoly, scale: &BigInt) -> QPoly {
    Poly::new(
        p.coeffs()
            .iter()
            .map(|c| BigRational::new(c.clone(), scale.clone()))
            .collect(),
    )
}

impl Ring for ParamScalar {
    fn zero() -> Self {
        ParamScalar(Frac::zero())
    }
    fn one() -> Self {
        ParamScalar(Frac::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        ParamScalar(self.0.add_ref(&rhs.0))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        ParamScalar(self.0.sub_ref(&rhs.0))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        ParamScalar(self.0.mul_ref(&rhs.0))
    }
    fn neg_ref(&self) -> Self {
        ParamScalar(self.0.neg_ref())
    }
    fn from_int(n: i64) -> Self {
        ParamScalar::from_int(n)
    }
    fn from_bigint(n: &BigInt) -> Self {
        ParamScalar::from_bigint(n)
    }
}

impl Field for ParamScalar {
    fn inv_ref(&self) -> Option<Self> {
        self.0.inv_ref().map(ParamScalar)
    }
    fn weight(&self) -> usize {
        self.0.weight()
    }
}

impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_zpoly(self.num_z(), "t");
        if self.den_z().is_one() {
            return f.write_str(&num);
        }
        let den = fmt_zpoly(self.den_z(), "t");
        let num = if is_single_term(self.num_z()) { num } else { format!("({num})") };
        let den = if is_atom(self.den_z()) { den } else { format!("({den})") };
        write!(f, "{num}/{den}")
    }
}

/// A single nonnegative term such as `3*t^2`.
pub(crate) fn is_single_term(p: &ZPoly) -> bool {
    let nz = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    nz <= 1 && p.coeffs().iter().all(|c| !c.is_negative())
}

/// A term that binds tighter than `/`: a bare integer or a power with unit coefficient.
pub(crate) fn is_atom(p: &ZPoly) -> bool {
    is_single_term(p) && (p.degree().unwrap_or(0) == 0 || p.lc().is_some_and(|c| c.is_one()))
}

/// Prints an integer polynomial as a sum of terms, highest degree first.
pub(crate) fn fmt_zpoly(p: &ZPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}
