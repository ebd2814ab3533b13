//! The differential field `K = Q(t)(x)` with `d/dx` and `d/dt`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::frac::Frac;
use super::param::{fmt_zpoly, is_atom, is_single_term};
use super::ring::{Field, GcdDomain, Ring};
use super::{KPoly, ParamScalar, ZPoly, ZtPoly};
use crate::error::{Error, Result};

/// An element of `K = Q(t)(x)` in canonical reduced form.
///
/// Stored as a fraction of polynomials in `x` over `Z[t]`, reduced in the UFD
/// `Z[t][x]` with a sign-normal denominator. This is in bijection with the
/// presentation over `k[x]` with a monic denominator, which
/// [`FieldElem::numerator`] and [`FieldElem::denominator`] return.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem(pub(crate) Frac<ZtPoly>);

impl FieldElem {
    pub fn x() -> Self {
        FieldElem(Frac::from_num(ZtPoly::var()))
    }

    pub fn t() -> Self {
        Self::from_param(&ParamScalar::t())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem(Frac::from_num(ZtPoly::constant(ZPoly::constant(BigInt::from(n)))))
    }

    pub fn from_param(c: &ParamScalar) -> Self {
        FieldElem(Frac::from_reduced(
            ZtPoly::constant(c.num_z().clone()),
            ZtPoly::constant(c.den_z().clone()),
        ))
    }

    /// `num / den` over `Z[t][x]`, or `None` when `den` is zero.
    pub fn from_zt(num: ZtPoly, den: ZtPoly) -> Option<Self> {
        Frac::new(num, den).map(FieldElem)
    }

    pub fn from_zt_poly(p: ZtPoly) -> Self {
        FieldElem(Frac::from_num(p))
    }

    pub fn from_kpoly(p: &KPoly) -> Self {
        let (z, l) = clear_kpoly(p);
        FieldElem(Frac::new(z, ZtPoly::constant(l)).unwrap())
    }

    /// `num / den` over `k[x]`.
    pub fn from_kpolys(num: &KPoly, den: &KPoly) -> Option<Self> {
        let (zn, ln) = clear_kpoly(num);
        let (zd, ld) = clear_kpoly(den);
        Self::from_zt(&zn * &ZtPoly::constant(ld), &zd * &ZtPoly::constant(ln))
    }

    pub fn num_z(&self) -> &ZtPoly {
        self.0.num()
    }

    pub fn den_z(&self) -> &ZtPoly {
        self.0.den()
    }

    /// Numerator over `k`, normalized so the denominator is monic in `x`.
    pub fn numerator(&self) -> KPoly {
        let lc = self.den_z().lc().unwrap().clone();
        self.num_z().map(|c| ParamScalar::from_zpolys(c.clone(), lc.clone()).unwrap())
    }

    /// Denominator over `k`, monic in `x`.
    pub fn denominator(&self) -> KPoly {
        let lc = self.den_z().lc().unwrap().clone();
        self.den_z().map(|c| ParamScalar::from_zpolys(c.clone(), lc.clone()).unwrap())
    }

    pub fn is_polynomial_in_x(&self) -> bool {
        self.den_z().degree() == Some(0)
    }

    /// The element as a member of `k` when it does not depend on `x`.
    pub fn as_param(&self) -> Option<ParamScalar> {
        if self.num_z().degree().unwrap_or(0) == 0 && self.den_z().degree() == Some(0) {
            ParamScalar::from_zpolys(self.num_z().coeff(0), self.den_z().coeff(0))
        } else {
            None
        }
    }

    pub fn is_free_of_t(&self) -> bool {
        let t_free = |p: &ZtPoly| p.coeffs().iter().all(|c| c.degree().unwrap_or(0) == 0);
        t_free(self.num_z()) && t_free(self.den_z())
    }

    pub fn invert(&self) -> Result<Self> {
        self.0.inv_ref().map(FieldElem).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u32) -> Self {
        FieldElem(Frac::from_reduced(self.num_z().pow(e), self.den_z().pow(e)))
    }

    /// Derivative with respect to `x`.
    pub fn d_x(&self) -> Self {
        let (n, d) = (self.num_z(), self.den_z());
        if d.is_constant() {
            return FieldElem(Frac::new(n.derivative(), d.clone()).unwrap());
        }
        let num = &(&n.derivative() * d) - &(n * &d.derivative());
        FieldElem(Frac::new(num, d * d).unwrap())
    }

    /// Derivative with respect to `t`, applied coefficient-wise.
    pub fn d_t(&self) -> Self {
        let dt = |p: &ZtPoly| p.map(|c| c.derivative());
        let (n, d) = (self.num_z(), self.den_z());
        if d.coeffs().iter().all(|c| c.is_constant()) {
            return FieldElem(Frac::new(dt(n), d.clone()).unwrap());
        }
        let num = &(&dt(n) * d) - &(n * &dt(d));
        FieldElem(Frac::new(num, d * d).unwrap())
    }

    /// Value at `x = x0`.
    pub fn eval_at_x(&self, x0: &ParamScalar) -> Result<ParamScalar> {
        let ev = |p: &ZtPoly| {
            p.coeffs().iter().rev().fold(ParamScalar::zero(), |acc, c| {
                acc.mul_ref(x0).add_ref(&ParamScalar::from_zpoly(c.clone()))
            })
        };
        let d = ev(self.den_z());
        if d.is_zero() {
            return Err(Error::PoleAtPoint(x0.to_string()));
        }
        Ok(ev(self.num_z()).div_ref(&d).unwrap())
    }

    /// Degree in `x` of numerator minus that of the denominator.
    pub fn degree_at_infinity(&self) -> Option<i64> {
        let n = self.num_z().degree()? as i64;
        Some(n - self.den_z().degree().unwrap() as i64)
    }
}

/// Clears `t`-denominators: returns `(z, l)` with `p = z / l`.
pub fn clear_kpoly(p: &KPoly) -> (ZtPoly, ZPoly) {
    let mut l = ZPoly::one();
    for c in p.coeffs() {
        let d = c.den_z();
        if d.is_one() {
            continue;
        }
        let g = l.gcd(d);
        l = &l * &d.exact_div(&g);
    }
    let z = p.map(|c| c.num_z() * &l.exact_div(c.den_z()));
    (z, l)
}

impl Ring for FieldElem {
    fn zero() -> Self {
        FieldElem(Frac::zero())
    }
    fn one() -> Self {
        FieldElem(Frac::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        FieldElem(self.0.add_ref(&rhs.0))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        FieldElem(self.0.sub_ref(&rhs.0))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        FieldElem(self.0.mul_ref(&rhs.0))
    }
    fn neg_ref(&self) -> Self {
        FieldElem(self.0.neg_ref())
    }
    fn from_int(n: i64) -> Self {
        FieldElem::from_int(n)
    }
    fn from_bigint(n: &BigInt) -> Self {
        FieldElem(Frac::from_num(ZtPoly::constant(ZPoly::constant(n.clone()))))
    }
}

impl Field for FieldElem {
    fn inv_ref(&self) -> Option<Self> {
        self.0.inv_ref().map(FieldElem)
    }
    fn weight(&self) -> usize {
        self.0.weight()
    }
}

/// Prints a polynomial in `x` with `Z[t]` coefficients in the input grammar.
pub(crate) fn fmt_ztpoly(p: &ZtPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let single = c.coeffs().iter().filter(|a| !a.is_zero()).count() == 1;
        let (neg, body) = if single {
            let neg = c.lc().unwrap().is_negative();
            let mag = if neg { -c } else { c.clone() };
            let s = fmt_zpoly(&mag, "t");
            let body = if mono.is_empty() {
                s
            } else if mag.is_one() {
                mono
            } else {
                format!("{s}*{mono}")
            };
            (neg, body)
        } else {
            let s = format!("({})", fmt_zpoly(c, "t"));
            (false, if mono.is_empty() { s } else { format!("{s}*{mono}") })
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

fn zt_is_single_term(p: &ZtPoly) -> bool {
    let nz: Vec<_> = p.coeffs().iter().filter(|c| !c.is_zero()).collect();
    nz.len() <= 1 && nz.iter().all(|c| is_single_term(c))
}

fn zt_is_atom(p: &ZtPoly) -> bool {
    let nz: Vec<(usize, &ZPoly)> = p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    match nz.as_slice() {
        [] => true,
        [(0, c)] => is_atom(c),
        [(_, c)] => c.is_one(),
        _ => false,
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_ztpoly(self.num_z());
        if self.den_z().is_one() {
            return f.write_str(&num);
        }
        let den = fmt_ztpoly(self.den_z());
        let num = if zt_is_single_term(self.num_z()) { num } else { format!("({num})") };
        let den = if zt_is_atom(self.den_z()) { den } else { format!("({den})") };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> FieldElem {
        FieldElem::x()
    }
    fn t() -> FieldElem {
        FieldElem::t()
    }
    fn c(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    #[test]
    fn add_examples() {
        let inv_x = x().invert().unwrap();
        // 1/x + (x-1)/x = 1
        let b = (&x() - &c(1)) * inv_x.clone();
        assert_eq!(&inv_x + &b, c(1));
        // t/x + 0 = t/x
        let tx = &t() * &inv_x;
        assert_eq!(&tx + &FieldElem::zero(), tx);
        // 1/(x-1) + 1/(x+1) = 2x/(x^2-1)
        let s = &(&x() - &c(1)).invert().unwrap() + &(&x() + &c(1)).invert().unwrap();
        let expected = &(&c(2) * &x()) * &(&(&x() * &x()) - &c(1)).invert().unwrap();
        assert_eq!(s, expected);
        assert_eq!(s.to_string(), "2*x/(x^2 - 1)");
    }

    #[test]
    fn mul_and_invert_examples() {
        assert_eq!(&x() * &x().invert().unwrap(), c(1));
        let t2x2 = &(&t() * &t()) * &(&x() * &x()).invert().unwrap();
        let inv = t2x2.invert().unwrap();
        assert_eq!(inv, &(&x() * &x()) * &(&t() * &t()).invert().unwrap());
        assert_eq!(inv.to_string(), "x^2/t^2");
        assert_eq!(&(&x() + &t()) * &(&x() - &t()), &(&x() * &x()) - &(&t() * &t()));
        assert_eq!(FieldElem::zero().invert(), Err(Error::DivisionByZero));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!((&x() * &x()).d_x(), &c(2) * &x());
        assert!(t().d_x().is_zero());
        let inv_x = x().invert().unwrap();
        assert_eq!(inv_x.d_x(), (&inv_x * &inv_x).neg_ref());

        let t2x2 = &(&t() * &t()) * &(&inv_x * &inv_x);
        assert_eq!(t2x2.d_t(), &(&c(2) * &t()) * &(&inv_x * &inv_x));
        assert!(x().d_t().is_zero());
        let f = (&x() - &t()).invert().unwrap();
        assert_eq!(f.d_t(), &f * &f);
    }

    #[test]
    fn eval_examples() {
        let inv_x = x().invert().unwrap();
        let two = ParamScalar::from_int(2);
        assert_eq!(inv_x.eval_at_x(&two).unwrap(), ParamScalar::from_int(1).div_ref(&two).unwrap());
        let t2x2 = &(&t() * &t()) * &(&inv_x * &inv_x);
        assert_eq!(t2x2.eval_at_x(&ParamScalar::one()).unwrap(), ParamScalar::t().pow(2));
        assert!(matches!(inv_x.eval_at_x(&ParamScalar::zero()), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn monic_presentation_over_k() {
        // (x + 1) / (2t x) -> numerator (1/(2t)) x + 1/(2t), denominator x
        let e = &(&x() + &c(1)) * &(&(&c(2) * &t()) * &x()).invert().unwrap();
        let d = e.denominator();
        assert_eq!(d.degree(), Some(1));
        assert!(d.lc().unwrap().is_one());
        assert!(d.coeff(0).is_zero());
        let half_t = ParamScalar::from_int(1).div_ref(&ParamScalar::t().mul_ref(&ParamScalar::from_int(2))).unwrap();
        assert_eq!(e.numerator().coeff(1), half_t);
        assert_eq!(FieldElem::from_kpolys(&e.numerator(), &d).unwrap(), e);
    }
}
