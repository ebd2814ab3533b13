//! Dense univariate polynomials over a ring, stored low-to-high.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::ring::{Field, GcdDomain, IntCoeffs, Ring};

/// A dense univariate polynomial with no trailing zero coefficients.
///
/// The zero polynomial has an empty coefficient vector and degree `None`,
/// which plays the role of the `-inf` degree sentinel.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * var^k`
    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn lc(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&R::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul_ref(at).add_ref(c))
    }

    /// Substitute a polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    fn sub_impl(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg_ref(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    fn neg_impl(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lc().unwrap().clone();
        let mut r = self.clone();
        let mut steps = 0u32;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc().unwrap().clone();
            r = &r.scale(&lb) - &b.scale(&lr).shift_up(dr - db);
            steps += 1;
        }
        let missing = (da - db + 1) as u32 - steps;
        let mut factor = R::one();
        for _ in 0..missing {
            factor = factor.mul_ref(&lb);
        }
        r.scale(&factor)
    }
}

impl<R: IntCoeffs> Poly<R> {
    /// Sign-normalized gcd of the coefficients.
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with sign-normal leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let p = if c.is_one() {
            self.clone()
        } else {
            Poly {
                coeffs: self.coeffs.iter().map(|a| a.exact_div(&c)).collect(),
            }
        };
        p.sign_normalize()
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).primitive_part()
    }

    /// Exact quotient by `b` together with a flag that the division was exact.
    pub fn div_exact_checked(&self, b: &Self) -> Option<Self> {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lc().unwrap();
        let mut r = self.clone();
        let Some(da) = r.degree() else {
            return Some(Self::zero());
        };
        if da < db {
            return None;
        }
        let mut q = vec![R::zero(); da - db + 1];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let c = r.lc().unwrap().checked_div(lb)?;
            r = &r - &b.scale(&c).shift_up(dr - db);
            q[dr - db] = c;
        }
        Some(Self::new(q))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub_impl(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg_impl()
    }
    fn from_int(n: i64) -> Self {
        Poly::constant(R::from_int(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        Poly::constant(R::from_bigint(n))
    }
}

impl<R: IntCoeffs> GcdDomain for Poly<R> {
    /// Primitive polynomial remainder sequence with content splitting.
    fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.sign_normalize();
        }
        if rhs.is_zero() {
            return self.sign_normalize();
        }
        let c = self.content().gcd(&rhs.content());
        if self.is_constant() || rhs.is_constant() {
            return Poly::constant(c);
        }
        let (mut p, mut q) = (self.primitive_part(), rhs.primitive_part());
        if let Some(g) = heuristic_gcd(&p, &q) {
            return g.scale(&c).sign_normalize();
        }
        if p.degree() < q.degree() {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() {
            if q.is_constant() {
                p = Poly::one();
                break;
            }
            let r = p.pseudo_rem(&q);
            p = q;
            q = r.primitive_part();
        }
        p.scale(&c).sign_normalize()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        self.div_exact_checked(rhs)
    }

    fn exact_div(&self, rhs: &Self) -> Self {
        match self.div_exact_checked(rhs) {
            Some(q) => q,
            None => panic!("inexact polynomial division"),
        }
    }

    fn is_sign_normal(&self) -> bool {
        self.lc().is_none_or(|c| c.is_sign_normal())
    }
}

impl<R: IntCoeffs> IntCoeffs for Poly<R> {
    fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.max_norm()).max().unwrap_or_default()
    }
    fn symmod(&self, m: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.symmod(m)).collect())
    }
    fn div_int(&self, m: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.div_int(m)).collect())
    }
    fn scale_int(&self, m: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale_int(m)).collect())
    }
}

/// Heuristic gcd of primitive polynomials by evaluation at a large integer and
/// balanced-radix reconstruction. A candidate is accepted only when it divides
/// both inputs, which certifies it when the evaluation point exceeds twice the
/// smaller coefficient norm. Returns `None` when the attempts are exhausted.
fn heuristic_gcd<R: IntCoeffs>(a: &Poly<R>, b: &Poly<R>) -> Option<Poly<R>> {
    let norm = a.max_norm().min(b.max_norm());
    let mut xi: BigInt = norm * 2u32 + 29u32;
    for _ in 0..6 {
        if xi.bits() > 20_000 {
            return None;
        }
        let h = eval_int(a, &xi).gcd(&eval_int(b, &xi));
        if !h.is_zero() {
            let g = reconstruct(h, &xi).primitive_part();
            if g.degree().is_some() && a.div_exact_checked(&g).is_some() && b.div_exact_checked(&g).is_some() {
                return Some(g);
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

fn eval_int<R: IntCoeffs>(p: &Poly<R>, xi: &BigInt) -> R {
    p.coeffs.iter().rev().fold(R::zero(), |acc, c| acc.scale_int(xi).add_ref(c))
}

fn reconstruct<R: IntCoeffs>(mut h: R, xi: &BigInt) -> Poly<R> {
    let mut coeffs = Vec::new();
    while !h.is_zero() {
        let r = h.symmod(xi);
        h = h.sub_ref(&r).div_int(xi);
        coeffs.push(r);
    }
    Poly::new(coeffs)
}

impl<F: Field> Poly<F> {
    /// Euclidean division over a field.
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = b.lc().unwrap().inv_ref().unwrap();
        let mut r = self.clone();
        let mut q = vec![F::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.lc().unwrap().mul_ref(&inv);
            r = r.sub_impl(&b.field_scale(&c).shift_up(dr - db));
            q[dr - db] = c;
        }
        (Self::new(q), r)
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    fn field_scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(l) => self.field_scale(&l.inv_ref().unwrap()),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd_monic(&self, b: &Self) -> Self {
        let (mut p, mut q) = (self.clone(), b.clone());
        while !q.is_zero() {
            let r = p.rem(&q);
            p = q;
            q = r;
        }
        p.monic()
    }

    /// Resultant `Res(self, b)` by the Euclidean algorithm.
    pub fn resultant(&self, b: &Self) -> F {
        let (Some(mut da), Some(mut db)) = (self.degree(), b.degree()) else {
            return F::zero();
        };
        let mut a = self.clone();
        let mut b = b.clone();
        let mut acc = F::one();
        loop {
            if db == 0 {
                let lb = b.lc().unwrap();
                for _ in 0..da {
                    acc = acc.mul_ref(lb);
                }
                return acc;
            }
            let r = a.rem(&b);
            let Some(dr) = r.degree() else {
                return F::zero();
            };
            if (da * db) % 2 == 1 {
                acc = acc.neg_ref();
            }
            let lb = b.lc().unwrap();
            for _ in 0..(da - dr) {
                acc = acc.mul_ref(lb);
            }
            a = b;
            b = r;
            da = db;
            db = dr;
        }
    }

    /// `p(var + a)`.
    pub fn taylor_shift(&self, a: &F) -> Self {
        let inner = Self::new(vec![a.clone(), F::one()]);
        self.compose(&inner)
    }

    /// Power series quotient `self / den` truncated to `n` terms. Requires `den(0) != 0`.
    pub fn series_div(&self, den: &Self, n: usize) -> Option<Vec<F>> {
        let d0 = den.coeff(0).inv_ref()?;
        let mut out: Vec<F> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for j in 1..=k.min(den.coeffs.len().saturating_sub(1)) {
                acc = acc.sub_ref(&den.coeffs[j].mul_ref(&out[k - j]));
            }
            out.push(acc.mul_ref(&d0));
        }
        Some(out)
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[F], ys: &[F]) -> Self {
        assert_eq!(xs.len(), ys.len());
        // Newton divided differences.
        let n = xs.len();
        let mut coef: Vec<F> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = coef[i].sub_ref(&coef[i - 1]);
                let den = xs[i].sub_ref(&xs[i - j]);
                coef[i] = num.div_ref(&den).expect("interpolation nodes must be distinct");
            }
        }
        let mut p = Self::zero();
        for i in (0..n).rev() {
            let lin = Self::new(vec![xs[i].neg_ref(), F::one()]);
            p = &(&p * &lin) + &Self::constant(coef[i].clone());
        }
        p
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<R: Ring> $tr<&Poly<R>> for &Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: &Poly<R>) -> Poly<R> {
                self.$imp(rhs)
            }
        }
        impl<R: Ring> $tr<Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: Poly<R>) -> Poly<R> {
                self.$imp(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, add_impl);
poly_binop!(Sub, sub, sub_impl);
poly_binop!(Mul, mul, mul_impl);

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.neg_impl()
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.neg_impl()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> Poly<BigInt> {
        Poly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = zp(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(zp(&[0, 0]).degree(), None);
    }

    #[test]
    fn integer_gcd_of_products() {
        // (x+1)(x-2) and (x+1)(2x+3)
        let a = &zp(&[1, 1]) * &zp(&[-2, 1]);
        let b = &zp(&[1, 1]) * &zp(&[3, 2]);
        assert_eq!(a.gcd(&b), zp(&[1, 1]));
        // content splitting: 6(x+1) and 4(x+1)(x-1)
        let c = zp(&[6, 6]);
        let d = &zp(&[4, 4]) * &zp(&[-1, 1]);
        assert_eq!(c.gcd(&d), zp(&[2, 2]));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = zp(&[1, 0, 3, 5]);
        let b = zp(&[2, 3]);
        let r = a.pseudo_rem(&b);
        assert!(r.degree().unwrap_or(0) < 1);
        // 3^3 * a(-2/3) * ... check via exact divisibility of 27a - r by b
        let lhs = &a.scale(&BigInt::from(27)) - &r;
        assert!(lhs.div_exact_checked(&b).is_some());
    }

    #[test]
    fn exact_division_detects_remainder() {
        assert!(zp(&[1, 0, 1]).div_exact_checked(&zp(&[1, 1])).is_none());
        assert_eq!(zp(&[-1, 0, 1]).div_exact_checked(&zp(&[1, 1])), Some(zp(&[-1, 1])));
    }

    #[test]
    fn squarefree_part_removes_repeats() {
        let p = &(&zp(&[1, 1]) * &zp(&[1, 1])) * &zp(&[0, 1]);
        assert_eq!(p.squarefree_part(), zp(&[0, 1, 1]));
    }
}
