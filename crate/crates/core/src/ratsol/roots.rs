//! Integer roots of polynomials over `k = Q(t)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::field::{clear_kpoly, GcdDomain, KPoly, Poly, QPoly, Rational, Ring, ZPoly};

/// Distinct integer roots of `n(λ)`, in increasing order.
///
/// An integer `λ0` is a root for transcendental `t` iff it is a root of every
/// `t`-coefficient of the cleared polynomial, so the search runs on the gcd of
/// those integer polynomials.
pub fn integer_roots(n: &KPoly) -> Vec<BigInt> {
    if n.is_zero() {
        return Vec::new();
    }
    let (z, _) = clear_kpoly(n);
    let t_deg = z.coeffs().iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let mut g = ZPoly::zero();
    for j in 0..=t_deg {
        let slice = ZPoly::new(z.coeffs().iter().map(|c| c.coeff(j)).collect());
        g = g.gcd(&slice);
        if g.degree() == Some(0) {
            return Vec::new();
        }
    }
    integer_roots_z(&g)
}

/// Distinct integer roots of an integer polynomial, in increasing order.
pub fn integer_roots_z(g: &ZPoly) -> Vec<BigInt> {
    let Some(deg) = g.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let g = g.squarefree_part();
    let sturm = sturm_sequence(&g.map(|c| Rational::from_integer(c.clone())));
    let bound = cauchy_bound(&g);
    let lo = -&bound;
    let total = variations(&sturm, &(&lo - 1)) - variations(&sturm, &bound);
    let mut out = Vec::new();
    isolate(&g, &sturm, lo, bound, total, &mut out);
    out
}

fn cauchy_bound(g: &ZPoly) -> BigInt {
    let lc = g.lc().unwrap().abs();
    let max = g.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let (q, r) = max.div_rem(&lc);
    q + if Ring::is_zero(&r) { 1 } else { 2 }
}

fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn variations(seq: &[QPoly], at: &BigInt) -> i64 {
    let x = Rational::from_integer(at.clone());
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in seq {
        let v = p.eval(&x);
        if Ring::is_zero(&v) {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Collects integer roots in `[lo, hi]`, given that `count` real roots lie in `(lo - 1, hi]`.
fn isolate(g: &ZPoly, sturm: &[QPoly], lo: BigInt, hi: BigInt, count: i64, out: &mut Vec<BigInt>) {
    if count <= 0 {
        return;
    }
    if lo == hi {
        if Ring::is_zero(&g.eval(&lo)) {
            out.push(lo);
        }
        return;
    }
    let mid = (&lo + &hi).div_floor(&BigInt::from(2));
    let left = variations(sturm, &(&lo - 1)) - variations(sturm, &mid);
    isolate(g, sturm, lo, mid.clone(), left, out);
    isolate(g, sturm, mid + 1, hi, count - left, out);
}

/// `λ (λ - 1) ... (λ - i + 1)` over any ring.
pub fn falling_factorial<R: Ring>(i: usize) -> Poly<R> {
    let mut p = Poly::<R>::one();
    for k in 0..i {
        p = &p * &Poly::new(vec![R::from_int(-(k as i64)), R::one()]);
    }
    p
}
