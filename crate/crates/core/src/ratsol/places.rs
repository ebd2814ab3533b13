//! Local data at finite places and at infinity for operators with polynomial
//! coefficients in `Z[t][x]`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, GcdDomain, KPoly, ParamScalar, Poly, QPoly, Rational, Ring, ZPoly, ZtPoly};

use super::modular::resultants;
use super::roots::{falling_factorial, integer_roots, integer_roots_z};

/// Number of parameter samples whose integer-root sets are intersected.
const SAMPLES: usize = 3;

pub(crate) fn to_k(p: &ZtPoly) -> KPoly {
    p.map(|c| ParamScalar::from_zpoly(c.clone()))
}

pub(crate) fn show(p: &ZtPoly) -> String {
    FieldElem::from_zt_poly(p.clone()).to_string()
}

/// Multiplicity of the squarefree primitive `p` in `f`, with the cofactor.
/// Assumes the multiplicity is uniform over the irreducible factors of `p`.
pub(crate) fn valuation(p: &ZtPoly, f: &ZtPoly) -> (usize, ZtPoly) {
    let mut v = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact_checked(p) {
        if q.is_zero() {
            break;
        }
        cur = q;
        v += 1;
    }
    (v, cur)
}

/// Refines `seeds` (squarefree, primitive, positive degree) by gcds until every
/// nonzero `f` in `polys` has the same multiplicity at all roots of each piece.
pub(crate) fn split_places(seeds: Vec<ZtPoly>, polys: &[&ZtPoly]) -> Vec<ZtPoly> {
    let mut work = seeds;
    let mut done = Vec::new();
    'outer: while let Some(p) = work.pop() {
        for f in polys.iter().filter(|f| !f.is_zero()) {
            let mut cur = (*f).clone();
            loop {
                let g = p.gcd(&cur).primitive_part();
                let dg = g.degree().unwrap_or(0);
                if dg == 0 {
                    break;
                }
                if dg < p.degree().unwrap() {
                    let h = p.exact_div(&g).primitive_part();
                    work.push(g);
                    work.push(h);
                    continue 'outer;
                }
                cur = cur.exact_div(&p);
            }
        }
        done.push(p);
    }
    done.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| show(a).cmp(&show(b))));
    done
}

/// Indicial data at a uniform place `p` for `Σ a_i ∂^i`.
///
/// Returns `s = min_i (v_p(a_i) - i)` and `N(λ) = Res_x(p, I_p(x, λ))` with
/// `I_p = Σ_{v_i - i = s} u_i p'^i λ(λ-1)...(λ-i+1)`, where `a_i = p^{v_i} u_i`.
/// An integer root `λ0` of `N` is a possible valuation of a solution at some root of `p`.
pub(crate) fn indicial_finite(p: &ZtPoly, a: &[ZtPoly]) -> Result<(i64, KPoly)> {
    let (s, active) = active_terms(p, a);
    let active: Vec<(usize, KPoly)> = active.into_iter().map(|(i, u)| (i, to_k(&u))).collect();
    let pk = to_k(p);
    let dp = pk.derivative();
    let n = if pk.degree() == Some(1) {
        let alpha = pk.coeff(0).neg_ref().div_ref(&pk.coeff(1)).unwrap();
        let slope = pk.coeff(1);
        let mut acc = KPoly::zero();
        for (i, u) in &active {
            let c = u.eval(&alpha).mul_ref(&slope.pow(*i as u32));
            acc = &acc + &falling_factorial::<ParamScalar>(*i).scale(&c);
        }
        acc
    } else {
        let top = active.iter().map(|(i, _)| *i).max().unwrap_or(0);
        let points = pk.degree().unwrap() * top + 1;
        let mut xs = Vec::with_capacity(points);
        let mut ys = Vec::with_capacity(points);
        for l0 in 0..points {
            let mut ix = KPoly::zero();
            for (i, u) in &active {
                let ff: ParamScalar = falling_factorial::<ParamScalar>(*i).eval(&ParamScalar::from_int(l0 as i64));
                if ff.is_zero() {
                    continue;
                }
                let term = (u * &dp.pow(*i as u32)).rem(&pk).scale(&ff);
                ix = &ix + &term;
            }
            xs.push(ParamScalar::from_int(l0 as i64));
            ys.push(pk.resultant(&ix.rem(&pk)));
        }
        Poly::interpolate(&xs, &ys)
    };
    if n.is_zero() {
        return Err(Error::UnsupportedPlace(show(p)));
    }
    Ok((s, n))
}

/// `s` and a superset of the integer roots of the indicial polynomial at `p`.
///
/// For a linear place the indicial polynomial is computed exactly. For a
/// nonlinear place the resultant is evaluated at integer values `t = t0`: an
/// integer root of `N` is a root of every nonvanishing specialization, so the
/// intersection of the root sets over several samples contains all of them.
pub(crate) fn exponent_candidates(p: &ZtPoly, a: &[ZtPoly]) -> Result<(i64, Vec<BigInt>)> {
    if p.degree() == Some(1) {
        let (s, n) = indicial_finite(p, a)?;
        return Ok((s, integer_roots(&n)));
    }
    let (s, active) = active_terms(p, a);
    let top = active.iter().map(|(i, _)| *i).max().unwrap_or(0);
    let points = p.degree().unwrap() * top + 1;
    let lc = p.lc().unwrap();
    let mut found: Option<Vec<BigInt>> = None;
    let mut samples = 0;
    for t0 in (2..200i64).map(BigInt::from) {
        if samples == SAMPLES {
            break;
        }
        if lc.eval(&t0).is_zero() {
            continue;
        }
        let at = |q: &ZtPoly| -> ZPoly { q.map(|c| c.eval(&t0)) };
        let pz = at(p);
        let dp = pz.derivative();
        let terms: Vec<(usize, ZPoly)> = active.iter().map(|(i, u)| (*i, &at(u) * &dp.pow(*i as u32))).collect();
        let formal = terms.iter().filter_map(|(_, g)| g.degree()).max().unwrap_or(0);
        let fs: Vec<ZPoly> = (0..points)
            .map(|l0| {
                terms.iter().fold(ZPoly::zero(), |acc, (i, g)| {
                    let ff: BigInt = falling_factorial::<BigInt>(*i).eval(&BigInt::from(l0));
                    &acc + &g.scale(&ff)
                })
            })
            .collect();
        let xs: Vec<Rational> = (0..points).map(|l0| Rational::from_integer(BigInt::from(l0))).collect();
        let ys: Vec<Rational> = resultants(&pz, &fs, formal).into_iter().map(Rational::from_integer).collect();
        let n = QPoly::interpolate(&xs, &ys);
        if n.is_zero() {
            continue;
        }
        samples += 1;
        let roots = integer_roots_z(&clear_q(&n));
        found = Some(match found {
            None => roots,
            Some(prev) => prev.into_iter().filter(|r| roots.contains(r)).collect(),
        });
    }
    match found {
        Some(roots) => Ok((s, roots)),
        None => Err(Error::UnsupportedPlace(show(p))),
    }
}

fn clear_q(n: &QPoly) -> ZPoly {
    let mut l = BigInt::from(1);
    for c in n.coeffs() {
        l = num_integer::Integer::lcm(&l, c.denom());
    }
    n.map(|c| (c * Rational::from_integer(l.clone())).to_integer())
}

/// `s = min_i (v_p(a_i) - i)` and the cofactors `u_i` of the terms attaining it.
fn active_terms(p: &ZtPoly, a: &[ZtPoly]) -> (i64, Vec<(usize, ZtPoly)>) {
    let mut s = i64::MAX;
    let mut data = Vec::new();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let (v, u) = valuation(p, ai);
        let e = v as i64 - i as i64;
        s = s.min(e);
        data.push((i, e, u));
    }
    let active = data.into_iter().filter(|(_, e, _)| *e == s).map(|(i, _, u)| (i, u)).collect();
    (s, active)
}

/// Indicial data at infinity for polynomial coefficients: `s∞ = max_j (deg b_j - j)`
/// and `I∞(λ) = Σ_{deg b_j - j = s∞} lc(b_j) λ(λ-1)...(λ-j+1)`. A polynomial
/// solution of degree `e` with `I∞(e) ≠ 0` maps to a polynomial of degree `e + s∞`.
pub(crate) fn indicial_infinity(b: &[ZtPoly]) -> (i64, KPoly) {
    let s = b
        .iter()
        .enumerate()
        .filter_map(|(j, bj)| bj.degree().map(|d| d as i64 - j as i64))
        .max()
        .unwrap_or(0);
    let mut acc = KPoly::zero();
    for (j, bj) in b.iter().enumerate() {
        if let Some(d) = bj.degree() {
            if d as i64 - j as i64 == s {
                let lc: &ZPoly = bj.lc().unwrap();
                let c = ParamScalar::from_zpoly(lc.clone());
                acc = &acc + &falling_factorial::<ParamScalar>(j).scale(&c);
            }
        }
    }
    (s, acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn zt(coeffs: &[&[i64]]) -> ZtPoly {
        Poly::new(
            coeffs
                .iter()
                .map(|c| Poly::new(c.iter().map(|&v| BigInt::from(v)).collect()))
                .collect(),
        )
    }

    #[test]
    fn splitting_separates_multiplicities() {
        // p = x(x - 1); f = x^2 (x - 1) is not uniform on p.
        let p = zt(&[&[0], &[-1], &[1]]);
        let f = zt(&[&[0], &[0], &[-1], &[1]]);
        let pieces = split_places(vec![p], &[&f]);
        assert_eq!(pieces.len(), 2);
        let vals: Vec<usize> = pieces.iter().map(|q| valuation(q, &f).0).collect();
        assert!(vals.contains(&1) && vals.contains(&2));
    }

    #[test]
    fn euler_and_bessel_indicial() {
        let x = zt(&[&[0], &[1]]);
        // x ∂ - 3
        let (_, n) = indicial_finite(&x, &[zt(&[&[-3]]), x.clone()]).unwrap();
        assert_eq!(super::super::roots::integer_roots(&n), vec![BigInt::from(3)]);
        // x² ∂² + x ∂ + (x² - t²): N = λ² - t²
        let a0 = zt(&[&[0, 0, -1], &[], &[1]]);
        let (s, n) = indicial_finite(&x, &[a0, x.clone(), zt(&[&[0], &[0], &[1]])]).unwrap();
        assert_eq!(s, 0);
        let t = ParamScalar::t();
        assert_eq!(n, Poly::new(vec![t.mul_ref(&t).neg_ref(), ParamScalar::zero(), ParamScalar::one()]));
    }

    #[test]
    fn nonlinear_place_uses_resultant() {
        // (x² + 1) ∂ - 2x: solution x² + 1, exponent 1 at both roots ±i.
        let p = zt(&[&[1], &[0], &[1]]);
        let a = [zt(&[&[0], &[-2]]), p.clone()];
        let (_, n) = indicial_finite(&p, &a).unwrap();
        assert_eq!(super::super::roots::integer_roots(&n), vec![BigInt::from(1)]);
        assert_eq!(exponent_candidates(&p, &a).unwrap().1, vec![BigInt::from(1)]);
    }

    #[test]
    fn sampled_roots_drop_parameter_dependent_ones() {
        // (x² - t) ∂ - t x has exponent t/2 at both roots: no integer candidates survive.
        let p = zt(&[&[0, -1], &[], &[1]]);
        let a = [zt(&[&[], &[0, -1]]), p.clone()];
        assert!(exponent_candidates(&p, &a).unwrap().1.is_empty());
    }

    #[test]
    fn infinity_for_second_derivative() {
        let (s, n) = indicial_infinity(&[ZtPoly::zero(), ZtPoly::zero(), ZtPoly::one()]);
        assert_eq!(s, -2);
        assert_eq!(
            super::super::roots::integer_roots(&n),
            vec![BigInt::from(0), BigInt::from(1)]
        );
    }
}
