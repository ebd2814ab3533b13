//! Rational solutions of `L(y) = b` and of first-order systems over `K`.
//!
//! The scalar solver follows the classical two-bound scheme. Local indicial
//! data at every finite singular place bounds pole orders, which yields a
//! universal denominator `d`. Substituting `y = P/d` leaves a polynomial
//! problem whose degree is bounded by the indicial data at infinity. The
//! remaining unknown coefficients are found by linear algebra over `k = Q(t)`.
//! Places are squarefree polynomials over `Z[t]`, refined by gcds so that every
//! coefficient has uniform multiplicity along a place; the indicial polynomial
//! of a nonlinear place is a resultant, so no algebraic extension is needed.

mod modular;
mod places;
mod roots;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, GcdDomain, KPoly, ParamScalar, Poly, Ring, ZPoly, ZtPoly};
use crate::linsys::{cyclic_vector_with, CyclicOptions, DiffSystem};
use crate::matrix::Matrix;
use crate::ore::OreOperator;

pub use roots::{falling_factorial, integer_roots, integer_roots_z};

use places::{exponent_candidates, indicial_finite, indicial_infinity, show, split_places, to_k, valuation};

/// Default cap on pole orders and polynomial degrees.
pub const DEFAULT_MAX_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct RatsolOptions {
    pub max_degree: usize,
    pub cyclic: CyclicOptions,
}

impl Default for RatsolOptions {
    fn default() -> Self {
        RatsolOptions { max_degree: DEFAULT_MAX_DEGREE, cyclic: CyclicOptions::default() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Place {
    /// A squarefree polynomial in `x` over `k`.
    Finite(KPoly),
    Infinity,
}

/// A certified bound at one place: the maximal pole order at a finite place, or
/// the maximal numerator degree at infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaceBound {
    pub place: Place,
    pub max_order: usize,
}

/// The rational solutions of a (possibly inhomogeneous) equation or system.
///
/// `basis` spans the homogeneous solutions over `k`; `particular` solves the
/// inhomogeneous problem when it is solvable. Scalar solutions are vectors of
/// length one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionSpace {
    pub basis: Vec<Vec<FieldElem>>,
    pub particular: Option<Vec<FieldElem>>,
    /// Monic universal denominator used by the scalar solve.
    pub denominator: KPoly,
    /// Degree bound for numerators; `-1` when only the zero numerator is possible.
    pub degree_bound: i64,
    pub places: Vec<PlaceBound>,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_solvable(&self) -> bool {
        self.particular.is_some()
    }

    /// First coordinates, convenient for scalar problems.
    pub fn scalar_basis(&self) -> Vec<FieldElem> {
        self.basis.iter().map(|v| v[0].clone()).collect()
    }

    pub fn scalar_particular(&self) -> Option<FieldElem> {
        self.particular.as_ref().map(|v| v[0].clone())
    }
}

/// Operator and right-hand side with common denominators cleared.
struct Cleared {
    a: Vec<ZtPoly>,
    r: Option<ZtPoly>,
}

fn lcm(a: &ZtPoly, b: &ZtPoly) -> ZtPoly {
    if b.is_one() {
        return a.clone();
    }
    let g = a.gcd(b);
    (a * &b.exact_div(&g)).sign_normalize()
}

fn clear(coeffs: &[FieldElem], rhs: Option<&FieldElem>) -> Cleared {
    let mut den = ZtPoly::one();
    for c in coeffs.iter().chain(rhs) {
        den = lcm(&den, c.den_z());
    }
    let scale = |c: &FieldElem| c.num_z() * &den.exact_div(c.den_z());
    remove_content(Cleared { a: coeffs.iter().map(scale).collect(), r: rhs.map(scale) })
}

fn remove_content(mut c: Cleared) -> Cleared {
    let mut g = ZtPoly::zero();
    for p in c.a.iter().chain(c.r.as_ref()) {
        g = g.gcd(p);
        if g.is_one() {
            return c;
        }
    }
    if !g.is_zero() {
        c.a = c.a.iter().map(|p| p.exact_div(&g)).collect();
        c.r = c.r.map(|p| p.exact_div(&g));
    }
    c
}

/// Coefficients of `d^{n+1} L(P/d)` as an operator in `P`, with the right-hand
/// side scaled to match, by Leibniz's rule and `(1/d)^{(k)} = Q_k / d^{k+1}`.
fn substitute_denominator(c: &Cleared, d: &ZtPoly) -> Cleared {
    let n = c.a.len() - 1;
    let dd = d.derivative();
    let mut q = vec![ZtPoly::one()];
    for k in 0..n {
        let next = &(&q[k].derivative() * d) - &(&q[k] * &dd).scale(&ZPoly::constant(BigInt::from(k + 1)));
        q.push(next);
    }
    let mut dpow = vec![ZtPoly::one()];
    for k in 0..n {
        dpow.push(&dpow[k] * d);
    }
    let a = (0..=n)
        .map(|j| {
            let mut acc = ZtPoly::zero();
            for i in j..=n {
                if c.a[i].is_zero() {
                    continue;
                }
                let binom = ZPoly::constant(num_integer::binomial(BigInt::from(i), BigInt::from(j)));
                let term = &(&c.a[i] * &q[i - j]) * &dpow[n - (i - j)];
                acc = &acc + &term.scale(&binom);
            }
            acc
        })
        .collect();
    let r = c.r.as_ref().map(|r| &(r * &dpow[n]) * d);
    remove_content(Cleared { a, r })
}

fn cap_check(needed: &BigInt, cap: usize) -> Result<usize> {
    match needed.to_usize() {
        Some(n) if n <= cap => Ok(n),
        other => Err(Error::BudgetExceeded { needed: other.unwrap_or(usize::MAX), cap }),
    }
}

fn monic_k(p: &ZtPoly) -> KPoly {
    to_k(p).monic()
}

/// Pole-order bounds at all finite places and the resulting denominator.
///
/// When `singular` is given, solutions are known to be regular at every root
/// of the leading coefficient that is not a root of `singular`.
fn finite_bounds(c: &Cleared, cap: usize, singular: Option<&ZtPoly>) -> Result<(ZtPoly, Vec<PlaceBound>)> {
    let n = c.a.len() - 1;
    let lead = c.a[n].primitive_part().squarefree_part();
    let seeds = if lead.degree().unwrap_or(0) > 0 { vec![lead] } else { Vec::new() };
    let mut polys: Vec<&ZtPoly> = c.a.iter().collect();
    if let Some(r) = &c.r {
        polys.push(r);
    }
    if let Some(sing) = singular {
        polys.push(sing);
    }
    let mut d = ZtPoly::one();
    let mut bounds = Vec::new();
    for p in split_places(seeds, &polys) {
        if singular.is_some_and(|sing| valuation(&p, sing).0 == 0) {
            bounds.push(PlaceBound { place: Place::Finite(monic_k(&p)), max_order: 0 });
            continue;
        }
        let (s, roots) = exponent_candidates(&p, &c.a)?;
        let mut m = BigInt::from(0);
        if let Some(min) = roots.first() {
            m = m.max(-min);
        }
        if let Some(r) = &c.r {
            let (vr, _) = valuation(&p, r);
            m = m.max(BigInt::from(s - vr as i64));
        }
        let m = cap_check(&m, cap)?;
        d = &d * &p.pow(m as u32);
        bounds.push(PlaceBound { place: Place::Finite(monic_k(&p)), max_order: m });
    }
    Ok((d, bounds))
}

/// The polynomial `N(λ)` over `k` whose integer roots are the possible local
/// exponents of solutions of `L` at `place`.
///
/// At a finite place `p` a root `λ0` stands for solutions behaving like `p^{λ0}`,
/// so poles have negative exponents. At infinity a root `e` stands for solutions
/// behaving like `x^e`; for polynomial coefficients the nonnegative roots bound
/// the degrees of polynomial solutions.
pub fn indicial_data(l: &OreOperator, place: &Place) -> Result<KPoly> {
    if l.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let c = clear(l.coeffs(), None);
    match place {
        Place::Infinity => Ok(indicial_infinity(&c.a).1),
        Place::Finite(p) => {
            if p.degree().unwrap_or(0) == 0 {
                return Err(Error::UnsupportedPlace(format!("{p:?}")));
            }
            let (z, _) = crate::field::clear_kpoly(p);
            let seed = z.primitive_part().squarefree_part();
            let polys: Vec<&ZtPoly> = c.a.iter().collect();
            let mut acc = KPoly::one();
            for piece in split_places(vec![seed], &polys) {
                acc = &acc * &indicial_finite(&piece, &c.a)?.1;
            }
            Ok(acc)
        }
    }
}

/// A monic polynomial divisible by the denominator of every rational solution
/// of `L(y) = rhs`.
pub fn universal_denominator(l: &OreOperator, rhs: Option<&FieldElem>, max_degree: usize) -> Result<KPoly> {
    if l.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let rhs = rhs.filter(|b| !b.is_zero());
    let (d, _) = finite_bounds(&clear(l.coeffs(), rhs), max_degree, None)?;
    Ok(monic_k(&d))
}

pub fn rational_solutions_scalar(l: &OreOperator, rhs: Option<&FieldElem>) -> Result<SolutionSpace> {
    rational_solutions_scalar_with(l, rhs, &RatsolOptions::default())
}

/// All rational solutions of `L(y) = 0`, and one of `L(y) = rhs` if it exists.
pub fn rational_solutions_scalar_with(
    l: &OreOperator,
    rhs: Option<&FieldElem>,
    opts: &RatsolOptions,
) -> Result<SolutionSpace> {
    solve_scalar(l, rhs, opts, None)
}

fn solve_scalar(
    l: &OreOperator,
    rhs: Option<&FieldElem>,
    opts: &RatsolOptions,
    singular: Option<&ZtPoly>,
) -> Result<SolutionSpace> {
    if l.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let rhs = rhs.filter(|b| !b.is_zero());
    let cleared = clear(l.coeffs(), rhs);
    let (d, mut places) = finite_bounds(&cleared, opts.max_degree, singular)?;

    // y = P / d
    let inv_d = FieldElem::from_zt(ZtPoly::one(), d.clone()).unwrap();
    let poly = substitute_denominator(&cleared, &d);
    let b = &poly.a;

    let (s_inf, i_inf) = indicial_infinity(b);
    let mut e: i64 = -1;
    if let Some(max) = integer_roots(&i_inf).last() {
        if max >= &BigInt::from(0) {
            e = cap_check(max, opts.max_degree)? as i64;
        }
    }
    if let Some(r) = &poly.r {
        let need = r.degree().unwrap() as i64 - s_inf;
        if need > e {
            e = cap_check(&BigInt::from(need), opts.max_degree)? as i64;
        }
    }
    places.push(PlaceBound { place: Place::Infinity, max_order: e.max(0) as usize });

    let denominator = monic_k(&d);
    let mut space = SolutionSpace {
        basis: Vec::new(),
        particular: None,
        denominator,
        degree_bound: e,
        places,
    };
    if e < 0 {
        return Ok(space);
    }

    let cols = solve_polynomial(b, poly.r.as_ref(), e as usize);
    let to_y = |c: &[ParamScalar]| &FieldElem::from_kpoly(&Poly::new(c.to_vec())) * &inv_d;
    let unknowns = e as usize + 1;
    match poly.r {
        None => {
            space.basis = cols.iter().map(|v| vec![to_y(v)]).collect();
        }
        Some(_) => {
            let mu = unknowns;
            let pivot = cols.iter().position(|v| !v[mu].is_zero());
            let mut basis = Vec::new();
            if let Some(pi) = pivot {
                let inv = cols[pi][mu].inv_ref().unwrap();
                let part: Vec<ParamScalar> = cols[pi].iter().map(|c| c * &inv).collect();
                for (i, v) in cols.iter().enumerate() {
                    if i == pi {
                        continue;
                    }
                    let f = &v[mu];
                    let h: Vec<ParamScalar> = v.iter().zip(&part).map(|(a, p)| a - &(f * p)).collect();
                    basis.push(vec![to_y(&h[..unknowns])]);
                }
                space.particular = Some(vec![to_y(&part[..unknowns])]);
            } else {
                basis = cols.iter().map(|v| vec![to_y(&v[..unknowns])]).collect();
            }
            space.basis = basis;
        }
    }

    for v in &space.basis {
        if !l.apply(&v[0]).is_zero() {
            return Err(Error::VerificationFailed(format!("homogeneous solution {}", v[0])));
        }
    }
    if let (Some(p), Some(b)) = (&space.particular, rhs) {
        if l.apply(&p[0]) != *b {
            return Err(Error::VerificationFailed(format!("particular solution {}", p[0])));
        }
    }
    Ok(space)
}

/// Kernel of `P ↦ M(P) - μ r` on polynomials of degree `≤ e`, as coefficient
/// vectors `(c_0, ..., c_e[, μ])`.
fn solve_polynomial(b: &[ZtPoly], r: Option<&ZtPoly>, e: usize) -> Vec<Vec<ParamScalar>> {
    let mut columns: Vec<ZtPoly> = (0..=e)
        .map(|i| {
            let mut acc = ZtPoly::zero();
            for (j, bj) in b.iter().enumerate().take(i + 1) {
                if bj.is_zero() {
                    continue;
                }
                let ff: BigInt = falling_factorial::<BigInt>(j).eval(&BigInt::from(i));
                acc = &acc + &bj.scale(&ZPoly::constant(ff)).shift_up(i - j);
            }
            acc
        })
        .collect();
    if let Some(r) = r {
        columns.push(-r);
    }
    let rows = columns.iter().filter_map(|c| c.degree()).max().map_or(0, |d| d + 1);
    if rows == 0 {
        let n = columns.len();
        return (0..n)
            .map(|k| (0..n).map(|j| if j == k { ParamScalar::one() } else { ParamScalar::zero() }).collect())
            .collect();
    }
    let mat = Matrix::from_fn(rows, columns.len(), |i, j| ParamScalar::from_zpoly(columns[j].coeff(i)));
    mat.nullspace()
}

pub fn rational_solutions_system(s: &DiffSystem) -> Result<SolutionSpace> {
    rational_solutions_system_with(s, &RatsolOptions::default())
}

/// All rational solutions of `∂Y = AY (+ b)`.
///
/// Homogeneous systems are reduced to a scalar operator by a cyclic vector;
/// inhomogeneous ones are first augmented to `[[A, b], [0, 0]]`.
pub fn rational_solutions_system_with(s: &DiffSystem, opts: &RatsolOptions) -> Result<SolutionSpace> {
    if s.is_homogeneous() {
        let mut h = s.clone();
        h.rhs = None;
        return solve_homogeneous_system(&h, opts);
    }
    let n = s.size();
    let aug = solve_homogeneous_system(&s.augmented(), opts)?;
    let pivot = aug.basis.iter().position(|v| !v[n].is_zero());
    let mut space = SolutionSpace { basis: Vec::new(), particular: None, ..aug.clone() };
    match pivot {
        None => space.basis = aug.basis.iter().map(|v| v[..n].to_vec()).collect(),
        Some(pi) => {
            let inv = aug.basis[pi][n].invert()?;
            let part: Vec<FieldElem> = aug.basis[pi].iter().map(|c| c * &inv).collect();
            for (i, v) in aug.basis.iter().enumerate() {
                if i != pi {
                    let f = &v[n];
                    space.basis.push(v[..n].iter().zip(&part).map(|(a, p)| a - &(f * p)).collect());
                }
            }
            space.particular = Some(part[..n].to_vec());
        }
    }
    for v in &space.basis {
        if !DiffSystem::new(s.a.clone()).is_solution(v) {
            return Err(Error::VerificationFailed("homogeneous system solution".into()));
        }
    }
    if let Some(p) = &space.particular {
        if !s.is_solution(p) {
            return Err(Error::VerificationFailed("particular system solution".into()));
        }
    }
    Ok(space)
}

fn solve_homogeneous_system(s: &DiffSystem, opts: &RatsolOptions) -> Result<SolutionSpace> {
    let n = s.size();
    let (l, t) = cyclic_vector_with(s, opts.cyclic)?;
    // The cyclic vector has polynomial entries, so z = u·Y is regular wherever A is.
    let singular = s.a.entries().iter().fold(ZtPoly::one(), |acc, e| lcm(&acc, e.den_z()));
    let scalar = solve_scalar(&l, None, opts, Some(&singular))?;
    let mut basis = Vec::with_capacity(scalar.basis.len());
    for z in scalar.scalar_basis() {
        let mut derivs = Vec::with_capacity(n);
        let mut cur = z;
        for _ in 0..n {
            let next = cur.d_x();
            derivs.push(cur);
            cur = next;
        }
        let y = t.apply(&derivs);
        if !s.is_solution(&y) {
            return Err(Error::VerificationFailed("back-transformed system solution".into()));
        }
        basis.push(y);
    }
    Ok(SolutionSpace { basis, ..scalar })
}

/// Human-readable name of a place, for diagnostics.
pub fn describe_place(p: &Place) -> String {
    match p {
        Place::Infinity => "infinity".to_string(),
        Place::Finite(q) => {
            let (z, _) = crate::field::clear_kpoly(q);
            show(&z.primitive_part())
        }
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
    fn op(v: Vec<FieldElem>) -> OreOperator {
        OreOperator::new(v)
    }
    fn bessel() -> OreOperator {
        let ix = x().invert().unwrap();
        op(vec![&c(1) - &(&(&t() * &t()) * &(&ix * &ix)), ix, c(1)])
    }

    #[test]
    fn second_derivative_basis() {
        let sp = rational_solutions_scalar(&op(vec![c(0), c(0), c(1)]), None).unwrap();
        assert_eq!(sp.scalar_basis(), vec![c(1), x()]);
        assert_eq!(sp.degree_bound, 1);
    }

    #[test]
    fn euler_pole() {
        // x ∂ + 3 has the solution x^{-3}
        let l = op(vec![c(3), x()]);
        let d = universal_denominator(&l, None, 64).unwrap();
        assert_eq!(d, to_k(&FieldElem::x().pow(3).num_z().clone()));
        let sp = rational_solutions_scalar(&l, None).unwrap();
        assert_eq!(sp.dimension(), 1);
        assert_eq!(sp.scalar_basis()[0], x().pow(3).invert().unwrap());
    }

    #[test]
    fn antiderivative_of_inverse_square() {
        let rhs = x().pow(2).invert().unwrap();
        let d = universal_denominator(&OreOperator::d(), Some(&rhs), 64).unwrap();
        assert_eq!(d.degree(), Some(1));
        let sp = rational_solutions_scalar(&OreOperator::d(), Some(&rhs)).unwrap();
        assert_eq!(sp.scalar_particular().unwrap(), -(x().invert().unwrap()));
        assert_eq!(sp.scalar_basis(), vec![c(1)]);
        // 1/x has no rational antiderivative
        let no = rational_solutions_scalar(&OreOperator::d(), Some(&x().invert().unwrap())).unwrap();
        assert!(!no.is_solvable());
    }

    #[test]
    fn bessel_indicial_and_lommel_rhs() {
        let n = indicial_data(&bessel(), &Place::Finite(to_k(x().num_z()))).unwrap();
        assert!(integer_roots(&n).is_empty());
        for mu in 1..=3u32 {
            let b = x().pow(mu - 1);
            let sp = rational_solutions_scalar(&bessel(), Some(&b)).unwrap();
            assert_eq!(sp.dimension(), 0);
            assert!(!sp.is_solvable());
            assert!(sp.denominator.degree().unwrap_or(0) <= 1);
        }
    }

    #[test]
    fn forward_image_is_recovered() {
        let g = &(&t() * &x()) / &(&x() + &c(1));
        let b = bessel().apply(&g);
        let sp = rational_solutions_scalar(&bessel(), Some(&b)).unwrap();
        assert_eq!(bessel().apply(&sp.scalar_particular().unwrap()), b);
    }

    #[test]
    fn infinity_data() {
        let n = indicial_data(&op(vec![c(0), c(0), c(1)]), &Place::Infinity).unwrap();
        let roots: Vec<i64> = integer_roots(&n).iter().map(|r| r.to_i64().unwrap()).collect();
        assert_eq!(roots, vec![0, 1]);
    }

    #[test]
    fn budget_is_enforced() {
        // x ∂ - 100 has the solution x^100
        let l = op(vec![c(-100), x()]);
        let opts = RatsolOptions { max_degree: 10, ..Default::default() };
        assert!(matches!(
            rational_solutions_scalar_with(&l, None, &opts),
            Err(Error::BudgetExceeded { needed: 100, cap: 10 })
        ));
    }

    #[test]
    fn system_examples() {
        let s = DiffSystem::new(Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(0), c(0)]]).unwrap());
        let sp = rational_solutions_system(&s).unwrap();
        assert_eq!(sp.dimension(), 2);
        let companion = op(vec![-t(), x()]).companion().unwrap();
        assert_eq!(rational_solutions_system(&companion).unwrap().dimension(), 0);
        let inh = DiffSystem::with_rhs(Matrix::from_rows(vec![vec![c(0)]]).unwrap(), vec![c(1)]).unwrap();
        let sp = rational_solutions_system(&inh).unwrap();
        assert!(inh.is_solution(sp.particular.as_ref().unwrap()));
    }
}
