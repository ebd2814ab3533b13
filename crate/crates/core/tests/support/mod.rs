//! Shared generators and independent oracles for the integration suites.
#![allow(dead_code)]

use hyperdiff_core::field::{KPoly, ParamScalar, Poly, Ring};
use hyperdiff_core::linsys::{series_fundamental, DiffSystem, SeriesMatrix};
use hyperdiff_core::{FieldElem, Matrix, MatrixK, OreOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn x() -> FieldElem {
    FieldElem::x()
}

pub fn t() -> FieldElem {
    FieldElem::t()
}

pub fn c(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

pub fn op(coeffs: Vec<FieldElem>) -> OreOperator {
    OreOperator::new(coeffs)
}

/// `x²∂² + x∂ + (x² - t²)`.
pub fn bessel() -> OreOperator {
    op(vec![&(&x() * &x()) - &(&t() * &t()), x(), &x() * &x()])
}

/// `∂² + (1/x)∂ + (1 - t²/x²)`, the monic form used by the criterion.
pub fn bessel_monic() -> OreOperator {
    let x2 = &x() * &x();
    op(vec![&c(1) - &(&(&t() * &t()) / &x2), &c(1) / &x(), c(1)])
}

pub fn matrix(rows: Vec<Vec<FieldElem>>) -> MatrixK {
    MatrixK::from_rows(rows).unwrap()
}

/// Polynomial in `x` and `t` with coefficients in `-3..=3`.
pub fn random_poly(rng: &mut ChaCha8Rng, x_deg: u32, t_deg: u32) -> FieldElem {
    let mut acc = c(0);
    for i in 0..=x_deg {
        for j in 0..=t_deg {
            let k: i64 = rng.gen_range(-3..=3);
            if k != 0 {
                acc = &acc + &(&c(k) * &(&x().pow(i) * &t().pow(j)));
            }
        }
    }
    acc
}

/// Rational function with numerator and denominator of degree at most
/// `x_deg` in `x` and `t_deg` in `t`.
pub fn random_rational(rng: &mut ChaCha8Rng, x_deg: u32, t_deg: u32) -> FieldElem {
    let num = random_poly(rng, x_deg, t_deg);
    loop {
        let den = random_poly(rng, x_deg, t_deg);
        if !den.is_zero() {
            return &num / &den;
        }
    }
}

/// Invertible 2x2 matrix with entries of degree at most one in `x` and `t`.
pub fn random_gauge(rng: &mut ChaCha8Rng) -> MatrixK {
    loop {
        let entries = (0..4).map(|_| random_poly(rng, 1, 1)).collect();
        let p = MatrixK::new(2, 2, entries).unwrap();
        if !p.determinant().is_zero() {
            return p;
        }
    }
}

/// 2x2 matrix of small rational functions, all regular at `x = 0`.
pub fn random_regular_matrix(rng: &mut ChaCha8Rng) -> MatrixK {
    let mut entries = Vec::new();
    while entries.len() < 4 {
        let num = random_poly(rng, 2, 1);
        let den = &random_poly(rng, 1, 0) + &c(1);
        if den.is_zero() {
            continue;
        }
        let f = &num / &den;
        if f.eval_at_x(&ParamScalar::zero()).is_ok() {
            entries.push(f);
        }
    }
    MatrixK::new(2, 2, entries).unwrap()
}

fn kpoly_lcm(a: &KPoly, b: &KPoly) -> KPoly {
    let g = a.gcd_monic(b);
    (a * &b.div_rem(&g).0).monic()
}

/// Exhaustive ansatz: the dimension of `{P : deg P ≤ n, L(P/d) = 0}` over `k`,
/// computed from `L` applied to each monomial `x^i/d` and plain linear algebra.
pub fn ansatz_dimension(l: &OreOperator, d: &KPoly, n: usize) -> usize {
    let inv_d = FieldElem::from_kpolys(&KPoly::one(), d).unwrap();
    let images: Vec<FieldElem> = (0..=n).map(|i| l.apply(&(&x().pow(i as u32) * &inv_d))).collect();
    let common = images.iter().fold(KPoly::one(), |acc, f| kpoly_lcm(&acc, &f.denominator()));
    let nums: Vec<KPoly> = images
        .iter()
        .map(|f| &f.numerator() * &common.div_rem(&f.denominator()).0)
        .collect();
    let rows = nums.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    if rows == 0 {
        return n + 1;
    }
    let m = Matrix::from_fn(rows, n + 1, |i, j| nums[j].coeff(i));
    n + 1 - m.rank()
}

pub type Series = SeriesMatrix;

pub fn fundamental(a: &MatrixK, order: usize) -> Series {
    series_fundamental(&DiffSystem::new(a.clone()), &ParamScalar::zero(), order).unwrap()
}

/// Constant coefficient matrix of `p` at `x = 0`.
pub fn value_at_zero(p: &MatrixK) -> Matrix<ParamScalar> {
    Matrix::from_fn(p.rows(), p.cols(), |i, j| p.get(i, j).eval_at_x(&ParamScalar::zero()).unwrap())
}

pub fn poly_k(coeffs: &[ParamScalar]) -> KPoly {
    Poly::new(coeffs.to_vec())
}

/// Operators with coefficients of degree at most three in `x`, with the
/// dimension of their rational solution space worked out by hand.
pub fn corpus() -> Vec<(OreOperator, usize)> {
    let (x, t) = (x(), t());
    let x2 = &x * &x;
    let xt = &x - &t;
    let mut v = vec![
        (op(vec![c(0), c(1)]), 1),
        (op(vec![c(0), c(0), c(1)]), 2),
        (op(vec![c(0), c(0), c(0), c(1)]), 3),
        (op(vec![c(-3), x.clone()]), 1),
        (op(vec![c(3), x.clone()]), 1),
        (op(vec![c(-2), c(0), x2.clone()]), 2),
        (op(vec![c(-1), x.clone(), x2.clone()]), 2),
        // exponent 2 twice: x² and x² log x
        (op(vec![c(4), &c(-3) * &x, x2.clone()]), 1),
        (bessel(), 0),
        (op(vec![-t.clone(), x.clone()]), 0),
        (op(vec![c(2), &x + &t]), 1),
        (op(vec![c(-1), t.clone()]), 0),
        (op(vec![&c(-2) * &x, &x2 + &c(1)]), 1),
        (op(vec![&c(2) * &x, &x2 + &c(1)]), 1),
        (op(vec![&c(1) - &(&c(2) * &x), &x2 - &x]), 1),
        (op(vec![c(0), c(1), x.clone()]), 1),
        (op(vec![c(0), c(2), x.clone()]), 2),
        (op(vec![-t.clone(), &x + &c(1)]), 0),
        (op(vec![c(0), &(&c(-1) * &t) * &x, x2.clone()]), 1),
        (op(vec![c(0), c(0), c(3), x.clone()]), 3),
        (op(vec![c(-1), xt.clone()]), 1),
        (op(vec![c(-2), c(0), &xt * &xt]), 2),
        (op(vec![c(1), &x2 * &x]), 0),
        (op(vec![c(-1), c(1)]), 0),
        (op(vec![c(0), c(-1), x.clone()]), 2),
        // (x - 1)(x + 2) ∂ - (2x + 1): solution (x - 1)(x + 2)
        (op(vec![&c(-1) - &(&c(2) * &x), &(&x - &c(1)) * &(&x + &c(2))]), 1),
        // t-dependent Euler operator with exponents -1 and 2
        (op(vec![&c(-2) * &t, c(0), &t * &x2]), 2),
    ];
    let mut r = rng(2024);
    for _ in 0..5 {
        let coeffs = (0..3).map(|_| random_poly(&mut r, 2, 1)).collect();
        let l = op(coeffs);
        if l.order() == Some(2) {
            v.push((l, usize::MAX));
        }
    }
    v
}

/// Operators used for the forward-image and split controls.
pub fn control_operators() -> Vec<OreOperator> {
    let (x, t) = (x(), t());
    vec![
        bessel(),
        op(vec![c(0), c(0), c(1)]),
        op(vec![c(-1), &x + &t]),
        op(vec![-t.clone(), x.clone(), &(&x * &x) + &c(1)]),
        op(vec![c(0), -t.clone(), c(0), c(1)]),
    ]
}

/// Parameter-free systems, isomonodromic by construction.
pub fn t_free_systems() -> Vec<MatrixK> {
    let inv_x = &c(1) / &x();
    vec![
        matrix(vec![vec![c(0), c(1)], vec![c(0), c(0)]]),
        matrix(vec![vec![inv_x.clone(), c(0)], vec![c(0), c(0)]]),
        matrix(vec![vec![c(0), c(1)], vec![c(0), -inv_x]]),
    ]
}
