use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, ParamScalar};
use crate::matrix::{Matrix, MatrixK};

use super::DiffSystem;

type MatrixC = Matrix<ParamScalar>;

/// Truncated matrix power series `Σ_{m < order} U_m (x - x0)^m` with
/// coefficients in `k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesMatrix {
    pub x0: ParamScalar,
    pub coeffs: Vec<MatrixC>,
}

/// First `n` Taylor coefficients of `f` at `x = x0`.
pub fn expand_at(f: &FieldElem, x0: &ParamScalar, n: usize) -> Result<Vec<ParamScalar>> {
    let num = f.numerator().taylor_shift(x0);
    let den = f.denominator().taylor_shift(x0);
    num.series_div(&den, n)
        .ok_or_else(|| Error::SingularExpansionPoint(x0.to_string()))
}

/// Fundamental matrix of `∂Y = AY` normalized by `U(x0) = I`, to `order` terms.
///
/// Fails when some entry of `A` has a pole at `x0`.
pub fn series_fundamental(s: &DiffSystem, x0: &ParamScalar, order: usize) -> Result<SeriesMatrix> {
    let a = SeriesMatrix::from_matrix(&s.a, x0, order)?;
    let n = s.size();
    let mut u: Vec<MatrixC> = Vec::with_capacity(order);
    if order > 0 {
        u.push(MatrixC::identity(n));
    }
    for m in 0..order.saturating_sub(1) {
        let mut acc = MatrixC::zeros(n, n);
        for j in 0..=m {
            acc = acc.add(&a.coeffs[j].mul(&u[m - j]));
        }
        let inv = ParamScalar::from_int(m as i64 + 1).inv_ref().unwrap();
        u.push(acc.scale(&inv));
    }
    Ok(SeriesMatrix { x0: x0.clone(), coeffs: u })
}

impl SeriesMatrix {
    pub fn from_matrix(a: &MatrixK, x0: &ParamScalar, order: usize) -> Result<Self> {
        let mut coeffs = vec![MatrixC::zeros(a.rows(), a.cols()); order];
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                for (m, c) in expand_at(a.get(i, j), x0, order)?.into_iter().enumerate() {
                    coeffs[m].set(i, j, c);
                }
            }
        }
        Ok(SeriesMatrix { x0: x0.clone(), coeffs })
    }

    /// A series whose only term is the constant matrix `c`.
    pub fn constant(c: MatrixC, x0: &ParamScalar, order: usize) -> Self {
        let (r, k) = (c.rows(), c.cols());
        let mut coeffs = vec![MatrixC::zeros(r, k); order];
        if order > 0 {
            coeffs[0] = c;
        }
        SeriesMatrix { x0: x0.clone(), coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn rows(&self) -> usize {
        self.coeffs.first().map_or(0, |c| c.rows())
    }

    pub fn cols(&self) -> usize {
        self.coeffs.first().map_or(0, |c| c.cols())
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&MatrixC, &MatrixC) -> MatrixC) -> Self {
        let n = self.order().min(rhs.order());
        SeriesMatrix {
            x0: self.x0.clone(),
            coeffs: (0..n).map(|m| f(&self.coeffs[m], &rhs.coeffs[m])).collect(),
        }
    }

    fn map(&self, f: impl Fn(&MatrixC) -> MatrixC) -> Self {
        SeriesMatrix { x0: self.x0.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.sub(b))
    }

    pub fn transpose(&self) -> Self {
        self.map(|c| c.transpose())
    }

    pub fn d_t(&self) -> Self {
        self.map(|c| c.d_t())
    }

    pub fn slice(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        self.map(|c| c.slice(r0, c0, nr, nc))
    }

    /// Column-stacked vectorization, as an `(rows*cols) x 1` series.
    pub fn vec(&self) -> Self {
        self.map(|c| MatrixC::column(c.vec()))
    }

    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.order().min(b.order()).min(c.order()).min(d.order());
        SeriesMatrix {
            x0: a.x0.clone(),
            coeffs: (0..n)
                .map(|m| MatrixC::block(&a.coeffs[m], &b.coeffs[m], &c.coeffs[m], &d.coeffs[m]))
                .collect(),
        }
    }

    /// Horizontal concatenation.
    pub fn hcat(parts: &[SeriesMatrix]) -> Self {
        let n = parts.iter().map(|p| p.order()).min().unwrap_or(0);
        let rows = parts.first().map_or(0, |p| p.rows());
        let coeffs = (0..n)
            .map(|m| {
                let cols: Vec<Vec<ParamScalar>> = parts
                    .iter()
                    .flat_map(|p| (0..p.cols()).map(move |j| p.coeffs[m].col(j)))
                    .collect();
                MatrixC::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
            })
            .collect();
        SeriesMatrix { x0: parts[0].x0.clone(), coeffs }
    }

    /// Truncated product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = MatrixC::zeros(self.rows(), rhs.cols());
            for j in 0..=m {
                acc = acc.add(&self.coeffs[j].mul(&rhs.coeffs[m - j]));
            }
            coeffs.push(acc);
        }
        SeriesMatrix { x0: self.x0.clone(), coeffs }
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = MatrixC::zeros(self.rows() * rhs.rows(), self.cols() * rhs.cols());
            for j in 0..=m {
                acc = acc.add(&self.coeffs[j].kron(&rhs.coeffs[m - j]));
            }
            coeffs.push(acc);
        }
        SeriesMatrix { x0: self.x0.clone(), coeffs }
    }

    /// Inverse as a power series; `None` when the constant term is singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.order();
        let v0 = self.coeffs.first()?.inverse()?;
        let mut v = vec![v0.clone()];
        for m in 1..n {
            let mut acc = MatrixC::zeros(self.rows(), self.rows());
            for j in 1..=m {
                acc = acc.add(&self.coeffs[j].mul(&v[m - j]));
            }
            v.push(v0.mul(&acc).neg());
        }
        Some(SeriesMatrix { x0: self.x0.clone(), coeffs: v })
    }

    /// Derivative in `x`; loses the last term.
    pub fn d_x(&self) -> Self {
        let coeffs = (1..self.order())
            .map(|m| self.coeffs[m].scale(&ParamScalar::from_int(m as i64)))
            .collect();
        SeriesMatrix { x0: self.x0.clone(), coeffs }
    }

    /// Whether `∂U = AU` holds modulo `(x - x0)^{order - 1}`.
    pub fn solves(&self, a: &MatrixK) -> Result<bool> {
        let a = SeriesMatrix::from_matrix(a, &self.x0, self.order())?;
        let lhs = self.d_x();
        let rhs = a.mul(self);
        Ok((0..lhs.order()).all(|m| lhs.coeffs[m] == rhs.coeffs[m]))
    }

    /// Whether the constant term is invertible.
    pub fn is_fundamental(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_square() && c.inverse().is_some())
    }
}
