//! Linear differential systems `∂Y = AY (+ b)` and module constructions.
//!
//! Vectorization is column-stacking throughout: for `Z ∈ K^{n2 x n1}`,
//! `vec(A2 Z) = (I_{n1} ⊗ A2) vec Z` and `vec(Z A1) = (A1ᵀ ⊗ I_{n2}) vec Z`.
//! Gauge transformations use the convention `Y = P X`.

mod cyclic;
mod series;

pub use cyclic::{cyclic_vector, cyclic_vector_with, CyclicOptions, DEFAULT_SEED};
pub use series::{expand_at, series_fundamental, SeriesMatrix};

use crate::error::{Error, Result};
use crate::field::{FieldElem, Ring};
use crate::matrix::MatrixK;
use crate::ore::OreOperator;

/// `∂Y = A Y + rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffSystem {
    pub a: MatrixK,
    pub rhs: Option<Vec<FieldElem>>,
}

impl DiffSystem {
    /// Homogeneous system. Panics if `a` is not square.
    pub fn new(a: MatrixK) -> Self {
        assert!(a.is_square(), "system matrix must be square");
        DiffSystem { a, rhs: None }
    }

    pub fn try_new(a: MatrixK) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "system matrix is {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        Ok(DiffSystem { a, rhs: None })
    }

    pub fn with_rhs(a: MatrixK, rhs: Vec<FieldElem>) -> Result<Self> {
        let s = Self::try_new(a)?;
        if rhs.len() != s.size() {
            return Err(Error::DimensionMismatch(format!(
                "rhs of length {} for a system of size {}",
                rhs.len(),
                s.size()
            )));
        }
        Ok(DiffSystem { rhs: Some(rhs), ..s })
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.as_ref().is_none_or(|b| b.iter().all(|e| e.is_zero()))
    }

    fn require_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Homogeneous system of size `n + 1`: `[[A, b], [0, 0]]`. Solutions with last
    /// coordinate `1` are exactly the solutions of the inhomogeneous system.
    pub fn augmented(&self) -> DiffSystem {
        match &self.rhs {
            None => self.clone(),
            Some(b) => {
                let n = self.size();
                let a = MatrixK::block(&self.a, &MatrixK::column(b.clone()), &MatrixK::zeros(1, n), &MatrixK::zeros(1, 1));
                DiffSystem::new(a)
            }
        }
    }

    /// `∂Y − AY − b`.
    pub fn residual(&self, y: &[FieldElem]) -> Vec<FieldElem> {
        let ay = self.a.apply(y);
        y.iter()
            .zip(ay)
            .enumerate()
            .map(|(i, (yi, ayi))| {
                let r = &yi.d_x() - &ayi;
                match &self.rhs {
                    Some(b) => &r - &b[i],
                    None => r,
                }
            })
            .collect()
    }

    pub fn is_solution(&self, y: &[FieldElem]) -> bool {
        y.len() == self.size() && self.residual(y).iter().all(|e| e.is_zero())
    }
}

/// Block upper-triangular system `∂Y = [[A2, C], [0, A1]] Y` for an extension
/// `0 → L2 → U → L1 → 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionSystem {
    pub a2: MatrixK,
    pub a1: MatrixK,
    pub c: MatrixK,
}

impl ExtensionSystem {
    pub fn new(a2: MatrixK, a1: MatrixK, c: MatrixK) -> Result<Self> {
        if !a2.is_square() || !a1.is_square() || a2.rows() == 0 || a1.rows() == 0 {
            return Err(Error::DimensionMismatch("diagonal blocks must be square and nonempty".into()));
        }
        if c.rows() != a2.rows() || c.cols() != a1.rows() {
            return Err(Error::DimensionMismatch(format!(
                "extension block is {}x{}, expected {}x{}",
                c.rows(),
                c.cols(),
                a2.rows(),
                a1.rows()
            )));
        }
        Ok(ExtensionSystem { a2, a1, c })
    }

    pub fn n2(&self) -> usize {
        self.a2.rows()
    }

    pub fn n1(&self) -> usize {
        self.a1.rows()
    }

    /// The full `(n2 + n1)`-square block matrix.
    pub fn full_system(&self) -> DiffSystem {
        DiffSystem::new(MatrixK::block(&self.a2, &self.c, &MatrixK::zeros(self.n1(), self.n2()), &self.a1))
    }
}

/// `diag(A1, A2)`.
pub fn direct_sum(s1: &DiffSystem, s2: &DiffSystem) -> Result<DiffSystem> {
    s1.require_homogeneous()?;
    s2.require_homogeneous()?;
    let (n1, n2) = (s1.size(), s2.size());
    Ok(DiffSystem::new(MatrixK::block(&s1.a, &MatrixK::zeros(n1, n2), &MatrixK::zeros(n2, n1), &s2.a)))
}

/// Kronecker sum `A1 ⊗ I + I ⊗ A2`; `U1 ⊗ U2` is a fundamental matrix.
pub fn tensor(s1: &DiffSystem, s2: &DiffSystem) -> Result<DiffSystem> {
    s1.require_homogeneous()?;
    s2.require_homogeneous()?;
    let i1 = MatrixK::identity(s1.size());
    let i2 = MatrixK::identity(s2.size());
    Ok(DiffSystem::new(s1.a.kron(&i2).add(&i1.kron(&s2.a))))
}

/// `−Aᵀ`; `U^{-T}` is a fundamental matrix.
pub fn dual(s: &DiffSystem) -> Result<DiffSystem> {
    s.require_homogeneous()?;
    Ok(DiffSystem::new(s.a.transpose().neg()))
}

/// Internal Hom on `vec(Z)`, `Z ∈ K^{n2 x n1}`: realizes `∂Z = A2 Z − Z A1`
/// with matrix `I_{n1} ⊗ A2 − A1ᵀ ⊗ I_{n2}`.
pub fn hom(s1: &DiffSystem, s2: &DiffSystem) -> Result<DiffSystem> {
    s1.require_homogeneous()?;
    s2.require_homogeneous()?;
    Ok(DiffSystem::new(hom_matrix(&s1.a, &s2.a)))
}

fn hom_matrix(a1: &MatrixK, a2: &MatrixK) -> MatrixK {
    let i1 = MatrixK::identity(a1.rows());
    let i2 = MatrixK::identity(a2.rows());
    i1.kron(a2).sub(&a1.transpose().kron(&i2))
}

/// Prolongation `[[A, δA], [0, A]]`.
pub fn prolong(s: &DiffSystem) -> Result<DiffSystem> {
    s.require_homogeneous()?;
    let n = s.size();
    Ok(DiffSystem::new(MatrixK::block(&s.a, &s.a.d_t(), &MatrixK::zeros(n, n), &s.a)))
}

/// The reduction of an extension: size `n1·n2 + 1`, matrix `[[H, vec C], [0, 0]]`
/// with `H = I_{n1} ⊗ A2 − A1ᵀ ⊗ I_{n2}`.
///
/// Solutions `(vec F, λ)` are exactly the pairs with `∂F = A2 F − F A1 + λ C`
/// and `∂λ = 0`; the extension splits over `K` iff one exists with `λ ≠ 0`.
pub fn reduce_extension(e: &ExtensionSystem) -> DiffSystem {
    let h = hom_matrix(&e.a1, &e.a2);
    let m = h.rows();
    let a = MatrixK::block(&h, &MatrixK::column(e.c.vec()), &MatrixK::zeros(1, m), &MatrixK::zeros(1, 1));
    DiffSystem::new(a)
}

/// Extension of the trivial module by the module of `L`, for `L(y) = b`:
/// `A2 = companion(L)`, `A1 = [0]`, `C = (b / a_n) e_n`.
pub fn extension_from_scalar(l: &OreOperator, b: &FieldElem) -> Result<ExtensionSystem> {
    if b.is_zero() {
        return Err(Error::ZeroRhs);
    }
    let comp = l.companion()?;
    let n = comp.size();
    let lc = l.leading_coeff().unwrap();
    let scaled = b * &lc.invert()?;
    let mut col = vec![FieldElem::zero(); n];
    col[n - 1] = scaled;
    ExtensionSystem::new(comp.a, MatrixK::zeros(1, 1), MatrixK::column(col))
}

/// Change of basis `Y = P X`: returns `∂X = (P⁻¹AP − P⁻¹∂P) X`.
pub fn gauge(s: &DiffSystem, p: &MatrixK) -> Result<DiffSystem> {
    if !p.is_square() || p.rows() != s.size() {
        return Err(Error::DimensionMismatch("gauge matrix must match the system size".into()));
    }
    let pinv = p.inverse().ok_or(Error::SingularGauge)?;
    let a = pinv.mul(&s.a).mul(p).sub(&pinv.mul(&p.d_x()));
    let rhs = s.rhs.as_ref().map(|b| pinv.apply(b));
    Ok(DiffSystem { a, rhs })
}
