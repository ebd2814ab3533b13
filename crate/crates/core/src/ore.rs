//! The ring `K[∂]` of linear differential operators, `∂ = d/dx`.
//!
//! Multiplication follows the commutation rule `∂·a = a·∂ + ∂(a)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Ring};
use crate::linsys::DiffSystem;
use crate::matrix::MatrixK;

/// `a_0 + a_1 ∂ + ... + a_n ∂^n`, coefficients stored low-to-high.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OreOperator {
    coeffs: Vec<FieldElem>,
}

impl OreOperator {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OreOperator { coeffs }
    }

    pub fn zero() -> Self {
        OreOperator { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_elem(FieldElem::one())
    }

    /// The derivation `∂` itself.
    pub fn d() -> Self {
        Self::new(vec![FieldElem::zero(), FieldElem::one()])
    }

    /// Multiplication operator by `a`.
    pub fn from_elem(a: FieldElem) -> Self {
        Self::new(vec![a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order, or `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Left multiplication by a field element: `a · L`.
    pub fn scale_left(&self, a: &FieldElem) -> Self {
        Self::new(self.coeffs.iter().map(|c| a * c).collect())
    }

    /// `∂ · self`
    fn d_times(&self) -> Self {
        let mut out = vec![FieldElem::zero(); self.coeffs.len() + 1];
        for (j, m) in self.coeffs.iter().enumerate() {
            out[j] = &out[j] + &m.d_x();
            out[j + 1] = &out[j + 1] + m;
        }
        Self::new(out)
    }

    /// Product in `K[∂]`.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut acc = vec![FieldElem::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        let mut power = rhs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                for (j, m) in power.coeffs.iter().enumerate() {
                    acc[j] = &acc[j] + &(a * m);
                }
            }
            if i + 1 < self.coeffs.len() {
                power = power.d_times();
            }
        }
        Self::new(acc)
    }

    /// `L(f) = Σ a_i ∂^i f`.
    pub fn apply(&self, f: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero();
        let mut deriv = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc = &acc + &(a * &deriv);
            }
            if i + 1 < self.coeffs.len() {
                deriv = deriv.d_x();
            }
        }
        acc
    }

    /// Right Euclidean division: `self = q · rhs + r` with `ord r < ord rhs`.
    pub fn right_divide(&self, rhs: &Self) -> Result<(Self, Self)> {
        let n = rhs.order().ok_or(Error::DivisionByZeroOperator)?;
        let lc_inv = rhs.leading_coeff().unwrap().invert()?;
        let mut quotient = vec![FieldElem::zero(); self.coeffs.len().saturating_sub(n)];
        let mut rem = self.clone();
        while let Some(m) = rem.order() {
            if m < n {
                break;
            }
            let c = rem.leading_coeff().unwrap() * &lc_inv;
            let mut mono = vec![FieldElem::zero(); m - n + 1];
            mono[m - n] = c.clone();
            let term = Self::new(mono).mul(rhs);
            rem = rem.sub(&term);
            debug_assert!(rem.order().is_none_or(|r| r < m));
            quotient[m - n] = &quotient[m - n] + &c;
        }
        Ok((Self::new(quotient), rem))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lc = self.leading_coeff().ok_or(Error::OrderZero)?;
        let inv = lc.invert()?;
        Ok(self.scale_left(&inv))
    }

    /// Companion system `∂Y = A_L Y` of the monic normalization.
    ///
    /// `f` solves `L(f) = 0` iff `(f, ∂f, ..., ∂^{n-1} f)` solves the system.
    pub fn companion(&self) -> Result<DiffSystem> {
        let n = match self.order() {
            None | Some(0) => return Err(Error::OrderZero),
            Some(n) => n,
        };
        let m = self.monic()?;
        let a = MatrixK::from_fn(n, n, |i, j| {
            if i + 1 < n {
                if j == i + 1 {
                    FieldElem::one()
                } else {
                    FieldElem::zero()
                }
            } else {
                -&m.coeffs[j]
            }
        });
        Ok(DiffSystem::new(a))
    }

    /// Operator whose monic normalization has the given companion matrix, if `a`
    /// is in companion form.
    pub fn from_companion(a: &MatrixK) -> Option<Self> {
        let n = a.rows();
        if !a.is_square() || n == 0 {
            return None;
        }
        for i in 0..n - 1 {
            for j in 0..n {
                let want = if j == i + 1 { FieldElem::one() } else { FieldElem::zero() };
                if *a.get(i, j) != want {
                    return None;
                }
            }
        }
        let mut coeffs: Vec<FieldElem> = (0..n).map(|j| -a.get(n - 1, j)).collect();
        coeffs.push(FieldElem::one());
        Some(Self::new(coeffs))
    }

    /// Whether every coefficient is free of `t`.
    pub fn is_free_of_t(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_free_of_t())
    }
}

impl fmt::Display for OreOperator {
    /// Prints in the operator input grammar, highest order first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let d = match i {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{i}"),
            };
            match (d.is_empty(), c.is_one()) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => f.write_str(&d)?,
                (false, false) => write!(f, "({c})*{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OreOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
