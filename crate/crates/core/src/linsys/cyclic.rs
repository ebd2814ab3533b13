use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Ring};
use crate::matrix::MatrixK;
use crate::ore::OreOperator;

use super::DiffSystem;

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

#[derive(Clone, Copy, Debug)]
pub struct CyclicOptions {
    pub seed: u64,
    /// Total number of candidate vectors tried before giving up.
    pub budget: usize,
}

impl Default for CyclicOptions {
    fn default() -> Self {
        CyclicOptions { seed: DEFAULT_SEED, budget: 64 }
    }
}

/// Finds a cyclic vector with default options.
pub fn cyclic_vector(s: &DiffSystem) -> Result<(OreOperator, MatrixK)> {
    cyclic_vector_with(s, CyclicOptions::default())
}

/// Returns `(L, T)` with `L` monic of order `n` such that `Y = T Z` sends
/// solutions `Z = (z, z', ..., z^{(n-1)})` of the companion system of `L` to
/// solutions of `s`, and conversely.
///
/// For a row vector `u` set `u_0 = u` and `u_{i+1} = ∂u_i + u_i A`. Then
/// `z = u·Y` has `z^{(i)} = u_i·Y`, so with `W = (u_0; ...; u_{n-1})` invertible
/// we get `T = W⁻¹` and `z^{(n)} = u_n W⁻¹ Z`.
///
/// Candidates are the standard basis vectors followed by pseudo-random vectors
/// with small polynomial entries drawn from a seeded generator.
pub fn cyclic_vector_with(s: &DiffSystem, opts: CyclicOptions) -> Result<(OreOperator, MatrixK)> {
    let n = s.size();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty system".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..opts.budget {
        let u: Vec<FieldElem> = if attempt < n {
            (0..n).map(|j| if j == attempt { FieldElem::one() } else { FieldElem::zero() }).collect()
        } else {
            (0..n).map(|_| random_entry(&mut rng)).collect()
        };
        if let Some(found) = try_vector(s, u) {
            return Ok(found);
        }
    }
    Err(Error::CyclicSearchExhausted { attempts: opts.budget })
}

fn random_entry(rng: &mut ChaCha8Rng) -> FieldElem {
    let x = FieldElem::x();
    let mut acc = FieldElem::zero();
    for _ in 0..3 {
        acc = &(&acc * &x) + &FieldElem::from_int(rng.gen_range(-3..=3));
    }
    acc
}

fn next_row(u: &[FieldElem], a: &MatrixK) -> Vec<FieldElem> {
    (0..u.len())
        .map(|j| {
            let mut acc = u[j].d_x();
            for (k, uk) in u.iter().enumerate() {
                let akj = a.get(k, j);
                if !uk.is_zero() && !akj.is_zero() {
                    acc = &acc + &(uk * akj);
                }
            }
            acc
        })
        .collect()
}

fn try_vector(s: &DiffSystem, u: Vec<FieldElem>) -> Option<(OreOperator, MatrixK)> {
    let n = s.size();
    if u.iter().all(|e| e.is_zero()) {
        return None;
    }
    let mut rows = vec![u];
    for _ in 0..n {
        let next = next_row(rows.last().unwrap(), &s.a);
        rows.push(next);
    }
    let un = rows.pop().unwrap();
    let w = MatrixK::from_rows(rows).ok()?;
    let t = w.inverse()?;
    let c = MatrixK::from_rows(vec![un]).ok()?.mul(&t);
    let mut coeffs: Vec<FieldElem> = (0..n).map(|i| -c.get(0, i)).collect();
    coeffs.push(FieldElem::one());
    Some((OreOperator::new(coeffs), t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsys::gauge;

    fn c(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    #[test]
    fn companion_roundtrip() {
        let x = FieldElem::x();
        let t = FieldElem::t();
        let l = OreOperator::new(vec![&(&t * &t) / &(&x * &x), x.invert().unwrap(), c(1)]);
        let comp = l.companion().unwrap();
        let (found, tm) = cyclic_vector(&comp).unwrap();
        assert_eq!(found, l);
        assert_eq!(tm, MatrixK::identity(2));
    }

    #[test]
    fn gauge_links_system_and_companion() {
        let x = FieldElem::x();
        let s = DiffSystem::new(
            MatrixK::from_rows(vec![vec![x.clone(), c(1)], vec![c(0), c(2)]]).unwrap(),
        );
        let (l, tm) = cyclic_vector(&s).unwrap();
        // Y = T Z, so gauging by T yields the companion system.
        assert_eq!(gauge(&s, &tm).unwrap().a, l.companion().unwrap().a);
    }

    #[test]
    fn scalar_multiple_of_identity_needs_no_search() {
        // Every 1x1 system is cyclic with u = 1.
        let s = DiffSystem::new(MatrixK::from_rows(vec![vec![FieldElem::t()]]).unwrap());
        let (l, _) = cyclic_vector(&s).unwrap();
        assert_eq!(l, OreOperator::new(vec![-FieldElem::t(), c(1)]));
    }

    #[test]
    fn constant_diagonal_needs_random_vector() {
        // A = diag(1, 2): e_0 and e_1 span invariant lines, so only mixed vectors work.
        let s = DiffSystem::new(MatrixK::from_rows(vec![vec![c(1), c(0)], vec![c(0), c(2)]]).unwrap());
        let (l, tm) = cyclic_vector(&s).unwrap();
        assert_eq!(l.order(), Some(2));
        assert_eq!(gauge(&s, &tm).unwrap().a, l.companion().unwrap().a);
        let zero = DiffSystem::new(MatrixK::zeros(2, 2));
        assert_eq!(
            cyclic_vector_with(&zero, CyclicOptions { seed: 1, budget: 2 }).unwrap_err(),
            Error::CyclicSearchExhausted { attempts: 2 }
        );
    }
}
