//! Decision procedures for parameterized Galois groups built on rational solutions.
//!
//! A system `∂Y = AY` is isomonodromic when some `B ∈ K^{n x n}` satisfies
//! `∂B − δA = AB − BA`; this is a rational-solution question for the
//! reduction of the extension of `Hom(M, M)` by the class of `δA`. Splitting an
//! extension is likewise a rational-solution question on its reduction. The
//! hypertranscendence criterion for `L(y) = b` combines both.

use std::collections::BTreeMap;
use std::thread;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Ring};
use crate::linsys::{hom, reduce_extension, DiffSystem, ExtensionSystem};
use crate::matrix::MatrixK;
use crate::ore::OreOperator;
use crate::ratsol::{rational_solutions_scalar_with, rational_solutions_system_with, RatsolOptions};

/// Outcome of the isomonodromy test; a witness satisfies `∂B − δA = AB − BA`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegrabilityResult {
    pub solvable: bool,
    pub witness: Option<MatrixK>,
}

/// Outcome of a split test; a witness satisfies `∂F = A2 F − F A1 + C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitResult {
    pub solvable: bool,
    pub witness: Option<MatrixK>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InhomogeneousResult {
    pub solvable: bool,
    pub witness: Option<FieldElem>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DecompositionResult {
    pub constant: Vec<usize>,
    pub non_constant: Vec<usize>,
    pub witnesses: BTreeMap<usize, MatrixK>,
}

/// Whether `B` satisfies `∂B − δA = AB − BA`.
pub fn is_integrability_witness(a: &MatrixK, b: &MatrixK) -> bool {
    b.d_x().sub(&a.d_t()) == a.mul(b).sub(&b.mul(a))
}

/// Whether `F` satisfies `∂F = A2 F − F A1 + C`.
pub fn is_split_witness(e: &ExtensionSystem, f: &MatrixK) -> bool {
    f.d_x() == e.a2.mul(f).sub(&f.mul(&e.a1)).add(&e.c)
}

pub fn split_test_extension(e: &ExtensionSystem, opts: &RatsolOptions) -> Result<SplitResult> {
    let (n2, n1) = (e.n2(), e.n1());
    let red = reduce_extension(e);
    let m = n1 * n2;
    let space = rational_solutions_system_with(&red, opts)?;
    let Some(v) = space.basis.iter().find(|v| !v[m].is_zero()) else {
        return Ok(SplitResult { solvable: false, witness: None });
    };
    let inv = v[m].invert()?;
    let scaled: Vec<FieldElem> = v[..m].iter().map(|c| c * &inv).collect();
    let f = MatrixK::unvec(&scaled, n2, n1);
    if !is_split_witness(e, &f) {
        return Err(Error::VerificationFailed("split witness".into()));
    }
    Ok(SplitResult { solvable: true, witness: Some(f) })
}

/// Decides whether `∂Y = AY` is isomonodromic over `K`.
pub fn isomonodromy_test(s: &DiffSystem, opts: &RatsolOptions) -> Result<IntegrabilityResult> {
    if !s.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let da = s.a.d_t();
    if da.is_zero() {
        let n = s.size();
        return Ok(IntegrabilityResult { solvable: true, witness: Some(MatrixK::zeros(n, n)) });
    }
    let e = ExtensionSystem::new(s.a.clone(), s.a.clone(), da)?;
    let split = split_test_extension(&e, opts)?;
    if let Some(b) = &split.witness {
        if !is_integrability_witness(&s.a, b) {
            return Err(Error::VerificationFailed("integrability witness".into()));
        }
    }
    Ok(IntegrabilityResult { solvable: split.solvable, witness: split.witness })
}

/// Runs the isomonodromy test on every block concurrently. Each block is
/// assumed irreducible; the constant part consists of the isomonodromic blocks.
pub fn decompose_constant_parts(blocks: &[DiffSystem], opts: &RatsolOptions) -> Result<DecompositionResult> {
    let results: Vec<Result<IntegrabilityResult>> = thread::scope(|scope| {
        let handles: Vec<_> = blocks
            .iter()
            .map(|b| scope.spawn(move || isomonodromy_test(b, opts)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("block test panicked")).collect()
    });
    let mut out = DecompositionResult::default();
    for (i, r) in results.into_iter().enumerate() {
        let r = r?;
        match r.witness {
            Some(w) if r.solvable => {
                out.constant.push(i);
                out.witnesses.insert(i, w);
            }
            _ => out.non_constant.push(i),
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadicalComponent {
    pub index: usize,
    pub size: usize,
    pub split: bool,
    pub witness: Option<MatrixK>,
}

/// The unipotent radical of an extension of the trivial module by a direct
/// sum of purely non-constant blocks, as a vector group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadicalReport {
    pub components: Vec<RadicalComponent>,
    pub dimension: usize,
    pub descriptor: String,
    /// Set when two blocks are isomorphic; the dimension is then an upper bound.
    pub approximate: bool,
}

pub const CONSTANT_PART_REFUSAL: &str = "the unipotent radical of an isomonodromic (constant) block \
requires the algorithm of Minchenko, Ovchinnikov and Singer for groups conjugate to constants, \
which is not implemented";

/// `blocks[i]` is `∂Y = A_i Y`, `columns[i]` the matching entries of the
/// extension column. The radical is the sum of the components that do not split.
pub fn unipotent_radical_nc(
    blocks: &[DiffSystem],
    columns: &[Vec<FieldElem>],
    opts: &RatsolOptions,
) -> Result<RadicalReport> {
    if blocks.len() != columns.len() {
        return Err(Error::DimensionMismatch("one extension column per block".into()));
    }
    for (b, c) in blocks.iter().zip(columns) {
        if b.size() != c.len() {
            return Err(Error::DimensionMismatch("extension column does not match block size".into()));
        }
    }
    let decomposition = decompose_constant_parts(blocks, opts)?;
    if let Some(i) = decomposition.constant.first() {
        return Err(Error::OutOfScope(format!("block {i}: {CONSTANT_PART_REFUSAL}")));
    }
    let mut approximate = false;
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if blocks[i].size() == blocks[j].size() {
                let h = hom(&blocks[i], &blocks[j])?;
                if rational_solutions_system_with(&h, opts)?.dimension() > 0 {
                    approximate = true;
                }
            }
        }
    }
    let mut components = Vec::with_capacity(blocks.len());
    for (i, (b, c)) in blocks.iter().zip(columns).enumerate() {
        let e = ExtensionSystem::new(b.a.clone(), MatrixK::zeros(1, 1), MatrixK::column(c.clone()))?;
        let split = split_test_extension(&e, opts)?;
        components.push(RadicalComponent { index: i, size: b.size(), split: split.solvable, witness: split.witness });
    }
    let dimension = components.iter().filter(|c| !c.split).map(|c| c.size).sum();
    let descriptor = if dimension == 0 { "trivial".to_string() } else { format!("G_a^{dimension}") };
    Ok(RadicalReport { components, dimension, descriptor, approximate })
}

/// Hypotheses of the criterion that the tool cannot verify.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    pub irreducible: bool,
    pub quasi_simple: bool,
    /// `dim Gal(L) ≠ ord L`; inferred when the group is named or `ord L = 2`.
    pub dimension_differs: bool,
    /// Name of `Gal(L)`, e.g. `SL2`.
    pub group: Option<String>,
}

/// Dimension of a named quasi-simple group, for the families `SLn`, `SOn`, `Spn` and `G2`.
pub fn group_dimension(name: &str) -> Option<usize> {
    let compact: String = name.chars().filter(|c| *c != '_' && !c.is_whitespace()).collect();
    let upper = compact.to_ascii_uppercase();
    let num = |prefix: &str| upper.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    if upper == "G2" {
        return Some(14);
    }
    if let Some(k) = num("SL") {
        return (k >= 2).then(|| k * k - 1);
    }
    if let Some(k) = num("SP") {
        return (k >= 2 && k % 2 == 0).then(|| k * (k + 1) / 2);
    }
    if let Some(k) = num("SO") {
        return (k >= 3).then(|| k * (k - 1) / 2);
    }
    None
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub integrability: IntegrabilityResult,
    pub inhomogeneous: InhomogeneousResult,
    pub hypertranscendent: bool,
    pub group_descriptor: Option<String>,
    /// The independence statement, present when hypertranscendent.
    pub statement: Option<String>,
    /// Which tests produced witnesses, when not hypertranscendent.
    pub reasons: Vec<String>,
    pub assumptions: Vec<String>,
    pub caveats: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CriterionOutcome {
    Decided(Verdict),
    /// A solver failed; nothing is concluded.
    Inconclusive {
        integrability: Option<IntegrabilityResult>,
        inhomogeneous: Option<InhomogeneousResult>,
        errors: Vec<String>,
        assumptions: Vec<String>,
        caveats: Vec<String>,
    },
}

impl CriterionOutcome {
    pub fn verdict(&self) -> Option<&Verdict> {
        match self {
            CriterionOutcome::Decided(v) => Some(v),
            CriterionOutcome::Inconclusive { .. } => None,
        }
    }
}

pub const CERTIFICATION_CAVEAT: &str = "both rational-solution facts are certified over Q(t)(x); \
they persist over k(x) for every field k of constants containing Q(t), since the solver reduces \
to linear algebra over Q(t)";

pub const CONSTANTS_CAVEAT: &str = "the companion system is isomonodromic: Gal(L) with respect to \
the parameter is conjugate to constants";

/// Decides hypertranscendence of solutions of `L(y) = b` under the stated
/// hypotheses, running the two rational-solution tests concurrently.
pub fn hypertranscendence_criterion(
    l: &OreOperator,
    b: &FieldElem,
    assumptions: &Assumptions,
    opts: &RatsolOptions,
) -> Result<CriterionOutcome> {
    if b.is_zero() {
        return Err(Error::ZeroRhs);
    }
    let n = match l.order() {
        None => return Err(Error::ZeroOperator),
        Some(0) => return Err(Error::OrderZero),
        Some(n) => n,
    };
    let (recorded, group_name, m) = check_assumptions(n, assumptions)?;
    let companion = l.companion()?;

    let (iso, inh) = thread::scope(|scope| {
        let iso = scope.spawn(|| isomonodromy_test(&companion, opts));
        let inh = scope.spawn(|| rational_solutions_scalar_with(l, Some(b), opts));
        (iso.join().expect("isomonodromy test panicked"), inh.join().expect("solver panicked"))
    });

    let mut caveats = vec![CERTIFICATION_CAVEAT.to_string()];
    let inh = inh.map(|sp| {
        let witness = sp.scalar_particular();
        InhomogeneousResult { solvable: witness.is_some(), witness }
    });
    let (integrability, inhomogeneous) = match (iso, inh) {
        (Ok(i), Ok(h)) => (i, h),
        (i, h) => {
            let errors = [i.as_ref().err(), h.as_ref().err()]
                .into_iter()
                .flatten()
                .map(|e| e.to_string())
                .collect();
            return Ok(CriterionOutcome::Inconclusive {
                integrability: i.ok(),
                inhomogeneous: h.ok(),
                errors,
                assumptions: recorded,
                caveats,
            });
        }
    };
    if integrability.solvable {
        caveats.push(CONSTANTS_CAVEAT.to_string());
    }
    let hypertranscendent = !integrability.solvable && !inhomogeneous.solvable;
    let mut reasons = Vec::new();
    if let Some(w) = &integrability.witness {
        reasons.push(format!("isomonodromy test found B = {w}"));
    }
    if let Some(w) = &inhomogeneous.witness {
        reasons.push(format!("L(y) = b has the rational solution y = {w}"));
    }
    let (group_descriptor, statement) = if hypertranscendent {
        let v = match m {
            Some(m) => format!("v_1, ..., v_{m}"),
            None => "v_1, ..., v_m".to_string(),
        };
        let z = match n {
            1 => "z".to_string(),
            2 => "z, ∂z".to_string(),
            _ => format!("z, ..., ∂^{} z", n - 1),
        };
        (
            Some(format!("G_a^{n} ⋊ {group_name}")),
            Some(format!(
                "{v}, {z} and all their derivatives with respect to t are algebraically independent over K"
            )),
        )
    } else {
        (None, None)
    };
    Ok(CriterionOutcome::Decided(Verdict {
        integrability,
        inhomogeneous,
        hypertranscendent,
        group_descriptor,
        statement,
        reasons,
        assumptions: recorded,
        caveats,
    }))
}

/// Validates the asserted hypotheses, returning their record, the group name
/// for the descriptor and `dim Gal(L)` when known.
fn check_assumptions(n: usize, a: &Assumptions) -> Result<(Vec<String>, String, Option<usize>)> {
    if !a.irreducible {
        return Err(Error::MissingAssumption("L is irreducible".into()));
    }
    if !a.quasi_simple {
        return Err(Error::MissingAssumption("Gal(L) is quasi-simple".into()));
    }
    if n == 1 {
        return Err(Error::OutOfScope("an order-one operator has a commutative Galois group".into()));
    }
    let mut recorded = vec![
        "L is irreducible (asserted, not verified)".to_string(),
        "Gal(L) is quasi-simple (asserted, not verified)".to_string(),
    ];
    let (name, m) = match &a.group {
        Some(g) => {
            recorded.push(format!("Gal(L) = {g} (asserted, not verified)"));
            (g.clone(), group_dimension(g))
        }
        None if n == 2 => {
            recorded.push("Gal(L) = SL2 (inferred: the only quasi-simple irreducible subgroup of GL2)".into());
            ("SL2".to_string(), Some(3))
        }
        None => ("Gal(L)".to_string(), None),
    };
    match m {
        Some(m) if m == n => {
            return Err(Error::OutOfScope(format!("dim Gal(L) = {m} equals ord L")));
        }
        Some(m) => recorded.push(format!("dim Gal(L) = {m} differs from ord L = {n}")),
        None if a.dimension_differs => {
            recorded.push(format!("dim Gal(L) differs from ord L = {n} (asserted, not verified)"))
        }
        None => return Err(Error::MissingAssumption("dim Gal(L) differs from ord L".into())),
    }
    Ok((recorded, name, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsys::gauge;

    fn x() -> FieldElem {
        FieldElem::x()
    }
    fn t() -> FieldElem {
        FieldElem::t()
    }
    fn c(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }
    fn m(rows: Vec<Vec<FieldElem>>) -> MatrixK {
        MatrixK::from_rows(rows).unwrap()
    }
    fn opts() -> RatsolOptions {
        RatsolOptions::default()
    }

    #[test]
    fn t_free_system_is_integrable() {
        let s = DiffSystem::new(m(vec![vec![c(0), c(1)], vec![x(), c(0)]]));
        let r = isomonodromy_test(&s, &opts()).unwrap();
        assert!(r.solvable);
        assert!(r.witness.unwrap().is_zero());
    }

    #[test]
    fn scalar_exponential_in_t() {
        // ∂y = (t/x) y has solution x^t, with δ-derivative log(x) x^t: not integrable.
        let s = DiffSystem::new(m(vec![vec![&t() / &x()]]));
        assert!(!isomonodromy_test(&s, &opts()).unwrap().solvable);
        // ∂y = t y: B = x works.
        let s = DiffSystem::new(m(vec![vec![t()]]));
        let r = isomonodromy_test(&s, &opts()).unwrap();
        assert!(r.solvable);
        assert!(is_integrability_witness(&s.a, r.witness.as_ref().unwrap()));
    }

    #[test]
    fn gauge_of_constant_system_is_integrable() {
        let s = DiffSystem::new(m(vec![vec![c(0), c(1)], vec![c(0), c(0)]]));
        let p = m(vec![vec![c(1), t()], vec![c(0), &x() + &t()]]);
        let g = gauge(&s, &p).unwrap();
        let r = isomonodromy_test(&g, &opts()).unwrap();
        assert!(r.solvable);
        assert!(is_integrability_witness(&g.a, r.witness.as_ref().unwrap()));
    }

    #[test]
    fn split_examples() {
        let zero_c = ExtensionSystem::new(m(vec![vec![x()]]), m(vec![vec![c(0)]]), m(vec![vec![c(0)]])).unwrap();
        let r = split_test_extension(&zero_c, &opts()).unwrap();
        assert!(r.solvable);
        assert!(r.witness.unwrap().is_zero());
        let e = crate::linsys::extension_from_scalar(&OreOperator::d(), &c(1)).unwrap();
        let r = split_test_extension(&e, &opts()).unwrap();
        assert_eq!(r.witness.unwrap(), m(vec![vec![x()]]));
    }

    #[test]
    fn decomposition_of_trivial_block() {
        let d = decompose_constant_parts(&[DiffSystem::new(MatrixK::zeros(1, 1))], &opts()).unwrap();
        assert_eq!(d.constant, vec![0]);
        assert!(d.witnesses[&0].is_zero());
    }

    #[test]
    fn assumptions_are_required() {
        let l = OreOperator::new(vec![-x(), c(0), c(1)]);
        let none = Assumptions::default();
        assert!(matches!(
            hypertranscendence_criterion(&l, &c(1), &none, &opts()),
            Err(Error::MissingAssumption(_))
        ));
        let ok = Assumptions { irreducible: true, quasi_simple: true, ..Default::default() };
        assert_eq!(hypertranscendence_criterion(&l, &c(0), &ok, &opts()), Err(Error::ZeroRhs));
        let out = hypertranscendence_criterion(&l, &c(1), &ok, &opts()).unwrap();
        let v = out.verdict().unwrap();
        assert!(v.integrability.solvable);
        assert!(!v.hypertranscendent);
        assert!(v.caveats.iter().any(|c| c.contains("conjugate to constants")));
    }

    #[test]
    fn group_dimensions() {
        assert_eq!(group_dimension("SL2"), Some(3));
        assert_eq!(group_dimension("SL_3"), Some(8));
        assert_eq!(group_dimension("Sp4"), Some(10));
        assert_eq!(group_dimension("SO3"), Some(3));
        assert_eq!(group_dimension("G2"), Some(14));
        assert_eq!(group_dimension("E8"), None);
    }
}
