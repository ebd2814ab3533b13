mod support;

use hyperdiff_core::galois::*;
use hyperdiff_core::linsys::{gauge, DiffSystem};
use hyperdiff_core::ratsol::RatsolOptions;
use hyperdiff_core::{Error, FieldElem};
use support::*;

fn lommel_assumptions() -> Assumptions {
    Assumptions { irreducible: true, quasi_simple: true, ..Default::default() }
}

#[test]
fn gauged_constant_systems_have_witnesses() {
    let opts = RatsolOptions::default();
    let systems = t_free_systems();
    let mut r = rng(404);
    for i in 0..10 {
        let p = random_gauge(&mut r);
        let a = &systems[i % systems.len()];
        let g = gauge(&DiffSystem::new(a.clone()), &p).unwrap();
        let res = isomonodromy_test(&g, &opts).unwrap();
        assert!(res.solvable, "P = {p}");
        assert!(is_integrability_witness(&g.a, res.witness.as_ref().unwrap()));
    }
}

#[test]
fn bessel_companion_is_not_isomonodromic() {
    let res = isomonodromy_test(&bessel_monic().companion().unwrap(), &RatsolOptions::default()).unwrap();
    assert!(!res.solvable);
    assert!(res.witness.is_none());
}

fn booleans(v: &Verdict) -> (bool, bool, bool) {
    (v.hypertranscendent, v.integrability.solvable, v.inhomogeneous.solvable)
}

#[test]
fn verdicts_are_invariant_under_scaling_the_rhs() {
    let opts = RatsolOptions::default();
    let t = t();
    let scalars = [c(2), t.clone(), &c(1) / &(&t + &c(1)), &(&t * &t) - &c(3), &c(-5) / &t];
    let second = op(vec![c(0), c(0), c(1)]);
    let cases = [(bessel_monic(), c(1)), (bessel_monic(), x()), (second, &x() * &x())];
    for (l, b) in cases {
        let base = hypertranscendence_criterion(&l, &b, &lommel_assumptions(), &opts).unwrap();
        let base = booleans(base.verdict().unwrap());
        for s in &scalars {
            let scaled = &b * s;
            let v = hypertranscendence_criterion(&l, &scaled, &lommel_assumptions(), &opts).unwrap();
            assert_eq!(booleans(v.verdict().unwrap()), base, "{l}, b = {scaled}");
        }
    }
}

#[test]
fn isomonodromy_is_gauge_invariant() {
    let opts = RatsolOptions::default();
    let mut systems = t_free_systems();
    systems.push(matrix(vec![vec![&t() / &x(), c(0)], vec![c(0), c(1)]]));
    systems.push(matrix(vec![vec![c(0), c(1)], vec![t(), c(0)]]));
    let mut r = rng(808);
    for a in systems {
        let s = DiffSystem::new(a);
        let p = random_gauge(&mut r);
        let before = isomonodromy_test(&s, &opts).unwrap().solvable;
        let after = isomonodromy_test(&gauge(&s, &p).unwrap(), &opts).unwrap().solvable;
        assert_eq!(before, after, "A = {}, P = {p}", s.a);
    }
}

fn logarithmic_block() -> DiffSystem {
    let t = t();
    let a = (0..=2).fold(c(0), |acc, j| &acc + &(&t.pow(j) / &(&x() + &c(j as i64))));
    DiffSystem::new(matrix(vec![vec![&a.d_x() / &a]]))
}

#[test]
fn constant_block_is_detected_and_refused() {
    let opts = RatsolOptions::default();
    let block = logarithmic_block();
    let dec = decompose_constant_parts(std::slice::from_ref(&block), &opts).unwrap();
    assert_eq!(dec.constant, vec![0]);
    assert!(is_integrability_witness(&block.a, &dec.witnesses[&0]));
    let err = unipotent_radical_nc(&[block], &[vec![FieldElem::from_int(1)]], &opts).unwrap_err();
    match err {
        Error::OutOfScope(msg) => assert!(msg.ends_with(CONSTANT_PART_REFUSAL)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn lommel_equations_are_hypertranscendent() {
    let opts = RatsolOptions::default();
    for mu in 1..=3 {
        let b = x().pow(mu - 1);
        let out = hypertranscendence_criterion(&bessel_monic(), &b, &lommel_assumptions(), &opts).unwrap();
        let v = out.verdict().unwrap();
        assert!(v.hypertranscendent);
        assert_eq!(v.group_descriptor.as_deref(), Some("G_a^2 ⋊ SL2"));
        assert!(v.statement.is_some());
    }
}
