mod support;

use hyperdiff_core::galois::split_test_extension;
use hyperdiff_core::linsys::extension_from_scalar;
use hyperdiff_core::ratsol::{rational_solutions_scalar, universal_denominator, RatsolOptions, DEFAULT_MAX_DEGREE};
use hyperdiff_core::field::Ring;
use hyperdiff_core::FieldElem;
use support::*;

#[test]
fn corpus_matches_exhaustive_ansatz() {
    let cases = corpus();
    assert!(cases.len() >= 25);
    for (l, expected) in cases {
        let space = rational_solutions_scalar(&l, None).unwrap();
        assert!(space.degree_bound <= 8, "{l}: degree bound {}", space.degree_bound);
        assert!(space.places.iter().all(|p| p.max_order <= 8), "{l}");
        let d = universal_denominator(&l, None, DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(d, space.denominator);
        let n = d.degree().unwrap_or(0) + 8;
        let oracle = ansatz_dimension(&l, &d, n);
        assert_eq!(space.dimension(), oracle, "{l}");
        if expected != usize::MAX {
            assert_eq!(space.dimension(), expected, "{l}");
        }
        for y in space.scalar_basis() {
            assert!(l.apply(&y).is_zero());
        }
    }
}

#[test]
fn forward_images_are_solved_exactly() {
    let ops = control_operators();
    let mut r = rng(7);
    for i in 0..10 {
        let g = random_rational(&mut r, 3, 2);
        let l = &ops[i % ops.len()];
        let rhs = l.apply(&g);
        if rhs.is_zero() {
            continue;
        }
        let space = rational_solutions_scalar(l, Some(&rhs)).unwrap();
        let y = space.scalar_particular().unwrap_or_else(|| panic!("no solution for g = {g}"));
        assert_eq!(&l.apply(&y) - &rhs, FieldElem::from_int(0));
    }
}

#[test]
fn split_test_agrees_with_scalar_solvability() {
    let ops = control_operators();
    let mut r = rng(99);
    let opts = RatsolOptions::default();
    for i in 0..10 {
        let l = &ops[i % ops.len()];
        let b = if i % 2 == 0 {
            l.apply(&random_rational(&mut r, 2, 1))
        } else {
            random_rational(&mut r, 2, 1)
        };
        if b.is_zero() {
            continue;
        }
        let scalar = rational_solutions_scalar(l, Some(&b)).unwrap().is_solvable();
        let split = split_test_extension(&extension_from_scalar(l, &b).unwrap(), &opts).unwrap();
        assert_eq!(split.solvable, scalar, "L = {l}, b = {b}");
        if i % 2 == 0 {
            assert!(scalar);
        }
    }
}
