mod common;

use std::time::Instant;

use common::*;
use dialg_core::linalg::{PrimeField, Rationals};
use dialg_core::{
    consequences_at_degree, identity_implies, quotient_dimension, Error, Limits,
    VarietyPresentation,
};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn anticommutative_degree_two() {
    let v = VarietyPresentation::new(None, binary(), vec![antisymmetry()]).unwrap();
    let c = consequences_at_degree(&v, 2, &Rationals, &Limits::default()).unwrap();
    assert_eq!(c.basis.len(), 2);
    assert_eq!(c.ideal.rank(), 1);
    assert_eq!(c.quotient_dim, 1);
}

#[test]
fn associative_degree_three() {
    let c = consequences_at_degree(&assoc(), 3, &Rationals, &Limits::default()).unwrap();
    assert_eq!(c.basis.len(), 12);
    assert_eq!(c.ideal.rank(), 6);
    assert_eq!(c.quotient_dim, 6);
    assert!(c.is_symmetric());
}

#[test]
fn dimension_ladders() {
    let l = Limits::default();
    let f = PrimeField::default();
    let t = Instant::now();
    for n in 2..=5 {
        assert_eq!(
            quotient_dimension(&assoc(), n, &f, &l).unwrap(),
            factorial(n),
            "As({n})"
        );
        assert_eq!(
            quotient_dimension(&lie(), n, &f, &l).unwrap(),
            factorial(n - 1),
            "Lie({n})"
        );
    }
    for n in 2..=4 {
        assert_eq!(
            quotient_dimension(&perm(), n, &f, &l).unwrap(),
            n,
            "Perm({n})"
        );
        assert_eq!(quotient_dimension(&perm(), n, &Rationals, &l).unwrap(), n);
    }
    eprintln!("ladders in {:?}", t.elapsed());
}

#[test]
fn commutative_associative_is_one_dimensional() {
    for n in 2..=5 {
        assert_eq!(
            quotient_dimension(&comassoc(), n, &Rationals, &Limits::default()).unwrap(),
            1
        );
    }
}

#[test]
fn implication_examples() {
    let l = Limits::default();
    let sig = binary();
    let long = poly(
        &sig,
        &[
            (1, m2(m2(m2(x(1), x(2)), x(3)), x(4))),
            (-1, m2(x(1), m2(x(2), m2(x(3), x(4))))),
        ],
    );
    assert!(identity_implies(&assoc(), &long, &Rationals, &l).unwrap());
    assert!(!identity_implies(&assoc(), &commutativity(), &Rationals, &l).unwrap());
    let cyclic = poly(
        &sig,
        &[
            (1, m2(m2(x(1), x(2)), x(3))),
            (1, m2(m2(x(2), x(3)), x(1))),
            (1, m2(m2(x(3), x(1)), x(2))),
        ],
    );
    assert!(identity_implies(&lie(), &cyclic, &Rationals, &l).unwrap());
}

#[test]
fn generators_belong_to_their_ideal() {
    for v in [assoc(), lie(), jordan(), perm(), jts()] {
        for g in v.generators() {
            assert!(identity_implies(&v, g, &PrimeField::default(), &Limits::default()).unwrap());
        }
    }
}

#[test]
fn monotone_in_generators() {
    let l = Limits::default();
    let small = consequences_at_degree(&assoc(), 4, &Rationals, &l).unwrap();
    let big = consequences_at_degree(&perm(), 4, &Rationals, &l).unwrap();
    assert!(big.ideal.contains_subspace(&small.ideal).unwrap());
}

#[test]
fn layers_are_symmetric() {
    let l = Limits::default();
    for v in [lie(), jordan(), perm()] {
        for n in 2..=4 {
            assert!(consequences_at_degree(&v, n, &Rationals, &l)
                .unwrap()
                .is_symmetric());
        }
    }
}

#[test]
fn degree_cap_reports_resource_limit() {
    let l = Limits { max_degree: 4 };
    let err = quotient_dimension(&assoc(), 5, &Rationals, &l).unwrap_err();
    assert_eq!(
        err,
        Error::ResourceLimit {
            requested: 5,
            cap: 4
        }
    );
}

#[test]
fn jordan_dimensions_agree_across_fields() {
    let l = Limits::default();
    for n in 2..=5 {
        let q = quotient_dimension(&jordan(), n, &Rationals, &l).unwrap();
        let p = quotient_dimension(&jordan(), n, &PrimeField::default(), &l).unwrap();
        assert_eq!(q, p, "Jordan({n})");
        eprintln!("dim Jordan({n}) = {q}");
    }
}
