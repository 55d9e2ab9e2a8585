mod common;

use common::*;
use dialg_core::linalg::{PrimeField, Rationals};
use dialg_core::{
    apply_permutation, compose, di_special_identities, enumerate_monomials, evaluate_morphism,
    ideal::to_vector, morphism_kernel_at_degree, special_identities, verify_bso_theorem, Error,
    Limits, Monomial, OperadMorphism, Permutation, Polynomial, VarietyPresentation,
};

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn evaluation_examples() {
    let s = binary();
    let p = poly(&s, &[(1, m2(m2(x(1), x(2)), x(3)))]);
    let want = poly(
        &s,
        &[
            (1, m2(m2(x(1), x(2)), x(3))),
            (-1, m2(m2(x(2), x(1)), x(3))),
            (-1, m2(x(3), m2(x(1), x(2)))),
            (1, m2(x(3), m2(x(2), x(1)))),
        ],
    );
    assert_eq!(evaluate_morphism(&lie_to_assoc(), &p).unwrap(), want);

    let tau = poly(&ternary(), &[(1, t3(x(1), x(2), x(3)))]);
    assert_eq!(
        evaluate_morphism(&jts_to_assoc(), &tau).unwrap(),
        jts_to_assoc().image(0).clone()
    );
    let id = Polynomial::monomial(Monomial::identity()).unwrap();
    assert_eq!(evaluate_morphism(&lie_to_assoc(), &id).unwrap(), id);
    // a ternary monomial has no image under a binary-source morphism
    assert!(evaluate_morphism(&lie_to_assoc(), &tau).is_err());
}

#[test]
fn malformed_morphisms_are_rejected() {
    let img = poly(&binary(), &[(1, m2(x(1), x(2)))]);
    assert!(OperadMorphism::new(ternary(), assoc(), vec![img.clone()]).is_err());
    assert!(OperadMorphism::new(binary(), assoc(), vec![]).is_err());
    let tau = poly(&ternary(), &[(1, t3(x(1), x(2), x(3)))]);
    assert!(OperadMorphism::new(ternary(), assoc(), vec![tau]).is_err());
}

#[test]
fn evaluation_is_equivariant() {
    for omega in [lie_to_assoc(), jordan_to_assoc(), jts_to_assoc()] {
        let sig = omega.source_signature().clone();
        for n in 2..=4 {
            for m in enumerate_monomials(&sig, n, &lim()).unwrap() {
                let p = Polynomial::monomial(m).unwrap();
                let w = evaluate_morphism(&omega, &p).unwrap();
                for s in Permutation::all(n) {
                    let lhs =
                        evaluate_morphism(&omega, &apply_permutation(&s, &p).unwrap()).unwrap();
                    assert_eq!(lhs, apply_permutation(&s, &w).unwrap());
                }
            }
        }
    }
}

#[test]
fn evaluation_respects_composition() {
    let omega = lie_to_assoc();
    let sig = binary();
    let by_degree: Vec<Vec<Polynomial>> = (0..=3)
        .map(|n| {
            if n == 0 {
                return vec![];
            }
            enumerate_monomials(&sig, n, &lim())
                .unwrap()
                .into_iter()
                .map(|m| Polynomial::monomial(m).unwrap())
                .collect()
        })
        .collect();
    let w = |p: &Polynomial| evaluate_morphism(&omega, p).unwrap();
    for f_deg in 2..=3 {
        for f in &by_degree[f_deg] {
            // all argument degree tuples with total degree at most 4
            let mut degs = vec![1usize; f_deg];
            loop {
                if degs.iter().sum::<usize>() <= 4 {
                    let mut choice = vec![0usize; f_deg];
                    loop {
                        let gs: Vec<Polynomial> = choice
                            .iter()
                            .zip(&degs)
                            .map(|(&c, &d)| by_degree[d][c].clone())
                            .collect();
                        let lhs = w(&compose(f, &gs).unwrap());
                        let wg: Vec<Polynomial> = gs.iter().map(w).collect();
                        assert_eq!(lhs, compose(&w(f), &wg).unwrap());
                        let mut i = f_deg;
                        let mut more = false;
                        while i > 0 {
                            i -= 1;
                            choice[i] += 1;
                            if choice[i] < by_degree[degs[i]].len() {
                                more = true;
                                break;
                            }
                            choice[i] = 0;
                        }
                        if !more {
                            break;
                        }
                    }
                }
                let mut i = f_deg;
                let mut more = false;
                while i > 0 {
                    i -= 1;
                    degs[i] += 1;
                    if degs[i] <= 3 {
                        more = true;
                        break;
                    }
                    degs[i] = 1;
                }
                if !more {
                    break;
                }
            }
        }
    }
}

#[test]
fn kernel_examples() {
    let k = morphism_kernel_at_degree(&lie_to_assoc(), 2, &Rationals, &lim()).unwrap();
    assert_eq!(k.kernel.rank(), 1);
    let sym = poly(&binary(), &[(1, m2(x(1), x(2))), (1, m2(x(2), x(1)))]);
    assert!(k
        .kernel
        .contains(&to_vector(&k.basis, &sym, &Rationals).unwrap())
        .unwrap());

    let k = morphism_kernel_at_degree(&lie_to_assoc(), 3, &Rationals, &lim()).unwrap();
    assert_eq!(k.kernel.rank(), 10);

    let k = morphism_kernel_at_degree(&jordan_to_assoc(), 2, &Rationals, &lim()).unwrap();
    assert_eq!(k.polynomials(), vec![commutativity()]);

    assert!(morphism_kernel_at_degree(&lie_to_assoc(), 1, &Rationals, &lim()).is_err());
}

#[test]
fn kernels_are_symmetric() {
    for omega in [lie_to_assoc(), jordan_to_assoc(), jts_to_assoc()] {
        for d in 2..=4 {
            let k = morphism_kernel_at_degree(&omega, d, &Rationals, &lim()).unwrap();
            for p in k.polynomials() {
                for s in Permutation::all(d) {
                    let v = to_vector(&k.basis, &apply_permutation(&s, &p).unwrap(), &Rationals)
                        .unwrap();
                    assert!(k.kernel.contains(&v).unwrap());
                }
            }
        }
    }
}

#[test]
fn classical_varieties_have_no_low_special_identities() {
    let f = PrimeField::default();
    for d in 2..=5 {
        let s = special_identities(&lie_to_assoc(), &lie(), d, &f, &lim()).unwrap();
        assert!(s.basis.is_empty(), "Lie degree {d}");
        let fact: usize = (1..d).product();
        assert_eq!(s.ambient_dim - s.kernel_dim, fact);
        let s = special_identities(&jordan_to_assoc(), &jordan(), d, &f, &lim()).unwrap();
        assert!(s.basis.is_empty(), "Jordan degree {d}");
    }
    for d in [3, 5] {
        assert!(special_identities(&jts_to_assoc(), &jts(), d, &f, &lim())
            .unwrap()
            .basis
            .is_empty());
    }
}

#[test]
fn commutativity_is_special_for_the_free_variety() {
    let s = special_identities(&free_to_comassoc(), &free_binary(), 2, &Rationals, &lim()).unwrap();
    assert_eq!(s.basis.len(), 1);
    let v = VarietyPresentation::new(None, binary(), s.basis.clone()).unwrap();
    assert!(dialg_core::identity_implies(&v, &commutativity(), &Rationals, &lim()).unwrap());
}

#[test]
fn induced_morphism_precondition() {
    let err = special_identities(&lie_to_assoc(), &assoc(), 3, &Rationals, &lim()).unwrap_err();
    match err {
        Error::Argument(msg) => assert!(msg.contains("source identity 1"), "{msg}"),
        e => panic!("unexpected {e:?}"),
    }
    // Jordan triple products of a Jordan algebra satisfy the triple identities
    special_identities(&jts_to_jordan(), &jts(), 3, &Rationals, &lim()).unwrap();
}

#[test]
fn dialgebra_special_identities() {
    let f = PrimeField::default();
    for d in 2..=4 {
        let r = di_special_identities(&lie_to_assoc(), &lie(), d, &f, &lim()).unwrap();
        assert!(r.basis.is_empty() && r.lifts_contained && r.matches_lifts);
    }
    let r = di_special_identities(&jordan_to_assoc(), &jordan(), 4, &f, &lim()).unwrap();
    assert!(r.basis.is_empty() && r.matches_lifts);

    let r =
        di_special_identities(&free_to_comassoc(), &free_binary(), 2, &Rationals, &lim()).unwrap();
    assert_eq!(r.basis.len(), 2);
    assert!(r.lifts_contained && r.matches_lifts);
    assert_eq!(r.basis.len(), 2 * r.special_dim);
    for (k, t) in r.basis.iter().enumerate() {
        // one lift per Perm coordinate, the other component vanishes
        let nonzero: Vec<_> = (1..=2).filter(|&c| !t.component(c).is_zero()).collect();
        assert_eq!(nonzero.len(), 1, "basis element {k}");
    }
    let r =
        di_special_identities(&free_to_comassoc(), &free_binary(), 3, &Rationals, &lim()).unwrap();
    assert!(r.matches_lifts);
    assert_eq!(r.basis.len(), 3 * r.special_dim);
}

#[test]
fn bso_theorem_small_degrees() {
    for (omega, d) in [
        (lie_to_assoc(), 3),
        (free_to_comassoc(), 2),
        (free_to_comassoc(), 3),
        (jordan_to_assoc(), 3),
    ] {
        let r = verify_bso_theorem(&omega, d, &Rationals, &lim()).unwrap();
        assert!(r.equal, "{r:?}");
    }
    let r = verify_bso_theorem(&jts_to_assoc(), 3, &Rationals, &lim()).unwrap();
    assert!(r.equal);
    assert_eq!(r.ambient_dim, 18);
}

#[test]
fn characteristic_guard() {
    for p in [5u64, 7] {
        let f = PrimeField::new(p).unwrap();
        for d in 2..p as usize {
            if d > 3 {
                break;
            }
            let over_p = verify_bso_theorem(&lie_to_assoc(), d, &f, &lim()).unwrap();
            let over_q = verify_bso_theorem(&lie_to_assoc(), d, &Rationals, &lim()).unwrap();
            assert_eq!(over_p, over_q);
        }
        let e = verify_bso_theorem(&lie_to_assoc(), p as usize, &f, &lim()).unwrap_err();
        assert_eq!(
            e,
            Error::CharacteristicGuard {
                degree: p as usize,
                prime: p
            }
        );
    }
}
