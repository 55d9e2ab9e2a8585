#![allow(dead_code)]

use dialg_core::{
    linearize, rational, Monomial, Node, OperadMorphism, Polynomial, RawPolynomial, Signature,
    VarietyPresentation,
};

pub fn x(i: u32) -> Node {
    Node::Leaf(i)
}

pub fn op(sym: usize, children: Vec<Node>) -> Node {
    Node::Op(sym, children)
}

pub fn m2(a: Node, b: Node) -> Node {
    Node::Op(0, vec![a, b])
}

pub fn t3(a: Node, b: Node, c: Node) -> Node {
    Node::Op(0, vec![a, b, c])
}

pub fn poly(sig: &Signature, terms: &[(i64, Node)]) -> Polynomial {
    let ms: Vec<_> = terms
        .iter()
        .map(|(c, n)| (Monomial::from_node(n, sig).unwrap(), rational(*c)))
        .collect();
    let deg = ms[0].0.degree();
    Polynomial::from_terms(deg, ms).unwrap()
}

pub fn binary() -> Signature {
    Signature::new([("mul", 2)]).unwrap()
}

pub fn ternary() -> Signature {
    Signature::new([("tau", 3)]).unwrap()
}

pub fn associativity() -> Polynomial {
    poly(
        &binary(),
        &[
            (1, m2(m2(x(1), x(2)), x(3))),
            (-1, m2(x(1), m2(x(2), x(3)))),
        ],
    )
}

pub fn assoc() -> VarietyPresentation {
    VarietyPresentation::new(Some("assoc".into()), binary(), vec![associativity()]).unwrap()
}

pub fn left_commutativity() -> Polynomial {
    poly(
        &binary(),
        &[
            (1, m2(m2(x(1), x(2)), x(3))),
            (-1, m2(m2(x(2), x(1)), x(3))),
        ],
    )
}

pub fn perm() -> VarietyPresentation {
    VarietyPresentation::new(
        Some("perm".into()),
        binary(),
        vec![associativity(), left_commutativity()],
    )
    .unwrap()
}

pub fn commutativity() -> Polynomial {
    poly(&binary(), &[(1, m2(x(1), x(2))), (-1, m2(x(2), x(1)))])
}

pub fn comassoc() -> VarietyPresentation {
    VarietyPresentation::new(
        Some("comassoc".into()),
        binary(),
        vec![associativity(), commutativity()],
    )
    .unwrap()
}

pub fn antisymmetry() -> Polynomial {
    poly(&binary(), &[(1, m2(x(1), x(2))), (1, m2(x(2), x(1)))])
}

/// `[x, [y, z]] - [[x, y], z] - [y, [x, z]]`
pub fn jacobi_left() -> Polynomial {
    poly(
        &binary(),
        &[
            (1, m2(x(1), m2(x(2), x(3)))),
            (-1, m2(m2(x(1), x(2)), x(3))),
            (-1, m2(x(2), m2(x(1), x(3)))),
        ],
    )
}

pub fn lie() -> VarietyPresentation {
    VarietyPresentation::new(
        Some("lie".into()),
        binary(),
        vec![antisymmetry(), jacobi_left()],
    )
    .unwrap()
}

pub fn jordan_identity() -> Polynomial {
    let sig = binary();
    let mono = |n: Node| Monomial::from_node(&n, &sig).unwrap();
    let sq = || m2(x(1), x(1));
    linearize(&RawPolynomial::new([
        (mono(m2(m2(sq(), x(2)), x(1))), rational(1)),
        (mono(m2(sq(), m2(x(2), x(1)))), rational(-1)),
    ]))
    .unwrap()
}

pub fn jordan() -> VarietyPresentation {
    VarietyPresentation::new(
        Some("jordan".into()),
        binary(),
        vec![commutativity(), jordan_identity()],
    )
    .unwrap()
}

/// `{x,y,z} = {z,y,x}` and the five-variable triple identity.
pub fn jts() -> VarietyPresentation {
    let sig = ternary();
    let sym = poly(
        &sig,
        &[(1, t3(x(1), x(2), x(3))), (-1, t3(x(3), x(2), x(1)))],
    );
    let five = poly(
        &sig,
        &[
            (1, t3(x(1), x(2), t3(x(3), x(4), x(5)))),
            (-1, t3(t3(x(1), x(2), x(3)), x(4), x(5))),
            (1, t3(x(3), t3(x(2), x(1), x(4)), x(5))),
            (-1, t3(x(3), x(4), t3(x(1), x(2), x(5)))),
        ],
    );
    VarietyPresentation::new(Some("jts".into()), sig, vec![sym, five]).unwrap()
}

pub fn free_binary() -> VarietyPresentation {
    VarietyPresentation::free(Some("free".into()), binary())
}

fn morphism(source: &Signature, target: VarietyPresentation, image: Polynomial) -> OperadMorphism {
    OperadMorphism::new(source.clone(), target, vec![image]).unwrap()
}

pub fn lie_to_assoc() -> OperadMorphism {
    let img = poly(&binary(), &[(1, m2(x(1), x(2))), (-1, m2(x(2), x(1)))]);
    morphism(&binary(), assoc(), img)
}

pub fn jordan_to_assoc() -> OperadMorphism {
    let img = poly(&binary(), &[(1, m2(x(1), x(2))), (1, m2(x(2), x(1)))]);
    morphism(&binary(), assoc(), img)
}

pub fn jts_to_assoc() -> OperadMorphism {
    let img = poly(
        &binary(),
        &[(1, m2(m2(x(1), x(2)), x(3))), (1, m2(m2(x(3), x(2)), x(1)))],
    );
    morphism(&ternary(), assoc(), img)
}

/// `(a,b,c) = (ab)c - (ac)b + a(bc)`
pub fn jts_to_jordan() -> OperadMorphism {
    let img = poly(
        &binary(),
        &[
            (1, m2(m2(x(1), x(2)), x(3))),
            (-1, m2(m2(x(1), x(3)), x(2))),
            (1, m2(x(1), m2(x(2), x(3)))),
        ],
    );
    morphism(&ternary(), jordan(), img)
}

pub fn free_to_comassoc() -> OperadMorphism {
    morphism(
        &binary(),
        comassoc(),
        poly(&binary(), &[(1, m2(x(1), x(2)))]),
    )
}
