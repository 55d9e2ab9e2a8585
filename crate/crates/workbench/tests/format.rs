use dialg_core::{
    bso_presentation, double_signature, enumerate_monomials, evaluate_morphism, rational, Limits,
    Monomial, Node, Polynomial, Signature,
};
use dialg_workbench::catalog;
use dialg_workbench::cli::dialgebrize;
use dialg_workbench::input::{
    format_input, format_polynomial, format_presentation, parse_input, parse_input_with,
    parse_polynomial, PresentationDef,
};
use dialg_workbench::sexpr::{read_all, Pos};
use proptest::prelude::*;

fn catalog_lookup(name: &str) -> Option<PresentationDef> {
    catalog::presentation(name).cloned()
}

fn expr(text: &str, sig: &Signature) -> Polynomial {
    parse_polynomial(&read_all(text).unwrap()[0], sig).unwrap()
}

#[test]
fn top_level_presentation() {
    let text = "(signature (op mul 2)) (identity assoc (- (mul (mul 1 2) 3) (mul 1 (mul 2 3))))";
    let input = parse_input(text).unwrap();
    assert_eq!(input.presentations.len(), 1);
    let def = &input.presentations[0];
    assert_eq!(def.name, "default");
    assert_eq!(def.identity_names, ["assoc"]);
    let v = &def.presentation;
    assert_eq!(v.signature().ops().collect::<Vec<_>>(), [("mul", 2)]);
    assert_eq!(v.generators().len(), 1);
    assert_eq!(v.generators()[0].degree(), 3);
    assert_eq!(v.generators()[0].len(), 2);
    assert_eq!(
        v.generators(),
        catalog::presentation("assoc")
            .unwrap()
            .presentation
            .generators()
    );
}

#[test]
fn commutator_morphism() {
    let text = "(morphism lie-to-assoc (source lie) (target assoc) (image bracket (- (mul 1 2) (mul 2 1))))";
    let input = parse_input_with(text, &catalog_lookup).unwrap();
    let def = &input.morphisms[0];
    assert_eq!(
        def.morphism,
        catalog::morphism("lie-to-assoc").unwrap().morphism
    );
    let lie = def.source.presentation.signature();
    let mul = def.target.presentation.signature();
    let bracket = expr("(bracket 1 2)", lie);
    assert_eq!(
        evaluate_morphism(&def.morphism, &bracket).unwrap(),
        expr("(+ (mul 1 2) (- (mul 2 1)))", mul)
    );
    // morphisms need their presentations
    assert!(parse_input(text).is_err());
}

#[test]
fn arity_mismatch_points_at_the_application() {
    let text = "(signature (op mul 2))\n(identity bad\n   (mul 1))";
    let e = parse_input(text).unwrap_err();
    assert_eq!(e.pos, Pos { line: 3, col: 4 });
    assert!(e.message.contains("takes 2 arguments, got 1"), "{e}");
}

#[test]
fn rejected_documents() {
    for (text, needle) in [
        (
            "(signature (op mul 2)) (identity a (mul 1 1))",
            "multilinear",
        ),
        (
            "(signature (op mul 2)) (identity a (star 1 2))",
            "unknown symbol",
        ),
        (
            "(signature (op mul 2)) (identity a (- (mul 1 2) (mul 1 2)))",
            "zero",
        ),
        (
            "(signature (op mul 2)) (identity a (mul 1 2)) (identity a (mul 2 1))",
            "duplicate",
        ),
        (
            "(presentation p (signature (op m 2))) (presentation p (signature (op m 2)))",
            "duplicate",
        ),
        ("(signature (op mul 2) (op mul 3))", "duplicate"),
        ("(identity a (mul 1 2))", "signature"),
        ("(signature (op mul 2)) (identity a (mul 0 1))", "positive"),
        (
            "(signature (op mul 2)) (identity a (* x (mul 1 2)))",
            "coefficient",
        ),
        (
            "(morphism m (source nowhere) (target nowhere))",
            "unknown presentation",
        ),
        ("(frobnicate)", "unknown form"),
    ] {
        let e = parse_input(text).unwrap_err();
        assert!(e.message.contains(needle), "{text}: {e}");
    }
}

#[test]
fn coefficients_and_linearization() {
    let sig = Signature::new([("mul", 2)]).unwrap();
    let p = expr("(* 1/2 (+ (mul 1 2) (mul 2 1)))", &sig);
    assert_eq!(p.len(), 2);
    assert!(p.terms().all(|(_, c)| *c == rational(1) / rational(2)));
    // x² linearizes to x₁x₂ + x₂x₁
    assert_eq!(
        expr("(linearize (mul 1 1))", &sig),
        expr("(+ (mul 1 2) (mul 2 1))", &sig)
    );
    // operations distribute over sums
    assert_eq!(
        expr("(mul (- (mul 1 2) (mul 2 1)) 3)", &sig),
        expr("(- (mul (mul 1 2) 3) (mul (mul 2 1) 3))", &sig)
    );
}

#[test]
fn arrow_aliases() {
    let dsig = double_signature(&Signature::new([("mul", 2)]).unwrap());
    let s = dsig.signature();
    assert_eq!(
        expr("(- (dashv (vdash 1 2) 3) (vdash 1 (dashv 2 3)))", s),
        expr("(- (mul^1 (mul^2 1 2) 3) (mul^2 1 (mul^1 2 3)))", s)
    );
    // the aliases need a single doubled binary operation
    let plain = Signature::new([("mul", 2)]).unwrap();
    assert!(parse_polynomial(&read_all("(dashv 1 2)").unwrap()[0], &plain).is_err());
}

#[test]
fn catalog_round_trips() {
    let cat = catalog::builtin();
    let text = format_input(cat);
    assert_eq!(&parse_input(&text).unwrap(), cat);
    assert_eq!(format_input(&parse_input(&text).unwrap()), text);
}

#[test]
fn dialgebrized_presentations_round_trip() {
    for def in &catalog::builtin().presentations {
        let di = dialgebrize(def).unwrap();
        assert_eq!(
            di.presentation,
            bso_presentation(&def.presentation).unwrap().1
        );
        assert_eq!(di.identity_names.len(), di.presentation.generators().len());
        let back = parse_input(&format_presentation(&di)).unwrap();
        assert_eq!(back.presentations, [di]);
    }
}

fn sig_strategy() -> impl Strategy<Value = Signature> {
    prop_oneof![
        Just(Signature::new([("mul", 2)]).unwrap()),
        Just(Signature::new([("mul", 2), ("t", 3)]).unwrap()),
        Just(
            double_signature(&Signature::new([("mul", 2), ("t", 3)]).unwrap())
                .signature()
                .clone()
        ),
    ]
}

proptest! {
    #[test]
    fn polynomials_round_trip(
        sig in sig_strategy(),
        n in 1usize..=4,
        picks in prop::collection::vec((any::<prop::sample::Index>(), -3i64..=3, 1i64..=3), 1..6),
    ) {
        let monos = enumerate_monomials(&sig, n, &Limits::default()).unwrap();
        let terms: Vec<(Monomial, _)> = picks
            .iter()
            .map(|(i, a, b)| (i.get(&monos).clone(), rational(*a) / rational(*b)))
            .collect();
        let p = Polynomial::from_terms(n, terms).unwrap();
        prop_assume!(!p.is_zero());
        let text = format_polynomial(&p, &sig);
        let back = parse_polynomial(&read_all(&text).unwrap()[0], &sig).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn formatted_nodes_match_the_tree() {
    let sig = Signature::new([("mul", 2), ("t", 3)]).unwrap();
    let node = Node::Op(
        1,
        vec![
            Node::Leaf(2),
            Node::Op(0, vec![Node::Leaf(3), Node::Leaf(1)]),
            Node::Leaf(4),
        ],
    );
    let p = Polynomial::monomial(Monomial::from_node(&node, &sig).unwrap()).unwrap();
    assert_eq!(format_polynomial(&p, &sig), "(t 2 (mul 3 1) 4)");
    assert_eq!(
        format_polynomial(&p.scale(&rational(-2)), &sig),
        "(* -2 (t 2 (mul 3 1) 4))"
    );
    assert_eq!(format_polynomial(&Polynomial::zero(3), &sig), "0");
}
