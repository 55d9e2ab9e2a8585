//! The text format for signatures, presentations and morphisms.
//!
//! ```text
//! (presentation assoc
//!   (signature (op mul 2))
//!   (identity assoc (- (mul (mul 1 2) 3) (mul 1 (mul 2 3)))))
//! (morphism lie-to-assoc (source lie) (target assoc)
//!   (image bracket (- (mul 1 2) (mul 2 1))))
//! ```
//!
//! Top-level `signature` and `identity` forms build a presentation named
//! `default`. Variables are positive integers; `(+ …)`, `(- …)` and
//! `(* c e)` with an integer or `p/q` coefficient build linear combinations,
//! and operations distribute over them. `(linearize e)` around a whole identity
//! accepts repeated variables and replaces the expression by its complete
//! linearization. Doubled operations are named `name^k`; `dashv` and `vdash`
//! stand for `name^1` and `name^2` of the only binary operation.

use std::fmt::Write as _;
use std::str::FromStr;

use dialg_core::{
    linearize, Monomial, Node, OperadMorphism, Polynomial, Rational, RawPolynomial, Signature,
    VarietyPresentation,
};

use crate::sexpr::{read_all, ParseError, Pos, Sexp};

/// A named presentation with named defining identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationDef {
    pub name: String,
    pub presentation: VarietyPresentation,
    pub identity_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDef {
    pub name: String,
    pub source: PresentationDef,
    pub target: PresentationDef,
    pub morphism: OperadMorphism,
}

/// Everything defined by one document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WorkbenchInput {
    pub presentations: Vec<PresentationDef>,
    pub morphisms: Vec<MorphismDef>,
}

impl WorkbenchInput {
    pub fn presentation(&self, name: &str) -> Option<&PresentationDef> {
        self.presentations.iter().find(|p| p.name == name)
    }

    pub fn morphism(&self, name: &str) -> Option<&MorphismDef> {
        self.morphisms.iter().find(|m| m.name == name)
    }
}

type PResult<T> = Result<T, ParseError>;

/// Named identities in order of appearance.
type NamedIdentities = Vec<(String, Polynomial)>;

fn err<T>(pos: Pos, msg: impl Into<String>) -> PResult<T> {
    Err(ParseError::new(pos, msg))
}

/// Parses a document; `lookup` resolves presentation names not defined in it.
pub fn parse_input_with(
    text: &str,
    lookup: &dyn Fn(&str) -> Option<PresentationDef>,
) -> PResult<WorkbenchInput> {
    let mut out = WorkbenchInput::default();
    let mut default: Option<(Signature, NamedIdentities, Pos)> = None;
    for form in read_all(text)? {
        let pos = form.pos();
        let Some((head, rest)) = form.call() else {
            return err(pos, "expected a `(signature …)`, `(identity …)`, `(presentation …)` or `(morphism …)` form");
        };
        match head {
            "signature" => {
                if default.is_some() {
                    return err(pos, "a second top-level signature");
                }
                default = Some((parse_signature(rest, pos)?, Vec::new(), pos));
            }
            "identity" => {
                let Some((sig, ids, _)) = default.as_mut() else {
                    return err(
                        pos,
                        "a top-level identity needs a preceding `(signature …)`",
                    );
                };
                let (name, p) = parse_identity(rest, pos, sig)?;
                if ids.iter().any(|(n, _)| *n == name) {
                    return err(pos, format!("duplicate identity name `{name}`"));
                }
                ids.push((name, p));
            }
            "presentation" => {
                let def = parse_presentation(rest, pos)?;
                if out.presentation(&def.name).is_some() {
                    return err(pos, format!("duplicate presentation name `{}`", def.name));
                }
                out.presentations.push(def);
            }
            "morphism" => {
                let resolve = |name: &str| out.presentation(name).cloned().or_else(|| lookup(name));
                let def = parse_morphism(rest, pos, &resolve)?;
                if out.morphism(&def.name).is_some() {
                    return err(pos, format!("duplicate morphism name `{}`", def.name));
                }
                out.morphisms.push(def);
            }
            other => return err(pos, format!("unknown form `{other}`")),
        }
    }
    if let Some((sig, ids, pos)) = default {
        if out.presentation("default").is_some() {
            return err(
                pos,
                "the top-level presentation clashes with a presentation named `default`",
            );
        }
        out.presentations
            .insert(0, build_presentation("default".into(), sig, ids, pos)?);
    }
    Ok(out)
}

/// Parses a self-contained document.
pub fn parse_input(text: &str) -> PResult<WorkbenchInput> {
    parse_input_with(text, &|_| None)
}

fn name_atom(s: Option<&Sexp>, pos: Pos, what: &str) -> PResult<String> {
    match s {
        Some(Sexp::Atom(a, p)) => {
            if a.parse::<i64>().is_ok() || a.is_empty() {
                return err(*p, format!("`{a}` is not a valid {what} name"));
            }
            Ok(a.clone())
        }
        Some(other) => err(other.pos(), format!("expected a {what} name")),
        None => err(pos, format!("missing {what} name")),
    }
}

fn parse_signature(items: &[Sexp], pos: Pos) -> PResult<Signature> {
    let mut ops = Vec::new();
    for item in items {
        let p = item.pos();
        match item.call() {
            Some(("op", [name, arity])) => {
                let name = name_atom(Some(name), p, "operation")?;
                let a = arity
                    .atom()
                    .and_then(|a| a.parse::<usize>().ok())
                    .ok_or_else(|| {
                        ParseError::new(arity.pos(), "arity must be a positive integer")
                    })?;
                if ops.iter().any(|(n, _): &(String, usize)| *n == name) {
                    return err(p, format!("duplicate operation name `{name}`"));
                }
                ops.push((name, a));
            }
            _ => return err(p, "expected `(op NAME ARITY)`"),
        }
    }
    if ops.is_empty() {
        return err(pos, "a signature needs at least one operation");
    }
    Signature::new(ops).map_err(|e| ParseError::new(pos, e.to_string()))
}

fn parse_identity(items: &[Sexp], pos: Pos, sig: &Signature) -> PResult<(String, Polynomial)> {
    let name = name_atom(items.first(), pos, "identity")?;
    let [_, body] = items else {
        return err(pos, "expected `(identity NAME EXPR)`");
    };
    let p = parse_polynomial(body, sig)?;
    Ok((name, p))
}

/// Parses a multilinear polynomial, accepting an outer `(linearize …)`.
pub fn parse_polynomial(body: &Sexp, sig: &Signature) -> PResult<Polynomial> {
    let pos = body.pos();
    let (expr, lin) = match body.call() {
        Some(("linearize", [e])) => (e, true),
        Some(("linearize", _)) => return err(pos, "expected `(linearize EXPR)`"),
        _ => (body, false),
    };
    let terms = expression(expr, sig)?;
    let mut monos = Vec::with_capacity(terms.len());
    for (node, c) in terms {
        let m = Monomial::from_node(&node, sig).map_err(|e| ParseError::new(pos, e.to_string()))?;
        monos.push((m, c));
    }
    let raw = RawPolynomial::new(monos);
    let Some((first, _)) = raw.terms().next() else {
        return err(pos, "the expression is zero");
    };
    if lin {
        return linearize(&raw).map_err(|e| ParseError::new(pos, e.to_string()));
    }
    let degree = first.degree();
    Polynomial::from_terms(degree, raw.terms().map(|(m, c)| (m.clone(), c.clone())))
        .map_err(|e| ParseError::new(pos, format!("expression is not multilinear: {e}")))
}

type Terms = Vec<(Node, Rational)>;

fn one() -> Rational {
    Rational::from_integer(1.into())
}

fn resolve_op(name: &str, sig: &Signature, pos: Pos) -> PResult<usize> {
    if let Some(i) = sig.index_of(name) {
        return Ok(i);
    }
    let suffix = match name {
        "dashv" => "^1",
        "vdash" => "^2",
        _ => return err(pos, format!("unknown symbol `{name}`")),
    };
    let candidates: Vec<usize> = (0..sig.len())
        .filter(|&i| sig.arity(i) == 2 && sig.name(i).ends_with(suffix))
        .collect();
    match candidates[..] {
        [i] => Ok(i),
        _ => err(
            pos,
            format!("`{name}` needs exactly one doubled binary operation"),
        ),
    }
}

fn expression(e: &Sexp, sig: &Signature) -> PResult<Terms> {
    let pos = e.pos();
    match e {
        Sexp::Atom(a, _) => match a.parse::<i64>() {
            Ok(v) if v >= 1 && v <= u32::MAX as i64 => Ok(vec![(Node::Leaf(v as u32), one())]),
            Ok(_) => err(pos, "variables are positive integers"),
            Err(_) => err(
                pos,
                format!("unexpected symbol `{a}` outside an application"),
            ),
        },
        Sexp::List(items, _) => {
            let Some((head, args)) = e.call() else {
                return match items.first() {
                    None => err(pos, "empty expression"),
                    Some(h) => err(h.pos(), "expected an operation name"),
                };
            };
            match head {
                "+" => {
                    if args.is_empty() {
                        return err(pos, "`+` needs at least one argument");
                    }
                    let mut out = Vec::new();
                    for a in args {
                        out.extend(expression(a, sig)?);
                    }
                    Ok(out)
                }
                "-" => {
                    let Some((first, rest)) = args.split_first() else {
                        return err(pos, "`-` needs at least one argument");
                    };
                    let mut out = expression(first, sig)?;
                    if rest.is_empty() {
                        return Ok(negate(out));
                    }
                    for a in rest {
                        out.extend(negate(expression(a, sig)?));
                    }
                    Ok(out)
                }
                "*" => {
                    let [c, body] = args else {
                        return err(pos, "expected `(* COEFFICIENT EXPR)`");
                    };
                    let coef = c
                        .atom()
                        .and_then(|a| Rational::from_str(a).ok())
                        .ok_or_else(|| {
                            ParseError::new(c.pos(), "coefficient must be an integer or p/q")
                        })?;
                    Ok(expression(body, sig)?
                        .into_iter()
                        .map(|(n, x)| (n, x * &coef))
                        .collect())
                }
                "linearize" => err(pos, "`linearize` may only wrap a whole identity"),
                name => {
                    let op = resolve_op(name, sig, items[0].pos())?;
                    if args.len() != sig.arity(op) {
                        return err(
                            pos,
                            format!(
                                "operation `{}` takes {} arguments, got {}",
                                sig.name(op),
                                sig.arity(op),
                                args.len()
                            ),
                        );
                    }
                    let mut acc: Vec<(Vec<Node>, Rational)> = vec![(Vec::new(), one())];
                    for a in args {
                        let terms = expression(a, sig)?;
                        let mut next = Vec::with_capacity(acc.len() * terms.len());
                        for (children, c) in &acc {
                            for (n, x) in &terms {
                                let mut ch = children.clone();
                                ch.push(n.clone());
                                next.push((ch, c * x));
                            }
                        }
                        acc = next;
                    }
                    Ok(acc
                        .into_iter()
                        .map(|(ch, c)| (Node::Op(op, ch), c))
                        .collect())
                }
            }
        }
    }
}

fn negate(t: Terms) -> Terms {
    t.into_iter().map(|(n, c)| (n, -c)).collect()
}

fn build_presentation(
    name: String,
    sig: Signature,
    ids: NamedIdentities,
    pos: Pos,
) -> PResult<PresentationDef> {
    let (identity_names, generators): (Vec<_>, Vec<_>) = ids.into_iter().unzip();
    let presentation = VarietyPresentation::new(Some(name.clone()), sig, generators)
        .map_err(|e| ParseError::new(pos, e.to_string()))?;
    Ok(PresentationDef {
        name,
        presentation,
        identity_names,
    })
}

fn parse_presentation(items: &[Sexp], pos: Pos) -> PResult<PresentationDef> {
    let name = name_atom(items.first(), pos, "presentation")?;
    let mut sig: Option<Signature> = None;
    let mut ids: NamedIdentities = Vec::new();
    for item in &items[1..] {
        let p = item.pos();
        match item.call() {
            Some(("signature", rest)) => {
                if sig.is_some() {
                    return err(p, "a presentation has one signature");
                }
                sig = Some(parse_signature(rest, p)?);
            }
            Some(("identity", rest)) => {
                let Some(s) = sig.as_ref() else {
                    return err(p, "the signature must come before the identities");
                };
                let (n, poly) = parse_identity(rest, p, s)?;
                if ids.iter().any(|(m, _)| *m == n) {
                    return err(p, format!("duplicate identity name `{n}`"));
                }
                ids.push((n, poly));
            }
            _ => return err(p, "expected `(signature …)` or `(identity …)`"),
        }
    }
    let Some(sig) = sig else {
        return err(pos, format!("presentation `{name}` has no signature"));
    };
    build_presentation(name, sig, ids, pos)
}

fn parse_morphism(
    items: &[Sexp],
    pos: Pos,
    resolve: &dyn Fn(&str) -> Option<PresentationDef>,
) -> PResult<MorphismDef> {
    let name = name_atom(items.first(), pos, "morphism")?;
    let mut source = None;
    let mut target = None;
    let mut images: Vec<(String, Sexp, Pos)> = Vec::new();
    for item in &items[1..] {
        let p = item.pos();
        match item.call() {
            Some(("source" | "target", [r])) => {
                let which = item.call().unwrap().0;
                let rname = name_atom(Some(r), p, "presentation")?;
                let def = resolve(&rname).ok_or_else(|| {
                    ParseError::new(r.pos(), format!("unknown presentation `{rname}`"))
                })?;
                let slot = if which == "source" {
                    &mut source
                } else {
                    &mut target
                };
                if slot.replace(def).is_some() {
                    return err(p, format!("duplicate `{which}`"));
                }
            }
            Some(("image", [op, body])) => {
                let op = name_atom(Some(op), p, "operation")?;
                if images.iter().any(|(o, _, _)| *o == op) {
                    return err(p, format!("duplicate image for `{op}`"));
                }
                images.push((op, body.clone(), p));
            }
            _ => {
                return err(
                    p,
                    "expected `(source P)`, `(target P)` or `(image OP EXPR)`",
                )
            }
        }
    }
    let (Some(source), Some(target)): (Option<PresentationDef>, Option<PresentationDef>) =
        (source, target)
    else {
        return err(
            pos,
            format!("morphism `{name}` needs a source and a target"),
        );
    };
    let ssig = source.presentation.signature();
    let tsig = target.presentation.signature();
    let mut polys = vec![None; ssig.len()];
    for (op, body, p) in images {
        let Some(i) = ssig.index_of(&op) else {
            return err(
                p,
                format!("`{op}` is not an operation of `{}`", source.name),
            );
        };
        let poly = parse_polynomial(&body, tsig)?;
        if poly.degree() != ssig.arity(i) {
            return err(
                body.pos(),
                format!(
                    "image of `{op}` has degree {}, expected {}",
                    poly.degree(),
                    ssig.arity(i)
                ),
            );
        }
        polys[i] = Some(poly);
    }
    let mut resolved = Vec::with_capacity(polys.len());
    for (i, p) in polys.into_iter().enumerate() {
        match p {
            Some(p) => resolved.push(p),
            None => return err(pos, format!("no image given for `{}`", ssig.name(i))),
        }
    }
    let morphism = OperadMorphism::new(ssig.clone(), target.presentation.clone(), resolved)
        .map_err(|e| ParseError::new(pos, e.to_string()))?;
    Ok(MorphismDef {
        name,
        source,
        target,
        morphism,
    })
}

/// `x_v` as the atom `v`, operations in prefix form.
pub fn format_monomial(m: &Monomial, sig: &Signature) -> String {
    fn go(n: &Node, sig: &Signature, out: &mut String) {
        match n {
            Node::Leaf(v) => write!(out, "{v}").unwrap(),
            Node::Op(op, ch) => {
                write!(out, "({}", sig.name(*op)).unwrap();
                for c in ch {
                    out.push(' ');
                    go(c, sig, out);
                }
                out.push(')');
            }
        }
    }
    let mut s = String::new();
    go(&m.to_node(), sig, &mut s);
    s
}

fn format_term(m: &Monomial, c: &Rational, sig: &Signature) -> String {
    let mono = format_monomial(m, sig);
    if *c == one() {
        mono
    } else if -c == one() {
        format!("(- {mono})")
    } else {
        format!("(* {c} {mono})")
    }
}

/// A canonical expression for `p`; the zero polynomial prints as `0`.
pub fn format_polynomial(p: &Polynomial, sig: &Signature) -> String {
    let terms: Vec<String> = p.terms().map(|(m, c)| format_term(m, c, sig)).collect();
    match terms.len() {
        0 => "0".into(),
        1 => terms.into_iter().next().unwrap(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

pub fn format_signature(sig: &Signature) -> String {
    let ops: Vec<String> = sig.ops().map(|(n, a)| format!("(op {n} {a})")).collect();
    format!("(signature {})", ops.join(" "))
}

pub fn format_presentation(def: &PresentationDef) -> String {
    let sig = def.presentation.signature();
    let mut s = format!("(presentation {}\n  {}", def.name, format_signature(sig));
    for (name, g) in def.identity_names.iter().zip(def.presentation.generators()) {
        write!(s, "\n  (identity {name} {})", format_polynomial(g, sig)).unwrap();
    }
    s.push(')');
    s
}

pub fn format_morphism(def: &MorphismDef) -> String {
    let ssig = def.source.presentation.signature();
    let tsig = def.target.presentation.signature();
    let mut s = format!(
        "(morphism {}\n  (source {})\n  (target {})",
        def.name, def.source.name, def.target.name
    );
    for (i, img) in def.morphism.images().iter().enumerate() {
        write!(
            s,
            "\n  (image {} {})",
            ssig.name(i),
            format_polynomial(img, tsig)
        )
        .unwrap();
    }
    s.push(')');
    s
}

/// A document that parses back to `input` given the same outside lookup for
/// presentations it does not define.
pub fn format_input(input: &WorkbenchInput) -> String {
    let mut blocks: Vec<String> = input
        .presentations
        .iter()
        .map(format_presentation)
        .collect();
    blocks.extend(input.morphisms.iter().map(format_morphism));
    let mut s = blocks.join("\n\n");
    s.push('\n');
    s
}

/// Content of a presentation without its names; equal texts mean equal
/// identities over equal signatures.
pub fn canonical_presentation_text(v: &VarietyPresentation) -> String {
    let sig = v.signature();
    let mut s = format_signature(sig);
    for g in v.generators() {
        write!(s, "\n{}", format_polynomial(g, sig)).unwrap();
    }
    s
}
