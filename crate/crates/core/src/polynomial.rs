//! Multilinear polynomials over the rationals and the free-operad operations on them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{arg_err, Result};
use crate::monomial::Monomial;
use crate::permutation::Permutation;
use crate::signature::Signature;

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// A linear combination of multilinear monomials of one degree, with no zero
/// coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    degree: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(degree: usize) -> Polynomial {
        Polynomial {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial) -> Result<Polynomial> {
        Polynomial::from_terms(m.degree(), [(m, Rational::one())])
    }

    /// Collects terms, summing repeated monomials and dropping zeros. Every
    /// monomial must be multilinear of the given degree.
    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Polynomial> {
        let mut p = Polynomial::zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return arg_err(format!(
                    "term of degree {} in a degree-{degree} polynomial",
                    m.degree()
                ));
            }
            if !m.is_multilinear() {
                return arg_err(format!(
                    "term with leaves {:?} is not multilinear",
                    m.leaves()
                ));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn from_terms_unchecked(
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(degree);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.degree != other.degree {
            return arg_err(format!(
                "cannot add degrees {} and {}",
                self.degree, other.degree
            ));
        }
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.degree);
        }
        Polynomial {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Relabels monomials without changing the degree; used for symbol maps.
    pub(crate) fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        Polynomial::from_terms_unchecked(
            self.degree,
            self.terms.iter().map(|(m, c)| (f(m), c.clone())),
        )
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> PolynomialDisplay<'a> {
        PolynomialDisplay { p: self, sig }
    }
}

pub struct PolynomialDisplay<'a> {
    p: &'a Polynomial,
    sig: &'a Signature,
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.p.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "{}", m.display(self.sig))?;
        }
        Ok(())
    }
}

/// The symmetric group action: every leaf label `i` becomes `sigma(i)`.
pub fn apply_permutation(sigma: &Permutation, p: &Polynomial) -> Result<Polynomial> {
    if sigma.degree() != p.degree() {
        return arg_err(format!(
            "permutation of degree {} applied to a degree-{} polynomial",
            sigma.degree(),
            p.degree()
        ));
    }
    Ok(p.map_monomials(|m| m.permute(sigma)))
}

/// Operadic composition `γ(f; g1, …, gn)`, extended multilinearly.
pub fn compose(f: &Polynomial, gs: &[Polynomial]) -> Result<Polynomial> {
    if gs.len() != f.degree() {
        return arg_err(format!(
            "composition of a degree-{} polynomial with {} arguments",
            f.degree(),
            gs.len()
        ));
    }
    let degree: usize = gs.iter().map(Polynomial::degree).sum();
    let mut out = Polynomial::zero(degree);
    if gs.iter().any(Polynomial::is_zero) {
        return Ok(out);
    }
    let slots: Vec<Vec<(&Monomial, &Rational)>> = gs.iter().map(|g| g.terms().collect()).collect();
    let mut choice = vec![0usize; gs.len()];
    loop {
        let args: Vec<&Monomial> = choice.iter().zip(&slots).map(|(&c, s)| s[c].0).collect();
        let coef: Rational = choice
            .iter()
            .zip(&slots)
            .map(|(&c, s)| s[c].1)
            .fold(Rational::one(), |acc, c| acc * c);
        for (m, c) in f.terms() {
            out.add_term(m.compose(&args), c * &coef);
        }
        // odometer over the term choices
        let mut i = choice.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < slots[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Substitutes `u` into slot `i` of the monomial `w` (identities elsewhere).
pub fn substitute_at(w: &Monomial, i: usize, u: &Polynomial) -> Result<Polynomial> {
    if i == 0 || i > w.degree() {
        return arg_err(format!("slot {i} out of range 1..={}", w.degree()));
    }
    if !w.is_multilinear() {
        return arg_err("substitution target must be multilinear");
    }
    let degree = w.degree() + u.degree() - 1;
    Ok(Polynomial::from_terms_unchecked(
        degree,
        u.terms()
            .map(|(m, c)| (w.substitute(i as u32, m), c.clone())),
    ))
}

/// A homogeneous polynomial whose monomials may repeat variables; the input of
/// complete linearization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl RawPolynomial {
    pub fn new(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> RawPolynomial {
        let mut out = RawPolynomial::default();
        for (m, c) in terms {
            let e = out.terms.entry(m).or_insert_with(Rational::zero);
            *e += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }
}

impl From<&Polynomial> for RawPolynomial {
    fn from(p: &Polynomial) -> RawPolynomial {
        RawPolynomial {
            terms: p.terms.clone(),
        }
    }
}

fn variable_degrees(m: &Monomial) -> BTreeMap<u32, usize> {
    let mut d = BTreeMap::new();
    for &v in m.leaves() {
        *d.entry(v).or_insert(0) += 1;
    }
    d
}

/// Complete linearization: the occurrences of each variable of degree `d` are
/// replaced by `d` fresh variables in all `d!` ways and summed. Fresh blocks are
/// numbered consecutively in order of the original variable index.
pub fn linearize(f: &RawPolynomial) -> Result<Polynomial> {
    let mut iter = f.terms();
    let Some((first, _)) = iter.next() else {
        return arg_err("cannot linearize the zero polynomial");
    };
    let degrees = variable_degrees(first);
    if iter.any(|(m, _)| variable_degrees(m) != degrees) {
        return arg_err("polynomial is not multihomogeneous");
    }
    // block start for each original variable
    let mut start = BTreeMap::new();
    let mut next = 1u32;
    for (&v, &d) in &degrees {
        start.insert(v, next);
        next += d as u32;
    }
    let degree = first.degree();
    let mut out = Polynomial::zero(degree);
    for (m, c) in f.terms() {
        // positions of each original variable's occurrences
        let mut positions: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (pos, &v) in m.leaves().iter().enumerate() {
            positions.entry(v).or_default().push(pos);
        }
        let mut words: Vec<Vec<u32>> = vec![vec![0; degree]];
        for (v, pos) in &positions {
            let block: Vec<u32> = (0..pos.len() as u32).map(|i| start[v] + i).collect();
            let mut expanded = Vec::new();
            for w in &words {
                for perm in crate::permutation::all_words(block.len()) {
                    let mut w = w.clone();
                    for (&p, &k) in pos.iter().zip(&perm) {
                        w[p] = block[k as usize - 1];
                    }
                    expanded.push(w);
                }
            }
            words = expanded;
        }
        for w in words {
            out.add_term(m.with_leaves(w), c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Node;

    fn sig() -> Signature {
        Signature::new([("mul", 2)]).unwrap()
    }

    fn mono(n: &Node) -> Monomial {
        Monomial::from_node(n, &sig()).unwrap()
    }

    fn mul(a: Node, b: Node) -> Node {
        Node::Op(0, vec![a, b])
    }

    fn x(i: u32) -> Node {
        Node::Leaf(i)
    }

    fn poly(terms: &[(i64, Node)]) -> Polynomial {
        let ms: Vec<_> = terms.iter().map(|(c, n)| (mono(n), rational(*c))).collect();
        let deg = ms[0].0.degree();
        Polynomial::from_terms(deg, ms).unwrap()
    }

    #[test]
    fn permutation_examples() {
        let swap = Permutation::from_cycles(2, &[&[1, 2]]).unwrap();
        let p = poly(&[(1, mul(x(1), x(2)))]);
        assert_eq!(
            apply_permutation(&swap, &p).unwrap(),
            poly(&[(1, mul(x(2), x(1)))])
        );
        assert_eq!(apply_permutation(&Permutation::identity(2), &p).unwrap(), p);
        let c = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let q = poly(&[(1, mul(mul(x(1), x(2)), x(3)))]);
        assert_eq!(
            apply_permutation(&c, &q).unwrap(),
            poly(&[(1, mul(mul(x(2), x(3)), x(1)))])
        );
        assert!(apply_permutation(&c, &p).is_err());
    }

    #[test]
    fn composition_examples() {
        let id = Polynomial::monomial(Monomial::identity()).unwrap();
        let m = poly(&[(1, mul(x(1), x(2)))]);
        assert_eq!(
            compose(&m, &[id.clone(), m.clone()]).unwrap(),
            poly(&[(1, mul(x(1), mul(x(2), x(3))))])
        );
        let comm = poly(&[(1, mul(x(1), x(2))), (-1, mul(x(2), x(1)))]);
        assert_eq!(
            compose(&comm, &[m.clone(), id.clone()]).unwrap(),
            poly(&[
                (1, mul(mul(x(1), x(2)), x(3))),
                (-1, mul(x(3), mul(x(1), x(2))))
            ])
        );
        assert_eq!(
            compose(&m, &[m.clone(), m.clone()]).unwrap(),
            poly(&[(1, mul(mul(x(1), x(2)), mul(x(3), x(4))))])
        );
        assert!(compose(&m, std::slice::from_ref(&m)).is_err());
    }

    #[test]
    fn substitution_examples() {
        let m = poly(&[(1, mul(x(1), x(2)))]);
        let id = Polynomial::monomial(Monomial::identity()).unwrap();
        let w = mono(&mul(x(1), x(2)));
        assert_eq!(
            substitute_at(&w, 2, &m).unwrap(),
            poly(&[(1, mul(x(1), mul(x(2), x(3))))])
        );
        assert_eq!(substitute_at(&w, 1, &id).unwrap(), m);
        let w3 = mono(&mul(mul(x(1), x(2)), x(3)));
        assert_eq!(
            substitute_at(&w3, 2, &m).unwrap(),
            poly(&[(1, mul(mul(x(1), mul(x(2), x(3))), x(4)))])
        );
        assert!(substitute_at(&w, 3, &m).is_err());
        assert!(substitute_at(&w, 0, &m).is_err());
    }

    #[test]
    fn linearization_examples() {
        let lin = |n: Node| linearize(&RawPolynomial::new([(mono(&n), rational(1))])).unwrap();
        assert_eq!(lin(mul(x(1), x(2))), poly(&[(1, mul(x(1), x(2)))]));
        assert_eq!(
            lin(mul(x(1), x(1))),
            poly(&[(1, mul(x(1), x(2))), (1, mul(x(2), x(1)))])
        );
        let cube = lin(mul(mul(x(1), x(1)), x(1)));
        assert_eq!(cube.len(), 6);
        for w in crate::permutation::all_words(3) {
            let m = mono(&mul(mul(x(w[0]), x(w[1])), x(w[2])));
            assert_eq!(cube.coefficient(&m), rational(1));
        }
        let bad = RawPolynomial::new([
            (mono(&mul(x(1), x(1))), rational(1)),
            (mono(&mul(x(1), x(2))), rational(1)),
        ]);
        assert!(linearize(&bad).is_err());
    }

    #[test]
    fn display_uses_signs() {
        let p = poly(&[(1, mul(x(1), x(2))), (-2, mul(x(2), x(1)))]);
        assert_eq!(p.display(&sig()).to_string(), "mul(x1,x2) - 2*mul(x2,x1)");
    }
}
