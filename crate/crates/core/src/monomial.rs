//! Tree monomials and the canonical monomial basis of a multilinear component.
//!
//! A monomial is stored flat: a prefix encoding of its skeleton (the tree with
//! unlabeled leaves) together with the word of leaf variables read left to right.
//! Skeleton tokens are `LEAF` for a leaf and `(op + 1) << 8 | arity` for an
//! internal node, so the derived lexicographic order on `(skeleton, leaves)` is
//! the canonical basis order: skeletons compared recursively by symbol index and
//! then children, ties broken by the leaf word.

use std::collections::HashMap;
use std::fmt;

use crate::error::{arg_err, Error, Result};
use crate::permutation::{all_words, word_rank, Permutation};
use crate::signature::Signature;

const LEAF: u32 = 0;

#[inline]
fn op_token(op: usize, arity: usize) -> u32 {
    (((op + 1) as u32) << 8) | arity as u32
}

#[inline]
fn token_op(tok: u32) -> Option<(usize, usize)> {
    (tok != LEAF).then(|| (((tok >> 8) - 1) as usize, (tok & 0xff) as usize))
}

/// Degree bounds applied before any basis is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 8 }
    }
}

impl Limits {
    pub fn check(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::ResourceLimit {
                requested: degree,
                cap: self.max_degree,
            });
        }
        Ok(())
    }
}

/// Explicit tree form of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(u32),
    Op(usize, Vec<Node>),
}

impl Node {
    pub fn op(symbol: usize, children: Vec<Node>) -> Node {
        Node::Op(symbol, children)
    }
}

/// A term: a planar tree with internal nodes labeled by operation symbols and
/// leaves labeled by variables. Members of a `Polynomial` are multilinear.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    skel: Vec<u32>,
    leaves: Vec<u32>,
}

impl Monomial {
    /// The identity term `x1`.
    pub fn identity() -> Monomial {
        Monomial::var(1)
    }

    pub fn var(i: u32) -> Monomial {
        assert!(i >= 1, "variables are numbered from 1");
        Monomial {
            skel: vec![LEAF],
            leaves: vec![i],
        }
    }

    /// `f(x1, …, xa)` for operation `op` of arity `a`.
    pub fn generator(sig: &Signature, op: usize) -> Monomial {
        let a = sig.arity(op);
        let mut skel = vec![op_token(op, a)];
        skel.extend(std::iter::repeat_n(LEAF, a));
        Monomial {
            skel,
            leaves: (1..=a as u32).collect(),
        }
    }

    pub fn from_node(node: &Node, sig: &Signature) -> Result<Monomial> {
        fn walk(node: &Node, sig: &Signature, m: &mut Monomial) -> Result<()> {
            match node {
                Node::Leaf(0) => arg_err("variables are numbered from 1"),
                Node::Leaf(v) => {
                    m.skel.push(LEAF);
                    m.leaves.push(*v);
                    Ok(())
                }
                Node::Op(op, children) => {
                    if *op >= sig.len() {
                        return arg_err(format!("unknown operation index {op}"));
                    }
                    let a = sig.arity(*op);
                    if children.len() != a {
                        return arg_err(format!(
                            "operation `{}` has arity {a} but got {} arguments",
                            sig.name(*op),
                            children.len()
                        ));
                    }
                    m.skel.push(op_token(*op, a));
                    children.iter().try_for_each(|c| walk(c, sig, m))
                }
            }
        }
        let mut m = Monomial {
            skel: Vec::new(),
            leaves: Vec::new(),
        };
        walk(node, sig, &mut m)?;
        Ok(m)
    }

    pub fn to_node(&self) -> Node {
        fn build(m: &Monomial, pos: &mut usize, leaf: &mut usize) -> Node {
            let tok = m.skel[*pos];
            *pos += 1;
            match token_op(tok) {
                None => {
                    *leaf += 1;
                    Node::Leaf(m.leaves[*leaf - 1])
                }
                Some((op, a)) => Node::Op(op, (0..a).map(|_| build(m, pos, leaf)).collect()),
            }
        }
        build(self, &mut 0, &mut 0)
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaves(&self) -> &[u32] {
        &self.leaves
    }

    pub fn is_multilinear(&self) -> bool {
        crate::permutation::is_permutation_word(&self.leaves)
    }

    /// Symbol indices of internal nodes in prefix order.
    pub fn symbols(&self) -> impl Iterator<Item = usize> + '_ {
        self.skel
            .iter()
            .filter_map(|&t| token_op(t).map(|(op, _)| op))
    }

    /// The same tree with leaves relabeled `1, 2, …, n` left to right.
    pub fn skeleton(&self) -> Monomial {
        Monomial {
            skel: self.skel.clone(),
            leaves: (1..=self.leaves.len() as u32).collect(),
        }
    }

    pub fn with_leaves(&self, leaves: Vec<u32>) -> Monomial {
        assert_eq!(leaves.len(), self.leaves.len());
        Monomial {
            skel: self.skel.clone(),
            leaves,
        }
    }

    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Monomial {
        Monomial {
            skel: self.skel.clone(),
            leaves: self.leaves.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Replaces every leaf label `i` by `sigma(i)`.
    pub fn permute(&self, sigma: &Permutation) -> Monomial {
        self.relabel(|v| sigma.image(v))
    }

    /// Replaces each symbol index through `map`, keeping arities.
    pub fn map_symbols(&self, map: impl Fn(usize) -> usize) -> Monomial {
        Monomial {
            skel: self
                .skel
                .iter()
                .map(|&t| match token_op(t) {
                    None => LEAF,
                    Some((op, a)) => op_token(map(op), a),
                })
                .collect(),
            leaves: self.leaves.clone(),
        }
    }

    /// Replaces the symbol of every internal node; `f` receives the node's
    /// position in prefix order and its current symbol.
    pub(crate) fn relabel_nodes(&self, mut f: impl FnMut(usize, usize) -> usize) -> Monomial {
        let mut node = 0;
        Monomial {
            skel: self
                .skel
                .iter()
                .map(|&t| match token_op(t) {
                    None => LEAF,
                    Some((op, a)) => {
                        node += 1;
                        op_token(f(node - 1, op), a)
                    }
                })
                .collect(),
            leaves: self.leaves.clone(),
        }
    }

    /// Operadic composition on monomials: leaf `x_i` of `self` is replaced by
    /// `gs[i - 1]` with its variables shifted by the degrees of `gs[..i - 1]`.
    /// `self` must be multilinear of degree `gs.len()`.
    pub fn compose(&self, gs: &[&Monomial]) -> Monomial {
        debug_assert_eq!(gs.len(), self.degree());
        let mut offsets = Vec::with_capacity(gs.len());
        let mut acc = 0u32;
        for g in gs {
            offsets.push(acc);
            acc += g.degree() as u32;
        }
        let mut skel =
            Vec::with_capacity(self.skel.len() + gs.iter().map(|g| g.skel.len()).sum::<usize>());
        let mut leaves = Vec::with_capacity(acc as usize);
        let mut leaf = 0;
        for &t in &self.skel {
            if t == LEAF {
                let v = self.leaves[leaf] as usize;
                leaf += 1;
                let g = gs[v - 1];
                skel.extend_from_slice(&g.skel);
                leaves.extend(g.leaves.iter().map(|&x| x + offsets[v - 1]));
            } else {
                skel.push(t);
            }
        }
        Monomial { skel, leaves }
    }

    /// Substitutes the multilinear monomial `u` for variable `x_i`, renumbering as
    /// in composition with identities in every other slot.
    pub fn substitute(&self, i: u32, u: &Monomial) -> Monomial {
        let m = u.degree() as u32;
        let mut skel = Vec::with_capacity(self.skel.len() + u.skel.len());
        let mut leaves = Vec::with_capacity(self.leaves.len() + u.leaves.len());
        let mut leaf = 0;
        for &t in &self.skel {
            if t == LEAF {
                let v = self.leaves[leaf];
                leaf += 1;
                if v == i {
                    skel.extend_from_slice(&u.skel);
                    leaves.extend(u.leaves.iter().map(|&x| x + i - 1));
                } else {
                    skel.push(LEAF);
                    leaves.push(if v > i { v + m - 1 } else { v });
                }
            } else {
                skel.push(t);
            }
        }
        Monomial { skel, leaves }
    }

    /// Walks from the root, at each internal node descending into the child
    /// chosen by `pick(symbol)` (1-based), and returns the variable reached.
    pub(crate) fn follow(&self, pick: impl Fn(usize) -> usize) -> u32 {
        let mut pos = 0;
        loop {
            match token_op(self.skel[pos]) {
                None => return self.leaves[self.leaf_count_before(pos)],
                Some((op, _)) => {
                    let child = pick(op);
                    pos += 1;
                    for _ in 1..child {
                        pos = self.subtree_end(pos);
                    }
                }
            }
        }
    }

    /// For every internal node in prefix order, the 1-based index of the child
    /// whose subtree contains variable `var`, or `None` if no child does.
    pub(crate) fn branch_towards(&self, var: u32) -> Vec<Option<usize>> {
        fn walk(
            m: &Monomial,
            var: u32,
            pos: &mut usize,
            leaf: &mut usize,
            out: &mut Vec<Option<usize>>,
        ) -> bool {
            let tok = m.skel[*pos];
            *pos += 1;
            match token_op(tok) {
                None => {
                    *leaf += 1;
                    m.leaves[*leaf - 1] == var
                }
                Some((_, a)) => {
                    let slot = out.len();
                    out.push(None);
                    let mut found = false;
                    for child in 1..=a {
                        if walk(m, var, pos, leaf, out) {
                            out[slot] = Some(child);
                            found = true;
                        }
                    }
                    found
                }
            }
        }
        let mut out = Vec::new();
        walk(self, var, &mut 0, &mut 0, &mut out);
        out
    }

    fn subtree_end(&self, mut pos: usize) -> usize {
        let mut need = 1usize;
        while need > 0 {
            match token_op(self.skel[pos]) {
                None => need -= 1,
                Some((_, a)) => need += a - 1,
            }
            pos += 1;
        }
        pos
    }

    fn leaf_count_before(&self, pos: usize) -> usize {
        self.skel[..pos].iter().filter(|&&t| t == LEAF).count()
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, sig }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    sig: &'a Signature,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(node: &Node, sig: &Signature, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match node {
                Node::Leaf(v) => write!(f, "x{v}"),
                Node::Op(op, children) => {
                    write!(f, "{}(", sig.name(*op))?;
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        go(c, sig, f)?;
                    }
                    write!(f, ")")
                }
            }
        }
        go(&self.m.to_node(), self.sig, f)
    }
}

/// All skeletons with `n` leaves, sorted.
fn skeletons(arities: &[usize], n: usize) -> Vec<Vec<u32>> {
    let mut memo: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n + 1];
    if n >= 1 {
        memo[1] = vec![vec![LEAF]];
    }
    for d in 2..=n {
        let mut out = Vec::new();
        for (op, &a) in arities.iter().enumerate() {
            if a > d {
                continue;
            }
            for parts in compositions(d, a) {
                let mut partial: Vec<Vec<u32>> = vec![vec![op_token(op, a)]];
                for &p in &parts {
                    let mut next = Vec::with_capacity(partial.len() * memo[p].len());
                    for pre in &partial {
                        for s in &memo[p] {
                            let mut t = pre.clone();
                            t.extend_from_slice(s);
                            next.push(t);
                        }
                    }
                    partial = next;
                }
                out.extend(partial);
            }
        }
        out.sort();
        memo[d] = out;
    }
    memo.swap_remove(n)
}

/// Compositions of `d` into `a` positive parts, in lexicographic order.
fn compositions(d: usize, a: usize) -> Vec<Vec<usize>> {
    if a == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 1..=d - (a - 1) {
        for mut rest in compositions(d - first, a - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Canonically ordered basis of the multilinear component of degree `n`.
#[derive(Debug)]
pub struct MonomialBasis {
    degree: usize,
    skeletons: Vec<Vec<u32>>,
    skeleton_index: HashMap<Vec<u32>, usize>,
    words: Vec<Vec<u32>>,
    // adjacent transposition (i, i+1) acting on word ranks, i = 1..n-1
    transpositions: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn new(sig: &Signature, n: usize, limits: &Limits) -> Result<MonomialBasis> {
        if n == 0 {
            return arg_err("degree must be at least 1");
        }
        limits.check(n)?;
        let skeletons = skeletons(&sig.arities(), n);
        let skeleton_index = skeletons
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let words = all_words(n);
        let transpositions = (1..n)
            .map(|i| {
                words
                    .iter()
                    .map(|w| {
                        let swapped: Vec<u32> = w
                            .iter()
                            .map(|&v| match v as usize {
                                x if x == i => v + 1,
                                x if x == i + 1 => v - 1,
                                _ => v,
                            })
                            .collect();
                        word_rank(&swapped) as u32
                    })
                    .collect()
            })
            .collect();
        Ok(MonomialBasis {
            degree: n,
            skeletons,
            skeleton_index,
            words,
            transpositions,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.skeletons.len() * self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn skeleton_count(&self) -> usize {
        self.skeletons.len()
    }

    pub fn monomial(&self, index: usize) -> Monomial {
        let w = self.words.len();
        Monomial {
            skel: self.skeletons[index / w].clone(),
            leaves: self.words[index % w].clone(),
        }
    }

    /// Column index of a multilinear monomial of this degree.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        if m.degree() != self.degree || !m.is_multilinear() {
            return None;
        }
        let s = *self.skeleton_index.get(&m.skel)?;
        Some(s * self.words.len() + word_rank(&m.leaves))
    }

    pub fn iter(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.len()).map(|i| self.monomial(i))
    }

    /// Index of the skeleton of column `index` and the column of skeleton `s`
    /// with leaf word given by rank.
    pub(crate) fn split(&self, index: usize) -> (usize, usize) {
        (index / self.words.len(), index % self.words.len())
    }

    pub(crate) fn join(&self, skeleton: usize, word: usize) -> usize {
        skeleton * self.words.len() + word
    }

    /// Column reached by swapping variables `i` and `i + 1`.
    pub(crate) fn swap_adjacent(&self, index: usize, i: usize) -> usize {
        let (s, w) = self.split(index);
        self.join(s, self.transpositions[i - 1][w] as usize)
    }
}

/// Every multilinear degree-`n` monomial over `sig` in canonical order.
pub fn enumerate_monomials(sig: &Signature, n: usize, limits: &Limits) -> Result<Vec<Monomial>> {
    Ok(MonomialBasis::new(sig, n, limits)?.iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Signature {
        Signature::new([("mul", 2)]).unwrap()
    }

    fn mul(a: Node, b: Node) -> Node {
        Node::Op(0, vec![a, b])
    }

    fn x(i: u32) -> Node {
        Node::Leaf(i)
    }

    #[test]
    fn compositions_are_exhaustive() {
        let all = compositions(7, 3);
        assert_eq!(all.len(), 15);
        assert!(all.iter().all(|p| p.iter().sum::<usize>() == 7));
    }

    #[test]
    fn enumeration_counts() {
        let limits = Limits::default();
        let b = binary();
        assert_eq!(
            enumerate_monomials(&b, 1, &limits).unwrap(),
            vec![Monomial::identity()]
        );
        assert_eq!(enumerate_monomials(&b, 3, &limits).unwrap().len(), 12);
        let t = Signature::new([("tau", 3)]).unwrap();
        assert_eq!(enumerate_monomials(&t, 3, &limits).unwrap().len(), 6);
        let bt = Signature::new([("mul", 2), ("tau", 3)]).unwrap();
        assert_eq!(enumerate_monomials(&bt, 3, &limits).unwrap().len(), 18);
    }

    #[test]
    fn enumeration_is_sorted_and_indexed() {
        let bt = Signature::new([("mul", 2), ("tau", 3)]).unwrap();
        let basis = MonomialBasis::new(&bt, 4, &Limits::default()).unwrap();
        let all: Vec<_> = basis.iter().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, m) in all.iter().enumerate() {
            assert_eq!(basis.index_of(m), Some(i));
        }
    }

    #[test]
    fn degree_cap_is_enforced() {
        let err = MonomialBasis::new(&binary(), 9, &Limits::default()).unwrap_err();
        assert_eq!(
            err,
            Error::ResourceLimit {
                requested: 9,
                cap: 8
            }
        );
    }

    #[test]
    fn node_round_trip_and_display() {
        let sig = binary();
        let n = mul(mul(x(1), x(2)), x(3));
        let m = Monomial::from_node(&n, &sig).unwrap();
        assert_eq!(m.to_node(), n);
        assert_eq!(m.display(&sig).to_string(), "mul(mul(x1,x2),x3)");
        assert!(Monomial::from_node(&Node::Op(0, vec![x(1)]), &sig).is_err());
    }

    #[test]
    fn substitution_renumbers() {
        let sig = binary();
        let w = Monomial::from_node(&mul(mul(x(1), x(2)), x(3)), &sig).unwrap();
        let u = Monomial::generator(&sig, 0);
        let r = w.substitute(2, &u);
        let expect = Monomial::from_node(&mul(mul(x(1), mul(x(2), x(3))), x(4)), &sig).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn branch_tracing() {
        let sig = binary();
        let m = Monomial::from_node(&mul(mul(x(1), x(2)), x(3)), &sig).unwrap();
        assert_eq!(m.branch_towards(2), vec![Some(1), Some(2)]);
        assert_eq!(m.branch_towards(3), vec![Some(2), None]);
        let m = Monomial::from_node(&mul(x(3), mul(x(1), x(2))), &sig).unwrap();
        assert_eq!(m.branch_towards(2), vec![Some(2), Some(2)]);
        assert_eq!(m.follow(|_| 2), 2);
        assert_eq!(m.follow(|_| 1), 3);
    }
}
