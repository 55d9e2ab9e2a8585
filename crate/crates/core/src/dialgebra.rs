//! The Perm operad, the Hadamard product with it, and the dialgebra presentation
//! obtained by doubling a signature.
//!
//! An element of `F(n) ⊗ Perm(n)` is stored as its `n` components with respect
//! to the basis `e_1, …, e_n` of `Perm(n)`. The map `zeta` sends a monomial over
//! the doubled signature to a monomial with one emphasized leaf; `rho` is its
//! section, putting on every node the index of the branch that leads to the
//! emphasized leaf (or 1 if the emphasized leaf lies elsewhere).

use num_traits::{One, Zero};

use crate::error::{arg_err, Result};
use crate::ideal::{to_vector, DegreeComponent, Session, VarietyPresentation};
use crate::linalg::{kernel_basis, EchelonBuilder, Field, SparseMatrix, SparseVec, Subspace};
use crate::monomial::{Limits, Monomial, MonomialBasis};
use crate::polynomial::{Polynomial, Rational};
use crate::signature::{double_signature, DoubledSignature, Signature};

/// A vector of `Perm(n) = k^n` in the basis `e_1, …, e_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermVector {
    coords: Vec<Rational>,
}

impl PermVector {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return arg_err("Perm(n) needs n >= 1");
        }
        Ok(PermVector { coords })
    }

    /// The basis vector `e_k` of `Perm(n)`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return arg_err(format!("e_{k} is not a basis vector of Perm({n})"));
        }
        let mut coords = vec![Rational::zero(); n];
        coords[k - 1] = Rational::one();
        Ok(PermVector { coords })
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

/// Index of `γ(e_k^{(n)}; e_{j_1}^{(m_1)}, …, e_{j_n}^{(m_n)})`: the basis vector
/// `e_{m_1 + … + m_{k-1} + j_k}` of `Perm(m_1 + … + m_n)`.
pub fn perm_compose_basis(k: usize, args: &[(usize, usize)]) -> Result<(usize, usize)> {
    if k == 0 || k > args.len() {
        return arg_err(format!(
            "e_{k} is not a basis vector of Perm({})",
            args.len()
        ));
    }
    if let Some(&(j, m)) = args.iter().find(|&&(j, m)| j == 0 || j > m) {
        return arg_err(format!("e_{j} is not a basis vector of Perm({m})"));
    }
    let total = args.iter().map(|&(_, m)| m).sum();
    let offset: usize = args[..k - 1].iter().map(|&(_, m)| m).sum();
    Ok((offset + args[k - 1].0, total))
}

/// Composition in Perm, extended multilinearly.
pub fn perm_compose(f: &PermVector, gs: &[PermVector]) -> Result<PermVector> {
    if gs.len() != f.arity() {
        return arg_err(format!(
            "Perm({}) element composed with {} arguments",
            f.arity(),
            gs.len()
        ));
    }
    let total: usize = gs.iter().map(PermVector::arity).sum();
    let mut out = vec![Rational::zero(); total];
    let mut offset = 0;
    for (k, g) in gs.iter().enumerate() {
        let a = &f.coords[k];
        if !a.is_zero() {
            // the full weight of g matters: every other slot contributes its coordinate sum
            let others: Rational = gs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, h)| h.coords.iter().fold(Rational::zero(), |s, c| s + c))
                .fold(Rational::one(), |p, s| p * s);
            for (j, c) in g.coords.iter().enumerate() {
                out[offset + j] += a * c * &others;
            }
        }
        offset += g.arity();
    }
    PermVector::new(out)
}

/// A base monomial with one emphasized leaf: the basis element `m ⊗ e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmphasizedMonomial {
    pub base: Monomial,
    pub emphasized: u32,
}

impl EmphasizedMonomial {
    pub fn new(base: Monomial, emphasized: u32) -> Result<Self> {
        if emphasized == 0 || emphasized as usize > base.degree() {
            return arg_err(format!(
                "emphasized leaf {emphasized} out of range 1..={}",
                base.degree()
            ));
        }
        Ok(EmphasizedMonomial { base, emphasized })
    }
}

/// An element of `F(n) ⊗ Perm(n)` as its components `t_1, …, t_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiPolynomial {
    components: Vec<Polynomial>,
}

impl DiPolynomial {
    pub fn zero(degree: usize) -> Self {
        DiPolynomial {
            components: vec![Polynomial::zero(degree); degree],
        }
    }

    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if components.iter().any(|c| c.degree() != n) {
            return arg_err(format!(
                "every component of a degree-{n} dipolynomial has degree {n}"
            ));
        }
        Ok(DiPolynomial { components })
    }

    /// `f ⊗ e_k`.
    pub fn lift(f: &Polynomial, k: usize) -> Result<Self> {
        let n = f.degree();
        if k == 0 || k > n {
            return arg_err(format!("e_{k} is not a basis vector of Perm({n})"));
        }
        let mut d = DiPolynomial::zero(n);
        d.components[k - 1] = f.clone();
        Ok(d)
    }

    pub fn degree(&self) -> usize {
        self.components.len()
    }

    /// Component `k` (1-based), the coefficient of `e_k`.
    pub fn component(&self, k: usize) -> &Polynomial {
        &self.components[k - 1]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }
}

/// `ζ` on a monomial over the doubled signature.
pub fn zeta(m: &Monomial, dsig: &DoubledSignature) -> EmphasizedMonomial {
    EmphasizedMonomial {
        base: m.map_symbols(|s| dsig.origin(s).0),
        emphasized: m.follow(|s| dsig.origin(s).1),
    }
}

/// `ζ` extended linearly.
pub fn zeta_poly(p: &Polynomial, dsig: &DoubledSignature) -> DiPolynomial {
    let n = p.degree();
    let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); n];
    for (m, c) in p.terms() {
        let e = zeta(m, dsig);
        parts[e.emphasized as usize - 1].push((e.base, c.clone()));
    }
    DiPolynomial {
        components: parts
            .into_iter()
            .map(|t| Polynomial::from_terms_unchecked(n, t))
            .collect(),
    }
}

/// The section `ρ`: superscripts record the branch leading to leaf `k`.
pub fn rho(m: &Monomial, k: u32, dsig: &DoubledSignature) -> Result<Monomial> {
    if k == 0 || k as usize > m.degree() || !m.leaves().contains(&k) {
        return arg_err(format!(
            "emphasized leaf {k} is not a leaf of a degree-{} monomial",
            m.degree()
        ));
    }
    let branches = m.branch_towards(k);
    Ok(m.relabel_nodes(|node, op| dsig.symbol(op, branches[node].unwrap_or(1))))
}

/// `ρ(p ⊗ e_k)`.
pub fn rho_poly(p: &Polynomial, k: usize, dsig: &DoubledSignature) -> Result<Polynomial> {
    if k == 0 || k > p.degree() {
        return arg_err(format!(
            "emphasized leaf {k} out of range 1..={}",
            p.degree()
        ));
    }
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        terms.push((rho(m, k as u32, dsig)?, c.clone()));
    }
    Ok(Polynomial::from_terms_unchecked(p.degree(), terms))
}

/// Generators making inner superscripts irrelevant outside the emphasized slot:
/// `f^k(…, g^l(…), …) − f^k(…, g^p(…), …)` with `g` in slot `j ≠ k`, `l < p`.
pub fn zero_identities(sig: &Signature) -> Vec<Polynomial> {
    let dsig = double_signature(sig);
    let dd = dsig.signature();
    let mut out = Vec::new();
    for f in 0..sig.len() {
        let n = sig.arity(f);
        for g in 0..sig.len() {
            let m = sig.arity(g);
            for k in 1..=n {
                let outer = Monomial::generator(dd, dsig.symbol(f, k));
                for j in (1..=n).filter(|&j| j != k) {
                    for l in 1..=m {
                        for p in l + 1..=m {
                            let a = outer
                                .substitute(j as u32, &Monomial::generator(dd, dsig.symbol(g, l)));
                            let b = outer
                                .substitute(j as u32, &Monomial::generator(dd, dsig.symbol(g, p)));
                            out.push(Polynomial::from_terms_unchecked(
                                n + m - 1,
                                [(a, Rational::one()), (b, -Rational::one())],
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// The dialgebra presentation over the doubled signature: the 0-identities
/// plus `ρ(s ⊗ e_k)` for every generator `s` of degree `n` and `k = 1..n`.
pub fn bso_presentation(
    v: &VarietyPresentation,
) -> Result<(DoubledSignature, VarietyPresentation)> {
    let dsig = double_signature(v.signature());
    let mut generators = zero_identities(v.signature());
    for s in v.generators() {
        for k in 1..=s.degree() {
            generators.push(rho_poly(s, k, &dsig)?);
        }
    }
    let name = v.name().map(|n| format!("di-{n}"));
    let out = VarietyPresentation::new(name, dsig.signature().clone(), generators)?;
    Ok((dsig, out))
}

/// Coordinates of a dipolynomial: component `k` occupies columns
/// `(k - 1) * |basis| .. k * |basis|`.
pub fn di_vector<F: Field>(
    basis: &MonomialBasis,
    t: &DiPolynomial,
    field: &F,
) -> Result<SparseVec<F::Elem>> {
    let b = basis.len() as u32;
    let mut pairs = Vec::new();
    for (k, c) in t.components.iter().enumerate() {
        let v = to_vector(basis, c, field)?;
        pairs.extend(
            v.into_entries()
                .into_iter()
                .map(|(i, e)| (k as u32 * b + i, e)),
        );
    }
    Ok(SparseVec::from_sorted(pairs))
}

pub fn di_polynomial<F: Field>(
    basis: &MonomialBasis,
    v: &SparseVec<F::Elem>,
    field: &F,
) -> DiPolynomial {
    let b = basis.len() as u32;
    let n = basis.degree();
    let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); n];
    for (c, e) in v.entries() {
        parts[(c / b) as usize].push((basis.monomial((c % b) as usize), field.to_rational(e)));
    }
    DiPolynomial {
        components: parts
            .into_iter()
            .map(|t| Polynomial::from_terms_unchecked(n, t))
            .collect(),
    }
}

/// `n` copies of a subspace of `F(n)`, one per Perm coordinate.
pub fn block_sum<F: Field>(s: &Subspace<F>, copies: usize) -> Subspace<F> {
    let b = s.ncols() as u32;
    let mut builder = EchelonBuilder::new(s.field().clone(), s.ncols() * copies);
    for k in 0..copies as u32 {
        for r in s.rows() {
            builder.insert(&SparseVec::from_sorted(
                r.entries()
                    .iter()
                    .map(|(c, e)| (k * b + c, e.clone()))
                    .collect(),
            ));
        }
    }
    builder.finish()
}

/// The identities of `diP` at degree `n`: tuples whose every component is an
/// identity of `v`.
#[derive(Debug, Clone)]
pub struct DiIdeal<F: Field> {
    pub component: DegreeComponent<F>,
    pub subspace: Subspace<F>,
}

pub fn di_ideal_at_degree<F: Field>(
    v: &VarietyPresentation,
    n: usize,
    field: &F,
    limits: &Limits,
) -> Result<DiIdeal<F>> {
    Session::new(field.clone(), *limits).di_ideal_at_degree(v, n)
}

/// Kernel of the linear map whose value on column `j` is `columns[j]`, as a
/// subspace of the domain.
pub(crate) fn kernel_of_columns<F: Field>(
    field: &F,
    nrows: usize,
    columns: &[SparseVec<F::Elem>],
) -> Result<Subspace<F>> {
    let mut rows: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, e) in col.entries() {
            rows[*i as usize].push((j as u32, e.clone()));
        }
    }
    let m = SparseMatrix::new(
        field.clone(),
        columns.len(),
        rows.into_iter().map(SparseVec::from_sorted).collect(),
    )?;
    let kernel = kernel_basis(&m);
    Ok(Subspace::spanned_by(field.clone(), columns.len(), &kernel))
}

/// Normal forms of the unit vectors modulo an ideal layer, in coordinates
/// indexed by the free columns (a basis of the quotient).
pub(crate) fn quotient_coordinates<F: Field>(ideal: &Subspace<F>) -> Vec<SparseVec<F::Elem>> {
    let mut free_index = vec![u32::MAX; ideal.ncols()];
    for (i, c) in ideal.free_columns().into_iter().enumerate() {
        free_index[c as usize] = i as u32;
    }
    (0..ideal.ncols() as u32)
        .map(|c| {
            SparseVec::from_sorted(
                ideal
                    .reduce_unit(c)
                    .into_entries()
                    .into_iter()
                    .map(|(f, e)| (free_index[f as usize], e))
                    .collect(),
            )
        })
        .collect()
}

/// Outcome of comparing the ideal of the dialgebra presentation with the
/// preimage of the `diP` identities under `ζ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub degree: usize,
    /// Dimension of the multilinear component over the doubled signature.
    pub ambient_dim: usize,
    /// Rank of the consequences of the dialgebra presentation.
    pub presentation_ideal_dim: usize,
    /// Rank of the preimage of the `diP` identities.
    pub preimage_dim: usize,
    pub base_quotient_dim: usize,
    /// `ambient_dim - presentation_ideal_dim`.
    pub quotient_dim: usize,
    pub equal: bool,
}

/// Checks at degree `n` that the dialgebra presentation of `v` generates
/// exactly the identities of `P ⊗ Perm`.
pub fn verify_dialgebra_equivalence<F: Field>(
    v: &VarietyPresentation,
    n: usize,
    field: &F,
    limits: &Limits,
) -> Result<EquivalenceReport> {
    Session::new(field.clone(), *limits).verify_dialgebra_equivalence(v, n)
}

impl<F: Field> Session<F> {
    pub fn di_ideal_at_degree(&mut self, v: &VarietyPresentation, n: usize) -> Result<DiIdeal<F>> {
        let component = self.component(v, n)?;
        let subspace = block_sum(&component.ideal, n);
        Ok(DiIdeal {
            component,
            subspace,
        })
    }

    pub fn verify_dialgebra_equivalence(
        &mut self,
        v: &VarietyPresentation,
        n: usize,
    ) -> Result<EquivalenceReport> {
        let (dsig, bso) = bso_presentation(v)?;
        let presented = self.component(&bso, n)?;
        let base = self.component(v, n)?;
        let preimage = zeta_preimage(&dsig, &presented.basis, &base, self.field())?;
        let equal = presented.ideal.equals(&preimage)?;
        Ok(EquivalenceReport {
            degree: n,
            ambient_dim: presented.basis.len(),
            presentation_ideal_dim: presented.ideal.rank(),
            preimage_dim: preimage.rank(),
            base_quotient_dim: base.quotient_dim,
            quotient_dim: presented.quotient_dim,
            equal,
        })
    }
}

/// `{t : ζ(t) has every component in the base ideal layer}`.
fn zeta_preimage<F: Field>(
    dsig: &DoubledSignature,
    doubled_basis: &MonomialBasis,
    base: &DegreeComponent<F>,
    field: &F,
) -> Result<Subspace<F>> {
    let q = base.quotient_dim as u32;
    let coords = quotient_coordinates(&base.ideal);
    let columns: Vec<SparseVec<F::Elem>> = doubled_basis
        .iter()
        .map(|m| {
            let e = zeta(&m, dsig);
            let c = base
                .basis
                .index_of(&e.base)
                .expect("ζ preserves the degree");
            let block = (e.emphasized - 1) * q;
            SparseVec::from_sorted(
                coords[c]
                    .entries()
                    .iter()
                    .map(|(i, x)| (block + i, x.clone()))
                    .collect(),
            )
        })
        .collect();
    kernel_of_columns(field, q as usize * base.degree, &columns)
}
