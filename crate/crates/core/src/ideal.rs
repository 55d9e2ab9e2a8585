//! Multilinear components of the operad ideal generated by a set of identities.
//!
//! The degree-`n` layer is the span of the degree-`n` generators together with
//! two elementary moves applied to every lower layer: placing an ideal element
//! into one slot of a single operation, and substituting a single operation
//! into one variable of an ideal element. The span is then closed under the
//! adjacent transpositions, which generate `S_n`. Every composition with an
//! ideal element in one slot factors through these moves, so the layers are
//! exactly the multilinear components of the ideal.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{arg_err, Result};
use crate::linalg::{EchelonBuilder, Field, SparseVec, Subspace};
use crate::monomial::{Limits, Monomial, MonomialBasis};
use crate::polynomial::Polynomial;
use crate::signature::Signature;

/// A signature with a finite family of multilinear defining identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyPresentation {
    name: Option<String>,
    sig: Signature,
    generators: Vec<Polynomial>,
}

impl VarietyPresentation {
    pub fn new(name: Option<String>, sig: Signature, generators: Vec<Polynomial>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree() < 2 {
                return arg_err(format!(
                    "generator {} has degree {}, need at least 2",
                    i + 1,
                    g.degree()
                ));
            }
            for (m, _) in g.terms() {
                check_over(m, &sig).map_err(|e| {
                    crate::error::Error::Argument(format!("generator {}: {e}", i + 1))
                })?;
            }
        }
        Ok(VarietyPresentation {
            name,
            sig,
            generators,
        })
    }

    /// The variety with no identities.
    pub fn free(name: Option<String>, sig: Signature) -> Self {
        VarietyPresentation {
            name,
            sig,
            generators: Vec::new(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut generators = self.generators.clone();
        generators.extend(extra);
        VarietyPresentation::new(self.name.clone(), self.sig.clone(), generators)
    }
}

/// Checks that every node of `m` uses a symbol of `sig` with its arity.
pub(crate) fn check_over(m: &Monomial, sig: &Signature) -> std::result::Result<(), String> {
    fn go(node: &crate::monomial::Node, sig: &Signature) -> std::result::Result<(), String> {
        match node {
            crate::monomial::Node::Leaf(_) => Ok(()),
            crate::monomial::Node::Op(op, children) => {
                if *op >= sig.len() || sig.arity(*op) != children.len() {
                    return Err(format!("symbol #{op} does not match the signature {sig}"));
                }
                children.iter().try_for_each(|c| go(c, sig))
            }
        }
    }
    go(&m.to_node(), sig)
}

/// Coordinates of a polynomial in a monomial basis.
pub fn to_vector<F: Field>(
    basis: &MonomialBasis,
    p: &Polynomial,
    field: &F,
) -> Result<SparseVec<F::Elem>> {
    if p.degree() != basis.degree() {
        return arg_err(format!(
            "degree-{} polynomial in a degree-{} basis",
            p.degree(),
            basis.degree()
        ));
    }
    let mut pairs = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let Some(i) = basis.index_of(m) else {
            return arg_err("monomial outside the basis signature");
        };
        pairs.push((i as u32, field.from_rational(c)?));
    }
    Ok(SparseVec::from_pairs(field, pairs))
}

/// The polynomial with the given coordinates; prime-field values are lifted to
/// their symmetric integer representatives.
pub fn to_polynomial<F: Field>(
    basis: &MonomialBasis,
    v: &SparseVec<F::Elem>,
    field: &F,
) -> Polynomial {
    Polynomial::from_terms_unchecked(
        basis.degree(),
        v.entries()
            .iter()
            .map(|(c, e)| (basis.monomial(*c as usize), field.to_rational(e))),
    )
}

/// The image of a vector under the variable relabeling `sigma`.
pub(crate) fn permute_vector<F: Field>(
    basis: &MonomialBasis,
    v: &SparseVec<F::Elem>,
    field: &F,
    swap: usize,
) -> SparseVec<F::Elem> {
    v.map_columns(field, |c| basis.swap_adjacent(c as usize, swap) as u32)
}

/// Closes the span of `seeds` (plus whatever `builder` holds) under `S_n`.
pub(crate) fn close_under_symmetric_group<F: Field>(
    builder: &mut EchelonBuilder<F>,
    basis: &MonomialBasis,
    seeds: Vec<SparseVec<F::Elem>>,
) {
    let n = basis.degree();
    let field = builder.field().clone();
    let mut queue = seeds;
    while let Some(v) = queue.pop() {
        if builder.is_full() {
            return;
        }
        if builder.insert(&v) {
            for swap in 1..n {
                queue.push(permute_vector(basis, &v, &field, swap));
            }
        }
    }
}

/// Persistent storage for computed ideal layers of one presentation and field.
pub trait LayerStore<F: Field>: Send + Sync {
    fn load(&self, field: &F, degree: usize, ncols: usize) -> Option<Subspace<F>>;
    fn store(&self, degree: usize, layer: &Subspace<F>);
}

/// The degree-`n` multilinear component of an operad ideal.
#[derive(Debug, Clone)]
pub struct DegreeComponent<F: Field> {
    pub degree: usize,
    pub basis: Arc<MonomialBasis>,
    pub ideal: Arc<Subspace<F>>,
    pub quotient_dim: usize,
}

impl<F: Field> DegreeComponent<F> {
    /// Whether the ideal layer is stable under every adjacent transposition.
    pub fn is_symmetric(&self) -> bool {
        let f = self.ideal.field();
        (1..self.degree).all(|s| {
            self.ideal.rows().iter().all(|r| {
                self.ideal
                    .contains(&permute_vector(&self.basis, r, f, s))
                    .unwrap()
            })
        })
    }
}

/// Computes and memoizes the ideal layers of one presentation over one field.
pub struct IdealEngine<F: Field> {
    presentation: VarietyPresentation,
    field: F,
    limits: Limits,
    bases: HashMap<usize, Arc<MonomialBasis>>,
    layers: HashMap<usize, Arc<Subspace<F>>>,
    store: Option<Box<dyn LayerStore<F>>>,
}

impl<F: Field> IdealEngine<F> {
    pub fn new(presentation: VarietyPresentation, field: F, limits: Limits) -> Self {
        IdealEngine {
            presentation,
            field,
            limits,
            bases: HashMap::new(),
            layers: HashMap::new(),
            store: None,
        }
    }

    pub fn with_store(mut self, store: Box<dyn LayerStore<F>>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn presentation(&self) -> &VarietyPresentation {
        &self.presentation
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn basis(&mut self, n: usize) -> Result<Arc<MonomialBasis>> {
        if let Some(b) = self.bases.get(&n) {
            return Ok(b.clone());
        }
        let b = Arc::new(MonomialBasis::new(&self.presentation.sig, n, &self.limits)?);
        self.bases.insert(n, b.clone());
        Ok(b)
    }

    /// The ideal layer at degree `n` in the coordinates of `basis(n)`.
    pub fn layer(&mut self, n: usize) -> Result<Arc<Subspace<F>>> {
        self.limits.check(n)?;
        if let Some(l) = self.layers.get(&n) {
            return Ok(l.clone());
        }
        let basis = self.basis(n)?;
        if let Some(l) = self
            .store
            .as_ref()
            .and_then(|s| s.load(&self.field, n, basis.len()))
        {
            let l = Arc::new(l);
            self.layers.insert(n, l.clone());
            return Ok(l);
        }
        let layer = Arc::new(self.compute_layer(n, &basis)?);
        if let Some(s) = &self.store {
            s.store(n, &layer);
        }
        self.layers.insert(n, layer.clone());
        Ok(layer)
    }

    fn compute_layer(&mut self, n: usize, basis: &MonomialBasis) -> Result<Subspace<F>> {
        let field = self.field.clone();
        let mut seeds = Vec::new();
        for g in self
            .presentation
            .generators
            .iter()
            .filter(|g| g.degree() == n)
        {
            seeds.push(to_vector(basis, g, &field)?);
        }
        let sig = self.presentation.sig.clone();
        let min_degree = self
            .presentation
            .generators
            .iter()
            .map(Polynomial::degree)
            .min();
        for op in 0..sig.len() {
            let a = sig.arity(op);
            if a > n || min_degree.is_none_or(|d| n + 1 - a < d) {
                continue;
            }
            let m = n + 1 - a;
            let lower = self.layer(m)?;
            if lower.rank() == 0 {
                continue;
            }
            let lower_basis = self.basis(m)?;
            let gen = Monomial::generator(&sig, op);
            for row in lower.rows() {
                let terms: Vec<(Monomial, &F::Elem)> = row
                    .entries()
                    .iter()
                    .map(|(c, v)| (lower_basis.monomial(*c as usize), v))
                    .collect();
                let mut push = |f: &dyn Fn(&Monomial) -> Monomial| {
                    let pairs = terms
                        .iter()
                        .map(|(mono, v)| {
                            let idx = basis.index_of(&f(mono)).expect("move stays in the basis");
                            (idx as u32, (*v).clone())
                        })
                        .collect();
                    seeds.push(SparseVec::from_pairs(&field, pairs));
                };
                for slot in 1..=a as u32 {
                    push(&|mono| gen.substitute(slot, mono));
                }
                for var in 1..=m as u32 {
                    push(&|mono| mono.substitute(var, &gen));
                }
            }
        }
        // process generators first: they are popped last-in-first-out
        seeds.reverse();
        let mut builder = EchelonBuilder::new(field, basis.len());
        close_under_symmetric_group(&mut builder, basis, seeds);
        Ok(builder.finish())
    }

    pub fn component(&mut self, n: usize) -> Result<DegreeComponent<F>> {
        if n < 2 {
            return arg_err(format!("degree must be at least 2, got {n}"));
        }
        let basis = self.basis(n)?;
        let ideal = self.layer(n)?;
        Ok(DegreeComponent {
            degree: n,
            quotient_dim: basis.len() - ideal.rank(),
            basis,
            ideal,
        })
    }

    pub fn implies(&mut self, t: &Polynomial) -> Result<bool> {
        let n = t.degree();
        self.limits.check(n)?;
        if t.is_zero() {
            return Ok(true);
        }
        let basis = self.basis(n)?;
        let v = to_vector(&basis, t, &self.field)?;
        let layer = self.layer(n)?;
        layer.contains(&v)
    }
}

/// Supplies persistent layer storage for each presentation.
pub trait StoreProvider<F: Field>: Send + Sync {
    fn store_for(&self, presentation: &VarietyPresentation) -> Option<Box<dyn LayerStore<F>>>;
}

/// A field, resource limits, and one memoizing engine per presentation seen.
pub struct Session<F: Field> {
    field: F,
    limits: Limits,
    provider: Option<Arc<dyn StoreProvider<F>>>,
    engines: Vec<IdealEngine<F>>,
}

impl<F: Field> Session<F> {
    pub fn new(field: F, limits: Limits) -> Self {
        Session {
            field,
            limits,
            provider: None,
            engines: Vec::new(),
        }
    }

    pub fn with_stores(mut self, provider: Arc<dyn StoreProvider<F>>) -> Self {
        self.provider = Some(provider);
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn engine(&mut self, v: &VarietyPresentation) -> &mut IdealEngine<F> {
        let i = match self.engines.iter().position(|e| e.presentation() == v) {
            Some(i) => i,
            None => {
                let mut e = IdealEngine::new(v.clone(), self.field.clone(), self.limits);
                if let Some(store) = self.provider.as_ref().and_then(|p| p.store_for(v)) {
                    e = e.with_store(store);
                }
                self.engines.push(e);
                self.engines.len() - 1
            }
        };
        &mut self.engines[i]
    }

    pub fn component(&mut self, v: &VarietyPresentation, n: usize) -> Result<DegreeComponent<F>> {
        self.engine(v).component(n)
    }

    pub fn layer(&mut self, v: &VarietyPresentation, n: usize) -> Result<Arc<Subspace<F>>> {
        self.engine(v).layer(n)
    }

    pub fn implies(&mut self, v: &VarietyPresentation, t: &Polynomial) -> Result<bool> {
        self.engine(v).implies(t)
    }
}

/// The degree-`n` component of the ideal generated by `v`'s identities.
pub fn consequences_at_degree<F: Field>(
    v: &VarietyPresentation,
    n: usize,
    field: &F,
    limits: &Limits,
) -> Result<DegreeComponent<F>> {
    Session::new(field.clone(), *limits).component(v, n)
}

/// `dim P(n)` for the operad governing `v`.
pub fn quotient_dimension<F: Field>(
    v: &VarietyPresentation,
    n: usize,
    field: &F,
    limits: &Limits,
) -> Result<usize> {
    Ok(consequences_at_degree(v, n, field, limits)?.quotient_dim)
}

/// Whether the multilinear identity `t` follows from `v`.
pub fn identity_implies<F: Field>(
    v: &VarietyPresentation,
    t: &Polynomial,
    field: &F,
    limits: &Limits,
) -> Result<bool> {
    Session::new(field.clone(), *limits).implies(v, t)
}
