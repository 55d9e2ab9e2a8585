//! Operad morphisms given on generators, their multilinear kernels, special
//! identities, and the transfer of speciality to dialgebras.

use std::collections::HashMap;
use std::sync::Arc;

use crate::dialgebra::{
    block_sum, di_polynomial, kernel_of_columns, quotient_coordinates, rho_poly, zero_identities,
    zeta, DiPolynomial,
};
use crate::error::{arg_err, Error, Result};
use crate::ideal::{
    check_over, to_polynomial, to_vector, DegreeComponent, Session, VarietyPresentation,
};
use crate::linalg::{EchelonBuilder, Field, FieldTag, SparseVec, Subspace};
use crate::monomial::{Limits, Monomial, MonomialBasis};
use crate::polynomial::{compose, Polynomial};
use crate::signature::{double_signature, Signature};

/// A morphism `F_Ω → P` fixed by the images of the operations of `Ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperadMorphism {
    source_sig: Signature,
    target: VarietyPresentation,
    images: Vec<Polynomial>,
}

impl OperadMorphism {
    pub fn new(
        source_sig: Signature,
        target: VarietyPresentation,
        images: Vec<Polynomial>,
    ) -> Result<Self> {
        if images.len() != source_sig.len() {
            return arg_err(format!(
                "{} images given for {} source operations",
                images.len(),
                source_sig.len()
            ));
        }
        for (op, img) in images.iter().enumerate() {
            let name = source_sig.name(op);
            if img.degree() != source_sig.arity(op) {
                return arg_err(format!(
                    "image of `{name}` has degree {}, expected {}",
                    img.degree(),
                    source_sig.arity(op)
                ));
            }
            for (m, _) in img.terms() {
                check_over(m, target.signature())
                    .map_err(|e| Error::Argument(format!("image of `{name}`: {e}")))?;
            }
        }
        Ok(OperadMorphism {
            source_sig,
            target,
            images,
        })
    }

    pub fn source_signature(&self) -> &Signature {
        &self.source_sig
    }

    pub fn target(&self) -> &VarietyPresentation {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, op: usize) -> &Polynomial {
        &self.images[op]
    }
}

/// A named morphism together with the presentation of its source variety.
#[derive(Debug, Clone)]
pub struct MorphismCatalogEntry {
    pub name: String,
    pub source: VarietyPresentation,
    pub morphism: OperadMorphism,
}

impl MorphismCatalogEntry {
    pub fn new(
        name: impl Into<String>,
        source: VarietyPresentation,
        morphism: OperadMorphism,
    ) -> Result<Self> {
        if source.signature() != morphism.source_signature() {
            return arg_err("source presentation and morphism use different signatures");
        }
        Ok(MorphismCatalogEntry {
            name: name.into(),
            source,
            morphism,
        })
    }

    pub fn target(&self) -> &VarietyPresentation {
        self.morphism.target()
    }
}

/// Evaluates monomials, caching the image of every skeleton.
struct Evaluator<'a> {
    omega: &'a OperadMorphism,
    memo: HashMap<Monomial, Polynomial>,
}

impl<'a> Evaluator<'a> {
    fn new(omega: &'a OperadMorphism) -> Self {
        Evaluator {
            omega,
            memo: HashMap::new(),
        }
    }

    /// Image of a skeleton; leaves of the result keep the order `x1, …, xn`.
    fn skeleton(&mut self, skel: &Monomial) -> Result<Polynomial> {
        if let Some(p) = self.memo.get(skel) {
            return Ok(p.clone());
        }
        let out = match skel.to_node() {
            crate::monomial::Node::Leaf(_) => Polynomial::monomial(Monomial::identity())?,
            crate::monomial::Node::Op(op, children) => {
                let mut args = Vec::with_capacity(children.len());
                for c in &children {
                    let child = Monomial::from_node(c, &self.omega.source_sig)?.skeleton();
                    args.push(self.skeleton(&child)?);
                }
                compose(self.omega.image(op), &args)?
            }
        };
        self.memo.insert(skel.clone(), out.clone());
        Ok(out)
    }

    fn monomial(&mut self, m: &Monomial) -> Result<Polynomial> {
        let img = self.skeleton(&m.skeleton())?;
        let leaves = m.leaves();
        Ok(img.map_monomials(|t| t.relabel(|i| leaves[i as usize - 1])))
    }

    fn polynomial(&mut self, p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(p.degree());
        for (m, c) in p.terms() {
            check_over(m, &self.omega.source_sig)
                .map_err(|e| Error::Argument(format!("no image for a source symbol: {e}")))?;
            out = out.add(&self.monomial(m)?.scale(c))?;
        }
        Ok(out)
    }
}

/// Applies `ω` to a multilinear polynomial over the source signature.
pub fn evaluate_morphism(omega: &OperadMorphism, p: &Polynomial) -> Result<Polynomial> {
    Evaluator::new(omega).polynomial(p)
}

/// For every column of `basis`, the image under `ω` in coordinates of the
/// target quotient at the same degree.
fn image_columns<F: Field>(
    omega: &OperadMorphism,
    basis: &MonomialBasis,
    target: &DegreeComponent<F>,
    field: &F,
) -> Result<Vec<SparseVec<F::Elem>>> {
    let coords = quotient_coordinates(&target.ideal);
    let mut eval = Evaluator::new(omega);
    let mut out = Vec::with_capacity(basis.len());
    for m in basis.iter() {
        let v = to_vector(&target.basis, &eval.monomial(&m)?, field)?;
        let mut pairs = Vec::new();
        for (c, a) in v.entries() {
            pairs.extend(
                coords[*c as usize]
                    .entries()
                    .iter()
                    .map(|(i, b)| (*i, field.mul(a, b))),
            );
        }
        out.push(SparseVec::from_pairs(field, pairs));
    }
    Ok(out)
}

/// The degree-`d` identities of `ω`: the kernel of `F_Ω(d) → P(d)`.
#[derive(Debug, Clone)]
pub struct MorphismKernel<F: Field> {
    pub basis: Arc<MonomialBasis>,
    pub target: DegreeComponent<F>,
    pub kernel: Subspace<F>,
}

impl<F: Field> MorphismKernel<F> {
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.kernel
            .rows()
            .iter()
            .map(|r| to_polynomial(&self.basis, r, self.kernel.field()))
            .collect()
    }
}

/// Special identities of degree `d`: identities of `ω` modulo those of the
/// source variety.
#[derive(Debug, Clone)]
pub struct SpecialIdentities {
    pub degree: usize,
    pub ambient_dim: usize,
    pub kernel_dim: usize,
    pub source_ideal_dim: usize,
    pub basis: Vec<Polynomial>,
}

/// Special identities of the dialgebra lift, computed on the di-space, with
/// the comparison against the componentwise lifts of the ordinary ones.
#[derive(Debug, Clone)]
pub struct DiSpecialIdentities {
    pub degree: usize,
    pub ambient_dim: usize,
    pub special_dim: usize,
    pub basis: Vec<DiPolynomial>,
    /// Every `f ⊗ e_k` with `f` special lies in the di-kernel.
    pub lifts_contained: bool,
    /// The lifts span the di-kernel modulo the di-identities of the source.
    pub matches_lifts: bool,
}

/// Comparison of the identities of the dialgebra morphism with the dialgebra
/// presentation generated by the identities of `ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsoReport {
    pub degree: usize,
    /// Dimension of the multilinear component over the doubled signature.
    pub ambient_dim: usize,
    /// Rank of the identities of the dialgebra morphism.
    pub kernel_dim: usize,
    /// Rank of the consequences of the transformed identities of `ω`.
    pub presentation_dim: usize,
    pub equal: bool,
}

pub fn morphism_kernel_at_degree<F: Field>(
    omega: &OperadMorphism,
    d: usize,
    field: &F,
    limits: &Limits,
) -> Result<MorphismKernel<F>> {
    Session::new(field.clone(), *limits).morphism_kernel_at_degree(omega, d)
}

/// Fails unless every defining identity of `source` dies under `ω`, i.e.
/// unless `ω` factors through the source variety.
pub fn check_induced<F: Field>(
    omega: &OperadMorphism,
    source: &VarietyPresentation,
    field: &F,
    limits: &Limits,
) -> Result<()> {
    Session::new(field.clone(), *limits).check_induced(omega, source)
}

pub fn special_identities<F: Field>(
    omega: &OperadMorphism,
    source: &VarietyPresentation,
    d: usize,
    field: &F,
    limits: &Limits,
) -> Result<SpecialIdentities> {
    Session::new(field.clone(), *limits).special_identities(omega, source, d)
}

pub fn di_special_identities<F: Field>(
    omega: &OperadMorphism,
    source: &VarietyPresentation,
    d: usize,
    field: &F,
    limits: &Limits,
) -> Result<DiSpecialIdentities> {
    Session::new(field.clone(), *limits).di_special_identities(omega, source, d)
}

pub fn verify_bso_theorem<F: Field>(
    omega: &OperadMorphism,
    d: usize,
    field: &F,
    limits: &Limits,
) -> Result<BsoReport> {
    Session::new(field.clone(), *limits).verify_bso_theorem(omega, d)
}

fn shift<E: Clone>(v: &SparseVec<E>, by: u32) -> SparseVec<E> {
    SparseVec::from_sorted(
        v.entries()
            .iter()
            .map(|(c, a)| (c + by, a.clone()))
            .collect(),
    )
}

impl<F: Field> Session<F> {
    pub fn morphism_kernel_at_degree(
        &mut self,
        omega: &OperadMorphism,
        d: usize,
    ) -> Result<MorphismKernel<F>> {
        if d < 2 {
            return arg_err(format!("degree {d} is below 2"));
        }
        let target = self.component(omega.target(), d)?;
        let basis = Arc::new(MonomialBasis::new(&omega.source_sig, d, self.limits())?);
        let cols = image_columns(omega, &basis, &target, self.field())?;
        let kernel = kernel_of_columns(self.field(), target.quotient_dim, &cols)?;
        Ok(MorphismKernel {
            basis,
            target,
            kernel,
        })
    }

    pub fn check_induced(
        &mut self,
        omega: &OperadMorphism,
        source: &VarietyPresentation,
    ) -> Result<()> {
        if source.signature() != omega.source_signature() {
            return arg_err("the source presentation is not over the morphism's source signature");
        }
        let mut eval = Evaluator::new(omega);
        for (i, g) in source.generators().iter().enumerate() {
            if !self.implies(omega.target(), &eval.polynomial(g)?)? {
                return arg_err(format!(
                    "source identity {} ({}) is not an identity of the target under the morphism",
                    i + 1,
                    g.display(source.signature())
                ));
            }
        }
        Ok(())
    }

    /// Both the kernel and the source layer at degree `d`.
    fn kernel_and_source(
        &mut self,
        omega: &OperadMorphism,
        source: &VarietyPresentation,
        d: usize,
    ) -> Result<(MorphismKernel<F>, Arc<Subspace<F>>)> {
        self.check_induced(omega, source)?;
        let k = self.morphism_kernel_at_degree(omega, d)?;
        let ideal = self.layer(source, d)?;
        Ok((k, ideal))
    }

    pub fn special_identities(
        &mut self,
        omega: &OperadMorphism,
        source: &VarietyPresentation,
        d: usize,
    ) -> Result<SpecialIdentities> {
        let (k, ideal) = self.kernel_and_source(omega, source, d)?;
        let basis = k
            .kernel
            .relative_basis(&ideal)?
            .iter()
            .map(|v| to_polynomial(&k.basis, v, self.field()))
            .collect();
        Ok(SpecialIdentities {
            degree: d,
            ambient_dim: k.basis.len(),
            kernel_dim: k.kernel.rank(),
            source_ideal_dim: ideal.rank(),
            basis,
        })
    }

    pub fn di_special_identities(
        &mut self,
        omega: &OperadMorphism,
        source: &VarietyPresentation,
        d: usize,
    ) -> Result<DiSpecialIdentities> {
        let (k, ideal) = self.kernel_and_source(omega, source, d)?;
        let field = self.field().clone();
        let b = k.basis.len() as u32;
        let q = k.target.quotient_dim as u32;
        let cols = image_columns(omega, &k.basis, &k.target, &field)?;
        let di_cols: Vec<_> = (0..d as u32)
            .flat_map(|block| cols.iter().map(move |c| shift(c, block * q)))
            .collect();
        let di_kernel = kernel_of_columns(&field, d * q as usize, &di_cols)?;
        let di_ideal = block_sum(&ideal, d);

        let special = k.kernel.relative_basis(&ideal)?;
        let mut span = EchelonBuilder::from_subspace(&di_ideal);
        let mut lifts_contained = true;
        for block in 0..d as u32 {
            for s in &special {
                let lift = shift(s, block * b);
                lifts_contained &= di_kernel.contains(&lift)?;
                span.insert(&lift);
            }
        }
        let matches_lifts = span.finish().equals(&di_kernel)?;
        let basis = di_kernel
            .relative_basis(&di_ideal)?
            .iter()
            .map(|v| di_polynomial(&k.basis, v, &field))
            .collect();
        Ok(DiSpecialIdentities {
            degree: d,
            ambient_dim: d * b as usize,
            special_dim: special.len(),
            basis,
            lifts_contained,
            matches_lifts,
        })
    }

    pub fn verify_bso_theorem(&mut self, omega: &OperadMorphism, d: usize) -> Result<BsoReport> {
        if d < 2 {
            return arg_err(format!("degree {d} is below 2"));
        }
        if let FieldTag::Prime(p) = self.field().tag() {
            if d as u64 >= p {
                return Err(Error::CharacteristicGuard {
                    degree: d,
                    prime: p,
                });
            }
        }
        self.limits().check(d)?;
        let field = self.field().clone();
        let dsig = double_signature(&omega.source_sig);

        // identities of ω ⊗ id, computed through ζ
        let target = self.component(omega.target(), d)?;
        let base = MonomialBasis::new(&omega.source_sig, d, self.limits())?;
        let doubled = MonomialBasis::new(dsig.signature(), d, self.limits())?;
        let cols = image_columns(omega, &base, &target, &field)?;
        let q = target.quotient_dim as u32;
        let di_cols: Vec<_> = doubled
            .iter()
            .map(|m| {
                let e = zeta(&m, &dsig);
                let c = base.index_of(&e.base).expect("ζ preserves the degree");
                shift(&cols[c], (e.emphasized - 1) * q)
            })
            .collect();
        let direct = kernel_of_columns(&field, d * q as usize, &di_cols)?;

        // dialgebra presentation of the identities of ω up to degree d
        let mut generators = zero_identities(&omega.source_sig);
        for m in 2..=d {
            let k = self.morphism_kernel_at_degree(omega, m)?;
            for s in k.polynomials() {
                for e in 1..=m {
                    generators.push(rho_poly(&s, e, &dsig)?);
                }
            }
        }
        let presentation = VarietyPresentation::new(None, dsig.signature().clone(), generators)?;
        let generated = self.layer(&presentation, d)?;

        Ok(BsoReport {
            degree: d,
            ambient_dim: doubled.len(),
            kernel_dim: direct.rank(),
            presentation_dim: generated.rank(),
            equal: direct.equals(&generated)?,
        })
    }
}
