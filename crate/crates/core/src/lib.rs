//! Multilinear components of operads governing varieties of algebras, the
//! dialgebra (Perm-Hadamard) transform of a presentation, and special
//! identities of operad morphisms and their dialgebra lifts.

pub mod dialgebra;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod permutation;
pub mod polynomial;
pub mod signature;
pub mod speciality;

pub use dialgebra::{
    bso_presentation, di_ideal_at_degree, perm_compose, rho, rho_poly,
    verify_dialgebra_equivalence, zero_identities, zeta, zeta_poly, DiPolynomial,
    EmphasizedMonomial, EquivalenceReport, PermVector,
};
pub use error::{Error, Result};
pub use ideal::{
    consequences_at_degree, identity_implies, quotient_dimension, DegreeComponent, IdealEngine,
    LayerStore, Session, StoreProvider, VarietyPresentation,
};
pub use linalg::{Field, FieldTag, PrimeField, Rationals};
pub use monomial::{enumerate_monomials, Limits, Monomial, MonomialBasis, Node};
pub use permutation::Permutation;
pub use polynomial::{
    apply_permutation, compose, linearize, rational, substitute_at, Polynomial, Rational,
    RawPolynomial,
};
pub use signature::{double_signature, DoubledSignature, Signature};
pub use speciality::{
    di_special_identities, evaluate_morphism, morphism_kernel_at_degree, special_identities,
    verify_bso_theorem, BsoReport, DiSpecialIdentities, MorphismCatalogEntry, OperadMorphism,
    SpecialIdentities,
};
