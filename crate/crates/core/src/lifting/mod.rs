//! Lifting functors defined on prime atoms to the whole matrix category:
//! the linear-extension formula over basis kets and bras, the
//! product-span construction, the prime-word retraction, and checkers for
//! monoidality, natural isomorphisms and equivalences.

mod categories;
mod checks;
mod equivalence;
mod functor;
mod lift;
mod retraction;
mod spec;

pub use categories::{LinearSmc, MatSpan, MatrixCategory, SpanMor};
pub use checks::{
    check_monoidal, check_natural_iso, check_uniqueness, find_component, CheckBounds, LawCheck, MonoidalReport, NaturalIsoWitness,
    Square,
};
pub use equivalence::{construct_equivalence, AtomIso, Equivalence};
pub use functor::{Composite, IdentityFunctor, SmcFunctor};
pub use lift::{lift_functor, Accumulation, LiftedFunctor, Strategy};
pub use retraction::{build_retraction, eta, InjectionFunctor, Retraction, RetractionFunctor};
pub use spec::{FunctorSpec, CAP_LINEAR};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("capability: {0}")]
    Capability(String),
    #[error("spec: {0}")]
    Spec(String),
    #[error("{0} is not in the generated span")]
    NotInSpan(String),
    #[error("not well defined: {0}")]
    NotWellDefined(String),
    #[error("morphism: {0}")]
    Morphism(String),
    #[error(transparent)]
    Smc(#[from] crate::monoidal::SmcError),
}
