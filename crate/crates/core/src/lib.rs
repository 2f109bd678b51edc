//! Exact symmetric monoidal category kernels.
//!
//! The crate provides three concrete symmetric monoidal categories
//! ([`matcat`] for semiring matrices, [`relq`] for quantale-valued relations
//! on finite sets, [`pidmod`] for finitely generated abelian groups),
//! bounded certifiers for tensor divisibility, primality, factorisation and
//! product tomography ([`monoidal`]), and a functor-lifting engine that
//! extends functors from prime atoms to whole categories and checks the
//! resulting equivalences ([`lifting`]).

pub mod algebra;
pub mod lifting;
pub mod matcat;
pub mod monoidal;
pub mod pidmod;
pub mod relq;

pub use algebra::{Scalar, ScalarAlgebra};
pub use matcat::{MatMorphism, MatObject};
pub use pidmod::{PidHom, PidModule};
pub use relq::{FiniteSetObj, QRelation};
