//! Bounded certifiers for tensor divisibility, primality, unique
//! factorisation, minimal spans, product tomography and free
//! subcategories, over any category implementing [`EnumerableSmc`].
//!
//! Every search runs against the objects an instance enumerates up to a
//! size bound and answers with a certificate, a refutation or an explicit
//! indeterminate verdict.

mod adapters;
mod free;
mod hom_table;
mod search;
mod span;
mod tomography;

pub use adapters::{MatSmc, PidSmc, RelSmc};
pub use free::{check_free_subcategory, ClauseReport, FreeSubcatBounds, FreeSubcatReport};
pub use hom_table::HomTableSmc;
pub use search::{
    is_tensor_prime, tensor_divides, unique_factorization, Certifier, Divisibility, Factorization, FactorizationStatus,
    Primality, PrimeClause,
};
pub use span::{generate_minimal_span, MinimalSpan, SpanBounds, SpanSmc};
pub use tomography::{
    check_product_tomography, verify_tomography_counterexample, TomographyBounds, TomographyMethod, TomographyMode,
    TomographyReport,
};

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmcError {
    #[error("hom-set {dom} -> {cod} is infinite; bound the instance")]
    InfiniteHoms { dom: String, cod: String },
    #[error("hom-set {dom} -> {cod} has {count} morphisms, above the limit {limit}")]
    TooManyHoms { dom: String, cod: String, count: String, limit: u64 },
    #[error("too many families to enumerate: {0}")]
    TooManyFamilies(String),
    #[error("hom table: {0}")]
    HomTable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Three-valued outcome of a bounded check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    /// Fail dominates indeterminate, which dominates pass.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            _ => Pass,
        }
    }
}

/// A strict symmetric monoidal category whose objects can be listed up to
/// isomorphism below a size bound and whose hom-sets can be enumerated.
///
/// Tensor and composition are strict: associators and unitors are
/// identities, so only the symmetry is supplied.
pub trait EnumerableSmc {
    type Obj: Clone + Eq + Hash + Debug;
    type Mor: Clone + Eq + Hash + Debug;
    /// Canonical isomorphism-class key.
    type Key: Clone + Ord + Hash + Debug;

    fn name(&self) -> String;
    fn unit(&self) -> Self::Obj;
    fn tensor_obj(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn canon(&self, a: &Self::Obj) -> Self::Key;
    fn size(&self, a: &Self::Obj) -> u64;

    /// One representative per isomorphism class with `size <= bound`,
    /// smallest first.
    fn objects(&self, bound: u64) -> Vec<Self::Obj>;

    /// Whether every `X` with `A (x) X ~ target` has `size(X) <= bound`, so a
    /// failed search over [`objects`](Self::objects) is a proof of absence.
    fn divisor_search_complete(&self, target: &Self::Obj, bound: u64) -> bool;

    /// Upper bound on the number of non-unit factors of `a`, when known.
    fn max_factor_count(&self, _a: &Self::Obj) -> Option<usize> {
        None
    }

    fn homs(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>, SmcError>;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    /// `g . f`; callers guarantee `cod f = dom g`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn symmetry(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;

    fn zero_morphism(&self, _a: &Self::Obj, _b: &Self::Obj) -> Option<Self::Mor> {
        None
    }

    fn show_obj(&self, a: &Self::Obj) -> String {
        format!("{a:?}")
    }

    fn show_mor(&self, f: &Self::Mor) -> String {
        format!("{f:?}")
    }
}
