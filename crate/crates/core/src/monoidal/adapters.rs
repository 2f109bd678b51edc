use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{EnumerableSmc, SmcError};
use crate::algebra::ScalarAlgebra;
use crate::matcat::{self, MatMorphism, MatObject};
use crate::pidmod::{enumerate_modules, hom_compose, hom_tensor, tensor_indexed, tensor_modules, PidHom, PidModule};
use crate::relq::{self, FiniteSetObj, QRelation};

const DEFAULT_HOM_LIMIT: u64 = 1 << 16;

fn hom_count(carrier: usize, entries: usize, limit: u64, dom: usize, cod: usize) -> Result<(), SmcError> {
    let count = BigInt::from(carrier).pow(entries as u32);
    if count > BigInt::from(limit) {
        return Err(SmcError::TooManyHoms { dom: dom.to_string(), cod: cod.to_string(), count: count.to_string(), limit });
    }
    Ok(())
}

fn floor_log2(n: u64) -> usize {
    (63 - n.max(1).leading_zeros()) as usize
}

/// Matrices over a finite scalar algebra, objects `1..=bound`.
#[derive(Clone, Debug)]
pub struct MatSmc {
    pub algebra: ScalarAlgebra,
    pub hom_limit: u64,
}

impl MatSmc {
    pub fn new(algebra: ScalarAlgebra) -> Self {
        Self { algebra, hom_limit: DEFAULT_HOM_LIMIT }
    }
}

impl EnumerableSmc for MatSmc {
    type Obj = MatObject;
    type Mor = MatMorphism;
    type Key = usize;

    fn name(&self) -> String {
        format!("Mat({})", self.algebra)
    }

    fn unit(&self) -> MatObject {
        MatObject::UNIT
    }

    fn tensor_obj(&self, a: &MatObject, b: &MatObject) -> MatObject {
        a.tensor(*b)
    }

    fn canon(&self, a: &MatObject) -> usize {
        a.dim()
    }

    fn size(&self, a: &MatObject) -> u64 {
        a.dim() as u64
    }

    fn objects(&self, bound: u64) -> Vec<MatObject> {
        (1..=bound as usize).map(|d| MatObject::new(d).expect("positive")).collect()
    }

    fn divisor_search_complete(&self, target: &MatObject, bound: u64) -> bool {
        target.dim() as u64 <= bound
    }

    fn max_factor_count(&self, a: &MatObject) -> Option<usize> {
        Some(floor_log2(a.dim() as u64))
    }

    fn homs(&self, a: &MatObject, b: &MatObject) -> Result<Vec<MatMorphism>, SmcError> {
        let Some(n) = self.algebra.carrier_size() else {
            return Err(SmcError::InfiniteHoms { dom: a.dim().to_string(), cod: b.dim().to_string() });
        };
        hom_count(n, a.dim() * b.dim(), self.hom_limit, a.dim(), b.dim())?;
        Ok(matcat::all_morphisms(&self.algebra, a.dim(), b.dim()).expect("finite and within the limit"))
    }

    fn dom(&self, f: &MatMorphism) -> MatObject {
        f.dom()
    }

    fn cod(&self, f: &MatMorphism) -> MatObject {
        f.cod()
    }

    fn identity(&self, a: &MatObject) -> MatMorphism {
        MatMorphism::identity(&self.algebra, a.dim())
    }

    fn compose(&self, g: &MatMorphism, f: &MatMorphism) -> MatMorphism {
        matcat::compose(g, f).expect("composable by contract")
    }

    fn tensor_mor(&self, f: &MatMorphism, g: &MatMorphism) -> MatMorphism {
        matcat::tensor(f, g).expect("same algebra")
    }

    fn symmetry(&self, a: &MatObject, b: &MatObject) -> MatMorphism {
        MatMorphism::symmetry(&self.algebra, a.dim(), b.dim())
    }

    fn zero_morphism(&self, a: &MatObject, b: &MatObject) -> Option<MatMorphism> {
        Some(MatMorphism::zero(&self.algebra, a.dim(), b.dim()))
    }

    fn show_obj(&self, a: &MatObject) -> String {
        a.dim().to_string()
    }
}

/// Relations over a finite quantale; objects are ordinals, isomorphism is
/// equal cardinality.
#[derive(Clone, Debug)]
pub struct RelSmc {
    pub quantale: ScalarAlgebra,
    pub hom_limit: u64,
}

impl RelSmc {
    pub fn new(quantale: ScalarAlgebra) -> Self {
        Self { quantale, hom_limit: DEFAULT_HOM_LIMIT }
    }
}

impl EnumerableSmc for RelSmc {
    type Obj = FiniteSetObj;
    type Mor = QRelation;
    type Key = usize;

    fn name(&self) -> String {
        format!("Rel({})", self.quantale)
    }

    fn unit(&self) -> FiniteSetObj {
        FiniteSetObj::unit()
    }

    fn tensor_obj(&self, a: &FiniteSetObj, b: &FiniteSetObj) -> FiniteSetObj {
        a.tensor(b)
    }

    fn canon(&self, a: &FiniteSetObj) -> usize {
        a.len()
    }

    fn size(&self, a: &FiniteSetObj) -> u64 {
        a.len() as u64
    }

    fn objects(&self, bound: u64) -> Vec<FiniteSetObj> {
        // the unit stands for cardinality one
        std::iter::once(FiniteSetObj::unit())
            .chain((2..=bound as usize).map(|n| FiniteSetObj::ordinal(n).expect("non-empty")))
            .take(bound as usize)
            .collect()
    }

    fn divisor_search_complete(&self, target: &FiniteSetObj, bound: u64) -> bool {
        target.len() as u64 <= bound
    }

    fn max_factor_count(&self, a: &FiniteSetObj) -> Option<usize> {
        Some(floor_log2(a.len() as u64))
    }

    fn homs(&self, a: &FiniteSetObj, b: &FiniteSetObj) -> Result<Vec<QRelation>, SmcError> {
        let Some(n) = self.quantale.carrier_size() else {
            return Err(SmcError::InfiniteHoms { dom: a.to_string(), cod: b.to_string() });
        };
        hom_count(n, a.len() * b.len(), self.hom_limit, a.len(), b.len())?;
        Ok(relq::all_relations(&self.quantale, a, b).expect("finite quantale"))
    }

    fn dom(&self, f: &QRelation) -> FiniteSetObj {
        f.dom().clone()
    }

    fn cod(&self, f: &QRelation) -> FiniteSetObj {
        f.cod().clone()
    }

    fn identity(&self, a: &FiniteSetObj) -> QRelation {
        QRelation::identity(&self.quantale, a).expect("quantale checked at construction")
    }

    fn compose(&self, g: &QRelation, f: &QRelation) -> QRelation {
        relq::compose_rel(g, f).expect("composable by contract")
    }

    fn tensor_mor(&self, f: &QRelation, g: &QRelation) -> QRelation {
        relq::tensor_rel(f, g).expect("same quantale")
    }

    fn symmetry(&self, a: &FiniteSetObj, b: &FiniteSetObj) -> QRelation {
        QRelation::symmetry(&self.quantale, a, b).expect("quantale")
    }

    fn zero_morphism(&self, a: &FiniteSetObj, b: &FiniteSetObj) -> Option<QRelation> {
        QRelation::zero(&self.quantale, a, b).ok()
    }

    fn show_obj(&self, a: &FiniteSetObj) -> String {
        a.to_string()
    }
}

/// Finitely generated abelian groups: the zero module, the unit `Z` and
/// torsion modules of order at most the bound, all in canonical form.
#[derive(Clone, Debug)]
pub struct PidSmc {
    pub hom_limit: u64,
}

impl Default for PidSmc {
    fn default() -> Self {
        Self { hom_limit: DEFAULT_HOM_LIMIT }
    }
}

impl EnumerableSmc for PidSmc {
    type Obj = PidModule;
    type Mor = PidHom;
    type Key = PidModule;

    fn name(&self) -> String {
        "Mod(Z)_fg".into()
    }

    fn unit(&self) -> PidModule {
        PidModule::unit()
    }

    fn tensor_obj(&self, a: &PidModule, b: &PidModule) -> PidModule {
        tensor_modules(a, b)
    }

    fn canon(&self, a: &PidModule) -> PidModule {
        a.canonical()
    }

    /// Order of the torsion part; the unit and the zero module have size 1.
    fn size(&self, a: &PidModule) -> u64 {
        let torsion: BigInt = a.factors().iter().filter(|r| !r.is_zero()).product();
        torsion.to_u64().unwrap_or(u64::MAX)
    }

    fn objects(&self, bound: u64) -> Vec<PidModule> {
        let mut out = vec![PidModule::zero(), PidModule::unit()];
        out.extend(enumerate_modules(bound, 0).into_iter().filter(|m| m.dim() > 0));
        out
    }

    /// Cofactors of a module can be arbitrarily large (`Z/6 (x) Z/30 ~ Z/6`).
    fn divisor_search_complete(&self, _target: &PidModule, _bound: u64) -> bool {
        false
    }

    fn homs(&self, a: &PidModule, b: &PidModule) -> Result<Vec<PidHom>, SmcError> {
        let count = PidHom::count(a, b).ok_or_else(|| SmcError::InfiniteHoms { dom: a.to_string(), cod: b.to_string() })?;
        if count > BigInt::from(self.hom_limit) {
            return Err(SmcError::TooManyHoms {
                dom: a.to_string(),
                cod: b.to_string(),
                count: count.to_string(),
                limit: self.hom_limit,
            });
        }
        Ok(PidHom::all(a, b).expect("finite and within the limit"))
    }

    fn dom(&self, f: &PidHom) -> PidModule {
        f.dom().clone()
    }

    fn cod(&self, f: &PidHom) -> PidModule {
        f.cod().clone()
    }

    fn identity(&self, a: &PidModule) -> PidHom {
        PidHom::identity(a)
    }

    fn compose(&self, g: &PidHom, f: &PidHom) -> PidHom {
        hom_compose(g, f).expect("composable by contract")
    }

    fn tensor_mor(&self, f: &PidHom, g: &PidHom) -> PidHom {
        hom_tensor(f, g)
    }

    fn symmetry(&self, a: &PidModule, b: &PidModule) -> PidHom {
        let (ab, ab_pairs) = tensor_indexed(a, b);
        let (ba, ba_pairs) = tensor_indexed(b, a);
        let residues = ba_pairs
            .iter()
            .map(|(k, i)| ab_pairs.iter().map(|p| BigInt::from((*p == (*i, *k)) as u8)).collect())
            .collect();
        PidHom::new(&ab, &ba, residues).expect("a permutation of equal factors")
    }

    fn zero_morphism(&self, a: &PidModule, b: &PidModule) -> Option<PidHom> {
        Some(PidHom::zero(a, b))
    }

    fn show_obj(&self, a: &PidModule) -> String {
        a.to_string()
    }
}
