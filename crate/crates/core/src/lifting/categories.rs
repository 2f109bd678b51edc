use rand::Rng;
use serde_json::{json, Value};

use super::LiftError;
use crate::algebra::{Scalar, ScalarAlgebra};
use crate::matcat::radix::prime_word;
use crate::matcat::{self, MatMorphism, MatObject};
use crate::monoidal::{EnumerableSmc, MatSmc, RelSmc, SmcError};
use crate::relq::{FiniteSetObj, QRelation};

/// An SMC enriched in modules over a scalar algebra.
pub trait LinearSmc: EnumerableSmc {
    fn algebra(&self) -> &ScalarAlgebra;
    fn zero(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn scale(&self, s: &Scalar, f: &Self::Mor) -> Self::Mor;
    fn obj_to_json(&self, a: &Self::Obj) -> Value;
    fn obj_from_json(&self, v: &Value) -> Result<Self::Obj, LiftError>;
    fn mor_to_json(&self, f: &Self::Mor) -> Value;
    fn mor_from_json(&self, v: &Value) -> Result<Self::Mor, LiftError>;
}

/// A linear SMC whose morphisms are matrices over its algebra, indexed by
/// the elements of finite objects.
pub trait MatrixCategory: LinearSmc {
    fn dim(&self, a: &Self::Obj) -> usize;

    /// The prime word of `R(a)`.
    fn word(&self, a: &Self::Obj) -> Vec<usize> {
        prime_word(self.dim(a))
    }

    /// The tensor of the atoms of `w`.
    fn object_of_word(&self, w: &[usize]) -> Self::Obj;

    /// Rows indexed by the codomain.
    fn matrix(&self, f: &Self::Mor) -> MatMorphism;

    fn from_matrix(&self, dom: &Self::Obj, cod: &Self::Obj, m: &MatMorphism) -> Result<Self::Mor, LiftError>;

    /// Objects used by the checkers; defaults to one per isomorphism class.
    fn check_objects(&self, bound: usize) -> Vec<Self::Obj> {
        self.objects(bound as u64)
    }

    fn atom(&self, p: usize) -> Self::Obj {
        self.object_of_word(&[p])
    }

    fn ket(&self, p: usize, k: usize) -> Self::Mor {
        let m = MatMorphism::ket(self.algebra(), p, k);
        self.from_matrix(&self.unit(), &self.atom(p), &m).expect("ket fits its atom")
    }

    fn bra(&self, p: usize, k: usize) -> Self::Mor {
        let m = MatMorphism::bra(self.algebra(), p, k);
        self.from_matrix(&self.atom(p), &self.unit(), &m).expect("bra fits its atom")
    }

    /// Entries drawn from the carrier, or from `{0, 1}` when it is infinite.
    fn random_mor<R: Rng>(&self, dom: &Self::Obj, cod: &Self::Obj, rng: &mut R) -> Self::Mor {
        let alg = self.algebra();
        let elements = alg.elements().unwrap_or_else(|| vec![alg.zero(), alg.one()]);
        let m = MatMorphism::from_fn(self.algebra(), self.dim(dom), self.dim(cod), |_, _| {
            elements[rng.random_range(0..elements.len())].clone()
        });
        self.from_matrix(dom, cod, &m).expect("dimensions match")
    }
}

fn morphism_err(e: impl std::fmt::Display) -> LiftError {
    LiftError::Morphism(e.to_string())
}

impl LinearSmc for MatSmc {
    fn algebra(&self) -> &ScalarAlgebra {
        &self.algebra
    }

    fn zero(&self, a: &MatObject, b: &MatObject) -> MatMorphism {
        MatMorphism::zero(&self.algebra, a.dim(), b.dim())
    }

    fn add(&self, f: &MatMorphism, g: &MatMorphism) -> MatMorphism {
        f.add(g).expect("parallel morphisms")
    }

    fn scale(&self, s: &Scalar, f: &MatMorphism) -> MatMorphism {
        f.scale(s)
    }

    fn obj_to_json(&self, a: &MatObject) -> Value {
        json!(a.dim())
    }

    fn obj_from_json(&self, v: &Value) -> Result<MatObject, LiftError> {
        let n = v.as_u64().ok_or_else(|| morphism_err(format!("expected a dimension, got {v}")))?;
        MatObject::new(n as usize).map_err(morphism_err)
    }

    fn mor_to_json(&self, f: &MatMorphism) -> Value {
        f.to_json()
    }

    fn mor_from_json(&self, v: &Value) -> Result<MatMorphism, LiftError> {
        MatMorphism::from_json(v, Some(&self.algebra)).map_err(morphism_err)
    }
}

impl MatrixCategory for MatSmc {
    fn dim(&self, a: &MatObject) -> usize {
        a.dim()
    }

    fn object_of_word(&self, w: &[usize]) -> MatObject {
        MatObject::new(w.iter().product()).expect("positive")
    }

    fn matrix(&self, f: &MatMorphism) -> MatMorphism {
        f.clone()
    }

    fn from_matrix(&self, dom: &MatObject, cod: &MatObject, m: &MatMorphism) -> Result<MatMorphism, LiftError> {
        if m.dom() != *dom || m.cod() != *cod || m.algebra() != &self.algebra {
            return Err(morphism_err(format!("matrix {}x{} does not fit {} -> {}", m.cod().dim(), m.dom().dim(), dom.dim(), cod.dim())));
        }
        Ok(m.clone())
    }
}

impl LinearSmc for RelSmc {
    fn algebra(&self) -> &ScalarAlgebra {
        &self.quantale
    }

    fn zero(&self, a: &FiniteSetObj, b: &FiniteSetObj) -> QRelation {
        QRelation::zero(&self.quantale, a, b).expect("quantale")
    }

    fn add(&self, f: &QRelation, g: &QRelation) -> QRelation {
        f.join(g).expect("parallel relations")
    }

    fn scale(&self, s: &Scalar, f: &QRelation) -> QRelation {
        f.scale(s)
    }

    fn obj_to_json(&self, a: &FiniteSetObj) -> Value {
        json!(a.label_strings())
    }

    fn obj_from_json(&self, v: &Value) -> Result<FiniteSetObj, LiftError> {
        if let Some(n) = v.as_u64() {
            return Ok(self.object_of_word(&prime_word(n as usize)));
        }
        let labels: Vec<String> = serde_json::from_value(v.clone()).map_err(morphism_err)?;
        FiniteSetObj::parse(&labels).map_err(morphism_err)
    }

    fn mor_to_json(&self, f: &QRelation) -> Value {
        f.to_json()
    }

    fn mor_from_json(&self, v: &Value) -> Result<QRelation, LiftError> {
        let r = QRelation::from_json(v).map_err(morphism_err)?;
        if r.quantale() != &self.quantale {
            return Err(LiftError::Capability(format!("relation over {} in Rel({})", r.quantale(), self.quantale)));
        }
        Ok(r)
    }
}

impl MatrixCategory for RelSmc {
    fn dim(&self, a: &FiniteSetObj) -> usize {
        a.len()
    }

    /// Ordinals for atoms, their tuple products otherwise.
    fn object_of_word(&self, w: &[usize]) -> FiniteSetObj {
        w.iter()
            .map(|&p| FiniteSetObj::ordinal(p).expect("positive"))
            .fold(FiniteSetObj::unit(), |acc, o| acc.tensor(&o))
    }

    fn matrix(&self, f: &QRelation) -> MatMorphism {
        f.to_matrix()
    }

    fn from_matrix(&self, dom: &FiniteSetObj, cod: &FiniteSetObj, m: &MatMorphism) -> Result<QRelation, LiftError> {
        QRelation::from_matrix(m, dom, cod).map_err(morphism_err)
    }
}

/// A matrix typed by prime words: a morphism of the maximal span.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanMor {
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub matrix: MatMorphism,
}

/// The maximal span of the prime atoms in `Mat(S)`: objects are prime
/// words, every matrix of matching size is a morphism.
#[derive(Clone, Debug)]
pub struct MatSpan {
    pub algebra: ScalarAlgebra,
    pub hom_limit: u64,
}

impl MatSpan {
    pub fn new(algebra: ScalarAlgebra) -> Self {
        Self { algebra, hom_limit: 1 << 16 }
    }

    fn typed(&self, dom: &[usize], cod: &[usize], matrix: MatMorphism) -> SpanMor {
        SpanMor { dom: dom.to_vec(), cod: cod.to_vec(), matrix }
    }

    /// Every word over primes with product at most `bound`, all orders.
    pub fn words(bound: usize) -> Vec<Vec<usize>> {
        let primes: Vec<usize> = (2..=bound).filter(|&p| matcat::radix::is_prime(p)).collect();
        let mut out = vec![Vec::new()];
        let mut i = 0;
        while i < out.len() {
            let size: usize = out[i].iter().product();
            for &p in &primes {
                if size * p <= bound {
                    let mut w = out[i].clone();
                    w.push(p);
                    out.push(w);
                }
            }
            i += 1;
        }
        out.sort_by_key(|w| (w.iter().product::<usize>(), w.clone()));
        out
    }
}

impl EnumerableSmc for MatSpan {
    type Obj = Vec<usize>;
    type Mor = SpanMor;
    type Key = usize;

    fn name(&self) -> String {
        format!("MaxSpan(Mat({}))", self.algebra)
    }

    fn unit(&self) -> Vec<usize> {
        Vec::new()
    }

    fn tensor_obj(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        a.iter().chain(b).copied().collect()
    }

    fn canon(&self, a: &Vec<usize>) -> usize {
        a.iter().product()
    }

    fn size(&self, a: &Vec<usize>) -> u64 {
        a.iter().product::<usize>() as u64
    }

    /// Sorted words, one per dimension.
    fn objects(&self, bound: u64) -> Vec<Vec<usize>> {
        (1..=bound as usize).map(prime_word).collect()
    }

    fn divisor_search_complete(&self, target: &Vec<usize>, bound: u64) -> bool {
        self.size(target) <= bound
    }

    fn max_factor_count(&self, a: &Vec<usize>) -> Option<usize> {
        Some(a.len())
    }

    fn homs(&self, a: &Vec<usize>, b: &Vec<usize>) -> Result<Vec<SpanMor>, SmcError> {
        let show = |w: &Vec<usize>| format!("{w:?}");
        let n = self.algebra.carrier_size().ok_or_else(|| SmcError::InfiniteHoms { dom: show(a), cod: show(b) })?;
        let entries = self.size(a) * self.size(b);
        let count = num_bigint::BigInt::from(n).pow(entries as u32);
        if count > num_bigint::BigInt::from(self.hom_limit) {
            return Err(SmcError::TooManyHoms { dom: show(a), cod: show(b), count: count.to_string(), limit: self.hom_limit });
        }
        let all = matcat::all_morphisms(&self.algebra, self.size(a) as usize, self.size(b) as usize).expect("finite");
        Ok(all.into_iter().map(|m| self.typed(a, b, m)).collect())
    }

    fn dom(&self, f: &SpanMor) -> Vec<usize> {
        f.dom.clone()
    }

    fn cod(&self, f: &SpanMor) -> Vec<usize> {
        f.cod.clone()
    }

    fn identity(&self, a: &Vec<usize>) -> SpanMor {
        self.typed(a, a, MatMorphism::identity(&self.algebra, a.iter().product()))
    }

    fn compose(&self, g: &SpanMor, f: &SpanMor) -> SpanMor {
        assert_eq!(f.cod, g.dom, "span composition needs equal words");
        self.typed(&f.dom, &g.cod, matcat::compose(&g.matrix, &f.matrix).expect("sizes match"))
    }

    fn tensor_mor(&self, f: &SpanMor, g: &SpanMor) -> SpanMor {
        SpanMor {
            dom: self.tensor_obj(&f.dom, &g.dom),
            cod: self.tensor_obj(&f.cod, &g.cod),
            matrix: matcat::tensor(&f.matrix, &g.matrix).expect("same algebra"),
        }
    }

    fn symmetry(&self, a: &Vec<usize>, b: &Vec<usize>) -> SpanMor {
        let m = MatMorphism::symmetry(&self.algebra, a.iter().product(), b.iter().product());
        self.typed(&self.tensor_obj(a, b), &self.tensor_obj(b, a), m)
    }

    fn zero_morphism(&self, a: &Vec<usize>, b: &Vec<usize>) -> Option<SpanMor> {
        Some(self.zero(a, b))
    }

    fn show_obj(&self, a: &Vec<usize>) -> String {
        if a.is_empty() {
            "I".into()
        } else {
            a.iter().map(|p| format!("A({p})")).collect::<Vec<_>>().join("⊗")
        }
    }
}

impl LinearSmc for MatSpan {
    fn algebra(&self) -> &ScalarAlgebra {
        &self.algebra
    }

    fn zero(&self, a: &Vec<usize>, b: &Vec<usize>) -> SpanMor {
        self.typed(a, b, MatMorphism::zero(&self.algebra, a.iter().product(), b.iter().product()))
    }

    fn add(&self, f: &SpanMor, g: &SpanMor) -> SpanMor {
        assert!(f.dom == g.dom && f.cod == g.cod, "parallel span morphisms");
        self.typed(&f.dom, &f.cod, f.matrix.add(&g.matrix).expect("same size"))
    }

    fn scale(&self, s: &Scalar, f: &SpanMor) -> SpanMor {
        self.typed(&f.dom, &f.cod, f.matrix.scale(s))
    }

    fn obj_to_json(&self, a: &Vec<usize>) -> Value {
        json!(a)
    }

    fn obj_from_json(&self, v: &Value) -> Result<Vec<usize>, LiftError> {
        let w: Vec<usize> = serde_json::from_value(v.clone()).map_err(morphism_err)?;
        if let Some(bad) = w.iter().find(|&&p| !matcat::radix::is_prime(p)) {
            return Err(morphism_err(format!("{bad} is not prime")));
        }
        Ok(w)
    }

    fn mor_to_json(&self, f: &SpanMor) -> Value {
        json!({"dom": f.dom, "cod": f.cod, "matrix": f.matrix.to_json()})
    }

    fn mor_from_json(&self, v: &Value) -> Result<SpanMor, LiftError> {
        let dom = self.obj_from_json(&v["dom"])?;
        let cod = self.obj_from_json(&v["cod"])?;
        let m = MatMorphism::from_json(&v["matrix"], Some(&self.algebra)).map_err(morphism_err)?;
        self.from_matrix(&dom, &cod, &m)
    }
}

impl MatrixCategory for MatSpan {
    fn dim(&self, a: &Vec<usize>) -> usize {
        a.iter().product()
    }

    fn word(&self, a: &Vec<usize>) -> Vec<usize> {
        a.clone()
    }

    fn object_of_word(&self, w: &[usize]) -> Vec<usize> {
        w.to_vec()
    }

    fn matrix(&self, f: &SpanMor) -> MatMorphism {
        f.matrix.clone()
    }

    fn from_matrix(&self, dom: &Vec<usize>, cod: &Vec<usize>, m: &MatMorphism) -> Result<SpanMor, LiftError> {
        if m.dom().dim() != self.dim(dom) || m.cod().dim() != self.dim(cod) || m.algebra() != &self.algebra {
            return Err(morphism_err(format!("matrix does not fit {dom:?} -> {cod:?}")));
        }
        Ok(self.typed(dom, cod, m.clone()))
    }

    fn check_objects(&self, bound: usize) -> Vec<Vec<usize>> {
        Self::words(bound)
    }
}
