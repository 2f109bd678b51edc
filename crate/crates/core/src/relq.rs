//! Quantale-valued relations between finite labelled sets.
//!
//! A label is a tuple of atomic strings. Tensoring two sets concatenates
//! label tuples, so the tensor is strictly associative and the singleton
//! holding the empty tuple is a strict unit. Labels print as their atoms
//! joined with `.`; the empty tuple prints as the empty string.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, Scalar, ScalarAlgebra};
use crate::matcat::MatMorphism;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelError {
    #[error("cannot compose: codomain {f_cod} differs from domain {g_dom}")]
    Composition { f_cod: String, g_dom: String },
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },
    #[error("{0} is not a quantale")]
    NotQuantale(String),
    #[error("label error: {0}")]
    Label(String),
    #[error("the empty set is not an object")]
    EmptySet,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("relation json: {0}")]
    Json(String),
}

pub type Label = Vec<String>;

fn show_label(l: &Label) -> String {
    l.join(".")
}

fn parse_label(s: &str) -> Result<Label, RelError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Label = s.split('.').map(str::to_owned).collect();
    if parts.iter().any(String::is_empty) {
        return Err(RelError::Label(format!("{s:?} has an empty component")));
    }
    Ok(parts)
}

/// A non-empty finite set with an ordered sequence of distinct labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSetObj {
    labels: Arc<Vec<Label>>,
}

impl FiniteSetObj {
    pub fn from_labels(labels: Vec<Label>) -> Result<Self, RelError> {
        if labels.is_empty() {
            return Err(RelError::EmptySet);
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.iter().any(|a| a.is_empty() || a.contains('.')) {
                return Err(RelError::Label(format!("atoms must be non-empty and dot-free: {l:?}")));
            }
            if !seen.insert(l) {
                return Err(RelError::Label(format!("duplicate label {:?}", show_label(l))));
            }
        }
        Ok(Self { labels: Arc::new(labels) })
    }

    /// Parses printed labels; `"a.b"` is the pair `(a, b)`.
    pub fn parse<S: AsRef<str>>(labels: &[S]) -> Result<Self, RelError> {
        Self::from_labels(labels.iter().map(|s| parse_label(s.as_ref())).collect::<Result<_, _>>()?)
    }

    /// The ordinal `{0, .., n-1}`.
    pub fn ordinal(n: usize) -> Result<Self, RelError> {
        Self::from_labels((0..n).map(|i| vec![i.to_string()]).collect())
    }

    pub fn unit() -> Self {
        Self { labels: Arc::new(vec![Vec::new()]) }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(show_label).collect()
    }

    pub fn index_of(&self, label: &[String]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Cartesian product, left factor major, labels concatenated.
    pub fn tensor(&self, other: &FiniteSetObj) -> FiniteSetObj {
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| a.iter().chain(b).cloned().collect()))
            .collect();
        FiniteSetObj { labels: Arc::new(labels) }
    }

    fn same_set(&self, other: &FiniteSetObj) -> bool {
        self.len() == other.len() && self.labels.iter().all(|l| other.index_of(l).is_some())
    }
}

impl fmt::Debug for FiniteSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.label_strings().join(", "))
    }
}

impl fmt::Display for FiniteSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A relation `dom -> cod` with weights in a quantale; absent pairs weigh bottom.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRelation {
    quantale: ScalarAlgebra,
    dom: FiniteSetObj,
    cod: FiniteSetObj,
    /// Keyed by `(dom index, cod index)`; never stores the zero.
    weights: BTreeMap<(usize, usize), Scalar>,
}

fn require_quantale(q: &ScalarAlgebra) -> Result<(), RelError> {
    if q.is_quantale() {
        Ok(())
    } else {
        Err(RelError::NotQuantale(q.to_string()))
    }
}

fn same_quantale(a: &ScalarAlgebra, b: &ScalarAlgebra) -> Result<(), RelError> {
    if a == b {
        Ok(())
    } else {
        Err(RelError::AlgebraMismatch { left: a.to_string(), right: b.to_string() })
    }
}

impl QRelation {
    /// Builds a relation from index-keyed weights; zero weights are dropped.
    pub fn from_index_weights(
        quantale: &ScalarAlgebra,
        dom: &FiniteSetObj,
        cod: &FiniteSetObj,
        weights: impl IntoIterator<Item = ((usize, usize), Scalar)>,
    ) -> Result<Self, RelError> {
        require_quantale(quantale)?;
        let mut map = BTreeMap::new();
        for ((x, y), w) in weights {
            if x >= dom.len() || y >= cod.len() {
                return Err(RelError::Label(format!("index pair ({x}, {y}) out of range")));
            }
            quantale.check(&w)?;
            if !quantale.is_zero(&w) {
                map.insert((x, y), w);
            }
        }
        Ok(Self { quantale: quantale.clone(), dom: dom.clone(), cod: cod.clone(), weights: map })
    }

    /// Builds a relation from label-keyed weights.
    pub fn from_weights<S: AsRef<str>>(
        quantale: &ScalarAlgebra,
        dom: &FiniteSetObj,
        cod: &FiniteSetObj,
        weights: impl IntoIterator<Item = (S, S, Scalar)>,
    ) -> Result<Self, RelError> {
        let mut indexed = Vec::new();
        for (x, y, w) in weights {
            let lookup = |set: &FiniteSetObj, s: &str| {
                set.index_of(&parse_label(s)?).ok_or_else(|| RelError::Label(format!("unknown label {s:?} in {set}")))
            };
            indexed.push(((lookup(dom, x.as_ref())?, lookup(cod, y.as_ref())?), w));
        }
        Self::from_index_weights(quantale, dom, cod, indexed)
    }

    pub fn identity(quantale: &ScalarAlgebra, x: &FiniteSetObj) -> Result<Self, RelError> {
        Self::from_index_weights(quantale, x, x, (0..x.len()).map(|i| ((i, i), quantale.one())))
    }

    pub fn zero(quantale: &ScalarAlgebra, dom: &FiniteSetObj, cod: &FiniteSetObj) -> Result<Self, RelError> {
        Self::from_index_weights(quantale, dom, cod, [])
    }

    /// `X (x) Y -> Y (x) X`, `(x, y) |-> (y, x)`.
    pub fn symmetry(quantale: &ScalarAlgebra, x: &FiniteSetObj, y: &FiniteSetObj) -> Result<Self, RelError> {
        let (p, q) = (x.len(), y.len());
        Self::from_index_weights(
            quantale,
            &x.tensor(y),
            &y.tensor(x),
            (0..p * q).map(|i| ((i, (i % q) * p + i / q), quantale.one())),
        )
    }

    pub fn quantale(&self) -> &ScalarAlgebra {
        &self.quantale
    }

    pub fn dom(&self) -> &FiniteSetObj {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSetObj {
        &self.cod
    }

    pub fn weight(&self, x: usize, y: usize) -> Scalar {
        self.weights.get(&(x, y)).cloned().unwrap_or_else(|| self.quantale.zero())
    }

    pub fn support(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.weights.iter()
    }

    /// Pointwise join.
    pub fn join(&self, other: &QRelation) -> Result<QRelation, RelError> {
        same_quantale(&self.quantale, &other.quantale)?;
        if self.dom != other.dom || self.cod != other.cod {
            return Err(RelError::Composition { f_cod: format!("{}", self.cod), g_dom: format!("{}", other.cod) });
        }
        let mut w = self.weights.clone();
        for (k, v) in &other.weights {
            let joined = self.quantale.add(&self.weight(k.0, k.1), v);
            w.insert(*k, joined);
        }
        Self::from_index_weights(&self.quantale, &self.dom, &self.cod, w)
    }

    pub fn scale(&self, s: &Scalar) -> QRelation {
        let w = self.weights.iter().map(|(k, v)| (*k, self.quantale.mul(s, v)));
        Self::from_index_weights(&self.quantale, &self.dom, &self.cod, w).expect("scaling stays in the carrier")
    }

    /// Pointwise `self <= other` in the quantale order.
    pub fn leq(&self, other: &QRelation) -> bool {
        (0..self.dom.len()).all(|x| (0..self.cod.len()).all(|y| self.quantale.leq(&self.weight(x, y), &other.weight(x, y))))
    }

    /// The weight matrix, rows indexed by `cod`, columns by `dom`.
    pub fn to_matrix(&self) -> MatMorphism {
        MatMorphism::from_fn(&self.quantale, self.dom.len(), self.cod.len(), |r, c| self.weight(c, r))
    }

    pub fn from_matrix(m: &MatMorphism, dom: &FiniteSetObj, cod: &FiniteSetObj) -> Result<Self, RelError> {
        if m.dom().dim() != dom.len() || m.cod().dim() != cod.len() {
            return Err(RelError::Label(format!(
                "{}x{} matrix does not fit {dom} -> {cod}",
                m.cod().dim(),
                m.dom().dim()
            )));
        }
        let w = (0..cod.len()).flat_map(|r| (0..dom.len()).map(move |c| ((c, r), m.entry(r, c).clone())));
        Self::from_index_weights(m.algebra(), dom, cod, w)
    }

    pub fn to_json(&self) -> Value {
        let dom = self.dom.label_strings();
        let cod = self.cod.label_strings();
        let weights: Vec<Value> = self
            .weights
            .iter()
            .map(|((x, y), w)| json!({"from": dom[*x], "to": cod[*y], "w": self.quantale.scalar_to_json(w)}))
            .collect();
        json!({"quantale": self.quantale.descriptor(), "dom": dom, "cod": cod, "weights": weights})
    }

    pub fn from_json(v: &Value) -> Result<Self, RelError> {
        let q = ScalarAlgebra::from_descriptor(v.get("quantale").ok_or_else(|| RelError::Json("missing \"quantale\"".into()))?)?;
        let set = |key: &str| -> Result<FiniteSetObj, RelError> {
            match v.get(key) {
                Some(Value::Number(n)) => FiniteSetObj::ordinal(n.as_u64().unwrap_or(0) as usize),
                Some(Value::Array(a)) => {
                    let s: Option<Vec<&str>> = a.iter().map(Value::as_str).collect();
                    FiniteSetObj::parse(&s.ok_or_else(|| RelError::Json(format!("\"{key}\" labels must be strings")))?)
                }
                _ => Err(RelError::Json(format!("missing \"{key}\""))),
            }
        };
        let (dom, cod) = (set("dom")?, set("cod")?);
        let mut triples = Vec::new();
        let label = |l: &Value| match l {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(RelError::Json(format!("bad label {l}"))),
        };
        for t in v.get("weights").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            // `{"from", "to", "w"}`, or the short form `[from, to, w]`.
            let parts = match (t.get("from"), t.get("to"), t.get("w"), t.as_array().map(Vec::as_slice)) {
                (Some(x), Some(y), Some(w), _) => (x, y, w),
                (.., Some([x, y, w])) => (x, y, w),
                _ => return Err(RelError::Json(format!("weight entry {t} needs \"from\", \"to\" and \"w\""))),
            };
            triples.push((label(parts.0)?, label(parts.1)?, q.parse_scalar(parts.2)?));
        }
        Self::from_weights(&q, &dom, &cod, triples)
    }
}

impl fmt::Debug for QRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dom = self.dom.label_strings();
        let cod = self.cod.label_strings();
        write!(f, "Rel[{}]({:?} -> {:?})[", self.quantale, self.dom, self.cod)?;
        for (i, ((x, y), w)) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}->{}: {w}", dom[*x], cod[*y])?;
        }
        f.write_str("]")
    }
}

/// `s . r`: join over the middle set of `r(x, y) * s(y, z)`.
pub fn compose_rel(s: &QRelation, r: &QRelation) -> Result<QRelation, RelError> {
    same_quantale(&s.quantale, &r.quantale)?;
    if !r.cod.same_set(&s.dom) {
        return Err(RelError::Composition { f_cod: r.cod.to_string(), g_dom: s.dom.to_string() });
    }
    let q = &s.quantale;
    // reindex the middle set if the two sides list it in different orders
    let mid: Vec<usize> = if r.cod == s.dom {
        (0..r.cod.len()).collect()
    } else {
        r.cod.labels().iter().map(|l| s.dom.index_of(l).expect("same set")).collect()
    };
    let mut out_of: HashMap<usize, Vec<(usize, &Scalar)>> = HashMap::new();
    for ((y, z), w) in &s.weights {
        out_of.entry(*y).or_default().push((*z, w));
    }
    let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for ((x, y), a) in &r.weights {
        for (z, b) in out_of.get(&mid[*y]).map(Vec::as_slice).unwrap_or(&[]) {
            let prod = q.mul(a, b);
            let slot = acc.entry((*x, *z)).or_insert_with(|| q.zero());
            *slot = q.add(slot, &prod);
        }
    }
    QRelation::from_index_weights(q, &r.dom, &s.cod, acc)
}

/// `r (x) s` on product sets, weights multiplied.
pub fn tensor_rel(r: &QRelation, s: &QRelation) -> Result<QRelation, RelError> {
    same_quantale(&r.quantale, &s.quantale)?;
    let (sd, sc) = (s.dom.len(), s.cod.len());
    let w = r.weights.iter().flat_map(|((x, y), a)| {
        s.weights.iter().map(move |((x2, y2), b)| ((x * sd + x2, y * sc + y2), r.quantale.mul(a, b)))
    });
    let w: Vec<_> = w.collect();
    QRelation::from_index_weights(&r.quantale, &r.dom.tensor(&s.dom), &r.cod.tensor(&s.cod), w)
}

/// Every relation `dom -> cod` over a finite quantale.
pub fn all_relations(q: &ScalarAlgebra, dom: &FiniteSetObj, cod: &FiniteSetObj) -> Option<Vec<QRelation>> {
    let mats = crate::matcat::all_morphisms(q, dom.len(), cod.len())?;
    mats.iter().map(|m| QRelation::from_matrix(m, dom, cod).ok()).collect()
}
