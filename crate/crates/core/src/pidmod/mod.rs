//! Finitely generated abelian groups in structure-theorem form.
//!
//! A module is a list of cyclic factors `Z/(r)`; `0` is a free summand and
//! factors equal to `1` are dropped. The canonical form splits every nonzero
//! factor into prime powers and sorts by `(prime, exponent)` with free
//! factors last, so isomorphism is equality of canonical forms.

mod hom;

pub use hom::{hom_compose, hom_tensor, lift_multilinear, PidHom};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{gcd, smith_normal_form, AlgebraError, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PidError {
    #[error("cannot compose: codomain {f_cod} differs from domain {g_dom}")]
    Composition { f_cod: String, g_dom: String },
    #[error("residue {residue} at ({row}, {col}) does not define a map Z/({dom_factor}) -> Z/({cod_factor})")]
    Annihilator { row: usize, col: usize, residue: BigInt, dom_factor: BigInt, cod_factor: BigInt },
    #[error(
        "not multilinear: tuple {tuple:?} position {position} has factor {factor}, \
         but {factor} * {value} = {witness} is nonzero in Z/({target_factor})"
    )]
    NotMultilinear {
        tuple: Vec<usize>,
        position: usize,
        factor: BigInt,
        value: BigInt,
        target_factor: BigInt,
        witness: BigInt,
    },
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("module json: {0}")]
    Json(String),
}

fn smallest_prime(n: &BigInt) -> BigInt {
    let mut p = BigInt::from(2);
    while &p * &p <= *n {
        if (n % &p).is_zero() {
            return p;
        }
        p += 1;
    }
    n.clone()
}

/// Splits `n >= 2` into maximal prime powers, ascending by prime.
pub fn prime_power_split(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    while n > BigInt::one() {
        let p = smallest_prime(&n);
        let mut q = BigInt::one();
        while (&n % &p).is_zero() {
            n /= &p;
            q *= &p;
        }
        out.push(q);
    }
    out
}

/// Sort key for factors: nonzero by (smallest prime, value), free last.
fn factor_key(r: &BigInt) -> (bool, BigInt, BigInt) {
    if r.is_zero() {
        (true, BigInt::zero(), BigInt::zero())
    } else {
        (false, smallest_prime(r), r.clone())
    }
}

/// `Z/(r_1) + ... + Z/(r_d)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PidModule {
    factors: Vec<BigInt>,
}

impl PidModule {
    /// Keeps factor order; drops `1`s and takes absolute values.
    pub fn new<T: Into<BigInt>>(factors: impl IntoIterator<Item = T>) -> Self {
        let factors = factors.into_iter().map(|r| r.into().abs()).filter(|r| !r.is_one()).collect();
        Self { factors }
    }

    /// The tensor unit `Z`.
    pub fn unit() -> Self {
        Self { factors: vec![BigInt::zero()] }
    }

    /// The zero module, with no factors.
    pub fn zero() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn is_torsion(&self) -> bool {
        self.factors.iter().all(|r| !r.is_zero())
    }

    /// Number of elements, or `None` with a free summand.
    pub fn order(&self) -> Option<BigInt> {
        self.is_torsion().then(|| self.factors.iter().product())
    }

    pub fn canonical(&self) -> PidModule {
        let mut factors: Vec<BigInt> = self
            .factors
            .iter()
            .flat_map(|r| if r.is_zero() { vec![BigInt::zero()] } else { prime_power_split(r) })
            .collect();
        factors.sort_by_key(factor_key);
        PidModule { factors }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn is_isomorphic(&self, other: &PidModule) -> bool {
        self.canonical() == other.canonical()
    }

    /// All elements of a torsion module as residue vectors, lexicographic.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let sizes: Vec<usize> = self.factors.iter().map(|r| r.to_usize().filter(|&n| n > 0)).collect::<Option<_>>()?;
        let total = sizes.iter().try_fold(1usize, |a, &n| a.checked_mul(n))?;
        Some(
            (0..total)
                .map(|code| crate::matcat::radix::digits(code, &sizes).into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({"factors": self.factors.iter().map(|r| Value::String(r.to_string())).collect::<Vec<_>>()})
    }

    /// Reads `{"factors": [..]}` or `{"presentation": {"generators": n, "relations": [[..]]}}`.
    /// Presentations are decomposed; factor lists are kept as given.
    pub fn from_json(v: &Value) -> Result<Self, PidError> {
        if let Some(f) = v.get("factors") {
            let arr = f.as_array().ok_or_else(|| PidError::Json("\"factors\" must be an array".into()))?;
            let fs = arr.iter().map(json_int).collect::<Result<Vec<_>, _>>()?;
            if fs.iter().any(Signed::is_negative) {
                return Err(PidError::Json("factors must be non-negative".into()));
            }
            return Ok(PidModule::new(fs));
        }
        if let Some(p) = v.get("presentation") {
            return Ok(decompose(&Presentation::from_json(p)?));
        }
        Err(PidError::Json("expected \"factors\" or \"presentation\"".into()))
    }
}

pub(crate) fn json_int(v: &Value) -> Result<BigInt, PidError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| PidError::Json(format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| PidError::Json(format!("{s:?} is not an integer"))),
        _ => Err(PidError::Json(format!("{v} is not an integer"))),
    }
}

impl fmt::Debug for PidModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.factors.iter().map(|r| if r.is_zero() { "Z".to_string() } else { format!("Z/{r}") }).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Display for PidModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Generators and a `generators x relations` integer relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self, PidError> {
        if relations.rows() != generators {
            return Err(PidError::Shape(format!(
                "{} relation rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(Self { generators, relations })
    }

    /// The diagonal presentation of a factor list.
    pub fn of_module(m: &PidModule) -> Self {
        Self { generators: m.dim(), relations: IntMatrix::diagonal(m.factors()) }
    }

    pub fn from_json(v: &Value) -> Result<Self, PidError> {
        let n = v
            .get("generators")
            .and_then(Value::as_u64)
            .ok_or_else(|| PidError::Json("missing \"generators\"".into()))? as usize;
        let rows = match v.get("relations") {
            None => Vec::new(),
            Some(r) => r.as_array().ok_or_else(|| PidError::Json("\"relations\" must be an array of rows".into()))?.clone(),
        };
        if rows.is_empty() {
            return Presentation::new(n, IntMatrix::zeros(n, 0));
        }
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| PidError::Json("relation rows must be arrays".into()))?
                    .iter()
                    .map(json_int)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(n, IntMatrix::from_rows(&parsed)?)
    }
}

/// Module presented by `p`, in canonical primary form.
pub fn decompose(p: &Presentation) -> PidModule {
    let snf = smith_normal_form(&p.relations);
    let mut factors = snf.invariant_factors.clone();
    factors.resize(p.generators, BigInt::zero());
    PidModule::new(factors).canonical()
}

/// Nonzero-factor tensor of a sequence, indexed by source tuples.
///
/// Factors are `gcd(r_{1,t_1}, .., r_{n,t_n})` over all tuples in
/// lexicographic order, trivial ones dropped, then stably sorted by the
/// canonical key. For canonical inputs the module is already canonical.
pub fn tensor_many(modules: &[&PidModule]) -> (PidModule, Vec<Vec<usize>>) {
    let mut entries: Vec<(BigInt, Vec<usize>)> = vec![(BigInt::zero(), Vec::new())];
    for m in modules {
        entries = entries
            .iter()
            .flat_map(|(g, t)| {
                m.factors().iter().enumerate().map(move |(i, r)| {
                    let mut t = t.clone();
                    t.push(i);
                    (gcd(g, r), t)
                })
            })
            .filter(|(g, _)| !g.is_one())
            .collect();
    }
    entries.sort_by_key(|(g, _)| factor_key(g));
    let (factors, tuples) = entries.into_iter().unzip();
    (PidModule { factors }, tuples)
}

pub fn tensor_indexed(m: &PidModule, n: &PidModule) -> (PidModule, Vec<(usize, usize)>) {
    let (module, tuples) = tensor_many(&[m, n]);
    (module, tuples.into_iter().map(|t| (t[0], t[1])).collect())
}

/// `M (x) N` by the pairwise gcd formula, canonical.
pub fn tensor_modules(m: &PidModule, n: &PidModule) -> PidModule {
    tensor_indexed(m, n).0.canonical()
}

/// Independent tensor: `coker [A (x) I_m | I_n (x) B]`, then decompose.
pub fn tensor_oracle(pm: &Presentation, pn: &Presentation) -> PidModule {
    let (n, m) = (pm.generators, pn.generators);
    let left = pm.relations.kronecker(&IntMatrix::identity(m));
    let right = IntMatrix::identity(n).kronecker(&pn.relations);
    let block = left.hconcat(&right).expect("both blocks have n*m rows");
    decompose(&Presentation { generators: n * m, relations: block })
}

/// Canonical torsion and free modules with at most `max_factors` factors whose
/// torsion part has order at most `max_order`.
pub fn enumerate_modules(max_order: u64, max_free: usize) -> Vec<PidModule> {
    let prime_powers: Vec<u64> = (2..=max_order).filter(|&q| prime_power_split(&BigInt::from(q)).len() == 1).collect();
    fn go(pp: &[u64], start: usize, budget: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(acc.clone());
        for i in start..pp.len() {
            if pp[i] <= budget {
                acc.push(pp[i]);
                go(pp, i, budget / pp[i], acc, out);
                acc.pop();
            }
        }
    }
    let mut torsion = Vec::new();
    go(&prime_powers, 0, max_order, &mut Vec::new(), &mut torsion);
    let mut out: Vec<PidModule> = Vec::new();
    for t in torsion {
        for free in 0..=max_free {
            let m = PidModule::new(t.iter().copied().chain(std::iter::repeat_n(0, free))).canonical();
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out.sort_by(|a, b| (a.order().is_none(), a.order(), a.dim(), a.factors()).cmp(&(b.order().is_none(), b.order(), b.dim(), b.factors())));
    out
}

pub(crate) fn reduce(x: &BigInt, modulus: &BigInt) -> BigInt {
    if modulus.is_zero() {
        x.clone()
    } else {
        x.mod_floor(modulus)
    }
}
