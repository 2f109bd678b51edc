use serde_json::json;

use super::checks::LawCheck;
use super::{LiftError, MatSpan, SmcFunctor, SpanMor};
use crate::algebra::ScalarAlgebra;
use crate::matcat::radix::{digits, flatten, prime_word};
use crate::matcat::{self, MatMorphism, MatObject};
use crate::monoidal::MatSmc;

/// `eta_X: X -> R(X)`, sending `x` to the tuple of its mixed-radix digits
/// over the sorted prime word of `dim X`.
pub fn eta(algebra: &ScalarAlgebra, n: usize) -> MatMorphism {
    let word = prime_word(n);
    let image: Vec<usize> = (0..n).map(|x| flatten(&digits(x, &word), &word)).collect();
    MatMorphism::permutation(algebra, &image)
}

/// The injection of the maximal span into `Mat(S)` and the retraction
/// onto it, with the `eta` family relating them.
pub struct Retraction {
    pub mat: MatSmc,
    pub span: MatSpan,
    pub bound: usize,
    /// `eta[n - 1] = eta_n`.
    pub eta: Vec<MatMorphism>,
}

pub fn build_retraction(algebra: &ScalarAlgebra, bound: usize) -> Retraction {
    Retraction {
        mat: MatSmc::new(algebra.clone()),
        span: MatSpan::new(algebra.clone()),
        bound,
        eta: (1..=bound).map(|n| eta(algebra, n)).collect(),
    }
}

impl Retraction {
    pub fn eta_of(&self, n: usize) -> MatMorphism {
        match self.eta.get(n.wrapping_sub(1)) {
            Some(e) => e.clone(),
            None => eta(&self.mat.algebra, n),
        }
    }

    /// `eta_{X (x) Y} = eta_X (x) eta_Y` for all dimensions up to the bound.
    pub fn coherence(&self) -> LawCheck {
        let mut check = LawCheck { law: "eta coherence".into(), checked: 0, exhaustive: true, failures: 0, witness: None };
        for x in 1..=self.bound {
            for y in 1..=self.bound {
                let lhs = self.eta_of(x * y);
                let rhs = matcat::tensor(&self.eta_of(x), &self.eta_of(y)).expect("same algebra");
                check.checked += 1;
                if lhs != rhs {
                    check.failures += 1;
                    check.witness.get_or_insert_with(|| json!({"x": x, "y": y}));
                }
            }
        }
        check
    }

    pub fn retraction(&self) -> RetractionFunctor<'_> {
        RetractionFunctor { r: self }
    }

    pub fn injection(&self) -> InjectionFunctor<'_> {
        InjectionFunctor { r: self }
    }
}

/// `R(X) = (x)_i A(p_i)`, `R(f) = eta_Y . f . eta_X^-1`.
pub struct RetractionFunctor<'a> {
    r: &'a Retraction,
}

impl SmcFunctor for RetractionFunctor<'_> {
    type Source = MatSmc;
    type Target = MatSpan;

    fn source(&self) -> &MatSmc {
        &self.r.mat
    }

    fn target(&self) -> &MatSpan {
        &self.r.span
    }

    fn map_obj(&self, x: &MatObject) -> Vec<usize> {
        prime_word(x.dim())
    }

    fn map_mor(&self, f: &MatMorphism) -> Result<SpanMor, LiftError> {
        let (n, m) = (f.dom().dim(), f.cod().dim());
        let inner = matcat::compose(f, &self.r.eta_of(n).transpose()).map_err(|e| LiftError::Morphism(e.to_string()))?;
        let matrix = matcat::compose(&self.r.eta_of(m), &inner).map_err(|e| LiftError::Morphism(e.to_string()))?;
        Ok(SpanMor { dom: prime_word(n), cod: prime_word(m), matrix })
    }

    /// `eta_{X (x) Y} . (eta_X (x) eta_Y)^-1`, typed from the concatenated
    /// word to the sorted one.
    fn comparison(&self, x: &MatObject, y: &MatObject) -> Result<SpanMor, LiftError> {
        let both = matcat::tensor(&self.r.eta_of(x.dim()), &self.r.eta_of(y.dim())).expect("same algebra");
        let matrix = matcat::compose(&self.r.eta_of(x.dim() * y.dim()), &both.transpose()).expect("sizes match");
        debug_assert!(matrix.is_permutation());
        let concat: Vec<usize> = prime_word(x.dim()).into_iter().chain(prime_word(y.dim())).collect();
        Ok(SpanMor { dom: concat, cod: prime_word(x.dim() * y.dim()), matrix })
    }
}

/// `E(w) = dim w`, forgetting the word.
pub struct InjectionFunctor<'a> {
    r: &'a Retraction,
}

impl SmcFunctor for InjectionFunctor<'_> {
    type Source = MatSpan;
    type Target = MatSmc;

    fn source(&self) -> &MatSpan {
        &self.r.span
    }

    fn target(&self) -> &MatSmc {
        &self.r.mat
    }

    fn map_obj(&self, w: &Vec<usize>) -> MatObject {
        MatObject::new(w.iter().product()).expect("positive")
    }

    fn map_mor(&self, f: &SpanMor) -> Result<MatMorphism, LiftError> {
        Ok(f.matrix.clone())
    }
}
