use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::scalar::{AlgebraKind, Scalar, ScalarAlgebra};
use super::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    AddAssociative,
    AddCommutative,
    AddUnit,
    MulAssociative,
    MulCommutative,
    MulUnit,
    Distributive,
    ZeroAbsorbing,
    /// Quantales only: binary join is idempotent.
    JoinIdempotent,
}

impl Law {
    /// Checks one law on a triple; unary and binary laws ignore the tail.
    fn holds(self, alg: &ScalarAlgebra, a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
        let zero = alg.zero();
        let one = alg.one();
        match self {
            Law::AddAssociative => alg.add(&alg.add(a, b), c) == alg.add(a, &alg.add(b, c)),
            Law::AddCommutative => alg.add(a, b) == alg.add(b, a),
            Law::AddUnit => alg.add(a, &zero) == *a && alg.add(&zero, a) == *a,
            Law::MulAssociative => alg.mul(&alg.mul(a, b), c) == alg.mul(a, &alg.mul(b, c)),
            Law::MulCommutative => alg.mul(a, b) == alg.mul(b, a),
            Law::MulUnit => alg.mul(a, &one) == *a && alg.mul(&one, a) == *a,
            Law::Distributive => alg.mul(a, &alg.add(b, c)) == alg.add(&alg.mul(a, b), &alg.mul(a, c)),
            Law::ZeroAbsorbing => alg.mul(a, &zero) == zero && alg.mul(&zero, a) == zero,
            Law::JoinIdempotent => alg.add(a, a) == *a,
        }
    }

    fn arity(self) -> usize {
        match self {
            Law::AddAssociative | Law::MulAssociative | Law::Distributive => 3,
            Law::AddCommutative | Law::MulCommutative => 2,
            Law::AddUnit | Law::MulUnit | Law::ZeroAbsorbing | Law::JoinIdempotent => 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawResult {
    pub law: Law,
    pub passed: bool,
    pub checked: u64,
    /// First failing argument tuple, truncated to the law's arity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub algebra: String,
    pub exhaustive: bool,
    pub results: Vec<LawResult>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

fn laws_for(alg: &ScalarAlgebra) -> Vec<Law> {
    let mut laws = vec![
        Law::AddAssociative,
        Law::AddCommutative,
        Law::AddUnit,
        Law::MulAssociative,
        Law::MulCommutative,
        Law::MulUnit,
        Law::Distributive,
        Law::ZeroAbsorbing,
    ];
    if alg.is_quantale() {
        laws.push(Law::JoinIdempotent);
    }
    laws
}

fn sample_scalar(alg: &ScalarAlgebra, rng: &mut ChaCha8Rng) -> Scalar {
    if let Some(elems) = alg.elements() {
        return elems[rng.random_range(0..elems.len())].clone();
    }
    match alg.kind() {
        AlgebraKind::Naturals => {
            if rng.random_ratio(1, 8) {
                Scalar::Int(BigInt::from(rng.random::<u64>()) * BigInt::from(rng.random::<u64>()))
            } else {
                Scalar::Int(rng.random_range(0..40).into())
            }
        }
        AlgebraKind::Integers => {
            if rng.random_ratio(1, 8) {
                Scalar::Int(BigInt::from(rng.random::<i64>()) * BigInt::from(rng.random::<i64>()))
            } else {
                Scalar::Int(rng.random_range(-40..40).into())
            }
        }
        AlgebraKind::Tropical => {
            if rng.random_ratio(1, 6) {
                Scalar::Trop(None)
            } else {
                Scalar::Trop(Some(rng.random_range(0..40).into()))
            }
        }
        AlgebraKind::RationalGoedel | AlgebraKind::RationalViterbi => {
            let den: i64 = rng.random_range(1..16);
            let num: i64 = rng.random_range(0..=den);
            Scalar::Rat(BigRational::new(num.into(), den.into()))
        }
        _ => unreachable!("finite kinds enumerate their elements"),
    }
}

/// Checks the commutative semiring laws (plus join idempotence for quantales).
///
/// Finite algebras are checked exhaustively when `sample_budget` covers all
/// `n^3` triples; otherwise `sample_budget` triples are drawn from a ChaCha
/// stream seeded with `seed`.
pub fn check_algebra_laws(alg: &ScalarAlgebra, sample_budget: u64, seed: u64) -> Result<LawReport, AlgebraError> {
    if let AlgebraKind::QuantaleTable(t) = alg.kind() {
        t.validate()?;
    }
    let laws = laws_for(alg);
    let mut results: Vec<LawResult> =
        laws.iter().map(|&law| LawResult { law, passed: true, checked: 0, witness: None }).collect();

    let record = |a: &Scalar, b: &Scalar, c: &Scalar, results: &mut Vec<LawResult>| {
        for r in results.iter_mut() {
            r.checked += 1;
            if r.passed && !r.law.holds(alg, a, b, c) {
                r.passed = false;
                let full = [a.clone(), b.clone(), c.clone()];
                r.witness = Some(full[..r.law.arity()].to_vec());
            }
        }
    };

    let exhaustive = match alg.elements() {
        Some(elems) if (elems.len() as u64).saturating_pow(3) <= sample_budget => {
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        record(a, b, c, &mut results);
                    }
                }
            }
            true
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..sample_budget {
                let a = sample_scalar(alg, &mut rng);
                let b = sample_scalar(alg, &mut rng);
                let c = sample_scalar(alg, &mut rng);
                record(&a, &b, &c, &mut results);
            }
            false
        }
    };
    Ok(LawReport { algebra: alg.to_string(), exhaustive, results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteTable;

    fn chain3(mm: u32) -> ScalarAlgebra {
        // 0 < m < 1 with join = max; only m*m is free.
        ScalarAlgebra::quantale_table(FiniteTable {
            elements: vec!["0".into(), "m".into(), "1".into()],
            add: vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
            mul: vec![vec![0, 0, 0], vec![0, mm, 1], vec![0, 1, 2]],
            zero: 0,
            one: 2,
        })
        .unwrap()
    }

    #[test]
    fn boolean_passes_exhaustively() {
        let r = check_algebra_laws(&ScalarAlgebra::boolean(), 8, 0).unwrap();
        assert!(r.exhaustive);
        assert!(r.all_passed());
        assert!(r.results.iter().all(|l| l.checked == 8));
    }

    #[test]
    fn integers_mod_4_all_64_triples() {
        let r = check_algebra_laws(&ScalarAlgebra::integers_mod(4).unwrap(), 64, 0).unwrap();
        assert!(r.exhaustive && r.all_passed());
        assert_eq!(r.results[0].checked, 64);
    }

    #[test]
    fn planted_non_distributive_cell_is_found() {
        // m*m = 1 makes {1, m} a group of order 2, which keeps associativity
        // and commutativity but breaks m*(m v 1) = m*m v m*1.
        let r = check_algebra_laws(&chain3(2), 27, 0).unwrap();
        let failed: Vec<_> = r.failures().map(|f| f.law).collect();
        assert_eq!(failed, vec![Law::Distributive]);
        let w = r.failures().next().unwrap().witness.clone().unwrap();
        let alg = chain3(2);
        assert_ne!(alg.mul(&w[0], &alg.add(&w[1], &w[2])), alg.add(&alg.mul(&w[0], &w[1]), &alg.mul(&w[0], &w[2])));
    }

    #[test]
    fn goedel_three_chain_is_a_quantale() {
        assert!(check_algebra_laws(&chain3(1), 27, 0).unwrap().all_passed());
    }

    #[test]
    fn small_budget_falls_back_to_sampling() {
        let r = check_algebra_laws(&ScalarAlgebra::integers_mod(4).unwrap(), 10, 3).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.results[0].checked, 10);
    }

    #[test]
    fn infinite_algebras_pass_sampled_laws() {
        for alg in [
            ScalarAlgebra::naturals(),
            ScalarAlgebra::integers(),
            ScalarAlgebra::tropical(),
            ScalarAlgebra::rational_goedel(),
            ScalarAlgebra::rational_viterbi(),
        ] {
            let r = check_algebra_laws(&alg, 500, 7).unwrap();
            assert!(r.all_passed(), "{alg}: {:?}", r.failures().collect::<Vec<_>>());
            assert!(!r.exhaustive);
        }
    }

    #[test]
    fn integers_are_not_a_quantale() {
        assert!(!ScalarAlgebra::integers().is_quantale());
        // max is idempotent but + is not
        let r = check_algebra_laws(&ScalarAlgebra::tropical(), 100, 1).unwrap();
        assert!(r.results.iter().any(|l| l.law == Law::JoinIdempotent));
    }
}
