use lochar_core::matcat::MatObject;
use lochar_core::monoidal::*;
use lochar_core::{PidModule, ScalarAlgebra};

fn mat_bool() -> MatSmc {
    MatSmc::new(ScalarAlgebra::boolean())
}

fn dim(n: usize) -> MatObject {
    MatObject::new(n).unwrap()
}

fn prime_multiset(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    out
}

#[test]
fn mat_divides_examples() {
    let smc = mat_bool();
    assert_eq!(tensor_divides(&smc, &dim(2), &dim(6), 12), Divisibility::Witness(dim(3)));
    assert_eq!(tensor_divides(&smc, &dim(4), &dim(6), 12), Divisibility::None);
}

#[test]
fn mat_divides_matches_arithmetic_up_to_12() {
    let smc = mat_bool();
    let cert = Certifier::new(&smc, 12);
    for a in 1..=12 {
        for b in 1..=12 {
            let got = cert.divides(&dim(a), &dim(b), true);
            if b % a == 0 && b / a > 1 {
                assert_eq!(got, Divisibility::Witness(dim(b / a)), "{a} | {b}");
            } else {
                assert_eq!(got, Divisibility::None, "{a} | {b}");
            }
        }
    }
}

#[test]
fn mat_primality() {
    let smc = mat_bool();
    let cert = Certifier::new(&smc, 12);
    for p in [2, 3, 5, 7, 11] {
        assert!(cert.is_tensor_prime(&dim(p)).is_prime(), "{p}");
    }
    assert_eq!(cert.is_tensor_prime(&dim(1)), Primality::NotPrime(PrimeClause::IsUnit));
    match cert.is_tensor_prime(&dim(4)) {
        Primality::NotPrime(PrimeClause::Euclid { b, c, cofactor }) => {
            assert_eq!((b.dim(), c.dim()), (2, 2));
            assert_eq!(cofactor.dim(), 1);
        }
        other => panic!("{other:?}"),
    }
    for n in [6, 8, 9, 10, 12] {
        assert_eq!(cert.is_tensor_prime(&dim(n)).verdict(), Verdict::Fail, "{n}");
    }
    assert!(matches!(cert.is_tensor_prime(&dim(13)), Primality::Indeterminate(_)));
}

#[test]
fn mat_factorization_matches_prime_multiset_up_to_12() {
    let smc = mat_bool();
    let cert = Certifier::new(&smc, 12);
    for n in 1..=12 {
        let f = cert.unique_factorization(&dim(n));
        assert_eq!(f.status, FactorizationStatus::Unique, "{n}");
        let mut parts: Vec<usize> = f.parts.iter().map(|o| o.dim()).collect();
        parts.sort();
        assert_eq!(parts, prime_multiset(n), "{n}");
        let product = f.parts.iter().fold(MatObject::UNIT, |acc, o| acc.tensor(*o));
        assert_eq!(product, dim(n));
    }
}

#[test]
fn pid_examples() {
    let smc = PidSmc::default();
    let z6 = PidModule::new([6]);
    match tensor_divides(&smc, &z6, &z6, 36) {
        Divisibility::Witness(w) => assert!(w.is_isomorphic(&z6), "{w}"),
        other => panic!("{other:?}"),
    }
    assert_eq!(is_tensor_prime(&smc, &PidModule::unit(), 36), Primality::NotPrime(PrimeClause::IsUnit));
    assert_eq!(is_tensor_prime(&smc, &PidModule::zero(), 36), Primality::NotPrime(PrimeClause::ZeroObject));
    let f = unique_factorization(&smc, &z6, 36);
    assert_ne!(f.verdict(), Verdict::Pass);
    let cert = Certifier::new(&smc, 36);
    let json = cert.factorization_json(&f);
    assert!(json["status"].is_string());
}

#[test]
fn span_of_unit_is_trivial() {
    let smc = mat_bool();
    let span = generate_minimal_span(&smc, &[MatObject::UNIT], &[], SpanBounds { max_object_size: 8, max_morphisms: 100 });
    assert_eq!(span.objects, vec![MatObject::UNIT]);
    assert!(span.morphisms.iter().all(|m| m.dom().dim() == 1 && m.cod().dim() == 1));
    assert!(!span.truncated);
}

#[test]
fn span_of_two_with_identities_is_permutations() {
    let smc = mat_bool();
    // S_1, S_1, S_2 on dims 1, 2, 4 and additionally S_3 on dim 8
    for (bound, expected) in [(4, 4), (8, 10)] {
        let span = generate_minimal_span(&smc, &[dim(2)], &[], SpanBounds { max_object_size: bound, max_morphisms: 1000 });
        assert_eq!(span.morphisms.len(), expected, "bound {bound}");
        assert!(span.morphisms.iter().all(|m| m.is_permutation()));
    }
}

#[test]
fn span_objects_are_smooth_numbers() {
    let smc = mat_bool();
    let span = generate_minimal_span(&smc, &[MatObject::UNIT, dim(2), dim(3)], &[], SpanBounds { max_object_size: 30, max_morphisms: 0 });
    let mut got: Vec<usize> = span.objects.iter().map(|o| o.dim()).collect();
    got.sort();
    let want: Vec<usize> = (1..=30).filter(|n| prime_multiset(*n).iter().all(|p| *p <= 3)).collect();
    assert_eq!(got, want);
}

#[test]
fn mat_bool_tomography_passes_in_both_modes() {
    let smc = mat_bool();
    let auto = check_product_tomography(&smc, TomographyBounds::new(2, 2), TomographyMode::Auto).unwrap();
    assert_eq!(auto.verdict, Verdict::Pass);
    assert_eq!(auto.method, TomographyMethod::SufficientConditions);
    let ex = check_product_tomography(&smc, TomographyBounds::new(2, 2), TomographyMode::Exhaustive).unwrap();
    assert_eq!(ex.verdict, Verdict::Pass);
    assert!(ex.families_checked > 0);
}

#[test]
fn trivial_category_is_tomographic() {
    let smc = HomTableSmc::trivial();
    for mode in [TomographyMode::Auto, TomographyMode::Exhaustive] {
        let r = check_product_tomography(&smc, TomographyBounds::new(1, 3), mode).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }
}

#[test]
fn hom_table_counterexample_fails_and_reverifies() {
    let smc = HomTableSmc::tomography_counterexample();
    for mode in [TomographyMode::Auto, TomographyMode::Exhaustive] {
        let r = check_product_tomography(&smc, TomographyBounds::new(1, 2), mode).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let (f, g) = r.counterexample.clone().unwrap();
        assert!(verify_tomography_counterexample(&smc, &f, &g).unwrap());
        let shown: Vec<String> = f.iter().chain(&g).map(|m| smc.show_mor(m)).collect();
        assert_eq!(shown, ["1_A", "0_A"]);
    }
}

#[test]
fn infinite_homs_are_an_error() {
    let err = check_product_tomography(&PidSmc::default(), TomographyBounds::new(2, 1), TomographyMode::Auto).unwrap_err();
    assert!(matches!(err, SmcError::InfiniteHoms { .. }));
}

fn free_bounds() -> FreeSubcatBounds {
    FreeSubcatBounds::new(8, TomographyBounds::new(3, 2))
}

#[test]
fn unit_and_primes_are_free_in_mat_bool() {
    let smc = mat_bool();
    let atoms: Vec<MatObject> = [1, 2, 3, 5, 7].map(dim).to_vec();
    let r = check_free_subcategory(&smc, &atoms, None, free_bounds());
    assert_eq!(r.verdict, Verdict::Pass, "{:#?}", r.clauses);
    assert_eq!(r.clauses.len(), 3);
}

#[test]
fn composite_atom_fails_clause_i() {
    let smc = mat_bool();
    let atoms: Vec<MatObject> = [1, 2, 4].map(dim).to_vec();
    let r = check_free_subcategory(&smc, &atoms, None, free_bounds());
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.clauses[0].verdict, Verdict::Fail);
    let bad = &r.clauses[0].details["atoms"][1];
    assert_eq!(bad["atom"], "4");
    assert_eq!(bad["primality"]["b"], "2");
    assert_eq!(bad["primality"]["c"], "2");
}

#[test]
fn missing_unit_fails_immediately() {
    let smc = mat_bool();
    let r = check_free_subcategory(&smc, &[dim(2), dim(3)], None, free_bounds());
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.clauses.len(), 1);
}
