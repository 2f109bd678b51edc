use lochar_core::lifting::*;
use lochar_core::matcat::{self, all_morphisms, MatMorphism, MatObject};
use lochar_core::monoidal::{EnumerableSmc, FreeSubcatBounds, MatSmc, RelSmc, SpanBounds, TomographyBounds, Verdict};
use lochar_core::{Scalar, ScalarAlgebra};

fn boolean() -> ScalarAlgebra {
    ScalarAlgebra::boolean()
}

fn dim(n: usize) -> MatObject {
    MatObject::new(n).unwrap()
}

type Bits = Vec<Vec<bool>>;

fn bits(m: &MatMorphism) -> Bits {
    (0..m.cod().dim())
        .map(|r| (0..m.dom().dim()).map(|c| *m.entry(r, c) == Scalar::Bool(true)).collect())
        .collect()
}

fn bit_identity(n: usize) -> Bits {
    (0..n).map(|r| (0..n).map(|c| r == c).collect()).collect()
}

fn bit_kron(a: &Bits, b: &Bits) -> Bits {
    let (ar, ac, br, bc) = (a.len(), a[0].len(), b.len(), b[0].len());
    (0..ar * br).map(|r| (0..ac * bc).map(|c| a[r / br][c / bc] && b[r % br][c % bc]).collect()).collect()
}

fn bit_mul(a: &Bits, b: &Bits) -> Bits {
    (0..a.len()).map(|r| (0..b[0].len()).map(|c| (0..b.len()).any(|k| a[r][k] && b[k][c])).collect()).collect()
}

fn bit_transpose(a: &Bits) -> Bits {
    (0..a[0].len()).map(|c| (0..a.len()).map(|r| a[r][c]).collect()).collect()
}

fn factor(mut n: usize) -> Vec<usize> {
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

/// Kronecker product of the swap on each factor 2 and identities elsewhere.
fn conjugator(n: usize) -> Bits {
    let swap = vec![vec![false, true], vec![true, false]];
    factor(n).iter().fold(bit_identity(1), |acc, &p| bit_kron(&acc, &if p == 2 { swap.clone() } else { bit_identity(p) }))
}

fn swap_conjugate(m: &MatMorphism) -> MatMorphism {
    let alg = m.algebra();
    let p = |n: usize| MatMorphism::from_fn(alg, n, n, |r, c| Scalar::Bool(conjugator(n)[r][c]));
    let (pd, pc) = (p(m.dom().dim()), p(m.cod().dim()));
    matcat::compose(&pc, &matcat::compose(m, &pd.transpose()).unwrap()).unwrap()
}

fn conjugation_spec(smc: &MatSmc, atoms: &[usize]) -> FunctorSpec<MatSmc, MatSmc> {
    FunctorSpec::from_rule(
        smc,
        smc,
        atoms.to_vec(),
        dim,
        |f| Ok(swap_conjugate(f)),
        FunctorSpec::<MatSmc, MatSmc>::atom_generators(smc, atoms, 1 << 12),
        [CAP_LINEAR.to_string()],
    )
    .unwrap()
}

fn identity_spec(smc: &MatSmc, atoms: &[usize]) -> FunctorSpec<MatSmc, MatSmc> {
    FunctorSpec::from_rule(
        smc,
        smc,
        atoms.to_vec(),
        dim,
        |f| Ok(f.clone()),
        FunctorSpec::<MatSmc, MatSmc>::standard_generators(smc, atoms),
        [CAP_LINEAR.to_string()],
    )
    .unwrap()
}

fn all_up_to(alg: &ScalarAlgebra, bound: usize) -> impl Iterator<Item = MatMorphism> + '_ {
    (1..=bound).flat_map(move |a| (1..=bound).flat_map(move |b| all_morphisms(alg, a, b).unwrap()))
}

const LINEAR: Strategy = Strategy::LinearExtension(Accumulation::Entrywise);

#[test]
fn identity_lifting_is_identity_up_to_4() {
    let smc = MatSmc::new(boolean());
    let f = lift_functor(&smc, &smc, identity_spec(&smc, &[2, 3]), LINEAR).unwrap();
    for m in all_up_to(&smc.algebra, 4) {
        assert_eq!(f.map_mor(&m).unwrap(), m);
    }
    assert_eq!(check_monoidal(&f, CheckBounds::new(4)).verdict, Verdict::Pass);
}

#[test]
fn conjugation_matches_kronecker_oracle_up_to_4() {
    let smc = MatSmc::new(boolean());
    let spec = conjugation_spec(&smc, &[2, 3]);
    for acc in [Accumulation::Entrywise, Accumulation::Columnwise] {
        let f = lift_functor(&smc, &smc, spec.clone(), Strategy::LinearExtension(acc)).unwrap();
        let mut count = 0;
        for m in all_up_to(&smc.algebra, 4) {
            let (pd, pc) = (conjugator(m.dom().dim()), conjugator(m.cod().dim()));
            let expected = bit_mul(&pc, &bit_mul(&bits(&m), &bit_transpose(&pd)));
            assert_eq!(bits(&f.map_mor(&m).unwrap()), expected, "{acc:?}");
            count += 1;
        }
        assert_eq!(count, 2 + 2 * 4 + 16 + 2 * 8 + 2 * 16 + 2 * 64 + 2 * 256 + 512 + 2 * 4096 + 65536);
    }
}

#[test]
fn conjugation_restricts_to_spec() {
    let smc = MatSmc::new(boolean());
    let spec = conjugation_spec(&smc, &[2, 3]);
    let f = lift_functor(&smc, &smc, spec.clone(), LINEAR).unwrap();
    for (g, image) in spec.morphisms() {
        assert_eq!(&f.map_mor(g).unwrap(), image);
    }
}

#[test]
fn conjugation_laws_pass() {
    let smc = MatSmc::new(boolean());
    let f = lift_functor(&smc, &smc, conjugation_spec(&smc, &[2, 3]), LINEAR).unwrap();
    let report = check_monoidal(&f, CheckBounds::new(4));
    for law in &report.laws {
        assert_eq!(law.failures, 0, "{}", law.law);
        assert!(law.checked > 0, "{}", law.law);
    }
    assert_eq!(report.verdict, Verdict::Pass);
}

/// Delegates to a lifted functor except on one morphism, whose image has
/// its top-left entry flipped.
struct Corrupted<'a> {
    inner: &'a LiftedFunctor<'a, MatSmc, MatSmc>,
    victim: MatMorphism,
}

impl SmcFunctor for Corrupted<'_> {
    type Source = MatSmc;
    type Target = MatSmc;

    fn source(&self) -> &MatSmc {
        self.inner.source()
    }

    fn target(&self) -> &MatSmc {
        self.inner.target()
    }

    fn map_obj(&self, x: &MatObject) -> MatObject {
        self.inner.map_obj(x)
    }

    fn map_mor(&self, f: &MatMorphism) -> Result<MatMorphism, LiftError> {
        let m = self.inner.map_mor(f)?;
        if *f != self.victim {
            return Ok(m);
        }
        Ok(MatMorphism::from_fn(m.algebra(), m.dom().dim(), m.cod().dim(), |r, c| match (r, c, m.entry(r, c)) {
            (0, 0, Scalar::Bool(b)) => Scalar::Bool(!b),
            (_, _, s) => s.clone(),
        }))
    }

    fn comparison(&self, x: &MatObject, y: &MatObject) -> Result<MatMorphism, LiftError> {
        self.inner.comparison(x, y)
    }
}

#[test]
fn corrupted_lifting_fails_composition_with_witness() {
    let smc = MatSmc::new(boolean());
    let f = lift_functor(&smc, &smc, identity_spec(&smc, &[2]), LINEAR).unwrap();
    let victim = MatMorphism::from_fn(&smc.algebra, 2, 2, |r, c| Scalar::Bool(r == 0 && c == 1));
    let bad = Corrupted { inner: &f, victim: victim.clone() };
    let report = check_monoidal(&bad, CheckBounds::new(2));
    assert_eq!(report.verdict, Verdict::Fail);
    let composition = report.laws.iter().find(|l| l.law == "composition").unwrap();
    assert!(composition.failures > 0);
    let w = composition.witness.as_ref().unwrap();
    let (p, q) = (
        MatMorphism::from_json(&w["f"], Some(&smc.algebra)).unwrap(),
        MatMorphism::from_json(&w["g"], Some(&smc.algebra)).unwrap(),
    );
    let lhs = bad.map_mor(&smc.compose(&q, &p)).unwrap();
    let rhs = smc.compose(&bad.map_mor(&q).unwrap(), &bad.map_mor(&p).unwrap());
    assert_ne!(lhs, rhs);
    assert!([&p, &q, &smc.compose(&q, &p)].contains(&&victim));
}

#[test]
fn mat_to_rel_matches_elementwise_translation() {
    let mat = MatSmc::new(boolean());
    let rel = RelSmc::new(boolean());
    let xi = AtomIso::by_matrices(&mat, &rel, &[2, 3], 1 << 12).unwrap();
    let f = lift_functor(&mat, &rel, xi.forward, LINEAR).unwrap();
    for m in all_up_to(&mat.algebra, 4) {
        let r = f.map_mor(&m).unwrap();
        assert_eq!((r.dom().len(), r.cod().len()), (m.dom().dim(), m.cod().dim()));
        for x in 0..m.dom().dim() {
            for y in 0..m.cod().dim() {
                assert_eq!(&r.weight(x, y), m.entry(y, x));
            }
        }
    }
}

#[test]
fn linear_extension_rejects_missing_tag_and_algebra_mismatch() {
    let smc = MatSmc::new(boolean());
    let untagged = FunctorSpec::from_rule(
        &smc,
        &smc,
        vec![2],
        dim,
        |f| Ok(f.clone()),
        FunctorSpec::<MatSmc, MatSmc>::standard_generators(&smc, &[2]),
        Vec::<String>::new(),
    )
    .unwrap();
    assert!(matches!(lift_functor(&smc, &smc, untagged, LINEAR), Err(LiftError::Capability(_))));

    let z4 = MatSmc::new(ScalarAlgebra::integers_mod(4).unwrap());
    let err = FunctorSpec::<MatSmc, MatSmc>::from_rule(
        &smc,
        &z4,
        vec![2],
        dim,
        |f| Ok(MatMorphism::zero(&z4.algebra, f.dom().dim(), f.cod().dim())),
        FunctorSpec::<MatSmc, MatSmc>::standard_generators(&smc, &[2]),
        [CAP_LINEAR.to_string()],
    );
    assert!(matches!(err, Err(LiftError::Capability(_))));
}

#[test]
fn spec_rejects_non_functorial_tables() {
    let smc = MatSmc::new(boolean());
    let gens = FunctorSpec::<MatSmc, MatSmc>::standard_generators(&smc, &[2]);
    let id2 = smc.identity(&dim(2));
    let err = FunctorSpec::from_rule(
        &smc,
        &smc,
        vec![2],
        dim,
        |f| Ok(if *f == id2 { MatMorphism::zero(&smc.algebra, 2, 2) } else { f.clone() }),
        gens,
        [CAP_LINEAR.to_string()],
    );
    assert!(matches!(err, Err(LiftError::Spec(_))));
    let not_prime = FunctorSpec::<MatSmc, MatSmc>::from_rule(&smc, &smc, vec![4], dim, |f| Ok(f.clone()), Vec::new(), []);
    assert!(matches!(not_prime, Err(LiftError::Spec(_))));
}

#[test]
fn spec_json_round_trip() {
    let smc = MatSmc::new(boolean());
    let spec = conjugation_spec(&smc, &[2]);
    let v = spec.to_json(&smc, &smc);
    let back = FunctorSpec::<MatSmc, MatSmc>::from_json(&smc, &smc, &v).unwrap();
    assert_eq!(back.to_json(&smc, &smc), v);
    assert_eq!(back.morphisms(), spec.morphisms());

    let rel = RelSmc::new(boolean());
    let xi = AtomIso::by_matrices(&smc, &rel, &[2], 64).unwrap();
    let v = xi.forward.to_json(&smc, &rel);
    assert_eq!(FunctorSpec::<MatSmc, RelSmc>::from_json(&smc, &rel, &v).unwrap().to_json(&smc, &rel), v);
}

#[test]
fn uniqueness_of_equal_functors() {
    let smc = MatSmc::new(boolean());
    let f = lift_functor(&smc, &smc, conjugation_spec(&smc, &[2, 3]), LINEAR).unwrap();
    let w = check_uniqueness(&f, &f, CheckBounds::new(4)).unwrap();
    assert!(w.equal_on_span);
    assert_eq!(w.verdict, Verdict::Pass);
}

#[test]
fn two_liftings_of_conjugation_are_equal_up_to_4() {
    let smc = MatSmc::new(boolean());
    let spec = conjugation_spec(&smc, &[2, 3]);
    let f = lift_functor(&smc, &smc, spec.clone(), LINEAR).unwrap();
    let g = lift_functor(&smc, &smc, spec, Strategy::LinearExtension(Accumulation::Columnwise)).unwrap();
    for m in all_up_to(&smc.algebra, 4) {
        assert_eq!(f.map_mor(&m).unwrap(), g.map_mor(&m).unwrap());
    }
    let w = check_uniqueness(&f, &g, CheckBounds::new(4)).unwrap();
    assert!(w.equal_on_span);
    assert_eq!(w.verdict, Verdict::Pass);
}

#[test]
fn uniqueness_rejects_disagreement_on_atoms() {
    let smc = MatSmc::new(boolean());
    let f = lift_functor(&smc, &smc, identity_spec(&smc, &[2, 3]), LINEAR).unwrap();
    let g = lift_functor(&smc, &smc, conjugation_spec(&smc, &[2, 3]), LINEAR).unwrap();
    assert!(matches!(check_uniqueness(&f, &g, CheckBounds::new(3)), Err(LiftError::Precondition(_))));
}

#[test]
fn product_span_agrees_with_linear_extension() {
    let smc = MatSmc::new(boolean());
    let spec = conjugation_spec(&smc, &[2, 3]);
    let product = Strategy::ProductSpan {
        span: SpanBounds { max_object_size: 3, max_morphisms: 1 << 12 },
        tomography: TomographyBounds::new(3, 2),
    };
    let f = lift_functor(&smc, &smc, spec.clone(), product).unwrap();
    let g = lift_functor(&smc, &smc, spec, LINEAR).unwrap();
    assert_eq!(f.preconditions["full_on_states_and_effects"], true);
    for m in all_up_to(&smc.algebra, 3) {
        assert_eq!(f.map_mor(&m).unwrap(), g.map_mor(&m).unwrap());
    }
    assert!(matches!(f.map_mor(&smc.identity(&dim(4))), Err(LiftError::NotInSpan(_))));
}

#[test]
fn product_span_needs_fullness() {
    let smc = MatSmc::new(boolean());
    let spec = identity_spec(&smc, &[2]);
    let thin = FunctorSpec::new(
        &smc,
        &smc,
        vec![2],
        [(2, dim(2))].into(),
        vec![(smc.identity(&dim(2)), smc.identity(&dim(2)))],
        spec.capabilities().iter().cloned(),
    )
    .unwrap();
    let product = Strategy::ProductSpan {
        span: SpanBounds { max_object_size: 2, max_morphisms: 1 << 10 },
        tomography: TomographyBounds::new(2, 2),
    };
    assert!(matches!(lift_functor(&smc, &smc, thin, product), Err(LiftError::Precondition(_))));
}

#[test]
fn eta_examples() {
    let alg = boolean();
    let r = build_retraction(&alg, 12);
    assert_eq!(r.eta_of(1), MatMorphism::identity(&alg, 1));
    assert_eq!(r.retraction().map_obj(&dim(12)), vec![2, 2, 3]);
    assert_eq!(r.retraction().map_obj(&dim(1)), Vec::<usize>::new());
    let lhs = r.eta_of(60);
    let rhs = matcat::tensor(&r.eta_of(6), &r.eta_of(10)).unwrap();
    assert_eq!((lhs.dom().dim(), lhs.cod().dim()), (60, 60));
    assert!(lhs.is_permutation());
    assert_eq!(lhs, rhs);
}

#[test]
fn eta_coherence_up_to_12() {
    let r = build_retraction(&boolean(), 12);
    let c = r.coherence();
    assert_eq!(c.checked, 144);
    assert_eq!(c.failures, 0);
}

#[test]
fn retraction_round_trip_witness_is_eta() {
    let r = build_retraction(&boolean(), 6);
    let (ret, inj) = (r.retraction(), r.injection());
    let id = IdentityFunctor { smc: &r.mat };
    let round = Composite { first: &ret, second: &inj };
    let w = check_uniqueness(&id, &round, CheckBounds::new(6)).unwrap();
    assert_eq!(w.verdict, Verdict::Pass);
    for c in &w.components {
        let n = c["object"].as_u64().unwrap() as usize;
        assert_eq!(MatMorphism::from_json(&c["component"], Some(&r.mat.algebra)).unwrap(), r.eta_of(n));
    }
    for sq in &w.squares {
        assert_eq!(sq.check.failures, 0);
    }
    assert_eq!(check_monoidal(&ret, CheckBounds::new(6)).verdict, Verdict::Pass);
    assert_eq!(check_monoidal(&inj, CheckBounds::new(6)).verdict, Verdict::Pass);
}

#[test]
fn equivalence_with_identity_atom_map() {
    let smc = MatSmc::new(boolean());
    let xi = AtomIso::by_matrices(&smc, &smc, &[2, 3], 1 << 12).unwrap();
    let e = construct_equivalence(&smc, &smc, xi, CheckBounds::new(4), None).unwrap();
    assert_eq!(e.verdict, Verdict::Pass);
    for m in all_up_to(&smc.algebra, 3) {
        assert_eq!(e.phi.map_mor(&m).unwrap(), m);
        assert_eq!(e.psi.map_mor(&m).unwrap(), m);
    }
}

#[test]
fn mat_rel_equivalence_up_to_6() {
    let mat = MatSmc::new(boolean());
    let rel = RelSmc::new(boolean());
    let xi = AtomIso::by_matrices(&mat, &rel, &[2, 3, 5], 1 << 12).unwrap();
    let e = construct_equivalence(&mat, &rel, xi, CheckBounds::new(6), None).unwrap();
    assert_eq!(e.restriction.failures, 0);
    assert_eq!(e.phi_monoidal.verdict, Verdict::Pass);
    assert_eq!(e.psi_monoidal.verdict, Verdict::Pass);
    for w in [&e.unit, &e.counit] {
        assert_eq!(w.verdict, Verdict::Pass);
        assert!(w.squares.iter().all(|s| s.check.failures == 0 && s.check.checked > 0));
    }
    assert_eq!(e.verdict, Verdict::Pass);
}

#[test]
fn mat_span_equivalence_up_to_6() {
    let alg = boolean();
    let mat = MatSmc::new(alg.clone());
    let span = MatSpan::new(alg);
    let xi = AtomIso::by_matrices(&mat, &span, &[2, 3, 5], 1 << 12).unwrap();
    let e = construct_equivalence(&mat, &span, xi, CheckBounds::new(6), Some(FreeSubcatBounds::new(6, TomographyBounds::new(2, 2)))).unwrap();
    assert!(!e.certificates.is_null());
    assert_eq!(e.verdict, Verdict::Pass);
}

#[test]
fn checks_skip_objects_outside_the_span() {
    let smc = MatSmc::new(boolean());
    let f = lift_functor(&smc, &smc, conjugation_spec(&smc, &[2]), LINEAR).unwrap();
    assert!(f.defines(&dim(4)));
    assert!(!f.defines(&dim(3)));
    let report = check_monoidal(&f, CheckBounds::new(4));
    assert_eq!(report.verdict, Verdict::Pass);
    let identity = report.laws.iter().find(|l| l.law == "identity").unwrap();
    assert_eq!(identity.checked, 3);
    assert!(f.map_mor(&MatMorphism::identity(&smc.algebra, 3)).is_err());
    let w = check_uniqueness(&f, &f, CheckBounds::new(4)).unwrap();
    assert_eq!(w.verdict, Verdict::Pass);
}
