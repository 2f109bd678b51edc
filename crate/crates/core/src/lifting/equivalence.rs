use serde_json::{json, Value};

use super::checks::{check_monoidal, check_natural_iso, find_component, CheckBounds, LawCheck, MonoidalReport, NaturalIsoWitness};
use super::{lift_functor, Accumulation, Composite, FunctorSpec, IdentityFunctor, LiftError, LiftedFunctor, MatrixCategory, SmcFunctor, Strategy, CAP_LINEAR};
use crate::monoidal::{check_free_subcategory, FreeSubcatBounds, Verdict};

/// An isomorphism between the atom subcategories of two matrix
/// categories, as a pair of mutually inverse specs.
pub struct AtomIso<C: MatrixCategory, D: MatrixCategory> {
    pub forward: FunctorSpec<C, D>,
    pub backward: FunctorSpec<D, C>,
}

impl<C: MatrixCategory, D: MatrixCategory> AtomIso<C, D> {
    /// `A(p) <-> A(p)`, each morphism sent to the morphism with the same
    /// matrix, on the generators of [`FunctorSpec::atom_generators`].
    pub fn by_matrices(c: &C, d: &D, atoms: &[usize], hom_limit: u64) -> Result<Self, LiftError> {
        let forward = FunctorSpec::from_rule(
            c,
            d,
            atoms.to_vec(),
            |p| d.atom(p),
            |f| d.from_matrix(&d.object_of_word(&c.word(&c.dom(f))), &d.object_of_word(&c.word(&c.cod(f))), &c.matrix(f)),
            FunctorSpec::<C, D>::atom_generators(c, atoms, hom_limit),
            [CAP_LINEAR.to_string()],
        )?;
        let backward = FunctorSpec::from_rule(
            d,
            c,
            atoms.to_vec(),
            |p| c.atom(p),
            |g| c.from_matrix(&c.object_of_word(&d.word(&d.dom(g))), &c.object_of_word(&d.word(&d.cod(g))), &d.matrix(g)),
            FunctorSpec::<D, C>::atom_generators(d, atoms, hom_limit),
            [CAP_LINEAR.to_string()],
        )?;
        let iso = Self { forward, backward };
        iso.check_inverse()?;
        Ok(iso)
    }

    /// Each table inverts the other wherever both are defined.
    pub fn check_inverse(&self) -> Result<(), LiftError> {
        let bad = self.forward.morphisms().iter().any(|(f, g)| self.backward.image(g).is_some_and(|h| h != f))
            || self.backward.morphisms().iter().any(|(g, f)| self.forward.image(f).is_some_and(|h| h != g));
        if bad || self.forward.atoms() != self.backward.atoms() {
            return Err(LiftError::Precondition("the atom maps are not mutually inverse".into()));
        }
        Ok(())
    }
}

pub struct Equivalence<'a, C: MatrixCategory, D: MatrixCategory> {
    pub phi: LiftedFunctor<'a, C, D>,
    pub psi: LiftedFunctor<'a, D, C>,
    /// `phi` on the atom generators equals the atom iso.
    pub restriction: LawCheck,
    pub phi_monoidal: MonoidalReport,
    pub psi_monoidal: MonoidalReport,
    /// `id_C ~ psi . phi`.
    pub unit: NaturalIsoWitness,
    /// `id_D ~ phi . psi`.
    pub counit: NaturalIsoWitness,
    /// Free-subcategory reports for the atoms on both sides, when requested.
    pub certificates: Value,
    pub verdict: Verdict,
}

impl<C: MatrixCategory, D: MatrixCategory> Equivalence<'_, C, D> {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict,
            "restriction": self.restriction,
            "phi_monoidal": self.phi_monoidal,
            "psi_monoidal": self.psi_monoidal,
            "unit": self.unit,
            "counit": self.counit,
            "certificates": self.certificates,
        })
    }
}

/// Lifts the atom iso in both directions and checks that the composites
/// are naturally isomorphic to the identities.
pub fn construct_equivalence<'a, C: MatrixCategory, D: MatrixCategory>(
    c: &'a C,
    d: &'a D,
    xi: AtomIso<C, D>,
    bounds: CheckBounds,
    certify: Option<FreeSubcatBounds>,
) -> Result<Equivalence<'a, C, D>, LiftError> {
    let mut certificates = Value::Null;
    if let Some(fb) = certify {
        let atoms_c: Vec<C::Obj> = std::iter::once(c.unit()).chain(xi.forward.atoms().iter().map(|&p| c.atom(p))).collect();
        let atoms_d: Vec<D::Obj> = std::iter::once(d.unit()).chain(xi.forward.atoms().iter().map(|&p| d.atom(p))).collect();
        let rc = check_free_subcategory(c, &atoms_c, None, fb);
        let rd = check_free_subcategory(d, &atoms_d, None, fb);
        if rc.verdict == Verdict::Fail || rd.verdict == Verdict::Fail {
            return Err(LiftError::Precondition("the atoms are not a free subcategory on both sides".into()));
        }
        certificates = json!({"source": rc, "target": rd});
    }
    let strategy = Strategy::LinearExtension(Accumulation::Entrywise);
    let phi = lift_functor(c, d, xi.forward.clone(), strategy)?;
    let psi = lift_functor(d, c, xi.backward.clone(), strategy)?;

    let mut restriction = LawCheck { law: "restriction to atoms".into(), checked: 0, exhaustive: true, failures: 0, witness: None };
    for &p in xi.forward.atoms() {
        restriction.checked += 1;
        if Some(&phi.map_obj(&c.atom(p))) != xi.forward.object_image(p) {
            restriction.failures += 1;
            restriction.witness.get_or_insert_with(|| json!({"atom": p}));
        }
    }
    for (f, g) in xi.forward.morphisms() {
        restriction.checked += 1;
        if phi.map_mor(f).as_ref() != Ok(g) {
            restriction.failures += 1;
            restriction.witness.get_or_insert_with(|| json!({"morphism": c.mor_to_json(f)}));
        }
    }

    let phi_monoidal = check_monoidal(&phi, bounds);
    let psi_monoidal = check_monoidal(&psi, bounds);
    let (id_c, id_d) = (IdentityFunctor { smc: c }, IdentityFunctor { smc: d });
    let psi_phi = Composite { first: &phi, second: &psi };
    let phi_psi = Composite { first: &psi, second: &phi };
    let unit = check_natural_iso(&id_c, &psi_phi, &|x| find_component(&id_c, &psi_phi, x), bounds);
    let counit = check_natural_iso(&id_d, &phi_psi, &|y| find_component(&id_d, &phi_psi, y), bounds);
    let verdict = [restriction.verdict(), phi_monoidal.verdict, psi_monoidal.verdict, unit.verdict, counit.verdict]
        .into_iter()
        .fold(Verdict::Pass, Verdict::and);
    Ok(Equivalence { phi, psi, restriction, phi_monoidal, psi_monoidal, unit, counit, certificates, verdict })
}
