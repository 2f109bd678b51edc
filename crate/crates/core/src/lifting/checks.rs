use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::{LiftError, LinearSmc, MatrixCategory, SmcFunctor};
use crate::matcat::{radix::is_prime, MatMorphism};
use crate::monoidal::{EnumerableSmc, Verdict};

type Obj<C> = <C as EnumerableSmc>::Obj;
type Mor<C> = <C as EnumerableSmc>::Mor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckBounds {
    /// Objects of dimension at most this.
    pub max_dim: usize,
    /// Hom-sets and pair sets up to this size are checked exhaustively.
    pub exhaustive_limit: usize,
    /// Seeded samples per larger set.
    pub samples: usize,
    pub seed: u64,
}

impl CheckBounds {
    pub fn new(max_dim: usize) -> Self {
        Self { max_dim, exhaustive_limit: 1 << 12, samples: 32, seed: 0x10ca1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub checked: u64,
    pub exhaustive: bool,
    pub failures: u64,
    /// The first failing instance.
    pub witness: Option<Value>,
}

impl LawCheck {
    fn new(law: impl Into<String>) -> Self {
        Self { law: law.into(), checked: 0, exhaustive: true, failures: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.failures > 0 {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonoidalReport {
    pub verdict: Verdict,
    pub laws: Vec<LawCheck>,
}

/// Morphisms `x -> y` used by the checkers: all of them when few enough,
/// seeded samples otherwise.
fn hom_set<C: MatrixCategory>(c: &C, x: &Obj<C>, y: &Obj<C>, b: &CheckBounds, rng: &mut ChaCha8Rng) -> (Vec<Mor<C>>, bool) {
    match c.homs(x, y) {
        Ok(all) if all.len() <= b.exhaustive_limit => (all, true),
        Ok(all) => ((0..b.samples).map(|_| all[rng.random_range(0..all.len())].clone()).collect(), false),
        Err(_) => ((0..b.samples).map(|_| c.random_mor(x, y, rng)).collect(), false),
    }
}

/// Pairs from two sets: the product when small, seeded pairs otherwise.
fn pairs<T: Clone>(a: &[T], b: &[T], exact: bool, bounds: &CheckBounds, rng: &mut ChaCha8Rng) -> (Vec<(T, T)>, bool) {
    if a.is_empty() || b.is_empty() {
        return (Vec::new(), exact);
    }
    if exact && a.len() * b.len() <= bounds.exhaustive_limit {
        let all = a.iter().flat_map(|f| b.iter().map(move |g| (f.clone(), g.clone()))).collect();
        return (all, true);
    }
    let picks = (0..bounds.samples)
        .map(|_| (a[rng.random_range(0..a.len())].clone(), b[rng.random_range(0..b.len())].clone()))
        .collect();
    (picks, false)
}

fn eq_or<T: PartialEq>(a: Result<T, LiftError>, b: Result<T, LiftError>) -> Result<bool, String> {
    match (a, b) {
        (Ok(x), Ok(y)) => Ok(x == y),
        (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
    }
}

/// Functoriality, preservation of units, tensor and symmetry up to the
/// comparison maps, and associativity of the comparison maps.
pub fn check_monoidal<F>(f: &F, bounds: CheckBounds) -> MonoidalReport
where
    F: SmcFunctor,
    F::Source: MatrixCategory,
{
    let (s, t) = (f.source(), f.target());
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let objects: Vec<_> = s.check_objects(bounds.max_dim).into_iter().filter(|x| f.defines(x)).collect();
    let fits = |x: &Obj<F::Source>| s.dim(x) <= bounds.max_dim;
    let show = |m: &Mor<F::Source>| s.mor_to_json(m);
    let mut laws = Vec::new();

    let mut unit = LawCheck::new("unit");
    unit.record(f.map_obj(&s.unit()) == t.unit(), || json!({"image": t.show_obj(&f.map_obj(&s.unit()))}));
    laws.push(unit);

    let mut identity = LawCheck::new("identity");
    for x in &objects {
        let ok = f.map_mor(&s.identity(x)).is_ok_and(|m| m == t.identity(&f.map_obj(x)));
        identity.record(ok, || json!({"object": s.obj_to_json(x)}));
    }
    laws.push(identity);

    let mut homs: HashMap<(usize, usize), (Vec<Mor<F::Source>>, bool)> = HashMap::new();
    for (i, x) in objects.iter().enumerate() {
        for (j, y) in objects.iter().enumerate() {
            homs.insert((i, j), hom_set(s, x, y, &bounds, &mut rng));
        }
    }

    let mut composition = LawCheck::new("composition");
    let n = objects.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, ea) = &homs[&(i, j)];
                let (b, eb) = &homs[&(j, k)];
                let (ps, exact) = pairs(a, b, *ea && *eb, &bounds, &mut rng);
                composition.exhaustive &= exact;
                for (p, q) in ps {
                    let lhs = f.map_mor(&s.compose(&q, &p));
                    let rhs = f.map_mor(&q).and_then(|fq| f.map_mor(&p).map(|fp| t.compose(&fq, &fp)));
                    let ok = eq_or(lhs, rhs);
                    composition.record(ok == Ok(true), || json!({"f": show(&p), "g": show(&q), "error": ok.err()}));
                }
            }
        }
    }
    laws.push(composition);

    let mut tensor = LawCheck::new("tensor");
    for x in 0..n {
        for x2 in 0..n {
            for y in 0..n {
                for y2 in 0..n {
                    let (ox, ox2, oy, oy2) = (&objects[x], &objects[x2], &objects[y], &objects[y2]);
                    if !fits(&s.tensor_obj(ox, oy)) || !fits(&s.tensor_obj(ox2, oy2)) {
                        continue;
                    }
                    let (a, ea) = &homs[&(x, x2)];
                    let (b, eb) = &homs[&(y, y2)];
                    let (ps, exact) = pairs(a, b, *ea && *eb, &bounds, &mut rng);
                    tensor.exhaustive &= exact;
                    for (p, q) in ps {
                        let lhs = f.map_mor(&s.tensor_mor(&p, &q)).and_then(|m| Ok(t.compose(&m, &f.comparison(ox, oy)?)));
                        let rhs = f.map_mor(&p).and_then(|fp| {
                            let fq = f.map_mor(&q)?;
                            Ok(t.compose(&f.comparison(ox2, oy2)?, &t.tensor_mor(&fp, &fq)))
                        });
                        let ok = eq_or(lhs, rhs);
                        tensor.record(ok == Ok(true), || json!({"f": show(&p), "g": show(&q), "error": ok.err()}));
                    }
                }
            }
        }
    }
    laws.push(tensor);

    let mut symmetry = LawCheck::new("symmetry");
    let mut assoc = LawCheck::new("comparison associativity");
    let mut unitality = LawCheck::new("comparison unitality");
    for x in &objects {
        let ok = eq_or(f.comparison(&s.unit(), x), Ok(t.identity(&f.map_obj(x))))
            .and(eq_or(f.comparison(x, &s.unit()), Ok(t.identity(&f.map_obj(x)))));
        unitality.record(ok == Ok(true), || json!({"object": s.obj_to_json(x)}));
        for y in &objects {
            if !fits(&s.tensor_obj(x, y)) {
                continue;
            }
            let (fx, fy) = (f.map_obj(x), f.map_obj(y));
            let lhs = f.map_mor(&s.symmetry(x, y)).and_then(|m| Ok(t.compose(&m, &f.comparison(x, y)?)));
            let rhs = f.comparison(y, x).map(|phi| t.compose(&phi, &t.symmetry(&fx, &fy)));
            let ok = eq_or(lhs, rhs);
            symmetry.record(ok == Ok(true), || json!({"x": s.obj_to_json(x), "y": s.obj_to_json(y), "error": ok.err()}));
            for z in &objects {
                let xyz = s.tensor_obj(&s.tensor_obj(x, y), z);
                if !fits(&xyz) {
                    continue;
                }
                let fz = f.map_obj(z);
                let lhs = (|| {
                    let left = t.tensor_mor(&f.comparison(x, y)?, &t.identity(&fz));
                    Ok(t.compose(&f.comparison(&s.tensor_obj(x, y), z)?, &left))
                })();
                let rhs = (|| {
                    let right = t.tensor_mor(&t.identity(&fx), &f.comparison(y, z)?);
                    Ok(t.compose(&f.comparison(x, &s.tensor_obj(y, z))?, &right))
                })();
                let ok = eq_or(lhs, rhs);
                assoc.record(ok == Ok(true), || {
                    json!({"x": s.obj_to_json(x), "y": s.obj_to_json(y), "z": s.obj_to_json(z), "error": ok.err()})
                });
            }
        }
    }
    laws.extend([symmetry, assoc, unitality]);
    let verdict = laws.iter().fold(Verdict::Pass, |v, l| v.and(l.verdict()));
    MonoidalReport { verdict, laws }
}

#[derive(Clone, Debug, Serialize)]
pub struct NaturalIsoWitness {
    pub verdict: Verdict,
    /// `{"object", "component"}` for every checked object.
    pub components: Vec<Value>,
    /// The two functors agree on every checked morphism, so every
    /// component is an identity.
    pub equal_on_span: bool,
    pub inverses: LawCheck,
    /// One entry per pair of objects.
    pub squares: Vec<Square>,
    pub monoidal: LawCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct Square {
    pub dom: Value,
    pub cod: Value,
    #[serde(flatten)]
    pub check: LawCheck,
}

type Component<D> = (Mor<D>, Mor<D>);

/// A permutation isomorphism `F x -> G x` compatible with the images of
/// the basis states of `x`: the index bijection first, then every other
/// permutation when the dimension is at most 6.
pub fn find_component<F, G>(f: &F, g: &G, x: &Obj<F::Source>) -> Option<Component<F::Target>>
where
    F: SmcFunctor,
    F::Source: MatrixCategory,
    F::Target: MatrixCategory,
    G: SmcFunctor<Source = F::Source, Target = F::Target>,
{
    let (s, t) = (f.source(), f.target());
    let (fx, gx) = (f.map_obj(x), g.map_obj(x));
    let n = t.dim(&fx);
    if t.dim(&gx) != n || f.map_obj(&s.unit()) != g.map_obj(&s.unit()) {
        return None;
    }
    let kets: Vec<(Mor<F::Target>, Mor<F::Target>)> = (0..s.dim(x))
        .filter_map(|k| {
            let ket = s.from_matrix(&s.unit(), x, &MatMorphism::ket(s.algebra(), s.dim(x), k)).ok()?;
            Some((f.map_mor(&ket).ok()?, g.map_mor(&ket).ok()?))
        })
        .collect();
    let try_perm = |image: &[usize]| -> Option<Component<F::Target>> {
        let m = MatMorphism::permutation(t.algebra(), image);
        let alpha = t.from_matrix(&fx, &gx, &m).ok()?;
        let inverse = t.from_matrix(&gx, &fx, &m.transpose()).ok()?;
        kets.iter().all(|(fk, gk)| t.compose(&alpha, fk) == *gk).then_some((alpha, inverse))
    };
    let mut perm: Vec<usize> = (0..n).collect();
    if let Some(c) = try_perm(&perm) {
        return Some(c);
    }
    if n > 6 {
        return None;
    }
    while next_permutation(&mut perm) {
        if let Some(c) = try_perm(&perm) {
            return Some(c);
        }
    }
    None
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Checks that `component(x): F x -> G x` is a monoidal natural
/// isomorphism on the objects and morphisms at the bound.
pub fn check_natural_iso<F, G>(
    f: &F,
    g: &G,
    component: &dyn Fn(&Obj<F::Source>) -> Option<Component<F::Target>>,
    bounds: CheckBounds,
) -> NaturalIsoWitness
where
    F: SmcFunctor,
    F::Source: MatrixCategory,
    F::Target: MatrixCategory,
    G: SmcFunctor<Source = F::Source, Target = F::Target>,
{
    let (s, t) = (f.source(), f.target());
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let objects: Vec<_> = s.check_objects(bounds.max_dim).into_iter().filter(|x| f.defines(x) && g.defines(x)).collect();
    let mut table: HashMap<Obj<F::Source>, Option<Component<F::Target>>> = HashMap::new();
    let mut get = |x: &Obj<F::Source>| table.entry(x.clone()).or_insert_with(|| component(x)).clone();

    let mut inverses = LawCheck::new("component inverses");
    let mut components = Vec::new();
    for x in &objects {
        match get(x) {
            Some((a, b)) => {
                let ok = t.compose(&a, &b) == t.identity(&g.map_obj(x)) && t.compose(&b, &a) == t.identity(&f.map_obj(x));
                inverses.record(ok, || json!({"object": s.obj_to_json(x)}));
                components.push(json!({"object": s.obj_to_json(x), "component": t.mor_to_json(&a)}));
            }
            None => inverses.record(false, || json!({"object": s.obj_to_json(x), "error": "no component"})),
        }
    }

    let mut squares = Vec::new();
    for x in &objects {
        for y in &objects {
            let mut check = LawCheck::new("naturality");
            let (ms, exact) = hom_set(s, x, y, &bounds, &mut rng);
            check.exhaustive = exact;
            match (get(x), get(y)) {
                (Some((ax, _)), Some((ay, _))) => {
                    for m in ms {
                        let lhs = g.map_mor(&m).map(|gm| t.compose(&gm, &ax));
                        let rhs = f.map_mor(&m).map(|fm| t.compose(&ay, &fm));
                        let ok = eq_or(lhs, rhs);
                        check.record(ok == Ok(true), || json!({"morphism": s.mor_to_json(&m), "error": ok.err()}));
                    }
                }
                _ => check.record(false, || json!({"error": "missing component"})),
            }
            squares.push(Square { dom: s.obj_to_json(x), cod: s.obj_to_json(y), check });
        }
    }

    let mut monoidal = LawCheck::new("monoidal components");
    let unit_ok = get(&s.unit()).is_some_and(|(a, _)| a == t.identity(&t.unit()));
    monoidal.record(unit_ok, || json!({"object": "unit"}));
    for x in &objects {
        for y in &objects {
            let xy = s.tensor_obj(x, y);
            if s.dim(&xy) > bounds.max_dim {
                continue;
            }
            let ok = match (get(x), get(y), get(&xy)) {
                (Some((ax, _)), Some((ay, _)), Some((axy, _))) => eq_or(
                    f.comparison(x, y).map(|phi| t.compose(&axy, &phi)),
                    g.comparison(x, y).map(|psi| t.compose(&psi, &t.tensor_mor(&ax, &ay))),
                ),
                _ => Err("missing component".to_string()),
            };
            monoidal.record(ok == Ok(true), || json!({"x": s.obj_to_json(x), "y": s.obj_to_json(y), "error": ok.err()}));
        }
    }
    let verdict = squares
        .iter()
        .map(|sq| sq.check.verdict())
        .fold(inverses.verdict().and(monoidal.verdict()), Verdict::and);
    NaturalIsoWitness { verdict, components, equal_on_span: false, inverses, squares, monoidal }
}

/// Two functors agreeing on the atoms are equal on the span, or related
/// by a searched monoidal natural isomorphism.
pub fn check_uniqueness<F, G>(f: &F, g: &G, bounds: CheckBounds) -> Result<NaturalIsoWitness, LiftError>
where
    F: SmcFunctor,
    F::Source: MatrixCategory,
    F::Target: MatrixCategory,
    G: SmcFunctor<Source = F::Source, Target = F::Target>,
{
    let s = f.source();
    for p in (2..=bounds.max_dim).filter(|&p| is_prime(p)) {
        let a = s.atom(p);
        if !f.defines(&a) || !g.defines(&a) {
            continue;
        }
        let mut gens = vec![s.identity(&a)];
        gens.extend((0..p).flat_map(|k| [s.ket(p, k), s.bra(p, k)]));
        let agree = f.map_obj(&a) == g.map_obj(&a) && gens.iter().all(|m| eq_or(f.map_mor(m), g.map_mor(m)) == Ok(true));
        if !agree {
            return Err(LiftError::Precondition(format!("the functors disagree on the atom A({p})")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let objects: Vec<_> = s.check_objects(bounds.max_dim).into_iter().filter(|x| f.defines(x) && g.defines(x)).collect();
    let mut equal = f.map_obj(&s.unit()) == g.map_obj(&s.unit());
    'outer: for x in &objects {
        equal &= f.map_obj(x) == g.map_obj(x);
        for y in &objects {
            if !equal {
                break 'outer;
            }
            let (ms, _) = hom_set(s, x, y, &bounds, &mut rng);
            equal = ms.iter().all(|m| eq_or(f.map_mor(m), g.map_mor(m)) == Ok(true));
        }
    }
    if equal {
        let t = f.target();
        let identity = |x: &Obj<F::Source>| {
            let fx = f.map_obj(x);
            Some((t.identity(&fx), t.identity(&fx)))
        };
        let mut w = check_natural_iso(f, g, &identity, bounds);
        w.equal_on_span = true;
        return Ok(w);
    }
    Ok(check_natural_iso(f, g, &|x| find_component(f, g, x), bounds))
}
