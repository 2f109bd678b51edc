use std::collections::{HashMap, VecDeque};

use serde_json::{json, Value};

use super::{FunctorSpec, LiftError, LinearSmc, MatrixCategory, SmcFunctor, CAP_LINEAR};
use crate::algebra::Scalar;
use crate::matcat::radix::digits;
use crate::matcat::MatMorphism;
use crate::monoidal::{
    check_product_tomography, generate_minimal_span, SpanBounds, SpanSmc, TomographyBounds, TomographyMode,
    Verdict,
};

/// Order of summation in the linear-extension formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Accumulation {
    /// `sum_{h,k} M[h][k] (kets h) . (bras k)`.
    Entrywise,
    /// `sum_k (sum_h M[h][k] kets h) . (bras k)`.
    Columnwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LinearExtension(Accumulation),
    /// Images of tensor products and composites of generators, on the
    /// span generated by the functor spec.
    ProductSpan { span: SpanBounds, tomography: TomographyBounds },
}

pub struct LiftedFunctor<'a, C: MatrixCategory, D: LinearSmc> {
    source: &'a C,
    target: &'a D,
    spec: FunctorSpec<C, D>,
    strategy: Strategy,
    kets: HashMap<usize, Vec<D::Mor>>,
    bras: HashMap<usize, Vec<D::Mor>>,
    table: HashMap<C::Mor, D::Mor>,
    /// Certificates gathered while checking preconditions.
    pub preconditions: Value,
}

pub fn lift_functor<'a, C: MatrixCategory, D: LinearSmc>(
    source: &'a C,
    target: &'a D,
    spec: FunctorSpec<C, D>,
    strategy: Strategy,
) -> Result<LiftedFunctor<'a, C, D>, LiftError> {
    let mut lifted = LiftedFunctor {
        source,
        target,
        spec,
        strategy,
        kets: HashMap::new(),
        bras: HashMap::new(),
        table: HashMap::new(),
        preconditions: Value::Null,
    };
    match strategy {
        Strategy::LinearExtension(_) => lifted.prepare_linear()?,
        Strategy::ProductSpan { span, tomography } => lifted.prepare_product(span, tomography)?,
    }
    Ok(lifted)
}

impl<'a, C: MatrixCategory, D: LinearSmc> LiftedFunctor<'a, C, D> {
    pub fn spec(&self) -> &FunctorSpec<C, D> {
        &self.spec
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    fn prepare_linear(&mut self) -> Result<(), LiftError> {
        if !self.spec.has_capability(CAP_LINEAR) {
            return Err(LiftError::Capability(format!("linear extension needs the {CAP_LINEAR} tag")));
        }
        if self.source.algebra() != self.target.algebra() {
            return Err(LiftError::Capability(format!(
                "source over {} and target over {}",
                self.source.algebra(),
                self.target.algebra()
            )));
        }
        for &p in self.spec.atoms() {
            let look = |f: C::Mor| {
                self.spec
                    .image(&f)
                    .cloned()
                    .ok_or_else(|| LiftError::Precondition(format!("spec has no image for {}", self.source.show_mor(&f))))
            };
            let kets = (0..p).map(|k| look(self.source.ket(p, k))).collect::<Result<Vec<_>, _>>()?;
            let bras = (0..p).map(|k| look(self.source.bra(p, k))).collect::<Result<Vec<_>, _>>()?;
            self.kets.insert(p, kets);
            self.bras.insert(p, bras);
        }
        self.preconditions = json!({"capability": CAP_LINEAR, "algebra": self.source.algebra().to_string()});
        Ok(())
    }

    /// Tomography of the generated span, fullness on states and effects,
    /// then the image table by closure, rejecting conflicting derivations.
    fn prepare_product(&mut self, bounds: SpanBounds, tomography: TomographyBounds) -> Result<(), LiftError> {
        let (source, target) = (self.source, self.target);
        let atoms: Vec<C::Obj> = std::iter::once(source.unit()).chain(self.spec.atoms().iter().map(|&p| source.atom(p))).collect();
        let generators: Vec<C::Mor> = self.spec.morphisms().iter().map(|(f, _)| f.clone()).collect();
        let span = generate_minimal_span(source, &atoms, &generators, bounds);
        if span.truncated {
            return Err(LiftError::Precondition(format!("span closure exceeded {} morphisms", bounds.max_morphisms)));
        }
        let sub = SpanSmc::new(source, &span);
        let report = check_product_tomography(&sub, tomography, TomographyMode::Auto)?;
        if report.verdict != Verdict::Pass {
            return Err(LiftError::Precondition(format!("generated span is not product tomographic: {:?}", report.verdict)));
        }
        let unit = target.unit();
        for &p in self.spec.atoms() {
            let image = self.spec.object_image(p).expect("validated").clone();
            let mut covered: Vec<&D::Mor> = self.spec.morphisms().iter().map(|(_, g)| g).collect();
            covered.retain(|g| (target.dom(g) == unit && target.cod(g) == image) || (target.dom(g) == image && target.cod(g) == unit));
            for h in target.homs(&unit, &image)?.iter().chain(target.homs(&image, &unit)?.iter()) {
                if !covered.contains(&h) {
                    return Err(LiftError::Precondition(format!("spec is not full on states and effects: {} has no preimage", target.show_mor(h))));
                }
            }
        }

        let fits = |o: &C::Obj| source.size(o) <= bounds.max_object_size;
        let mut seeds: Vec<(C::Mor, D::Mor)> = Vec::new();
        for o in &span.objects {
            seeds.push((source.identity(o), target.identity(&self.map_obj(o))));
            for o2 in &span.objects {
                if fits(&source.tensor_obj(o, o2)) {
                    seeds.push((source.symmetry(o, o2), target.symmetry(&self.map_obj(o), &self.map_obj(o2))));
                }
            }
        }
        seeds.extend(self.spec.morphisms().iter().cloned());

        let map_obj = |o: &C::Obj| self.map_obj(o);
        let mut cl = ImageClosure::<C, D> { source, target, map_obj: &map_obj, all: Vec::new(), index: HashMap::new(), by_dom: HashMap::new(), by_cod: HashMap::new() };
        let mut queue = VecDeque::new();
        for (f, g) in seeds {
            if let Some(i) = cl.add(f, g)? {
                queue.push_back(i);
            }
        }
        let mut derivations = 0u64;
        while let Some(i) = queue.pop_front() {
            let (f, ff) = cl.all[i].clone();
            let (fd, fc) = (source.dom(&f), source.cod(&f));
            let mut produced = Vec::new();
            for &j in cl.by_dom.get(&fc).into_iter().flatten() {
                produced.push((source.compose(&cl.all[j].0, &f), target.compose(&cl.all[j].1, &ff)));
            }
            for &j in cl.by_cod.get(&fd).into_iter().flatten() {
                produced.push((source.compose(&f, &cl.all[j].0), target.compose(&ff, &cl.all[j].1)));
            }
            for (g, gg) in cl.all.iter() {
                let (gd, gc) = (source.dom(g), source.cod(g));
                if fits(&source.tensor_obj(&fd, &gd)) && fits(&source.tensor_obj(&fc, &gc)) {
                    produced.push((source.tensor_mor(&f, g), target.tensor_mor(&ff, gg)));
                    produced.push((source.tensor_mor(g, &f), target.tensor_mor(gg, &ff)));
                }
            }
            derivations += produced.len() as u64;
            for (h, hh) in produced {
                if let Some(k) = cl.add(h, hh)? {
                    queue.push_back(k);
                    if cl.all.len() > bounds.max_morphisms {
                        return Err(LiftError::Precondition(format!("image closure exceeded {} morphisms", bounds.max_morphisms)));
                    }
                }
            }
        }
        let all = cl.all;
        self.preconditions = json!({
            "tomography": report.to_json(&sub),
            "full_on_states_and_effects": true,
            "span_morphisms": all.len(),
            "derivations_checked": derivations,
        });
        self.table = all.into_iter().collect();
        Ok(())
    }

    fn ket_tensor(&self, w: &[usize], index: usize) -> D::Mor {
        self.basis_tensor(w, index, &self.kets)
    }

    fn bra_tensor(&self, w: &[usize], index: usize) -> D::Mor {
        self.basis_tensor(w, index, &self.bras)
    }

    fn basis_tensor(&self, w: &[usize], index: usize, table: &HashMap<usize, Vec<D::Mor>>) -> D::Mor {
        let d = digits(index, w);
        let mut acc: Option<D::Mor> = None;
        for (p, k) in w.iter().zip(&d) {
            let m = &table[p][*k];
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => self.target.tensor_mor(&a, m),
            });
        }
        acc.unwrap_or_else(|| self.target.identity(&self.target.unit()))
    }

    /// The linear-extension formula on a matrix typed by prime words.
    pub fn eval_word_matrix(&self, dom: &[usize], cod: &[usize], m: &MatMorphism) -> Result<D::Mor, LiftError> {
        let Strategy::LinearExtension(acc) = self.strategy else {
            return Err(LiftError::Precondition("word evaluation needs the linear-extension strategy".into()));
        };
        if let Some(p) = dom.iter().chain(cod).find(|p| !self.kets.contains_key(p)) {
            return Err(LiftError::Spec(format!("A({p}) is not an atom of the functor spec")));
        }
        let (n, k) = (dom.iter().product::<usize>(), cod.iter().product::<usize>());
        if m.dom().dim() != n || m.cod().dim() != k {
            return Err(LiftError::Morphism(format!("{}x{} matrix typed {dom:?} -> {cod:?}", m.cod().dim(), m.dom().dim())));
        }
        let (t, alg) = (self.target, self.source.algebra());
        let (fd, fc) = (self.spec.word_image(t, dom)?, self.spec.word_image(t, cod)?);
        let mut out = t.zero(&fd, &fc);
        let mut kets: HashMap<usize, D::Mor> = HashMap::new();
        let mut ket = |h: usize| kets.entry(h).or_insert_with(|| self.ket_tensor(cod, h)).clone();
        let nonzero = |r: usize, c: usize| -> Option<&Scalar> { Some(m.entry(r, c)).filter(|s| !alg.is_zero(s)) };
        match acc {
            Accumulation::Entrywise => {
                for c in 0..n {
                    let bra = self.bra_tensor(dom, c);
                    for r in 0..k {
                        if let Some(s) = nonzero(r, c) {
                            out = t.add(&out, &t.scale(s, &t.compose(&ket(r), &bra)));
                        }
                    }
                }
            }
            Accumulation::Columnwise => {
                let unit = t.unit();
                for c in 0..n {
                    let mut state = t.zero(&unit, &fc);
                    for r in 0..k {
                        if let Some(s) = nonzero(r, c) {
                            state = t.add(&state, &t.scale(s, &ket(r)));
                        }
                    }
                    out = t.add(&out, &t.compose(&state, &self.bra_tensor(dom, c)));
                }
            }
        }
        Ok(out)
    }
}

impl<C: MatrixCategory, D: LinearSmc> SmcFunctor for LiftedFunctor<'_, C, D> {
    type Source = C;
    type Target = D;

    fn source(&self) -> &C {
        self.source
    }

    fn target(&self) -> &D {
        self.target
    }

    fn defines(&self, x: &C::Obj) -> bool {
        self.spec.word_image(self.target, &self.source.word(x)).is_ok()
    }

    fn map_obj(&self, x: &C::Obj) -> D::Obj {
        self.spec.word_image(self.target, &self.source.word(x)).expect("objects of the span are words in the atoms")
    }

    fn map_mor(&self, f: &C::Mor) -> Result<D::Mor, LiftError> {
        match self.strategy {
            Strategy::LinearExtension(_) => {
                let s = self.source;
                self.eval_word_matrix(&s.word(&s.dom(f)), &s.word(&s.cod(f)), &s.matrix(f))
            }
            Strategy::ProductSpan { .. } => {
                self.table.get(f).cloned().ok_or_else(|| LiftError::NotInSpan(self.source.show_mor(f)))
            }
        }
    }

    /// The image of the identity retyped from `R(x) (x) R(y)` to `R(x (x) y)`.
    fn comparison(&self, x: &C::Obj, y: &C::Obj) -> Result<D::Mor, LiftError> {
        let s = self.source;
        let xy = s.tensor_obj(x, y);
        match self.strategy {
            Strategy::LinearExtension(_) => {
                let concat: Vec<usize> = s.word(x).into_iter().chain(s.word(y)).collect();
                let id = MatMorphism::identity(s.algebra(), s.dim(&xy));
                self.eval_word_matrix(&concat, &s.word(&xy), &id)
            }
            Strategy::ProductSpan { .. } => {
                let t = self.target;
                let both = t.tensor_obj(&self.map_obj(x), &self.map_obj(y));
                if both != self.map_obj(&xy) {
                    return Err(LiftError::NotWellDefined(format!("F({}) is not F x (x) F y", s.show_obj(&xy))));
                }
                Ok(t.identity(&both))
            }
        }
    }
}

/// Span morphisms with their images, indexed for composition.
struct ImageClosure<'a, C: MatrixCategory, D: LinearSmc> {
    source: &'a C,
    target: &'a D,
    map_obj: &'a dyn Fn(&C::Obj) -> D::Obj,
    all: Vec<(C::Mor, D::Mor)>,
    index: HashMap<C::Mor, usize>,
    by_dom: HashMap<C::Obj, Vec<usize>>,
    by_cod: HashMap<C::Obj, Vec<usize>>,
}

impl<C: MatrixCategory, D: LinearSmc> ImageClosure<'_, C, D> {
    fn add(&mut self, f: C::Mor, g: D::Mor) -> Result<Option<usize>, LiftError> {
        let (s, t) = (self.source, self.target);
        if t.dom(&g) != (self.map_obj)(&s.dom(&f)) || t.cod(&g) != (self.map_obj)(&s.cod(&f)) {
            return Err(LiftError::NotWellDefined(format!("image of {} has the wrong type", s.show_mor(&f))));
        }
        if let Some(&i) = self.index.get(&f) {
            if self.all[i].1 != g {
                return Err(LiftError::NotWellDefined(format!("{} has two different images", s.show_mor(&f))));
            }
            return Ok(None);
        }
        let i = self.all.len();
        self.index.insert(f.clone(), i);
        self.by_dom.entry(s.dom(&f)).or_default().push(i);
        self.by_cod.entry(s.cod(&f)).or_default().push(i);
        self.all.push((f, g));
        Ok(Some(i))
    }
}
