use std::collections::{HashMap, HashSet};

use super::{EnumerableSmc, SmcError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanBounds {
    pub max_object_size: u64,
    pub max_morphisms: usize,
}

/// The closure of atoms under tensor, composition and symmetries, in
/// strictified form: objects are host objects, morphisms host morphisms.
#[derive(Clone, Debug)]
pub struct MinimalSpan<O, M> {
    pub objects: Vec<O>,
    pub morphisms: Vec<M>,
    /// Set when the morphism cap stopped the closure early.
    pub truncated: bool,
    pub bounds: SpanBounds,
}

/// Objects are tensor words in `atoms` of size at most the bound, morphisms
/// the closure of `generators`, identities and symmetries on those objects.
pub fn generate_minimal_span<C: EnumerableSmc>(
    host: &C,
    atoms: &[C::Obj],
    generators: &[C::Mor],
    bounds: SpanBounds,
) -> MinimalSpan<C::Obj, C::Mor> {
    let fits = |o: &C::Obj| host.size(o) <= bounds.max_object_size;
    let mut objects = vec![host.unit()];
    let mut seen: HashSet<C::Obj> = objects.iter().cloned().collect();
    let mut i = 0;
    while i < objects.len() {
        for a in atoms {
            let t = host.tensor_obj(&objects[i], a);
            if fits(&t) && seen.insert(t.clone()) {
                objects.push(t);
            }
        }
        i += 1;
    }
    objects.sort_by_key(|o| host.size(o));

    let mut seeds: Vec<C::Mor> = Vec::new();
    for o in &objects {
        seeds.push(host.identity(o));
    }
    for a in &objects {
        for b in &objects {
            if fits(&host.tensor_obj(a, b)) {
                seeds.push(host.symmetry(a, b));
            }
        }
    }
    seeds.extend(generators.iter().filter(|f| fits(&host.dom(f)) && fits(&host.cod(f))).cloned());

    let mut closure = Closure::<C> { host, all: Vec::new(), set: HashSet::new(), by_dom: HashMap::new(), by_cod: HashMap::new() };
    let mut truncated = false;
    let mut queue = std::collections::VecDeque::new();
    for s in seeds {
        if let Some(idx) = closure.add(s) {
            queue.push_back(idx);
        }
    }
    'outer: while let Some(i) = queue.pop_front() {
        let f = closure.all[i].clone();
        let (fd, fc) = (host.dom(&f), host.cod(&f));
        let mut produced = Vec::new();
        for &j in closure.by_dom.get(&fc).into_iter().flatten() {
            produced.push(host.compose(&closure.all[j], &f));
        }
        for &j in closure.by_cod.get(&fd).into_iter().flatten() {
            produced.push(host.compose(&f, &closure.all[j]));
        }
        for j in 0..closure.all.len() {
            let g = &closure.all[j];
            let (gd, gc) = (host.dom(g), host.cod(g));
            if fits(&host.tensor_obj(&fd, &gd)) && fits(&host.tensor_obj(&fc, &gc)) {
                produced.push(host.tensor_mor(&f, g));
                produced.push(host.tensor_mor(g, &f));
            }
        }
        for h in produced {
            if let Some(idx) = closure.add(h) {
                queue.push_back(idx);
                if closure.all.len() > bounds.max_morphisms {
                    truncated = true;
                    break 'outer;
                }
            }
        }
    }
    MinimalSpan { objects, morphisms: closure.all, truncated, bounds }
}

struct Closure<'a, C: EnumerableSmc> {
    host: &'a C,
    all: Vec<C::Mor>,
    set: HashSet<C::Mor>,
    by_dom: HashMap<C::Obj, Vec<usize>>,
    by_cod: HashMap<C::Obj, Vec<usize>>,
}

impl<C: EnumerableSmc> Closure<'_, C> {
    fn add(&mut self, f: C::Mor) -> Option<usize> {
        if self.set.contains(&f) {
            return None;
        }
        let idx = self.all.len();
        self.by_dom.entry(self.host.dom(&f)).or_default().push(idx);
        self.by_cod.entry(self.host.cod(&f)).or_default().push(idx);
        self.set.insert(f.clone());
        self.all.push(f);
        Some(idx)
    }
}

/// A generated span viewed as a category in its own right, with hom-sets
/// restricted to the generated morphisms.
pub struct SpanSmc<'a, C: EnumerableSmc> {
    host: &'a C,
    objects: Vec<C::Obj>,
    homs: HashMap<(C::Obj, C::Obj), Vec<C::Mor>>,
}

impl<'a, C: EnumerableSmc> SpanSmc<'a, C> {
    pub fn new(host: &'a C, span: &MinimalSpan<C::Obj, C::Mor>) -> Self {
        let mut homs: HashMap<(C::Obj, C::Obj), Vec<C::Mor>> = HashMap::new();
        for f in &span.morphisms {
            homs.entry((host.dom(f), host.cod(f))).or_default().push(f.clone());
        }
        Self { host, objects: span.objects.clone(), homs }
    }
}

impl<C: EnumerableSmc> EnumerableSmc for SpanSmc<'_, C> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    type Key = C::Key;

    fn name(&self) -> String {
        format!("span in {}", self.host.name())
    }

    fn unit(&self) -> C::Obj {
        self.host.unit()
    }

    fn tensor_obj(&self, a: &C::Obj, b: &C::Obj) -> C::Obj {
        self.host.tensor_obj(a, b)
    }

    fn canon(&self, a: &C::Obj) -> C::Key {
        self.host.canon(a)
    }

    fn size(&self, a: &C::Obj) -> u64 {
        self.host.size(a)
    }

    fn objects(&self, bound: u64) -> Vec<C::Obj> {
        self.objects.iter().filter(|o| self.host.size(o) <= bound).cloned().collect()
    }

    fn divisor_search_complete(&self, target: &C::Obj, bound: u64) -> bool {
        self.host.divisor_search_complete(target, bound)
    }

    fn max_factor_count(&self, a: &C::Obj) -> Option<usize> {
        self.host.max_factor_count(a)
    }

    fn homs(&self, a: &C::Obj, b: &C::Obj) -> Result<Vec<C::Mor>, SmcError> {
        Ok(self.homs.get(&(a.clone(), b.clone())).cloned().unwrap_or_default())
    }

    fn dom(&self, f: &C::Mor) -> C::Obj {
        self.host.dom(f)
    }

    fn cod(&self, f: &C::Mor) -> C::Obj {
        self.host.cod(f)
    }

    fn identity(&self, a: &C::Obj) -> C::Mor {
        self.host.identity(a)
    }

    fn compose(&self, g: &C::Mor, f: &C::Mor) -> C::Mor {
        self.host.compose(g, f)
    }

    fn tensor_mor(&self, f: &C::Mor, g: &C::Mor) -> C::Mor {
        self.host.tensor_mor(f, g)
    }

    fn symmetry(&self, a: &C::Obj, b: &C::Obj) -> C::Mor {
        self.host.symmetry(a, b)
    }

    fn zero_morphism(&self, a: &C::Obj, b: &C::Obj) -> Option<C::Mor> {
        self.host.zero_morphism(a, b)
    }

    fn show_obj(&self, a: &C::Obj) -> String {
        self.host.show_obj(a)
    }

    fn show_mor(&self, f: &C::Mor) -> String {
        self.host.show_mor(f)
    }
}
