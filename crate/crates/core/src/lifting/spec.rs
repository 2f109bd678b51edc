use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use super::{LiftError, LinearSmc, MatrixCategory};
use crate::matcat::radix::is_prime;

/// Capability tag: the functor is linear over the shared scalar algebra.
pub const CAP_LINEAR: &str = "S-linear";

/// A functor on the prime atoms of a matrix category: images of the atoms
/// and of a generating set of morphisms between atoms and the unit.
pub struct FunctorSpec<C: MatrixCategory, D: LinearSmc> {
    atoms: Vec<usize>,
    objects: BTreeMap<usize, D::Obj>,
    morphisms: Vec<(C::Mor, D::Mor)>,
    index: HashMap<C::Mor, usize>,
    capabilities: BTreeSet<String>,
}

impl<C: MatrixCategory, D: LinearSmc> Clone for FunctorSpec<C, D> {
    fn clone(&self) -> Self {
        Self {
            atoms: self.atoms.clone(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            index: self.index.clone(),
            capabilities: self.capabilities.clone(),
        }
    }
}

impl<C: MatrixCategory, D: LinearSmc> FunctorSpec<C, D> {
    /// Validates the tables: unit to unit, types, identities, composites
    /// and, for linear specs over a finite algebra, sums and scalings that
    /// stay inside the generating set.
    pub fn new(
        source: &C,
        target: &D,
        atoms: Vec<usize>,
        objects: BTreeMap<usize, D::Obj>,
        morphisms: Vec<(C::Mor, D::Mor)>,
        capabilities: impl IntoIterator<Item = String>,
    ) -> Result<Self, LiftError> {
        let capabilities: BTreeSet<String> = capabilities.into_iter().collect();
        if let Some(p) = atoms.iter().find(|&&p| !is_prime(p)) {
            return Err(LiftError::Spec(format!("atom {p} is not prime")));
        }
        if let Some(p) = atoms.iter().find(|p| !objects.contains_key(p)) {
            return Err(LiftError::Spec(format!("no image for atom A({p})")));
        }
        let mut index = HashMap::new();
        for (i, (f, _)) in morphisms.iter().enumerate() {
            if index.insert(f.clone(), i).is_some() {
                return Err(LiftError::Spec(format!("{} is listed twice", source.show_mor(f))));
            }
        }
        let spec = Self { atoms, objects, morphisms, index, capabilities };
        spec.validate(source, target)?;
        Ok(spec)
    }

    /// Builds the generator table by applying `rule` to `generators`.
    pub fn from_rule(
        source: &C,
        target: &D,
        atoms: Vec<usize>,
        object_rule: impl Fn(usize) -> D::Obj,
        rule: impl Fn(&C::Mor) -> Result<D::Mor, LiftError>,
        generators: Vec<C::Mor>,
        capabilities: impl IntoIterator<Item = String>,
    ) -> Result<Self, LiftError> {
        let objects = atoms.iter().map(|&p| (p, object_rule(p))).collect();
        let morphisms = generators.into_iter().map(|f| rule(&f).map(|g| (f, g))).collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, atoms, objects, morphisms, capabilities)
    }

    /// Scalars, identities, basis kets and bras of each atom.
    pub fn standard_generators(source: &C, atoms: &[usize]) -> Vec<C::Mor> {
        let alg = source.algebra();
        let unit = source.unit();
        let mut out: Vec<C::Mor> = match alg.elements() {
            Some(es) => es
                .iter()
                .map(|s| source.scale(s, &source.identity(&unit)))
                .collect(),
            None => vec![source.zero(&unit, &unit), source.identity(&unit)],
        };
        for &p in atoms {
            out.push(source.identity(&source.atom(p)));
            out.extend((0..p).map(|k| source.ket(p, k)));
            out.extend((0..p).map(|k| source.bra(p, k)));
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|f| seen.insert(f.clone()));
        out
    }

    /// Every morphism between atoms and the unit whose hom-set has at most
    /// `limit` elements, on top of the standard generators.
    pub fn atom_generators(source: &C, atoms: &[usize], limit: u64) -> Vec<C::Mor> {
        let mut out = Self::standard_generators(source, atoms);
        let objs: Vec<C::Obj> = std::iter::once(source.unit()).chain(atoms.iter().map(|&p| source.atom(p))).collect();
        let carrier = source.algebra().carrier_size();
        for a in &objs {
            for b in &objs {
                let entries = (source.dim(a) * source.dim(b)) as u32;
                let small = carrier.is_some_and(|n| (n as u128).checked_pow(entries).is_some_and(|c| c <= limit as u128));
                if small {
                    if let Ok(h) = source.homs(a, b) {
                        out.extend(h);
                    }
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|f| seen.insert(f.clone()));
        out
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn object_image(&self, p: usize) -> Option<&D::Obj> {
        self.objects.get(&p)
    }

    pub fn morphisms(&self) -> &[(C::Mor, D::Mor)] {
        &self.morphisms
    }

    pub fn image(&self, f: &C::Mor) -> Option<&D::Mor> {
        self.index.get(f).map(|&i| &self.morphisms[i].1)
    }

    pub fn capabilities(&self) -> &BTreeSet<String> {
        &self.capabilities
    }

    pub fn has_capability(&self, tag: &str) -> bool {
        self.capabilities.contains(tag)
    }

    /// Image of an object of the atom subcategory.
    pub fn word_image(&self, target: &D, w: &[usize]) -> Result<D::Obj, LiftError> {
        let mut acc: Option<D::Obj> = None;
        for p in w {
            let o = self.objects.get(p).ok_or_else(|| LiftError::Spec(format!("A({p}) is not an atom of the functor spec")))?;
            acc = Some(match acc {
                None => o.clone(),
                Some(a) => target.tensor_obj(&a, o),
            });
        }
        Ok(acc.unwrap_or_else(|| target.unit()))
    }

    fn atom_word(&self, source: &C, x: &C::Obj) -> Result<Vec<usize>, LiftError> {
        let w = source.word(x);
        match w.as_slice() {
            [] => Ok(w),
            [p] if self.objects.contains_key(p) => Ok(w),
            _ => Err(LiftError::Spec(format!("{} is not an atom or the unit", source.show_obj(x)))),
        }
    }

    fn validate(&self, source: &C, target: &D) -> Result<(), LiftError> {
        let linear = self.has_capability(CAP_LINEAR);
        if linear && source.algebra() != target.algebra() {
            return Err(LiftError::Capability(format!(
                "{CAP_LINEAR} needs one algebra, got {} and {}",
                source.algebra(),
                target.algebra()
            )));
        }
        for (f, g) in &self.morphisms {
            let dom = self.word_image(target, &self.atom_word(source, &source.dom(f))?)?;
            let cod = self.word_image(target, &self.atom_word(source, &source.cod(f))?)?;
            if target.dom(g) != dom || target.cod(g) != cod {
                return Err(LiftError::Spec(format!("image of {} has the wrong type", source.show_mor(f))));
            }
            if *f == source.identity(&source.dom(f)) && *g != target.identity(&dom) {
                return Err(LiftError::Spec(format!("identity {} is not sent to an identity", source.show_mor(f))));
            }
        }
        let mut by_dom: HashMap<C::Obj, Vec<usize>> = HashMap::new();
        for (i, (f, _)) in self.morphisms.iter().enumerate() {
            by_dom.entry(source.dom(f)).or_default().push(i);
        }
        for (f, ff) in &self.morphisms {
            for &j in by_dom.get(&source.cod(f)).into_iter().flatten() {
                let (g, gg) = &self.morphisms[j];
                let gf = source.compose(g, f);
                if let Some(image) = self.image(&gf) {
                    if *image != target.compose(gg, ff) {
                        return Err(LiftError::Spec(format!(
                            "F({} . {}) differs from F({}) . F({})",
                            source.show_mor(g),
                            source.show_mor(f),
                            source.show_mor(g),
                            source.show_mor(f)
                        )));
                    }
                }
            }
        }
        if linear && source.algebra().is_finite() {
            let elements = source.algebra().elements().expect("finite");
            for (f, ff) in &self.morphisms {
                for s in &elements {
                    if let Some(image) = self.image(&source.scale(s, f)) {
                        if *image != target.scale(s, ff) {
                            return Err(LiftError::Capability(format!("F is not homogeneous at {}", source.show_mor(f))));
                        }
                    }
                }
            }
            let mut by_type: HashMap<(C::Obj, C::Obj), Vec<usize>> = HashMap::new();
            for (i, (f, _)) in self.morphisms.iter().enumerate() {
                by_type.entry((source.dom(f), source.cod(f))).or_default().push(i);
            }
            for group in by_type.values().filter(|g| g.len() <= 64) {
                for &i in group {
                    for &j in group {
                        let (f, ff) = &self.morphisms[i];
                        let (g, gg) = &self.morphisms[j];
                        if let Some(image) = self.image(&source.add(f, g)) {
                            if *image != target.add(ff, gg) {
                                return Err(LiftError::Capability(format!(
                                    "F is not additive at {} + {}",
                                    source.show_mor(f),
                                    source.show_mor(g)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self, source: &C, target: &D) -> Value {
        json!({
            "atoms": self.atoms,
            "objects": self.objects.iter().map(|(p, o)| (p.to_string(), target.obj_to_json(o))).collect::<serde_json::Map<_, _>>(),
            "morphisms": self.morphisms.iter().map(|(f, g)| json!({"source": source.mor_to_json(f), "target": target.mor_to_json(g)})).collect::<Vec<_>>(),
            "capabilities": self.capabilities,
        })
    }

    /// `{"atoms": [..], "objects": {"p": obj}, "morphisms": [{"source", "target"}],
    /// "capabilities": [..]}`.
    pub fn from_json(source: &C, target: &D, v: &Value) -> Result<Self, LiftError> {
        let err = |m: &str| LiftError::Spec(m.to_string());
        let atoms: Vec<usize> = serde_json::from_value(v["atoms"].clone()).map_err(|e| err(&format!("atoms: {e}")))?;
        let objs = v["objects"].as_object().ok_or_else(|| err("objects must be an object keyed by atom"))?;
        let mut objects = BTreeMap::new();
        for (k, o) in objs {
            let p: usize = k.parse().map_err(|_| err(&format!("object key {k} is not a number")))?;
            objects.insert(p, target.obj_from_json(o)?);
        }
        let list = v["morphisms"].as_array().ok_or_else(|| err("morphisms must be an array"))?;
        let mut morphisms = Vec::new();
        for (i, m) in list.iter().enumerate() {
            let f = source.mor_from_json(&m["source"]).map_err(|e| err(&format!("morphisms[{i}].source: {e}")))?;
            let g = target.mor_from_json(&m["target"]).map_err(|e| err(&format!("morphisms[{i}].target: {e}")))?;
            morphisms.push((f, g));
        }
        let caps: Vec<String> = match v.get("capabilities") {
            Some(c) => serde_json::from_value(c.clone()).map_err(|e| err(&format!("capabilities: {e}")))?,
            None => Vec::new(),
        };
        Self::new(source, target, atoms, objects, morphisms, caps)
    }
}
