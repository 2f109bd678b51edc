//! Finite strict symmetric monoidal categories given by explicit tables.
//!
//! JSON layout (all names are strings):
//!
//! ```json
//! {
//!   "name": "...",
//!   "objects": ["I", "A"],
//!   "unit": "I",
//!   "object_tensor": {"I": {"I": "I", "A": "A"}, "A": {"I": "A", "A": "A"}},
//!   "morphisms": [{"name": "1_I", "dom": "I", "cod": "I"}, ...],
//!   "identities": {"I": "1_I", "A": "1_A"},
//!   "compose": {"g": {"f": "g.f"}},
//!   "tensor": {"f": {"g": "f(x)g"}},
//!   "symmetry": {"A": {"A": "..."}},
//!   "zero": {"A": {"A": "..."}}
//! }
//! ```
//!
//! `compose[g][f]` is `g . f` and must be present exactly when `cod f = dom g`.
//! `tensor` and `symmetry` are total; `zero` is optional.

use std::collections::HashMap;

use serde_json::{json, Map, Value};

use super::{EnumerableSmc, SmcError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTableSmc {
    name: String,
    objects: Vec<String>,
    unit: usize,
    object_tensor: Vec<Vec<usize>>,
    morphisms: Vec<String>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    tensor: Vec<Vec<usize>>,
    symmetry: Vec<Vec<usize>>,
    zero: Option<Vec<Vec<usize>>>,
}

fn err(msg: impl Into<String>) -> SmcError {
    SmcError::HomTable(msg.into())
}

fn lookup(names: &[String], name: &str, what: &str) -> Result<usize, SmcError> {
    names.iter().position(|n| n == name).ok_or_else(|| err(format!("unknown {what} {name:?}")))
}

fn str_of<'v>(v: &'v Value, what: &str) -> Result<&'v str, SmcError> {
    v.as_str().ok_or_else(|| err(format!("{what} must be a string")))
}

/// Reads `{x: {y: name}}` into a total table over `rows x cols`.
fn table(v: &Value, rows: &[String], cols: &[String], targets: &[String], what: &str) -> Result<Vec<Vec<usize>>, SmcError> {
    let outer = v.as_object().ok_or_else(|| err(format!("{what} must be an object")))?;
    rows.iter()
        .map(|r| {
            let inner = outer.get(r).and_then(Value::as_object).ok_or_else(|| err(format!("{what} has no row {r:?}")))?;
            cols.iter()
                .map(|c| {
                    let t = inner.get(c).ok_or_else(|| err(format!("{what}[{r:?}][{c:?}] missing")))?;
                    lookup(targets, str_of(t, what)?, "entry")
                })
                .collect()
        })
        .collect()
}

impl HomTableSmc {
    pub fn from_json(v: &Value) -> Result<Self, SmcError> {
        let get = |k: &str| v.get(k).ok_or_else(|| err(format!("missing {k:?}")));
        let name = v.get("name").and_then(Value::as_str).unwrap_or("hom-table").to_string();
        let objects: Vec<String> = get("objects")?
            .as_array()
            .ok_or_else(|| err("\"objects\" must be an array"))?
            .iter()
            .map(|o| str_of(o, "object").map(str::to_owned))
            .collect::<Result<_, _>>()?;
        let unit = lookup(&objects, str_of(get("unit")?, "unit")?, "object")?;
        let object_tensor = table(get("object_tensor")?, &objects, &objects, &objects, "object_tensor")?;

        let mut morphisms = Vec::new();
        let (mut dom, mut cod) = (Vec::new(), Vec::new());
        for m in get("morphisms")?.as_array().ok_or_else(|| err("\"morphisms\" must be an array"))? {
            let field = |k: &str| m.get(k).and_then(Value::as_str).ok_or_else(|| err(format!("morphism entry needs {k:?}")));
            morphisms.push(field("name")?.to_string());
            dom.push(lookup(&objects, field("dom")?, "object")?);
            cod.push(lookup(&objects, field("cod")?, "object")?);
        }
        let ids = get("identities")?.as_object().ok_or_else(|| err("\"identities\" must be an object"))?;
        let identities = objects
            .iter()
            .map(|o| lookup(&morphisms, str_of(ids.get(o).ok_or_else(|| err(format!("no identity for {o:?}")))?, "identity")?, "morphism"))
            .collect::<Result<Vec<_>, _>>()?;

        let comp = get("compose")?.as_object().ok_or_else(|| err("\"compose\" must be an object"))?;
        let mut compose = HashMap::new();
        for (g_name, row) in comp {
            let g = lookup(&morphisms, g_name, "morphism")?;
            for (f_name, h) in row.as_object().ok_or_else(|| err("compose rows must be objects"))? {
                let f = lookup(&morphisms, f_name, "morphism")?;
                compose.insert((g, f), lookup(&morphisms, str_of(h, "compose entry")?, "morphism")?);
            }
        }
        let tensor = table(get("tensor")?, &morphisms, &morphisms, &morphisms, "tensor")?;
        let symmetry = table(get("symmetry")?, &objects, &objects, &morphisms, "symmetry")?;
        let zero = match v.get("zero") {
            Some(z) => Some(table(z, &objects, &objects, &morphisms, "zero")?),
            None => None,
        };
        let smc = Self { name, objects, unit, object_tensor, morphisms, dom, cod, identities, compose, tensor, symmetry, zero };
        smc.validate()?;
        Ok(smc)
    }

    pub fn to_json(&self) -> Value {
        let m = |i: usize| Value::String(self.morphisms[i].clone());
        let square = |t: &Vec<Vec<usize>>, rows: &[String], cols: &[String], names: &[String]| {
            let mut outer = Map::new();
            for (r, row) in rows.iter().zip(t) {
                let inner: Map<String, Value> = cols.iter().zip(row).map(|(c, x)| (c.clone(), Value::String(names[*x].clone()))).collect();
                outer.insert(r.clone(), Value::Object(inner));
            }
            Value::Object(outer)
        };
        let mut comp = Map::new();
        let mut keys: Vec<_> = self.compose.iter().collect();
        keys.sort();
        for ((g, f), h) in keys {
            let row = comp.entry(self.morphisms[*g].clone()).or_insert_with(|| Value::Object(Map::new()));
            row.as_object_mut().unwrap().insert(self.morphisms[*f].clone(), m(*h));
        }
        let mut v = json!({
            "name": self.name,
            "objects": self.objects,
            "unit": self.objects[self.unit],
            "object_tensor": square(&self.object_tensor, &self.objects, &self.objects, &self.objects),
            "morphisms": (0..self.morphisms.len()).map(|i| json!({
                "name": self.morphisms[i], "dom": self.objects[self.dom[i]], "cod": self.objects[self.cod[i]],
            })).collect::<Vec<_>>(),
            "identities": self.objects.iter().zip(&self.identities).map(|(o, i)| (o.clone(), m(*i))).collect::<Map<_, _>>(),
            "compose": comp,
            "tensor": square(&self.tensor, &self.morphisms, &self.morphisms, &self.morphisms),
            "symmetry": square(&self.symmetry, &self.objects, &self.objects, &self.morphisms),
        });
        if let Some(z) = &self.zero {
            v["zero"] = square(z, &self.objects, &self.objects, &self.morphisms);
        }
        v
    }

    pub fn morphism_named(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|n| n == name)
    }

    pub fn object_named(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|n| n == name)
    }

    /// Checks typing, category laws, strict monoidal laws and the symmetry.
    pub fn validate(&self) -> Result<(), SmcError> {
        let nm = self.morphisms.len();
        let no = self.objects.len();
        let t = &self.object_tensor;
        let mname = |i: usize| &self.morphisms[i];
        for a in 0..no {
            if t[self.unit][a] != a || t[a][self.unit] != a {
                return Err(err(format!("unit law fails on {:?}", self.objects[a])));
            }
            for b in 0..no {
                for c in 0..no {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return Err(err("object tensor is not associative"));
                    }
                }
            }
            let id = self.identities[a];
            if self.dom[id] != a || self.cod[id] != a {
                return Err(err(format!("identity {} has the wrong type", mname(id))));
            }
        }
        for g in 0..nm {
            for f in 0..nm {
                match (self.cod[f] == self.dom[g], self.compose.get(&(g, f))) {
                    (true, None) => return Err(err(format!("compose[{}][{}] missing", mname(g), mname(f)))),
                    (false, Some(_)) => return Err(err(format!("compose[{}][{}] given for a non-composable pair", mname(g), mname(f)))),
                    (true, Some(&h)) if self.dom[h] != self.dom[f] || self.cod[h] != self.cod[g] => {
                        return Err(err(format!("compose[{}][{}] = {} has the wrong type", mname(g), mname(f), mname(h))))
                    }
                    _ => {}
                }
                let h = self.tensor[f][g];
                if self.dom[h] != t[self.dom[f]][self.dom[g]] || self.cod[h] != t[self.cod[f]][self.cod[g]] {
                    return Err(err(format!("tensor[{}][{}] = {} has the wrong type", mname(f), mname(g), mname(h))));
                }
            }
            if self.compose[&(self.identities[self.cod[g]], g)] != g || self.compose[&(g, self.identities[self.dom[g]])] != g {
                return Err(err(format!("identity law fails at {}", mname(g))));
            }
            if self.tensor[g][self.identities[self.unit]] != g || self.tensor[self.identities[self.unit]][g] != g {
                return Err(err(format!("unit tensor law fails at {}", mname(g))));
            }
        }
        for h in 0..nm {
            for g in 0..nm {
                if self.cod[g] != self.dom[h] {
                    continue;
                }
                for f in 0..nm {
                    if self.cod[f] != self.dom[g] {
                        continue;
                    }
                    let l = self.compose[&(self.compose[&(h, g)], f)];
                    let r = self.compose[&(h, self.compose[&(g, f)])];
                    if l != r {
                        return Err(err(format!("composition not associative at {}, {}, {}", mname(h), mname(g), mname(f))));
                    }
                }
            }
        }
        for f in 0..nm {
            for g in 0..nm {
                if self.tensor[self.identities[self.dom[f]]][self.identities[self.dom[g]]] != self.identities[t[self.dom[f]][self.dom[g]]] {
                    return Err(err("tensor of identities is not an identity"));
                }
                for f2 in 0..nm {
                    if self.cod[f] != self.dom[f2] {
                        continue;
                    }
                    for g2 in 0..nm {
                        if self.cod[g] != self.dom[g2] {
                            continue;
                        }
                        let l = self.compose[&(self.tensor[f2][g2], self.tensor[f][g])];
                        let r = self.tensor[self.compose[&(f2, f)]][self.compose[&(g2, g)]];
                        if l != r {
                            return Err(err(format!("interchange law fails at {}, {}, {}, {}", mname(f2), mname(g2), mname(f), mname(g))));
                        }
                    }
                }
                // symmetry naturality
                let (a, b, a2, b2) = (self.dom[f], self.dom[g], self.cod[f], self.cod[g]);
                let l = self.compose[&(self.symmetry[a2][b2], self.tensor[f][g])];
                let r = self.compose[&(self.tensor[g][f], self.symmetry[a][b])];
                if l != r {
                    return Err(err(format!("symmetry is not natural at {}, {}", mname(f), mname(g))));
                }
            }
        }
        for a in 0..no {
            for b in 0..no {
                let s = self.symmetry[a][b];
                if self.dom[s] != t[a][b] || self.cod[s] != t[b][a] {
                    return Err(err("symmetry has the wrong type"));
                }
                if self.compose[&(self.symmetry[b][a], s)] != self.identities[t[a][b]] {
                    return Err(err("symmetry is not involutive"));
                }
                if let Some(z) = &self.zero {
                    let zm = z[a][b];
                    if self.dom[zm] != a || self.cod[zm] != b {
                        return Err(err("zero morphism has the wrong type"));
                    }
                }
            }
        }
        Ok(())
    }

    /// One object `A` besides the unit with `A (x) A = A`; every hom-set is
    /// `{0}` except `End(I) = End(A) = {1, 0}`. Composition and tensor multiply
    /// labels. All states and effects of `A` are zero, so `1_A` and `0_A` share
    /// every scalar while differing.
    pub fn tomography_counterexample() -> Self {
        let objects = vec!["I".to_string(), "A".to_string()];
        // (label, dom, cod) with label 1 or 0
        let morphisms = [("1_I", 1, 0, 0), ("0_I", 0, 0, 0), ("0_IA", 0, 0, 1), ("0_AI", 0, 1, 0), ("1_A", 1, 1, 1), ("0_A", 0, 1, 1)];
        let find = |label: u8, d: usize, c: usize| {
            morphisms.iter().position(|m| m.1 == label && m.2 == d && m.3 == c).expect("closed under products")
        };
        let object_tensor = vec![vec![0, 1], vec![1, 1]];
        let n = morphisms.len();
        let mut compose = HashMap::new();
        for g in 0..n {
            for f in 0..n {
                if morphisms[f].3 == morphisms[g].2 {
                    compose.insert((g, f), find(morphisms[g].1 * morphisms[f].1, morphisms[f].2, morphisms[g].3));
                }
            }
        }
        let tensor = (0..n)
            .map(|f| {
                (0..n)
                    .map(|g| {
                        let (mf, mg) = (morphisms[f], morphisms[g]);
                        find(mf.1 * mg.1, object_tensor[mf.2][mg.2], object_tensor[mf.3][mg.3])
                    })
                    .collect()
            })
            .collect();
        let identities = vec![0, 4];
        let symmetry = vec![vec![0, 4], vec![4, 4]];
        let zero = Some((0..2).map(|a| (0..2).map(|b| find(0, a, b)).collect()).collect());
        let smc = Self {
            name: "tomography counterexample".into(),
            objects,
            unit: 0,
            object_tensor,
            morphisms: morphisms.iter().map(|m| m.0.to_string()).collect(),
            dom: morphisms.iter().map(|m| m.2).collect(),
            cod: morphisms.iter().map(|m| m.3).collect(),
            identities,
            compose,
            tensor,
            symmetry,
            zero,
        };
        smc.validate().expect("the counterexample is a strict SMC");
        smc
    }

    /// The category with the unit as only object and only its identity.
    pub fn trivial() -> Self {
        let one = vec!["I".to_string()];
        let smc = Self {
            name: "trivial".into(),
            objects: one.clone(),
            unit: 0,
            object_tensor: vec![vec![0]],
            morphisms: vec!["1_I".into()],
            dom: vec![0],
            cod: vec![0],
            identities: vec![0],
            compose: HashMap::from([((0, 0), 0)]),
            tensor: vec![vec![0]],
            symmetry: vec![vec![0]],
            zero: None,
        };
        smc.validate().expect("trivial SMC");
        smc
    }
}

impl EnumerableSmc for HomTableSmc {
    type Obj = usize;
    type Mor = usize;
    type Key = usize;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn unit(&self) -> usize {
        self.unit
    }

    fn tensor_obj(&self, a: &usize, b: &usize) -> usize {
        self.object_tensor[*a][*b]
    }

    fn canon(&self, a: &usize) -> usize {
        *a
    }

    fn size(&self, _a: &usize) -> u64 {
        1
    }

    fn objects(&self, _bound: u64) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }

    fn divisor_search_complete(&self, _target: &usize, _bound: u64) -> bool {
        true
    }

    fn homs(&self, a: &usize, b: &usize) -> Result<Vec<usize>, SmcError> {
        Ok((0..self.morphisms.len()).filter(|&m| self.dom[m] == *a && self.cod[m] == *b).collect())
    }

    fn dom(&self, f: &usize) -> usize {
        self.dom[*f]
    }

    fn cod(&self, f: &usize) -> usize {
        self.cod[*f]
    }

    fn identity(&self, a: &usize) -> usize {
        self.identities[*a]
    }

    fn compose(&self, g: &usize, f: &usize) -> usize {
        self.compose[&(*g, *f)]
    }

    fn tensor_mor(&self, f: &usize, g: &usize) -> usize {
        self.tensor[*f][*g]
    }

    fn symmetry(&self, a: &usize, b: &usize) -> usize {
        self.symmetry[*a][*b]
    }

    fn zero_morphism(&self, a: &usize, b: &usize) -> Option<usize> {
        self.zero.as_ref().map(|z| z[*a][*b])
    }

    fn show_obj(&self, a: &usize) -> String {
        self.objects[*a].clone()
    }

    fn show_mor(&self, f: &usize) -> String {
        self.morphisms[*f].clone()
    }
}
