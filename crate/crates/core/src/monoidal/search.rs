use std::cell::RefCell;
use std::collections::HashMap;

use serde_json::{json, Value};

use super::{EnumerableSmc, Verdict};

/// Outcome of a bounded divisor search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divisibility<O> {
    /// `A (x) cofactor ~ B`.
    Witness(O),
    /// Proved absent: the search covered every possible cofactor.
    None,
    Indeterminate,
}

impl<O> Divisibility<O> {
    pub fn is_witness(&self) -> bool {
        matches!(self, Divisibility::Witness(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeClause<O> {
    /// Absorbing for the tensor over every enumerated object.
    ZeroObject,
    IsUnit,
    /// `A | B (x) C` through `cofactor`, while `A` divides neither `B` nor `C`.
    Euclid { b: O, c: O, cofactor: O },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primality<O> {
    Prime { pairs_checked: usize },
    NotPrime(PrimeClause<O>),
    Indeterminate(String),
}

impl<O> Primality<O> {
    pub fn is_prime(&self) -> bool {
        matches!(self, Primality::Prime { .. })
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            Primality::Prime { .. } => Verdict::Pass,
            Primality::NotPrime(_) => Verdict::Fail,
            Primality::Indeterminate(_) => Verdict::Indeterminate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorizationStatus<O> {
    Unique,
    NonUnique { second: Vec<O> },
    /// No multiset of certified primes tensors to the object.
    NotFactorisable,
    Indeterminate(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<O> {
    pub object: O,
    pub parts: Vec<O>,
    pub zero_object: bool,
    pub status: FactorizationStatus<O>,
}

impl<O> Factorization<O> {
    pub fn verdict(&self) -> Verdict {
        match self.status {
            FactorizationStatus::Unique => Verdict::Pass,
            FactorizationStatus::NonUnique { .. } | FactorizationStatus::NotFactorisable => Verdict::Fail,
            FactorizationStatus::Indeterminate(_) => Verdict::Indeterminate,
        }
    }
}

/// Default cap on parts when an instance gives no bound.
const DEFAULT_PART_CAP: usize = 4;

/// Bounded searches over the objects of `smc` with `size <= bound`, with
/// the tensor table of enumerated objects precomputed.
pub struct Certifier<'a, C: EnumerableSmc> {
    smc: &'a C,
    bound: u64,
    objects: Vec<C::Obj>,
    index: HashMap<C::Key, usize>,
    unit: Option<usize>,
    /// `table[i][j]`: index of `objects[i] (x) objects[j]` if enumerated.
    table: Vec<Vec<Option<usize>>>,
    primes: RefCell<HashMap<C::Key, Primality<C::Obj>>>,
}

impl<'a, C: EnumerableSmc> Certifier<'a, C> {
    pub fn new(smc: &'a C, bound: u64) -> Self {
        let objects = smc.objects(bound);
        let keys: Vec<C::Key> = objects.iter().map(|o| smc.canon(o)).collect();
        let index: HashMap<C::Key, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let unit = index.get(&smc.canon(&smc.unit())).copied();
        let table = objects
            .iter()
            .map(|a| objects.iter().map(|b| index.get(&smc.canon(&smc.tensor_obj(a, b))).copied()).collect())
            .collect();
        Self { smc, bound, objects, index, unit, table, primes: RefCell::new(HashMap::new()) }
    }

    pub fn smc(&self) -> &C {
        self.smc
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn objects(&self) -> &[C::Obj] {
        &self.objects
    }

    pub fn is_iso(&self, a: &C::Obj, b: &C::Obj) -> bool {
        self.smc.canon(a) == self.smc.canon(b)
    }

    fn is_unit(&self, a: &C::Obj) -> bool {
        self.is_iso(a, &self.smc.unit())
    }

    /// Does `a` divide `y`? `strict` excludes the unit as cofactor.
    /// Candidates are tried smallest first.
    pub fn divides(&self, a: &C::Obj, y: &C::Obj, strict: bool) -> Divisibility<C::Obj> {
        let ky = self.smc.canon(y);
        let ia = self.index.get(&self.smc.canon(a));
        let iy = self.index.get(&ky);
        let found = match (ia, iy) {
            (Some(&ia), Some(&iy)) => (0..self.objects.len())
                .find(|&x| self.table[ia][x] == Some(iy) && !(strict && Some(x) == self.unit)),
            _ => (0..self.objects.len()).find(|&x| {
                !(strict && Some(x) == self.unit) && self.smc.canon(&self.smc.tensor_obj(a, &self.objects[x])) == ky
            }),
        };
        match found {
            Some(x) => Divisibility::Witness(self.objects[x].clone()),
            None if self.smc.divisor_search_complete(y, self.bound) => Divisibility::None,
            None => Divisibility::Indeterminate,
        }
    }

    /// Absorbing over every enumerated object.
    pub fn is_zero_object(&self, a: &C::Obj) -> bool {
        let ka = self.smc.canon(a);
        self.objects.iter().all(|x| self.smc.canon(&self.smc.tensor_obj(a, x)) == ka)
    }

    pub fn is_tensor_prime(&self, a: &C::Obj) -> Primality<C::Obj> {
        let key = self.smc.canon(a);
        if let Some(p) = self.primes.borrow().get(&key) {
            return p.clone();
        }
        let p = self.primality_uncached(a);
        self.primes.borrow_mut().insert(key, p.clone());
        p
    }

    fn primality_uncached(&self, a: &C::Obj) -> Primality<C::Obj> {
        if self.is_zero_object(a) {
            return Primality::NotPrime(PrimeClause::ZeroObject);
        }
        if self.is_unit(a) {
            return Primality::NotPrime(PrimeClause::IsUnit);
        }
        if self.smc.size(a) > self.bound {
            return Primality::Indeterminate(format!("size {} exceeds the bound {}", self.smc.size(a), self.bound));
        }
        // clause (iii) admits the unit as cofactor
        let mut pairs = 0;
        let mut undecided = None;
        let n = self.objects.len();
        for b in 0..n {
            for c in b..n {
                let Some(y) = self.table[b][c] else { continue };
                pairs += 1;
                match self.divides(a, &self.objects[y], false) {
                    Divisibility::Witness(cofactor) => {
                        let db = self.divides(a, &self.objects[b], false);
                        let dc = self.divides(a, &self.objects[c], false);
                        if db.is_witness() || dc.is_witness() {
                            continue;
                        }
                        if db == Divisibility::None && dc == Divisibility::None {
                            return Primality::NotPrime(PrimeClause::Euclid {
                                b: self.objects[b].clone(),
                                c: self.objects[c].clone(),
                                cofactor,
                            });
                        }
                        undecided.get_or_insert_with(|| format!("divisibility of {:?} or {:?} undecided", self.objects[b], self.objects[c]));
                    }
                    Divisibility::None => {}
                    Divisibility::Indeterminate => {
                        undecided.get_or_insert_with(|| format!("divisibility of {:?} undecided", self.objects[y]));
                    }
                }
            }
        }
        match undecided {
            Some(reason) => Primality::Indeterminate(reason),
            None => Primality::Prime { pairs_checked: pairs },
        }
    }

    /// Enumerated objects certified prime at the bound, smallest first.
    pub fn certified_primes(&self) -> (Vec<C::Obj>, bool) {
        let mut all_decided = true;
        let mut out = Vec::new();
        for o in &self.objects {
            match self.is_tensor_prime(o) {
                Primality::Prime { .. } => out.push(o.clone()),
                Primality::Indeterminate(_) => all_decided = false,
                Primality::NotPrime(_) => {}
            }
        }
        (out, all_decided)
    }

    /// All multisets of certified primes whose tensor is isomorphic to `a`.
    pub fn unique_factorization(&self, a: &C::Obj) -> Factorization<C::Obj> {
        let zero = self.is_zero_object(a);
        if zero {
            return Factorization { object: a.clone(), parts: Vec::new(), zero_object: true, status: FactorizationStatus::Unique };
        }
        let (primes, primes_decided) = self.certified_primes();
        let (cap, capped) = match self.smc.max_factor_count(a) {
            Some(n) => (n, false),
            None => (DEFAULT_PART_CAP, true),
        };
        let target = self.smc.canon(a);
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut word: Vec<usize> = Vec::new();
        self.search_words(&primes, &target, cap, 0, &self.smc.unit(), &mut word, &mut found);
        let as_objs = |w: &Vec<usize>| w.iter().map(|&i| primes[i].clone()).collect::<Vec<_>>();
        let parts = found.first().map(as_objs).unwrap_or_default();
        let status = match found.len() {
            0 if !capped && primes_decided => FactorizationStatus::NotFactorisable,
            0 => FactorizationStatus::Indeterminate("no factorisation within the search bounds".into()),
            1 if !capped && primes_decided => FactorizationStatus::Unique,
            1 if capped => FactorizationStatus::Indeterminate(format!("parts capped at {cap}")),
            1 => FactorizationStatus::Indeterminate("some candidate primes are undecided".into()),
            _ => FactorizationStatus::NonUnique { second: as_objs(&found[1]) },
        };
        Factorization { object: a.clone(), parts, zero_object: false, status }
    }

    #[allow(clippy::too_many_arguments)]
    fn search_words(
        &self,
        primes: &[C::Obj],
        target: &C::Key,
        remaining: usize,
        start: usize,
        acc: &C::Obj,
        word: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if found.len() >= 2 {
            return;
        }
        if self.smc.canon(acc) == *target {
            found.push(word.clone());
        }
        if remaining == 0 {
            return;
        }
        for i in start..primes.len() {
            let next = self.smc.tensor_obj(acc, &primes[i]);
            word.push(i);
            self.search_words(primes, target, remaining - 1, i, &next, word, found);
            word.pop();
        }
    }

    pub fn divisibility_json(&self, d: &Divisibility<C::Obj>) -> Value {
        match d {
            Divisibility::Witness(w) => json!({"verdict": "divides", "witness": self.smc.show_obj(w)}),
            Divisibility::None => json!({"verdict": "none"}),
            Divisibility::Indeterminate => json!({"verdict": "indeterminate"}),
        }
    }

    pub fn primality_json(&self, p: &Primality<C::Obj>) -> Value {
        match p {
            Primality::Prime { pairs_checked } => json!({"verdict": "prime", "pairs_checked": pairs_checked}),
            Primality::NotPrime(PrimeClause::ZeroObject) => json!({"verdict": "not-prime", "clause": "i", "reason": "zero object"}),
            Primality::NotPrime(PrimeClause::IsUnit) => json!({"verdict": "not-prime", "clause": "ii", "reason": "isomorphic to the unit"}),
            Primality::NotPrime(PrimeClause::Euclid { b, c, cofactor }) => json!({
                "verdict": "not-prime", "clause": "iii",
                "b": self.smc.show_obj(b), "c": self.smc.show_obj(c), "cofactor": self.smc.show_obj(cofactor),
            }),
            Primality::Indeterminate(r) => json!({"verdict": "indeterminate", "reason": r}),
        }
    }

    pub fn factorization_json(&self, f: &Factorization<C::Obj>) -> Value {
        let show = |v: &[C::Obj]| v.iter().map(|o| self.smc.show_obj(o)).collect::<Vec<_>>();
        let status = match &f.status {
            FactorizationStatus::Unique => json!({"status": "unique"}),
            FactorizationStatus::NonUnique { second } => json!({"status": "non-unique", "second": show(second)}),
            FactorizationStatus::NotFactorisable => json!({"status": "not-factorisable"}),
            FactorizationStatus::Indeterminate(r) => json!({"status": "indeterminate", "reason": r}),
        };
        let mut v = json!({"object": self.smc.show_obj(&f.object), "parts": show(&f.parts), "zero_object": f.zero_object});
        v.as_object_mut().unwrap().extend(status.as_object().unwrap().clone());
        v
    }
}

/// One-shot strict divisibility: a cofactor not isomorphic to the unit.
pub fn tensor_divides<C: EnumerableSmc>(smc: &C, a: &C::Obj, b: &C::Obj, bound: u64) -> Divisibility<C::Obj> {
    Certifier::new(smc, bound).divides(a, b, true)
}

pub fn is_tensor_prime<C: EnumerableSmc>(smc: &C, a: &C::Obj, bound: u64) -> Primality<C::Obj> {
    Certifier::new(smc, bound).is_tensor_prime(a)
}

pub fn unique_factorization<C: EnumerableSmc>(smc: &C, a: &C::Obj, bound: u64) -> Factorization<C::Obj> {
    Certifier::new(smc, bound).unique_factorization(a)
}
