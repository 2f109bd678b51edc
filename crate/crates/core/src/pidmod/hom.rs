use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{json_int, reduce, tensor_indexed, tensor_many, PidError, PidModule};

/// A homomorphism given by residues: the summand `Z/(r_i)` of the domain
/// maps into `Z/(s_j)` of the codomain by `x |-> c[j][i] * x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PidHom {
    dom: PidModule,
    cod: PidModule,
    /// Row-major, `cod.dim()` rows of `dom.dim()` residues.
    residues: Vec<BigInt>,
}

fn check_entry(c: &BigInt, r: &BigInt, s: &BigInt, row: usize, col: usize) -> Result<(), PidError> {
    if reduce(&(r * c), s).is_zero() {
        Ok(())
    } else {
        Err(PidError::Annihilator { row, col, residue: c.clone(), dom_factor: r.clone(), cod_factor: s.clone() })
    }
}

impl PidHom {
    /// Validates the annihilator condition and reduces residues into `[0, s_j)`.
    pub fn new(dom: &PidModule, cod: &PidModule, residues: Vec<Vec<BigInt>>) -> Result<Self, PidError> {
        if residues.len() != cod.dim() || residues.iter().any(|r| r.len() != dom.dim()) {
            return Err(PidError::Shape(format!(
                "residue matrix must be {} x {}",
                cod.dim(),
                dom.dim()
            )));
        }
        let mut flat = Vec::with_capacity(dom.dim() * cod.dim());
        for (j, row) in residues.into_iter().enumerate() {
            let s = &cod.factors()[j];
            for (i, c) in row.into_iter().enumerate() {
                check_entry(&c, &dom.factors()[i], s, j, i)?;
                flat.push(reduce(&c, s));
            }
        }
        Ok(Self { dom: dom.clone(), cod: cod.clone(), residues: flat })
    }

    pub fn from_i64(dom: &PidModule, cod: &PidModule, residues: &[Vec<i64>]) -> Result<Self, PidError> {
        Self::new(dom, cod, residues.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn identity(m: &PidModule) -> Self {
        let n = m.dim();
        let residues = (0..n * n).map(|k| reduce(&BigInt::from((k / n == k % n) as u8), &m.factors()[k / n])).collect();
        Self { dom: m.clone(), cod: m.clone(), residues }
    }

    pub fn zero(dom: &PidModule, cod: &PidModule) -> Self {
        Self { dom: dom.clone(), cod: cod.clone(), residues: vec![BigInt::zero(); dom.dim() * cod.dim()] }
    }

    pub fn dom(&self) -> &PidModule {
        &self.dom
    }

    pub fn cod(&self) -> &PidModule {
        &self.cod
    }

    pub fn residue(&self, row: usize, col: usize) -> &BigInt {
        &self.residues[row * self.dom.dim() + col]
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }

    /// Image of an element given by its residues on the domain factors.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.cod.dim())
            .map(|j| {
                let sum: BigInt = x.iter().enumerate().map(|(i, xi)| self.residue(j, i) * xi).sum();
                reduce(&sum, &self.cod.factors()[j])
            })
            .collect()
    }

    /// Admissible residues per entry, row-major; `None` if some entry has
    /// infinitely many.
    fn entry_choices(dom: &PidModule, cod: &PidModule) -> Option<Vec<Vec<BigInt>>> {
        // entry (j, i) ranges over multiples of s / gcd(r, s) in [0, s)
        let mut choices = Vec::new();
        for s in cod.factors() {
            for r in dom.factors() {
                if s.is_zero() {
                    if r.is_zero() {
                        return None;
                    }
                    choices.push(vec![BigInt::zero()]);
                    continue;
                }
                let g = crate::algebra::gcd(r, s);
                let step = s / &g;
                let n = usize::try_from(&g).ok()?;
                choices.push((0..n).map(|k| &step * k).collect());
            }
        }
        Some(choices)
    }

    /// `|Hom(dom, cod)|`, or `None` when infinite.
    pub fn count(dom: &PidModule, cod: &PidModule) -> Option<BigInt> {
        Self::entry_choices(dom, cod).map(|c| c.iter().map(|v| BigInt::from(v.len())).product())
    }

    /// Every hom, or `None` when there are infinitely many or more than `usize::MAX`.
    pub fn all(dom: &PidModule, cod: &PidModule) -> Option<Vec<PidHom>> {
        let choices = Self::entry_choices(dom, cod)?;
        let sizes: Vec<usize> = choices.iter().map(Vec::len).collect();
        let total = sizes.iter().try_fold(1usize, |a, &n| a.checked_mul(n))?;
        Some(
            (0..total)
                .map(|code| {
                    let d = crate::matcat::radix::digits(code, &sizes);
                    let residues = d.iter().zip(&choices).map(|(k, c)| c[*k].clone()).collect();
                    PidHom { dom: dom.clone(), cod: cod.clone(), residues }
                })
                .collect(),
        )
    }

    /// A uniformly random hom, or `None` when there are infinitely many.
    pub fn random(dom: &PidModule, cod: &PidModule, rng: &mut impl rand::Rng) -> Option<PidHom> {
        let choices = Self::entry_choices(dom, cod)?;
        let residues = choices.iter().map(|c| c[rng.random_range(0..c.len())].clone()).collect();
        Some(PidHom { dom: dom.clone(), cod: cod.clone(), residues })
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.cod.dim())
            .map(|j| Value::Array((0..self.dom.dim()).map(|i| Value::String(self.residue(j, i).to_string())).collect()))
            .collect();
        json!({"dom": self.dom.to_json(), "cod": self.cod.to_json(), "residues": rows})
    }

    pub fn from_json(v: &Value) -> Result<Self, PidError> {
        let get = |k: &str| v.get(k).ok_or_else(|| PidError::Json(format!("missing \"{k}\"")));
        let dom = PidModule::from_json(get("dom")?)?;
        let cod = PidModule::from_json(get("cod")?)?;
        let rows = get("residues")?.as_array().ok_or_else(|| PidError::Json("\"residues\" must be an array".into()))?;
        let residues = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| PidError::Json("residue rows must be arrays".into()))?
                    .iter()
                    .map(json_int)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PidHom::new(&dom, &cod, residues)
    }
}

impl fmt::Debug for PidHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({} -> {})[", self.dom, self.cod)?;
        for j in 0..self.cod.dim() {
            if j > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = (0..self.dom.dim()).map(|i| self.residue(j, i).to_string()).collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str("]")
    }
}

/// `g . f`, residue product reduced into the target factors.
pub fn hom_compose(g: &PidHom, f: &PidHom) -> Result<PidHom, PidError> {
    if f.cod != g.dom {
        return Err(PidError::Composition { f_cod: f.cod.to_string(), g_dom: g.dom.to_string() });
    }
    let (n, k, m) = (f.dom.dim(), f.cod.dim(), g.cod.dim());
    let mut residues = Vec::with_capacity(n * m);
    for l in 0..m {
        let t = &g.cod.factors()[l];
        for i in 0..n {
            let sum: BigInt = (0..k).map(|j| g.residue(l, j) * f.residue(j, i)).sum();
            let c = reduce(&sum, t);
            debug_assert!(check_entry(&c, &f.dom.factors()[i], t, l, i).is_ok());
            residues.push(c);
        }
    }
    Ok(PidHom { dom: f.dom.clone(), cod: g.cod.clone(), residues })
}

/// `f (x) g` between the gcd-formula tensor modules of [`tensor_indexed`].
pub fn hom_tensor(f: &PidHom, g: &PidHom) -> PidHom {
    let (dom, dom_pairs) = tensor_indexed(&f.dom, &g.dom);
    let (cod, cod_pairs) = tensor_indexed(&f.cod, &g.cod);
    let mut residues = Vec::with_capacity(dom.dim() * cod.dim());
    for (t, (j, l)) in cod.factors().iter().zip(&cod_pairs) {
        for (i, k) in &dom_pairs {
            residues.push(reduce(&(f.residue(*j, *i) * g.residue(*l, *k)), t));
        }
    }
    PidHom { dom, cod, residues }
}

/// The hom on `doms[0] (x) .. (x) doms[n-1]` sending the generator tuple `t`
/// to `values[t]` (missing tuples go to zero).
///
/// Each value is an element of `target`, given by residues on its factors.
pub fn lift_multilinear(
    values: &BTreeMap<Vec<usize>, Vec<BigInt>>,
    doms: &[&PidModule],
    target: &PidModule,
) -> Result<PidHom, PidError> {
    for (tuple, value) in values {
        if tuple.len() != doms.len() || tuple.iter().zip(doms).any(|(i, m)| *i >= m.dim()) {
            return Err(PidError::Shape(format!("tuple {tuple:?} does not index the factors of the inputs")));
        }
        if value.len() != target.dim() {
            return Err(PidError::Shape(format!("value for {tuple:?} has {} residues, target has {}", value.len(), target.dim())));
        }
        for (position, (i, m)) in tuple.iter().zip(doms).enumerate() {
            let r = &m.factors()[*i];
            for (v, s) in value.iter().zip(target.factors()) {
                let witness = reduce(&(r * v), s);
                if !witness.is_zero() {
                    return Err(PidError::NotMultilinear {
                        tuple: tuple.clone(),
                        position,
                        factor: r.clone(),
                        value: v.clone(),
                        target_factor: s.clone(),
                        witness,
                    });
                }
            }
        }
    }
    let (dom, tuples) = tensor_many(doms);
    let zero = vec![BigInt::zero(); target.dim()];
    let cols: Vec<&Vec<BigInt>> = tuples.iter().map(|t| values.get(t).unwrap_or(&zero)).collect();
    let residues = (0..target.dim())
        .map(|j| cols.iter().map(|v| v[j].clone()).collect())
        .collect();
    PidHom::new(&dom, target, residues)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(f: &[i64]) -> PidModule {
        PidModule::new(f.iter().copied())
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn identity_and_composition() {
        let f = PidHom::from_i64(&m(&[2]), &m(&[4]), &[vec![2]]).unwrap();
        let g = PidHom::from_i64(&m(&[4]), &m(&[2]), &[vec![1]]).unwrap();
        assert_eq!(hom_compose(&PidHom::identity(&m(&[4])), &f).unwrap(), f);
        let gf = hom_compose(&g, &f).unwrap();
        assert!(gf.is_zero());
        // elementwise: 1 |-> 2 |-> 0 in Z/2
        assert_eq!(g.apply(&f.apply(&[b(1)])), vec![b(0)]);
        assert!(matches!(hom_compose(&f, &f), Err(PidError::Composition { .. })));
    }

    #[test]
    fn annihilator_rejects() {
        let err = PidHom::from_i64(&m(&[2]), &m(&[4]), &[vec![1]]).unwrap_err();
        assert!(matches!(err, PidError::Annihilator { .. }));
        // free source accepts anything, free target only accepts zero from torsion
        assert!(PidHom::from_i64(&m(&[0]), &m(&[5]), &[vec![3]]).is_ok());
        assert!(PidHom::from_i64(&m(&[5]), &m(&[0]), &[vec![1]]).is_err());
        assert_eq!(PidHom::from_i64(&m(&[0]), &m(&[5]), &[vec![-2]]).unwrap().residue(0, 0), &b(3));
    }

    #[test]
    fn hom_counts_are_gcds() {
        for (r, s) in [(4, 6), (6, 15), (8, 4), (5, 7)] {
            let n = PidHom::all(&m(&[r]), &m(&[s])).unwrap().len() as i64;
            assert_eq!(n, num_integer::gcd(r, s));
        }
        assert!(PidHom::all(&m(&[0]), &m(&[0])).is_none());
        assert_eq!(PidHom::all(&m(&[3]), &m(&[0])).unwrap().len(), 1);
    }

    #[test]
    fn tensor_of_endomorphisms_worked_example() {
        let f = PidHom::from_i64(&m(&[6]), &m(&[6]), &[vec![5]]).unwrap();
        let g = PidHom::from_i64(&m(&[15]), &m(&[15]), &[vec![2]]).unwrap();
        let fg = hom_tensor(&f, &g);
        assert_eq!(fg.dom(), &m(&[3]));
        assert_eq!(fg.residue(0, 0), &b(1));
        // pure-tensor oracle: x (x) y |-> 5x (x) 2y = 10 xy, and 10 = 1 in Z/3
        for x in 0..6 {
            for y in 0..15 {
                assert_eq!(reduce(&b(5 * x * 2 * y), &b(3)), fg.apply(&[b(x * y % 3)])[0]);
            }
        }
        assert_eq!(hom_tensor(&PidHom::identity(&m(&[2, 3])), &PidHom::identity(&m(&[3, 5]))), PidHom::identity(&m(&[3])));
        assert!(hom_tensor(&f, &PidHom::zero(&m(&[15]), &m(&[15]))).is_zero());
    }

    #[test]
    fn lift_examples() {
        let (z4, z6) = (m(&[4]), m(&[6]));
        let values = BTreeMap::from([(vec![0, 0], vec![b(1)])]);
        let h = lift_multilinear(&values, &[&z4, &z6], &m(&[2])).unwrap();
        assert_eq!(h, PidHom::identity(&m(&[2])));
        // the lifted map reproduces the bilinear map on all 24 pairs
        for x in 0..4 {
            for y in 0..6 {
                assert_eq!(h.apply(&[b(x * y % 2)]), vec![b(x * y % 2)]);
            }
        }
        let err = lift_multilinear(&values, &[&z4, &z6], &m(&[4])).unwrap_err();
        match err {
            PidError::NotMultilinear { tuple, position, witness, .. } => {
                assert_eq!((tuple, position, witness), (vec![0, 0], 1, b(2)));
            }
            other => panic!("{other:?}"),
        }
        assert!(lift_multilinear(&BTreeMap::new(), &[&z4, &z6], &m(&[2])).unwrap().is_zero());
    }

    #[test]
    fn lift_reproduces_random_bilinear_maps() {
        // a bilinear map on generators extends to all elements; compare both sides
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (a, c, t) = (m(&[4, 3]), m(&[2, 9]), m(&[2, 3]));
        for _ in 0..40 {
            let mut values = BTreeMap::new();
            for i in 0..2 {
                for k in 0..2 {
                    // multiples of s / gcd(s, r_i, r'_k) keep every position annihilated
                    let g = crate::algebra::gcd(&a.factors()[i], &c.factors()[k]);
                    let v = t
                        .factors()
                        .iter()
                        .map(|s| s / crate::algebra::gcd(&g, s) * b(rng.random_range(0..6)))
                        .collect();
                    values.insert(vec![i, k], v);
                }
            }
            let h = lift_multilinear(&values, &[&a, &c], &t).unwrap();
            let (_, tuples) = tensor_many(&[&a, &c]);
            for x in a.elements().unwrap() {
                for y in c.elements().unwrap() {
                    let mut expect = [b(0), b(0)];
                    for i in 0..2 {
                        for k in 0..2 {
                            for j in 0..2 {
                                expect[j] += &x[i] * &y[k] * &values[&vec![i, k]][j];
                            }
                        }
                    }
                    let expect: Vec<BigInt> = expect.iter().zip(t.factors()).map(|(e, s)| reduce(e, s)).collect();
                    let image: Vec<BigInt> = tuples.iter().map(|tu| &x[tu[0]] * &y[tu[1]]).collect();
                    assert_eq!(h.apply(&image), expect);
                }
            }
        }
    }

    fn elementwise_agrees(f: &PidHom, g: &PidHom, elems: &[Vec<BigInt>]) -> bool {
        let gf = hom_compose(g, f).unwrap();
        elems.iter().all(|x| gf.apply(x) == g.apply(&f.apply(x)))
    }

    #[test]
    fn composition_matches_functions_torsion_up_to_36() {
        // exhaustive over hom pairs up to order 12; up to 36 exhaustive where
        // the hom sets are small and seeded samples elsewhere
        let small: Vec<PidModule> = crate::pidmod::enumerate_modules(12, 0).into_iter().filter(|x| x.dim() > 0).collect();
        for a in &small {
            let elems = a.elements().unwrap();
            for bm in &small {
                let fs = PidHom::all(a, bm).unwrap();
                for c in &small {
                    for g in PidHom::all(bm, c).unwrap() {
                        for f in &fs {
                            assert!(elementwise_agrees(f, &g, &elems));
                        }
                    }
                }
            }
        }
        let mods: Vec<PidModule> = crate::pidmod::enumerate_modules(36, 0).into_iter().filter(|x| x.dim() > 0).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        for a in &mods {
            let elems = a.elements().unwrap();
            for bm in &mods {
                let fs = if PidHom::count(a, bm).unwrap() <= BigInt::from(64) {
                    PidHom::all(a, bm).unwrap()
                } else {
                    (0..64).map(|_| PidHom::random(a, bm, &mut rng).unwrap()).collect()
                };
                for _ in 0..2 {
                    let c = &mods[rng.random_range(0..mods.len())];
                    let g = PidHom::random(bm, c, &mut rng).unwrap();
                    for f in &fs {
                        assert!(elementwise_agrees(f, &g, &elems));
                    }
                }
            }
        }
    }

    #[test]
    fn every_enumerated_hom_is_additive() {
        for a in crate::pidmod::enumerate_modules(8, 0) {
            for c in crate::pidmod::enumerate_modules(8, 0) {
                let elems = a.elements().unwrap();
                for f in PidHom::all(&a, &c).unwrap() {
                    for x in &elems {
                        for y in &elems {
                            let sum: Vec<BigInt> = x.iter().zip(y).zip(a.factors()).map(|((p, q), r)| reduce(&(p + q), r)).collect();
                            let lhs = f.apply(&sum);
                            let rhs: Vec<BigInt> = f.apply(x).iter().zip(f.apply(y)).zip(c.factors()).map(|((p, q), s)| reduce(&(p + q), s)).collect();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = PidHom::from_i64(&m(&[4, 0]), &m(&[2, 0]), &[vec![1, 1], vec![0, 7]]).unwrap();
        assert_eq!(PidHom::from_json(&f.to_json()).unwrap(), f);
    }
}
