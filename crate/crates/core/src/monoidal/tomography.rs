use std::collections::HashMap;

use serde_json::{json, Value};

use super::{EnumerableSmc, SmcError, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TomographyBounds {
    /// Objects of size at most this are used as family types.
    pub max_size: u64,
    /// Longest family.
    pub max_family: usize,
    /// Cap on families enumerated per type sequence.
    pub max_families: u64,
}

impl TomographyBounds {
    pub fn new(max_size: u64, max_family: usize) -> Self {
        Self { max_size, max_family, max_families: 1 << 22 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TomographyMode {
    /// Sufficient conditions first, family enumeration if they do not decide.
    Auto,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TomographyMethod {
    /// Non-zero maps reach an invertible scalar, and single maps are
    /// separated by states and effects.
    SufficientConditions,
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct TomographyReport<M> {
    pub verdict: Verdict,
    pub method: TomographyMethod,
    pub bounds: TomographyBounds,
    /// `(f_j)` and `(g_j)` with equal product scalars but different tensors.
    pub counterexample: Option<(Vec<M>, Vec<M>)>,
    pub families_checked: u64,
    /// Which sufficient condition failed, when the fast path did not decide.
    pub note: Option<String>,
}

impl<M> TomographyReport<M> {
    pub fn to_json<C: EnumerableSmc<Mor = M>>(&self, smc: &C) -> Value {
        let show = |v: &Vec<M>| v.iter().map(|m| smc.show_mor(m)).collect::<Vec<_>>();
        json!({
            "verdict": self.verdict,
            "method": match self.method {
                TomographyMethod::SufficientConditions => "sufficient-conditions",
                TomographyMethod::Exhaustive => "exhaustive",
            },
            "bounds": {"max_size": self.bounds.max_size, "max_family": self.bounds.max_family},
            "families_checked": self.families_checked,
            "counterexample": self.counterexample.as_ref().map(|(f, g)| json!({"f": show(f), "g": show(g)})),
            "note": self.note,
        })
    }
}

/// Hom-sets, states, effects and scalars of the objects at the bound.
struct Tables<C: EnumerableSmc> {
    types: Vec<(C::Obj, C::Obj)>,
    homs: Vec<Vec<C::Mor>>,
    /// `sig[t][k]`: the scalars `b . f . a` of the `k`-th map of type `t`,
    /// over all states `a` and effects `b`.
    sig: Vec<Vec<Vec<C::Mor>>>,
    scalars: Vec<C::Mor>,
}

fn tables<C: EnumerableSmc>(smc: &C, bound: u64) -> Result<Tables<C>, SmcError> {
    let objects = smc.objects(bound);
    let unit = smc.unit();
    let scalars = smc.homs(&unit, &unit)?;
    let mut states = HashMap::new();
    let mut effects = HashMap::new();
    for o in &objects {
        states.insert(o.clone(), smc.homs(&unit, o)?);
        effects.insert(o.clone(), smc.homs(o, &unit)?);
    }
    let mut types = Vec::new();
    let mut homs = Vec::new();
    let mut sig = Vec::new();
    for a in &objects {
        for b in &objects {
            let hs = smc.homs(a, b)?;
            if hs.is_empty() {
                continue;
            }
            let s: Vec<Vec<C::Mor>> = hs
                .iter()
                .map(|f| {
                    states[a]
                        .iter()
                        .flat_map(|st| {
                            let fa = smc.compose(f, st);
                            effects[b].iter().map(move |ef| (ef, fa.clone()))
                        })
                        .map(|(ef, fa)| smc.compose(ef, &fa))
                        .collect()
                })
                .collect();
            types.push((a.clone(), b.clone()));
            homs.push(hs);
            sig.push(s);
        }
    }
    Ok(Tables { types, homs, sig, scalars })
}

fn is_invertible<C: EnumerableSmc>(smc: &C, scalars: &[C::Mor], s: &C::Mor) -> bool {
    let id = smc.identity(&smc.unit());
    scalars.iter().any(|t| smc.compose(t, s) == id)
}

/// Checks product tomography of `smc` on families of length at most
/// `bounds.max_family` between objects of size at most `bounds.max_size`.
pub fn check_product_tomography<C: EnumerableSmc>(
    smc: &C,
    bounds: TomographyBounds,
    mode: TomographyMode,
) -> Result<TomographyReport<C::Mor>, SmcError> {
    let t = tables(smc, bounds.max_size)?;
    let mut note = None;

    // n = 1 separation is necessary, and with invertible scalars sufficient
    for (ti, hs) in t.homs.iter().enumerate() {
        let mut by_sig: HashMap<&Vec<C::Mor>, usize> = HashMap::new();
        for (k, s) in t.sig[ti].iter().enumerate() {
            if let Some(&prev) = by_sig.get(s) {
                let (f, g) = (vec![hs[prev].clone()], vec![hs[k].clone()]);
                debug_assert!(verify_tomography_counterexample(smc, &f, &g).unwrap_or(false));
                return Ok(TomographyReport {
                    verdict: Verdict::Fail,
                    method: TomographyMethod::Exhaustive,
                    bounds,
                    counterexample: Some((f, g)),
                    families_checked: 1,
                    note: None,
                });
            }
            by_sig.insert(s, k);
        }
    }
    if mode == TomographyMode::Auto {
        let mut reach = true;
        'types: for (ti, (a, b)) in t.types.iter().enumerate() {
            let Some(zero) = smc.zero_morphism(a, b) else {
                reach = false;
                note = Some("instance has no zero morphisms".to_string());
                break;
            };
            for (k, f) in t.homs[ti].iter().enumerate() {
                if *f != zero && !t.sig[ti][k].iter().any(|s| is_invertible(smc, &t.scalars, s)) {
                    reach = false;
                    note = Some(format!("{} reaches no invertible scalar", smc.show_mor(f)));
                    break 'types;
                }
            }
        }
        if reach {
            return Ok(TomographyReport {
                verdict: Verdict::Pass,
                method: TomographyMethod::SufficientConditions,
                bounds,
                counterexample: None,
                families_checked: 0,
                note: None,
            });
        }
    }

    let mut checked: u64 = t.homs.iter().map(|h| h.len() as u64).sum();
    for n in 2..=bounds.max_family {
        let radices = vec![t.types.len(); n];
        let sequences = t.types.len().checked_pow(n as u32).ok_or_else(|| SmcError::TooManyFamilies(format!("type sequences of length {n}")))?;
        for code in 0..sequences {
            let seq = crate::matcat::radix::digits(code, &radices);
            let count: u128 = seq.iter().map(|&ti| t.homs[ti].len() as u128).product();
            if count > bounds.max_families as u128 {
                return Err(SmcError::TooManyFamilies(format!("{count} families of length {n}")));
            }
            if let Some((f, g)) = families_for(smc, &t, &seq, &mut checked) {
                debug_assert!(verify_tomography_counterexample(smc, &f, &g).unwrap_or(false));
                return Ok(TomographyReport {
                    verdict: Verdict::Fail,
                    method: TomographyMethod::Exhaustive,
                    bounds,
                    counterexample: Some((f, g)),
                    families_checked: checked,
                    note,
                });
            }
        }
    }
    Ok(TomographyReport {
        verdict: Verdict::Pass,
        method: TomographyMethod::Exhaustive,
        bounds,
        counterexample: None,
        families_checked: checked,
        note,
    })
}

/// All families with the given type sequence; returns two with equal
/// product signatures and different tensors, if any.
fn families_for<C: EnumerableSmc>(
    smc: &C,
    t: &Tables<C>,
    seq: &[usize],
    checked: &mut u64,
) -> Option<(Vec<C::Mor>, Vec<C::Mor>)> {
    let sizes: Vec<usize> = seq.iter().map(|&ti| t.homs[ti].len()).collect();
    let total: usize = sizes.iter().product();
    let mut seen: HashMap<Vec<C::Mor>, (Vec<usize>, C::Mor)> = HashMap::new();
    for code in 0..total {
        let picks = crate::matcat::radix::digits(code, &sizes);
        let mut sig = vec![smc.identity(&smc.unit())];
        let mut tensor: Option<C::Mor> = None;
        for (&ti, &k) in seq.iter().zip(&picks) {
            let s = &t.sig[ti][k];
            sig = sig.iter().flat_map(|x| s.iter().map(move |y| smc.tensor_mor(x, y))).collect();
            let f = &t.homs[ti][k];
            tensor = Some(match tensor {
                None => f.clone(),
                Some(acc) => smc.tensor_mor(&acc, f),
            });
        }
        let tensor = tensor.expect("non-empty family");
        *checked += 1;
        match seen.get(&sig) {
            Some((prev, ptensor)) if *ptensor != tensor => {
                let fam = |p: &[usize]| seq.iter().zip(p).map(|(&ti, &k)| t.homs[ti][k].clone()).collect::<Vec<_>>();
                return Some((fam(prev), fam(&picks)));
            }
            Some(_) => {}
            None => {
                seen.insert(sig, (picks, tensor));
            }
        }
    }
    None
}

/// Re-checks a counterexample from the definition: the tensors differ and
/// every choice of states and effects gives equal scalar products.
pub fn verify_tomography_counterexample<C: EnumerableSmc>(
    smc: &C,
    fs: &[C::Mor],
    gs: &[C::Mor],
) -> Result<bool, SmcError> {
    if fs.is_empty() || fs.len() != gs.len() {
        return Ok(false);
    }
    for (f, g) in fs.iter().zip(gs) {
        if smc.dom(f) != smc.dom(g) || smc.cod(f) != smc.cod(g) {
            return Ok(false);
        }
    }
    let tensor = |v: &[C::Mor]| v[1..].iter().fold(v[0].clone(), |acc, m| smc.tensor_mor(&acc, m));
    if tensor(fs) == tensor(gs) {
        return Ok(false);
    }
    let unit = smc.unit();
    let mut choices: Vec<(Vec<C::Mor>, Vec<C::Mor>)> = Vec::new();
    for f in fs {
        choices.push((smc.homs(&unit, &smc.dom(f))?, smc.homs(&smc.cod(f), &unit)?));
    }
    let sizes: Vec<usize> = choices.iter().flat_map(|(s, e)| [s.len(), e.len()]).collect();
    if sizes.contains(&0) {
        return Ok(true);
    }
    let total: usize = sizes.iter().product();
    for code in 0..total {
        let d = crate::matcat::radix::digits(code, &sizes);
        let scalar = |v: &[C::Mor]| {
            let mut acc = smc.identity(&unit);
            for (j, m) in v.iter().enumerate() {
                let (a, b) = (&choices[j].0[d[2 * j]], &choices[j].1[d[2 * j + 1]]);
                acc = smc.tensor_mor(&acc, &smc.compose(b, &smc.compose(m, a)));
            }
            acc
        };
        if scalar(fs) != scalar(gs) {
            return Ok(false);
        }
    }
    Ok(true)
}
