use serde::Serialize;
use serde_json::{json, Value};

use super::search::Certifier;
use super::span::{generate_minimal_span, SpanBounds, SpanSmc};
use super::tomography::{check_product_tomography, TomographyBounds, TomographyMode};
use super::{EnumerableSmc, Verdict};

#[derive(Clone, Copy, Debug)]
pub struct FreeSubcatBounds {
    /// Objects up to this size are used for primality and factorisation.
    pub object_bound: u64,
    /// Clause (iii) runs on the span restricted to `tomography.max_size`.
    pub tomography: TomographyBounds,
    pub span_morphisms: usize,
    pub mode: TomographyMode,
}

impl FreeSubcatBounds {
    pub fn new(object_bound: u64, tomography: TomographyBounds) -> Self {
        Self { object_bound, tomography, span_morphisms: 1 << 16, mode: TomographyMode::Auto }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClauseReport {
    pub clause: &'static str,
    pub verdict: Verdict,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeSubcatReport {
    pub verdict: Verdict,
    pub clauses: Vec<ClauseReport>,
    pub object_bound: u64,
    pub tomography_max_size: u64,
    pub tomography_max_family: usize,
}

/// Certifies that `atoms` (with morphisms `generators`, or every host
/// morphism between atoms when `None`) form a tensor-free subcategory.
pub fn check_free_subcategory<C: EnumerableSmc>(
    host: &C,
    atoms: &[C::Obj],
    generators: Option<&[C::Mor]>,
    bounds: FreeSubcatBounds,
) -> FreeSubcatReport {
    let cert = Certifier::new(host, bounds.object_bound);
    let mut clauses = Vec::new();
    let report = |clauses: Vec<ClauseReport>| FreeSubcatReport {
        verdict: clauses.iter().fold(Verdict::Pass, |v, c| v.and(c.verdict)),
        clauses,
        object_bound: bounds.object_bound,
        tomography_max_size: bounds.tomography.max_size,
        tomography_max_family: bounds.tomography.max_family,
    };

    // (i) unit present, every other atom prime
    let unit = host.unit();
    if !atoms.iter().any(|a| cert.is_iso(a, &unit)) {
        clauses.push(ClauseReport { clause: "i", verdict: Verdict::Fail, details: json!({"reason": "the unit is not an atom"}) });
        return report(clauses);
    }
    let mut verdict = Verdict::Pass;
    let mut per_atom = Vec::new();
    for a in atoms.iter().filter(|a| !cert.is_iso(a, &unit)) {
        let p = cert.is_tensor_prime(a);
        verdict = verdict.and(p.verdict());
        per_atom.push(json!({"atom": host.show_obj(a), "primality": cert.primality_json(&p)}));
    }
    clauses.push(ClauseReport { clause: "i", verdict, details: json!({"atoms": per_atom}) });

    // (ii) span objects uniquely factorisable
    let object_span = generate_minimal_span(host, atoms, &[], SpanBounds { max_object_size: bounds.object_bound, max_morphisms: 0 });
    let mut verdict = Verdict::Pass;
    let mut per_object = Vec::new();
    for o in &object_span.objects {
        let f = cert.unique_factorization(o);
        verdict = verdict.and(f.verdict());
        per_object.push(cert.factorization_json(&f));
    }
    clauses.push(ClauseReport { clause: "ii", verdict, details: json!({"objects": per_object}) });

    // (iii) the span is product tomographic
    let small: Vec<C::Obj> = atoms.iter().filter(|a| host.size(a) <= bounds.tomography.max_size).cloned().collect();
    let gens: Result<Vec<C::Mor>, _> = match generators {
        Some(g) => Ok(g.to_vec()),
        None => {
            let mut all = Vec::new();
            let mut failure = None;
            for a in &small {
                for b in &small {
                    match host.homs(a, b) {
                        Ok(h) => all.extend(h),
                        Err(e) => failure = Some(e),
                    }
                }
            }
            failure.map_or(Ok(all), Err)
        }
    };
    let clause3 = match gens {
        Err(e) => ClauseReport { clause: "iii", verdict: Verdict::Indeterminate, details: json!({"reason": e.to_string()}) },
        Ok(gens) => {
            let span = generate_minimal_span(
                host,
                &small,
                &gens,
                SpanBounds { max_object_size: bounds.tomography.max_size, max_morphisms: bounds.span_morphisms },
            );
            if span.truncated {
                ClauseReport {
                    clause: "iii",
                    verdict: Verdict::Indeterminate,
                    details: json!({"reason": format!("span closure exceeded {} morphisms", bounds.span_morphisms)}),
                }
            } else {
                let sub = SpanSmc::new(host, &span);
                match check_product_tomography(&sub, bounds.tomography, bounds.mode) {
                    Ok(r) => ClauseReport {
                        clause: "iii",
                        verdict: r.verdict,
                        details: json!({"span_morphisms": span.morphisms.len(), "tomography": r.to_json(&sub)}),
                    },
                    Err(e) => ClauseReport { clause: "iii", verdict: Verdict::Indeterminate, details: json!({"reason": e.to_string()}) },
                }
            }
        }
    };
    clauses.push(clause3);
    report(clauses)
}
