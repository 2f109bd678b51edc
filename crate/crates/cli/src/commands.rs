use clap::Args;
use lochar_core::algebra::{check_algebra_laws, smith_normal_form, IntMatrix, ScalarAlgebra};
use lochar_core::lifting::*;
use lochar_core::matcat::radix::{is_prime, prime_word};
use lochar_core::matcat::{MatMorphism, MatObject};
use lochar_core::monoidal::*;
use lochar_core::pidmod::{tensor_modules, tensor_oracle, PidHom, PidModule, Presentation};
use lochar_core::relq::{FiniteSetObj, QRelation};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::input::{parse_algebra, read_json, InputError};
use crate::InstanceArgs;

pub struct Outcome {
    pub verdict: Verdict,
    pub bounds: Value,
    pub result: Value,
}

fn int_json(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn int_matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(int_json).collect())).collect())
}

fn parse_int(location: &str, v: &Value) -> Result<BigInt, InputError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| InputError::new(location, format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| InputError::new(location, format!("{s:?} is not an integer"))),
        _ => Err(InputError::new(location, format!("{v} is not an integer"))),
    }
}

pub fn snf(raw: &str) -> Result<Outcome, InputError> {
    let v = read_json("--matrix", raw)?;
    let rows = v.as_array().ok_or_else(|| InputError::new("--matrix", "expected an array of rows"))?;
    let mut parsed = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let loc = format!("--matrix[{i}]");
        let row = row.as_array().ok_or_else(|| InputError::new(&loc, "row is not an array"))?;
        parsed.push(row.iter().map(|x| parse_int(&loc, x)).collect::<Result<Vec<_>, _>>()?);
    }
    let a = IntMatrix::from_rows(&parsed).map_err(|e| InputError::new("--matrix", e))?;
    let r = smith_normal_form(&a);
    let check = r.verify(&a);
    Ok(Outcome {
        verdict: if check.is_ok() { Verdict::Pass } else { Verdict::Fail },
        bounds: json!({}),
        result: json!({
            "u": int_matrix_json(&r.u),
            "d": int_matrix_json(&r.d),
            "v": int_matrix_json(&r.v),
            "invariant_factors": r.invariant_factors.iter().map(int_json).collect::<Vec<_>>(),
            "rank": r.rank(),
            "verified": check.err().unwrap_or_else(|| "U A V = D, U and V unimodular, diagonal divisibility chain".into()),
        }),
    })
}

fn module_json(m: &PidModule) -> Value {
    json!({"factors": m.factors().iter().map(int_json).collect::<Vec<_>>(), "display": m.to_string()})
}

fn parse_module(location: &str, raw: &str) -> Result<PidModule, InputError> {
    PidModule::from_json(&read_json(location, raw)?).map_err(|e| InputError::new(location, e))
}

pub fn decompose(raw: &str) -> Result<Outcome, InputError> {
    let m = parse_module("--module", raw)?.canonical();
    Ok(Outcome {
        verdict: Verdict::Pass,
        bounds: json!({}),
        result: json!({
            "module": module_json(&m),
            "order": m.order().as_ref().map(int_json),
            "free_rank": m.factors().iter().filter(|r| r.to_i64() == Some(0)).count(),
        }),
    })
}

pub fn tensor(raws: &[String]) -> Result<Outcome, InputError> {
    let modules = raws
        .iter()
        .enumerate()
        .map(|(i, r)| parse_module(&format!("--module[{i}]"), r))
        .collect::<Result<Vec<_>, _>>()?;
    let product = modules.iter().skip(1).fold(modules[0].canonical(), |acc, m| tensor_modules(&acc, m));
    let oracle = modules
        .iter()
        .skip(1)
        .fold(modules[0].canonical(), |acc, m| tensor_oracle(&Presentation::of_module(&acc), &Presentation::of_module(m)));
    let agrees = product.canonical() == oracle.canonical();
    Ok(Outcome {
        verdict: if agrees { Verdict::Pass } else { Verdict::Fail },
        bounds: json!({}),
        result: json!({
            "inputs": modules.iter().map(module_json).collect::<Vec<_>>(),
            "factors": product.factors().iter().map(int_json).collect::<Vec<_>>(),
            "module": product.to_string(),
            "oracle": module_json(&oracle),
            "oracle_agrees": agrees,
        }),
    })
}

/// Object and morphism syntax of each instance.
pub trait CliSmc: EnumerableSmc {
    fn parse_obj(&self, v: &Value) -> Result<Self::Obj, String>;
    fn obj_json(&self, o: &Self::Obj) -> Value;
    fn parse_mor(&self, v: &Value) -> Result<Self::Mor, String>;
    fn mor_json(&self, m: &Self::Mor) -> Value;
    /// Tomography is undecidable by enumeration here.
    fn infinite_homs(&self) -> Option<String> {
        None
    }
}

impl CliSmc for MatSmc {
    fn parse_obj(&self, v: &Value) -> Result<MatObject, String> {
        let n = v.as_u64().ok_or_else(|| format!("expected a dimension, got {v}"))?;
        MatObject::new(n as usize).map_err(|e| e.to_string())
    }

    fn obj_json(&self, o: &MatObject) -> Value {
        json!(o.dim())
    }

    fn parse_mor(&self, v: &Value) -> Result<MatMorphism, String> {
        MatMorphism::from_json(v, Some(&self.algebra)).map_err(|e| e.to_string())
    }

    fn mor_json(&self, m: &MatMorphism) -> Value {
        m.to_json()
    }

    fn infinite_homs(&self) -> Option<String> {
        (!self.algebra.is_finite()).then(|| format!("{} is infinite, so its hom-sets cannot be enumerated", self.algebra))
    }
}

impl CliSmc for RelSmc {
    fn parse_obj(&self, v: &Value) -> Result<FiniteSetObj, String> {
        if let Some(n) = v.as_u64() {
            return FiniteSetObj::ordinal(n as usize).map_err(|e| e.to_string());
        }
        let labels: Vec<String> = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        FiniteSetObj::parse(&labels).map_err(|e| e.to_string())
    }

    fn obj_json(&self, o: &FiniteSetObj) -> Value {
        json!(o.label_strings())
    }

    fn parse_mor(&self, v: &Value) -> Result<QRelation, String> {
        QRelation::from_json(v).map_err(|e| e.to_string())
    }

    fn mor_json(&self, m: &QRelation) -> Value {
        m.to_json()
    }

    fn infinite_homs(&self) -> Option<String> {
        (!self.quantale.is_finite()).then(|| format!("{} is infinite, so its hom-sets cannot be enumerated", self.quantale))
    }
}

impl CliSmc for PidSmc {
    fn parse_obj(&self, v: &Value) -> Result<PidModule, String> {
        PidModule::from_json(v).map_err(|e| e.to_string())
    }

    fn obj_json(&self, o: &PidModule) -> Value {
        module_json(o)
    }

    fn parse_mor(&self, v: &Value) -> Result<PidHom, String> {
        PidHom::from_json(v).map_err(|e| e.to_string())
    }

    fn mor_json(&self, m: &PidHom) -> Value {
        m.to_json()
    }

    fn infinite_homs(&self) -> Option<String> {
        Some("Hom(Z, Z) is infinite, so tomography cannot be enumerated over Mod(Z)".into())
    }
}

impl CliSmc for HomTableSmc {
    fn parse_obj(&self, v: &Value) -> Result<usize, String> {
        let name = v.as_str().ok_or_else(|| format!("expected an object name, got {v}"))?;
        self.object_named(name).ok_or_else(|| format!("unknown object {name:?}"))
    }

    fn obj_json(&self, o: &usize) -> Value {
        json!(self.show_obj(o))
    }

    fn parse_mor(&self, v: &Value) -> Result<usize, String> {
        let name = v.as_str().ok_or_else(|| format!("expected a morphism name, got {v}"))?;
        self.morphism_named(name).ok_or_else(|| format!("unknown morphism {name:?}"))
    }

    fn mor_json(&self, m: &usize) -> Value {
        json!(self.show_mor(m))
    }
}

pub enum Instance {
    Mat(MatSmc),
    Rel(RelSmc),
    Pid(PidSmc),
    Table(HomTableSmc),
}

macro_rules! with_instance {
    ($inst:expr, $smc:ident => $body:expr) => {
        match $inst {
            Instance::Mat($smc) => $body,
            Instance::Rel($smc) => $body,
            Instance::Pid($smc) => $body,
            Instance::Table($smc) => $body,
        }
    };
}

fn instance(args: &InstanceArgs) -> Result<Instance, InputError> {
    let algebra = || match &args.algebra {
        Some(raw) => parse_algebra("--algebra", raw),
        None => Err(InputError::new("--algebra", format!("instance {} needs an algebra", args.instance))),
    };
    match args.instance.as_str() {
        "mat-bool" => Ok(Instance::Mat(MatSmc::new(ScalarAlgebra::boolean()))),
        "rel-bool" => Ok(Instance::Rel(RelSmc::new(ScalarAlgebra::boolean()))),
        "mat" => Ok(Instance::Mat(MatSmc::new(algebra()?))),
        "rel" => {
            let q = algebra()?;
            if !q.is_quantale() {
                return Err(InputError::new("--algebra", format!("{q} is not a quantale")));
            }
            Ok(Instance::Rel(RelSmc::new(q)))
        }
        "pid" => Ok(Instance::Pid(PidSmc::default())),
        "counterexample" => Ok(Instance::Table(HomTableSmc::tomography_counterexample())),
        "hom-table" => {
            let raw = args.table.as_deref().ok_or_else(|| InputError::new("--table", "instance hom-table needs --table"))?;
            let v = read_json("--table", raw)?;
            Ok(Instance::Table(HomTableSmc::from_json(&v).map_err(|e| InputError::new("--table", e))?))
        }
        other => Err(InputError::new("--instance", format!("unknown instance {other:?}"))),
    }
}

fn parse_obj_arg<C: CliSmc>(smc: &C, location: &str, raw: &str) -> Result<C::Obj, InputError> {
    let v = read_json(location, raw).or_else(|_| Ok::<_, InputError>(Value::String(raw.to_string())))?;
    smc.parse_obj(&v).map_err(|e| InputError::new(location, e))
}

pub fn factorize(args: &InstanceArgs, raw: &str, bound: u64) -> Result<Outcome, InputError> {
    with_instance!(&instance(args)?, smc => factorize_in(smc, raw, bound))
}

fn factorize_in<C: CliSmc>(smc: &C, raw: &str, bound: u64) -> Result<Outcome, InputError> {
    let a = parse_obj_arg(smc, "--object", raw)?;
    let cert = Certifier::new(smc, bound);
    let f = cert.unique_factorization(&a);
    let status = match &f.status {
        FactorizationStatus::Unique => json!("unique"),
        FactorizationStatus::NonUnique { second } => {
            json!({"non_unique": second.iter().map(|o| smc.obj_json(o)).collect::<Vec<_>>()})
        }
        FactorizationStatus::NotFactorisable => json!("not-factorisable"),
        FactorizationStatus::Indeterminate(why) => json!({"indeterminate": why}),
    };
    let primes: Vec<Value> = f
        .parts
        .iter()
        .map(|p| json!({"object": smc.obj_json(p), "prime": cert.is_tensor_prime(p).verdict()}))
        .collect();
    Ok(Outcome {
        verdict: f.verdict(),
        bounds: json!({"object_bound": bound}),
        result: json!({
            "instance": smc.name(),
            "object": smc.obj_json(&a),
            "parts": f.parts.iter().map(|o| smc.obj_json(o)).collect::<Vec<_>>(),
            "zero_object": f.zero_object,
            "status": status,
            "prime_certificates": primes,
        }),
    })
}

pub fn divides(args: &InstanceArgs, a: &str, b: &str, strict: bool, bound: u64) -> Result<Outcome, InputError> {
    with_instance!(&instance(args)?, smc => divides_in(smc, a, b, strict, bound))
}

fn divides_in<C: CliSmc>(smc: &C, a: &str, b: &str, strict: bool, bound: u64) -> Result<Outcome, InputError> {
    let (a, b) = (parse_obj_arg(smc, "--a", a)?, parse_obj_arg(smc, "--b", b)?);
    let cert = Certifier::new(smc, bound);
    let (verdict, detail) = match cert.divides(&a, &b, strict) {
        Divisibility::Witness(c) => {
            let reverified = smc.canon(&smc.tensor_obj(&a, &c)) == smc.canon(&b);
            let v = if reverified { Verdict::Pass } else { Verdict::Fail };
            (v, json!({"cofactor": smc.obj_json(&c), "reverified": reverified}))
        }
        Divisibility::None => (Verdict::Fail, json!({"cofactor": null, "search_complete": true})),
        Divisibility::Indeterminate => (Verdict::Indeterminate, json!({"cofactor": null, "search_complete": false})),
    };
    Ok(Outcome {
        verdict,
        bounds: json!({"object_bound": bound}),
        result: json!({
            "instance": smc.name(),
            "a": smc.obj_json(&a),
            "b": smc.obj_json(&b),
            "strict": strict,
            "divides": detail,
        }),
    })
}

pub fn tomography(args: &InstanceArgs, max_dim: u64, max_family: usize, exhaustive: bool, counterexample: Option<&str>) -> Result<Outcome, InputError> {
    let bounds = TomographyBounds::new(max_dim, max_family);
    with_instance!(&instance(args)?, smc => match counterexample {
        Some(raw) => verify_counterexample(smc, raw),
        None => tomography_in(smc, bounds, exhaustive),
    })
}

fn tomography_in<C: CliSmc>(smc: &C, bounds: TomographyBounds, exhaustive: bool) -> Result<Outcome, InputError> {
    if let Some(why) = smc.infinite_homs() {
        return Err(InputError::new("--instance", why));
    }
    let mode = if exhaustive { TomographyMode::Exhaustive } else { TomographyMode::Auto };
    let bounds_json = json!({"max_size": bounds.max_size, "max_family": bounds.max_family, "max_families": bounds.max_families});
    let report = match check_product_tomography(smc, bounds, mode) {
        Ok(r) => r,
        Err(e @ (SmcError::TooManyHoms { .. } | SmcError::TooManyFamilies(_))) => {
            return Ok(Outcome { verdict: Verdict::Indeterminate, bounds: bounds_json, result: json!({"instance": smc.name(), "note": e.to_string()}) });
        }
        Err(e) => return Err(InputError::new("--instance", e)),
    };
    let mut result = report.to_json(smc);
    result["instance"] = json!(smc.name());
    result["mode"] = json!(if exhaustive { "exhaustive" } else { "auto" });
    if let Some((fs, gs)) = &report.counterexample {
        let ok = verify_tomography_counterexample(smc, fs, gs).map_err(|e| InputError::new("--instance", e))?;
        result["counterexample"] = json!({
            "f": fs.iter().map(|m| smc.mor_json(m)).collect::<Vec<_>>(),
            "g": gs.iter().map(|m| smc.mor_json(m)).collect::<Vec<_>>(),
            "reverified": ok,
        });
    }
    Ok(Outcome { verdict: report.verdict, bounds: bounds_json, result })
}

fn verify_counterexample<C: CliSmc>(smc: &C, raw: &str) -> Result<Outcome, InputError> {
    let v = read_json("--counterexample", raw)?;
    let side = |k: &str| -> Result<Vec<C::Mor>, InputError> {
        let loc = format!("--counterexample.{k}");
        let list = v[k].as_array().ok_or_else(|| InputError::new(&loc, "expected an array of morphisms"))?;
        list.iter().map(|m| smc.parse_mor(m).map_err(|e| InputError::new(&loc, e))).collect()
    };
    let (fs, gs) = (side("f")?, side("g")?);
    let ok = verify_tomography_counterexample(smc, &fs, &gs).map_err(|e| InputError::new("--counterexample", e))?;
    // A verified counterexample is a failure of tomography.
    Ok(Outcome {
        verdict: if ok { Verdict::Fail } else { Verdict::Pass },
        bounds: json!({}),
        result: json!({"instance": smc.name(), "counterexample_verified": ok, "families": fs.len()}),
    })
}

pub fn free_subcat(args: &InstanceArgs, raw: &str, bound: u64, max_dim: u64, max_family: usize) -> Result<Outcome, InputError> {
    let bounds = FreeSubcatBounds::new(bound, TomographyBounds::new(max_dim, max_family));
    with_instance!(&instance(args)?, smc => free_subcat_in(smc, raw, bounds))
}

fn free_subcat_in<C: CliSmc>(smc: &C, raw: &str, bounds: FreeSubcatBounds) -> Result<Outcome, InputError> {
    let v = read_json("--atoms", raw)?;
    let list = v.as_array().ok_or_else(|| InputError::new("--atoms", "expected an array of objects"))?;
    let atoms = list
        .iter()
        .enumerate()
        .map(|(i, o)| smc.parse_obj(o).map_err(|e| InputError::new(format!("--atoms[{i}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    let report = check_free_subcategory(smc, &atoms, None, bounds);
    Ok(Outcome {
        verdict: report.verdict,
        bounds: json!({
            "object_bound": bounds.object_bound,
            "tomography_max_size": bounds.tomography.max_size,
            "tomography_max_family": bounds.tomography.max_family,
        }),
        result: json!({"instance": smc.name(), "report": report}),
    })
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    /// identity, swap-conjugation or mat-to-rel; ignored with --spec.
    #[arg(long, default_value = "swap-conjugation")]
    preset: String,
    /// A functor spec JSON on Mat(S) atoms (inline or @file).
    #[arg(long)]
    spec: Option<String>,
    /// Target of --spec: mat or rel.
    #[arg(long, default_value = "mat")]
    target: String,
    #[arg(long, default_value = "boolean")]
    algebra: String,
    /// linear, columnwise or product; defaults to the functor spec's `strategy`
    /// field, then linear.
    #[arg(long)]
    strategy: Option<String>,
    /// Matrices to evaluate the lifted functor on.
    #[arg(long)]
    morphism: Vec<String>,
}

fn atoms_up_to(bound: usize) -> Vec<usize> {
    (2..=bound.max(2)).filter(|&p| is_prime(p)).collect()
}

fn swap_conjugate(m: &MatMorphism) -> MatMorphism {
    let alg = m.algebra();
    let conj = |n: usize| {
        let mut image: Vec<usize> = (0..n).collect();
        // Flip every binary digit of the sorted prime word.
        let word = prime_word(n);
        for (x, slot) in image.iter_mut().enumerate() {
            let mut digits = lochar_core::matcat::radix::digits(x, &word);
            for (d, &p) in digits.iter_mut().zip(&word) {
                if p == 2 {
                    *d = 1 - *d;
                }
            }
            *slot = lochar_core::matcat::radix::flatten(&digits, &word);
        }
        MatMorphism::permutation(alg, &image)
    };
    let (pd, pc) = (conj(m.dom().dim()), conj(m.cod().dim()));
    let inner = lochar_core::matcat::compose(m, &pd.transpose()).expect("sizes match");
    lochar_core::matcat::compose(&pc, &inner).expect("sizes match")
}

fn spec_err(e: LiftError) -> InputError {
    InputError::new("--spec", e)
}

pub fn lift(args: &LiftArgs, bound: usize, seed: u64) -> Result<Outcome, InputError> {
    let alg = parse_algebra("--algebra", &args.algebra)?;
    let mat = MatSmc::new(alg.clone());
    let spec_raw = args.spec.as_deref().map(|raw| read_json("--spec", raw)).transpose()?;
    let from_spec = spec_raw.as_ref().and_then(|v| v.get("strategy")).map(|s| s.as_str().map(str::to_owned).ok_or(()));
    let name = match (&args.strategy, from_spec) {
        (Some(s), _) => s.clone(),
        (None, Some(Ok(s))) => s,
        (None, Some(Err(()))) => return Err(InputError::new("--spec", "\"strategy\" must be a string")),
        (None, None) => "linear".to_string(),
    };
    let location = if args.strategy.is_some() { "--strategy" } else { "--spec" };
    let strategy = match name.as_str() {
        "linear" => Strategy::LinearExtension(Accumulation::Entrywise),
        "columnwise" => Strategy::LinearExtension(Accumulation::Columnwise),
        "product" => Strategy::ProductSpan {
            span: SpanBounds { max_object_size: bound as u64, max_morphisms: 1 << 14 },
            tomography: TomographyBounds::new(bound.min(3) as u64, 2),
        },
        other => return Err(InputError::new(location, format!("unknown strategy {other:?}"))),
    };
    let atoms = atoms_up_to(bound);
    let linear = [CAP_LINEAR.to_string()];
    let target = if args.spec.is_some() { args.target.as_str() } else if args.preset == "mat-to-rel" { "rel" } else { "mat" };
    let check = CheckBounds { seed, ..CheckBounds::new(bound) };
    match target {
        "mat" => {
            let spec = match (&args.spec, args.preset.as_str()) {
                (Some(_), _) => FunctorSpec::from_json(&mat, &mat, spec_raw.as_ref().expect("read above")).map_err(spec_err)?,
                (None, "identity") => FunctorSpec::from_rule(&mat, &mat, atoms.clone(), |p| mat.atom(p), |f| Ok(f.clone()), FunctorSpec::<MatSmc, MatSmc>::standard_generators(&mat, &atoms), linear).map_err(spec_err)?,
                (None, "swap-conjugation") => FunctorSpec::from_rule(&mat, &mat, atoms.clone(), |p| mat.atom(p), |f| Ok(swap_conjugate(f)), FunctorSpec::<MatSmc, MatSmc>::atom_generators(&mat, &atoms, 1 << 12), linear).map_err(spec_err)?,
                (None, other) => return Err(InputError::new("--preset", format!("unknown preset {other:?}"))),
            };
            run_lift(&mat, &mat, spec, (&name, strategy), &args.morphism, check)
        }
        "rel" => {
            if !alg.is_quantale() {
                return Err(InputError::new("--algebra", format!("{alg} is not a quantale")));
            }
            let rel = RelSmc::new(alg);
            let spec = match &spec_raw {
                Some(v) => FunctorSpec::from_json(&mat, &rel, v).map_err(spec_err)?,
                None => AtomIso::by_matrices(&mat, &rel, &atoms, 1 << 12).map_err(spec_err)?.forward,
            };
            run_lift(&mat, &rel, spec, (&name, strategy), &args.morphism, check)
        }
        other => Err(InputError::new("--target", format!("unknown target {other:?}"))),
    }
}

fn run_lift<D: LinearSmc>(
    mat: &MatSmc,
    target: &D,
    spec: FunctorSpec<MatSmc, D>,
    (name, strategy): (&str, Strategy),
    morphisms: &[String],
    check: CheckBounds,
) -> Result<Outcome, InputError> {
    let mut spec_json = spec.to_json(mat, target);
    spec_json["strategy"] = json!(name);
    let f = match lift_functor(mat, target, spec, strategy) {
        Ok(f) => f,
        Err(e @ (LiftError::Precondition(_) | LiftError::NotWellDefined(_))) => {
            return Ok(Outcome {
                verdict: Verdict::Fail,
                bounds: json!({"max_dim": check.max_dim}),
                result: json!({"spec": spec_json, "precondition_failed": e.to_string()}),
            });
        }
        Err(e) => return Err(spec_err(e)),
    };
    let mut evaluations = Vec::new();
    for (i, raw) in morphisms.iter().enumerate() {
        let loc = format!("--morphism[{i}]");
        let m = mat.parse_mor(&read_json(&loc, raw)?).map_err(|e| InputError::new(&loc, e))?;
        let image = f.map_mor(&m).map_err(|e| InputError::new(&loc, e))?;
        evaluations.push(json!({"input": m.to_json(), "image": target.mor_to_json(&image)}));
    }
    let monoidal = check_monoidal(&f, check);
    Ok(Outcome {
        verdict: monoidal.verdict,
        bounds: json!({"max_dim": check.max_dim, "exhaustive_limit": check.exhaustive_limit, "samples": check.samples}),
        result: json!({
            "source": mat.name(),
            "target": target.name(),
            "strategy": format!("{strategy:?}"),
            "spec": spec_json,
            "preconditions": f.preconditions,
            "evaluations": evaluations,
            "monoidal": monoidal,
        }),
    })
}

pub fn retraction(algebra: &str, bound: usize, max_dim: usize, seed: u64) -> Result<Outcome, InputError> {
    let alg = parse_algebra("--algebra", algebra)?;
    let r = build_retraction(&alg, bound);
    let coherence = r.coherence();
    let (ret, inj) = (r.retraction(), r.injection());
    let check = CheckBounds { seed, ..CheckBounds::new(max_dim) };
    let id = IdentityFunctor { smc: &r.mat };
    let round = Composite { first: &ret, second: &inj };
    let witness = check_uniqueness(&id, &round, check).map_err(|e| InputError::new("--algebra", e))?;
    let ret_laws = check_monoidal(&ret, check);
    let inj_laws = check_monoidal(&inj, check);
    let verdict = [coherence.verdict(), witness.verdict, ret_laws.verdict, inj_laws.verdict].into_iter().fold(Verdict::Pass, Verdict::and);
    let words: Vec<Value> = (1..=bound).map(|n| json!({"dim": n, "word": ret.map_obj(&MatObject::new(n).expect("positive"))})).collect();
    Ok(Outcome {
        verdict,
        bounds: json!({"coherence_bound": bound, "max_dim": max_dim}),
        result: json!({
            "algebra": alg.to_string(),
            "coherence": coherence,
            "retraction_objects": words,
            "eta_is_identity": r.eta.iter().all(|e| *e == MatMorphism::identity(&alg, e.dom().dim())),
            "round_trip": {
                "verdict": witness.verdict,
                "equal_on_span": witness.equal_on_span,
                "components": witness.components.len(),
                "squares": witness.squares.len(),
                "inverses": witness.inverses,
                "monoidal": witness.monoidal,
            },
            "retraction_laws": ret_laws,
            "injection_laws": inj_laws,
        }),
    })
}

pub fn equiv(pair: &str, algebra: &str, bound: usize, certify: bool, seed: u64) -> Result<Outcome, InputError> {
    let alg = parse_algebra("--algebra", algebra)?;
    let atoms = atoms_up_to(bound);
    let check = CheckBounds { seed, ..CheckBounds::new(bound) };
    let certify = certify.then(|| FreeSubcatBounds::new(bound as u64, TomographyBounds::new(2, 2)));
    let mat = MatSmc::new(alg.clone());
    let err = |e: LiftError| InputError::new("--pair", e);
    let (verdict, result) = match pair {
        "mat-rel" => {
            if !alg.is_quantale() {
                return Err(InputError::new("--algebra", format!("{alg} is not a quantale")));
            }
            let rel = RelSmc::new(alg.clone());
            let xi = AtomIso::by_matrices(&mat, &rel, &atoms, 1 << 12).map_err(err)?;
            let e = construct_equivalence(&mat, &rel, xi, check, certify).map_err(err)?;
            (e.verdict, e.to_json())
        }
        "mat-span" => {
            let span = MatSpan::new(alg.clone());
            let xi = AtomIso::by_matrices(&mat, &span, &atoms, 1 << 12).map_err(err)?;
            let e = construct_equivalence(&mat, &span, xi, check, certify).map_err(err)?;
            (e.verdict, e.to_json())
        }
        "mat-mat" => {
            let xi = AtomIso::by_matrices(&mat, &mat, &atoms, 1 << 12).map_err(err)?;
            let e = construct_equivalence(&mat, &mat, xi, check, certify).map_err(err)?;
            (e.verdict, e.to_json())
        }
        other => return Err(InputError::new("--pair", format!("unknown pair {other:?}"))),
    };
    Ok(Outcome {
        verdict,
        bounds: json!({"max_dim": bound, "atoms": atoms, "exhaustive_limit": check.exhaustive_limit, "samples": check.samples}),
        result: json!({"pair": pair, "algebra": alg.to_string(), "equivalence": result}),
    })
}

pub fn laws(algebra: &str, budget: Option<u64>, seed: u64) -> Result<Outcome, InputError> {
    let alg = parse_algebra("--algebra", algebra)?;
    let budget = budget.unwrap_or_else(|| alg.carrier_size().map_or(4096, |n| (n as u64).pow(3)));
    let report = check_algebra_laws(&alg, budget, seed).map_err(|e| InputError::new("--algebra", e))?;
    Ok(Outcome {
        verdict: if report.all_passed() { Verdict::Pass } else { Verdict::Fail },
        bounds: json!({"budget": budget}),
        result: json!({"algebra": alg.descriptor(), "report": report}),
    })
}
