use std::path::Path;

use serde_json::{json, Map, Value};

use coxcount::chow::{self, dimension_count, tsen_certificate};
use coxcount::count::{
    affine_count, check_ax, check_cw, check_esnault, exceptional_on_hypersurface, seeded_homogeneous, toric_count_orbits,
    toric_count_quotient, CongruenceReport, CountError,
};
use coxcount::fan::lattice::determinant;
use coxcount::fan::{parse_fan, Builtin};
use coxcount::poly::{ax_exponent, parse};
use coxcount::quintic::{batch_seed, random_batch, InstanceRecord, NonzeroPolicy, QuinticInstance};
use coxcount::{Domain, FieldSpec, GradingData, MultiDegree, MultiPoly, PolyError, ToricModel};

use crate::{BatchArgs, CountArgs, EsnaultArgs, InputError, ModelArgs, Outcome};

fn ok(report: Value) -> Result<Outcome, InputError> {
    Ok(Outcome { report, pass: true })
}

fn field(name: &str) -> Result<FieldSpec, InputError> {
    name.parse::<FieldSpec>().map_err(|e| InputError(format!("field `{name}`: {e}")))
}

fn model(args: &ModelArgs) -> Result<ToricModel, InputError> {
    match (&args.fan, &args.fan_file) {
        (Some(name), None) => Ok(ToricModel::builtin(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let fan = parse_fan(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            Ok(ToricModel::from_fan(path.display().to_string(), fan)?)
        }
        _ => Err(InputError("give exactly one of --fan or --fan-file".into())),
    }
}

/// Error message with the offending input and a caret under the position.
fn poly_error(text: &str, e: &PolyError) -> InputError {
    let pos = match e {
        PolyError::SyntaxError { pos, .. } | PolyError::UnknownVariable { pos, .. } | PolyError::CoefficientNotInDomain { pos, .. } => Some(*pos),
        _ => None,
    };
    match pos {
        Some(pos) => {
            let col = text[..pos.min(text.len())].chars().count();
            InputError(format!("{e}\n  {text}\n  {}^", " ".repeat(col)))
        }
        None => InputError(e.to_string()),
    }
}

fn parse_poly(text: &str, nvars: usize, k: &FieldSpec) -> Result<MultiPoly, InputError> {
    parse(text, nvars, &Domain::field(k)).map_err(|e| poly_error(text, &e))
}

fn parse_degree(text: &str) -> Result<MultiDegree, InputError> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Result<Vec<i64>, _> = inner.split(',').map(|s| s.trim().parse::<i64>()).collect();
    parts.map(MultiDegree).map_err(|_| InputError(format!("degree `{text}`: expected integers like 5,2")))
}

fn count_error(e: CountError) -> InputError {
    InputError(e.to_string())
}

fn matrix(m: &[Vec<i64>]) -> Value {
    json!(m)
}

fn format_modulus(k: &FieldSpec) -> String {
    let terms: Vec<String> = k
        .modulus()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| {
            let coeff = if c == 1 && e > 0 { String::new() } else { c.to_string() };
            match e {
                0 => coeff,
                1 => format!("{coeff}{}t", if coeff.is_empty() { "" } else { "*" }),
                _ => format!("{coeff}{}t^{e}", if coeff.is_empty() { "" } else { "*" }),
            }
        })
        .collect();
    terms.join(" + ")
}

pub fn field_info(name: &str) -> Result<Outcome, InputError> {
    let k = field(name)?;
    let mut report = json!({
        "field": k.to_string(),
        "p": k.p(),
        "f": k.degree(),
        "q": k.q(),
        "modulus": format_modulus(&k),
        "generator": k.generator().to_string(),
    });
    if k.q() <= 32 {
        report["elements"] = json!(k.enumerate().iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    ok(report)
}

fn model_summary(m: &ToricModel) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("name".into(), json!(m.name));
    out.insert("rho".into(), json!(m.rho()));
    out.insert("r".into(), json!(m.grading.r));
    out.insert("weights".into(), matrix(&m.grading.weights));
    out.insert("torsion".into(), json!(m.grading.torsion));
    out.insert("exceptional_strata".into(), json!(m.exceptional.strata));
    out
}

pub fn fan_list() -> Result<Outcome, InputError> {
    let examples = ["projective(2)", "projective(4)", "weighted(1,1,1,1,1,2)", "blowup_p2", "blowup_p4_line"];
    let mut rows = Vec::new();
    for name in examples {
        let m = ToricModel::builtin(name)?;
        let mut row = model_summary(&m);
        row.insert("weights".into(), json!(format!("{:?}", m.grading.weights)));
        row.insert("exceptional_strata".into(), json!(format!("{:?}", m.exceptional.strata)));
        row.remove("torsion");
        rows.push(Value::Object(row));
    }
    ok(json!({ "patterns": Builtin::NAMES, "builtins": rows }))
}

pub fn fan_info(args: &ModelArgs, field_name: Option<&str>) -> Result<Outcome, InputError> {
    let m = model(args)?;
    let mut out = model_summary(&m);
    if let Some(fan) = &m.fan {
        out.insert("dim".into(), json!(fan.dim()));
        out.insert("rays".into(), matrix(fan.rays()));
        out.insert("max_cones".into(), json!(fan.max_cones()));
        out.insert("primitive_collections".into(), json!(fan.primitive_collections()));
        out.insert("free_action".into(), json!(acts_freely(&m)));
    }
    if let Some(name) = field_name {
        let k = field(name)?;
        out.insert("field".into(), json!(k.to_string()));
        out.insert("exceptional_points".into(), json!(m.count_exceptional(&k)));
    }
    ok(Value::Object(out))
}

pub fn fan_check(args: &ModelArgs) -> Result<Outcome, InputError> {
    let m = model(args)?;
    if let Some(fan) = &m.fan {
        fan.validate()?;
    }
    m.grading.require_free()?;
    let mut out = model_summary(&m);
    out.insert("valid".into(), json!(true));
    out.insert("effective".into(), json!(m.grading.is_effective()));
    out.insert("free_action".into(), json!(acts_freely(&m)));
    ok(Value::Object(out))
}

/// Whether `G(F_q)` acts freely off the exceptional set: true for fans whose
/// maximal cones are all full-dimensional with unimodular ray matrices.
fn acts_freely(m: &ToricModel) -> bool {
    let Some(fan) = &m.fan else {
        return m.grading.weights.iter().all(|w| w.iter().all(|&a| a.abs() == 1));
    };
    fan.max_cones().iter().all(|cone| {
        cone.len() == fan.dim() && {
            let rows: Vec<Vec<i64>> = cone.iter().map(|&i| fan.rays()[i].clone()).collect();
            determinant(&rows).abs() == 1
        }
    })
}

pub fn count(args: &CountArgs) -> Result<Outcome, InputError> {
    let k = field(&args.field)?;
    let m = model(&args.model)?;
    let p = parse_poly(&args.poly, m.rho(), &k)?;
    let d = match p.multidegree(&m.grading) {
        Ok(d) => Some(d),
        Err(PolyError::ZeroPolynomial) => None,
        Err(e) => return Err(e.into()),
    };
    let n_aff = affine_count(&p, &k).map_err(count_error)?;
    let n_exc = exceptional_on_hypersurface(&p, &m, &k).map_err(count_error)?;
    let (n_toric, method) = if m.grading.torsion.is_empty() {
        if args.orbits || !acts_freely(&m) {
            (Some(toric_count_orbits(&p, &m, &k).map_err(count_error)?), "orbits")
        } else {
            (Some(toric_count_quotient(&p, &m, &k).map_err(count_error)?), "quotient")
        }
    } else {
        (None, "none")
    };
    let q = k.q() as u64;
    let mu = match (&d, m.grading.is_effective()) {
        (Some(d), true) => Some(ax_exponent(&m.grading, d)?.mu),
        _ => None,
    };
    let mut residues = json!({ "mod_p": n_aff % k.p() as u64, "mod_q": n_aff % q });
    if let Some(mu) = mu {
        let modulus = q.checked_pow(mu).unwrap_or(0);
        residues["mod_q_mu"] = if modulus == 0 { Value::Null } else { json!(n_aff % modulus) };
    }
    ok(json!({
        "field": k.to_string(),
        "fan": m.name,
        "poly": p.to_string(),
        "multidegree": d.map(|d| d.0),
        "n_affine": n_aff,
        "n_exceptional": n_exc,
        "n_toric": n_toric,
        "toric_method": method,
        "mu": mu,
        "residues": residues,
    }))
}

#[derive(Debug, Clone, Copy)]
pub enum Graded {
    Cw,
    Ax,
}

fn report_row(r: &CongruenceReport) -> Map<String, Value> {
    let Value::Object(mut row) = serde_json::to_value(r).expect("serializable") else { unreachable!() };
    for key in ["field", "p", "f", "q", "kind"] {
        row.remove(key);
    }
    row
}

pub fn verify_graded(args: &BatchArgs, check: Graded) -> Result<Outcome, InputError> {
    let k = field(&args.field)?;
    let m = model(&args.model)?;
    let g: &GradingData = &m.grading;
    let polys: Vec<(Option<u64>, MultiPoly)> = match (&args.poly, &args.degree, args.batch) {
        (Some(text), _, _) => vec![(None, parse_poly(text, m.rho(), &k)?)],
        (None, degree, Some(n)) => {
            let d = match degree {
                Some(text) => parse_degree(text)?,
                None if m.name == "blowup_p4_line" => MultiDegree(vec![5, 2]),
                None => return Err(InputError("--batch needs --degree for this fan".into())),
            };
            if d.0.len() != g.r {
                return Err(InputError(format!("degree {d} has {} components, grading has {}", d.0.len(), g.r)));
            }
            if coxcount::poly::homogeneous_monomials(g, &d).is_empty() {
                return Err(InputError(format!("no monomials of degree {d}")));
            }
            (0..n).map(|i| batch_seed(args.seed, i)).map(|s| (Some(s), seeded_homogeneous(g, &d, &k, s))).collect()
        }
        _ => return Err(InputError("give --poly, or --batch with --seed".into())),
    };
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for (i, (seed, p)) in polys.iter().enumerate() {
        let r = match check {
            Graded::Cw => check_cw(p, g, &k),
            Graded::Ax => check_ax(p, g, &k),
        }
        .map_err(count_error)?;
        let mut row = report_row(&r);
        row.insert("index".into(), json!(i));
        row.insert("seed".into(), json!(seed));
        if !r.pass {
            failures.push(json!({ "index": i, "seed": seed, "poly": p.to_string(), "report": serde_json::to_value(&r).expect("serializable") }));
        }
        results.push(Value::Object(row));
    }
    let passed = results.len() - failures.len();
    let kind = match check {
        Graded::Cw => "CW",
        Graded::Ax => "Ax",
    };
    Ok(Outcome {
        pass: failures.is_empty(),
        report: json!({
            "check": kind,
            "field": k.to_string(),
            "fan": m.name,
            "seed": args.seed,
            "total": results.len(),
            "passed": passed,
            "failed": failures.len(),
            "results": results,
            "failures": failures,
        }),
    })
}

/// Instances from a JSON file: one record, a list, or an object with
/// `instances` or `failures` (each failure carrying an `instance`).
fn load_instances(path: &Path) -> Result<Vec<QuinticInstance>, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let items: Vec<Value> = match value {
        Value::Array(a) => a,
        Value::Object(ref o) if o.contains_key("instances") => o["instances"].as_array().cloned().unwrap_or_default(),
        Value::Object(ref o) if o.contains_key("failures") => {
            o["failures"].as_array().map(|a| a.iter().filter_map(|f| f.get("instance").cloned()).collect()).unwrap_or_default()
        }
        Value::Object(ref o) if o.contains_key("instance") => vec![o["instance"].clone()],
        other => vec![other],
    };
    items
        .into_iter()
        .map(|v| {
            let rec: InstanceRecord = serde_json::from_value(v)?;
            Ok(QuinticInstance::from_record(&rec)?)
        })
        .collect()
}

pub fn verify_esnault(args: &EsnaultArgs) -> Result<Outcome, InputError> {
    let instances = match (&args.instance, args.batch) {
        (Some(path), _) => load_instances(path)?,
        (None, Some(n)) => {
            let name = args.field.as_deref().ok_or_else(|| InputError("--batch needs --field".into()))?;
            random_batch(&field(name)?, args.seed, n, NonzeroPolicy::AnyNonzero)
        }
        (None, None) => return Err(InputError("give --instance, or --field with --batch".into())),
    };
    if let Some(name) = &args.field {
        let k = field(name)?;
        if let Some(bad) = instances.iter().find(|i| i.field() != &k) {
            return Err(InputError(format!("instance over {} but --field {k}", bad.field())));
        }
    }
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        let r = check_esnault(inst, inst.field()).map_err(count_error)?;
        let mut row = report_row(&r);
        row.insert("index".into(), json!(i));
        row.insert("seed".into(), json!(inst.seed()));
        row.insert("field".into(), json!(inst.field().to_string()));
        if !r.pass {
            failures.push(json!({ "index": i, "instance": inst, "report": serde_json::to_value(&r).expect("serializable") }));
        }
        results.push(Value::Object(row));
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        report: json!({
            "check": "Esnault",
            "seed": args.instance.is_none().then_some(args.seed),
            "total": results.len(),
            "passed": results.len() - failures.len(),
            "failed": failures.len(),
            "results": results,
            "failures": failures,
        }),
    })
}

fn instance_value(inst: &QuinticInstance) -> Value {
    let mut v = serde_json::to_value(inst).expect("serializable");
    v["ambient"] = json!(inst.ambient_quintic().to_string());
    v["strict"] = json!(inst.strict_transform().to_string());
    v
}

pub fn quintic_random(field_name: &str, seed: u64, batch: usize, p3_nonzero: bool) -> Result<Outcome, InputError> {
    let k = field(field_name)?;
    let policy = if p3_nonzero { NonzeroPolicy::P3Nonzero } else { NonzeroPolicy::AnyNonzero };
    let instances: Vec<Value> = random_batch(&k, seed, batch, policy).iter().map(instance_value).collect();
    ok(json!({ "field": k.to_string(), "seed": seed, "instances": instances }))
}

pub fn quintic_show(path: &Path) -> Result<Outcome, InputError> {
    let g = ToricModel::builtin("blowup_p4_line")?.grading;
    let rows: Vec<Value> = load_instances(path)?
        .iter()
        .map(|inst| {
            let d = inst.strict_transform().multidegree(&g).map(|d| d.0).ok();
            json!({
                "field": inst.field().to_string(),
                "seed": inst.seed(),
                "P3": inst.p3(4).to_string(),
                "Q3": inst.q3(4).to_string(),
                "Q4": inst.q4(4).to_string(),
                "ambient": inst.ambient_quintic().to_string(),
                "strict": inst.strict_transform().to_string(),
                "strict_degree": d,
            })
        })
        .collect();
    ok(json!({ "instances": rows }))
}

fn certificate_value(s: u32, c: u32, e: Option<u32>) -> Result<Value, InputError> {
    Ok(serde_json::to_value(tsen_certificate(s, c, e)?).expect("serializable"))
}

pub fn chow_certify(s: u32, c: u32, e: Option<u32>, sweep: Option<u32>) -> Result<Outcome, InputError> {
    let mut report = certificate_value(s, c, e)?;
    let mut readings = vec![("5s+c+1", 5 * s + c + 1), ("6s+c+1", 6 * s + c + 1)];
    if let Some(e) = e {
        readings.push(("override", e));
    }
    report["readings"] = Value::Array(
        readings
            .into_iter()
            .map(|(label, e)| {
                let cert = tsen_certificate(s, c, Some(e))?;
                Ok(json!({ "reading": label, "E": e, "nonzero": cert.nonzero, "gamma": cert.gamma.map(|g| g.to_string()) }))
            })
            .collect::<Result<_, InputError>>()?,
    );
    report["dimension_count"] = serde_json::to_value(dimension_count(s, c, None)).expect("serializable");
    if let Some(s_max) = sweep {
        report["min_section_degree"] = json!(chow::min_section_degree(c, s_max)?);
    }
    ok(report)
}

pub fn chow_sweep(c: u32, s_max: u32) -> Result<Outcome, InputError> {
    let certs = chow::sweep(c, s_max)?;
    let first = certs.iter().position(|t| t.nonzero);
    let monotone = first.is_none_or(|f| certs[f..].iter().all(|t| t.nonzero));
    let results: Vec<Value> = certs.iter().map(|t| serde_json::to_value(t).expect("serializable")).collect();
    ok(json!({
        "c": c,
        "s_max": s_max,
        "min_section_degree": first,
        "monotone": monotone,
        "results": results,
    }))
}
