use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use embedkit_core::cyclotomic::{cyclotomic_poly, factor_cyclotomic_seeded, CycloFactorization};
use embedkit_core::gmodule::{decompose, graded_dims, is_type_t1, AbelianGroup, GModule, DEFAULT_T1_BOUND};
use embedkit_core::modarith::{is_prime, multiplicative_order};
use embedkit_core::oracle::{count_isomorphic, enumerate_g_submodules, DEFAULT_SIZE_BOUND};
use embedkit_core::pm_builder::pm_inclusion;
use embedkit_core::solvability::{
    count_nsext, invariants_of, solvable_field, solvable_prime_power, solvable_squarefree, squarefree_primes,
    CountInput, FieldInvariants, HShape, Representation, RepresentationCheck, SolvabilityReport,
};

use crate::error::{At, CliError};
use crate::job::parse_at;
use crate::source::Source;

/// Result body plus an optional provenance block.
pub(crate) struct Outcome {
    pub result: Value,
    pub provenance: Option<Value>,
}

impl Outcome {
    fn plain(result: Value) -> Self {
        Self { result, provenance: None }
    }
}

fn one() -> u32 {
    1
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct FactorParams {
    p: u64,
    b: u32,
    l: u64,
    #[serde(default = "one")]
    c: u32,
}

pub(crate) fn factor(params: &Value, seed: u64) -> Result<Outcome, CliError> {
    let fp: FactorParams = parse_at(params, "/params")?;
    let phi = cyclotomic_poly(fp.p, fp.b).at("/params")?;
    let factors = factor_cyclotomic_seeded(fp.p, fp.b, fp.l, seed).at("/params")?;
    let degree = multiplicative_order(fp.l, fp.p, fp.b).at("/params")?;
    let mut result = json!({
        "cyclotomic": phi,
        "degree": degree,
        "count": factors.len(),
        "factors": to_json(&factors),
    });
    if fp.c > 1 {
        let fact = CycloFactorization::with_seed(fp.p, fp.b, fp.l, fp.c, seed).at("/params")?;
        let level = fact.level(fp.b).at("/params/b")?;
        result["modulus"] = json!(fact.modulus().value());
        result["liftedFactors"] = to_json(&level.factors_lifted);
    }
    Ok(Outcome::plain(result))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct BuildPmParams {
    source: Source,
    #[serde(default)]
    inclusion: Option<Vec<String>>,
}

pub(crate) fn build_pm(params: &Value) -> Result<Outcome, CliError> {
    let bp: BuildPmParams = parse_at(params, "/params")?;
    let pm = bp.source.pm("/params/source")?;
    let m = pm.module();
    let mut result = json!({
        "p": m.p(),
        "a": m.a(),
        "l": m.l(),
        "c": m.c(),
        "rank": m.rank(),
        "points": pm.points(),
        "permutation": pm.permutation(),
        "coordinateLabels": pm.coordinate_labels(),
        "sigma": m.sigma().to_rows(),
    });
    if let Some(subset) = &bp.inclusion {
        let (sub, cert) = pm_inclusion(&pm, subset).at("/params/inclusion")?;
        result["inclusion"] = json!({
            "subset": subset,
            "basis": sub.basis().rows(),
            "logSize": sub.log_size(),
            "certificate": {
                "generators": cert.generators,
                "imagesInSpan": cert.images_in_span,
                "holds": cert.holds(),
            },
        });
    }
    Ok(Outcome::plain(result))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct SourceParams {
    source: Source,
}

fn module_summary(m: &GModule) -> Value {
    json!({ "p": m.p(), "a": m.a(), "l": m.l(), "c": m.c(), "rank": m.rank(), "logSize": m.log_size() })
}

pub(crate) fn decompose_cmd(params: &Value, seed: u64) -> Result<Outcome, CliError> {
    let sp: SourceParams = parse_at(params, "/params")?;
    let module = sp.source.module(seed, "/params/source")?;
    let d = decompose(&module).at("/params/source")?;
    Ok(Outcome::plain(json!({
        "module": module_summary(&module),
        "trivial": d.trivial,
        "components": to_json(&d.components),
        "graded": to_json(&d.graded),
        "abelianExponents": d.abelian_exponents(),
        "logSize": d.log_size(),
    })))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ExplicitInvariants {
    #[serde(default)]
    l: Option<u64>,
    n0: u64,
    nb: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct SolvableParams {
    #[serde(default)]
    source: Option<Source>,
    #[serde(default)]
    h: Option<HShape>,
    #[serde(default)]
    p: Option<u64>,
    #[serde(default)]
    a: Option<u32>,
    #[serde(default)]
    l: Option<u64>,
    #[serde(default)]
    m: Option<u64>,
    #[serde(default)]
    invariants: Option<Value>,
    #[serde(default)]
    n: Option<u64>,
}

fn required<T: Copy>(v: Option<T>, pointer: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::validation(pointer, "missing field"))
}

fn forbid(present: bool, pointer: &str, why: &str) -> Result<(), CliError> {
    if present {
        Err(CliError::validation(pointer, why))
    } else {
        Ok(())
    }
}

fn field_witness(rep: &Representation) -> Value {
    json!({ "u": rep.unit, "v": rep.counts })
}

fn witness_json(report: &SolvabilityReport) -> Value {
    use embedkit_core::solvability::Criterion;
    if report.checks.iter().any(|c| c.witness.is_none()) {
        return Value::Null;
    }
    fn w(c: &RepresentationCheck) -> &Representation {
        c.witness.as_ref().expect("checked above")
    }
    match report.criterion {
        Criterion::FieldCriterion => field_witness(w(&report.checks[0])),
        Criterion::SquareFree => Value::Array(
            report
                .checks
                .iter()
                .map(|c| {
                    let mut v = field_witness(w(c));
                    v["l"] = json!(c.prime);
                    v
                })
                .collect(),
        ),
        Criterion::PrimePowerSufficient => Value::Array(
            report
                .checks
                .iter()
                .map(|c| json!({ "i": c.exponent, "ePrime": w(c).unit, "eDoublePrime": w(c).counts }))
                .collect(),
        ),
    }
}

fn solvability_outcome(report: &SolvabilityReport, extra: Option<Value>) -> Outcome {
    let witness = witness_json(report);
    let mut result = json!({
        "verdict": report.verdict,
        "criterion": report.criterion,
        "witness": witness,
        "checks": to_json(&report.checks),
        "scope": "some-action",
    });
    if let Some(extra) = extra {
        result["specifiedAction"] = extra;
    }
    let provenance = json!({ "theorem": report.criterion, "witness": witness });
    Outcome {
        result,
        provenance: Some(provenance),
    }
}

fn require_field_module(module: &GModule, l: u64, pointer: &str) -> Result<(), CliError> {
    if module.c() != 1 || module.l() != l {
        return Err(CliError::validation(
            pointer,
            format!(
                "module has coefficients mod {}^{}, but H needs a module over F_{l}",
                module.l(),
                module.c()
            ),
        ));
    }
    Ok(())
}

/// Checks that a cover's torsion order matches the order H requires.
fn require_torsion(source: &Source, m: u64) -> Result<(), CliError> {
    if source.torsion() != m {
        return Err(CliError::validation(
            "/params/source",
            format!("source has torsion order {}, but H requires m = {m}", source.torsion()),
        ));
    }
    Ok(())
}

pub(crate) fn solvable(params: &Value, seed: u64) -> Result<Outcome, CliError> {
    let sp: SolvableParams = parse_at(params, "/params")?;
    if let Some(source) = &sp.source {
        for (present, name) in [
            (sp.p.is_some(), "p"),
            (sp.a.is_some(), "a"),
            (sp.l.is_some(), "l"),
            (sp.m.is_some(), "m"),
            (sp.invariants.is_some(), "invariants"),
            (sp.n.is_some(), "n"),
        ] {
            forbid(present, &format!("/params/{name}"), "not allowed together with `source`; describe H in `h`")?;
        }
        let h = sp
            .h
            .as_ref()
            .ok_or_else(|| CliError::validation("/params/h", "missing field"))?;
        h.validate(source.p()).at("/params/h")?;
        return solvable_from_source(source, h, seed);
    }
    forbid(sp.h.is_some(), "/params/h", "`h` needs a `source` module")?;
    let p = required(sp.p, "/params/p")?;
    let n = required(sp.n, "/params/n")?;
    let invariants = sp
        .invariants
        .as_ref()
        .ok_or_else(|| CliError::validation("/params/invariants", "missing field"))?;
    match (sp.l, sp.m) {
        (Some(l), None) => {
            let ei: ExplicitInvariants = parse_at(invariants, "/params/invariants")?;
            if sp.a.is_some_and(|a| a as usize != ei.nb.len()) {
                return Err(CliError::validation("/params/invariants/nb", "needs one entry per level b = 1..a"));
            }
            if ei.l.is_some_and(|x| x != l) {
                return Err(CliError::validation("/params/invariants/l", "disagrees with `l`"));
            }
            let inv = FieldInvariants::from_dimensions(p, l, ei.n0, &ei.nb).at("/params")?;
            let report = solvable_field(n, &inv).at("/params")?;
            Ok(solvability_outcome(&report, None))
        }
        (None, Some(m)) => {
            let list: Vec<ExplicitInvariants> = parse_at(invariants, "/params/invariants")?;
            let per_prime = list
                .iter()
                .enumerate()
                .map(|(k, ei)| {
                    let ptr = format!("/params/invariants/{k}");
                    let l = required(ei.l, &format!("{ptr}/l"))?;
                    FieldInvariants::from_dimensions(p, l, ei.n0, &ei.nb).at(&ptr)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let report = solvable_squarefree(p, m, n, &per_prime).at("/params")?;
            Ok(solvability_outcome(&report, None))
        }
        _ => Err(CliError::validation("/params", "give exactly one of `l` (field) or `m` (squarefree)")),
    }
}

fn solvable_from_source(source: &Source, h: &HShape, seed: u64) -> Result<Outcome, CliError> {
    match h {
        HShape::Field { l, n, action } => {
            require_torsion(source, *l)?;
            let module = source.module(seed, "/params/source")?;
            require_field_module(&module, *l, "/params/h/l")?;
            let inv = invariants_of(&module).at("/params/source")?;
            let report = solvable_field(*n, &inv).at("/params/h")?;
            let extra = match action {
                Some(act) => {
                    let dim = act.u + inv.degrees().iter().zip(&act.gamma_prime).map(|(d, g)| d * g.iter().sum::<u64>()).sum::<u64>();
                    if dim != *n {
                        return Err(CliError::validation(
                            "/params/h/action",
                            format!("action data describes a module of dimension {dim}, not n = {n}"),
                        ));
                    }
                    let count = count_nsext(&CountInput::from_invariants(&inv, act.u, act.gamma_prime.clone()))
                        .at("/params/h/action")?;
                    Some(json!({ "count": count.value.to_string(), "realizable": count.value > 0u32.into() }))
                }
                None => None,
            };
            Ok(solvability_outcome(&report, extra))
        }
        HShape::SquareFree { m, n } => {
            require_torsion(source, *m)?;
            let primes = squarefree_primes(source.p(), *m).at("/params/h/m")?;
            let per_prime = primes
                .iter()
                .map(|&q| {
                    let module = source.with_torsion(q).module(seed, "/params/source")?;
                    require_field_module(&module, q, "/params/h/m")?;
                    invariants_of(&module).at("/params/source")
                })
                .collect::<Result<Vec<_>, _>>()?;
            let report = solvable_squarefree(source.p(), *m, *n, &per_prime).at("/params/h")?;
            Ok(solvability_outcome(&report, None))
        }
        HShape::PrimePower { l, c, exponents, .. } => {
            let order = l.checked_pow(*c).ok_or_else(|| CliError::validation("/params/h/c", "l^c overflows"))?;
            require_torsion(source, order)?;
            let module = source.module(seed, "/params/source")?;
            let dims = graded_dims(&module).at("/params/source")?;
            let report = solvable_prime_power(*l, exponents, &dims).at("/params/h")?;
            Ok(solvability_outcome(&report, None))
        }
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CountParams {
    #[serde(default)]
    source: Option<Source>,
    #[serde(default)]
    l: Option<u64>,
    #[serde(default)]
    d: Option<Vec<u64>>,
    #[serde(default)]
    gamma: Option<Vec<Vec<u64>>>,
    gamma_prime: Vec<Vec<u64>>,
    #[serde(default)]
    n0: Option<u64>,
    u: u64,
}

pub(crate) fn count(params: &Value, seed: u64) -> Result<Outcome, CliError> {
    let cp: CountParams = parse_at(params, "/params")?;
    let input = match &cp.source {
        Some(source) => {
            for (present, name) in [
                (cp.l.is_some(), "l"),
                (cp.d.is_some(), "d"),
                (cp.gamma.is_some(), "gamma"),
                (cp.n0.is_some(), "n0"),
            ] {
                forbid(present, &format!("/params/{name}"), "computed from `source`; do not give it too")?;
            }
            let module = source.module(seed, "/params/source")?;
            let inv = invariants_of(&module).at("/params/source")?;
            CountInput::from_invariants(&inv, cp.u, cp.gamma_prime.clone())
        }
        None => CountInput {
            l: required(cp.l, "/params/l")?,
            degrees: cp.d.clone().ok_or_else(|| CliError::validation("/params/d", "missing field"))?,
            gamma: cp.gamma.clone().ok_or_else(|| CliError::validation("/params/gamma", "missing field"))?,
            gamma_prime: cp.gamma_prime.clone(),
            n0: required(cp.n0, "/params/n0")?,
            u: cp.u,
        },
    };
    if !is_prime(input.l) {
        return Err(CliError::validation("/params/l", format!("{} is not prime", input.l)));
    }
    let result = count_nsext(&input).at("/params")?;
    let mut body = to_json(&result);
    if let Some(obj) = body.as_object_mut() {
        obj.remove("value");
    }
    body["count"] = json!(result.value.to_string());
    body["input"] = to_json(&input);
    Ok(Outcome {
        result: body,
        provenance: Some(json!({ "theorem": "gaussian-binomial-count" })),
    })
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct OracleParams {
    source: Source,
    h: HShape,
}

pub(crate) fn oracle_count(params: &Value, seed: u64, size_bound: Option<u64>) -> Result<Outcome, CliError> {
    let op: OracleParams = parse_at(params, "/params")?;
    let module = op.source.module(seed, "/params/source")?;
    let bound = size_bound.unwrap_or(DEFAULT_SIZE_BOUND);
    let inventory = enumerate_g_submodules(&module, bound).at("/params/source")?;
    let n = count_isomorphic(&inventory, &op.h).at("/params/h")?;
    Ok(Outcome::plain(json!({
        "count": n.to_string(),
        "totalSubmodules": inventory.total(),
        "isomorphismTypes": inventory.entries.len(),
        "module": module_summary(&module),
        "sizeBound": bound,
    })))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct T1Params {
    group: Vec<u64>,
    elements: Vec<Vec<u64>>,
}

pub(crate) fn t1_check(params: &Value, size_bound: Option<u64>) -> Result<Outcome, CliError> {
    let tp: T1Params = parse_at(params, "/params")?;
    let group = AbelianGroup::new(tp.group.clone()).at("/params/group")?;
    let bound = size_bound.unwrap_or(DEFAULT_T1_BOUND);
    let t1 = is_type_t1(&group, &tp.elements, bound).map_err(|e| {
        let pointer = match e {
            embedkit_core::Error::SizeBound { .. } => "/params/group",
            _ => "/params/elements",
        };
        CliError::Domain { pointer: pointer.into(), source: e }
    })?;
    Ok(Outcome::plain(json!({ "t1": t1, "order": group.order(), "sizeBound": bound })))
}
