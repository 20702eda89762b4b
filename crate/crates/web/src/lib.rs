//! Browser bindings. Each export returns a JSON string, either
//! `{"ok": ...}` or `{"error": "..."}`, so the page never has to catch.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use embedkit_core::cyclotomic::{cyclotomic_poly, factor_cyclotomic, CycloFactorization};
use embedkit_core::gmodule::decompose;
use embedkit_core::pm_builder::synthetic_module;
use embedkit_core::solvability::{count_nsext, invariants_of, CountInput};

fn wrap(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn factor_value(p: u64, b: u32, l: u64, c: u32) -> Result<Value, String> {
    let phi = cyclotomic_poly(p, b).map_err(|e| e.to_string())?;
    let factors = factor_cyclotomic(p, b, l).map_err(|e| e.to_string())?;
    let mut out = json!({ "cyclotomic": phi, "factors": factors.iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>() });
    if c > 1 {
        let fact = CycloFactorization::new(p, b, l, c).map_err(|e| e.to_string())?;
        let level = fact.level(b).map_err(|e| e.to_string())?;
        out["lifted"] = json!(level.factors_lifted.iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>());
        out["modulus"] = json!(fact.modulus().value());
    }
    Ok(out)
}

/// Factors of the `p^b`-th cyclotomic polynomial mod `l`, lifted mod `l^c`.
#[wasm_bindgen]
pub fn factor(p: u32, b: u32, l: u32, c: u32) -> String {
    wrap(factor_value(p.into(), b, l.into(), c))
}

fn decompose_value(p: u64, a: u32, orbit_sizes: &[u64], m: u64) -> Result<Value, String> {
    let pm = synthetic_module(p, a, orbit_sizes, m).map_err(|e| e.to_string())?;
    let d = decompose(pm.module()).map_err(|e| e.to_string())?;
    let mut out = json!({
        "rank": pm.module().rank(),
        "trivial": d.trivial,
        "components": d.components.iter().map(|s| json!({
            "b": s.b, "j": s.j, "degree": s.degree, "multiplicities": s.multiplicities,
        })).collect::<Vec<_>>(),
        "abelianExponents": d.abelian_exponents(),
    });
    if pm.module().c() == 1 {
        let inv = invariants_of(pm.module()).map_err(|e| e.to_string())?;
        out["n0"] = json!(inv.n0);
        out["gamma"] = json!(inv.gammas());
        out["degrees"] = json!(inv.degrees());
    }
    Ok(out)
}

/// Decomposition of the degree-zero divisor module of a synthetic cover whose
/// punctures form orbits of the given sizes.
#[wasm_bindgen]
pub fn decompose_synthetic(p: u32, a: u32, orbit_sizes: &[u32], m: u32) -> String {
    let sizes: Vec<u64> = orbit_sizes.iter().map(|&s| s.into()).collect();
    wrap(decompose_value(p.into(), a, &sizes, m.into()))
}

fn count_value(input: &str) -> Result<Value, String> {
    let input: CountInput = serde_json::from_str(input).map_err(|e| format!("bad input: {e}"))?;
    let count = count_nsext(&input).map_err(|e| e.to_string())?;
    Ok(json!({
        "count": count.value.to_string(),
        "boundViolation": count.bound_violation,
        "factors": serde_json::to_value(&count.factors).map_err(|e| e.to_string())?,
    }))
}

/// Number of submodules of a given shape; `input` is a JSON object with
/// `l`, `degrees`, `gamma`, `gammaPrime`, `n0` and `u`.
#[wasm_bindgen]
pub fn count_submodules(input: &str) -> String {
    wrap(count_value(input))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn factor_export() {
        let v = parse(factor(7, 1, 2, 1));
        assert_eq!(v["ok"]["factors"].as_array().unwrap().len(), 2);
        let v = parse(factor(3, 1, 7, 2));
        assert_eq!(v["ok"]["modulus"], 49);
        assert_eq!(v["ok"]["lifted"], json!([[31, 1], [19, 1]]));
        assert!(parse(factor(3, 1, 3, 1))["error"].is_string());
    }

    #[test]
    fn decompose_export() {
        let v = parse(decompose_synthetic(3, 1, &[1, 3], 2));
        assert_eq!(v["ok"]["rank"], 3);
        assert_eq!(v["ok"]["n0"], 1);
        assert_eq!(v["ok"]["gamma"], json!([[1]]));
        assert!(parse(decompose_synthetic(3, 1, &[2], 2))["error"].is_string());
    }

    #[test]
    fn count_export() {
        let v = parse(count_submodules(
            r#"{"l":2,"degrees":[2],"gamma":[[2]],"gammaPrime":[[1]],"n0":0,"u":0}"#,
        ));
        assert_eq!(v["ok"]["count"], "5");
        assert!(parse(count_submodules("{}"))["error"].is_string());
    }
}
