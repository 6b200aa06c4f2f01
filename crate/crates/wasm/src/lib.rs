//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON string; errors surface as thrown JS exceptions.

use branchkit::weyl::WeylEnumeration;
use branchkit::{
    branch, shifted_action, string_function, AffineAlgebra, BranchingQuery, Context, Method, QSeries,
    StringFunction, Weight,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Interactive requests stay small enough to answer within a frame or two.
pub const MAX_TRUNC: i64 = 40;
pub const MAX_LENGTH: usize = 24;

fn algebra(s: &str) -> Result<AffineAlgebra, String> {
    s.trim()
        .parse()
        .map(AffineAlgebra::from_id)
        .map_err(|e: branchkit::Error| e.to_string())
}

fn labels(name: &str, s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("{name}: '{t}' is not an integer")))
        .collect()
}

fn check_trunc(trunc: i64) -> Result<(), String> {
    if !(0..=MAX_TRUNC).contains(&trunc) {
        return Err(format!("truncation must lie in 0..={MAX_TRUNC}"));
    }
    Ok(())
}

/// `[[degree, "coefficient"], ...]` over nonzero terms.
fn series_json(s: &QSeries) -> Value {
    s.terms().map(|(d, c)| json!([d, c.to_string()])).collect()
}

/// Every applicable method on one triple, plus whether they all agree.
pub fn branch_all_json(alg: &str, lambda1: &str, lambda2: &str, mu: &str, trunc: i64) -> Result<String, String> {
    let alg = algebra(alg)?;
    check_trunc(trunc)?;
    let q = BranchingQuery::new(
        &alg,
        labels("lambda1", lambda1)?,
        labels("lambda2", lambda2)?,
        labels("mu", mu)?,
        trunc,
    )
    .map_err(|e| e.to_string())?;
    let ctx = Context::new(alg.clone());
    let mut results = Vec::new();
    let mut first: Option<QSeries> = None;
    let mut agree = true;
    for m in Method::all_for(&alg) {
        let r = branch(&ctx, &q, m).map_err(|e| format!("{m}: {e}"))?;
        match &first {
            None => first = Some(r.series.clone()),
            Some(s) => agree &= *s == r.series,
        }
        results.push(json!({ "method": m.name(), "series": series_json(&r.series), "terms_used": r.terms_used }));
    }
    Ok(json!({ "trunc": trunc, "results": results, "agree": agree }).to_string())
}

/// The string function of `L_lambda` at `mu`, normalized to start at degree 0.
pub fn string_function_json(alg: &str, lambda: &str, mu: &str, trunc: i64) -> Result<String, String> {
    let alg = algebra(alg)?;
    check_trunc(trunc)?;
    let lambda = labels("lambda", lambda)?;
    let mu = labels("mu", mu)?;
    alg.check_dominant(&lambda).map_err(|e| e.to_string())?;
    alg.check_arity(&mu).map_err(|e| e.to_string())?;
    let ctx = Context::new(alg.clone());
    let table = ctx.table(&lambda, trunc).map_err(|e| e.to_string())?;
    let v = match string_function(&alg, &table, &mu, trunc).map_err(|e| e.to_string())? {
        StringFunction::Empty { trunc } => json!({ "empty": true, "trunc": trunc }),
        StringFunction::Series { offset, series } => {
            json!({ "empty": false, "trunc": trunc, "offset": offset, "series": series_json(&series) })
        }
    };
    Ok(v.to_string())
}

/// The shifted Weyl orbit of `(labels, dval)` through `max_length`.
pub fn weyl_orbit_json(alg: &str, weight: &str, dval: i64, max_length: usize) -> Result<String, String> {
    let alg = algebra(alg)?;
    if max_length > MAX_LENGTH {
        return Err(format!("length must be at most {MAX_LENGTH}"));
    }
    let w = labels("weight", weight)?;
    alg.check_arity(&w).map_err(|e| e.to_string())?;
    let w = Weight::new(w, dval);
    let mut en = WeylEnumeration::new(&alg);
    en.ensure(max_length);
    let orbit: Vec<Value> = en
        .iter()
        .map(|e| {
            let img = shifted_action(&alg, e, &w);
            json!({ "length": e.length, "word": e.word, "labels": img.labels, "dval": img.dval })
        })
        .collect();
    Ok(json!({ "layer_sizes": en.layer_sizes(), "orbit": orbit }).to_string())
}

#[wasm_bindgen(js_name = branchAll)]
pub fn branch_all(alg: &str, lambda1: &str, lambda2: &str, mu: &str, trunc: i32) -> Result<String, JsError> {
    branch_all_json(alg, lambda1, lambda2, mu, trunc as i64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = stringFunction)]
pub fn string_function_js(alg: &str, lambda: &str, mu: &str, trunc: i32) -> Result<String, JsError> {
    string_function_json(alg, lambda, mu, trunc as i64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = weylOrbit)]
pub fn weyl_orbit(alg: &str, weight: &str, dval: i32, max_length: u32) -> Result<String, JsError> {
    weyl_orbit_json(alg, weight, dval as i64, max_length as usize).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_all_reports_agreement() {
        let v: Value = serde_json::from_str(&branch_all_json("A1~1", "1,0", "1,0", "2,0", 6).unwrap()).unwrap();
        assert_eq!(v["agree"], true);
        assert_eq!(v["results"].as_array().unwrap().len(), 7);
        assert_eq!(v["results"][0]["series"][1], json!([2, "1"]));
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(branch_all_json("A1~1", "1,0", "1,0", "3,0", 6).unwrap_err().contains("level"));
        assert!(branch_all_json("A1~1", "1,x", "1,0", "2,0", 6).is_err());
        assert!(string_function_json("A1~1", "1,0", "0,0,0", 4).is_err());
        assert!(weyl_orbit_json("A1~1", "0,0", 0, MAX_LENGTH + 1).is_err());
    }

    #[test]
    fn string_function_of_the_basic_module() {
        let v: Value = serde_json::from_str(&string_function_json("A1~1", "1,0", "1,0", 5).unwrap()).unwrap();
        // 1/prod(1 - q^n): partition numbers
        let got: Vec<String> = v["series"].as_array().unwrap().iter().map(|p| p[1].as_str().unwrap().into()).collect();
        assert_eq!(got, ["1", "1", "2", "3", "5", "7"]);
    }

    #[test]
    fn orbit_sizes() {
        let v: Value = serde_json::from_str(&weyl_orbit_json("A2~1", "1,0,0", 0, 3).unwrap()).unwrap();
        // (1 + q + q^2) / (1 - q)^2
        assert_eq!(v["layer_sizes"], json!([1, 3, 6, 9]));
        assert_eq!(v["orbit"].as_array().unwrap().len(), 19);
    }
}
