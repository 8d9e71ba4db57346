//! Browser bindings: each export takes the context as strings and returns a
//! JSON document in the same envelope the command-line tool prints.

use msegcalc::arith::{ModContext, Order};
use msegcalc::distinction::classify as classify_irrep;
use msegcalc::dsl::{parse_expr, parse_irrep};
use msegcalc::solver::decompose;
use msegcalc::structure::semisimplify as semisimplify_expr;
use msegcalc::{render, CalcError};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn context(ell: &str, e: &str) -> Result<ModContext, CalcError> {
    let ell = match ell.trim() {
        "" => None,
        s => Some(s.parse::<u64>().map_err(|_| CalcError::InvalidContext(format!("ell = {s:?}")))?),
    };
    let e = match e.trim() {
        "" => None,
        s => Some(s.parse::<Order>()?),
    };
    ModContext::from_flags(ell, e)
}

fn respond(
    command: &str,
    ell: &str,
    e: &str,
    input: &str,
    f: impl FnOnce(&ModContext) -> Result<Value, CalcError>,
) -> String {
    let doc = match context(ell, e).and_then(|ctx| f(&ctx).map(|v| (ctx, v))) {
        Ok((ctx, v)) => render::envelope(command, &ctx, Some(input), v),
        Err(err) => json!({
            "schema": render::SCHEMA,
            "command": command,
            "error": err.to_string(),
            "unknown": err.is_unknown(),
        }),
    };
    doc.to_string()
}

/// Composition factors of an induced product.
#[wasm_bindgen]
pub fn semisimplify(expr: &str, ell: &str, e: &str) -> String {
    respond("semisimplify", ell, e, expr, |ctx| {
        let g = semisimplify_expr(&parse_expr(expr, ctx)?, ctx)?;
        Ok(json!({ "text": render::groth(&g, ctx), "terms": render::groth_json(&g, ctx) }))
    })
}

/// Candidate-elimination decomposition with its trace.
#[wasm_bindgen]
pub fn solve(expr: &str, ell: &str, e: &str) -> String {
    respond("solve", ell, e, expr, |ctx| {
        let r = decompose(&parse_expr(expr, ctx)?, ctx)?;
        Ok(json!({ "text": render::solve(&r, ctx, true), "report": render::solve_json(&r, ctx, true) }))
    })
}

/// Distinction verdict for one irreducible label.
#[wasm_bindgen]
pub fn classify(expr: &str, ell: &str, e: &str) -> String {
    respond("classify", ell, e, expr, |ctx| {
        let v = classify_irrep(&parse_irrep(expr, ctx)?, ctx)?;
        Ok(json!({ "text": render::verdict(&v), "verdict": render::verdict_json(&v) }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn exports_return_envelopes() {
        let v = parse(semisimplify("nu^-1 x 1_1 x nu^1", "", "3"));
        assert_eq!(v["schema"], "msegcalc/1");
        assert_eq!(v["result"]["terms"]["terms"].as_array().map(Vec::len), Some(7));
        let v = parse(solve("Z[1,3] x L[0,1]", "", "3"));
        assert_eq!(v["result"]["text"].as_str().unwrap().lines().nth(1), Some("constituents: Z[0,0; 1,1; 1,3]"));
        let v = parse(classify("St_2", "5", "1"));
        assert_eq!(v["result"]["verdict"]["dimension"], 2);
    }

    #[test]
    fn errors_are_reported() {
        let v = parse(classify("Z[1,", "", "inf"));
        assert!(v["error"].as_str().unwrap().contains("parse error"));
        let v = parse(classify("1_2", "", "1"));
        assert!(v["error"].as_str().unwrap().contains("invalid context"));
        let v = parse(classify("St_3", "5", "1"));
        assert_eq!(v["result"]["verdict"]["status"], "unknown");
    }
}
