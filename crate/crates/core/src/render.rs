//! Canonical text and JSON rendering.
//!
//! Text output uses the expression language, so every rendered label parses
//! back to itself.

use serde_json::{json, Value};

use crate::arith::{divides_f, HalfInt, ModContext};
use crate::calculus::JacquetSum;
use crate::distinction::DistinctionVerdict;
use crate::reps::named::{self, match_twist};
use crate::reps::{Expr, Groth, Irrep, LeviTuple};
use crate::segments::{Multiseg, Tag};
use crate::solver::{Candidate, Decomposition, SolveReport};
use crate::structure::{FullDerivative, StructureReport};

pub const SCHEMA: &str = "msegcalc/1";

fn twist_suffix(x: HalfInt, t: &Tag) -> String {
    let mut s = String::new();
    if x != HalfInt::ZERO {
        s.push_str(&format!(".nu^{x}"));
    }
    s.push_str(&t.to_string());
    s
}

/// The shortest named form of a label.
pub fn irrep(x: &Irrep, ctx: &ModContext) -> String {
    let n = x.degree();
    if n == 0 {
        return "1_0".into();
    }
    if let Some(c) = x.as_character() {
        let x0 = ctx.reduce(c.exp);
        let base = match (x0 == HalfInt::ZERO, c.deg) {
            (true, d) => format!("1_{d}"),
            (false, 1) => format!("nu^{x0}"),
            (false, d) => format!("nu^{x0}_{d}"),
        };
        return base + &c.tag.to_string();
    }
    let mut patterns: Vec<(String, Multiseg)> = Vec::new();
    if n >= 2 {
        patterns.push((format!("St_{n}"), named::st_multiseg(n)));
    }
    if n >= 3 {
        let pi = named::pi_multiseg(n);
        patterns.push((format!("Pi_{n}"), pi.clone()));
        let dual = if divides_f(ctx.f(), n) { format!("Pi_{n}^*") } else { format!("Lambda_{n}^*") };
        patterns.push((dual, pi.contragredient()));
    }
    if n >= 4 {
        patterns.push((format!("Phi_{n}"), named::phi_multiseg(n)));
        patterns.push((format!("Psi_{n}"), named::psi_multiseg(n)));
    }
    for (name, m) in patterns {
        if let Some((s, t)) = match_twist(x, &m, ctx) {
            return name + &twist_suffix(s, &t);
        }
    }
    x.to_string()
}

/// A product, factors joined by ` x `.
pub fn expr(e: &Expr, ctx: &ModContext) -> String {
    match e {
        Expr::Irr(x) => irrep(x, ctx),
        Expr::Prod(fs) => fs.iter().map(|f| expr(f, ctx)).collect::<Vec<_>>().join(" x "),
    }
}

fn term(e: &Expr, ctx: &ModContext) -> String {
    match e {
        Expr::Irr(x) => irrep(x, ctx),
        Expr::Prod(_) => format!("({})", expr(e, ctx)),
    }
}

fn sorted<K: Ord + Clone>(g: &Groth<K>, name: impl Fn(&K) -> String) -> Vec<(String, u64)> {
    let mut v: Vec<(String, u64)> = g.iter().map(|(k, m)| (name(k), m)).collect();
    v.sort();
    v
}

fn sum_text(terms: Vec<(String, u64)>, lower_bound: bool) -> String {
    let mut s = if terms.is_empty() {
        "0".to_string()
    } else {
        terms
            .into_iter()
            .map(|(t, m)| if m == 1 { t } else { format!("{m} {t}") })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    if lower_bound {
        s.push_str("  [lower bound]");
    }
    s
}

/// A formal sum, terms in lexicographic order of their names.
pub fn groth(g: &Groth<Expr>, ctx: &ModContext) -> String {
    sum_text(sorted(g, |k| term(k, ctx)), g.is_lower_bound())
}

pub fn levi(t: &LeviTuple, ctx: &ModContext) -> String {
    t.iter().map(|x| term(x, ctx)).collect::<Vec<_>>().join(" (x) ")
}

pub fn jacquet(j: &JacquetSum, ctx: &ModContext) -> String {
    sum_text(sorted(j, |k| levi(k, ctx)), j.is_lower_bound())
}

pub fn verdict(v: &DistinctionVerdict) -> String {
    match v.dimension {
        Some(d) => format!("{} (d = {d}): {}", v.status, v.certificate),
        None => format!("{}: {}", v.status, v.certificate),
    }
}

pub fn structure(r: &StructureReport, ctx: &ModContext) -> String {
    let mut out = vec![
        format!("product: {}", expr(&r.product, ctx)),
        format!("length: {}", r.length),
        format!("constituents: {}", groth(&r.constituents, ctx)),
    ];
    let opt = |x: &Option<Irrep>| x.as_ref().map_or("unknown".to_string(), |x| irrep(x, ctx));
    out.push(format!("socle: {}", opt(&r.socle)));
    out.push(format!("cosocle: {}", opt(&r.cosocle)));
    if let Some(seq) = &r.sequence {
        let s: Vec<String> = seq.iter().map(|x| irrep(x, ctx)).collect();
        out.push(format!("series (bottom up): {}", s.join(" | ")));
    }
    let tri = |b: Option<bool>| b.map_or("unknown".to_string(), |b| b.to_string());
    out.push(format!("indecomposable: {}", tri(r.indecomposable)));
    out.push(format!("semisimple: {}", tri(r.semisimple)));
    if let Some(f) = &r.finite_reduction {
        out.push(format!("finite reduction: {f}"));
    }
    out.join("\n")
}

fn decomposition_text(d: &Decomposition, ctx: &ModContext) -> Vec<String> {
    match d {
        Decomposition::Exact(g) => vec![format!("constituents: {}", groth(g, ctx))],
        Decomposition::Partial(p) => {
            let mut out = vec![format!("known: {}", groth(&p.known, ctx))];
            for (x, lo, hi) in &p.intervals {
                let hi = hi.map_or("?".to_string(), |h| h.to_string());
                out.push(format!("  {}: [{lo}, {hi}]", irrep(x, ctx)));
            }
            out
        }
    }
}

fn candidate_line(c: &Candidate, ctx: &ModContext) -> String {
    let mut s = format!("  {}  {}", irrep(&c.label, ctx), c.status);
    for ch in &c.checks {
        let found = ch.found.map_or("?".to_string(), |f| f.to_string());
        s.push_str(&format!("\n      r_{} {}: found {found}, needs {}", ch.beta, ch.tuple, ch.needed));
    }
    s
}

pub fn solve(r: &SolveReport, ctx: &ModContext, trace: bool) -> String {
    let mut out = vec![format!("product: {}", expr(&r.product, ctx))];
    out.extend(decomposition_text(&r.result, ctx));
    out.push(format!("exact: {}", r.result.exact().is_some()));
    if trace {
        out.push(format!("full Jacquet length: {}", r.full_jacquet_length));
        for set in &r.sets {
            out.push(format!("candidates for {} (baseline {}):", expr(&set.product, ctx), irrep(&set.baseline, ctx)));
            out.extend(set.candidates.iter().map(|c| candidate_line(c, ctx)));
        }
        out.push("certificate:".into());
        out.extend(r.certificate.iter().map(|c| format!("  {c}")));
    }
    out.join("\n")
}

pub fn derivative(d: &FullDerivative, ctx: &ModContext) -> String {
    format!("{}  ({})", groth(&d.value, ctx), d.bound)
}

// ---------------------------------------------------------------------------
// JSON

/// The top-level object every JSON answer is wrapped in.
pub fn envelope(command: &str, ctx: &ModContext, input: Option<&str>, result: Value) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "command": command,
        "context": { "ell": ctx.ell(), "e": ctx.e().to_string(), "f": ctx.f() },
        "result": result,
    });
    if let Some(i) = input {
        v["input"] = json!(i);
    }
    v
}

pub fn groth_json(g: &Groth<Expr>, ctx: &ModContext) -> Value {
    let terms: Vec<Value> = sorted(g, |k| term(k, ctx))
        .into_iter()
        .map(|(t, m)| json!({ "term": t, "multiplicity": m }))
        .collect();
    json!({ "terms": terms, "lower_bound": g.is_lower_bound(), "text": groth(g, ctx) })
}

pub fn jacquet_json(j: &JacquetSum, ctx: &ModContext) -> Value {
    let terms: Vec<Value> = sorted(j, |k| levi(k, ctx))
        .into_iter()
        .map(|(t, m)| json!({ "tuple": t, "multiplicity": m }))
        .collect();
    json!({ "terms": terms, "total": j.total(), "lower_bound": j.is_lower_bound() })
}

pub fn verdict_json(v: &DistinctionVerdict) -> Value {
    let mut out = json!({ "status": v.status.to_string(), "certificate": v.certificate });
    if let Some(d) = v.dimension {
        out["dimension"] = json!(d);
    }
    out
}

pub fn structure_json(r: &StructureReport, ctx: &ModContext) -> Value {
    let opt = |x: &Option<Irrep>| x.as_ref().map(|x| irrep(x, ctx));
    json!({
        "product": expr(&r.product, ctx),
        "length": r.length.to_string(),
        "constituents": groth_json(&r.constituents, ctx),
        "socle": opt(&r.socle),
        "cosocle": opt(&r.cosocle),
        "series": r.sequence.as_ref().map(|s| s.iter().map(|x| irrep(x, ctx)).collect::<Vec<_>>()),
        "indecomposable": r.indecomposable,
        "semisimple": r.semisimple,
        "finite_reduction": r.finite_reduction,
    })
}

fn candidate_json(c: &Candidate, ctx: &ModContext) -> Value {
    let checks: Vec<Value> = c
        .checks
        .iter()
        .map(|ch| json!({ "beta": ch.beta.to_string(), "tuple": ch.tuple, "found": ch.found, "needed": ch.needed }))
        .collect();
    json!({
        "label": irrep(&c.label, ctx),
        "status": c.status.to_string(),
        "present": c.present,
        "lower": c.lower,
        "upper": c.upper,
        "checks": checks,
    })
}

pub fn solve_json(r: &SolveReport, ctx: &ModContext, trace: bool) -> Value {
    let mut v = match &r.result {
        Decomposition::Exact(g) => json!({ "exact": true, "constituents": groth_json(g, ctx) }),
        Decomposition::Partial(p) => {
            let iv: Vec<Value> = p
                .intervals
                .iter()
                .map(|(x, lo, hi)| json!({ "label": irrep(x, ctx), "lower": lo, "upper": hi }))
                .collect();
            json!({ "exact": false, "known": groth_json(&p.known, ctx), "intervals": iv })
        }
    };
    v["product"] = json!(expr(&r.product, ctx));
    if trace {
        let sets: Vec<Value> = r
            .sets
            .iter()
            .map(|s| {
                json!({
                    "product": expr(&s.product, ctx),
                    "baseline": irrep(&s.baseline, ctx),
                    "candidates": s.candidates.iter().map(|c| candidate_json(c, ctx)).collect::<Vec<_>>(),
                })
            })
            .collect();
        v["trace"] = json!({
            "full_jacquet_length": r.full_jacquet_length,
            "candidate_sets": sets,
            "certificate": r.certificate,
        });
    }
    v
}

pub fn derivative_json(d: &FullDerivative, ctx: &ModContext) -> Value {
    json!({ "value": groth_json(&d.value, ctx), "bound": d.bound.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_irrep;
    use crate::reps::named::*;

    #[test]
    fn names() {
        let e3 = ModContext::with_e(3);
        assert_eq!(irrep(&pi(4, &e3), &e3), "Pi_4");
        assert_eq!(irrep(&lambda_dual(4, &e3), &e3), "Lambda_4^*");
        assert_eq!(irrep(&pi_dual(6, &e3), &e3), "Pi_6.nu^-1");
        assert_eq!(irrep(&nu(3, "1/2".parse().unwrap(), &e3), &e3), "nu^1/2_3");
        assert_eq!(irrep(&one(1, &e3), &e3), "1_1");
        let mut g = Groth::zero();
        g.add_term(Expr::Irr(pi(5, &e3)), 1);
        g.add_term(Expr::Irr(nu(5, HalfInt::ONE, &e3)), 1);
        assert_eq!(groth(&g, &e3), "Pi_5 + nu^1_5");
    }

    #[test]
    fn names_round_trip() {
        for ctx in [ModContext::char0(), ModContext::with_e(2), ModContext::with_e(4)] {
            for n in 3..=7 {
                for x in [pi(n, &ctx), pi_dual(n, &ctx), phi(n + 1, &ctx), psi(n + 1, &ctx), st(n, &ctx)] {
                    let y = x.twist("-3/2".parse().unwrap(), &ctx).twist_tag(&Tag::named("t"), &ctx);
                    let s = irrep(&y, &ctx);
                    assert_eq!(parse_irrep(&s, &ctx).unwrap(), y, "{s}");
                }
            }
        }
    }

    #[test]
    fn json_envelope() {
        let ctx = ModContext::with_e(3);
        let v = envelope("classify", &ctx, Some("1_3"), json!({}));
        assert_eq!(v["schema"], "msegcalc/1");
        assert_eq!(v["context"]["e"], "3");
    }
}
