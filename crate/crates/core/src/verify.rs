//! Reproduction sweeps: each compares the calculus against closed-form tables
//! over a fixed grid and reports every disagreement.

use std::collections::BTreeSet;

use crate::arith::{divides_f, HalfInt, ModContext};
use crate::calculus::{derivative, normalize_expr};
use crate::distinction::{
    classify, classify_gl2, cuspidal_distinguished, derivative_test, dual_counterexamples,
    gl2_invariant_form_dims, listed_representations, sample_characters, DerivativeTest, Status,
};
use crate::dsl::parse_expr;
use crate::reps::named::*;
use crate::reps::{Character, Expr, Groth, Irrep};
use crate::segments::{Multiseg, Segment, Tag};
use crate::solver::{decompose, full_jacquet_length, Decomposition};
use crate::structure::{
    derivative_by_subtraction, derivative_full, semisimplify, structure_z_times_char,
    subquotients_z_times_z01, Length,
};
use crate::{render, CalcError, Result};

/// Result of one sweep.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub criterion: u8,
    pub suite: &'static str,
    pub title: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Outcome {
    fn new(criterion: u8, suite: &'static str, title: &'static str) -> Self {
        Outcome { criterion, suite, title, cases: 0, failures: vec![], notes: vec![] }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// One summary line.
    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "criterion {} [{}] {verdict}: {} ({} checks, {} failures)",
            self.criterion,
            self.suite,
            self.title,
            self.cases,
            self.failures.len()
        )
    }
}

pub const SUITES: [&str; 8] = [
    "z-times-char",
    "z-times-segment2",
    "solver-trace",
    "character-pair",
    "three-characters",
    "derivatives",
    "distinction",
    "gl2",
];

/// Runs one named suite, or every suite for `all`.
pub fn run(suite: &str) -> Result<Vec<Outcome>> {
    let one = |f: fn() -> Outcome| Ok(vec![f()]);
    match suite {
        "all" => Ok(vec![
            z_times_char(),
            z_times_segment2(),
            solver_trace(),
            character_pair(),
            three_characters(),
            derivatives(),
            distinction(),
            gl2(),
        ]),
        "z-times-char" => one(z_times_char),
        "z-times-segment2" => one(z_times_segment2),
        "solver-trace" => one(solver_trace),
        "character-pair" => one(character_pair),
        "three-characters" => one(three_characters),
        "derivatives" => one(derivatives),
        "distinction" => one(distinction),
        "gl2" => one(gl2),
        other => Err(CalcError::parse(0, format!("unknown suite {other:?}; expected all or one of {}", SUITES.join(", ")))),
    }
}

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn z(segs: &[(i64, i64)], ctx: &ModContext) -> Irrep {
    Irrep::z(&Multiseg::new(segs.iter().map(|&(a, b)| Segment::ints(a, b)).collect()), ctx)
}

fn set(labels: impl IntoIterator<Item = Irrep>) -> Groth<Expr> {
    let uniq: BTreeSet<Irrep> = labels.into_iter().collect();
    Groth::from_terms(uniq.into_iter().map(|x| (Expr::Irr(x), 1)))
}

fn prod(xs: &[Irrep]) -> Expr {
    Expr::product(xs.iter().cloned().map(Expr::Irr).collect())
}

/// Every constituent has the cuspidal support of the product.
fn support_conserved(product: &Expr, g: &Groth<Expr>, ctx: &ModContext) -> bool {
    let want = product.char_support(ctx);
    g.keys().all(|k| k.char_support(ctx) == want && k.degree() == product.degree())
}

fn congruent_int(x: i64, y: i64, ctx: &ModContext) -> bool {
    ctx.e_divides(x - y)
}

/// Constituents of `Z([a, b]) × 1` for e > 1.
fn z_times_char_table(a: i64, b: i64, ctx: &ModContext) -> (Groth<Expr>, u64) {
    let mut labels = vec![z(&[(a, b), (0, 0)], ctx)];
    if congruent_int(a, 1, ctx) {
        labels.push(z(&[(a - 1, b)], ctx));
    }
    if congruent_int(b, -1, ctx) {
        labels.push(z(&[(a, b + 1)], ctx));
    }
    let n = labels.len() as u64;
    (set(labels), n)
}

pub fn z_times_char() -> Outcome {
    let mut out = Outcome::new(1, "z-times-char", "Z([a,b]) x 1: structure tables and solver agree with the four-case table");
    let trivial = Character { deg: 1, exp: HalfInt::ZERO, tag: Tag::unramified() };
    for e in 2..=6u64 {
        let ctx = ModContext::with_e(e);
        for a in -6..=6i64 {
            for b in a..=6i64 {
                let (want, len) = z_times_char_table(a, b, &ctx);
                let seg = Segment::ints(a, b);
                let p = prod(&[Irrep::seg(seg.clone(), &ctx), one(1, &ctx)]);
                match structure_z_times_char(&seg, &trivial, &ctx) {
                    Ok(r) => {
                        out.check(r.constituents == want && r.length == Length::Exact(len), || {
                            format!("e={e} [{a},{b}]: structure gives {}", render::groth(&r.constituents, &ctx))
                        });
                        out.check(support_conserved(&p, &r.constituents, &ctx), || format!("e={e} [{a},{b}]: support"));
                    }
                    Err(err) => out.check(false, || format!("e={e} [{a},{b}]: structure error {err}")),
                }
                match decompose(&p, &ctx) {
                    Ok(r) => out.check(r.result.exact() == Some(&want), || {
                        format!("e={e} [{a},{b}]: solver gives {:?}", r.result.lower_bound())
                    }),
                    Err(err) => out.check(false, || format!("e={e} [{a},{b}]: solver error {err}")),
                }
            }
        }
    }
    out
}

/// Labels of `Z([a, b]) × Z([0, 1])`, and whether a segment-type case is present.
fn z_times_segment2_table(a: i64, b: i64, ctx: &ModContext) -> (Groth<Expr>, bool) {
    let c = |x, y| congruent_int(x, y, ctx);
    let mut labels = vec![z(&[(a, b), (0, 1)], ctx)];
    if c(b, 0) {
        labels.push(z(&[(a, b + 1), (0, 0)], ctx));
    }
    if c(a, 1) {
        labels.push(z(&[(a - 1, b), (1, 1)], ctx));
    }
    let mut segment_case = false;
    if c(b, -1) {
        labels.push(z(&[(a, b + 2)], ctx));
        segment_case = true;
    }
    if c(a, 2) {
        labels.push(z(&[(a - 2, b)], ctx));
        segment_case = true;
    }
    if c(b, 0) && c(a, 1) {
        labels.push(z(&[(a - 1, b + 1)], ctx));
        segment_case = true;
    }
    (set(labels), segment_case)
}

pub fn z_times_segment2() -> Outcome {
    let mut out = Outcome::new(2, "z-times-segment2", "Z([a,b]) x Z([0,1]): six-case table, lower-bound flags only at e = 2");
    let mut beyond = 0;
    for e in 2..=6u64 {
        let ctx = ModContext::with_e(e);
        for a in -6..=6i64 {
            for b in a..=6i64 {
                let (want, segment_case) = z_times_segment2_table(a, b, &ctx);
                let p = prod(&[z(&[(a, b)], &ctx), z(&[(0, 1)], &ctx)]);
                let table = match subquotients_z_times_z01(a, b, &ctx) {
                    Ok(t) => t,
                    Err(err) => {
                        out.check(false, || format!("e={e} [{a},{b}]: table error {err}"));
                        continue;
                    }
                };
                out.check(support_conserved(&p, &table, &ctx), || format!("e={e} [{a},{b}]: support"));
                let extra = z(&[(a, b + 2)], &ctx);
                let describe = |terms: &BTreeSet<Expr>| -> Option<String> {
                    let unexpected: Vec<&Expr> = terms.iter().filter(|t| want.get(t) == 0).collect();
                    let missing = want.keys().any(|k| !terms.contains(k));
                    if unexpected.is_empty() && !missing {
                        return None;
                    }
                    if !missing && unexpected == [&Expr::Irr(extra.clone())] {
                        return Some(format!("{} occurs beyond the six cases", render::irrep(&extra, &ctx)));
                    }
                    Some(format!("terms {}", terms.iter().map(|t| render::expr(t, &ctx)).collect::<Vec<_>>().join(", ")))
                };
                if e > 2 {
                    out.check(table == want, || format!("e={e} [{a},{b}]: table {}", render::groth(&table, &ctx)));
                } else {
                    let terms: BTreeSet<Expr> = table.keys().cloned().collect();
                    let diff = describe(&terms);
                    beyond += usize::from(diff.as_deref().is_some_and(|d| d.contains("beyond")));
                    let flag_ok = !table.is_lower_bound() || segment_case;
                    out.check(diff.is_none() && flag_ok, || {
                        format!("e=2 [{a},{b}]: table {}", diff.unwrap_or_else(|| "flagged outside the segment cases".into()))
                    });
                }
                let solved = match decompose(&p, &ctx) {
                    Ok(r) => r.result,
                    Err(err) => {
                        out.check(false, || format!("e={e} [{a},{b}]: solver error {err}"));
                        continue;
                    }
                };
                let terms: BTreeSet<Expr> = match &solved {
                    Decomposition::Exact(g) => g.keys().cloned().collect(),
                    Decomposition::Partial(pr) => pr
                        .known
                        .keys()
                        .cloned()
                        .chain(pr.intervals.iter().map(|(x, _, _)| Expr::Irr(x.clone())))
                        .collect(),
                };
                let ok = match (&solved, e > 2) {
                    (Decomposition::Exact(g), true) => *g == want,
                    (_, true) => false,
                    (_, false) => describe(&terms).is_none(),
                };
                out.check(ok, || {
                    format!("e={e} [{a},{b}]: solver {}", describe(&terms).unwrap_or_else(|| "is not exact".into()))
                });
            }
        }
    }
    if beyond > 0 {
        out.notes.push(format!(
            "{beyond} table failures at e = 2 share one cause: when a is odd and b even, [0,1] = [b+1,b+2] mod 2 is juxtaposed to [a,b], \
             so Z([a,b+2]) occurs; the six cases omit it, and the solver confirms it by a merge chain with Jacquet count 1"
        ));
    }
    out
}

pub fn solver_trace() -> Outcome {
    let mut out = Outcome::new(3, "solver-trace", "Z[1,3] x nu^1 x 1_1 at e = 3 is exactly Z([1,3]+[0]+[1]), with the 7-candidate trace");
    let ctx = ModContext::with_e(3);
    let want = set([z(&[(1, 3), (0, 0), (1, 1)], &ctx)]);
    let literal = parse_expr("Z[1,3] x nu^1 x 1_1", &ctx).and_then(|p| decompose(&p, &ctx));
    match &literal {
        Ok(r) => out.check(r.result.exact() == Some(&want), || {
            let got = match &r.result {
                Decomposition::Exact(g) => render::groth(g, &ctx),
                Decomposition::Partial(p) => render::groth(&p.known, &ctx),
            };
            format!("literal input Z[1,3] x nu^1 x 1_1 decomposes as {got}; it contains Z[1,3] x Z[0,1] as well as Z[1,3] x L[0,1]")
        }),
        Err(err) => out.check(false, || format!("literal input: {err}")),
    }
    out.notes.push("the single-constituent statement holds for Z[1,3] x L[0,1], checked below".into());
    let r = match parse_expr("Z[1,3] x L[0,1]", &ctx).and_then(|p| decompose(&p, &ctx)) {
        Ok(r) => r,
        Err(err) => {
            out.check(false, || format!("Z[1,3] x L[0,1]: {err}"));
            return out;
        }
    };
    out.check(r.result.exact() == Some(&want), || "Z[1,3] x L[0,1] is not exactly Z([1,3]+[0]+[1])".into());
    let cands: Vec<_> = r.sets.iter().flat_map(|s| s.candidates.iter()).collect();
    out.check(cands.len() == 7, || format!("{} candidates, expected 7", cands.len()));
    let excluded: Vec<_> = cands.iter().filter(|c| c.is_excluded()).collect();
    out.check(excluded.len() == 6, || format!("{} exclusions, expected 6", excluded.len()));
    let reason = |segs: &[(i64, i64)]| {
        let l = z(segs, &ctx);
        cands.iter().find(|c| c.label == l).map(|c| c.status.to_string()).unwrap_or_default()
    };
    let expect: [(&[(i64, i64)], &str); 5] = [
        (&[(0, 4)], "(3,2)"),
        (&[(0, 2), (3, 4)], "(1,2,2)"),
        (&[(2, 4), (0, 1)], "(1,2,2)"),
        (&[(1, 3), (0, 1)], "(1,2,2)"),
        (&[(0, 3), (1, 1)], "(1,1,1,2)"),
    ];
    for (segs, beta) in expect {
        let why = reason(segs);
        out.check(why.contains(beta), || format!("{segs:?}: {why}, expected an exclusion via {beta}"));
    }
    out
}

/// `[ν_{n-1}^{-1/2} × ν^{-(n-3)/2}]` for e > 1.
fn character_pair_table(n: u64, ctx: &ModContext) -> Groth<Expr> {
    let e = ctx.e_finite().unwrap_or(0);
    let nn = n as i64;
    let minus = |x: Irrep| x.twist(-HalfInt::ONE, ctx);
    match (e > 2, ctx.e_divides(nn - 2)) {
        (true, false) => {
            set([Irrep::irreducible_product(vec![nu(n - 1, -HalfInt::HALF, ctx), nu(1, h(-(nn - 3)), ctx)], ctx)])
        }
        (true, true) => set([one(n, ctx), minus(pi(n, ctx))]),
        (false, false) => set([minus(one(n, ctx)), pi_dual(n, ctx)]),
        (false, true) => set([one(n, ctx), minus(one(n, ctx)), pi_dual(n, ctx)]),
    }
}

pub fn character_pair() -> Outcome {
    let mut out = Outcome::new(4, "character-pair", "nu_{n-1}^{-1/2} x nu^{-(n-3)/2}: four-regime table for n = 4..9, solver agrees where exact");
    let mut regimes = BTreeSet::new();
    for e in 2..=6u64 {
        let ctx = ModContext::with_e(e);
        for n in 4..=9u64 {
            regimes.insert((e > 2, ctx.e_divides(n as i64 - 2)));
            let p = prod(&[nu(n - 1, -HalfInt::HALF, &ctx), nu(1, h(-(n as i64 - 3)), &ctx)]);
            let want = character_pair_table(n, &ctx);
            match semisimplify(&p, &ctx) {
                Ok(g) => {
                    out.check(g == want, || format!("e={e} n={n}: {}", render::groth(&g, &ctx)));
                    out.check(support_conserved(&p, &g, &ctx), || format!("e={e} n={n}: support"));
                }
                Err(err) => out.check(false, || format!("e={e} n={n}: {err}")),
            }
            if let Ok(r) = decompose(&p, &ctx) {
                if let Some(g) = r.result.exact() {
                    out.check(*g == want, || format!("e={e} n={n}: solver gives {}", render::groth(g, &ctx)));
                }
            }
        }
    }
    out.check(regimes.len() == 4, || format!("only {} regimes exercised", regimes.len()));
    out
}

pub fn three_characters() -> Outcome {
    let mut out = Outcome::new(5, "three-characters", "nu^-1 x 1_1 x nu^1 at e = 3: 7 constituents, St_3 once, full Jacquet length 6");
    let ctx = ModContext::with_e(3);
    let p = match parse_expr("nu^-1 x 1_1 x nu^1", &ctx) {
        Ok(p) => p,
        Err(err) => {
            out.check(false, || err.to_string());
            return out;
        }
    };
    match semisimplify(&p, &ctx) {
        Ok(g) => {
            out.check(g.distinct() == 7 && g.total() == 7 && !g.is_lower_bound(), || {
                format!("got {}", render::groth(&g, &ctx))
            });
            out.check(g.get(&Expr::Irr(st(3, &ctx))) == 1, || "St_3 multiplicity differs from 1".into());
            out.check(support_conserved(&p, &g, &ctx), || "support".into());
        }
        Err(err) => out.check(false, || err.to_string()),
    }
    match full_jacquet_length(&p, &ctx) {
        Ok(l) => out.check(l == 6, || format!("full Jacquet length {l}")),
        Err(err) => out.check(false, || err.to_string()),
    }
    out
}

fn derivative_contexts() -> Vec<ModContext> {
    let mut v = vec![ModContext::char0()];
    v.extend((2..=6).map(ModContext::with_e));
    v.extend([2, 3, 5, 7].map(|l| ModContext::e_one(l).unwrap()));
    v
}

fn resolved(x: &Expr, ctx: &ModContext) -> Groth<Expr> {
    match x {
        Expr::Irr(_) => Groth::single(x.clone()),
        Expr::Prod(_) => match semisimplify(x, ctx) {
            Ok(g) if !g.is_lower_bound() => g,
            _ => Groth::single(normalize_expr(x, ctx)),
        },
    }
}

/// Closed forms for the derivatives of `Π_n` and `Λ_n`.
fn pi_lambda_table(n: u64, k: u64, lambda_too: bool, ctx: &ModContext) -> Groth<Expr> {
    let f = ctx.f();
    let nn = n as i64;
    let fn_ = divides_f(f, n);
    let generic = || resolved(&prod(&[one(n - 2, ctx), nu(1, h(nn + 1), ctx)]), ctx);
    let single = |x: Irrep| Groth::single(Expr::Irr(x));
    match (k, lambda_too) {
        (1, false) if f == 2 && n == 2 => Groth::zero(),
        (1, false) if !fn_ => generic(),
        (1, false) => single(lambda_dual(n - 1, ctx).twist(HalfInt::HALF, ctx)),
        (2, false) => single(one(n - 2, ctx)),
        (1, true) if !fn_ => generic(),
        (1, true) => single(nu(n - 1, -HalfInt::HALF, ctx)),
        (2, true) if !fn_ => single(one(n - 2, ctx)),
        _ => Groth::zero(),
    }
}

pub fn derivatives() -> Outcome {
    let mut out = Outcome::new(6, "derivatives", "derivatives of Pi_n and Lambda_n for n = 2..10 in every f regime; Leibniz rule on Z([a,b]) x 1");
    for ctx in derivative_contexts() {
        for n in 2..=10u64 {
            for k in 1..=n {
                for (label, x, lam) in [("Pi", pi(n, &ctx), false), ("Lambda", lambda(n, &ctx), true)] {
                    let want = pi_lambda_table(n, k, lam, &ctx);
                    match derivative_full(&Expr::Irr(x), k, &ctx) {
                        Ok(d) => out.check(d.value == want, || {
                            format!("{ctx} {label}_{n}^({k}) = {}, expected {}", render::groth(&d.value, &ctx), render::groth(&want, &ctx))
                        }),
                        Err(err) => out.check(false, || format!("{ctx} {label}_{n}^({k}): {err}")),
                    }
                }
            }
            if n >= 3 && ctx.e_finite() != Some(1) {
                for k in 1..=2 {
                    if let Ok(sub) = derivative_by_subtraction(&pi(n, &ctx), k, &ctx) {
                        let want = pi_lambda_table(n, k, false, &ctx);
                        out.check(sub.value == want, || format!("{ctx} Pi_{n}^({k}) by subtraction differs"));
                    }
                }
            }
        }
    }
    let trivial = Character { deg: 1, exp: HalfInt::ZERO, tag: Tag::unramified() };
    for e in 2..=6u64 {
        let ctx = ModContext::with_e(e);
        for a in -6..=6i64 {
            for b in a..=6i64 {
                let seg = Segment::ints(a, b);
                let p = prod(&[Irrep::seg(seg.clone(), &ctx), one(1, &ctx)]);
                let Ok(r) = structure_z_times_char(&seg, &trivial, &ctx) else { continue };
                for k in 1..=p.degree() {
                    let lhs = match derivative_full(&p, k, &ctx) {
                        Ok(d) => d.value,
                        Err(err) => {
                            out.check(false, || format!("e={e} [{a},{b}] k={k}: {err}"));
                            continue;
                        }
                    };
                    let mut rhs = Groth::zero();
                    let mut ok = true;
                    for (c, m) in r.constituents.iter() {
                        match derivative_full(c, k, &ctx) {
                            Ok(d) => rhs.add(&d.value.scaled(m)),
                            Err(err) => {
                                ok = false;
                                out.check(false, || format!("e={e} [{a},{b}] k={k}: constituent {err}"));
                            }
                        }
                    }
                    if ok {
                        let raw = derivative(&p, k, &ctx).map(|g| g.total()).unwrap_or(0);
                        out.check(lhs == rhs || lhs.total() == 0 && raw == 0, || {
                            format!(
                                "e={e} [{a},{b}] k={k}: Leibniz {} vs constituents {}",
                                render::groth(&lhs, &ctx),
                                render::groth(&rhs, &ctx)
                            )
                        });
                    }
                }
            }
        }
    }
    out
}

pub fn distinction() -> Outcome {
    let mut out = Outcome::new(7, "distinction", "list members and their duals distinguished, classification dual-invariant; Lambda_n and Pi_n twists, Phi_n/Psi_n, cuspidals not, n = 2..10");
    let mut n2_only = true;
    let mut fail = |out: &mut Outcome, n: u64, msg: String| {
        if n != 2 {
            n2_only = false;
        }
        out.check(false, || msg);
    };
    for e in 2..=6u64 {
        let ctx = ModContext::with_e(e);
        let status = |x: &Irrep| classify(x, &ctx).map(|v| v.status).unwrap_or(Status::Unknown);
        for n in 2..=10u64 {
            for pi_ in listed_representations(n, &ctx) {
                let ok = status(&pi_) == Status::Distinguished && status(&pi_.dual(&ctx)) == Status::Distinguished;
                if ok {
                    out.check(true, String::new);
                } else {
                    fail(&mut out, n, format!("e={e}: {} or its dual not distinguished", render::irrep(&pi_, &ctx)));
                }
            }
            let mut twists: Vec<Irrep> = (1..e as i64).map(|k| lambda(n, &ctx).twist(HalfInt::int(k), &ctx)).collect();
            twists.push(lambda(n, &ctx).twist_tag(&Tag::named("t"), &ctx));
            for x in twists {
                if status(&x) == Status::NotDistinguished {
                    out.check(true, String::new);
                } else {
                    fail(&mut out, n, format!("e={e}: {} is distinguished", render::irrep(&x, &ctx)));
                }
            }
            if n % e == 0 {
                for chi in sample_characters(&ctx) {
                    let c = chi.as_character().unwrap();
                    let x = pi(n, &ctx).twist(c.exp, &ctx).twist_tag(&c.tag, &ctx);
                    if status(&x) == Status::NotDistinguished {
                        out.check(true, String::new);
                    } else {
                        fail(&mut out, n, format!("e={e}: {} is distinguished", render::irrep(&x, &ctx)));
                    }
                }
            }
            if n >= 4 && !ctx.e_divides(n as i64 - 1) {
                for chi in sample_characters(&ctx) {
                    let c = chi.as_character().unwrap();
                    for x in [phi(n, &ctx), psi(n, &ctx)] {
                        let y = x.twist(c.exp, &ctx).twist_tag(&c.tag, &ctx);
                        let ok = derivative_test(&y, &ctx) == DerivativeTest::NotDistinguished
                            && status(&y) == Status::NotDistinguished;
                        if ok {
                            out.check(true, String::new);
                        } else {
                            fail(&mut out, n, format!("e={e}: {} passes the derivative test", render::irrep(&y, &ctx)));
                        }
                    }
                }
            }
            let rule = cuspidal_distinguished(n).status;
            let c = status(&cusp(n, "rho", &ctx));
            out.check(c == rule && (rule == Status::Distinguished) == (n == 2), || format!("e={e}: cusp({n}) gives {c}"));
            if n == e && n <= 3 {
                let s = status(&st(n, &ctx));
                out.check(s == rule, || format!("e={e}: cuspidal St_{n} gives {s}"));
            }
        }
    }
    for e in 2..=6u64 {
        let ctx = ModContext::with_e(e);
        out.cases += 1;
        for (x, v, w) in dual_counterexamples(&ctx, 2..=10) {
            n2_only &= x.degree() == 2;
            out.failures.push(format!("e={e}: {} is {} but its dual is {}", render::irrep(&x, &ctx), v.status, w.status));
        }
    }
    if !out.passed() && n2_only {
        out.notes.push(
            "every failure is in degree 2, where the twist statements conflict with the GL_2 classification: \
             Lambda_2 twists are twisted Steinberg representations and Pi_2 at e = 2 is cuspidal, all distinguished"
                .into(),
        );
    }
    out
}

pub fn gl2() -> Outcome {
    let mut out = Outcome::new(8, "gl2", "GL_2 invariant-form dimensions (d(V), e(V)) and d(pi) in all 12 cells");
    let regimes: Vec<(&str, ModContext)> = vec![
        ("char 0", ModContext::char0()),
        ("e = 3", ModContext::with_e(3)),
        ("e = 1, l = 5", ModContext::e_one(5).unwrap()),
        ("e = 1, l = 2", ModContext::e_one(2).unwrap()),
    ];
    for (name, ctx) in &regimes {
        let q1 = ctx.e_finite() == Some(1);
        for nt in 0..=2u64 {
            let want = match (nt, q1) {
                (0, _) => (1, 0),
                (n, false) => (n, n),
                (n, true) => (n + 1, n),
            };
            match gl2_invariant_form_dims(nt, ctx) {
                Ok(got) => out.check(got == want, || format!("{name}, {nt} trivial: {got:?}, expected {want:?}")),
                Err(err) => out.check(false, || format!("{name}: {err}")),
            }
        }
        let d = |x: &Irrep| classify_gl2(x, ctx).ok().and_then(|v| v.is_distinguished().then_some(v.dimension).flatten());
        let st_d = if q1 && ctx.ell() > 2 { 2 } else { 1 };
        out.check(d(&st(2, ctx)) == Some(st_d), || format!("{name}: d(St) = {:?}", d(&st(2, ctx))));
        let twisted = st(2, ctx).twist_tag(&Tag::named("t"), ctx);
        out.check(d(&twisted) == Some(1), || format!("{name}: d(St.chi) = {:?}", d(&twisted)));
        let v1 = Irrep::irreducible_product(
            vec![nu(1, HalfInt::HALF, ctx), Irrep::character(1, HalfInt::HALF, Tag::named("t"), ctx)],
            ctx,
        );
        let want_v = if q1 { 2 } else { 1 };
        out.check(d(&v1) == Some(want_v), || format!("{name}: d(V(1, chi)) = {:?}", d(&v1)));
        out.check(d(&one(2, ctx)) == Some(1), || format!("{name}: d(1_2)"));
        out.check(d(&cusp(2, "rho", ctx)) == Some(1), || format!("{name}: d(cuspidal)"));
        let chi = one(2, ctx).twist_tag(&Tag::named("t"), ctx);
        out.check(classify_gl2(&chi, ctx).map(|v| v.status).ok() == Some(Status::NotDistinguished), || {
            format!("{name}: nontrivial character distinguished")
        });
        for n in 2..=2 {
            if let Ok(all) = classify(&st(n, ctx), ctx) {
                out.check(Some(all.clone()) == classify_gl2(&st(n, ctx), ctx).ok(), || format!("{name}: classify and classify_gl2 differ"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert!(run("nonsense").is_err());
        let out = run("three-characters").unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].passed(), "{:?}", out[0].failures);
        assert!(out[0].line().contains("PASS"));
    }

    #[test]
    fn tables_have_expected_sizes() {
        let e3 = ModContext::with_e(3);
        assert_eq!(z_times_char_table(1, 2, &e3).1, 3);
        assert_eq!(z_times_char_table(0, 0, &e3).1, 1);
        assert_eq!(z_times_segment2_table(1, 3, &e3).0.total(), 4);
        assert_eq!(character_pair_table(5, &e3).total(), 2);
        assert_eq!(character_pair_table(4, &ModContext::with_e(2)).total(), 3);
    }
}
