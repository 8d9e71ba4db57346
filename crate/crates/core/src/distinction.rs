//! Distinction of irreducible representations of G_n by the subgroup H_n = G_{n-1}.

use std::fmt;

use crate::arith::{divides_f, HalfInt, ModContext};
use crate::calculus::{is_irreducible_product, Irreducibility};
use crate::reps::named::{self, match_twist};
use crate::reps::{Expr, Irrep};
use crate::segments::{lambda_of, Multiseg, Segment, Tag};
use crate::structure::{derivative_full, Bound, FullDerivative};
use crate::{CalcError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Distinguished,
    NotDistinguished,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Distinguished => "distinguished",
            Status::NotDistinguished => "not-distinguished",
            Status::Unknown => "unknown",
        })
    }
}

/// Outcome of a distinction question. `dimension` is the dimension of the
/// space of H-invariant linear forms, recorded only where it is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctionVerdict {
    pub status: Status,
    pub dimension: Option<u64>,
    pub certificate: String,
}

impl DistinctionVerdict {
    fn yes(dimension: Option<u64>, why: impl Into<String>) -> Self {
        debug_assert!(dimension.is_none_or(|d| d >= 1));
        DistinctionVerdict { status: Status::Distinguished, dimension, certificate: why.into() }
    }

    fn no(why: impl Into<String>) -> Self {
        DistinctionVerdict { status: Status::NotDistinguished, dimension: None, certificate: why.into() }
    }

    fn unknown(why: impl Into<String>) -> Self {
        DistinctionVerdict { status: Status::Unknown, dimension: None, certificate: why.into() }
    }

    pub fn is_distinguished(&self) -> bool {
        self.status == Status::Distinguished
    }
}

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn q_is_one(ctx: &ModContext) -> bool {
    ctx.e_finite() == Some(1)
}

/// A degree-one character `ν^x·χ_t` is trivial.
fn trivial_point(s: &Segment, ctx: &ModContext) -> bool {
    s.len() == 1 && s.tag.is_unramified() && ctx.reduce(s.a) == HalfInt::ZERO
}

/// `(d(V), e(V))` for a principal series `V = Ind(α_1 ⊗ α_2)` of G_2, where
/// `n_trivial` counts the trivial characters among `α_1, α_2`.
pub fn gl2_invariant_form_dims(n_trivial: u64, ctx: &ModContext) -> Result<(u64, u64)> {
    match n_trivial {
        0 => Ok((1, 0)),
        1 | 2 if q_is_one(ctx) => Ok((n_trivial + 1, n_trivial)),
        1 | 2 => Ok((n_trivial, n_trivial)),
        _ => Err(CalcError::OutOfRange(format!("{n_trivial} trivial characters among two"))),
    }
}

/// Cuspidal representations of G_n are distinguished exactly in degree 2.
pub fn cuspidal_distinguished(n: u64) -> DistinctionVerdict {
    if n == 2 {
        DistinctionVerdict::yes(Some(1), "cuspidal of degree 2: distinguished with a one-dimensional space of forms")
    } else {
        DistinctionVerdict::no(format!("cuspidal of degree {n}: its restriction to the mirabolic subgroup admits no invariant form"))
    }
}

/// Distinction for G_2 relative to G_1.
pub fn classify_gl2(pi: &Irrep, ctx: &ModContext) -> Result<DistinctionVerdict> {
    if pi.degree() != 2 {
        return Err(CalcError::Degree(format!("{pi} has degree {}, expected 2", pi.degree())));
    }
    if let Some(c) = pi.as_character() {
        return Ok(if c.tag.is_unramified() && ctx.reduce(c.exp) == HalfInt::ZERO {
            DistinctionVerdict::yes(Some(1), "the trivial character")
        } else {
            DistinctionVerdict::no(format!("{pi} is a nontrivial character of G_2"))
        });
    }
    if pi.is_cuspidal(ctx) {
        return Ok(cuspidal_distinguished(2));
    }
    let Some(m) = pi.multiseg() else {
        return Err(CalcError::unknown(format!("{pi} is not a recognised label of degree 2")));
    };
    if let Some((x, t)) = match_twist(pi, &named::st_multiseg(2), ctx) {
        let untwisted = x == HalfInt::ZERO && t.is_unramified();
        let d = if untwisted && q_is_one(ctx) && ctx.ell() > 2 {
            let (dv, _) = gl2_invariant_form_dims(2, ctx)?;
            dv - 1
        } else {
            1
        };
        let why = if untwisted {
            format!("Steinberg: d(St) = d(V) - 1 = {d}")
        } else {
            "twisted Steinberg: every form on the principal series kills the character".to_string()
        };
        return Ok(DistinctionVerdict::yes(Some(d), why));
    }
    // An irreducible principal series of two characters.
    let trivial = if q_is_one(ctx) {
        // Unnormalized induction is ν^{1/2}-shifted; at q = 1 both slots shift alike.
        m.segs().iter().filter(|s| trivial_point(&s.shift(-HalfInt::HALF), ctx)).count() as u64
    } else {
        0
    };
    let d = if trivial == 1 { gl2_invariant_form_dims(1, ctx)?.0 } else { 1 };
    Ok(DistinctionVerdict::yes(
        Some(d),
        format!("irreducible principal series with {trivial} trivial inducing character(s): d = {d}"),
    ))
}

/// The segment of `ν_k^x`, canonical in `ctx`.
fn nu_segment(k: u64, x: HalfInt, ctx: &ModContext) -> Segment {
    named::nu(k, x, ctx).m.segs()[0].clone()
}

fn product_irreducible(parts: &[Irrep], ctx: &ModContext) -> Irreducibility {
    let fs: Vec<Expr> = parts.iter().cloned().map(Expr::Irr).collect();
    is_irreducible_product(&fs, ctx)
}

/// Some ways of writing `pi` as `ν_{n-1}^{±1/2} × χ`: the character χ and the sign.
fn as_nu_half_times_char(pi: &Irrep, ctx: &ModContext) -> Vec<(Irrep, i64)> {
    let n = pi.degree();
    let Some(m) = pi.multiseg() else { return vec![] };
    let [p, q] = m.segs() else { return vec![] };
    let mut out = Vec::new();
    for (long, pt) in [(p, q), (q, p)] {
        if pt.len() != 1 || long.len() != n - 1 || n < 3 {
            continue;
        }
        for sign in [-1, 1] {
            if *long == nu_segment(n - 1, h(sign), ctx) {
                out.push((Irrep::seg(pt.clone(), ctx), sign));
            }
        }
    }
    out
}

/// Ways of writing `pi` as `1_{n-2} × τ` with τ an infinite-dimensional
/// irreducible representation of G_2.
fn as_one_times_tau(pi: &Irrep, ctx: &ModContext) -> Vec<Irrep> {
    let n = pi.degree();
    if n < 3 {
        return vec![];
    }
    let base = nu_segment(n - 2, HalfInt::ZERO, ctx);
    match pi.cusps.as_slice() {
        [] => {}
        [c] if c.deg == 2 && pi.m.segs() == [base] => return vec![Irrep::cusp(c.clone(), ctx)],
        _ => return vec![],
    }
    let segs = pi.m.segs();
    if segs.len() != 3 {
        return vec![];
    }
    let mut out: Vec<Irrep> = Vec::new();
    for i in 0..3 {
        if segs[i] != base {
            continue;
        }
        let rest: Vec<Segment> =
            segs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s.clone()).collect();
        if rest.iter().all(|s| s.len() == 1) {
            let tau = Irrep::z(&Multiseg::new(rest), ctx);
            if !out.contains(&tau) {
                out.push(tau);
            }
        }
    }
    out
}

fn is_trivial_twist(x: HalfInt, t: &Tag, ctx: &ModContext) -> bool {
    ctx.reduce(x) == HalfInt::ZERO && t.is_unramified()
}

/// Distinction of an irreducible representation of G_n relative to G_{n-1}.
pub fn classify(pi: &Irrep, ctx: &ModContext) -> Result<DistinctionVerdict> {
    let n = pi.degree();
    match n {
        0 | 1 => return Ok(DistinctionVerdict::yes(Some(1), "H is trivial in this degree")),
        2 => return classify_gl2(pi, ctx),
        _ => {}
    }
    if pi.is_cuspidal(ctx) {
        return Ok(cuspidal_distinguished(n));
    }
    if let Some(c) = pi.as_character() {
        return Ok(if is_trivial_twist(c.exp, &c.tag, ctx) {
            DistinctionVerdict::yes(Some(1), format!("the trivial character 1_{n}"))
        } else {
            DistinctionVerdict::no(format!("{pi} is a character nontrivial on H"))
        });
    }
    if !pi.cusps.is_empty() {
        let taus = as_one_times_tau(pi, ctx);
        return Ok(match taus.first() {
            Some(tau) => DistinctionVerdict::yes(
                None,
                format!("1_{} x {tau} with {tau} cuspidal: the closed orbit condition (A) holds", n - 2),
            ),
            None => DistinctionVerdict::no(
                "cuspidal support is neither made of characters nor of the form 1_{n-2} x (cuspidal of degree 2)",
            ),
        });
    }
    if q_is_one(ctx) {
        return classify_e_one(pi, ctx);
    }

    let mut pending: Option<String> = None;
    for (chi, sign) in as_nu_half_times_char(pi, ctx) {
        let rho = named::nu(n - 1, h(sign), ctx);
        match product_irreducible(&[rho.clone(), chi.clone()], ctx) {
            Irreducibility::Irreducible => {
                let s = if sign < 0 { "-1/2" } else { "1/2" };
                return Ok(DistinctionVerdict::yes(
                    None,
                    format!("irreducible product nu_{}^{s} x {chi}", n - 1),
                ));
            }
            Irreducibility::Unknown => pending = Some(format!("irreducibility of {rho} x {chi}")),
            Irreducibility::Reducible => {}
        }
    }
    for tau in as_one_times_tau(pi, ctx) {
        let one = named::one(n - 2, ctx);
        match product_irreducible(&[one.clone(), tau.clone()], ctx) {
            Irreducibility::Irreducible => {
                return Ok(DistinctionVerdict::yes(
                    None,
                    format!("irreducible product 1_{} x {tau}, {tau} infinite-dimensional", n - 2),
                ));
            }
            Irreducibility::Unknown => pending = Some(format!("irreducibility of {one} x {tau}")),
            Irreducibility::Reducible => {}
        }
    }
    if *pi == named::lambda(n, ctx) {
        return Ok(DistinctionVerdict::yes(None, format!("Lambda_{n}: the quotient of nu_{}^1/2 x nu^{} on the list", n - 1, h(n as i64 + 1))));
    }
    if *pi == named::lambda_dual(n, ctx) {
        return Ok(DistinctionVerdict::yes(None, format!("Lambda_{n}^*: the dual of a list member")));
    }
    if let Some(what) = pending {
        return Ok(DistinctionVerdict::unknown(format!("list membership hinges on the {what}")));
    }
    Ok(DistinctionVerdict::no(format!(
        "{pi} has character support and is none of 1_{n}, nu_{m}^(+-1/2) x chi, 1_{k} x tau, Lambda_{n}, Lambda_{n}^*",
        m = n - 1,
        k = n - 2
    )))
}

/// The partial answers available when q = 1 in R.
fn classify_e_one(pi: &Irrep, ctx: &ModContext) -> Result<DistinctionVerdict> {
    let n = pi.degree();
    if let Some((x, t)) = match_twist(pi, &named::pi_multiseg(n), ctx) {
        return Ok(if is_trivial_twist(x, &t, ctx) {
            let hyp = if divides_f(ctx.f(), n) { "l | n" } else { "l does not divide n" };
            DistinctionVerdict::yes(
                Some(2),
                format!("Pi_{n} at q = 1 ({hyp}): three independent forms on V_{n}, one of them killing 1_{n}; d = 2"),
            )
        } else {
            DistinctionVerdict::no(format!("Pi_{n} twisted by a nontrivial character"))
        });
    }
    for (chi, sign) in as_nu_half_times_char(pi, ctx) {
        if sign > 0 {
            continue;
        }
        let rho = named::nu(n - 1, -HalfInt::HALF, ctx);
        if product_irreducible(&[rho, chi.clone()], ctx) == Irreducibility::Irreducible {
            return Ok(DistinctionVerdict::yes(
                None,
                format!("nu_{}^-1/2 x {chi}: the closed orbit condition (A) holds", n - 1),
            ));
        }
    }
    for tau in as_one_times_tau(pi, ctx) {
        if product_irreducible(&[named::one(n - 2, ctx), tau.clone()], ctx) == Irreducibility::Irreducible {
            return Ok(DistinctionVerdict::yes(
                None,
                format!("1_{} x {tau}: the closed orbit condition (A) holds", n - 2),
            ));
        }
    }
    Ok(DistinctionVerdict::unknown("e = 1 classification incomplete beyond the encoded cases"))
}

/// The three conditions attached to the H-orbits on `G_n / P_{(k, n-k)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeOrbit {
    pub a: bool,
    pub b: bool,
    /// `None` when the derivatives involved are not available.
    pub c: Option<bool>,
    pub conclusion: DistinctionVerdict,
}

fn recursive(x: &Irrep, ctx: &ModContext) -> Result<bool> {
    let v = classify(x, ctx)?;
    match v.status {
        Status::Unknown => Err(CalcError::unknown(format!("distinction of {x}: {}", v.certificate))),
        s => Ok(s == Status::Distinguished),
    }
}

/// Whether a derivative has a given irreducible constituent.
fn has_constituent(d: &FullDerivative, target: &Irrep, ctx: &ModContext) -> Option<bool> {
    let want = Expr::Irr(target.clone());
    if d.value.get(&want) > 0 {
        return (d.bound != Bound::Upper).then_some(true);
    }
    let support = target.char_support(ctx);
    let unresolved = d.value.keys().any(|y| {
        matches!(y, Expr::Prod(_)) && y.degree() == target.degree() && y.char_support(ctx) == support
    });
    if unresolved || d.bound == Bound::Lower {
        None
    } else {
        Some(false)
    }
}

fn derivative_has(x: &Irrep, k: u64, target: &Irrep, ctx: &ModContext) -> Option<bool> {
    let d = derivative_full(&Expr::Irr(x.clone()), k, ctx).ok()?;
    has_constituent(&d, target, ctx)
}

/// The three-orbit analysis of `ρ × τ`, with ρ of degree k and τ of degree n - k.
pub fn three_orbit_conditions(rho: &Irrep, tau: &Irrep, ctx: &ModContext) -> Result<ThreeOrbit> {
    let k = rho.degree();
    let r = tau.degree();
    if k == 0 || r == 0 {
        return Err(CalcError::OutOfRange("both factors must have positive degree".into()));
    }
    let n = (k + r) as i64;
    let k_i = k as i64;
    let a = *rho == named::nu(k, h(n - 2 - k_i), ctx) && recursive(&tau.twist(h(k_i), ctx), ctx)?;
    let b = *tau == named::nu(r, h(-(k_i - 2)), ctx)
        && recursive(&rho.twist(h(-(n - k_i)), ctx), ctx)?;
    let c1 = derivative_has(rho, 1, &named::one(k - 1, ctx).twist(h(n - 1 - k_i), ctx), ctx);
    let c2 = derivative_has(&tau.dual(ctx), 1, &named::one(r - 1, ctx).twist(h(k_i - 1), ctx), ctx);
    let c = match (c1, c2) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    };
    let conclusion = if a || b {
        let which = if a { "A" } else { "B" };
        DistinctionVerdict::yes(None, format!("condition ({which}) holds for {rho} x {tau}"))
    } else if c == Some(false) {
        DistinctionVerdict::no(format!("none of the three orbit conditions holds for {rho} x {tau}"))
    } else {
        DistinctionVerdict::unknown(format!(
            "only the open orbit condition (C) may hold for {rho} x {tau}; it is necessary, not sufficient"
        ))
    };
    Ok(ThreeOrbit { a, b, c, conclusion })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeTest {
    NotDistinguished,
    Inconclusive,
}

/// Non-distinction from the first two derivatives: neither `ν_{n-1}^{-1/2}`
/// in `π^(1)` nor `1_{n-2}` in `π^(2)`.
pub fn derivative_test(pi: &Irrep, ctx: &ModContext) -> DerivativeTest {
    let n = pi.degree();
    if n < 3 {
        return DerivativeTest::Inconclusive;
    }
    let first = if first_derivative_ruled_out(pi, ctx) {
        Some(false)
    } else {
        derivative_has(pi, 1, &named::nu(n - 1, -HalfInt::HALF, ctx), ctx)
    };
    let second = derivative_has(pi, 2, &named::one(n - 2, ctx), ctx);
    if first == Some(false) && second == Some(false) {
        DerivativeTest::NotDistinguished
    } else {
        DerivativeTest::Inconclusive
    }
}

/// Only characters, shapes `(n-1, 1)` and twists of `Λ_n^*` can have
/// `ν_{n-1}^{-1/2}` as a quotient of the first derivative.
fn first_derivative_ruled_out(pi: &Irrep, ctx: &ModContext) -> bool {
    let n = pi.degree();
    let Some(m) = pi.multiseg() else { return false };
    let shape = lambda_of(m);
    let allowed = shape.parts() == [n] || shape.parts() == [n - 1, 1];
    let dual = named::lambda_dual(n, ctx);
    !allowed && dual.multiseg().and_then(|d| match_twist(pi, d, ctx)).is_none()
}

/// A family `ρ × χ` whose irreducible quotients must be examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCase {
    pub case: &'static str,
    pub rho: String,
    pub chi: String,
    pub constraint: Option<String>,
}

/// The families `ρ × χ` covering every distinguished π of degree n ≥ 3.
pub fn reduction_list(n: u64, ctx: &ModContext) -> Result<Vec<ReductionCase>> {
    if n < 3 {
        return Err(CalcError::OutOfRange(format!("n = {n}; the reduction needs n >= 3")));
    }
    if q_is_one(ctx) {
        return Err(CalcError::unknown("the reduction list is only complete for e > 1"));
    }
    let m = n - 1;
    let hf = |twice: i64| h(twice).to_string();
    let row = |case, rho: String, chi: &str, constraint: Option<String>| ReductionCase {
        case,
        rho,
        chi: chi.to_string(),
        constraint,
    };
    let last = format!("nu^{}", hf(-(n as i64 - 3)));
    Ok(vec![
        row("1", format!("nu_{m}^-1/2"), "chi", None),
        row("1", format!("nu_{m}^1/2"), "chi", None),
        row(
            "2",
            format!("1_{} x mu", n - 2),
            "chi",
            Some(format!("mu not in {{nu^{}, nu^{}}}", hf(-(n as i64 - 1)), hf(n as i64 - 1))),
        ),
        row("3", format!("Lambda_{m}^*.nu^1/2"), "chi", None),
        row("4.a", format!("nu_{m}^1/2"), &last, None),
        row(
            "4.b",
            format!("1_{} x mu", n - 2),
            &last,
            Some(format!("mu not in {{nu^{}, nu^{}}}", hf(-(n as i64 - 1)), hf(n as i64 - 1))),
        ),
        row(
            "4.c",
            format!("nu_{} x mu", n - 2),
            &last,
            Some(format!("mu not in {{nu^{}, nu^{}}}", hf(-(n as i64 - 3)), hf(n as i64 + 1))),
        ),
        row(
            "4.d",
            format!("nu_{}^1/2 x tau", n - 3),
            &last,
            Some("tau infinite-dimensional of degree 2".into()),
        ),
        row("4.e", format!("Lambda_{m}.nu^1/2"), &last, None),
        row("4.e", format!("Lambda_{m}^*.nu^1/2"), &last, None),
    ])
}

/// Degree-one characters `ν^x·χ_t` over one period of exponents, for the
/// unramified tag and one ramified tag.
pub fn sample_characters(ctx: &ModContext) -> Vec<Irrep> {
    let period = ctx.e_finite().map_or(8, |e| 2 * e as i64);
    let mut out = Vec::new();
    for t in [Tag::unramified(), Tag::named("t")] {
        for twice in (-period / 2 + 1)..=(period / 2) {
            let x = Irrep::character(1, h(twice), t.clone(), ctx);
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

/// Every member of the list of distinguished representations in degree n,
/// with χ and τ drawn from the sampled characters.
pub fn listed_representations(n: u64, ctx: &ModContext) -> Vec<Irrep> {
    let chars = sample_characters(ctx);
    let mut out = vec![named::one(n, ctx), named::lambda(n, ctx), named::lambda_dual(n, ctx)];
    for chi in &chars {
        for s in [-1, 1] {
            let rho = named::nu(n - 1, h(s), ctx);
            if product_irreducible(&[rho.clone(), chi.clone()], ctx) == Irreducibility::Irreducible {
                out.push(Irrep::irreducible_product(vec![rho, chi.clone()], ctx));
            }
        }
    }
    let mut taus = vec![named::cusp(2, "rho", ctx)];
    for (i, x) in chars.iter().enumerate() {
        for y in &chars[i..] {
            taus.push(Irrep::irreducible_product(vec![x.clone(), y.clone()], ctx));
        }
    }
    let one = named::one(n - 2, ctx);
    for tau in taus {
        if product_irreducible(&[one.clone(), tau.clone()], ctx) == Irreducibility::Irreducible {
            out.push(Irrep::irreducible_product(vec![one.clone(), tau], ctx));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Labels of degree n built from segments with endpoints near the origin.
pub fn label_grid(n: u64, ctx: &ModContext) -> Vec<Irrep> {
    fn go(rest: u64, max_len: u64, starts: &[i64], acc: &mut Vec<Segment>, out: &mut Vec<Multiseg>) {
        if rest == 0 {
            out.push(Multiseg::new(acc.clone()));
            return;
        }
        for len in (1..=rest.min(max_len)).rev() {
            for &a in starts {
                if let Some(last) = acc.last() {
                    if last.len() == len && last.a.twice() > 2 * a {
                        continue;
                    }
                }
                acc.push(Segment::ints(a, a + len as i64 - 1));
                go(rest - len, len, starts, acc, out);
                acc.pop();
            }
        }
    }
    let starts: Vec<i64> = (-2..=2).collect();
    let mut ms = Vec::new();
    go(n, n, &starts, &mut Vec::new(), &mut ms);
    let mut out: Vec<Irrep> = ms
        .iter()
        .flat_map(|m| [Irrep::z(m, ctx), Irrep::z(&m.shift(HalfInt::HALF), ctx)])
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Pairs `(π, π^*)` whose classifications differ.
pub fn dual_counterexamples(ctx: &ModContext, degrees: std::ops::RangeInclusive<u64>) -> Vec<(Irrep, DistinctionVerdict, DistinctionVerdict)> {
    let mut bad = Vec::new();
    for n in degrees {
        let mut labels = listed_representations(n, ctx);
        labels.extend(label_grid(n, ctx));
        for pi in labels {
            let (Ok(v), Ok(w)) = (classify(&pi, ctx), classify(&pi.dual(ctx), ctx)) else { continue };
            if v.status != w.status {
                bad.push((pi, v, w));
            }
        }
    }
    bad
}

/// Whether classification commutes with the contragredient on the list and a
/// grid of other labels, degrees 2 to 6.
pub fn dual_closure_check(ctx: &ModContext) -> Result<bool> {
    if ctx.e_finite().is_some_and(|e| e <= 1) {
        return Err(CalcError::InvalidContext("dual closure is checked for e > 1".into()));
    }
    Ok(dual_counterexamples(ctx, 2..=6).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::named::*;

    fn hh(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    fn status(pi: &Irrep, ctx: &ModContext) -> Status {
        classify(pi, ctx).unwrap().status
    }

    #[test]
    fn gl2_rules() {
        let e3 = ModContext::with_e(3);
        let e1 = ModContext::e_one(7).unwrap();
        let e1_two = ModContext::e_one(2).unwrap();
        let nu2 = nu(2, hh("1"), &e3);
        assert_eq!(status(&nu2, &e3), Status::NotDistinguished);
        assert_eq!(classify_gl2(&one(2, &e3), &e3).unwrap().dimension, Some(1));
        let st_e3 = classify_gl2(&st(2, &e3), &e3).unwrap();
        assert_eq!((st_e3.status, st_e3.dimension), (Status::Distinguished, Some(1)));
        assert_eq!(classify_gl2(&st(2, &e1), &e1).unwrap().dimension, Some(2));
        assert_eq!(classify_gl2(&st(2, &e1_two), &e1_two).unwrap().dimension, Some(1));
        assert_eq!(classify_gl2(&cusp(2, "r", &e3), &e3).unwrap().dimension, Some(1));
        // V(1, χ) at q = 1, χ ramified: points 1/2 and χν^{1/2}.
        let chi = Irrep::character(1, hh("1/2"), Tag::named("t"), &e1);
        let v = Irrep::irreducible_product(vec![nu(1, hh("1/2"), &e1), chi], &e1);
        assert_eq!(classify_gl2(&v, &e1).unwrap().dimension, Some(2));
        let v3 = Irrep::irreducible_product(vec![nu(1, hh("0"), &e3), nu(1, hh("1/2"), &e3)], &e3);
        assert_eq!(classify_gl2(&v3, &e3).unwrap().dimension, Some(1));
    }

    #[test]
    fn invariant_form_dims() {
        let e3 = ModContext::with_e(3);
        let e1 = ModContext::e_one(5).unwrap();
        assert_eq!(gl2_invariant_form_dims(0, &e3).unwrap(), (1, 0));
        assert_eq!(gl2_invariant_form_dims(1, &e3).unwrap(), (1, 1));
        assert_eq!(gl2_invariant_form_dims(2, &e1).unwrap(), (3, 2));
        assert!(gl2_invariant_form_dims(3, &e1).is_err());
    }

    #[test]
    fn cuspidal_rule() {
        assert_eq!(cuspidal_distinguished(2).dimension, Some(1));
        assert_eq!(cuspidal_distinguished(3).status, Status::NotDistinguished);
        assert_eq!(cuspidal_distinguished(7).status, Status::NotDistinguished);
        let e3 = ModContext::with_e(3);
        assert_eq!(status(&cusp(4, "r", &e3), &e3), Status::NotDistinguished);
        // A chain cuspidal of degree 3 at f = 3.
        assert_eq!(status(&st(3, &e3), &e3), Status::NotDistinguished);
    }

    #[test]
    fn list_members() {
        for e in 2..=5 {
            let ctx = ModContext::with_e(e);
            for n in 3..=7 {
                for pi in listed_representations(n, &ctx) {
                    let v = classify(&pi, &ctx).unwrap();
                    assert_eq!(v.status, Status::Distinguished, "{pi} at e={e}: {}", v.certificate);
                }
                assert_eq!(status(&lambda(n, &ctx).twist(hh("-1"), &ctx), &ctx), Status::NotDistinguished);
            }
        }
    }

    #[test]
    fn pi_twists_when_e_divides_n() {
        let ctx = ModContext::with_e(3);
        for chi in sample_characters(&ctx) {
            let c = chi.as_character().unwrap();
            let p = pi(6, &ctx).twist(c.exp, &ctx).twist_tag(&c.tag, &ctx);
            assert_eq!(status(&p, &ctx), Status::NotDistinguished, "{p}");
            assert_eq!(status(&p.dual(&ctx), &ctx), Status::NotDistinguished);
        }
    }

    #[test]
    fn one_times_cuspidal() {
        let e3 = ModContext::with_e(3);
        let pi = Irrep::irreducible_product(vec![one(3, &e3), cusp(2, "r", &e3)], &e3);
        assert_eq!(status(&pi, &e3), Status::Distinguished);
        let other = Irrep::irreducible_product(vec![nu(3, hh("1"), &e3), cusp(2, "r", &e3)], &e3);
        assert_eq!(status(&other, &e3), Status::NotDistinguished);
    }

    #[test]
    fn q_equal_one() {
        for (ell, n) in [(3, 6), (5, 4), (7, 3)] {
            let ctx = ModContext::e_one(ell).unwrap();
            let v = classify(&pi(n, &ctx), &ctx).unwrap();
            assert_eq!((v.status, v.dimension), (Status::Distinguished, Some(2)));
            let twisted = pi(n, &ctx).twist_tag(&Tag::named("t"), &ctx);
            assert_eq!(status(&twisted, &ctx), Status::NotDistinguished);
        }
        let ctx = ModContext::e_one(5).unwrap();
        let odd = Irrep::z(&Multiseg::new(vec![Segment::ints(0, 1), Segment::ints(0, 1)]), &ctx);
        assert_eq!(status(&odd, &ctx), Status::Unknown);
    }

    #[test]
    fn three_orbits() {
        let ctx = ModContext::with_e(4);
        let n = 5u64;
        // ρ = 1_{n-2}, τ with τ·ν^{(n-2)/2} distinguished.
        let rho = one(n - 2, &ctx);
        let tau = st(2, &ctx).twist(hh("-3/2"), &ctx);
        let r = three_orbit_conditions(&rho, &tau, &ctx).unwrap();
        assert!(r.a);
        assert_eq!(r.conclusion.status, Status::Distinguished);
        // V_n·χ for χ outside {1, ν^{-1}}.
        let chi = hh("1/2");
        let rho = nu(n - 1, hh("1/2"), &ctx).twist(chi, &ctx);
        let tau = nu(1, h(n as i64 + 1), &ctx).twist(chi, &ctx);
        let r = three_orbit_conditions(&rho, &tau, &ctx).unwrap();
        assert!(!r.a && !r.b);
        assert_eq!(r.c, Some(false));
        assert_eq!(r.conclusion.status, Status::NotDistinguished);
        // B(1) = St_2·ν^{-1/2} × 1 in degree 3.
        let rho = st(2, &ctx).twist(hh("-1/2"), &ctx);
        let r = three_orbit_conditions(&rho, &one(1, &ctx), &ctx).unwrap();
        assert!(r.b);
    }

    #[test]
    fn derivative_test_fires() {
        for e in [3u64, 5] {
            let ctx = ModContext::with_e(e);
            for n in 4..=7u64 {
                if ctx.e_divides(n as i64 - 1) {
                    continue;
                }
                for chi in sample_characters(&ctx) {
                    let c = chi.as_character().unwrap();
                    let p = phi(n, &ctx).twist(c.exp, &ctx).twist_tag(&c.tag, &ctx);
                    assert_eq!(derivative_test(&p, &ctx), DerivativeTest::NotDistinguished, "{p}");
                }
            }
            let l = lambda(4, &ctx);
            if !divides_f(ctx.f(), 4) {
                assert_eq!(derivative_test(&l, &ctx), DerivativeTest::Inconclusive);
            }
        }
    }

    #[test]
    fn list_is_consistent_with_other_tests() {
        for e in [2u64, 3, 5] {
            let ctx = ModContext::with_e(e);
            for n in 3..=6u64 {
                for pi in listed_representations(n, &ctx) {
                    assert_eq!(derivative_test(&pi, &ctx), DerivativeTest::Inconclusive, "{pi}");
                }
                for chi in sample_characters(&ctx) {
                    let lo = nu(n - 1, hh("-1/2"), &ctx);
                    let hi = nu(n - 1, hh("1/2"), &ctx);
                    assert!(three_orbit_conditions(&lo, &chi, &ctx).unwrap().a);
                    assert!(three_orbit_conditions(&chi, &hi, &ctx).unwrap().b);
                    let tau = Irrep::irreducible_product(vec![nu(1, hh("0"), &ctx), chi.clone()], &ctx);
                    if tau.as_character().is_none() {
                        assert!(three_orbit_conditions(&one(n - 2, &ctx), &tau, &ctx).unwrap().a);
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_cases() {
        let ctx = ModContext::with_e(3);
        let list = reduction_list(5, &ctx).unwrap();
        assert!(list.iter().any(|c| c.rho == "Lambda_4^*.nu^1/2" && c.chi == "chi"));
        assert!(list.iter().any(|c| c.case == "2" && c.rho == "1_3 x mu"));
        assert!(list.iter().any(|c| c.case == "4.d" && c.rho == "nu_2^1/2 x tau" && c.chi == "nu^-1"));
        assert!(reduction_list(2, &ctx).is_err());
    }

    #[test]
    fn duals_agree() {
        for e in 2..=4 {
            let ctx = ModContext::with_e(e);
            let bad = dual_counterexamples(&ctx, 2..=5);
            assert!(bad.is_empty(), "e={e}: {:?}", &bad[..bad.len().min(3)]);
        }
        assert!(dual_closure_check(&ModContext::char0()).unwrap());
    }
}
