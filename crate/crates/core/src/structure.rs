//! Structure of catalogued induced products: exact sequences, socle and
//! cosocle, semisimplifications, and derivatives obtained by subtraction.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::arith::{congruent, divides_f, HalfInt, ModContext, Order};
use crate::calculus::{derivative, derivative_irrep, is_irreducible_product, line_groups, Irreducibility};
use crate::error::{CalcError, Result};
use crate::reps::{named, Character, Expr, Groth, Irrep};
use crate::segments::{Multiseg, Segment, Tag};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn unknown(msg: impl Into<String>) -> CalcError {
    CalcError::unknown(msg)
}

/// Exact length, or a lower bound when multiplicities are not pinned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Exact(u64),
    AtLeast(u64),
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Exact(n) => write!(f, "{n}"),
            Length::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub product: Expr,
    pub length: Length,
    pub constituents: Groth<Expr>,
    /// Unique irreducible subrepresentation, when known.
    pub socle: Option<Irrep>,
    /// Unique irreducible quotient, when known.
    pub cosocle: Option<Irrep>,
    /// Composition series listed from the bottom.
    pub sequence: Option<Vec<Irrep>>,
    pub indecomposable: Option<bool>,
    pub semisimple: Option<bool>,
    /// Reduction to the finite group, for `V_n` at e = 1.
    pub finite_reduction: Option<String>,
}

impl StructureReport {
    fn irreducible(product: Expr, x: Irrep) -> Self {
        StructureReport {
            product,
            length: Length::Exact(1),
            constituents: Groth::single(Expr::Irr(x.clone())),
            socle: Some(x.clone()),
            cosocle: Some(x.clone()),
            sequence: Some(vec![x]),
            indecomposable: Some(true),
            semisimple: Some(true),
            finite_reduction: None,
        }
    }

    /// A non-split extension with the given unique sub and quotient.
    fn extension(product: Expr, sub: Irrep, quot: Irrep) -> Self {
        StructureReport {
            product,
            length: Length::Exact(2),
            constituents: Groth::from_terms([(Expr::Irr(sub.clone()), 1), (Expr::Irr(quot.clone()), 1)]),
            socle: Some(sub.clone()),
            cosocle: Some(quot.clone()),
            sequence: Some(vec![sub, quot]),
            indecomposable: Some(true),
            semisimple: Some(false),
            finite_reduction: None,
        }
    }

    /// The same data for the product taken in the opposite order.
    fn reversed(mut self, product: Expr) -> Self {
        self.product = product;
        std::mem::swap(&mut self.socle, &mut self.cosocle);
        if let Some(seq) = self.sequence.as_mut() {
            seq.reverse();
        }
        self
    }
}

/// Twisting frame: coordinates in the frame are shifted by `shift` and
/// retagged by `tag` to give actual labels.
#[derive(Clone, Debug)]
struct Frame {
    shift: HalfInt,
    tag: Tag,
}

impl Frame {
    fn seg(&self, a: i64, b: i64) -> Segment {
        Segment::tagged(HalfInt::int(a) + self.shift, HalfInt::int(b) + self.shift, self.tag.clone())
    }

    fn z(&self, segs: &[(i64, i64)], ctx: &ModContext) -> Irrep {
        Irrep::z(&Multiseg::new(segs.iter().map(|&(a, b)| self.seg(a, b)).collect()), ctx)
    }

    fn on(&self, x: &Irrep, ctx: &ModContext) -> Irrep {
        x.twist(self.shift, ctx).twist_tag(&self.tag, ctx)
    }

    fn off(&self, x: &Irrep, ctx: &ModContext) -> Irrep {
        x.twist(-self.shift, ctx).twist_tag(&self.tag.inverse(), ctx)
    }

    /// The frame in which `anchor` is the unramified `pattern`.
    fn find(anchor: &Irrep, pattern: &Irrep, ctx: &ModContext) -> Option<Frame> {
        let (shift, tag) = named::match_twist(anchor, &pattern.m, ctx)?;
        Some(Frame { shift, tag })
    }
}

fn char1(x: &Irrep) -> Option<(HalfInt, Tag)> {
    x.as_character().filter(|c| c.deg == 1).map(|c| (c.exp, c.tag))
}

/// `x = ν^e` (unramified).
fn is_nu(x: &Irrep, e: HalfInt, ctx: &ModContext) -> bool {
    char1(x).is_some_and(|(x, t)| t.is_unramified() && congruent(x, e, ctx))
}

fn e_above(ctx: &ModContext, k: u64) -> bool {
    ctx.e_finite().is_none_or(|e| e > k)
}

fn merged(xs: Vec<Irrep>, ctx: &ModContext) -> Irrep {
    Irrep::irreducible_product(xs, ctx)
}

fn term(x: Irrep) -> (Expr, u64) {
    (Expr::Irr(x), 1)
}

// ---------------------------------------------------------------------------
// Z(Δ) × χ

/// Structure of `Z(Δ) × χ` for a degree-one character χ.
pub fn structure_z_times_char(delta: &Segment, chi: &Character, ctx: &ModContext) -> Result<StructureReport> {
    if chi.deg != 1 {
        return Err(CalcError::OutOfRange("a character of G_1 is required".into()));
    }
    let zd = Irrep::seg(delta.clone(), ctx);
    let zc = Irrep::character(1, chi.exp, chi.tag.clone(), ctx);
    let product = Expr::Prod(vec![Expr::Irr(zd.clone()), Expr::Irr(zc.clone())]);
    let off = delta.a - chi.exp;
    if delta.tag != chi.tag || !off.is_integral() {
        return Ok(StructureReport::irreducible(product, merged(vec![zd, zc], ctx)));
    }
    let f = Frame { shift: chi.exp, tag: chi.tag.clone() };
    let a = off.to_int().unwrap();
    let b = (delta.b - chi.exp).to_int().unwrap();
    let n = (b - a + 2) as u64;
    let with_point = f.z(&[(a, b), (0, 0)], ctx);
    let right = f.z(&[(a, b + 1)], ctx);
    let left = f.z(&[(a - 1, b)], ctx);
    if ctx.e() == Order::Finite(1) {
        return Ok(e_one_report(product, n, right, with_point, ctx));
    }
    let lo = ctx.e_divides(a - 1);
    let hi = ctx.e_divides(b + 1);
    Ok(match (lo, hi) {
        (false, false) => StructureReport::irreducible(product, with_point),
        (false, true) => StructureReport::extension(product, right, with_point),
        (true, false) => StructureReport::extension(product, with_point, left),
        (true, true) => StructureReport {
            product,
            length: Length::Exact(3),
            constituents: Groth::from_terms([term(left.clone()), term(right.clone()), term(with_point)]),
            socle: Some(right),
            cosocle: Some(left),
            sequence: None,
            indecomposable: Some(true),
            semisimple: Some(false),
            finite_reduction: None,
        },
    })
}

/// `V_n`-type products at e = 1: `one` is the twist of `1_n`, `pi` that of `Π_n`.
fn e_one_report(product: Expr, n: u64, one: Irrep, pi: Irrep, ctx: &ModContext) -> StructureReport {
    let ell = ctx.ell();
    if !n.is_multiple_of(ell) {
        StructureReport {
            product,
            length: Length::Exact(2),
            constituents: Groth::from_terms([term(one), term(pi)]),
            socle: None,
            cosocle: None,
            sequence: None,
            indecomposable: Some(false),
            semisimple: Some(true),
            finite_reduction: Some(format!(
                "reduction is semisimple of length 2: 1_{n} (+) pi_{n}, with pi_{n} the reduction of Pi_{n}"
            )),
        }
    } else {
        StructureReport {
            product,
            length: Length::Exact(3),
            constituents: Groth::from_terms([(Expr::Irr(one.clone()), 2), term(pi)]),
            socle: Some(one.clone()),
            cosocle: Some(one),
            sequence: None,
            indecomposable: Some(true),
            semisimple: Some(false),
            finite_reduction: Some(format!(
                "reduction is indecomposable of length 3: 1_{n} twice and pi_{n}, with pi_{n} the reduction of Pi_{n}"
            )),
        }
    }
}

/// Structure of `V_n = ν_{n-1}^{1/2} × ν^{(n+1)/2}`.
pub fn v_n_structure(n: u64, ctx: &ModContext) -> Result<StructureReport> {
    if n < 2 {
        return Err(CalcError::OutOfRange("V_n needs n >= 2".into()));
    }
    let seg = named::nu(n - 1, HalfInt::HALF, ctx).m.segs()[0].clone();
    let chi = Character { deg: 1, exp: h(n as i64 + 1), tag: Tag::unramified() };
    structure_z_times_char(&seg, &chi, ctx)
}

// ---------------------------------------------------------------------------
// Z(Δ) × Z([0, 1])

/// Subquotients of `Z([a, b]) × Z([0, 1])` for e > 1; at e = 2 the result
/// is flagged whenever a multiplicity is only bounded below.
pub fn subquotients_z_times_z01(a: i64, b: i64, ctx: &ModContext) -> Result<Groth<Expr>> {
    if a > b {
        return Err(CalcError::OutOfRange(format!("empty segment [{a}, {b}]")));
    }
    if ctx.e() == Order::Finite(1) {
        return Err(unknown("Z(D) x Z([0,1]) is not catalogued at e = 1"));
    }
    Ok(z2_terms(a, b, &Frame { shift: HalfInt::ZERO, tag: Tag::unramified() }, ctx))
}

fn z2_terms(a: i64, b: i64, f: &Frame, ctx: &ModContext) -> Groth<Expr> {
    let d = |x: i64| ctx.e_divides(x);
    let e2 = ctx.e_finite() == Some(2);
    let mut g = Groth::zero();
    g.add_term(Expr::Irr(f.z(&[(a, b), (0, 1)], ctx)), 1);
    // For a = b the point lies inside [0, 1] and these cases give back the first one.
    if d(b) && a < b {
        g.add_term(Expr::Irr(f.z(&[(a, b + 1), (0, 0)], ctx)), 1);
    }
    if d(a - 1) && a < b {
        g.add_term(Expr::Irr(f.z(&[(a - 1, b), (1, 1)], ctx)), 1);
    }
    let mut loose = Vec::new();
    if d(b + 1) {
        loose.push(f.z(&[(a, b + 2)], ctx));
    }
    if d(a - 2) {
        loose.push(f.z(&[(a - 2, b)], ctx));
    }
    if d(b) && d(a - 1) {
        loose.push(f.z(&[(a - 1, b + 1)], ctx));
        if e2 {
            loose.push(f.z(&[(a, b + 2)], ctx));
        }
    }
    let flag = e2 && !loose.is_empty();
    for x in loose {
        let x = Expr::Irr(x);
        if !(e2 && g.get(&x) > 0) {
            g.add_term(x, 1);
        }
    }
    g.flagged(flag)
}

// ---------------------------------------------------------------------------
// L([x, x+1]) × χ

fn l_times_char(l: &Segment, chi: (HalfInt, Tag), ctx: &ModContext) -> Option<Result<Groth<Expr>>> {
    use named::{lambda, lambda_dual, one, pi, st};
    let off = chi.0 - l.a;
    if chi.1 != l.tag || !off.is_integral() {
        return None;
    }
    let c = off.to_int().unwrap();
    if ctx.e() == Order::Finite(1) {
        return Some(Err(unknown("St_2-type products are not catalogued at e = 1")));
    }
    let f = Frame { shift: l.a, tag: l.tag.clone() };
    let lo = congruent(HalfInt::int(c), HalfInt::int(-1), ctx);
    let hi = congruent(HalfInt::int(c), HalfInt::int(2), ctx);
    let at = |x: Irrep, s: i64| f.on(&x.twist(HalfInt::int(s), ctx), ctx);
    let terms: Vec<Irrep> = match (lo, hi) {
        (true, true) => vec![at(one(3, ctx), 2), at(pi(3, ctx), 1), at(pi(3, ctx), 2), at(st(3, ctx), 1)],
        (true, false) => vec![at(st(3, ctx), 0), at(lambda(3, ctx), -1)],
        (false, true) => vec![at(st(3, ctx), 1), at(lambda_dual(3, ctx), 2)],
        (false, false) => return None,
    };
    Some(Ok(Groth::from_terms(terms.into_iter().map(term))))
}

// ---------------------------------------------------------------------------
// Semisimplification

/// The semisimplification of a product, from the catalogued tables and
/// exactness of induction.
pub fn semisimplify(x: &Expr, ctx: &ModContext) -> Result<Groth<Expr>> {
    Engine::new(ctx).ss(x.atoms())
}

struct Engine<'a> {
    ctx: &'a ModContext,
    memo: HashMap<Vec<Irrep>, Result<Groth<Expr>>>,
    active: BTreeSet<Vec<Irrep>>,
}

impl<'a> Engine<'a> {
    fn new(ctx: &'a ModContext) -> Self {
        Engine { ctx, memo: HashMap::new(), active: BTreeSet::new() }
    }

    fn ss(&mut self, mut atoms: Vec<Irrep>) -> Result<Groth<Expr>> {
        atoms.retain(|a| a.degree() > 0);
        atoms.sort();
        match atoms.len() {
            0 => return Ok(Groth::single(Expr::Irr(Irrep::unit()))),
            1 => return Ok(Groth::single(Expr::Irr(atoms.pop().unwrap()))),
            _ => {}
        }
        if let Some(r) = self.memo.get(&atoms) {
            return r.clone();
        }
        if !self.active.insert(atoms.clone()) {
            return Err(unknown("semisimplification loops back on itself"));
        }
        let r = self.ss_inner(&atoms);
        self.active.remove(&atoms);
        self.memo.insert(atoms, r.clone());
        r
    }

    fn ss_inner(&mut self, atoms: &[Irrep]) -> Result<Groth<Expr>> {
        let ctx = self.ctx;
        let exprs: Vec<Expr> = atoms.iter().cloned().map(Expr::Irr).collect();
        if is_irreducible_product(&exprs, ctx) == Irreducibility::Irreducible {
            return Ok(Groth::single(Expr::Irr(merged(atoms.to_vec(), ctx))));
        }
        let groups = line_groups(&exprs, ctx);
        if groups.len() > 1 {
            return self.across_lines(groups);
        }
        let atoms = groups.into_iter().next().unwrap_or_default();
        if atoms.len() == 2 {
            if let Some(r) = self.table2(&atoms[0], &atoms[1]) {
                return r;
            }
        }
        if atoms.len() >= 3 {
            if let Some(r) = self.split_pair(&atoms) {
                return Ok(r);
            }
        }
        if let Some(r) = self.expand_label(&atoms) {
            return Ok(r);
        }
        Err(unknown(format!(
            "semisimplification of {} is not catalogued",
            Expr::product(atoms.iter().cloned().map(Expr::Irr).collect())
        )))
    }

    /// Products of pieces on different lines: constituents multiply.
    fn across_lines(&mut self, groups: Vec<Vec<Irrep>>) -> Result<Groth<Expr>> {
        let mut acc: Vec<(Vec<Irrep>, u64)> = vec![(Vec::new(), 1)];
        let mut flag = false;
        for g in groups {
            let r = self.ss(g)?;
            flag |= r.is_lower_bound();
            let mut next = Vec::new();
            for (parts, m) in &acc {
                for (y, c) in r.iter() {
                    let mut p = parts.clone();
                    p.extend(y.atoms());
                    next.push((p, m * c));
                }
            }
            acc = next;
        }
        let terms = acc.into_iter().map(|(p, m)| (Expr::Irr(merged(p, self.ctx)), m));
        Ok(Groth::from_terms(terms).flagged(flag))
    }

    fn table2(&mut self, x: &Irrep, y: &Irrep) -> Option<Result<Groth<Expr>>> {
        let ctx = self.ctx;
        for (p, q) in [(x, y), (y, x)] {
            if let (Some(d), Some(chi)) = (p.as_segment(), q.as_character().filter(|c| c.deg == 1)) {
                return Some(structure_z_times_char(d, &chi, ctx).map(|r| r.constituents));
            }
        }
        for (p, q) in [(x, y), (y, x)] {
            if let (Some(d), Some(t)) = (p.as_segment(), q.as_segment().filter(|t| t.len() == 2)) {
                if ctx.e() == Order::Finite(1) {
                    return Some(Err(unknown("Z(D) x Z([c,c+1]) is not catalogued at e = 1")));
                }
                let off = d.a - t.a;
                if d.tag != t.tag || !off.is_integral() {
                    return None;
                }
                let f = Frame { shift: t.a, tag: t.tag.clone() };
                let a = off.to_int().unwrap();
                let b = (d.b - t.a).to_int().unwrap();
                return Some(Ok(z2_terms(a, b, &f, ctx)));
            }
        }
        for (p, q) in [(x, y), (y, x)] {
            if let (Some(l), Some(chi)) = (p.as_l(ctx), char1(q)) {
                return l_times_char(&l, chi, ctx);
            }
        }
        None
    }

    /// `[A × B × R] = Σ [y × R]` over the constituents y of a reducible `A × B`.
    fn split_pair(&mut self, atoms: &[Irrep]) -> Option<Groth<Expr>> {
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                let Ok(pair) = self.ss(vec![atoms[i].clone(), atoms[j].clone()]) else { continue };
                if pair.total() == 1 {
                    continue;
                }
                let rest: Vec<Irrep> =
                    atoms.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, a)| a.clone()).collect();
                if let Ok(r) = self.sum_over(&pair, &rest) {
                    return Some(r);
                }
            }
        }
        None
    }

    fn sum_over(&mut self, pieces: &Groth<Expr>, rest: &[Irrep]) -> Result<Groth<Expr>> {
        let mut out = Groth::zero().flagged(pieces.is_lower_bound());
        for (y, c) in pieces.iter() {
            let mut v = y.atoms();
            v.extend(rest.iter().cloned());
            out.add(&self.ss(v)?.scaled(c));
        }
        Ok(out)
    }

    /// `[x × R] = [Z(Δ_1) × ⋯ × R] - Σ_{y ≠ x} [y × R]` for a label x whose
    /// standard module is catalogued exactly.
    fn expand_label(&mut self, atoms: &[Irrep]) -> Option<Groth<Expr>> {
        let ctx = self.ctx;
        for (i, x) in atoms.iter().enumerate() {
            let Some(m) = x.multiseg() else { continue };
            if m.count() < 2 {
                continue;
            }
            let std: Vec<Irrep> = m.segs().iter().map(|s| Irrep::seg(s.clone(), ctx)).collect();
            let rest: Vec<Irrep> =
                atoms.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, a)| a.clone()).collect();
            let attempt = (|| -> Result<Groth<Expr>> {
                let s = self.ss(std.clone())?;
                if s.is_lower_bound() || s.get(&Expr::Irr(x.clone())) != 1 {
                    return Err(unknown("standard module not pinned"));
                }
                let mut all = std.clone();
                all.extend(rest.iter().cloned());
                let mut total = self.ss(all)?;
                if total.is_lower_bound() {
                    return Err(unknown("lower bounds cannot be subtracted"));
                }
                for (y, c) in s.iter() {
                    if y.as_irrep() == Some(x) {
                        continue;
                    }
                    let mut v = y.atoms();
                    v.extend(rest.iter().cloned());
                    let part = self.ss(v)?;
                    if part.is_lower_bound() {
                        return Err(unknown("lower bounds cannot be subtracted"));
                    }
                    total = total
                        .checked_sub(&part.scaled(c))
                        .ok_or_else(|| unknown("inconsistent subtraction"))?;
                }
                Ok(total)
            })();
            if let Ok(r) = attempt {
                return Some(r);
            }
        }
        None
    }
}

// ---------------------------------------------------------------------------
// Unique irreducible quotient and subrepresentation

/// `Q(π_1 × ⋯ × π_r)`, the unique irreducible quotient of a catalogued family.
pub fn q_of(x: &Expr, ctx: &ModContext) -> Result<Irrep> {
    q_factors(&clean(x), ctx, true)
}

/// `S(π_1 × ⋯ × π_r) = Q(π_r × ⋯ × π_1)`.
pub fn s_of(x: &Expr, ctx: &ModContext) -> Result<Irrep> {
    let mut fs = clean(x);
    fs.reverse();
    q_factors(&fs, ctx, true)
}

fn clean(x: &Expr) -> Vec<Irrep> {
    x.atoms().into_iter().filter(|a| a.degree() > 0).collect()
}

fn q_factors(fs: &[Irrep], ctx: &ModContext, via_dual: bool) -> Result<Irrep> {
    match fs {
        [] => return Ok(Irrep::unit()),
        [x] => return Ok(x.clone()),
        _ => {}
    }
    let exprs: Vec<Expr> = fs.iter().cloned().map(Expr::Irr).collect();
    if is_irreducible_product(&exprs, ctx) == Irreducibility::Irreducible {
        return Ok(merged(fs.to_vec(), ctx));
    }
    let n: u64 = fs.iter().map(Irrep::degree).sum();
    let families: [fn(&[Irrep], u64, &ModContext) -> Option<Result<Irrep>>; 7] =
        [q_z_char, q_shifted_w, q_w, q_y_direct, q_p_direct, q_u, q_lambda_char];
    for fam in families {
        if let Some(r) = fam(fs, n, ctx) {
            return r;
        }
    }
    if via_dual {
        let mut duals: Vec<Irrep> = fs.iter().map(|x| x.dual(ctx)).collect();
        duals.reverse();
        if let Ok(s) = q_factors(&duals, ctx, false) {
            return Ok(s.dual(ctx));
        }
    }
    Err(unknown(format!(
        "no catalogued unique quotient for {}",
        Expr::product(exprs)
    )))
}

/// `Z(Δ) × χ` and `χ × Z(Δ)`.
fn q_z_char(fs: &[Irrep], _n: u64, ctx: &ModContext) -> Option<Result<Irrep>> {
    let [x, y] = fs else { return None };
    let pick = |r: StructureReport, sub: bool| {
        let v = if sub { r.socle } else { r.cosocle };
        v.ok_or_else(|| unknown("the quotient is not unique"))
    };
    if let (Some(d), Some(c)) = (x.as_segment(), y.as_character().filter(|c| c.deg == 1)) {
        return Some(structure_z_times_char(d, &c, ctx).and_then(|r| pick(r, false)));
    }
    if let (Some(c), Some(d)) = (x.as_character().filter(|c| c.deg == 1), y.as_segment()) {
        return Some(structure_z_times_char(d, &c, ctx).and_then(|r| pick(r, true)));
    }
    None
}

/// `ν_{n-2} × μ × ν^{-(n-3)/2}`.
fn q_shifted_w(fs: &[Irrep], n: u64, ctx: &ModContext) -> Option<Result<Irrep>> {
    let [a, mu, last] = fs else { return None };
    if n < 3 || !e_above(ctx, 1) {
        return None;
    }
    let nn = n as i64;
    let f = Frame::find(a, &named::nu(n - 2, HalfInt::ONE, ctx), ctx)?;
    let (mu, last) = (f.off(mu, ctx), f.off(last, ctx));
    if !is_nu(&last, h(-(nn - 3)), ctx) {
        return None;
    }
    char1(&mu)?;
    if is_nu(&mu, h(-(nn - 3)), ctx) || is_nu(&mu, h(nn + 1), ctx) {
        return None;
    }
    let out = if is_nu(&mu, h(-(nn - 1)), ctx) {
        named::lambda_dual(n, ctx).twist(HalfInt::ONE, ctx)
    } else {
        merged(vec![mu, named::nu(n - 1, HalfInt::HALF, ctx)], ctx)
    };
    Some(Ok(f.on(&out, ctx)))
}

/// Standing assumption on μ for the `1_{n-2} × μ × χ` families.
fn admissible_mu(mu: &Irrep, n: u64, ctx: &ModContext) -> bool {
    let nn = n as i64;
    char1(mu).is_some() && !is_nu(mu, h(nn - 1), ctx) && !is_nu(mu, h(-(nn - 1)), ctx)
}

/// `W(χ) = 1_{n-2} × μ × χ`.
fn q_w(fs: &[Irrep], n: u64, ctx: &ModContext) -> Option<Result<Irrep>> {
    let [a, mu, chi] = fs else { return None };
    if n < 3 || !e_above(ctx, 1) {
        return None;
    }
    let f = Frame::find(a, &named::one(n - 2, ctx), ctx)?;
    let (mu, chi) = (f.off(mu, ctx), f.off(chi, ctx));
    if !admissible_mu(&mu, n, ctx) {
        return None;
    }
    let (me, mt) = char1(&mu)?;
    let (ce, ct) = char1(&chi)?;
    let nn = n as i64;
    let r = if ct == mt && congruent(ce, me + 1, ctx) {
        if e_above(ctx, 2) { y_of(&mu, n, ctx) } else { p_of(&mu, n, ctx) }
    } else if ct == mt && congruent(ce, me - 1, ctx) {
        p_of(&mu, n, ctx)
    } else if is_nu(&chi, h(-(nn - 1)), ctx) {
        if is_nu(&mu, h(-(nn + 1)), ctx) {
            if ctx.e_divides(nn) {
                Err(unknown("Q(W) with mu = nu^{-(n+1)/2} and e | n is not catalogued"))
            } else {
                Ok(named::lambda_dual(n, ctx))
            }
        } else {
            Ok(merged(vec![named::nu(n - 1, -HalfInt::HALF, ctx), mu], ctx))
        }
    } else {
        return None;
    };
    Some(r.map(|x| f.on(&x, ctx)))
}

/// `Y(μ) = Q(1_{n-2} × St_2·μν^{1/2})`, in the frame of `1_{n-2}`.
fn y_of(mu: &Irrep, n: u64, ctx: &ModContext) -> Result<Irrep> {
    let nn = n as i64;
    let (me, mt) = char1(mu).ok_or_else(|| unknown("mu must be a character"))?;
    if is_nu(mu, h(-(nn + 1)), ctx) && ctx.e_finite() != Some(2) {
        if ctx.e_divides(nn) {
            return Err(unknown("Y(mu) with e | n is not catalogued"));
        }
        return Ok(named::lambda_dual(n, ctx));
    }
    let st = Irrep::z(
        &Multiseg::new(vec![
            Segment::tagged(me, me, mt.clone()),
            Segment::tagged(me + 1, me + 1, mt),
        ]),
        ctx,
    );
    Ok(merged(vec![named::one(n - 2, ctx), st], ctx))
}

/// `P(μ) = Q(1_{n-2} × 1_2·μν^{-1/2})`, in the frame of `1_{n-2}`.
fn p_of(mu: &Irrep, n: u64, ctx: &ModContext) -> Result<Irrep> {
    let nn = n as i64;
    if !is_nu(mu, h(-(nn - 3)), ctx) {
        return Err(unknown("P(mu) is only catalogued for mu = nu^{-(n-3)/2}"));
    }
    if e_above(ctx, 2) && !ctx.e_divides(nn - 2) {
        return Ok(merged(vec![named::nu(n - 1, -HalfInt::HALF, ctx), named::nu(1, h(-(nn - 3)), ctx)], ctx));
    }
    if ctx.e_finite() == Some(2) && nn % 2 == 1 {
        return Ok(named::lambda_dual(n, ctx));
    }
    Err(unknown("P(nu^{-(n-3)/2}) is not catalogued in this regime"))
}

fn q_y_direct(fs: &[Irrep], n: u64, ctx: &ModContext) -> Option<Result<Irrep>> {
    let [a, st] = fs else { return None };
    if n < 3 || !e_above(ctx, 2) {
        return None;
    }
    let f = Frame::find(a, &named::one(n - 2, ctx), ctx)?;
    let l = f.off(st, ctx).as_l(ctx)?;
    let mu = Irrep::character(1, l.a, l.tag.clone(), ctx);
    if !admissible_mu(&mu, n, ctx) {
        return None;
    }
    Some(y_of(&mu, n, ctx).map(|x| f.on(&x, ctx)))
}

fn q_p_direct(fs: &[Irrep], n: u64, ctx: &ModContext) -> Option<Result<Irrep>> {
    let [a, two] = fs else { return None };
    if n < 3 || !e_above(ctx, 1) {
        return None;
    }
    let f = Frame::find(a, &named::one(n - 2, ctx), ctx)?;
    let s = f.off(two, ctx).as_segment().filter(|s| s.len() == 2)?.clone();
    let mu = Irrep::character(1, s.a + 1, s.tag.clone(), ctx);
    if !admissible_mu(&mu, n, ctx) {
        return None;
    }
    Some(p_of(&mu, n, ctx).map(|x| f.on(&x, ctx)))
}

/// `U(τ) = Q(ν_{n-3}^{1/2} × τ × ν^{-(n-3)/2}) = Q(τ × 1_{n-2})`.
fn q_u(fs: &[Irrep], n: u64, ctx: &ModContext) -> Option<Result<Irrep>> {
    if n < 4 || !e_above(ctx, 1) {
        return None;
    }
    let nn = n as i64;
    let (f, tau) = match fs {
        [a, tau, last] => {
            let f = Frame::find(a, &named::nu(n - 3, HalfInt::HALF, ctx), ctx)?;
            if !is_nu(&f.off(last, ctx), h(-(nn - 3)), ctx) {
                return None;
            }
            (f.clone(), f.off(tau, ctx))
        }
        [tau, a] => {
            let f = Frame::find(a, &named::one(n - 2, ctx), ctx)?;
            (f.clone(), f.off(tau, ctx))
        }
        _ => return None,
    };
    if tau.degree() != 2 {
        return None;
    }
    let one = named::one(n - 2, ctx);
    let r = if tau.is_cuspidal(ctx) {
        Ok(merged(vec![tau, one], ctx))
    } else if let Some(l) = tau.as_l(ctx) {
        let mu = Irrep::character(1, l.a, l.tag.clone(), ctx);
        if !e_above(ctx, 2) || !admissible_mu(&mu, n, ctx) {
            return None;
        }
        if is_nu(&mu, h(-(nn + 1)), ctx) {
            Err(unknown("U(St_2 mu nu^{1/2}) with mu = nu^{-(n+1)/2} is not catalogued"))
        } else {
            Ok(merged(vec![tau, one], ctx))
        }
    } else {
        let m = tau.multiseg()?;
        if m.count() != 2 || m.segs().iter().any(|s| s.len() != 1) {
            return None;
        }
        let chars: Vec<Irrep> = m.segs().iter().map(|s| Irrep::seg(s.clone(), ctx)).collect();
        let excluded = |c: &Irrep| is_nu(c, h(-(nn - 3)), ctx) || is_nu(c, h(nn - 1), ctx);
        if chars.iter().any(excluded) {
            return None;
        }
        if chars.iter().any(|c| is_nu(c, h(-(nn - 1)), ctx)) {
            Err(unknown("U(lambda x mu) with a factor nu^{-(n-1)/2} is not catalogued"))
        } else {
            Ok(merged(vec![tau, one], ctx))
        }
    };
    Some(r.map(|x| f.on(&x, ctx)))
}

/// `Λ_{n-1}^*·ν^{1/2} × ν^{-(n-3)/2}` and `Λ_{n-1}·ν^{1/2} × ν^{-(n-3)/2}`.
fn q_lambda_char(fs: &[Irrep], n: u64, ctx: &ModContext) -> Option<Result<Irrep>> {
    let [rho, chi] = fs else { return None };
    if n < 3 || !e_above(ctx, 1) {
        return None;
    }
    let nn = n as i64;
    let half = HalfInt::HALF;
    let dual_pattern = named::lambda_dual(n - 1, ctx).twist(half, ctx);
    if let Some(f) = Frame::find(rho, &dual_pattern, ctx) {
        if is_nu(&f.off(chi, ctx), h(-(nn - 3)), ctx) && !ctx.e_divides(nn - 2) && !ctx.e_divides(nn - 1) {
            let st = Irrep::z(
                &Multiseg::new(vec![Segment::point(h(-(nn - 1))), Segment::point(h(-(nn - 3)))]),
                ctx,
            );
            return Some(Ok(f.on(&merged(vec![named::one(n - 2, ctx), st], ctx), ctx)));
        }
    }
    let pattern = named::lambda(n - 1, ctx).twist(half, ctx);
    if let Some(f) = Frame::find(rho, &pattern, ctx) {
        if is_nu(&f.off(chi, ctx), h(-(nn - 3)), ctx) && e_above(ctx, 2) && !ctx.e_divides(nn - 2) {
            return Some(Ok(f.on(&named::lambda(n, ctx), ctx)));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Full reports

/// Structure of a product: the closed-form report for `Z(Δ) × χ`, otherwise
/// the semisimplification together with catalogued S and Q.
pub fn structure(x: &Expr, ctx: &ModContext) -> Result<StructureReport> {
    let fs = clean(x);
    let product = Expr::product(fs.iter().cloned().map(Expr::Irr).collect());
    if fs.len() <= 1 {
        let y = fs.into_iter().next().unwrap_or_else(Irrep::unit);
        return Ok(StructureReport::irreducible(product, y));
    }
    if let [p, q] = fs.as_slice() {
        if let (Some(d), Some(c)) = (p.as_segment(), q.as_character().filter(|c| c.deg == 1)) {
            return structure_z_times_char(d, &c, ctx);
        }
        if let (Some(c), Some(d)) = (p.as_character().filter(|c| c.deg == 1), q.as_segment()) {
            return Ok(structure_z_times_char(d, &c, ctx)?.reversed(product));
        }
    }
    let constituents = semisimplify(&product, ctx)?;
    let total = constituents.total();
    let length = if constituents.is_lower_bound() { Length::AtLeast(total) } else { Length::Exact(total) };
    let socle = s_of(&product, ctx).ok();
    let cosocle = q_of(&product, ctx).ok();
    let indecomposable = (socle.is_some() || cosocle.is_some()).then_some(true);
    let sequence = match (&length, &socle) {
        (Length::Exact(1), Some(x)) => Some(vec![x.clone()]),
        _ => None,
    };
    Ok(StructureReport {
        product,
        length,
        constituents,
        socle,
        cosocle,
        sequence,
        indecomposable,
        semisimple: (length == Length::Exact(1)).then_some(true),
        finite_reduction: None,
    })
}

// ---------------------------------------------------------------------------
// Derivatives by subtraction

/// How a derivative relates to the true one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Exact,
    /// Multiplicities are lower bounds.
    Lower,
    /// Multiplicities are upper bounds.
    Upper,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::Exact => "exact",
            Bound::Lower => "lower-bound",
            Bound::Upper => "upper-bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullDerivative {
    pub value: Groth<Expr>,
    pub bound: Bound,
}

/// The k-th derivative with reducible product terms semisimplified when the
/// tables allow, and labels outside the closed forms handled by subtracting
/// the other constituents of their standard module.
pub fn derivative_full(x: &Expr, k: u64, ctx: &ModContext) -> Result<FullDerivative> {
    let mut eng = Engine::new(ctx);
    match x {
        Expr::Irr(a) => full_irrep(a, k, &mut eng, false),
        Expr::Prod(_) => {
            let g = derivative(x, k, ctx)?;
            let bound = if g.is_lower_bound() { Bound::Lower } else { Bound::Exact };
            Ok(FullDerivative { value: resolve(&g, &mut eng), bound })
        }
    }
}

/// The k-th derivative of a multi-segment label computed only by subtraction
/// from its standard module, bypassing the closed forms.
pub fn derivative_by_subtraction(x: &Irrep, k: u64, ctx: &ModContext) -> Result<FullDerivative> {
    full_irrep(x, k, &mut Engine::new(ctx), true)
}

fn resolve(g: &Groth<Expr>, eng: &mut Engine<'_>) -> Groth<Expr> {
    let mut out = Groth::zero().flagged(g.is_lower_bound());
    for (y, m) in g.iter() {
        match y {
            Expr::Prod(_) => match eng.ss(y.atoms()) {
                Ok(r) if !r.is_lower_bound() => out.add(&r.scaled(m)),
                _ => out.add_term(y.clone(), m),
            },
            Expr::Irr(_) => out.add_term(y.clone(), m),
        }
    }
    out
}

fn full_irrep(x: &Irrep, k: u64, eng: &mut Engine<'_>, force: bool) -> Result<FullDerivative> {
    let ctx = eng.ctx;
    if !force {
        match derivative_irrep(x, k, ctx) {
            Ok(g) => {
                let bound = if g.is_lower_bound() { Bound::Lower } else { Bound::Exact };
                return Ok(FullDerivative { value: resolve(&g, eng), bound });
            }
            Err(e) if e.is_unknown() => {}
            Err(e) => return Err(e),
        }
    }
    let m = x.multiseg().filter(|m| m.count() >= 2).ok_or_else(|| {
        unknown(format!("derivative of {x} is not catalogued"))
    })?;
    let std: Vec<Irrep> = m.segs().iter().map(|s| Irrep::seg(s.clone(), ctx)).collect();
    let s = eng.ss(std.clone())?;
    if s.get(&Expr::Irr(x.clone())) != 1 {
        return Err(unknown(format!("{x} is not pinned in its standard module")));
    }
    let prod = Expr::product(std.into_iter().map(Expr::Irr).collect());
    let d = derivative(&prod, k, ctx)?;
    if d.is_lower_bound() {
        return Err(unknown("derivative of the standard module is only bounded below"));
    }
    let mut d = resolve(&d, eng);
    for (y, c) in s.iter() {
        let Some(y) = y.as_irrep() else {
            return Err(unknown("standard module has an unresolved term"));
        };
        if y == x {
            continue;
        }
        let dy = full_irrep(y, k, eng, false)?;
        if dy.bound != Bound::Exact {
            return Err(unknown(format!("derivative of {y} is not exact")));
        }
        d = d
            .checked_sub(&dy.value.scaled(c))
            .ok_or_else(|| unknown(format!("subtraction for the derivative of {x} is inconsistent")))?;
    }
    let bound = if s.is_lower_bound() { Bound::Upper } else { Bound::Exact };
    Ok(FullDerivative { value: d.flagged(false), bound })
}

/// Whether `f | n`, re-exported for report consumers.
pub fn f_divides(n: u64, ctx: &ModContext) -> bool {
    divides_f(ctx.f(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::named::*;

    fn g(xs: &[Irrep]) -> Groth<Expr> {
        Groth::from_terms(xs.iter().cloned().map(term))
    }

    fn zc(a: i64, b: i64) -> Segment {
        Segment::ints(a, b)
    }

    fn unit_char(x: i64) -> Character {
        Character { deg: 1, exp: HalfInt::int(x), tag: Tag::unramified() }
    }

    fn prod(xs: &[Irrep]) -> Expr {
        Expr::product(xs.iter().cloned().map(Expr::Irr).collect())
    }

    #[test]
    fn z_times_trivial_cases() {
        let ctx = ModContext::with_e(3);
        let z = |segs: &[(i64, i64)]| Irrep::z(&Multiseg::new(segs.iter().map(|&(a, b)| zc(a, b)).collect()), &ctx);
        // a ≡ 1, b ≢ -1
        let r = structure_z_times_char(&zc(1, 3), &unit_char(0), &ctx).unwrap();
        assert_eq!(r.length, Length::Exact(2));
        assert_eq!(r.sequence, Some(vec![z(&[(1, 3), (0, 0)]), z(&[(0, 3)])]));
        // a ≡ 1, b ≡ -1
        let r = structure_z_times_char(&zc(1, 2), &unit_char(0), &ctx).unwrap();
        assert_eq!(r.length, Length::Exact(3));
        assert_eq!(r.socle, Some(z(&[(1, 3)])));
        assert_eq!(r.cosocle, Some(z(&[(0, 2)])));
        assert!(r.sequence.is_none());
        // generic
        let r = structure_z_times_char(&zc(2, 3), &unit_char(0), &ctx).unwrap();
        assert_eq!(r.length, Length::Exact(1));
    }

    #[test]
    fn v_n_regimes() {
        for n in 2..=8u64 {
            let c0 = ModContext::char0();
            let r = v_n_structure(n, &c0).unwrap();
            assert_eq!(r.length, Length::Exact(2));
            assert_eq!(r.cosocle, Some(lambda(n, &c0)));
            let e3 = ModContext::with_e(3);
            let r = v_n_structure(n, &e3).unwrap();
            if n % 3 == 0 {
                assert_eq!(r.constituents, g(&[pi(n, &e3), nu(n, HalfInt::ONE, &e3), one(n, &e3)]));
            } else {
                assert_eq!(r.constituents, g(&[pi(n, &e3), nu(n, HalfInt::ONE, &e3)]));
                assert_eq!(r.cosocle, Some(lambda(n, &e3)));
            }
            let e1 = ModContext::e_one(5).unwrap();
            let r = v_n_structure(n, &e1).unwrap();
            if n % 5 == 0 {
                assert_eq!(r.length, Length::Exact(3));
                assert_eq!(r.indecomposable, Some(true));
                assert_eq!(r.constituents.get(&Expr::Irr(one(n, &e1))), 2);
            } else {
                assert_eq!(r.semisimple, Some(true));
                assert_eq!(r.constituents, g(&[one(n, &e1), pi(n, &e1)]));
            }
            assert!(r.finite_reduction.is_some());
        }
    }

    #[test]
    fn twelve_three_table() {
        for e in [2u64, 3, 4, 5] {
            let ctx = ModContext::with_e(e);
            for n in 4..=9u64 {
                let nn = n as i64;
                let p = prod(&[nu(n - 1, -HalfInt::HALF, &ctx), nu(1, h(-(nn - 3)), &ctx)]);
                let got = semisimplify(&p, &ctx).unwrap();
                let minus = |x: Irrep| x.twist(-HalfInt::ONE, &ctx);
                let want = match (e > 2, ctx.e_divides(nn - 2)) {
                    (true, false) => g(&[merged(p.atoms(), &ctx)]),
                    (true, true) => g(&[one(n, &ctx), minus(pi(n, &ctx))]),
                    (false, false) => g(&[minus(one(n, &ctx)), pi_dual(n, &ctx)]),
                    (false, true) => g(&[one(n, &ctx), minus(one(n, &ctx)), pi_dual(n, &ctx)]),
                };
                assert_eq!(got, want, "e={e} n={n}");
            }
        }
    }

    #[test]
    fn three_characters() {
        let e3 = ModContext::with_e(3);
        let p = prod(&[nu(1, h(-2), &e3), nu(1, h(0), &e3), nu(1, h(2), &e3)]);
        let got = semisimplify(&p, &e3).unwrap();
        let one3 = |x: i64| one(3, &e3).twist(HalfInt::int(x), &e3);
        let pi3 = |x: i64| pi(3, &e3).twist(HalfInt::int(x), &e3);
        let want = g(&[one3(0), one3(1), one3(-1), pi3(0), pi3(1), pi3(-1), st(3, &e3)]);
        assert_eq!(got, want);
        let c0 = ModContext::char0();
        let p = prod(&[nu(1, h(-2), &c0), nu(1, h(0), &c0), nu(1, h(2), &c0)]);
        let got = semisimplify(&p, &c0).unwrap();
        let want = g(&[
            one(3, &c0),
            lambda(3, &c0).twist(-HalfInt::ONE, &c0),
            lambda_dual(3, &c0).twist(HalfInt::ONE, &c0),
            st(3, &c0),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn lemma_twelve_five_and_six() {
        for e in [3u64, 4, 5] {
            let ctx = ModContext::with_e(e);
            for n in 4..=9u64 {
                let nn = n as i64;
                if ctx.e_divides(nn - 1) {
                    continue;
                }
                let two = |x: i64| one(2, &ctx).twist(h(x), &ctx);
                let got = semisimplify(&prod(&[one(n - 2, &ctx), two(-(nn - 2))]), &ctx).unwrap();
                let want = if ctx.e_divides(nn - 2) {
                    g(&[
                        one(n, &ctx),
                        pi_dual(n, &ctx).twist(HalfInt::ONE, &ctx),
                        pi(n, &ctx).twist(-HalfInt::ONE, &ctx),
                        phi(n, &ctx),
                    ])
                } else {
                    g(&[
                        merged(vec![nu(n - 1, -HalfInt::HALF, &ctx), nu(1, h(-(nn - 3)), &ctx)], &ctx),
                        phi(n, &ctx),
                    ])
                };
                assert_eq!(got, want, "e={e} n={n}");
                let got = semisimplify(&prod(&[one(n - 2, &ctx), two(-nn)]), &ctx).unwrap();
                let mut want = g(&[nu(n, -HalfInt::ONE, &ctx), psi(n, &ctx)]);
                if ctx.e_divides(nn) {
                    want.add_term(Expr::Irr(nu(n, HalfInt::ONE, &ctx)), 1);
                }
                assert_eq!(got, want, "e={e} n={n}");
            }
        }
    }

    #[test]
    fn b_by_label_expansion() {
        for e in [3u64, 4, 5] {
            let ctx = ModContext::with_e(e);
            for n in 5..=10u64 {
                let nn = n as i64;
                if !ctx.e_divides(nn - 2) {
                    continue;
                }
                let b = prod(&[lambda_dual(n - 1, &ctx).twist(HalfInt::HALF, &ctx), nu(1, h(-(nn - 3)), &ctx)]);
                let got = semisimplify(&b, &ctx).unwrap();
                let st2 = Irrep::z(&Multiseg::new(vec![Segment::point(h(-(nn - 1))), Segment::point(h(-(nn - 3)))]), &ctx);
                let want = g(&[phi(n, &ctx), pi_dual(n, &ctx).twist(HalfInt::ONE, &ctx), merged(vec![one(n - 2, &ctx), st2], &ctx)]);
                assert_eq!(got, want, "e={e} n={n}");
            }
        }
    }

    #[test]
    fn quotients() {
        let ctx = ModContext::with_e(4);
        for n in 3..=9u64 {
            let nn = n as i64;
            let v = prod(&[nu(n - 1, HalfInt::HALF, &ctx), nu(1, h(nn + 1), &ctx)]);
            assert_eq!(q_of(&v, &ctx).unwrap(), lambda(n, &ctx));
            let w = prod(&[nu(n - 1, -HalfInt::HALF, &ctx), nu(1, h(-(nn + 1)), &ctx)]);
            assert_eq!(s_of(&w, &ctx).unwrap(), lambda_dual(n, &ctx));
            let c = prod(&[nu(n - 2, HalfInt::ONE, &ctx), nu(1, h(-(nn - 1)), &ctx), nu(1, h(-(nn - 3)), &ctx)]);
            if n % 4 != 0 {
                assert_eq!(q_of(&c, &ctx).unwrap(), lambda_dual(n, &ctx).twist(HalfInt::ONE, &ctx));
            } else {
                assert!(q_of(&c, &ctx).is_err());
            }
        }
        let tau = cusp(2, "rho", &ctx);
        let u = prod(&[nu(3, HalfInt::HALF, &ctx), tau.clone(), nu(1, h(-3), &ctx)]);
        assert_eq!(q_of(&u, &ctx).unwrap(), merged(vec![tau, one(4, &ctx)], &ctx));
        // χ × χν
        let x = prod(&[nu(1, h(0), &ctx), nu(1, h(2), &ctx)]);
        assert_eq!(q_of(&x, &ctx).unwrap(), st(2, &ctx).twist(HalfInt::HALF, &ctx));
        let e2 = ModContext::with_e(2);
        let x = prod(&[nu(1, h(0), &e2), nu(1, h(2), &e2)]);
        assert_eq!(q_of(&x, &e2).unwrap(), one(2, &e2).twist(-HalfInt::HALF, &e2));
    }

    #[test]
    fn subtraction_matches_closed_forms() {
        for ctx in [ModContext::char0(), ModContext::with_e(3), ModContext::with_e(4), ModContext::with_e(5)] {
            for n in 3..=8u64 {
                for k in 1..=2u64 {
                    let p = pi(n, &ctx);
                    let closed = derivative_full(&Expr::Irr(p.clone()), k, &ctx).unwrap();
                    let sub = derivative_by_subtraction(&p, k, &ctx).unwrap();
                    assert_eq!(closed.value, sub.value, "{ctx} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn pi_dual_first_derivative_in_char0() {
        let c0 = ModContext::char0();
        for n in 3..=8u64 {
            let nn = n as i64;
            let d = derivative_full(&Expr::Irr(pi_dual(n, &c0)), 1, &c0).unwrap();
            let first = Irrep::z(
                &Multiseg::new(vec![
                    Segment::new(h(-(nn - 1)), h(nn - 5)),
                    Segment::point(h(-(nn + 1))),
                ]),
                &c0,
            );
            let want = g(&[first, nu(n - 1, -HalfInt::HALF, &c0)]);
            assert_eq!(d.value, want, "n={n}");
            assert_eq!(d.bound, Bound::Exact);
        }
    }
}
