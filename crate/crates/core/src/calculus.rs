//! Jacquet modules, the geometric lemma, derivatives and irreducibility of
//! products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::arith::{divides_f, HalfInt, ModContext};
use crate::error::{CalcError, Result};
use crate::reps::{named, Expr, Groth, Irrep, LeviTuple};
use crate::segments::{juxtaposed, linked, Segment, Tag};

/// A composition of n: positive parts, in order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u64>);

impl Composition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(CalcError::Degree("composition parts must be positive".into()));
        }
        Ok(Composition(parts))
    }

    /// `(1, …, 1)`.
    pub fn ones(n: u64) -> Self {
        Composition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Semisimplified Jacquet module: a sum of Levi tuples.
pub type JacquetSum = Groth<LeviTuple>;

fn seg_irrep(a: HalfInt, b: HalfInt, tag: &Tag, ctx: &ModContext) -> Expr {
    Expr::Irr(Irrep::seg(Segment::tagged(a, b, tag.clone()), ctx))
}

/// `r_{(k, n-k)}(Z([a, b])) = Z([a, a+k-1]) ⊗ Z([a+k, b])`.
pub fn jacquet_segment(s: &Segment, k: u64, ctx: &ModContext) -> Result<LeviTuple> {
    if k == 0 || k >= s.len() {
        return Err(CalcError::OutOfRange(format!("k = {k} for a segment of length {}", s.len())));
    }
    let k = k as i64;
    Ok(vec![seg_irrep(s.a, s.a + (k - 1), &s.tag, ctx), seg_irrep(s.a + k, s.b, &s.tag, ctx)])
}

/// The opposite Jacquet module `Z([a+n-k, b]) ⊗ Z([a, a+n-k-1])`.
pub fn jacquet_segment_opposite(s: &Segment, k: u64, ctx: &ModContext) -> Result<LeviTuple> {
    if k == 0 || k >= s.len() {
        return Err(CalcError::OutOfRange(format!("k = {k} for a segment of length {}", s.len())));
    }
    let r = (s.len() - k) as i64;
    Ok(vec![seg_irrep(s.a + r, s.b, &s.tag, ctx), seg_irrep(s.a, s.a + (r - 1), &s.tag, ctx)])
}

/// Jacquet module of an irreducible label along a composition of its degree.
pub fn jacquet_atom(x: &Irrep, beta: &[u64], ctx: &ModContext) -> Result<JacquetSum> {
    if beta.iter().sum::<u64>() != x.degree() || beta.contains(&0) {
        return Err(CalcError::Degree(format!("composition {beta:?} does not match {x}")));
    }
    if beta.len() == 1 {
        return Ok(Groth::single(vec![Expr::Irr(x.clone())]));
    }
    if x.as_cusp().is_some() || x.is_chain_cuspidal(ctx) {
        return Ok(Groth::zero());
    }
    if let Some(s) = x.as_segment() {
        let mut tuple = Vec::with_capacity(beta.len());
        let mut a = s.a;
        for &k in beta {
            let b = a + (k as i64 - 1);
            tuple.push(seg_irrep(a, b, &s.tag, ctx));
            a = b + 1;
        }
        return Ok(Groth::single(tuple));
    }
    if let Some(l) = x.as_l(ctx) {
        let tuple = vec![seg_irrep(l.b, l.b, &l.tag, ctx), seg_irrep(l.a, l.a, &l.tag, ctx)];
        return Ok(Groth::single(tuple));
    }
    if let Some(fs) = x.simple_factors(ctx) {
        let fs: Vec<Expr> = fs.into_iter().map(Expr::Irr).collect();
        return geometric_lemma(&fs, &Composition(beta.to_vec()), ctx);
    }
    if !x.cusps.is_empty() {
        let mut fs = vec![Expr::Irr(Irrep::z(&x.m, ctx))];
        fs.extend(x.cusps.iter().map(|c| Expr::Irr(Irrep::cusp(c.clone(), ctx))));
        return geometric_lemma(&fs, &Composition(beta.to_vec()), ctx);
    }
    Err(CalcError::unknown(format!("no Jacquet data for {x}")))
}

/// All vectors of length `caps.len()` with entries bounded by `caps` summing to `total`.
fn rows(total: u64, caps: &[u64]) -> Vec<Vec<u64>> {
    fn go(i: usize, left: u64, caps: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: u64 = caps[i + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for v in lo..=caps[i].min(left) {
            cur.push(v);
            go(i + 1, left - v, caps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, total, caps, &mut Vec::new(), &mut out);
    out
}

/// `r_β(π_1 × ⋯ × π_r)` by the geometric lemma: a sum over the matrices B
/// with row sums the factor degrees and column sums β.
pub fn geometric_lemma(factors: &[Expr], beta: &Composition, ctx: &ModContext) -> Result<JacquetSum> {
    let atoms: Vec<Irrep> =
        factors.iter().flat_map(Expr::atoms).filter(|a| a.degree() > 0).collect();
    let n: u64 = atoms.iter().map(Irrep::degree).sum();
    if n != beta.total() {
        return Err(CalcError::Degree(format!(
            "composition {beta} does not match degree {n}"
        )));
    }
    let cols = beta.parts();
    let mut memo: HashMap<(usize, Vec<u64>), JacquetSum> = HashMap::new();
    let mut out = JacquetSum::zero();
    let mut caps = cols.to_vec();
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    enumerate(&atoms, 0, &mut caps, &mut chosen, &mut |b: &[Vec<u64>]| -> Result<()> {
        // Per-row Jacquet data, then the column-wise products.
        let mut partial: Vec<(Vec<Vec<Irrep>>, u64)> = vec![(vec![Vec::new(); cols.len()], 1)];
        for (i, row) in b.iter().enumerate() {
            let comp: Vec<u64> = row.iter().copied().filter(|&v| v > 0).collect();
            let key = (i, comp.clone());
            if !memo.contains_key(&key) {
                let j = jacquet_atom(&atoms[i], &comp, ctx)?;
                memo.insert(key.clone(), j);
            }
            let data = &memo[&key];
            if data.is_zero() {
                return Ok(());
            }
            let slots: Vec<usize> = (0..cols.len()).filter(|&c| row[c] > 0).collect();
            let mut next = Vec::new();
            for (cur, mult) in &partial {
                for (tuple, m) in data.iter() {
                    let mut t = cur.clone();
                    for (piece, &c) in tuple.iter().zip(&slots) {
                        t[c].extend(piece.atoms());
                    }
                    next.push((t, mult * m));
                }
            }
            partial = next;
        }
        for (t, m) in partial {
            out.add_term(t.into_iter().map(Expr::slot).collect(), m);
        }
        Ok(())
    })?;
    Ok(out)
}

fn enumerate(
    atoms: &[Irrep],
    i: usize,
    caps: &mut Vec<u64>,
    chosen: &mut Vec<Vec<u64>>,
    f: &mut dyn FnMut(&[Vec<u64>]) -> Result<()>,
) -> Result<()> {
    if i == atoms.len() {
        return f(chosen);
    }
    for row in rows(atoms[i].degree(), caps) {
        for (c, v) in caps.iter_mut().zip(&row) {
            *c -= v;
        }
        chosen.push(row);
        enumerate(atoms, i + 1, caps, chosen, f)?;
        let row = chosen.pop().unwrap();
        for (c, v) in caps.iter_mut().zip(&row) {
            *c += v;
        }
    }
    Ok(())
}

/// Jacquet module of a product or single irreducible.
pub fn jacquet(x: &Expr, beta: &Composition, ctx: &ModContext) -> Result<JacquetSum> {
    geometric_lemma(std::slice::from_ref(x), beta, ctx)
}

/// Jacquet module of a formal sum.
pub fn jacquet_sum(g: &Groth<Expr>, beta: &Composition, ctx: &ModContext) -> Result<JacquetSum> {
    let mut out = JacquetSum::zero();
    for (x, m) in g.iter() {
        out.add(&jacquet(x, beta, ctx)?.scaled(m));
    }
    out.set_lower_bound(g.is_lower_bound());
    Ok(out)
}

// ---------------------------------------------------------------------------
// Irreducibility

/// Outcome of an irreducibility question.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

/// The cuspidal line an atom lives on: chain-cuspidal labels and opaque
/// cuspidal atoms form their own lines.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Line {
    Chars(Tag, bool),
    Chain(u64, Tag, bool),
    Cusp(u64, String, Tag),
}

fn integral(x: HalfInt) -> bool {
    x.is_integral()
}

fn atom_line(x: &Irrep, ctx: &ModContext) -> Line {
    if let Some(c) = x.as_cusp() {
        return Line::Cusp(c.deg, c.name.clone(), c.tag.clone());
    }
    let s = &x.m.segs()[0];
    if x.is_chain_cuspidal(ctx) {
        Line::Chain(x.degree(), s.tag.clone(), integral(s.a))
    } else {
        Line::Chars(s.tag.clone(), integral(s.a))
    }
}

/// Splits labels into atoms that each sit on one line.
fn expand_atoms(factors: &[Expr], ctx: &ModContext) -> Vec<Irrep> {
    let mut out = Vec::new();
    for a in factors.iter().flat_map(Expr::atoms) {
        if a.degree() == 0 {
            continue;
        }
        if let Some(fs) = a.simple_factors(ctx) {
            out.extend(fs);
            continue;
        }
        let mut by_line: BTreeMap<(Tag, bool), Vec<Segment>> = BTreeMap::new();
        for s in a.m.segs() {
            by_line.entry((s.tag.clone(), integral(s.a))).or_default().push(s.clone());
        }
        for segs in by_line.into_values() {
            out.push(Irrep::z(&crate::segments::Multiseg::new(segs), ctx));
        }
        out.extend(a.cusps.iter().map(|c| Irrep::cusp(c.clone(), ctx)));
    }
    out
}

/// Factors split into atoms and grouped by line; groups on different lines
/// do not interact.
pub(crate) fn line_groups(factors: &[Expr], ctx: &ModContext) -> Vec<Vec<Irrep>> {
    let mut groups: BTreeMap<Line, Vec<Irrep>> = BTreeMap::new();
    for a in expand_atoms(factors, ctx) {
        groups.entry(atom_line(&a, ctx)).or_default().push(a);
    }
    groups.into_values().collect()
}

fn pair_verdict(x: &Irrep, y: &Irrep, ctx: &ModContext) -> Irreducibility {
    use Irreducibility::*;
    let small = |z: &Irrep| -> Option<Segment> {
        z.as_l(ctx).or_else(|| z.as_segment().filter(|s| s.len() == 1).cloned())
    };
    if let (Some(s), Some(t)) = (x.as_segment(), y.as_segment()) { return if linked(s, t, ctx) { Reducible } else { Irreducible } }
    if let (Some(s), Some(t)) = (small(x), small(y)) {
        return if linked(&s, &t, ctx) { Reducible } else { Irreducible };
    }
    for (z, l) in [(x, y), (y, x)] {
        if let (Some(s), Some(d)) = (z.as_segment(), l.as_l(ctx)) {
            return if juxtaposed(s, &d, ctx) { Reducible } else { Irreducible };
        }
    }
    Unknown
}

/// Whether `π_1 × ⋯ × π_r` is irreducible.
pub fn is_irreducible_product(factors: &[Expr], ctx: &ModContext) -> Irreducibility {
    use Irreducibility::*;
    let atoms = expand_atoms(factors, ctx);
    let mut groups: BTreeMap<Line, Vec<Irrep>> = BTreeMap::new();
    for a in atoms {
        groups.entry(atom_line(&a, ctx)).or_default().push(a);
    }
    let mut verdict = Irreducible;
    for (line, g) in &groups {
        if g.len() < 2 {
            continue;
        }
        let v = match line {
            Line::Cusp(..) | Line::Chain(..) => Unknown,
            Line::Chars(..) if g.iter().all(|a| a.as_segment().is_some()) => {
                let segs: Vec<&Segment> = g.iter().map(|a| a.as_segment().unwrap()).collect();
                let any = segs.iter().enumerate().any(|(i, s)| {
                    segs[i + 1..].iter().any(|t| linked(s, t, ctx))
                });
                if any { Reducible } else { Irreducible }
            }
            Line::Chars(..) => {
                let mut v = Irreducible;
                for i in 0..g.len() {
                    for j in i + 1..g.len() {
                        match pair_verdict(&g[i], &g[j], ctx) {
                            Reducible => return Reducible,
                            Unknown => v = Unknown,
                            Irreducible => {}
                        }
                    }
                }
                if g.len() > 2 && v == Irreducible {
                    Unknown
                } else {
                    v
                }
            }
        };
        match v {
            Reducible => return Reducible,
            Unknown => verdict = Unknown,
            Irreducible => {}
        }
    }
    verdict
}

/// `π_{w(1)} × ⋯ × π_{w(r)}`, valid when the product is irreducible.
pub fn commute_product(factors: &[Expr], perm: &[usize], ctx: &ModContext) -> Result<Expr> {
    let mut seen = perm.to_vec();
    seen.sort_unstable();
    if seen != (0..factors.len()).collect::<Vec<_>>() {
        return Err(CalcError::OutOfRange("not a permutation of the factors".into()));
    }
    if is_irreducible_product(factors, ctx) != Irreducibility::Irreducible {
        return Err(CalcError::unknown("irreducibility of the product is not established"));
    }
    Ok(Expr::product(perm.iter().map(|&i| factors[i].clone()).collect()))
}

/// Replaces product terms that are irreducible by their labels.
pub fn normalize(g: &Groth<Expr>, ctx: &ModContext) -> Groth<Expr> {
    g.map(|x| normalize_expr(x, ctx))
}

pub fn normalize_expr(x: &Expr, ctx: &ModContext) -> Expr {
    match x {
        Expr::Prod(_) if is_irreducible_product(std::slice::from_ref(x), ctx) == Irreducibility::Irreducible => {
            Expr::Irr(Irrep::irreducible_product(x.atoms(), ctx))
        }
        Expr::Prod(_) => x.groth_key(),
        Expr::Irr(_) => x.clone(),
    }
}

// ---------------------------------------------------------------------------
// Derivatives

fn unit() -> Groth<Expr> {
    Groth::single(Expr::Irr(Irrep::unit()))
}

fn one_term(x: Irrep) -> Groth<Expr> {
    Groth::single(Expr::Irr(x))
}

fn twisted(x: Irrep, e: HalfInt, t: &Tag, ctx: &ModContext) -> Irrep {
    x.twist(e, ctx).twist_tag(t, ctx)
}

fn twisted_expr(x: Expr, e: HalfInt, t: &Tag, ctx: &ModContext) -> Expr {
    x.twist(e, ctx).twist_tag(t, ctx)
}

/// Leibniz rule over the given factors.
fn leibniz(factors: &[Irrep], k: u64, ctx: &ModContext) -> Result<Groth<Expr>> {
    let mut acc: Vec<(Vec<Irrep>, u64, u64)> = vec![(Vec::new(), 0, 1)];
    let mut flag = false;
    for (i, x) in factors.iter().enumerate() {
        let rest: u64 = factors[i + 1..].iter().map(Irrep::degree).sum();
        let mut next = Vec::new();
        for (atoms, used, mult) in &acc {
            let lo = k.saturating_sub(used + rest);
            let hi = x.degree().min(k - used);
            for ki in lo..=hi {
                let d = derivative_irrep(x, ki, ctx)?;
                flag |= d.is_lower_bound();
                for (piece, m) in d.iter() {
                    let mut a = atoms.clone();
                    a.extend(piece.atoms());
                    next.push((a, used + ki, mult * m));
                }
            }
        }
        acc = next;
    }
    let mut out = Groth::zero();
    for (atoms, used, m) in acc {
        if used == k {
            out.add_term(Expr::slot(atoms), m);
        }
    }
    Ok(normalize(&out, ctx).flagged(flag))
}

/// The k-th derivative of an irreducible label, from the catalogued rules.
pub fn derivative_irrep(x: &Irrep, k: u64, ctx: &ModContext) -> Result<Groth<Expr>> {
    let n = x.degree();
    if k > n {
        return Err(CalcError::OutOfRange(format!("k = {k} exceeds degree {n}")));
    }
    if k == 0 {
        return Ok(one_term(x.clone()));
    }
    if x.is_cuspidal(ctx) {
        return Ok(if k == n { unit() } else { Groth::zero() });
    }
    if let Some(s) = x.as_segment() {
        if k >= 2 {
            return Ok(Groth::zero());
        }
        return Ok(one_term(Irrep::seg(Segment::tagged(s.a, s.b - 1, s.tag.clone()), ctx)));
    }
    if let Some(fs) = x.simple_factors(ctx) {
        return leibniz(&fs, k, ctx);
    }
    if !x.cusps.is_empty() {
        let mut fs = vec![Irrep::z(&x.m, ctx)];
        fs.extend(x.cusps.iter().map(|c| Irrep::cusp(c.clone(), ctx)));
        return leibniz(&fs, k, ctx);
    }
    if let Some(l) = x.as_l(ctx) {
        return Ok(match k {
            1 => one_term(Irrep::seg(Segment::tagged(l.b, l.b, l.tag.clone()), ctx)),
            _ => unit(),
        });
    }
    named_derivative(x, k, ctx)
        .unwrap_or_else(|| Err(CalcError::unknown(format!("derivative of {x} is not catalogued"))))
}

fn named_derivative(x: &Irrep, k: u64, ctx: &ModContext) -> Option<Result<Groth<Expr>>> {
    use named::*;
    let n = x.degree();
    let h = HalfInt::from_twice;
    if n == 3 && ctx.f() != 3 {
        if let Some((e, t)) = match_twist(x, &st_multiseg(3), ctx) {
            let g = match k {
                1 => one_term(twisted(st(2, ctx), e + h(1), &t, ctx)),
                2 => one_term(twisted(nu(1, HalfInt::ONE, ctx), e, &t, ctx)),
                _ => unit(),
            };
            return Some(Ok(g));
        }
    }
    if n >= 3 {
        if let Some((e, t)) = match_twist(x, &pi_multiseg(n), ctx) {
            return Some(Ok(pi_derivative(n, k, ctx).map(|y| twisted_expr(y.clone(), e, &t, ctx))));
        }
        if let Some((e, t)) = match_twist(x, &pi_multiseg(n).contragredient(), ctx) {
            let g = match k {
                1 => return Some(Err(CalcError::unknown(format!(
                    "first derivative of {x} needs the structure tables"
                )))),
                2 => one_term(twisted(nu(n - 2, -HalfInt::ONE, ctx), e, &t, ctx)),
                _ => Groth::zero(),
            };
            return Some(Ok(g));
        }
    }
    let phi_psi_ok = n >= 4 && ctx.e_finite().is_some_and(|e| e > 1) && !ctx.e_divides(n as i64 - 1);
    if phi_psi_ok {
        if let Some((e, t)) = match_twist(x, &phi_multiseg(n), ctx) {
            return Some(phi_psi_tail(x, k, twisted(pi_dual(n - 2, ctx), e, &t, ctx).into()));
        }
        if let Some((e, t)) = match_twist(x, &psi_multiseg(n), ctx) {
            let second = Expr::product(vec![
                Expr::Irr(nu(n - 3, h(-1), ctx)),
                Expr::Irr(nu(1, h(-(n as i64 + 1)), ctx)),
            ]);
            let second = normalize_expr(&twisted_expr(second, e, &t, ctx), ctx);
            return Some(phi_psi_tail(x, k, second));
        }
    }
    None
}

fn phi_psi_tail(x: &Irrep, k: u64, second: Expr) -> Result<Groth<Expr>> {
    match k {
        1 => Err(CalcError::unknown(format!("first derivative of {x} needs the structure tables"))),
        2 => Ok(Groth::single(second)),
        _ => Ok(Groth::zero()),
    }
}

/// Derivatives of `Π_n`, n ≥ 3, in its own coordinates.
fn pi_derivative(n: u64, k: u64, ctx: &ModContext) -> Groth<Expr> {
    use named::*;
    match k {
        1 if divides_f(ctx.f(), n) => {
            one_term(lambda_dual(n - 1, ctx).twist(HalfInt::HALF, ctx))
        }
        1 => {
            let p = Expr::product(vec![
                Expr::Irr(one(n - 2, ctx)),
                Expr::Irr(nu(1, HalfInt::from_twice(n as i64 + 1), ctx)),
            ]);
            Groth::single(normalize_expr(&p, ctx))
        }
        2 => one_term(one(n - 2, ctx)),
        _ => Groth::zero(),
    }
}

/// The k-th derivative of a product or label (Leibniz rule on products).
pub fn derivative(x: &Expr, k: u64, ctx: &ModContext) -> Result<Groth<Expr>> {
    match x {
        Expr::Irr(a) => derivative_irrep(a, k, ctx),
        Expr::Prod(_) => {
            let atoms: Vec<Irrep> = x.atoms().into_iter().filter(|a| a.degree() > 0).collect();
            if k > x.degree() {
                return Err(CalcError::OutOfRange(format!("k = {k} exceeds degree {}", x.degree())));
            }
            leibniz(&atoms, k, ctx)
        }
    }
}

/// Additive extension to formal sums.
pub fn derivative_sum(g: &Groth<Expr>, k: u64, ctx: &ModContext) -> Result<Groth<Expr>> {
    let mut out = Groth::zero();
    for (x, m) in g.iter() {
        out.add(&derivative(x, k, ctx)?.scaled(m));
    }
    out.set_lower_bound(g.is_lower_bound() || out.is_lower_bound());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::named::*;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    fn irr(x: Irrep) -> Expr {
        Expr::Irr(x)
    }

    #[test]
    fn segment_jacquet_modules() {
        let c0 = ModContext::char0();
        let s = Segment::ints(0, 2);
        let t = jacquet_segment(&s, 1, &c0).unwrap();
        assert_eq!(t, vec![irr(nu(1, h("0"), &c0)), irr(Irrep::seg(Segment::ints(1, 2), &c0))]);
        let o = jacquet_segment_opposite(&s, 1, &c0).unwrap();
        assert_eq!(o, vec![irr(nu(1, h("2"), &c0)), irr(Irrep::seg(Segment::ints(0, 1), &c0))]);
        assert!(jacquet_segment(&s, 3, &c0).is_err());
    }

    #[test]
    fn two_characters() {
        let c0 = ModContext::char0();
        let f = vec![irr(nu(1, h("0"), &c0)), irr(nu(1, h("3"), &c0))];
        let j = geometric_lemma(&f, &Composition::ones(2), &c0).unwrap();
        assert_eq!(j.total(), 2);
        assert_eq!(j.distinct(), 2);
    }

    #[test]
    fn z_times_z01_levi_two() {
        let ctx = ModContext::with_e(5);
        let f = vec![irr(Irrep::seg(Segment::ints(2, 4), &ctx)), irr(Irrep::seg(Segment::ints(0, 1), &ctx))];
        let j = geometric_lemma(&f, &Composition::new(vec![3, 2]).unwrap(), &ctx).unwrap();
        assert_eq!(j.total(), 3);
    }

    #[test]
    fn pi_derivatives() {
        for ctx in [ModContext::char0(), ModContext::with_e(3), ModContext::with_e(2)] {
            for n in 3..=8u64 {
                let p = irr(pi(n, &ctx));
                let d2 = derivative(&p, 2, &ctx).unwrap();
                assert_eq!(d2, Groth::single(irr(one(n - 2, &ctx))));
                assert!(derivative(&p, 3, &ctx).unwrap().is_zero());
                let d1 = derivative(&p, 1, &ctx).unwrap();
                assert_eq!(d1.total(), 1);
            }
        }
    }

    #[test]
    fn st2_and_st3() {
        let e3 = ModContext::with_e(3);
        let st2 = irr(st(2, &e3));
        assert_eq!(derivative(&st2, 1, &e3).unwrap(), Groth::single(irr(nu(1, h("1/2"), &e3))));
        let e2 = ModContext::with_e(2);
        assert!(derivative(&irr(st(2, &e2)), 1, &e2).unwrap().is_zero());
        let c0 = ModContext::char0();
        let st3 = irr(st(3, &c0));
        assert_eq!(
            derivative(&st3, 1, &c0).unwrap(),
            Groth::single(irr(st(2, &c0).twist(h("1/2"), &c0)))
        );
        assert_eq!(derivative(&st3, 2, &c0).unwrap(), Groth::single(irr(nu(1, h("1"), &c0))));
        assert!(derivative(&irr(st(3, &e3)), 1, &e3).unwrap().is_zero());
    }

    #[test]
    fn leibniz_on_v_n() {
        let c0 = ModContext::char0();
        for n in 3..=7u64 {
            let v = Expr::product(vec![
                irr(nu(n - 1, h("1/2"), &c0)),
                irr(nu(1, HalfInt::from_twice(n as i64 + 1), &c0)),
            ]);
            let d = derivative(&v, 1, &c0).unwrap();
            assert_eq!(d.total(), 2);
            assert!(d.get(&irr(nu(n - 1, h("1/2"), &c0))) == 1);
        }
    }

    #[test]
    fn irreducibility() {
        use Irreducibility::*;
        let c0 = ModContext::char0();
        let f = |a: &str, b: &str| vec![irr(nu(1, h(a), &c0)), irr(nu(1, h(b), &c0))];
        assert_eq!(is_irreducible_product(&f("0", "1"), &c0), Reducible);
        assert_eq!(is_irreducible_product(&f("0", "2"), &c0), Irreducible);
        let e3 = ModContext::with_e(3);
        let z13 = irr(Irrep::seg(Segment::ints(1, 3), &e3));
        let l01 = irr(l(&Segment::ints(0, 1), &e3).unwrap());
        assert_eq!(is_irreducible_product(&[z13, l01.clone()], &e3), Irreducible);
        let z14 = irr(Irrep::seg(Segment::ints(2, 4), &e3));
        assert_eq!(is_irreducible_product(&[z14, l01], &e3), Reducible);
        let tau = irr(cusp(2, "tau", &c0));
        let p = vec![tau, irr(one(3, &c0))];
        assert_eq!(is_irreducible_product(&p, &c0), Irreducible);
        let swapped = commute_product(&p, &[1, 0], &c0).unwrap();
        assert_eq!(swapped, Expr::product(vec![p[1].clone(), p[0].clone()]));
    }
}
