//! Subquotient elimination: enumerate the multisegments a product can
//! contain, discard those whose Jacquet data is absent, and pin
//! multiplicities by counting Jacquet constituents.
//!
//! The solver only uses the geometric lemma, Jacquet modules of segments,
//! and its own recursive answers for smaller products, so it can serve as an
//! oracle for the closed-form tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::arith::{dominates, HalfInt, ModContext, Order};
use crate::calculus::{geometric_lemma, jacquet_atom, line_groups, Composition, JacquetSum};
use crate::error::{CalcError, Result};
use crate::reps::{Expr, Groth, Irrep, LeviTuple};
use crate::segments::{lambda_of, linked, support, Multiseg, Point, Segment, Tag};

/// Candidates for which the subtraction test is attempted are capped at
/// this degree to keep sweeps fast.
const SUBTRACTION_MAX_DEGREE: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mult {
    Exact(u64),
    AtLeast(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Open,
    Excluded(String),
    Confirmed(Mult),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Open => f.write_str("open"),
            Status::Excluded(r) => write!(f, "excluded ({r})"),
            Status::Confirmed(Mult::Exact(m)) => write!(f, "confirmed x{m}"),
            Status::Confirmed(Mult::AtLeast(m)) => write!(f, "confirmed x>={m}"),
        }
    }
}

/// One Jacquet comparison made for a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub beta: Composition,
    pub tuple: String,
    /// Multiplicity of the tuple in the product's Jacquet module, if resolved.
    pub found: Option<u64>,
    /// Multiplicity of the tuple in the candidate's own Jacquet module.
    pub needed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub label: Irrep,
    pub mu: Option<Composition>,
    pub st: Option<LeviTuple>,
    /// Multiplicity of `St(n)` in `r_μ(n)` of the product.
    pub st_multiplicity: Option<u64>,
    /// Known to occur, by a chain of segment merges from the baseline.
    pub present: bool,
    pub lower: u64,
    pub upper: Option<u64>,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Candidate {
    fn new(label: Irrep) -> Self {
        Candidate {
            label,
            mu: None,
            st: None,
            st_multiplicity: None,
            present: false,
            lower: 0,
            upper: None,
            status: Status::Open,
            checks: Vec::new(),
        }
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self.status, Status::Excluded(_))
    }

    fn cap(&mut self, c: u64) {
        self.upper = Some(self.upper.map_or(c, |u| u.min(c)));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub product: Expr,
    pub baseline: Irrep,
    pub candidates: Vec<Candidate>,
}

/// Multiplicity ranges left over when the arguments do not pin everything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialResult {
    /// Constituents known to occur, with lower bounds.
    pub known: Groth<Expr>,
    /// Every surviving candidate with its multiplicity interval.
    pub intervals: Vec<(Irrep, u64, Option<u64>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Exact(Groth<Expr>),
    Partial(PartialResult),
}

impl Decomposition {
    pub fn exact(&self) -> Option<&Groth<Expr>> {
        match self {
            Decomposition::Exact(g) => Some(g),
            Decomposition::Partial(_) => None,
        }
    }

    /// Constituents known to occur, flagged when only lower bounds.
    pub fn lower_bound(&self) -> Groth<Expr> {
        match self {
            Decomposition::Exact(g) => g.clone(),
            Decomposition::Partial(p) => p.known.clone().flagged(true),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub product: Expr,
    pub full_jacquet_length: u64,
    /// Candidate sets, one per cuspidal line that needed elimination.
    pub sets: Vec<CandidateSet>,
    pub result: Decomposition,
    /// How the answer was certified.
    pub certificate: Vec<String>,
}

// ---------------------------------------------------------------------------
// Enumeration

fn baseline_of(atoms: &[Irrep]) -> Result<Multiseg> {
    let mut segs = Vec::new();
    for a in atoms {
        if !a.has_character_support() {
            return Err(CalcError::OutOfRange(format!("{a} does not have character support")));
        }
        segs.extend(a.m.segs().iter().cloned());
    }
    Ok(Multiseg::new(segs))
}

/// All multisegments with the support of the product's baseline whose
/// partition strictly dominates the baseline's, plus the baseline itself.
pub fn enumerate_candidates(product: &Expr, ctx: &ModContext) -> Result<CandidateSet> {
    let atoms: Vec<Irrep> = product.atoms().into_iter().filter(|a| a.degree() > 0).collect();
    let m = baseline_of(&atoms)?;
    let baseline = Irrep::z(&m, ctx);
    let candidates = enumerate_multisegs(&m, ctx).into_iter().map(|n| Candidate::new(Irrep::z(&n, ctx))).collect();
    Ok(CandidateSet { product: Expr::product(atoms.into_iter().map(Expr::Irr).collect()), baseline, candidates })
}

fn enumerate_multisegs(m: &Multiseg, ctx: &ModContext) -> Vec<Multiseg> {
    let counts = support(m, ctx);
    let n: u64 = counts.values().sum();
    let target = lambda_of(m);
    let base = m.canonical(ctx);
    // Segment classes: a start point and a length.
    let mut types: Vec<(Segment, Vec<Point>)> = Vec::new();
    for (tag, p) in counts.keys() {
        for len in 1..=n as i64 {
            let s = Segment::tagged(*p, *p + (len - 1), tag.clone());
            let pts: Vec<Point> = s.points().map(|x| (tag.clone(), ctx.reduce(x))).collect();
            let mut need: BTreeMap<&Point, u64> = BTreeMap::new();
            for q in &pts {
                *need.entry(q).or_insert(0) += 1;
            }
            if need.iter().all(|(q, c)| counts.get(*q).is_some_and(|have| have >= c)) {
                types.push((s, pts));
            }
        }
    }
    types.sort_by(|(x, _), (y, _)| y.len().cmp(&x.len()).then((&x.tag, x.a).cmp(&(&y.tag, y.a))));

    struct Search<'a> {
        types: &'a [(Segment, Vec<Point>)],
        prefix: Vec<u64>,
        out: Vec<Multiseg>,
    }
    fn go(s: &mut Search<'_>, i: usize, left: &mut BTreeMap<Point, u64>, chosen: &mut Vec<Segment>, sum: u64) {
        if left.values().all(|&c| c == 0) {
            s.out.push(Multiseg::new(chosen.clone()));
            return;
        }
        for j in i..s.types.len() {
            let (seg, pts) = &s.types[j];
            if !fits(left, pts) {
                continue;
            }
            let k = chosen.len();
            let total = sum + seg.len();
            if k < s.prefix.len() && total < s.prefix[k] {
                continue;
            }
            for q in pts {
                *left.get_mut(q).unwrap() -= 1;
            }
            chosen.push(seg.clone());
            go(s, j, left, chosen, total);
            chosen.pop();
            for q in pts {
                *left.get_mut(q).unwrap() += 1;
            }
        }
    }
    fn fits(left: &BTreeMap<Point, u64>, pts: &[Point]) -> bool {
        let mut need: BTreeMap<&Point, u64> = BTreeMap::new();
        for q in pts {
            *need.entry(q).or_insert(0) += 1;
        }
        need.iter().all(|(q, c)| left.get(*q).is_some_and(|have| have >= c))
    }

    let mut prefix = Vec::new();
    let mut acc = 0;
    for &p in target.parts() {
        acc += p;
        prefix.push(acc);
    }
    let mut s = Search { types: &types, prefix, out: Vec::new() };
    let mut left = counts.clone();
    go(&mut s, 0, &mut left, &mut Vec::new(), 0);
    let mut out: Vec<Multiseg> = s
        .out
        .into_iter()
        .map(|x| x.canonical(ctx))
        .filter(|x| {
            let l = lambda_of(x);
            if l == target {
                *x == base
            } else {
                dominates(&l, &target).unwrap_or(false)
            }
        })
        .collect();
    out.sort_by_key(|x| Irrep::z(x, ctx));
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// μ(n) and St(n)

fn point_irrep(x: HalfInt, tag: &Tag, ctx: &ModContext) -> Expr {
    Expr::Irr(Irrep::seg(Segment::tagged(x, x, tag.clone()), ctx))
}

/// The composition `μ(n)` and the tuple `St(n)` for a segment or a pair of
/// segments.
pub fn mu_and_st_of(m: &Multiseg, ctx: &ModContext) -> Result<(Composition, LeviTuple)> {
    match m.segs() {
        [s] => {
            let st = s.points().map(|x| point_irrep(x, &s.tag, ctx)).collect();
            Ok((Composition::ones(s.len()), st))
        }
        [p, q] => {
            if p.tag != q.tag {
                return Err(CalcError::OutOfRange("segments on different lines".into()));
            }
            let (long, short) = if p.len() >= q.len() { (p, q) } else { (q, p) };
            let n = long.len() + short.len();
            let k = short.len();
            let ones = n - 2 * k;
            let mut parts = vec![1; ones as usize];
            parts.extend(std::iter::repeat_n(2, k as usize));
            let mut st: LeviTuple = (0..ones as i64).map(|i| point_irrep(long.a + i, &long.tag, ctx)).collect();
            for i in 0..k as i64 {
                let x = long.a + (ones as i64 + i);
                let y = short.a + i;
                let pair = Multiseg::new(vec![
                    Segment::tagged(x, x, long.tag.clone()),
                    Segment::tagged(y, y, long.tag.clone()),
                ]);
                st.push(Expr::Irr(Irrep::z(&pair, ctx)));
            }
            Ok((Composition::new(parts)?, st))
        }
        _ => Err(CalcError::OutOfRange(format!("unsupported shape {m} for St(m)"))),
    }
}

/// Total multiplicity of `r_(1,…,1)` of the product.
pub fn full_jacquet_length(product: &Expr, ctx: &ModContext) -> Result<u64> {
    let n = product.degree();
    if n == 0 {
        return Ok(1);
    }
    Ok(geometric_lemma(&product.atoms().into_iter().map(Expr::Irr).collect::<Vec<_>>(), &Composition::ones(n), ctx)?
        .total())
}

// ---------------------------------------------------------------------------
// Existence by segment merges

/// Multisegments reached from `m` by replacing two linked segments with
/// their union and intersection, for some alignment of representatives.
fn merges(m: &Multiseg, ctx: &ModContext) -> Vec<Multiseg> {
    let segs = m.segs();
    let mut out = Vec::new();
    for i in 0..segs.len() {
        for j in 0..segs.len() {
            if i == j || segs[i].tag != segs[j].tag || !linked(&segs[i], &segs[j], ctx) {
                continue;
            }
            let (s, t) = (&segs[i], &segs[j]);
            let off = t.a - s.a;
            if !off.is_integral() {
                continue;
            }
            for shift in alignments(s, t, ctx) {
                let c = t.a + shift;
                let d = t.b + shift;
                let mut rest: Vec<Segment> =
                    segs.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, x)| x.clone()).collect();
                rest.push(Segment::tagged(s.a, d, s.tag.clone()));
                if c <= s.b {
                    rest.push(Segment::tagged(c, s.b, s.tag.clone()));
                }
                out.push(Multiseg::new(rest).canonical(ctx));
            }
        }
    }
    out
}

/// Shifts (multiples of e) putting `t` right after `s` with `s` preceding it:
/// `s.a < t.a' <= s.b + 1 <= t.b'`.
fn alignments(s: &Segment, t: &Segment, ctx: &ModContext) -> Vec<HalfInt> {
    let fits = |sh: HalfInt| {
        let c = t.a + sh;
        let d = t.b + sh;
        s.a < c && c <= s.b + 1 && d > s.b
    };
    match ctx.e() {
        Order::Infinity => fits(HalfInt::ZERO).then_some(HalfInt::ZERO).into_iter().collect(),
        Order::Finite(e) => {
            let e = e as i64;
            let lo = (s.a - t.a).to_int().unwrap_or(0);
            let first = lo.div_euclid(e) * e;
            (0..=(s.len() as i64 / e + 2))
                .map(|k| HalfInt::int(first + k * e))
                .filter(|&sh| fits(sh))
                .collect()
        }
    }
}

fn existence_closure(m: &Multiseg, ctx: &ModContext) -> BTreeSet<Irrep> {
    let mut seen = BTreeSet::new();
    let mut todo = vec![m.canonical(ctx)];
    while let Some(x) = todo.pop() {
        if !seen.insert(Irrep::z(&x, ctx)) {
            continue;
        }
        todo.extend(merges(&x, ctx));
    }
    seen
}

// ---------------------------------------------------------------------------
// The engine

type Resolved = Groth<LeviTuple>;

struct Solver<'a> {
    ctx: &'a ModContext,
    memo: HashMap<Vec<Irrep>, Result<Decomposition>>,
    active: BTreeSet<Vec<Irrep>>,
    label_memo: HashMap<(Irrep, Vec<u64>), Option<Resolved>>,
}

struct LineOutcome {
    result: Decomposition,
    set: Option<CandidateSet>,
    certificate: Vec<String>,
}

fn unknown(msg: impl Into<String>) -> CalcError {
    CalcError::unknown(msg)
}

fn slot_support(x: &Expr, ctx: &ModContext) -> BTreeMap<Point, u64> {
    x.char_support(ctx)
}

fn tuple_text(t: &[Expr]) -> String {
    t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" (x) ")
}

/// Two-block compositions, most balanced first.
fn two_part(n: u64) -> Vec<Composition> {
    let mut ks: Vec<u64> = (1..n).collect();
    ks.sort_by_key(|&k| ((2 * k).abs_diff(n), std::cmp::Reverse(k)));
    ks.into_iter().map(|k| Composition::new(vec![k, n - k]).unwrap()).collect()
}

fn three_part(n: u64) -> Vec<Composition> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in 1..n - a {
            out.push(Composition::new(vec![a, b, n - a - b]).unwrap());
        }
    }
    out
}

impl<'a> Solver<'a> {
    fn new(ctx: &'a ModContext) -> Self {
        Solver { ctx, memo: HashMap::new(), active: BTreeSet::new(), label_memo: HashMap::new() }
    }

    fn key(atoms: &[Irrep]) -> Vec<Irrep> {
        let mut k: Vec<Irrep> = atoms.iter().filter(|a| a.degree() > 0).cloned().collect();
        k.sort();
        k
    }

    /// Memoized decomposition of a product of atoms.
    fn decomposition(&mut self, atoms: &[Irrep]) -> Result<Decomposition> {
        let key = Self::key(atoms);
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        if !self.active.insert(key.clone()) {
            return Err(unknown("decomposition depends on itself"));
        }
        let r = self.solve(&key).map(|o| o.0);
        self.active.remove(&key);
        self.memo.insert(key, r.clone());
        r
    }

    fn exact(&mut self, atoms: &[Irrep]) -> Option<Groth<Expr>> {
        if let [x] = atoms {
            return Some(Groth::single(Expr::Irr(x.clone())));
        }
        match self.decomposition(atoms) {
            Ok(Decomposition::Exact(g)) => Some(g),
            _ => None,
        }
    }

    /// Decomposition across lines, with the per-line candidate sets.
    fn solve(&mut self, atoms: &[Irrep]) -> Result<(Decomposition, Vec<CandidateSet>, Vec<String>)> {
        let ctx = self.ctx;
        if atoms.is_empty() {
            return Ok((Decomposition::Exact(Groth::single(Expr::Irr(Irrep::unit()))), vec![], vec![]));
        }
        let exprs: Vec<Expr> = atoms.iter().cloned().map(Expr::Irr).collect();
        let groups = line_groups(&exprs, ctx);
        let mut parts = Vec::new();
        let mut sets = Vec::new();
        let mut cert = Vec::new();
        for g in groups {
            let o = self.solve_line(&g)?;
            parts.push(o.result);
            sets.extend(o.set);
            cert.extend(o.certificate);
        }
        if parts.len() == 1 {
            return Ok((parts.pop().unwrap(), sets, cert));
        }
        let mut acc: Vec<(Vec<Irrep>, u64)> = vec![(Vec::new(), 1)];
        for p in &parts {
            let g = p.exact().ok_or_else(|| unknown("a line has only a partial answer"))?;
            let mut next = Vec::new();
            for (pre, m) in &acc {
                for (y, c) in g.iter() {
                    let mut v = pre.clone();
                    v.extend(y.atoms());
                    next.push((v, m * c));
                }
            }
            acc = next;
        }
        cert.push("lines do not interact: constituents multiply".into());
        let g = Groth::from_terms(acc.into_iter().map(|(v, m)| (Expr::Irr(Irrep::irreducible_product(v, ctx)), m)));
        Ok((Decomposition::Exact(g), sets, cert))
    }

    fn solve_line(&mut self, atoms: &[Irrep]) -> Result<LineOutcome> {
        let ctx = self.ctx;
        let exact = |g: Groth<Expr>, c: &str| LineOutcome {
            result: Decomposition::Exact(g),
            set: None,
            certificate: vec![c.to_string()],
        };
        if let [x] = atoms {
            return Ok(exact(Groth::single(Expr::Irr(x.clone())), "single irreducible factor"));
        }
        if atoms.iter().any(|a| !a.has_character_support()) {
            let segs_free = atoms.iter().all(|a| a.multiseg().is_none_or(|m| m.count() == 0));
            let unlinked = segs_free && {
                let cs: Vec<_> = atoms.iter().flat_map(|a| a.cusps.iter()).collect();
                cs.iter().enumerate().all(|(i, c)| cs[i + 1..].iter().all(|d| c.line() != d.line() || c.exp == d.exp))
            };
            if unlinked {
                return Ok(exact(
                    Groth::single(Expr::Irr(Irrep::irreducible_product(atoms.to_vec(), ctx))),
                    "cuspidal factors with no linked pair",
                ));
            }
            return Err(unknown("products of linked cuspidal factors are outside the solver"));
        }
        if ctx.e() == Order::Finite(1) {
            return Err(unknown("the solver needs e > 1 or characteristic zero"));
        }
        if atoms.iter().all(|a| a.as_segment().is_some()) {
            let segs: Vec<&Segment> = atoms.iter().filter_map(Irrep::as_segment).collect();
            let unlinked =
                segs.iter().enumerate().all(|(i, s)| segs[i + 1..].iter().all(|t| !linked(s, t, ctx)));
            if unlinked {
                return Ok(exact(
                    Groth::single(Expr::Irr(Irrep::irreducible_product(atoms.to_vec(), ctx))),
                    "pairwise unlinked segments: irreducible",
                ));
            }
        }
        let product = Expr::product(atoms.iter().cloned().map(Expr::Irr).collect());
        let mut set = enumerate_candidates(&product, ctx)?;
        let m = baseline_of(atoms)?;
        let present = if atoms.iter().all(|a| a.as_segment().is_some()) {
            existence_closure(&m, ctx)
        } else {
            BTreeSet::from([set.baseline.clone()])
        };
        for c in set.candidates.iter_mut() {
            c.present = present.contains(&c.label);
            c.lower = u64::from(c.present);
        }
        self.eliminate(&mut set, atoms);
        let mut cert = Vec::new();
        let result = self.certify(&mut set, atoms, &mut cert)?;
        Ok(LineOutcome { result, set: Some(set), certificate: cert })
    }

    /// Resolve a Jacquet sum into tuples of irreducibles.
    fn resolve(&mut self, j: &JacquetSum) -> Option<Resolved> {
        let mut out = Resolved::zero();
        for (t, m) in j.iter() {
            out.add(&self.resolve_tuple(t)?.scaled(m));
        }
        Some(out)
    }

    fn resolve_tuple(&mut self, t: &LeviTuple) -> Option<Resolved> {
        let mut acc: Vec<(LeviTuple, u64)> = vec![(Vec::new(), 1)];
        for slot in t {
            let g = self.exact(&slot.atoms())?;
            let mut next = Vec::new();
            for (pre, m) in &acc {
                for (y, c) in g.iter() {
                    let mut v = pre.clone();
                    v.push(y.clone());
                    next.push((v, m * c));
                }
            }
            acc = next;
        }
        Some(Groth::from_terms(acc))
    }

    /// Multiplicity of an irreducible tuple in `r_β` of the product, resolving
    /// only the tuples with matching slot supports.
    fn count_in(&mut self, j: &JacquetSum, target: &LeviTuple) -> Option<u64> {
        let ctx = self.ctx;
        let want: Vec<_> = target.iter().map(|x| slot_support(x, ctx)).collect();
        let mut total = 0;
        for (t, m) in j.iter() {
            if t.len() != want.len() || t.iter().zip(&want).any(|(x, w)| slot_support(x, ctx) != *w) {
                continue;
            }
            total += m * self.resolve_tuple(t)?.get(target);
        }
        Some(total)
    }

    /// `r_β(Z(y))` as irreducible tuples, from closed forms or by subtracting
    /// the other constituents of the standard module.
    fn label_jacquet(&mut self, y: &Irrep, beta: &Composition) -> Option<Resolved> {
        let key = (y.clone(), beta.parts().to_vec());
        if let Some(r) = self.label_memo.get(&key) {
            return r.clone();
        }
        let r = self.label_jacquet_inner(y, beta);
        self.label_memo.insert(key, r.clone());
        r
    }

    fn label_jacquet_inner(&mut self, y: &Irrep, beta: &Composition) -> Option<Resolved> {
        let ctx = self.ctx;
        if let Ok(j) = jacquet_atom(y, beta.parts(), ctx) {
            return self.resolve(&j);
        }
        let m = y.multiseg().filter(|m| m.count() >= 2)?;
        let std: Vec<Irrep> = m.segs().iter().map(|s| Irrep::seg(s.clone(), ctx)).collect();
        let dec = self.exact(&std)?;
        if dec.get(&Expr::Irr(y.clone())) != 1 {
            return None;
        }
        let exprs: Vec<Expr> = std.into_iter().map(Expr::Irr).collect();
        let mut r = self.resolve(&geometric_lemma(&exprs, beta, ctx).ok()?)?;
        for (z, c) in dec.iter() {
            let z = z.as_irrep()?;
            if z == y {
                continue;
            }
            let rz = self.label_jacquet(z, beta)?;
            r = r.checked_sub(&rz.scaled(c))?;
        }
        Some(r)
    }

    fn jacquet_of(&self, atoms: &[Irrep], beta: &Composition) -> Option<JacquetSum> {
        let exprs: Vec<Expr> = atoms.iter().cloned().map(Expr::Irr).collect();
        geometric_lemma(&exprs, beta, self.ctx).ok()
    }

    fn eliminate(&mut self, set: &mut CandidateSet, atoms: &[Irrep]) {
        let ctx = self.ctx;
        let n: u64 = atoms.iter().map(Irrep::degree).sum();
        let base = set.baseline.clone();
        let mut cache: HashMap<Vec<u64>, Option<JacquetSum>> = HashMap::new();
        let mut jq = |beta: &Composition, this: &Self| {
            cache.entry(beta.parts().to_vec()).or_insert_with(|| this.jacquet_of(atoms, beta)).clone()
        };
        for c in set.candidates.iter_mut() {
            if c.label == base {
                c.lower = 1;
                c.upper = Some(1);
                continue;
            }
            if c.label.is_chain_cuspidal(ctx) {
                continue;
            }
            let m = c.label.m.clone();
            // Coarser Jacquet modules of a segment.
            if let Some(s) = c.label.as_segment().cloned() {
                for beta in two_part(n) {
                    let k = beta.parts()[0] as i64;
                    let t: LeviTuple = vec![
                        Expr::Irr(Irrep::seg(Segment::tagged(s.a, s.a + (k - 1), s.tag.clone()), ctx)),
                        Expr::Irr(Irrep::seg(Segment::tagged(s.a + k, s.b, s.tag.clone()), ctx)),
                    ];
                    let found = jq(&beta, self).and_then(|j| self.count_in(&j, &t));
                    c.checks.push(Check { beta: beta.clone(), tuple: tuple_text(&t), found, needed: 1 });
                    match found {
                        Some(0) => {
                            c.status = Status::Excluded(format!("r_{beta} lacks {}", tuple_text(&t)));
                            break;
                        }
                        Some(k) => c.cap(k),
                        None => {}
                    }
                }
                if c.is_excluded() {
                    continue;
                }
            }
            // P6.
            if let Ok((mu, st)) = mu_and_st_of(&m, ctx) {
                c.mu = Some(mu.clone());
                c.st = Some(st.clone());
                if mu.parts().len() > 1 {
                    let found = jq(&mu, self).and_then(|j| self.count_in(&j, &st));
                    c.st_multiplicity = found;
                    c.checks.push(Check { beta: mu.clone(), tuple: tuple_text(&st), found, needed: 1 });
                    match found {
                        Some(0) => {
                            c.status = Status::Excluded(format!("St(n) absent from r_{mu}"));
                            continue;
                        }
                        Some(k) => c.cap(k),
                        None => {}
                    }
                }
            }
            if c.present || n > SUBTRACTION_MAX_DEGREE || c.label.as_segment().is_some() {
                continue;
            }
            // Full Jacquet modules of the candidate, by subtraction.
            'betas: for beta in two_part(n).into_iter().chain(three_part(n)) {
                let Some(ry) = self.label_jacquet(&c.label, &beta) else { continue };
                let Some(j) = jq(&beta, self) else { continue };
                for (t, need) in ry.iter() {
                    let Some(found) = self.count_in(&j, t) else { continue };
                    if found < need {
                        c.checks.push(Check { beta: beta.clone(), tuple: tuple_text(t), found: Some(found), needed: need });
                        c.status = Status::Excluded(format!(
                            "r_{beta} of the candidate contains {} {need} times, the product only {found}",
                            tuple_text(t)
                        ));
                        break 'betas;
                    }
                    c.cap(found / need);
                }
            }
        }
    }

    /// Pin multiplicities: existence gives lower bounds, Jacquet counts give
    /// upper bounds, and the total length of a Jacquet module bounds the sum.
    fn certify(&mut self, set: &mut CandidateSet, atoms: &[Irrep], cert: &mut Vec<String>) -> Result<Decomposition> {
        let ctx = self.ctx;
        let n: u64 = atoms.iter().map(Irrep::degree).sum();
        let excluded = set.candidates.iter().filter(|c| c.is_excluded()).count();
        if excluded > 0 {
            cert.push(format!("{excluded} candidate(s) excluded by Jacquet modules"));
        }
        let pinned = |set: &CandidateSet| {
            set.candidates.iter().filter(|c| !c.is_excluded()).all(|c| c.upper == Some(c.lower))
        };
        let mut betas = vec![Composition::ones(n)];
        betas.extend(two_part(n));
        for beta in betas {
            if pinned(set) {
                break;
            }
            let Some(j) = self.jacquet_of(atoms, &beta) else { continue };
            let Some(rj) = self.resolve(&j) else { continue };
            let total = rj.total();
            // Per-candidate length of r_β: exact when known, else at least 1.
            let mut lens: Vec<(u64, bool)> = Vec::new();
            for c in &set.candidates {
                if c.is_excluded() || c.label.is_chain_cuspidal(ctx) {
                    lens.push((0, true));
                    continue;
                }
                let exact = if c.label == set.baseline && atoms.iter().all(|a| a.as_segment().is_some()) {
                    None
                } else {
                    self.label_jacquet(&c.label, &beta).map(|r| r.total())
                };
                lens.push(exact.map_or((1, false), |l| (l, true)));
            }
            let used: u64 = set.candidates.iter().zip(&lens).map(|(c, (l, _))| c.lower * l).sum();
            if used > total {
                return Err(unknown(format!("inconsistent Jacquet count for r_{beta}")));
            }
            let slack = total - used;
            let mut tightened = false;
            for (c, (l, _)) in set.candidates.iter_mut().zip(&lens) {
                if c.is_excluded() || *l == 0 {
                    continue;
                }
                let hi = c.lower + slack / l;
                if c.upper.is_none_or(|u| u > hi) {
                    c.upper = Some(hi);
                    tightened = true;
                }
            }
            // With every length exact, the count is an equation.
            let all_exact = lens.iter().all(|(_, e)| *e);
            let open: Vec<usize> = (0..set.candidates.len())
                .filter(|&i| {
                    let c = &set.candidates[i];
                    !c.is_excluded() && lens[i].0 > 0 && c.upper != Some(c.lower)
                })
                .collect();
            if all_exact && open.len() == 1 {
                let i = open[0];
                let l = lens[i].0;
                let c = &mut set.candidates[i];
                if slack.is_multiple_of(l) {
                    c.lower += slack / l;
                    c.upper = Some(c.lower);
                    tightened = true;
                }
            }
            if tightened {
                cert.push(format!("r_{beta} has {total} irreducible constituents"));
            }
        }
        let mut known = Groth::zero();
        let mut intervals = Vec::new();
        for c in set.candidates.iter_mut() {
            if c.is_excluded() {
                continue;
            }
            if c.upper == Some(0) {
                c.status = Status::Excluded("length count leaves no room".into());
                continue;
            }
            if c.lower > 0 {
                known.add_term(Expr::Irr(c.label.clone()), c.lower);
            }
            c.status = match (c.lower, c.upper) {
                (lo, Some(hi)) if lo == hi => Status::Confirmed(Mult::Exact(lo)),
                (0, _) => Status::Open,
                (lo, _) => Status::Confirmed(Mult::AtLeast(lo)),
            };
            intervals.push((c.label.clone(), c.lower, c.upper));
        }
        if pinned(set) {
            cert.push("every surviving multiplicity is pinned".into());
            Ok(Decomposition::Exact(known))
        } else {
            Ok(Decomposition::Partial(PartialResult { known, intervals }))
        }
    }
}

/// Runs P6-style and Jacquet-count eliminations on a candidate set.
pub fn eliminate(mut cs: CandidateSet, ctx: &ModContext) -> CandidateSet {
    let atoms: Vec<Irrep> = cs.product.atoms();
    Solver::new(ctx).eliminate(&mut cs, &atoms);
    cs
}

/// Decomposition of a product by enumeration and elimination.
pub fn decompose(product: &Expr, ctx: &ModContext) -> Result<SolveReport> {
    let atoms: Vec<Irrep> = Solver::key(&product.atoms());
    let full = full_jacquet_length(product, ctx)?;
    let mut s = Solver::new(ctx);
    let (result, sets, certificate) = s.solve(&atoms)?;
    Ok(SolveReport {
        product: Expr::product(atoms.into_iter().map(Expr::Irr).collect()),
        full_jacquet_length: full,
        sets,
        result,
        certificate,
    })
}
