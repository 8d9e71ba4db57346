//! Irreducible labels, induced products and Grothendieck-group elements.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{congruent, HalfInt, ModContext};
use crate::segments::{support, Multiseg, Point, Segment, Tag};

/// An opaque cuspidal representation `cusp(deg, name)`, twisted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cusp {
    pub deg: u64,
    pub name: String,
    pub exp: HalfInt,
    pub tag: Tag,
}

impl Cusp {
    pub fn new(deg: u64, name: &str) -> Self {
        Cusp { deg, name: name.to_string(), exp: HalfInt::ZERO, tag: Tag::unramified() }
    }

    fn canonical(&self, ctx: &ModContext) -> Cusp {
        Cusp { exp: ctx.reduce(self.exp), ..self.clone() }
    }

    pub fn dual(&self) -> Cusp {
        let name = match self.name.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.name),
        };
        Cusp { deg: self.deg, name, exp: -self.exp, tag: self.tag.inverse() }
    }

    /// The untwisted cuspidal line this atom lives on.
    pub fn line(&self) -> (u64, &str, &Tag) {
        (self.deg, &self.name, &self.tag)
    }
}

/// A character `ν_deg^exp · χ_tag` of G_deg.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub deg: u64,
    pub exp: HalfInt,
    pub tag: Tag,
}

impl Character {
    pub fn segment(&self) -> Segment {
        let half = HalfInt::from_twice(self.deg as i64 - 1);
        Segment::tagged(self.exp - half, self.exp + half, self.tag.clone())
    }
}

/// Canonical label of an irreducible representation: `Z(m) × ρ_1 × ⋯ × ρ_k`
/// for cuspidal atoms `ρ_i` on lines disjoint from the characters of `m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Irrep {
    pub m: Multiseg,
    pub cusps: Vec<Cusp>,
}

impl Irrep {
    pub fn std(m: &Multiseg, cusps: &[Cusp], ctx: &ModContext) -> Irrep {
        let mut cusps: Vec<Cusp> = cusps.iter().map(|c| c.canonical(ctx)).collect();
        cusps.sort();
        Irrep { m: m.canonical(ctx), cusps }
    }

    /// `Z(m)`.
    pub fn z(m: &Multiseg, ctx: &ModContext) -> Irrep {
        Irrep::std(m, &[], ctx)
    }

    pub fn seg(s: Segment, ctx: &ModContext) -> Irrep {
        Irrep::z(&Multiseg::single(s), ctx)
    }

    pub fn cusp(c: Cusp, ctx: &ModContext) -> Irrep {
        Irrep::std(&Multiseg::empty(), &[c], ctx)
    }

    /// The representation of the trivial group G_0.
    pub fn unit() -> Irrep {
        Irrep { m: Multiseg::empty(), cusps: vec![] }
    }

    pub fn character(deg: u64, exp: HalfInt, tag: Tag, ctx: &ModContext) -> Irrep {
        Irrep::seg(Character { deg, exp, tag }.segment(), ctx)
    }

    /// Label of a product of irreducibles the caller knows to be irreducible:
    /// `Z(m_1) × Z(m_2)` irreducible equals `Z(m_1 + m_2)`.
    pub fn irreducible_product(factors: Vec<Irrep>, ctx: &ModContext) -> Irrep {
        let mut segs = Vec::new();
        let mut cs = Vec::new();
        for f in factors {
            segs.extend(f.m.into_segs());
            cs.extend(f.cusps);
        }
        Irrep::std(&Multiseg::new(segs), &cs, ctx)
    }

    pub fn degree(&self) -> u64 {
        self.m.degree() + self.cusps.iter().map(|c| c.deg).sum::<u64>()
    }

    pub fn twist(&self, x: HalfInt, ctx: &ModContext) -> Irrep {
        let cs: Vec<Cusp> = self.cusps.iter().map(|c| Cusp { exp: c.exp + x, ..c.clone() }).collect();
        Irrep::std(&self.m.shift(x), &cs, ctx)
    }

    pub fn twist_tag(&self, t: &Tag, ctx: &ModContext) -> Irrep {
        let cs: Vec<Cusp> =
            self.cusps.iter().map(|c| Cusp { tag: c.tag.compose(t), ..c.clone() }).collect();
        Irrep::std(&self.m.retag(t), &cs, ctx)
    }

    /// Contragredient.
    pub fn dual(&self, ctx: &ModContext) -> Irrep {
        let cs: Vec<Cusp> = self.cusps.iter().map(Cusp::dual).collect();
        Irrep::std(&self.m.contragredient(), &cs, ctx)
    }

    /// The multisegment of a cusp-free label.
    pub fn multiseg(&self) -> Option<&Multiseg> {
        self.cusps.is_empty().then_some(&self.m)
    }

    pub fn as_segment(&self) -> Option<&Segment> {
        self.multiseg().filter(|m| m.count() == 1).map(|m| &m.segs()[0])
    }

    /// P1: a single segment is a character.
    pub fn as_character(&self) -> Option<Character> {
        self.as_segment().map(|s| Character {
            deg: s.len(),
            exp: s.a + HalfInt::from_twice(s.len() as i64 - 1),
            tag: s.tag.clone(),
        })
    }

    pub fn as_cusp(&self) -> Option<&Cusp> {
        match self.cusps.as_slice() {
            [c] if self.m.is_empty() => Some(c),
            _ => None,
        }
    }

    /// `St_f`-type labels that are cuspidal: two linked points at f = 2,
    /// a chain of three points at f = 3.
    pub fn is_chain_cuspidal(&self, ctx: &ModContext) -> bool {
        let Some(m) = self.multiseg() else { return false };
        let f = ctx.f();
        if !(f == 2 || f == 3) || m.count() as u64 != f {
            return false;
        }
        let segs = m.segs();
        if segs.iter().any(|s| s.len() != 1 || s.tag != segs[0].tag) {
            return false;
        }
        let pts: Vec<HalfInt> = segs.iter().map(|s| s.a).collect();
        pts.iter().any(|&x| {
            let mut want: Vec<HalfInt> = (0..f as i64).map(|i| ctx.reduce(x + i)).collect();
            let mut have: Vec<HalfInt> = pts.iter().map(|&p| ctx.reduce(p)).collect();
            want.sort();
            have.sort();
            want == have
        })
    }

    pub fn is_cuspidal(&self, ctx: &ModContext) -> bool {
        self.as_cusp().is_some() || self.is_chain_cuspidal(ctx) || self.degree() == 1
    }

    /// `L([x, x+1])` (a twist of St_2) when f ≠ 2: returns `[x, x+1]`.
    pub fn as_l(&self, ctx: &ModContext) -> Option<Segment> {
        if ctx.f() == 2 {
            return None;
        }
        let m = self.multiseg()?;
        let [p, q] = m.segs() else { return None };
        if p.len() != 1 || q.len() != 1 || p.tag != q.tag {
            return None;
        }
        let l = |x: &Segment, y: &Segment| {
            congruent(y.a, x.a + 1, ctx).then(|| Segment::tagged(x.a, x.a + 1, x.tag.clone()))
        };
        l(p, q).or_else(|| l(q, p))
    }

    /// Irreducible factors whose product this label is, when it is a product of
    /// segments and cuspidal atoms.
    pub fn simple_factors(&self, ctx: &ModContext) -> Option<Vec<Irrep>> {
        if self.m.count() > 1 && !self.m.pairwise_unlinked(ctx) {
            return None;
        }
        let mut out: Vec<Irrep> = self.m.segs().iter().map(|s| Irrep::seg(s.clone(), ctx)).collect();
        out.extend(self.cusps.iter().map(|c| Irrep::cusp(c.clone(), ctx)));
        Some(out)
    }

    /// Character-line support (cuspidal atoms excluded).
    pub fn char_support(&self, ctx: &ModContext) -> BTreeMap<Point, u64> {
        support(&self.m, ctx)
    }

    /// Cuspidal atoms, each with its degree.
    pub fn cusp_atoms(&self) -> Vec<Cusp> {
        self.cusps.clone()
    }

    /// Whether the cuspidal support consists of characters only.
    pub fn has_character_support(&self) -> bool {
        self.cusp_atoms().is_empty()
    }
}

pub(crate) fn merge_support(
    parts: impl Iterator<Item = BTreeMap<Point, u64>>,
) -> BTreeMap<Point, u64> {
    let mut out = BTreeMap::new();
    for p in parts {
        for (k, v) in p {
            *out.entry(k).or_insert(0) += v;
        }
    }
    out
}

fn fmt_seglist(m: &Multiseg, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("Z[")?;
    for (i, s) in m.segs().iter().enumerate() {
        if i > 0 {
            f.write_str("; ")?;
        }
        write!(f, "{},{}{}", s.a, s.b, s.tag)?;
    }
    f.write_str("]")
}

fn fmt_cusp(c: &Cusp, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "cusp({},{})", c.deg, c.name)?;
    if c.exp != HalfInt::ZERO {
        write!(f, ".nu^{}", c.exp)?;
    }
    write!(f, "{}", c.tag)
}

impl fmt::Display for Irrep {
    /// Raw DSL form; [`crate::render`] produces the named forms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Irrep { m, cusps } = self;
        if m.is_empty() && cusps.is_empty() {
            return f.write_str("1_0");
        }
        let wrap = !cusps.is_empty() && (!m.is_empty() || cusps.len() > 1);
        if wrap {
            f.write_str("Irr(")?;
        }
        let mut first = true;
        if !m.is_empty() {
            fmt_seglist(m, f)?;
            first = false;
        }
        for c in cusps {
            if !first {
                f.write_str(" x ")?;
            }
            fmt_cusp(c, f)?;
            first = false;
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// An induced product `π_1 × ⋯ × π_r`, or a single irreducible.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Irr(Irrep),
    Prod(Vec<Expr>),
}

impl Expr {
    /// Flattens nested products; a single factor collapses to itself.
    pub fn product(factors: Vec<Expr>) -> Expr {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Expr::Prod(fs) => flat.extend(fs),
                irr => flat.push(irr),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Expr::Prod(flat)
        }
    }

    /// Product of atoms in Grothendieck-canonical (sorted) order.
    pub fn slot(mut atoms: Vec<Irrep>) -> Expr {
        atoms.retain(|a| a.degree() > 0);
        atoms.sort();
        match atoms.len() {
            0 => Expr::Irr(Irrep::unit()),
            1 => Expr::Irr(atoms.pop().unwrap()),
            _ => Expr::Prod(atoms.into_iter().map(Expr::Irr).collect()),
        }
    }

    pub fn degree(&self) -> u64 {
        match self {
            Expr::Irr(x) => x.degree(),
            Expr::Prod(fs) => fs.iter().map(Expr::degree).sum(),
        }
    }

    /// The irreducible factors, in order.
    pub fn atoms(&self) -> Vec<Irrep> {
        match self {
            Expr::Irr(x) => vec![x.clone()],
            Expr::Prod(fs) => fs.iter().flat_map(Expr::atoms).collect(),
        }
    }

    pub fn as_irrep(&self) -> Option<&Irrep> {
        match self {
            Expr::Irr(x) => Some(x),
            Expr::Prod(_) => None,
        }
    }

    /// Sorted-factor form, equal in the Grothendieck group.
    pub fn groth_key(&self) -> Expr {
        Expr::slot(self.atoms())
    }

    pub fn twist(&self, x: HalfInt, ctx: &ModContext) -> Expr {
        match self {
            Expr::Irr(a) => Expr::Irr(a.twist(x, ctx)),
            Expr::Prod(fs) => Expr::Prod(fs.iter().map(|f| f.twist(x, ctx)).collect()),
        }
    }

    pub fn twist_tag(&self, t: &Tag, ctx: &ModContext) -> Expr {
        match self {
            Expr::Irr(a) => Expr::Irr(a.twist_tag(t, ctx)),
            Expr::Prod(fs) => Expr::Prod(fs.iter().map(|f| f.twist_tag(t, ctx)).collect()),
        }
    }

    pub fn dual(&self, ctx: &ModContext) -> Expr {
        match self {
            Expr::Irr(a) => Expr::Irr(a.dual(ctx)),
            Expr::Prod(fs) => Expr::Prod(fs.iter().map(|f| f.dual(ctx)).collect()),
        }
    }

    pub fn char_support(&self, ctx: &ModContext) -> BTreeMap<Point, u64> {
        merge_support(self.atoms().iter().map(|a| a.char_support(ctx)))
    }
}

impl From<Irrep> for Expr {
    fn from(x: Irrep) -> Expr {
        Expr::Irr(x)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Irr(x) => write!(f, "{x}"),
            Expr::Prod(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// Tensor factors of a representation of a standard Levi subgroup.
pub type LeviTuple = Vec<Expr>;

/// A formal non-negative combination, optionally flagged as holding only
/// lower bounds for its multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groth<K: Ord> {
    terms: BTreeMap<K, u64>,
    lower_bound: bool,
}

impl<K: Ord> Default for Groth<K> {
    fn default() -> Self {
        Groth { terms: BTreeMap::new(), lower_bound: false }
    }
}

impl<K: Ord + Clone> Groth<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K) -> Self {
        let mut g = Self::zero();
        g.add_term(k, 1);
        g
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, u64)>) -> Self {
        let mut g = Self::zero();
        for (k, m) in terms {
            g.add_term(k, m);
        }
        g
    }

    pub fn add_term(&mut self, k: K, mult: u64) {
        if mult > 0 {
            *self.terms.entry(k).or_insert(0) += mult;
        }
    }

    pub fn add(&mut self, other: &Groth<K>) {
        for (k, m) in &other.terms {
            self.add_term(k.clone(), *m);
        }
        self.lower_bound |= other.lower_bound;
    }

    pub fn plus(mut self, other: &Groth<K>) -> Groth<K> {
        self.add(other);
        self
    }

    pub fn scaled(&self, c: u64) -> Groth<K> {
        let mut g = Groth::from_terms(self.terms.iter().map(|(k, m)| (k.clone(), m * c)));
        g.lower_bound = self.lower_bound;
        g
    }

    /// `self - other`, or `None` if a multiplicity would go negative.
    pub fn checked_sub(&self, other: &Groth<K>) -> Option<Groth<K>> {
        let mut out = self.clone();
        for (k, m) in &other.terms {
            let have = out.terms.get(k).copied().unwrap_or(0);
            if have < *m {
                return None;
            }
            if have == *m {
                out.terms.remove(k);
            } else {
                out.terms.insert(k.clone(), have - m);
            }
        }
        out.lower_bound |= other.lower_bound;
        Some(out)
    }

    /// Multiset inclusion of terms.
    pub fn contains(&self, other: &Groth<K>) -> bool {
        other.terms.iter().all(|(k, m)| self.get(k) >= *m)
    }

    pub fn get(&self, k: &K) -> u64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, u64)> {
        self.terms.iter().map(|(k, m)| (k, *m))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Number of distinct terms.
    pub fn distinct(&self) -> usize {
        self.terms.len()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_lower_bound(&self) -> bool {
        self.lower_bound
    }

    pub fn flagged(mut self, flag: bool) -> Self {
        self.lower_bound = flag;
        self
    }

    pub fn set_lower_bound(&mut self, flag: bool) {
        self.lower_bound = flag;
    }

    /// Applies `f` to every key, merging collisions.
    pub fn map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Groth<K2> {
        let mut g = Groth::from_terms(self.terms.iter().map(|(k, m)| (f(k), *m)));
        g.lower_bound = self.lower_bound;
        g
    }

    /// Equality of terms, ignoring the flag.
    pub fn same_terms(&self, other: &Groth<K>) -> bool {
        self.terms == other.terms
    }
}

/// Named constructions.
pub mod named {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn seg2(a2: i64, b2: i64) -> Segment {
        Segment::new(h(a2), h(b2))
    }

    /// P1: `Z([a, b])` as a character.
    pub fn z_of_segment(s: &Segment, ctx: &ModContext) -> Irrep {
        Irrep::seg(s.clone(), ctx)
    }

    /// `1_n`.
    pub fn one(n: u64, ctx: &ModContext) -> Irrep {
        let n = n as i64;
        if n == 0 {
            return Irrep::unit();
        }
        Irrep::seg(seg2(-(n - 1), n - 1), ctx)
    }

    /// `ν_n^x`.
    pub fn nu(n: u64, x: HalfInt, ctx: &ModContext) -> Irrep {
        one(n, ctx).twist(x, ctx)
    }

    /// `St_n`: the chain of points -(n-1)/2, …, (n-1)/2.
    pub fn st(n: u64, ctx: &ModContext) -> Irrep {
        let n = n as i64;
        let segs = (0..n).map(|i| Segment::point(h(-(n - 1) + 2 * i))).collect();
        Irrep::z(&Multiseg::new(segs), ctx)
    }

    pub fn pi_multiseg(n: u64) -> Multiseg {
        let n = n as i64;
        Multiseg::new(vec![seg2(-(n - 3), n - 1), Segment::point(h(n + 1))])
    }

    /// `Π_n = Z([-(n-3)/2, (n-1)/2] + [(n+1)/2])`.
    pub fn pi(n: u64, ctx: &ModContext) -> Irrep {
        Irrep::z(&pi_multiseg(n), ctx)
    }

    pub fn pi_dual(n: u64, ctx: &ModContext) -> Irrep {
        pi(n, ctx).dual(ctx)
    }

    /// `Λ_n`: `1_n` if f | n, else `Π_n`.
    pub fn lambda(n: u64, ctx: &ModContext) -> Irrep {
        if crate::arith::divides_f(ctx.f(), n) {
            one(n, ctx)
        } else {
            pi(n, ctx)
        }
    }

    pub fn lambda_dual(n: u64, ctx: &ModContext) -> Irrep {
        lambda(n, ctx).dual(ctx)
    }

    /// `Φ_n = Z([-(n-3)/2, (n-3)/2] + [-(n-1)/2, -(n-3)/2])`.
    pub fn phi(n: u64, ctx: &ModContext) -> Irrep {
        let n = n as i64;
        Irrep::z(&Multiseg::new(vec![seg2(-(n - 3), n - 3), seg2(-(n - 1), -(n - 3))]), ctx)
    }

    /// `Ψ_n = Z([-(n-3)/2, (n-3)/2] + [-(n+1)/2, -(n-1)/2])`.
    pub fn psi(n: u64, ctx: &ModContext) -> Irrep {
        let n = n as i64;
        Irrep::z(&Multiseg::new(vec![seg2(-(n - 3), n - 3), seg2(-(n + 1), -(n - 1))]), ctx)
    }

    /// `L(Δ)` for Δ of length 1 or 2.
    pub fn l(s: &Segment, ctx: &ModContext) -> Option<Irrep> {
        match s.len() {
            1 => Some(Irrep::seg(s.clone(), ctx)),
            2 if ctx.f() == 2 => {
                Some(Irrep::seg(Segment::tagged(s.a - 1, s.a, s.tag.clone()), ctx))
            }
            2 => {
                let p = Segment::tagged(s.a, s.a, s.tag.clone());
                let q = Segment::tagged(s.b, s.b, s.tag.clone());
                Some(Irrep::z(&Multiseg::new(vec![p, q]), ctx))
            }
            _ => None,
        }
    }

    /// The nondegenerate subquotient of `χ1 × χ2`, which is always `Z([x] + [y])`.
    pub fn st_of_two_chars(
        c1: &Character,
        c2: &Character,
        ctx: &ModContext,
    ) -> Irrep {
        assert!(c1.deg == 1 && c2.deg == 1, "degree-1 characters expected");
        Irrep::z(&Multiseg::new(vec![c1.segment(), c2.segment()]), ctx)
    }

    pub fn cusp(deg: u64, name: &str, ctx: &ModContext) -> Irrep {
        Irrep::cusp(Cusp::new(deg, name), ctx)
    }

    /// Finds `(x, t)` with `target = Z(pattern)·ν^x·χ_t`, the pattern being
    /// unramified. The returned exponent is reduced.
    pub fn match_twist(target: &Irrep, pattern: &Multiseg, ctx: &ModContext) -> Option<(HalfInt, Tag)> {
        let m = target.multiseg()?;
        let first = pattern.segs().first()?;
        if m.count() != pattern.count() || m.degree() != pattern.degree() {
            return None;
        }
        let t = m.segs()[0].tag.clone();
        if m.segs().iter().any(|s| s.tag != t) {
            return None;
        }
        m.segs().iter().filter(|s| s.len() == first.len()).find_map(|s| {
            let x = s.a - first.a;
            (Irrep::z(&pattern.shift(x).retag(&t), ctx) == *target).then(|| (ctx.reduce(x), t.clone()))
        })
    }

    pub fn phi_multiseg(n: u64) -> Multiseg {
        phi(n, &ModContext::char0()).m
    }

    pub fn psi_multiseg(n: u64) -> Multiseg {
        psi(n, &ModContext::char0()).m
    }

    pub fn st_multiseg(n: u64) -> Multiseg {
        st(n, &ModContext::char0()).m
    }
}
