//! Segments and multisegments.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{congruent, HalfInt, ModContext, Partition};

/// A product of ramified tame characters, as exponents of opaque tags.
///
/// The empty tag is the unramified line.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag(BTreeMap<String, i64>);

impl Tag {
    pub fn unramified() -> Self {
        Tag::default()
    }

    pub fn named(name: &str) -> Self {
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), 1);
        Tag(m)
    }

    pub fn is_unramified(&self) -> bool {
        self.0.is_empty()
    }

    pub fn compose(&self, other: &Tag) -> Tag {
        let mut m = self.0.clone();
        for (k, v) in &other.0 {
            let slot = m.entry(k.clone()).or_insert(0);
            *slot += v;
            if *slot == 0 {
                m.remove(k);
            }
        }
        Tag(m)
    }

    pub fn inverse(&self) -> Tag {
        Tag(self.0.iter().map(|(k, v)| (k.clone(), -v)).collect())
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl fmt::Display for Tag {
    /// Renders as a chain of `.chi(t)` suffixes, `t^-1` for inverses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.0 {
            match v {
                1 => write!(f, ".chi({k})")?,
                v => write!(f, ".chi({k}^{v})")?,
            }
        }
        Ok(())
    }
}

/// A segment `[a, b]` over the cuspidal line of a tag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub a: HalfInt,
    pub b: HalfInt,
    pub tag: Tag,
}

impl Segment {
    /// Panics unless `b - a` is a non-negative integer.
    pub fn new(a: HalfInt, b: HalfInt) -> Self {
        Self::tagged(a, b, Tag::unramified())
    }

    pub fn tagged(a: HalfInt, b: HalfInt, tag: Tag) -> Self {
        let d = b - a;
        assert!(d.is_integral() && d.twice() >= 0, "invalid segment [{a},{b}]");
        Segment { a, b, tag }
    }

    /// Checked constructor.
    pub fn try_new(a: HalfInt, b: HalfInt) -> Option<Self> {
        let d = b - a;
        (d.is_integral() && d.twice() >= 0).then(|| Segment::new(a, b))
    }

    pub fn point(a: HalfInt) -> Self {
        Segment::new(a, a)
    }

    /// Integer-endpoint convenience constructor.
    pub fn ints(a: i64, b: i64) -> Self {
        Segment::new(HalfInt::int(a), HalfInt::int(b))
    }

    pub fn len(&self) -> u64 {
        ((self.b - self.a).twice() / 2 + 1) as u64
    }

    /// Segments are never empty; kept for API symmetry.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn shift(&self, k: HalfInt) -> Segment {
        Segment { a: self.a + k, b: self.b + k, tag: self.tag.clone() }
    }

    pub fn with_tag(&self, tag: Tag) -> Segment {
        Segment { a: self.a, b: self.b, tag }
    }

    /// `[a, b] ↦ [-b, -a]`, inverting the tag.
    pub fn contragredient(&self) -> Segment {
        Segment { a: -self.b, b: -self.a, tag: self.tag.inverse() }
    }

    /// The points a, a+1, ..., b.
    pub fn points(&self) -> impl Iterator<Item = HalfInt> + '_ {
        (0..self.len() as i64).map(move |i| self.a + i)
    }

    /// Representative with left endpoint reduced mod e.
    pub fn canonical(&self, ctx: &ModContext) -> Segment {
        let a = ctx.reduce(self.a);
        Segment { a, b: self.b + (a - self.a), tag: self.tag.clone() }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == self.b {
            write!(f, "[{}]", self.a)?;
        } else {
            write!(f, "[{},{}]", self.a, self.b)?;
        }
        write!(f, "{}", self.tag)
    }
}

/// Same length and congruent left endpoints (and the same tag).
pub fn seg_equivalent(d1: &Segment, d2: &Segment, ctx: &ModContext) -> bool {
    d1.tag == d2.tag && d1.len() == d2.len() && congruent(d1.a, d2.a, ctx)
}

fn clause(long: &Segment, short: &Segment, ctx: &ModContext) -> bool {
    long.len() >= short.len()
        && short
            .points()
            .any(|k| congruent(k, long.b + 1, ctx) || congruent(k, long.a - 1, ctx))
}

/// Linking of two segments (both length clauses); segments on different lines never link.
pub fn linked(d1: &Segment, d2: &Segment, ctx: &ModContext) -> bool {
    d1.tag == d2.tag && (clause(d1, d2, ctx) || clause(d2, d1, ctx))
}

/// `c ≡ b+1` or `a ≡ d+1`.
pub fn juxtaposed(d1: &Segment, d2: &Segment, ctx: &ModContext) -> bool {
    d1.tag == d2.tag && (congruent(d2.a, d1.b + 1, ctx) || congruent(d1.a, d2.b + 1, ctx))
}

/// The results of merging a linked pair: each entry is the longer segment
/// together with an optional remainder.
pub fn elementary_merges(
    d1: &Segment,
    d2: &Segment,
    ctx: &ModContext,
) -> Vec<(Segment, Option<Segment>)> {
    let mut out = Vec::new();
    if d1.tag != d2.tag {
        return out;
    }
    for (long, short) in [(d1, d2), (d2, d1)] {
        if long.len() < short.len() {
            continue;
        }
        for k in short.points() {
            if congruent(k, long.b + 1, ctx) {
                let grow = (short.b - k).twice() / 2 + 1;
                let merged = Segment { a: long.a, b: long.b + grow, tag: long.tag.clone() };
                let rest = (k != short.a).then(|| Segment {
                    a: short.a,
                    b: k - 1,
                    tag: short.tag.clone(),
                });
                out.push((merged, rest));
            }
            if congruent(k, long.a - 1, ctx) {
                let grow = (k - short.a).twice() / 2 + 1;
                let merged = Segment { a: long.a - grow, b: long.b, tag: long.tag.clone() };
                let rest = (k != short.b).then(|| Segment {
                    a: k + 1,
                    b: short.b,
                    tag: short.tag.clone(),
                });
                out.push((merged, rest));
            }
        }
    }
    out
}

/// A finite multiset of segments.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiseg {
    segs: Vec<Segment>,
}

impl Multiseg {
    pub fn new(segs: Vec<Segment>) -> Self {
        Multiseg { segs }
    }

    pub fn empty() -> Self {
        Multiseg::default()
    }

    pub fn single(s: Segment) -> Self {
        Multiseg { segs: vec![s] }
    }

    pub fn segs(&self) -> &[Segment] {
        &self.segs
    }

    pub fn into_segs(self) -> Vec<Segment> {
        self.segs
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn count(&self) -> usize {
        self.segs.len()
    }

    /// Total length.
    pub fn degree(&self) -> u64 {
        self.segs.iter().map(Segment::len).sum()
    }

    pub fn plus(&self, other: &Multiseg) -> Multiseg {
        let mut segs = self.segs.clone();
        segs.extend(other.segs.iter().cloned());
        Multiseg { segs }
    }

    pub fn shift(&self, k: HalfInt) -> Multiseg {
        Multiseg { segs: self.segs.iter().map(|s| s.shift(k)).collect() }
    }

    pub fn retag(&self, t: &Tag) -> Multiseg {
        Multiseg { segs: self.segs.iter().map(|s| s.with_tag(s.tag.compose(t))).collect() }
    }

    pub fn contragredient(&self) -> Multiseg {
        Multiseg { segs: self.segs.iter().map(Segment::contragredient).collect() }
    }

    /// Reduced left endpoints, sorted.
    pub fn canonical(&self, ctx: &ModContext) -> Multiseg {
        let mut segs: Vec<Segment> = self.segs.iter().map(|s| s.canonical(ctx)).collect();
        segs.sort_by(|x, y| {
            (&x.tag, x.a, x.len()).cmp(&(&y.tag, y.a, y.len())).then(x.b.cmp(&y.b))
        });
        Multiseg { segs }
    }

    /// Whether no two segments are linked.
    pub fn pairwise_unlinked(&self, ctx: &ModContext) -> bool {
        self.segs.iter().enumerate().all(|(i, s)| {
            self.segs[i + 1..].iter().all(|t| !linked(s, t, ctx))
        })
    }
}

impl fmt::Display for Multiseg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segs.iter().map(Segment::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

/// λ(m): sorted segment lengths.
pub fn lambda_of(m: &Multiseg) -> Partition {
    Partition::new(m.segs.iter().map(Segment::len).collect())
        .expect("segments have positive length")
}

/// A point class on a cuspidal line.
pub type Point = (Tag, HalfInt);

/// Multiset of reduced point classes `{a, a+1, ..., b}` over all segments.
pub fn support(m: &Multiseg, ctx: &ModContext) -> BTreeMap<Point, u64> {
    let mut out = BTreeMap::new();
    for s in &m.segs {
        for p in s.points() {
            *out.entry((s.tag.clone(), ctx.reduce(p))).or_insert(0) += 1;
        }
    }
    out
}

pub fn shift(m: &Multiseg, k: HalfInt) -> Multiseg {
    m.shift(k)
}

pub fn contragredient(m: &Multiseg) -> Multiseg {
    m.contragredient()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64) -> Segment {
        Segment::ints(a, b)
    }

    fn h(x: &str) -> HalfInt {
        x.parse().unwrap()
    }

    #[test]
    fn equivalence_examples() {
        let e3 = ModContext::with_e(3);
        assert!(seg_equivalent(&s(0, 2), &s(3, 5), &e3));
        assert!(!seg_equivalent(&s(0, 2), &s(3, 5), &ModContext::char0()));
        assert!(!seg_equivalent(&s(0, 2), &s(0, 3), &e3));
    }

    #[test]
    fn lambda_examples() {
        let m = Multiseg::new(vec![s(0, 2), s(1, 1)]);
        assert_eq!(lambda_of(&m).parts(), &[3, 1]);
        let pi4 = Multiseg::new(vec![
            Segment::new(h("-1/2"), h("3/2")),
            Segment::point(h("5/2")),
        ]);
        assert_eq!(lambda_of(&pi4).parts(), &[3, 1]);
    }

    #[test]
    fn support_examples() {
        let e3 = ModContext::with_e(3);
        let sup = support(&Multiseg::single(s(0, 3)), &e3);
        assert_eq!(sup.get(&(Tag::unramified(), h("0"))), Some(&2));
        assert_eq!(sup.values().sum::<u64>(), 4);
    }

    #[test]
    fn shift_and_contragredient() {
        let m = Multiseg::single(s(0, 1));
        assert_eq!(m.shift(HalfInt::int(2)), Multiseg::single(s(2, 3)));
        assert_eq!(m.contragredient(), Multiseg::single(s(-1, 0)));
        let pi = Multiseg::new(vec![Segment::new(h("-1/2"), h("3/2")), Segment::point(h("5/2"))]);
        let dual = Multiseg::new(vec![Segment::new(h("-3/2"), h("1/2")), Segment::point(h("-5/2"))]);
        assert_eq!(pi.contragredient(), dual);
    }

    #[test]
    fn linking_examples() {
        let e3 = ModContext::with_e(3);
        let c0 = ModContext::char0();
        assert!(linked(&s(0, 2), &s(3, 3), &e3));
        assert!(linked(&s(0, 1), &s(2, 5), &c0));
        assert!(!linked(&s(0, 0), &s(2, 2), &c0));
        assert!(linked(&s(0, 2), &s(0, 0), &e3));
        assert!(!linked(&s(0, 2), &s(1, 1), &e3));
        assert!(!linked(&s(0, 3), &s(1, 2), &c0));
        let t = Segment::tagged(h("1"), h("1"), Tag::named("t"));
        assert!(!linked(&s(0, 0), &t, &c0));
    }

    #[test]
    fn juxtaposition_examples() {
        let c0 = ModContext::char0();
        assert!(juxtaposed(&s(1, 3), &s(4, 4), &c0));
        assert!(!juxtaposed(&s(0, 1), &s(3, 4), &c0));
        assert!(juxtaposed(&s(4, 4), &s(1, 3), &c0));
    }

    #[test]
    fn merges_match_standard_union() {
        let c0 = ModContext::char0();
        let m = elementary_merges(&s(0, 2), &s(2, 4), &c0);
        assert!(m.contains(&(s(0, 4), Some(s(2, 2)))));
        let m = elementary_merges(&s(0, 0), &s(1, 1), &c0);
        assert_eq!(m, vec![(s(0, 1), None), (s(0, 1), None)]);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let e4 = ModContext::with_e(4);
        let m = Multiseg::new(vec![s(5, 7), s(-3, -3), s(2, 2)]);
        let c = m.canonical(&e4);
        assert_eq!(c.canonical(&e4), c);
        assert_eq!(c.segs()[0], s(1, 1));
    }
}
