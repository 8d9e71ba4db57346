//! Seeded randomized sweep over the basic invariants of the calculus.

use std::collections::BTreeMap;

use msegcalc::arith::{congruent, dominates, HalfInt, ModContext, Partition};
use msegcalc::calculus::{geometric_lemma, jacquet, Composition, JacquetSum};
use msegcalc::reps::{Expr, Irrep};
use msegcalc::segments::{elementary_merges, juxtaposed, linked, support, Multiseg, Segment};
use msegcalc::solver::{decompose, enumerate_candidates, Decomposition};
use msegcalc::structure::semisimplify;
use msegcalc::verify::Outcome;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn context(rng: &mut ChaCha8Rng) -> ModContext {
    match rng.gen_range(0..7) {
        0 => ModContext::char0(),
        e => ModContext::with_e(e as u64 + 1),
    }
}

fn half(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> HalfInt {
    HalfInt::from_twice(rng.gen_range(2 * lo..=2 * hi))
}

fn segment(rng: &mut ChaCha8Rng, max_len: i64) -> Segment {
    let a = HalfInt::int(rng.gen_range(-4..=4));
    let len = rng.gen_range(1..=max_len);
    Segment::new(a, a + (len - 1))
}

fn partition(rng: &mut ChaCha8Rng, n: u64) -> Partition {
    let mut left = n;
    let mut parts = Vec::new();
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    Partition::new(parts).unwrap()
}

fn composition(rng: &mut ChaCha8Rng, n: u64) -> Vec<u64> {
    let mut left = n;
    let mut parts = Vec::new();
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts
}

fn tuple_support(t: &[Expr], ctx: &ModContext) -> BTreeMap<(msegcalc::segments::Tag, HalfInt), u64> {
    let mut out = BTreeMap::new();
    for x in t {
        for (k, v) in x.char_support(ctx) {
            *out.entry(k).or_insert(0) += v;
        }
    }
    out
}

/// `r_γ` computed through a coarser `r_β`, one slot at a time.
fn refine(outer: &JacquetSum, pieces: &[Vec<u64>], ctx: &ModContext) -> JacquetSum {
    let mut out = JacquetSum::zero();
    for (t, m) in outer.iter() {
        let mut acc: Vec<(Vec<Expr>, u64)> = vec![(Vec::new(), m)];
        for (slot, gamma) in t.iter().zip(pieces) {
            let inner = jacquet(slot, &Composition::new(gamma.clone()).unwrap(), ctx).unwrap();
            let mut next = Vec::new();
            for (prefix, pm) in &acc {
                for (u, um) in inner.iter() {
                    let mut v = prefix.clone();
                    v.extend(u.iter().cloned());
                    next.push((v, pm * um));
                }
            }
            acc = next;
        }
        for (v, k) in acc {
            out.add_term(v, k);
        }
    }
    out
}

pub fn run(cases: usize) -> Outcome {
    let mut out = Outcome {
        criterion: 9,
        suite: "invariants",
        title: "randomized invariants: order axioms, linking symmetry, involutions, Jacquet support and refinement, support of candidates and outputs",
        cases: 0,
        failures: vec![],
        notes: vec![],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let fail = |out: &mut Outcome, ok: bool, what: &dyn Fn() -> String| {
        out.cases += 1;
        if !ok && out.failures.len() < 50 {
            out.failures.push(what());
        }
    };

    for _ in 0..cases {
        let ctx = context(&mut rng);
        let (a, b, c) = (half(&mut rng, -8, 8), half(&mut rng, -8, 8), half(&mut rng, -8, 8));
        let k = HalfInt::int(rng.gen_range(-6..=6));
        let ok = congruent(a, a, &ctx)
            && congruent(a, b, &ctx) == congruent(b, a, &ctx)
            && (!(congruent(a, b, &ctx) && congruent(b, c, &ctx)) || congruent(a, c, &ctx))
            && congruent(a, b, &ctx) == congruent(a + k, b + k, &ctx)
            && ctx.reduce(ctx.reduce(a)) == ctx.reduce(a)
            && congruent(ctx.reduce(a), a, &ctx);
        fail(&mut out, ok, &|| format!("congruence at {ctx}: {a} {b} {c} {k}"));

        let n = rng.gen_range(1..=9);
        let (l, m, p) = (partition(&mut rng, n), partition(&mut rng, n), partition(&mut rng, n));
        let d = |x: &Partition, y: &Partition| dominates(x, y).unwrap();
        let ok = d(&l, &l)
            && (!(d(&l, &m) && d(&m, &l)) || l == m)
            && (!(d(&l, &m) && d(&m, &p)) || d(&l, &p))
            && d(&Partition::new(vec![n]).unwrap(), &l)
            && d(&l, &Partition::new(vec![1; n as usize]).unwrap());
        fail(&mut out, ok, &|| format!("dominance: {l} {m} {p}"));

        let (s, t) = (segment(&mut rng, 5), segment(&mut rng, 5));
        let ok = linked(&s, &t, &ctx) == linked(&t, &s, &ctx) && juxtaposed(&s, &t, &ctx) == juxtaposed(&t, &s, &ctx);
        fail(&mut out, ok, &|| format!("linking symmetry at {ctx}: {s} {t}"));

        let both = Multiseg::new(vec![s.clone(), t.clone()]);
        let ok = elementary_merges(&s, &t, &ctx).into_iter().all(|(merged, rest)| {
            let mut segs = vec![merged];
            segs.extend(rest);
            support(&Multiseg::new(segs), &ctx) == support(&both, &ctx)
        });
        fail(&mut out, ok, &|| format!("merge support at {ctx}: {s} {t}"));

        let ms = Multiseg::new((0..rng.gen_range(1..=3)).map(|_| segment(&mut rng, 3)).collect());
        let ok = ms.contragredient().contragredient() == ms
            && ms.shift(k).shift(-k) == ms
            && ms.shift(k).contragredient() == ms.contragredient().shift(-k)
            && support(&ms.shift(k), &ctx).values().sum::<u64>() == ms.degree();
        let x = Irrep::z(&ms, &ctx);
        let ok = ok && x.dual(&ctx).dual(&ctx) == x && x.twist(k, &ctx).twist(-k, &ctx) == x;
        fail(&mut out, ok, &|| format!("involutions at {ctx}: {ms}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..cases / 10 {
        let ctx = context(&mut rng);
        let factors: Vec<Expr> = (0..rng.gen_range(1..=3))
            .map(|_| Expr::Irr(Irrep::seg(segment(&mut rng, 3), &ctx)))
            .collect();
        let product = Expr::product(factors.clone());
        let n = product.degree();
        let beta = composition(&mut rng, n);
        let coarse = geometric_lemma(&factors, &Composition::new(beta.clone()).unwrap(), &ctx).unwrap();
        let want = product.char_support(&ctx);
        let ok = coarse.iter().all(|(t, _)| tuple_support(t, &ctx) == want);
        fail(&mut out, ok, &|| format!("Jacquet support at {ctx}: {product} along {beta:?}"));

        let pieces: Vec<Vec<u64>> = beta.iter().map(|&b| composition(&mut rng, b)).collect();
        let gamma: Vec<u64> = pieces.iter().flatten().copied().collect();
        let fine = geometric_lemma(&factors, &Composition::new(gamma.clone()).unwrap(), &ctx).unwrap();
        let ok = refine(&coarse, &pieces, &ctx) == fine;
        fail(&mut out, ok, &|| format!("refinement at {ctx}: {product} along {beta:?} then {gamma:?}"));

        if ctx.e_finite() != Some(1) && n <= 7 {
            if let Ok(set) = enumerate_candidates(&product, &ctx) {
                let base = set.baseline.char_support(&ctx);
                let ok = base == want && set.candidates.iter().all(|c| c.label.char_support(&ctx) == want);
                fail(&mut out, ok, &|| format!("candidate support at {ctx}: {product}"));
            }
            if n <= 6 {
                if let Ok(r) = decompose(&product, &ctx) {
                    let terms: Vec<Expr> = match &r.result {
                        Decomposition::Exact(g) => g.keys().cloned().collect(),
                        Decomposition::Partial(p) => p.intervals.iter().map(|(x, _, _)| Expr::Irr(x.clone())).collect(),
                    };
                    let ok = terms.iter().all(|t| t.char_support(&ctx) == want);
                    fail(&mut out, ok, &|| format!("solver support at {ctx}: {product}"));
                }
                if let Ok(g) = semisimplify(&product, &ctx) {
                    let ok = g.keys().all(|t| t.char_support(&ctx) == want);
                    fail(&mut out, ok, &|| format!("structure support at {ctx}: {product}"));
                }
            }
        }
    }
    out
}
