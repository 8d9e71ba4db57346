use msegcalc::arith::{HalfInt, ModContext};
use msegcalc::calculus::{jacquet, Composition};
use msegcalc::distinction::classify;
use msegcalc::dsl::{parse_expr, parse_irrep};
use msegcalc::reps::named;
use msegcalc::reps::{Expr, Irrep};
use msegcalc::segments::{Multiseg, Segment, Tag};
use msegcalc::structure::semisimplify;
use msegcalc::render;
use proptest::prelude::*;

fn ctx_strategy() -> impl Strategy<Value = ModContext> {
    prop_oneof![
        Just(ModContext::char0()),
        (2u64..=6).prop_map(ModContext::with_e),
        prop_oneof![Just(2u64), Just(3), Just(5)].prop_map(|l| ModContext::e_one(l).unwrap()),
    ]
}

fn segment() -> impl Strategy<Value = Segment> {
    (-8i64..=8, 0i64..4, any::<bool>(), prop::option::of(prop_oneof![Just("t"), Just("u")])).prop_map(
        |(a2, len, half, tag)| {
            let a = HalfInt::from_twice(2 * a2 + i64::from(half));
            let tag = tag.map(Tag::named).unwrap_or_else(Tag::unramified);
            Segment::tagged(a, a + len, tag)
        },
    )
}

fn multiseg() -> impl Strategy<Value = Multiseg> {
    prop::collection::vec(segment(), 1..=3).prop_map(Multiseg::new)
}

fn named_label(ctx: ModContext) -> impl Strategy<Value = Irrep> {
    (0usize..7, 2u64..=7, -4i64..=4).prop_map(move |(which, n, x)| {
        let base = match which {
            0 => named::one(n, &ctx),
            1 => named::st(n, &ctx),
            2 => named::pi(n.max(3), &ctx),
            3 => named::lambda(n, &ctx),
            4 => named::lambda_dual(n, &ctx),
            5 => named::phi(n.max(4), &ctx),
            _ => named::psi(n.max(4), &ctx),
        };
        base.twist(HalfInt::from_twice(x), &ctx)
    })
}

fn label() -> impl Strategy<Value = (ModContext, Irrep)> {
    ctx_strategy().prop_flat_map(|ctx| {
        let c = ctx;
        let z = multiseg().prop_map(move |m| Irrep::z(&m, &c));
        (Just(ctx), prop_oneof![z, named_label(ctx)])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_then_parse_is_identity((ctx, x) in label()) {
        let text = render::irrep(&x, &ctx);
        prop_assert_eq!(parse_irrep(&text, &ctx).unwrap(), x.clone(), "{}", text);
        let raw = x.to_string();
        prop_assert_eq!(parse_irrep(&raw, &ctx).unwrap(), x, "{}", raw);
    }

    #[test]
    fn products_round_trip((ctx, x, y) in label().prop_flat_map(|(ctx, x)| {
        let c = ctx;
        (Just(ctx), Just(x), multiseg().prop_map(move |m| Irrep::z(&m, &c)))
    })) {
        let p = Expr::product(vec![Expr::Irr(x), Expr::Irr(y)]);
        let text = render::expr(&p, &ctx);
        prop_assert_eq!(parse_expr(&text, &ctx).unwrap(), p, "{}", text);
    }

    #[test]
    fn dual_and_twist_are_involutive((ctx, x) in label(), k in -6i64..=6) {
        let k = HalfInt::from_twice(k);
        prop_assert_eq!(x.dual(&ctx).dual(&ctx), x.clone());
        prop_assert_eq!(x.twist(k, &ctx).twist(-k, &ctx), x.clone());
        prop_assert_eq!(x.twist(k, &ctx).dual(&ctx), x.dual(&ctx).twist(-k, &ctx));
    }

    #[test]
    fn trivial_jacquet_is_identity((ctx, x) in label()) {
        let n = x.degree();
        let j = jacquet(&Expr::Irr(x.clone()), &Composition::new(vec![n]).unwrap(), &ctx).unwrap();
        prop_assert_eq!(j.total(), 1);
        let (t, _) = j.iter().next().unwrap();
        prop_assert_eq!(t, &vec![Expr::Irr(x)]);
    }

    #[test]
    fn semisimplification_conserves_support(a in -5i64..=5, len in 0i64..4, c in -4i64..=4, e in 2u64..=6) {
        let ctx = ModContext::with_e(e);
        let p = Expr::product(vec![
            Expr::Irr(Irrep::seg(Segment::ints(a, a + len), &ctx)),
            Expr::Irr(named::nu(1, HalfInt::int(c), &ctx)),
        ]);
        let g = semisimplify(&p, &ctx).unwrap();
        prop_assert!(g.total() >= 1);
        for (k, _) in g.iter() {
            prop_assert_eq!(k.char_support(&ctx), p.char_support(&ctx));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_is_dual_invariant(m in prop::collection::vec((-3i64..=3, 0i64..3), 1..=2), e in 3u64..=6) {
        let ctx = ModContext::with_e(e);
        let x = Irrep::z(&Multiseg::new(m.iter().map(|&(a, l)| Segment::ints(a, a + l)).collect()), &ctx);
        let v = classify(&x, &ctx).unwrap().status;
        let w = classify(&x.dual(&ctx), &ctx).unwrap().status;
        prop_assert_eq!(v, w, "{}", x);
    }
}
