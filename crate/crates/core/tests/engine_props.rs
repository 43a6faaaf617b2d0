use proptest::prelude::*;
use sl2_branching::arith::{int, FieldParams, Sign, SquareClass, UnitClass};
use sl2_branching::engine::{branch, dimension_identity, k_intertwines, tail_conforms, tail_end};
use sl2_branching::grep::{make_reducible_constituent, CharKx, GRep, UnitRestriction};

fn field() -> impl Strategy<Value = FieldParams> {
    prop::sample::select(vec![3u64, 5, 7]).prop_map(|p| FieldParams::new(p, 1).unwrap())
}

fn principal_series(fp: FieldParams) -> impl Strategy<Value = GRep> {
    (0u32..4, any::<bool>(), any::<bool>()).prop_map(move |(depth, eps, plus)| {
        let lambda = if eps { UnitClass::Eps } else { UnitClass::One };
        let central = if plus { Sign::Plus } else { Sign::Minus };
        let chi = CharKx::new(depth, UnitRestriction::Other("g".into()), lambda, central, "chi", &fp).unwrap();
        GRep::PrincipalSeries(chi)
    })
}

fn ps_with_field() -> impl Strategy<Value = (FieldParams, GRep)> {
    field().prop_flat_map(|fp| (Just(fp), principal_series(fp)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // degrees below n fill up the cosets of the level-n Borel subgroup
    #[test]
    fn principal_series_dimension_identity((fp, rep) in ps_with_field(), extra in 1u32..3) {
        let n = rep.depth().to_integer() as u32 + extra;
        let s = branch(&rep, int(n as i64), &fp).unwrap();
        let report = dimension_identity(&s, n, &fp).unwrap();
        prop_assert!(report.passed, "{report:?}");
    }

    // truncating a longer series gives the shorter one
    #[test]
    fn truncation_is_consistent((fp, rep) in ps_with_field(), offset in 0i64..3, more in 1i64..3) {
        let d = rep.depth().to_integer() + offset;
        let long = branch(&rep, int(d + more), &fp).unwrap();
        let short = branch(&rep, int(d), &fp).unwrap();
        prop_assert_eq!(long.truncate(int(d)).entries, short.entries);
    }

    #[test]
    fn tails_conform((fp, rep) in ps_with_field()) {
        let d = rep.depth() * int(2) + int(4);
        let (desc, tail) = tail_end(&rep, d, &fp).unwrap();
        prop_assert!(tail_conforms(&desc, &tail));
    }

    #[test]
    fn intertwining_is_symmetric((fp, a, b) in field().prop_flat_map(|fp| (Just(fp), principal_series(fp), principal_series(fp)))) {
        prop_assert_eq!(k_intertwines(&a, &b, &fp), k_intertwines(&b, &a, &fp));
        prop_assert!(k_intertwines(&a, &a, &fp) || a.depth() == int(0));
    }
}

#[test]
fn reducible_pair_fills_the_cosets() {
    for p in [3u64, 5, 7] {
        let fp = FieldParams::new(p, 1).unwrap();
        for tau in [SquareClass::Eps, SquareClass::Pi, SquareClass::EpsPi] {
            let plus = make_reducible_constituent(tau, Sign::Plus, &fp).unwrap();
            let s = branch(&plus, int(3), &fp).unwrap();
            for n in 1..=3 {
                assert!(dimension_identity(&s, n, &fp).unwrap().passed, "p = {p}, tau = {tau}, n = {n}");
            }
        }
    }
}
