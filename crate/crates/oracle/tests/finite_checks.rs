use std::sync::OnceLock;

use proptest::prelude::*;
use sl2_branching::arith::{Sign, UnitClass};
use sl2_oracle::classfn::{induce, inner_product, ClassFunction, Linear};
use sl2_oracle::group::expected_order;
use sl2_oracle::table::borel_induced;
use sl2_oracle::{
    character_table_sl2fp, run_suite, summarize, Execution, FiniteGroup, Mat, RowKind, ShalikaSpec, Subgroup, Suite,
    Verdict, DEFAULT_BUDGET,
};

#[test]
fn group_orders() {
    for (n, order) in [(1, 24), (2, 648), (3, 17496)] {
        let g = FiniteGroup::new(3, n, DEFAULT_BUDGET, Execution::Parallel).unwrap();
        assert_eq!(g.order(), order);
        assert_eq!(expected_order(3, n), order as u64);
        assert_eq!(g.classes().iter().map(|c| c.size).sum::<u64>(), order as u64);
    }
}

#[test]
fn inner_product_examples() {
    let t = character_table_sl2fp(3, Execution::Parallel).unwrap();
    let g = &t.group;
    let ind = borel_induced(g, 0, Execution::Parallel);
    assert_eq!(inner_product(g, &ind, &ind).unwrap(), 2);
    let st = &t.find(RowKind::Steinberg).unwrap().values;
    assert_eq!(inner_product(g, &ClassFunction::trivial(g), st).unwrap(), 0);
    assert_eq!(inner_product(g, &ind, st).unwrap(), 1);
}

#[test]
fn table_p5() {
    let t = character_table_sl2fp(5, Execution::Parallel).unwrap();
    let d = t.degrees();
    assert_eq!(d.iter().filter(|&&x| x == 2).count(), 2);
    assert!(t.rows.iter().any(|r| r.kind == RowKind::Cuspidal && r.degree == 4));
    assert!(t.find(RowKind::SpecialCuspidal(Sign::Plus)).is_some());
}

#[test]
fn shalika_induction_degree_at_level_nine() {
    let g = FiniteGroup::new(3, 2, DEFAULT_BUDGET, Execution::Parallel).unwrap();
    let spec = ShalikaSpec::split(3, 1, UnitClass::One, Sign::Plus);
    let (h, chi) = sl2_oracle::shalika_character(&g, &spec, Execution::Sequential).unwrap();
    assert_eq!(g.order() / h.subgroup.order(), 4);
    assert_eq!(chi.degree(&g), 4);
}

#[test]
fn p3_suite_passes_and_is_deterministic() {
    let a = run_suite(Suite::All, 3, DEFAULT_BUDGET, Execution::Parallel).unwrap();
    let b = run_suite(Suite::All, 3, DEFAULT_BUDGET, Execution::Sequential).unwrap();
    assert_eq!(summarize(&a), Verdict::Pass, "{}", a.iter().map(|r| r.to_string()).collect::<String>());
    let render = |rs: &[sl2_oracle::Report]| rs.iter().map(|r| r.to_string()).collect::<String>();
    assert_eq!(render(&a), render(&b));
}

#[test]
fn small_budget_skips_deep_levels() {
    // 7^3 fits, 7^6 does not
    let r = run_suite(Suite::All, 7, 400, Execution::Parallel).unwrap();
    assert_eq!(summarize(&r), Verdict::Skipped);
    assert!(r.iter().any(|x| x.verdict == Verdict::Skipped));
    assert!(r.iter().all(|x| x.verdict != Verdict::Fail), "{}", r.iter().map(|r| r.to_string()).collect::<String>());
}

#[test]
fn unsupported_prime() {
    assert!(run_suite(Suite::Shalika, 13, DEFAULT_BUDGET, Execution::Parallel).is_err());
}

fn table5() -> &'static sl2_oracle::CharacterTable {
    static T: OnceLock<sl2_oracle::CharacterTable> = OnceLock::new();
    T.get_or_init(|| character_table_sl2fp(5, Execution::Parallel).unwrap())
}

fn group9() -> &'static FiniteGroup {
    static G: OnceLock<FiniteGroup> = OnceLock::new();
    G.get_or_init(|| FiniteGroup::new(3, 2, DEFAULT_BUDGET, Execution::Sequential).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // induced linear characters of the Borel group decompose with
    // non-negative integer multiplicities against the table
    #[test]
    fn induced_multiplicities_are_natural(j in 0u64..4) {
        let t = table5();
        let g = &t.group;
        let b = Subgroup::borel(g, 1, Execution::Parallel);
        let log = sl2_oracle::table::discrete_logs(5);
        let chi = Linear { m: 4, exponent: |x: &Mat| j * log[(x[0] % 5) as usize] };
        let ind = induce(g, &b.keys, &chi, Execution::Parallel);
        let mut total = 0;
        for row in &t.rows {
            let m = inner_product(g, &ind, &row.values).unwrap();
            prop_assert!(m >= 0);
            total += m as u64 * row.degree;
        }
        prop_assert_eq!(total, g.order() as u64 / b.order() as u64);
    }

    #[test]
    fn class_functions_are_class_invariant(i in 0usize..648, k in 0usize..648) {
        let g = group9();
        let (x, y) = (g.element(i), g.element(k));
        let conj = g.mul(&g.mul(&y, &x), &g.inv(&y));
        prop_assert_eq!(g.class_of(&conj), g.class_of(&x));
    }
}
