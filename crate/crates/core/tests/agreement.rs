use branchkit::{branch, AffineAlgebra, BranchingQuery, Context, Method, Sl2Coords};
use proptest::prelude::*;

fn sl2_triple() -> impl Strategy<Value = (i64, i64, i64, i64, i64, i64)> {
    (0i64..=3, 0i64..=3, 0i64..=7).prop_flat_map(|(k1, k2, n)| {
        (0..=k1, Just(k1), 0..=k2, Just(k2), 0..=k1 + k2, Just(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_sl2_method_agrees((i1, k1, i2, k2, j, n) in sl2_triple()) {
        let ctx = Context::new(AffineAlgebra::from_id("A1~1".parse().unwrap()));
        let q = Sl2Coords::new(i1, k1, i2, k2, j).unwrap().query(n).unwrap();
        let base = branch(&ctx, &q, Method::Oracle).unwrap();
        prop_assert!(base.series.terms().all(|(_, c)| c.sign() != num_bigint::Sign::Minus));
        for m in Method::all_for(ctx.algebra()) {
            prop_assert_eq!(&branch(&ctx, &q, m).unwrap().series, &base.series, "{}", m);
        }
        let swapped = branch(&ctx, &q.swapped(), Method::Oracle).unwrap();
        prop_assert_eq!(swapped.series, base.series);
    }
}

#[test]
fn b2_methods_agree() {
    let alg = AffineAlgebra::from_id("B2~1".parse().unwrap());
    let ctx = Context::new(alg.clone());
    let ones = alg.dominant_weights(1);
    for l1 in &ones {
        for l2 in &ones {
            for mu in alg.dominant_weights(2) {
                let q = BranchingQuery::new(&alg, l1.labels.clone(), l2.labels.clone(), mu.labels.clone(), 3).unwrap();
                let base = branch(&ctx, &q, Method::Oracle).unwrap().series;
                for m in Method::all_for(&alg) {
                    assert_eq!(branch(&ctx, &q, m).unwrap().series, base, "{m} {q:?}");
                }
            }
        }
    }
}
