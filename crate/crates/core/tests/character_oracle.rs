use branchkit::characters::character_identity_residual;
use branchkit::{weight_multiplicities, AffineAlgebra, RootVec};
use num_bigint::BigInt;

fn alg(s: &str) -> AffineAlgebra {
    AffineAlgebra::from_id(s.parse().unwrap())
}

#[test]
fn residual_vanishes_across_types() {
    for (s, k, n) in [("A1~1", 3, 6), ("A2~1", 2, 3), ("B2~1", 1, 3), ("C2~1", 1, 3), ("G2~1", 1, 2), ("A3~1", 1, 2)] {
        let a = alg(s);
        for lam in a.dominant_weights(k) {
            let r = character_identity_residual(&a, &lam.labels, n).unwrap();
            assert!(r.is_zero(), "{s} {:?}: {:?}", lam.labels, r.nonzero);
        }
    }
}

#[test]
fn level_zero_module_is_trivial() {
    let a = alg("B3~1");
    let t = weight_multiplicities(&a, &[0, 0, 0, 0], 4).unwrap();
    assert_eq!(t.len(), 1);
    assert!(character_identity_residual(&a, &[0, 0, 0, 0], 3).unwrap().is_zero());
}

/// The basic `A1~1` module along `lambda - n delta` counts partitions of `n`.
#[test]
fn basic_module_counts_partitions() {
    let a = alg("A1~1");
    let n = 12;
    let t = weight_multiplicities(&a, &[1, 0], n).unwrap();
    let mut p = vec![BigInt::from(0); (n + 1) as usize];
    p[0] = BigInt::from(1);
    for part in 1..=n as usize {
        for m in part..=n as usize {
            let prev = p[m - part].clone();
            p[m] += prev;
        }
    }
    for d in 0..=n {
        assert_eq!(t.mult(&RootVec(vec![d, d])), p[d as usize], "degree {d}");
    }
}
