use growthbound::enumerator::{build_weight_sum, build_weight_sum_reference, EnumError, RunOptions};
use growthbound::twigs2d::canonical_twigs_2d;
use growthbound::twigs3d::canonical_twigs_3d;
use growthbound::verify::{describe_diff, weights_2d};
use num_bigint::BigInt;

fn opts(workers: usize) -> RunOptions {
    RunOptions { workers, budget: u64::MAX, split_depth: 4 }
}

#[test]
fn counts_2d() {
    let set = canonical_twigs_2d();
    let want = [5u64, 21, 93, 409, 1803, 7937, 35084];
    for (k, &c) in want.iter().enumerate() {
        let w = build_weight_sum(&set, k + 1, &opts(1)).unwrap();
        assert_eq!(w.count, BigInt::from(c), "i={}", k + 1);
        assert_eq!(w.poly.eval_one(), w.count);
    }
}

#[test]
fn counts_3d() {
    let set = canonical_twigs_3d();
    for (k, &c) in [17u64, 273, 3745].iter().enumerate() {
        assert_eq!(build_weight_sum(&set, k + 1, &opts(1)).unwrap().count, BigInt::from(c));
    }
}

#[test]
fn matches_printed_polynomials() {
    let set = canonical_twigs_2d();
    let printed = weights_2d();
    for i in 1..=7 {
        let w = build_weight_sum(&set, i, &opts(2)).unwrap();
        assert_eq!(describe_diff(printed.get(i).unwrap(), &w.poly), None, "W_{i}");
    }
}

#[test]
fn parallel_is_bit_identical() {
    let set = canonical_twigs_2d();
    let base = build_weight_sum(&set, 8, &opts(1)).unwrap();
    for workers in [4, 8] {
        assert_eq!(build_weight_sum(&set, 8, &opts(workers)).unwrap(), base, "{workers} workers");
    }
    let set3 = canonical_twigs_3d();
    let base = build_weight_sum(&set3, 4, &opts(1)).unwrap();
    for workers in [4, 8] {
        assert_eq!(build_weight_sum(&set3, 4, &opts(workers)).unwrap(), base);
    }
}

#[test]
fn agrees_with_reference_walk() {
    let set = canonical_twigs_2d();
    for i in 1..=5 {
        assert_eq!(build_weight_sum(&set, i, &opts(1)).unwrap().poly, build_weight_sum_reference(&set, i));
    }
    let set3 = canonical_twigs_3d();
    for i in 1..=3 {
        assert_eq!(build_weight_sum(&set3, i, &opts(1)).unwrap().poly, build_weight_sum_reference(&set3, i));
    }
}

#[test]
fn budget_and_level_errors() {
    let set = canonical_twigs_2d();
    let tight = RunOptions { workers: 1, budget: 50, split_depth: 4 };
    assert!(matches!(build_weight_sum(&set, 6, &tight), Err(EnumError::Budget(50))));
    assert_eq!(build_weight_sum(&set, 0, &opts(1)).unwrap_err(), EnumError::BadLevel);
}
