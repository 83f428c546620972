//! Exhaustive codec checks on every fixed animal of small size.

use std::collections::HashSet;

use growthbound::oracle::enumerate_fixed;
use growthbound::twig::{decode, encode, sequence_weight, Monomial};
use growthbound::twigs2d::{canonical_twigs_2d, decode_eden, encode_eden};
use growthbound::twigs3d::canonical_twigs_3d;
use growthbound::{Animal, TwigSet};

fn exhaustive<const D: usize>(set: &TwigSet<D>, max_n: usize) {
    for n in 1..=max_n {
        let animals: Vec<Animal<D>> = enumerate_fixed(n);
        let mut seen = HashSet::new();
        for a in &animals {
            let s = encode(set, a).unwrap_or_else(|e| panic!("encode {a:?}: {e}"));
            let back = decode(set, &s).unwrap();
            assert_eq!(&back, a);
            assert_eq!(sequence_weight(set, &s), Monomial { a: n as u32, b: n as u32 }, "{a:?}");
            assert!(seen.insert(s), "two size-{n} animals share a code");
        }
    }
}

#[test]
fn polyominoes_up_to_8() {
    exhaustive(&canonical_twigs_2d(), 8);
}

#[test]
fn polycubes_up_to_5() {
    exhaustive(&canonical_twigs_3d(), 5);
}

#[test]
fn eden_up_to_8() {
    for n in 1..=8 {
        let mut seen = HashSet::new();
        for a in enumerate_fixed::<2>(n) {
            let bits = encode_eden(&a);
            assert_eq!(bits.len(), 3 * n - 1, "{a:?}");
            assert_eq!(bits.matches('1').count(), n - 1);
            assert_eq!(decode_eden(&bits).unwrap(), a);
            assert!(seen.insert(bits));
        }
    }
}

#[test]
fn worked_sequence() {
    let set = canonical_twigs_2d();
    let seq = set.parse_sequence(&["L5", "L4", "L3", "L5", "L1", "L1", "L2", "L1", "L4", "L1"]).unwrap();
    let a = decode(&set, &seq).unwrap();
    assert_eq!(a.len(), 10);
    assert_eq!(encode(&set, &a).unwrap(), seq);
}

#[test]
fn truncated_and_overlong_sequences_fail() {
    let set = canonical_twigs_2d();
    assert!(decode(&set, &set.parse_sequence(&["L5"]).unwrap()).is_err());
    assert!(decode(&set, &set.parse_sequence(&["L1", "L1"]).unwrap()).is_err());
}
