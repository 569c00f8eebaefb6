use num_bigint::BigInt;
use num_traits::Signed;
use pentaverify_core::partition::{enumerate_partitions, PartitionMode};
use pentaverify_core::truncated::{mk, mkbar, mp};
use pentaverify_core::{Family, SeqTable, TruncatedFamily};
use proptest::prelude::*;
use std::sync::OnceLock;

const N: usize = 500;

fn tables() -> &'static [SeqTable; 3] {
    static T: OnceLock<[SeqTable; 3]> = OnceLock::new();
    T.get_or_init(|| [SeqTable::build(Family::P, N), SeqTable::build(Family::OverP, N), SeqTable::build(Family::Pod, N)])
}

fn eval(family: TruncatedFamily, n: usize, k: usize) -> BigInt {
    let [p, over, pod] = tables();
    match family {
        TruncatedFamily::Mk => mk(n, k, p),
        TruncatedFamily::MkBar => mkbar(n, k, over),
        TruncatedFamily::MPk => mp(n, k, pod),
    }
    .unwrap()
}

#[test]
fn tables_count_enumerated_partitions() {
    for mode in [PartitionMode::Plain, PartitionMode::Over, PartitionMode::PodOnly] {
        let table = SeqTable::build(mode.family(), mode.cap());
        for n in 0..=mode.cap() {
            let count = enumerate_partitions(n, mode).unwrap().count();
            assert_eq!(BigInt::from(count), table.values()[n], "{mode:?} n = {n}");
        }
    }
}

#[test]
fn enumeration_respects_caps() {
    for mode in [PartitionMode::Plain, PartitionMode::Over, PartitionMode::PodOnly] {
        assert!(enumerate_partitions(mode.cap() + 1, mode).is_err());
    }
}

#[test]
fn pod_partitions_never_repeat_odd_parts() {
    for part in enumerate_partitions(20, PartitionMode::PodOnly).unwrap() {
        assert!(part.parts().iter().all(|&p| p % 2 == 0 || part.multiplicity(p) == 1), "{part}");
    }
}

#[test]
fn known_large_values() {
    let [p, over, pod] = tables();
    assert_eq!(p.values()[100].to_string(), "190569292");
    assert_eq!(p.values()[200].to_string(), "3972999029388");
    assert_eq!(over.values()[10], BigInt::from(232));
    assert_eq!(pod.values()[10], BigInt::from(16));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn truncated_sums_nonnegative(n in 1usize..=N, k in 1usize..=10, f in 0usize..3) {
        let family = TruncatedFamily::ALL[f];
        prop_assert!(!eval(family, n, k).is_negative(), "{family:?} n = {n} k = {k}");
    }

    /// Once every omitted term has a negative argument, the truncated sum is
    /// the full theta-type sum and vanishes.
    #[test]
    fn full_sums_vanish(n in 1usize..=N) {
        let k_mk = (1..).find(|&k: &usize| k * (3 * k + 1) / 2 > n).unwrap();
        prop_assert_eq!(eval(TruncatedFamily::Mk, n, k_mk), BigInt::from(0));
        let k_bar = (1..).find(|&k: &usize| k * k > n).unwrap();
        prop_assert_eq!(eval(TruncatedFamily::MkBar, n, k_bar), BigInt::from(0));
        let k_mp = (1..).find(|&k: &usize| k * (2 * k + 1) > n).unwrap();
        prop_assert_eq!(eval(TruncatedFamily::MPk, n, k_mp), BigInt::from(0));
    }

    #[test]
    fn first_truncation_is_shifted_difference(n in 2usize..=N) {
        let [p, over, pod] = tables();
        let pv = p.values();
        prop_assert_eq!(eval(TruncatedFamily::Mk, n, 1), &pv[n] - &pv[n - 1]);
        let ov = over.values();
        prop_assert_eq!(eval(TruncatedFamily::MkBar, n, 1), -(&ov[n] - BigInt::from(2) * &ov[n - 1]));
        let dv = pod.values();
        prop_assert_eq!(eval(TruncatedFamily::MPk, n, 1), &dv[n] - &dv[n - 1]);
    }

    #[test]
    fn formula_matches_oracle(n in 1usize..=20, k in 1usize..=4, f in 0usize..3) {
        let family = TruncatedFamily::ALL[f];
        let q = pentaverify_core::truncated::TruncatedSumQuery::new(family, n, k).unwrap();
        prop_assert_eq!(eval(family, n, k), BigInt::from(q.oracle().unwrap()));
    }
}
