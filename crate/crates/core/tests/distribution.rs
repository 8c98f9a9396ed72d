mod common;

use common::{five_blocks_lee7, random_instance, seeded, Instance, WeightKind};
use num_bigint::BigUint;
use num_traits::Pow;
use posetblock::distribution::{applicable_methods, distribution, DistributionOptions, Method, MethodChoice};
use posetblock::oracle::{oracle_distribution, OracleOptions};
use proptest::prelude::*;

fn as_big(counts: &[u64]) -> Vec<BigUint> {
    counts.iter().map(|&c| BigUint::from(c)).collect()
}

fn check_every_method(inst: &Instance) {
    let space = inst.space();
    let expected = as_big(&inst.reference().distribution());
    let oracle = oracle_distribution(&space, &OracleOptions::default()).unwrap();
    assert_eq!(as_big(&oracle.histogram), expected, "oracle on {inst:?}");
    let opts = DistributionOptions::default();
    for method in applicable_methods(&space) {
        let table = distribution(&space, MethodChoice::Forced(method), &opts).unwrap();
        assert_eq!(table.counts, expected, "{method} on {inst:?}");
    }
    let auto = distribution(&space, MethodChoice::Auto, &opts).unwrap();
    assert_eq!(auto.counts, expected);
    assert_eq!(auto.total(), Pow::pow(BigUint::from(inst.q), inst.total_len()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn every_method_matches_brute_force(seed in any::<u64>(), index in 0usize..60) {
        let inst = random_instance(&mut seeded(seed), index, 4_000);
        check_every_method(&inst);
    }

    #[test]
    fn ball_volumes_are_prefix_sums(seed in any::<u64>(), index in 0usize..60) {
        let inst = random_instance(&mut seeded(seed), index, 4_000);
        let r = inst.reference();
        let space = inst.space();
        let table = distribution(&space, MethodChoice::Auto, &DistributionOptions::default()).unwrap();
        let max = table.max_weight();
        for radius in 0..=max {
            let brute = r.vectors().filter(|v| r.weight(v) <= radius).count() as u64;
            prop_assert_eq!(table.ball_volume(radius).unwrap(), BigUint::from(brute));
        }
        prop_assert!(table.ball_volume(max + 1).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree(seed in any::<u64>(), index in 0usize..60) {
        let inst = random_instance(&mut seeded(seed), index, 100_000);
        let space = inst.space();
        let single = DistributionOptions { threads: Some(1), ..Default::default() };
        let a = distribution(&space, MethodChoice::Forced(Method::General), &single).unwrap();
        let b = distribution(&space, MethodChoice::Forced(Method::General), &DistributionOptions::default()).unwrap();
        prop_assert_eq!(a.counts, b.counts);
    }
}

#[test]
fn chains_listed_out_of_label_order() {
    let mut rng = seeded(11);
    for q in [2, 3, 5, 7] {
        for n in 1..=4 {
            let rel = common::random_chain(&mut rng, n);
            let lens: Vec<u32> = (0..n).map(|i| 1 + (i as u32 * 2 + q) % 3).collect();
            let mut inst = Instance::new(q, n, &rel, &lens, WeightKind::Lee);
            while inst.space_size() > 200_000 {
                let i = inst.lens.iter().position(|&k| k > 1).unwrap();
                inst.lens[i] -= 1;
            }
            check_every_method(&inst);
        }
    }
}

#[test]
fn two_by_two_levels_over_z3() {
    let inst = Instance::new(3, 4, &[(1, 3), (1, 4), (2, 3), (2, 4)], &[1, 2, 1, 2], WeightKind::Lee);
    assert!(applicable_methods(&inst.space()).contains(&Method::Hierarchical));
    check_every_method(&inst);
    let equal = Instance::new(3, 4, &[(1, 3), (1, 4), (2, 3), (2, 4)], &[2; 4], WeightKind::Lee);
    check_every_method(&equal);
}

#[test]
fn lee7_three_blocks_of_two() {
    check_every_method(&Instance::new(7, 3, &[], &[2, 2, 2], WeightKind::Lee));
    check_every_method(&Instance::new(7, 3, &[(1, 2)], &[2, 2, 2], WeightKind::Lee));
}

#[test]
fn weight_tables_with_gaps() {
    // no symbol of weight 2
    let table = vec![0, 1, 3, 3, 1];
    check_every_method(&Instance::new(5, 3, &[(2, 1)], &[1, 2, 1], WeightKind::Table(table.clone())));
    check_every_method(&Instance::new(5, 3, &[(2, 1), (1, 3)], &[2, 1, 2], WeightKind::Table(table)));
    check_every_method(&Instance::new(3, 4, &[(1, 2), (1, 3)], &[1, 1, 2, 1], WeightKind::Table(vec![0, 4, 1])));
}

#[test]
fn five_blocks_spot_values() {
    let space = five_blocks_lee7().space();
    let table = distribution(&space, MethodChoice::Forced(Method::General), &DistributionOptions::default()).unwrap();
    assert_eq!(table.count(3), BigUint::from(35_384u64));
    assert_eq!(table.count(14), BigUint::from(22_829_377_536u64));
    assert_eq!(table.total(), Pow::pow(BigUint::from(7u32), 13u32));
}

#[test]
fn table_round_trips() {
    let space = Instance::new(5, 3, &[(1, 3)], &[1, 2, 1], WeightKind::Lee).space();
    let table = distribution(&space, MethodChoice::Auto, &DistributionOptions::default()).unwrap();
    let back = posetblock::DistributionTable::from_json(&table.to_json()).unwrap();
    assert!(back.same_counts(&table));
    let csv = posetblock::DistributionTable::counts_from_csv(&table.to_csv()).unwrap();
    assert_eq!(csv, table.counts);
}
