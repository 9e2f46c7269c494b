mod common;

use common::games2;
use cwmmg::generators::gen_random;
use cwmmg::oracle::{CStableOracle, Enumeration};
use cwmmg::stability::{allocate, cstable_coalitions, partitions_containing};
use cwmmg::{Coalition, Game, IndexKind, PartitionStructure, PowerProfile};
use num::{One, Zero};
use proptest::prelude::*;

fn all_partitions(n: usize) -> Vec<PartitionStructure> {
    let with_first: Vec<Coalition> = (1u64..1 << n)
        .map(Coalition::from_mask)
        .filter(|c| c.contains(0))
        .collect();
    partitions_containing(n, &with_first).unwrap()
}

/// Structures with a winning block whose power sum is the smallest over the
/// minimal winning coalitions.
fn min_power_winning_structures(
    g: &Game,
    p: &PowerProfile,
    min: &cwmmg::Rational,
) -> Vec<PartitionStructure> {
    all_partitions(g.n())
        .into_iter()
        .filter(|pi| {
            pi.blocks()
                .iter()
                .any(|b| g.is_winning(b).unwrap() && p.theta(b.iter()) == *min)
        })
        .collect()
}

#[test]
fn stable_structures_are_those_with_a_min_power_winning_block() {
    for seed in 0..60u64 {
        let n = 2 + (seed % 4) as usize;
        let g = gen_random(n, 2, 8, seed).unwrap();
        let e = Enumeration::new(&g).unwrap();
        for kind in IndexKind::ALL {
            let p = e.index(kind);
            let report = cstable_coalitions(&g, &e.mwc(), &p).unwrap();
            let got = CStableOracle::new(&g, &p).unwrap().stable_structures();
            assert_eq!(
                got,
                min_power_winning_structures(&g, &p, &report.min_theta),
                "seed {seed} {kind}"
            );
            if p.values.iter().all(|v| !v.is_zero()) {
                let expected = partitions_containing(n, &report.stable_coalitions).unwrap();
                assert_eq!(got, expected, "seed {seed} {kind}");
            }
        }
    }
}

#[test]
fn zero_power_player_makes_a_stable_structure_without_mwc() {
    let g = Game::new(vec![vec![3], vec![3], vec![1]]).unwrap();
    let p = Enumeration::new(&g).unwrap().index(IndexKind::Hp);
    let stable = CStableOracle::new(&g, &p).unwrap().stable_structures();
    let grand = PartitionStructure::new(vec![Coalition::new([0, 1, 2])], 3).unwrap();
    assert!(stable.contains(&grand));
    assert!(!g.is_mwc(&Coalition::new([0, 1, 2])).unwrap());
}

#[test]
fn three_player_game_holler_packel_structures() {
    let g = Game::new(vec![vec![1, 1], vec![1, 0], vec![0, 1]]).unwrap();
    let p = Enumeration::new(&g).unwrap().index(IndexKind::Hp);
    let stable = CStableOracle::new(&g, &p).unwrap().stable_structures();
    let expected =
        partitions_containing(3, &[Coalition::new([0, 1]), Coalition::new([0, 2])]).unwrap();
    assert_eq!(stable, expected);
}

#[test]
fn six_player_symmetric_game_keeps_every_mwc() {
    let g = cwmmg::generators::fixture("g3").unwrap();
    let e = Enumeration::new(&g).unwrap();
    for kind in IndexKind::ALL {
        let r = cstable_coalitions(&g, &e.mwc(), &e.index(kind)).unwrap();
        assert_eq!(r.stable_coalitions.len(), 6, "{kind}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn memo_does_not_change_the_answer(g in games2(5, 6), k in 0usize..4) {
        let kind = IndexKind::ALL[k];
        let p = Enumeration::new(&g).unwrap().index(kind);
        let memo = CStableOracle::new(&g, &p).unwrap().stable_structures();
        let plain = CStableOracle::new(&g, &p).unwrap().without_memo().stable_structures();
        prop_assert_eq!(memo, plain);
    }

    #[test]
    fn winners_share_exactly_one(g in games2(7, 8), k in 0usize..4) {
        let e = Enumeration::new(&g).unwrap();
        let p = e.index(IndexKind::ALL[k]);
        let r = cstable_coalitions(&g, &e.mwc(), &p).unwrap();
        let total = r.allocation.iter().fold(cwmmg::Rational::zero(), |a, b| a + b);
        prop_assert!(total.is_one());
        for j in 0..g.n() {
            if !r.representative().contains(j) {
                prop_assert!(r.allocation[j].is_zero());
            }
        }
        let half = cwmmg::power::ratio(1, 2);
        prop_assert!(r.winner_ratio > half);
        let pi = PartitionStructure::new(vec![g.grand_coalition()], g.n()).unwrap();
        let grand = allocate(&g, &pi, &p).unwrap();
        prop_assert!(grand.iter().fold(cwmmg::Rational::zero(), |a, b| a + b).is_one());
    }
}
