mod common;

use common::games2;
use cwmmg::indices2d::{fast_index, wc_by_size, wc_structure};
use cwmmg::mwc2d::split_busy;
use cwmmg::oracle::Enumeration;
use cwmmg::{Game, IndexKind};
use num::bigint::BigUint;
use proptest::prelude::*;

fn check(g: &Game) -> Result<(), TestCaseError> {
    let e = Enumeration::new(g).unwrap();
    for kind in IndexKind::ALL {
        prop_assert_eq!(fast_index(g, kind).unwrap(), e.index(kind), "{}", kind);
    }
    let s = wc_structure(g, &split_busy(g).unwrap()).unwrap();
    prop_assert_eq!(s.wc_count(), BigUint::from(e.winning_count()));
    let mut by_size = vec![BigUint::from(0u32); g.n() + 1];
    for m in e.winning_masks() {
        by_size[m.count_ones() as usize] += 1u32;
    }
    prop_assert_eq!(wc_by_size(&s).unwrap(), by_size);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn fast_indices_match_enumeration(g in games2(11, 8)) {
        check(&g)?;
    }

    #[test]
    fn fast_indices_match_enumeration_with_ties(g in games2(10, 3)) {
        check(&g)?;
    }
}
