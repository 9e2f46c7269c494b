//! Games on which a naive closed form disagrees with enumeration while the
//! fast path agrees with it.

use cwmmg::generators::fixture;
use cwmmg::indices2d::{fast_index, swing_counts, wc_structure};
use cwmmg::mwc2d::{compute_mwc2, split_busy, Side};
use cwmmg::oracle::Enumeration;
use cwmmg::power::{format_rational, ratio};
use cwmmg::{Coalition, IndexKind, Rational};
use num::Zero;

pub struct Witness {
    pub fixture: &'static str,
    pub claim: &'static str,
    /// The naive value differs from enumeration.
    pub naive_refuted: bool,
    /// The fast path equals enumeration.
    pub fast_agrees: bool,
    pub detail: String,
}

impl Witness {
    pub fn holds(&self) -> bool {
        self.naive_refuted && self.fast_agrees
    }
}

fn mask(c: &Coalition) -> usize {
    c.to_mask() as usize
}

/// Anchor-only construction drops coalitions whose second-coordinate
/// maximum comes from the first busy set.
fn anchor_only_mwc() -> Witness {
    let g = fixture("busy_set_supplies_cross_max").unwrap();
    let e = Enumeration::new(&g).unwrap();
    let target = Coalition::new([0, 2]);
    let fast = compute_mwc2(&g).unwrap().coalitions();
    // Anchor-built coalitions need an idle member attaining the second
    // coordinate maximum; here the only idle member p3 does not.
    let anchored = g.weight(2, 1) >= g.weight(0, 1);
    Witness {
        fixture: "busy_set_supplies_cross_max",
        claim: "coalitions built only from idle anchors cover every one-sided MWC",
        naive_refuted: e.is_mwc(mask(&target)) && !anchored,
        fast_agrees: fast == e.mwc(),
        detail: format!("{target} is minimal winning; idle p3 is not busy in it"),
    }
}

fn nested_busy_sets() -> Witness {
    let g = fixture("nested_busy_sets").unwrap();
    let e = Enumeration::new(&g).unwrap();
    let a1 = Coalition::new([0, 1]);
    Witness {
        fixture: "nested_busy_sets",
        claim: "with intersecting busy sets both busy sets are minimal winning",
        naive_refuted: !e.is_mwc(mask(&a1)),
        fast_agrees: compute_mwc2(&g).unwrap().coalitions() == e.mwc(),
        detail: format!(
            "mwc = {:?}",
            e.mwc().iter().map(|c| c.to_string()).collect::<Vec<_>>()
        ),
    }
}

/// Winning coalitions meeting both busy sets, counted as "one busy set plus
/// one member of the other".
fn both_busy_sets_partial() -> Witness {
    let g = fixture("both_busy_sets_partial").unwrap();
    let e = Enumeration::new(&g).unwrap();
    let s = split_busy(&g).unwrap();
    let (a1, a2) = (Coalition::new(s.a1.clone()), Coalition::new(s.a2.clone()));
    let meets = |m: usize| {
        let c = Coalition::from_mask(m as u64);
        a1.iter().any(|j| c.contains(j)) && a2.iter().any(|j| c.contains(j))
    };
    let actual = e.winning_masks().filter(|&m| meets(m)).count();
    let naive = (s.m1() + s.m2()) << s.m();
    let st = wc_structure(&g, &s).unwrap();
    Witness {
        fixture: "both_busy_sets_partial",
        claim: "two-sided winning coalitions are a busy set plus one opposite busy player",
        naive_refuted: naive != actual,
        fast_agrees: st.wc_count() == e.winning_count().into(),
        detail: format!("two-sided winning: {actual}, naive {naive}"),
    }
}

/// Swing count of a first-busy-set player over two-sided coalitions taken
/// as `(m2 + 1) 2^m`.
fn duplicated_busy_player() -> Witness {
    let g = fixture("duplicated_busy_player").unwrap();
    let e = Enumeration::new(&g).unwrap();
    let s = split_busy(&g).unwrap();
    let j = s.a1[0];
    let two_sided = e
        .winning_masks()
        .filter(|&m| {
            s.a1.iter().any(|&x| m >> x & 1 == 1)
                && s.a2.iter().any(|&y| m >> y & 1 == 1)
                && m >> j & 1 == 1
                && !e.is_winning(m & !(1 << j))
        })
        .count();
    let naive = (s.m2() + 1) << s.m();
    let fast = swing_counts(&wc_structure(&g, &s).unwrap()).unwrap();
    let oracle: Vec<u64> = e
        .swing_histograms()
        .iter()
        .map(|h| h.iter().sum())
        .collect();
    Witness {
        fixture: "duplicated_busy_player",
        claim: "a first-busy-set player swings in (m2 + 1) 2^m two-sided coalitions",
        naive_refuted: naive != two_sided,
        fast_agrees: fast.iter().zip(&oracle).all(|(a, &b)| *a == b.into()),
        detail: format!("p1 swings in {two_sided} two-sided coalitions, naive {naive}"),
    }
}

/// Holler-Packel value of a busy player as `n1 + m2 + 1`.
fn single_busy_players() -> Witness {
    let g = fixture("single_busy_players_both_lose").unwrap();
    let e = Enumeration::new(&g).unwrap();
    let c = compute_mwc2(&g).unwrap();
    let naive = c.side(Side::One).count() + c.split.m2() + 1;
    let hp = e.index(IndexKind::Hp);
    Witness {
        fixture: "single_busy_players_both_lose",
        claim: "a first-busy-set player belongs to n1 + m2 + 1 minimal winning coalitions",
        naive_refuted: hp.values[0] != cwmmg::power::int(naive as u64),
        fast_agrees: fast_index(&g, IndexKind::Hp).unwrap() == hp,
        detail: format!("hp_1 = {}, naive {naive}", format_rational(&hp.values[0])),
    }
}

/// Deegan-Packel value of an idle player summing the list entries up to
/// (rather than from) the first one containing it.
fn prefix_sum_direction() -> Witness {
    let g = fixture("g5").unwrap();
    let e = Enumeration::new(&g).unwrap();
    let c = compute_mwc2(&g).unwrap();
    let j = 5;
    let mut naive = Rational::zero();
    for side in [Side::One, Side::Two] {
        let s = c.side(side);
        let tau = s.tau[j].min(s.count());
        for entry in &s.list[..tau] {
            naive += ratio(1, entry.size as u64);
        }
        if let Some(idx) = s.anchored[j] {
            naive += ratio(1, s.list[idx].size as u64);
        }
    }
    let dp = e.index(IndexKind::Dp);
    Witness {
        fixture: "g5",
        claim: "idle Deegan-Packel sums run over the first tau list entries",
        naive_refuted: naive != dp.values[j],
        fast_agrees: fast_index(&g, IndexKind::Dp).unwrap() == dp,
        detail: format!(
            "dp_6 = {}, naive {}",
            format_rational(&dp.values[j]),
            format_rational(&naive)
        ),
    }
}

/// One representative anchor per tie group with `2^|E|` coalitions.
fn tied_idle_players() -> Witness {
    let g = fixture("tied_idle_players").unwrap();
    let e = Enumeration::new(&g).unwrap();
    let s = split_busy(&g).unwrap();
    let family = e
        .winning_masks()
        .filter(|&m| {
            s.a1.iter().all(|&x| m >> x & 1 == 1)
                && s.a2.iter().all(|&y| m >> y & 1 == 0)
                && Coalition::from_mask(m as u64)
                    .iter()
                    .map(|j| g.weight(j, 1))
                    .max()
                    == Some(6)
        })
        .count();
    // Representative p3; its free set is {p4}.
    let naive = 1usize << 1;
    let st = wc_structure(&g, &s).unwrap();
    Witness {
        fixture: "tied_idle_players",
        claim: "a tie group of anchors contributes 2^|E| winning coalitions",
        naive_refuted: naive != family,
        fast_agrees: st.wc_count() == e.winning_count().into()
            && IndexKind::ALL
                .iter()
                .all(|&k| fast_index(&g, k).unwrap() == e.index(k)),
        detail: format!("winning with second maximum 6: {family}, naive {naive}"),
    }
}

pub fn all() -> Vec<Witness> {
    vec![
        anchor_only_mwc(),
        nested_busy_sets(),
        both_busy_sets_partial(),
        duplicated_busy_player(),
        single_busy_players(),
        prefix_sum_direction(),
        tied_idle_players(),
    ]
}
