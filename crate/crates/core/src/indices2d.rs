//! Exact power indices of two-dimensional games without enumeration.
//!
//! Holler-Packel and Deegan-Packel values come straight from the compact
//! [`MwcCollection`]. Banzhaf and Shapley-Shubik values need swing counts,
//! which are assembled from the families of winning coalitions described by
//! [`WcStructure`]. Counts are carried either as plain totals (Banzhaf) or as
//! polynomials in `z` whose coefficient of `z^s` counts coalitions of size
//! `s` (Shapley-Shubik).

use std::collections::HashMap;
use std::rc::Rc;

use num::bigint::{BigInt, BigUint};
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::Game;
use crate::mwc2d::{compute_mwc2, split_busy, BusySplit, MwcCollection, MwcEntry, Side, View};
use crate::power::{
    banzhaf_from_count, factorials, int, ratio, shapley_from_histogram, IndexKind, PowerProfile,
    Rational,
};

fn check_split(game: &Game, split: &BusySplit) -> Result<()> {
    if split_busy(game)? != *split {
        return Err(Error::Consistency(
            "busy decomposition was computed for a different game".into(),
        ));
    }
    Ok(())
}

/// Holler-Packel values: the number of minimal winning coalitions each
/// player belongs to.
pub fn hp2(game: &Game, mwc: &MwcCollection) -> Result<PowerProfile> {
    check_split(game, &mwc.split)?;
    let values = member_sums(mwc, |_| int(1));
    Ok(PowerProfile::new(IndexKind::Hp, values))
}

/// Deegan-Packel values: `Σ 1/|C|` over the minimal winning coalitions
/// containing each player.
pub fn dp2(game: &Game, mwc: &MwcCollection) -> Result<PowerProfile> {
    check_split(game, &mwc.split)?;
    let values = member_sums(mwc, |size| ratio(1, size as u64));
    Ok(PowerProfile::new(IndexKind::Dp, values))
}

/// `Σ weight(|C|)` over the coalitions of `mwc` containing each player, in
/// `O(n + |MWC|)`.
fn member_sums(mwc: &MwcCollection, weight: impl Fn(usize) -> Rational) -> Vec<Rational> {
    let s = &mwc.split;
    let mut values = vec![Rational::zero(); s.n()];
    if s.intersecting {
        for entry in mwc.entries() {
            let c = mwc.materialize(entry);
            let share = weight(c.len());
            for j in c.iter() {
                values[j] += &share;
            }
        }
        return values;
    }

    let (m1, m2) = (s.m1(), s.m2());
    let mut busy_one = Rational::zero();
    let mut busy_two = Rational::zero();
    for entry in mwc.entries() {
        if let MwcEntry::Cross { base, extra } = *entry {
            let (size, share) = match base {
                Side::One => (m1 + 1, &mut busy_one),
                Side::Two => (m2 + 1, &mut busy_two),
            };
            let w = weight(size);
            *share += &w;
            values[extra] += w;
        }
    }

    for side in [Side::One, Side::Two] {
        let summary = mwc.side(side);
        let weights: Vec<Rational> = summary.list.iter().map(|c| weight(c.size)).collect();
        // suffix[k] = Σ_{idx >= k} weights[idx]
        let mut suffix = vec![Rational::zero(); weights.len() + 1];
        for k in (0..weights.len()).rev() {
            suffix[k] = &suffix[k + 1] + &weights[k];
        }
        match side {
            Side::One => busy_one += &suffix[0],
            Side::Two => busy_two += &suffix[0],
        }
        for &j in &s.idle {
            values[j] += &suffix[summary.tau[j] - 1];
            if let Some(idx) = summary.anchored[j] {
                values[j] += &weights[idx];
            }
        }
    }
    for &j in &s.a1 {
        values[j] += &busy_one;
    }
    for &j in &s.a2 {
        values[j] += &busy_two;
    }
    values
}

/// One family of one-sided winning coalitions: those containing the side's
/// busy set, avoiding the other busy set, and whose cross-coordinate maximum
/// equals `cross_max`.
///
/// Its members are `busy ∪ D ∪ E` where `D` is the first `prefix` players of
/// the side's own order and `E` ranges over subsets of the `free` idle
/// players outside `D` with cross coordinate at most `cross_max`. When
/// `group > 0`, `E` must also include one of the `group` idle players whose
/// cross coordinate equals `cross_max`; otherwise the maximum is supplied by
/// the busy set or by `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WcFamily {
    pub cross_max: u64,
    pub prefix: usize,
    pub free: usize,
    pub group: usize,
    /// Size of `busy ∪ D`.
    pub base_size: usize,
}

impl WcFamily {
    pub fn count(&self) -> BigUint {
        let all = BigUint::one() << self.free;
        if self.group == 0 {
            all
        } else {
            all - (BigUint::one() << (self.free - self.group))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WcShape {
    /// A coalition wins iff it contains `A1(N)` or `A2(N)`.
    Intersecting,
    /// Families in ascending order of `cross_max`, per side. Remaining
    /// winning coalitions meet both busy sets and contain one in full.
    Disjoint {
        one: Vec<WcFamily>,
        two: Vec<WcFamily>,
    },
}

/// Decomposition of all winning coalitions of a two-dimensional game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WcStructure {
    pub split: BusySplit,
    pub shape: WcShape,
}

impl WcStructure {
    pub fn families(&self, side: Side) -> &[WcFamily] {
        match (&self.shape, side) {
            (WcShape::Disjoint { one, .. }, Side::One) => one,
            (WcShape::Disjoint { two, .. }, Side::Two) => two,
            (WcShape::Intersecting, _) => &[],
        }
    }

    /// Total number of winning coalitions.
    pub fn wc_count(&self) -> BigUint {
        let total = winning_polynomial(self, &mut Totals);
        total.to_biguint().expect("coalition count is non-negative")
    }
}

pub fn wc_structure(game: &Game, split: &BusySplit) -> Result<WcStructure> {
    check_split(game, split)?;
    let shape = if split.intersecting {
        WcShape::Intersecting
    } else {
        WcShape::Disjoint {
            one: side_families(split.view(Side::One)),
            two: side_families(split.view(Side::Two)),
        }
    };
    Ok(WcStructure {
        split: split.clone(),
        shape,
    })
}

fn side_families(v: View<'_>) -> Vec<WcFamily> {
    let order = v.own_order();
    let by_cross = v.cross_order();
    let m = order.len();
    let mut prefix_cross_max = vec![0u64; m + 1];
    for (p, &t) in order.iter().enumerate() {
        prefix_cross_max[p + 1] = prefix_cross_max[p].max(v.cross(t));
    }
    // Idle players with cross coordinate at most h.
    let at_most = |h: u64| m - by_cross.partition_point(|&t| v.cross(t) > h);
    let base_cross = v.own_busy_cross();

    let mut heights = vec![base_cross];
    heights.extend(
        by_cross
            .iter()
            .rev()
            .map(|&t| v.cross(t))
            .filter(|&h| h > base_cross),
    );
    heights.dedup();

    let mut families = Vec::new();
    for h in heights {
        let threshold = h as i64 + v.offset();
        if v.other_busy_own() as i64 >= threshold {
            continue;
        }
        let prefix = v.prefix_len(threshold);
        let reached = prefix_cross_max[prefix];
        if reached > h {
            continue;
        }
        let group = if h == base_cross || reached == h {
            0
        } else {
            at_most(h) - at_most(h - 1)
        };
        families.push(WcFamily {
            cross_max: h,
            prefix,
            free: at_most(h) - prefix,
            group,
            base_size: v.own_busy().len() + prefix,
        });
    }
    families
}

/// Counting coalitions either in total or by size.
trait CountAlgebra {
    type Value: Clone;
    fn zero(&self) -> Self::Value;
    /// `z^shift (1+z)^exp`.
    fn term(&mut self, shift: usize, exp: usize) -> Self::Value;
    fn add(&self, acc: &mut Self::Value, x: &Self::Value);
    fn sub(&self, acc: &mut Self::Value, x: &Self::Value);
    /// Multiplies by `z^k`.
    fn shift(&self, x: &Self::Value, k: usize) -> Self::Value;
}

struct Totals;

impl CountAlgebra for Totals {
    type Value = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn term(&mut self, _shift: usize, exp: usize) -> BigInt {
        BigInt::one() << exp
    }

    fn add(&self, acc: &mut BigInt, x: &BigInt) {
        *acc += x;
    }

    fn sub(&self, acc: &mut BigInt, x: &BigInt) {
        *acc -= x;
    }

    fn shift(&self, x: &BigInt, _k: usize) -> BigInt {
        x.clone()
    }
}

/// Dense polynomials of degree at most `n`.
struct BySize {
    n: usize,
    rows: HashMap<usize, Rc<Vec<BigInt>>>,
}

impl BySize {
    fn new(n: usize) -> Self {
        Self {
            n,
            rows: HashMap::new(),
        }
    }

    fn binomial_row(&mut self, e: usize) -> Rc<Vec<BigInt>> {
        Rc::clone(self.rows.entry(e).or_insert_with(|| {
            let mut row = Vec::with_capacity(e + 1);
            let mut c = BigInt::one();
            row.push(c.clone());
            for i in 0..e {
                c = c * (e - i) / (i + 1);
                row.push(c.clone());
            }
            Rc::new(row)
        }))
    }
}

impl CountAlgebra for BySize {
    type Value = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.n + 1]
    }

    fn term(&mut self, shift: usize, exp: usize) -> Vec<BigInt> {
        let mut out = self.zero();
        let row = self.binomial_row(exp);
        for (i, c) in row.iter().enumerate() {
            if shift + i <= self.n {
                out[shift + i] = c.clone();
            }
        }
        out
    }

    fn add(&self, acc: &mut Vec<BigInt>, x: &Vec<BigInt>) {
        for (a, b) in acc.iter_mut().zip(x) {
            *a += b;
        }
    }

    fn sub(&self, acc: &mut Vec<BigInt>, x: &Vec<BigInt>) {
        for (a, b) in acc.iter_mut().zip(x) {
            *a -= b;
        }
    }

    fn shift(&self, x: &Vec<BigInt>, k: usize) -> Vec<BigInt> {
        let mut out = self.zero();
        if k <= self.n {
            out[k..].clone_from_slice(&x[..=self.n - k]);
        }
        out
    }
}

fn family_value<A: CountAlgebra>(f: &WcFamily, alg: &mut A) -> A::Value {
    let mut v = alg.term(f.base_size, f.free);
    if f.group > 0 {
        let rest = alg.term(f.base_size, f.free - f.group);
        alg.sub(&mut v, &rest);
    }
    v
}

/// `cum[k]` = sum of the first `k` family values.
fn cumulative<A: CountAlgebra>(families: &[WcFamily], alg: &mut A) -> Vec<A::Value> {
    let mut cum = Vec::with_capacity(families.len() + 1);
    let mut acc = alg.zero();
    cum.push(acc.clone());
    for f in families {
        let v = family_value(f, alg);
        alg.add(&mut acc, &v);
        cum.push(acc.clone());
    }
    cum
}

fn winning_polynomial<A: CountAlgebra>(s: &WcStructure, alg: &mut A) -> A::Value {
    let split = &s.split;
    let n = split.n();
    match &s.shape {
        WcShape::Intersecting => {
            let (a1, a2) = (split.m1(), split.m2());
            let both = union_size(split);
            let mut v = alg.term(a1, n - a1);
            let t = alg.term(a2, n - a2);
            alg.add(&mut v, &t);
            let t = alg.term(both, n - both);
            alg.sub(&mut v, &t);
            v
        }
        WcShape::Disjoint { one, two } => {
            let (m1, m2, m) = (split.m1(), split.m2(), split.m());
            let mut v = alg.zero();
            for f in one.iter().chain(two) {
                let t = family_value(f, alg);
                alg.add(&mut v, &t);
            }
            // Coalitions meeting both busy sets and containing one of them.
            for t in [alg.term(m1, m2 + m), alg.term(m2, m1 + m)] {
                alg.add(&mut v, &t);
            }
            for t in [alg.term(m1, m), alg.term(m2, m), alg.term(m1 + m2, m)] {
                alg.sub(&mut v, &t);
            }
            v
        }
    }
}

fn union_size(split: &BusySplit) -> usize {
    let shared = split
        .a1
        .iter()
        .filter(|j| split.a2.binary_search(j).is_ok())
        .count();
    split.m1() + split.m2() - shared
}

/// Per player: the winning coalitions in which it is swing.
fn swing_values<A: CountAlgebra>(s: &WcStructure, alg: &mut A) -> Vec<A::Value> {
    let split = &s.split;
    let n = split.n();
    let mut out = vec![alg.zero(); n];
    match &s.shape {
        WcShape::Intersecting => {
            let (a1, a2) = (split.m1(), split.m2());
            let both = union_size(split);
            let r = n - both;
            let mut shared = alg.term(a1, n - a1);
            let t = alg.term(a2, n - a2);
            alg.add(&mut shared, &t);
            let t = alg.term(both, r);
            alg.sub(&mut shared, &t);
            // Contains the own busy set but not the other one.
            let only = |alg: &mut A, own: usize, other_rest: usize| {
                let mut v = alg.term(own, r + other_rest);
                let t = alg.term(own + other_rest, r);
                alg.sub(&mut v, &t);
                v
            };
            let only_one = only(alg, a1, both - a1);
            let only_two = only(alg, a2, both - a2);
            for &j in &split.a1 {
                out[j] = if split.a2.binary_search(&j).is_ok() {
                    shared.clone()
                } else {
                    only_one.clone()
                };
            }
            for &j in &split.a2 {
                if split.a1.binary_search(&j).is_err() {
                    out[j] = only_two.clone();
                }
            }
        }
        WcShape::Disjoint { one, two } => {
            let cum_one = cumulative(one, alg);
            let cum_two = cumulative(two, alg);
            for (side, families, cum, other_cum) in [
                (Side::One, one, &cum_one, &cum_two),
                (Side::Two, two, &cum_two, &cum_one),
            ] {
                let v = split.view(side);
                let own_m = v.own_busy().len();
                let other_m = v.other_busy().len();
                let m = split.m();

                // Own busy players: every one-sided coalition of this side,
                // plus the two-sided ones where removing them loses.
                let mut busy = cum[families.len()].clone();
                let t = alg.term(own_m, other_m + m);
                alg.add(&mut busy, &t);
                let t = alg.term(own_m, m);
                alg.sub(&mut busy, &t);
                let t = alg.term(own_m + other_m, m);
                alg.sub(&mut busy, &t);
                let t = alg.term(1 + other_m, m);
                alg.add(&mut busy, &t);
                let t = alg.shift(&other_cum[other_cum.len() - 1], 1);
                alg.sub(&mut busy, &t);
                for &j in v.own_busy() {
                    alg.add(&mut out[j], &busy);
                }

                let offset = v.offset();
                for &j in &split.idle {
                    // Families whose forced prefix contains j.
                    let inside = families
                        .partition_point(|f| f.cross_max as i64 + offset <= v.own(j) as i64);
                    alg.add(&mut out[j], &cum[inside]);
                    // Families where j is the only member supplying the
                    // cross maximum.
                    let h = v.cross(j);
                    let idx = families.partition_point(|f| f.cross_max < h);
                    if let Some(f) = families
                        .get(idx)
                        .filter(|f| f.cross_max == h && f.group > 0)
                    {
                        let mut t = alg.term(1 + f.base_size, f.free - f.group);
                        let below = alg.shift(&cum[idx], 1);
                        alg.sub(&mut t, &below);
                        alg.add(&mut out[j], &t);
                    }
                }
            }
        }
    }
    out
}

fn non_negative(x: &BigInt) -> Result<BigUint> {
    if x.is_negative() {
        return Err(Error::Internal(format!("negative coalition count {x}")));
    }
    Ok(x.to_biguint().expect("checked sign"))
}

/// Banzhaf values: swing counts over `2^(n-1)`.
pub fn bz2(game: &Game, structure: &WcStructure) -> Result<PowerProfile> {
    check_split(game, &structure.split)?;
    let n = game.n();
    let values = swing_values(structure, &mut Totals)
        .iter()
        .map(|c| Ok(banzhaf_from_count(&non_negative(c)?, n)))
        .collect::<Result<_>>()?;
    Ok(PowerProfile::new(IndexKind::Bz, values))
}

/// Shapley-Shubik values from swing counts resolved by coalition size.
pub fn ss2(game: &Game, structure: &WcStructure) -> Result<PowerProfile> {
    check_split(game, &structure.split)?;
    let n = game.n();
    let fact = factorials(n);
    let values = swing_values(structure, &mut BySize::new(n))
        .iter()
        .map(|poly| {
            let hist = poly.iter().map(non_negative).collect::<Result<Vec<_>>>()?;
            Ok(shapley_from_histogram(&hist, n, &fact))
        })
        .collect::<Result<_>>()?;
    Ok(PowerProfile::new(IndexKind::Ss, values))
}

/// Number of winning coalitions of each size.
pub fn wc_by_size(structure: &WcStructure) -> Result<Vec<BigUint>> {
    let n = structure.split.n();
    winning_polynomial(structure, &mut BySize::new(n))
        .iter()
        .map(non_negative)
        .collect()
}

/// Swing counts (numerators of the Banzhaf values).
pub fn swing_counts(structure: &WcStructure) -> Result<Vec<BigUint>> {
    swing_values(structure, &mut Totals)
        .iter()
        .map(non_negative)
        .collect()
}

/// Any index of a two-dimensional game through the fast path.
pub fn fast_index(game: &Game, kind: IndexKind) -> Result<PowerProfile> {
    match kind {
        IndexKind::Hp => hp2(game, &compute_mwc2(game)?),
        IndexKind::Dp => dp2(game, &compute_mwc2(game)?),
        IndexKind::Bz => bz2(game, &wc_structure(game, &split_busy(game)?)?),
        IndexKind::Ss => ss2(game, &wc_structure(game, &split_busy(game)?)?),
    }
}

/// Convenience for callers that want a number, e.g. for display.
pub fn wc_count_u64(structure: &WcStructure) -> Option<u64> {
    structure.wc_count().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::ratio;

    fn game(w: &[[u32; 2]]) -> Game {
        Game::new(w.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    fn g4() -> Game {
        game(&[[10, 2], [2, 10], [1, 3], [2, 4]])
    }

    #[test]
    fn two_player_banzhaf() {
        let g = game(&[[10, 0], [0, 9]]);
        let bz = fast_index(&g, IndexKind::Bz).unwrap();
        assert_eq!(bz.values, vec![int(1), int(0)]);
    }

    #[test]
    fn single_player_indices() {
        let g = game(&[[2, 3]]);
        for kind in IndexKind::ALL {
            assert_eq!(fast_index(&g, kind).unwrap().values, vec![int(1)], "{kind}");
        }
    }

    #[test]
    fn two_busy_players_and_one_opponent() {
        // p1 is swing only in {p1, p3}... and {p1,p2,p3} is not a swing for
        // it, so its Banzhaf count is 1.
        let g = game(&[[2, 0], [2, 0], [0, 2]]);
        let s = wc_structure(&g, &split_busy(&g).unwrap()).unwrap();
        assert_eq!(swing_counts(&s).unwrap()[0], BigUint::from(1u32));
    }

    #[test]
    fn four_player_game_values() {
        let g = g4();
        let hp = fast_index(&g, IndexKind::Hp).unwrap();
        let dp = fast_index(&g, IndexKind::Dp).unwrap();
        let bz = fast_index(&g, IndexKind::Bz).unwrap();
        let ss = fast_index(&g, IndexKind::Ss).unwrap();
        for j in [2, 3] {
            assert_eq!(hp.values[j], int(1));
            assert_eq!(dp.values[j], ratio(1, 2));
            assert_eq!(bz.values[j], ratio(1, 8));
            assert_eq!(ss.values[j], ratio(1, 12));
        }
    }

    #[test]
    fn stale_collection_is_rejected() {
        let mwc = compute_mwc2(&g4()).unwrap();
        let other = game(&[[1, 0], [0, 1]]);
        assert!(matches!(hp2(&other, &mwc), Err(Error::Consistency(_))));
    }
}
