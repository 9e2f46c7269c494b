//! Recursive C-stability checker over the space of partitions.
//!
//! A partition of the free players `S` is stable with respect to the fixed
//! outside blocks when `|S| <= 1`, or when no nonempty `C ⊆ S` blocks it.
//! `C` blocks when every member of `C` is strictly better off in every
//! structure `π1 ∪ {C} ∪ outside`, where `π1` ranges over the stable
//! partitions of `S \ C` (with `C` joining the outside), or over all
//! partitions of `S \ C` when none of them is stable.
//!
//! A whole-game partition is C-stable when it is stable with `S = N` and
//! it contains a winning coalition.

use std::collections::HashMap;
use std::rc::Rc;

use num::{Signed, Zero};

use super::{members, Enumeration, DEFAULT_RECURSIVE_LIMIT};
use crate::error::{Error, Result};
use crate::model::{Game, PartitionStructure};
use crate::power::{IndexKind, PowerProfile, Rational};

type Partition = Vec<usize>;
type PartitionSet = Rc<Vec<Partition>>;

/// Stateful checker; keeps the memo table between queries.
pub struct CStableOracle {
    table: Enumeration,
    theta: Vec<Rational>,
    theta_sum: Vec<Rational>,
    memoize: bool,
    /// Keyed on the free set and the sorted powers of the outside blocks;
    /// winners and payoffs of free players depend on nothing else.
    memo: HashMap<(usize, Vec<u64>), PartitionSet>,
    partitions: HashMap<usize, PartitionSet>,
}

impl CStableOracle {
    pub fn new(game: &Game, powers: &PowerProfile) -> Result<Self> {
        Self::with_limit(game, powers, DEFAULT_RECURSIVE_LIMIT)
    }

    pub fn with_limit(game: &Game, powers: &PowerProfile, limit: usize) -> Result<Self> {
        if game.n() > limit {
            return Err(Error::OracleLimit {
                n: game.n(),
                limit,
                hint: "",
            });
        }
        if powers.len() != game.n() {
            return Err(Error::Consistency(format!(
                "power profile has {} entries for {} players",
                powers.len(),
                game.n()
            )));
        }
        let table = Enumeration::with_limit(game, limit)?;
        let theta = powers.values.clone();
        let theta_sum = (0..=table.full())
            .map(|m| members(m).fold(Rational::zero(), |acc, j| acc + &theta[j]))
            .collect();
        Ok(Self {
            table,
            theta,
            theta_sum,
            memoize: true,
            memo: HashMap::new(),
            partitions: HashMap::new(),
        })
    }

    /// Disables memoization; used to cross-check the memo key.
    pub fn without_memo(mut self) -> Self {
        self.memoize = false;
        self
    }

    /// All C-stable partitions of the full player set, canonical order.
    pub fn stable_structures(&mut self) -> Vec<PartitionStructure> {
        let full = self.table.full();
        let stable = self.stable_set(full, &[]);
        let mut out: Vec<PartitionStructure> = stable
            .iter()
            .filter(|pi| pi.iter().any(|&b| self.table.is_winning(b)))
            .map(|pi| PartitionStructure::from_masks(&to_u64(pi)))
            .collect();
        out.sort();
        out
    }

    /// Strict winner of `inner ∪ outside`, if it is one of the inner blocks.
    fn inner_winner(&self, inner: impl Iterator<Item = usize>, outside: &[u64]) -> Option<usize> {
        let mut best_q = outside.iter().copied().max();
        let mut best_mask = None;
        let mut tied =
            outside.len() >= 2 && outside[outside.len() - 1] == outside[outside.len() - 2];
        for b in inner {
            let q = self.table.power(b);
            match best_q {
                Some(bq) if q < bq => {}
                Some(bq) if q == bq => tied = true,
                _ => {
                    best_q = Some(q);
                    best_mask = Some(b);
                    tied = false;
                }
            }
        }
        match (best_mask, best_q) {
            (Some(m), Some(q)) if !tied && q > 0 => Some(m),
            _ => None,
        }
    }

    /// Proportional payoff; zero when there is no winner, the player is not
    /// in it, or the winner's total power is zero.
    fn payoff(&self, j: usize, winner: Option<usize>) -> Rational {
        match winner {
            Some(w) if w >> j & 1 == 1 && self.theta_sum[w].is_positive() => {
                &self.theta[j] / &self.theta_sum[w]
            }
            _ => Rational::zero(),
        }
    }

    fn all_partitions(&mut self, s: usize) -> PartitionSet {
        if let Some(p) = self.partitions.get(&s) {
            return Rc::clone(p);
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        partitions_into(s, &mut current, &mut out);
        let out = Rc::new(out);
        self.partitions.insert(s, Rc::clone(&out));
        out
    }

    fn stable_set(&mut self, s: usize, outside: &[u64]) -> PartitionSet {
        let key = (s, outside.to_vec());
        if self.memoize {
            if let Some(hit) = self.memo.get(&key) {
                return Rc::clone(hit);
            }
        }
        let parts = self.all_partitions(s);
        let result = if s.count_ones() <= 1 {
            parts
        } else {
            // For every deviating C: the payoff each member is guaranteed
            // whatever stable response the remaining free players choose.
            let mut guarantees: Vec<(usize, Vec<Rational>)> = Vec::new();
            let mut c = s;
            while c != 0 {
                let rest = s & !c;
                let mut child_outside = outside.to_vec();
                child_outside.push(self.table.power(c));
                child_outside.sort_unstable();
                let mut pool = self.stable_set(rest, &child_outside);
                if pool.is_empty() {
                    pool = self.all_partitions(rest);
                }
                let guaranteed: Vec<Rational> = members(c)
                    .map(|j| {
                        pool.iter()
                            .map(|pi1| {
                                let w = self.inner_winner(
                                    pi1.iter().copied().chain(std::iter::once(c)),
                                    outside,
                                );
                                self.payoff(j, w)
                            })
                            .min()
                            .unwrap_or_else(Rational::zero)
                    })
                    .collect();
                if guaranteed.iter().all(|g| g.is_positive()) {
                    guarantees.push((c, guaranteed));
                }
                c = (c - 1) & s;
            }
            let stable: Vec<Partition> = parts
                .iter()
                .filter(|pi| {
                    let w = self.inner_winner(pi.iter().copied(), outside);
                    !guarantees.iter().any(|(c, guaranteed)| {
                        members(*c)
                            .zip(guaranteed)
                            .all(|(j, g)| *g > self.payoff(j, w))
                    })
                })
                .cloned()
                .collect();
            Rc::new(stable)
        };
        if self.memoize {
            self.memo.insert(key, Rc::clone(&result));
        }
        result
    }
}

fn to_u64(pi: &[usize]) -> Vec<u64> {
    pi.iter().map(|&b| b as u64).collect()
}

/// Appends every partition of `s` (blocks as masks, each block containing
/// the lowest remaining element first) to `out`.
fn partitions_into(s: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if s == 0 {
        out.push(current.clone());
        return;
    }
    let low = s & s.wrapping_neg();
    let others = s & !low;
    // Every subset of the other elements may join the lowest one.
    let mut sub = others;
    loop {
        current.push(low | sub);
        partitions_into(others & !sub, current, out);
        current.pop();
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & others;
    }
}

/// All C-stable partitions of `game` when payoffs follow the given index.
pub fn cstable_structures_oracle(game: &Game, kind: IndexKind) -> Result<Vec<PartitionStructure>> {
    if game.n() > DEFAULT_RECURSIVE_LIMIT {
        return Err(Error::OracleLimit {
            n: game.n(),
            limit: DEFAULT_RECURSIVE_LIMIT,
            hint: "",
        });
    }
    let powers = Enumeration::new(game)?.index(kind);
    Ok(CStableOracle::new(game, &powers)?.stable_structures())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Coalition;

    const BELL: [usize; 8] = [1, 1, 2, 5, 15, 52, 203, 877];

    #[test]
    fn partition_counts_are_bell_numbers() {
        for (n, &bell) in BELL.iter().enumerate() {
            let mut out = Vec::new();
            partitions_into((1 << n) - 1, &mut Vec::new(), &mut out);
            assert_eq!(out.len(), bell, "n = {n}");
            for pi in &out {
                assert_eq!(pi.iter().fold(0, |a, b| a | b), (1 << n) - 1);
                assert_eq!(pi.iter().map(|b| b.count_ones()).sum::<u32>(), n as u32);
            }
        }
    }

    fn contains_one_of(pi: &PartitionStructure, blocks: &[Coalition]) -> bool {
        blocks.iter().any(|b| pi.contains_block(b))
    }

    #[test]
    fn three_player_game_with_hp() {
        let g = Game::new(vec![vec![1, 1], vec![1, 0], vec![0, 1]]).unwrap();
        let stable = cstable_structures_oracle(&g, IndexKind::Hp).unwrap();
        let targets = [Coalition::new([0, 1]), Coalition::new([0, 2])];
        assert_eq!(stable.len(), 2);
        assert!(stable.iter().all(|pi| contains_one_of(pi, &targets)));
    }

    #[test]
    fn zero_power_player_may_join_the_stable_coalition() {
        // p3 never matters, so adding it to {p1,p2} changes no payoff.
        let g = Game::new(vec![vec![3], vec![3], vec![1]]).unwrap();
        for kind in IndexKind::ALL {
            let stable = cstable_structures_oracle(&g, kind).unwrap();
            let blocks = [Coalition::new([0, 1]), Coalition::new([0, 1, 2])];
            assert_eq!(stable.len(), 2, "{kind}");
            assert!(
                stable.iter().all(|pi| contains_one_of(pi, &blocks)),
                "{kind}"
            );
        }
    }

    #[test]
    fn recursive_limit_is_enforced() {
        let g = Game::new(vec![vec![1, 0]; 8]).unwrap();
        assert!(matches!(
            cstable_structures_oracle(&g, IndexKind::Hp),
            Err(Error::OracleLimit { n: 8, limit: 7, .. })
        ));
    }
}
