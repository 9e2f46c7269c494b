//! Exponential ground truth for any dimension.
//!
//! Everything here enumerates all `2^n` coalitions as bitmasks and applies
//! the definitions directly. The fast 2-D code is tested against it.

mod cstable;

pub use cstable::{cstable_structures_oracle, CStableOracle};

use num::bigint::BigUint;
use num::Zero;

use crate::error::{Error, Result};
use crate::model::{Coalition, Game};
use crate::power::{
    banzhaf_from_count, factorials, int, ratio, shapley_from_histogram, IndexKind, PowerProfile,
    Rational,
};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;
pub const DEFAULT_RECURSIVE_LIMIT: usize = 7;

const FAST_PATH_HINT: &str = "; for k = 2 use the fast method";

/// Per-player swing data: the coalitions where the player is pivotal,
/// counted by size, and the minimal winning coalitions containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwingFamily {
    pub player: usize,
    /// `wc_by_size[s]` is the number of winning coalitions of size `s`
    /// in which the player is swing.
    pub wc_by_size: Vec<u64>,
    pub mwc: Vec<Coalition>,
}

impl SwingFamily {
    pub fn wc_count(&self) -> u64 {
        self.wc_by_size.iter().sum()
    }
}

/// Power and winning flag of every coalition of a small game.
#[derive(Debug, Clone)]
pub struct Enumeration {
    n: usize,
    power: Vec<u64>,
    winning: Vec<bool>,
}

impl Enumeration {
    pub fn new(game: &Game) -> Result<Self> {
        Self::with_limit(game, DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn with_limit(game: &Game, limit: usize) -> Result<Self> {
        let n = game.n();
        if n > limit || n >= 32 {
            return Err(Error::OracleLimit {
                n,
                limit: limit.min(31),
                hint: if game.k() == 2 { FAST_PATH_HINT } else { "" },
            });
        }
        let size = 1usize << n;
        let mut power = vec![0u64; size];
        let mut best = vec![0u32; size];
        for d in 0..game.k() {
            for mask in 1..size {
                let low = mask.trailing_zeros() as usize;
                best[mask] = best[mask & (mask - 1)].max(game.weight(low, d));
                power[mask] += u64::from(best[mask]);
            }
        }
        let full = size - 1;
        let winning = (0..size).map(|m| power[m] > power[full ^ m]).collect();
        Ok(Self { n, power, winning })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> usize {
        (1usize << self.n) - 1
    }

    pub fn power(&self, mask: usize) -> u64 {
        self.power[mask]
    }

    pub fn is_winning(&self, mask: usize) -> bool {
        self.winning[mask]
    }

    pub fn winning_count(&self) -> u64 {
        self.winning.iter().filter(|&&w| w).count() as u64
    }

    pub fn winning_masks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.winning.len()).filter(|&m| self.winning[m])
    }

    pub fn is_mwc(&self, mask: usize) -> bool {
        self.winning[mask] && members(mask).all(|j| !self.winning[mask & !(1 << j)])
    }

    /// Minimal winning coalitions in canonical (sorted member tuple) order.
    pub fn mwc(&self) -> Vec<Coalition> {
        let mut out: Vec<Coalition> = (0..self.winning.len())
            .filter(|&m| self.is_mwc(m))
            .map(|m| Coalition::from_mask(m as u64))
            .collect();
        out.sort();
        out
    }

    /// `hist[j][s]`: winning coalitions of size `s` in which `j` is swing.
    pub fn swing_histograms(&self) -> Vec<Vec<u64>> {
        let mut hist = vec![vec![0u64; self.n + 1]; self.n];
        for mask in self.winning_masks() {
            let size = mask.count_ones() as usize;
            for j in members(mask) {
                if !self.winning[mask & !(1 << j)] {
                    hist[j][size] += 1;
                }
            }
        }
        hist
    }

    pub fn swing_family(&self, j: usize) -> Result<SwingFamily> {
        if j >= self.n {
            return Err(Error::MalformedCoalition {
                player: j,
                n: self.n,
            });
        }
        let mut wc_by_size = vec![0u64; self.n + 1];
        for mask in self.winning_masks() {
            if mask >> j & 1 == 1 && !self.winning[mask & !(1 << j)] {
                wc_by_size[mask.count_ones() as usize] += 1;
            }
        }
        let mwc = self.mwc().into_iter().filter(|c| c.contains(j)).collect();
        Ok(SwingFamily {
            player: j,
            wc_by_size,
            mwc,
        })
    }

    pub fn index(&self, kind: IndexKind) -> PowerProfile {
        let n = self.n;
        let values = match kind {
            IndexKind::Ss => {
                let fact = factorials(n);
                self.swing_histograms()
                    .iter()
                    .map(|h| {
                        let h: Vec<BigUint> = h.iter().map(|&c| BigUint::from(c)).collect();
                        shapley_from_histogram(&h, n, &fact)
                    })
                    .collect()
            }
            IndexKind::Bz => self
                .swing_histograms()
                .iter()
                .map(|h| banzhaf_from_count(&BigUint::from(h.iter().sum::<u64>()), n))
                .collect(),
            IndexKind::Hp | IndexKind::Dp => {
                let mut values = vec![Rational::zero(); n];
                for c in self.mwc() {
                    let share = match kind {
                        IndexKind::Hp => int(1),
                        _ => ratio(1, c.len() as u64),
                    };
                    for j in c.iter() {
                        values[j] += &share;
                    }
                }
                values
            }
        };
        PowerProfile::new(kind, values)
    }
}

pub(crate) fn members(mask: usize) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(j)
        }
    })
}

pub fn enumerate_mwc(game: &Game) -> Result<Vec<Coalition>> {
    Ok(Enumeration::new(game)?.mwc())
}

pub fn swing_family(game: &Game, j: usize) -> Result<SwingFamily> {
    Enumeration::new(game)?.swing_family(j)
}

pub fn index_oracle(game: &Game, kind: IndexKind) -> Result<PowerProfile> {
    Ok(Enumeration::new(game)?.index(kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(ids: &[usize]) -> Coalition {
        Coalition::new(ids.iter().copied())
    }

    #[test]
    fn mwc_of_three_player_game() {
        let g = Game::new(vec![vec![1, 1], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(enumerate_mwc(&g).unwrap(), vec![c(&[0, 1]), c(&[0, 2])]);
    }

    #[test]
    fn mwc_of_six_player_symmetric_game() {
        let g = Game::new(vec![
            vec![1, 0],
            vec![1, 0],
            vec![1, 0],
            vec![0, 1],
            vec![0, 1],
            vec![0, 1],
        ])
        .unwrap();
        let mwc = enumerate_mwc(&g).unwrap();
        let mut expected = Vec::new();
        for x in 3..6 {
            expected.push(c(&[0, 1, 2, x]));
        }
        for x in 0..3 {
            expected.push(c(&[x, 3, 4, 5]));
        }
        expected.sort();
        assert_eq!(mwc, expected);
    }

    #[test]
    fn swing_family_single_player() {
        let g = Game::new(vec![vec![1, 0]]).unwrap();
        let f = swing_family(&g, 0).unwrap();
        assert_eq!(f.wc_by_size, vec![0, 1]);
        assert_eq!(f.mwc, vec![c(&[0])]);
    }

    #[test]
    fn limit_is_enforced() {
        let g = Game::new(vec![vec![1, 1]; 21]).unwrap();
        let err = enumerate_mwc(&g).unwrap_err();
        assert!(matches!(
            err,
            Error::OracleLimit {
                n: 21,
                limit: 20,
                ..
            }
        ));
        assert!(err.to_string().contains("fast method"));
        assert!(Enumeration::with_limit(&g, 21).is_ok());
    }

    #[test]
    fn members_iterates_bits() {
        assert_eq!(members(0b10110).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(members(0).count(), 0);
    }
}
