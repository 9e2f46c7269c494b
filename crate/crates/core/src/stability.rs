//! C-stable coalitions, proportional allocation, and winner quality.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{Coalition, Game, PartitionStructure};
use crate::power::{IndexKind, PowerProfile, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub kind: IndexKind,
    /// Smallest power sum over the minimal winning coalitions.
    pub min_theta: Rational,
    /// Every minimal winning coalition attaining `min_theta`, sorted.
    pub stable_coalitions: Vec<Coalition>,
    /// `q(C)/q(N)` for the first stable coalition.
    pub winner_ratio: Rational,
    /// Payoffs in the structure `{C, N \ C}` for the first stable coalition.
    pub allocation: Vec<Rational>,
}

impl StabilityReport {
    pub fn representative(&self) -> &Coalition {
        &self.stable_coalitions[0]
    }
}

pub fn cstable_coalitions(
    game: &Game,
    mwc: &[Coalition],
    powers: &PowerProfile,
) -> Result<StabilityReport> {
    if powers.len() != game.n() {
        return Err(Error::Consistency(format!(
            "power profile has {} entries for {} players",
            powers.len(),
            game.n()
        )));
    }
    let mut best: Option<Rational> = None;
    let mut stable = Vec::new();
    for c in mwc {
        let theta = powers.theta(c.iter());
        match &best {
            Some(b) if theta > *b => continue,
            Some(b) if theta == *b => stable.push(c.clone()),
            _ => {
                best = Some(theta);
                stable = vec![c.clone()];
            }
        }
    }
    let min_theta = best.ok_or_else(|| Error::Internal("no minimal winning coalition".into()))?;
    stable.sort();
    let rep = &stable[0];
    let pi = split_off(game, rep)?;
    Ok(StabilityReport {
        kind: powers.kind,
        min_theta,
        winner_ratio: winner_ratio(game, rep)?,
        allocation: allocate(game, &pi, powers)?,
        stable_coalitions: stable,
    })
}

fn split_off(game: &Game, c: &Coalition) -> Result<PartitionStructure> {
    let rest = c.complement(game.n());
    let blocks = if rest.is_empty() {
        vec![c.clone()]
    } else {
        vec![c.clone(), rest]
    };
    PartitionStructure::new(blocks, game.n())
}

/// Winners split the prize in proportion to their power; everyone else gets
/// nothing. Without a winner nobody gets anything.
pub fn allocate(
    game: &Game,
    pi: &PartitionStructure,
    powers: &PowerProfile,
) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); game.n()];
    if let Some(w) = game.winner_of(pi)? {
        let total = powers.theta(w.iter());
        if !total.is_positive() {
            return Err(Error::DegeneratePower(w.members().to_vec()));
        }
        for j in w.iter() {
            out[j] = &powers.values[j] / &total;
        }
    }
    Ok(out)
}

/// `q(C)/q(N)` for a winning coalition.
pub fn winner_ratio(game: &Game, c: &Coalition) -> Result<Rational> {
    if !game.is_winning(c)? {
        return Err(Error::Precondition(format!("{c} is not winning")));
    }
    let q = game.power_of(c.iter());
    let total = game.power_of(0..game.n());
    Ok(Rational::new(q.into(), total.into()))
}

/// Every partition of the players that has one of `blocks` as a block, in
/// canonical order. Exponential; meant for small games.
pub fn partitions_containing(n: usize, blocks: &[Coalition]) -> Result<Vec<PartitionStructure>> {
    let mut out = Vec::new();
    for b in blocks {
        let rest = b.complement(n);
        for mut pi in set_partitions(rest.members()) {
            pi.push(b.clone());
            out.push(PartitionStructure::new(pi, n)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn set_partitions(items: &[usize]) -> Vec<Vec<Coalition>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for pi in set_partitions(rest) {
        for i in 0..pi.len() {
            let mut next = pi.clone();
            next[i] = next[i].with(first);
            out.push(next);
        }
        let mut next = pi;
        next.push(Coalition::new([first]));
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Enumeration;
    use crate::power::{int, ratio};

    fn g2() -> Game {
        Game::new(vec![vec![1, 1], vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn one_dimensional_game_keeps_the_heaviest_players() {
        let g = Game::new(vec![vec![3], vec![3], vec![1]]).unwrap();
        let e = Enumeration::new(&g).unwrap();
        for kind in IndexKind::ALL {
            let r = cstable_coalitions(&g, &e.mwc(), &e.index(kind)).unwrap();
            assert_eq!(r.stable_coalitions, vec![Coalition::new([0, 1])]);
            assert_eq!(r.winner_ratio, int(1));
        }
    }

    #[test]
    fn holler_packel_ties_return_both() {
        let g = g2();
        let e = Enumeration::new(&g).unwrap();
        let r = cstable_coalitions(&g, &e.mwc(), &e.index(IndexKind::Hp)).unwrap();
        assert_eq!(r.min_theta, int(3));
        assert_eq!(
            r.stable_coalitions,
            vec![Coalition::new([0, 1]), Coalition::new([0, 2])]
        );
        assert_eq!(r.allocation, vec![ratio(2, 3), ratio(1, 3), int(0)]);
    }

    #[test]
    fn allocation_conventions() {
        let g = g2();
        let hp = PowerProfile::new(IndexKind::Hp, vec![int(2), int(1), int(1)]);
        let tied =
            PartitionStructure::new(vec![Coalition::new([0]), Coalition::new([1, 2])], 3).unwrap();
        assert_eq!(allocate(&g, &tied, &hp).unwrap(), vec![int(0); 3]);
        let zero = PowerProfile::new(IndexKind::Hp, vec![int(0); 3]);
        let pi =
            PartitionStructure::new(vec![Coalition::new([0, 1]), Coalition::new([2])], 3).unwrap();
        assert!(matches!(
            allocate(&g, &pi, &zero),
            Err(Error::DegeneratePower(_))
        ));
        let uniform = PowerProfile::new(IndexKind::Hp, vec![int(1); 3]);
        assert_eq!(
            allocate(&g, &pi, &uniform).unwrap(),
            vec![ratio(1, 2), ratio(1, 2), int(0)]
        );
    }

    #[test]
    fn two_player_winner_ratio() {
        let g = Game::new(vec![vec![10, 0], vec![0, 9]]).unwrap();
        assert_eq!(
            winner_ratio(&g, &Coalition::new([0])).unwrap(),
            ratio(10, 19)
        );
        assert!(winner_ratio(&g, &Coalition::new([1])).is_err());
    }

    #[test]
    fn partitions_with_a_fixed_block() {
        let ps = partitions_containing(4, &[Coalition::new([0, 1])]).unwrap();
        assert_eq!(ps.len(), 2);
        let ps = partitions_containing(5, &[Coalition::new([0]), Coalition::new([1])]).unwrap();
        // 15 + 15 - 5 shared
        assert_eq!(ps.len(), 25);
    }
}
