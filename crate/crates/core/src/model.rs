//! Players, games, coalitions and the winning/swing/busy predicates.
//!
//! A coalition's characteristic vector is the componentwise maximum of its
//! members' weight vectors; its competitive power is the sum of that vector.
//! A coalition wins when its power strictly exceeds the power of its
//! complement. Ties lose.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Player weights are bounded to 32 bits at ingestion; all sums use `u64`.
pub type Weight = u32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerVector {
    /// Display name. Metadata only: identity is the dense index.
    pub name: Option<String>,
    pub w: Vec<Weight>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    players: Vec<PlayerVector>,
    k: usize,
}

impl Game {
    /// Builds a game from raw weight vectors.
    pub fn new(weights: Vec<Vec<Weight>>) -> Result<Self> {
        Self::from_players(
            weights
                .into_iter()
                .map(|w| PlayerVector { name: None, w })
                .collect(),
        )
    }

    pub fn from_players(players: Vec<PlayerVector>) -> Result<Self> {
        let first = players
            .first()
            .ok_or_else(|| Error::InvalidGame("a game needs at least one player".into()))?;
        let k = first.w.len();
        if k == 0 {
            return Err(Error::InvalidGame("dimension k must be at least 1".into()));
        }
        for (j, p) in players.iter().enumerate() {
            if p.w.len() != k {
                return Err(Error::InvalidGame(format!(
                    "player {j} has {} coordinates, expected {k}",
                    p.w.len()
                )));
            }
        }
        if players.iter().all(|p| p.w.iter().all(|&x| x == 0)) {
            return Err(Error::InvalidGame(
                "all weights are zero, so the grand coalition cannot win".into(),
            ));
        }
        Ok(Self { players, k })
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn players(&self) -> &[PlayerVector] {
        &self.players
    }

    pub fn weights(&self, j: usize) -> &[Weight] {
        &self.players[j].w
    }

    pub fn weight(&self, j: usize, dim: usize) -> Weight {
        self.players[j].w[dim]
    }

    pub fn display_name(&self, j: usize) -> String {
        match &self.players[j].name {
            Some(name) => name.clone(),
            None => format!("p{}", j + 1),
        }
    }

    /// Competitive power of an arbitrary set of player ids.
    pub fn power_of<I>(&self, members: I) -> u64
    where
        I: IntoIterator<Item = usize>,
    {
        let mut qvec = vec![0 as Weight; self.k];
        for j in members {
            for (q, &x) in qvec.iter_mut().zip(&self.players[j].w) {
                *q = (*q).max(x);
            }
        }
        qvec.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::from_sorted_unchecked((0..self.n()).collect())
    }

    fn check(&self, c: &Coalition) -> Result<()> {
        match c.members.last() {
            Some(&last) if last >= self.n() => Err(Error::MalformedCoalition {
                player: last,
                n: self.n(),
            }),
            _ => Ok(()),
        }
    }

    /// Power of `c` and of its complement.
    fn split_power(&self, c: &Coalition) -> (u64, u64) {
        let inside = c.membership(self.n());
        let q_in = self.power_of(c.iter());
        let q_out = self.power_of((0..self.n()).filter(|&j| !inside[j]));
        (q_in, q_out)
    }

    pub fn coalition_profile(&self, c: &Coalition) -> Result<CoalitionProfile> {
        self.check(c)?;
        let mut qvec = vec![0 as Weight; self.k];
        for j in c.iter() {
            for (q, &x) in qvec.iter_mut().zip(&self.players[j].w) {
                *q = (*q).max(x);
            }
        }
        let busy_per_dim: Vec<Vec<usize>> = (0..self.k)
            .map(|d| {
                c.iter()
                    .filter(|&j| self.players[j].w[d] == qvec[d])
                    .collect()
            })
            .collect();
        let mut busy: Vec<usize> = busy_per_dim.iter().flatten().copied().collect();
        busy.sort_unstable();
        busy.dedup();
        Ok(CoalitionProfile {
            qsum: qvec.iter().map(|&x| u64::from(x)).sum(),
            qvec,
            busy_per_dim,
            busy,
        })
    }

    pub fn is_winning(&self, c: &Coalition) -> Result<bool> {
        self.check(c)?;
        let (q_in, q_out) = self.split_power(c);
        Ok(q_in > q_out)
    }

    /// Whether `j` is pivotal in the winning coalition `c`.
    pub fn is_swing(&self, c: &Coalition, j: usize) -> Result<bool> {
        self.check(c)?;
        if !c.contains(j) {
            return Err(Error::Precondition(format!(
                "player {j} is not a member of {c}"
            )));
        }
        if !self.is_winning(c)? {
            return Err(Error::Precondition(format!("{c} is not winning")));
        }
        Ok(!self.is_winning(&c.without(j))?)
    }

    /// Winning, and every single-player removal loses. Single removals
    /// suffice because the game is monotone.
    pub fn is_mwc(&self, c: &Coalition) -> Result<bool> {
        if !self.is_winning(c)? {
            return Ok(false);
        }
        for j in c.iter() {
            if self.is_winning(&c.without(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The block with strictly greatest power, if there is one.
    pub fn winner_of<'a>(&self, pi: &'a PartitionStructure) -> Result<Option<&'a Coalition>> {
        pi.validate(self.n())?;
        let mut best: Option<(&Coalition, u64)> = None;
        let mut tied = false;
        for block in &pi.blocks {
            let q = self.power_of(block.iter());
            match best {
                Some((_, bq)) if q < bq => {}
                Some((_, bq)) if q == bq => tied = true,
                _ => {
                    best = Some((block, q));
                    tied = false;
                }
            }
        }
        Ok(match best {
            Some((block, q)) if !tied && q > 0 => Some(block),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionProfile {
    /// Componentwise maxima.
    pub qvec: Vec<Weight>,
    pub qsum: u64,
    /// Members attaining the maximum in each dimension.
    pub busy_per_dim: Vec<Vec<usize>>,
    pub busy: Vec<usize>,
}

/// A set of player ids, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coalition {
    members: Vec<usize>,
}

impl Coalition {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn from_mask(mask: u64) -> Self {
        Self::from_sorted_unchecked((0..64).filter(|&j| mask >> j & 1 == 1).collect())
    }

    /// Bitmask form; only meaningful for ids below 64.
    pub fn to_mask(&self) -> u64 {
        self.members.iter().fold(0, |acc, &j| acc | 1 << j)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.binary_search(&j).is_ok()
    }

    pub fn without(&self, j: usize) -> Self {
        Self::from_sorted_unchecked(self.iter().filter(|&x| x != j).collect())
    }

    pub fn with(&self, j: usize) -> Self {
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search(&j) {
            members.insert(pos, j);
        }
        Self { members }
    }

    pub fn complement(&self, n: usize) -> Self {
        let inside = self.membership(n);
        Self::from_sorted_unchecked((0..n).filter(|&j| !inside[j]).collect())
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.iter().all(|j| other.contains(j))
    }

    pub(crate) fn membership(&self, n: usize) -> Vec<bool> {
        let mut inside = vec![false; n];
        for j in self.iter() {
            inside[j] = true;
        }
        inside
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, j) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "p{}", j + 1)?;
        }
        write!(f, "}}")
    }
}

/// A partition of the player set into nonempty disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionStructure {
    blocks: Vec<Coalition>,
}

impl PartitionStructure {
    /// Validates against `n` and stores blocks in canonical order (sorted
    /// by smallest member).
    pub fn new(mut blocks: Vec<Coalition>, n: usize) -> Result<Self> {
        blocks.sort();
        let pi = Self { blocks };
        pi.validate(n)?;
        Ok(pi)
    }

    pub(crate) fn from_masks(masks: &[u64]) -> Self {
        let mut blocks: Vec<Coalition> = masks.iter().map(|&m| Coalition::from_mask(m)).collect();
        blocks.sort();
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn contains_block(&self, c: &Coalition) -> bool {
        self.blocks.iter().any(|b| b == c)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for block in &self.blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for j in block.iter() {
                if j >= n {
                    return Err(Error::InvalidPartition(format!(
                        "player {j} out of range for n = {n}"
                    )));
                }
                if std::mem::replace(&mut seen[j], true) {
                    return Err(Error::InvalidPartition(format!(
                        "player {j} appears in two blocks"
                    )));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!(
                "player {missing} is not covered"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PartitionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}
