//! Instance factories: the tight family, seeded random games and the
//! checked-in fixtures.
//!
//! Random games use ChaCha8 seeded through `SeedableRng::seed_from_u64`, so
//! a seed determines the game on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gamefile::parse_game;
use crate::model::{Game, PlayerVector, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Tight {
        t: usize,
    },
    Random {
        n: usize,
        k: usize,
        max_coord: Weight,
        seed: u64,
    },
    Fixture(String),
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Game> {
        match self {
            GeneratorSpec::Tight { t } => gen_tight(*t),
            GeneratorSpec::Random {
                n,
                k,
                max_coord,
                seed,
            } => gen_random(*n, *k, *max_coord, *seed),
            GeneratorSpec::Fixture(name) => fixture(name),
        }
    }
}

/// A game with `n = 2t + 3` players and exactly `n + 1` minimal winning
/// coalitions: four heavy players `(n², 0)`, `(n², 0)`, `(0, n²)`,
/// `(0, n²)`, left players `(j, 0)` and right players `(0, j)` for
/// `j = t, ..., 2`, and one player `(1, 1)`.
pub fn gen_tight(t: usize) -> Result<Game> {
    if t < 2 {
        return Err(Error::Parameter(format!(
            "tight family needs t >= 2, got {t}"
        )));
    }
    let n = 2 * t + 3;
    let heavy = Weight::try_from(n * n)
        .map_err(|_| Error::Parameter(format!("t = {t} overflows the weight range")))?;
    let mut players = Vec::with_capacity(n);
    let mut push = |name: String, w: [Weight; 2]| {
        players.push(PlayerVector {
            name: Some(name),
            w: w.to_vec(),
        })
    };
    push("h1".into(), [heavy, 0]);
    push("h2".into(), [heavy, 0]);
    push("h3".into(), [0, heavy]);
    push("h4".into(), [0, heavy]);
    for j in (2..=t).rev() {
        push(format!("x{j}"), [j as Weight, 0]);
    }
    for j in (2..=t).rev() {
        push(format!("y{j}"), [0, j as Weight]);
    }
    push("z".into(), [1, 1]);
    Game::from_players(players)
}

/// `n` players with coordinates drawn uniformly from `0..=max_coord`.
/// All-zero draws are discarded and redrawn.
pub fn gen_random(n: usize, k: usize, max_coord: Weight, seed: u64) -> Result<Game> {
    if n == 0 || k == 0 || max_coord == 0 {
        return Err(Error::Parameter(format!(
            "random games need n, k, max >= 1 (got n = {n}, k = {k}, max = {max_coord})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let weights: Vec<Vec<Weight>> = (0..n)
            .map(|_| (0..k).map(|_| rng.gen_range(0..=max_coord)).collect())
            .collect();
        if weights.iter().flatten().any(|&x| x > 0) {
            return Game::new(weights);
        }
    }
}

/// Checked-in fixtures by name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("g1", include_str!("../fixtures/g1.json")),
    ("g2", include_str!("../fixtures/g2.json")),
    ("g3", include_str!("../fixtures/g3.json")),
    ("g4", include_str!("../fixtures/g4.json")),
    ("g5", include_str!("../fixtures/g5.json")),
    ("g6", include_str!("../fixtures/g6.json")),
    (
        "two_player_w10",
        include_str!("../fixtures/two_player_w10.json"),
    ),
    ("one_dim", include_str!("../fixtures/one_dim.json")),
    (
        "busy_set_supplies_cross_max",
        include_str!("../fixtures/busy_set_supplies_cross_max.json"),
    ),
    (
        "both_busy_sets_partial",
        include_str!("../fixtures/both_busy_sets_partial.json"),
    ),
    (
        "duplicated_busy_player",
        include_str!("../fixtures/duplicated_busy_player.json"),
    ),
    (
        "nested_busy_sets",
        include_str!("../fixtures/nested_busy_sets.json"),
    ),
    (
        "single_busy_players_both_lose",
        include_str!("../fixtures/single_busy_players_both_lose.json"),
    ),
    (
        "tied_idle_players",
        include_str!("../fixtures/tied_idle_players.json"),
    ),
];

pub fn fixture(name: &str) -> Result<Game> {
    let key = name.to_ascii_lowercase().replace('-', "_");
    FIXTURES
        .iter()
        .find(|(n, _)| *n == key)
        .map(|(_, text)| parse_game(text))
        .unwrap_or_else(|| Err(Error::Parameter(format!("unknown fixture `{name}`"))))
}

/// The two-player family `(w, 0)`, `(0, w - 1)`.
pub fn two_player(w: Weight) -> Result<Game> {
    if w < 2 {
        return Err(Error::Parameter(format!(
            "two-player family needs w >= 2, got {w}"
        )));
    }
    Game::new(vec![vec![w, 0], vec![0, w - 1]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_t2() {
        let g = gen_tight(2).unwrap();
        let w: Vec<Vec<Weight>> = (0..g.n()).map(|j| g.weights(j).to_vec()).collect();
        assert_eq!(
            w,
            vec![
                vec![49, 0],
                vec![49, 0],
                vec![0, 49],
                vec![0, 49],
                vec![2, 0],
                vec![0, 2],
                vec![1, 1]
            ]
        );
        assert!(gen_tight(1).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(
            gen_random(5, 2, 8, 42).unwrap(),
            gen_random(5, 2, 8, 42).unwrap()
        );
        assert_ne!(
            gen_random(5, 2, 8, 42).unwrap(),
            gen_random(5, 2, 8, 43).unwrap()
        );
        let g = gen_random(1, 1, 1, 0).unwrap();
        assert_eq!(g.weights(0), &[1]);
        assert!(gen_random(0, 2, 8, 0).is_err());
    }

    #[test]
    fn fixtures_parse() {
        for (name, _) in FIXTURES {
            fixture(name).unwrap();
        }
        assert_eq!(fixture("G4").unwrap().n(), 4);
        assert!(fixture("nope").is_err());
    }
}
