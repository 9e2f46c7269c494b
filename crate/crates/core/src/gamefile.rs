//! JSON game files: `{"k": 2, "players": [{"id": "p1", "w": [3, 3]}, ...]}`.

use serde::{Deserialize, Serialize};
use serde_json::Number;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{Game, PlayerVector, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub k: usize,
    pub players: Vec<PlayerEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub w: Vec<u64>,
}

/// Same shape as [`PlayerEntry`] but keeps raw numbers so that negative or
/// fractional weights get a precise diagnostic.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    k: usize,
    players: Vec<RawPlayer>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlayer {
    #[serde(default)]
    id: Option<String>,
    w: Vec<Number>,
}

impl GameFile {
    pub fn from_game(game: &Game) -> Self {
        Self {
            k: game.k(),
            players: game
                .players()
                .iter()
                .map(|p| PlayerEntry {
                    id: p.name.clone(),
                    w: p.w.iter().map(|&x| u64::from(x)).collect(),
                })
                .collect(),
        }
    }

    /// Compact JSON with fixed field order; the basis of [`digest`].
    pub fn canonical_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("game files always serialize")
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("game files always serialize")
    }
}

fn label(index: usize, id: Option<&str>) -> String {
    match id {
        Some(id) => format!("player {index} (\"{id}\")"),
        None => format!("player {index}"),
    }
}

/// Parses and validates a game document.
pub fn parse_game(text: &str) -> Result<Game> {
    let raw: RawFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("game file: {e}")))?;
    if raw.k == 0 {
        return Err(Error::Parse("field `k` must be at least 1".into()));
    }
    if raw.players.is_empty() {
        return Err(Error::Parse("field `players` must not be empty".into()));
    }
    let mut players = Vec::with_capacity(raw.players.len());
    for (j, p) in raw.players.into_iter().enumerate() {
        let who = label(j, p.id.as_deref());
        if p.w.len() != raw.k {
            return Err(Error::Parse(format!(
                "{who}: field `w` has {} entries, expected k = {}",
                p.w.len(),
                raw.k
            )));
        }
        let w =
            p.w.iter()
                .enumerate()
                .map(|(d, x)| {
                    weight(x).map_err(|why| Error::Parse(format!("{who}: w[{d}] = {x} {why}")))
                })
                .collect::<Result<Vec<Weight>>>()?;
        players.push(PlayerVector { name: p.id, w });
    }
    Game::from_players(players)
}

fn weight(x: &Number) -> std::result::Result<Weight, &'static str> {
    if let Some(v) = x.as_u64() {
        return Weight::try_from(v).map_err(|_| "exceeds 2^32 - 1");
    }
    if x.as_i64().is_some() {
        Err("is negative")
    } else {
        Err("is not an integer")
    }
}

pub fn to_game_file(game: &Game) -> GameFile {
    GameFile::from_game(game)
}

/// Hex SHA-256 of the canonical bytes.
pub fn digest(game: &Game) -> String {
    hex::encode(Sha256::digest(GameFile::from_game(game).canonical_bytes()))
}
