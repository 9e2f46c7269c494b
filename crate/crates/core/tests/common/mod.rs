#![allow(dead_code)]

pub mod counterexamples;

use cwmmg::Game;
use proptest::prelude::*;

/// Random games with `1..=max_n` players and coordinates in `0..=max_w`.
pub fn games(max_n: usize, k: usize, max_w: u32) -> impl Strategy<Value = Game> {
    prop::collection::vec(prop::collection::vec(0..=max_w, k), 1..=max_n)
        .prop_filter_map("all-zero", |ws| Game::new(ws).ok())
}

pub fn games2(max_n: usize, max_w: u32) -> impl Strategy<Value = Game> {
    games(max_n, 2, max_w)
}
