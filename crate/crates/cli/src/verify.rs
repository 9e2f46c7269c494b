//! Fast path against enumeration on seeded random two-dimensional games.

use std::path::PathBuf;

use clap::Args;
use serde_json::json;

use cwmmg::gamefile::GameFile;
use cwmmg::generators::gen_random;
use cwmmg::indices2d::fast_index;
use cwmmg::mwc2d::compute_mwc2;
use cwmmg::oracle::Enumeration;
use cwmmg::{Game, IndexKind, Weight};

use crate::{Failure, Format};

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 500)]
    trials: u64,
    /// Largest number of players; trial `i` uses `1 + i % nmax` players.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=20))]
    nmax: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest coordinate. Small values force ties.
    #[arg(long, default_value_t = 8)]
    max: Weight,
    /// Where the first mismatching game is written.
    #[arg(long, default_value = "verify-repro.json")]
    repro: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

/// What differs between the two paths on one game, if anything.
fn compare(game: &Game) -> Result<Vec<String>, Failure> {
    let oracle = Enumeration::new(game)?;
    let mut diffs = Vec::new();
    if compute_mwc2(game)?.coalitions() != oracle.mwc() {
        diffs.push("mwc".to_string());
    }
    for kind in IndexKind::ALL {
        if fast_index(game, kind)? != oracle.index(kind) {
            diffs.push(kind.as_str().to_string());
        }
    }
    Ok(diffs)
}

pub fn run(args: &VerifyArgs) -> Result<(), Failure> {
    let mut mismatches = Vec::new();
    for i in 0..args.trials {
        let n = 1 + (i % args.nmax) as usize;
        let seed = args.seed.wrapping_mul(1_000_003).wrapping_add(i);
        let game = gen_random(n, 2, args.max, seed)?;
        let diffs = compare(&game)?;
        if !diffs.is_empty() {
            let bytes = GameFile::from_game(&game).canonical_bytes();
            eprintln!(
                "mismatch in trial {i} ({}): {}",
                diffs.join(", "),
                String::from_utf8_lossy(&bytes)
            );
            if mismatches.is_empty() {
                crate::write_or_print(Some(&args.repro), &GameFile::from_game(&game).to_pretty())?;
                eprintln!("reproducer written to {}", args.repro.display());
            }
            mismatches.push(json!({
                "trial": i,
                "differs": diffs,
                "game": String::from_utf8_lossy(&bytes),
            }));
        }
    }
    match args.format {
        Format::Json => {
            let doc = json!({
                "command": "verify",
                "payload": {
                    "trials": args.trials,
                    "nmax": args.nmax,
                    "seed": args.seed,
                    "max": args.max,
                    "mismatches": mismatches,
                },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("json values serialize")
            );
        }
        Format::Table => println!(
            "{} trials, n <= {}, coordinates 0..={}, seed {}: {} mismatches",
            args.trials,
            args.nmax,
            args.max,
            args.seed,
            mismatches.len()
        ),
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::domain(format!("{} mismatches", mismatches.len())))
    }
}
