//! Wall-clock scaling table for the fast path.

use std::time::{Duration, Instant};

use clap::Args;
use serde_json::json;

use cwmmg::generators::gen_random;
use cwmmg::indices2d::{bz2, ss2, wc_structure};
use cwmmg::mwc2d::{compute_mwc2, split_busy};
use cwmmg::{Game, Weight};

use crate::{Failure, Format};

const RUNS: usize = 5;

#[derive(Args)]
pub struct BenchArgs {
    /// Sizes for the minimal winning coalition computation.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "12500,25000,50000,100000,200000"
    )]
    sizes: Vec<usize>,
    /// Sizes for the Banzhaf and Shapley-Shubik computations.
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,300")]
    index_sizes: Vec<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    max: Weight,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

struct Row {
    op: &'static str,
    n: usize,
    median: Duration,
    slope: Option<f64>,
}

fn median(mut f: impl FnMut() -> Result<(), Failure>) -> Result<Duration, Failure> {
    let mut times = Vec::with_capacity(RUNS);
    for _ in 0..RUNS {
        let start = Instant::now();
        f()?;
        times.push(start.elapsed());
    }
    times.sort();
    Ok(times[RUNS / 2])
}

type Op = fn(&Game) -> Result<(), Failure>;

fn mwc(game: &Game) -> Result<(), Failure> {
    compute_mwc2(game)?;
    Ok(())
}

fn bz(game: &Game) -> Result<(), Failure> {
    bz2(game, &wc_structure(game, &split_busy(game)?)?)?;
    Ok(())
}

fn ss(game: &Game) -> Result<(), Failure> {
    ss2(game, &wc_structure(game, &split_busy(game)?)?)?;
    Ok(())
}

fn series(
    op: &'static str,
    run: Op,
    sizes: &[usize],
    args: &BenchArgs,
) -> Result<Vec<Row>, Failure> {
    let mut rows: Vec<Row> = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let game = gen_random(n, 2, args.max, args.seed.wrapping_add(i as u64))?;
        let t = median(|| run(&game))?;
        let slope = rows.last().map(|prev| {
            (t.as_secs_f64() / prev.median.as_secs_f64()).ln() / (n as f64 / prev.n as f64).ln()
        });
        rows.push(Row {
            op,
            n,
            median: t,
            slope,
        });
    }
    Ok(rows)
}

pub fn run(args: &BenchArgs) -> Result<(), Failure> {
    let mut rows = series("mwc", mwc, &args.sizes, args)?;
    rows.extend(series("bz", bz, &args.index_sizes, args)?);
    rows.extend(series("ss", ss, &args.index_sizes, args)?);
    match args.format {
        Format::Json => {
            let table: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "op": r.op,
                        "n": r.n,
                        "median_ms": r.median.as_secs_f64() * 1e3,
                        "slope": r.slope,
                    })
                })
                .collect();
            let doc = json!({"command": "bench", "payload": {"runs": RUNS, "rows": table}});
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("json values serialize")
            );
        }
        Format::Table => {
            println!("{:<4} {:>8} {:>12} {:>7}", "op", "n", "median ms", "slope");
            for r in &rows {
                let slope = r.slope.map_or("-".to_string(), |s| format!("{s:.2}"));
                println!(
                    "{:<4} {:>8} {:>12.3} {:>7}",
                    r.op,
                    r.n,
                    r.median.as_secs_f64() * 1e3,
                    slope
                );
            }
        }
    }
    Ok(())
}
