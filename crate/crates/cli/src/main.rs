use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cwmmg::analysis::{Analyzer, Method};
use cwmmg::gamefile::{digest, parse_game, GameFile};
use cwmmg::generators::{fixture, gen_random, gen_tight};
use cwmmg::oracle::{CStableOracle, DEFAULT_ENUMERATION_LIMIT, DEFAULT_RECURSIVE_LIMIT};
use cwmmg::{Error, Game, IndexKind};

mod bench;
mod render;
mod verify;

#[derive(Parser)]
#[command(
    name = "cwmmg",
    version,
    about = "Exact analysis of complementary weighted multiple majority games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the minimal winning coalitions.
    Mwc(GameArgs),
    /// Print exact power indices.
    Indices {
        #[command(flatten)]
        game: GameArgs,
        /// Index to print; all four when omitted.
        #[arg(long, value_enum)]
        index: Option<Kind>,
    },
    /// Report the C-stable coalitions for one power index.
    Stable {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum, default_value = "hp")]
        index: Kind,
        /// Also enumerate every C-stable partition with the recursive checker.
        #[arg(long)]
        structures: bool,
        /// Largest game the recursive checker accepts.
        #[arg(long, default_value_t = DEFAULT_RECURSIVE_LIMIT)]
        stable_limit: usize,
    },
    /// Compare the fast path with enumeration on seeded random games.
    Verify(verify::VerifyArgs),
    /// Write a game file.
    Gen(GenArgs),
    /// Time the fast path across sizes.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct GameArgs {
    /// Game file path, `-` for standard input, or `@name` for a built-in fixture.
    game: String,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Largest game the enumeration oracle accepts.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    oracle_limit: usize,
    /// Include wall-clock timing in the output.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Tight family parameter; overrides the random generator.
    #[arg(long)]
    tight: Option<usize>,
    /// Built-in fixture name; overrides the random generator.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 8)]
    max: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ss,
    Bz,
    Hp,
    Dp,
}

impl From<Kind> for IndexKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Ss => IndexKind::Ss,
            Kind::Bz => IndexKind::Bz,
            Kind::Hp => IndexKind::Hp,
            Kind::Dp => IndexKind::Dp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Fast,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Failure carrying its exit status.
pub struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

pub fn load_game(source: &str) -> Result<Game, Failure> {
    if let Some(name) = source.strip_prefix('@') {
        return Ok(fixture(name)?);
    }
    let text = if source == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(source)
    }
    .map_err(|e| Failure::domain(format!("cannot read {source}: {e}")))?;
    Ok(parse_game(&text)?)
}

pub fn warn_limit(flag: &str, value: usize, default: usize) {
    if value > default {
        eprintln!(
            "WARNING: {flag} raised to {value} (default {default}); exhaustive enumeration may take very long"
        );
    }
}

struct Context {
    game: Game,
    analyzer: Analyzer,
    format: Format,
    timing: bool,
}

impl Context {
    fn new(args: &GameArgs) -> Result<Self, Failure> {
        let game = load_game(&args.game)?;
        warn_limit(
            "--oracle-limit",
            args.oracle_limit,
            DEFAULT_ENUMERATION_LIMIT,
        );
        let method = match args.method {
            Some(MethodArg::Fast) => Method::Fast,
            Some(MethodArg::Oracle) => Method::Oracle,
            None => Method::default_for(&game),
        };
        if method == Method::Fast && game.k() != 2 {
            return Err(Error::Dimension(game.k()).into());
        }
        Ok(Self {
            game,
            analyzer: Analyzer::new(method, args.oracle_limit),
            format: args.format,
            timing: args.timing,
        })
    }

    fn document(&self, command: &str, payload: Value, started: Instant) -> Value {
        let mut doc = json!({
            "command": command,
            "method": self.analyzer.method.as_str(),
            "game": {
                "n": self.game.n(),
                "k": self.game.k(),
                "digest": digest(&self.game),
            },
            "payload": payload,
        });
        if self.timing {
            doc["timing_ms"] = json!(started.elapsed().as_secs_f64() * 1e3);
        }
        doc
    }

    fn emit(&self, doc: &Value, table: String, started: Instant) {
        match self.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(doc).expect("json values serialize")
            ),
            Format::Table => {
                print!("{table}");
                if self.timing {
                    println!("time: {:.3} ms", started.elapsed().as_secs_f64() * 1e3);
                }
            }
        }
    }
}

fn run_mwc(args: &GameArgs) -> Result<(), Failure> {
    let started = Instant::now();
    let ctx = Context::new(args)?;
    let mwc = ctx.analyzer.mwc(&ctx.game)?;
    let doc = ctx.document("mwc", render::mwc_payload(&ctx.game, &mwc), started);
    ctx.emit(&doc, render::mwc_table(&ctx.game, &mwc), started);
    Ok(())
}

fn run_indices(args: &GameArgs, kind: Option<Kind>) -> Result<(), Failure> {
    let started = Instant::now();
    let ctx = Context::new(args)?;
    let kinds: Vec<IndexKind> = match kind {
        Some(k) => vec![k.into()],
        None => IndexKind::ALL.to_vec(),
    };
    let profiles = kinds
        .iter()
        .map(|&k| ctx.analyzer.index(&ctx.game, k))
        .collect::<Result<Vec<_>, _>>()?;
    let doc = ctx.document("indices", render::indices_payload(&profiles), started);
    ctx.emit(&doc, render::indices_table(&ctx.game, &profiles), started);
    Ok(())
}

fn run_stable(
    args: &GameArgs,
    kind: Kind,
    structures: bool,
    stable_limit: usize,
) -> Result<(), Failure> {
    let started = Instant::now();
    let ctx = Context::new(args)?;
    let kind = IndexKind::from(kind);
    let report = ctx.analyzer.stability(&ctx.game, kind)?;
    let listed = if structures {
        warn_limit("--stable-limit", stable_limit, DEFAULT_RECURSIVE_LIMIT);
        let powers = ctx.analyzer.index(&ctx.game, kind)?;
        Some(CStableOracle::with_limit(&ctx.game, &powers, stable_limit)?.stable_structures())
    } else {
        None
    };
    let doc = ctx.document(
        "stable",
        render::stable_payload(&report, listed.as_deref()),
        started,
    );
    ctx.emit(
        &doc,
        render::stable_table(&ctx.game, &report, listed.as_deref()),
        started,
    );
    Ok(())
}

fn run_gen(args: &GenArgs) -> Result<(), Failure> {
    let game = match (&args.fixture, args.tight) {
        (Some(name), _) => fixture(name)?,
        (None, Some(t)) => gen_tight(t)?,
        (None, None) => gen_random(args.n, args.k, args.max, args.seed)?,
    };
    let text = GameFile::from_game(&game).to_pretty();
    write_or_print(args.output.as_deref(), &text)
}

pub fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Failure::domain(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Mwc(args) => run_mwc(args),
        Command::Indices { game, index } => run_indices(game, *index),
        Command::Stable {
            game,
            index,
            structures,
            stable_limit,
        } => run_stable(game, *index, *structures, *stable_limit),
        Command::Verify(args) => verify::run(args),
        Command::Gen(args) => run_gen(args),
        Command::Bench(args) => bench::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
