use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("malformed coalition: player {player} out of range for a game with {n} players")]
    MalformedCoalition { player: usize, n: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension error: fast path requires k = 2, game has k = {0}")]
    Dimension(usize),

    #[error("oracle limit exceeded: n = {n} > {limit}{hint}")]
    OracleLimit {
        n: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("invalid generator parameter: {0}")]
    Parameter(String),

    #[error("degenerate power: winning block {0:?} has zero total power")]
    DegeneratePower(Vec<usize>),

    #[error("inconsistent input: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}
