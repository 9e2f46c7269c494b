//! Method selection: the fast two-dimensional path or enumeration.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::indices2d::fast_index;
use crate::model::{Coalition, Game};
use crate::mwc2d::compute_mwc2;
use crate::oracle::Enumeration;
use crate::power::{IndexKind, PowerProfile};
use crate::stability::{cstable_coalitions, StabilityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Fast,
    Oracle,
}

impl Method {
    /// Fast for two dimensions, enumeration otherwise.
    pub fn default_for(game: &Game) -> Method {
        if game.k() == 2 {
            Method::Fast
        } else {
            Method::Oracle
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Fast => "fast",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Method::Fast),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

/// Analysis entry points with an enumeration size cap for the oracle.
#[derive(Debug, Clone, Copy)]
pub struct Analyzer {
    pub method: Method,
    pub oracle_limit: usize,
}

impl Analyzer {
    pub fn new(method: Method, oracle_limit: usize) -> Self {
        Self {
            method,
            oracle_limit,
        }
    }

    fn enumeration(&self, game: &Game) -> Result<Enumeration> {
        Enumeration::with_limit(game, self.oracle_limit)
    }

    pub fn mwc(&self, game: &Game) -> Result<Vec<Coalition>> {
        match self.method {
            Method::Fast => Ok(compute_mwc2(game)?.coalitions()),
            Method::Oracle => Ok(self.enumeration(game)?.mwc()),
        }
    }

    pub fn index(&self, game: &Game, kind: IndexKind) -> Result<PowerProfile> {
        match self.method {
            Method::Fast => fast_index(game, kind),
            Method::Oracle => Ok(self.enumeration(game)?.index(kind)),
        }
    }

    pub fn stability(&self, game: &Game, kind: IndexKind) -> Result<StabilityReport> {
        let mwc = self.mwc(game)?;
        let powers = self.index(game, kind)?;
        cstable_coalitions(game, &mwc, &powers)
    }
}
