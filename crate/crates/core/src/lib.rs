//! Exact analysis of complementary weighted multiple majority games.
//!
//! Each player carries a `k`-dimensional non-negative integer weight vector.
//! A coalition's strength is the sum of its componentwise maxima, and a
//! coalition wins when it is strictly stronger than its complement.
//!
//! The crate pairs an exponential oracle that works for any `k`
//! ([`oracle`]) with fast exact algorithms for `k = 2`: minimal winning
//! coalitions in `O(n log n)` ([`mwc2d`]) and the four classical power
//! indices ([`indices2d`]). [`stability`] turns a power profile into the
//! set of C-stable coalitions.

pub mod analysis;
pub mod error;
pub mod gamefile;
pub mod generators;
pub mod indices2d;
pub mod model;
pub mod mwc2d;
pub mod oracle;
pub mod power;
pub mod stability;

pub use error::{Error, Result};
pub use model::{Coalition, CoalitionProfile, Game, PartitionStructure, PlayerVector, Weight};
pub use power::{IndexKind, PowerProfile, Rational};
