//! Parametric strategy optimization for partially observable two-player
//! zero-sum games.
//!
//! The crate is organised bottom-up:
//!
//! - [`rng`]: seeds, seed splitting and the portable generator.
//! - [`arena`]: game ids, parameter vectors, match execution and scoring.
//! - [`games`]: the rule engines.
//! - [`races`]: sequential comparison of two players with a controlled
//!   error probability.
//! - [`optimizers`]: the five strategy optimizers built on races.
//! - [`tournament`]: round-robin cross tables.

pub mod arena;
pub mod error;
pub mod games;
pub mod optimizers;
pub mod races;
pub mod rng;
pub mod tournament;

pub use arena::{evaluate, play_match, score, GameId, MatchOutcome, MatchResult, ParamVector, Perspective, WinStats};
pub use error::{ArenaError, Result};
pub use rng::{split_seed, GameRng, Seed};
