//! Game identifiers, parameter vectors, match execution and scoring.

use crate::error::{ArenaError, Result};
use crate::games::{guesswho, morra, nim, phantom_ttt, pig, toy, war};
use crate::rng::{split_seed, Seed};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Every game the workbench can simulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameId {
    /// War with the 3-parameter card ordering.
    War,
    /// War with the 4-parameter card ordering.
    War4,
    Batawaf,
    Batawaf4,
    /// Guess Who, deterministic 4-parameter family `(α, γ, ζ, ι)`.
    GuessWho,
    /// Guess Who, stochastic 5-parameter family `(α, β, γ, ζ, ι)`.
    GuessWho5,
    Morra,
    Nim,
    Pig,
    PhantomTtt,
    /// 1-parameter logistic game: the first player wins with
    /// probability `logistic(x_first - x_second)`.
    Toy,
    /// 1-parameter game where the larger parameter always wins.
    Ladder,
}

impl GameId {
    pub const ALL: [GameId; 12] = [
        GameId::War,
        GameId::War4,
        GameId::Batawaf,
        GameId::Batawaf4,
        GameId::GuessWho,
        GameId::GuessWho5,
        GameId::Morra,
        GameId::Nim,
        GameId::Pig,
        GameId::PhantomTtt,
        GameId::Toy,
        GameId::Ladder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GameId::War => "war",
            GameId::War4 => "war4",
            GameId::Batawaf => "batawaf",
            GameId::Batawaf4 => "batawaf4",
            GameId::GuessWho => "guesswho",
            GameId::GuessWho5 => "guesswho5",
            GameId::Morra => "morra",
            GameId::Nim => "nim",
            GameId::Pig => "pig",
            GameId::PhantomTtt => "phantom-ttt",
            GameId::Toy => "toy",
            GameId::Ladder => "ladder",
        }
    }

    /// Length of a valid parameter vector.
    pub fn param_count(self) -> usize {
        match self {
            GameId::War | GameId::Batawaf => 3,
            GameId::War4 | GameId::Batawaf4 => 4,
            GameId::GuessWho => 4,
            GameId::GuessWho5 => 5,
            GameId::Morra => morra::JOINT_ACTIONS,
            GameId::Nim => nim::STATE_COUNT,
            GameId::Pig => 1,
            GameId::PhantomTtt => 18,
            GameId::Toy | GameId::Ladder => 1,
        }
    }

    /// Whether the game can end in a draw.
    pub fn allows_draw(self) -> bool {
        matches!(
            self,
            GameId::War
                | GameId::War4
                | GameId::Batawaf
                | GameId::Batawaf4
                | GameId::Morra
                | GameId::PhantomTtt
                | GameId::Ladder
        )
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameId {
    type Err = ArenaError;

    fn from_str(s: &str) -> Result<Self> {
        GameId::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| ArenaError::UnknownGame(s.to_string()))
    }
}

/// The real-valued parameters of one strategy for one game.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector {
    game: GameId,
    values: Vec<f64>,
}

impl ParamVector {
    /// Checks the length against the game and that every entry is finite.
    pub fn new(game: GameId, values: Vec<f64>) -> Result<Self> {
        if values.len() != game.param_count() {
            return Err(ArenaError::InvalidParams {
                game: game.to_string(),
                reason: format!("expected {} parameters, got {}", game.param_count(), values.len()),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(ArenaError::InvalidParams {
                game: game.to_string(),
                reason: format!("parameter {i} is not finite"),
            });
        }
        Ok(ParamVector { game, values })
    }

    pub fn zeros(game: GameId) -> Self {
        ParamVector {
            game,
            values: vec![0.0; game.param_count()],
        }
    }

    pub fn game(&self) -> GameId {
        self.game
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    fn check_for(&self, game: GameId) -> Result<()> {
        if self.game != game {
            return Err(ArenaError::GameMismatch {
                expected: game.to_string(),
                found: self.game.to_string(),
            });
        }
        if self.values.len() != game.param_count() {
            return Err(ArenaError::InvalidParams {
                game: game.to_string(),
                reason: format!("expected {} parameters, got {}", game.param_count(), self.values.len()),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatchResult {
    WinFirst,
    WinSecond,
    Draw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchOutcome {
    pub result: MatchResult,
    pub moves_played: u64,
}

impl MatchOutcome {
    pub fn new(result: MatchResult, moves_played: u64) -> Self {
        MatchOutcome { result, moves_played }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Perspective {
    First,
    Second,
}

/// 1 for a win, 0 for a loss, 0.5 for a draw.
pub fn score(outcome: &MatchOutcome, perspective: Perspective) -> f64 {
    half_points(outcome.result, perspective) as f64 / 2.0
}

/// Score in half points, so that sums stay exact integers.
pub(crate) fn half_points(result: MatchResult, perspective: Perspective) -> u64 {
    match (result, perspective) {
        (MatchResult::Draw, _) => 1,
        (MatchResult::WinFirst, Perspective::First) | (MatchResult::WinSecond, Perspective::Second) => 2,
        _ => 0,
    }
}

/// Empirical winning rate over a batch of games, draws counted as half.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WinStats {
    pub wins: f64,
    pub games: u64,
    pub mean: f64,
    pub stderr: f64,
}

impl WinStats {
    /// From a total score expressed in half points.
    pub fn from_half_points(half_points: u64, games: u64) -> Self {
        assert!(games > 0, "WinStats needs at least one game");
        let wins = half_points as f64 / 2.0;
        let mean = wins / games as f64;
        WinStats {
            wins,
            games,
            mean,
            stderr: (mean * (1.0 - mean) / games as f64).sqrt(),
        }
    }

    /// Same games seen from the other side.
    pub fn complement(&self) -> Self {
        let wins = self.games as f64 - self.wins;
        let mean = wins / self.games as f64;
        WinStats {
            wins,
            games: self.games,
            mean,
            stderr: self.stderr,
        }
    }

    /// Exact 0.5 with zero error, used for table diagonals.
    pub fn even(games: u64) -> Self {
        WinStats {
            wins: games as f64 / 2.0,
            games,
            mean: 0.5,
            stderr: 0.0,
        }
    }
}

/// Match runner with raw slices; lengths must already be checked.
pub(crate) fn play_raw(game: GameId, first: &[f64], second: &[f64], seed: Seed) -> MatchOutcome {
    match game {
        GameId::War | GameId::War4 | GameId::Batawaf | GameId::Batawaf4 => {
            let variant = match game {
                GameId::War | GameId::War4 => war::WarVariant::War,
                _ => war::WarVariant::Batawaf,
            };
            let a = war::WarOrderParams::from_slice(first).expect("checked length");
            let b = war::WarOrderParams::from_slice(second).expect("checked length");
            war::war_play(variant, &a, &b, seed)
        }
        GameId::GuessWho | GameId::GuessWho5 => {
            let a = guesswho::GuessWhoPolicy::from_slice(first).expect("checked length");
            let b = guesswho::GuessWhoPolicy::from_slice(second).expect("checked length");
            guesswho::guesswho_play(&a, &b, guesswho::DEFAULT_CHARACTERS, seed)
        }
        GameId::Morra => {
            let a = morra::MorraParams::from_slice(first).expect("checked length");
            let b = morra::MorraParams::from_slice(second).expect("checked length");
            morra::morra_play(&a, &b, seed)
        }
        GameId::Nim => nim::nim_play(
            &nim::NimParams::from_slice(first).expect("checked length"),
            &nim::NimParams::from_slice(second).expect("checked length"),
            nim::NimState::INITIAL,
        ),
        GameId::Pig => pig::pig_play(
            &pig::PigParams::new(first[0]),
            &pig::PigParams::new(second[0]),
            seed,
        ),
        GameId::PhantomTtt => {
            let a = phantom_ttt::PhantomTttParams::from_slice(first).expect("checked length");
            let b = phantom_ttt::PhantomTttParams::from_slice(second).expect("checked length");
            phantom_ttt::phantom_ttt_play(&a, &b, seed)
        }
        GameId::Toy => toy::logistic_play(first[0], second[0], seed),
        GameId::Ladder => toy::ladder_play(first[0], second[0]),
    }
}

/// Play one match to termination. Deterministic in `seed`.
pub fn play_match(
    game: GameId,
    first: &ParamVector,
    second: &ParamVector,
    seed: Seed,
) -> Result<MatchOutcome> {
    first.check_for(game)?;
    second.check_for(game)?;
    Ok(play_raw(game, first.values(), second.values(), seed))
}

/// Score of `a` in the `index`-th game of an evaluation batch, in half points.
///
/// `a` takes the first seat on even indices and the second seat on odd ones.
/// Games `2k` and `2k + 1` share one seed with the seats swapped, so both
/// players face the same deal and the same chance events.
pub(crate) fn alternating_half_points(game: GameId, a: &[f64], b: &[f64], seed: Seed, index: u64) -> u64 {
    let s = split_seed(seed, index / 2);
    if index % 2 == 0 {
        half_points(play_raw(game, a, b, s).result, Perspective::First)
    } else {
        half_points(play_raw(game, b, a, s).result, Perspective::Second)
    }
}

/// Score of `a` in game `index` of a role-alternated series: `a` moves
/// first on even indices, and each even/odd pair shares a split of `seed`.
///
/// Panics if either vector belongs to another game.
pub fn alternating_score(game: GameId, a: &ParamVector, b: &ParamVector, seed: Seed, index: u64) -> f64 {
    assert!(a.game() == game && b.game() == game, "strategies must belong to {game}");
    alternating_half_points(game, a.values(), b.values(), seed, index) as f64 / 2.0
}

/// Winning rate of `a` against `b` over `n_games` role-alternated matches.
///
/// Matches run in parallel on the current rayon pool. Scores are summed
/// as integers so the result does not depend on scheduling.
pub fn evaluate(
    game: GameId,
    a: &ParamVector,
    b: &ParamVector,
    n_games: u64,
    seed: Seed,
) -> Result<WinStats> {
    a.check_for(game)?;
    b.check_for(game)?;
    if n_games == 0 {
        return Err(ArenaError::InvalidConfig("n_games must be at least 1".into()));
    }
    let total: u64 = (0..n_games)
        .into_par_iter()
        .map(|i| alternating_half_points(game, a.values(), b.values(), seed, i))
        .sum();
    Ok(WinStats::from_half_points(total, n_games))
}
