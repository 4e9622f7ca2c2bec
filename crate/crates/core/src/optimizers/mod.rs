//! Strategy optimizers.
//!
//! Four of them are (1+1) evolution strategies that differ only in who the
//! challenger has to beat:
//!
//! | optimizer               | challenger `x'` must beat              | race     |
//! |-------------------------|----------------------------------------|----------|
//! | [`naive_es`]            | the incumbent, both playing a baseline | unpaired |
//! | [`iterative_es`]        | the incumbent, head to head            | paired   |
//! | [`real_coevolution`]    | every member of the hall of fame       | paired   |
//! | [`approx_coevolution`]  | one random member of the hall of fame  | paired   |
//!
//! All share the componentwise Gaussian mutation and the step-size rule
//! "double on success, multiply by 0.84 on failure". The fifth,
//! [`seed_method`], draws random individuals and keeps the round-robin
//! winner.

mod es;
mod log;
mod seed;

pub use es::{approx_coevolution, iterative_es, naive_es, real_coevolution, CoevolutionConfig};
pub use log::{Event, RunLog};
pub use seed::{seed_method, SeedMethodConfig};

use crate::arena::{GameId, ParamVector};
use crate::error::{ArenaError, Result};
use crate::rng::{GameRng, Seed};
use rand_distr::{Distribution, StandardNormal};
use std::time::{Duration, Instant};

/// Step-size multiplier after a successful challenger.
pub const SUCCESS_FACTOR: f64 = 2.0;
/// Step-size multiplier after a failed challenger.
pub const FAILURE_FACTOR: f64 = 0.84;
/// Upper clamp for the step size, so repeated successes cannot overflow.
pub const MAX_SIGMA: f64 = 1e150;

/// Limits on one optimizer run. Game budgets are reproducible; wall-clock
/// budgets are not.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Budget {
    pub max_games: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn games(n: u64) -> Self {
        Budget { max_games: Some(n), max_seconds: None }
    }

    pub fn seconds(s: f64) -> Self {
        Budget { max_games: None, max_seconds: Some(s) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_games.is_none() && self.max_seconds.is_none() {
            return Err(ArenaError::InvalidConfig("a budget needs a game or time limit".into()));
        }
        if let Some(s) = self.max_seconds {
            if !(s > 0.0 && s.is_finite()) {
                return Err(ArenaError::InvalidConfig(format!("time budget must be positive, got {s}")));
            }
        }
        Ok(())
    }
}

/// Game and time accounting for a running optimizer.
#[derive(Debug, Clone)]
pub(crate) struct BudgetTracker {
    max_games: Option<u64>,
    deadline: Option<Instant>,
    start: Instant,
    used: u64,
}

impl BudgetTracker {
    pub(crate) fn new(budget: &Budget) -> Result<Self> {
        budget.validate()?;
        let start = Instant::now();
        Ok(BudgetTracker {
            max_games: budget.max_games,
            deadline: budget.max_seconds.map(|s| start + Duration::from_secs_f64(s)),
            start,
            used: 0,
        })
    }

    pub(crate) fn remaining_games(&self) -> u64 {
        self.max_games.map_or(u64::MAX, |m| m.saturating_sub(self.used))
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.remaining_games() == 0 || self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub(crate) fn charge(&mut self, games: u64) {
        self.used += games;
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

/// Snapshot of an optimizer at the end of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerState {
    pub incumbent: ParamVector,
    pub sigma: f64,
    /// Hall of fame for the coevolutions, the evaluated individuals for
    /// the seed method, and just the incumbent otherwise.
    pub population: Vec<ParamVector>,
    pub games_played: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct OptimizerRun {
    pub best: ParamVector,
    pub state: OptimizerState,
    pub log: RunLog,
    /// Set when the budget ran out before a single race completed.
    pub budget_too_small: bool,
}

/// `x + σ·N(0, I)`, componentwise.
pub fn mutate(x: &ParamVector, sigma: f64, rng: &mut GameRng) -> ParamVector {
    debug_assert!(sigma > 0.0);
    let values: Vec<f64> = x
        .values()
        .iter()
        .map(|&v| {
            let z: f64 = StandardNormal.sample(rng);
            (v + sigma * z).clamp(-f64::MAX, f64::MAX)
        })
        .collect();
    ParamVector::new(x.game(), values).expect("mutation of a finite vector by a finite step stays valid")
}

/// One-fifth-style rule: doubles on success, shrinks by 0.84 otherwise.
///
/// The result stays within `[f64::MIN_POSITIVE, MAX_SIGMA]`.
pub fn step_size_update(sigma: f64, success: bool) -> f64 {
    let next = if success { sigma * SUCCESS_FACTOR } else { sigma * FAILURE_FACTOR };
    next.clamp(f64::MIN_POSITIVE, MAX_SIGMA)
}

/// Independent standard Gaussian parameters, deterministic per seed.
pub fn make_baseline(game: GameId, seed: Seed) -> ParamVector {
    let mut rng = seed.rng();
    random_individual(game, &mut rng)
}

pub(crate) fn random_individual(game: GameId, rng: &mut GameRng) -> ParamVector {
    let values = (0..game.param_count()).map(|_| StandardNormal.sample(rng)).collect();
    ParamVector::new(game, values).expect("gaussian draws are finite")
}
