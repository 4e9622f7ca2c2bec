use super::{mutate, step_size_update, BudgetTracker, Event, OptimizerRun, OptimizerState, RunLog};
use crate::arena::{alternating_half_points, GameId, ParamVector};
use crate::error::{ArenaError, Result};
use crate::optimizers::Budget;
use crate::races::{paired_race, unpaired_race, HaltReason, RaceConfig, RaceResult, RaceWinner};
use crate::rng::{GameRng, Seed};
use rand::Rng;

/// Hall-of-fame options shared by both coevolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoevolutionConfig {
    /// Keep at most this many members, evicting the oldest. Unbounded
    /// when `None`.
    pub population_cap: Option<usize>,
}

struct Ctx<'a> {
    game: GameId,
    race_cfg: RaceConfig,
    tracker: BudgetTracker,
    log: RunLog,
    rng: &'a mut GameRng,
    iteration: u64,
    completed_races: u64,
}

impl Ctx<'_> {
    /// Records the race and returns `None` if the run's budget cut it short.
    fn settle(&mut self, result: RaceResult, games: u64, opponent: Option<usize>, truncated: bool) -> Option<bool> {
        self.tracker.charge(games);
        self.log.push(Event::race(self.iteration, opponent, &result, games));
        if truncated && result.halt_reason == HaltReason::BudgetExhausted {
            return None;
        }
        self.completed_races += 1;
        Some(result.winner == RaceWinner::A)
    }

    fn race_limits(&self) -> (RaceConfig, bool) {
        let remaining = self.tracker.remaining_games();
        (self.race_cfg.capped(remaining), remaining < self.race_cfg.max_games)
    }

    /// Head-to-head race; `Some(true)` when the challenger wins.
    fn paired(&mut self, challenger: &ParamVector, opponent: &ParamVector, index: Option<usize>) -> Option<bool> {
        let (cfg, truncated) = self.race_limits();
        let seed = Seed(self.rng.random());
        let game = self.game;
        let mut i = 0u64;
        let result = paired_race(
            || {
                let h = alternating_half_points(game, challenger.values(), opponent.values(), seed, i);
                i += 1;
                h as f64 / 2.0
            },
            &cfg,
        );
        self.settle(result, result.games_played(true), index, truncated)
    }

    /// Both players race against `baseline`; `Some(true)` when the
    /// challenger scores better.
    fn unpaired(&mut self, challenger: &ParamVector, incumbent: &ParamVector, baseline: &ParamVector) -> Option<bool> {
        let (cfg, truncated) = self.race_limits();
        let seed_a = Seed(self.rng.random());
        let seed_b = Seed(self.rng.random());
        let game = self.game;
        let (mut i, mut j) = (0u64, 0u64);
        let result = unpaired_race(
            || {
                let h = alternating_half_points(game, challenger.values(), baseline.values(), seed_a, i);
                i += 1;
                h as f64 / 2.0
            },
            || {
                let h = alternating_half_points(game, incumbent.values(), baseline.values(), seed_b, j);
                j += 1;
                h as f64 / 2.0
            },
            &cfg,
        );
        self.settle(result, result.games_played(false), None, truncated)
    }
}

#[derive(Clone, Copy)]
enum Hall {
    None,
    Grow(Option<usize>),
}

/// Shared (1+1) loop. `challenge` decides whether the mutant replaces the
/// incumbent, or returns `None` once the budget runs out mid-decision.
fn evolve<F>(
    game: GameId,
    initial: &ParamVector,
    budget: &Budget,
    race_cfg: &RaceConfig,
    rng: &mut GameRng,
    hall: Hall,
    mut challenge: F,
) -> Result<OptimizerRun>
where
    F: FnMut(&mut Ctx<'_>, &ParamVector, &ParamVector, &[ParamVector]) -> Option<bool>,
{
    race_cfg.validate()?;
    if initial.game() != game {
        return Err(ArenaError::GameMismatch {
            expected: game.to_string(),
            found: initial.game().to_string(),
        });
    }
    if let Hall::Grow(Some(0)) = hall {
        return Err(ArenaError::InvalidConfig("population cap must be at least 1".into()));
    }
    let mut ctx = Ctx {
        game,
        race_cfg: *race_cfg,
        tracker: BudgetTracker::new(budget)?,
        log: RunLog::default(),
        rng,
        iteration: 0,
        completed_races: 0,
    };
    let mut incumbent = initial.clone();
    let mut sigma = 1.0;
    let mut population = vec![incumbent.clone()];

    while !ctx.tracker.exhausted() {
        ctx.iteration += 1;
        let challenger = mutate(&incumbent, sigma, ctx.rng);
        ctx.log.push(Event::Mutation { iteration: ctx.iteration, sigma });
        let Some(success) = challenge(&mut ctx, &challenger, &incumbent, &population) else {
            break;
        };
        if success {
            incumbent = challenger;
            match hall {
                Hall::None => population[0] = incumbent.clone(),
                Hall::Grow(cap) => {
                    population.push(incumbent.clone());
                    if let Some(cap) = cap {
                        if population.len() > cap {
                            let excess = population.len() - cap;
                            population.drain(..excess);
                        }
                    }
                }
            }
            ctx.log.push(Event::Accept { iteration: ctx.iteration, population: population.len() });
        } else {
            ctx.log.push(Event::Reject { iteration: ctx.iteration });
        }
        sigma = step_size_update(sigma, success);
        ctx.log.push(Event::SigmaUpdate { iteration: ctx.iteration, sigma });
    }

    Ok(OptimizerRun {
        best: incumbent.clone(),
        state: OptimizerState {
            incumbent,
            sigma,
            population,
            games_played: ctx.tracker.used(),
            elapsed: ctx.tracker.elapsed(),
        },
        log: ctx.log,
        budget_too_small: ctx.completed_races == 0,
    })
}

/// Optimize against a fixed baseline: the mutant replaces the incumbent
/// when it scores better against `baseline` in an unpaired race.
pub fn naive_es(
    game: GameId,
    baseline: &ParamVector,
    budget: &Budget,
    race_cfg: &RaceConfig,
    rng: &mut GameRng,
) -> Result<OptimizerRun> {
    if baseline.game() != game {
        return Err(ArenaError::GameMismatch {
            expected: game.to_string(),
            found: baseline.game().to_string(),
        });
    }
    evolve(game, baseline, budget, race_cfg, rng, Hall::None, |ctx, challenger, incumbent, _| {
        ctx.unpaired(challenger, incumbent, baseline)
    })
}

/// The mutant replaces the incumbent when it beats it head to head.
pub fn iterative_es(
    game: GameId,
    initial: &ParamVector,
    budget: &Budget,
    race_cfg: &RaceConfig,
    rng: &mut GameRng,
) -> Result<OptimizerRun> {
    evolve(game, initial, budget, race_cfg, rng, Hall::None, |ctx, challenger, incumbent, _| {
        ctx.paired(challenger, incumbent, None)
    })
}

/// The mutant must beat every hall-of-fame member, raced in insertion
/// order and stopping at the first loss.
pub fn real_coevolution(
    game: GameId,
    initial: &ParamVector,
    budget: &Budget,
    race_cfg: &RaceConfig,
    coevolution: &CoevolutionConfig,
    rng: &mut GameRng,
) -> Result<OptimizerRun> {
    evolve(
        game,
        initial,
        budget,
        race_cfg,
        rng,
        Hall::Grow(coevolution.population_cap),
        |ctx, challenger, _, population| {
            for (i, member) in population.iter().enumerate() {
                if !ctx.paired(challenger, member, Some(i))? {
                    return Some(false);
                }
                if ctx.tracker.exhausted() && i + 1 < population.len() {
                    return None;
                }
            }
            Some(true)
        },
    )
}

/// The mutant races one hall-of-fame member drawn uniformly at random.
pub fn approx_coevolution(
    game: GameId,
    initial: &ParamVector,
    budget: &Budget,
    race_cfg: &RaceConfig,
    coevolution: &CoevolutionConfig,
    rng: &mut GameRng,
) -> Result<OptimizerRun> {
    evolve(
        game,
        initial,
        budget,
        race_cfg,
        rng,
        Hall::Grow(coevolution.population_cap),
        |ctx, challenger, _, population| {
            // A single member needs no draw, which keeps the random stream
            // aligned with the iterative method.
            let index = if population.len() == 1 { 0 } else { ctx.rng.random_range(0..population.len()) };
            ctx.log.push(Event::OpponentDraw {
                iteration: ctx.iteration,
                index,
                population: population.len(),
            });
            ctx.paired(challenger, &population[index], Some(index))
        },
    )
}
