use super::{random_individual, Budget, BudgetTracker, Event, OptimizerRun, OptimizerState, RunLog};
use crate::arena::{alternating_half_points, GameId};
use crate::error::{ArenaError, Result};
use crate::rng::{split_seed, GameRng, Seed};
use rand::Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedMethodConfig {
    /// Individuals in the first round; doubled every round after that.
    pub population_size: usize,
    pub games_per_pair: u64,
}

impl Default for SeedMethodConfig {
    fn default() -> Self {
        SeedMethodConfig { population_size: 16, games_per_pair: 1 }
    }
}

impl SeedMethodConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(ArenaError::InvalidConfig("seed method needs at least 2 individuals".into()));
        }
        if self.games_per_pair == 0 {
            return Err(ArenaError::InvalidConfig("games_per_pair must be positive".into()));
        }
        Ok(())
    }
}

fn round_matches(k: usize, games_per_pair: u64) -> u64 {
    (k as u64 * (k as u64 - 1) / 2).saturating_mul(games_per_pair)
}

/// Draw random individuals, play a full round-robin among them and keep
/// the best average scorer.
///
/// All in-scope games use the same parameters in both seats, so a single
/// population plays itself. While budget remains the population doubles;
/// earlier individuals stay in and keep accumulating results, and the
/// selection uses each individual's average over every game it has
/// played. Matches within a round run in parallel.
pub fn seed_method(game: GameId, cfg: &SeedMethodConfig, budget: &Budget, rng: &mut GameRng) -> Result<OptimizerRun> {
    cfg.validate()?;
    let mut tracker = BudgetTracker::new(budget)?;
    if round_matches(cfg.population_size, cfg.games_per_pair) > tracker.remaining_games() {
        return Err(ArenaError::BudgetTooSmall(format!(
            "a round-robin of {} individuals needs {} games",
            cfg.population_size,
            round_matches(cfg.population_size, cfg.games_per_pair)
        )));
    }

    let mut log = RunLog::default();
    let mut population = Vec::new();
    // Score totals in half points and games played, per individual.
    let mut half_points: Vec<u64> = Vec::new();
    let mut games: Vec<u64> = Vec::new();
    let mut best = 0usize;
    let mut k = cfg.population_size;
    let mut rounds = 0u32;

    loop {
        let matches = round_matches(k, cfg.games_per_pair);
        if matches > tracker.remaining_games() || (rounds > 0 && tracker.exhausted()) {
            break;
        }
        while population.len() < k {
            population.push(random_individual(game, rng));
            half_points.push(0);
            games.push(0);
        }
        let round_seed = Seed(rng.random());
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let gpp = cfg.games_per_pair;
        let results: Vec<u64> = pairs
            .par_iter()
            .enumerate()
            .map(|(p, &(i, j))| {
                let pair_seed = split_seed(round_seed, p as u64);
                (0..gpp)
                    .map(|g| {
                        // Alternate seats across pairs as well as within
                        // them so single-game pairs are balanced too.
                        let index = g + (p as u64 % 2);
                        alternating_half_points(game, population[i].values(), population[j].values(), pair_seed, index)
                    })
                    .sum()
            })
            .collect();
        for (&(i, j), &h) in pairs.iter().zip(&results) {
            half_points[i] += h;
            half_points[j] += 2 * gpp - h;
            games[i] += gpp;
            games[j] += gpp;
        }
        tracker.charge(matches);

        best = (0..population.len())
            .max_by(|&a, &b| {
                let ma = half_points[a] as f64 / games[a] as f64;
                let mb = half_points[b] as f64 / games[b] as f64;
                ma.total_cmp(&mb).then(b.cmp(&a))
            })
            .expect("population is non-empty");
        let best_mean = half_points[best] as f64 / (2.0 * games[best] as f64);
        log.push(Event::SeedRound { k, matches, best, best_mean });
        rounds += 1;
        k *= 2;
    }

    let winner = population[best].clone();
    Ok(OptimizerRun {
        best: winner.clone(),
        state: OptimizerState {
            incumbent: winner,
            sigma: 1.0,
            population,
            games_played: tracker.used(),
            elapsed: tracker.elapsed(),
        },
        log,
        budget_too_small: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::ParamVector;

    fn cfg(k: usize, gpp: u64) -> SeedMethodConfig {
        SeedMethodConfig { population_size: k, games_per_pair: gpp }
    }

    #[test]
    fn smallest_instance_plays_one_game() {
        let r = seed_method(GameId::Ladder, &cfg(2, 1), &Budget::games(1), &mut Seed(1).rng()).unwrap();
        assert_eq!(r.state.games_played, 1);
        assert_eq!(r.state.population.len(), 2);
        let (a, b) = (r.state.population[0].values()[0], r.state.population[1].values()[0]);
        // Larger parameter always wins the ladder game.
        assert_eq!(r.best.values()[0], a.max(b));
    }

    #[test]
    fn rounds_are_full_round_robins() {
        let r = seed_method(GameId::Toy, &cfg(4, 3), &Budget::games(10_000), &mut Seed(2).rng()).unwrap();
        let mut expected_k = 4;
        let mut rounds = 0;
        for e in &r.log.events {
            if let Event::SeedRound { k, matches, .. } = e {
                assert_eq!(*k, expected_k);
                assert_eq!(*matches, (k * (k - 1) / 2) as u64 * 3);
                expected_k *= 2;
                rounds += 1;
            }
        }
        // 18 + 84 + 360 + 1488 + 6048 fits, the next round does not.
        assert_eq!(rounds, 5);
        assert_eq!(r.log.total_games(), r.state.games_played);
        assert!(r.state.games_played <= 10_000);
    }

    #[test]
    fn too_small_budget_is_an_error() {
        assert!(matches!(
            seed_method(GameId::Toy, &cfg(2, 1), &Budget::games(0), &mut Seed(3).rng()),
            Err(ArenaError::BudgetTooSmall(_))
        ));
        assert!(seed_method(GameId::Toy, &cfg(1, 1), &Budget::games(10), &mut Seed(3).rng()).is_err());
        assert!(seed_method(GameId::Toy, &cfg(2, 0), &Budget::games(10), &mut Seed(3).rng()).is_err());
    }

    #[test]
    fn reproducible() {
        let a = seed_method(GameId::Pig, &cfg(8, 2), &Budget::games(3_000), &mut Seed(4).rng()).unwrap();
        let b = seed_method(GameId::Pig, &cfg(8, 2), &Budget::games(3_000), &mut Seed(4).rng()).unwrap();
        assert_eq!(a.log, b.log);
        assert_eq!(a.best, b.best);
    }

    #[test]
    fn ladder_selects_the_maximum() {
        let r = seed_method(GameId::Ladder, &cfg(16, 1), &Budget::games(600), &mut Seed(5).rng()).unwrap();
        let top = r
            .state
            .population
            .iter()
            .map(|p: &ParamVector| p.values()[0])
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(r.best.values()[0], top);
    }
}
