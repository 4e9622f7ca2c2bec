//! Sequential comparison of two players with a controlled error rate.
//!
//! A race draws scores in `[0, 1]` one game at a time and, after every
//! game, tests an empirical Bernstein confidence interval. The error
//! budget `δ` is spread over checkpoints as `δ_t = 6δ / (π² t²)`, whose sum
//! over `t ≥ 1` is exactly `δ`, so the guarantee holds whenever the race
//! happens to stop. The limited race additionally stops once the interval
//! is narrower than a precision `ε` and then declares the current leader.

use crate::error::{ArenaError, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RaceConfig {
    /// Precision at which the race stops without separation.
    pub epsilon: f64,
    /// Total probability of a wrong separation.
    pub delta: f64,
    /// Hard cap on games played by one race.
    pub max_games: u64,
}

impl Default for RaceConfig {
    fn default() -> Self {
        RaceConfig {
            epsilon: 0.01,
            delta: 0.05,
            max_games: 1_000_000,
        }
    }
}

impl RaceConfig {
    pub fn new(epsilon: f64, delta: f64, max_games: u64) -> Result<Self> {
        let cfg = RaceConfig { epsilon, delta, max_games };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(ArenaError::InvalidConfig(format!("epsilon must lie in (0,1), got {}", self.epsilon)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(ArenaError::InvalidConfig(format!("delta must lie in (0,1), got {}", self.delta)));
        }
        if self.max_games == 0 {
            return Err(ArenaError::InvalidConfig("max_games must be positive".into()));
        }
        Ok(())
    }

    /// Same configuration with the game cap lowered to `cap`.
    pub fn capped(&self, cap: u64) -> Self {
        RaceConfig {
            max_games: self.max_games.min(cap),
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RaceWinner {
    A,
    B,
    /// No decision; callers keep their current choice.
    Incumbent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HaltReason {
    Separated,
    PrecisionReached,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RaceResult {
    pub winner: RaceWinner,
    pub games_a: u64,
    pub games_b: u64,
    pub mean_a: f64,
    pub mean_b: f64,
    pub halt_reason: HaltReason,
}

impl RaceResult {
    /// Games actually simulated. A paired game involves both players but
    /// counts once.
    pub fn games_played(&self, paired: bool) -> u64 {
        if paired {
            self.games_a
        } else {
            self.games_a + self.games_b
        }
    }
}

/// Error allotted to checkpoint `t` (1-based).
pub fn checkpoint_delta(delta: f64, t: u64) -> f64 {
    let t = t as f64;
    6.0 * delta / (PI * PI * t * t)
}

/// Empirical Bernstein half-width for `t` samples in `[0, 1]` with
/// empirical (biased) variance `variance_hat`, at confidence `1 - delta_t`.
pub fn bernstein_halfwidth(variance_hat: f64, t: u64, delta_t: f64) -> f64 {
    let log_term = (3.0 / delta_t).ln();
    let t = t as f64;
    (2.0 * variance_hat.max(0.0) * log_term / t).sqrt() + 3.0 * log_term / t
}

/// Welford accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Running {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Running {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn variance(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            (self.m2 / self.n as f64).max(0.0)
        }
    }

    fn mean_or_half(&self) -> f64 {
        if self.n == 0 {
            0.5
        } else {
            self.mean
        }
    }
}

fn leader(mean_a: f64, mean_b: f64) -> RaceWinner {
    match mean_a.partial_cmp(&mean_b) {
        Some(std::cmp::Ordering::Greater) => RaceWinner::A,
        Some(std::cmp::Ordering::Less) => RaceWinner::B,
        _ => RaceWinner::Incumbent,
    }
}

/// Race A directly against B. `sampler` returns A's score in one A-vs-B
/// game; B's score is its complement.
pub fn paired_race<F: FnMut() -> f64>(mut sampler: F, cfg: &RaceConfig) -> RaceResult {
    let mut stats = Running::default();
    let finish = |stats: &Running, winner, halt_reason| RaceResult {
        winner,
        games_a: stats.n,
        games_b: stats.n,
        mean_a: stats.mean_or_half(),
        mean_b: 1.0 - stats.mean_or_half(),
        halt_reason,
    };
    while stats.n < cfg.max_games {
        stats.push(sampler());
        let t = stats.n;
        if t < 2 {
            continue;
        }
        let hw = bernstein_halfwidth(stats.variance(), t, checkpoint_delta(cfg.delta, t));
        if stats.mean - hw > 0.5 {
            return finish(&stats, RaceWinner::A, HaltReason::Separated);
        }
        if stats.mean + hw < 0.5 {
            return finish(&stats, RaceWinner::B, HaltReason::Separated);
        }
        if hw < cfg.epsilon {
            return finish(&stats, leader(stats.mean, 1.0 - stats.mean), HaltReason::PrecisionReached);
        }
    }
    finish(&stats, RaceWinner::Incumbent, HaltReason::BudgetExhausted)
}

/// Race A and B against a common opponent. Samplers are called
/// alternately, A first; each returns that player's score in one game.
///
/// Two intervals are tested at every checkpoint, so each one gets half of
/// the checkpoint's error allowance.
pub fn unpaired_race<FA, FB>(mut sampler_a: FA, mut sampler_b: FB, cfg: &RaceConfig) -> RaceResult
where
    FA: FnMut() -> f64,
    FB: FnMut() -> f64,
{
    let mut a = Running::default();
    let mut b = Running::default();
    let finish = |a: &Running, b: &Running, winner, halt_reason| RaceResult {
        winner,
        games_a: a.n,
        games_b: b.n,
        mean_a: a.mean_or_half(),
        mean_b: b.mean_or_half(),
        halt_reason,
    };
    loop {
        if a.n + b.n + 2 > cfg.max_games {
            return finish(&a, &b, RaceWinner::Incumbent, HaltReason::BudgetExhausted);
        }
        a.push(sampler_a());
        b.push(sampler_b());
        let t = a.n;
        if t < 2 {
            continue;
        }
        let dt = checkpoint_delta(cfg.delta, t) / 2.0;
        let hw_a = bernstein_halfwidth(a.variance(), t, dt);
        let hw_b = bernstein_halfwidth(b.variance(), t, dt);
        if a.mean - hw_a > b.mean + hw_b {
            return finish(&a, &b, RaceWinner::A, HaltReason::Separated);
        }
        if b.mean - hw_b > a.mean + hw_a {
            return finish(&a, &b, RaceWinner::B, HaltReason::Separated);
        }
        if hw_a < cfg.epsilon && hw_b < cfg.epsilon {
            return finish(&a, &b, leader(a.mean, b.mean), HaltReason::PrecisionReached);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;
    use rand::Rng;

    #[test]
    fn schedule_sums_below_delta() {
        let total: f64 = (1..200_000).map(|t| checkpoint_delta(0.05, t)).sum();
        assert!(total <= 0.05);
        assert!(total > 0.0499);
    }

    #[test]
    fn halfwidth_deterministic_samples_decay() {
        let dt = 0.01;
        let big = bernstein_halfwidth(0.0, 1_000_000, dt);
        assert!((big - 3.0 * (300.0f64).ln() / 1e6).abs() < 1e-18);
        assert!(big < 1e-4);
    }

    #[test]
    fn halfwidth_reference_value() {
        // sqrt(2 * 0.25 * ln 300 / 1000) + 3 ln 300 / 1000, evaluated term by term.
        let ln300 = 5.703_782_474_656_201_f64;
        let expected = (0.5 * ln300 / 1000.0).sqrt() + 3.0 * ln300 / 1000.0;
        assert!((bernstein_halfwidth(0.25, 1000, 0.01) - expected).abs() < 1e-12);
        // 50-digit reference: 0.07051444880701657807950647...
        assert!((bernstein_halfwidth(0.25, 1000, 0.01) - 0.070_514_448_807_016_58).abs() < 1e-12);
    }

    #[test]
    fn halfwidth_nonincreasing_in_t() {
        let mut prev = f64::INFINITY;
        for t in 2..5000 {
            let hw = bernstein_halfwidth(0.2, t, 0.001);
            assert!(hw <= prev);
            prev = hw;
        }
    }

    #[test]
    fn config_validation() {
        assert!(RaceConfig::new(0.0, 0.05, 10).is_err());
        assert!(RaceConfig::new(0.01, 1.0, 10).is_err());
        assert!(RaceConfig::new(0.01, 0.05, 0).is_err());
        assert!(RaceConfig::new(0.01, 0.05, 10).is_ok());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = RaceConfig { max_games: 10, ..Default::default() };
        let mut rng = Seed(1).rng();
        let r = paired_race(|| if rng.random::<bool>() { 1.0 } else { 0.0 }, &cfg);
        assert_eq!(r.halt_reason, HaltReason::BudgetExhausted);
        assert_eq!(r.winner, RaceWinner::Incumbent);
        assert_eq!(r.games_a, 10);
        let r = unpaired_race(|| 1.0, || 0.0, &RaceConfig { max_games: 9, ..Default::default() });
        assert_eq!(r.halt_reason, HaltReason::BudgetExhausted);
        assert_eq!(r.games_a + r.games_b, 8);
    }

    #[test]
    fn loose_precision_halts_early() {
        let cfg = RaceConfig { epsilon: 0.5, ..Default::default() };
        let mut i = 0u32;
        let r = paired_race(
            || {
                i += 1;
                if i % 2 == 0 { 1.0 } else { 0.0 }
            },
            &cfg,
        );
        assert_eq!(r.halt_reason, HaltReason::PrecisionReached);
        assert!(r.games_a < 200, "{}", r.games_a);
    }

    #[test]
    fn exact_tie_goes_to_incumbent() {
        let cfg = RaceConfig { epsilon: 0.9, ..Default::default() };
        let r = paired_race(|| 0.5, &cfg);
        assert_eq!(r.halt_reason, HaltReason::PrecisionReached);
        assert_eq!(r.winner, RaceWinner::Incumbent);
        let r = unpaired_race(|| 0.5, || 0.5, &cfg);
        assert_eq!(r.winner, RaceWinner::Incumbent);
    }
}
