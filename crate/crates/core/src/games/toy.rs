//! One-parameter games with a transitive ordering of strategies.

use crate::arena::{MatchOutcome, MatchResult};
use crate::rng::Seed;
use rand::Rng;

pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// First player wins with probability `logistic(first - second)`.
pub fn logistic_play(first: f64, second: f64, seed: Seed) -> MatchOutcome {
    let u: f64 = seed.rng().random();
    let result = if u < logistic(first - second) { MatchResult::WinFirst } else { MatchResult::WinSecond };
    MatchOutcome::new(result, 1)
}

/// Larger parameter wins, equal parameters draw.
pub fn ladder_play(first: f64, second: f64) -> MatchOutcome {
    let result = match first.total_cmp(&second) {
        std::cmp::Ordering::Greater => MatchResult::WinFirst,
        std::cmp::Ordering::Less => MatchResult::WinSecond,
        std::cmp::Ordering::Equal => MatchResult::Draw,
    };
    MatchOutcome::new(result, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logistic_rate() {
        let n = 20_000;
        let wins = (0..n)
            .filter(|&s| logistic_play(1.0, 0.0, Seed(s)).result == MatchResult::WinFirst)
            .count();
        let rate = wins as f64 / n as f64;
        assert!((rate - logistic(1.0)).abs() < 0.015, "{rate}");
    }

    #[test]
    fn ladder_ordering() {
        assert_eq!(ladder_play(2.0, 1.0).result, MatchResult::WinFirst);
        assert_eq!(ladder_play(1.0, 2.0).result, MatchResult::WinSecond);
        assert_eq!(ladder_play(1.0, 1.0).result, MatchResult::Draw);
    }
}
