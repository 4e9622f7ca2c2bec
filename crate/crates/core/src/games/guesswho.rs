//! Guess Who, reduced to its permutation-invariant core.
//!
//! Each player hides a number in `1..=N`. On their turn a player with `n`
//! remaining candidates picks a split size `c` and asks whether the hidden
//! number is among the first `c` of them; the truthful answer leaves `c`
//! or `n - c` candidates. The first player down to one candidate wins.
//!
//! Policies see only `(n, m)`: their own and their opponent's candidate
//! counts. All parametric families share one closed form,
//!
//! ```text
//! c = β·r·(n-1)/2 + (1-β)·( n/2 - α·δ/2 + γ·(n/2)·δ²/n² + ζ·(n/2)·δ³/n³ + ι·(n-m)/2 )
//! δ = max(n-m, 0),   r ~ U[0,1]
//! ```
//!
//! floored and clamped to `[1, n-1]`. Each family reads only its own
//! coefficients; the others are treated as zero.

use crate::arena::{MatchOutcome, MatchResult};
use crate::error::{ArenaError, Result};
use crate::rng::Seed;
use rand::Rng;

/// Initial number of characters.
pub const DEFAULT_CHARACTERS: u32 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GuessWhoFamily {
    /// `c = floor(n/2)`.
    Dichotomy,
    /// Reads `α, β`.
    Linear,
    /// Reads `α, β, γ`.
    NonLinear,
    /// Reads `α, γ, ζ, ι`; no randomization.
    Quartic,
    /// Reads all five coefficients.
    Full,
}

impl GuessWhoFamily {
    fn randomized(self) -> bool {
        matches!(self, GuessWhoFamily::Linear | GuessWhoFamily::NonLinear | GuessWhoFamily::Full)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GuessWhoParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub zeta: f64,
    pub iota: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuessWhoState {
    /// Candidates left to the player about to ask.
    pub n: u32,
    /// Candidates left to the opponent.
    pub m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuessWhoPolicy {
    pub family: GuessWhoFamily,
    pub params: GuessWhoParams,
}

impl GuessWhoPolicy {
    pub fn dichotomy() -> Self {
        GuessWhoPolicy {
            family: GuessWhoFamily::Dichotomy,
            params: GuessWhoParams::default(),
        }
    }

    pub fn linear(alpha: f64, beta: f64) -> Self {
        GuessWhoPolicy {
            family: GuessWhoFamily::Linear,
            params: GuessWhoParams { alpha, beta, ..Default::default() },
        }
    }

    pub fn nonlinear(alpha: f64, beta: f64, gamma: f64) -> Self {
        GuessWhoPolicy {
            family: GuessWhoFamily::NonLinear,
            params: GuessWhoParams { alpha, beta, gamma, ..Default::default() },
        }
    }

    pub fn quartic(alpha: f64, gamma: f64, zeta: f64, iota: f64) -> Self {
        GuessWhoPolicy {
            family: GuessWhoFamily::Quartic,
            params: GuessWhoParams { alpha, beta: 0.0, gamma, zeta, iota },
        }
    }

    pub fn full(alpha: f64, beta: f64, gamma: f64, zeta: f64, iota: f64) -> Self {
        GuessWhoPolicy {
            family: GuessWhoFamily::Full,
            params: GuessWhoParams { alpha, beta, gamma, zeta, iota },
        }
    }

    /// Linear policy with `α = 1`, the best response to dichotomy in the linear family.
    pub fn optimal_linear() -> Self {
        Self::linear(1.0, 0.0)
    }

    /// Best non-linear response to [`GuessWhoPolicy::optimal_linear`].
    pub fn optimal_nonlinear() -> Self {
        Self::nonlinear(-0.25, 0.0, -1.5)
    }

    /// Best quartic response to [`GuessWhoPolicy::optimal_nonlinear`].
    pub fn best() -> Self {
        Self::quartic(-0.56, -1.58, -0.06, -0.022)
    }

    /// 4 entries `(α, γ, ζ, ι)` give a quartic policy; 5 entries
    /// `(α, β, γ, ζ, ι)` give the full randomized one.
    pub fn from_slice(values: &[f64]) -> Result<Self> {
        match *values {
            [a, g, z, i] => Ok(Self::quartic(a, g, z, i)),
            [a, b, g, z, i] => Ok(Self::full(a, b, g, z, i)),
            _ => Err(ArenaError::InvalidParams {
                game: "guesswho".into(),
                reason: format!("expected 4 or 5 parameters, got {}", values.len()),
            }),
        }
    }

    /// Whether the returned split depends on the random draw.
    pub fn is_deterministic(&self) -> bool {
        !self.family.randomized() || self.params.beta == 0.0
    }
}

/// Unclamped closed form for the family's coefficients and a draw `r`.
fn raw_split(policy: &GuessWhoPolicy, n: f64, m: f64, r: f64) -> f64 {
    let p = &policy.params;
    let delta = (n - m).max(0.0);
    let half = n / 2.0;
    let (alpha, beta, gamma, zeta, iota) = match policy.family {
        GuessWhoFamily::Dichotomy => return half,
        GuessWhoFamily::Linear => (p.alpha, p.beta, 0.0, 0.0, 0.0),
        GuessWhoFamily::NonLinear => (p.alpha, p.beta, p.gamma, 0.0, 0.0),
        GuessWhoFamily::Quartic => (p.alpha, 0.0, p.gamma, p.zeta, p.iota),
        GuessWhoFamily::Full => (p.alpha, p.beta, p.gamma, p.zeta, p.iota),
    };
    let ratio = delta / n;
    let expert = half - alpha * delta / 2.0
        + gamma * half * ratio * ratio
        + zeta * half * ratio * ratio * ratio
        + iota * (n - m) / 2.0;
    beta * r * (n - 1.0) / 2.0 + (1.0 - beta) * expert
}

/// Split size `c ∈ [1, n-1]` for the asker in `state`.
///
/// Randomized families draw a fresh `r` on every call.
pub fn guesswho_policy<R: Rng + ?Sized>(policy: &GuessWhoPolicy, state: GuessWhoState, rng: &mut R) -> u32 {
    debug_assert!(state.n >= 2, "no question is needed with one candidate");
    let r = if policy.family.randomized() { rng.random::<f64>() } else { 0.0 };
    let value = raw_split(policy, state.n as f64, state.m as f64, r).floor();
    let upper = (state.n - 1) as f64;
    // NaN only arises from non-finite coefficients; fall back to one.
    if value.is_nan() {
        return 1;
    }
    value.clamp(1.0, upper) as u32
}

/// Play one game with `characters` candidates per player.
pub fn guesswho_play(
    first: &GuessWhoPolicy,
    second: &GuessWhoPolicy,
    characters: u32,
    seed: Seed,
) -> MatchOutcome {
    assert!(characters >= 2, "Guess Who needs at least two characters");
    let mut rng = seed.rng();
    // hidden[i] is the number player i hides; low[i]/count[i] describe the
    // interval of candidates player i still considers for the opponent's.
    let hidden = [rng.random_range(0..characters), rng.random_range(0..characters)];
    let mut low = [0u32; 2];
    let mut count = [characters; 2];
    let policies = [first, second];
    let mut questions = 0u64;
    let mut seat = 0usize;
    loop {
        let other = 1 - seat;
        let state = GuessWhoState { n: count[seat], m: count[other] };
        let c = guesswho_policy(policies[seat], state, &mut rng);
        questions += 1;
        if hidden[other] < low[seat] + c {
            count[seat] = c;
        } else {
            low[seat] += c;
            count[seat] -= c;
        }
        if count[seat] == 1 {
            let result = if seat == 0 { MatchResult::WinFirst } else { MatchResult::WinSecond };
            return MatchOutcome::new(result, questions);
        }
        seat = other;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(policy: &GuessWhoPolicy, n: u32, m: u32) -> u32 {
        guesswho_policy(policy, GuessWhoState { n, m }, &mut Seed(0).rng())
    }

    #[test]
    fn zero_linear_is_dichotomy() {
        let p = GuessWhoPolicy::linear(0.0, 0.0);
        for m in [1, 50, 128] {
            assert_eq!(split(&p, 128, m), 64);
        }
        for n in 2..=128 {
            for m in [1, n / 2 + 1, n] {
                assert_eq!(split(&p, n, m), split(&GuessWhoPolicy::dichotomy(), n, m));
            }
        }
    }

    #[test]
    fn optimal_linear_hand_value() {
        // δ = 6, c = floor(5 - 3) = 2.
        assert_eq!(split(&GuessWhoPolicy::optimal_linear(), 10, 4), 2);
        // Not behind: plain halving.
        assert_eq!(split(&GuessWhoPolicy::optimal_linear(), 10, 12), 5);
    }

    #[test]
    fn nonlinear_and_quartic_hand_values() {
        // ONL at (n=100, m=20): δ = 80, c = 50 + 10 - 1.5*50*0.64 = 12.
        assert_eq!(split(&GuessWhoPolicy::optimal_nonlinear(), 100, 20), 12);
        // Best at (100, 20): 50 + 22.4 - 50.56 - 1.536 - 0.88 = 19.424.
        assert_eq!(split(&GuessWhoPolicy::best(), 100, 20), 19);
        // Ahead or level: the gap terms vanish and ι pulls towards larger splits.
        assert_eq!(split(&GuessWhoPolicy::best(), 100, 100), 50);
        assert_eq!(split(&GuessWhoPolicy::best(), 100, 140), 50);
    }

    #[test]
    fn split_stays_in_range() {
        let extreme = [
            GuessWhoPolicy::quartic(1e6, -1e6, 3.0, 1e3),
            GuessWhoPolicy::quartic(-1e6, 1e6, -3.0, -1e3),
            GuessWhoPolicy::full(2.0, 5.0, 1.0, 1.0, 1.0),
            GuessWhoPolicy::full(0.0, -5.0, 0.0, 0.0, 0.0),
        ];
        let mut rng = Seed(4).rng();
        for p in &extreme {
            for n in 2..=128 {
                for m in 1..=128 {
                    let c = guesswho_policy(p, GuessWhoState { n, m }, &mut rng);
                    assert!((1..n).contains(&c), "c={c} n={n}");
                }
            }
        }
    }

    #[test]
    fn randomized_family_draws_per_call() {
        let p = GuessWhoPolicy::linear(0.0, 1.0);
        assert!(!p.is_deterministic());
        let mut rng = Seed(8).rng();
        let picks: std::collections::HashSet<u32> =
            (0..200).map(|_| guesswho_policy(&p, GuessWhoState { n: 128, m: 128 }, &mut rng)).collect();
        assert!(picks.len() > 20);
    }

    #[test]
    fn dichotomy_mirror_first_player_always_wins() {
        let d = GuessWhoPolicy::dichotomy();
        for s in 0..500 {
            let out = guesswho_play(&d, &d, 128, Seed(s));
            assert_eq!(out.result, MatchResult::WinFirst);
            assert_eq!(out.moves_played, 13);
        }
    }

    #[test]
    fn wrong_arity_is_rejected() {
        assert!(GuessWhoPolicy::from_slice(&[0.0; 3]).is_err());
        assert_eq!(GuessWhoPolicy::from_slice(&[0.0; 4]).unwrap().family, GuessWhoFamily::Quartic);
        assert_eq!(GuessWhoPolicy::from_slice(&[0.0; 5]).unwrap().family, GuessWhoFamily::Full);
    }
}
