//! Morra: one simultaneous round of fingers and guesses.

use crate::arena::{MatchOutcome, MatchResult};
use crate::error::{ArenaError, Result};
use crate::rng::Seed;
use rand::Rng;

pub const MAX_FINGERS: usize = 5;
pub const MAX_GUESS: usize = 10;
pub const JOINT_ACTIONS: usize = (MAX_FINGERS + 1) * (MAX_GUESS + 1);

/// A joint action: fingers shown and sum guessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MorraAction {
    pub fingers: u8,
    pub guess: u8,
}

impl MorraAction {
    pub fn index(self) -> usize {
        (MAX_GUESS + 1) * self.fingers as usize + self.guess as usize
    }

    pub fn from_index(idx: usize) -> Self {
        assert!(idx < JOINT_ACTIONS);
        MorraAction {
            fingers: (idx / (MAX_GUESS + 1)) as u8,
            guess: (idx % (MAX_GUESS + 1)) as u8,
        }
    }
}

/// One logit per joint action, indexed by [`MorraAction::index`].
#[derive(Debug, Clone, PartialEq)]
pub struct MorraParams {
    pub logits: [f64; JOINT_ACTIONS],
}

impl MorraParams {
    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let logits: [f64; JOINT_ACTIONS] = values.try_into().map_err(|_| ArenaError::InvalidParams {
            game: "morra".into(),
            reason: format!("expected {JOINT_ACTIONS} parameters, got {}", values.len()),
        })?;
        Ok(MorraParams { logits })
    }

    pub fn uniform() -> Self {
        MorraParams { logits: [0.0; JOINT_ACTIONS] }
    }

    /// Puts essentially all mass on one action.
    pub fn concentrated(action: MorraAction) -> Self {
        let mut logits = [0.0; JOINT_ACTIONS];
        logits[action.index()] = 50.0;
        MorraParams { logits }
    }
}

/// Softmax of the logits.
pub fn morra_distribution(params: &MorraParams) -> [f64; JOINT_ACTIONS] {
    let max = params.logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut p = params.logits.map(|l| (l - max).exp());
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    p
}

/// Inverse-CDF draw from a probability vector.
pub fn sample_action<R: Rng + ?Sized>(distribution: &[f64; JOINT_ACTIONS], rng: &mut R) -> MorraAction {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &p) in distribution.iter().enumerate() {
        acc += p;
        if u < acc {
            return MorraAction::from_index(i);
        }
    }
    // Rounding can leave acc slightly below 1; take the last action with mass.
    let last = distribution.iter().rposition(|&p| p > 0.0).unwrap_or(JOINT_ACTIONS - 1);
    MorraAction::from_index(last)
}

/// Decide a round from the two joint actions.
pub fn morra_judge(first: MorraAction, second: MorraAction) -> MatchResult {
    let total = first.fingers + second.fingers;
    match (first.guess == total, second.guess == total) {
        (true, false) => MatchResult::WinFirst,
        (false, true) => MatchResult::WinSecond,
        _ => MatchResult::Draw,
    }
}

pub fn morra_play(first: &MorraParams, second: &MorraParams, seed: Seed) -> MatchOutcome {
    let mut rng = seed.rng();
    let a = sample_action(&morra_distribution(first), &mut rng);
    let b = sample_action(&morra_distribution(second), &mut rng);
    MatchOutcome::new(morra_judge(a, b), 1)
}
