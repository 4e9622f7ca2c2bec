//! Pig: roll a die until you hold or roll a one.
//!
//! The one-parameter strategy holds once the turn total reaches a
//! threshold, or as soon as banking would reach the target.

use crate::arena::{MatchOutcome, MatchResult};
use crate::rng::Seed;
use rand::Rng;

pub const TARGET: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PigParams {
    pub hold_threshold: f64,
}

impl PigParams {
    pub fn new(hold_threshold: f64) -> Self {
        PigParams { hold_threshold }
    }
}

pub fn pig_should_hold(params: &PigParams, my_score: u32, _opp_score: u32, turn_total: u32) -> bool {
    turn_total as f64 >= params.hold_threshold || my_score + turn_total >= TARGET
}

/// Every turn starts with a mandatory roll; the hold decision is taken
/// after each roll that is not a one.
pub fn pig_play(first: &PigParams, second: &PigParams, seed: Seed) -> MatchOutcome {
    let mut rng = seed.rng();
    let players = [first, second];
    let mut scores = [0u32; 2];
    let mut rolls = 0u64;
    let mut seat = 0usize;
    loop {
        let mut turn_total = 0u32;
        loop {
            let die: u32 = rng.random_range(1..=6);
            rolls += 1;
            if die == 1 {
                turn_total = 0;
                break;
            }
            turn_total += die;
            if pig_should_hold(players[seat], scores[seat], scores[1 - seat], turn_total) {
                break;
            }
        }
        scores[seat] += turn_total;
        if scores[seat] >= TARGET {
            let result = if seat == 0 { MatchResult::WinFirst } else { MatchResult::WinSecond };
            return MatchOutcome::new(result, rolls);
        }
        seat = 1 - seat;
    }
}
