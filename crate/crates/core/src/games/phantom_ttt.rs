//! Phantom tic-tac-toe.
//!
//! Neither player sees the other's stones. A referee fixes a uniformly
//! random permutation of the nine cells at the start; when a player
//! nominates an occupied cell the stone is moved to the next free cell in
//! that permutation, wrapping around.
//!
//! A strategy is a pure priority list per seat. Each turn a player
//! nominates the highest-priority cell they do not already know to be
//! occupied. A player knows about their own stones and about every cell
//! they nominated and were redirected away from.

use crate::arena::{MatchOutcome, MatchResult};
use crate::error::{ArenaError, Result};
use crate::rng::Seed;
use rand::seq::SliceRandom;

pub const CELLS: usize = 9;

const LINES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 4, 8],
    [2, 4, 6],
];

#[derive(Debug, Clone, PartialEq)]
pub struct PhantomTttParams {
    pub priorities_first: [f64; CELLS],
    pub priorities_second: [f64; CELLS],
}

impl PhantomTttParams {
    pub fn from_slice(values: &[f64]) -> Result<Self> {
        if values.len() != 2 * CELLS {
            return Err(ArenaError::InvalidParams {
                game: "phantom-ttt".into(),
                reason: format!("expected {} parameters, got {}", 2 * CELLS, values.len()),
            });
        }
        let mut first = [0.0; CELLS];
        let mut second = [0.0; CELLS];
        first.copy_from_slice(&values[..CELLS]);
        second.copy_from_slice(&values[CELLS..]);
        Ok(PhantomTttParams { priorities_first: first, priorities_second: second })
    }

    /// Cells by decreasing priority for a seat, ties to the lower cell.
    pub fn preference_order(&self, seat: usize) -> [usize; CELLS] {
        let pr = if seat == 0 { &self.priorities_first } else { &self.priorities_second };
        let mut order: [usize; CELLS] = std::array::from_fn(|i| i);
        order.sort_by(|&a, &b| pr[b].total_cmp(&pr[a]).then(a.cmp(&b)));
        order
    }
}

/// One turn as seen by the referee.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub seat: usize,
    pub nominated: usize,
    pub placed: usize,
    /// Cells examined, including the nominated one.
    pub probes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhantomTrace {
    pub outcome: MatchOutcome,
    pub placements: Vec<Placement>,
    pub board: [Option<usize>; CELLS],
    pub referee_order: [usize; CELLS],
}

fn has_line(board: &[Option<usize>; CELLS], seat: usize) -> bool {
    LINES.iter().any(|line| line.iter().all(|&c| board[c] == Some(seat)))
}

pub fn phantom_ttt_traced(first: &PhantomTttParams, second: &PhantomTttParams, seed: Seed) -> PhantomTrace {
    let mut rng = seed.rng();
    let mut referee_order: [usize; CELLS] = std::array::from_fn(|i| i);
    referee_order.shuffle(&mut rng);
    let mut position = [0usize; CELLS];
    for (pos, &cell) in referee_order.iter().enumerate() {
        position[cell] = pos;
    }

    let orders = [first.preference_order(0), second.preference_order(1)];
    let mut known = [[false; CELLS]; 2];
    let mut board: [Option<usize>; CELLS] = [None; CELLS];
    let mut placements = Vec::with_capacity(CELLS);
    let mut seat = 0usize;
    let result = loop {
        let nominated = *orders[seat]
            .iter()
            .find(|&&c| !known[seat][c])
            .expect("a player cannot know more occupied cells than exist on a non-full board");
        let mut placed = nominated;
        let mut probes = 1;
        while board[placed].is_some() {
            placed = referee_order[(position[placed] + 1) % CELLS];
            probes += 1;
        }
        known[seat][nominated] = true;
        known[seat][placed] = true;
        board[placed] = Some(seat);
        placements.push(Placement { seat, nominated, placed, probes });

        if has_line(&board, seat) {
            break if seat == 0 { MatchResult::WinFirst } else { MatchResult::WinSecond };
        }
        if placements.len() == CELLS {
            break MatchResult::Draw;
        }
        seat = 1 - seat;
    };
    PhantomTrace {
        outcome: MatchOutcome::new(result, placements.len() as u64),
        placements,
        board,
        referee_order,
    }
}

pub fn phantom_ttt_play(first: &PhantomTttParams, second: &PhantomTttParams, seed: Seed) -> MatchOutcome {
    phantom_ttt_traced(first, second, seed).outcome
}
