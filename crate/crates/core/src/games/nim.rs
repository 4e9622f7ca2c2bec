//! Misère Nim on heaps `(1, 3, 5, 7)`.
//!
//! Heap configurations are numbered with the mixed-radix index
//! `h1 + 2·h2 + 8·h3 + 48·h4`, which ranges over `0..384`. Index 0 is the
//! empty (terminal) position, leaving 383 non-terminal states; a strategy
//! assigns one real value to each of them.

use crate::arena::{MatchOutcome, MatchResult};
use crate::error::{ArenaError, Result};

pub const HEAP_LIMITS: [u8; 4] = [1, 3, 5, 7];
const RADIX: [usize; 4] = [1, 2, 8, 48];
/// Number of heap configurations including the terminal one.
pub const CONFIGURATIONS: usize = 384;
pub const STATE_COUNT: usize = CONFIGURATIONS - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NimState {
    pub heaps: [u8; 4],
}

impl NimState {
    pub const INITIAL: NimState = NimState { heaps: HEAP_LIMITS };
    pub const TERMINAL: NimState = NimState { heaps: [0; 4] };

    /// `None` when some heap exceeds its limit.
    pub fn new(heaps: [u8; 4]) -> Option<Self> {
        heaps
            .iter()
            .zip(HEAP_LIMITS)
            .all(|(&h, lim)| h <= lim)
            .then_some(NimState { heaps })
    }

    pub fn index(self) -> usize {
        self.heaps.iter().zip(RADIX).map(|(&h, r)| h as usize * r).sum()
    }

    pub fn from_index(mut idx: usize) -> Self {
        assert!(idx < CONFIGURATIONS);
        let mut heaps = [0u8; 4];
        for i in (0..4).rev() {
            heaps[i] = (idx / RADIX[i]) as u8;
            idx %= RADIX[i];
        }
        NimState { heaps }
    }

    pub fn is_terminal(self) -> bool {
        self.heaps == [0; 4]
    }

    pub fn objects(self) -> u32 {
        self.heaps.iter().map(|&h| h as u32).sum()
    }

    /// All legal moves in heap order, then by increasing amount.
    pub fn moves(self) -> impl Iterator<Item = NimMove> {
        (0..4).flat_map(move |heap| (1..=self.heaps[heap]).map(move |take| NimMove { heap, take }))
    }

    pub fn apply(self, mv: NimMove) -> NimState {
        assert!(mv.take >= 1 && mv.take <= self.heaps[mv.heap], "illegal move {mv:?} from {self:?}");
        let mut heaps = self.heaps;
        heaps[mv.heap] -= mv.take;
        NimState { heaps }
    }

    /// Every non-terminal state, by increasing index.
    pub fn all_nonterminal() -> impl Iterator<Item = NimState> {
        (1..CONFIGURATIONS).map(NimState::from_index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NimMove {
    pub heap: usize,
    pub take: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NimValue {
    WinToMove,
    LossToMove,
}

/// Game-theoretic value of every state, indexed by [`NimState::index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NimValues {
    values: Vec<NimValue>,
}

impl NimValues {
    pub fn get(&self, state: NimState) -> NimValue {
        self.values[state.index()]
    }

    /// Non-terminal states with their values, by increasing index.
    pub fn iter(&self) -> impl Iterator<Item = (NimState, NimValue)> + '_ {
        (1..CONFIGURATIONS).map(|i| (NimState::from_index(i), self.values[i]))
    }
}

/// Retrograde analysis under the misère convention.
///
/// Every move strictly lowers the index, so a single pass in increasing
/// index order sees each successor before its predecessors. The terminal
/// position counts as won for the player to move there, since their
/// opponent just took the last object.
pub fn nim_exact_values() -> NimValues {
    let mut values = vec![NimValue::WinToMove; CONFIGURATIONS];
    for idx in 1..CONFIGURATIONS {
        let state = NimState::from_index(idx);
        let winning = state
            .moves()
            .any(|mv| values[state.apply(mv).index()] == NimValue::LossToMove);
        values[idx] = if winning { NimValue::WinToMove } else { NimValue::LossToMove };
    }
    NimValues { values }
}

/// One value per non-terminal state; lower is better for the player
/// moving into it.
#[derive(Debug, Clone, PartialEq)]
pub struct NimParams {
    pub state_values: Vec<f64>,
}

impl NimParams {
    pub fn from_slice(values: &[f64]) -> Result<Self> {
        if values.len() != STATE_COUNT {
            return Err(ArenaError::InvalidParams {
                game: "nim".into(),
                reason: format!("expected {STATE_COUNT} parameters, got {}", values.len()),
            });
        }
        Ok(NimParams { state_values: values.to_vec() })
    }

    /// Perfect play: `LossToMove → 0`, `WinToMove → 1`.
    pub fn from_exact(values: &NimValues) -> Self {
        let state_values = values
            .iter()
            .map(|(_, v)| match v {
                NimValue::LossToMove => 0.0,
                NimValue::WinToMove => 1.0,
            })
            .collect();
        NimParams { state_values }
    }

    /// Value of a successor state; moving to the terminal state loses.
    fn successor_value(&self, state: NimState) -> f64 {
        if state.is_terminal() {
            f64::INFINITY
        } else {
            self.state_values[state.index() - 1]
        }
    }
}

/// Move to the successor with the smallest value, ties to the smaller index.
pub fn nim_choose_move(params: &NimParams, state: NimState) -> NimMove {
    assert!(!state.is_terminal(), "no move from the terminal state");
    state
        .moves()
        .map(|mv| {
            let next = state.apply(mv);
            (params.successor_value(next), next.index(), mv)
        })
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .map(|(_, _, mv)| mv)
        .expect("non-terminal state has a move")
}

/// Deterministic game from `start`. Whoever takes the last object loses.
pub fn nim_play(first: &NimParams, second: &NimParams, start: NimState) -> MatchOutcome {
    let players = [first, second];
    let mut state = start;
    let mut seat = 0usize;
    let mut moves = 0u64;
    while !state.is_terminal() {
        state = state.apply(nim_choose_move(players[seat], state));
        moves += 1;
        seat = 1 - seat;
    }
    // The player to move at the terminal position has won.
    let result = if seat == 0 { MatchResult::WinFirst } else { MatchResult::WinSecond };
    MatchOutcome::new(result, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn indexing_is_a_bijection_onto_383_states() {
        let states: Vec<NimState> = NimState::all_nonterminal().collect();
        assert_eq!(states.len(), 383);
        for (i, s) in states.iter().enumerate() {
            assert_eq!(s.index(), i + 1);
            assert!(NimState::new(s.heaps).is_some());
        }
        assert_eq!(NimState::INITIAL.index(), 383);
        assert!(NimState::new([2, 0, 0, 0]).is_none());
    }

    #[test]
    fn misere_base_cases() {
        let v = nim_exact_values();
        assert_eq!(v.get(NimState { heaps: [1, 0, 0, 0] }), NimValue::LossToMove);
        assert_eq!(v.get(NimState { heaps: [1, 1, 0, 0] }), NimValue::WinToMove);
        assert_eq!(v.get(NimState { heaps: [1, 1, 1, 0] }), NimValue::LossToMove);
        assert_eq!(v.get(NimState { heaps: [0, 3, 0, 0] }), NimValue::WinToMove);
    }

    // Independent check: memoized minimax on plain heap tuples, scoring the
    // "took the last object" move as an immediate loss.
    fn minimax(heaps: [u8; 4], memo: &mut HashMap<[u8; 4], bool>) -> bool {
        if let Some(&w) = memo.get(&heaps) {
            return w;
        }
        let mut win = false;
        'outer: for h in 0..4 {
            for take in 1..=heaps[h] {
                let mut next = heaps;
                next[h] -= take;
                if next.iter().all(|&x| x == 0) {
                    continue;
                }
                if !minimax(next, memo) {
                    win = true;
                    break 'outer;
                }
            }
        }
        memo.insert(heaps, win);
        win
    }

    // Bouton's theorem, misère form.
    fn misere_formula(heaps: [u8; 4]) -> bool {
        let nim_sum = heaps.iter().fold(0, |acc, &h| acc ^ h);
        if heaps.iter().all(|&h| h <= 1) {
            heaps.iter().filter(|&&h| h == 1).count() % 2 == 0
        } else {
            nim_sum != 0
        }
    }

    #[test]
    fn retrograde_matches_minimax_and_formula() {
        let values = nim_exact_values();
        let mut memo = HashMap::new();
        for (state, value) in values.iter() {
            let win = value == NimValue::WinToMove;
            assert_eq!(win, minimax(state.heaps, &mut memo), "{state:?}");
            assert_eq!(win, misere_formula(state.heaps), "{state:?}");
        }
    }

    #[test]
    fn initial_position_is_lost_for_the_mover() {
        assert_eq!(nim_exact_values().get(NimState::INITIAL), NimValue::LossToMove);
    }

    #[test]
    fn zero_params_pick_smallest_successor() {
        let zeros = NimParams::from_slice(&[0.0; STATE_COUNT]).unwrap();
        for state in NimState::all_nonterminal() {
            let mv = nim_choose_move(&zeros, state);
            let chosen = state.apply(mv);
            let best = state
                .moves()
                .map(|m| state.apply(m))
                .filter(|s| !s.is_terminal())
                .map(|s| s.index())
                .min();
            match best {
                Some(b) => assert_eq!(chosen.index(), b),
                None => assert!(chosen.is_terminal()),
            }
        }
    }

    #[test]
    fn increasing_params_are_deterministic() {
        let p: Vec<f64> = (0..STATE_COUNT).map(|i| i as f64).collect();
        let p = NimParams::from_slice(&p).unwrap();
        for state in NimState::all_nonterminal() {
            assert_eq!(nim_choose_move(&p, state), nim_choose_move(&p, state));
        }
        assert_eq!(nim_play(&p, &p, NimState::INITIAL), nim_play(&p, &p, NimState::INITIAL));
    }

    #[test]
    fn moves_are_legal() {
        for state in NimState::all_nonterminal() {
            for mv in state.moves() {
                assert!(mv.take >= 1 && mv.take <= state.heaps[mv.heap]);
                assert!(state.apply(mv).index() < state.index());
            }
        }
    }

    #[test]
    fn exact_player_wins_from_every_winning_state() {
        let values = nim_exact_values();
        let exact = NimParams::from_exact(&values);
        let zeros = NimParams::from_slice(&[0.0; STATE_COUNT]).unwrap();
        let ramp: Vec<f64> = (0..STATE_COUNT).map(|i| -(i as f64)).collect();
        let ramp = NimParams::from_slice(&ramp).unwrap();
        for (state, value) in values.iter() {
            if value == NimValue::WinToMove {
                assert_eq!(nim_play(&exact, &zeros, state).result, MatchResult::WinFirst);
                assert_eq!(nim_play(&exact, &ramp, state).result, MatchResult::WinFirst);
            } else {
                assert_eq!(nim_play(&zeros, &exact, state).result, MatchResult::WinSecond);
            }
        }
    }

    #[test]
    fn taking_the_last_object_loses() {
        let exact = NimParams::from_exact(&nim_exact_values());
        let out = nim_play(&exact, &exact, NimState { heaps: [1, 0, 0, 0] });
        assert_eq!(out.result, MatchResult::WinSecond);
        assert_eq!(out.moves_played, 1);
    }
}
