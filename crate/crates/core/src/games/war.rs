//! War and Batawaf.
//!
//! Both games share one engine and differ only in deck composition. The
//! only decision a player ever makes is the order in which won cards go
//! to the bottom of their deck; [`WarOrderParams`] parametrizes that
//! choice with three or four reals.

use crate::arena::{MatchOutcome, MatchResult};
use crate::error::{ArenaError, Result};
use crate::rng::{split_seed, GameRng, Seed};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::VecDeque;

/// Moves after which an unfinished game is scored as a draw.
pub const MOVE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WarVariant {
    /// 52 cards: 13 ranks, 4 copies each.
    War,
    /// 36 cards: 6 ranks, 6 copies each.
    Batawaf,
}

impl WarVariant {
    pub fn ranks(self) -> u8 {
        match self {
            WarVariant::War => 13,
            WarVariant::Batawaf => 6,
        }
    }

    pub fn copies(self) -> usize {
        match self {
            WarVariant::War => 4,
            WarVariant::Batawaf => 6,
        }
    }

    pub fn deck_size(self) -> usize {
        self.ranks() as usize * self.copies()
    }

    fn full_deck(self) -> Vec<u8> {
        (0..self.ranks())
            .flat_map(|r| std::iter::repeat_n(r, self.copies()))
            .collect()
    }
}

/// Which base permutation σ was selected for one batch of won cards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseOrder {
    Uniform,
    Identity,
    Reversal,
}

/// Card-ordering parameters `(A, B, C[, D])`.
///
/// The weights `a = exp(A)`, `b = exp(B)`, `c = exp(C)` select a uniform
/// shuffle, the ascending order and the descending order respectively.
/// The selection probabilities are a softmax of `(A, B, C)`, which is the
/// same quantity as `a/(a+b+c)` but stays finite when the exponentials
/// would overflow. In the four-parameter form `d = exp(D)` keys a fixed
/// pseudo-random permutation applied on top of σ.
#[derive(Debug, Clone, PartialEq)]
pub struct WarOrderParams {
    probabilities: [f64; 3],
    permutation_key: Option<u64>,
}

impl WarOrderParams {
    pub fn three(a: f64, b: f64, c: f64) -> Self {
        WarOrderParams {
            probabilities: softmax3([a, b, c]),
            permutation_key: None,
        }
    }

    pub fn four(a: f64, b: f64, c: f64, d: f64) -> Self {
        WarOrderParams {
            probabilities: softmax3([a, b, c]),
            permutation_key: Some(permutation_key(d)),
        }
    }

    /// Build from a 3- or 4-entry parameter slice.
    pub fn from_slice(values: &[f64]) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(ArenaError::InvalidParams {
                game: "war".into(),
                reason: "non-finite entry".into(),
            });
        }
        match *values {
            [a, b, c] => Ok(Self::three(a, b, c)),
            [a, b, c, d] => Ok(Self::four(a, b, c, d)),
            _ => Err(ArenaError::InvalidParams {
                game: "war".into(),
                reason: format!("expected 3 or 4 parameters, got {}", values.len()),
            }),
        }
    }

    /// Best card first.
    pub fn descending() -> Self {
        Self::three(-20.0, -20.0, 20.0)
    }

    /// Weakest card first.
    pub fn ascending() -> Self {
        Self::three(-20.0, 20.0, -20.0)
    }

    /// Won cards are shuffled uniformly.
    pub fn naive() -> Self {
        Self::three(20.0, -20.0, -20.0)
    }

    /// Probabilities of `[Uniform, Identity, Reversal]`.
    pub fn probabilities(&self) -> [f64; 3] {
        self.probabilities
    }

    pub fn permutation_key(&self) -> Option<u64> {
        self.permutation_key
    }

    fn choose_base<R: Rng + ?Sized>(&self, rng: &mut R) -> BaseOrder {
        let u: f64 = rng.random();
        let [p_uniform, p_identity, _] = self.probabilities;
        if u < p_uniform {
            BaseOrder::Uniform
        } else if u < p_uniform + p_identity {
            BaseOrder::Identity
        } else {
            BaseOrder::Reversal
        }
    }
}

fn softmax3(logits: [f64; 3]) -> [f64; 3] {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e = logits.map(|l| (l - max).exp());
    let total: f64 = e.iter().sum();
    e.map(|x| x / total)
}

/// `floor(exp(d_log) * 2^32) mod 2^64`, saturating when `exp` overflows.
fn permutation_key(d_log: f64) -> u64 {
    let scaled = (d_log.exp() * 4_294_967_296.0).floor();
    if !scaled.is_finite() {
        return u64::MAX;
    }
    if scaled < 18_446_744_073_709_551_616.0 {
        return scaled as u64;
    }
    // scaled is an integer m * 2^e with a 53-bit mantissa m; reduce exactly.
    let bits = scaled.to_bits();
    let exponent = ((bits >> 52) & 0x7ff) as i64 - 1075;
    let mantissa = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
    if exponent >= 64 {
        0
    } else {
        mantissa.wrapping_shl(exponent as u32)
    }
}

/// Pseudo-random permutation of `0..k` keyed on the fourth parameter.
fn keyed_permutation(key: u64, k: usize) -> Vec<usize> {
    let mut rng = split_seed(Seed(key), k as u64).rng();
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(&mut rng);
    perm
}

fn base_permutation<R: Rng + ?Sized>(base: BaseOrder, k: usize, rng: &mut R) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..k).collect();
    match base {
        BaseOrder::Uniform => sigma.shuffle(rng),
        BaseOrder::Identity => {}
        BaseOrder::Reversal => sigma.reverse(),
    }
    sigma
}

/// Order in which `k` won cards are placed at the bottom of the deck.
///
/// Returns a 0-based permutation `out` of `0..k`: the `i`-th card put
/// under the deck is the `out[i]`-th smallest of the won cards. This is
/// `π ∘ σ` applied to the ascending arrangement.
pub fn war_order_won_cards<R: Rng + ?Sized>(
    params: &WarOrderParams,
    k: usize,
    rng: &mut R,
) -> Vec<usize> {
    let sigma = base_permutation(params.choose_base(rng), k, rng);
    match params.permutation_key {
        None => sigma,
        Some(key) => {
            let pi = keyed_permutation(key, k);
            sigma.iter().map(|&s| pi[s]).collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarGameState {
    pub deck_first: VecDeque<u8>,
    pub deck_second: VecDeque<u8>,
    pub table_pile: Vec<u8>,
    pub moves: u64,
}

impl WarGameState {
    pub fn total_cards(&self) -> usize {
        self.deck_first.len() + self.deck_second.len() + self.table_pile.len()
    }
}

/// A War or Batawaf match that can be advanced one move at a time.
pub struct WarGame<'a> {
    variant: WarVariant,
    orders: [&'a WarOrderParams; 2],
    state: WarGameState,
    rng: GameRng,
    perm_cache: [Vec<Option<Vec<usize>>>; 2],
    move_cap: u64,
    result: Option<MatchResult>,
}

impl<'a> WarGame<'a> {
    pub fn new(
        variant: WarVariant,
        first: &'a WarOrderParams,
        second: &'a WarOrderParams,
        seed: Seed,
    ) -> Self {
        Self::with_move_cap(variant, first, second, seed, MOVE_CAP)
    }

    pub fn with_move_cap(
        variant: WarVariant,
        first: &'a WarOrderParams,
        second: &'a WarOrderParams,
        seed: Seed,
        move_cap: u64,
    ) -> Self {
        let mut rng = seed.rng();
        let mut deck = variant.full_deck();
        deck.shuffle(&mut rng);
        let half = deck.len() / 2;
        let deck_second: VecDeque<u8> = deck.split_off(half).into();
        let deck_first: VecDeque<u8> = deck.into();
        let size = variant.deck_size() + 1;
        WarGame {
            variant,
            orders: [first, second],
            state: WarGameState {
                deck_first,
                deck_second,
                table_pile: Vec::with_capacity(variant.deck_size()),
                moves: 0,
            },
            rng,
            perm_cache: [vec![None; size], vec![None; size]],
            move_cap,
            result: None,
        }
    }

    pub fn variant(&self) -> WarVariant {
        self.variant
    }

    pub fn state(&self) -> &WarGameState {
        &self.state
    }

    pub fn result(&self) -> Option<MatchResult> {
        self.result
    }

    /// Play one reveal. Returns the result once the game is over.
    pub fn step(&mut self) -> Option<MatchResult> {
        if self.result.is_some() {
            return self.result;
        }
        let st = &mut self.state;
        match (st.deck_first.is_empty(), st.deck_second.is_empty()) {
            (true, true) => return self.finish(MatchResult::Draw),
            (true, false) => return self.finish(MatchResult::WinSecond),
            (false, true) => return self.finish(MatchResult::WinFirst),
            _ => {}
        }
        if st.moves >= self.move_cap {
            return self.finish(MatchResult::Draw);
        }
        let c1 = st.deck_first.pop_front().unwrap();
        let c2 = st.deck_second.pop_front().unwrap();
        st.table_pile.push(c1);
        st.table_pile.push(c2);
        st.moves += 1;
        if c1 > c2 {
            self.collect(0);
        } else if c2 > c1 {
            self.collect(1);
        } else {
            // Tie: each player needs one face-down and one face-up card.
            let short_first = st.deck_first.len() < 2;
            let short_second = st.deck_second.len() < 2;
            match (short_first, short_second) {
                (true, true) => return self.finish(MatchResult::Draw),
                (true, false) => return self.finish(MatchResult::WinSecond),
                (false, true) => return self.finish(MatchResult::WinFirst),
                _ => {
                    let d1 = st.deck_first.pop_front().unwrap();
                    let d2 = st.deck_second.pop_front().unwrap();
                    st.table_pile.push(d1);
                    st.table_pile.push(d2);
                }
            }
        }
        None
    }

    /// Run to completion.
    pub fn run(mut self) -> MatchOutcome {
        loop {
            if let Some(result) = self.step() {
                return MatchOutcome {
                    result,
                    moves_played: self.state.moves,
                };
            }
        }
    }

    fn finish(&mut self, result: MatchResult) -> Option<MatchResult> {
        self.result = Some(result);
        self.result
    }

    fn collect(&mut self, seat: usize) {
        let params = self.orders[seat];
        let st = &mut self.state;
        let k = st.table_pile.len();
        st.table_pile.sort_unstable();
        let base = params.choose_base(&mut self.rng);
        let deck = if seat == 0 {
            &mut st.deck_first
        } else {
            &mut st.deck_second
        };
        match params.permutation_key {
            None => match base {
                BaseOrder::Identity => deck.extend(st.table_pile.iter().copied()),
                BaseOrder::Reversal => deck.extend(st.table_pile.iter().rev().copied()),
                BaseOrder::Uniform => {
                    st.table_pile.shuffle(&mut self.rng);
                    deck.extend(st.table_pile.iter().copied());
                }
            },
            Some(key) => {
                let sigma = base_permutation(base, k, &mut self.rng);
                let pi = self.perm_cache[seat][k].get_or_insert_with(|| keyed_permutation(key, k));
                deck.extend(sigma.iter().map(|&s| st.table_pile[pi[s]]));
            }
        }
        st.table_pile.clear();
    }
}

pub fn war_play(
    variant: WarVariant,
    first: &WarOrderParams,
    second: &WarOrderParams,
    seed: Seed,
) -> MatchOutcome {
    WarGame::new(variant, first, second, seed).run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_permutation(p: &[usize]) -> bool {
        let mut seen = vec![false; p.len()];
        p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
    }

    #[test]
    fn dominant_identity_keeps_ascending() {
        let params = WarOrderParams::three(-20.0, 20.0, -20.0);
        assert!(params.probabilities()[1] >= 1.0 - 1e-15);
        let mut rng = Seed(3).rng();
        for _ in 0..100 {
            assert_eq!(war_order_won_cards(&params, 4, &mut rng), vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn dominant_reversal_gives_descending() {
        let params = WarOrderParams::three(-20.0, -20.0, 20.0);
        let mut rng = Seed(3).rng();
        assert_eq!(war_order_won_cards(&params, 4, &mut rng), vec![3, 2, 1, 0]);
    }

    #[test]
    fn uniform_choice_hits_every_permutation_equally() {
        let params = WarOrderParams::three(20.0, -20.0, -20.0);
        let mut rng = Seed(11).rng();
        let mut counts = std::collections::HashMap::new();
        let n = 60_000;
        for _ in 0..n {
            *counts.entry(war_order_won_cards(&params, 3, &mut rng)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        for &c in counts.values() {
            let f = c as f64 / n as f64;
            assert!((f - 1.0 / 6.0).abs() < 0.01, "frequency {f}");
        }
        // Pearson chi-square with 5 degrees of freedom, 0.1% critical value.
        let expected = n as f64 / 6.0;
        let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 20.52, "chi2 = {chi2}");
    }

    #[test]
    fn order_is_always_a_permutation() {
        let mut rng = Seed(5).rng();
        for (i, abc) in [[0.0, 0.0, 0.0], [1.0, -3.0, 2.0], [700.0, 800.0, -900.0]].iter().enumerate() {
            let three = WarOrderParams::three(abc[0], abc[1], abc[2]);
            let four = WarOrderParams::four(abc[0], abc[1], abc[2], i as f64 - 1.0);
            for k in 1..=52 {
                assert!(is_permutation(&war_order_won_cards(&three, k, &mut rng)));
                assert!(is_permutation(&war_order_won_cards(&four, k, &mut rng)));
            }
        }
    }

    #[test]
    fn huge_weights_stay_finite() {
        let p = WarOrderParams::three(800.0, 790.0, -1e6);
        assert!(p.probabilities().iter().all(|x| x.is_finite()));
        assert!((p.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let _ = WarOrderParams::four(0.0, 0.0, 0.0, 800.0);
        let _ = WarOrderParams::four(0.0, 0.0, 0.0, 60.0);
    }

    #[test]
    fn keyed_permutation_depends_on_d() {
        let a = WarOrderParams::four(-20.0, 20.0, -20.0, 0.0);
        let b = WarOrderParams::four(-20.0, 20.0, -20.0, 0.5);
        assert_ne!(a.permutation_key(), b.permutation_key());
        let mut rng = Seed(1).rng();
        let pa = war_order_won_cards(&a, 10, &mut rng);
        assert_eq!(pa, war_order_won_cards(&a, 10, &mut rng));
        assert_ne!(pa, war_order_won_cards(&b, 10, &mut rng));
    }

    #[test]
    fn cards_are_conserved_through_a_traced_match() {
        let (d, n) = (WarOrderParams::descending(), WarOrderParams::naive());
        for variant in [WarVariant::War, WarVariant::Batawaf] {
            for s in 0..20 {
                let mut game = WarGame::new(variant, &d, &n, Seed(s));
                let total = variant.deck_size();
                assert_eq!(game.state().total_cards(), total);
                let result = loop {
                    let r = game.step();
                    assert_eq!(game.state().total_cards(), total);
                    if let Some(r) = r {
                        break r;
                    }
                };
                let st = game.state();
                assert!(st.moves <= MOVE_CAP);
                // The loser either ran out or could not pay for a war.
                match result {
                    MatchResult::WinFirst => assert!(st.deck_second.len() < 2),
                    MatchResult::WinSecond => assert!(st.deck_first.len() < 2),
                    MatchResult::Draw => {
                        assert!(st.moves == MOVE_CAP || (st.deck_first.len() < 2 && st.deck_second.len() < 2))
                    }
                }
            }
        }
    }

    #[test]
    fn move_cap_forces_draw() {
        let d = WarOrderParams::descending();
        let out = WarGame::with_move_cap(WarVariant::War, &d, &d, Seed(9), 3).run();
        assert_eq!(out.result, MatchResult::Draw);
        assert_eq!(out.moves_played, 3);
    }

    #[test]
    fn rejects_wrong_arity() {
        assert!(WarOrderParams::from_slice(&[1.0, 2.0]).is_err());
        assert!(WarOrderParams::from_slice(&[1.0, f64::NAN, 0.0]).is_err());
    }
}
