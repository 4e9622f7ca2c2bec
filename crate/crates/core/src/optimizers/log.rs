use crate::races::{HaltReason, RaceResult, RaceWinner};

/// One entry of an optimizer's append-only history.
#[derive(Debug, Clone, PartialEq)]
pub enum Event {
    /// A challenger was drawn at step size `sigma`.
    Mutation { iteration: u64, sigma: f64 },
    /// The approximate coevolution picked hall-of-fame member `index`.
    OpponentDraw { iteration: u64, index: usize, population: usize },
    /// A race finished. `opponent` is the hall-of-fame index raced against,
    /// when there is one. Winner `A` is always the challenger.
    Race {
        iteration: u64,
        opponent: Option<usize>,
        winner: RaceWinner,
        halt: HaltReason,
        games: u64,
        mean_challenger: f64,
        mean_opponent: f64,
    },
    /// The challenger replaced the incumbent.
    Accept { iteration: u64, population: usize },
    Reject { iteration: u64 },
    SigmaUpdate { iteration: u64, sigma: f64 },
    /// One seed-method round-robin over `k` individuals.
    SeedRound { k: usize, matches: u64, best: usize, best_mean: f64 },
}

impl Event {
    pub(crate) fn race(iteration: u64, opponent: Option<usize>, result: &RaceResult, games: u64) -> Self {
        Event::Race {
            iteration,
            opponent,
            winner: result.winner,
            halt: result.halt_reason,
            games,
            mean_challenger: result.mean_a,
            mean_opponent: result.mean_b,
        }
    }

    /// Games this event accounts for.
    pub fn games(&self) -> u64 {
        match self {
            Event::Race { games, .. } => *games,
            Event::SeedRound { matches, .. } => *matches,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunLog {
    pub events: Vec<Event>,
}

impl RunLog {
    pub fn push(&mut self, event: Event) {
        self.events.push(event);
    }

    pub fn total_games(&self) -> u64 {
        self.events.iter().map(Event::games).sum()
    }

    pub fn acceptances(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::Accept { .. })).count()
    }

    pub fn races(&self) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(|e| matches!(e, Event::Race { .. }))
    }
}
