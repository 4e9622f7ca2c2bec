//! One event per line: `<event-type> <key>=<value> ...`.

use crate::strategy_file::{format_float, FormatError};
use po_arena::optimizers::{Event, RunLog};
use po_arena::races::{HaltReason, RaceWinner};
use std::collections::HashMap;
use std::fmt::Write as _;

fn winner_name(w: RaceWinner) -> &'static str {
    match w {
        RaceWinner::A => "a",
        RaceWinner::B => "b",
        RaceWinner::Incumbent => "incumbent",
    }
}

fn halt_name(h: HaltReason) -> &'static str {
    match h {
        HaltReason::Separated => "separated",
        HaltReason::PrecisionReached => "precision",
        HaltReason::BudgetExhausted => "budget",
    }
}

pub fn render_event(e: &Event) -> String {
    let mut s = String::new();
    let _ = match e {
        Event::Mutation { iteration, sigma } => write!(s, "mutation iteration={iteration} sigma={}", format_float(*sigma)),
        Event::OpponentDraw { iteration, index, population } => {
            write!(s, "opponent-draw iteration={iteration} index={index} population={population}")
        }
        Event::Race { iteration, opponent, winner, halt, games, mean_challenger, mean_opponent } => write!(
            s,
            "race iteration={iteration} opponent={} winner={} halt={} games={games} mean_challenger={} mean_opponent={}",
            opponent.map_or_else(|| "-".to_string(), |o| o.to_string()),
            winner_name(*winner),
            halt_name(*halt),
            format_float(*mean_challenger),
            format_float(*mean_opponent),
        ),
        Event::Accept { iteration, population } => write!(s, "accept iteration={iteration} population={population}"),
        Event::Reject { iteration } => write!(s, "reject iteration={iteration}"),
        Event::SigmaUpdate { iteration, sigma } => write!(s, "sigma iteration={iteration} sigma={}", format_float(*sigma)),
        Event::SeedRound { k, matches, best, best_mean } => {
            write!(s, "seed-round k={k} matches={matches} best={best} best_mean={}", format_float(*best_mean))
        }
    };
    s
}

pub fn render_log(log: &RunLog) -> String {
    let mut out = String::new();
    for e in &log.events {
        out.push_str(&render_event(e));
        out.push('\n');
    }
    out
}

struct Fields<'a> {
    line: usize,
    map: HashMap<&'a str, &'a str>,
}

impl Fields<'_> {
    fn err(&self, reason: String) -> FormatError {
        FormatError::Malformed { line: self.line, reason }
    }

    fn raw(&self, key: &str) -> Result<&str, FormatError> {
        self.map.get(key).copied().ok_or_else(|| self.err(format!("missing `{key}`")))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T, FormatError> {
        let v = self.raw(key)?;
        v.parse().map_err(|_| self.err(format!("bad value `{v}` for `{key}`")))
    }
}

pub fn parse_log(text: &str) -> Result<RunLog, FormatError> {
    let mut log = RunLog::default();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let kind = parts.next().unwrap_or_default();
        let mut map = HashMap::new();
        for p in parts {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| FormatError::Malformed { line: i + 1, reason: format!("expected key=value, got `{p}`") })?;
            map.insert(k, v);
        }
        let f = Fields { line: i + 1, map };
        let event = match kind {
            "mutation" => Event::Mutation { iteration: f.get("iteration")?, sigma: f.get("sigma")? },
            "opponent-draw" => Event::OpponentDraw {
                iteration: f.get("iteration")?,
                index: f.get("index")?,
                population: f.get("population")?,
            },
            "race" => Event::Race {
                iteration: f.get("iteration")?,
                opponent: match f.raw("opponent")? {
                    "-" => None,
                    _ => Some(f.get("opponent")?),
                },
                winner: match f.raw("winner")? {
                    "a" => RaceWinner::A,
                    "b" => RaceWinner::B,
                    "incumbent" => RaceWinner::Incumbent,
                    w => return Err(f.err(format!("unknown winner `{w}`"))),
                },
                halt: match f.raw("halt")? {
                    "separated" => HaltReason::Separated,
                    "precision" => HaltReason::PrecisionReached,
                    "budget" => HaltReason::BudgetExhausted,
                    h => return Err(f.err(format!("unknown halt reason `{h}`"))),
                },
                games: f.get("games")?,
                mean_challenger: f.get("mean_challenger")?,
                mean_opponent: f.get("mean_opponent")?,
            },
            "accept" => Event::Accept { iteration: f.get("iteration")?, population: f.get("population")? },
            "reject" => Event::Reject { iteration: f.get("iteration")? },
            "sigma" => Event::SigmaUpdate { iteration: f.get("iteration")?, sigma: f.get("sigma")? },
            "seed-round" => Event::SeedRound {
                k: f.get("k")?,
                matches: f.get("matches")?,
                best: f.get("best")?,
                best_mean: f.get("best_mean")?,
            },
            other => return Err(f.err(format!("unknown event `{other}`"))),
        };
        log.push(event);
    }
    Ok(log)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_event_round_trips() {
        let mut log = RunLog::default();
        log.push(Event::Mutation { iteration: 1, sigma: 1.0 });
        log.push(Event::OpponentDraw { iteration: 1, index: 0, population: 1 });
        log.push(Event::Race {
            iteration: 1,
            opponent: Some(0),
            winner: RaceWinner::A,
            halt: HaltReason::Separated,
            games: 81,
            mean_challenger: 0.7,
            mean_opponent: 0.3,
        });
        log.push(Event::Race {
            iteration: 2,
            opponent: None,
            winner: RaceWinner::Incumbent,
            halt: HaltReason::BudgetExhausted,
            games: 3,
            mean_challenger: 1.0 / 3.0,
            mean_opponent: 0.5,
        });
        log.push(Event::Accept { iteration: 1, population: 2 });
        log.push(Event::Reject { iteration: 2 });
        log.push(Event::SigmaUpdate { iteration: 2, sigma: 0.84 });
        log.push(Event::SeedRound { k: 16, matches: 120, best: 3, best_mean: 0.625 });
        let text = render_log(&log);
        assert_eq!(text.lines().count(), 8);
        assert_eq!(parse_log(&text).unwrap(), log);
    }

    #[test]
    fn race_line_layout() {
        let e = Event::Race {
            iteration: 4,
            opponent: None,
            winner: RaceWinner::B,
            halt: HaltReason::PrecisionReached,
            games: 10,
            mean_challenger: 0.5,
            mean_opponent: 0.25,
        };
        assert_eq!(
            render_event(&e),
            "race iteration=4 opponent=- winner=b halt=precision games=10 \
             mean_challenger=5.0000000000000000e-1 mean_opponent=2.5000000000000000e-1"
        );
    }

    #[test]
    fn rejects_unknown_lines() {
        assert!(parse_log("explode now=1\n").is_err());
        assert!(parse_log("reject\n").is_err());
        assert!(parse_log("reject iteration=x\n").is_err());
    }
}
