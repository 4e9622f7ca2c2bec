//! Round-robin cross-play tables.

use crate::arena::{alternating_half_points, GameId, ParamVector, WinStats};
use crate::error::{ArenaError, Result};
use crate::rng::{split_seed, Seed};
use rayon::prelude::*;
use std::fmt::Write as _;

/// Winning rates of each row strategy against each column strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossTable {
    pub labels: Vec<String>,
    pub cells: Vec<Vec<WinStats>>,
}

impl CrossTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn mean(&self, row: usize, col: usize) -> f64 {
        self.cells[row][col].mean
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
}

/// Play every pair of strategies `games_per_pair` times with alternating
/// seats. Both `(i, j)` and `(j, i)` come from the same games.
pub fn round_robin(
    game: GameId,
    entrants: &[(String, ParamVector)],
    games_per_pair: u64,
    seed: Seed,
) -> Result<CrossTable> {
    if entrants.len() < 2 {
        return Err(ArenaError::InvalidConfig("a round-robin needs at least two strategies".into()));
    }
    if games_per_pair == 0 {
        return Err(ArenaError::InvalidConfig("games_per_pair must be positive".into()));
    }
    for (_, p) in entrants {
        ParamVector::new(game, p.values().to_vec())?;
        if p.game() != game {
            return Err(ArenaError::GameMismatch {
                expected: game.to_string(),
                found: p.game().to_string(),
            });
        }
    }
    let n = entrants.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut cells = vec![vec![WinStats::even(games_per_pair); n]; n];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let pair_seed = split_seed(seed, p as u64);
        let (a, b) = (entrants[i].1.values(), entrants[j].1.values());
        let half: u64 = (0..games_per_pair)
            .into_par_iter()
            .map(|g| alternating_half_points(game, a, b, pair_seed, g))
            .sum();
        let stats = WinStats::from_half_points(half, games_per_pair);
        cells[i][j] = stats;
        cells[j][i] = stats.complement();
    }
    Ok(CrossTable {
        labels: entrants.iter().map(|(l, _)| l.clone()).collect(),
        cells,
    })
}

/// Row that scores at least 0.5 against every other row. When several
/// qualify, the one with the largest worst-case score wins, then the
/// lowest index.
pub fn dominant_strategy(table: &CrossTable) -> Option<usize> {
    let n = table.len();
    (0..n)
        .filter_map(|i| {
            let worst = (0..n)
                .filter(|&j| j != i)
                .map(|j| table.mean(i, j))
                .fold(f64::INFINITY, f64::min);
            (worst >= 0.5).then_some((i, worst))
        })
        .fold(None, |best: Option<(usize, f64)>, (i, w)| match best {
            Some((_, bw)) if bw >= w => best,
            _ => Some((i, w)),
        })
        .map(|(i, _)| i)
}

/// `x` rounded to three significant digits, trailing zeros removed.
pub fn three_significant(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (2 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_table(table: &CrossTable, format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str("strategy");
            for l in &table.labels {
                out.push(',');
                out.push_str(&csv_field(l));
            }
            out.push('\n');
            for (label, row) in table.labels.iter().zip(&table.cells) {
                out.push_str(&csv_field(label));
                for c in row {
                    let _ = write!(out, ",{:.6}", c.mean);
                }
                out.push('\n');
            }
        }
        TableFormat::Text => {
            let mut grid: Vec<Vec<String>> = Vec::with_capacity(table.len() + 1);
            let mut header = vec![String::new()];
            header.extend(table.labels.iter().map(|l| format!("vs {l}")));
            grid.push(header);
            for (label, row) in table.labels.iter().zip(&table.cells) {
                let mut line = vec![label.clone()];
                line.extend(
                    row.iter()
                        .map(|c| format!("{}(+-{})", three_significant(c.mean), three_significant(c.stderr))),
                );
                grid.push(line);
            }
            let columns = grid[0].len();
            let widths: Vec<usize> = (0..columns)
                .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
                .collect();
            for row in &grid {
                let mut line = String::new();
                for (c, cell) in row.iter().enumerate() {
                    if c > 0 {
                        line.push_str("  ");
                    }
                    let _ = write!(line, "{cell:<width$}", width = widths[c]);
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
    }
    out
}

/// Labels and mean matrix from a CSV rendering.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let bad = |m: &str| ArenaError::InvalidConfig(format!("malformed table: {m}"));
    let mut lines = text.lines();
    let header = split_csv_line(lines.next().ok_or_else(|| bad("empty input"))?);
    if header.first().map(String::as_str) != Some("strategy") {
        return Err(bad("missing `strategy` header"));
    }
    let labels: Vec<String> = header[1..].to_vec();
    let mut means = Vec::new();
    for line in lines {
        let fields = split_csv_line(line);
        if fields.len() != labels.len() + 1 {
            return Err(bad("row width does not match header"));
        }
        let row = fields[1..]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| bad(f)))
            .collect::<Result<Vec<f64>>>()?;
        means.push(row);
    }
    Ok((labels, means))
}

fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(ch) = chars.next() {
        match (ch, quoted) {
            ('"', true) if chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            ('"', _) => quoted = !quoted,
            (',', false) => fields.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    fields.push(cur);
    fields
}
