//! Line-based strategy files.
//!
//! ```text
//! po-arena-strategy v1
//! game: batawaf
//! params: -2.0000000000000000e1 -2.0000000000000000e1 2.0000000000000000e1
//! meta.method: iterative
//! ```

use po_arena::{ArenaError, GameId, ParamVector};
use std::fmt::Write as _;
use thiserror::Error;

pub const MAGIC: &str = "po-arena-strategy v1";

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Arena(#[from] ArenaError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyFile {
    pub params: ParamVector,
    /// Ordered `(key, value)` pairs, written as `meta.<key>: <value>`.
    pub metadata: Vec<(String, String)>,
}

/// Shortest text that parses back to the same bits: 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn valid_key(key: &str) -> bool {
    !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

impl StrategyFile {
    pub fn new(params: ParamVector) -> Self {
        StrategyFile { params, metadata: Vec::new() }
    }

    pub fn game(&self) -> GameId {
        self.params.game()
    }

    /// Adds or replaces a metadata entry. Newlines in the value become spaces.
    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        assert!(valid_key(key), "invalid metadata key `{key}`");
        let value: String = value.into().replace(['\n', '\r'], " ").trim().to_string();
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.metadata.push((key.to_string(), value)),
        }
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(out, "game: {}", self.game());
        let params: Vec<String> = self.params.values().iter().map(|&v| format_float(v)).collect();
        let _ = writeln!(out, "params: {}", params.join(" "));
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "meta.{k}: {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let bad = |line: usize, reason: &str| FormatError::Malformed { line, reason: reason.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));

        match lines.next() {
            Some((_, l)) if l.trim() == MAGIC => {}
            _ => return Err(bad(1, "missing `po-arena-strategy v1` header")),
        }
        let mut game = None;
        let mut values = None;
        let mut metadata = Vec::new();
        for (n, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| bad(n, "expected `key: value`"))?;
            let value = value.trim();
            match key.trim() {
                "game" if game.is_none() => game = Some(value.parse::<GameId>()?),
                "params" if values.is_none() => {
                    let parsed = value
                        .split_whitespace()
                        .map(|t| t.parse::<f64>().map_err(|_| bad(n, &format!("bad number `{t}`"))))
                        .collect::<Result<Vec<f64>, _>>()?;
                    values = Some(parsed);
                }
                k if k.starts_with("meta.") && valid_key(&k[5..]) => {
                    if metadata.iter().any(|(existing, _): &(String, String)| existing == &k[5..]) {
                        return Err(bad(n, "duplicate metadata key"));
                    }
                    metadata.push((k[5..].to_string(), value.to_string()));
                }
                "game" | "params" => return Err(bad(n, "repeated field")),
                other => return Err(bad(n, &format!("unknown field `{other}`"))),
            }
        }
        let game = game.ok_or_else(|| bad(0, "missing `game:` line"))?;
        let values = values.ok_or_else(|| bad(0, "missing `params:` line"))?;
        Ok(StrategyFile { params: ParamVector::new(game, values)?, metadata })
    }
}
