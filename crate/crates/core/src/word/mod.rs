//! The right-infinite word `v∞` built from `v_1 = x`, `v_{n+1} = v_n y^{q_n} v_n`.

mod automaton;
mod infinite;
mod runword;
mod sequence;

use thiserror::Error;

pub use automaton::SuffixAutomaton;
pub use infinite::{InfiniteWord, WordLimits};
pub use runword::RunWord;
pub use sequence::RunSequence;

use crate::extnat::ExtendedNatParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    X = 0,
    Y = 1,
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'x' => Some(Letter::X),
            'y' => Some(Letter::Y),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// Renders a materialized word as plain letters, e.g. `xyyx`.
pub fn letters_to_string(word: &[Letter]) -> String {
    word.iter().map(|l| l.as_char()).collect()
}

/// Parses plain letters (`xyyx`); anything else is rejected.
pub fn letters_from_str(text: &str) -> Option<Vec<Letter>> {
    text.chars().map(Letter::from_char).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("level must be at least 1, got {0}")]
    InvalidLevel(u64),
    #[error("invalid run sequence: {0}")]
    InvalidSequence(String),
    #[error("run sequence has no term {0}; the explicit list is too short for this query")]
    SequenceExhausted(u32),
    #[error("v_{level} has {runs} runs, above the run-count limit {limit}")]
    RunLimit { level: u32, runs: u64, limit: u64 },
    #[error("materialization of {needed} letters exceeds the budget of {budget}")]
    Materialization { needed: u64, budget: u64 },
    #[error("cannot parse word at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl From<ExtendedNatParseError> for WordError {
    fn from(e: ExtendedNatParseError) -> Self {
        let pos = match e {
            ExtendedNatParseError::Expected(p) | ExtendedNatParseError::Trailing(p) => p,
        };
        WordError::Parse {
            pos,
            msg: e.to_string(),
        }
    }
}
