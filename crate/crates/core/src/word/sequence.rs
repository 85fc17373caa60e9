use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::WordError;
use crate::extnat::ExtendedNat;

/// The run-length sequence `n ↦ q_n` (n ≥ 1) that separates the copies of
/// `v_n` in `v_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RunSequence {
    /// `p_n = 2^2^2^2^n`.
    Tower,
    /// `q_n = base^n`.
    Geometric { base: u32 },
    /// A finite, strictly increasing list `q_1, q_2, …`.
    Explicit(Vec<BigUint>),
}

impl RunSequence {
    pub fn geometric(base: u32) -> Result<Self, WordError> {
        if base < 2 {
            return Err(WordError::InvalidSequence(format!(
                "geometric base must be at least 2, got {base}"
            )));
        }
        Ok(RunSequence::Geometric { base })
    }

    pub fn explicit(values: Vec<BigUint>) -> Result<Self, WordError> {
        if values.is_empty() {
            return Err(WordError::InvalidSequence("explicit list is empty".into()));
        }
        if values[0].is_zero() {
            return Err(WordError::InvalidSequence("run lengths must be at least 1".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(WordError::InvalidSequence(
                "explicit list must be strictly increasing".into(),
            ));
        }
        Ok(RunSequence::Explicit(values))
    }

    /// `q_n` for `n ≥ 1`.
    pub fn term(&self, n: u32) -> Result<ExtendedNat, WordError> {
        if n == 0 {
            return Err(WordError::InvalidLevel(0));
        }
        match self {
            RunSequence::Tower => Ok(ExtendedNat::tower(4, BigUint::from(n))),
            RunSequence::Geometric { base } => Ok(ExtendedNat::from_biguint(
                BigUint::from(*base).pow(n),
            )),
            RunSequence::Explicit(values) => values
                .get(n as usize - 1)
                .cloned()
                .map(ExtendedNat::from_biguint)
                .ok_or(WordError::SequenceExhausted(n)),
        }
    }

    /// Number of available terms, `None` when unbounded.
    pub fn term_count(&self) -> Option<u32> {
        match self {
            RunSequence::Explicit(values) => Some(values.len() as u32),
            _ => None,
        }
    }
}

impl FromStr for RunSequence {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "tower" {
            return Ok(RunSequence::Tower);
        }
        if let Some(base) = s.strip_prefix("geo:") {
            let base = base
                .parse()
                .map_err(|_| WordError::InvalidSequence(format!("bad geometric base {base:?}")))?;
            return RunSequence::geometric(base);
        }
        if let Some(list) = s.strip_prefix("list:") {
            let values = list
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<BigUint>()
                        .map_err(|_| WordError::InvalidSequence(format!("bad list entry {v:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return RunSequence::explicit(values);
        }
        Err(WordError::InvalidSequence(format!(
            "expected tower, geo:<base> or list:<a,b,…>, got {s:?}"
        )))
    }
}

impl fmt::Display for RunSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunSequence::Tower => f.write_str("tower"),
            RunSequence::Geometric { base } => write!(f, "geo:{base}"),
            RunSequence::Explicit(values) => {
                f.write_str("list:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl TryFrom<String> for RunSequence {
    type Error = WordError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<RunSequence> for String {
    fn from(s: RunSequence) -> Self {
        s.to_string()
    }
}

impl Default for RunSequence {
    fn default() -> Self {
        RunSequence::Geometric { base: 2 }
    }
}
