//! The algebra `B ⊆ A[G]` generated by `x s_0^{±1}, x t_0^{±1}, x u^{±1}, x, y`,
//! its growth, primeness witnesses, and central elements `a_n z_n ∈ B`.

mod ball;
mod element;
mod growth;
mod witness;

use std::sync::{Arc, RwLock};

use thiserror::Error;

pub use ball::{ball_elements, ball_sizes};
pub use element::{BGenerator, GroupRingElement, B_GENERATORS};
pub use growth::BGrowthReport;
pub use witness::{BExpression, BFactor, WitnessCertificate};

use crate::algebra::AlgebraError;
use crate::field::Field;
use crate::word::{InfiniteWord, Letter, RunWord, WordError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CentreError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{what} exceeded the budget of {limit}")]
    Budget { what: &'static str, limit: usize },
    #[error("the element must be nonzero")]
    ZeroElement,
    #[error("index {index} is outside the witness budget of {limit}")]
    IndexBudget { index: i64, limit: i64 },
    #[error("group element cannot be encoded: {0}")]
    Encoding(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentreLimits {
    /// Largest number of (word, group) pairs or words any expansion holds.
    pub pair_budget: usize,
    /// Largest group ball enumerated.
    pub ball_budget: usize,
    /// Largest `|n|` accepted by `central_witness`.
    pub index_budget: i64,
    /// Longest y-padding searched between witness words.
    pub bridge_bound: u64,
}

impl Default for CentreLimits {
    fn default() -> Self {
        CentreLimits {
            pair_budget: 8_000_000,
            ball_budget: 2_000_000,
            index_budget: 64,
            bridge_bound: 1 << 16,
        }
    }
}

/// `A[G]` over the words of `v∞`, or over all words in free-word mode.
#[derive(Debug)]
pub struct GroupRing {
    word: Option<Arc<InfiniteWord>>,
    field: Field,
    limits: CentreLimits,
    balls: RwLock<Vec<u64>>,
}

impl GroupRing {
    pub fn new(word: Arc<InfiniteWord>, field: Field) -> Self {
        GroupRing {
            word: Some(word),
            field,
            limits: CentreLimits::default(),
            balls: RwLock::new(Vec::new()),
        }
    }

    /// Control ring in which no word vanishes.
    pub fn free_words(field: Field) -> Self {
        GroupRing {
            word: None,
            field,
            limits: CentreLimits::default(),
            balls: RwLock::new(Vec::new()),
        }
    }

    pub fn with_limits(mut self, limits: CentreLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn limits(&self) -> CentreLimits {
        self.limits
    }

    pub fn word(&self) -> Option<&Arc<InfiniteWord>> {
        self.word.as_ref()
    }

    pub fn is_nonzero_word(&self, w: &RunWord) -> Result<bool, CentreError> {
        match &self.word {
            None => Ok(true),
            Some(v) => Ok(v.is_factor(w)?),
        }
    }

    pub fn is_nonzero_letters(&self, w: &[Letter]) -> Result<bool, CentreError> {
        match &self.word {
            None => Ok(true),
            Some(v) if w.len() <= 1 << 12 => Ok(v.is_factor_materialized(w)?),
            Some(v) => Ok(v.is_factor_letters(w)?),
        }
    }

    fn budget(&self, what: &'static str, size: usize, limit: usize) -> Result<(), CentreError> {
        if size > limit {
            Err(CentreError::Budget { what, limit })
        } else {
            Ok(())
        }
    }
}
