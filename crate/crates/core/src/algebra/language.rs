use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::word::{InfiniteWord, Letter, WordError};

/// A factorial language over `{x, y}`: the nonzero monomials of a monomial
/// algebra. Subwords of accepted words must be accepted.
pub trait WordLanguage: Send + Sync + fmt::Debug {
    fn accepts(&self, word: &[Letter]) -> Result<bool, WordError>;

    /// Number of accepted words of length `len`, when known in closed form.
    fn count_words(&self, _len: u64) -> Option<Result<u64, WordError>> {
        None
    }

    /// Shortest `w` (then lexicographically least) with `w1 w w2` accepted and
    /// `|w| ≤ len_bound`.
    fn shortest_bridge(
        &self,
        w1: &[Letter],
        w2: &[Letter],
        len_bound: u64,
    ) -> Result<Option<Vec<Letter>>, WordError> {
        if !self.accepts(w1)? {
            return Ok(None);
        }
        // accepted prefixes only: every prefix of w1 w w2 is accepted
        let mut level = vec![w1.to_vec()];
        for depth in 0..=len_bound {
            for p in &level {
                let mut full = p.clone();
                full.extend_from_slice(w2);
                if self.accepts(&full)? {
                    return Ok(Some(p[w1.len()..].to_vec()));
                }
            }
            if depth == len_bound {
                break;
            }
            let mut next = Vec::new();
            for p in &level {
                for l in [Letter::X, Letter::Y] {
                    let mut q = p.clone();
                    q.push(l);
                    if self.accepts(&q)? {
                        next.push(q);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
        Ok(None)
    }

    fn describe(&self) -> String;
}

/// Factors of `v∞`.
#[derive(Debug, Clone)]
pub struct FactorLanguage {
    word: Arc<InfiniteWord>,
}

/// Words up to this length are checked on the cached automaton.
const AUTOMATON_LENGTH: usize = 1 << 12;

impl FactorLanguage {
    pub fn new(word: Arc<InfiniteWord>) -> Self {
        FactorLanguage { word }
    }

    pub fn word(&self) -> &Arc<InfiniteWord> {
        &self.word
    }
}

impl WordLanguage for FactorLanguage {
    fn accepts(&self, word: &[Letter]) -> Result<bool, WordError> {
        if word.len() <= AUTOMATON_LENGTH {
            self.word.is_factor_materialized(word)
        } else {
            self.word.is_factor_letters(word)
        }
    }

    fn count_words(&self, len: u64) -> Option<Result<u64, WordError>> {
        Some(self.word.factor_complexity(len))
    }

    fn shortest_bridge(
        &self,
        w1: &[Letter],
        w2: &[Letter],
        len_bound: u64,
    ) -> Result<Option<Vec<Letter>>, WordError> {
        self.word.shortest_bridge(w1, w2, len_bound)
    }

    fn describe(&self) -> String {
        format!("factors of v∞ ({})", self.word.spec())
    }
}

/// Every word; the free algebra.
#[derive(Debug, Clone, Copy)]
pub struct FreeLanguage;

impl WordLanguage for FreeLanguage {
    fn accepts(&self, _word: &[Letter]) -> Result<bool, WordError> {
        Ok(true)
    }

    fn count_words(&self, len: u64) -> Option<Result<u64, WordError>> {
        (len < 64).then(|| Ok(1u64 << len))
    }

    fn describe(&self) -> String {
        "free".into()
    }
}

/// The words `y^a` and `y^a x`.
#[derive(Debug, Clone, Copy)]
pub struct ControlLanguage;

impl WordLanguage for ControlLanguage {
    fn accepts(&self, word: &[Letter]) -> Result<bool, WordError> {
        Ok(match word.split_last() {
            None => true,
            Some((_, rest)) => rest.iter().all(|&l| l == Letter::Y),
        })
    }

    fn count_words(&self, len: u64) -> Option<Result<u64, WordError>> {
        Some(Ok(if len == 0 { 1 } else { 2 }))
    }

    fn describe(&self) -> String {
        "control {y^a, y^a x}".into()
    }
}

/// A finite language given by its maximal words, closed under subwords.
#[derive(Debug, Clone)]
pub struct FiniteLanguage {
    words: HashSet<Vec<Letter>>,
}

impl FiniteLanguage {
    pub fn from_maximal(maximal: &[Vec<Letter>]) -> Self {
        let mut words = HashSet::new();
        for w in maximal {
            for i in 0..=w.len() {
                for j in i..=w.len() {
                    words.insert(w[i..j].to_vec());
                }
            }
        }
        FiniteLanguage { words }
    }
}

impl WordLanguage for FiniteLanguage {
    fn accepts(&self, word: &[Letter]) -> Result<bool, WordError> {
        Ok(self.words.contains(word))
    }

    fn describe(&self) -> String {
        format!("finite ({} words)", self.words.len())
    }
}
