use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{Letter, WordError};
use crate::extnat::ExtendedNat;

/// A finite word over `{x, y}` stored as maximal runs, so `y^(2^65536)` costs
/// a few words of memory.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RunWord {
    runs: Vec<(Letter, ExtendedNat)>,
}

impl RunWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_runs<I>(runs: I) -> Self
    where
        I: IntoIterator<Item = (Letter, ExtendedNat)>,
    {
        let mut w = RunWord::new();
        for (letter, mult) in runs {
            w.push(letter, mult);
        }
        w
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut w = RunWord::new();
        for &l in letters {
            w.push(l, ExtendedNat::one());
        }
        w
    }

    /// Appends `letter^mult`, merging with a trailing run of the same letter.
    pub fn push(&mut self, letter: Letter, mult: ExtendedNat) {
        if mult.is_zero() {
            return;
        }
        match self.runs.last_mut() {
            Some((last, m)) if *last == letter => *m = m.add(&mult),
            _ => self.runs.push((letter, mult)),
        }
    }

    pub fn concat(&self, other: &RunWord) -> RunWord {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn append(&mut self, other: &RunWord) {
        for (l, m) in &other.runs {
            self.push(*l, m.clone());
        }
    }

    pub fn runs(&self) -> &[(Letter, ExtendedNat)] {
        &self.runs
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn len(&self) -> ExtendedNat {
        self.runs
            .iter()
            .fold(ExtendedNat::zero(), |acc, (_, m)| acc.add(m))
    }

    pub fn count(&self, letter: Letter) -> ExtendedNat {
        self.runs
            .iter()
            .filter(|(l, _)| *l == letter)
            .fold(ExtendedNat::zero(), |acc, (_, m)| acc.add(m))
    }

    /// Product form used by the element grammars: `x*y^2*x`, `1` when empty.
    pub fn to_product_string(&self) -> String {
        if self.runs.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|(l, m)| {
                if *m == ExtendedNat::one() {
                    l.as_char().to_string()
                } else {
                    format!("{}^{m}", l.as_char())
                }
            })
            .collect();
        parts.join("*")
    }

    /// Expands into letters, refusing words longer than `budget`.
    pub fn to_letters(&self, budget: u64) -> Result<Vec<Letter>, WordError> {
        let len = self.len();
        let needed = len.to_u64().filter(|&n| n <= budget).ok_or_else(|| {
            WordError::Materialization {
                needed: len.capped(u64::MAX),
                budget,
            }
        })?;
        let mut out = Vec::with_capacity(needed as usize);
        for (l, m) in &self.runs {
            let m = m.to_u64().expect("run bounded by total length");
            out.extend(std::iter::repeat_n(*l, m as usize));
        }
        Ok(out)
    }
}

impl Ord for RunWord {
    /// Shortlex with x < y, computed on runs.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            for (a, b) in self.runs.iter().zip(&other.runs) {
                if a.0 != b.0 {
                    return a.0.cmp(&b.0);
                }
                if a.1 != b.1 {
                    // equal lengths: the shorter run is followed by the other letter
                    let shorter_first = a.1 < b.1;
                    return match (a.0, shorter_first) {
                        (Letter::X, true) | (Letter::Y, false) => Ordering::Greater,
                        _ => Ordering::Less,
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for RunWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RunWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("1");
        }
        for (i, (l, m)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.as_char())?;
            if *m != ExtendedNat::one() {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for RunWord {
    type Err = WordError;

    /// Accepts `x y^65536 x`, `xy^3x`, `y^2^^(1;65536)` and `1` for the empty word.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text.trim() == "1" {
            return Ok(RunWord::new());
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut w = RunWord::new();
        while pos < bytes.len() {
            let c = bytes[pos] as char;
            if c.is_ascii_whitespace() || c == '*' {
                pos += 1;
                continue;
            }
            let letter = Letter::from_char(c).ok_or_else(|| WordError::Parse {
                pos,
                msg: format!("expected x or y, found {c:?}"),
            })?;
            pos += 1;
            let mut mult = ExtendedNat::one();
            if bytes.get(pos) == Some(&b'^') {
                pos += 1;
                let (value, used) = ExtendedNat::parse_prefix(&text[pos..]).map_err(|e| {
                    let mut err = WordError::from(e);
                    if let WordError::Parse { pos: p, .. } = &mut err {
                        *p += pos;
                    }
                    err
                })?;
                mult = value;
                pos += used;
            }
            w.push(letter, mult);
        }
        Ok(w)
    }
}
