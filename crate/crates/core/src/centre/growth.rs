use std::collections::HashSet;

use super::{CentreError, GroupRing, B_GENERATORS};
use crate::algebra::GrowthSeries;
use crate::group::GroupElement;
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq)]
pub struct BGrowthReport {
    pub series: GrowthSeries,
    pub epsilon: f64,
    /// `dim V^n ≤ n^{2+ε}` at every `n ≥ 1` of the fitting window.
    pub trend_holds: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl GroupRing {
    /// Nonzero words of length `l`, counted by number of x's.
    fn words_by_x_count(&self, l: u64) -> Result<Vec<u64>, CentreError> {
        match &self.word {
            Some(v) => Ok(v.complexity_by_x_count(l)?.to_vec()),
            None => Ok((0..=l).map(|c| binomial(l, c)).collect()),
        }
    }

    /// `dim V^k` for `k = 0..=n`, where `V` is spanned by 1 and the eight
    /// generators. The group parts reachable over a word with `c` x's are
    /// exactly `Ball(c)`, so `dim V^n = Σ_{|w| ≤ n} |Ball(c(w))|`.
    pub fn b_growth_values(&self, n: u64) -> Result<Vec<u64>, CentreError> {
        let mut dims = vec![1u64];
        let mut total = 1u64;
        for l in 1..=n {
            for (c, &count) in self.words_by_x_count(l)?.iter().enumerate() {
                if count > 0 {
                    total = total.saturating_add(count.saturating_mul(self.ball_size(c)?));
                }
            }
            dims.push(total);
        }
        Ok(dims)
    }

    pub fn b_dim_vn(&self, n: u64) -> Result<u64, CentreError> {
        Ok(*self.b_growth_values(n)?.last().expect("nonempty"))
    }

    /// `dim V^k` for `k = 0..=n` by expanding products level by level and
    /// deduplicating `(word, group)` pairs.
    pub fn b_growth_by_expansion(&self, n: u64) -> Result<Vec<u64>, CentreError> {
        let gens: Vec<(Letter, GroupElement)> =
            B_GENERATORS.iter().map(|g| (g.letter, g.group_element())).collect();
        let mut seen: HashSet<(Vec<Letter>, GroupElement)> = HashSet::new();
        let start = (Vec::new(), GroupElement::identity());
        seen.insert(start.clone());
        let mut frontier = vec![start];
        let mut dims = vec![1u64];
        for _ in 1..=n {
            let mut next = Vec::new();
            for (w, g) in &frontier {
                for (l, h) in &gens {
                    let mut word = w.clone();
                    word.push(*l);
                    if !self.is_nonzero_letters(&word)? {
                        continue;
                    }
                    let pair = (word, g.multiply(h));
                    if !seen.contains(&pair) {
                        self.budget("pair expansion", seen.len() + 1, self.limits.pair_budget)?;
                        seen.insert(pair.clone());
                        next.push(pair);
                    }
                }
            }
            frontier = next;
            dims.push(seen.len() as u64);
        }
        Ok(dims)
    }

    /// Series to `n_max` fitted over `[n_max/2, n_max]`, with the trend check
    /// `dim V^n ≤ n^{2+ε}` on that window.
    pub fn b_growth_report(&self, n_max: u64, epsilon: f64) -> Result<BGrowthReport, CentreError> {
        let dims = self.b_growth_values(n_max)?;
        let window = (n_max / 2, n_max);
        let trend_holds = dims
            .iter()
            .enumerate()
            .filter(|&(n, _)| n as u64 >= window.0.max(1))
            .all(|(n, &d)| (d as f64) <= (n as f64).powf(2.0 + epsilon));
        let values = dims.into_iter().enumerate().map(|(n, d)| (n as u64, d)).collect();
        Ok(BGrowthReport {
            series: GrowthSeries::from_values(values, window),
            epsilon,
            trend_holds,
        })
    }

    /// Least `k ≤ k_max` with `(V^d x V^d)^k = 0`. Group parts never cancel
    /// (products of pairs are pairs), so only word parts matter: the powers
    /// vanish exactly when every product of `k` words `u x v` vanishes.
    pub fn x_ideal_nilpotency(&self, d: usize, k_max: u32) -> Result<Option<u32>, CentreError> {
        let mut sides: Vec<Vec<Letter>> = vec![Vec::new()];
        let mut level = vec![Vec::new()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in &level {
                for l in [Letter::X, Letter::Y] {
                    let mut v: Vec<Letter> = w.clone();
                    v.push(l);
                    if self.is_nonzero_letters(&v)? {
                        next.push(v);
                    }
                }
            }
            sides.extend(next.iter().cloned());
            level = next;
        }
        let mut first: HashSet<Vec<Letter>> = HashSet::new();
        for a in &sides {
            for b in &sides {
                let mut w = a.clone();
                w.push(Letter::X);
                w.extend_from_slice(b);
                if self.is_nonzero_letters(&w)? {
                    first.insert(w);
                }
            }
        }
        if self.word.is_none() {
            // free words never vanish
            return Ok(if first.is_empty() { Some(1) } else { None });
        }
        let factors: Vec<Vec<Letter>> = first.iter().cloned().collect();
        let mut current = first;
        for k in 1..=k_max {
            if current.is_empty() {
                return Ok(Some(k));
            }
            if k == k_max {
                break;
            }
            let mut next = HashSet::new();
            for s in &current {
                for t in &factors {
                    let mut w = s.clone();
                    w.extend_from_slice(t);
                    if self.is_nonzero_letters(&w)? {
                        self.budget("nilpotency words", next.len() + 1, self.limits.pair_budget)?;
                        next.insert(w);
                    }
                }
            }
            current = next;
        }
        Ok(None)
    }
}

