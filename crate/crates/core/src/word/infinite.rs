use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::{Letter, RunSequence, RunWord, SuffixAutomaton, WordError};
use crate::extnat::ExtendedNat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordLimits {
    /// Largest number of maximal runs `build_prefix` may produce.
    pub run_limit: u64,
    /// Largest number of letters ever materialized at once.
    pub materialize_budget: u64,
    /// Largest sequence level consulted by structural scans.
    pub max_level: u32,
}

impl Default for WordLimits {
    fn default() -> Self {
        WordLimits {
            run_limit: 1_000_000,
            materialize_budget: 1 << 24,
            max_level: 48,
        }
    }
}

/// A finite prefix of `v∞` with every y-run capped, built so that its factors
/// of length `≤ cap` are exactly the factors of `v∞` of that length.
#[derive(Debug)]
struct CappedPrefix {
    cap: u64,
    automaton: SuffixAutomaton,
}

/// Query engine for `v∞` under a fixed run sequence.
///
/// Gaps between consecutive x's follow the ruler pattern `g_j = q_{ν₂(j)+1}`.
/// A pattern whose internal gaps are all below `q_{K+1}` reappears with the
/// same internal gaps (and boundary runs at least as long) at an x-index in
/// `[1, 2^K + 1]`, so membership and counting questions reduce to finite
/// scans over gap indices; nothing long is ever materialized.
#[derive(Debug)]
pub struct InfiniteWord {
    spec: RunSequence,
    limits: WordLimits,
    prefixes: RwLock<HashMap<u32, Arc<CappedPrefix>>>,
    complexity: RwLock<HashMap<u64, Arc<[u64]>>>,
}

impl Clone for InfiniteWord {
    fn clone(&self) -> Self {
        InfiniteWord::with_limits(self.spec.clone(), self.limits)
    }
}

/// A word with at least one x, as `y^lead x y^{g_1} x … x y^trail`.
struct Pattern<'a> {
    lead: &'a ExtendedNat,
    gaps: Vec<&'a ExtendedNat>,
    trail: &'a ExtendedNat,
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

impl InfiniteWord {
    pub fn new(spec: RunSequence) -> Self {
        InfiniteWord::with_limits(spec, WordLimits::default())
    }

    pub fn with_limits(spec: RunSequence, limits: WordLimits) -> Self {
        InfiniteWord {
            spec,
            limits,
            prefixes: RwLock::new(HashMap::new()),
            complexity: RwLock::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &RunSequence {
        &self.spec
    }

    pub fn limits(&self) -> WordLimits {
        self.limits
    }

    /// `q_n`.
    pub fn term(&self, n: u32) -> Result<ExtendedNat, WordError> {
        self.spec.term(n)
    }

    /// The y-run between the j-th and (j+1)-th x of `v∞` (j ≥ 1).
    pub fn gap(&self, j: u64) -> Result<ExtendedNat, WordError> {
        if j == 0 {
            return Err(WordError::InvalidLevel(0));
        }
        self.term(j.trailing_zeros() + 1)
    }

    /// `v_k`.
    pub fn build_prefix(&self, k: u32) -> Result<RunWord, WordError> {
        if k == 0 {
            return Err(WordError::InvalidLevel(0));
        }
        let runs = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
        if runs > self.limits.run_limit {
            return Err(WordError::RunLimit {
                level: k,
                runs,
                limit: self.limits.run_limit,
            });
        }
        let mut v = RunWord::from_letters(&[Letter::X]);
        for n in 1..k {
            let mut next = v.clone();
            next.push(Letter::Y, self.term(n)?);
            next.append(&v);
            v = next;
        }
        Ok(v)
    }

    /// `|v_k|` from `|v_{k+1}| = 2|v_k| + q_k`.
    pub fn word_length(&self, k: u32) -> Result<ExtendedNat, WordError> {
        if k == 0 {
            return Err(WordError::InvalidLevel(0));
        }
        let mut len = ExtendedNat::one();
        for n in 1..k {
            len = len.double().add(&self.term(n)?);
        }
        Ok(len)
    }

    /// Least `K` with `accept(q_{K+1})`.
    fn level_where(&self, accept: impl Fn(&ExtendedNat) -> bool) -> Result<u32, WordError> {
        for k in 0..self.limits.max_level {
            if accept(&self.term(k + 1)?) {
                return Ok(k);
            }
        }
        Err(WordError::SequenceExhausted(self.limits.max_level + 1))
    }

    /// Run lengths `min(q_n, cap)` for `n = 1..=levels`.
    fn capped_terms(&self, levels: u32, cap: u64) -> Result<Vec<u64>, WordError> {
        (1..=levels).map(|n| Ok(self.term(n)?.capped(cap))).collect()
    }

    fn pure_y_is_factor(&self, len: &ExtendedNat) -> Result<bool, WordError> {
        match self.spec.term_count() {
            None => Ok(true),
            Some(count) => {
                let last = self.term(count)?;
                if &last >= len {
                    Ok(true)
                } else {
                    Err(WordError::SequenceExhausted(count + 1))
                }
            }
        }
    }

    fn pattern(word: &RunWord) -> Option<Pattern<'_>> {
        let runs = word.runs();
        let zero = &ExtendedNat::ZERO;
        if !runs.iter().any(|(l, _)| *l == Letter::X) {
            return None;
        }
        let mut idx = 0;
        let mut lead = zero;
        if runs[0].0 == Letter::Y {
            lead = &runs[0].1;
            idx = 1;
        }
        let mut gaps = Vec::new();
        let mut trail = zero;
        while idx < runs.len() {
            let (l, m) = &runs[idx];
            match l {
                Letter::X => {
                    let extra = m.to_u64().expect("x-run fits in memory") - 1;
                    gaps.extend(std::iter::repeat_n(zero, extra as usize));
                }
                Letter::Y => {
                    if idx + 1 == runs.len() {
                        trail = m;
                    } else {
                        gaps.push(m);
                    }
                }
            }
            idx += 1;
        }
        Some(Pattern { lead, gaps, trail })
    }

    /// Whether `word` occurs in `v∞`, decided structurally on run lengths.
    pub fn is_factor(&self, word: &RunWord) -> Result<bool, WordError> {
        if word.is_empty() {
            return Ok(true);
        }
        let Some(p) = Self::pattern(word) else {
            return self.pure_y_is_factor(&word.len());
        };
        if p.gaps.iter().any(|g| g.is_zero()) {
            return Ok(false);
        }
        let max = p
            .gaps
            .iter()
            .copied()
            .chain([p.lead, p.trail])
            .max()
            .expect("nonempty");
        let k = self.level_where(|q| q > max)?;
        // runs at ruler depth ≥ K all exceed every run of the pattern
        let terms: Vec<ExtendedNat> = (1..=k + 1).map(|n| self.term(n)).collect::<Result<_, _>>()?;
        let gap = |j: u64| -> &ExtendedNat { &terms[j.trailing_zeros().min(k) as usize] };
        let zero = ExtendedNat::zero();
        'start: for i in 1..=(1u64 << k) + 1 {
            let left = if i == 1 { &zero } else { gap(i - 1) };
            if p.lead > left {
                continue;
            }
            for (t, g) in p.gaps.iter().enumerate() {
                if gap(i + t as u64) != *g {
                    continue 'start;
                }
            }
            if p.trail <= gap(i + p.gaps.len() as u64) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn is_factor_letters(&self, word: &[Letter]) -> Result<bool, WordError> {
        self.is_factor(&RunWord::from_letters(word))
    }

    /// Least sum of `count` consecutive gaps, each capped at `cap`.
    fn min_gap_sum(&self, count: u64, cap: u64) -> Result<u64, WordError> {
        if count == 0 {
            return Ok(0);
        }
        let k = ceil_log2(count + 1);
        let terms = self.capped_terms(k + 1, cap)?;
        let gap = |j: u64| terms[j.trailing_zeros().min(k) as usize];
        let mut sum = (1..=count).fold(0u64, |s, j| s.saturating_add(gap(j)));
        let mut best = sum;
        for i in 2..=1u64 << k {
            sum = sum - gap(i - 1) + gap(i + count - 1);
            best = best.min(sum);
        }
        Ok(best)
    }

    /// Largest number of x's in a factor of length `l`.
    pub fn max_x_occurrences(&self, l: u64) -> Result<u64, WordError> {
        if l == 0 {
            return Ok(0);
        }
        // c x's fit iff c + (least sum of c - 1 gaps) ≤ l, monotone in c
        let fits = |c: u64| -> Result<bool, WordError> {
            Ok(self.min_gap_sum(c - 1, l + 1)?.saturating_add(c) <= l)
        };
        let (mut lo, mut hi) = (1u64, l);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if fits(mid)? {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        Ok(lo)
    }

    /// Number of distinct factors of length `l` with exactly `c` x's, indexed by `c`.
    pub fn complexity_by_x_count(&self, l: u64) -> Result<Arc<[u64]>, WordError> {
        if let Some(hit) = self.complexity.read().expect("cache lock").get(&l) {
            return Ok(hit.clone());
        }
        let counts: Arc<[u64]> = self.count_factors(l)?.into();
        self.complexity
            .write()
            .expect("cache lock")
            .insert(l, counts.clone());
        Ok(counts)
    }

    fn count_factors(&self, l: u64) -> Result<Vec<u64>, WordError> {
        if l == 0 {
            return Ok(vec![1]);
        }
        let cmax = self.max_x_occurrences(l)?;
        let mut counts = vec![0u64; cmax as usize + 1];
        counts[0] = u64::from(self.pure_y_is_factor(&ExtendedNat::from_u64(l))?);
        let k = self.level_where(|q| q >= &ExtendedNat::from_u64(l))?;
        let terms = self.capped_terms(k + 1, l)?;
        let gap = |j: u64| terms[j.trailing_zeros().min(k) as usize];
        // block of internal gaps -> set of (left, right) contexts
        let mut blocks: HashMap<Vec<u64>, HashSet<(u64, u64)>> = HashMap::new();
        for i in 1..=(1u64 << k) + 1 {
            let left = if i == 1 { 0 } else { gap(i - 1) };
            let mut block = Vec::new();
            let mut sum = 0u64;
            for c in 1..=cmax {
                if c > 1 {
                    let g = gap(i + c - 2);
                    sum += g;
                    block.push(g);
                }
                if sum + c > l {
                    break;
                }
                let right = gap(i + c - 1);
                blocks.entry(block.clone()).or_default().insert((left, right));
            }
        }
        for (block, contexts) in blocks {
            let c = block.len() + 1;
            let rest = l - c as u64 - block.iter().sum::<u64>();
            // leading y's `a` range over a union of intervals, one per context
            let mut intervals: Vec<(u64, u64)> = contexts
                .into_iter()
                .filter_map(|(left, right)| {
                    let lo = rest.saturating_sub(right);
                    let hi = left.min(rest);
                    (lo <= hi).then_some((lo, hi))
                })
                .collect();
            intervals.sort_unstable();
            let mut covered = 0u64;
            let mut reach: Option<u64> = None;
            for (lo, hi) in intervals {
                let start = match reach {
                    Some(r) if r >= lo => r + 1,
                    _ => lo,
                };
                if start <= hi {
                    covered += hi - start + 1;
                }
                reach = Some(reach.map_or(hi, |r| r.max(hi)));
            }
            counts[c] += covered;
        }
        Ok(counts)
    }

    /// `p(l)`, the number of distinct factors of length `l`.
    pub fn factor_complexity(&self, l: u64) -> Result<u64, WordError> {
        Ok(self.complexity_by_x_count(l)?.iter().sum())
    }

    /// The capped prefix whose factors of length `≤ 2^bucket` are exact.
    fn capped_prefix(&self, bucket: u32) -> Result<Arc<CappedPrefix>, WordError> {
        if let Some(hit) = self.prefixes.read().expect("cache lock").get(&bucket) {
            return Ok(hit.clone());
        }
        let cap = 1u64 << bucket;
        let k = self.level_where(|q| q >= &ExtendedNat::from_u64(cap))?;
        let cmax = self.max_x_occurrences(cap)?;
        let x_count = (1u64 << k) + 1 + cmax;
        let terms = self.capped_terms(k + 1, cap)?;
        let gap = |j: u64| terms[j.trailing_zeros().min(k) as usize];
        let needed = (1..=x_count).fold(x_count, |s, j| s.saturating_add(gap(j)));
        if needed > self.limits.materialize_budget {
            return Err(WordError::Materialization {
                needed,
                budget: self.limits.materialize_budget,
            });
        }
        let mut letters = Vec::with_capacity(needed as usize);
        for j in 1..=x_count {
            letters.push(Letter::X);
            letters.extend(std::iter::repeat_n(Letter::Y, gap(j) as usize));
        }
        let prefix = Arc::new(CappedPrefix {
            cap,
            automaton: SuffixAutomaton::build(&letters),
        });
        self.prefixes
            .write()
            .expect("cache lock")
            .insert(bucket, prefix.clone());
        Ok(prefix)
    }

    /// A suffix automaton accepting exactly the factors of `v∞` of length
    /// `≤ min_len` (and possibly some longer ones, all genuine factors).
    pub fn factor_automaton(&self, min_len: u64) -> Result<(SuffixAutomaton, u64), WordError> {
        let p = self.capped_prefix(ceil_log2(min_len.max(2)))?;
        Ok((p.automaton.clone(), p.cap))
    }

    /// Runs `f` against the cached automaton covering lengths `≤ min_len`.
    pub fn with_automaton<T>(
        &self,
        min_len: u64,
        f: impl FnOnce(&SuffixAutomaton, u64) -> T,
    ) -> Result<T, WordError> {
        let p = self.capped_prefix(ceil_log2(min_len.max(2)))?;
        Ok(f(&p.automaton, p.cap))
    }

    /// Membership through the materialized capped prefix; agrees with
    /// [`InfiniteWord::is_factor`] and serves as its cross-check.
    pub fn is_factor_materialized(&self, word: &[Letter]) -> Result<bool, WordError> {
        self.with_automaton(word.len() as u64, |sa, _| sa.contains(word))
    }

    /// All factors of length `l` in lexicographic order (x < y).
    pub fn factors(&self, l: u64) -> Result<Vec<Vec<Letter>>, WordError> {
        let expected = self.factor_complexity(l)?;
        if expected.saturating_mul(l.max(1)) > self.limits.materialize_budget {
            return Err(WordError::Materialization {
                needed: expected.saturating_mul(l),
                budget: self.limits.materialize_budget,
            });
        }
        self.with_automaton(l, |sa, _| {
            let mut out = Vec::new();
            let mut word = Vec::new();
            collect_factors(sa, sa.root(), l as usize, &mut word, &mut out);
            out
        })
    }

    /// Whether `v_k` and `v_{k+1}` have the same factors of length `l`.
    pub fn stabilization_check(&self, l: u64, k: u32) -> Result<bool, WordError> {
        let budget = self.limits.materialize_budget;
        let small = self.build_prefix(k)?.to_letters(budget)?;
        let large = self.build_prefix(k + 1)?.to_letters(budget)?;
        let windows = |w: &[Letter]| -> HashSet<Vec<Letter>> {
            if l as usize > w.len() {
                return HashSet::new();
            }
            w.windows(l as usize).map(<[Letter]>::to_vec).collect()
        };
        Ok(windows(&small) == windows(&large))
    }

    /// Gaps `g_1, …, g_{c-1}` of the shortest prefix of `v∞` containing `c` x's.
    pub fn prefix_gaps(&self, c: u64) -> Result<Vec<ExtendedNat>, WordError> {
        (1..c).map(|j| self.gap(j)).collect()
    }

    /// Shortest `w` (then lexicographically least) with `w1 w w2` a factor
    /// and `|w| ≤ len_bound`.
    pub fn shortest_bridge(
        &self,
        w1: &[Letter],
        w2: &[Letter],
        len_bound: u64,
    ) -> Result<Option<Vec<Letter>>, WordError> {
        let base = (w1.len() + w2.len()) as u64;
        let total_bound = base + len_bound;
        let mut bucket = ceil_log2(base.max(16));
        loop {
            let cap = 1u64 << bucket;
            let reach = cap.min(total_bound);
            let found = self.with_automaton(cap, |sa, _| {
                bridge_search(sa, w1, w2, reach - base.min(reach))
            })?;
            if found.is_some() || cap >= total_bound {
                return Ok(found);
            }
            bucket += 1;
        }
    }
}

fn collect_factors(
    sa: &SuffixAutomaton,
    state: u32,
    remaining: usize,
    word: &mut Vec<Letter>,
    out: &mut Vec<Vec<Letter>>,
) {
    if remaining == 0 {
        out.push(word.clone());
        return;
    }
    for l in [Letter::X, Letter::Y] {
        if let Some(next) = sa.step(state, l) {
            word.push(l);
            collect_factors(sa, next, remaining - 1, word, out);
            word.pop();
        }
    }
}

/// Breadth-first search over bridge lengths, keeping the lexicographically
/// least word per automaton state (later completions cannot tell them apart).
fn bridge_search(
    sa: &SuffixAutomaton,
    w1: &[Letter],
    w2: &[Letter],
    max_len: u64,
) -> Option<Vec<Letter>> {
    let start = w1.iter().try_fold(sa.root(), |s, &l| sa.step(s, l))?;
    let finishes = |state: u32| w2.iter().try_fold(state, |s, &l| sa.step(s, l)).is_some();
    let mut level: Vec<(u32, Vec<Letter>)> = vec![(start, Vec::new())];
    for depth in 0..=max_len {
        if let Some((_, w)) = level.iter().find(|(s, _)| finishes(*s)) {
            return Some(w.clone());
        }
        if depth == max_len {
            break;
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (state, w) in &level {
            for l in [Letter::X, Letter::Y] {
                if let Some(s) = sa.step(*state, l) {
                    if seen.insert(s) {
                        let mut w = w.clone();
                        w.push(l);
                        next.push((s, w));
                    }
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        level = next;
    }
    None
}
