use std::fmt;

use serde::{Deserialize, Serialize};

use super::ball::{ball_elements, shortest_group_word};
use super::element::group_generator;
use super::{CentreError, GroupRing, GroupRingElement, B_GENERATORS};
use crate::extnat::ExtendedNat;
use crate::group::GroupElement;
use crate::word::{Letter, RunWord};

/// One factor of a product of generators of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BFactor {
    /// Index into `B_GENERATORS`.
    Generator(usize),
    /// `y^k`, a product of `k` copies of the generator `y`.
    Padding(ExtendedNat),
}

impl fmt::Display for BFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BFactor::Generator(i) => f.write_str(B_GENERATORS[*i].name),
            BFactor::Padding(k) if *k == ExtendedNat::one() => f.write_str("y"),
            BFactor::Padding(k) => write!(f, "y^{k}"),
        }
    }
}

impl BFactor {
    fn element(&self) -> GroupRingElement {
        match self {
            BFactor::Generator(i) => B_GENERATORS[*i].element(),
            BFactor::Padding(k) => GroupRingElement::single(
                RunWord::from_runs([(Letter::Y, k.clone())]),
                GroupElement::identity(),
            ),
        }
    }

    fn parse(text: &str) -> Result<BFactor, CentreError> {
        if let Some(i) = B_GENERATORS.iter().position(|g| g.name == text) {
            return Ok(BFactor::Generator(i));
        }
        let bad = || CentreError::Encoding(format!("unknown generator {text:?}"));
        let exp = text.strip_prefix("y^").ok_or_else(bad)?;
        exp.parse::<ExtendedNat>().map(BFactor::Padding).map_err(|_| bad())
    }
}

/// A product of generators of `B` equal to the single pair `(word, group)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BExpression {
    pub factors: Vec<BFactor>,
    pub word: RunWord,
    pub group: GroupElement,
}

impl BExpression {
    /// Number of x-carrying factors.
    pub fn cost(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| matches!(f, BFactor::Generator(_)))
            .count()
    }

    pub fn element(&self) -> GroupRingElement {
        GroupRingElement::single(self.word.clone(), self.group.clone())
    }

    /// `(xu)(y^2)(xs0)(y^4)(xu^-1)`, `1` when empty.
    pub fn render(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors.iter().map(|f| format!("({f})")).collect()
    }

    /// Multiplies the factors out in `ring` and compares with `(word, group)`.
    pub fn verify(&self, ring: &GroupRing) -> Result<bool, CentreError> {
        let mut acc = GroupRingElement::one();
        for f in &self.factors {
            acc = ring.multiply(&acc, &f.element())?;
        }
        Ok(!acc.is_zero() && acc == self.element())
    }
}

/// Exported form of a central witness `(a_n, z_n) ∈ B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub index: i64,
    pub generators: Vec<String>,
    pub word: String,
    pub group: String,
}

impl WitnessCertificate {
    /// Re-parses the generator sequence, multiplies it out, and checks that
    /// the product is `(word, z_index)` with a central group part.
    pub fn verify(&self, ring: &GroupRing) -> Result<bool, CentreError> {
        let factors = self
            .generators
            .iter()
            .map(|s| BFactor::parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        let word: RunWord = self.word.parse()?;
        let group: GroupElement = self
            .group
            .parse()
            .map_err(|e: crate::group::GroupParseError| CentreError::Encoding(e.to_string()))?;
        if group != GroupElement::z(self.index) || !group.is_central() {
            return Ok(false);
        }
        BExpression { factors, word, group }.verify(ring)
    }
}

impl GroupRing {
    /// Interleaves the generator word with the gaps of the shortest prefix of
    /// `v∞` holding one x per generator, so the word part is a factor.
    fn expression_from_group_word(&self, gens: &[usize]) -> Result<BExpression, CentreError> {
        let gaps = match &self.word {
            Some(v) => v.prefix_gaps(gens.len() as u64)?,
            None => vec![ExtendedNat::one(); gens.len().saturating_sub(1)],
        };
        let mut factors = Vec::new();
        let mut word = RunWord::new();
        let mut group = GroupElement::identity();
        for (i, g) in gens.iter().enumerate() {
            if i > 0 {
                factors.push(BFactor::Padding(gaps[i - 1].clone()));
                word.push(Letter::Y, gaps[i - 1].clone());
            }
            factors.push(BFactor::Generator(*g));
            word.push(Letter::X, ExtendedNat::one());
            group = group.multiply(&group_generator(*g));
        }
        Ok(BExpression { factors, word, group })
    }

    /// A shortest product of generators equal to `(w, g)` with `w` a nonzero
    /// factor holding at most `c_max` x's.
    pub fn express_in_b(&self, g: &GroupElement, c_max: usize) -> Result<Option<BExpression>, CentreError> {
        let Some(gens) = shortest_group_word(g, c_max, self.limits.ball_budget)? else {
            return Ok(None);
        };
        self.expression_from_group_word(&gens).map(Some)
    }

    /// Generator word of `z_n = s_n t_0 s_n^{-1} t_0^{-1}` with `s_n = u^n s_0 u^{-n}`.
    fn commutator_word(n: i64) -> Vec<usize> {
        let (up, down) = if n >= 0 { (4, 5) } else { (5, 4) };
        let k = n.unsigned_abs() as usize;
        let conj = |core: usize| {
            let mut w = vec![up; k];
            w.push(core);
            w.extend(std::iter::repeat_n(down, k));
            w
        };
        let mut w = conj(0);
        w.push(2);
        w.extend(conj(1));
        w.push(3);
        w
    }

    /// `(a_n, z_n) ∈ B` with its generator sequence.
    pub fn central_witness(&self, n: i64) -> Result<BExpression, CentreError> {
        let limit = self.limits.index_budget;
        if n.unsigned_abs() > limit.unsigned_abs() {
            return Err(CentreError::IndexBudget { index: n, limit });
        }
        let expr = self.expression_from_group_word(&Self::commutator_word(n))?;
        debug_assert_eq!(expr.group, GroupElement::z(n));
        Ok(expr)
    }

    pub fn certificate(&self, n: i64) -> Result<WitnessCertificate, CentreError> {
        let expr = self.central_witness(n)?;
        Ok(WitnessCertificate {
            index: n,
            generators: expr.factors.iter().map(ToString::to_string).collect(),
            word: expr.word.to_string(),
            group: expr.group.to_string(),
        })
    }

    /// Checks `r·(a, z) = (ra, z)`, `(a, z)·r = (ar, z)` and
    /// `(r, e)(1, z) = (1, z)(r, e)` for every nonzero `r` of length at most `k`.
    pub fn bimodule_check(&self, witness: &BExpression, k: u64) -> Result<bool, CentreError> {
        let w = witness.element();
        let z = GroupRingElement::single(RunWord::new(), witness.group.clone());
        let e = GroupElement::identity();
        for r in self.nonzero_words(k)? {
            let r_elem = GroupRingElement::single(r.clone(), e.clone());
            let expected = |word: RunWord| -> Result<GroupRingElement, CentreError> {
                Ok(if self.is_nonzero_word(&word)? {
                    GroupRingElement::single(word, witness.group.clone())
                } else {
                    GroupRingElement::zero()
                })
            };
            if self.multiply(&r_elem, &w)? != expected(r.concat(&witness.word))?
                || self.multiply(&w, &r_elem)? != expected(witness.word.concat(&r))?
                || self.multiply(&r_elem, &z)? != self.multiply(&z, &r_elem)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn nonzero_words(&self, k: u64) -> Result<Vec<RunWord>, CentreError> {
        let mut out = vec![RunWord::new()];
        let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::new();
            for w in &level {
                for l in [Letter::X, Letter::Y] {
                    let mut v = w.clone();
                    v.push(l);
                    if self.is_nonzero_letters(&v)? {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().map(|w| RunWord::from_letters(w)));
            level = next;
        }
        Ok(out)
    }

    /// Shortest (then least) word `b` with `w1 b w2` nonzero.
    fn bridge(&self, w1: &RunWord, w2: &RunWord, bound: u64) -> Result<Option<RunWord>, CentreError> {
        match &self.word {
            None => Ok(Some(RunWord::new())),
            Some(v) => {
                let budget = v.limits().materialize_budget;
                let (a, b) = (w1.to_letters(budget)?, w2.to_letters(budget)?);
                Ok(v.shortest_bridge(&a, &b, bound)?.map(|w| RunWord::from_letters(&w)))
            }
        }
    }

    /// Products of at most `degree` witnesses `z_n`, `n ∈ indices`, joined by
    /// bridge words. True when every product is nonzero with group part
    /// `Π z_n^{e_n}` and distinct exponent vectors give distinct group parts.
    pub fn independence_check(&self, degree: u32, indices: &[i64]) -> Result<bool, CentreError> {
        let witnesses = indices
            .iter()
            .map(|&n| self.central_witness(n))
            .collect::<Result<Vec<_>, _>>()?;
        let mut groups: Vec<GroupElement> = Vec::new();
        for exps in exponent_vectors(indices.len(), degree) {
            let mut acc = GroupRingElement::one();
            let mut expected = GroupElement::identity();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    let (word, _) = acc.as_single().ok_or(CentreError::ZeroElement)?;
                    let word = word.clone();
                    let Some(b) = self.bridge(&word, &witnesses[i].word, self.limits.bridge_bound)? else {
                        return Ok(false);
                    };
                    let padding = GroupRingElement::single(b, GroupElement::identity());
                    acc = self.multiply(&self.multiply(&acc, &padding)?, &witnesses[i].element())?;
                    expected = expected.multiply(&GroupElement::z(indices[i]));
                }
            }
            match acc.as_single() {
                Some((_, g)) if *g == expected && g.is_central() => groups.push(g.clone()),
                _ => return Ok(false),
            }
        }
        let mut sorted = groups.clone();
        sorted.sort();
        sorted.dedup();
        Ok(sorted.len() == groups.len())
    }

    /// A pair `c = (w, g) ∈ B` with `b1·c·b2 ≠ 0`: `w` bridges some word part
    /// of `b1` to some word part of `b2` within `len_bound`, and `g` ranges
    /// over `Ball(min(c(w), c_max))`, identity first.
    pub fn prime_witness_b(
        &self,
        b1: &GroupRingElement,
        b2: &GroupRingElement,
        len_bound: u64,
        c_max: usize,
    ) -> Result<Option<GroupRingElement>, CentreError> {
        if b1.is_zero() || b2.is_zero() {
            return Err(CentreError::ZeroElement);
        }
        let mut bridges: Vec<RunWord> = Vec::new();
        for (w1, _) in b1.terms().keys().rev() {
            for (w2, _) in b2.terms().keys().rev() {
                if let Some(b) = self.bridge(w1, w2, len_bound)? {
                    if !bridges.contains(&b) {
                        bridges.push(b);
                    }
                }
            }
        }
        bridges.sort();
        for w in bridges {
            let c = w.count(Letter::X).to_u64().unwrap_or(u64::MAX);
            let radius = (c as usize).min(c_max);
            for g in ball_elements(radius, self.limits.ball_budget)? {
                let candidate = GroupRingElement::single(w.clone(), g);
                if !self.multiply(&self.multiply(b1, &candidate)?, b2)?.is_zero() {
                    return Ok(Some(candidate));
                }
            }
        }
        Ok(None)
    }
}

/// Nonnegative vectors of length `len` with entry sum at most `degree`.
fn exponent_vectors(len: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; len];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::word::{InfiniteWord, RunSequence};
    use std::sync::Arc;

    fn ring() -> GroupRing {
        let v = InfiniteWord::new(RunSequence::geometric(2).unwrap());
        GroupRing::new(Arc::new(v), Field::Rationals)
    }

    #[test]
    fn expresses_s1_with_cost_three() {
        let r = ring();
        let e = r.express_in_b(&GroupElement::s(1), 5).unwrap().unwrap();
        assert_eq!(e.render(), "(xu)(y^2)(xs0)(y^4)(xu^-1)");
        assert_eq!(e.cost(), 3);
        assert!(e.verify(&r).unwrap());
        let one = r.express_in_b(&GroupElement::identity(), 0).unwrap().unwrap();
        assert_eq!(one.render(), "1");
        assert!(r.express_in_b(&GroupElement::s(1), 2).unwrap().is_none());
    }

    #[test]
    fn z1_costs_eight() {
        let r = ring();
        let e = r.express_in_b(&GroupElement::z(1), 8).unwrap().unwrap();
        assert_eq!(e.cost(), 8);
        assert!(e.verify(&r).unwrap());
    }

    #[test]
    fn witnesses_are_central_and_reverify() {
        let r = ring();
        for n in -2..=2 {
            let w = r.central_witness(n).unwrap();
            assert_eq!(w.group, GroupElement::z(n));
            assert_eq!(w.cost(), 4 * n.unsigned_abs() as usize + 4);
            assert!(w.verify(&r).unwrap());
            assert!(r.certificate(n).unwrap().verify(&r).unwrap());
        }
        assert!(r.bimodule_check(&r.central_witness(1).unwrap(), 6).unwrap());
        assert!(matches!(r.central_witness(100), Err(CentreError::IndexBudget { .. })));
    }

    #[test]
    fn independence_examples() {
        let r = ring();
        assert!(r.independence_check(0, &[1, 2]).unwrap());
        assert!(r.independence_check(2, &[1, 2]).unwrap());
        assert!(r.independence_check(3, &[1]).unwrap());
    }

    #[test]
    fn prime_witness_examples() {
        let r = ring();
        let x = GroupRingElement::single("x".parse().unwrap(), GroupElement::identity());
        let c = r.prime_witness_b(&x, &x, 64, 4).unwrap().unwrap();
        assert_eq!(c, GroupRingElement::single("y^2".parse().unwrap(), GroupElement::identity()));
        let xs = GroupRingElement::single("x".parse().unwrap(), GroupElement::s(0));
        let xs_inv = GroupRingElement::single("x".parse().unwrap(), GroupElement::s(0).inverse());
        let c = r.prime_witness_b(&xs, &xs_inv, 64, 4).unwrap().unwrap();
        let (w, g) = c.as_single().unwrap();
        assert!(g.is_identity() && w.count(Letter::X).is_zero());
        assert_eq!(
            r.prime_witness_b(&GroupRingElement::zero(), &x, 64, 4),
            Err(CentreError::ZeroElement)
        );
    }
}
