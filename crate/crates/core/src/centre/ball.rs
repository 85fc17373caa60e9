use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::element::group_generator;
use super::{CentreError, GroupRing};
use crate::group::{GroupElement, IndexedExponents};

/// Byte key of a group element with small indices and exponents.
fn encode(g: &GroupElement) -> Result<Box<[u8]>, CentreError> {
    let small = |v: &BigInt| {
        v.to_i8()
            .map(|b| b as u8)
            .ok_or_else(|| CentreError::Encoding(format!("{v} does not fit a byte")))
    };
    let mut out = vec![small(g.u_exp())?];
    for part in [g.z_part(), g.t_part(), g.s_part()] {
        out.push(part.len() as u8);
        for (n, e) in part.iter() {
            out.push(small(n)?);
            out.push(small(e)?);
        }
    }
    Ok(out.into_boxed_slice())
}

fn decode(key: &[u8]) -> GroupElement {
    let byte = |b: u8| BigInt::from(b as i8);
    let mut pos = 1;
    let mut parts = Vec::new();
    for _ in 0..3 {
        let len = key[pos] as usize;
        pos += 1;
        let mut part = IndexedExponents::new();
        for _ in 0..len {
            part.add_at(byte(key[pos]), &byte(key[pos + 1]));
            pos += 2;
        }
        parts.push(part);
    }
    let s = parts.pop().expect("three parts");
    let t = parts.pop().expect("three parts");
    let z = parts.pop().expect("three parts");
    GroupElement::from_parts(z, t, s, byte(key[0]))
}

/// Breadth-first search of the Cayley graph on `s_0^{±1}, t_0^{±1}, u^{±1}`
/// from the identity, multiplying on the right.
struct CayleySearch {
    keys: Vec<Box<[u8]>>,
    parent: Vec<(usize, usize)>,
    index: HashMap<Box<[u8]>, usize>,
    /// `level_end[r]` = number of elements within radius `r`.
    level_end: Vec<usize>,
}

impl CayleySearch {
    fn new() -> Self {
        let e = encode(&GroupElement::identity()).expect("identity encodes");
        let mut index = HashMap::new();
        index.insert(e.clone(), 0);
        CayleySearch {
            keys: vec![e],
            parent: vec![(usize::MAX, usize::MAX)],
            index,
            level_end: vec![1],
        }
    }

    fn radius(&self) -> usize {
        self.level_end.len() - 1
    }

    fn grow(&mut self, budget: usize) -> Result<(), CentreError> {
        let lo = if self.level_end.len() >= 2 {
            self.level_end[self.level_end.len() - 2]
        } else {
            0
        };
        let hi = *self.level_end.last().expect("nonempty");
        let gens: Vec<GroupElement> = (0..6).map(group_generator).collect();
        for i in lo..hi {
            let g = decode(&self.keys[i]);
            for (gi, gen) in gens.iter().enumerate() {
                let key = encode(&g.multiply(gen))?;
                if !self.index.contains_key(&key) {
                    if self.keys.len() >= budget {
                        return Err(CentreError::Budget {
                            what: "group ball",
                            limit: budget,
                        });
                    }
                    self.index.insert(key.clone(), self.keys.len());
                    self.keys.push(key);
                    self.parent.push((i, gi));
                }
            }
        }
        self.level_end.push(self.keys.len());
        Ok(())
    }

    fn word_to(&self, mut i: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while i != 0 {
            let (p, g) = self.parent[i];
            word.push(g);
            i = p;
        }
        word.reverse();
        word
    }
}

/// `|Ball(r)|` for `r = 0..=radius`, with `Ball(r)` the products of at most
/// `r` of `s_0^{±1}, t_0^{±1}, u^{±1}`.
pub fn ball_sizes(radius: usize, budget: usize) -> Result<Vec<u64>, CentreError> {
    let mut search = CayleySearch::new();
    while search.radius() < radius {
        search.grow(budget)?;
    }
    Ok(search.level_end.iter().map(|&n| n as u64).collect())
}

/// Elements of `Ball(radius)` in breadth-first order.
pub fn ball_elements(radius: usize, budget: usize) -> Result<Vec<GroupElement>, CentreError> {
    let mut search = CayleySearch::new();
    while search.radius() < radius {
        search.grow(budget)?;
    }
    Ok(search.keys.iter().map(|k| decode(k)).collect())
}

/// A shortest generator word (indices into `s_0, s_0^{-1}, t_0, t_0^{-1}, u, u^{-1}`)
/// for `target` of length at most `max_len`.
pub(crate) fn shortest_group_word(
    target: &GroupElement,
    max_len: usize,
    budget: usize,
) -> Result<Option<Vec<usize>>, CentreError> {
    let Ok(key) = encode(target) else {
        return Ok(None);
    };
    let mut search = CayleySearch::new();
    loop {
        if let Some(&i) = search.index.get(&key) {
            return Ok(Some(search.word_to(i)));
        }
        if search.radius() >= max_len {
            return Ok(None);
        }
        search.grow(budget)?;
    }
}

impl GroupRing {
    /// `|Ball(c)|`, cached across calls.
    pub fn ball_size(&self, c: usize) -> Result<u64, CentreError> {
        if let Some(&n) = self.balls.read().expect("ball cache").get(c) {
            return Ok(n);
        }
        let sizes = ball_sizes(c, self.limits.ball_budget)?;
        let value = sizes[c];
        *self.balls.write().expect("ball cache") = sizes;
        Ok(value)
    }
}
