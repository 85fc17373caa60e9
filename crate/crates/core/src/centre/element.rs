use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{CentreError, GroupRing};
use crate::field::{Field, Scalar};
use crate::group::GroupElement;
use crate::word::{Letter, RunWord};

/// Finite combination of pairs `(word, group element)`; coefficients from `A`
/// commute with `G`, so `(a, g)(b, h) = (ab, gh)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<(RunWord, GroupElement), Scalar>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(word: RunWord, group: GroupElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((word, group), Scalar::one());
        GroupRingElement { terms }
    }

    pub fn one() -> Self {
        Self::single(RunWord::new(), GroupElement::identity())
    }

    pub fn from_terms<I>(field: Field, terms: I) -> Self
    where
        I: IntoIterator<Item = ((RunWord, GroupElement), Scalar)>,
    {
        let mut map: BTreeMap<(RunWord, GroupElement), Scalar> = BTreeMap::new();
        for (k, c) in terms {
            let c = field.normalize(c);
            let slot = map.entry(k).or_insert_with(Scalar::zero);
            *slot = field.add(slot, &c);
        }
        map.retain(|_, c| !c.is_zero());
        GroupRingElement { terms: map }
    }

    pub fn terms(&self) -> &BTreeMap<(RunWord, GroupElement), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The pair when this is a nonzero multiple of a single pair.
    pub fn as_single(&self) -> Option<(&RunWord, &GroupElement)> {
        match self.terms.len() {
            1 => self.terms.keys().next().map(|(w, g)| (w, g)),
            _ => None,
        }
    }

    pub fn add(&self, other: &GroupRingElement, field: Field) -> GroupRingElement {
        Self::from_terms(
            field,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Scalar, field: Field) -> GroupRingElement {
        Self::from_terms(field, self.terms.iter().map(|(k, x)| (k.clone(), field.mul(x, c))))
    }

    /// `(x*y^2*x : z(1) t(0) s(1)) + 2*(y : e)`, largest pair first.
    pub fn render(&self, field: Field) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, ((w, g), c)) in self.terms.iter().rev().enumerate() {
            let negative = field.is_negative(c);
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !magnitude.is_one() {
                out.push_str(&field.render(&magnitude));
                out.push('*');
            }
            out.push_str(&format!("({} : {})", w.to_product_string(), g));
        }
        out
    }
}

/// One of the eight generators of `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BGenerator {
    pub name: &'static str,
    pub letter: Letter,
    /// Index into the group generator list `s_0, s_0^{-1}, t_0, t_0^{-1}, u, u^{-1}`,
    /// `None` for the identity.
    pub group: Option<usize>,
}

impl BGenerator {
    pub fn group_element(&self) -> GroupElement {
        self.group.map_or_else(GroupElement::identity, group_generator)
    }

    pub fn element(&self) -> GroupRingElement {
        GroupRingElement::single(RunWord::from_letters(&[self.letter]), self.group_element())
    }
}

/// `s_0, s_0^{-1}, t_0, t_0^{-1}, u, u^{-1}`.
pub(crate) fn group_generator(i: usize) -> GroupElement {
    match i {
        0 => GroupElement::s(0),
        1 => GroupElement::s(0).inverse(),
        2 => GroupElement::t(0),
        3 => GroupElement::t(0).inverse(),
        4 => GroupElement::u(),
        5 => GroupElement::u().inverse(),
        _ => panic!("group generator index {i} out of range"),
    }
}

pub const B_GENERATORS: [BGenerator; 8] = [
    BGenerator { name: "xs0", letter: Letter::X, group: Some(0) },
    BGenerator { name: "xs0^-1", letter: Letter::X, group: Some(1) },
    BGenerator { name: "xt0", letter: Letter::X, group: Some(2) },
    BGenerator { name: "xt0^-1", letter: Letter::X, group: Some(3) },
    BGenerator { name: "xu", letter: Letter::X, group: Some(4) },
    BGenerator { name: "xu^-1", letter: Letter::X, group: Some(5) },
    BGenerator { name: "x", letter: Letter::X, group: None },
    BGenerator { name: "y", letter: Letter::Y, group: None },
];

impl GroupRing {
    pub fn multiply(&self, p: &GroupRingElement, q: &GroupRingElement) -> Result<GroupRingElement, CentreError> {
        let mut terms = Vec::new();
        for ((w1, g1), c1) in p.terms() {
            for ((w2, g2), c2) in q.terms() {
                let w = w1.concat(w2);
                if self.is_nonzero_word(&w)? {
                    terms.push(((w, g1.multiply(g2)), self.field.mul(c1, c2)));
                }
            }
        }
        Ok(GroupRingElement::from_terms(self.field, terms))
    }

    /// `c·(w, g)`, or zero when `w` vanishes.
    pub fn term(&self, c: Scalar, w: RunWord, g: GroupElement) -> Result<GroupRingElement, CentreError> {
        if !self.is_nonzero_word(&w)? {
            return Ok(GroupRingElement::zero());
        }
        Ok(GroupRingElement::from_terms(self.field, [((w, g), c)]))
    }

    /// Drops pairs whose word vanishes; reports whether anything was dropped.
    pub fn reduce(&self, e: &GroupRingElement) -> Result<(GroupRingElement, bool), CentreError> {
        let mut kept = Vec::new();
        let mut dropped = false;
        for (k, c) in e.terms() {
            if self.is_nonzero_word(&k.0)? {
                kept.push((k.clone(), c.clone()));
            } else {
                dropped = true;
            }
        }
        Ok((GroupRingElement::from_terms(self.field, kept), dropped))
    }

    pub fn pow(&self, e: &GroupRingElement, k: u32) -> Result<GroupRingElement, CentreError> {
        let mut acc = GroupRingElement::one();
        for _ in 0..k {
            acc = self.multiply(&acc, e)?;
        }
        Ok(acc)
    }
}
