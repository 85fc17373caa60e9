//! Irving's group `G`: generated by `u` and `z_n, s_n, t_n` (n ∈ ℤ) with
//! `s_n t_m = z_{n-m} t_m s_n`, all `z`'s central, `s`'s commuting, `t`'s
//! commuting, and `u` shifting `s`/`t` indices by one.
//!
//! Elements are kept in the normal form `(Π z_n^α) (Π t_n^β) (Π s_n^γ) u^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Finitely supported `ℤ → ℤ`, zero exponents never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexedExponents(BTreeMap<BigInt, BigInt>);

impl IndexedExponents {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(index: BigInt, exp: BigInt) -> Self {
        let mut e = Self::new();
        e.add_at(index, &exp);
        e
    }

    pub fn get(&self, index: &BigInt) -> BigInt {
        self.0.get(index).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, index: BigInt, exp: &BigInt) {
        if exp.is_zero() {
            return;
        }
        let slot = self.0.entry(index.clone()).or_default();
        *slot += exp;
        if slot.is_zero() {
            self.0.remove(&index);
        }
    }

    pub fn merge(&mut self, other: &IndexedExponents) {
        for (n, e) in &other.0 {
            self.add_at(n.clone(), e);
        }
    }

    pub fn shifted(&self, k: &BigInt) -> IndexedExponents {
        IndexedExponents(self.0.iter().map(|(n, e)| (n + k, e.clone())).collect())
    }

    pub fn negated(&self) -> IndexedExponents {
        IndexedExponents(self.0.iter().map(|(n, e)| (n.clone(), -e)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    z: IndexedExponents,
    t: IndexedExponents,
    s: IndexedExponents,
    u: BigInt,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_parts(z: IndexedExponents, t: IndexedExponents, s: IndexedExponents, u: BigInt) -> Self {
        GroupElement { z, t, s, u }
    }

    pub fn z(n: i64) -> Self {
        Self::z_pow(n.into(), BigInt::one())
    }

    pub fn s(n: i64) -> Self {
        Self::s_pow(n.into(), BigInt::one())
    }

    pub fn t(n: i64) -> Self {
        Self::t_pow(n.into(), BigInt::one())
    }

    pub fn u() -> Self {
        Self::u_pow(BigInt::one())
    }

    pub fn z_pow(n: BigInt, e: BigInt) -> Self {
        GroupElement {
            z: IndexedExponents::single(n, e),
            ..Self::default()
        }
    }

    pub fn s_pow(n: BigInt, e: BigInt) -> Self {
        GroupElement {
            s: IndexedExponents::single(n, e),
            ..Self::default()
        }
    }

    pub fn t_pow(n: BigInt, e: BigInt) -> Self {
        GroupElement {
            t: IndexedExponents::single(n, e),
            ..Self::default()
        }
    }

    pub fn u_pow(k: BigInt) -> Self {
        GroupElement {
            u: k,
            ..Self::default()
        }
    }

    pub fn z_part(&self) -> &IndexedExponents {
        &self.z
    }

    pub fn t_part(&self) -> &IndexedExponents {
        &self.t
    }

    pub fn s_part(&self) -> &IndexedExponents {
        &self.s
    }

    pub fn u_exp(&self) -> &BigInt {
        &self.u
    }

    pub fn is_identity(&self) -> bool {
        self.z.is_empty() && self.t.is_empty() && self.s.is_empty() && self.u.is_zero()
    }

    pub fn multiply(&self, h: &GroupElement) -> GroupElement {
        let ht = h.t.shifted(&self.u);
        let hs = h.s.shifted(&self.u);
        let mut z = self.z.clone();
        z.merge(&h.z);
        for (n, a) in self.s.iter() {
            for (m, b) in ht.iter() {
                z.add_at(n - m, &(a * b));
            }
        }
        let mut t = self.t.clone();
        t.merge(&ht);
        let mut s = self.s.clone();
        s.merge(&hs);
        GroupElement {
            z,
            t,
            s,
            u: &self.u + &h.u,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let part = |z: IndexedExponents, t: IndexedExponents, s: IndexedExponents| GroupElement {
            z,
            t,
            s,
            u: BigInt::zero(),
        };
        let none = IndexedExponents::new;
        GroupElement::u_pow(-&self.u)
            .multiply(&part(none(), none(), self.s.negated()))
            .multiply(&part(none(), self.t.negated(), none()))
            .multiply(&part(self.z.negated(), none(), none()))
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(GroupElement::identity(), |acc, _| acc.multiply(&base))
    }

    /// `u^k g u^{-k}`.
    pub fn conjugate_by_u(&self, k: &BigInt) -> GroupElement {
        GroupElement {
            z: self.z.clone(),
            t: self.t.shifted(k),
            s: self.s.shifted(k),
            u: self.u.clone(),
        }
    }

    /// `g h g^{-1} h^{-1}`.
    pub fn commutator(&self, h: &GroupElement) -> GroupElement {
        self.multiply(h)
            .multiply(&self.inverse())
            .multiply(&h.inverse())
    }

    pub fn commutes_with(&self, h: &GroupElement) -> bool {
        self.multiply(h) == h.multiply(self)
    }

    /// Commutes with the generators `s_0`, `t_0`, `u`.
    pub fn is_central(&self) -> bool {
        [GroupElement::s(0), GroupElement::t(0), GroupElement::u()]
            .iter()
            .all(|g| self.commutes_with(g))
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, name: &str, index: Option<&BigInt>, exp: &BigInt) -> fmt::Result {
    match index {
        Some(n) => write!(f, "{name}({n})")?,
        None => f.write_str(name)?,
    }
    if !exp.is_one() {
        write!(f, "^{exp}")?;
    }
    Ok(())
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let mut first = true;
        for (name, part) in [("z", &self.z), ("t", &self.t), ("s", &self.s)] {
            for (n, e) in part.iter() {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write_factor(f, name, Some(n), e)?;
            }
        }
        if !self.u.is_zero() {
            if !first {
                f.write_str(" ")?;
            }
            write_factor(f, "u", None, &self.u)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("group word syntax error at byte {pos}: {msg}")]
pub struct GroupParseError {
    pub pos: usize,
    pub msg: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: impl Into<String>) -> GroupParseError {
        GroupParseError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt, GroupParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| GroupParseError {
                pos: start,
                msg: "expected an integer".into(),
            })
    }
}

/// Parses juxtaposed factors such as `s(1) t(0)^-1 u^2`; `e` and `1` denote the identity.
pub fn parse_group_word(text: &str) -> Result<GroupElement, GroupParseError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut acc = GroupElement::identity();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.error("empty group word"));
    }
    loop {
        cur.skip_ws();
        let Some(c) = cur.peek() else { break };
        cur.pos += c.len_utf8();
        let factor = match c {
            'e' | '1' => GroupElement::identity(),
            'u' => GroupElement::u(),
            's' | 't' | 'z' => {
                cur.skip_ws();
                if !cur.eat('(') {
                    return Err(cur.error(format!("expected '(' after {c}")));
                }
                let n = cur.integer()?;
                cur.skip_ws();
                if !cur.eat(')') {
                    return Err(cur.error("expected ')'"));
                }
                match c {
                    's' => GroupElement::s_pow(n, BigInt::one()),
                    't' => GroupElement::t_pow(n, BigInt::one()),
                    _ => GroupElement::z_pow(n, BigInt::one()),
                }
            }
            _ => {
                cur.pos -= c.len_utf8();
                return Err(cur.error(format!("unexpected {c:?}")));
            }
        };
        cur.skip_ws();
        let factor = if cur.eat('^') {
            let k = cur.integer()?;
            power(&factor, &k)
        } else {
            factor
        };
        acc = acc.multiply(&factor);
    }
    Ok(acc)
}

fn power(g: &GroupElement, k: &BigInt) -> GroupElement {
    // generator powers are exact: scale the single exponent instead of looping
    let scale = |part: &IndexedExponents| {
        IndexedExponents(part.iter().map(|(n, e)| (n.clone(), e * k)).collect())
    };
    let single = [g.z.len(), g.t.len(), g.s.len()].iter().sum::<usize>() + usize::from(!g.u.is_zero()) <= 1;
    if single {
        return GroupElement {
            z: scale(&g.z),
            t: scale(&g.t),
            s: scale(&g.s),
            u: &g.u * k,
        };
    }
    let base = if k.is_negative() { g.inverse() } else { g.clone() };
    let mut acc = GroupElement::identity();
    let mut i = BigInt::zero();
    while i < k.abs() {
        acc = acc.multiply(&base);
        i += 1;
    }
    acc
}

impl FromStr for GroupElement {
    type Err = GroupParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_word(s)
    }
}
