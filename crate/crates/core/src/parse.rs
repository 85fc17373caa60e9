//! Text grammars for algebra, group and group-ring elements.
//!
//! Algebra: `3*x*y^2*x + y - 1/2`. Group: `z(1) t(0)^-1 u^2`.
//! Group ring: `(x*y^2*x : z(1) t(0) s(1)) + 2*(y : e)`, with `(…)^k` powers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, MonomialAlgebra, Monomial};
use crate::centre::{CentreError, GroupRing, GroupRingElement};
use crate::field::{Field, Scalar};
use crate::group::{parse_group_word, GroupElement};
use crate::word::{Letter, RunWord, WordError};

/// Longest monomial literal expanded into letters.
const MONOMIAL_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Centre(#[from] CentreError),
}

impl From<WordError> for ParseError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::Parse { pos, msg } => ParseError::Syntax { pos, msg },
            other => ParseError::Algebra(AlgebraError::Word(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grammar {
    Algebra,
    Group,
    GroupRing,
}

impl FromStr for Grammar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "algebra" => Ok(Grammar::Algebra),
            "group" => Ok(Grammar::Group),
            "groupring" => Ok(Grammar::GroupRing),
            _ => Err(format!("unknown grammar {s:?}; expected algebra, group or groupring")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedElement {
    Algebra(AlgebraElement),
    Group(GroupElement),
    GroupRing(GroupRingElement),
}

/// A parsed element with the warnings raised while normalizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub element: T,
    pub warnings: Vec<String>,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn small_exponent(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let d = self.digits().ok_or_else(|| self.error("expected an exponent"))?;
        d.parse().map_err(|_| ParseError::Syntax {
            pos: start,
            msg: format!("exponent {d} is too large"),
        })
    }

    /// `n` or `n/d`.
    fn coefficient(&mut self, field: Field) -> Result<Option<Scalar>, ParseError> {
        let start = self.pos;
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("digits");
        let den: BigInt = if self.eat('/') {
            self.digits()
                .ok_or_else(|| self.error("expected a denominator"))?
                .parse()
                .expect("digits")
        } else {
            BigInt::one()
        };
        let invalid = match field {
            Field::Prime(p) => den.mod_floor(&BigInt::from(p)).is_zero(),
            Field::Rationals => den.is_zero(),
        };
        if invalid {
            return Err(ParseError::Syntax {
                pos: start,
                msg: "denominator vanishes in the field".into(),
            });
        }
        Ok(Some(field.normalize(BigRational::new(num, den))))
    }

    /// Leading sign of a summand: `+` or `-`, required after the first term.
    fn sign(&mut self, first: bool) -> Result<bool, ParseError> {
        if self.eat('-') {
            Ok(true)
        } else if self.eat('+') || first {
            Ok(false)
        } else {
            Err(self.error("expected '+' or '-'"))
        }
    }
}

fn apply_sign(field: Field, negative: bool, c: Scalar) -> Scalar {
    if negative {
        field.neg(&c)
    } else {
        c
    }
}

fn monomial_factors(cur: &mut Cursor) -> Result<Vec<Letter>, ParseError> {
    let mut letters = Vec::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('1') => cur.pos += 1,
            Some(c @ ('x' | 'y')) => {
                cur.pos += 1;
                let letter = Letter::from_char(c).expect("letter");
                let exp = if cur.eat('^') { cur.small_exponent()? } else { 1 };
                if letters.len() as u64 + exp > MONOMIAL_LIMIT {
                    return Err(cur.error(format!("monomial longer than {MONOMIAL_LIMIT} letters")));
                }
                letters.extend(std::iter::repeat_n(letter, exp as usize));
            }
            _ => return Err(cur.error("expected x, y or 1")),
        }
        cur.skip_ws();
        match cur.peek() {
            Some('*') => cur.pos += 1,
            Some('x' | 'y') => {}
            _ => return Ok(letters),
        }
    }
}

pub fn parse_algebra(text: &str, algebra: &MonomialAlgebra) -> Result<Parsed<AlgebraElement>, ParseError> {
    let field = algebra.field();
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return Err(cur.error("empty input"));
    }
    let mut terms = Vec::new();
    let mut warnings = Vec::new();
    let mut first = true;
    while !cur.at_end() {
        let negative = cur.sign(first)?;
        first = false;
        let coeff = cur.coefficient(field)?;
        cur.skip_ws();
        let letters = match (&coeff, cur.peek()) {
            (Some(_), Some('*')) => {
                cur.pos += 1;
                monomial_factors(&mut cur)?
            }
            (Some(_), Some('x' | 'y')) | (None, _) => monomial_factors(&mut cur)?,
            (Some(_), _) => Vec::new(),
        };
        let m = Monomial::from_letters(&letters);
        if !algebra.is_nonzero(&m)? {
            warnings.push(format!("monomial {m} is zero in this algebra"));
            continue;
        }
        let c = apply_sign(field, negative, coeff.unwrap_or_else(Scalar::one));
        terms.push((m, c));
    }
    Ok(Parsed {
        element: AlgebraElement::from_terms(field, terms),
        warnings,
    })
}

/// Position of the `)` closing a group opened before `from`.
fn matching_paren(text: &str, from: usize) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in text[from..].char_indices() {
        match c {
            '(' => depth += 1,
            ')' if depth == 0 => return Some(from + i),
            ')' => depth -= 1,
            _ => {}
        }
    }
    None
}

pub fn parse_group(text: &str) -> Result<GroupElement, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    parse_group_word(text).map_err(|e| ParseError::Syntax {
        pos: e.pos,
        msg: e.msg,
    })
}

pub fn parse_groupring(text: &str, ring: &GroupRing) -> Result<Parsed<GroupRingElement>, ParseError> {
    let field = ring.field();
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return Err(cur.error("empty input"));
    }
    let mut total = GroupRingElement::zero();
    let mut warnings = Vec::new();
    let mut first = true;
    while !cur.at_end() {
        let negative = cur.sign(first)?;
        first = false;
        let coeff = cur.coefficient(field)?;
        if coeff.is_some() {
            cur.expect('*')?;
        }
        cur.expect('(')?;
        let colon = cur.text[cur.pos..]
            .find(':')
            .map(|i| cur.pos + i)
            .ok_or_else(|| cur.error("expected ':' between word and group parts"))?;
        let close = matching_paren(cur.text, colon + 1).ok_or_else(|| cur.error("expected ')'"))?;
        let word: RunWord = cur.text[cur.pos..colon].parse().map_err(|e| match e {
            WordError::Parse { pos, msg } => ParseError::Syntax { pos: cur.pos + pos, msg },
            other => other.into(),
        })?;
        let group = parse_group_word(&cur.text[colon + 1..close]).map_err(|e| ParseError::Syntax {
            pos: colon + 1 + e.pos,
            msg: e.msg,
        })?;
        cur.pos = close + 1;
        let exponent = if cur.eat('^') { cur.small_exponent()? } else { 1 };
        let exponent = u32::try_from(exponent).map_err(|_| cur.error("power too large"))?;
        if !ring.is_nonzero_word(&word)? {
            warnings.push(format!("word {} is zero in this ring", word.to_product_string()));
            continue;
        }
        let base = GroupRingElement::single(word, group);
        let power = ring.pow(&base, exponent)?;
        if power.is_zero() && exponent > 1 {
            warnings.push(format!("power {exponent} of a term vanishes"));
        }
        let c = apply_sign(field, negative, coeff.unwrap_or_else(Scalar::one));
        total = total.add(&power.scale(&c, field), field);
    }
    Ok(Parsed {
        element: total,
        warnings,
    })
}

impl ParsedElement {
    /// Canonical text, the inverse of the grammar it was parsed with.
    pub fn render(&self, field: Field) -> String {
        match self {
            ParsedElement::Algebra(e) => e.render(field),
            ParsedElement::Group(g) => g.to_string(),
            ParsedElement::GroupRing(e) => e.render(field),
        }
    }
}

pub fn parse_element(
    text: &str,
    grammar: Grammar,
    algebra: &MonomialAlgebra,
    ring: &GroupRing,
) -> Result<Parsed<ParsedElement>, ParseError> {
    Ok(match grammar {
        Grammar::Algebra => {
            let p = parse_algebra(text, algebra)?;
            Parsed { element: ParsedElement::Algebra(p.element), warnings: p.warnings }
        }
        Grammar::Group => Parsed {
            element: ParsedElement::Group(parse_group(text)?),
            warnings: Vec::new(),
        },
        Grammar::GroupRing => {
            let p = parse_groupring(text, ring)?;
            Parsed { element: ParsedElement::GroupRing(p.element), warnings: p.warnings }
        }
    })
}
