//! Natural numbers too large to materialize.
//!
//! Values below `2^limit` (the materialization threshold, in bits) are stored
//! exactly. Anything larger is kept in a sparse binary form: a strictly
//! decreasing list of bit positions, each itself an [`ExtendedNat`], plus an
//! exact low part below `2^limit`. Power towers `2^^(h;t)` fall out of this
//! form recursively, and so do the sums that appear in word lengths such as
//! `2·|v_3| + p_3`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Default materialization threshold: values of at most 2^20 bits are exact.
pub const DEFAULT_MATERIALIZE_BITS: u64 = 1 << 20;

static MATERIALIZE_BITS: OnceLock<u64> = OnceLock::new();

/// The process-wide materialization threshold in bits.
pub fn materialize_bits() -> u64 {
    *MATERIALIZE_BITS.get_or_init(|| DEFAULT_MATERIALIZE_BITS)
}

/// Fixes the materialization threshold. Must run before any [`ExtendedNat`]
/// is built; once fixed, a different value is refused and the current one
/// returned as the error.
pub fn set_materialize_bits(bits: u64) -> Result<(), u64> {
    let bits = bits.max(64);
    let current = *MATERIALIZE_BITS.get_or_init(|| bits);
    if current == bits {
        Ok(())
    } else {
        Err(current)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Exact(BigUint),
    /// `Σ 2^high[i] + low`, `high` strictly decreasing and nonempty, every
    /// position at least the threshold, `low < 2^threshold`.
    Huge {
        high: Vec<ExtendedNat>,
        low: BigUint,
    },
}

/// Arbitrary natural number with a symbolic form for values beyond the
/// materialization threshold.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtendedNat(Repr);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtendedNatParseError {
    #[error("expected a natural number at byte {0}")]
    Expected(usize),
    #[error("unexpected trailing input at byte {0}")]
    Trailing(usize),
}

impl ExtendedNat {
    pub const ZERO: ExtendedNat = ExtendedNat(Repr::Exact(BigUint::ZERO));

    pub fn zero() -> Self {
        ExtendedNat(Repr::Exact(BigUint::zero()))
    }

    pub fn one() -> Self {
        ExtendedNat(Repr::Exact(BigUint::one()))
    }

    pub fn from_u64(v: u64) -> Self {
        ExtendedNat(Repr::Exact(BigUint::from(v)))
    }

    pub fn from_biguint(v: BigUint) -> Self {
        let limit = materialize_bits();
        if v.bits() <= limit {
            return ExtendedNat(Repr::Exact(v));
        }
        Self::normalize(Vec::new(), v)
    }

    /// `2^exponent`, symbolic when the result would cross the threshold.
    pub fn pow2(exponent: &ExtendedNat) -> Self {
        let limit = materialize_bits();
        match &exponent.0 {
            Repr::Exact(e) if e < &BigUint::from(limit) => {
                let e = e.to_u64().expect("below threshold");
                ExtendedNat(Repr::Exact(BigUint::one() << e))
            }
            _ => ExtendedNat(Repr::Huge {
                high: vec![exponent.clone()],
                low: BigUint::zero(),
            }),
        }
    }

    /// The power tower `2^2^…^top` with `height` exponentiations.
    pub fn tower(height: u32, top: BigUint) -> Self {
        let mut value = ExtendedNat::from_biguint(top);
        for _ in 0..height {
            value = ExtendedNat::pow2(&value);
        }
        value
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.0, Repr::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Exact(v) if v.is_zero())
    }

    pub fn as_biguint(&self) -> Option<&BigUint> {
        match &self.0 {
            Repr::Exact(v) => Some(v),
            Repr::Huge { .. } => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.as_biguint().and_then(|v| v.to_u64())
    }

    /// `min(self, cap)` as a machine integer.
    pub fn capped(&self, cap: u64) -> u64 {
        self.to_u64().map_or(cap, |v| v.min(cap))
    }

    pub fn add(&self, other: &ExtendedNat) -> ExtendedNat {
        match (&self.0, &other.0) {
            (Repr::Exact(a), Repr::Exact(b)) => ExtendedNat::from_biguint(a + b),
            _ => {
                let (mut positions, low) = self.clone().into_parts();
                let (other_positions, other_low) = other.clone().into_parts();
                positions.extend(other_positions);
                Self::normalize(positions, low + other_low)
            }
        }
    }

    pub fn add_u64(&self, v: u64) -> ExtendedNat {
        self.add(&ExtendedNat::from_u64(v))
    }

    pub fn double(&self) -> ExtendedNat {
        self.add(self)
    }

    /// `self - other`, or `None` when negative or not representable without
    /// materializing a symbolic part.
    pub fn checked_sub(&self, other: &ExtendedNat) -> Option<ExtendedNat> {
        if self < other {
            return None;
        }
        match (&self.0, &other.0) {
            (Repr::Exact(a), Repr::Exact(b)) => Some(ExtendedNat::from_biguint(a - b)),
            (Repr::Huge { high, low }, Repr::Exact(b)) => {
                if low >= b {
                    Some(ExtendedNat(Repr::Huge {
                        high: high.clone(),
                        low: low - b,
                    }))
                } else {
                    None
                }
            }
            (Repr::Huge { high, low }, Repr::Huge { high: oh, low: ol }) => {
                if low < ol || !oh.iter().all(|p| high.contains(p)) {
                    return None;
                }
                let rest: Vec<ExtendedNat> =
                    high.iter().filter(|p| !oh.contains(p)).cloned().collect();
                Some(Self::normalize(rest, low - ol))
            }
            (Repr::Exact(_), Repr::Huge { .. }) => None,
        }
    }

    /// Recognizes a pure tower `2^^(h;t)` with `h ≥ 1`, choosing the largest
    /// exact top.
    pub fn as_tower(&self) -> Option<(u32, BigUint)> {
        match &self.0 {
            Repr::Exact(v) => {
                if v.is_zero() || v.count_ones() != 1 {
                    return None;
                }
                let e = BigUint::from(v.bits() - 1);
                Some((1, e))
            }
            Repr::Huge { high, low } if high.len() == 1 && low.is_zero() => match &high[0].0 {
                Repr::Exact(e) => Some((1, e.clone())),
                Repr::Huge { .. } => high[0].as_tower().map(|(h, t)| (h + 1, t)),
            },
            Repr::Huge { .. } => None,
        }
    }

    fn into_parts(self) -> (Vec<ExtendedNat>, BigUint) {
        match self.0 {
            Repr::Exact(v) => (Vec::new(), v),
            Repr::Huge { high, low } => (high, low),
        }
    }

    fn normalize(positions: Vec<ExtendedNat>, mut low: BigUint) -> ExtendedNat {
        let limit = materialize_bits();
        let mut counts: BTreeMap<ExtendedNat, u64> = BTreeMap::new();
        for p in positions {
            *counts.entry(p).or_default() += 1;
        }
        if low.bits() > limit {
            let carry = &low >> limit;
            low = &low - (&carry << limit);
            for bit in 0..carry.bits() {
                if carry.bit(bit) {
                    *counts
                        .entry(ExtendedNat::from_u64(limit).add_u64(bit))
                        .or_default() += 1;
                }
            }
        }
        let mut high = Vec::new();
        while let Some((p, c)) = counts.pop_first() {
            if c % 2 == 1 {
                high.push(p.clone());
            }
            if c / 2 > 0 {
                *counts.entry(p.add_u64(1)).or_default() += c / 2;
            }
        }
        if high.is_empty() {
            return ExtendedNat(Repr::Exact(low));
        }
        high.reverse();
        ExtendedNat(Repr::Huge { high, low })
    }

    /// Parses a leading natural number (`123`, `2^^(h;t)`, or a `+`-sum of
    /// those) and returns it together with the number of bytes consumed.
    pub fn parse_prefix(text: &str) -> Result<(ExtendedNat, usize), ExtendedNatParseError> {
        let bytes = text.as_bytes();
        let (mut total, mut pos) = parse_term(bytes, 0)?;
        while pos < bytes.len() && bytes[pos] == b'+' {
            match parse_term(bytes, pos + 1) {
                Ok((term, next)) => {
                    total = total.add(&term);
                    pos = next;
                }
                Err(_) => break,
            }
        }
        Ok((total, pos))
    }
}

fn parse_digits(bytes: &[u8], pos: usize) -> Result<(BigUint, usize), ExtendedNatParseError> {
    let end = bytes[pos..]
        .iter()
        .position(|b| !b.is_ascii_digit())
        .map_or(bytes.len(), |i| pos + i);
    if end == pos {
        return Err(ExtendedNatParseError::Expected(pos));
    }
    let digits = std::str::from_utf8(&bytes[pos..end]).expect("ascii digits");
    Ok((digits.parse().expect("ascii digits"), end))
}

fn parse_term(bytes: &[u8], pos: usize) -> Result<(ExtendedNat, usize), ExtendedNatParseError> {
    if bytes[pos..].starts_with(b"2^^(") {
        let (height, mut p) = parse_digits(bytes, pos + 4)?;
        if bytes.get(p) != Some(&b';') {
            return Err(ExtendedNatParseError::Expected(p));
        }
        p += 1;
        let inner = std::str::from_utf8(&bytes[p..]).expect("valid utf8 suffix");
        let (mut value, used) = ExtendedNat::parse_prefix(inner)?;
        p += used;
        if bytes.get(p) != Some(&b')') {
            return Err(ExtendedNatParseError::Expected(p));
        }
        let height = height.to_u32().ok_or(ExtendedNatParseError::Expected(pos))?;
        for _ in 0..height {
            value = ExtendedNat::pow2(&value);
        }
        return Ok((value, p + 1));
    }
    let (v, p) = parse_digits(bytes, pos)?;
    Ok((ExtendedNat::from_biguint(v), p))
}

impl FromStr for ExtendedNat {
    type Err = ExtendedNatParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ExtendedNatParseError::Expected(0));
        }
        let (v, used) = ExtendedNat::parse_prefix(s)?;
        if used != s.len() {
            return Err(ExtendedNatParseError::Trailing(used));
        }
        Ok(v)
    }
}

impl From<u64> for ExtendedNat {
    fn from(v: u64) -> Self {
        ExtendedNat::from_u64(v)
    }
}

impl From<BigUint> for ExtendedNat {
    fn from(v: BigUint) -> Self {
        ExtendedNat::from_biguint(v)
    }
}

impl Ord for ExtendedNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Exact(a), Repr::Exact(b)) => a.cmp(b),
            (Repr::Exact(_), Repr::Huge { .. }) => Ordering::Less,
            (Repr::Huge { .. }, Repr::Exact(_)) => Ordering::Greater,
            (Repr::Huge { high: h1, low: l1 }, Repr::Huge { high: h2, low: l2 }) => h1
                .iter()
                .zip(h2)
                .map(|(a, b)| a.cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or_else(|| h1.len().cmp(&h2.len()))
                .then_with(|| l1.cmp(l2)),
        }
    }
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(height, top)` text for `2^p`.
fn pow2_form(p: &ExtendedNat) -> (u32, String) {
    match &p.0 {
        Repr::Exact(e) if e.bits() > 64 && e.count_ones() == 1 => {
            let (h, t) = pow2_form(&ExtendedNat::from_u64(e.bits() - 1));
            (h + 1, t)
        }
        Repr::Exact(e) => (1, e.to_string()),
        Repr::Huge { high, low } if high.len() == 1 && low.is_zero() => {
            let (h, t) = pow2_form(&high[0]);
            (h + 1, t)
        }
        Repr::Huge { .. } => (1, p.to_string()),
    }
}

fn write_pow2(f: &mut fmt::Formatter<'_>, p: &ExtendedNat) -> fmt::Result {
    let (h, t) = pow2_form(p);
    write!(f, "2^^({h};{t})")
}

fn write_exact(f: &mut fmt::Formatter<'_>, v: &BigUint, leading_plus: bool) -> fmt::Result {
    let sep = if leading_plus { "+" } else { "" };
    if v.bits() <= 64 || (v >> 64u32).count_ones() > 4 {
        return write!(f, "{sep}{v}");
    }
    let mut first = !leading_plus;
    for bit in (64..v.bits()).rev() {
        if v.bit(bit) {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            write_pow2(f, &ExtendedNat::from_u64(bit))?;
        }
    }
    let low = v & ((BigUint::one() << 64u32) - 1u32);
    if !low.is_zero() {
        write!(f, "+{low}")?;
    }
    Ok(())
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Exact(v) => write_exact(f, v, false),
            Repr::Huge { high, low } => {
                for (i, p) in high.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write_pow2(f, p)?;
                }
                if !low.is_zero() {
                    write_exact(f, low, true)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: u64) -> ExtendedNat {
        ExtendedNat::from_u64(v)
    }

    #[test]
    fn tower_values() {
        assert_eq!(ExtendedNat::tower(4, BigUint::from(1u32)), big(65536));
        let p2 = ExtendedNat::tower(4, BigUint::from(2u32));
        assert!(p2.is_exact());
        assert_eq!(p2.as_biguint().unwrap().bits(), 65537);
        let p3 = ExtendedNat::tower(4, BigUint::from(3u32));
        assert!(!p3.is_exact());
        assert_eq!(p3.to_string(), "2^^(2;256)");
        assert_eq!(p3.as_tower(), Some((1, BigUint::one() << 256u32)));
    }

    #[test]
    fn renders_large_exact_as_tower_sum() {
        let v = ExtendedNat::from_biguint((BigUint::one() << 65536u32) + 131076u32);
        assert_eq!(v.to_string(), "2^^(1;65536)+131076");
        assert_eq!(v.to_string().parse::<ExtendedNat>().unwrap(), v);
    }

    #[test]
    fn tower_comparisons_without_materializing() {
        let p3 = ExtendedNat::tower(4, BigUint::from(3u32));
        let p4 = ExtendedNat::tower(4, BigUint::from(4u32));
        let p2 = ExtendedNat::tower(4, BigUint::from(2u32));
        assert!(p2 < p3 && p3 < p4);
        assert!(p3.add(&p2) < p4);
        assert!(p3.double() > p3.add(&p2));
        assert!(big(u64::MAX) < p3);
        assert_eq!(p3.checked_sub(&p2), None);
        assert_eq!(p3.add(&p2).checked_sub(&p3), Some(p2));
    }

    #[test]
    fn carries_between_symbolic_bits() {
        let p3 = ExtendedNat::tower(4, BigUint::from(3u32));
        let twice = p3.double();
        assert_eq!(twice.as_tower(), Some((1, (BigUint::one() << 256u32) + 1u32)));
        assert_eq!(twice.to_string(), format!("2^^(1;{})", (BigUint::one() << 256u32) + 1u32));
        let four = twice.double();
        assert!(four > twice);
        assert_eq!(p3.add(&p3).add(&p3).add(&p3), four);
    }

    #[test]
    fn parses_nested_towers() {
        let v: ExtendedNat = "2^^(4;3)".parse().unwrap();
        assert_eq!(v, ExtendedNat::tower(4, BigUint::from(3u32)));
        let s: ExtendedNat = "2^^(2;256)+2^^(1;65537)+262152".parse().unwrap();
        assert_eq!(s.to_string(), "2^^(2;256)+2^^(1;65537)+262152");
        assert!("2^^(x;1)".parse::<ExtendedNat>().is_err());
        assert!("12abc".parse::<ExtendedNat>().is_err());
    }

    proptest! {
        #[test]
        fn exact_arithmetic_agrees_with_u128(a in 0u64..u64::MAX, b in 0u64..u64::MAX) {
            let sum = big(a).add(&big(b));
            prop_assert_eq!(sum.as_biguint().unwrap(), &(BigUint::from(a) + BigUint::from(b)));
            prop_assert_eq!(big(a).cmp(&big(b)), a.cmp(&b));
            prop_assert_eq!(big(a).checked_sub(&big(b)).is_some(), a >= b);
        }

        #[test]
        fn symbolic_order_matches_offsets(a in 0u64..1000, b in 0u64..1000, h in 0u32..3) {
            let tower = ExtendedNat::tower(4, BigUint::from(3u32)).add(&ExtendedNat::tower(h, BigUint::from(5u32)));
            let x = tower.add_u64(a);
            let y = tower.add_u64(b);
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
            prop_assert_eq!(x.to_string().parse::<ExtendedNat>().unwrap(), x);
        }
    }
}
