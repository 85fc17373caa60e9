use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::field::{Field, Scalar};
use crate::linalg::SparseVec;
use crate::word::{letters_to_string, Letter};

/// A word of the free monoid on `{x, y}`, ordered shortlex (x < y).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<Letter>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Monomial(letters.to_vec())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&c| c == l).count()
    }

    /// Plain letter form, e.g. `xyyx`.
    pub fn to_plain(&self) -> String {
        letters_to_string(&self.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// `x*y^2*x`, or `1` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for run in self.0.chunk_by(|a, b| a == b) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", run[0].as_char())?;
            if run.len() > 1 {
                write!(f, "^{}", run.len())?;
            }
        }
        Ok(())
    }
}

/// A finite linear combination of monomials with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Scalar::one());
        AlgebraElement { terms }
    }

    /// Sums the given terms in `field`, dropping cancellations.
    pub fn from_terms<I>(field: Field, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            let c = field.normalize(c);
            let slot = map.entry(m).or_insert_with(Scalar::zero);
            *slot = field.add(slot, &c);
        }
        map.retain(|_, c| !c.is_zero());
        AlgebraElement { terms: map }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
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

    /// The monomial when this is a nonzero multiple of a single monomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.len() {
            1 => self.terms.keys().next(),
            _ => None,
        }
    }

    /// Largest monomial in shortlex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &AlgebraElement, field: Field) -> AlgebraElement {
        Self::from_terms(
            field,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Scalar, field: Field) -> AlgebraElement {
        Self::from_terms(field, self.terms.iter().map(|(m, x)| (m.clone(), field.mul(x, c))))
    }

    /// Rescales so the leading coefficient is 1.
    pub fn monic(&self, field: Field) -> AlgebraElement {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&field.inv(c).expect("nonzero"), field),
        }
    }

    pub fn to_sparse(&self) -> SparseVec<Monomial> {
        self.terms.clone()
    }

    pub fn from_sparse(v: SparseVec<Monomial>) -> Self {
        AlgebraElement { terms: v }
    }

    /// Canonical text, largest monomial first: `3*x*y^2 + y - 1/2`.
    pub fn render(&self, field: Field) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = field.is_negative(c);
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coeff = field.render(&magnitude);
            match (magnitude.is_one(), m.is_one()) {
                (true, _) => out.push_str(&m.to_string()),
                (false, true) => out.push_str(&coeff),
                (false, false) => {
                    out.push_str(&coeff);
                    out.push('*');
                    out.push_str(&m.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Field::Rationals))
    }
}
