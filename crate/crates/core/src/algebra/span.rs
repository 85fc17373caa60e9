use std::collections::HashMap;


use super::{AlgebraElement, AlgebraError, Monomial};
use crate::field::{Field, Scalar};
use crate::linalg::{Insertion, Subspace};

/// A growing span of algebra elements. While every inserted element is a
/// multiple of a monomial the span is just a set of monomials; the first
/// genuine combination switches it to exact row reduction.
#[derive(Debug, Clone)]
pub struct Span {
    field: Field,
    limit: usize,
    basis: Vec<AlgebraElement>,
    monomials: Option<HashMap<Monomial, usize>>,
    space: Option<(Subspace<Monomial>, Vec<Option<usize>>)>,
}

impl Span {
    pub fn new(field: Field, limit: usize) -> Self {
        Span {
            field,
            limit,
            basis: Vec::new(),
            monomials: Some(HashMap::new()),
            space: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Independent elements in insertion order.
    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    fn switch_to_rows(&mut self) {
        let mut space = Subspace::new(self.field);
        let mut labels = Vec::new();
        for (i, b) in self.basis.iter().enumerate() {
            space.insert(b.to_sparse());
            labels.push(Some(i));
        }
        self.monomials = None;
        self.space = Some((space, labels));
    }

    /// Adds `e`; returns whether the span grew.
    pub fn insert(&mut self, e: &AlgebraElement) -> Result<bool, AlgebraError> {
        if e.is_zero() {
            return Ok(false);
        }
        if self.monomials.is_some() {
            if let Some(m) = e.as_monomial() {
                if self.monomials.as_ref().is_some_and(|set| set.contains_key(m)) {
                    return Ok(false);
                }
                self.check_budget()?;
                let index = self.basis.len();
                self.monomials.as_mut().expect("monomial mode").insert(m.clone(), index);
                self.basis.push(AlgebraElement::monomial(m.clone()));
                return Ok(true);
            }
            self.switch_to_rows();
        }
        let (space, labels) = self.space.as_mut().expect("row mode");
        match space.insert(e.to_sparse()) {
            Insertion::Dependent { .. } => {
                labels.push(None);
                Ok(false)
            }
            Insertion::Added { .. } => {
                if self.basis.len() >= self.limit {
                    return Err(AlgebraError::Budget {
                        what: "span dimension",
                        limit: self.limit,
                    });
                }
                labels.push(Some(self.basis.len()));
                self.basis.push(e.clone());
                Ok(true)
            }
        }
    }

    fn check_budget(&self) -> Result<(), AlgebraError> {
        if self.basis.len() >= self.limit {
            return Err(AlgebraError::Budget {
                what: "span dimension",
                limit: self.limit,
            });
        }
        Ok(())
    }

    pub fn contains(&self, e: &AlgebraElement) -> bool {
        match (&self.monomials, &self.space) {
            (Some(set), _) => e.terms().keys().all(|m| set.contains_key(m)),
            (None, Some((space, _))) => space.contains(&e.to_sparse()),
            _ => unreachable!(),
        }
    }

    /// Coefficients over `basis()` summing to `e`, if `e` lies in the span.
    pub fn express(&self, e: &AlgebraElement) -> Option<Vec<(usize, Scalar)>> {
        match (&self.monomials, &self.space) {
            (Some(set), _) => e
                .terms()
                .iter()
                .map(|(m, c)| set.get(m).map(|&i| (i, c.clone())))
                .collect(),
            (None, Some((space, labels))) => {
                let combo = space.express(&e.to_sparse())?;
                Some(
                    combo
                        .into_iter()
                        .map(|(label, c)| (labels[label].expect("only added rows carry weight"), c))
                        .collect(),
                )
            }
            _ => unreachable!(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.monomials.is_some()
    }
}

/// Sum of `coeff · basis[i]`.
pub fn combine(field: Field, basis: &[AlgebraElement], combo: &[(usize, Scalar)]) -> AlgebraElement {
    combo.iter().fold(AlgebraElement::zero(), |acc, (i, c)| {
        acc.add(&basis[*i].scale(c, field), field)
    })
}

