//! The monomial algebra `K⟨x,y⟩/I`, where `I` is spanned by the words a
//! language rejects, together with frame growth and the lemma oracles.

mod element;
mod growth;
mod language;
mod lemmas;
mod span;

use thiserror::Error;

pub use element::{AlgebraElement, Monomial};
pub use growth::{gk_estimate, Frame, FramePowers, GrowthSeries};
pub use language::{ControlLanguage, FactorLanguage, FiniteLanguage, FreeLanguage, WordLanguage};
pub use lemmas::{
    AnnihilatorOutcome, AnnihilatorStep, CertificateRow, CertificateTerm, ReductionRelation,
};
pub use span::Span;

use std::sync::Arc;

use crate::field::{Field, Scalar};
use crate::word::{InfiniteWord, Letter, WordError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{what} exceeded the budget of {limit}")]
    Budget { what: &'static str, limit: usize },
    #[error("a frame must contain the identity")]
    FrameWithoutOne,
    #[error("the element must be nonzero")]
    ZeroElement,
    #[error("input is nilpotent: its {power}-th power vanishes")]
    NilpotentInput { power: u32 },
    #[error("degenerate fitting window: {0}")]
    DegenerateWindow(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraLimits {
    /// Largest dimension any enumerated span may reach.
    pub span_limit: usize,
    /// Powers checked before declaring an element non-nilpotent.
    pub nilpotence_bound: u32,
}

impl Default for AlgebraLimits {
    fn default() -> Self {
        AlgebraLimits {
            span_limit: 4_000_000,
            nilpotence_bound: 64,
        }
    }
}

/// `K⟨x,y⟩` modulo the words rejected by `language`.
#[derive(Debug, Clone)]
pub struct MonomialAlgebra {
    language: Arc<dyn WordLanguage>,
    field: Field,
    limits: AlgebraLimits,
}

impl MonomialAlgebra {
    pub fn new(language: Arc<dyn WordLanguage>, field: Field) -> Self {
        MonomialAlgebra {
            language,
            field,
            limits: AlgebraLimits::default(),
        }
    }

    /// The algebra `A` whose nonzero monomials are the factors of `v∞`.
    pub fn of_word(word: Arc<InfiniteWord>, field: Field) -> Self {
        Self::new(Arc::new(FactorLanguage::new(word)), field)
    }

    pub fn free(field: Field) -> Self {
        Self::new(Arc::new(FreeLanguage), field)
    }

    /// Nonzero words `y^a` and `y^a x` only; not prime.
    pub fn control(field: Field) -> Self {
        Self::new(Arc::new(ControlLanguage), field)
    }

    pub fn with_limits(mut self, limits: AlgebraLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn limits(&self) -> AlgebraLimits {
        self.limits
    }

    pub fn language(&self) -> &Arc<dyn WordLanguage> {
        &self.language
    }

    pub fn is_nonzero(&self, m: &Monomial) -> Result<bool, AlgebraError> {
        Ok(self.language.accepts(m.letters())?)
    }

    /// The product of two monomials, `None` when it lies in `I`.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Option<Monomial>, AlgebraError> {
        let w = a.concat(b);
        Ok(self.is_nonzero(&w)?.then_some(w))
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::monomial(Monomial::one())
    }

    pub fn letter(&self, l: Letter) -> AlgebraElement {
        AlgebraElement::monomial(Monomial::from_letters(&[l]))
    }

    /// `c·m`, or zero when `m` lies in `I`.
    pub fn term(&self, c: Scalar, m: Monomial) -> Result<AlgebraElement, AlgebraError> {
        let c = self.field.normalize(c);
        if !self.is_nonzero(&m)? {
            return Ok(AlgebraElement::zero());
        }
        Ok(AlgebraElement::from_terms(self.field, [(m, c)]))
    }

    /// Drops monomials lying in `I`; reports whether anything was dropped.
    pub fn reduce(&self, e: &AlgebraElement) -> Result<(AlgebraElement, bool), AlgebraError> {
        let mut kept = Vec::new();
        let mut dropped = false;
        for (m, c) in e.terms() {
            if self.is_nonzero(m)? {
                kept.push((m.clone(), c.clone()));
            } else {
                dropped = true;
            }
        }
        Ok((AlgebraElement::from_terms(self.field, kept), dropped))
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.add(b, self.field)
    }

    pub fn scale(&self, a: &AlgebraElement, c: &Scalar) -> AlgebraElement {
        a.scale(c, self.field)
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let mut terms = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some(m) = self.mul_monomials(ma, mb)? {
                    terms.push((m, self.field.mul(ca, cb)));
                }
            }
        }
        Ok(AlgebraElement::from_terms(self.field, terms))
    }

    pub fn pow(&self, a: &AlgebraElement, k: u32) -> Result<AlgebraElement, AlgebraError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}
