use serde::{Deserialize, Serialize};

use super::span::combine;
use super::{AlgebraElement, AlgebraError, Frame, FramePowers, MonomialAlgebra, Monomial, Span};
use crate::field::Scalar;
use crate::linalg::{Insertion, SparseVec, Subspace};

/// Rank data for `f: V^n → ⊕_i V^{n+m} z`, `a ↦ (a x_1, …, a x_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilatorStep {
    pub n: usize,
    pub source_dim: usize,
    pub image_dim: usize,
    pub kernel_dim: usize,
    /// `d = dim V^m z`.
    pub factors: usize,
    /// `dim V^{n+m} z`.
    pub target_dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnihilatorOutcome {
    /// First kernel element found (smallest `n`, earliest basis order).
    pub element: Option<AlgebraElement>,
    /// Basis `x_1, …, x_d` of `V^m z`.
    pub factors: Vec<AlgebraElement>,
    pub steps: Vec<AnnihilatorStep>,
}

/// One summand `coeff · left · z · right` with `left ∈ V^i`, `right ∈ V^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTerm {
    pub i: usize,
    pub j: usize,
    /// Leading monomial of `left · z · right`.
    pub monomial: String,
    pub left: String,
    pub right: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRow {
    /// Leading monomial of the spanning product `left · z · right`.
    pub monomial: String,
    pub left: String,
    pub right: String,
    pub combination: Vec<CertificateTerm>,
}

/// `V^m z V^p ⊆ Σ_{(i,j) ≺ (m,p)} V^i z V^j`, witnessed row by row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRelation {
    pub m: usize,
    pub p: usize,
    pub rows: Vec<CertificateRow>,
}

/// `(m1,p1) ≺ (m2,p2)`: smaller total degree, then smaller left degree.
pub fn precedes(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 + a.1 < b.0 + b.1 || (a.0 + a.1 == b.0 + b.1 && a.0 < b.0)
}

fn leading_text(e: &AlgebraElement) -> String {
    e.leading().map_or_else(|| "0".into(), |(m, _)| m.to_string())
}

impl MonomialAlgebra {
    fn span_of_products(
        &self,
        lefts: &[AlgebraElement],
        z: &AlgebraElement,
        rights: &[AlgebraElement],
    ) -> Result<Span, AlgebraError> {
        let mut span = Span::new(self.field, self.limits.span_limit);
        for a in lefts {
            let az = self.mul(a, z)?;
            if az.is_zero() {
                continue;
            }
            for b in rights {
                span.insert(&self.mul(&az, b)?)?;
            }
        }
        Ok(span)
    }

    /// Searches `V^n`, `n = 1..=n_max`, for a nonzero `a` with `a V^m z = 0`.
    pub fn annihilator_search(
        &self,
        z: &AlgebraElement,
        m: usize,
        n_max: usize,
        frame: &Frame,
    ) -> Result<AnnihilatorOutcome, AlgebraError> {
        if z.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        let powers = self.frame_powers(frame, n_max + m)?;
        let one = [self.one()];
        let factors = self
            .span_of_products(powers.basis(m), z, &one)?
            .basis()
            .to_vec();
        let mut image: Subspace<(usize, Monomial)> = Subspace::new(self.field);
        let mut element = None;
        let mut steps = Vec::new();
        let mut inserted = 0;
        for n in 1..=n_max {
            let basis = powers.basis(n);
            for a in &basis[inserted..] {
                let mut v: SparseVec<(usize, Monomial)> = SparseVec::new();
                for (i, x) in factors.iter().enumerate() {
                    for (mono, c) in self.mul(a, x)?.terms() {
                        v.insert((i, mono.clone()), c.clone());
                    }
                }
                if let Insertion::Dependent { relation, .. } = image.insert(v) {
                    if element.is_none() {
                        let combo: Vec<(usize, Scalar)> = relation.into_iter().collect();
                        element = Some(combine(self.field, basis, &combo).monic(self.field));
                    }
                }
            }
            inserted = basis.len();
            let target = self.span_of_products(powers.basis(n + m), z, &one)?.dim();
            steps.push(AnnihilatorStep {
                n,
                source_dim: basis.len(),
                image_dim: image.dim(),
                kernel_dim: basis.len() - image.dim(),
                factors: factors.len(),
                target_dim: target,
            });
        }
        Ok(AnnihilatorOutcome {
            element,
            factors,
            steps,
        })
    }

    /// `dim span{a z b : a, b ∈ V^n}`.
    pub fn two_sided_growth(&self, z: &AlgebraElement, n: usize, frame: &Frame) -> Result<usize, AlgebraError> {
        if z.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        let powers = self.frame_powers(frame, n)?;
        Ok(self
            .span_of_products(powers.basis(n), z, powers.basis(n))?
            .dim())
    }

    /// The ≺-least `(m, p)` with `m + p ≤ bound` and
    /// `V^m z V^p ⊆ Σ_{(i,j)≺(m,p)} V^i z V^j`, with a certificate.
    pub fn reduction_search(
        &self,
        z: &AlgebraElement,
        bound: usize,
        frame: &Frame,
    ) -> Result<Option<ReductionRelation>, AlgebraError> {
        if z.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        let powers = self.frame_powers(frame, bound)?;
        let mut earlier = Span::new(self.field, self.limits.span_limit);
        // provenance of each basis element of `earlier`: (i, j, left, right)
        let mut origin: Vec<(usize, usize, usize, usize)> = Vec::new();
        for total in 0..=bound {
            for m in 0..=total {
                let p = total - m;
                let mut fresh = Vec::new();
                for (ai, a) in powers.basis(m).iter().enumerate() {
                    let az = self.mul(a, z)?;
                    if az.is_zero() {
                        continue;
                    }
                    let lo = if ai < powers.level_start(m) { powers.level_start(p) } else { 0 };
                    for (bi, b) in powers.basis(p).iter().enumerate().skip(lo) {
                        let g = self.mul(&az, b)?;
                        if !g.is_zero() && !earlier.contains(&g) {
                            fresh.push((ai, bi, g));
                        }
                    }
                }
                if fresh.is_empty() && total > 0 {
                    return Ok(Some(self.certify(z, &powers, &earlier, &origin, m, p)?));
                }
                for (ai, bi, g) in fresh {
                    if earlier.insert(&g)? {
                        origin.push((m, p, ai, bi));
                    }
                }
            }
        }
        Ok(None)
    }

    fn certify(
        &self,
        z: &AlgebraElement,
        powers: &FramePowers,
        earlier: &Span,
        origin: &[(usize, usize, usize, usize)],
        m: usize,
        p: usize,
    ) -> Result<ReductionRelation, AlgebraError> {
        let field = self.field;
        let mut rows = Vec::new();
        for a in powers.basis(m) {
            let az = self.mul(a, z)?;
            if az.is_zero() {
                continue;
            }
            for b in powers.basis(p) {
                let g = self.mul(&az, b)?;
                if g.is_zero() {
                    continue;
                }
                let combo = earlier.express(&g).expect("fresh products were empty");
                let combination = combo
                    .into_iter()
                    .map(|(idx, coeff)| {
                        let (i, j, ai, bi) = origin[idx];
                        CertificateTerm {
                            i,
                            j,
                            monomial: leading_text(&earlier.basis()[idx]),
                            left: powers.basis(i)[ai].render(field),
                            right: powers.basis(j)[bi].render(field),
                            coeff: field.render(&coeff),
                        }
                    })
                    .collect();
                rows.push(CertificateRow {
                    monomial: leading_text(&g),
                    left: a.render(field),
                    right: b.render(field),
                    combination,
                });
            }
        }
        Ok(ReductionRelation { m, p, rows })
    }

    /// `dim span V^{dn} u^n V^{dn}`, refusing `u` with a vanishing power.
    pub fn ideal_power_growth(
        &self,
        u: &AlgebraElement,
        d: usize,
        n: u32,
        frame: &Frame,
    ) -> Result<usize, AlgebraError> {
        if u.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        let mut power = u.clone();
        for k in 2..=self.limits.nilpotence_bound {
            power = self.mul(&power, u)?;
            if power.is_zero() {
                return Err(AlgebraError::NilpotentInput { power: k });
            }
        }
        let un = self.pow(u, n)?;
        let powers = self.frame_powers(frame, d * n as usize)?;
        let side = powers.basis(d * n as usize);
        Ok(self.span_of_products(side, &un, side)?.dim())
    }

    /// Least `k ≤ k_max` with `(V^d u)^k = 0`.
    pub fn nilpotency_index(
        &self,
        u: &AlgebraElement,
        d: usize,
        k_max: u32,
        frame: &Frame,
    ) -> Result<Option<u32>, AlgebraError> {
        if u.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        let powers = self.frame_powers(frame, d)?;
        let one = [self.one()];
        let first = self.span_of_products(powers.basis(d), u, &one)?;
        let factors = first.basis().to_vec();
        let mut current = first;
        for k in 1..=k_max {
            if current.dim() == 0 {
                return Ok(Some(k));
            }
            if k == k_max {
                break;
            }
            let mut next = Span::new(self.field, self.limits.span_limit);
            for s in current.basis() {
                for t in &factors {
                    next.insert(&self.mul(s, t)?)?;
                }
            }
            current = next;
        }
        Ok(None)
    }

    /// Shortest bridge `w` (then lexicographically least) with `w1 w w2 ≠ 0`.
    pub fn prime_witness(
        &self,
        w1: &Monomial,
        w2: &Monomial,
        len_bound: u64,
    ) -> Result<Option<Monomial>, AlgebraError> {
        if !self.is_nonzero(w1)? || !self.is_nonzero(w2)? {
            return Ok(None);
        }
        Ok(self
            .language
            .shortest_bridge(w1.letters(), w2.letters(), len_bound)?
            .map(|w| Monomial::from_letters(&w)))
    }
}

impl FramePowers {
    /// Index where the new part of `V^k` begins in the basis.
    pub fn level_start(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.dim(k - 1)
        }
    }
}

impl ReductionRelation {
    /// Re-expands every row: recomputes `left z right` and the claimed
    /// combination, checks they agree, that each summand index precedes
    /// `(m, p)`, and that every factor lies in the claimed power of the frame.
    pub fn verify(
        &self,
        algebra: &MonomialAlgebra,
        z: &AlgebraElement,
        frame: &Frame,
    ) -> Result<bool, AlgebraError> {
        let field = algebra.field();
        let parse = |s: &str| crate::parse::parse_algebra(s, algebra).map(|p| p.element);
        let powers = algebra.frame_powers(frame, self.m + self.p)?;
        let in_power = |e: &AlgebraElement, k: usize| -> Result<bool, AlgebraError> {
            let mut span = Span::new(field, usize::MAX);
            for b in powers.basis(k) {
                span.insert(b)?;
            }
            Ok(span.contains(e))
        };
        let mut expected = 0usize;
        for a in powers.basis(self.m) {
            let az = algebra.mul(a, z)?;
            for b in powers.basis(self.p) {
                if !algebra.mul(&az, b)?.is_zero() {
                    expected += 1;
                }
            }
        }
        if expected != self.rows.len() {
            return Ok(false);
        }
        for row in &self.rows {
            let (Ok(left), Ok(right)) = (parse(&row.left), parse(&row.right)) else {
                return Ok(false);
            };
            if !in_power(&left, self.m)? || !in_power(&right, self.p)? {
                return Ok(false);
            }
            let target = algebra.mul(&algebra.mul(&left, z)?, &right)?;
            let mut sum = AlgebraElement::zero();
            for t in &row.combination {
                if !precedes((t.i, t.j), (self.m, self.p)) {
                    return Ok(false);
                }
                let (Ok(l), Ok(r), Ok(c)) = (
                    parse(&t.left),
                    parse(&t.right),
                    t.coeff.parse::<num_rational::BigRational>(),
                ) else {
                    return Ok(false);
                };
                if !in_power(&l, t.i)? || !in_power(&r, t.j)? {
                    return Ok(false);
                }
                let product = algebra.mul(&algebra.mul(&l, z)?, &r)?;
                sum = sum.add(&product.scale(&field.normalize(c), field), field);
            }
            if sum != target {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

