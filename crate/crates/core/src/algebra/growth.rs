use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{AlgebraElement, AlgebraError, MonomialAlgebra, Monomial, Span};
use crate::word::Letter;

/// A finite spanning set containing the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    elements: Vec<AlgebraElement>,
}

impl Frame {
    pub fn new(elements: Vec<AlgebraElement>) -> Result<Frame, AlgebraError> {
        let one = AlgebraElement::monomial(Monomial::one());
        if !elements.contains(&one) {
            return Err(AlgebraError::FrameWithoutOne);
        }
        Ok(Frame { elements })
    }

    /// `V = K + Kx + Ky`.
    pub fn standard() -> Frame {
        Frame {
            elements: vec![
                AlgebraElement::monomial(Monomial::one()),
                AlgebraElement::monomial(Monomial::from_letters(&[Letter::X])),
                AlgebraElement::monomial(Monomial::from_letters(&[Letter::Y])),
            ],
        }
    }

    pub fn identity_only() -> Frame {
        Frame {
            elements: vec![AlgebraElement::monomial(Monomial::one())],
        }
    }

    pub fn elements(&self) -> &[AlgebraElement] {
        &self.elements
    }

    /// Whether the frame spans exactly `K + Kx + Ky`.
    pub fn is_standard(&self) -> bool {
        let mut ms: Vec<&Monomial> = Vec::new();
        for e in &self.elements {
            match e.as_monomial() {
                Some(m) => ms.push(m),
                None => return false,
            }
        }
        ms.sort();
        ms.dedup();
        ms.len() == 3 && ms.iter().all(|m| m.len() <= 1)
    }
}

impl Default for Frame {
    fn default() -> Self {
        Frame::standard()
    }
}

/// Bases of `V^0 ⊆ V^1 ⊆ … ⊆ V^n`: `basis()[..dims[k]]` spans `V^k`.
#[derive(Debug, Clone)]
pub struct FramePowers {
    span: Span,
    dims: Vec<usize>,
}

impl FramePowers {
    pub fn degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Basis of `V^k`.
    pub fn basis(&self, k: usize) -> &[AlgebraElement] {
        &self.span.basis()[..self.dims[k]]
    }

    /// Basis elements of `V^k` not in `V^{k-1}`.
    pub fn level(&self, k: usize) -> &[AlgebraElement] {
        let lo = if k == 0 { 0 } else { self.dims[k - 1] };
        &self.span.basis()[lo..self.dims[k]]
    }

    pub fn span(&self) -> &Span {
        &self.span
    }
}

/// `dim V^n` for `n = 0..`, with fitted constants over a window.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSeries {
    pub values: Vec<(u64, u64)>,
    pub window: (u64, u64),
    /// `min dim V^n / n²` over the window.
    pub c1: BigRational,
    /// `max dim V^n / n²` over the window.
    pub c2: BigRational,
    /// Least-squares slope of `log dim V^n` against `log n` over the window.
    pub gk_slope: Option<f64>,
    pub quadratic: bool,
}

/// Slopes within this distance of 2 count as quadratic.
pub const QUADRATIC_SLOPE_TOLERANCE: f64 = 0.2;

impl GrowthSeries {
    pub fn from_values(values: Vec<(u64, u64)>, window: (u64, u64)) -> GrowthSeries {
        let in_window: Vec<(u64, u64)> = values
            .iter()
            .copied()
            .filter(|&(n, _)| n >= window.0.max(1) && n <= window.1)
            .collect();
        let ratio = |(n, d): (u64, u64)| BigRational::new(d.into(), (n * n).into());
        let c1 = in_window.iter().copied().map(ratio).min().unwrap_or_default();
        let c2 = in_window.iter().copied().map(ratio).max().unwrap_or_default();
        let gk_slope = gk_estimate(&values, window).ok();
        let quadratic = gk_slope.is_some_and(|s| (s - 2.0).abs() <= QUADRATIC_SLOPE_TOLERANCE)
            && c1 > BigRational::default();
        GrowthSeries {
            values,
            window,
            c1,
            c2,
            gk_slope,
            quadratic,
        }
    }

    pub fn dims(&self) -> Vec<u64> {
        self.values.iter().map(|&(_, d)| d).collect()
    }

    pub fn c1_f64(&self) -> f64 {
        self.c1.to_f64().unwrap_or(f64::NAN)
    }

    pub fn c2_f64(&self) -> f64 {
        self.c2.to_f64().unwrap_or(f64::NAN)
    }
}

/// Least-squares slope of `ln dim` against `ln n` over points with `n` in
/// `window` and `n ≥ 2`.
pub fn gk_estimate(values: &[(u64, u64)], window: (u64, u64)) -> Result<f64, AlgebraError> {
    let pts: Vec<(f64, f64)> = values
        .iter()
        .filter(|&&(n, d)| n >= window.0.max(2) && n <= window.1 && d > 0)
        .map(|&(n, d)| ((n as f64).ln(), (d as f64).ln()))
        .collect();
    if pts.len() < 3 {
        return Err(AlgebraError::DegenerateWindow(format!(
            "[{}, {}] holds {} usable points, need 3",
            window.0,
            window.1,
            pts.len()
        )));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

impl MonomialAlgebra {
    /// Bases of `V^k` for `k ≤ n`, built as `V^k = V^{k-1} + V·(new part of V^{k-1})`.
    pub fn frame_powers(&self, frame: &Frame, n: usize) -> Result<FramePowers, AlgebraError> {
        let mut span = Span::new(self.field, self.limits.span_limit);
        span.insert(&self.one())?;
        let mut dims = vec![span.dim()];
        let mut lo = 0;
        let generators: Vec<AlgebraElement> = frame
            .elements()
            .iter()
            .map(|e| self.reduce(e).map(|r| r.0))
            .collect::<Result<_, _>>()?;
        for _ in 1..=n {
            let hi = span.dim();
            let previous: Vec<AlgebraElement> = span.basis()[lo..hi].to_vec();
            for f in &generators {
                if f.as_monomial().is_some_and(Monomial::is_one) {
                    continue;
                }
                for b in &previous {
                    span.insert(&self.mul(f, b)?)?;
                }
            }
            lo = hi;
            dims.push(span.dim());
        }
        Ok(FramePowers { span, dims })
    }

    /// `dim V^k` for `k = 0..=n_max`.
    pub fn growth_values(&self, frame: &Frame, n_max: u64) -> Result<Vec<u64>, AlgebraError> {
        if frame.is_standard() {
            let mut dims = vec![1u64];
            let mut closed_form = true;
            for l in 1..=n_max {
                match self.language.count_words(l) {
                    Some(count) => {
                        let prev = *dims.last().expect("nonempty");
                        dims.push(prev + count?);
                    }
                    None => {
                        closed_form = false;
                        break;
                    }
                }
            }
            if closed_form {
                return Ok(dims);
            }
        }
        let powers = self.frame_powers(frame, n_max as usize)?;
        Ok(powers.dims().iter().map(|&d| d as u64).collect())
    }

    pub fn dim_vn(&self, n: u64, frame: &Frame) -> Result<u64, AlgebraError> {
        Ok(*self.growth_values(frame, n)?.last().expect("nonempty"))
    }

    /// Series up to `n_max` fitted over `[n_max/2, n_max]`.
    pub fn growth_report(&self, n_max: u64, frame: &Frame) -> Result<GrowthSeries, AlgebraError> {
        let dims = self.growth_values(frame, n_max)?;
        let values = dims.into_iter().enumerate().map(|(n, d)| (n as u64, d)).collect();
        Ok(GrowthSeries::from_values(values, (n_max / 2, n_max)))
    }

    /// `dim V^n ≥ n(n+1)/2`.
    pub fn bergman_bound_check(&self, n: u64, frame: &Frame) -> Result<bool, AlgebraError> {
        Ok(self.dim_vn(n, frame)? >= n * (n + 1) / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn slope_of_exact_powers() {
        let sq: Vec<(u64, u64)> = (0..50).map(|n| (n, n * n)).collect();
        assert!((gk_estimate(&sq, (10, 40)).unwrap() - 2.0).abs() < 1e-12);
        let lin: Vec<(u64, u64)> = (0..50).map(|n| (n, n)).collect();
        assert!((gk_estimate(&lin, (10, 40)).unwrap() - 1.0).abs() < 1e-12);
        assert!(gk_estimate(&lin, (10, 11)).is_err());
    }

    #[test]
    fn free_and_trivial_frames() {
        let free = MonomialAlgebra::free(Field::Rationals);
        let report = free.growth_report(10, &Frame::standard()).unwrap();
        for (n, d) in &report.values {
            assert_eq!(*d, (1u64 << (n + 1)) - 1);
        }
        assert!(!report.quadratic);
        let powers = free.frame_powers(&Frame::standard(), 6).unwrap();
        assert_eq!(powers.dim(6), 127);
        let ones = free.growth_report(10, &Frame::identity_only()).unwrap();
        assert!(ones.values.iter().all(|&(_, d)| d == 1));
        assert!(!ones.quadratic);
    }

    #[test]
    fn frame_requires_identity() {
        let x = AlgebraElement::monomial(Monomial::from_letters(&[Letter::X]));
        assert_eq!(Frame::new(vec![x]), Err(AlgebraError::FrameWithoutOne));
    }
}
