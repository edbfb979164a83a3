//! Line-bundle cohomology on weighted projective lines P(a, b) and
//! Hilbert-function deconvolution.
//!
//! Global sections of O(m) on P(a, b) are spanned by monomials t₀^λ t₁^μ with
//! λa + μb = m and λ, μ ≥ 0; H¹(O(m)) has a basis indexed by the pairs of
//! strictly negative exponents. The dualizing sheaf is O(-a-b), so Serre
//! duality reads h⁰(m) = h¹(-m-a-b).
//!
//! Deconvolution inverts the relation target(k) = Σ_i c_i · block(k - i),
//! which is how a split bundle ⊕ block ⊗ ω^{-i} is recovered from its graded
//! dimensions.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

/// The weighted projective stack P(a, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightedLine {
    a: u64,
    b: u64,
}

impl WeightedLine {
    pub fn new(a: u64, b: u64) -> Self {
        assert!(a >= 1 && b >= 1, "weights must be positive");
        Self { a, b }
    }

    pub fn weights(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    /// Degree of the dualizing sheaf O(-a-b).
    pub fn canonical_degree(&self) -> i64 {
        -((self.a + self.b) as i64)
    }

    /// #{(λ, μ) ≥ 0 : λa + μb = m}.
    pub fn h0_dim(&self, m: i64) -> u64 {
        if m < 0 {
            return 0;
        }
        let (a, b) = (self.a as i64, self.b as i64);
        (0..=m / a).filter(|lambda| (m - lambda * a) % b == 0).count() as u64
    }

    /// #{(λ, μ) ≤ -1 : λa + μb = m}.
    pub fn h1_dim(&self, m: i64) -> u64 {
        let (a, b) = (self.a as i64, self.b as i64);
        let mut count = 0;
        // μ ≤ -1 forces λa = m - μb ≥ m + b
        let mut lambda = -1;
        while lambda * a >= m + b {
            let rest = m - lambda * a;
            if rest % b == 0 && rest / b <= -1 {
                count += 1;
            }
            lambda -= 1;
        }
        count
    }

    /// h⁰(O(k)) for k = 0..=through.
    pub fn hilbert_function(&self, through: i64) -> HilbertFunction {
        HilbertFunction::from_fn(through, |k| self.h0_dim(k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreDualityReport {
    pub line: WeightedLine,
    pub from: i64,
    pub to: i64,
    pub checked: u64,
    /// (m, h⁰(m), h¹(-m-a-b)) at the first disagreement.
    pub first_violation: Option<(i64, u64, u64)>,
}

impl SerreDualityReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

pub fn serre_duality_check(line: WeightedLine, range: RangeInclusive<i64>) -> SerreDualityReport {
    let mut report = SerreDualityReport {
        line,
        from: *range.start(),
        to: *range.end(),
        checked: 0,
        first_violation: None,
    };
    for m in range {
        report.checked += 1;
        let h0 = line.h0_dim(m);
        let h1 = line.h1_dim(-m + line.canonical_degree());
        if h0 != h1 {
            report.first_violation = Some((m, h0, h1));
            break;
        }
    }
    report
}

/// Graded dimensions in degrees 0..=known_through; zero in negative degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    values: Vec<u64>,
}

impl HilbertFunction {
    pub fn from_values(values: Vec<u64>) -> Self {
        Self { values }
    }

    pub fn from_fn(through: i64, f: impl FnMut(i64) -> u64) -> Self {
        Self {
            values: (0..=through).map(f).collect(),
        }
    }

    /// Value in degree k, or `None` beyond the known range.
    pub fn get(&self, k: i64) -> Option<u64> {
        if k < 0 {
            Some(0)
        } else {
            self.values.get(k as usize).copied()
        }
    }

    pub fn known_through(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Multiplicities c_i of the twists block ⊗ ω^{-i}.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistMultiset {
    mult: BTreeMap<i64, u64>,
}

impl TwistMultiset {
    /// Multiplicities indexed by shift 0, 1, 2, …
    pub fn from_slice(values: &[u64]) -> Self {
        let mult = values
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i as i64, c))
            .collect();
        Self { mult }
    }

    pub fn get(&self, shift: i64) -> u64 {
        self.mult.get(&shift).copied().unwrap_or(0)
    }

    pub fn set(&mut self, shift: i64, value: u64) {
        if value == 0 {
            self.mult.remove(&shift);
        } else {
            self.mult.insert(shift, value);
        }
    }

    /// Dense multiplicities for shifts 0..=max_shift.
    pub fn to_vec(&self, max_shift: i64) -> Vec<u64> {
        (0..=max_shift).map(|i| self.get(i)).collect()
    }

    pub fn total(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn max_shift(&self) -> Option<i64> {
        self.mult.keys().next_back().copied()
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.mult.keys().next().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.mult.iter().map(|(&i, &c)| (i, c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DeconvolveError {
    #[error("block Hilbert function must start with 1 in degree 0")]
    BlockNotNormalized,
    #[error("negative multiplicity {value} at shift {shift}")]
    NegativeMultiplicity { shift: i64, value: i64 },
    #[error("convolution mismatch in degree {degree}: expected {expected}, got {actual}")]
    ResidualMismatch { degree: i64, expected: u64, actual: u64 },
    #[error("Hilbert function not known in degree {degree}")]
    Truncated { degree: i64 },
}

/// Σ_i mult(i) · block(k - i) for k = 0..=through.
pub fn convolve(
    mult: &TwistMultiset,
    block: &HilbertFunction,
    through: i64,
) -> Result<HilbertFunction, DeconvolveError> {
    let mut values = Vec::with_capacity(through.max(-1) as usize + 1);
    for k in 0..=through {
        let mut acc = 0u64;
        for (i, c) in mult.iter() {
            let b = block.get(k - i).ok_or(DeconvolveError::Truncated { degree: k - i })?;
            acc += c * b;
        }
        values.push(acc);
    }
    Ok(HilbertFunction::from_values(values))
}

/// Overshoot past the support that pins down a series with denominator
/// (1 - t^a)(1 - t^b).
pub fn default_verify_through(max_shift: i64, a: u64, b: u64) -> i64 {
    max_shift + (a * b) as i64 + a.max(b) as i64
}

/// Peel off multiplicities greedily in degrees 0..=max_shift, then check the
/// convolution against the target through `verify_through`.
pub fn deconvolve(
    target: &HilbertFunction,
    block: &HilbertFunction,
    max_shift: i64,
    verify_through: i64,
) -> Result<TwistMultiset, DeconvolveError> {
    if block.get(0) != Some(1) {
        return Err(DeconvolveError::BlockNotNormalized);
    }
    let mut coeffs: Vec<i64> = Vec::with_capacity(max_shift as usize + 1);
    for i in 0..=max_shift {
        let mut c = target.get(i).ok_or(DeconvolveError::Truncated { degree: i })? as i64;
        for j in 1..=i {
            let b = block.get(j).ok_or(DeconvolveError::Truncated { degree: j })? as i64;
            c -= b * coeffs[(i - j) as usize];
        }
        if c < 0 {
            return Err(DeconvolveError::NegativeMultiplicity { shift: i, value: c });
        }
        coeffs.push(c);
    }
    let mult = TwistMultiset::from_slice(&coeffs.iter().map(|&c| c as u64).collect::<Vec<_>>());
    let through = verify_through.max(max_shift);
    let conv = convolve(&mult, block, through)?;
    for k in 0..=through {
        let expected = target.get(k).ok_or(DeconvolveError::Truncated { degree: k })?;
        let actual = conv.get(k).expect("convolution computed through range");
        if expected != actual {
            return Err(DeconvolveError::ResidualMismatch {
                degree: k,
                expected,
                actual,
            });
        }
    }
    Ok(mult)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // dim M_k(SL₂ℤ) from the classical floor formula.
    fn level_one_dim(k: i64) -> u64 {
        if k < 0 || k % 2 == 1 {
            0
        } else if k % 12 == 2 {
            (k / 12) as u64
        } else {
            (k / 12) as u64 + 1
        }
    }

    #[test]
    fn h0_examples() {
        let l46 = WeightedLine::new(4, 6);
        assert_eq!(l46.h0_dim(12), 2);
        assert_eq!(l46.h0_dim(2), 0);
        assert_eq!(WeightedLine::new(1, 3).h0_dim(5), 2);
        let first: Vec<u64> = (0..=12).map(|k| l46.h0_dim(k)).collect();
        assert_eq!(first, vec![1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2]);
        for k in 0..=60 {
            assert_eq!(l46.h0_dim(k), level_one_dim(k), "k = {k}");
        }
    }

    #[test]
    fn h1_examples() {
        let l46 = WeightedLine::new(4, 6);
        assert_eq!(l46.h1_dim(-10), 1);
        assert_eq!(l46.h1_dim(0), 0);
        assert_eq!(WeightedLine::new(1, 3).h1_dim(-4), 1);
        assert_eq!(WeightedLine::new(2, 4).h1_dim(-8), 1);
        assert_eq!(WeightedLine::new(1, 2).h1_dim(-3), 1);
        for m in 0..50 {
            assert_eq!(l46.h1_dim(m), 0);
        }
    }

    #[test]
    fn serre_duality_grid() {
        for a in 1..=12 {
            for b in 1..=12 {
                let r = serre_duality_check(WeightedLine::new(a, b), -60..=60);
                assert!(r.holds(), "P({a},{b}): {:?}", r.first_violation);
                assert_eq!(r.checked, 121);
            }
        }
    }

    #[test]
    fn deconvolve_identity_and_small_levels() {
        let omega = WeightedLine::new(4, 6).hilbert_function(60);
        let id = deconvolve(&omega, &omega, 11, 41).unwrap();
        assert_eq!(id.to_vec(11), [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);

        let g13 = WeightedLine::new(1, 3).hilbert_function(60);
        let l = deconvolve(&g13, &omega, 11, default_verify_through(11, 4, 6)).unwrap();
        assert_eq!(l.to_vec(11), [1, 1, 1, 2, 1, 1, 1, 0, 0, 0, 0, 0]);

        let g12 = WeightedLine::new(2, 4).hilbert_function(60);
        let l = deconvolve(&g12, &omega, 11, 41).unwrap();
        assert_eq!(l.to_vec(11), [1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn deconvolve_errors() {
        let omega = WeightedLine::new(4, 6).hilbert_function(60);
        // P(1,1) has dims k + 1; shifts 0..3 absorb degrees 0..3, degree 4 then gets only c0
        let p11 = WeightedLine::new(1, 1).hilbert_function(60);
        assert_eq!(
            deconvolve(&p11, &omega, 3, 40),
            Err(DeconvolveError::ResidualMismatch {
                degree: 4,
                expected: 5,
                actual: 1
            })
        );
        let bad_block = HilbertFunction::from_values(vec![2, 1]);
        assert_eq!(
            deconvolve(&p11, &bad_block, 1, 1),
            Err(DeconvolveError::BlockNotNormalized)
        );
        let neg_target = HilbertFunction::from_values(vec![1, 0, 0, 0, 0]);
        let block = HilbertFunction::from_values(vec![1, 1, 1, 1, 1]);
        assert_eq!(
            deconvolve(&neg_target, &block, 2, 2),
            Err(DeconvolveError::NegativeMultiplicity { shift: 1, value: -1 })
        );
        assert_eq!(
            deconvolve(&HilbertFunction::from_values(vec![1, 1]), &omega, 3, 3),
            Err(DeconvolveError::Truncated { degree: 2 })
        );
    }

    proptest! {
        #[test]
        fn deconvolve_inverts_convolve(
            coeffs in proptest::collection::vec(0u64..20, 1..12),
            a in 1u64..7,
            b in 1u64..7,
        ) {
            let block = WeightedLine::new(a, b).hilbert_function(120);
            let mult = TwistMultiset::from_slice(&coeffs);
            let max_shift = coeffs.len() as i64 - 1;
            let through = default_verify_through(max_shift, a, b);
            let target = convolve(&mult, &block, through).unwrap();
            let back = deconvolve(&target, &block, max_shift, through).unwrap();
            prop_assert_eq!(back, mult);
        }

        #[test]
        fn duality_symmetry(a in 1u64..20, b in 1u64..20, m in -200i64..200) {
            let line = WeightedLine::new(a, b);
            prop_assert_eq!(line.h0_dim(m), line.h1_dim(-m - (a + b) as i64));
        }
    }
}
