//! Probability vectors and the three entropy functionals everything else
//! consumes: Shannon entropy, collision probability and collision entropy.
//!
//! All entropies are in nats.

use crate::{Error, Result};

/// Entries at or below this threshold are treated as exact zeros in entropy
/// sums (the 0·ln 0 = 0 continuity convention).
pub const ZERO_PROB: f64 = 1e-15;

/// Construction tolerance on |Σ pᵢ − 1|. No silent renormalization happens;
/// a vector further off than this is rejected.
pub const SUM_TOL: f64 = 1e-9;

/// A probability distribution over `d` outcomes.
///
/// Immutable after construction; validation happens once in [`Distribution::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates and wraps a probability vector.
    ///
    /// Rejects empty vectors, entries outside [0, 1] and sums off by more
    /// than [`SUM_TOL`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (index, &value) in probs.iter().enumerate() {
            if !(0.0..=1.0 + 1e-12).contains(&value) || value.is_nan() {
                return Err(Error::ProbabilityOutOfRange { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::ProbabilitySumOff { sum, tol: SUM_TOL });
        }
        Ok(Self { probs })
    }

    /// The uniform distribution on `d` outcomes.
    pub fn uniform(d: usize) -> Self {
        assert!(d >= 1, "dimension must be positive");
        Self {
            probs: vec![1.0 / d as f64; d],
        }
    }

    /// Point mass on outcome `index` of `d`.
    pub fn point_mass(d: usize, index: usize) -> Self {
        assert!(index < d, "index out of range");
        let mut probs = vec![0.0; d];
        probs[index] = 1.0;
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of outcomes `d`.
    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    /// Smallest entry (the realized floor).
    pub fn min_prob(&self) -> f64 {
        self.probs.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Shannon entropy H = −Σ pᵢ ln pᵢ in nats. Lies in [0, ln d].
    pub fn shannon_entropy(&self) -> f64 {
        shannon_entropy_of(&self.probs)
    }

    /// Collision probability IC = Σ pᵢ² (index of coincidence). Lies in [1/d, 1].
    pub fn collision_probability(&self) -> f64 {
        collision_probability_of(&self.probs)
    }

    /// Collision entropy H₂ = −ln IC in nats. Lies in [0, ln d].
    pub fn collision_entropy(&self) -> f64 {
        -self.collision_probability().ln()
    }

    /// All three functionals at once.
    pub fn summary(&self) -> EntropySummary {
        let collision_prob = self.collision_probability();
        EntropySummary {
            shannon: self.shannon_entropy(),
            collision_prob,
            collision_entropy: -collision_prob.ln(),
        }
    }
}

/// Bundle of H, IC and H₂ for reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySummary {
    /// Shannon entropy in nats.
    pub shannon: f64,
    /// Collision probability Σ pᵢ².
    pub collision_prob: f64,
    /// Collision entropy −ln IC in nats.
    pub collision_entropy: f64,
}

/// Raw Shannon entropy of a slice. Callers guarantee non-negative entries.
/// The `+ 0.0` turns the point-mass result −0.0 into +0.0.
pub(crate) fn shannon_entropy_of(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > ZERO_PROB)
        .map(|&p| -p * p.ln())
        .sum::<f64>()
        + 0.0
}

/// Raw collision probability of a slice.
pub(crate) fn collision_probability_of(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| p * p).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn shannon_uniform_d2() {
        let d = Distribution::new(vec![0.5, 0.5]).unwrap();
        assert!((d.shannon_entropy() - LN2).abs() < 1e-12);
    }

    #[test]
    fn shannon_point_mass() {
        let d = Distribution::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(d.shannon_entropy(), 0.0);
    }

    #[test]
    fn shannon_dyadic() {
        let d = Distribution::new(vec![0.5, 0.25, 0.25]).unwrap();
        assert!((d.shannon_entropy() - 1.5 * LN2).abs() < 1e-12);
    }

    #[test]
    fn collision_prob_uniform_d4() {
        let d = Distribution::uniform(4);
        assert!((d.collision_probability() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn collision_prob_point_mass_d3() {
        let d = Distribution::point_mass(3, 0);
        assert_eq!(d.collision_probability(), 1.0);
    }

    #[test]
    fn collision_prob_example() {
        let d = Distribution::new(vec![0.5, 0.3, 0.2]).unwrap();
        assert!((d.collision_probability() - 0.38).abs() < 1e-12);
    }

    #[test]
    fn collision_entropy_uniform_d3() {
        let d = Distribution::uniform(3);
        assert!((d.collision_entropy() - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn collision_entropy_point_mass() {
        let d = Distribution::point_mass(2, 1);
        assert_eq!(d.collision_entropy(), 0.0);
    }

    #[test]
    fn collision_entropy_example() {
        let d = Distribution::new(vec![0.5, 0.3, 0.2]).unwrap();
        assert!((d.collision_entropy() - (-0.38f64.ln())).abs() < 1e-12);
        assert!((d.collision_entropy() - 0.967584).abs() < 1e-6);
    }

    #[test]
    fn rejects_negative_entry() {
        let err = Distribution::new(vec![0.6, 0.5, -0.1]).unwrap_err();
        assert!(matches!(err, Error::ProbabilityOutOfRange { index: 2, .. }));
    }

    #[test]
    fn rejects_sum_off() {
        let err = Distribution::new(vec![0.5, 0.4]).unwrap_err();
        assert!(matches!(err, Error::ProbabilitySumOff { .. }));
    }

    #[test]
    fn accepts_sum_within_tolerance() {
        assert!(Distribution::new(vec![0.5, 0.5 + 5e-10]).is_ok());
    }

    #[test]
    fn summary_identity() {
        let d = Distribution::new(vec![0.7, 0.2, 0.1]).unwrap();
        let s = d.summary();
        assert!((s.collision_entropy - (-s.collision_prob.ln())).abs() <= 1e-12);
        assert!(s.shannon >= s.collision_entropy);
    }
}
