//! Tight lower bound on Σ H over M distributions whose collision
//! probabilities sum to at most `k_tot`.
//!
//! The minimizer places every per-distribution collision probability on the
//! arc of H̃ containing the average `k_tot / M`: Φ of them at the arc's low
//! endpoint `k_min`, all but one of the rest at the high endpoint `k_max`,
//! and one residual that absorbs the remainder of the budget.

use crate::single::{h_tilde_fast, snap_floor, SNAP_TOL};
use crate::{Error, Result};

/// Budget identity tolerance: decomposition weights re-sum to `k_tot` within
/// this.
const BUDGET_TOL: f64 = 1e-10;

/// A feasible multi-distribution query.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiBoundQuery {
    m: usize,
    k_tot: f64,
    dims: Vec<usize>,
}

impl MultiBoundQuery {
    /// Validates the budget range `0 < k_tot ≤ M`, the per-dimension size
    /// constraint `d_i ≥ ⌈M / k_tot⌉`, and budget feasibility
    /// `Σ 1/d_i ≤ k_tot`.
    pub fn new(m: usize, k_tot: f64, dims: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::ParameterOutOfRange {
                name: "M",
                value: 0.0,
                expected: "M >= 1",
            });
        }
        if dims.len() != m {
            return Err(Error::DimensionMismatch {
                left: m,
                right: dims.len(),
            });
        }
        if k_tot.is_nan() || k_tot <= 0.0 || k_tot > m as f64 + SNAP_TOL {
            return Err(Error::BudgetOutOfRange {
                k_tot,
                max: m as f64,
            });
        }
        let required = ceil_snapped(m as f64 / k_tot) as usize;
        for (index, &dim) in dims.iter().enumerate() {
            if dim < required {
                return Err(Error::DimensionTooSmall {
                    index,
                    dim,
                    required,
                });
            }
        }
        let inv_sum: f64 = dims.iter().map(|&d| 1.0 / d as f64).sum();
        if inv_sum > k_tot + SNAP_TOL {
            return Err(Error::BudgetOutOfRange {
                k_tot,
                max: m as f64,
            });
        }
        Ok(Self { m, k_tot, dims })
    }

    pub fn count(&self) -> usize {
        self.m
    }

    pub fn budget(&self) -> f64 {
        self.k_tot
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

/// The arc-decomposition solution of a multi-distribution query.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcDecomposition {
    /// Low arc endpoint 1/⌈M/k_tot⌉.
    pub k_min: f64,
    /// High arc endpoint 1/⌊M/k_tot⌋.
    pub k_max: f64,
    /// Count of distributions at `k_min`.
    pub phi: usize,
    /// The residual collision probability, in [k_min, k_max].
    pub k_residual: f64,
    /// Whether M/k_tot is an integer, collapsing the arc to a point.
    pub degenerate: bool,
    /// The entropy bound in nats.
    pub bound: f64,
    /// Witness collision probabilities: Φ copies of k_min, then M−1−Φ copies
    /// of k_max, then the residual.
    pub k_vector: Vec<f64>,
    /// Dimension used to evaluate H̃ (the smallest d_i; value-neutral, kept
    /// for auditability).
    pub eval_dim: usize,
}

fn ceil_snapped(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= SNAP_TOL {
        nearest
    } else {
        x.ceil()
    }
}

/// Arc endpoints (k_min, k_max) = (1/⌈M/k_tot⌉, 1/⌊M/k_tot⌋). Equal iff
/// M/k_tot is an integer (within the snap tolerance).
pub fn arc_endpoints(m: usize, k_tot: f64) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "M",
            value: 0.0,
            expected: "M >= 1",
        });
    }
    if k_tot.is_nan() || k_tot <= 0.0 || k_tot > m as f64 + SNAP_TOL {
        return Err(Error::BudgetOutOfRange {
            k_tot,
            max: m as f64,
        });
    }
    let ratio = m as f64 / k_tot;
    let (floored, integer) = snap_floor(ratio);
    if integer {
        let k = 1.0 / floored;
        return Ok((k, k));
    }
    Ok((1.0 / ratio.ceil(), 1.0 / floored))
}

/// Φ = ⌊(k_tot − M·k_max) / (k_min − k_max)⌋: how many distributions sit at
/// `k_min`. Requires distinct endpoints.
pub fn phi_count(m: usize, k_tot: f64, k_min: f64, k_max: f64) -> Result<usize> {
    if k_min >= k_max {
        return Err(Error::DegenerateArcs);
    }
    let raw = (k_tot - m as f64 * k_max) / (k_min - k_max);
    let (floored, _) = snap_floor(raw);
    Ok((floored as isize).clamp(0, m as isize - 1) as usize)
}

/// The tight bound on Σ H given the budget: Φ·H̃(k_min) + (M−1−Φ)·H̃(k_max)
/// + H̃(k_residual), with the witness k-vector.
pub fn multi_bound(query: &MultiBoundQuery) -> Result<ArcDecomposition> {
    let m = query.m;
    let k_tot = query.k_tot;
    let eval_dim = *query.dims.iter().min().expect("dims nonempty");

    let (k_min, k_max) = arc_endpoints(m, k_tot)?;
    if (k_max - k_min).abs() <= SNAP_TOL {
        // Integer ratio: the Φ formula is 0/0; the limit from both adjacent
        // regimes is the all-equal split.
        let k_each = k_tot / m as f64;
        let bound = m as f64 * h_tilde_fast(k_each);
        return Ok(ArcDecomposition {
            k_min: k_each,
            k_max: k_each,
            phi: m - 1,
            k_residual: k_each,
            degenerate: true,
            bound,
            k_vector: vec![k_each; m],
            eval_dim,
        });
    }

    let phi = phi_count(m, k_tot, k_min, k_max)?;
    let k_residual = k_tot - phi as f64 * k_min - (m - 1 - phi) as f64 * k_max;
    debug_assert!(k_residual >= k_min - BUDGET_TOL && k_residual <= k_max + BUDGET_TOL);

    let bound = phi as f64 * h_tilde_fast(k_min)
        + (m - 1 - phi) as f64 * h_tilde_fast(k_max)
        + h_tilde_fast(k_residual.clamp(k_min, k_max));

    let mut k_vector = Vec::with_capacity(m);
    k_vector.extend(std::iter::repeat_n(k_min, phi));
    k_vector.extend(std::iter::repeat_n(k_max, m - 1 - phi));
    k_vector.push(k_residual);

    Ok(ArcDecomposition {
        k_min,
        k_max,
        phi,
        k_residual,
        degenerate: false,
        bound,
        k_vector,
        eval_dim,
    })
}

/// Outcome of one cross-arc entropy transfer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferReport {
    pub k1: f64,
    pub k2: f64,
    pub kappa1: usize,
    pub kappa2: usize,
    pub eps1: f64,
    pub eps2: f64,
    pub eps_used: f64,
    /// H̃(k1) + H̃(k2).
    pub lhs: f64,
    /// H̃(k1 + ε) + H̃(k2 − ε).
    pub rhs: f64,
    /// Whether lhs > rhs strictly.
    pub holds: bool,
}

/// Moves ε = min(ε₁, ε₂) of collision probability from the lower-arc point
/// `k1` toward the higher-arc point `k2` and reports whether the entropy sum
/// strictly drops. ε₁ is the distance from `k1` to the next singularity on
/// its right (one full arc when `k1` sits exactly on a singularity); ε₂ is
/// the distance from `k2` down to the top of its arc.
///
/// Requires `1/d ≤ k1 < 1/(𝔎₂+1)` and `k2 ≤ 1` with `𝔎₂ = ⌊1/k2⌋`, i.e. the
/// two points on distinct arcs.
pub fn arc_transfer_check(k1: f64, k2: f64, d: usize) -> Result<TransferReport> {
    if d < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "d",
            value: d as f64,
            expected: "d >= 2",
        });
    }
    let inv_d = 1.0 / d as f64;
    if k1.is_nan() || k1 < inv_d - SNAP_TOL {
        return Err(Error::ParameterOutOfRange {
            name: "k1",
            value: k1,
            expected: "[1/d, 1]",
        });
    }
    if k2.is_nan() || k2 > 1.0 + SNAP_TOL || k2 <= 0.0 {
        return Err(Error::ParameterOutOfRange {
            name: "k2",
            value: k2,
            expected: "(0, 1]",
        });
    }

    let (f1, singular1) = snap_floor(1.0 / k1);
    let (f2, _) = snap_floor(1.0 / k2);
    let kappa1 = f1 as usize;
    let kappa2 = f2 as usize;
    if kappa1 <= kappa2 || k1 >= 1.0 / (kappa2 as f64 + 1.0) - SNAP_TOL {
        return Err(Error::ArcsNotDistinct { k1, k2 });
    }

    let eps2 = k2 - 1.0 / (kappa2 as f64 + 1.0);
    let eps1 = if singular1 {
        1.0 / (kappa1 as f64 - 1.0) - 1.0 / kappa1 as f64
    } else {
        1.0 / kappa1 as f64 - k1
    };
    let eps_used = eps1.min(eps2);

    let lhs = h_tilde_fast(k1) + h_tilde_fast(k2);
    let rhs = h_tilde_fast(k1 + eps_used) + h_tilde_fast(k2 - eps_used);

    Ok(TransferReport {
        k1,
        k2,
        kappa1,
        kappa2,
        eps1,
        eps2,
        eps_used,
        lhs,
        rhs,
        holds: lhs > rhs,
    })
}

/// Summary of a seeded batch of transfer checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferSweep {
    pub pairs: usize,
    /// Smallest lhs − rhs margin seen.
    pub min_margin: f64,
    /// Whether every pair had lhs > rhs strictly.
    pub all_hold: bool,
}

/// Runs `pairs` seeded transfer checks for dimension `d`: k2 is drawn on a
/// high arc, k1 strictly below it, both kept a hair away from arc boundaries
/// so the transfer distance is never degenerate.
pub fn arc_transfer_sweep(d: usize, pairs: usize, seed: u64) -> Result<TransferSweep> {
    use rand::{Rng, SeedableRng};
    if d < 3 {
        return Err(Error::ParameterOutOfRange {
            name: "d",
            value: d as f64,
            expected: "d >= 3",
        });
    }
    if pairs == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "pairs",
            value: 0.0,
            expected: "pairs >= 1",
        });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut min_margin = f64::INFINITY;
    let mut all_hold = true;
    for _ in 0..pairs {
        let kappa2 = rng.random_range(1..=d - 2);
        let k2_lo = 1.0 / (kappa2 as f64 + 1.0);
        let k2_hi = 1.0 / kappa2 as f64;
        // keep ε₂ = k2 − k2_lo at least 0.1% of the arc
        let k2 = k2_lo + (k2_hi - k2_lo) * (1e-3 + (1.0 - 1e-3) * rng.random::<f64>());
        let k1_lo = 1.0 / d as f64;
        let k1_hi = k2_lo;
        let k1 = k1_lo + (k1_hi - k1_lo) * (1e-3 + 0.997 * rng.random::<f64>());
        let report = arc_transfer_check(k1, k2, d)?;
        min_margin = min_margin.min(report.lhs - report.rhs);
        if !report.holds {
            all_hold = false;
        }
    }
    Ok(TransferSweep {
        pairs,
        min_margin,
        all_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::single::h_tilde;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn endpoints_fractional() {
        let (lo, hi) = arc_endpoints(2, 0.9).unwrap();
        assert!((lo - 1.0 / 3.0).abs() < 1e-15);
        assert!((hi - 0.5).abs() < 1e-15);
    }

    #[test]
    fn endpoints_integer_ratio() {
        let (lo, hi) = arc_endpoints(4, 2.0).unwrap();
        assert_eq!(lo, hi);
        assert!((lo - 0.5).abs() < 1e-15);
    }

    #[test]
    fn endpoints_m3() {
        let (lo, hi) = arc_endpoints(3, 2.0).unwrap();
        assert!((lo - 0.5).abs() < 1e-15);
        assert!((hi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn endpoints_range_errors() {
        assert!(arc_endpoints(2, 0.0).is_err());
        assert!(arc_endpoints(2, 2.5).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_count(2, 0.9, 1.0 / 3.0, 0.5).unwrap(), 0);
        assert_eq!(phi_count(3, 2.0, 0.5, 1.0).unwrap(), 2);
        assert_eq!(phi_count(2, 1.5, 0.5, 1.0).unwrap(), 1);
    }

    #[test]
    fn phi_rejects_degenerate() {
        assert!(matches!(
            phi_count(4, 2.0, 0.5, 0.5),
            Err(Error::DegenerateArcs)
        ));
    }

    #[test]
    fn bound_both_uniform() {
        let q = MultiBoundQuery::new(2, 2.0 / 3.0, vec![3, 3]).unwrap();
        let dec = multi_bound(&q).unwrap();
        assert!(dec.degenerate);
        assert!((dec.bound - 2.0 * 3f64.ln()).abs() < 1e-12);
        for &k in &dec.k_vector {
            assert!((k - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn bound_split_arc() {
        let q = MultiBoundQuery::new(2, 0.9, vec![3, 3]).unwrap();
        let dec = multi_bound(&q).unwrap();
        assert_eq!(dec.phi, 0);
        assert_eq!(dec.k_vector.len(), 2);
        assert!((dec.k_vector[0] - 0.5).abs() < 1e-15);
        assert!((dec.k_vector[1] - 0.4).abs() < 1e-12);
        let expected = LN2 + h_tilde(3, 0.4).unwrap();
        assert!((dec.bound - expected).abs() < 1e-12);
        assert!((dec.bound - 1.673279).abs() < 1e-6);
    }

    #[test]
    fn bound_degenerate_four() {
        let q = MultiBoundQuery::new(4, 2.0, vec![3, 3, 3, 3]).unwrap();
        let dec = multi_bound(&q).unwrap();
        assert!(dec.degenerate);
        assert!((dec.bound - 4.0 * LN2).abs() < 1e-12);
    }

    #[test]
    fn query_size_constraint() {
        // M/k_tot = 4, so every dimension must be at least 4.
        let err = MultiBoundQuery::new(2, 0.5, vec![3, 5]).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionTooSmall {
                index: 0,
                dim: 3,
                required: 4
            }
        ));
    }

    #[test]
    fn budget_identity_random() {
        for i in 1..200 {
            let k_tot = 0.7 + 2.2 * i as f64 / 200.0;
            let q = MultiBoundQuery::new(3, k_tot, vec![9, 9, 9]).unwrap();
            let dec = multi_bound(&q).unwrap();
            let resum: f64 = dec.k_vector.iter().sum();
            assert!(
                (resum - k_tot).abs() <= 1e-10,
                "budget identity broken at k_tot={k_tot}"
            );
            assert!(dec.k_residual >= dec.k_min - 1e-10);
            assert!(dec.k_residual <= dec.k_max + 1e-10);
        }
    }

    #[test]
    fn continuity_at_integer_crossing() {
        // M/k_tot crosses 2 at k_tot = 2 for M = 4.
        let base = multi_bound(&MultiBoundQuery::new(4, 2.0, vec![4, 4, 4, 4]).unwrap())
            .unwrap()
            .bound;
        for delta in [1e-9, 1e-8, 1e-7] {
            for k_tot in [2.0 - delta, 2.0 + delta] {
                let b = multi_bound(&MultiBoundQuery::new(4, k_tot, vec![4, 4, 4, 4]).unwrap())
                    .unwrap()
                    .bound;
                assert!(
                    (b - base).abs() <= 1e-6 * delta.max(1e-8) / 1e-8,
                    "discontinuity at k_tot={k_tot}: {b} vs {base}"
                );
            }
        }
    }

    #[test]
    fn label_invariance_at_integer_crossing() {
        // (k_tot − M·k_max)/(k_min − k_max) = 2 exactly for M=3, k_tot=2.
        let (k_min, k_max) = arc_endpoints(3, 2.0).unwrap();
        let i = 2usize;
        let eval = |phi: usize| {
            let residual = 2.0 - phi as f64 * k_min - (3 - 1 - phi) as f64 * k_max;
            phi as f64 * h_tilde(2, k_min).unwrap()
                + (3 - 1 - phi) as f64 * h_tilde(2, k_max).unwrap()
                + h_tilde(2, residual).unwrap()
        };
        assert!((eval(i) - eval(i - 1)).abs() <= 1e-12);
    }

    #[test]
    fn transfer_interior_pair() {
        let r = arc_transfer_check(0.30, 0.60, 5).unwrap();
        assert_eq!(r.kappa1, 3);
        assert_eq!(r.kappa2, 1);
        assert!((r.eps2 - 0.1).abs() < 1e-12);
        assert!(r.holds, "lhs={} rhs={}", r.lhs, r.rhs);
    }

    #[test]
    fn transfer_singular_k1() {
        let r = arc_transfer_check(1.0 / 3.0, 0.55, 4).unwrap();
        assert_eq!(r.kappa1, 3);
        // Singular branch: one full arc to the right.
        assert!((r.eps1 - (0.5 - 1.0 / 3.0)).abs() < 1e-12);
        assert!(r.holds, "lhs={} rhs={}", r.lhs, r.rhs);
    }

    #[test]
    fn transfer_same_arc_rejected() {
        assert!(matches!(
            arc_transfer_check(0.45, 0.48, 3),
            Err(Error::ArcsNotDistinct { .. })
        ));
    }
}
