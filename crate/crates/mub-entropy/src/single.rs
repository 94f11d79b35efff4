//! Tight lower bound on the Shannon entropy of a single distribution given a
//! collision-probability cap `k` and a per-outcome probability floor `p_min`.
//!
//! The minimizer has at most three probability levels: `n_floor` outcomes
//! pinned at the floor, one middle value, and a plateau of `𝔎` equal top
//! values. Its entropy is the bound `Ĥ(k, p_min)`; the `p_min = 0` special
//! case is `H̃(k)`, a piecewise-smooth curve with singularities at k = 1/𝔎
//! where the minimizer is uniform on 𝔎 outcomes.

use crate::distribution::Distribution;
use crate::{Error, Result};

/// Snap tolerance for classifying a ratio as an exact integer before taking
/// floors. Keeps arc indices deterministic at singular points where a bare
/// floating-point floor would misclassify.
pub(crate) const SNAP_TOL: f64 = 1e-12;

/// Radicands more negative than this are a hard error rather than rounding
/// noise to clamp.
const RADICAND_TOL: f64 = 1e-12;

/// A feasible single-distribution query: `d` outcomes, collision-probability
/// cap `k` and probability floor `p_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleBoundQuery {
    d: usize,
    k: f64,
    p_min: f64,
}

/// Inputs within this of the feasible k-range are snapped to the boundary
/// rather than rejected; decimal-truncated endpoints like 0.3333333333 stay
/// usable.
const K_RANGE_TOL: f64 = 1e-9;

impl SingleBoundQuery {
    /// Validates feasibility: `p_min ≤ 1/d` and `k` within
    /// [`feasible_k_range`] (up to a 1e−9 boundary snap).
    pub fn new(d: usize, k: f64, p_min: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ParameterOutOfRange {
                name: "d",
                value: 0.0,
                expected: "d >= 1",
            });
        }
        if !(0.0..=1.0).contains(&p_min) || p_min.is_nan() {
            return Err(Error::ParameterOutOfRange {
                name: "p_min",
                value: p_min,
                expected: "[0, 1]",
            });
        }
        let (lo, hi) = feasible_k_range(d, p_min)?;
        if k.is_nan() || k < lo - K_RANGE_TOL || k > hi + K_RANGE_TOL {
            return Err(Error::CollisionProbOutOfRange { k, lo, hi });
        }
        Ok(Self {
            d,
            k: k.clamp(lo, hi),
            p_min,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn collision_cap(&self) -> f64 {
        self.k
    }

    pub fn floor(&self) -> f64 {
        self.p_min
    }
}

/// The entropy-minimizing distribution for a query, together with its
/// structural parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalDistribution {
    dist: Distribution,
    big_k: usize,
    delta: f64,
    n_floor: usize,
    p_mid: f64,
    p_top: f64,
}

impl ExtremalDistribution {
    /// The minimizer itself, entries sorted ascending.
    pub fn distribution(&self) -> &Distribution {
        &self.dist
    }

    /// Arc index 𝔎: the size of the top plateau, in [1, d].
    pub fn big_k(&self) -> usize {
        self.big_k
    }

    /// The discriminant Δ of the top-level quadratic.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Count of entries pinned at the floor.
    pub fn n_floor(&self) -> usize {
        self.n_floor
    }

    /// The single middle probability level.
    pub fn p_mid(&self) -> f64 {
        self.p_mid
    }

    /// The plateau probability level.
    pub fn p_top(&self) -> f64 {
        self.p_top
    }

    /// Shannon entropy of the minimizer, i.e. the bound value.
    pub fn entropy(&self) -> f64 {
        self.dist.shannon_entropy()
    }
}

/// Feasible collision-probability range for `d` outcomes with floor `p_min`:
/// from the uniform distribution up to all-but-one outcome at the floor.
pub fn feasible_k_range(d: usize, p_min: f64) -> Result<(f64, f64)> {
    if d == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "d",
            value: 0.0,
            expected: "d >= 1",
        });
    }
    let inv_d = 1.0 / d as f64;
    if p_min.is_nan() || p_min < 0.0 || p_min > inv_d + SNAP_TOL {
        return Err(Error::InfeasibleFloor { p_min, inv_d });
    }
    let df = d as f64;
    let lo = inv_d;
    let hi = (df - 1.0) * p_min * p_min + (1.0 - (df - 1.0) * p_min).powi(2);
    Ok((lo, hi.max(lo)))
}

/// Floors `x`, snapping to the nearest integer when within [`SNAP_TOL`].
/// Returns the floor and whether `x` sits on an integer.
pub(crate) fn snap_floor(x: f64) -> (f64, bool) {
    let nearest = x.round();
    if (x - nearest).abs() <= SNAP_TOL {
        (nearest, true)
    } else {
        (x.floor(), false)
    }
}

/// Arc index 𝔎 = ⌊(1 − d·p_min)² / (d·p_min² − 2·p_min + k)⌋, clamped to
/// [1, d].
///
/// Returns [`Error::DegenerateUniform`] when the denominator vanishes (only
/// at `k → 1/d`, `p_min → 1/d` jointly); the caller must treat the answer as
/// the uniform distribution.
pub fn kappa_arcs(query: &SingleBoundQuery) -> Result<usize> {
    kappa_of(query.d, query.k, query.p_min).ok_or(Error::DegenerateUniform)
}

/// `None` signals the degenerate denominator.
fn kappa_of(d: usize, k: f64, p_min: f64) -> Option<usize> {
    let df = d as f64;
    let den = df * p_min * p_min - 2.0 * p_min + k;
    if den <= 1e-15 {
        return None;
    }
    let num = (1.0 - df * p_min).powi(2);
    let (floored, _) = snap_floor(num / den);
    Some((floored as usize).clamp(1, d))
}

/// The three-level entropy minimizer for a feasible query.
pub fn extremal_distribution(query: &SingleBoundQuery) -> Result<ExtremalDistribution> {
    let d = query.d;
    let k = query.k;
    let p_min = query.p_min;
    let df = d as f64;

    let big_k = match kappa_of(d, k, p_min) {
        // Degenerate denominator: the uniform distribution is the only
        // feasible point.
        None => d,
        Some(k_arcs) => k_arcs,
    };

    if big_k == d {
        // IC = 1/d forces uniformity; the middle slot disappears.
        return Ok(ExtremalDistribution {
            dist: Distribution::uniform(d),
            big_k: d,
            delta: 0.0,
            n_floor: 0,
            p_mid: 1.0 / df,
            p_top: 1.0 / df,
        });
    }

    // Singular point of the p_min = 0 curve: k = 1/𝔎 exactly, minimizer
    // uniform on 𝔎 outcomes. Taking the explicit branch keeps the value at
    // exactly ln 𝔎.
    if p_min == 0.0 {
        let (nearest, singular) = snap_floor(1.0 / k);
        if singular && (nearest as usize) == big_k {
            let top = 1.0 / big_k as f64;
            let mut probs = vec![0.0; d];
            for p in probs.iter_mut().skip(d - big_k) {
                *p = top;
            }
            return Ok(ExtremalDistribution {
                dist: Distribution::new(probs)?,
                big_k,
                delta: 1.0,
                n_floor: d - big_k - 1,
                p_mid: 0.0,
                p_top: top,
            });
        }
    }

    let kf = big_k as f64;
    let radicand = kf
        * (k + kf * k - 1.0
            + p_min
                * (df * p_min + 2.0 * df + kf * df * p_min
                    - df * df * p_min
                    - 2.0 * kf
                    - 2.0));
    if radicand < -RADICAND_TOL {
        return Err(Error::NegativeRadicand { value: radicand });
    }
    let delta = radicand.max(0.0).sqrt();

    let numerator = kf * (1.0 + p_min * (kf + 1.0 - df)) + delta;
    let p_top = numerator / (kf * kf + kf);
    let n_floor = d - big_k - 1;
    // Exact complement keeps the sum at 1 to rounding.
    let p_mid = (1.0 - p_min * n_floor as f64 - kf * p_top).max(p_min);

    let mut probs = Vec::with_capacity(d);
    probs.extend(std::iter::repeat_n(p_min, n_floor));
    probs.push(p_mid);
    probs.extend(std::iter::repeat_n(p_top, big_k));
    probs.sort_by(|a, b| a.partial_cmp(b).expect("probabilities are not NaN"));

    Ok(ExtremalDistribution {
        dist: Distribution::new(probs)?,
        big_k,
        delta,
        n_floor,
        p_mid,
        p_top,
    })
}

/// The bound Ĥ(k, p_min): Shannon entropy of the extremal distribution.
/// Every distribution on `d` outcomes with floor ≥ `p_min` and IC ≤ `k` has
/// entropy at least this value, and the value is attained.
pub fn h_hat(query: &SingleBoundQuery) -> Result<f64> {
    Ok(extremal_distribution(query)?.entropy())
}

/// The bound H̃(k) for `p_min = 0`. At singular points k = 1/𝔎 this is
/// exactly ln 𝔎.
pub fn h_tilde(d: usize, k: f64) -> Result<f64> {
    let query = SingleBoundQuery::new(d, k, 0.0)?;
    Ok(extremal_distribution(&query)?.entropy())
}

/// Allocation-free H̃ for hot loops. Assumes `1/d ≤ k ≤ 1` for some valid
/// `d`; agrees with [`h_tilde`] to a few ulp.
pub(crate) fn h_tilde_fast(k: f64) -> f64 {
    let (floored, singular) = snap_floor(1.0 / k);
    if singular {
        return floored.ln();
    }
    let kf = floored;
    let delta = (kf * (k + kf * k - 1.0)).max(0.0).sqrt();
    let p_top = (kf + delta) / (kf * kf + kf);
    let p_mid = 1.0 - kf * p_top;
    let mid_term = if p_mid > crate::distribution::ZERO_PROB {
        -p_mid * p_mid.ln()
    } else {
        0.0
    };
    mid_term - kf * p_top * p_top.ln() + 0.0
}
