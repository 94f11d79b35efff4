//! Pre-existing entropy bounds used as comparison targets and dominance
//! baselines: Maassen–Uffink, the ceiling-based Shannon bounds for MUBs and
//! for a total collision budget, the collision-entropy cap bound, and the
//! collision-budget cap itself.

use crate::single::SNAP_TOL;
use crate::{Error, Result};

/// Maassen–Uffink: H(A) + H(B) ≥ −2 ln c for two bases with maximum overlap
/// c. For mutually unbiased bases c = 1/√d, giving ln d.
pub fn maassen_uffink(c: f64) -> Result<f64> {
    if c.is_nan() || c <= 0.0 || c > 1.0 + SNAP_TOL {
        return Err(Error::ParameterOutOfRange {
            name: "c",
            value: c,
            expected: "(0, 1]",
        });
    }
    Ok(-2.0 * c.min(1.0).ln())
}

fn check_m_range(d: usize, m: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "d",
            value: d as f64,
            expected: "d >= 2",
        });
    }
    if m < 1 || m > d + 1 {
        return Err(Error::ParameterOutOfRange {
            name: "M",
            value: m as f64,
            expected: "1 <= M <= d + 1",
        });
    }
    Ok(())
}

/// Limit-safe x·ln(y/(y−1)) style factor: (κM−1)·ln(κM/(κM−1)) is 0 at
/// κM = 1.
fn log_ratio_term(km: f64) -> f64 {
    if km <= 1.0 {
        0.0
    } else {
        (km - 1.0) * (km / (km - 1.0)).ln()
    }
}

/// Ceiling-based Shannon uncertainty bound for M mutually unbiased
/// observables in dimension d:
/// M·(ln(κM) − (κM−1)·(κM·(d+M−1)/(dM) − 1)·ln(κM/(κM−1))) with
/// κ = ⌈d/(d+M−1)⌉. As written κ evaluates to 1 for every M ≥ 1; kept
/// verbatim as the comparison target.
pub fn azer_bound(d: usize, m: usize) -> Result<f64> {
    check_m_range(d, m)?;
    let kappa = d.div_ceil(d + m - 1);
    let km = (kappa * m) as f64;
    if km <= 1.0 {
        return Ok(0.0);
    }
    let df = d as f64;
    let mf = m as f64;
    let mid = km * (df + mf - 1.0) / (df * mf) - 1.0;
    Ok(mf * (km.ln() - mid * log_ratio_term(km)))
}

/// The classical collision-budget form of the ceiling bound:
/// M·(ln(κM) − (κM−1)·(κM·k_tot/M − 1)·ln(κM/(κM−1))) with κ = ⌈1/k_tot⌉.
pub fn azer_col_bound(m: usize, k_tot: f64) -> Result<f64> {
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
    let ratio = 1.0 / k_tot;
    let nearest = ratio.round();
    let kappa = if (ratio - nearest).abs() <= SNAP_TOL {
        nearest
    } else {
        ratio.ceil()
    };
    let km = kappa * m as f64;
    if km <= 1.0 {
        return Ok(0.0);
    }
    let mf = m as f64;
    let mid = km * k_tot / mf - 1.0;
    Ok(mf * (km.ln() - mid * log_ratio_term(km)))
}

/// Lower bound on Σ H₂ over M mutually unbiased observables:
/// −M·ln((d+M−1)/(dM)). The positive form follows from applying Jensen's
/// inequality for −ln to the average collision probability under the cap
/// [`k_tot_cap`]; it is always ≥ 0.
pub fn collision_entropy_bound(d: usize, m: usize) -> Result<f64> {
    check_m_range(d, m)?;
    let df = d as f64;
    let mf = m as f64;
    Ok(-mf * ((df + mf - 1.0) / (df * mf)).ln())
}

/// Cap on the total collision probability over M mutually unbiased
/// observables: Σ IC ≤ (d+M−1)/d. Equals 2 at the full set M = d+1.
pub fn k_tot_cap(d: usize, m: usize) -> Result<f64> {
    check_m_range(d, m)?;
    Ok((d + m - 1) as f64 / d as f64)
}

/// Bound families for comparison tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundLabel {
    MaassenUffink,
    Azer,
    AzerCol,
    CollisionEntropyBound,
    ColboundCap,
    NewSingle,
    NewMulti,
    NewTheorem,
}

impl BoundLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundLabel::MaassenUffink => "maassen_uffink",
            BoundLabel::Azer => "azer",
            BoundLabel::AzerCol => "azer_col",
            BoundLabel::CollisionEntropyBound => "collision_entropy_bound",
            BoundLabel::ColboundCap => "colbound_cap",
            BoundLabel::NewSingle => "new_single",
            BoundLabel::NewMulti => "new_multi",
            BoundLabel::NewTheorem => "new_theorem",
        }
    }
}

/// One labelled bound value with an echo of its inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundComparison {
    pub label: BoundLabel,
    /// Value in nats.
    pub value: f64,
    pub d: Option<usize>,
    pub m: Option<usize>,
    pub k_tot: Option<f64>,
    /// Maximum overlap c, for the Maassen–Uffink row.
    pub overlap: Option<f64>,
}

/// One sample of the single-distribution comparison curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub k: f64,
    /// The tight bound H̃(k).
    pub h_tilde: f64,
    /// The ceiling-based bound with M = 1.
    pub azer_col_m1: f64,
    /// The collision-entropy baseline −ln k.
    pub neg_ln_k: f64,
}

/// Samples H̃(k), the M = 1 ceiling bound and −ln k on `steps` evenly spaced
/// points of [k_from, k_to] ⊆ [1/d, 1]. The three curves coincide at the
/// singular points k = 1/𝔎 and are strictly ordered in between.
pub fn comparison_curve(d: usize, k_from: f64, k_to: f64, steps: usize) -> Result<Vec<CurveRow>> {
    if steps < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "steps",
            value: steps as f64,
            expected: "steps >= 2",
        });
    }
    if d < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "d",
            value: d as f64,
            expected: "d >= 2",
        });
    }
    let lo = 1.0 / d as f64;
    if k_from.is_nan() || k_to.is_nan() || k_from < lo - SNAP_TOL || k_to > 1.0 + SNAP_TOL || k_from >= k_to {
        return Err(Error::CollisionProbOutOfRange {
            k: k_from,
            lo,
            hi: 1.0,
        });
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        // to-endpoint exact at i = steps − 1
        let k = k_from + (k_to - k_from) * i as f64 / (steps - 1) as f64;
        rows.push(CurveRow {
            k,
            h_tilde: crate::single::h_tilde(d, k.clamp(lo, 1.0))?,
            azer_col_m1: azer_col_bound(1, k)?,
            neg_ln_k: -k.ln() + 0.0,
        });
    }
    Ok(rows)
}
