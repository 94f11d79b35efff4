use thiserror::Error;

/// Errors for bound evaluation, basis construction and oracle searches.
#[derive(Debug, Error)]
pub enum Error {
    #[error("probability {value} at index {index} is outside [0, 1]")]
    ProbabilityOutOfRange { index: usize, value: f64 },

    #[error("probabilities sum to {sum}; expected 1 within {tol}")]
    ProbabilitySumOff { sum: f64, tol: f64 },

    #[error("empty probability vector")]
    EmptyDistribution,

    #[error("floor p_min = {p_min} exceeds 1/d = {inv_d}; no distribution exists")]
    InfeasibleFloor { p_min: f64, inv_d: f64 },

    #[error("collision probability {k} outside feasible range [{lo}, {hi}]")]
    CollisionProbOutOfRange { k: f64, lo: f64, hi: f64 },

    #[error("radicand {value} is negative beyond tolerance; query violates its preconditions")]
    NegativeRadicand { value: f64 },

    #[error("arc index is degenerate: the uniform distribution is the only feasible point")]
    DegenerateUniform,

    #[error("total collision budget {k_tot} outside (0, {max}]")]
    BudgetOutOfRange { k_tot: f64, max: f64 },

    #[error("dimension d_{index} = {dim} too small: the budget requires every d_i >= {required}")]
    DimensionTooSmall {
        index: usize,
        dim: usize,
        required: usize,
    },

    #[error("arc endpoints coincide (k_min == k_max); use the all-equal split instead")]
    DegenerateArcs,

    #[error("k1 = {k1} and k2 = {k2} are not on distinct arcs; transfer check not applicable")]
    ArcsNotDistinct { k1: f64, k2: f64 },

    #[error("parameter {name} = {value} outside {expected}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("unsupported dimension {d}: {reason}")]
    UnsupportedDimension { d: usize, reason: &'static str },

    #[error("need {want} bases for dimension {d}, got {got}")]
    BasisCountMismatch { d: usize, want: usize, got: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: max asymmetry {max_asym}")]
    NotHermitian { max_asym: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semi-definite: min eigenvalue {min_eigenvalue}")]
    NotPositiveSemiDefinite { min_eigenvalue: f64 },

    #[error("constructed basis violates {what}: deviation {deviation}")]
    BasisInvariantViolated { what: &'static str, deviation: f64 },

    #[error("not an irreducible polynomial over GF({p}): element {element} has no inverse")]
    ReduciblePolynomial { p: u32, element: usize },

    #[error("invalid search configuration: {reason}")]
    InvalidSearchConfig { reason: &'static str },

    #[error("search inconclusive: no feasible sample in the collision band (widen ic_band or raise budget)")]
    Inconclusive,

    #[error("lattice search supports at most {max} distributions, got {got}")]
    TooManyDistributions { got: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
