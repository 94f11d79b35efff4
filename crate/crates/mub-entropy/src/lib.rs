//! Tight lower bounds on Shannon entropy under collision-probability
//! constraints, and the entropic uncertainty relations they induce for
//! mutually unbiased bases (MUBs) in prime-power dimensions.
//!
//! The crate has three layers:
//!
//! - **Bounds.** [`single`] computes the exact entropy minimizer for one
//!   distribution given a collision-probability cap and a probability floor;
//!   [`multi`] extends it to M distributions sharing a total collision
//!   budget; [`prior`] collects the earlier bounds used for comparison.
//! - **Quantum surface.** [`mub`] constructs full sets of d+1 mutually
//!   unbiased bases for d ∈ {2, 3, 4, 5, 7, 8, 9}, samples density matrices,
//!   produces Born-rule measurement statistics, verifies the
//!   Σ IC = Tr(ρ²) + 1 identity, and evaluates the uncertainty bound.
//! - **Verification.** [`oracle`] holds independent brute-force searches that
//!   confirm the closed forms are true minima at desk scale.
//!
//! All entropies are in nats. Everything is deterministic given a seed: the
//! sampling oracles split their budgets over fixed seeded streams, so results
//! are bit-identical with or without the `parallel` feature (rayon, enabled
//! by default).

pub mod distribution;
pub mod field;
pub mod multi;
pub mod mub;
pub mod oracle;
pub mod prior;
pub mod single;

mod error;

pub use distribution::{Distribution, EntropySummary};
pub use error::{Error, Result};
pub use multi::{
    arc_endpoints, arc_transfer_check, arc_transfer_sweep, multi_bound, phi_count,
    ArcDecomposition, MultiBoundQuery, TransferReport, TransferSweep,
};
pub use mub::{
    build_mubs, larsen_check, measurement_distribution, mub_entropy_bound,
    sample_density_matrix, DensityMatrix, LarsenReport, MubSet, StateMode,
};
pub use oracle::{
    search_min_entropy_multi, search_min_entropy_single, three_prob_min, SearchConfig,
    SearchResult, ThreeProbInstance,
};
pub use single::{
    extremal_distribution, feasible_k_range, h_hat, h_tilde, kappa_arcs, ExtremalDistribution,
    SingleBoundQuery,
};
