//! Brute-force verifiers for the closed forms: seeded simplex sampling with
//! local refinement for the single-distribution bound, an exhaustive lattice
//! search in k-space for the multi-distribution bound, and direct checks of
//! the three-probability minimizer.
//!
//! Budgets are partitioned across fixed, independently seeded streams and
//! merged by minimum, so results are bit-identical regardless of whether the
//! streams run in parallel.

use crate::distribution::{collision_probability_of, shannon_entropy_of, Distribution};
use crate::multi::MultiBoundQuery;
use crate::single::{h_tilde_fast, SingleBoundQuery};
use crate::{Error, Result};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of independent sample streams a budget is split over. Fixed (not
/// tied to thread count) so parallel and serial runs agree bit-for-bit.
const STREAM_COUNT: usize = 16;

/// Floor slack when accepting samples.
const FLOOR_SLACK: f64 = 1e-12;

/// Budget and acceptance parameters for the single-distribution search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    budget: usize,
    seed: u64,
    ic_band: f64,
    refine_steps: usize,
}

impl SearchConfig {
    /// Default band 1e−4 and 200 refinement sweeps.
    pub fn new(budget: usize, seed: u64) -> Result<Self> {
        Self::with_params(budget, seed, 1e-4, 200)
    }

    pub fn with_params(budget: usize, seed: u64, ic_band: f64, refine_steps: usize) -> Result<Self> {
        if budget < 1_000 {
            return Err(Error::InvalidSearchConfig {
                reason: "budget must be at least 1000 samples",
            });
        }
        if !(1e-6..=1e-2).contains(&ic_band) {
            return Err(Error::InvalidSearchConfig {
                reason: "ic_band must lie in [1e-6, 1e-2]",
            });
        }
        Ok(Self {
            budget,
            seed,
            ic_band,
            refine_steps,
        })
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ic_band(&self) -> f64 {
        self.ic_band
    }

    pub fn refine_steps(&self) -> usize {
        self.refine_steps
    }
}

/// Best feasible sample found for a single-distribution query.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best_entropy: f64,
    pub best_dist: Distribution,
    /// Samples that landed in the collision window (before refinement).
    pub feasible_count: u64,
    pub target: SingleBoundQuery,
}

struct StreamBest {
    best: Option<(f64, Vec<f64>)>,
    feasible: u64,
}

/// One seeded sample stream. Alternates uniform Dirichlet draws over the
/// floor-shifted simplex with draws from the three-level family (floors, one
/// free middle, a plateau of j equal tops) so the collision window actually
/// gets hit. Acceptance window is one-sided: k − band ≤ IC ≤ k, keeping
/// every accepted sample feasible for the original problem.
fn run_stream(
    d: usize,
    k: f64,
    p_min: f64,
    band: f64,
    seed: u64,
    stream: usize,
    samples: usize,
) -> StreamBest {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64 + 1);
    let free = 1.0 - d as f64 * p_min;
    let mut buf = vec![0.0f64; d];
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut feasible = 0u64;

    for s in 0..samples {
        if s % 2 == 0 {
            let mut sum = 0.0;
            for w in buf.iter_mut() {
                let u: f64 = 1.0 - rng.random::<f64>();
                *w = -u.ln();
                sum += *w;
            }
            for w in buf.iter_mut() {
                *w = p_min + free * (*w / sum);
            }
        } else {
            let j = rng.random_range(1..d);
            let n_floor = d - 1 - j;
            let rem = 1.0 - n_floor as f64 * p_min;
            let m_hi = rem / (j as f64 + 1.0);
            let mid = p_min + (m_hi - p_min) * rng.random::<f64>();
            let top = (rem - mid) / j as f64;
            buf[..n_floor].fill(p_min);
            buf[n_floor] = mid;
            buf[n_floor + 1..].fill(top);
        }

        let ic = collision_probability_of(&buf);
        if ic <= k && ic >= k - band {
            feasible += 1;
            let h = shannon_entropy_of(&buf);
            if best.as_ref().is_none_or(|(bh, _)| h < *bh) {
                best = Some((h, buf.clone()));
            }
        }
    }

    StreamBest { best, feasible }
}

/// Coordinate-pair descent with step halving, projected onto the feasible
/// window (floor respected, k − band ≤ IC ≤ k).
fn refine(probs: &mut [f64], k: f64, p_min: f64, band: f64, steps: usize) -> f64 {
    let d = probs.len();
    let mut best_h = shannon_entropy_of(probs);
    let mut step = 0.05f64;
    let mut cand = probs.to_vec();

    for _ in 0..steps {
        let mut improved = false;
        for to in 0..d {
            for from in 0..d {
                if to == from {
                    continue;
                }
                let gain = probs[to] + step;
                let lose = probs[from] - step;
                if lose < p_min - FLOOR_SLACK || gain > 1.0 + FLOOR_SLACK {
                    continue;
                }
                cand.copy_from_slice(probs);
                cand[to] = gain;
                cand[from] = lose;
                let ic = collision_probability_of(&cand);
                if ic > k || ic < k - band {
                    continue;
                }
                let h = shannon_entropy_of(&cand);
                if h < best_h - 1e-15 {
                    probs.copy_from_slice(&cand);
                    best_h = h;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    best_h
}

fn stream_sizes(budget: usize) -> Vec<usize> {
    let base = budget / STREAM_COUNT;
    let rem = budget % STREAM_COUNT;
    (0..STREAM_COUNT)
        .map(|i| base + usize::from(i < rem))
        .collect()
}

fn merge_streams(
    query: &SingleBoundQuery,
    config: &SearchConfig,
    streams: Vec<StreamBest>,
) -> Result<SearchResult> {
    let mut feasible = 0u64;
    let mut best: Option<(f64, Vec<f64>)> = None;
    for s in streams {
        feasible += s.feasible;
        if let Some((h, p)) = s.best {
            if best.as_ref().is_none_or(|(bh, _)| h < *bh) {
                best = Some((h, p));
            }
        }
    }
    let Some((_, mut probs)) = best else {
        return Err(Error::Inconclusive);
    };
    let best_entropy = refine(
        &mut probs,
        query.collision_cap(),
        query.floor(),
        config.ic_band(),
        config.refine_steps(),
    );
    Ok(SearchResult {
        best_entropy,
        best_dist: Distribution::new(probs)?,
        feasible_count: feasible,
        target: *query,
    })
}

/// Seeded sampling search for the minimum entropy subject to the floor and
/// collision cap. Deterministic for a given config; parallel and serial
/// paths agree bit-for-bit.
pub fn search_min_entropy_single(
    query: &SingleBoundQuery,
    config: &SearchConfig,
) -> Result<SearchResult> {
    #[cfg(feature = "parallel")]
    {
        if let Some(trivial) = trivial_single(query, config) {
            return trivial;
        }
        let sizes = stream_sizes(config.budget());
        let streams: Vec<StreamBest> = sizes
            .into_par_iter()
            .enumerate()
            .map(|(i, n)| {
                run_stream(
                    query.dim(),
                    query.collision_cap(),
                    query.floor(),
                    config.ic_band(),
                    config.seed(),
                    i,
                    n,
                )
            })
            .collect();
        merge_streams(query, config, streams)
    }
    #[cfg(not(feature = "parallel"))]
    {
        search_min_entropy_single_serial(query, config)
    }
}

/// Sequential reference for [`search_min_entropy_single`]; same streams,
/// same merge, identical output.
pub fn search_min_entropy_single_serial(
    query: &SingleBoundQuery,
    config: &SearchConfig,
) -> Result<SearchResult> {
    if let Some(trivial) = trivial_single(query, config) {
        return trivial;
    }
    let streams: Vec<StreamBest> = stream_sizes(config.budget())
        .into_iter()
        .enumerate()
        .map(|(i, n)| {
            run_stream(
                query.dim(),
                query.collision_cap(),
                query.floor(),
                config.ic_band(),
                config.seed(),
                i,
                n,
            )
        })
        .collect();
    merge_streams(query, config, streams)
}

/// d = 1 has a single feasible point.
fn trivial_single(query: &SingleBoundQuery, _config: &SearchConfig) -> Option<Result<SearchResult>> {
    if query.dim() == 1 {
        return Some(Ok(SearchResult {
            best_entropy: 0.0,
            best_dist: Distribution::point_mass(1, 0),
            feasible_count: 1,
            target: *query,
        }));
    }
    None
}

/// The closed-form minimizer of H(p₁)+H(p₂)+H(p₃) under p₁+p₂+p₃ = ε and
/// p₁²+p₂²+p₃² = k′.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeProbInstance {
    pub eps: f64,
    pub k_pair: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl ThreeProbInstance {
    pub fn entropy(&self) -> f64 {
        shannon_entropy_of(&[self.p1, self.p2, self.p3])
    }
}

/// Closed form: p₁ = ε/3 − √(6k′−2ε²)/3 and p₂ = p₃ = ε/3 + √(6k′−2ε²)/6.
/// Requires ε²/3 ≤ k′ ≤ ε²/2 (above ε²/2 the smallest probability would go
/// negative).
pub fn three_prob_min(eps: f64, k_pair: f64) -> Result<ThreeProbInstance> {
    if eps.is_nan() || eps <= 0.0 || eps > 1.0 {
        return Err(Error::ParameterOutOfRange {
            name: "eps",
            value: eps,
            expected: "(0, 1]",
        });
    }
    let lo = eps * eps / 3.0;
    let hi = eps * eps / 2.0;
    if k_pair.is_nan() || k_pair < lo - 1e-12 || k_pair > hi + 1e-12 {
        return Err(Error::CollisionProbOutOfRange {
            k: k_pair,
            lo,
            hi,
        });
    }
    let root = (6.0 * k_pair - 2.0 * eps * eps).max(0.0).sqrt();
    let p1 = (eps / 3.0 - root / 3.0).max(0.0);
    let p23 = eps / 3.0 + root / 6.0;
    Ok(ThreeProbInstance {
        eps,
        k_pair,
        p1,
        p2: p23,
        p3: p23,
    })
}

/// H(p₁) + H(p₂) + H(p₃) as a function of p₁ with (ε, k′) held fixed; the
/// other two probabilities are the constrained pair (ε−p₁)/2 ∓ δ.
fn h3_of_p1(p1: f64, eps: f64, k_pair: f64) -> f64 {
    let rad = 2.0 * eps * p1 - eps * eps - 3.0 * p1 * p1 + 2.0 * k_pair;
    let delta = rad.max(0.0).sqrt() / 2.0;
    let half = (eps - p1) / 2.0;
    shannon_entropy_of(&[p1, half - delta, half + delta])
}

/// Feasible p₁ interval for fixed (ε, k′): the pair must stay real and the
/// ordering p₁ ≤ p₂ ≤ p₃ must hold.
fn p1_interval(eps: f64, k_pair: f64) -> Result<(f64, f64)> {
    let lo_k = eps * eps / 3.0;
    let hi_k = eps * eps;
    if k_pair.is_nan() || k_pair < lo_k - 1e-12 || k_pair > hi_k + 1e-12 {
        return Err(Error::CollisionProbOutOfRange {
            k: k_pair,
            lo: lo_k,
            hi: hi_k,
        });
    }
    let root = (6.0 * k_pair - 2.0 * eps * eps).max(0.0).sqrt();
    let lo = (eps / 3.0 - root / 3.0).max(0.0);
    let hi = (eps / 3.0 - root / 6.0).max(lo);
    Ok((lo, hi))
}

/// Outcome of the p₁-monotonicity sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityReport {
    /// Evaluation points actually used.
    pub points: usize,
    /// Minimum forward-difference slope found (∞ when vacuous).
    pub min_slope: f64,
    pub non_decreasing: bool,
}

/// Checks that the three-probability entropy is non-decreasing in p₁ over
/// its feasible interval, on a uniform grid.
pub fn p1_monotonicity_check(eps: f64, k_pair: f64, grid: usize) -> Result<MonotonicityReport> {
    if eps.is_nan() || eps <= 0.0 || eps > 1.0 {
        return Err(Error::ParameterOutOfRange {
            name: "eps",
            value: eps,
            expected: "(0, 1]",
        });
    }
    if grid == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "grid",
            value: 0.0,
            expected: "grid >= 1",
        });
    }
    let (lo, hi) = p1_interval(eps, k_pair)?;
    if hi - lo <= 1e-12 {
        return Ok(MonotonicityReport {
            points: 1,
            min_slope: f64::INFINITY,
            non_decreasing: true,
        });
    }
    let step = (hi - lo) / grid as f64;
    let mut prev = h3_of_p1(lo, eps, k_pair);
    let mut min_slope = f64::INFINITY;
    let mut non_decreasing = true;
    for i in 1..=grid {
        let p1 = lo + (hi - lo) * i as f64 / grid as f64;
        let h = h3_of_p1(p1, eps, k_pair);
        let slope = (h - prev) / step;
        min_slope = min_slope.min(slope);
        if h < prev - 1e-10 {
            non_decreasing = false;
        }
        prev = h;
    }
    Ok(MonotonicityReport {
        points: grid + 1,
        min_slope,
        non_decreasing,
    })
}

/// Grid oracle for the three-probability problem: sweeps p₁ over its
/// feasible interval at `step` resolution and returns the minimum entropy.
pub fn three_prob_grid_min(eps: f64, k_pair: f64, step: f64) -> Result<f64> {
    if !(1e-6..=1e-1).contains(&step) {
        return Err(Error::ParameterOutOfRange {
            name: "step",
            value: step,
            expected: "[1e-6, 1e-1]",
        });
    }
    let (lo, hi) = p1_interval(eps, k_pair)?;
    let n = ((hi - lo) / step).ceil() as usize;
    let mut best = f64::INFINITY;
    for i in 0..=n {
        let p1 = (lo + i as f64 * step).min(hi);
        best = best.min(h3_of_p1(p1, eps, k_pair));
    }
    Ok(best)
}

/// Minimum of Σ H̃(kᵢ) over the lattice search.
#[derive(Debug, Clone)]
pub struct MultiSearchResult {
    pub best_total_entropy: f64,
    /// The minimizing collision probabilities (last entry is the residual).
    pub best_k: Vec<f64>,
    /// Lattice combinations that satisfied the budget.
    pub feasible_count: u64,
    pub target: MultiBoundQuery,
    pub step: f64,
}

/// Lattice step used by the verification suites.
pub const DEFAULT_LATTICE_STEP: f64 = 1e-3;

/// Per-dimension grid: multiples of `step` in [1/d, 1] plus the exact arc
/// endpoints 1/n, so singular points are representable.
fn k_grid(d: usize, step: f64) -> Vec<f64> {
    let lo = 1.0 / d as f64;
    let mut pts: Vec<f64> = Vec::with_capacity((1.0 / step) as usize + d + 2);
    pts.push(lo);
    let mut j = (lo / step).ceil() as usize;
    loop {
        let k = j as f64 * step;
        if k > 1.0 + 1e-15 {
            break;
        }
        if k >= lo {
            pts.push(k);
        }
        j += 1;
    }
    for n in 1..=d {
        pts.push(1.0 / n as f64);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("grid points are not NaN"));
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    pts
}

/// (total entropy, k-vector, feasible combinations seen).
type Candidate = (f64, Vec<f64>, u64);

/// Min with a total-order tie-break on the k-vector; feasible counts add.
/// Associative, so parallel reduction order cannot change the result.
fn better(a: Candidate, b: Candidate) -> Candidate {
    let feasible = a.2 + b.2;
    let mut best = if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    };
    best.2 = feasible;
    best
}

struct LatticePlan {
    grids: Vec<Vec<f64>>,
    h_cache: Vec<Vec<f64>>,
    last_dim: usize,
}

/// Mutable cursor for one depth-first lattice scan.
struct ScanState {
    prefix_k: Vec<f64>,
    best: Candidate,
}

/// Scans grid dimensions `depth..` for a fixed prefix. Grids are ascending,
/// so once the minimal completion overshoots the budget the loop can stop.
fn scan_tail(plan: &LatticePlan, k_tot: f64, depth: usize, prefix_sum: f64, prefix_h: f64, state: &mut ScanState) {
    let last_lo = 1.0 / plan.last_dim as f64;
    if depth == plan.grids.len() {
        let k_last = k_tot - prefix_sum;
        if k_last < last_lo - 1e-12 || k_last > 1.0 + 1e-12 {
            return;
        }
        state.best.2 += 1;
        let total = prefix_h + h_tilde_fast(k_last.clamp(last_lo, 1.0));
        if total < state.best.0 {
            state.best.0 = total;
            state.best.1 = state
                .prefix_k
                .iter()
                .copied()
                .chain(std::iter::once(k_last))
                .collect();
        }
        return;
    }
    let grid = &plan.grids[depth];
    let h = &plan.h_cache[depth];
    let min_rest: f64 = plan.grids[depth + 1..].iter().map(|g| g[0]).sum();
    for (i, &k) in grid.iter().enumerate() {
        if prefix_sum + k + min_rest + last_lo > k_tot + 1e-12 {
            break;
        }
        state.prefix_k.push(k);
        scan_tail(plan, k_tot, depth + 1, prefix_sum + k, prefix_h + h[i], state);
        state.prefix_k.pop();
    }
}

fn validate_lattice(query: &MultiBoundQuery, step: f64) -> Result<Option<LatticePlan>> {
    if query.count() > 4 {
        return Err(Error::TooManyDistributions {
            got: query.count(),
            max: 4,
        });
    }
    if !(1e-5..=1e-1).contains(&step) {
        return Err(Error::ParameterOutOfRange {
            name: "step",
            value: step,
            expected: "[1e-5, 1e-1]",
        });
    }
    let m = query.count();
    if m == 1 {
        return Ok(None);
    }
    let dims = query.dims();
    let grids: Vec<Vec<f64>> = dims[..m - 1].iter().map(|&d| k_grid(d, step)).collect();
    let h_cache: Vec<Vec<f64>> = grids
        .iter()
        .map(|g| g.iter().map(|&k| h_tilde_fast(k)).collect())
        .collect();
    Ok(Some(LatticePlan {
        grids,
        h_cache,
        last_dim: dims[m - 1],
    }))
}

fn single_slot_result(query: &MultiBoundQuery, step: f64) -> MultiSearchResult {
    let lo = 1.0 / query.dims()[0] as f64;
    MultiSearchResult {
        best_total_entropy: h_tilde_fast(query.budget().clamp(lo, 1.0)),
        best_k: vec![query.budget()],
        feasible_count: 1,
        target: query.clone(),
        step,
    }
}

fn run_outer(plan: &LatticePlan, k_tot: f64, outer: usize) -> Candidate {
    let mut state = ScanState {
        prefix_k: vec![plan.grids[0][outer]],
        best: (f64::INFINITY, Vec::new(), 0),
    };
    scan_tail(
        plan,
        k_tot,
        1,
        plan.grids[0][outer],
        plan.h_cache[0][outer],
        &mut state,
    );
    state.best
}

fn finish_lattice(query: &MultiBoundQuery, step: f64, best: Candidate) -> Result<MultiSearchResult> {
    if best.1.is_empty() {
        return Err(Error::Inconclusive);
    }
    Ok(MultiSearchResult {
        best_total_entropy: best.0,
        best_k: best.1,
        feasible_count: best.2,
        target: query.clone(),
        step,
    })
}

/// Exhaustive lattice minimization of Σ H̃(kᵢ) subject to Σ kᵢ = k_tot with
/// kᵢ ∈ [1/dᵢ, 1]. Supports M ≤ 4; the last slot absorbs the residual
/// budget exactly.
pub fn search_min_entropy_multi(query: &MultiBoundQuery, step: f64) -> Result<MultiSearchResult> {
    let Some(plan) = validate_lattice(query, step)? else {
        return Ok(single_slot_result(query, step));
    };
    let k_tot = query.budget();
    #[cfg(feature = "parallel")]
    let best = (0..plan.grids[0].len())
        .into_par_iter()
        .map(|outer| run_outer(&plan, k_tot, outer))
        .reduce(|| (f64::INFINITY, Vec::new(), 0), better);
    #[cfg(not(feature = "parallel"))]
    let best = (0..plan.grids[0].len())
        .map(|outer| run_outer(&plan, k_tot, outer))
        .fold((f64::INFINITY, Vec::new(), 0), better);
    finish_lattice(query, step, best)
}

/// Sequential reference for [`search_min_entropy_multi`]; identical output.
pub fn search_min_entropy_multi_serial(
    query: &MultiBoundQuery,
    step: f64,
) -> Result<MultiSearchResult> {
    let Some(plan) = validate_lattice(query, step)? else {
        return Ok(single_slot_result(query, step));
    };
    let k_tot = query.budget();
    let best = (0..plan.grids[0].len())
        .map(|outer| run_outer(&plan, k_tot, outer))
        .fold((f64::INFINITY, Vec::new(), 0), better);
    finish_lattice(query, step, best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::single::{h_hat, h_tilde};

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(999, 0).is_err());
        assert!(SearchConfig::with_params(10_000, 0, 1e-7, 10).is_err());
        assert!(SearchConfig::with_params(10_000, 0, 1e-3, 10).is_ok());
    }

    #[test]
    fn single_search_matches_closed_form_d3() {
        let q = SingleBoundQuery::new(3, 0.4, 0.0).unwrap();
        let cfg = SearchConfig::new(200_000, 42).unwrap();
        let r = search_min_entropy_single(&q, &cfg).unwrap();
        let bound = h_hat(&q).unwrap();
        assert!(r.best_entropy >= bound - 1e-6, "{} vs {bound}", r.best_entropy);
        assert!(r.best_entropy <= bound + 1e-4, "{} vs {bound}", r.best_entropy);
        let probs = r.best_dist.probs();
        assert!(r.best_dist.collision_probability() <= 0.4 + 1e-15);
        assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_search_point_mass() {
        let q = SingleBoundQuery::new(2, 1.0, 0.0).unwrap();
        let cfg = SearchConfig::new(100_000, 1).unwrap();
        let r = search_min_entropy_single(&q, &cfg).unwrap();
        assert!(r.best_entropy <= 1e-4, "entropy {}", r.best_entropy);
    }

    #[test]
    fn single_search_with_floor() {
        let q = SingleBoundQuery::new(4, 0.35, 0.1).unwrap();
        let cfg = SearchConfig::new(200_000, 7).unwrap();
        let r = search_min_entropy_single(&q, &cfg).unwrap();
        let bound = h_hat(&q).unwrap();
        assert!((r.best_entropy - bound).abs() <= 1e-4, "{} vs {bound}", r.best_entropy);
        assert!(r.best_dist.min_prob() >= 0.1 - 1e-12);
    }

    #[test]
    fn single_search_deterministic_and_parallel_equal() {
        let q = SingleBoundQuery::new(3, 0.55, 0.05).unwrap();
        let cfg = SearchConfig::new(50_000, 99).unwrap();
        let a = search_min_entropy_single(&q, &cfg).unwrap();
        let b = search_min_entropy_single(&q, &cfg).unwrap();
        let c = search_min_entropy_single_serial(&q, &cfg).unwrap();
        assert_eq!(a.best_entropy.to_bits(), b.best_entropy.to_bits());
        assert_eq!(a.best_entropy.to_bits(), c.best_entropy.to_bits());
        assert_eq!(a.best_dist, c.best_dist);
        assert_eq!(a.feasible_count, c.feasible_count);
    }

    #[test]
    fn single_search_inconclusive_band() {
        // k at the uniform endpoint: the window has measure zero.
        let q = SingleBoundQuery::new(5, 0.2, 0.0).unwrap();
        let cfg = SearchConfig::with_params(1_000, 3, 1e-6, 10).unwrap();
        assert!(matches!(
            search_min_entropy_single(&q, &cfg),
            Err(Error::Inconclusive)
        ));
    }

    #[test]
    fn three_prob_uniform() {
        let t = three_prob_min(1.0, 1.0 / 3.0).unwrap();
        assert!((t.p1 - 1.0 / 3.0).abs() < 1e-12);
        assert!((t.p2 - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn three_prob_boundary() {
        let t = three_prob_min(1.0, 0.5).unwrap();
        assert!(t.p1.abs() < 1e-12);
        assert!((t.p2 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn three_prob_interior() {
        let t = three_prob_min(0.9, 0.35).unwrap();
        assert!((t.p1 - 0.0690598923241498).abs() < 1e-12);
        assert!((t.p2 - 0.41547005383792507).abs() < 1e-12);
        assert!((t.p1 + t.p2 + t.p3 - 0.9).abs() <= 1e-12);
        let k = t.p1 * t.p1 + t.p2 * t.p2 + t.p3 * t.p3;
        assert!((k - 0.35).abs() <= 1e-10);
        // Grid oracle confirms minimality.
        let grid_min = three_prob_grid_min(0.9, 0.35, 1e-3).unwrap();
        assert!(t.entropy() <= grid_min + 1e-8);
    }

    #[test]
    fn three_prob_range_errors() {
        assert!(three_prob_min(1.0, 0.2).is_err());
        assert!(three_prob_min(1.0, 0.7).is_err());
    }

    #[test]
    fn p1_monotone_examples() {
        let r = p1_monotonicity_check(1.0, 0.4, 1000).unwrap();
        assert!(r.non_decreasing, "min slope {}", r.min_slope);
        let r = p1_monotonicity_check(0.8, 0.3, 1000).unwrap();
        assert!(r.non_decreasing, "min slope {}", r.min_slope);
    }

    #[test]
    fn p1_monotone_vacuous() {
        let r = p1_monotonicity_check(1.0, 1.0 / 3.0, 1000).unwrap();
        assert_eq!(r.points, 1);
        assert!(r.non_decreasing);
    }

    #[test]
    fn multi_lattice_m2() {
        let q = MultiBoundQuery::new(2, 0.9, vec![3, 3]).unwrap();
        let r = search_min_entropy_multi(&q, DEFAULT_LATTICE_STEP).unwrap();
        let expected = std::f64::consts::LN_2 + h_tilde(3, 0.4).unwrap();
        assert!((r.best_total_entropy - expected).abs() <= 1e-4);
        // The optimum (0.5, 0.4) is on the augmented lattice (up to swap).
        let mut ks = r.best_k.clone();
        ks.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((ks[0] - 0.5).abs() < 1e-12, "{ks:?}");
        assert!((ks[1] - 0.4).abs() < 1e-12, "{ks:?}");
    }

    #[test]
    fn multi_lattice_uniform_budget() {
        let q = MultiBoundQuery::new(2, 2.0 / 3.0, vec![3, 3]).unwrap();
        let r = search_min_entropy_multi(&q, DEFAULT_LATTICE_STEP).unwrap();
        assert!((r.best_total_entropy - 2.0 * 3f64.ln()).abs() <= 1e-9);
    }

    #[test]
    fn multi_lattice_serial_matches_parallel() {
        let q = MultiBoundQuery::new(3, 1.4, vec![4, 4, 4]).unwrap();
        let a = search_min_entropy_multi(&q, 5e-3).unwrap();
        let b = search_min_entropy_multi_serial(&q, 5e-3).unwrap();
        assert_eq!(a.best_total_entropy.to_bits(), b.best_total_entropy.to_bits());
        assert_eq!(a.best_k, b.best_k);
        assert_eq!(a.feasible_count, b.feasible_count);
    }

    #[test]
    fn multi_lattice_rejects_m5() {
        let q = MultiBoundQuery::new(5, 2.5, vec![3, 3, 3, 3, 3]).unwrap();
        assert!(matches!(
            search_min_entropy_multi(&q, 1e-3),
            Err(Error::TooManyDistributions { .. })
        ));
    }
}
