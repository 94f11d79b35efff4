//! Mutually unbiased bases for small prime-power dimensions, quantum state
//! sampling, Born-rule measurement statistics, the Larsen collision-sum
//! identity, and the uncertainty bound the multi-distribution result yields
//! for MUB measurements.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::distribution::Distribution;
use crate::field::{FiniteField, GaloisRing};
use crate::multi::{multi_bound, ArcDecomposition, MultiBoundQuery};
use crate::prior::{
    azer_bound, collision_entropy_bound, k_tot_cap, maassen_uffink, BoundComparison, BoundLabel,
};
use crate::{Error, Result};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Dimensions with a full set of d+1 bases on file.
pub const SUPPORTED_DIMS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Orthonormality / unbiasedness tolerance on squared overlaps.
pub const OVERLAP_TOL: f64 = 1e-10;

/// d+1 pairwise unbiased orthonormal bases for dimension d. Basis vectors
/// are matrix columns.
#[derive(Debug, Clone)]
pub struct MubSet {
    d: usize,
    bases: Vec<DMatrix<Complex64>>,
}

impl MubSet {
    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn count(&self) -> usize {
        self.bases.len()
    }

    pub fn basis(&self, m: usize) -> &DMatrix<Complex64> {
        &self.bases[m]
    }

    pub fn bases(&self) -> &[DMatrix<Complex64>] {
        &self.bases
    }

    /// Max deviation of |⟨a_i|b_j⟩|² from δ_ij (same basis) and from 1/d
    /// (distinct bases), over all pairs.
    pub fn max_overlap_deviation(&self) -> f64 {
        let d = self.d;
        let inv_d = 1.0 / d as f64;
        let mut worst: f64 = 0.0;
        for (m, a) in self.bases.iter().enumerate() {
            for (l, b) in self.bases.iter().enumerate().skip(m) {
                for i in 0..d {
                    for j in 0..d {
                        let ov = a.column(i).dotc(&b.column(j)).norm_sqr();
                        let target = if m == l {
                            if i == j {
                                1.0
                            } else {
                                0.0
                            }
                        } else {
                            inv_d
                        };
                        worst = worst.max((ov - target).abs());
                    }
                }
            }
        }
        worst
    }
}

fn is_prime(d: usize) -> bool {
    if d < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= d {
        if d.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Smallest prime factor, if d = p^n for a single prime p.
pub(crate) fn prime_power_base(d: usize) -> Option<(usize, u32)> {
    if d < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            let mut rest = d;
            let mut n = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                n += 1;
            }
            return if rest == 1 { Some((p, n)) } else { None };
        }
        p += 1;
    }
    Some((d, 1))
}

fn computational_basis(d: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |r, c| {
        if r == c {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The three qubit bases: computational, diagonal and circular.
fn qubit_mubs() -> Vec<DMatrix<Complex64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = |re, im| Complex64::new(re, im);
    vec![
        computational_basis(2),
        DMatrix::from_column_slice(2, 2, &[z(s, 0.0), z(s, 0.0), z(s, 0.0), z(-s, 0.0)]),
        DMatrix::from_column_slice(2, 2, &[z(s, 0.0), z(0.0, s), z(s, 0.0), z(0.0, -s)]),
    ]
}

/// Odd prime-power construction: basis a has vectors
/// v_{a,b}[x] = ω_p^{tr(a·x² + b·x)} / √q over the field elements x.
fn odd_prime_power_mubs(field: &FiniteField) -> Vec<DMatrix<Complex64>> {
    let q = field.order();
    let p = field.characteristic();
    let norm = 1.0 / (q as f64).sqrt();
    let phases: Vec<Complex64> = (0..p)
        .map(|r| {
            let angle = 2.0 * std::f64::consts::PI * r as f64 / p as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect();

    let mut bases = vec![computational_basis(q)];
    for a in 0..q {
        let basis = DMatrix::from_fn(q, q, |x, b| {
            let quad = field.mul(a, field.mul(x, x));
            let lin = field.mul(b, x);
            let e = field.trace(field.add(quad, lin)) as usize;
            phases[e] * norm
        });
        bases.push(basis);
    }
    bases
}

/// Characteristic-2 construction over GR(4, n): basis a ∈ T has vectors
/// v_{a,b}[x] = i^{Tr((a + 2b)·x)} / √q over the Teichmüller set, indexed by
/// GF(2^n) residue.
fn char2_mubs(ring: &GaloisRing) -> Vec<DMatrix<Complex64>> {
    let q = ring.size();
    let norm = 1.0 / (q as f64).sqrt();
    let i_pow = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];

    let mut bases = vec![computational_basis(q)];
    for a_res in 0..q {
        let a = ring.teichmuller(a_res).to_vec();
        let basis = DMatrix::from_fn(q, q, |x_res, b_res| {
            let b2 = ring.double(ring.teichmuller(b_res));
            let coeff = ring.add(&a, &b2);
            let x = ring.teichmuller(x_res);
            let tr = ring.trace_z4(&ring.mul(&coeff, x));
            i_pow[tr as usize] * norm
        });
        bases.push(basis);
    }
    bases
}

/// Builds the full set of d+1 mutually unbiased bases for a supported
/// prime-power dimension. d = 6 and other non-prime-powers are rejected:
/// beyond three bases nothing is known to exist there.
pub fn build_mubs(d: usize) -> Result<MubSet> {
    if !SUPPORTED_DIMS.contains(&d) {
        let reason = if prime_power_base(d).is_some() {
            "prime power outside the supported set {2, 3, 4, 5, 7, 8, 9}"
        } else {
            "not a prime power; whether more than three mutually unbiased bases exist here is an open problem"
        };
        return Err(Error::UnsupportedDimension { d, reason });
    }

    let bases = match d {
        2 => qubit_mubs(),
        4 | 8 => char2_mubs(&GaloisRing::new(if d == 4 { 2 } else { 3 })?),
        _ => {
            debug_assert!(is_prime(d) || d == 9);
            odd_prime_power_mubs(&FiniteField::gf(d)?)
        }
    };

    let set = MubSet { d, bases };
    if set.count() != d + 1 {
        return Err(Error::BasisCountMismatch {
            d,
            want: d + 1,
            got: set.count(),
        });
    }
    let deviation = set.max_overlap_deviation();
    if deviation > OVERLAP_TOL {
        return Err(Error::BasisInvariantViolated {
            what: "orthonormality/unbiasedness",
            deviation,
        });
    }
    Ok(set)
}

/// A d×d density matrix: Hermitian, unit trace, positive semi-definite.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e−12), trace (1e−12) and eigenvalue floor
    /// (−1e−10).
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        let d = mat.nrows();
        if d == 0 || mat.ncols() != d {
            return Err(Error::DimensionMismatch {
                left: d,
                right: mat.ncols(),
            });
        }
        let mut max_asym: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                let diff = mat[(i, j)] - mat[(j, i)].conj();
                max_asym = max_asym.max(diff.norm());
            }
        }
        if max_asym > 1e-12 {
            return Err(Error::NotHermitian { max_asym });
        }
        let trace: Complex64 = (0..d).map(|i| mat[(i, i)]).sum();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let eig = mat.clone().symmetric_eigen();
        let min_eigenvalue = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -1e-10 {
            return Err(Error::NotPositiveSemiDefinite { min_eigenvalue });
        }
        Ok(Self { mat })
    }

    /// ρ = |ψ⟩⟨ψ| from a (not necessarily normalized) state vector.
    pub fn from_pure(mut psi: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "psi",
                value: 0.0,
                expected: "a nonzero vector",
            });
        }
        for z in psi.iter_mut() {
            *z /= norm;
        }
        let d = psi.len();
        let mat = DMatrix::from_fn(d, d, |r, c| psi[r] * psi[c].conj());
        Self::new(mat)
    }

    /// The maximally mixed state I/d.
    pub fn maximally_mixed(d: usize) -> Self {
        let mat = DMatrix::from_fn(d, d, |r, c| {
            if r == c {
                Complex64::new(1.0 / d as f64, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self { mat }
    }

    pub fn dimension(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Purity Tr(ρ²) ∈ [1/d, 1]; for Hermitian ρ this is the squared
    /// Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// How to sample a random state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateMode {
    /// Rank-1 projector from a normalized complex-Gaussian vector.
    Pure,
    /// ρ = GG†/Tr(GG†) with complex-Gaussian G (Hilbert–Schmidt measure).
    Mixed,
}

/// Deterministic seeded state sampling.
pub fn sample_density_matrix(d: usize, mode: StateMode, seed: u64) -> DensityMatrix {
    assert!(d >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = || {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    };
    match mode {
        StateMode::Pure => {
            let psi: Vec<Complex64> = (0..d).map(|_| gauss()).collect();
            DensityMatrix::from_pure(psi).expect("gaussian pure state is valid")
        }
        StateMode::Mixed => {
            let g = DMatrix::from_fn(d, d, |_, _| gauss());
            let gg = &g * g.adjoint();
            let trace: f64 = (0..d).map(|i| gg[(i, i)].re).sum();
            let mat = gg.map(|z| z / trace);
            // Re-symmetrize the floating-point residue so validation's
            // 1e-12 Hermiticity gate always passes.
            let sym = DMatrix::from_fn(d, d, |r, c| (mat[(r, c)] + mat[(c, r)].conj()) * 0.5);
            DensityMatrix::new(sym).expect("normalized GG† is a valid state")
        }
    }
}

/// Born rule: outcome probabilities ⟨b_i|ρ|b_i⟩ of measuring `rho` in
/// `basis` (columns are the basis vectors). Entries within −1e−12 of zero
/// are clamped to zero; no renormalization is applied.
pub fn measurement_distribution(
    rho: &DensityMatrix,
    basis: &DMatrix<Complex64>,
) -> Result<Distribution> {
    let d = rho.dimension();
    if basis.nrows() != d || basis.ncols() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: basis.nrows(),
        });
    }
    let mut probs = Vec::with_capacity(d);
    for i in 0..d {
        let col = basis.column(i);
        let rho_col = rho.matrix() * col;
        let p = col.dotc(&rho_col).re;
        if p < -1e-12 {
            return Err(Error::NotPositiveSemiDefinite { min_eigenvalue: p });
        }
        probs.push(p.max(0.0));
    }
    Distribution::new(probs)
}

/// Per-basis collision probabilities and both sides of the Larsen identity
/// Σ IC(A_m) = Tr(ρ²) + 1 over the full set of d+1 bases.
#[derive(Debug, Clone)]
pub struct LarsenReport {
    pub per_basis_ic: Vec<f64>,
    /// Σ IC over all d+1 bases.
    pub lhs: f64,
    /// Tr(ρ²) + 1.
    pub rhs: f64,
    pub residual: f64,
}

/// Evaluates the Larsen identity for one state. Requires the full set of
/// d+1 bases.
pub fn larsen_check(rho: &DensityMatrix, mubs: &MubSet) -> Result<LarsenReport> {
    let d = rho.dimension();
    if mubs.dimension() != d {
        return Err(Error::DimensionMismatch {
            left: mubs.dimension(),
            right: d,
        });
    }
    if mubs.count() != d + 1 {
        return Err(Error::BasisCountMismatch {
            d,
            want: d + 1,
            got: mubs.count(),
        });
    }
    let per_basis_ic: Vec<f64> = mubs
        .bases()
        .iter()
        .map(|basis| {
            measurement_distribution(rho, basis).map(|dist| dist.collision_probability())
        })
        .collect::<Result<_>>()?;
    let lhs: f64 = per_basis_ic.iter().sum();
    let rhs = rho.purity() + 1.0;
    Ok(LarsenReport {
        per_basis_ic,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

/// Result of a seeded Larsen sweep: worst residual over the sampled states.
#[derive(Debug, Clone)]
pub struct LarsenSweep {
    pub trials: usize,
    pub max_residual: f64,
    /// Report of the worst-residual state.
    pub worst: LarsenReport,
}

fn larsen_trial(mubs: &MubSet, trial: usize, seed: u64) -> LarsenReport {
    let d = mubs.dimension();
    // Even trials pure, odd trials mixed; one derived seed per trial.
    let mode = if trial.is_multiple_of(2) {
        StateMode::Pure
    } else {
        StateMode::Mixed
    };
    let rho = sample_density_matrix(d, mode, seed.wrapping_add(trial as u64));
    larsen_check(&rho, mubs).expect("sampled state matches the basis set")
}

fn sweep_from_reports(reports: Vec<LarsenReport>) -> LarsenSweep {
    let trials = reports.len();
    let worst = reports
        .into_iter()
        .max_by(|a, b| a.residual.total_cmp(&b.residual))
        .expect("at least one trial");
    LarsenSweep {
        trials,
        max_residual: worst.residual,
        worst,
    }
}

/// Runs `trials` seeded Larsen checks (alternating pure and mixed states)
/// and returns the worst case.
pub fn larsen_sweep(d: usize, trials: usize, seed: u64) -> Result<LarsenSweep> {
    let mubs = build_mubs(d)?;
    if trials == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "trials",
            value: 0.0,
            expected: "trials >= 1",
        });
    }
    #[cfg(feature = "parallel")]
    let reports: Vec<LarsenReport> = (0..trials)
        .into_par_iter()
        .map(|t| larsen_trial(&mubs, t, seed))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let reports: Vec<LarsenReport> = (0..trials).map(|t| larsen_trial(&mubs, t, seed)).collect();
    Ok(sweep_from_reports(reports))
}

/// Sequential reference for [`larsen_sweep`]; produces identical results.
pub fn larsen_sweep_serial(d: usize, trials: usize, seed: u64) -> Result<LarsenSweep> {
    let mubs = build_mubs(d)?;
    if trials == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "trials",
            value: 0.0,
            expected: "trials >= 1",
        });
    }
    let reports: Vec<LarsenReport> = (0..trials).map(|t| larsen_trial(&mubs, t, seed)).collect();
    Ok(sweep_from_reports(reports))
}

/// Entropic uncertainty bound for M ≤ d+1 mutually unbiased observables in
/// prime-power dimension d: the multi-distribution bound evaluated at the
/// collision budget (d+M−1)/d.
pub fn mub_entropy_bound(d: usize, m: usize) -> Result<f64> {
    Ok(mub_entropy_decomposition(d, m)?.bound)
}

/// Full arc decomposition behind [`mub_entropy_bound`].
pub fn mub_entropy_decomposition(d: usize, m: usize) -> Result<ArcDecomposition> {
    if prime_power_base(d).is_none() {
        return Err(Error::UnsupportedDimension {
            d,
            reason: "not a prime power; no full set of d+1 mutually unbiased bases is known",
        });
    }
    let k_tot = k_tot_cap(d, m)?;
    let query = MultiBoundQuery::new(m, k_tot, vec![d; m])?;
    multi_bound(&query)
}

/// The new bound at (d, M) next to every earlier bound that applies, for
/// comparison tables. Maassen–Uffink only covers M = 2; the collision-budget
/// cap row carries the cap itself rather than an entropy.
pub fn bound_comparison_table(d: usize, m: usize) -> Result<Vec<BoundComparison>> {
    let k_tot = k_tot_cap(d, m)?;
    let mut rows = vec![
        BoundComparison {
            label: BoundLabel::NewTheorem,
            value: mub_entropy_bound(d, m)?,
            d: Some(d),
            m: Some(m),
            k_tot: Some(k_tot),
            overlap: None,
        },
        BoundComparison {
            label: BoundLabel::Azer,
            value: azer_bound(d, m)?,
            d: Some(d),
            m: Some(m),
            k_tot: None,
            overlap: None,
        },
        BoundComparison {
            label: BoundLabel::CollisionEntropyBound,
            value: collision_entropy_bound(d, m)?,
            d: Some(d),
            m: Some(m),
            k_tot: None,
            overlap: None,
        },
        BoundComparison {
            label: BoundLabel::ColboundCap,
            value: k_tot,
            d: Some(d),
            m: Some(m),
            k_tot: Some(k_tot),
            overlap: None,
        },
    ];
    if m == 2 {
        let c = 1.0 / (d as f64).sqrt();
        rows.push(BoundComparison {
            label: BoundLabel::MaassenUffink,
            value: maassen_uffink(c)?,
            d: Some(d),
            m: Some(m),
            k_tot: None,
            overlap: Some(c),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn qubit_bases_match_the_standard_three() {
        let mubs = build_mubs(2).unwrap();
        assert_eq!(mubs.count(), 3);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let b2 = mubs.basis(1);
        assert!((b2[(0, 0)].re - s).abs() < 1e-15);
        assert!((b2[(1, 1)].re + s).abs() < 1e-15);
        let b3 = mubs.basis(2);
        assert!((b3[(1, 0)].im - s).abs() < 1e-15);
        assert!((b3[(1, 1)].im + s).abs() < 1e-15);
    }

    #[test]
    fn all_supported_dims_are_unbiased() {
        for &d in &SUPPORTED_DIMS {
            let mubs = build_mubs(d).unwrap();
            assert_eq!(mubs.count(), d + 1, "d={d}");
            let dev = mubs.max_overlap_deviation();
            assert!(dev <= OVERLAP_TOL, "d={d}: deviation {dev}");
        }
    }

    #[test]
    fn dimension_six_is_rejected() {
        let err = build_mubs(6).unwrap_err();
        assert!(matches!(err, Error::UnsupportedDimension { d: 6, .. }));
    }

    #[test]
    fn pure_state_purity() {
        let rho = sample_density_matrix(2, StateMode::Pure, 7);
        assert!((rho.purity() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn maximally_mixed_purity() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!((rho.purity() - 0.25).abs() <= 1e-12);
    }

    #[test]
    fn mixed_state_purity_strictly_interior() {
        let rho = sample_density_matrix(3, StateMode::Mixed, 42);
        let p = rho.purity();
        assert!(p > 1.0 / 3.0 && p < 1.0, "purity {p}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_density_matrix(3, StateMode::Mixed, 5);
        let b = sample_density_matrix(3, StateMode::Mixed, 5);
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn born_rule_computational() {
        let rho = DensityMatrix::from_pure(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let mubs = build_mubs(2).unwrap();
        let dist = measurement_distribution(&rho, mubs.basis(0)).unwrap();
        assert!((dist.probs()[0] - 1.0).abs() < 1e-12);
        assert!(dist.probs()[1].abs() < 1e-12);
     }

    #[test]
    fn born_rule_wrong_basis_is_uniform() {
        let rho = DensityMatrix::from_pure(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let mubs = build_mubs(2).unwrap();
        let dist = measurement_distribution(&rho, mubs.basis(1)).unwrap();
        assert!((dist.probs()[0] - 0.5).abs() < 1e-12);
        assert!((dist.probs()[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn born_rule_maximally_mixed_any_basis() {
        let rho = DensityMatrix::maximally_mixed(3);
        let mubs = build_mubs(3).unwrap();
        for basis in mubs.bases() {
            let dist = measurement_distribution(&rho, basis).unwrap();
            for &p in dist.probs() {
                assert!((p - 1.0 / 3.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn larsen_qubit_pure() {
        let rho = DensityMatrix::from_pure(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let mubs = build_mubs(2).unwrap();
        let report = larsen_check(&rho, &mubs).unwrap();
        assert!((report.per_basis_ic[0] - 1.0).abs() < 1e-12);
        assert!((report.per_basis_ic[1] - 0.5).abs() < 1e-12);
        assert!((report.per_basis_ic[2] - 0.5).abs() < 1e-12);
        assert!((report.lhs - 2.0).abs() < 1e-12);
        assert!((report.rhs - 2.0).abs() < 1e-12);
    }

    #[test]
    fn larsen_qubit_mixed() {
        let rho = DensityMatrix::maximally_mixed(2);
        let mubs = build_mubs(2).unwrap();
        let report = larsen_check(&rho, &mubs).unwrap();
        assert!((report.lhs - 1.5).abs() < 1e-12);
        assert!((report.rhs - 1.5).abs() < 1e-12);
    }

    #[test]
    fn larsen_sweep_d5() {
        let sweep = larsen_sweep(5, 40, 7).unwrap();
        assert!(sweep.max_residual <= 1e-9, "residual {}", sweep.max_residual);
    }

    #[test]
    fn larsen_sweep_serial_matches_parallel() {
        let a = larsen_sweep(4, 20, 3).unwrap();
        let b = larsen_sweep_serial(4, 20, 3).unwrap();
        assert_eq!(a.max_residual.to_bits(), b.max_residual.to_bits());
    }

    #[test]
    fn larsen_requires_full_set() {
        let mubs = build_mubs(3).unwrap();
        let partial = MubSet {
            d: 3,
            bases: mubs.bases()[..3].to_vec(),
        };
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(
            larsen_check(&rho, &partial),
            Err(Error::BasisCountMismatch { .. })
        ));
    }

    #[test]
    fn bound_examples() {
        assert!((mub_entropy_bound(2, 3).unwrap() - 2.0 * LN2).abs() < 1e-12);
        assert!((mub_entropy_bound(2, 2).unwrap() - LN2).abs() < 1e-12);
        assert!((mub_entropy_bound(3, 4).unwrap() - 4.0 * LN2).abs() < 1e-12);
    }

    #[test]
    fn bound_rejects_bad_inputs() {
        assert!(mub_entropy_bound(6, 3).is_err());
        assert!(mub_entropy_bound(3, 5).is_err());
    }

    #[test]
    fn comparison_table_rows() {
        let rows = bound_comparison_table(3, 4).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].label, BoundLabel::NewTheorem);
        assert!((rows[0].value - 4.0 * LN2).abs() < 1e-12);
        assert_eq!(rows[1].label, BoundLabel::Azer);
        assert!(rows[0].value > rows[1].value);

        let rows = bound_comparison_table(4, 2).unwrap();
        assert_eq!(rows.len(), 5);
        let mu = rows.last().unwrap();
        assert_eq!(mu.label, BoundLabel::MaassenUffink);
        assert!((mu.value - 4f64.ln()).abs() < 1e-12);

        // At d = 2, M = 2 the new bound and Maassen–Uffink coincide at ln 2.
        let rows = bound_comparison_table(2, 2).unwrap();
        assert!((rows[0].value - LN2).abs() < 1e-12);
        assert!((rows.last().unwrap().value - LN2).abs() < 1e-12);
    }

    #[test]
    fn partial_sums_respect_cap() {
        // Σ over any M bases ≤ (d+M−1)/d: check the M largest ICs.
        for &d in &[2usize, 3, 4, 5] {
            let mubs = build_mubs(d).unwrap();
            for seed in 0..10u64 {
                let mode = if seed % 2 == 0 {
                    StateMode::Pure
                } else {
                    StateMode::Mixed
                };
                let rho = sample_density_matrix(d, mode, 100 + seed);
                let mut ics: Vec<f64> = mubs
                    .bases()
                    .iter()
                    .map(|b| {
                        measurement_distribution(&rho, b)
                            .unwrap()
                            .collision_probability()
                    })
                    .collect();
                ics.sort_by(|a, b| b.total_cmp(a));
                let mut run = 0.0;
                for (m, ic) in ics.iter().enumerate() {
                    run += ic;
                    let cap = k_tot_cap(d, m + 1).unwrap();
                    assert!(
                        run <= cap + 1e-10,
                        "d={d} M={} sum {run} cap {cap}",
                        m + 1
                    );
                }
            }
        }
    }
}
