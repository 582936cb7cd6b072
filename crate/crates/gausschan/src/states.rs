//! Gaussian states and their entropic functionals.
//!
//! Displacements are carried along for bookkeeping but never enter any
//! entropy; everything entropic derives from the symplectic spectrum of the
//! covariance matrix.

use nalgebra::{DMatrix, DVector};

use crate::symplectic::{
    direct_sum, min_symmetric_eigenvalue, two_mode_squeezer, CovarianceMatrix, SymplecticMatrix,
};
use crate::{GaussError, Result};

/// A Gaussian state: covariance matrix plus first-moment vector.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    gamma: CovarianceMatrix,
    displacement: DVector<f64>,
}

impl GaussianState {
    pub fn new(gamma: CovarianceMatrix, displacement: DVector<f64>) -> Result<Self> {
        if displacement.len() != 2 * gamma.modes() {
            return Err(GaussError::DimensionMismatch(format!(
                "displacement length {} does not match {} modes",
                displacement.len(),
                gamma.modes()
            )));
        }
        Ok(Self {
            gamma,
            displacement,
        })
    }

    pub fn centered(gamma: CovarianceMatrix) -> Self {
        let d = DVector::zeros(2 * gamma.modes());
        Self {
            gamma,
            displacement: d,
        }
    }

    pub fn vacuum(modes: usize) -> Result<Self> {
        Ok(Self::centered(CovarianceMatrix::vacuum(modes)?))
    }

    pub fn modes(&self) -> usize {
        self.gamma.modes()
    }

    pub fn covariance(&self) -> &CovarianceMatrix {
        &self.gamma
    }

    pub fn displacement(&self) -> &DVector<f64> {
        &self.displacement
    }

    /// Mean photon number Σᵢ⟨aᵢ†aᵢ⟩ = (tr γ − 2n)/4 + ‖d‖²/2.
    pub fn mean_photon_number(&self) -> f64 {
        let n = self.modes() as f64;
        (self.gamma.matrix().trace() - 2.0 * n) / 4.0 + self.displacement.norm_squared() / 2.0
    }

    pub fn reduce(&self, keep: &[usize]) -> Result<GaussianState> {
        let gamma = self.gamma.partial_trace(keep)?;
        let mut d = DVector::zeros(2 * keep.len());
        for (a, &m) in keep.iter().enumerate() {
            d[2 * a] = self.displacement[2 * m];
            d[2 * a + 1] = self.displacement[2 * m + 1];
        }
        GaussianState::new(gamma, d)
    }

    pub fn tensor(&self, other: &GaussianState) -> GaussianState {
        let gamma = self.gamma.direct_sum(other.covariance());
        let mut d = DVector::zeros(2 * (self.modes() + other.modes()));
        d.rows_mut(0, 2 * self.modes())
            .copy_from(&self.displacement);
        d.rows_mut(2 * self.modes(), 2 * other.modes())
            .copy_from(other.displacement());
        GaussianState {
            gamma,
            displacement: d,
        }
    }
}

/// Single-mode thermal state with mean photon number N: γ = (2N+1)·1₂.
pub fn thermal_state(n_photons: f64) -> Result<GaussianState> {
    if n_photons < 0.0 {
        return Err(GaussError::OutOfRange(format!(
            "mean photon number {n_photons} < 0"
        )));
    }
    let c = 2.0 * n_photons + 1.0;
    let gamma = CovarianceMatrix::new(DMatrix::identity(2, 2) * c)?;
    Ok(GaussianState::centered(gamma))
}

/// Coherent state: vacuum covariance with the given displacement.
pub fn coherent_state(d: [f64; 2]) -> Result<GaussianState> {
    if !d[0].is_finite() || !d[1].is_finite() {
        return Err(GaussError::OutOfRange("non-finite displacement".into()));
    }
    GaussianState::new(CovarianceMatrix::vacuum(1)?, DVector::from_row_slice(&d))
}

/// Two-mode squeezed vacuum with squeezing parameter r.
pub fn two_mode_squeezed_state(r: f64) -> Result<GaussianState> {
    let s = two_mode_squeezer(r)?;
    let gamma = CovarianceMatrix::with_tol(s.act(&DMatrix::identity(4, 4)), 1e-7)?;
    Ok(GaussianState::centered(gamma))
}

/// Entropy of a thermal state with mean photon number N, in bits:
/// g(N) = (N+1) log₂(N+1) − N log₂ N.
pub fn g_function(n: f64) -> Result<f64> {
    if n < 0.0 {
        return Err(GaussError::OutOfRange(format!("g({n}) undefined for n < 0")));
    }
    Ok(g_unchecked(n))
}

pub(crate) fn g_unchecked(n: f64) -> f64 {
    if n < 1e-12 {
        // removable singularity: g(N) ~ N log((N+1)/N) / ln 2
        if n <= 0.0 {
            return 0.0;
        }
        return n * ((n + 1.0) / n).ln() / std::f64::consts::LN_2;
    }
    (n + 1.0) * (n + 1.0).log2() - n * n.log2()
}

/// Von Neumann entropy in bits: Σᵢ g((cᵢ−1)/2).
pub fn von_neumann_entropy(state: &GaussianState) -> f64 {
    entropy_of_covariance(state.covariance())
}

pub fn entropy_of_covariance(gamma: &CovarianceMatrix) -> f64 {
    gamma
        .symplectic_eigenvalues()
        .iter()
        .map(|&c| g_unchecked(((c - 1.0) / 2.0).max(0.0)))
        .sum()
}

/// Rényi-α entropy in bits, from the per-mode closed form
/// Σᵢ (1/(α−1)) log₂[((cᵢ+1)/2)^α − ((cᵢ−1)/2)^α].
pub fn renyi_entropy(state: &GaussianState, alpha: f64) -> Result<f64> {
    renyi_entropy_of_covariance(state.covariance(), alpha)
}

pub fn renyi_entropy_of_covariance(gamma: &CovarianceMatrix, alpha: f64) -> Result<f64> {
    renyi_from_spectrum(&gamma.symplectic_eigenvalues(), alpha)
}

pub(crate) fn renyi_from_spectrum(spectrum: &[f64], alpha: f64) -> Result<f64> {
    if alpha <= 0.0 || alpha == 1.0 {
        return Err(GaussError::OutOfRange(format!(
            "Renyi order alpha = {alpha} must be positive and != 1"
        )));
    }
    Ok(spectrum
        .iter()
        .map(|&c| {
            let plus = ((c + 1.0) / 2.0).powf(alpha);
            let minus = (((c - 1.0) / 2.0).max(0.0)).powf(alpha);
            (plus - minus).log2() / (alpha - 1.0)
        })
        .sum())
}

/// A two-block split of the modes of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct Bipartition {
    modes_a: Vec<usize>,
    modes_b: Vec<usize>,
}

impl Bipartition {
    /// Builds the partition {modes_a | complement} of `total` modes.
    pub fn new(total: usize, modes_a: &[usize]) -> Result<Self> {
        if modes_a.is_empty() {
            return Err(GaussError::InvalidPartition("side A is empty".into()));
        }
        let mut seen = vec![false; total];
        for &m in modes_a {
            if m >= total {
                return Err(GaussError::InvalidPartition(format!(
                    "mode {m} out of range for {total} modes"
                )));
            }
            if seen[m] {
                return Err(GaussError::InvalidPartition(format!("duplicate mode {m}")));
            }
            seen[m] = true;
        }
        let modes_b: Vec<usize> = (0..total).filter(|&m| !seen[m]).collect();
        if modes_b.is_empty() {
            return Err(GaussError::InvalidPartition("side B is empty".into()));
        }
        Ok(Self {
            modes_a: modes_a.to_vec(),
            modes_b,
        })
    }

    pub fn modes_a(&self) -> &[usize] {
        &self.modes_a
    }

    pub fn modes_b(&self) -> &[usize] {
        &self.modes_b
    }

    pub fn total(&self) -> usize {
        self.modes_a.len() + self.modes_b.len()
    }
}

/// Conditional entropy S(ρ:A|B) = S(ρ) − S(ρ_A), following the source
/// convention literally (the reduction is taken with respect to A). See
/// [`conditional_entropy_swapped`] for the variant subtracting S(ρ_B).
pub fn conditional_entropy(state: &GaussianState, partition: &Bipartition) -> Result<f64> {
    check_partition(state, partition)?;
    let reduced = state.reduce(partition.modes_a())?;
    Ok(von_neumann_entropy(state) - von_neumann_entropy(&reduced))
}

/// S(ρ) − S(ρ_B), the partition-swapped reading of the conditional entropy.
pub fn conditional_entropy_swapped(state: &GaussianState, partition: &Bipartition) -> Result<f64> {
    check_partition(state, partition)?;
    let reduced = state.reduce(partition.modes_b())?;
    Ok(von_neumann_entropy(state) - von_neumann_entropy(&reduced))
}

/// Lower bound on the distillable entanglement: S(ρ_A) − S(ρ). Nonpositive
/// values carry no information (trivial bound).
pub fn distillable_lower_bound(state: &GaussianState, partition: &Bipartition) -> Result<f64> {
    Ok(-conditional_entropy(state, partition)?)
}

fn check_partition(state: &GaussianState, partition: &Bipartition) -> Result<()> {
    if partition.total() != state.modes() {
        return Err(GaussError::InvalidPartition(format!(
            "partition covers {} modes, state has {}",
            partition.total(),
            state.modes()
        )));
    }
    Ok(())
}

/// Purifies a Gaussian state on n modes into a pure state on 2n modes.
///
/// The purification is built mode-wise in Williamson coordinates: each normal
/// mode of temperature c is extended by a two-mode squeezer with cosh 2r = c,
/// then the system half is rotated back by S ⊕ 1. The returned bipartition
/// has the original system on side A (modes 0..n) and the ancilla on side B.
pub fn purify(state: &GaussianState) -> Result<(GaussianState, Bipartition)> {
    let n = state.modes();
    let w = state.covariance().williamson()?;
    let dim = 2 * n;

    // TMS covariance of the normal modes: diag blocks c·I paired with
    // off-diagonal sqrt(c²−1)·Z coupling mode i to ancilla mode i.
    let mut big = DMatrix::zeros(2 * dim, 2 * dim);
    for (i, &c) in w.spectrum.iter().enumerate() {
        let coupling = (c * c - 1.0).max(0.0).sqrt();
        for q in 0..2 {
            let z = if q == 0 { 1.0 } else { -1.0 };
            big[(2 * i + q, 2 * i + q)] = c;
            big[(dim + 2 * i + q, dim + 2 * i + q)] = c;
            big[(2 * i + q, dim + 2 * i + q)] = coupling * z;
            big[(dim + 2 * i + q, 2 * i + q)] = coupling * z;
        }
    }
    let s_ext = SymplecticMatrix::with_tol(
        direct_sum(w.s.matrix(), &DMatrix::identity(dim, dim)),
        1e-7 * (1.0 + w.s.matrix().amax()),
    )?;
    let purified = s_ext.act(&big);
    let gamma = CovarianceMatrix::with_tol(purified, 1e-6 * (1.0 + big.amax()))?;

    let mut d = DVector::zeros(2 * dim);
    d.rows_mut(0, dim).copy_from(state.displacement());
    let pure_state = GaussianState::new(gamma, d)?;
    let partition = Bipartition::new(2 * n, &(0..n).collect::<Vec<_>>())?;
    Ok((pure_state, partition))
}

/// Gap min eig(γ − γ') used by tests and the EoF feasibility checks.
pub fn domination_gap(gamma: &DMatrix<f64>, dominated: &DMatrix<f64>) -> f64 {
    min_symmetric_eigenvalue(&(gamma - dominated))
}
