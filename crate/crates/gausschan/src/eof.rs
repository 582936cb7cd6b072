//! Gaussian entanglement of formation
//! E_G(γ) = inf { E(Γ) : γ ⪰ Γ ⪰ iσ, Γ pure },
//! the one-shot Holevo quantity through the dilation picture, and Gaussian
//! minimal output entropies.
//!
//! Pure covariance matrices are parameterized as Γ = V₀ O(θ) Z(s)² O(θ)ᵀ V₀ᵀ
//! with O(θ) = exp A(θ) an orthosymplectic rotation (A ranges over
//! so(2n) ∩ sp(2n), n² parameters) and Z(s)² = ⊕ diag(e^{2sᵢ}, e^{−2sᵢ}) the
//! squeezing spectrum. The fixed frame V₀ is extracted from the Williamson
//! form of γ so that the zero-rotation point is the feasible start Γ₀ = SSᵀ.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::GaussianChannel;
use crate::optim::{nelder_mead, SimplexOptions};
use crate::states::{g_unchecked, Bipartition};
use crate::symplectic::{
    min_symmetric_eigenvalue, principal_submatrix, symplectic_eigenvalues_raw, CovarianceMatrix,
};
use crate::{GaussError, Result};

/// A pure bipartite covariance matrix together with the parameter vector
/// that generated it (rotation angles first, squeezings last).
#[derive(Debug, Clone)]
pub struct PureBipartiteCM {
    gamma: CovarianceMatrix,
    params: Vec<f64>,
}

impl PureBipartiteCM {
    pub fn covariance(&self) -> &CovarianceMatrix {
        &self.gamma
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }
}

/// Result of the penalized EoF minimization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EoFResult {
    /// Entanglement of formation in bits.
    pub value_bits: f64,
    /// Row-major optimizer Γ.
    pub gamma_opt: Vec<f64>,
    /// min eigenvalue of γ − Γ at the reported point (≥ −1e−8).
    pub feasibility_gap: f64,
    /// Restarts actually run.
    pub restarts_used: usize,
    /// Total objective evaluations across restarts and penalty stages.
    pub evaluations: usize,
}

/// Tuning knobs for [`gaussian_eof_with`].
#[derive(Debug, Clone)]
pub struct EoFOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Evaluation budget per penalty stage of each restart.
    pub stage_evaluations: usize,
    /// Allowed infeasibility of the reported point.
    pub feasibility_tol: f64,
    /// Extra feasible pure covariance matrices used as structured restart
    /// seeds (e.g. products of sub-problem optimizers). Each contributes
    /// one additional restart anchored at its own orthosymplectic frame.
    pub warm_starts: Vec<DMatrix<f64>>,
}

impl Default for EoFOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            seed: 0x47_45_6f_46,
            stage_evaluations: 20_000,
            feasibility_tol: 1e-8,
            warm_starts: Vec::new(),
        }
    }
}

/// Number of free parameters for n modes: n² rotation + n squeezing.
pub fn parameter_count(modes: usize) -> usize {
    modes * modes + modes
}

/// Permutation P with (xxpp coordinates) = P · (interleaved coordinates).
fn xxpp_permutation(n: usize) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        p[(i, 2 * i)] = 1.0;
        p[(n + i, 2 * i + 1)] = 1.0;
    }
    p
}

/// Generator A(θ) ∈ so(2n) ∩ sp(2n) in interleaved ordering. In xxpp
/// ordering A = [[a, −b], [b, a]] with a antisymmetric and b symmetric;
/// θ packs a's strict upper triangle followed by b's upper triangle.
fn orthosymplectic_generator(n: usize, theta: &[f64]) -> DMatrix<f64> {
    debug_assert_eq!(theta.len(), n * n);
    let mut a = DMatrix::zeros(n, n);
    let mut b = DMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            a[(i, j)] = theta[k];
            a[(j, i)] = -theta[k];
            k += 1;
        }
    }
    for i in 0..n {
        for j in i..n {
            b[(i, j)] = theta[k];
            b[(j, i)] = theta[k];
            k += 1;
        }
    }
    let mut gen = DMatrix::zeros(2 * n, 2 * n);
    gen.view_mut((0, 0), (n, n)).copy_from(&a);
    gen.view_mut((0, n), (n, n)).copy_from(&(-&b));
    gen.view_mut((n, 0), (n, n)).copy_from(&b);
    gen.view_mut((n, n), (n, n)).copy_from(&a);
    let p = xxpp_permutation(n);
    p.transpose() * gen * p
}

/// Γ(params) = V₀ exp(A(θ)) Z² exp(A(θ))ᵀ V₀ᵀ with params = [θ | s].
fn pure_cm_raw(v0: &DMatrix<f64>, n: usize, params: &[f64]) -> DMatrix<f64> {
    let (theta, s) = params.split_at(n * n);
    let o = orthosymplectic_generator(n, theta).exp();
    let mut z2 = DMatrix::zeros(2 * n, 2 * n);
    for (i, &si) in s.iter().enumerate() {
        z2[(2 * i, 2 * i)] = (2.0 * si).exp();
        z2[(2 * i + 1, 2 * i + 1)] = (-2.0 * si).exp();
    }
    let w = v0 * o;
    &w * z2 * w.transpose()
}

/// Orthosymplectic frame and squeezing spectrum of a pure covariance matrix
/// Γ₀ = V₀ Z² V₀ᵀ, built by pairing each eigenvector u (eigenvalue z ≥ 1)
/// with −σu (eigenvalue 1/z). Degenerate eigenspaces are handled by greedy
/// projection against the already-chosen columns.
fn pure_frame(gamma0: &DMatrix<f64>) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let dim = gamma0.nrows();
    let n = dim / 2;
    let sigma = crate::symplectic::symplectic_form(n)?;
    let eig = ((gamma0 + gamma0.transpose()) * 0.5).symmetric_eigen();
    // candidate eigenpairs sorted by decreasing eigenvalue
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());

    let mut v0 = DMatrix::zeros(dim, dim);
    let mut log_z = Vec::with_capacity(n);
    let mut chosen = 0usize;
    for &idx in &order {
        if chosen == n {
            break;
        }
        let mut u = eig.eigenvectors.column(idx).clone_owned();
        // project out the span of already chosen columns
        for c in 0..2 * chosen {
            let col = v0.column(c);
            let overlap = col.dot(&u);
            u -= col * overlap;
        }
        let norm = u.norm();
        if norm < 1e-6 {
            continue; // partner of an already-consumed pair
        }
        u /= norm;
        let v = -(&sigma * &u);
        let z = eig.eigenvalues[idx].max(1.0);
        v0.set_column(2 * chosen, &u);
        v0.set_column(2 * chosen + 1, &v);
        log_z.push(0.5 * z.ln());
        chosen += 1;
    }
    if chosen != n {
        return Err(GaussError::NumericalFailure(
            "failed to extract an orthosymplectic frame from the pure part".into(),
        ));
    }
    Ok((v0, log_z))
}

fn entropy_of_spectrum_clamped(gamma: &DMatrix<f64>) -> f64 {
    symplectic_eigenvalues_raw(gamma)
        .iter()
        .map(|&c| g_unchecked(((c - 1.0) / 2.0).max(0.0)))
        .sum()
}

/// Entanglement entropy of a pure bipartite covariance matrix: the von
/// Neumann entropy of the A-side reduction. Impure Γ is rejected.
pub fn entanglement_entropy(gamma: &CovarianceMatrix, partition: &Bipartition) -> Result<f64> {
    if partition.total() != gamma.modes() {
        return Err(GaussError::InvalidPartition(format!(
            "partition over {} modes, state has {}",
            partition.total(),
            gamma.modes()
        )));
    }
    if !gamma.is_pure(1e-8) {
        return Err(GaussError::InvalidCovariance(
            "entanglement entropy is defined for pure covariance matrices".into(),
        ));
    }
    Ok(entanglement_entropy_raw(gamma.matrix(), partition))
}

fn entanglement_entropy_raw(gamma: &DMatrix<f64>, partition: &Bipartition) -> f64 {
    entropy_of_spectrum_clamped(&principal_submatrix(gamma, partition.modes_a()))
}

/// Gaussian entanglement of formation with default optimizer settings.
pub fn gaussian_eof(gamma: &CovarianceMatrix, partition: &Bipartition) -> Result<EoFResult> {
    gaussian_eof_with(gamma, partition, &EoFOptions::default())
}

/// Gaussian entanglement of formation via exterior-penalty Nelder–Mead with
/// μ-continuation (μ ∈ {10², 10⁴, 10⁶}), multi-start around the
/// Williamson-aligned feasible point, and a feasibility snap-back.
pub fn gaussian_eof_with(
    gamma: &CovarianceMatrix,
    partition: &Bipartition,
    opts: &EoFOptions,
) -> Result<EoFResult> {
    let n = gamma.modes();
    if partition.total() != n {
        return Err(GaussError::InvalidPartition(format!(
            "partition over {} modes, state has {}",
            partition.total(),
            n
        )));
    }
    let w = gamma.williamson()?;
    let gamma0 = w.pure_part();
    let (v0, s0) = pure_frame(&gamma0)?;
    let g_mat = gamma.matrix().clone();

    let dim = parameter_count(n);
    let mut base = vec![0.0; dim];
    base[n * n..].copy_from_slice(&s0);

    // each start carries its own frame so structured warm starts (e.g.
    // products of sub-problem optimizers) are representable exactly at x0
    let mut starts: Vec<(DMatrix<f64>, Vec<f64>)> = Vec::with_capacity(opts.restarts + opts.warm_starts.len());
    for restart in 0..opts.restarts {
        starts.push((v0.clone(), base.clone()));
        let _ = restart;
    }
    for w in &opts.warm_starts {
        if w.nrows() != 2 * n || w.ncols() != 2 * n {
            return Err(GaussError::DimensionMismatch(format!(
                "warm start is {}x{}, state needs {dim2}x{dim2}",
                w.nrows(),
                w.ncols(),
                dim2 = 2 * n
            )));
        }
        let (vw, sw) = pure_frame(w)?;
        let mut xw = vec![0.0; dim];
        xw[n * n..].copy_from_slice(&sw);
        starts.push((vw, xw));
    }

    let run_restart = |(restart, (v0, base)): (usize, &(DMatrix<f64>, Vec<f64>))| -> (f64, Vec<f64>, usize, usize) {
        let gap_of = |x: &[f64]| -> f64 {
            min_symmetric_eigenvalue(&(&g_mat - pure_cm_raw(v0, n, x)))
        };
        let entropy_of = |x: &[f64]| -> f64 {
            entanglement_entropy_raw(&pure_cm_raw(v0, n, x), partition)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(restart as u64));
        let mut x: Vec<f64> = if restart == 0 || restart >= opts.restarts {
            base.clone()
        } else {
            let scale = if restart % 2 == 0 { 0.35 } else { 0.1 };
            base.iter()
                .map(|&b| b + scale * (rng.gen::<f64>() * 2.0 - 1.0))
                .collect()
        };
        let mut evals = 0usize;
        // the repeated final stage re-seeds the simplex with a smaller step,
        // which polishes high-dimensional Nelder-Mead runs considerably
        for (stage, &mu) in [1e2, 1e4, 1e6, 1e6].iter().enumerate() {
            let objective = |p: &[f64]| -> f64 {
                let gm = pure_cm_raw(v0, n, p);
                let gap = min_symmetric_eigenvalue(&(&g_mat - &gm));
                entanglement_entropy_raw(&gm, partition) + mu * gap.min(0.0).powi(2)
            };
            let res = nelder_mead(
                objective,
                &x,
                &SimplexOptions {
                    initial_step: [0.25, 0.1, 0.04, 0.01][stage],
                    max_evaluations: opts.stage_evaluations,
                    ..Default::default()
                },
            );
            x = res.x;
            evals += res.evaluations;
        }
        // snap back toward the feasible Williamson point if needed
        if gap_of(&x) < -opts.feasibility_tol {
            let blend = |t: f64| -> Vec<f64> {
                base.iter()
                    .zip(&x)
                    .map(|(&b, &xi)| b + t * (xi - b))
                    .collect()
            };
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if gap_of(&blend(mid)) >= -0.5 * opts.feasibility_tol {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            x = blend(lo);
        }
        // a restart must never report worse than its own feasible starting
        // point (the staged penalty search can wander off a good warm start
        // and the snap-back may land above it)
        if gap_of(base) >= -opts.feasibility_tol && entropy_of(base) < entropy_of(&x) {
            x = base.clone();
        }
        (entropy_of(&x), x, evals, restart)
    };

    let candidates: Vec<(f64, Vec<f64>, usize, usize)> = starts
        .par_iter()
        .enumerate()
        .map(run_restart)
        .collect();

    let mut best: Option<(f64, Vec<f64>, usize)> = None;
    let mut total_evals = 0usize;
    for (value, x, evals, idx) in candidates {
        total_evals += evals;
        let better = match &best {
            None => true,
            Some((bv, bx, _)) => {
                value < bv - 1e-12
                    || ((value - bv).abs() <= 1e-12
                        && x.iter()
                            .zip(bx)
                            .find_map(|(a, b)| {
                                if (a - b).abs() > 0.0 {
                                    Some(a < b)
                                } else {
                                    None
                                }
                            })
                            .unwrap_or(false))
            }
        };
        if better {
            best = Some((value, x, idx));
        }
    }
    let (value, x, idx) = best.ok_or_else(|| {
        GaussError::NumericalFailure("entanglement-of-formation search produced no candidate".into())
    })?;
    let frame = &starts[idx].0;
    let gm = pure_cm_raw(frame, n, &x);
    let gap = min_symmetric_eigenvalue(&(&g_mat - &gm));
    if gap < -10.0 * opts.feasibility_tol {
        return Err(GaussError::NumericalFailure(format!(
            "feasibility snap-back failed (gap {gap:.3e})"
        )));
    }
    Ok(EoFResult {
        value_bits: value.max(0.0),
        gamma_opt: gm.row_iter().flat_map(|r| r.iter().copied().collect::<Vec<_>>()).collect(),
        feasibility_gap: gap,
        restarts_used: starts.len(),
        evaluations: total_evals,
    })
}

/// A pure n-mode covariance matrix from free Bloch–Messiah-style
/// coordinates (identity frame): [`parameter_count`]`(modes)` entries,
/// rotation angles first, squeezings last. Used by input-optimization scans.
pub fn pure_covariance(modes: usize, params: &[f64]) -> Result<DMatrix<f64>> {
    if params.len() != parameter_count(modes) {
        return Err(GaussError::DimensionMismatch(format!(
            "expected {} parameters for {modes} modes, got {}",
            parameter_count(modes),
            params.len()
        )));
    }
    let id = DMatrix::identity(2 * modes, 2 * modes);
    Ok(pure_cm_raw(&id, modes, params))
}

/// Builds the optimizer Γ of an [`EoFResult`] as a [`PureBipartiteCM`].
pub fn optimizer_gamma(result: &EoFResult) -> Result<PureBipartiteCM> {
    let dim = (result.gamma_opt.len() as f64).sqrt() as usize;
    let m = DMatrix::from_row_slice(dim, dim, &result.gamma_opt);
    Ok(PureBipartiteCM {
        gamma: CovarianceMatrix::with_tol(m, 1e-6)?,
        params: Vec::new(),
    })
}

/// One-shot Gaussian Holevo quantity through the dilation picture:
/// C_{1,G}(T, γ) = S(T(γ)) − E_G(γ′) with γ′ the joint system ⊕ environment
/// output covariance of the Stinespring dilation.
pub fn msw_capacity(channel: &GaussianChannel, gamma: &CovarianceMatrix) -> Result<f64> {
    msw_capacity_with(channel, gamma, &EoFOptions::default())
}

pub fn msw_capacity_with(
    channel: &GaussianChannel,
    gamma: &CovarianceMatrix,
    opts: &EoFOptions,
) -> Result<f64> {
    let dilation = channel.dilate()?;
    let joint = dilation.joint_output(gamma)?;
    let total = joint.nrows() / 2;
    let joint_cm = CovarianceMatrix::with_tol(joint, 1e-6)?;
    let sys: Vec<usize> = (0..dilation.system_modes()).collect();
    let partition = Bipartition::new(total, &sys)?;
    let out = channel.apply(gamma)?;
    let s_out = entropy_of_spectrum_clamped(out.matrix());
    let eof = gaussian_eof_with(&joint_cm, &partition, opts)?;
    Ok((s_out - eof.value_bits).max(0.0))
}

fn pure_single_mode_input(r: f64, phi: f64) -> DMatrix<f64> {
    let rot = crate::symplectic::rotation(phi);
    let sq = crate::symplectic::single_mode_squeezer(r);
    rot.act(&sq.act(&DMatrix::identity(2, 2)))
}

fn output_alpha_entropy(channel: &GaussianChannel, gamma_in: &DMatrix<f64>, alpha: f64) -> f64 {
    let out = channel.x().transpose() * gamma_in * channel.x() + channel.y();
    let spectrum = symplectic_eigenvalues_raw(&out);
    if (alpha - 1.0).abs() < 1e-12 {
        spectrum
            .iter()
            .map(|&c| g_unchecked(((c - 1.0) / 2.0).max(0.0)))
            .sum()
    } else if (alpha - 2.0).abs() < 1e-12 {
        // S₂ = ½ log₂ det γ = Σ log₂ c_i
        spectrum.iter().map(|&c| c.max(1.0).log2()).sum()
    } else {
        spectrum
            .iter()
            .map(|&c| {
                let np = ((c - 1.0) / 2.0).max(0.0);
                ((np + 1.0).powf(alpha) - np.powf(alpha)).log2() / (alpha - 1.0)
            })
            .sum()
    }
}

/// Gaussian minimal output Rényi-α entropy of a single-mode channel:
/// ν_{α,G}(T) = inf over pure Gaussian inputs of S_α(T(γ)), parameterized by
/// squeezing and rotation.
pub fn gaussian_min_output_entropy(channel: &GaussianChannel, alpha: f64) -> Result<f64> {
    if channel.modes() != 1 {
        return Err(GaussError::UnsupportedFamily(
            "minimal output entropy search is implemented for single-mode channels".into(),
        ));
    }
    if alpha < 1.0 {
        return Err(GaussError::OutOfRange(format!("alpha = {alpha} must be >= 1")));
    }
    let mut best = f64::INFINITY;
    for start in [[0.0, 0.0], [0.5, 0.4], [-0.5, 0.9], [0.8, -0.6]] {
        let res = nelder_mead(
            |p| output_alpha_entropy(channel, &pure_single_mode_input(p[0], p[1]), alpha),
            &start,
            &SimplexOptions::default(),
        );
        best = best.min(res.value);
    }
    Ok(best.max(0.0))
}

/// ν_{1,G} computed through the entanglement-of-formation route:
/// inf over pure inputs of E_G(γ′) with γ′ the joint dilation output and the
/// system | environment bipartition. Cross-checks
/// [`gaussian_min_output_entropy`] at α = 1.
pub fn gaussian_min_output_entropy_eof(channel: &GaussianChannel) -> Result<f64> {
    if channel.modes() != 1 {
        return Err(GaussError::UnsupportedFamily(
            "the EoF route is implemented for single-mode channels".into(),
        ));
    }
    let dilation = channel.dilate()?;
    let opts = EoFOptions {
        restarts: 6,
        stage_evaluations: 8_000,
        ..Default::default()
    };
    let mut best = f64::INFINITY;
    for &r in &[0.0, 0.15, -0.15, 0.35, -0.35, 0.6] {
        let gamma_in = CovarianceMatrix::with_tol(pure_single_mode_input(r, 0.0), 1e-9)?;
        let joint = dilation.joint_output(&gamma_in)?;
        let total = joint.nrows() / 2;
        let joint_cm = CovarianceMatrix::with_tol(joint, 1e-6)?;
        let partition = Bipartition::new(total, &[0])?;
        let eof = gaussian_eof_with(&joint_cm, &partition, &opts)?;
        best = best.min(eof.value_bits);
    }
    Ok(best.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{classical_noise_iso, lossy, thermal_noise};
    use crate::states::thermal_state;
    use crate::symplectic::tests::random_covariance;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_mode_partition() -> Bipartition {
        Bipartition::new(2, &[0]).unwrap()
    }

    fn noisy_tms(r: f64, noise: f64) -> CovarianceMatrix {
        let tms = crate::states::two_mode_squeezed_state(r).unwrap();
        CovarianceMatrix::new(tms.covariance().matrix() + DMatrix::identity(4, 4) * noise).unwrap()
    }

    #[test]
    fn generator_is_orthosymplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            let theta: Vec<f64> = (0..n * n).map(|_| rng.gen::<f64>() - 0.5).collect();
            let a = orthosymplectic_generator(n, &theta);
            // antisymmetric and symplectic-algebra membership
            assert!((&a + a.transpose()).amax() < 1e-12);
            let sigma = crate::symplectic::symplectic_form(n).unwrap();
            assert!((a.transpose() * &sigma + &sigma * &a).amax() < 1e-12);
            let o = a.exp();
            assert!(crate::symplectic::symplectic_deviation(&o) < 1e-10);
            assert!((&o * o.transpose() - DMatrix::identity(2 * n, 2 * n)).amax() < 1e-10);
        }
    }

    #[test]
    fn pure_frame_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for modes in 1..=3 {
            for _ in 0..20 {
                let gamma = CovarianceMatrix::new(random_covariance(&mut rng, modes)).unwrap();
                let w = gamma.williamson().unwrap();
                let g0 = w.pure_part();
                let (v0, s0) = pure_frame(&g0).unwrap();
                let mut params = vec![0.0; parameter_count(modes)];
                params[modes * modes..].copy_from_slice(&s0);
                let rebuilt = pure_cm_raw(&v0, modes, &params);
                assert!(
                    (&rebuilt - &g0).amax() < 1e-8,
                    "frame reconstruction off by {}",
                    (&rebuilt - &g0).amax()
                );
            }
        }
    }

    #[test]
    fn parameterized_cm_is_pure() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for modes in 1..=2 {
            let gamma = CovarianceMatrix::new(random_covariance(&mut rng, modes)).unwrap();
            let (v0, _) = pure_frame(&gamma.williamson().unwrap().pure_part()).unwrap();
            for _ in 0..20 {
                let params: Vec<f64> = (0..parameter_count(modes))
                    .map(|_| rng.gen::<f64>() - 0.5)
                    .collect();
                let gm = pure_cm_raw(&v0, modes, &params);
                for c in symplectic_eigenvalues_raw(&gm) {
                    assert_abs_diff_eq!(c, 1.0, epsilon = 1e-8);
                }
            }
        }
    }

    #[test]
    fn entanglement_entropy_examples() {
        let vacuum = CovarianceMatrix::vacuum(2).unwrap();
        assert_abs_diff_eq!(
            entanglement_entropy(&vacuum, &two_mode_partition()).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // TMS with cosh 2r = 3 reduces to the c = 3 thermal state: g(1) = 2
        let r = 0.5 * 3.0f64.acosh();
        let tms = crate::states::two_mode_squeezed_state(r).unwrap();
        assert_abs_diff_eq!(
            entanglement_entropy(tms.covariance(), &two_mode_partition()).unwrap(),
            2.0,
            epsilon = 1e-9
        );
        // A/B symmetry
        let b_side = Bipartition::new(2, &[1]).unwrap();
        assert_abs_diff_eq!(
            entanglement_entropy(tms.covariance(), &two_mode_partition()).unwrap(),
            entanglement_entropy(tms.covariance(), &b_side).unwrap(),
            epsilon = 1e-9
        );
        // impure input rejected
        let thermal = thermal_state(1.0).unwrap();
        let mixed = thermal.covariance().direct_sum(thermal.covariance());
        assert!(entanglement_entropy(&mixed, &two_mode_partition()).is_err());
    }

    #[test]
    fn eof_pure_tms_is_entanglement_entropy() {
        let r = 0.5 * 3.0f64.acosh();
        let tms = crate::states::two_mode_squeezed_state(r).unwrap();
        let res = gaussian_eof(tms.covariance(), &two_mode_partition()).unwrap();
        assert_abs_diff_eq!(res.value_bits, 2.0, epsilon = 1e-3);
        assert!(res.feasibility_gap >= -1e-7);
    }

    #[test]
    fn eof_product_state_is_zero() {
        let id = CovarianceMatrix::vacuum(2).unwrap();
        let res = gaussian_eof(&id, &two_mode_partition()).unwrap();
        assert!(res.value_bits < 1e-6, "value {}", res.value_bits);
        // separable product of thermals
        let t = thermal_state(0.8).unwrap();
        let prod = t.covariance().direct_sum(t.covariance());
        let res = gaussian_eof(&prod, &two_mode_partition()).unwrap();
        assert!(res.value_bits < 1e-4, "value {}", res.value_bits);
    }

    #[test]
    fn eof_local_symplectic_invariance() {
        let gamma = noisy_tms(0.55, 0.5);
        let base = gaussian_eof(&gamma, &two_mode_partition()).unwrap().value_bits;
        let sa = crate::symplectic::single_mode_squeezer(0.3);
        let sb = crate::symplectic::rotation(0.7);
        let local = sa.direct_sum(&sb);
        let rotated = CovarianceMatrix::new(local.act(gamma.matrix())).unwrap();
        let v = gaussian_eof(&rotated, &two_mode_partition()).unwrap().value_bits;
        assert_abs_diff_eq!(v, base, epsilon = 1e-3);
    }

    #[test]
    fn msw_identity_and_dark_fiber() {
        // lossy(1) is the identity: gamma' = gamma ⊕ vacuum, E_G = 0
        let id = lossy(1.0).unwrap();
        let t = thermal_state(1.0).unwrap();
        let c = msw_capacity(&id, t.covariance()).unwrap();
        assert_abs_diff_eq!(c, 2.0, epsilon = 1e-3);
        // eta = 0 maps to the vacuum: zero output entropy and zero EoF
        let dark = lossy(0.0).unwrap();
        let c = msw_capacity(&dark, t.covariance()).unwrap();
        assert!(c < 1e-6, "value {c}");
    }

    #[test]
    fn msw_bounded_by_capacity() {
        let t = lossy(0.9).unwrap();
        let input = thermal_state(1.0).unwrap();
        let c = msw_capacity(&t, input.covariance()).unwrap();
        let cap = g_unchecked(0.9);
        assert!(
            c <= cap + 1e-3,
            "one-shot value {c} exceeds capacity {cap}"
        );
    }

    #[test]
    fn min_output_entropy_examples() {
        // lossy channels map coherent states to coherent states
        let v = gaussian_min_output_entropy(&lossy(0.7).unwrap(), 1.0).unwrap();
        assert!(v < 1e-6, "value {v}");
        // classical noise y = 1 at vacuum input: g(1/2)
        let v = gaussian_min_output_entropy(&classical_noise_iso(1.0).unwrap(), 1.0).unwrap();
        assert_abs_diff_eq!(v, g_unchecked(0.5), epsilon = 1e-6);
        // classical noise y = 1 at alpha = 2: S₂ of (1+y)·I is log₂(1+y)
        let v = gaussian_min_output_entropy(&classical_noise_iso(1.0).unwrap(), 2.0).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-6);
        // amplifier-like thermal channel floor
        let v = gaussian_min_output_entropy(&thermal_noise(0.4, 2.0).unwrap(), 1.0).unwrap();
        assert_abs_diff_eq!(v, g_unchecked(0.3), epsilon = 1e-6);
        assert!(gaussian_min_output_entropy(&lossy(0.5).unwrap(), 0.5).is_err());
    }

    #[test]
    fn min_output_entropy_amplifier() {
        // pure amplifier with gain eta: minimum output entropy g(eta - 1)
        // (vacuum input: output (2 eta - 1) I, so g((2 eta - 2)/2))
        let amp = crate::channels::amplifier(2.0, 1.0).unwrap();
        let v = gaussian_min_output_entropy(&amp, 1.0).unwrap();
        assert_abs_diff_eq!(v, g_unchecked(1.0), epsilon = 1e-6);
    }

    #[test]
    fn two_routes_to_min_output_entropy() {
        for channel in [lossy(0.6).unwrap(), classical_noise_iso(1.0).unwrap()] {
            let direct = gaussian_min_output_entropy(&channel, 1.0).unwrap();
            let via_eof = gaussian_min_output_entropy_eof(&channel).unwrap();
            assert_abs_diff_eq!(direct, via_eof, epsilon = 2e-3);
        }
    }
}
