//! Numerical experiment harness for entanglement-of-formation
//! superadditivity and convexity residuals, the 50:50 beam-splitter / θ
//! reflection construction, and minimal-output-entropy additivity scans.
//!
//! Every record is reproducible bit-for-bit from its (seed, parameters), and
//! residuals are reported together with a flag marking excursions beyond the
//! calibrated optimizer noise floor. Because the inner minimization is
//! nonconvex, E_G can only be over-estimated at local minima; this biases
//! joint terms upward and marginal sums downward, which is why restart counts
//! are part of every record.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::GaussianChannel;
use crate::eof::{
    gaussian_eof_with, gaussian_min_output_entropy, parameter_count, pure_covariance, EoFOptions,
};
use crate::optim::{nelder_mead, SimplexOptions};
use crate::states::Bipartition;
use crate::symplectic::{
    direct_sum, symplectic_eigenvalues_raw, CovarianceMatrix, SymplecticMatrix,
};
use crate::{GaussError, Result};

/// Residual magnitude below which a deviation counts as optimizer noise
/// rather than a violation (3× the calibrated noise floor on known-zero
/// cases).
pub const NOISE_FLOOR: f64 = 2e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualKind {
    Superadditivity,
    Convexity,
    MoeAdditivity,
}

/// One residual measurement with everything needed to reproduce it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub kind: ResidualKind,
    pub seed: u64,
    /// Generating parameters (sample-family coordinates or channel/α data).
    pub params: Vec<f64>,
    pub residual_bits: f64,
    pub restarts: usize,
    /// True when the residual leaves the ±[`NOISE_FLOOR`] band on the side
    /// the respective inequality forbids.
    pub tolerance_flag: bool,
}

/// Aggregate of a scan, serialized to JSON next to the per-record CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanSummary {
    pub kind: ResidualKind,
    pub samples: usize,
    pub min_residual: f64,
    pub median_residual: f64,
    pub max_residual: f64,
    pub violations: usize,
}

impl ScanSummary {
    pub fn from_records(kind: ResidualKind, records: &[ResidualRecord]) -> Self {
        let mut values: Vec<f64> = records.iter().map(|r| r.residual_bits).collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = if values.is_empty() {
            0.0
        } else {
            values[values.len() / 2]
        };
        Self {
            kind,
            samples: records.len(),
            min_residual: values.first().copied().unwrap_or(0.0),
            median_residual: median,
            max_residual: values.last().copied().unwrap_or(0.0),
            violations: records.iter().filter(|r| r.tolerance_flag).count(),
        }
    }
}

/// 50:50 beam-splitter mixture of two equally shaped covariance matrices:
/// Γ = (1/2) [[γ₁+γ₂, γ₁−γ₂], [γ₁−γ₂, γ₁+γ₂]], the joint state obtained by
/// splitting each mode pair of γ₁ ⊕ γ₂ on a balanced beam splitter. Mode
/// ordering of the result: all modes of copy 1, then all modes of copy 2.
pub fn beam_splitter_mix(gamma1: &DMatrix<f64>, gamma2: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if gamma1.shape() != gamma2.shape() || gamma1.nrows() != gamma1.ncols() {
        return Err(GaussError::DimensionMismatch(format!(
            "beam splitter mix needs equal square shapes, got {:?} and {:?}",
            gamma1.shape(),
            gamma2.shape()
        )));
    }
    let d = gamma1.nrows();
    let sum = (gamma1 + gamma2) * 0.5;
    let diff = (gamma1 - gamma2) * 0.5;
    let mut out = DMatrix::zeros(2 * d, 2 * d);
    out.view_mut((0, 0), (d, d)).copy_from(&sum);
    out.view_mut((d, d), (d, d)).copy_from(&sum);
    out.view_mut((0, d), (d, d)).copy_from(&diff);
    out.view_mut((d, 0), (d, d)).copy_from(&diff);
    Ok(out)
}

/// The reflection θ = 1 ⊕ (−1) on the two copies: θΓθ swaps the sign of the
/// off-diagonal blocks, and (Γ + θΓθ)/2 recovers γ₁ ⊕ γ₂.
pub fn theta_reflection(copies_dim: usize) -> DMatrix<f64> {
    let mut t = DMatrix::identity(2 * copies_dim, 2 * copies_dim);
    for i in copies_dim..2 * copies_dim {
        t[(i, i)] = -1.0;
    }
    t
}

fn eof_value(
    gamma: &DMatrix<f64>,
    partition: &Bipartition,
    opts: &EoFOptions,
) -> Result<f64> {
    let cm = CovarianceMatrix::with_tol(gamma.clone(), 1e-7 * (1.0 + gamma.amax()))?;
    Ok(gaussian_eof_with(&cm, partition, opts)?.value_bits)
}

/// Superadditivity residual E_G(γ) − Σᵢ E_G([γ]ᵢ) for a joint state over
/// paired subsystems. `pairs[i] = (aᵢ, bᵢ)` names the modes of block i; the
/// joint bipartition is all aᵢ versus all bᵢ. The paper conjectures the
/// residual is ≥ 0; values below −[`NOISE_FLOOR`] are flagged.
pub fn superadditivity_residual(
    gamma: &DMatrix<f64>,
    pairs: &[(usize, usize)],
    seed: u64,
    opts: &EoFOptions,
) -> Result<ResidualRecord> {
    let total = gamma.nrows() / 2;
    let mut seen = vec![false; total];
    for &(a, b) in pairs {
        for m in [a, b] {
            if m >= total || seen[m] {
                return Err(GaussError::InvalidPartition(format!(
                    "pair mode {m} out of range or repeated"
                )));
            }
            seen[m] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(GaussError::InvalidPartition(
            "pairs must cover every mode exactly once".into(),
        ));
    }
    let a_side: Vec<usize> = pairs.iter().map(|&(a, _)| a).collect();
    let joint_partition = Bipartition::new(total, &a_side)?;
    let marginal_opts = EoFOptions {
        warm_starts: Vec::new(),
        ..opts.clone()
    };
    let mut marginal_sum = 0.0;
    // the product of the marginal optimizers is feasible for the joint
    // problem; seed the joint search with it so that direct sums (where it
    // is optimal) are recovered without luck in the 20-parameter landscape
    let mut product = DMatrix::<f64>::zeros(2 * total, 2 * total);
    for &(a, b) in pairs {
        let block = crate::symplectic::principal_submatrix(gamma, &[a, b]);
        let p = Bipartition::new(2, &[0])?;
        let res = crate::eof::gaussian_eof_with(
            &CovarianceMatrix::with_tol(block, 1e-7)?,
            &p,
            &marginal_opts,
        )?;
        marginal_sum += res.value_bits;
        let block_opt = DMatrix::from_row_slice(4, 4, &res.gamma_opt);
        for (i, &mi) in [a, b].iter().enumerate() {
            for (j, &mj) in [a, b].iter().enumerate() {
                for qa in 0..2 {
                    for qb in 0..2 {
                        product[(2 * mi + qa, 2 * mj + qb)] =
                            block_opt[(2 * i + qa, 2 * j + qb)];
                    }
                }
            }
        }
    }
    let joint_opts = EoFOptions {
        warm_starts: vec![product],
        ..opts.clone()
    };
    let joint = eof_value(gamma, &joint_partition, &joint_opts)?;
    let residual = joint - marginal_sum;
    Ok(ResidualRecord {
        kind: ResidualKind::Superadditivity,
        seed,
        params: Vec::new(),
        residual_bits: residual,
        restarts: opts.restarts,
        tolerance_flag: residual < -NOISE_FLOOR,
    })
}

/// Convexity residual λE_G(γ₁) + (1−λ)E_G(γ₂) − E_G(λγ₁ + (1−λ)γ₂) for
/// two-mode states under the 1|1 bipartition. Convexity demands ≥ 0.
pub fn convexity_residual(
    gamma1: &DMatrix<f64>,
    gamma2: &DMatrix<f64>,
    lambda: f64,
    seed: u64,
    opts: &EoFOptions,
) -> Result<ResidualRecord> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(GaussError::OutOfRange(format!("lambda = {lambda} outside [0, 1]")));
    }
    if gamma1.shape() != gamma2.shape() {
        return Err(GaussError::DimensionMismatch(
            "convexity residual needs equal shapes".into(),
        ));
    }
    let total = gamma1.nrows() / 2;
    let half: Vec<usize> = (0..total / 2).collect();
    let p = Bipartition::new(total, &half)?;
    let e1 = eof_value(gamma1, &p, opts)?;
    let e2 = eof_value(gamma2, &p, opts)?;
    let mix = gamma1 * lambda + gamma2 * (1.0 - lambda);
    let em = eof_value(&mix, &p, opts)?;
    let residual = lambda * e1 + (1.0 - lambda) * e2 - em;
    Ok(ResidualRecord {
        kind: ResidualKind::Convexity,
        seed,
        params: vec![lambda],
        residual_bits: residual,
        restarts: opts.restarts,
        tolerance_flag: residual < -NOISE_FLOOR,
    })
}

/// Sample family for scans: γ = L (TMS(r) + t·1) Lᵀ with r ∈ [0, 1.5],
/// noise t ∈ [0, 2], and L a random local (per-mode) symplectic of bounded
/// squeezing. `symmetric` skips L so that both modes stay exchangeable,
/// which is the regime where direct-sum additivity is established.
pub fn sample_two_mode(rng: &mut ChaCha8Rng, symmetric: bool) -> (DMatrix<f64>, Vec<f64>) {
    let r = 1.5 * rng.gen::<f64>();
    let t = 2.0 * rng.gen::<f64>();
    let tms = crate::states::two_mode_squeezed_state(r).unwrap();
    let base = tms.covariance().matrix() + DMatrix::identity(4, 4) * t;
    if symmetric {
        return (base, vec![r, t]);
    }
    let mut params = vec![r, t];
    let mut local: Option<SymplecticMatrix> = None;
    for _ in 0..2 {
        let phi1 = std::f64::consts::PI * (2.0 * rng.gen::<f64>() - 1.0);
        let sq = 0.4 * (2.0 * rng.gen::<f64>() - 1.0);
        let phi2 = std::f64::consts::PI * (2.0 * rng.gen::<f64>() - 1.0);
        params.extend([phi1, sq, phi2]);
        let s = SymplecticMatrix::with_tol(
            crate::symplectic::rotation(phi1).matrix()
                * crate::symplectic::single_mode_squeezer(sq).matrix()
                * crate::symplectic::rotation(phi2).matrix(),
            1e-9,
        )
        .unwrap();
        local = Some(match local {
            None => s,
            Some(l) => l.direct_sum(&s),
        });
    }
    (local.unwrap().act(&base), params)
}

/// Direct-sum additivity / superadditivity scan: for each sample, two
/// two-mode states are drawn, joined either as a plain direct sum
/// (additivity, expected residual ≈ 0) or through [`beam_splitter_mix`]
/// (superadditivity, expected residual ≥ −noise).
pub fn superadditivity_scan(
    samples: usize,
    seed: u64,
    mix: bool,
    opts: &EoFOptions,
) -> Result<Vec<ResidualRecord>> {
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let sample_seed = seed.wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
            let (g1, mut p1) = sample_two_mode(&mut rng, true);
            let (g2, p2) = sample_two_mode(&mut rng, true);
            // joint ordering (A1, B1, A2, B2): pair i couples mode 2i with 2i+1
            let joint = if mix {
                beam_splitter_mix(&g1, &g2)?
            } else {
                direct_sum(&g1, &g2)
            };
            let sub_opts = EoFOptions {
                seed: sample_seed,
                ..opts.clone()
            };
            let mut rec =
                superadditivity_residual(&joint, &[(0, 1), (2, 3)], sample_seed, &sub_opts)?;
            p1.extend(p2);
            p1.push(if mix { 1.0 } else { 0.0 });
            rec.params = p1;
            // plain direct sums must also stay below +noise (additivity)
            if !mix && rec.residual_bits > NOISE_FLOOR {
                rec.tolerance_flag = true;
            }
            Ok(rec)
        })
        .collect()
}

/// Convexity scan over pairs of sampled two-mode states and a seeded λ.
pub fn convexity_scan(
    samples: usize,
    seed: u64,
    opts: &EoFOptions,
) -> Result<Vec<ResidualRecord>> {
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let sample_seed = seed.wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
            let (g1, mut p1) = sample_two_mode(&mut rng, false);
            let (g2, p2) = sample_two_mode(&mut rng, false);
            let lambda = rng.gen::<f64>();
            let sub_opts = EoFOptions {
                seed: sample_seed,
                ..opts.clone()
            };
            let mut rec = convexity_residual(&g1, &g2, lambda, sample_seed, &sub_opts)?;
            p1.extend(p2);
            p1.push(lambda);
            rec.params = p1;
            Ok(rec)
        })
        .collect()
}

fn tensor_square(channel: &GaussianChannel) -> Result<GaussianChannel> {
    GaussianChannel::new(
        direct_sum(channel.x(), channel.x()),
        direct_sum(channel.y(), channel.y()),
    )
}

fn output_renyi(channel: &GaussianChannel, gamma_in: &DMatrix<f64>, alpha: f64) -> f64 {
    let out = channel.x().transpose() * gamma_in * channel.x() + channel.y();
    symplectic_eigenvalues_raw(&out)
        .iter()
        .map(|&c| {
            if (alpha - 2.0).abs() < 1e-12 {
                c.max(1.0).log2()
            } else {
                let np = ((c - 1.0) / 2.0).max(0.0);
                ((np + 1.0).powf(alpha) - np.powf(alpha)).log2() / (alpha - 1.0)
            }
        })
        .sum()
}

/// Two-copy Gaussian minimal output Rényi entropy of T ⊗ T, minimized over
/// entangled pure two-mode inputs with `restarts` seeded starts.
pub fn two_copy_min_output_entropy(
    channel: &GaussianChannel,
    alpha: f64,
    restarts: usize,
    seed: u64,
) -> Result<f64> {
    if channel.modes() != 1 {
        return Err(GaussError::UnsupportedFamily(
            "two-copy scan is implemented for single-mode channels".into(),
        ));
    }
    if alpha <= 1.0 {
        return Err(GaussError::OutOfRange(format!(
            "two-copy scan requires alpha > 1, got {alpha}"
        )));
    }
    let squared = tensor_square(channel)?;
    let dim = parameter_count(2);
    let best = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let start: Vec<f64> = if i == 0 {
                vec![0.0; dim]
            } else {
                (0..dim).map(|_| 0.8 * (2.0 * rng.gen::<f64>() - 1.0)).collect()
            };
            let res = nelder_mead(
                |p| match pure_covariance(2, p) {
                    Ok(g) => output_renyi(&squared, &g, alpha),
                    Err(_) => f64::INFINITY,
                },
                &start,
                &SimplexOptions::default(),
            );
            res.value
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best.max(0.0))
}

/// Minimal-output-entropy additivity residual
/// ν_{α,G}(T ⊗ T) − 2·ν_{α,G}(T) for a single-mode channel; expected ≈ 0
/// for channels whose copies share det X.
pub fn moe_additivity_scan(
    channel: &GaussianChannel,
    alpha: f64,
    restarts: usize,
    seed: u64,
) -> Result<ResidualRecord> {
    let single = gaussian_min_output_entropy(channel, alpha)?;
    let double = two_copy_min_output_entropy(channel, alpha, restarts, seed)?;
    let residual = double - 2.0 * single;
    Ok(ResidualRecord {
        kind: ResidualKind::MoeAdditivity,
        seed,
        params: vec![alpha],
        residual_bits: residual,
        restarts,
        tolerance_flag: residual.abs() > NOISE_FLOOR,
    })
}
