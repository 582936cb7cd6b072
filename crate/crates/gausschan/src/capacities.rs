//! Capacity formulas and bounds for the thermal/attenuation/amplification
//! family: constrained classical capacity, broadband leading order, coherent
//! and mutual information, quantum-capacity bounds and entanglement-assisted
//! capacities. All values are in bits per channel use (broadband: bits over
//! the transmission time) and clamp to zero from below.

use serde::{Deserialize, Serialize};

use crate::channels::{ChannelDescription, GaussianChannel};
use crate::optim::bracketed_max;
use crate::states::{
    g_function, g_unchecked, purify, von_neumann_entropy, GaussianState,
};
use crate::{GaussError, Result};

/// Mean photon number constraint per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyConstraint {
    pub mean_photons: f64,
}

impl EnergyConstraint {
    pub fn new(mean_photons: f64) -> Result<Self> {
        if mean_photons < 0.0 {
            return Err(GaussError::OutOfRange(format!(
                "mean photon number {mean_photons} < 0"
            )));
        }
        Ok(Self { mean_photons })
    }

    /// The oscillator energy h = N + 1/2.
    pub fn energy(&self) -> f64 {
        self.mean_photons + 0.5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityKind {
    Classical,
    QuantumLower,
    QuantumUpper,
    EaClassical,
    EaQuantum,
}

/// One computed capacity value together with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CapacityReport {
    pub kind: CapacityKind,
    pub value_bits: Option<f64>,
    /// Reason a value is undefined for this channel, if it is.
    pub reason: Option<String>,
    pub channel: ChannelDescription,
    pub constraint: Option<EnergyConstraint>,
}

fn check_eta_01(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(GaussError::OutOfRange(format!("eta = {eta} outside [0, 1]")));
    }
    Ok(())
}

/// Constrained classical capacity of the lossy channel: C = g(ηN).
pub fn classical_capacity_lossy(eta: f64, constraint: EnergyConstraint) -> Result<f64> {
    check_eta_01(eta)?;
    g_function(eta * constraint.mean_photons)
}

/// Holevo quantity of the coherent-state random-coding ensemble through a
/// thermal noise channel: g(N′) − g(N₀) with N′ = ηN + (1−η)(c−1)/2 and
/// N₀ = (1−η)(c−1)/2. For c = 1 this reduces to g(ηN) and is tight.
pub fn holevo_coherent_ensemble(eta: f64, c: f64, constraint: EnergyConstraint) -> Result<f64> {
    check_eta_01(eta)?;
    if c < 1.0 {
        return Err(GaussError::OutOfRange(format!("c = {c} must be >= 1")));
    }
    let floor = (1.0 - eta) * (c - 1.0) / 2.0;
    Ok((g_unchecked(eta * constraint.mean_photons + floor) - g_unchecked(floor)).max(0.0))
}

/// Leading order of the homogeneous broadband lossy-channel capacity:
/// C = t (√η / ln 2) √(πP/3).
pub fn broadband_classical_capacity(eta: f64, power: f64, time: f64) -> Result<f64> {
    check_eta_01(eta)?;
    if power <= 0.0 || time <= 0.0 {
        return Err(GaussError::OutOfRange(
            "broadband capacity requires positive power and time".into(),
        ));
    }
    Ok(time * eta.sqrt() / std::f64::consts::LN_2 * (std::f64::consts::PI * power / 3.0).sqrt())
}

fn check_thermal_family(eta: f64, c: f64) -> Result<()> {
    if eta < 0.0 {
        return Err(GaussError::OutOfRange(format!("eta = {eta} < 0")));
    }
    if c < 1.0 {
        return Err(GaussError::OutOfRange(format!("c = {c} must be >= 1")));
    }
    Ok(())
}

/// Output mean photon number N′ of the thermal (η ≤ 1) or amplification
/// (η > 1) channel on a thermal input with mean photon number N.
pub fn output_photon_number(eta: f64, c: f64, n: f64) -> f64 {
    if eta <= 1.0 {
        eta * n + (1.0 - eta) * (c - 1.0) / 2.0
    } else {
        eta * n + (eta - 1.0) * (c + 1.0) / 2.0
    }
}

/// Closed-form coherent information of the thermal/amplification family on a
/// thermal input:
/// J = g(N′) − g((D+N′−N−1)/2) − g((D−N′+N−1)/2),
/// D = √((N+N′+1)² − 4ηN(N+1)). η = 1 is handled as the analytic limit
/// J = g(N).
pub fn coherent_information_closed(eta: f64, c: f64, n: f64) -> Result<f64> {
    check_thermal_family(eta, c)?;
    if n < 0.0 {
        return Err(GaussError::OutOfRange(format!("N = {n} < 0")));
    }
    if eta == 0.0 {
        return Ok(-g_unchecked((c - 1.0) / 2.0));
    }
    if (eta - 1.0).abs() < 1e-12 {
        return Ok(g_unchecked(n));
    }
    let np = output_photon_number(eta, c, n);
    let d2 = (n + np + 1.0).powi(2) - 4.0 * eta * n * (n + 1.0);
    let d = d2.max(0.0).sqrt();
    Ok(g_unchecked(np) - g_unchecked(((d + np - n - 1.0) / 2.0).max(0.0))
        - g_unchecked(((d - np + n - 1.0) / 2.0).max(0.0)))
}

/// Coherent information J(ρ, T) = (S∘T)(ρ) − S(ρ, T), computed through a
/// purification of the input and the channel acting on the system half.
pub fn coherent_information_general(channel: &GaussianChannel, input: &GaussianState) -> Result<f64> {
    let (pure, partition) = purify(input)?;
    let joint_out = channel.apply_to_subsystem(pure.covariance(), partition.modes_a())?;
    let out = channel.apply(input.covariance())?;
    let s_out = crate::states::entropy_of_covariance(&out);
    let s_joint = crate::states::entropy_of_covariance(&joint_out);
    Ok(s_out - s_joint)
}

/// Quantum mutual information I(ρ, T) = S(ρ) + (S∘T)(ρ) − S(ρ, T).
pub fn mutual_information(channel: &GaussianChannel, input: &GaussianState) -> Result<f64> {
    Ok(von_neumann_entropy(input) + coherent_information_general(channel, input)?)
}

/// Single-shot quantum-capacity lower bound: max(0, sup_{N′ ≤ N} J) over
/// thermal inputs, by a bracketed grid plus golden-section refinement.
/// `constraint = None` asks for the unconstrained supremum, which for c = 1
/// is the analytic limit log₂(η/|1−η|).
pub fn quantum_capacity_lower_bound(
    eta: f64,
    c: f64,
    constraint: Option<EnergyConstraint>,
) -> Result<f64> {
    check_thermal_family(eta, c)?;
    if eta <= 0.5 && c == 1.0 {
        // no-cloning regime: the coherent information is non-positive for
        // every input, so the bound is exactly zero
        return Ok(0.0);
    }
    match constraint {
        Some(k) => {
            if k.mean_photons == 0.0 {
                return Ok(coherent_information_closed(eta, c, 0.0)?.max(0.0));
            }
            let (_, best) = bracketed_max(
                |n| coherent_information_closed(eta, c, n).unwrap_or(f64::NEG_INFINITY),
                0.0,
                k.mean_photons,
                65,
                1e-10 * k.mean_photons.max(1.0),
            );
            Ok(best.max(0.0))
        }
        None => {
            if (eta - 1.0).abs() < 1e-12 {
                return Err(GaussError::OutOfRange(
                    "unconstrained coherent information diverges at eta = 1".into(),
                ));
            }
            if c == 1.0 {
                return Ok((eta / (1.0 - eta).abs()).log2().max(0.0));
            }
            // evaluate the limit numerically through a large-N sweep
            let mut prev = f64::NEG_INFINITY;
            for exp in [2, 3, 4, 5, 6] {
                prev = coherent_information_closed(eta, c, 10f64.powi(exp))?;
            }
            Ok(prev.max(0.0))
        }
    }
}

/// cb-norm upper bound on the quantum capacity of attenuation/amplification
/// channels with classical noise:
/// Q ≤ log₂(1+η) − log₂|1−η| − log₂ c, clamped at zero. The η ≤ 1/2, c = 1
/// case is forced to zero (no-cloning regime). η = 1 is reported as
/// unbounded via an error.
pub fn quantum_capacity_upper_bound(eta: f64, c: f64) -> Result<f64> {
    check_thermal_family(eta, c)?;
    if (eta - 1.0).abs() < 1e-12 {
        return Err(GaussError::OutOfRange(
            "the cb-norm bound diverges at eta = 1".into(),
        ));
    }
    let bound = (1.0 + eta).log2() - (1.0 - eta).abs().log2() - c.log2();
    if eta <= 0.5 && c == 1.0 {
        return Ok(0.0);
    }
    Ok(bound.max(0.0))
}

/// Entanglement-assisted classical capacity of the attenuation family:
/// C_E = g(N) + J(ρ, T) with J from the closed form.
pub fn ea_classical_capacity(eta: f64, c: f64, constraint: EnergyConstraint) -> Result<f64> {
    check_eta_01(eta)?;
    let n = constraint.mean_photons;
    Ok((g_unchecked(n) + coherent_information_closed(eta, c, n)?).max(0.0))
}

/// Entanglement-assisted quantum capacity: Q_E = C_E / 2.
pub fn ea_quantum_capacity(eta: f64, c: f64, constraint: EnergyConstraint) -> Result<f64> {
    Ok(ea_classical_capacity(eta, c, constraint)? / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{lossy, thermal_noise, GaussianChannel};
    use crate::states::thermal_state;
    use approx::assert_abs_diff_eq;

    fn k(n: f64) -> EnergyConstraint {
        EnergyConstraint::new(n).unwrap()
    }

    #[test]
    fn lossy_capacity_values() {
        assert_abs_diff_eq!(
            classical_capacity_lossy(1.0, k(1.0)).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            classical_capacity_lossy(0.9, k(10.0)).unwrap(),
            4.689955935892815,
            epsilon = 1e-10
        );
        assert_eq!(classical_capacity_lossy(0.0, k(5.0)).unwrap(), 0.0);
        assert!(classical_capacity_lossy(1.5, k(1.0)).is_err());
        assert!(EnergyConstraint::new(-1.0).is_err());
    }

    #[test]
    fn holevo_ensemble_values() {
        // c = 1 reduces to g(eta N)
        for (eta, n) in [(0.5, 1.0), (0.8, 3.0)] {
            assert_abs_diff_eq!(
                holevo_coherent_ensemble(eta, 1.0, k(n)).unwrap(),
                g_function(eta * n).unwrap(),
                epsilon = 1e-12
            );
        }
        // formula value: g(eta N + (1-eta)(c-1)/2) - g((1-eta)(c-1)/2)
        let v = holevo_coherent_ensemble(0.5, 3.0, k(2.0)).unwrap();
        assert_abs_diff_eq!(
            v,
            g_function(1.5).unwrap() - g_function(0.5).unwrap(),
            epsilon = 1e-12
        );
        assert_eq!(holevo_coherent_ensemble(0.7, 1.0, k(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn broadband_scalings() {
        let base = broadband_classical_capacity(1.0, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(
            broadband_classical_capacity(0.25, 1.0, 1.0).unwrap(),
            base / 2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            broadband_classical_capacity(1.0, 4.0, 1.0).unwrap(),
            base * 2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            broadband_classical_capacity(1.0, std::f64::consts::PI / 3.0, std::f64::consts::LN_2)
                .unwrap(),
            std::f64::consts::PI / 3.0,
            epsilon = 1e-12
        );
        assert!(broadband_classical_capacity(1.0, 0.0, 1.0).is_err());
        assert!(broadband_classical_capacity(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn coherent_information_limits() {
        // eta -> 1, c = 1: J = g(N)
        assert_abs_diff_eq!(
            coherent_information_closed(1.0, 1.0, 1.0).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            coherent_information_closed(1.0 - 1e-9, 1.0, 1.0).unwrap(),
            2.0,
            epsilon = 1e-6
        );
        // eta = 0.5, c = 1: identically zero
        assert!(coherent_information_closed(0.5, 1.0, 100.0).unwrap().abs() < 0.02);
        // eta = 0.8: N -> infinity limit log2(eta/(1-eta)) = 2
        let tail = coherent_information_closed(0.8, 1.0, 1e4).unwrap();
        assert_abs_diff_eq!(tail, 2.0, epsilon = 0.01);
    }

    #[test]
    fn general_route_matches_closed_form() {
        for &(eta, c) in &[(0.3, 1.0), (0.7, 2.0), (0.95, 1.0)] {
            let t = if c == 1.0 {
                lossy(eta).unwrap()
            } else {
                thermal_noise(eta, c).unwrap()
            };
            for &n in &[0.5, 2.0] {
                let input = thermal_state(n).unwrap();
                let j_gen = coherent_information_general(&t, &input).unwrap();
                let j_closed = coherent_information_closed(eta, c, n).unwrap();
                assert_abs_diff_eq!(j_gen, j_closed, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn identity_channel_coherent_information() {
        let id = GaussianChannel::identity(1).unwrap();
        let pure = crate::states::coherent_state([0.4, -0.2]).unwrap();
        assert_abs_diff_eq!(
            coherent_information_general(&id, &pure).unwrap(),
            0.0,
            epsilon = 1e-8
        );
        let t = thermal_state(1.0).unwrap();
        assert_abs_diff_eq!(
            coherent_information_general(&id, &t).unwrap(),
            2.0,
            epsilon = 1e-8
        );
    }

    #[test]
    fn mutual_information_identity_thermal() {
        let id = GaussianChannel::identity(1).unwrap();
        let t = thermal_state(1.0).unwrap();
        assert_abs_diff_eq!(mutual_information(&id, &t).unwrap(), 4.0, epsilon = 1e-8);
        // pure inputs: I = J
        let p = crate::states::coherent_state([1.0, 0.0]).unwrap();
        let l = lossy(0.7).unwrap();
        assert_abs_diff_eq!(
            mutual_information(&l, &p).unwrap(),
            coherent_information_general(&l, &p).unwrap(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn mutual_information_additive_on_products() {
        let t1 = lossy(0.6).unwrap();
        let t2 = thermal_noise(0.8, 2.0).unwrap();
        let s1 = thermal_state(0.7).unwrap();
        let s2 = thermal_state(1.9).unwrap();
        let i1 = mutual_information(&t1, &s1).unwrap();
        let i2 = mutual_information(&t2, &s2).unwrap();
        // product channel on the product state
        let x = crate::symplectic::direct_sum(t1.x(), t2.x());
        let y = crate::symplectic::direct_sum(t1.y(), t2.y());
        let prod = GaussianChannel::new(x, y).unwrap();
        let joint = s1.tensor(&s2);
        assert_abs_diff_eq!(
            mutual_information(&prod, &joint).unwrap(),
            i1 + i2,
            epsilon = 1e-7
        );
    }

    #[test]
    fn quantum_lower_bound() {
        // no-cloning region
        assert_eq!(
            quantum_capacity_lower_bound(0.5, 1.0, None).unwrap(),
            0.0
        );
        assert_eq!(
            quantum_capacity_lower_bound(0.3, 1.0, Some(k(5.0))).unwrap(),
            0.0
        );
        // unconstrained limit at eta = 0.8
        assert_abs_diff_eq!(
            quantum_capacity_lower_bound(0.8, 1.0, None).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        // monotone nondecreasing in N
        let mut prev = 0.0;
        for n in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let v = quantum_capacity_lower_bound(0.9, 1.0, Some(k(n))).unwrap();
            assert!(v >= prev - 1e-9);
            prev = v;
        }
    }

    #[test]
    fn quantum_upper_bound() {
        assert_abs_diff_eq!(
            quantum_capacity_upper_bound(0.75, 1.0).unwrap(),
            2.807354922057604,
            epsilon = 1e-10
        );
        // entanglement-breaking regime clamps to zero
        assert_eq!(quantum_capacity_upper_bound(0.75, 7.0).unwrap(), 0.0);
        assert_eq!(quantum_capacity_upper_bound(0.4, 1.0).unwrap(), 0.0);
        assert!(quantum_capacity_upper_bound(1.0, 1.0).is_err());
    }

    #[test]
    fn bounds_ordered_on_grid() {
        for &eta in &[0.3, 0.6, 0.9] {
            for &c in &[1.0, 2.0, 4.0] {
                let upper = quantum_capacity_upper_bound(eta, c).unwrap();
                for &n in &[0.5, 2.0, 8.0] {
                    let lower = quantum_capacity_lower_bound(eta, c, Some(k(n))).unwrap();
                    assert!(
                        lower <= upper + 1e-9,
                        "lower {lower} > upper {upper} at eta={eta} c={c} N={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn ea_capacities() {
        // identity limit: C_E = 2 g(1) = 4, Q_E = 2
        assert_abs_diff_eq!(
            ea_classical_capacity(1.0, 1.0, k(1.0)).unwrap(),
            4.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            ea_quantum_capacity(1.0, 1.0, k(1.0)).unwrap(),
            2.0,
            epsilon = 1e-9
        );
        assert_eq!(ea_classical_capacity(0.7, 1.0, k(0.0)).unwrap(), 0.0);
        // C_E >= C on a grid
        for &eta in &[0.1, 0.4, 0.7, 1.0] {
            for &n in &[0.1, 1.0, 10.0] {
                let ce = ea_classical_capacity(eta, 1.0, k(n)).unwrap();
                let c = classical_capacity_lossy(eta, k(n)).unwrap();
                assert!(ce >= c - 1e-9, "C_E {ce} < C {c} at eta={eta} N={n}");
            }
        }
    }

    #[test]
    fn lossy_capacity_monotone_and_concave() {
        let n_grid: Vec<f64> = (1..40).map(|i| i as f64 * 0.25).collect();
        let mut prev = -1.0;
        for &n in &n_grid {
            let v = classical_capacity_lossy(0.8, k(n)).unwrap();
            assert!(v > prev);
            prev = v;
        }
        // concavity in N by finite differences
        for w in n_grid.windows(3) {
            let f0 = classical_capacity_lossy(0.8, k(w[0])).unwrap();
            let f1 = classical_capacity_lossy(0.8, k(w[1])).unwrap();
            let f2 = classical_capacity_lossy(0.8, k(w[2])).unwrap();
            assert!(f2 - 2.0 * f1 + f0 <= 1e-10);
        }
        // monotone in eta
        let mut prev = -1.0;
        for i in 0..=10 {
            let v = classical_capacity_lossy(i as f64 / 10.0, k(2.0)).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }
}
