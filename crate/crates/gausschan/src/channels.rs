//! Gaussian channels (X, Y) acting on covariance matrices as γ ↦ XᵀγX + Y,
//! the named single-mode families, and Stinespring dilations.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::states::GaussianState;
use crate::symplectic::{
    beam_splitter, direct_sum, min_symmetric_eigenvalue, two_mode_squeezer,
    CovarianceMatrix, SymplecticForm, SymplecticMatrix,
};
use crate::{GaussError, Result, DEFAULT_TOL};

/// Named single-mode channel families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelKind {
    /// X = 1, Y ⪰ 0: adds classical Gaussian noise.
    ClassicalNoise { y: Vec<f64> },
    /// Beam-splitter coupling to a thermal environment of temperature c.
    ThermalNoise { eta: f64, c: f64 },
    /// Thermal noise with c = 1 (photon loss with probability 1−η).
    Lossy { eta: f64 },
    /// X = √η 1, Y = (η−1)c·1 with η > 1.
    Amplifier { eta: f64, c: f64 },
    /// Lossy channel with η = e^{−l/l_A}.
    Fiber { length: f64, absorption_length: f64 },
    /// Anything else given directly by (X, Y).
    Custom,
}

/// A Gaussian channel on n modes.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    x: DMatrix<f64>,
    y: DMatrix<f64>,
    modes: usize,
    kind: ChannelKind,
}

/// Checks the complete-positivity condition Y + iσ − iXᵀσX ⪰ 0.
pub fn validate_channel(x: &DMatrix<f64>, y: &DMatrix<f64>, tol: f64) -> Result<bool> {
    if x.nrows() != x.ncols() || x.nrows() % 2 != 0 || x.nrows() == 0 {
        return Err(GaussError::BadShape {
            rows: x.nrows(),
            cols: x.ncols(),
        });
    }
    if y.shape() != x.shape() {
        return Err(GaussError::DimensionMismatch(format!(
            "X is {:?}, Y is {:?}",
            x.shape(),
            y.shape()
        )));
    }
    let scale = 1.0 + y.amax().max(x.amax());
    if (y - y.transpose()).amax() > tol.max(1e-12) * scale {
        return Ok(false);
    }
    Ok(cp_min_eigenvalue(x, y) >= -tol * scale)
}

/// Minimal eigenvalue of the Hermitian CP-condition matrix Y + iσ − iXᵀσX.
pub fn cp_min_eigenvalue(x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    use nalgebra::Complex;
    let n = x.nrows() / 2;
    let sigma = SymplecticForm::new(n).expect("n >= 1").matrix().clone();
    let imag = &sigma - x.transpose() * &sigma * x;
    let mut h = DMatrix::<Complex<f64>>::zeros(2 * n, 2 * n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            h[(i, j)] = Complex::new(y[(i, j)], imag[(i, j)]);
        }
    }
    h.symmetric_eigen().eigenvalues.min()
}

impl GaussianChannel {
    pub fn new(x: DMatrix<f64>, y: DMatrix<f64>) -> Result<Self> {
        Self::with_kind(x, y, ChannelKind::Custom)
    }

    fn with_kind(x: DMatrix<f64>, y: DMatrix<f64>, kind: ChannelKind) -> Result<Self> {
        if !validate_channel(&x, &y, DEFAULT_TOL)? {
            return Err(GaussError::InvalidChannel(format!(
                "CP condition violated, min eigenvalue {:.3e}",
                cp_min_eigenvalue(&x, &y)
            )));
        }
        let modes = x.nrows() / 2;
        let y = (&y + y.transpose()) * 0.5;
        Ok(Self { x, y, modes, kind })
    }

    pub fn identity(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(GaussError::ZeroModes);
        }
        Self::with_kind(
            DMatrix::identity(2 * modes, 2 * modes),
            DMatrix::zeros(2 * modes, 2 * modes),
            ChannelKind::Lossy { eta: 1.0 },
        )
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn y(&self) -> &DMatrix<f64> {
        &self.y
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn kind(&self) -> &ChannelKind {
        &self.kind
    }

    /// γ ↦ XᵀγX + Y on a raw covariance matrix.
    pub fn apply_raw(&self, gamma: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if gamma.shape() != self.x.shape() {
            return Err(GaussError::DimensionMismatch(format!(
                "channel acts on {} modes, state has shape {:?}",
                self.modes,
                gamma.shape()
            )));
        }
        Ok(self.x.transpose() * gamma * &self.x + &self.y)
    }

    /// Channel action on a covariance matrix; the output is again valid.
    pub fn apply(&self, gamma: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        let out = self.apply_raw(gamma.matrix())?;
        CovarianceMatrix::with_tol(out, 1e-7 * (1.0 + gamma.matrix().amax()))
    }

    /// Full state action: first moments transform as d ↦ Xᵀd.
    pub fn apply_state(&self, state: &GaussianState) -> Result<GaussianState> {
        let gamma = self.apply(state.covariance())?;
        let d = self.x.transpose() * state.displacement();
        GaussianState::new(gamma, d)
    }

    /// Embeds the channel as identity ⊗ T acting only on `modes` of a larger
    /// state (X and Y extended by the identity / zero on untouched modes).
    pub fn apply_to_subsystem(
        &self,
        gamma: &CovarianceMatrix,
        modes: &[usize],
    ) -> Result<CovarianceMatrix> {
        if modes.len() != self.modes {
            return Err(GaussError::DimensionMismatch(format!(
                "channel has {} modes, {} targeted",
                self.modes,
                modes.len()
            )));
        }
        let total = gamma.modes();
        for &m in modes {
            if m >= total {
                return Err(GaussError::InvalidPartition(format!(
                    "mode {m} out of range for {total} modes"
                )));
            }
        }
        let dim = 2 * total;
        let mut x_full = DMatrix::identity(dim, dim);
        let mut y_full = DMatrix::zeros(dim, dim);
        for (a, &ma) in modes.iter().enumerate() {
            for qa in 0..2 {
                x_full[(2 * ma + qa, 2 * ma + qa)] = 0.0;
            }
            for (b, &mb) in modes.iter().enumerate() {
                for qa in 0..2 {
                    for qb in 0..2 {
                        x_full[(2 * ma + qa, 2 * mb + qb)] = self.x[(2 * a + qa, 2 * b + qb)];
                        y_full[(2 * ma + qa, 2 * mb + qb)] = self.y[(2 * a + qa, 2 * b + qb)];
                    }
                }
            }
        }
        let out = x_full.transpose() * gamma.matrix() * &x_full + &y_full;
        CovarianceMatrix::with_tol(out, 1e-7 * (1.0 + gamma.matrix().amax()))
    }

    /// Concatenation: first `first`, then `self`.
    /// X = X₁X₂, Y = X₂ᵀY₁X₂ + Y₂.
    pub fn compose(&self, first: &GaussianChannel) -> Result<GaussianChannel> {
        if self.modes != first.modes {
            return Err(GaussError::DimensionMismatch(format!(
                "cannot compose channels on {} and {} modes",
                first.modes, self.modes
            )));
        }
        let x = &first.x * &self.x;
        let y = self.x.transpose() * &first.y * &self.x + &self.y;
        GaussianChannel::new(x, y)
    }

    /// Stinespring dilation for the supported single-mode families.
    pub fn dilate(&self) -> Result<ChannelDilation> {
        dilate(self)
    }
}

/// Builds one of the named single-mode channels.
pub fn named_channel(kind: ChannelKind) -> Result<GaussianChannel> {
    match &kind {
        ChannelKind::ClassicalNoise { y } => {
            if y.len() != 4 {
                return Err(GaussError::OutOfRange(
                    "classical noise Y must be a 2x2 matrix (4 row-major entries)".into(),
                ));
            }
            let y_mat = DMatrix::from_row_slice(2, 2, y);
            if min_symmetric_eigenvalue(&y_mat) < -DEFAULT_TOL {
                return Err(GaussError::OutOfRange("classical noise requires Y >= 0".into()));
            }
            GaussianChannel::with_kind(DMatrix::identity(2, 2), y_mat, kind)
        }
        ChannelKind::ThermalNoise { eta, c } => {
            if !(0.0..=1.0).contains(eta) {
                return Err(GaussError::OutOfRange(format!("eta = {eta} outside [0, 1]")));
            }
            if *c < 1.0 {
                return Err(GaussError::OutOfRange(format!("c = {c} must be >= 1")));
            }
            let x = DMatrix::identity(2, 2) * eta.sqrt();
            let y = DMatrix::identity(2, 2) * ((1.0 - eta) * c);
            GaussianChannel::with_kind(x, y, kind)
        }
        ChannelKind::Lossy { eta } => {
            if !(0.0..=1.0).contains(eta) {
                return Err(GaussError::OutOfRange(format!("eta = {eta} outside [0, 1]")));
            }
            let x = DMatrix::identity(2, 2) * eta.sqrt();
            let y = DMatrix::identity(2, 2) * (1.0 - eta);
            GaussianChannel::with_kind(x, y, kind)
        }
        ChannelKind::Amplifier { eta, c } => {
            if *eta <= 1.0 {
                return Err(GaussError::OutOfRange(format!(
                    "amplifier requires eta > 1, got {eta}"
                )));
            }
            if *c < 1.0 {
                return Err(GaussError::OutOfRange(format!("c = {c} must be >= 1")));
            }
            let x = DMatrix::identity(2, 2) * eta.sqrt();
            let y = DMatrix::identity(2, 2) * ((eta - 1.0) * c);
            GaussianChannel::with_kind(x, y, kind)
        }
        ChannelKind::Fiber {
            length,
            absorption_length,
        } => {
            if *length < 0.0 || *absorption_length <= 0.0 {
                return Err(GaussError::OutOfRange(
                    "fiber requires length >= 0 and absorption length > 0".into(),
                ));
            }
            let eta = (-length / absorption_length).exp();
            let x = DMatrix::identity(2, 2) * eta.sqrt();
            let y = DMatrix::identity(2, 2) * (1.0 - eta);
            GaussianChannel::with_kind(x, y, kind)
        }
        ChannelKind::Custom => Err(GaussError::OutOfRange(
            "custom channels are built from explicit (X, Y)".into(),
        )),
    }
}

/// Lossy channel convenience constructor.
pub fn lossy(eta: f64) -> Result<GaussianChannel> {
    named_channel(ChannelKind::Lossy { eta })
}

/// Thermal noise channel convenience constructor.
pub fn thermal_noise(eta: f64, c: f64) -> Result<GaussianChannel> {
    named_channel(ChannelKind::ThermalNoise { eta, c })
}

/// Amplifier convenience constructor.
pub fn amplifier(eta: f64, c: f64) -> Result<GaussianChannel> {
    named_channel(ChannelKind::Amplifier { eta, c })
}

/// Isotropic classical noise Y = y·1₂.
pub fn classical_noise_iso(y: f64) -> Result<GaussianChannel> {
    named_channel(ChannelKind::ClassicalNoise {
        y: vec![y, 0.0, 0.0, y],
    })
}

/// A symplectic S on system ⊕ environment together with a pure environment
/// state realizing the channel by tracing: T(γ) = [S(γ ⊕ γ_env)Sᵀ]_system.
#[derive(Debug, Clone)]
pub struct ChannelDilation {
    pub s: SymplecticMatrix,
    pub env: GaussianState,
    pub env_modes: usize,
    system_modes: usize,
}

impl ChannelDilation {
    pub fn system_modes(&self) -> usize {
        self.system_modes
    }

    /// S(γ ⊕ γ_env)Sᵀ, the joint output covariance before tracing.
    pub fn joint_output(&self, gamma: &CovarianceMatrix) -> Result<DMatrix<f64>> {
        if gamma.modes() != self.system_modes {
            return Err(GaussError::DimensionMismatch(format!(
                "dilation acts on {} system modes, state has {}",
                self.system_modes,
                gamma.modes()
            )));
        }
        let joint = direct_sum(gamma.matrix(), self.env.covariance().matrix());
        Ok(self.s.act(&joint))
    }

    /// Applies the dilation and traces out the environment.
    pub fn apply(&self, gamma: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        let joint = self.joint_output(gamma)?;
        let keep: Vec<usize> = (0..self.system_modes).collect();
        CovarianceMatrix::with_tol(
            crate::symplectic::principal_submatrix(&joint, &keep),
            1e-7 * (1.0 + joint.amax()),
        )
    }
}

fn tms_purification_of_thermal(c: f64) -> Result<GaussianState> {
    // thermal of temperature c purified by a two-mode squeezer, cosh 2r = c
    let r = 0.5 * c.acosh();
    crate::states::two_mode_squeezed_state(r)
}

/// Dilation constructions for the named single-mode families.
///
/// Lossy: beam splitter against the vacuum (one environment mode). Thermal
/// noise with c > 1: beam splitter against a TMS-purified thermal state (two
/// environment modes). Amplifier: two-mode squeezer with cosh² r = η against
/// the vacuum (c = 1) or a purified thermal state (c > 1). Classical noise
/// Y = y·1: loss-then-amplify decomposition with a two-mode vacuum
/// environment (non-minimal).
pub fn dilate(channel: &GaussianChannel) -> Result<ChannelDilation> {
    match channel.kind().clone() {
        ChannelKind::Lossy { eta } => {
            let s = beam_splitter(eta)?;
            Ok(ChannelDilation {
                s,
                env: GaussianState::vacuum(1)?,
                env_modes: 1,
                system_modes: 1,
            })
        }
        ChannelKind::ThermalNoise { eta, c } if c <= 1.0 => {
            let s = beam_splitter(eta)?;
            Ok(ChannelDilation {
                s,
                env: GaussianState::vacuum(1)?,
                env_modes: 1,
                system_modes: 1,
            })
        }
        ChannelKind::ThermalNoise { eta, c } => {
            // beam splitter on (system, env1), identity on the purifier env2
            let s = beam_splitter(eta)?
                .direct_sum(&SymplecticMatrix::identity(1)?);
            Ok(ChannelDilation {
                s,
                env: tms_purification_of_thermal(c)?,
                env_modes: 2,
                system_modes: 1,
            })
        }
        ChannelKind::Fiber {
            length,
            absorption_length,
        } => {
            let s = beam_splitter((-length / absorption_length).exp())?;
            Ok(ChannelDilation {
                s,
                env: GaussianState::vacuum(1)?,
                env_modes: 1,
                system_modes: 1,
            })
        }
        ChannelKind::Amplifier { eta, c } => {
            let r = eta.sqrt().acosh();
            if c == 1.0 {
                Ok(ChannelDilation {
                    s: two_mode_squeezer(r)?,
                    env: GaussianState::vacuum(1)?,
                    env_modes: 1,
                    system_modes: 1,
                })
            } else {
                let s = two_mode_squeezer(r)?
                    .direct_sum(&SymplecticMatrix::identity(1)?);
                Ok(ChannelDilation {
                    s,
                    env: tms_purification_of_thermal(c)?,
                    env_modes: 2,
                    system_modes: 1,
                })
            }
        }
        ChannelKind::ClassicalNoise { y } => {
            let y_mat = DMatrix::from_row_slice(2, 2, &y);
            let iso = y_mat[(0, 0)];
            if (y_mat.clone() - DMatrix::identity(2, 2) * iso).amax() > 1e-10 * (1.0 + iso) {
                return Err(GaussError::UnsupportedFamily(
                    "classical-noise dilation is implemented for isotropic Y = y*I only".into(),
                ));
            }
            if iso <= 0.0 {
                // no noise at all: identity channel, trivial dilation
                return Ok(ChannelDilation {
                    s: beam_splitter(1.0)?,
                    env: GaussianState::vacuum(1)?,
                    env_modes: 1,
                    system_modes: 1,
                });
            }
            // loss eta then amplification 1/eta adds 2(1-eta)/eta of noise
            let eta = 2.0 / (iso + 2.0);
            let bs = beam_splitter(eta)?.direct_sum(&SymplecticMatrix::identity(1)?);
            let r = (1.0 / eta).sqrt().acosh();
            // squeezer couples system (mode 0) with env mode 2
            let tms = two_mode_squeezer(r)?;
            let mut sq = DMatrix::identity(6, 6);
            let t = tms.matrix();
            for qa in 0..2 {
                for qb in 0..2 {
                    sq[(qa, qb)] = t[(qa, qb)];
                    sq[(qa, 4 + qb)] = t[(qa, 2 + qb)];
                    sq[(4 + qa, qb)] = t[(2 + qa, qb)];
                    sq[(4 + qa, 4 + qb)] = t[(2 + qa, 2 + qb)];
                }
            }
            let s = SymplecticMatrix::with_tol(&sq * bs.matrix(), 1e-8 * (1.0 + sq.amax()))?;
            Ok(ChannelDilation {
                s,
                env: GaussianState::vacuum(2)?,
                env_modes: 2,
                system_modes: 1,
            })
        }
        ChannelKind::Custom => Err(GaussError::UnsupportedFamily(
            "dilation is implemented for the named families only".into(),
        )),
    }
}

/// Single-mode CP shortcut: Y ⪰ 0 and det Y ≥ (det X − 1)².
pub fn single_mode_cp_shortcut(x: &DMatrix<f64>, y: &DMatrix<f64>) -> bool {
    let dx = x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)];
    let dy = y[(0, 0)] * y[(1, 1)] - y[(0, 1)] * y[(1, 0)];
    min_symmetric_eigenvalue(y) >= -1e-10 && dy >= (dx - 1.0).powi(2) - 1e-10
}

/// Serializable channel description {kind, params, X, Y} with row-major
/// matrix entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelDescription {
    #[serde(flatten)]
    pub kind: ChannelKind,
    pub modes: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl ChannelDescription {
    pub fn from_channel(channel: &GaussianChannel) -> Self {
        let dim = 2 * channel.modes();
        let row_major = |m: &DMatrix<f64>| -> Vec<f64> {
            (0..dim)
                .flat_map(|i| (0..dim).map(move |j| (i, j)))
                .map(|(i, j)| m[(i, j)])
                .collect()
        };
        Self {
            kind: channel.kind().clone(),
            modes: channel.modes(),
            x: row_major(channel.x()),
            y: row_major(channel.y()),
        }
    }

    pub fn to_channel(&self) -> Result<GaussianChannel> {
        if self.kind != ChannelKind::Custom {
            return named_channel(self.kind.clone());
        }
        let dim = 2 * self.modes;
        if self.x.len() != dim * dim || self.y.len() != dim * dim {
            return Err(GaussError::Parse(format!(
                "expected {} matrix entries, got {} / {}",
                dim * dim,
                self.x.len(),
                self.y.len()
            )));
        }
        GaussianChannel::new(
            DMatrix::from_row_slice(dim, dim, &self.x),
            DMatrix::from_row_slice(dim, dim, &self.y),
        )
    }
}
