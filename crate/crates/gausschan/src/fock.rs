//! Brute-force verification oracle in a truncated number basis: Gaussian
//! states as explicit density matrices, eigenvalue-based entropies, the
//! attenuation channel as binomial-thinning Kraus operators, covariance
//! extraction from ladder operators, and non-Gaussian comparison states with
//! prescribed second moments for the extremality checks.
//!
//! Everything here is deliberately independent of the symplectic machinery:
//! the only shared ingredients are the covariance conventions (ħ = 1, vacuum
//! variance 1) so that the two routes can be compared.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::symplectic::CovarianceMatrix;
use crate::{GaussError, Result};

pub type C64 = Complex<f64>;

/// Default probability-mass budget lost to truncation.
pub const TRACE_DEFICIT_BUDGET: f64 = 1e-8;

/// Dense density matrix on `modes` copies of a `cutoff`-dimensional
/// truncated oscillator (mode 0 is the slowest index).
#[derive(Debug, Clone)]
pub struct FockDensityMatrix {
    cutoff: usize,
    modes: usize,
    matrix: DMatrix<C64>,
    trace_deficit: f64,
}

impl FockDensityMatrix {
    pub fn new(matrix: DMatrix<C64>, modes: usize, cutoff: usize, trace_deficit: f64) -> Result<Self> {
        let dim = cutoff.pow(modes as u32);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(GaussError::DimensionMismatch(format!(
                "expected a {dim}x{dim} matrix for {modes} modes at cutoff {cutoff}"
            )));
        }
        let herm_dev = (&matrix - matrix.adjoint()).camax();
        if herm_dev > 1e-10 {
            return Err(GaussError::InvalidCovariance(format!(
                "density matrix is not Hermitian (deviation {herm_dev:.2e})"
            )));
        }
        Ok(Self {
            cutoff,
            modes,
            matrix,
            trace_deficit,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)].re).sum()
    }

    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    /// Partial trace keeping the listed modes (two-mode states only need
    /// keep-one, which is what the comparison suite uses).
    pub fn reduce(&self, keep_mode: usize) -> Result<FockDensityMatrix> {
        if self.modes != 2 || keep_mode > 1 {
            return Err(GaussError::InvalidPartition(
                "reduce is implemented for two-mode states and a single kept mode".into(),
            ));
        }
        let c = self.cutoff;
        let mut out = DMatrix::zeros(c, c);
        for i in 0..c {
            for j in 0..c {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..c {
                    let (row, col) = if keep_mode == 0 {
                        (i * c + k, j * c + k)
                    } else {
                        (k * c + i, k * c + j)
                    };
                    s += self.matrix[(row, col)];
                }
                out[(i, j)] = s;
            }
        }
        FockDensityMatrix::new(out, 1, c, self.trace_deficit)
    }
}

/// Annihilation operator a with a|n⟩ = √n |n−1⟩.
pub fn annihilation(cutoff: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(cutoff, cutoff);
    for n in 1..cutoff {
        a[(n - 1, n)] = (n as f64).sqrt();
    }
    a
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|v| C64::new(v, 0.0))
}

/// Quadrature x = (a + a†)/√2.
pub fn quadrature_x(cutoff: usize) -> DMatrix<C64> {
    let a = annihilation(cutoff);
    complexify(&((&a + a.transpose()) / 2.0f64.sqrt()))
}

/// Quadrature p = i(a† − a)/√2.
pub fn quadrature_p(cutoff: usize) -> DMatrix<C64> {
    let a = annihilation(cutoff);
    let d = (a.transpose() - &a) / 2.0f64.sqrt();
    d.map(|v| C64::new(0.0, v))
}

/// exp(K) for anti-Hermitian K, through the eigendecomposition of iK. The
/// result is exactly unitary on the truncated space.
fn anti_hermitian_exp(k: &DMatrix<C64>) -> DMatrix<C64> {
    let h = k.map(|v| C64::new(0.0, 1.0) * v);
    let eig = h.clone().symmetric_eigen();
    let dim = k.nrows();
    let mut d = DMatrix::zeros(dim, dim);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        d[(i, i)] = C64::new(0.0, -lambda).exp();
    }
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Displacement operator D(α) = exp(α a† − α* a). The quadrature
/// displacement d = (dx, dp) corresponds to α = (dx + i·dp)/√2.
pub fn displacement_op(alpha: C64, cutoff: usize) -> DMatrix<C64> {
    let a = complexify(&annihilation(cutoff));
    let k = a.adjoint() * alpha - &a * alpha.conj();
    anti_hermitian_exp(&k)
}

/// Squeeze operator exp((r/2)(a†² − a²)); maps the vacuum to the pure state
/// with covariance diag(e^{2r}, e^{−2r}).
pub fn squeeze_op(r: f64, cutoff: usize) -> DMatrix<C64> {
    let a = complexify(&annihilation(cutoff));
    let a2 = &a * &a;
    let k = (a2.adjoint() - a2) * C64::new(0.5 * r, 0.0);
    anti_hermitian_exp(&k)
}

/// Phase rotation exp(iφ a†a); transforms quadratures by the rotation
/// matrix [[cos φ, −sin φ], [sin φ, cos φ]].
pub fn rotation_op(phi: f64, cutoff: usize) -> DMatrix<C64> {
    DMatrix::from_fn(cutoff, cutoff, |i, j| {
        if i == j {
            C64::new(0.0, phi * i as f64).exp()
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn vacuum_vector(cutoff: usize) -> DVector<C64> {
    let mut v = DVector::zeros(cutoff);
    v[0] = C64::new(1.0, 0.0);
    v
}

/// Fraction of a pure state's mass in the top 20% of truncated levels, used
/// as the boundary-accuracy proxy for unitarily constructed states (which
/// keep norm 1 exactly).
fn boundary_mass(vector: &DVector<C64>, modes: usize, cutoff: usize) -> f64 {
    let threshold = cutoff - (cutoff / 5).max(1);
    let mut mass = 0.0;
    for (idx, v) in vector.iter().enumerate() {
        let mut rest = idx;
        let mut boundary = false;
        for _ in 0..modes {
            if rest % cutoff >= threshold {
                boundary = true;
            }
            rest /= cutoff;
        }
        if boundary {
            mass += v.norm_sqr();
        }
    }
    mass
}

/// Named Gaussian inputs for [`gaussian_to_fock`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FockStateKind {
    Thermal { n: f64 },
    Coherent { d: [f64; 2] },
    SqueezedVacuum { r: f64 },
    TwoModeSqueezed { r: f64 },
}

/// Builds the named Gaussian state as an explicit truncated density matrix,
/// failing when the truncation loses more than [`TRACE_DEFICIT_BUDGET`].
pub fn gaussian_to_fock(kind: FockStateKind, cutoff: usize) -> Result<FockDensityMatrix> {
    if cutoff < 2 {
        return Err(GaussError::OutOfRange("cutoff must be at least 2".into()));
    }
    let budget = TRACE_DEFICIT_BUDGET;
    let fail = |deficit: f64| GaussError::CutoffTooSmall {
        cutoff,
        deficit,
        budget,
    };
    match kind {
        FockStateKind::Thermal { n } => {
            if n < 0.0 {
                return Err(GaussError::OutOfRange(format!("thermal N = {n} < 0")));
            }
            let mut m = DMatrix::zeros(cutoff, cutoff);
            let mut total = 0.0;
            for k in 0..cutoff {
                let p = if n == 0.0 {
                    if k == 0 { 1.0 } else { 0.0 }
                } else {
                    (n / (n + 1.0)).powi(k as i32) / (n + 1.0)
                };
                m[(k, k)] = C64::new(p, 0.0);
                total += p;
            }
            let deficit = 1.0 - total;
            if deficit > budget {
                return Err(fail(deficit));
            }
            FockDensityMatrix::new(m, 1, cutoff, deficit)
        }
        FockStateKind::Coherent { d } => {
            let alpha = C64::new(d[0], d[1]) / 2.0f64.sqrt();
            let psi = displacement_op(alpha, cutoff) * vacuum_vector(cutoff);
            let deficit = boundary_mass(&psi, 1, cutoff);
            if deficit > budget {
                return Err(fail(deficit));
            }
            FockDensityMatrix::new(&psi * psi.adjoint(), 1, cutoff, deficit)
        }
        FockStateKind::SqueezedVacuum { r } => {
            let psi = squeeze_op(r, cutoff) * vacuum_vector(cutoff);
            let deficit = boundary_mass(&psi, 1, cutoff);
            if deficit > budget {
                return Err(fail(deficit));
            }
            FockDensityMatrix::new(&psi * psi.adjoint(), 1, cutoff, deficit)
        }
        FockStateKind::TwoModeSqueezed { r } => {
            let t = r.tanh();
            let mut psi = DVector::zeros(cutoff * cutoff);
            let mut total = 0.0;
            for k in 0..cutoff {
                let c = t.powi(k as i32) / r.cosh();
                psi[k * cutoff + k] = C64::new(c, 0.0);
                total += c * c;
            }
            let deficit = 1.0 - total;
            if deficit > budget {
                return Err(fail(deficit));
            }
            FockDensityMatrix::new(&psi * psi.adjoint(), 2, cutoff, deficit)
        }
    }
}

fn clamped_probabilities(rho: &DMatrix<C64>) -> Vec<f64> {
    // LAPACK dsyev on the real symmetric embedding [[Re, −Im], [Im, Re]],
    // whose spectrum is the Hermitian spectrum doubled. nalgebra's own
    // iterative solver fails to converge (NaN) on large near-rank-one
    // density matrices, so the eigensolve is delegated to LAPACK.
    let n = rho.nrows();
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for j in 0..n {
        for i in 0..n {
            let z = rho[(i, j)];
            big[(i, j)] = z.re;
            big[(i, j + n)] = -z.im;
            big[(i + n, j)] = z.im;
            big[(i + n, j + n)] = z.re;
        }
    }
    // the eigenvalues-only entry point passes an illegal jobz to DSYEV in
    // nalgebra-lapack 0.28, so request the full decomposition
    let eig = nalgebra_lapack::SymmetricEigen::new(big);
    let mut sorted: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted
        .into_iter()
        .step_by(2)
        .map(|p| if p < 1e-14 { 0.0 } else { p })
        .collect()
}

fn entropy_of_probabilities(ps: &[f64], alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < 1e-12 {
        -ps.iter().filter(|&&p| p > 0.0).map(|&p| p * p.log2()).sum::<f64>()
    } else {
        let s: f64 = ps.iter().map(|&p| p.powf(alpha)).sum();
        s.log2() / (1.0 - alpha)
    }
}

/// Eigenvalue-based Rényi-α (α = 1 is von Neumann) entropy in bits.
/// Eigenvalues below 1e−14 are clamped to zero.
pub fn fock_entropy(rho: &FockDensityMatrix, alpha: f64) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(GaussError::OutOfRange(format!("alpha = {alpha} must be > 0")));
    }
    Ok(entropy_of_probabilities(&clamped_probabilities(&rho.matrix), alpha))
}

fn mode_operator(op: &DMatrix<C64>, mode: usize, modes: usize, cutoff: usize) -> DMatrix<C64> {
    let mut out = DMatrix::identity(1, 1);
    for m in 0..modes {
        let factor = if m == mode {
            op.clone()
        } else {
            DMatrix::identity(cutoff, cutoff)
        };
        out = out.kronecker(&factor);
    }
    out
}

/// First moments and covariance matrix γ_{jk} = 2Re⟨ΔR_j ΔR_k⟩ extracted
/// from truncated quadrature operators. Errors when the stored trace deficit
/// exceeds the budget (the moments would be untrustworthy).
pub fn fock_covariance(rho: &FockDensityMatrix) -> Result<(DMatrix<f64>, DVector<f64>)> {
    if rho.trace_deficit > 1e-6 {
        return Err(GaussError::CutoffTooSmall {
            cutoff: rho.cutoff,
            deficit: rho.trace_deficit,
            budget: 1e-6,
        });
    }
    let c = rho.cutoff;
    let n = rho.modes;
    let mut quads = Vec::with_capacity(2 * n);
    for m in 0..n {
        quads.push(mode_operator(&quadrature_x(c), m, n, c));
        quads.push(mode_operator(&quadrature_p(c), m, n, c));
    }
    let expect = |op: &DMatrix<C64>| -> C64 {
        let prod = &rho.matrix * op;
        (0..prod.nrows()).map(|i| prod[(i, i)]).sum()
    };
    let d = DVector::from_iterator(2 * n, quads.iter().map(|q| expect(q).re));
    let mut gamma = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..2 * n {
        for k in j..2 * n {
            let m = expect(&(&quads[j] * &quads[k])).re;
            let v = 2.0 * m - 2.0 * d[j] * d[k];
            gamma[(j, k)] = v;
            gamma[(k, j)] = v;
        }
    }
    Ok((gamma, d))
}

/// Attenuation Kraus operators A_k = Σ_n √(C(n,k) η^{n−k} (1−η)^k) |n−k⟩⟨n|.
pub fn lossy_kraus(eta: f64, cutoff: usize) -> Result<Vec<DMatrix<f64>>> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(GaussError::OutOfRange(format!("eta = {eta} outside [0, 1]")));
    }
    let mut ops = Vec::with_capacity(cutoff);
    for k in 0..cutoff {
        let mut a = DMatrix::zeros(cutoff, cutoff);
        for n in k..cutoff {
            // log-space binomial to stay stable at large n
            let mut log_c = 0.0;
            for i in 0..k {
                log_c += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
            }
            let log_w = log_c
                + (n - k) as f64 * eta.max(f64::MIN_POSITIVE).ln()
                + k as f64 * (1.0 - eta).max(f64::MIN_POSITIVE).ln();
            let w = if eta == 0.0 && n != k {
                0.0
            } else if eta == 1.0 && k != 0 {
                0.0
            } else {
                (0.5 * log_w).exp()
            };
            a[(n - k, n)] = w;
        }
        ops.push(a);
    }
    Ok(ops)
}

/// Σ_k A_k ρ A_k† with the binomial-thinning attenuation Kraus operators.
pub fn apply_lossy_fock(rho: &FockDensityMatrix, eta: f64) -> Result<FockDensityMatrix> {
    if rho.modes != 1 {
        return Err(GaussError::UnsupportedFamily(
            "the Kraus route is implemented for single-mode states".into(),
        ));
    }
    let kraus = lossy_kraus(eta, rho.cutoff)?;
    let mut out = DMatrix::zeros(rho.cutoff, rho.cutoff);
    for a in &kraus {
        let ac = complexify(a);
        out += &ac * &rho.matrix * ac.transpose();
    }
    FockDensityMatrix::new(out, 1, rho.cutoff, rho.trace_deficit)
}

/// Maximum deviation of Σ A_k†A_k from the identity on the rows that the
/// truncation cannot reach (all of them, for this Kraus family).
pub fn kraus_completeness_deviation(eta: f64, cutoff: usize) -> Result<f64> {
    let kraus = lossy_kraus(eta, cutoff)?;
    let mut s = DMatrix::zeros(cutoff, cutoff);
    for a in &kraus {
        s += a.transpose() * a;
    }
    Ok((s - DMatrix::identity(cutoff, cutoff)).amax())
}

/// Entropy exchange S(ρ, T) of the attenuation channel on a single-mode
/// state, via the Gram-type matrix W_{kl} = tr(A_k ρ A_l†), whose spectrum
/// equals that of (1 ⊗ T)(|ψ_ρ⟩⟨ψ_ρ|).
pub fn lossy_entropy_exchange(rho: &FockDensityMatrix, eta: f64) -> Result<f64> {
    if rho.modes != 1 {
        return Err(GaussError::UnsupportedFamily(
            "entropy exchange is implemented for single-mode states".into(),
        ));
    }
    let kraus = lossy_kraus(eta, rho.cutoff)?;
    let dim = kraus.len();
    let mut w = DMatrix::zeros(dim, dim);
    for (k, ak) in kraus.iter().enumerate() {
        for (l, al) in kraus.iter().enumerate() {
            let prod = complexify(ak) * &rho.matrix * complexify(al).transpose();
            let tr: C64 = (0..prod.nrows()).map(|i| prod[(i, i)]).sum();
            w[(k, l)] = tr;
        }
    }
    Ok(entropy_of_probabilities(&clamped_probabilities(&w), 1.0))
}

/// A finite mixture of pure truncated states: the output format of the
/// non-Gaussian comparison construction. Entropies use the Gram matrix of
/// the component vectors, so they stay cheap even at large cutoffs.
#[derive(Debug, Clone)]
pub struct PureMixture {
    pub vectors: Vec<DVector<C64>>,
    pub weights: Vec<f64>,
    pub modes: usize,
    pub cutoff: usize,
    /// True when the construction degenerated to the Gaussian itself (ξ = 0).
    pub is_gaussian: bool,
}

impl PureMixture {
    pub fn density(&self) -> Result<FockDensityMatrix> {
        let dim = self.cutoff.pow(self.modes as u32);
        let mut m = DMatrix::zeros(dim, dim);
        let mut deficit = 0.0f64;
        for (v, &w) in self.vectors.iter().zip(&self.weights) {
            m += (v * v.adjoint()) * C64::new(w, 0.0);
            deficit = deficit.max(boundary_mass(v, self.modes, self.cutoff));
        }
        FockDensityMatrix::new(m, self.modes, self.cutoff, deficit)
    }

    /// Von Neumann entropy from the weighted Gram matrix eigenvalues.
    pub fn entropy(&self) -> f64 {
        let k = self.vectors.len();
        let mut g = DMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = self.vectors[i].dotc(&self.vectors[j])
                    * C64::new((self.weights[i] * self.weights[j]).sqrt(), 0.0);
            }
        }
        entropy_of_probabilities(&clamped_probabilities(&g), 1.0)
    }

    /// Reduced state on one mode of a two-mode mixture.
    pub fn reduce(&self, keep_mode: usize) -> Result<FockDensityMatrix> {
        if self.modes != 2 || keep_mode > 1 {
            return Err(GaussError::InvalidPartition(
                "reduce is implemented for two-mode mixtures".into(),
            ));
        }
        let c = self.cutoff;
        let mut out = DMatrix::zeros(c, c);
        for (v, &w) in self.vectors.iter().zip(&self.weights) {
            // reshape |ψ⟩ into Ψ with Ψ[i₀, i₁]; tr_B |ψ⟩⟨ψ| = ΨΨ†
            let psi = DMatrix::from_fn(c, c, |i, j| v[i * c + j]);
            let contrib = if keep_mode == 0 {
                &psi * psi.adjoint()
            } else {
                psi.adjoint() * &psi
            };
            out += contrib * C64::new(w, 0.0);
        }
        FockDensityMatrix::new(out, 1, c, 0.0)
    }
}

/// Euler data of a single-mode pure covariance P = R(φ) diag(e^{2r}, e^{−2r}) R(φ)ᵀ.
fn single_mode_pure_angles(p: &DMatrix<f64>) -> (f64, f64) {
    let eig = ((p + p.transpose()) * 0.5).symmetric_eigen();
    let hi = if eig.eigenvalues[0] >= eig.eigenvalues[1] { 0 } else { 1 };
    let r = 0.5 * eig.eigenvalues[hi].max(1e-300).ln();
    let v = eig.eigenvectors.column(hi);
    let phi = v[1].atan2(v[0]);
    (phi, r)
}

/// The pure Gaussian component used by the comparison construction, as a
/// truncated state vector.
fn pure_component_vector(pure_part: &DMatrix<f64>, modes: usize, cutoff: usize) -> Result<DVector<C64>> {
    match modes {
        1 => {
            let (phi, r) = single_mode_pure_angles(pure_part);
            Ok(rotation_op(phi, cutoff) * squeeze_op(r, cutoff) * vacuum_vector(cutoff))
        }
        2 => {
            // the construction supports targets whose pure part is a TMS
            // covariance [[a·1, b·Z], [b·Z, a·1]]
            let a = pure_part[(0, 0)];
            let b = pure_part[(0, 2)];
            let mut model = DMatrix::identity(4, 4) * a;
            for (i, j, v) in [(0, 2, b), (2, 0, b), (1, 3, -b), (3, 1, -b)] {
                model[(i, j)] = v;
            }
            if (pure_part - &model).amax() > 1e-6 * (1.0 + a.abs()) {
                return Err(GaussError::UnsupportedTarget(
                    "two-mode targets must have a two-mode-squeezed pure part".into(),
                ));
            }
            // cosh 2r = a, sinh 2r = b with a² − b² = 1 ⇒ e^{2r} = a + b
            let r = 0.5 * (a + b).ln();
            let t = r.tanh();
            let mut psi = DVector::zeros(cutoff * cutoff);
            for k in 0..cutoff {
                psi[k * cutoff + k] = C64::new(t.powi(k as i32) / r.cosh(), 0.0);
            }
            let norm = psi.norm();
            Ok(psi / C64::new(norm, 0.0))
        }
        _ => Err(GaussError::UnsupportedTarget(
            "comparison states are implemented for 1 or 2 modes".into(),
        )),
    }
}

/// Builds a non-Gaussian state with exactly the prescribed first moments
/// (zero) and covariance matrix: a symmetric mixture of displaced copies of
/// the Williamson pure part, with displacement directions drawn from a
/// seeded rotation of the PSD factorization of γ − γ_pure.
///
/// Mixtures of two or more ± displacement pairs are used, so targets whose
/// excess noise has rank up to 2n are representable. Targets that are
/// already pure (no excess noise) return the Gaussian itself, flagged.
pub fn same_covariance_non_gaussian(
    gamma_target: &CovarianceMatrix,
    seed: u64,
    cutoff: usize,
) -> Result<PureMixture> {
    let n = gamma_target.modes();
    if n > 2 {
        return Err(GaussError::UnsupportedTarget(
            "comparison states are implemented for 1 or 2 modes".into(),
        ));
    }
    let w = gamma_target.williamson()?;
    let pure_part = w.pure_part();
    let component = pure_component_vector(&pure_part, n, cutoff)?;
    let delta = gamma_target.matrix() - &pure_part;
    if delta.amax() < 1e-10 {
        return Ok(PureMixture {
            vectors: vec![component],
            weights: vec![1.0],
            modes: n,
            cutoff,
            is_gaussian: true,
        });
    }
    // PSD factorization Δ = Σ λ_i w_i w_iᵀ, randomly rotated: Δ = (WQ)(WQ)ᵀ
    let eig = ((&delta + delta.transpose()) * 0.5).symmetric_eigen();
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda < -1e-9 {
            return Err(GaussError::UnsupportedTarget(format!(
                "excess noise is not positive semidefinite (eigenvalue {lambda:.3e})"
            )));
        }
        if lambda > 1e-10 {
            cols.push(eig.eigenvectors.column(i).clone_owned() * lambda.sqrt());
        }
    }
    let k = cols.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // random orthogonal Q by Gram-Schmidt on a Gaussian-ish matrix
    let mut q = DMatrix::from_fn(k, k, |_, _| rng.gen::<f64>() * 2.0 - 1.0);
    for j in 0..k {
        for prev in 0..j {
            let col = q.column(prev).clone_owned();
            let overlap = col.dot(&q.column(j));
            let adjusted = q.column(j) - col * overlap;
            q.set_column(j, &adjusted);
        }
        let norm = q.column(j).norm();
        if norm < 1e-9 {
            return Err(GaussError::NumericalFailure(
                "random rotation degenerated".into(),
            ));
        }
        let unit = q.column(j) / norm;
        q.set_column(j, &unit);
    }
    let mut directions: Vec<DVector<f64>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut d = DVector::zeros(2 * n);
        for (i, col) in cols.iter().enumerate() {
            d += col * q[(i, j)];
        }
        directions.push(d);
    }
    // mixture over ±d_j with weight 1/(2k): covariance gain (2/k)·Σ' d d ᵀ,
    // so scale each direction by √(k/2)
    let scale = (k as f64 / 2.0).sqrt();
    let mut vectors = Vec::with_capacity(2 * k);
    let mut weights = Vec::with_capacity(2 * k);
    for d in &directions {
        for sign in [1.0, -1.0] {
            let mut disp = DMatrix::identity(1, 1);
            for m in 0..n {
                let alpha =
                    C64::new(sign * scale * d[2 * m], sign * scale * d[2 * m + 1]) / 2.0f64.sqrt();
                disp = disp.kronecker(&displacement_op(alpha, cutoff));
            }
            vectors.push(&disp * &component);
            weights.push(1.0 / (2.0 * k as f64));
        }
    }
    Ok(PureMixture {
        vectors,
        weights,
        modes: n,
        cutoff,
        is_gaussian: false,
    })
}
