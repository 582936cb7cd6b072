//! Phase-space linear algebra: the symplectic form, covariance validity,
//! symplectic spectra, the Williamson normal form and standard symplectic
//! generators.
//!
//! Quadratures are ordered (x₁, p₁, …, x_n, p_n), so the symplectic form is
//! block diagonal with 2×2 blocks [[0, 1], [−1, 0]].

use nalgebra::{Complex, DMatrix, DVector};

use crate::{GaussError, Result, DEFAULT_TOL};

/// The symplectic form σ on `n` modes: block-diagonal, antisymmetric,
/// σ² = −1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(GaussError::ZeroModes);
        }
        let mut m = DMatrix::zeros(2 * modes, 2 * modes);
        for i in 0..modes {
            m[(2 * i, 2 * i + 1)] = 1.0;
            m[(2 * i + 1, 2 * i)] = -1.0;
        }
        Ok(Self { modes, matrix: m })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// Convenience accessor for the raw 2n×2n symplectic form matrix.
pub fn symplectic_form(modes: usize) -> Result<DMatrix<f64>> {
    Ok(SymplecticForm::new(modes)?.matrix)
}

/// Checks the covariance validity condition γ + iσ ⪰ 0.
///
/// Returns `false` for matrices that are square and even-dimensional but not
/// symmetric within `tol` or whose minimal eigenvalue of γ + iσ is below
/// `−tol`. Rejects non-square or odd-dimensional input with an error.
pub fn is_valid_covariance(gamma: &DMatrix<f64>, tol: f64) -> Result<bool> {
    if gamma.nrows() != gamma.ncols() || gamma.nrows() % 2 != 0 || gamma.nrows() == 0 {
        return Err(GaussError::BadShape {
            rows: gamma.nrows(),
            cols: gamma.ncols(),
        });
    }
    let asym = (gamma - gamma.transpose()).amax();
    if asym > tol.max(1e-12) * (1.0 + gamma.amax()) {
        return Ok(false);
    }
    Ok(min_uncertainty_eigenvalue(gamma) >= -tol)
}

/// Minimal eigenvalue of the Hermitian matrix γ + iσ.
pub fn min_uncertainty_eigenvalue(gamma: &DMatrix<f64>) -> f64 {
    let n = gamma.nrows() / 2;
    let sigma = SymplecticForm::new(n).expect("n >= 1").matrix;
    let mut h = DMatrix::<Complex<f64>>::zeros(2 * n, 2 * n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            h[(i, j)] = Complex::new(gamma[(i, j)], sigma[(i, j)]);
        }
    }
    let eig = h.symmetric_eigen();
    eig.eigenvalues.min()
}

/// Minimal eigenvalue of a real symmetric matrix.
pub fn min_symmetric_eigenvalue(m: &DMatrix<f64>) -> f64 {
    let s = (m + m.transpose()) * 0.5;
    s.symmetric_eigen().eigenvalues.min()
}

/// A real symmetric 2n×2n covariance matrix with γ + iσ ⪰ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    modes: usize,
    matrix: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Validates and wraps a covariance matrix candidate at the default
    /// tolerance.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_TOL)
    }

    pub fn with_tol(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        if !is_valid_covariance(&matrix, tol)? {
            return Err(GaussError::InvalidCovariance(format!(
                "min eigenvalue of gamma + i sigma is {:.3e}",
                min_uncertainty_eigenvalue(&matrix)
            )));
        }
        let modes = matrix.nrows() / 2;
        // symmetrize away round-off
        let matrix = (&matrix + matrix.transpose()) * 0.5;
        Ok(Self { modes, matrix })
    }

    /// Vacuum state covariance (the identity).
    pub fn vacuum(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(GaussError::ZeroModes);
        }
        Ok(Self {
            modes,
            matrix: DMatrix::identity(2 * modes, 2 * modes),
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// Symplectic eigenvalues c₁ ≥ … ≥ c_n, computed from the spectrum of
    /// σγ. The eigenvalues of σγ come in pairs ±i c, so the magnitudes are
    /// sorted and deduplicated by taking every other one.
    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        symplectic_eigenvalues_raw(&self.matrix)
    }

    /// Principal submatrix on the kept modes (in the given order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<CovarianceMatrix> {
        if keep.is_empty() {
            return Err(GaussError::InvalidPartition("empty mode set".into()));
        }
        for &k in keep {
            if k >= self.modes {
                return Err(GaussError::InvalidPartition(format!(
                    "mode index {k} out of range for {} modes",
                    self.modes
                )));
            }
        }
        let m = principal_submatrix(&self.matrix, keep);
        Ok(CovarianceMatrix {
            modes: keep.len(),
            matrix: m,
        })
    }

    /// Block-diagonal composite of two covariance matrices.
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> CovarianceMatrix {
        CovarianceMatrix {
            modes: self.modes + other.modes,
            matrix: direct_sum(&self.matrix, &other.matrix),
        }
    }

    /// Williamson normal form γ = S diag(c₁,c₁,…,c_n,c_n) Sᵀ.
    pub fn williamson(&self) -> Result<WilliamsonDecomposition> {
        williamson(&self.matrix)
    }

    /// True iff all symplectic eigenvalues are 1 within `tol` (pure state).
    pub fn is_pure(&self, tol: f64) -> bool {
        self.symplectic_eigenvalues()
            .iter()
            .all(|c| (c - 1.0).abs() <= tol)
    }
}

/// Symplectic eigenvalues of a raw covariance matrix (no validity check).
pub fn symplectic_eigenvalues_raw(gamma: &DMatrix<f64>) -> Vec<f64> {
    let n = gamma.nrows() / 2;
    let sigma = SymplecticForm::new(n).expect("n >= 1").matrix;
    let prod = &sigma * gamma;
    let ev = prod.complex_eigenvalues();
    let mut mags: Vec<f64> = ev.iter().map(|z| z.norm()).collect();
    mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // conjugate pairs: take every other magnitude
    (0..n).map(|i| mags[2 * i]).collect()
}

/// Extracts rows/columns of the quadratures belonging to `keep`.
pub fn principal_submatrix(m: &DMatrix<f64>, keep: &[usize]) -> DMatrix<f64> {
    let k = keep.len();
    let mut out = DMatrix::zeros(2 * k, 2 * k);
    for (a, &ma) in keep.iter().enumerate() {
        for (b, &mb) in keep.iter().enumerate() {
            for qa in 0..2 {
                for qb in 0..2 {
                    out[(2 * a + qa, 2 * b + qb)] = m[(2 * ma + qa, 2 * mb + qb)];
                }
            }
        }
    }
    out
}

pub fn direct_sum(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = DMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// A real 2n×2n matrix satisfying SσSᵀ = σ.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticMatrix {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_TOL)
    }

    pub fn with_tol(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() % 2 != 0 || matrix.nrows() == 0 {
            return Err(GaussError::BadShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let dev = symplectic_deviation(&matrix);
        if dev > tol {
            return Err(GaussError::NotSymplectic(dev));
        }
        Ok(Self {
            modes: matrix.nrows() / 2,
            matrix,
        })
    }

    pub fn identity(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(GaussError::ZeroModes);
        }
        Ok(Self {
            modes,
            matrix: DMatrix::identity(2 * modes, 2 * modes),
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Congruence action γ ↦ SγSᵀ.
    pub fn act(&self, gamma: &DMatrix<f64>) -> DMatrix<f64> {
        &self.matrix * gamma * self.matrix.transpose()
    }

    pub fn direct_sum(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix {
            modes: self.modes + other.modes,
            matrix: direct_sum(&self.matrix, &other.matrix),
        }
    }
}

/// ‖SσSᵀ − σ‖_max.
pub fn symplectic_deviation(s: &DMatrix<f64>) -> f64 {
    let n = s.nrows() / 2;
    let sigma = SymplecticForm::new(n).expect("n >= 1").matrix;
    (s * &sigma * s.transpose() - &sigma).amax()
}

/// Two-mode beam splitter with transmittivity η:
/// [[√η 1₂, √(1−η) 1₂], [−√(1−η) 1₂, √η 1₂]].
pub fn beam_splitter(eta: f64) -> Result<SymplecticMatrix> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(GaussError::OutOfRange(format!(
            "transmittivity eta = {eta} outside [0, 1]"
        )));
    }
    let t = eta.sqrt();
    let r = (1.0 - eta).sqrt();
    let mut m = DMatrix::zeros(4, 4);
    for q in 0..2 {
        m[(q, q)] = t;
        m[(q, 2 + q)] = r;
        m[(2 + q, q)] = -r;
        m[(2 + q, 2 + q)] = t;
    }
    SymplecticMatrix::with_tol(m, 1e-12)
}

/// Two-mode squeezer [[cosh r 1₂, sinh r Z], [sinh r Z, cosh r 1₂]] with
/// Z = diag(1, −1).
pub fn two_mode_squeezer(r: f64) -> Result<SymplecticMatrix> {
    let ch = r.cosh();
    let sh = r.sinh();
    let mut m = DMatrix::zeros(4, 4);
    for q in 0..2 {
        let z = if q == 0 { 1.0 } else { -1.0 };
        m[(q, q)] = ch;
        m[(2 + q, 2 + q)] = ch;
        m[(q, 2 + q)] = sh * z;
        m[(2 + q, q)] = sh * z;
    }
    SymplecticMatrix::with_tol(m, 1e-9 * ch * ch)
}

/// Single-mode phase-space rotation by angle θ.
pub fn rotation(theta: f64) -> SymplecticMatrix {
    let (s, c) = theta.sin_cos();
    let m = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
    SymplecticMatrix::with_tol(m, 1e-12).expect("rotation is symplectic")
}

/// Single-mode squeezer diag(e^r, e^{−r}).
pub fn single_mode_squeezer(r: f64) -> SymplecticMatrix {
    let m = DMatrix::from_diagonal(&DVector::from_vec(vec![r.exp(), (-r).exp()]));
    SymplecticMatrix::with_tol(m, 1e-9 * (2.0 * r.abs()).exp()).expect("squeezer is symplectic")
}

/// Williamson decomposition of a valid covariance matrix: a symplectic `s`
/// and the symplectic spectrum such that
/// `s · diag(c₁,c₁,…,c_n,c_n) · sᵀ` reconstructs the input.
#[derive(Debug, Clone)]
pub struct WilliamsonDecomposition {
    pub s: SymplecticMatrix,
    pub spectrum: Vec<f64>,
}

impl WilliamsonDecomposition {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        self.s.act(&self.normal_form())
    }

    /// diag(c₁, c₁, …, c_n, c_n).
    pub fn normal_form(&self) -> DMatrix<f64> {
        let n = self.spectrum.len();
        let mut d = DMatrix::zeros(2 * n, 2 * n);
        for (i, &c) in self.spectrum.iter().enumerate() {
            d[(2 * i, 2 * i)] = c;
            d[(2 * i + 1, 2 * i + 1)] = c;
        }
        d
    }

    /// The pure covariance matrix SSᵀ obtained by replacing every normal-mode
    /// temperature with the vacuum. It always satisfies γ ⪰ SSᵀ.
    pub fn pure_part(&self) -> DMatrix<f64> {
        self.s.matrix() * self.s.matrix().transpose()
    }
}

/// Computes the Williamson normal form via the antisymmetric matrix
/// K = γ^{1/2} σ γ^{1/2}: an orthogonal O with OᵀKO = ⊕ c_i J yields
/// S = γ^{1/2} O D^{−1/2}, which is symplectic and satisfies γ = S D Sᵀ.
pub fn williamson(gamma: &DMatrix<f64>) -> Result<WilliamsonDecomposition> {
    if !is_valid_covariance(gamma, DEFAULT_TOL)? {
        return Err(GaussError::InvalidCovariance(
            "williamson requires a valid covariance matrix".into(),
        ));
    }
    let dim = gamma.nrows();
    let n = dim / 2;
    let sym = (gamma + gamma.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    if eig.eigenvalues.min() <= 1e-12 {
        return Err(GaussError::InvalidCovariance(
            "williamson requires a strictly positive definite matrix".into(),
        ));
    }
    let sqrt_vals = eig.eigenvalues.map(|v| v.sqrt());
    let half = &eig.eigenvectors * DMatrix::from_diagonal(&sqrt_vals) * eig.eigenvectors.transpose();
    let sigma = SymplecticForm::new(n)?.matrix;
    let k = &half * &sigma * &half; // antisymmetric
    let m = -(&k * &k); // symmetric PSD, eigenvalues c_i² (each doubled)
    let meig = ((&m + m.transpose()) * 0.5).symmetric_eigen();

    // sort eigenpairs descending
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| {
        meig.eigenvalues[b]
            .partial_cmp(&meig.eigenvalues[a])
            .unwrap()
    });

    let mut chosen: Vec<DVector<f64>> = Vec::with_capacity(dim);
    let mut spectrum = Vec::with_capacity(n);
    for &idx in &order {
        if spectrum.len() == n {
            break;
        }
        let mut u: DVector<f64> = meig.eigenvectors.column(idx).into();
        for c in &chosen {
            let p = c.dot(&u);
            u -= c * p;
        }
        let nrm = u.norm();
        if nrm < 1e-8 {
            continue; // already inside a chosen invariant plane
        }
        u /= nrm;
        let c = meig.eigenvalues[idx].max(0.0).sqrt();
        if c < 1e-12 {
            return Err(GaussError::NumericalFailure(
                "vanishing symplectic eigenvalue in williamson".into(),
            ));
        }
        let mut w = -(&k * &u) / c;
        for cv in &chosen {
            let p = cv.dot(&w);
            w -= cv * p;
        }
        let p = u.dot(&w);
        w -= &u * p;
        let wn = w.norm();
        if wn < 1e-8 {
            return Err(GaussError::NumericalFailure(
                "failed to pair eigenvectors in williamson".into(),
            ));
        }
        w /= wn;
        chosen.push(u);
        chosen.push(w);
        spectrum.push(c);
    }
    if spectrum.len() != n {
        return Err(GaussError::NumericalFailure(
            "williamson pairing did not produce n normal modes".into(),
        ));
    }

    let mut o = DMatrix::zeros(dim, dim);
    for (j, col) in chosen.iter().enumerate() {
        o.set_column(j, col);
    }
    let inv_sqrt_d = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            1.0 / spectrum[i / 2].sqrt()
        } else {
            0.0
        }
    });
    let s_mat = &half * &o * inv_sqrt_d;
    let s = SymplecticMatrix::with_tol(s_mat, 1e-7 * (1.0 + gamma.amax()))?;
    Ok(WilliamsonDecomposition { s, spectrum })
}
