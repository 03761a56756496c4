//! Self-contained dense symmetric linear algebra.
//!
//! Everything here targets the small element-level problems of the γ
//! computation (n up to ~100), so the eigensolver is cyclic Jacobi: a
//! handful of sweeps gives high relative accuracy without pulling in a
//! LAPACK binding. The module also carries Cholesky with a semidefinite
//! signal, an eigenvalue-thresholded pseudo-inverse, and the
//! kernel-deflated symmetric-definite generalized eigenproblem.

use thiserror::Error;

/// Default relative threshold separating rigid-body-scale eigenvalues
/// (~1e-16 relative) from physical modes.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Largest admissible relative asymmetry on ingest.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// Off-diagonal Frobenius target for the Jacobi sweep, relative to ‖A‖_F.
const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymlinError {
    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries for a {n}x{n} matrix, got {got}")]
    EntryCountMismatch { n: usize, expected: usize, got: usize },
    #[error("entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("matrix is not symmetric: |A - A^T| reaches {asymmetry:.3e} against scale {scale:.3e}")]
    NotSymmetric { asymmetry: f64, scale: f64 },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps; off-diagonal residual {residual:.3e}")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix is indefinite: pivot {pivot} has value {value:.3e}")]
    Indefinite { pivot: usize, value: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("pencil is inconsistent: the left matrix has energy {energy:.3e} on the kernel of the right matrix (scale {scale:.3e})")]
    InconsistentPencil { energy: f64, scale: f64 },
    #[error("pencil has no effective subspace after kernel deflation")]
    EmptyPencil,
}

/// General dense row-major matrix; workspace type for factors,
/// eigenvector sets and block extraction.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len());
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            let mut acc = 0.0;
            for j in 0..self.cols {
                acc += self.get(i, j) * x[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Dense symmetric matrix; exact symmetry is an invariant.
///
/// Construction symmetrizes `(A + Aᵀ)/2` after checking that the raw
/// asymmetry stays below [`SYMMETRY_TOL`] relative to `‖A‖∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn from_rows(n: usize, entries: Vec<f64>) -> Result<Self, SymlinError> {
        if n == 0 {
            return Err(SymlinError::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(SymlinError::EntryCountMismatch {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        let mut max_abs = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let v = entries[i * n + j];
                if !v.is_finite() {
                    return Err(SymlinError::NonFiniteEntry { row: i, col: j });
                }
                max_abs = max_abs.max(v.abs());
            }
        }
        let mut asym = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                asym = asym.max((entries[i * n + j] - entries[j * n + i]).abs());
            }
        }
        if asym > SYMMETRY_TOL * max_abs {
            return Err(SymlinError::NotSymmetric {
                asymmetry: asym,
                scale: max_abs,
            });
        }
        let mut data = entries;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(Self { n, data })
    }

    /// Build from the lower/upper triangle of a generator; symmetry holds
    /// by construction.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self, SymlinError> {
        if n == 0 {
            return Err(SymlinError::EmptyMatrix);
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                if !v.is_finite() {
                    return Err(SymlinError::NonFiniteEntry { row: i, col: j });
                }
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Ok(Self { n, data })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 }).expect("n >= 1")
    }

    pub fn diagonal(d: &[f64]) -> Result<Self, SymlinError> {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { 0.0 })
    }

    /// `(M + Mᵀ)/2` without the ingest gate; for triple products and
    /// assemblies whose asymmetry is pure rounding.
    pub fn symmetrized(m: &Matrix) -> Self {
        debug_assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = 0.5 * (m.get(i, j) + m.get(j, i));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.n, self.n, self.data.clone())
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, x.len());
        let mut out = vec![0.0; self.n];
        for i in 0..self.n {
            let mut acc = 0.0;
            for j in 0..self.n {
                acc += self.get(i, j) * x[j];
            }
            out[i] = acc;
        }
        out
    }

    /// `xᵀ A y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        let ax = self.matvec(y);
        x.iter().zip(ax.iter()).map(|(a, b)| a * b).sum()
    }

    /// `xᵀ A x`.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        self.bilinear(x, x)
    }

    /// Principal submatrix on `idx × idx`.
    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        let k = idx.len();
        let mut data = vec![0.0; k * k];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                data[a * k + b] = self.get(i, j);
            }
        }
        SymMatrix { n: k, data }
    }

    /// Rectangular block on `rows × cols`.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Full spectral decomposition `A = Q Λ Qᵀ` with ascending eigenvalues
/// and orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().expect("n >= 1")
    }
}

fn offdiag_frobenius(a: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = a[i * n + j];
            acc += 2.0 * v * v;
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi eigendecomposition.
///
/// Sweeps rotate every off-diagonal pair until the off-diagonal Frobenius
/// norm falls below `1e-14·‖A‖_F`, at most 50 sweeps.
pub fn eigen_sym(a: &SymMatrix) -> Result<EigenDecomposition, SymlinError> {
    let n = a.n;
    let mut w = a.data.clone();
    let mut q = Matrix::identity(n);
    let norm_f = a.frobenius_norm();
    let target = JACOBI_TOL * norm_f;

    let mut converged = norm_f == 0.0 || offdiag_frobenius(&w, n) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for r in (p + 1)..n {
                let apq = w[p * n + r];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[r * n + r];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                w[p * n + p] = app - t * apq;
                w[r * n + r] = aqq + t * apq;
                w[p * n + r] = 0.0;
                w[r * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == r {
                        continue;
                    }
                    let akp = w[k * n + p];
                    let akq = w[k * n + r];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    w[k * n + p] = new_p;
                    w[p * n + k] = new_p;
                    w[k * n + r] = new_q;
                    w[r * n + k] = new_q;
                }
                for k in 0..n {
                    let qkp = q.get(k, p);
                    let qkq = q.get(k, r);
                    q.set(k, p, c * qkp - s * qkq);
                    q.set(k, r, s * qkp + c * qkq);
                }
            }
        }
        sweeps += 1;
        converged = offdiag_frobenius(&w, n) <= target;
    }
    if !converged {
        return Err(SymlinError::NoConvergence {
            sweeps,
            residual: offdiag_frobenius(&w, n),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        w[i * n + i]
            .partial_cmp(&w[j * n + j])
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| w[i * n + i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, q.get(row, src));
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// Cholesky with a semidefinite signal.
#[derive(Debug, Clone, PartialEq)]
pub enum CholeskyOutcome {
    /// Lower-triangular `L` with `L·Lᵀ = A`.
    Factor(Matrix),
    /// A pivot fell inside the semidefinite band; `pivot` is its index.
    RankDeficient { pivot: usize },
}

/// Cholesky factorization of a symmetric matrix.
///
/// Succeeds while every pivot exceeds `shift_tol·max(diag)`; a pivot in
/// `[-shift_tol·max(diag), shift_tol·max(diag)]` reports rank deficiency,
/// and a pivot below that band is an indefiniteness error.
pub fn cholesky_spd(a: &SymMatrix, shift_tol: f64) -> Result<CholeskyOutcome, SymlinError> {
    let n = a.n;
    let max_diag = (0..n).fold(0.0f64, |m, i| m.max(a.get(i, i)));
    let band = shift_tol * max_diag.max(0.0);
    let mut l = Matrix::zeros(n, n);
    for k in 0..n {
        let mut d = a.get(k, k);
        for j in 0..k {
            d -= l.get(k, j) * l.get(k, j);
        }
        if d > band {
            let lkk = d.sqrt();
            l.set(k, k, lkk);
            for i in (k + 1)..n {
                let mut v = a.get(i, k);
                for j in 0..k {
                    v -= l.get(i, j) * l.get(k, j);
                }
                l.set(i, k, v / lkk);
            }
        } else if d >= -band {
            return Ok(CholeskyOutcome::RankDeficient { pivot: k });
        } else {
            return Err(SymlinError::Indefinite { pivot: k, value: d });
        }
    }
    Ok(CholeskyOutcome::Factor(l))
}

/// Solve `L·Lᵀ·x = b` for a lower-triangular Cholesky factor.
pub fn cholesky_solve(l: &Matrix, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    assert_eq!(b.len(), n);
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut acc = b[i];
        for j in 0..i {
            acc -= l.get(i, j) * y[j];
        }
        y[i] = acc / l.get(i, i);
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = y[i];
        for j in (i + 1)..n {
            acc -= l.get(j, i) * x[j];
        }
        x[i] = acc / l.get(i, i);
    }
    x
}

/// Moore-Penrose pseudo-inverse of a symmetric matrix together with the
/// dimension of the kernel it deflated.
///
/// Eigenvalues above `rank_tol·λ_max` are inverted, the rest zeroed.
pub fn pseudo_inverse(a: &SymMatrix, rank_tol: f64) -> Result<(SymMatrix, usize), SymlinError> {
    let eig = eigen_sym(a)?;
    let n = a.n;
    let threshold = rank_tol * eig.lambda_max().max(0.0);
    let mut kernel_dim = 0usize;
    let inv: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| {
            if l > threshold && l > 0.0 {
                1.0 / l
            } else {
                kernel_dim += 1;
                0.0
            }
        })
        .collect();
    let q = &eig.eigenvectors;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for (k, &w) in inv.iter().enumerate() {
                if w != 0.0 {
                    acc += q.get(i, k) * w * q.get(j, k);
                }
            }
            data[i * n + j] = acc;
            data[j * n + i] = acc;
        }
    }
    Ok((SymMatrix { n, data }, kernel_dim))
}

/// Result of the kernel-deflated generalized eigenproblem.
#[derive(Debug, Clone)]
pub struct GenEigenMax {
    pub lambda_max: f64,
    /// Unit eigenvector in the original coordinates, inside `range(M)`.
    pub vector: Vec<f64>,
    /// Dimension of the deflated kernel of `M`.
    pub kernel_dim: usize,
}

/// Largest `λ` of `B·x = λ·M·x` restricted to the range of the positive
/// semidefinite matrix `M`.
///
/// The kernel of `M` is deflated through the spectral decomposition; on
/// the retained subspace the pencil reduces to the standard symmetric
/// problem `M^{-1/2}·B·M^{-1/2}`. If `B` (assumed PSD) carries energy on
/// the kernel of `M` the pencil is inconsistent and an error is raised.
pub fn gen_eigen_max(b: &SymMatrix, m: &SymMatrix, rank_tol: f64) -> Result<GenEigenMax, SymlinError> {
    if b.n != m.n {
        return Err(SymlinError::DimensionMismatch { left: b.n, right: m.n });
    }
    let n = m.n;
    let eig_m = eigen_sym(m)?;
    let lambda_max_m = eig_m.lambda_max();
    if lambda_max_m <= 0.0 {
        // M vanishes: nothing to restrict to
        if eig_m.lambda_min() < -rank_tol * eig_m.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs())) {
            return Err(SymlinError::Indefinite {
                pivot: 0,
                value: eig_m.lambda_min(),
            });
        }
        return Err(SymlinError::EmptyPencil);
    }
    if eig_m.lambda_min() < -rank_tol * lambda_max_m {
        return Err(SymlinError::Indefinite {
            pivot: 0,
            value: eig_m.lambda_min(),
        });
    }
    let threshold = rank_tol * lambda_max_m;
    let kept: Vec<usize> = (0..n).filter(|&i| eig_m.eigenvalues[i] > threshold).collect();
    let kernel: Vec<usize> = (0..n).filter(|&i| eig_m.eigenvalues[i] <= threshold).collect();
    if kept.is_empty() {
        return Err(SymlinError::EmptyPencil);
    }
    let kernel_dim = kernel.len();

    // For PSD B, energy on N(M) means the sup is unbounded there.
    let scale_b = b.frobenius_norm();
    if scale_b > 0.0 {
        for &k in &kernel {
            let qk = eig_m.eigenvectors.column(k);
            let energy = b.quad_form(&qk).abs();
            if energy > 1e-8 * scale_b {
                return Err(SymlinError::InconsistentPencil {
                    energy,
                    scale: scale_b,
                });
            }
        }
    }

    let k = kept.len();
    // S = Q1 · D^{-1/2}: maps reduced coordinates to original ones
    let mut s = Matrix::zeros(n, k);
    for (col, &idx) in kept.iter().enumerate() {
        let d = eig_m.eigenvalues[idx].sqrt();
        for row in 0..n {
            s.set(row, col, eig_m.eigenvectors.get(row, idx) / d);
        }
    }
    let c = SymMatrix::symmetrized(&s.transpose().mul(&b.to_matrix()).mul(&s));
    let eig_c = eigen_sym(&c)?;
    let lambda_max = eig_c.lambda_max();
    let w = eig_c.eigenvectors.column(k - 1);
    let mut x = s.matvec(&w);
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in &mut x {
            *v /= norm;
        }
    }
    Ok(GenEigenMax {
        lambda_max,
        vector: x,
        kernel_dim,
    })
}
