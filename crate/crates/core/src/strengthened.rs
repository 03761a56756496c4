//! Optimal strengthened-CBS constant for block-partitioned SPSD matrices.
//!
//! For `A` split by a partition into blocks `A₁₁, A₁₂, A₂₂`, the smallest
//! constant γ with `|uᵀAv| ≤ γ·√(uᵀAu)·√(vᵀAv)` over the coordinate
//! subspaces `U`, `V` satisfies
//!
//! ```text
//! γ² = sup (uᵀAv)² / ((uᵀAu)(vᵀAv)).
//! ```
//!
//! Maximizing over `u` for fixed `v` turns the sup into the largest
//! eigenvalue of the pencil `A₂₁A₁₁⁺A₁₂·v = λ·A₂₂·v` on the range of
//! `A₂₂`; [`gamma_exact`] solves that pencil. Two independent estimators
//! serve as oracles: [`gamma_alternating`] (coordinate-wise maximization,
//! nondecreasing per half-step) and [`gamma_sampling`] (a Monte-Carlo
//! lower bound over random unit pairs with a counter-based deterministic
//! stream).
//!
//! Kernel handling: for an SPSD `A`, kernel vectors of `A₁₁` annihilate
//! `A₁₂` as well, so deflating `N(A₁₁)` inside the pseudo-inverse and
//! `N(A₂₂)` inside the pencil preserves the sup. Both kernels are
//! deflated symmetrically since the sup formula is symmetric in the two
//! blocks.

use thiserror::Error;

use crate::stream;
use crate::symlin::{self, Matrix, SymMatrix, SymlinError, DEFAULT_RANK_TOL};
use crate::vectorcore::RealVector;

/// γ² this close to 1 is flagged: the deflated energy subspaces nearly
/// intersect and the strengthened inequality degenerates.
pub const NEAR_UNITY_TOL: f64 = 1e-8;

/// Relative PSD tolerance on the smallest eigenvalue of the input.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GammaError {
    #[error(transparent)]
    Symlin(#[from] SymlinError),
    #[error("partition index {index} is out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("partition index {index} appears in both blocks or twice")]
    DuplicateIndex { index: usize },
    #[error("partition must cover all {n} indices; {covered} covered")]
    NotCovering { covered: usize, n: usize },
    #[error("both partition blocks must be nonempty")]
    EmptyBlock,
    #[error("matrix is not positive semidefinite: lambda_min = {lambda_min:.3e}, lambda_max = {lambda_max:.3e}")]
    NotPositiveSemidefinite { lambda_min: f64, lambda_max: f64 },
    #[error("partition dimension {partition} does not match matrix dimension {matrix}")]
    DimensionMismatch { partition: usize, matrix: usize },
}

/// Disjoint index split `(U, V)` covering `0..n`, both blocks nonempty.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPartition {
    u: Vec<usize>,
    v: Vec<usize>,
    n: usize,
}

impl BlockPartition {
    pub fn new(u: Vec<usize>, v: Vec<usize>, n: usize) -> Result<Self, GammaError> {
        if u.is_empty() || v.is_empty() {
            return Err(GammaError::EmptyBlock);
        }
        let mut seen = vec![false; n];
        for &i in u.iter().chain(v.iter()) {
            if i >= n {
                return Err(GammaError::IndexOutOfRange { index: i, n });
            }
            if seen[i] {
                return Err(GammaError::DuplicateIndex { index: i });
            }
            seen[i] = true;
        }
        let covered = seen.iter().filter(|&&s| s).count();
        if covered != n {
            return Err(GammaError::NotCovering { covered, n });
        }
        Ok(Self { u, v, n })
    }

    /// Leading `k` indices against the rest.
    pub fn split_at(k: usize, n: usize) -> Result<Self, GammaError> {
        Self::new((0..k).collect(), (k..n).collect(), n)
    }

    pub fn u_indices(&self) -> &[usize] {
        &self.u
    }

    pub fn v_indices(&self) -> &[usize] {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The same split with the roles of `U` and `V` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            u: self.v.clone(),
            v: self.u.clone(),
            n: self.n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaMethod {
    Eigen,
    Alternating,
    Sampling,
}

impl GammaMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            GammaMethod::Eigen => "eigen",
            GammaMethod::Alternating => "alternating",
            GammaMethod::Sampling => "sampling",
        }
    }
}

/// Solver diagnostics carried alongside γ.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaDiagnostics {
    /// False when the alternating iteration hit its cap before settling.
    pub converged: bool,
    pub iterations: usize,
    pub trials: u64,
    pub seed: u64,
    /// γ² within [`NEAR_UNITY_TOL`] of 1.
    pub near_unity: bool,
    /// Deflation removed every direction; γ is 0 by convention.
    pub empty_effective_subspace: bool,
    /// Free-form origin note (form, material, geometry hash).
    pub context: Option<String>,
}

impl Default for GammaDiagnostics {
    fn default() -> Self {
        Self {
            converged: true,
            iterations: 0,
            trials: 0,
            seed: 0,
            near_unity: false,
            empty_effective_subspace: false,
            context: None,
        }
    }
}

/// γ² with its extremal pair and kernel bookkeeping.
#[derive(Debug, Clone)]
pub struct GammaResult {
    pub gamma2: f64,
    pub gamma: f64,
    /// Extremal `u`, embedded in full coordinates (zero outside `U`).
    pub u_star: RealVector,
    /// Extremal `v`, embedded in full coordinates (zero outside `V`).
    pub v_star: RealVector,
    pub kernel_dim_u: usize,
    pub kernel_dim_v: usize,
    pub method: GammaMethod,
    pub diagnostics: GammaDiagnostics,
}

fn embed(full_len: usize, idx: &[usize], values: &[f64]) -> RealVector {
    let mut out = vec![0.0; full_len];
    for (k, &i) in idx.iter().enumerate() {
        out[i] = values[k];
    }
    RealVector::new(out).expect("finite embedding")
}

fn finalize(
    gamma2_raw: f64,
    part: &BlockPartition,
    u: &[f64],
    v: &[f64],
    kernel_dim_u: usize,
    kernel_dim_v: usize,
    method: GammaMethod,
    mut diagnostics: GammaDiagnostics,
) -> GammaResult {
    let gamma2 = gamma2_raw.max(0.0);
    diagnostics.near_unity = gamma2 > 1.0 - NEAR_UNITY_TOL;
    GammaResult {
        gamma2,
        gamma: gamma2.sqrt(),
        u_star: embed(part.n, &part.u, u),
        v_star: embed(part.n, &part.v, v),
        kernel_dim_u,
        kernel_dim_v,
        method,
        diagnostics,
    }
}

struct Blocks {
    a11: SymMatrix,
    a12: Matrix,
    a22: SymMatrix,
}

fn split_blocks(a: &SymMatrix, part: &BlockPartition) -> Result<Blocks, GammaError> {
    if part.n != a.dim() {
        return Err(GammaError::DimensionMismatch {
            partition: part.n,
            matrix: a.dim(),
        });
    }
    Ok(Blocks {
        a11: a.principal(&part.u),
        a12: a.block(&part.u, &part.v),
        a22: a.principal(&part.v),
    })
}

/// PSD gate; returns λ_max as the matrix scale (0 for the zero matrix).
fn check_psd(a: &SymMatrix) -> Result<f64, GammaError> {
    let eig = symlin::eigen_sym(a)?;
    let lambda_max = eig.lambda_max();
    let lambda_min = eig.lambda_min();
    let scale = lambda_max.abs().max(lambda_min.abs());
    if lambda_min < -PSD_TOL * scale {
        return Err(GammaError::NotPositiveSemidefinite { lambda_min, lambda_max });
    }
    Ok(lambda_max.max(0.0))
}

/// Exact γ² from the generalized eigenproblem
/// `A₂₁A₁₁⁺A₁₂·v = λ·A₂₂·v` with both block kernels deflated.
pub fn gamma_exact(a: &SymMatrix, part: &BlockPartition) -> Result<GammaResult, GammaError> {
    let blocks = split_blocks(a, part)?;
    let scale = check_psd(a)?;
    if scale == 0.0 {
        // zero matrix: every direction is kernel, γ = 0 by convention
        let mut d = GammaDiagnostics::default();
        d.empty_effective_subspace = true;
        return Ok(finalize(
            0.0,
            part,
            &vec![0.0; part.u.len()],
            &vec![0.0; part.v.len()],
            part.u.len(),
            part.v.len(),
            GammaMethod::Eigen,
            d,
        ));
    }

    let (a11_pinv, kernel_dim_u) = symlin::pseudo_inverse(&blocks.a11, DEFAULT_RANK_TOL)?;
    let a12 = &blocks.a12;
    let b = SymMatrix::symmetrized(&a12.transpose().mul(&a11_pinv.to_matrix()).mul(a12));

    match symlin::gen_eigen_max(&b, &blocks.a22, DEFAULT_RANK_TOL) {
        Ok(g) => {
            let u_red = a11_pinv.matvec(&a12.matvec(&g.vector));
            Ok(finalize(
                g.lambda_max,
                part,
                &u_red,
                &g.vector,
                kernel_dim_u,
                g.kernel_dim,
                GammaMethod::Eigen,
                GammaDiagnostics::default(),
            ))
        }
        Err(SymlinError::EmptyPencil) => {
            let mut d = GammaDiagnostics::default();
            d.empty_effective_subspace = true;
            Ok(finalize(
                0.0,
                part,
                &vec![0.0; part.u.len()],
                &vec![0.0; part.v.len()],
                kernel_dim_u,
                part.v.len(),
                GammaMethod::Eigen,
                d,
            ))
        }
        Err(e) => Err(GammaError::Symlin(e)),
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

fn ratio(blocks: &Blocks, u: &[f64], v: &[f64], floor: f64) -> Option<f64> {
    let du = blocks.a11.quad_form(u);
    let dv = blocks.a22.quad_form(v);
    if du <= floor || dv <= floor {
        return None;
    }
    let num = u
        .iter()
        .zip(blocks.a12.matvec(v).iter())
        .map(|(a, b)| a * b)
        .sum::<f64>();
    Some((num * num) / (du * dv))
}

/// One alternating-maximization run from the start vector `v0` on `V`.
///
/// Each half-step solves the block normal equations exactly
/// (`u ← A₁₁⁺A₁₂v`, then `v ← A₂₂⁺A₂₁u`), so the Rayleigh ratio is
/// nondecreasing; iteration stops when its relative change drops below
/// `tol` or after `max_iter` rounds (flagged unconverged).
pub fn gamma_alternating_from(
    a: &SymMatrix,
    part: &BlockPartition,
    v0: &[f64],
    max_iter: usize,
    tol: f64,
) -> Result<GammaResult, GammaError> {
    let blocks = split_blocks(a, part)?;
    let scale = check_psd(a)?;
    let (a11_pinv, kernel_dim_u) = symlin::pseudo_inverse(&blocks.a11, DEFAULT_RANK_TOL)?;
    let (a22_pinv, kernel_dim_v) = symlin::pseudo_inverse(&blocks.a22, DEFAULT_RANK_TOL)?;
    let a21 = blocks.a12.transpose();
    let floor = DEFAULT_RANK_TOL * scale;

    let mut v = v0.to_vec();
    normalize(&mut v);
    let mut u = vec![0.0; part.u.len()];
    let mut best = 0.0f64;
    let mut best_pair = (u.clone(), v.clone());
    let mut prev = -1.0f64;
    let mut iterations = 0usize;
    let mut converged = false;

    for it in 0..max_iter {
        iterations = it + 1;
        u = a11_pinv.matvec(&blocks.a12.matvec(&v));
        if normalize(&mut u) == 0.0 {
            // v is A-orthogonal to the whole coarse block
            best = best.max(0.0);
            converged = true;
            break;
        }
        v = a22_pinv.matvec(&a21.matvec(&u));
        if normalize(&mut v) == 0.0 {
            converged = true;
            break;
        }
        if let Some(r) = ratio(&blocks, &u, &v, floor) {
            if r > best {
                best = r;
                best_pair = (u.clone(), v.clone());
            }
            if (r - prev).abs() <= tol * r.abs().max(1e-30) {
                converged = true;
                break;
            }
            prev = r;
        } else {
            converged = true;
            break;
        }
    }

    let mut d = GammaDiagnostics {
        converged,
        iterations,
        ..GammaDiagnostics::default()
    };
    if scale == 0.0 {
        d.empty_effective_subspace = true;
    }
    Ok(finalize(
        best,
        part,
        &best_pair.0,
        &best_pair.1,
        kernel_dim_u,
        kernel_dim_v,
        GammaMethod::Alternating,
        d,
    ))
}

/// Alternating maximization from a few deterministic starts; the best
/// stationary ratio wins.
pub fn gamma_alternating(
    a: &SymMatrix,
    part: &BlockPartition,
    max_iter: usize,
    tol: f64,
) -> Result<GammaResult, GammaError> {
    let nv = part.v.len();
    let ramp: Vec<f64> = (0..nv).map(|i| 1.0 + 0.1 * (i as f64 + 1.0) / nv as f64).collect();
    let alternating: Vec<f64> = (0..nv)
        .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 } * (1.0 + 0.05 * i as f64))
        .collect();
    let mut wave: Vec<f64> = (0..nv).map(|i| ((i as f64 + 1.0) * 0.7).sin() + 0.2).collect();
    if wave.iter().all(|x| x.abs() < 1e-12) {
        wave = ramp.clone();
    }

    let mut best: Option<GammaResult> = None;
    for start in [ramp, alternating, wave] {
        let r = gamma_alternating_from(a, part, &start, max_iter, tol)?;
        best = Some(match best {
            Some(b) if b.gamma2 >= r.gamma2 => b,
            _ => r,
        });
    }
    Ok(best.expect("at least one start"))
}

/// Monte-Carlo lower bound: the best ratio over `trials` random unit
/// pairs, one deterministic stream per trial.
pub fn gamma_sampling(
    a: &SymMatrix,
    part: &BlockPartition,
    trials: u64,
    seed: u64,
) -> Result<GammaResult, GammaError> {
    let blocks = split_blocks(a, part)?;
    let scale = check_psd(a)?;
    let floor = DEFAULT_RANK_TOL * scale;
    let (nu, nv) = (part.u.len(), part.v.len());

    let mut best = 0.0f64;
    let mut best_pair = (vec![0.0; nu], vec![0.0; nv]);
    for t in 0..trials {
        let mut rng = stream::rng(seed, t);
        let mut u: Vec<f64> = (0..nu).map(|_| stream::normal(&mut rng)).collect();
        let mut v: Vec<f64> = (0..nv).map(|_| stream::normal(&mut rng)).collect();
        normalize(&mut u);
        normalize(&mut v);
        if let Some(r) = ratio(&blocks, &u, &v, floor) {
            if r > best {
                best = r;
                best_pair = (u, v);
            }
        }
    }

    let d = GammaDiagnostics {
        trials,
        seed,
        ..GammaDiagnostics::default()
    };
    Ok(finalize(
        best,
        part,
        &best_pair.0,
        &best_pair.1,
        0,
        0,
        GammaMethod::Sampling,
        d,
    ))
}

/// Verifies `|uᵀAv| ≤ γ·√(uᵀAu)·√(vᵀAv) + 1e-10·‖A‖_F` on `trials`
/// sampled pairs for the constant carried by `g`.
pub fn strengthened_check(
    a: &SymMatrix,
    part: &BlockPartition,
    g: &GammaResult,
    trials: u64,
) -> Result<bool, GammaError> {
    let blocks = split_blocks(a, part)?;
    let slack = 1e-10 * a.frobenius_norm();
    let seed = g.diagnostics.seed ^ 0x53c5_11ab_0f2d_9e71;
    let (nu, nv) = (part.u.len(), part.v.len());
    for t in 0..trials {
        let mut rng = stream::rng(seed, t);
        let mut u: Vec<f64> = (0..nu).map(|_| stream::normal(&mut rng)).collect();
        let mut v: Vec<f64> = (0..nv).map(|_| stream::normal(&mut rng)).collect();
        normalize(&mut u);
        normalize(&mut v);
        let num = u
            .iter()
            .zip(blocks.a12.matvec(&v).iter())
            .map(|(a, b)| a * b)
            .sum::<f64>()
            .abs();
        let du = blocks.a11.quad_form(&u).max(0.0);
        let dv = blocks.a22.quad_form(&v).max(0.0);
        if num > g.gamma * du.sqrt() * dv.sqrt() + slack {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symlin::Matrix;

    fn sym(n: usize, entries: &[f64]) -> SymMatrix {
        SymMatrix::from_rows(n, entries.to_vec()).unwrap()
    }

    fn random_spd(n: usize, seed: u64) -> SymMatrix {
        let mut rng = stream::rng(seed, 900);
        let g = Matrix::from_rows(
            n,
            n,
            (0..n * n).map(|_| stream::uniform(&mut rng, -1.0, 1.0)).collect(),
        );
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = if i == j { 0.05 * n as f64 } else { 0.0 };
                for k in 0..n {
                    acc += g.get(k, i) * g.get(k, j);
                }
                data[i * n + j] = acc;
            }
        }
        SymMatrix::from_rows(n, data).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(BlockPartition::new(vec![0, 1], vec![2, 3], 4).is_ok());
        assert!(matches!(
            BlockPartition::new(vec![], vec![0], 1),
            Err(GammaError::EmptyBlock)
        ));
        assert!(matches!(
            BlockPartition::new(vec![0, 1], vec![1, 2], 3),
            Err(GammaError::DuplicateIndex { index: 1 })
        ));
        assert!(matches!(
            BlockPartition::new(vec![0], vec![5], 3),
            Err(GammaError::IndexOutOfRange { index: 5, n: 3 })
        ));
        assert!(matches!(
            BlockPartition::new(vec![0], vec![2], 3),
            Err(GammaError::NotCovering { covered: 2, n: 3 })
        ));
    }

    #[test]
    fn block_diagonal_matrix_has_gamma_zero() {
        let a = sym(4, &[
            2.0, 0.5, 0.0, 0.0, //
            0.5, 1.0, 0.0, 0.0, //
            0.0, 0.0, 3.0, 0.2, //
            0.0, 0.0, 0.2, 1.5,
        ]);
        let part = BlockPartition::split_at(2, 4).unwrap();
        let g = gamma_exact(&a, &part).unwrap();
        assert!(g.gamma2 < 1e-14);

        let ga = gamma_alternating(&a, &part, 100, 1e-12).unwrap();
        assert!(ga.gamma2 < 1e-14);

        let gs = gamma_sampling(&a, &part, 500, 7).unwrap();
        assert!(gs.gamma2 < 1e-14);
    }

    #[test]
    fn coupled_2x2_gives_c_squared() {
        let a = sym(2, &[1.0, 0.5, 0.5, 1.0]);
        let part = BlockPartition::split_at(1, 2).unwrap();

        let g = gamma_exact(&a, &part).unwrap();
        assert!((g.gamma2 - 0.25).abs() < 1e-12);
        assert!((g.gamma - 0.5).abs() < 1e-12);

        let ga = gamma_alternating(&a, &part, 100, 1e-14).unwrap();
        assert!((ga.gamma2 - 0.25).abs() < 1e-12);

        // the 1-dim ratio is constant, so any sample attains it
        let gs = gamma_sampling(&a, &part, 10_000, 3).unwrap();
        assert!((gs.gamma2 - 0.25).abs() < 1e-3);
        assert!(gs.gamma2 <= g.gamma2 + 1e-12);
    }

    #[test]
    fn estimator_ordering_and_certificate() {
        for seed in 0..12u64 {
            let n = 4 + (seed as usize % 5);
            let a = random_spd(n, seed);
            let k = 1 + (seed as usize % (n - 1));
            let part = BlockPartition::split_at(k, n).unwrap();

            let ge = gamma_exact(&a, &part).unwrap();
            let ga = gamma_alternating(&a, &part, 500, 1e-13).unwrap();
            let gs = gamma_sampling(&a, &part, 2_000, seed).unwrap();

            assert!(ge.gamma2 >= -1e-15 && ge.gamma2 <= 1.0 + 1e-10, "gamma2 {}", ge.gamma2);
            assert!(gs.gamma2 <= ga.gamma2 + 1e-10, "sampling above alternating");
            assert!(ga.gamma2 <= ge.gamma2 + 1e-10, "alternating above exact");
            assert!(
                (ga.gamma2 - ge.gamma2).abs() <= 1e-8 * ge.gamma2.max(1e-8),
                "alternating {} vs exact {}",
                ga.gamma2,
                ge.gamma2
            );

            // extremal-pair certificate
            let du = a.quad_form(ge.u_star.as_slice());
            let dv = a.quad_form(ge.v_star.as_slice());
            if du > 0.0 && dv > 0.0 {
                let num = a.bilinear(ge.u_star.as_slice(), ge.v_star.as_slice());
                let attained = num * num / (du * dv);
                assert!(
                    (attained - ge.gamma2).abs() <= 1e-8 * ge.gamma2.max(1e-8),
                    "certificate {} vs {}",
                    attained,
                    ge.gamma2
                );
            }

            // the defining inequality with the computed constant
            assert!(strengthened_check(&a, &part, &ge, 2_000).unwrap());

            // a halved constant must fail when there is real coupling
            if ge.gamma2 > 1e-6 {
                let mut halved = ge.clone();
                halved.gamma /= 2.0;
                halved.gamma2 = halved.gamma * halved.gamma;
                assert!(!strengthened_check(&a, &part, &halved, 2_000).unwrap());
            }

            // γ = 1 is the classical CBS inequality in the A-inner-product
            let mut classical = ge.clone();
            classical.gamma = 1.0;
            classical.gamma2 = 1.0;
            assert!(strengthened_check(&a, &part, &classical, 2_000).unwrap());
        }
    }

    #[test]
    fn swap_and_block_scaling_invariance() {
        for seed in 50..56u64 {
            let n = 6;
            let a = random_spd(n, seed);
            let part = BlockPartition::split_at(3, n).unwrap();
            let ge = gamma_exact(&a, &part).unwrap();

            let swapped = gamma_exact(&a, &part.swapped()).unwrap();
            assert!(
                (ge.gamma2 - swapped.gamma2).abs() <= 1e-10 * ge.gamma2.max(1e-10),
                "swap changed gamma2: {} vs {}",
                ge.gamma2,
                swapped.gamma2
            );

            // block-diagonal congruence S = diag(S_u, S_v)
            let mut rng = stream::rng(seed, 77);
            let mut s = Matrix::identity(n);
            for i in 0..3 {
                for j in 0..3 {
                    s.set(i, j, s.get(i, j) + 0.4 * stream::uniform(&mut rng, -1.0, 1.0));
                    s.set(3 + i, 3 + j, s.get(3 + i, 3 + j) + 0.4 * stream::uniform(&mut rng, -1.0, 1.0));
                }
            }
            let scaled = SymMatrix::from_rows(n, {
                let sas = s.transpose().mul(&a.to_matrix()).mul(&s);
                let mut d = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        d[i * n + j] = 0.5 * (sas.get(i, j) + sas.get(j, i));
                    }
                }
                d
            })
            .unwrap();
            let gsc = gamma_exact(&scaled, &part).unwrap();
            assert!(
                (ge.gamma2 - gsc.gamma2).abs() <= 1e-8 * ge.gamma2.max(1e-8),
                "block scaling changed gamma2: {} vs {}",
                ge.gamma2,
                gsc.gamma2
            );
        }
    }

    #[test]
    fn indefinite_matrix_is_rejected() {
        let a = sym(2, &[1.0, 0.0, 0.0, -1.0]);
        let part = BlockPartition::split_at(1, 2).unwrap();
        assert!(matches!(
            gamma_exact(&a, &part),
            Err(GammaError::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn zero_matrix_gives_gamma_zero_with_diagnostic() {
        let a = sym(3, &[0.0; 9]);
        let part = BlockPartition::split_at(1, 3).unwrap();
        let g = gamma_exact(&a, &part).unwrap();
        assert_eq!(g.gamma2, 0.0);
        assert!(g.diagnostics.empty_effective_subspace);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let a = random_spd(6, 4242);
        let part = BlockPartition::split_at(2, 6).unwrap();
        let g1 = gamma_sampling(&a, &part, 2_000, 99).unwrap();
        let g2 = gamma_sampling(&a, &part, 2_000, 99).unwrap();
        assert_eq!(g1.gamma2.to_bits(), g2.gamma2.to_bits());
        let g3 = gamma_sampling(&a, &part, 2_000, 100).unwrap();
        assert!(g1.gamma2 != g3.gamma2 || g1.v_star != g3.v_star);
    }

    #[test]
    fn kernel_dimensions_are_reported() {
        // A11 rank 1 (2x2), A22 SPD: one deflated dimension in U
        let a = sym(4, &[
            1.0, 1.0, 0.3, 0.0, //
            1.0, 1.0, 0.3, 0.0, //
            0.3, 0.3, 2.0, 0.1, //
            0.0, 0.0, 0.1, 1.0,
        ]);
        let part = BlockPartition::split_at(2, 4).unwrap();
        let g = gamma_exact(&a, &part).unwrap();
        assert_eq!(g.kernel_dim_u, 1);
        assert_eq!(g.kernel_dim_v, 0);
        assert!(g.gamma2 <= 1.0 + 1e-10);
    }
}
