//! Finite-dimensional Euclidean kernel: inner product, norms, means, the
//! CBS gap with collinearity detection, angles, and the Lagrange-identity
//! oracle.
//!
//! All operations are pure functions of immutable inputs and accumulate
//! left to right in double precision, so results are reproducible across
//! runs and threads.
//!
//! Everything here is finite-dimensional. The classical consequence for
//! infinite sequences — square-summable `x` and `y` have absolutely
//! summable products `Σ|xᵢyᵢ| ≤ ‖x‖·‖y‖ < ∞` — carries over verbatim but
//! has no finite test; it is noted here and not modelled.

use thiserror::Error;

/// Relative tolerance for collinearity detection in [`cbs_gap`], applied
/// to the scale `‖x‖²·‖y‖²`.
pub const EQUALITY_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VectorError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("vector must have at least one entry")]
    Empty,
    #[error("entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("angle is undefined for a zero vector")]
    ZeroVector,
    #[error("entry {index} is negative; means require nonnegative entries")]
    NegativeEntry { index: usize },
}

/// A finite real sequence of fixed length `n ≥ 1`.
///
/// Every entry is finite; the length is immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector {
    entries: Vec<f64>,
}

impl RealVector {
    pub fn new(entries: Vec<f64>) -> Result<Self, VectorError> {
        if entries.is_empty() {
            return Err(VectorError::Empty);
        }
        for (index, e) in entries.iter().enumerate() {
            if !e.is_finite() {
                return Err(VectorError::NonFinite { index });
            }
        }
        Ok(Self { entries })
    }

    pub fn from_slice(entries: &[f64]) -> Result<Self, VectorError> {
        Self::new(entries.to_vec())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length ≥ 1 by construction
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.entries.iter()
    }
}

fn check_same_len(x: &RealVector, y: &RealVector) -> Result<(), VectorError> {
    if x.len() != y.len() {
        return Err(VectorError::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

/// `x · y = Σ xᵢyᵢ`, accumulated left to right.
pub fn inner_product(x: &RealVector, y: &RealVector) -> Result<f64, VectorError> {
    check_same_len(x, y)?;
    let mut acc = 0.0;
    for (a, b) in x.iter().zip(y.iter()) {
        acc += a * b;
    }
    Ok(acc)
}

/// Euclidean norm `‖x‖ = √(x·x)`.
pub fn norm(x: &RealVector) -> f64 {
    let mut acc = 0.0;
    for a in x.iter() {
        acc += a * a;
    }
    acc.sqrt()
}

/// CBS gap `‖x‖²‖y‖² − (x·y)²` together with a collinearity flag.
///
/// The gap is nonnegative up to rounding; the flag is true iff the gap is
/// below [`EQUALITY_TOL`] relative to `‖x‖²‖y‖²`. A zero vector on either
/// side reports equality (the inequality degenerates to `0 ≤ 0`).
pub fn cbs_gap(x: &RealVector, y: &RealVector) -> Result<(f64, bool), VectorError> {
    check_same_len(x, y)?;
    let nx2 = inner_product(x, x)?;
    let ny2 = inner_product(y, y)?;
    let dot = inner_product(x, y)?;
    let scale = nx2 * ny2;
    let gap = scale - dot * dot;
    let equality = gap <= EQUALITY_TOL * scale;
    Ok((gap, equality))
}

/// The Lagrange double sum `Σᵢ Σⱼ (xᵢyⱼ − xⱼyᵢ)²`.
///
/// Equals twice the CBS gap and is an exact sum of squares, which makes it
/// the independent oracle for [`cbs_gap`].
pub fn lagrange_gap(x: &RealVector, y: &RealVector) -> Result<f64, VectorError> {
    check_same_len(x, y)?;
    let xs = x.as_slice();
    let ys = y.as_slice();
    let mut acc = 0.0;
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            let d = xs[i] * ys[j] - xs[j] * ys[i];
            acc += d * d;
        }
    }
    Ok(acc)
}

/// Angle `θ ∈ [0, π]` between two nonzero vectors.
///
/// The cosine ratio is clamped to `[−1, 1]` before `acos` so that rounding
/// in the norms can never produce NaN.
pub fn angle(x: &RealVector, y: &RealVector) -> Result<f64, VectorError> {
    check_same_len(x, y)?;
    let nx = norm(x);
    let ny = norm(y);
    if nx == 0.0 || ny == 0.0 {
        return Err(VectorError::ZeroVector);
    }
    let ratio = (inner_product(x, y)? / (nx * ny)).clamp(-1.0, 1.0);
    Ok(ratio.acos())
}

/// Both sides of the triangle inequality: `(‖x+y‖, ‖x‖+‖y‖)`.
pub fn triangle_check(x: &RealVector, y: &RealVector) -> Result<(f64, f64), VectorError> {
    check_same_len(x, y)?;
    let sum: Vec<f64> = x.iter().zip(y.iter()).map(|(a, b)| a + b).collect();
    let lhs = RealVector::new(sum).map(|v| norm(&v))?;
    Ok((lhs, norm(x) + norm(y)))
}

/// Arithmetic, geometric and harmonic means of a nonnegative vector.
///
/// `hm` is reported only when every entry is strictly positive; a zero
/// entry yields `gm = 0` (limit convention) and no harmonic mean.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanChain {
    pub am: f64,
    pub gm: f64,
    pub hm: Option<f64>,
}

/// The mean chain `am ≥ gm ≥ hm` with equality iff all entries coincide.
///
/// The geometric mean is computed in the log domain for overflow safety.
pub fn mean_chain(a: &RealVector) -> Result<MeanChain, VectorError> {
    for (index, e) in a.iter().enumerate() {
        if *e < 0.0 {
            return Err(VectorError::NegativeEntry { index });
        }
    }
    let n = a.len() as f64;
    let mut sum = 0.0;
    let mut log_sum = 0.0;
    let mut inv_sum = 0.0;
    let mut has_zero = false;
    for e in a.iter() {
        sum += e;
        if *e == 0.0 {
            has_zero = true;
        } else {
            log_sum += e.ln();
            inv_sum += 1.0 / e;
        }
    }
    let am = sum / n;
    let gm = if has_zero { 0.0 } else { (log_sum / n).exp() };
    let hm = if has_zero { None } else { Some(n / inv_sum) };
    Ok(MeanChain { am, gm, hm })
}
