//! Weighted CBS-type inequality for the bilinear form
//!
//! ```text
//! ⟨x,y⟩ = (Σ pᵢ)(Σ pᵢxᵢyᵢ) − (Σ pᵢxᵢ)(Σ pᵢyᵢ),   pᵢ > 0,
//! ```
//!
//! in its discrete and quadrature-based integral versions. The form is
//! positive semidefinite with `⟨x,x⟩ = 0` exactly for constant vectors,
//! so the inequality `⟨x,y⟩ ≤ √⟨x,x⟩·√⟨y,y⟩` turns into an equality
//! precisely when some combination `a·x + b·y` is constant; the checks
//! detect that case and recover the combination by a least-squares fit.

use thiserror::Error;

use crate::integralineq::{IntegralError, SampledFunction};
use crate::vectorcore::{RealVector, VectorError};

/// Relative tolerance for the equality flag, applied to
/// `max(|lhs|, rhs, 1)`.
pub const EQUALITY_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightedError {
    #[error(transparent)]
    Vector(#[from] VectorError),
    #[error(transparent)]
    Integral(#[from] IntegralError),
    #[error("weight {index} is not finite")]
    NonFiniteWeight { index: usize },
    #[error("weight {index} is {value}; weights must be strictly positive")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("weight vector must have at least one entry")]
    Empty,
    #[error("dimension mismatch: weights {weights}, x {x}, y {y}")]
    LengthMismatch { weights: usize, x: usize, y: usize },
    #[error("weight sample {index} is {value}; p must be strictly positive on the grid")]
    NonPositiveWeightSample { index: usize, value: f64 },
}

/// Strictly positive, finite weights `p₁,…,pₙ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self, WeightedError> {
        if weights.is_empty() {
            return Err(WeightedError::Empty);
        }
        for (index, w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(WeightedError::NonFiniteWeight { index });
            }
            if *w <= 0.0 {
                return Err(WeightedError::NonPositiveWeight { index, value: *w });
            }
        }
        Ok(Self { weights })
    }

    pub fn from_slice(weights: &[f64]) -> Result<Self, WeightedError> {
        Self::new(weights.to_vec())
    }

    pub fn uniform(n: usize) -> Result<Self, WeightedError> {
        Self::new(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }
}

/// Outcome of a weighted CBS-type check.
///
/// `gap = rhs − lhs ≥ −tol·scale` with `scale = max(|lhs|, rhs, 1)`;
/// when `equality` is set, `combo = (a, b, c)` satisfies `a·x + b·y ≈ c·1`
/// with `a² + b² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPairReport {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub equality: bool,
    pub combo: Option<(f64, f64, f64)>,
}

fn check_lengths(p: &WeightVector, x: &RealVector, y: &RealVector) -> Result<(), WeightedError> {
    if p.len() != x.len() || x.len() != y.len() {
        return Err(WeightedError::LengthMismatch {
            weights: p.len(),
            x: x.len(),
            y: y.len(),
        });
    }
    Ok(())
}

// Evaluated in centered two-pass form: with x̄ₚ = Σpx/Σp,
//   (Σp)(Σpxy) − (Σpx)(Σpy) = (Σp)·Σ pᵢ(xᵢ−x̄ₚ)(yᵢ−ȳₚ)
// exactly, and the right-hand side avoids the catastrophic cancellation
// of the raw moments on near-constant inputs (the equality cases).
fn form_from_slices(p: &[f64], x: &[f64], y: &[f64]) -> f64 {
    let mut sp = 0.0;
    let mut spx = 0.0;
    let mut spy = 0.0;
    for i in 0..p.len() {
        sp += p[i];
        spx += p[i] * x[i];
        spy += p[i] * y[i];
    }
    let xbar = spx / sp;
    let ybar = spy / sp;
    let mut acc = 0.0;
    for i in 0..p.len() {
        acc += p[i] * (x[i] - xbar) * (y[i] - ybar);
    }
    sp * acc
}

/// `⟨x,y⟩ = (Σp)(Σpxy) − (Σpx)(Σpy)`.
///
/// Symmetric and bilinear in `(x, y)`; `⟨x,x⟩ ≥ 0` with zero exactly on
/// constant vectors.
pub fn weighted_form(p: &WeightVector, x: &RealVector, y: &RealVector) -> Result<f64, WeightedError> {
    check_lengths(p, x, y)?;
    Ok(form_from_slices(p.as_slice(), x.as_slice(), y.as_slice()))
}

/// Least-squares fit of `a·x + b·y = c·1` with `a² + b² = 1`.
///
/// Eliminating `c` from the Gram system of `[x, y, 1]` leaves the centered
/// 2×2 Gram matrix; its smallest eigenvector is the optimal `(a, b)` and
/// `c` follows from the means.
fn fit_constant_combo(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let xbar = sx / n;
    let ybar = sy / n;
    let (mut s11, mut s12, mut s22) = (0.0, 0.0, 0.0);
    for i in 0..x.len() {
        let dx = x[i] - xbar;
        let dy = y[i] - ybar;
        s11 += dx * dx;
        s12 += dx * dy;
        s22 += dy * dy;
    }

    // smallest eigenvector of [[s11, s12], [s12, s22]]
    let half_tr = 0.5 * (s11 + s22);
    let det = s11 * s22 - s12 * s12;
    let disc = (half_tr * half_tr - det).max(0.0).sqrt();
    let lambda_min = half_tr - disc;
    let (mut a, mut b) = if s12.abs() > 0.0 {
        // pick the component form with the larger residual for stability
        if (lambda_min - s22).abs() > (lambda_min - s11).abs() {
            (lambda_min - s22, s12)
        } else {
            (s12, lambda_min - s11)
        }
    } else if s11 <= s22 {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    };
    let len = (a * a + b * b).sqrt();
    if len > 0.0 {
        a /= len;
        b /= len;
    } else {
        a = 1.0;
        b = 0.0;
    }
    let c = (a * sx + b * sy) / n;
    (a, b, c)
}

fn pair_report(lhs: f64, qxx: f64, qyy: f64, x: &[f64], y: &[f64]) -> WeightedPairReport {
    let rhs = qxx.max(0.0).sqrt() * qyy.max(0.0).sqrt();
    let gap = rhs - lhs;
    let scale = lhs.abs().max(rhs).max(1.0);
    // the form itself may be negative; a constant combination exists
    // exactly when |⟨x,y⟩| attains the right-hand side
    let equality = rhs - lhs.abs() <= EQUALITY_TOL * scale;
    let combo = if equality { Some(fit_constant_combo(x, y)) } else { None };
    WeightedPairReport {
        lhs,
        rhs,
        gap,
        equality,
        combo,
    }
}

/// Weighted CBS-type inequality
/// `⟨x,y⟩ ≤ √⟨x,x⟩·√⟨y,y⟩` with equality detection.
pub fn weighted_cbs_check(
    p: &WeightVector,
    x: &RealVector,
    y: &RealVector,
) -> Result<WeightedPairReport, WeightedError> {
    check_lengths(p, x, y)?;
    let (ps, xs, ys) = (p.as_slice(), x.as_slice(), y.as_slice());
    Ok(pair_report(
        form_from_slices(ps, xs, ys),
        form_from_slices(ps, xs, xs),
        form_from_slices(ps, ys, ys),
        xs,
        ys,
    ))
}

fn integral_inputs<'a>(
    p: &'a SampledFunction,
    f: &'a SampledFunction,
    g: &'a SampledFunction,
) -> Result<(), WeightedError> {
    if !(p.same_grid(f) && f.same_grid(g)) {
        return Err(WeightedError::Integral(IntegralError::GridMismatch));
    }
    for (index, v) in p.values().iter().enumerate() {
        if *v <= 0.0 {
            return Err(WeightedError::NonPositiveWeightSample { index, value: *v });
        }
    }
    Ok(())
}

fn integral_form_values(p: &SampledFunction, f: &[f64], g: &[f64]) -> f64 {
    let rule = p.grid();
    let ps = p.values();
    let mut ip = 0.0;
    let mut ipf = 0.0;
    let mut ipg = 0.0;
    for (i, w) in rule.weights().iter().enumerate() {
        let wp = w * ps[i];
        ip += wp;
        ipf += wp * f[i];
        ipg += wp * g[i];
    }
    let fbar = ipf / ip;
    let gbar = ipg / ip;
    let mut acc = 0.0;
    for (i, w) in rule.weights().iter().enumerate() {
        acc += w * ps[i] * (f[i] - fbar) * (g[i] - gbar);
    }
    ip * acc
}

/// Quadrature version of the form: `∫p·∫pfg − ∫pf·∫pg`.
///
/// With node weights `wᵢ` this is exactly the discrete form on the
/// induced weights `p(tᵢ)wᵢ` and value vectors `f(tᵢ)`, `g(tᵢ)`.
pub fn integral_weighted_form(
    p: &SampledFunction,
    f: &SampledFunction,
    g: &SampledFunction,
) -> Result<f64, WeightedError> {
    integral_inputs(p, f, g)?;
    Ok(integral_form_values(p, f.values(), g.values()))
}

/// Integral CBS-type inequality with equality detection; equality means
/// some `α·f + β·g` is constant on the grid.
pub fn integral_weighted_cbs_check(
    p: &SampledFunction,
    f: &SampledFunction,
    g: &SampledFunction,
) -> Result<WeightedPairReport, WeightedError> {
    integral_inputs(p, f, g)?;
    let (fs, gs) = (f.values(), g.values());
    Ok(pair_report(
        integral_form_values(p, fs, gs),
        integral_form_values(p, fs, fs),
        integral_form_values(p, gs, gs),
        fs,
        gs,
    ))
}
