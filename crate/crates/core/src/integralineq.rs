//! Young, Hölder and Minkowski inequalities over a Gauss-Legendre
//! quadrature engine.
//!
//! Functions are represented by their samples at the nodes of a fixed
//! rule, so every operation is deterministic data-in/data-out. Because
//! the rules have strictly positive weights, the Hölder and Minkowski
//! checks are exact discrete inequalities at the node level: quadrature
//! error can move both sides but never produce a spurious violation
//! beyond rounding.

use std::sync::Arc;

use thiserror::Error;

/// Relative slack allowed on `rhs − lhs`; powers amplify rounding
/// compared with the plain CBS checks.
pub const GAP_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegralError {
    #[error("quadrature rule needs at least one node")]
    EmptyRule,
    #[error("invalid interval [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
    #[error("Newton iteration for node {index} did not converge")]
    NodeIterationFailed { index: usize },
    #[error("sample count {got} does not match node count {expected}")]
    SampleCountMismatch { got: usize, expected: usize },
    #[error("sample {index} is not finite")]
    NonFiniteSample { index: usize },
    #[error("functions are sampled on different grids")]
    GridMismatch,
    #[error("sample {index} is negative ({value}); this operation requires nonnegative samples")]
    NegativeSample { index: usize, value: f64 },
    #[error("negative scalar input {value}")]
    NegativeInput { value: f64 },
    #[error("exponents p={p}, q={q} are not conjugate (1/p + 1/q must be 1, both > 1)")]
    NotConjugate { p: f64, q: f64 },
    #[error("exponent p={p} must be > 1")]
    BadExponent { p: f64 },
}

/// Gauss-Legendre rule on `[a, b]`.
///
/// `order` is the degree of polynomial exactness (`2·points − 1`).
/// Nodes and weights come from Newton iteration on the Legendre
/// recurrence, converged to ~1e-15; all weights are strictly positive
/// and the nodes strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    order: u32,
    a: f64,
    b: f64,
}

impl QuadratureRule {
    pub fn gauss_legendre(points: usize, a: f64, b: f64) -> Result<Self, IntegralError> {
        if points == 0 {
            return Err(IntegralError::EmptyRule);
        }
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(IntegralError::BadInterval { a, b });
        }
        let n = points;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            // Chebyshev-based initial guess for the i-th root of P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut converged = false;
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-15 {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(IntegralError::NodeIterationFailed { index: i });
            }
            let (_, dp) = legendre_with_derivative(n, x);
            // roots come out in descending order of the cosine guess
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for i in 0..n {
            nodes[i] = mid + half * nodes[i];
            weights[i] *= half;
        }
        Ok(Self {
            nodes,
            weights,
            order: (2 * n - 1) as u32,
            a,
            b,
        })
    }

    /// Smallest Gauss-Legendre rule whose exactness degree is ≥ `order`.
    pub fn gauss_for_order(order: u32, a: f64, b: f64) -> Result<Self, IntegralError> {
        let points = ((order as usize) + 2) / 2;
        Self::gauss_legendre(points.max(1), a, b)
    }

    /// Default 16-point rule (exactness degree 31) on `[a, b]`.
    pub fn default_rule(a: f64, b: f64) -> Result<Self, IntegralError> {
        Self::gauss_legendre(16, a, b)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one node by construction
    }

    /// `Σ wᵢ·valuesᵢ`, left to right.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (w, v) in self.weights.iter().zip(values.iter()) {
            acc += w * v;
        }
        acc
    }

    pub fn integrate_fn(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for (w, x) in self.weights.iter().zip(self.nodes.iter()) {
            acc += w * f(*x);
        }
        acc
    }
}

/// `(P_n(x), P'_n(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Real function sampled at the nodes of one quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Arc<QuadratureRule>,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn from_values(grid: &Arc<QuadratureRule>, values: Vec<f64>) -> Result<Self, IntegralError> {
        if values.len() != grid.len() {
            return Err(IntegralError::SampleCountMismatch {
                got: values.len(),
                expected: grid.len(),
            });
        }
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(IntegralError::NonFiniteSample { index });
            }
        }
        Ok(Self {
            grid: Arc::clone(grid),
            values,
        })
    }

    pub fn from_fn(grid: &Arc<QuadratureRule>, f: impl Fn(f64) -> f64) -> Result<Self, IntegralError> {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self::from_values(grid, values)
    }

    pub fn grid(&self) -> &Arc<QuadratureRule> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn same_grid(&self, other: &SampledFunction) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    /// Quadrature of the sampled values.
    pub fn integrate(&self) -> f64 {
        self.grid.integrate(&self.values)
    }
}

fn check_shared_grid(fs: &[&SampledFunction]) -> Result<(), IntegralError> {
    for pair in fs.windows(2) {
        if !pair[0].same_grid(pair[1]) {
            return Err(IntegralError::GridMismatch);
        }
    }
    Ok(())
}

fn check_nonnegative(f: &SampledFunction) -> Result<(), IntegralError> {
    for (index, v) in f.values().iter().enumerate() {
        if *v < 0.0 {
            return Err(IntegralError::NegativeSample { index, value: *v });
        }
    }
    Ok(())
}

/// Conjugate exponents `p, q > 1` with `1/p + 1/q = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatePair {
    p: f64,
    q: f64,
}

impl ConjugatePair {
    pub fn new(p: f64, q: f64) -> Result<Self, IntegralError> {
        if !(p.is_finite() && q.is_finite()) || p <= 1.0 || q <= 1.0 {
            return Err(IntegralError::NotConjugate { p, q });
        }
        if (1.0 / p + 1.0 / q - 1.0).abs() > 1e-12 {
            return Err(IntegralError::NotConjugate { p, q });
        }
        Ok(Self { p, q })
    }

    /// The pair `(p, p/(p−1))`.
    pub fn from_p(p: f64) -> Result<Self, IntegralError> {
        if !p.is_finite() || p <= 1.0 {
            return Err(IntegralError::BadExponent { p });
        }
        Ok(Self { p, q: p / (p - 1.0) })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Young: `xy ≤ xᵖ/p + y^q/q` for `x, y ≥ 0`.
///
/// Returns `(lhs, rhs, equality)`; equality holds iff `xᵖ = y^q` up to
/// a relative tolerance.
pub fn young_check(x: f64, y: f64, c: &ConjugatePair) -> Result<(f64, f64, bool), IntegralError> {
    if x < 0.0 {
        return Err(IntegralError::NegativeInput { value: x });
    }
    if y < 0.0 {
        return Err(IntegralError::NegativeInput { value: y });
    }
    let xp = x.powf(c.p);
    let yq = y.powf(c.q);
    let lhs = x * y;
    let rhs = xp / c.p + yq / c.q;
    let equality = (xp - yq).abs() <= GAP_TOL * xp.max(yq).max(1e-300);
    Ok((lhs, rhs, equality))
}

fn lp_norm(f: &SampledFunction, p: f64) -> f64 {
    let powered: Vec<f64> = f.values().iter().map(|v| v.powf(p)).collect();
    f.grid().integrate(&powered).max(0.0).powf(1.0 / p)
}

/// Hölder: `∫fg ≤ (∫fᵖ)^{1/p}·(∫g^q)^{1/q}` for nonnegative samples.
///
/// Returns `(lhs, rhs, gap)` with `gap = rhs − lhs ≥ −tol`.
pub fn holder_check(
    f: &SampledFunction,
    g: &SampledFunction,
    c: &ConjugatePair,
) -> Result<(f64, f64, f64), IntegralError> {
    check_shared_grid(&[f, g])?;
    check_nonnegative(f)?;
    check_nonnegative(g)?;
    let prod: Vec<f64> = f.values().iter().zip(g.values()).map(|(a, b)| a * b).collect();
    let lhs = f.grid().integrate(&prod);
    let rhs = lp_norm(f, c.p) * lp_norm(g, c.q);
    Ok((lhs, rhs, rhs - lhs))
}

/// Minkowski: `‖f+g‖_p ≤ ‖f‖_p + ‖g‖_p` for nonnegative samples, `p > 1`.
pub fn minkowski_check(
    f: &SampledFunction,
    g: &SampledFunction,
    p: f64,
) -> Result<(f64, f64, f64), IntegralError> {
    if !p.is_finite() || p <= 1.0 {
        return Err(IntegralError::BadExponent { p });
    }
    check_shared_grid(&[f, g])?;
    check_nonnegative(f)?;
    check_nonnegative(g)?;
    let sum: Vec<f64> = f.values().iter().zip(g.values()).map(|(a, b)| a + b).collect();
    let fg = SampledFunction::from_values(f.grid(), sum)?;
    let lhs = lp_norm(&fg, p);
    let rhs = lp_norm(f, p) + lp_norm(g, p);
    Ok((lhs, rhs, rhs - lhs))
}

/// Integral CBS `∫fg ≤ √(∫f²)·√(∫g²)` as its own code path.
///
/// Kept separate from [`holder_check`] so the `p = q = 2` Hölder case has
/// an independent route to agree with.
pub fn integral_cbs_check(
    f: &SampledFunction,
    g: &SampledFunction,
) -> Result<(f64, f64, f64), IntegralError> {
    check_shared_grid(&[f, g])?;
    check_nonnegative(f)?;
    check_nonnegative(g)?;
    let prod: Vec<f64> = f.values().iter().zip(g.values()).map(|(a, b)| a * b).collect();
    let f2: Vec<f64> = f.values().iter().map(|a| a * a).collect();
    let g2: Vec<f64> = g.values().iter().map(|a| a * a).collect();
    let lhs = f.grid().integrate(&prod);
    let rhs = (f.grid().integrate(&f2).max(0.0)).sqrt() * (g.grid().integrate(&g2).max(0.0)).sqrt();
    Ok((lhs, rhs, rhs - lhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_rule(points: usize) -> Arc<QuadratureRule> {
        Arc::new(QuadratureRule::gauss_legendre(points, 0.0, 1.0).unwrap())
    }

    #[test]
    fn rule_shape_is_valid() {
        let q = QuadratureRule::gauss_legendre(7, -1.0, 2.5).unwrap();
        assert_eq!(q.len(), 7);
        assert_eq!(q.order(), 13);
        assert!(q.weights().iter().all(|w| *w > 0.0));
        assert!(q.nodes().windows(2).all(|p| p[0] < p[1]));
        assert!(q.nodes().iter().all(|x| (-1.0..=2.5).contains(x)));
        let total: f64 = q.weights().iter().sum();
        assert!((total - 3.5).abs() < 1e-13);
    }

    #[test]
    fn monomials_integrate_exactly_up_to_order() {
        for points in [1usize, 2, 3, 5, 8, 16] {
            let q = QuadratureRule::gauss_legendre(points, 0.0, 1.0).unwrap();
            for k in 0..=q.order() {
                let approx = q.integrate_fn(|x| x.powi(k as i32));
                let exact = 1.0 / (k as f64 + 1.0);
                assert!(
                    (approx - exact).abs() <= 1e-13 * exact.max(1.0),
                    "points={points} k={k}: {approx} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn gauss_for_order_meets_requested_degree() {
        for order in [1u32, 4, 8, 12, 16, 31] {
            let q = QuadratureRule::gauss_for_order(order, 0.0, 1.0).unwrap();
            assert!(q.order() >= order);
        }
    }

    #[test]
    fn rule_construction_rejects_bad_input() {
        assert!(matches!(
            QuadratureRule::gauss_legendre(0, 0.0, 1.0),
            Err(IntegralError::EmptyRule)
        ));
        assert!(matches!(
            QuadratureRule::gauss_legendre(4, 1.0, 1.0),
            Err(IntegralError::BadInterval { .. })
        ));
    }

    #[test]
    fn conjugate_pair_construction() {
        let c = ConjugatePair::from_p(3.0).unwrap();
        assert!((c.q() - 1.5).abs() < 1e-15);
        assert!((1.0 / c.p() + 1.0 / c.q() - 1.0).abs() < 1e-15);
        assert!(ConjugatePair::new(2.0, 2.0).is_ok());
        assert!(ConjugatePair::new(2.0, 3.0).is_err());
        assert!(ConjugatePair::from_p(1.0).is_err());
    }

    #[test]
    fn young_hand_values() {
        let c2 = ConjugatePair::new(2.0, 2.0).unwrap();
        let (lhs, rhs, eq) = young_check(1.0, 1.0, &c2).unwrap();
        assert_eq!((lhs, rhs, eq), (1.0, 1.0, true));

        let (lhs, rhs, eq) = young_check(2.0, 1.0, &c2).unwrap();
        assert_eq!((lhs, rhs), (2.0, 2.5));
        assert!(!eq);

        let s = 2f64.sqrt();
        let (lhs, rhs, eq) = young_check(s, s, &c2).unwrap();
        assert!((lhs - 2.0).abs() < 1e-15);
        assert!((rhs - 2.0).abs() < 1e-15);
        assert!(eq);

        assert!(young_check(-1.0, 1.0, &c2).is_err());
    }

    #[test]
    fn holder_hand_values() {
        let grid = unit_rule(8);
        let c2 = ConjugatePair::new(2.0, 2.0).unwrap();
        let one = SampledFunction::from_fn(&grid, |_| 1.0).unwrap();
        let (lhs, rhs, _) = holder_check(&one, &one, &c2).unwrap();
        assert!((lhs - 1.0).abs() < 1e-14);
        assert!((rhs - 1.0).abs() < 1e-14);

        let t = SampledFunction::from_fn(&grid, |x| x).unwrap();
        let (lhs, rhs, gap) = holder_check(&t, &one, &c2).unwrap();
        assert!((lhs - 0.5).abs() < 1e-14);
        assert!((rhs - (1f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!(gap >= -GAP_TOL);
    }

    #[test]
    fn minkowski_hand_values() {
        let grid = unit_rule(8);
        let t = SampledFunction::from_fn(&grid, |x| x).unwrap();
        let s = SampledFunction::from_fn(&grid, |x| 1.0 - x).unwrap();
        let (lhs, rhs, gap) = minkowski_check(&t, &s, 2.0).unwrap();
        assert!((lhs - 1.0).abs() < 1e-14);
        assert!((rhs - 2.0 * (1f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!(gap >= -GAP_TOL);

        let (lhs, rhs, _) = minkowski_check(&t, &t, 3.0).unwrap();
        assert!((lhs - rhs).abs() < 1e-13);

        let zero = SampledFunction::from_fn(&grid, |_| 0.0).unwrap();
        let (lhs, rhs, _) = minkowski_check(&t, &zero, 2.5).unwrap();
        assert!((lhs - rhs).abs() < 1e-14);

        assert!(minkowski_check(&t, &s, 1.0).is_err());
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let g1 = unit_rule(8);
        let g2 = unit_rule(9);
        let f = SampledFunction::from_fn(&g1, |x| x).unwrap();
        let g = SampledFunction::from_fn(&g2, |x| x).unwrap();
        assert!(matches!(
            holder_check(&f, &g, &ConjugatePair::from_p(2.0).unwrap()),
            Err(IntegralError::GridMismatch)
        ));
    }

    #[test]
    fn negative_samples_are_rejected() {
        let grid = unit_rule(4);
        let f = SampledFunction::from_fn(&grid, |x| x - 0.5).unwrap();
        let one = SampledFunction::from_fn(&grid, |_| 1.0).unwrap();
        assert!(matches!(
            holder_check(&f, &one, &ConjugatePair::from_p(2.0).unwrap()),
            Err(IntegralError::NegativeSample { .. })
        ));
    }

    #[test]
    fn doubling_order_is_stable_for_polynomials() {
        let g16 = unit_rule(16);
        let g32 = unit_rule(32);
        let c = ConjugatePair::from_p(3.0).unwrap();
        let poly = |x: f64| 0.3 + x * x * (1.0 - 0.4 * x);
        let f1 = SampledFunction::from_fn(&g16, poly).unwrap();
        let g1 = SampledFunction::from_fn(&g16, |x| (0.7 - x * 0.3).max(0.0) + 0.1).unwrap();
        let f2 = SampledFunction::from_fn(&g32, poly).unwrap();
        let g2 = SampledFunction::from_fn(&g32, |x| (0.7 - x * 0.3).max(0.0) + 0.1).unwrap();
        let (l1, r1, _) = holder_check(&f1, &g1, &c).unwrap();
        let (l2, r2, _) = holder_check(&f2, &g2, &c).unwrap();
        assert!((l1 - l2).abs() <= 1e-10 * l1.abs().max(1.0));
        assert!((r1 - r2).abs() <= 1e-10 * r1.abs().max(1.0));
    }

    proptest! {
        #[test]
        fn holder_gap_never_negative(
            c0 in 0.0f64..2.0, c1 in -1.0f64..1.0, c2 in -1.0f64..1.0,
            d0 in 0.0f64..2.0, d1 in -1.0f64..1.0, d2 in -1.0f64..1.0,
            psel in 0usize..3,
        ) {
            let p = [1.5, 2.0, 3.0][psel];
            let grid = unit_rule(16);
            // squares keep the samples nonnegative
            let f = SampledFunction::from_fn(&grid, |x| {
                let v = c0 + c1 * x + c2 * x * x;
                v * v
            }).unwrap();
            let g = SampledFunction::from_fn(&grid, |x| {
                let v = d0 + d1 * x + d2 * x * x;
                v * v
            }).unwrap();
            let c = ConjugatePair::from_p(p).unwrap();
            let (_, rhs, gap) = holder_check(&f, &g, &c).unwrap();
            prop_assert!(gap >= -GAP_TOL * rhs.max(1.0));
            let (_, rhs_m, gap_m) = minkowski_check(&f, &g, p).unwrap();
            prop_assert!(gap_m >= -GAP_TOL * rhs_m.max(1.0));

            // crude power bound: ∫(f+g)^p ≤ 2^p (∫f^p + ∫g^p)
            let sum: Vec<f64> = f.values().iter().zip(g.values()).map(|(a, b)| a + b).collect();
            let sp: Vec<f64> = sum.iter().map(|v| v.powf(p)).collect();
            let fp: Vec<f64> = f.values().iter().map(|v| v.powf(p)).collect();
            let gp: Vec<f64> = g.values().iter().map(|v| v.powf(p)).collect();
            let lhs_c = grid.integrate(&sp);
            let rhs_c = 2f64.powf(p) * (grid.integrate(&fp) + grid.integrate(&gp));
            prop_assert!(lhs_c <= rhs_c * (1.0 + 1e-12) + 1e-12);
        }

        #[test]
        fn holder_p2_matches_integral_cbs(
            c0 in 0.0f64..2.0, c1 in -1.0f64..1.0,
            d0 in 0.0f64..2.0, d1 in -1.0f64..1.0,
        ) {
            let grid = unit_rule(12);
            let f = SampledFunction::from_fn(&grid, |x| (c0 + c1 * x).abs()).unwrap();
            let g = SampledFunction::from_fn(&grid, |x| (d0 + d1 * x).abs()).unwrap();
            let c = ConjugatePair::new(2.0, 2.0).unwrap();
            let (lh, rh, _) = holder_check(&f, &g, &c).unwrap();
            let (lc, rc, _) = integral_cbs_check(&f, &g).unwrap();
            prop_assert!((lh - lc).abs() <= 1e-12 * lh.abs().max(1.0));
            prop_assert!((rh - rc).abs() <= 1e-12 * rh.abs().max(1.0));
        }
    }
}
