//! Acceptance gate: one test per criterion, each printing a pass/fail
//! line with its runtime.
//!
//! Run with visible output:
//! `cargo test -p cbs-core --test acceptance -- --nocapture`

use std::sync::Arc;
use std::time::{Duration, Instant};

use cbs_core::elasticity::{
    gamma_element_with, random_simplex, Form, Material, OctahedronDiagonal, Simplex,
};
use cbs_core::integralineq::{
    holder_check, integral_cbs_check, minkowski_check, ConjugatePair, QuadratureRule,
    SampledFunction,
};
use cbs_core::stream;
use cbs_core::strengthened::{
    gamma_alternating, gamma_exact, gamma_sampling, BlockPartition,
};
use cbs_core::suites::{run_suite, Suite};
use cbs_core::symlin::{Matrix, SymMatrix};
use cbs_core::vectorcore::{cbs_gap, inner_product, lagrange_gap, RealVector};
use cbs_core::weightedcbs::{
    integral_weighted_cbs_check, weighted_cbs_check, WeightVector,
};

struct Criterion {
    label: &'static str,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    fn new(label: &'static str, budget_secs: u64) -> Self {
        Self {
            label,
            budget: Duration::from_secs(budget_secs),
            start: Instant::now(),
        }
    }

    fn finish(self, detail: String) {
        let elapsed = self.start.elapsed();
        println!("acceptance {}: PASS ({:.2?}) {}", self.label, elapsed, detail);
        assert!(
            elapsed < self.budget,
            "{} exceeded its {:?} budget: {:?}",
            self.label,
            self.budget,
            elapsed
        );
    }

    fn fail(&self, detail: &str) -> ! {
        println!("acceptance {}: FAIL {}", self.label, detail);
        panic!("{}: {detail}", self.label);
    }
}

const BOUND_SLACK: f64 = 1e-8;

fn nu_sweep() -> Vec<f64> {
    (0..10).map(|k| 0.05 * k as f64).collect()
}

/// 1. 2D right-isosceles bound: γ² ≤ 3/4 over the ν sweep.
#[test]
fn criterion_1_right_isosceles_2d_bound() {
    let c = Criterion::new("1 [2D right-isosceles bound]", 1);
    let t = Simplex::reference(2).expect("reference triangle");
    let mut max_gamma2 = 0.0f64;
    for nu in nu_sweep() {
        let m = Material::from_young_poisson(1.0, nu).expect("valid nu");
        let g = gamma_element_with(&t, &m, Form::Elasticity, OctahedronDiagonal::default())
            .expect("gamma");
        if g.gamma2 > 0.75 + BOUND_SLACK {
            c.fail(&format!("nu={nu}: gamma2={} > 0.75", g.gamma2));
        }
        max_gamma2 = max_gamma2.max(g.gamma2);
    }
    c.finish(format!("max gamma2 = {max_gamma2:.12} over 10 nu values"));
}

/// 2. 2D arbitrary-triangle bound: 100 seeded random triangles at ν = 0.3.
#[test]
fn criterion_2_random_triangles_2d_bound() {
    let c = Criterion::new("2 [2D random-triangle bound]", 5);
    let m = Material::from_young_poisson(1.0, 0.3).expect("valid nu");
    let mut max_gamma2 = 0.0f64;
    for i in 0..100u64 {
        let t = random_simplex(2, 0xACCE_2, i).expect("seeded triangle");
        let g = gamma_element_with(&t, &m, Form::Elasticity, OctahedronDiagonal::default())
            .expect("gamma");
        if g.gamma2 > 0.75 + BOUND_SLACK {
            c.fail(&format!("triangle {i}: gamma2={} > 0.75", g.gamma2));
        }
        max_gamma2 = max_gamma2.max(g.gamma2);
    }
    c.finish(format!("max gamma2 = {max_gamma2:.12} over 100 triangles"));
}

/// 3. 3D bound: reference + 50 random tetrahedra, forms a₁ and a₂,
/// every octahedron diagonal, γ² ≤ 9/10.
#[test]
fn criterion_3_tetrahedra_3d_bound() {
    let c = Criterion::new("3 [3D tetrahedron bound]", 30);
    let unit = Material::new(1.0, 1.0).expect("unit moduli");
    let mut tets = vec![Simplex::reference(3).expect("reference tetrahedron")];
    for i in 0..50u64 {
        tets.push(random_simplex(3, 0xACCE_3, i).expect("seeded tetrahedron"));
    }
    let mut max_a1 = 0.0f64;
    let mut max_a2 = 0.0f64;
    let mut cases = 0usize;
    for (ti, tet) in tets.iter().enumerate() {
        for diag in OctahedronDiagonal::all() {
            let g1 = gamma_element_with(tet, &unit, Form::Divergence, diag).expect("gamma a1");
            if g1.gamma2 > 0.9 + BOUND_SLACK {
                c.fail(&format!("tet {ti} diag {:?} a1: gamma2={}", diag, g1.gamma2));
            }
            max_a1 = max_a1.max(g1.gamma2);
            cases += 1;

            let g2 = gamma_element_with(tet, &unit, Form::Stress, diag).expect("gamma a2");
            if g2.gamma2 > 0.9 + BOUND_SLACK {
                c.fail(&format!("tet {ti} diag {:?} a2: gamma2={}", diag, g2.gamma2));
            }
            max_a2 = max_a2.max(g2.gamma2);
            cases += 1;

            for nu in nu_sweep() {
                let m = Material::from_young_poisson(1.0, nu).expect("valid nu");
                let g = gamma_element_with(tet, &m, Form::Stress, diag).expect("gamma a2 sweep");
                if g.gamma2 > 0.9 + BOUND_SLACK {
                    c.fail(&format!("tet {ti} diag {:?} a2 nu={nu}: gamma2={}", diag, g.gamma2));
                }
                max_a2 = max_a2.max(g.gamma2);
                cases += 1;
            }
        }
    }
    c.finish(format!(
        "max a1 = {max_a1:.15}, max a2 = {max_a2:.15} over {cases} cases"
    ));
}

fn random_spd(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> SymMatrix {
    let g = Matrix::from_rows(
        n,
        n,
        (0..n * n).map(|_| stream::uniform(rng, -1.0, 1.0)).collect(),
    );
    let gtg = g.transpose().mul(&g);
    let mut shifted = gtg.clone();
    for i in 0..n {
        shifted.set(i, i, shifted.get(i, i) + 0.05 * n as f64);
    }
    SymMatrix::symmetrized(&shifted)
}

fn random_partition(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> BlockPartition {
    let k = (1 + (stream::uniform(rng, 0.0, 1.0) * (n - 1) as f64) as usize).min(n - 1);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = ((stream::uniform(rng, 0.0, 1.0) * (i + 1) as f64) as usize).min(i);
        idx.swap(i, j);
    }
    BlockPartition::new(idx[..k].to_vec(), idx[k..].to_vec(), n).expect("valid split")
}

/// 4. Sup-formula oracle equivalence on 200 random SPD pencils:
/// exact/alternating agree to 1e-8 and sampling is a lower bound.
///
/// The sampling estimator is a max over 10⁵ random unit pairs; its
/// approximation deficit scales like trials^(−2/(n−2)), so for n up to
/// 12 the lower-bound property is asserted at the op-level 1e-12 slack
/// (far inside the criterion's 5e-3) while the measured deficit
/// distribution is printed for transparency.
#[test]
fn criterion_4_oracle_equivalence() {
    let c = Criterion::new("4 [sup-formula oracles]", 30);
    let seed = 0xACCE_4u64;
    let mut worst_alt = 0.0f64;
    let mut deficits = Vec::with_capacity(200);
    for case in 0..200u64 {
        let mut rng = stream::rng(seed, case);
        let n = 4 + (case as usize % 9);
        let a = random_spd(&mut rng, n);
        let part = random_partition(&mut rng, n);
        let ge = gamma_exact(&a, &part).expect("exact");
        let ga = gamma_alternating(&a, &part, 2000, 1e-14).expect("alternating");
        let gs = gamma_sampling(&a, &part, 100_000, seed ^ case).expect("sampling");

        let alt_err = (ge.gamma2 - ga.gamma2).abs();
        if alt_err > 1e-8 {
            c.fail(&format!("case {case}: |exact - alternating| = {alt_err:.3e}"));
        }
        worst_alt = worst_alt.max(alt_err);

        if gs.gamma2 > ge.gamma2 + 1e-12 {
            c.fail(&format!(
                "case {case}: sampling {} exceeds exact {}",
                gs.gamma2, ge.gamma2
            ));
        }
        if gs.gamma2 > ge.gamma2 + 5e-3 {
            c.fail(&format!("case {case}: sampling above the 5e-3 band"));
        }
        deficits.push(ge.gamma2 - gs.gamma2);
    }
    deficits.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    c.finish(format!(
        "worst |exact-alternating| = {worst_alt:.3e}; sampling deficit median {:.3e}, max {:.3e}",
        deficits[100], deficits[199]
    ));
}

/// 5. Lagrange-identity oracle on 10⁵ random pairs.
#[test]
fn criterion_5_lagrange_oracle() {
    let c = Criterion::new("5 [Lagrange identity]", 5);
    let seed = 0xACCE_5u64;
    let mut worst_rel = 0.0f64;
    for t in 0..100_000u64 {
        let mut rng = stream::rng(seed, t);
        let n = 1 + (t as usize % 64);
        let x = RealVector::new((0..n).map(|_| stream::uniform(&mut rng, -100.0, 100.0)).collect())
            .expect("finite");
        let y = RealVector::new((0..n).map(|_| stream::uniform(&mut rng, -100.0, 100.0)).collect())
            .expect("finite");
        let (gap, _) = cbs_gap(&x, &y).expect("same length");
        let lg = lagrange_gap(&x, &y).expect("same length");
        let scale = (inner_product(&x, &x).unwrap() * inner_product(&y, &y).unwrap()).max(1e-300);
        let rel = (lg - 2.0 * gap).abs() / scale;
        if rel > 1e-10 {
            c.fail(&format!("trial {t}: relative identity error {rel:.3e}"));
        }
        if gap < -1e-12 * scale {
            c.fail(&format!("trial {t}: CBS violation gap={gap:.3e} scale={scale:.3e}"));
        }
        worst_rel = worst_rel.max(rel);
    }
    c.finish(format!("worst relative identity error = {worst_rel:.3e}"));
}

/// 6. Weighted CBS-type: 10⁴ random triples, 10³ constructed equality
/// cases with combo recovery, 10³ integral polynomial triples.
#[test]
fn criterion_6_weighted_cbs() {
    let c = Criterion::new("6 [weighted CBS-type]", 10);
    let seed = 0xACCE_6u64;

    for t in 0..10_000u64 {
        let mut rng = stream::rng(seed ^ 0xA, t);
        let n = 1 + (t as usize % 16);
        let p = WeightVector::new((0..n).map(|_| stream::uniform(&mut rng, 0.05, 5.0)).collect())
            .expect("positive");
        let x = RealVector::new((0..n).map(|_| stream::uniform(&mut rng, -5.0, 5.0)).collect())
            .expect("finite");
        let y = RealVector::new((0..n).map(|_| stream::uniform(&mut rng, -5.0, 5.0)).collect())
            .expect("finite");
        let rep = weighted_cbs_check(&p, &x, &y).expect("same length");
        let scale = rep.lhs.abs().max(rep.rhs).max(1.0);
        if rep.gap < -1e-10 * scale {
            c.fail(&format!("trial {t}: inequality violated, gap {:.3e}", rep.gap));
        }
    }

    let mut worst_residual = 0.0f64;
    for t in 0..1000u64 {
        let mut rng = stream::rng(seed ^ 0xB, t);
        let n = 2 + (t as usize % 14);
        let p = WeightVector::new((0..n).map(|_| stream::uniform(&mut rng, 0.05, 5.0)).collect())
            .expect("positive");
        let xe: Vec<f64> = (0..n).map(|_| stream::uniform(&mut rng, -3.0, 3.0)).collect();
        let a = stream::uniform(&mut rng, -2.0, 2.0);
        let b = stream::uniform(&mut rng, 0.4, 2.0) * if t % 2 == 0 { 1.0 } else { -1.0 };
        let cc = stream::uniform(&mut rng, -3.0, 3.0);
        let ye: Vec<f64> = xe.iter().map(|&xi| (cc - a * xi) / b).collect();
        let rep = weighted_cbs_check(
            &p,
            &RealVector::new(xe.clone()).expect("finite"),
            &RealVector::new(ye.clone()).expect("finite"),
        )
        .expect("same length");
        if !rep.equality {
            c.fail(&format!("trial {t}: constructed equality (a={a}, b={b}, c={cc}) missed"));
        }
        let (ra, rb, rc) = rep.combo.expect("combo accompanies equality");
        let mut res = 0.0f64;
        for i in 0..n {
            res += (ra * xe[i] + rb * ye[i] - rc).powi(2);
        }
        let res = res.sqrt();
        if res > 1e-9 {
            c.fail(&format!("trial {t}: combo residual {res:.3e}"));
        }
        worst_residual = worst_residual.max(res);
    }

    let grid = Arc::new(QuadratureRule::gauss_for_order(16, 0.0, 1.0).expect("rule"));
    for t in 0..1000u64 {
        let mut rng = stream::rng(seed ^ 0xC, t);
        let fc: Vec<f64> = (0..6).map(|_| stream::uniform(&mut rng, -2.0, 2.0)).collect();
        let gc: Vec<f64> = (0..6).map(|_| stream::uniform(&mut rng, -2.0, 2.0)).collect();
        let poly = |co: &[f64], x: f64| {
            co.iter().rev().fold(0.0, |acc, &c| acc * x + c) // degree 5 Horner
        };
        let p = SampledFunction::from_fn(&grid, |x| 1.0 + x * x).expect("positive weight");
        let f = SampledFunction::from_fn(&grid, |x| poly(&fc, x)).expect("finite");
        let g = SampledFunction::from_fn(&grid, |x| poly(&gc, x)).expect("finite");
        let rep = integral_weighted_cbs_check(&p, &f, &g).expect("shared grid");
        let scale = rep.lhs.abs().max(rep.rhs).max(1.0);
        if rep.gap < -1e-10 * scale {
            c.fail(&format!("trial {t}: integral inequality violated, gap {:.3e}", rep.gap));
        }
    }

    c.finish(format!("worst combo residual = {worst_residual:.3e}"));
}

/// 7. Hölder/Minkowski for p ∈ {1.5, 2, 3} and the p = q = 2 route
/// agreement with the integral-CBS path.
#[test]
fn criterion_7_holder_minkowski() {
    let c = Criterion::new("7 [Holder/Minkowski]", 10);
    let seed = 0xACCE_7u64;
    let grid = Arc::new(QuadratureRule::gauss_for_order(16, 0.0, 1.0).expect("rule"));
    for &p in &[1.5, 2.0, 3.0] {
        let cp = ConjugatePair::from_p(p).expect("p > 1");
        for t in 0..1000u64 {
            let mut rng = stream::rng(seed ^ ((p * 8.0) as u64), t);
            let a: Vec<f64> = (0..3).map(|_| stream::uniform(&mut rng, -1.5, 1.5)).collect();
            let b: Vec<f64> = (0..3).map(|_| stream::uniform(&mut rng, -1.5, 1.5)).collect();
            let f = SampledFunction::from_fn(&grid, |x| {
                let v = a[0] + a[1] * x + a[2] * x * x;
                v * v
            })
            .expect("nonnegative");
            let g = SampledFunction::from_fn(&grid, |x| {
                let v = b[0] + b[1] * x + b[2] * x * x;
                v * v
            })
            .expect("nonnegative");
            let (_, rhs, gap) = holder_check(&f, &g, &cp).expect("holder");
            if gap < -1e-9 * rhs.max(1.0) {
                c.fail(&format!("p={p} trial {t}: Holder gap {gap:.3e}"));
            }
            let (_, rhs_m, gap_m) = minkowski_check(&f, &g, p).expect("minkowski");
            if gap_m < -1e-9 * rhs_m.max(1.0) {
                c.fail(&format!("p={p} trial {t}: Minkowski gap {gap_m:.3e}"));
            }
            if p == 2.0 {
                let (lh, rh, _) = holder_check(&f, &g, &cp).expect("holder");
                let (lc, rc, _) = integral_cbs_check(&f, &g).expect("cbs");
                if (lh - lc).abs() > 1e-12 * lh.abs().max(1.0)
                    || (rh - rc).abs() > 1e-12 * rh.abs().max(1.0)
                {
                    c.fail(&format!("trial {t}: p=2 Holder and integral-CBS paths disagree"));
                }
            }
        }
    }
    c.finish("3000 pairs per inequality".to_string());
}

/// 8. The full property suite passes deterministically at trials = 1000.
#[test]
fn criterion_8_property_suite_deterministic() {
    let c = Criterion::new("8 [verify suite determinism]", 29);
    let first = run_suite(Suite::All, 1000, 1);
    for suite in &first {
        for p in &suite.properties {
            if !p.passed {
                c.fail(&format!(
                    "{}/{} failed: {:?}",
                    suite.suite, p.property, p.failure
                ));
            }
        }
    }
    let second = run_suite(Suite::All, 1000, 1);
    if first != second {
        c.fail("two identical runs disagreed");
    }
    let total: usize = first.iter().map(|s| s.properties.len()).sum();
    c.finish(format!("{total} properties, two identical runs"));
}

/// Regression fixtures: γ² values pinned to 1e-10 relative after their
/// first verified computation.
#[test]
fn regression_pinned_gamma_values() {
    let c = Criterion::new("R [pinned gamma regressions]", 5);
    let tol = 1e-10;
    let check = |label: &str, got: f64, expect: f64| {
        let rel = (got - expect).abs() / expect.abs().max(1e-300);
        assert!(
            rel <= tol,
            "{label}: got {got:.17e}, pinned {expect:.17e} (rel {rel:.3e})"
        );
    };

    let tet = Simplex::reference(3).expect("tet");
    let tri = Simplex::reference(2).expect("tri");
    let unit = Material::new(1.0, 1.0).expect("unit");

    // 3D reference tetrahedron: the divergence form attains 9/10 for
    // every diagonal; stress and full forms are diagonal-stable too
    for diag in OctahedronDiagonal::all() {
        let g1 = gamma_element_with(&tet, &unit, Form::Divergence, diag).expect("a1");
        check("ref-tet a1", g1.gamma2, 0.9);
        let g2 = gamma_element_with(&tet, &unit, Form::Stress, diag).expect("a2");
        check("ref-tet a2", g2.gamma2, 8.6154636918379113e-1);
        let ga = gamma_element_with(&tet, &unit, Form::Elasticity, diag).expect("a");
        check("ref-tet a", ga.gamma2, 8.3979074022233224e-1);
    }

    // 2D right isosceles triangle
    let d = OctahedronDiagonal::default();
    let nu = |v: f64| Material::from_young_poisson(1.0, v).expect("nu");
    check(
        "right-isosceles a nu=0",
        gamma_element_with(&tri, &nu(0.0), Form::Elasticity, d).expect("a").gamma2,
        6.7677669529663764e-1,
    );
    check(
        "right-isosceles a nu=0.25",
        gamma_element_with(&tri, &nu(0.25), Form::Elasticity, d).expect("a").gamma2,
        2.0 / 3.0,
    );
    check(
        "right-isosceles a nu=0.3",
        gamma_element_with(&tri, &nu(0.3), Form::Elasticity, d).expect("a").gamma2,
        6.6791293281130060e-1,
    );
    check(
        "right-isosceles a nu=0.45",
        gamma_element_with(&tri, &nu(0.45), Form::Elasticity, d).expect("a").gamma2,
        7.0947705831882646e-1,
    );
    check(
        "right-isosceles a1",
        gamma_element_with(&tri, &unit, Form::Divergence, d).expect("a1").gamma2,
        0.75,
    );
    check(
        "right-isosceles a2",
        gamma_element_with(&tri, &unit, Form::Stress, d).expect("a2").gamma2,
        6.7807764064044218e-1,
    );

    c.finish("14 pinned values".to_string());
}
