//! P1 finite elements for 2D/3D linear elasticity on simplices and the
//! per-element strengthened-CBS constant of the two-level hierarchical
//! splitting.
//!
//! [`gamma_element`] red-refines one simplex, assembles the chosen
//! bilinear form on the children, changes to the hierarchical basis and
//! hands the coarse/fine block split to [`crate::strengthened::gamma_exact`].
//! The known analytic bounds for this splitting are γ² ≤ 3/4 for the 2D
//! elasticity form on any triangle and γ² ≤ 9/10 for the 3D divergence
//! and stress forms on any tetrahedron.

mod hierarchy;
mod mesh;
mod refine;
mod stiffness;

pub use hierarchy::{hierarchical_split, HierarchicalSplit};
pub use mesh::{Mesh, Simplex};
pub use refine::{red_refine, red_refine_with, OctahedronDiagonal, Refinement};
pub use stiffness::{element_stiffness, ElementStiffness, Form};

use thiserror::Error;

use crate::strengthened::{gamma_exact, GammaError, GammaResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ElasticityError {
    #[error("dimension must be 2 or 3, got {dim}")]
    BadDimension { dim: usize },
    #[error("vertex {vertex} has a non-finite coordinate")]
    NonFiniteCoordinate { vertex: usize },
    #[error("simplex is degenerate (signed measure {measure:.3e})")]
    DegenerateSimplex { measure: f64 },
    #[error("vertex {vertex} has {coords} coordinates, expected {dim}")]
    BadVertex { vertex: usize, coords: usize, dim: usize },
    #[error("element {element} has {nodes} nodes, expected {dim} + 1")]
    BadElement { element: usize, nodes: usize, dim: usize },
    #[error("element {element} references vertex {index} out of range")]
    VertexIndexOutOfRange { element: usize, index: usize },
    #[error("element {element} is degenerate")]
    DegenerateElement { element: usize },
    #[error("shear modulus must be positive, got {mu}")]
    NonPositiveShear { mu: f64 },
    #[error("first Lamé modulus must be nonnegative and finite, got {lambda}")]
    BadLambda { lambda: f64 },
    #[error("Poisson ratio must lie in [0, 0.5), got {nu}")]
    BadPoisson { nu: f64 },
    #[error("Young modulus must be positive, got {e}")]
    BadYoung { e: f64 },
    #[error("gamma computation failed on element {element}: {source}")]
    Gamma {
        element: usize,
        #[source]
        source: GammaError,
    },
}

/// Isotropic material with Lamé moduli `λ ≥ 0` and `μ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    lambda: f64,
    mu: f64,
}

impl Material {
    pub fn new(lambda: f64, mu: f64) -> Result<Self, ElasticityError> {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(ElasticityError::NonPositiveShear { mu });
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(ElasticityError::BadLambda { lambda });
        }
        Ok(Self { lambda, mu })
    }

    /// `λ = Eν/((1+ν)(1−2ν))`, `μ = E/(2(1+ν))` for `0 ≤ ν < 0.5`.
    pub fn from_young_poisson(e: f64, nu: f64) -> Result<Self, ElasticityError> {
        if !e.is_finite() || e <= 0.0 {
            return Err(ElasticityError::BadYoung { e });
        }
        if !nu.is_finite() || !(0.0..0.5).contains(&nu) {
            return Err(ElasticityError::BadPoisson { nu });
        }
        let lambda = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
        let mu = e / (2.0 * (1.0 + nu));
        Self::new(lambda, mu)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Known analytic upper bound on γ² for the red-refinement two-level
/// splitting, where one exists: 3/4 for the 2D elasticity form, 9/10 for
/// the 3D divergence and stress forms.
pub fn known_gamma2_bound(dim: usize, form: Form) -> Option<f64> {
    match (dim, form) {
        (2, Form::Elasticity) => Some(0.75),
        (3, Form::Divergence) | (3, Form::Stress) => Some(0.9),
        _ => None,
    }
}

/// FNV-1a over the vertex coordinate bit patterns; identifies the
/// geometry in diagnostics.
fn geometry_hash(s: &Simplex) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |byte: u8| {
        h ^= byte as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    };
    eat(s.dim() as u8);
    for v in s.vertices() {
        for c in 0..s.dim() {
            for b in v[c].to_bits().to_le_bytes() {
                eat(b);
            }
        }
    }
    h
}

/// γ for one macro-element with the default octahedron diagonal.
pub fn gamma_element(
    parent: &Simplex,
    material: &Material,
    form: Form,
) -> Result<GammaResult, ElasticityError> {
    gamma_element_with(parent, material, form, OctahedronDiagonal::default())
}

/// γ for one macro-element: hierarchical splitting followed by the exact
/// generalized-eigenvalue sup.
pub fn gamma_element_with(
    parent: &Simplex,
    material: &Material,
    form: Form,
    diagonal: OctahedronDiagonal,
) -> Result<GammaResult, ElasticityError> {
    let hs = hierarchical_split(parent, material, form, diagonal)?;
    let mut result = gamma_exact(&hs.matrix, &hs.partition)
        .map_err(|source| ElasticityError::Gamma { element: 0, source })?;
    result.diagnostics.context = Some(format!(
        "form={} lambda={:.6e} mu={:.6e} geom={:016x} diag={}",
        form.as_str(),
        material.lambda(),
        material.mu(),
        geometry_hash(parent),
        diagonal.index(),
    ));
    Ok(result)
}

/// Seeded random simplex inside the unit square/cube with a mild quality
/// floor (area ≥ 0.02, volume ≥ 0.005), rejection-sampled
/// deterministically: draw `index` of stream `seed`. Fixture generator
/// for the CLI's `--vertices random` and the randomized bound checks.
pub fn random_simplex(dim: usize, seed: u64, index: u64) -> Result<Simplex, ElasticityError> {
    if dim != 2 && dim != 3 {
        return Err(ElasticityError::BadDimension { dim });
    }
    let quality = if dim == 2 { 0.02 } else { 0.005 };
    for attempt in 0..10_000u64 {
        let mut rng = crate::stream::rng(seed ^ ((dim as u64) << 56), (index << 16) | attempt);
        let verts: Vec<[f64; 3]> = (0..=dim)
            .map(|_| {
                let mut p = [0.0; 3];
                for c in p.iter_mut().take(dim) {
                    *c = crate::stream::uniform(&mut rng, 0.0, 1.0);
                }
                p
            })
            .collect();
        if let Ok(s) = Simplex::from_points(dim, verts, true) {
            if s.volume() >= quality {
                return Ok(s);
            }
        }
    }
    Err(ElasticityError::DegenerateSimplex { measure: 0.0 })
}

/// Element-by-element γ over a mesh with the overall maximum.
#[derive(Debug, Clone)]
pub struct MeshGammaReport {
    pub per_element: Vec<GammaResult>,
    pub max_gamma2: f64,
    /// Index of the element attaining the maximum.
    pub argmax: usize,
}

/// Macro-element local analysis on every mesh element, in element-index
/// order.
pub fn gamma_mesh(
    mesh: &Mesh,
    material: &Material,
    form: Form,
) -> Result<MeshGammaReport, ElasticityError> {
    let mut per_element = Vec::with_capacity(mesh.element_count());
    let mut max_gamma2 = 0.0f64;
    let mut argmax = 0usize;
    for e in 0..mesh.element_count() {
        let simplex = mesh.simplex(e);
        let g = gamma_element(&simplex, material, form).map_err(|err| match err {
            ElasticityError::Gamma { source, .. } => ElasticityError::Gamma { element: e, source },
            other => other,
        })?;
        if g.gamma2 > max_gamma2 {
            max_gamma2 = g.gamma2;
            argmax = e;
        }
        per_element.push(g);
    }
    Ok(MeshGammaReport {
        per_element,
        max_gamma2,
        argmax,
    })
}
