//! P1 element stiffness matrices for the linear-elasticity forms.
//!
//! With linear shape functions the strains are constant per element, so
//! every entry is `volume ×` a constant Gram term and the integration is
//! exact. Degrees of freedom are ordered node-major, displacement
//! component minor.
//!
//! The three forms:
//!
//! ```text
//! a (u,v) = λ ∫ div(u)·div(v) + 2μ Σᵢⱼ ∫ εᵢⱼ(u)·εᵢⱼ(v)
//! a₁(u,v) = ∫ div(u)·div(v)
//! a₂(u,v) = Σᵢⱼ ∫ cᵢⱼ(u)·cᵢⱼ(v),   cᵢⱼ = λ·tr(ε)·δᵢⱼ + 2μ·εᵢⱼ
//! ```

use super::{ElasticityError, Material, Simplex};
use crate::symlin::SymMatrix;

/// Bilinear form selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// Full elasticity energy `a`.
    Elasticity,
    /// Divergence form `a₁` (material-independent).
    Divergence,
    /// Stress-product form `a₂`.
    Stress,
}

impl Form {
    pub fn as_str(&self) -> &'static str {
        match self {
            Form::Elasticity => "a",
            Form::Divergence => "a1",
            Form::Stress => "a2",
        }
    }

    pub fn parse(s: &str) -> Option<Form> {
        match s {
            "a" => Some(Form::Elasticity),
            "a1" => Some(Form::Divergence),
            "a2" => Some(Form::Stress),
            _ => None,
        }
    }
}

/// Element stiffness matrix of size `dim·(dim+1)`, positive semidefinite
/// with the rigid modes of the chosen form in its kernel.
#[derive(Debug, Clone)]
pub struct ElementStiffness {
    pub matrix: SymMatrix,
    pub form: Form,
    pub dim: usize,
}

/// Per-dof constant strain data on one element.
struct DofStrains {
    /// `div` of each dof field.
    div: Vec<f64>,
    /// symmetric gradient of each dof field, flattened dim×dim.
    eps: Vec<Vec<f64>>,
    dim: usize,
}

fn dof_strains(s: &Simplex) -> DofStrains {
    let dim = s.dim();
    let grads = s.shape_gradients();
    let ndof = dim * (dim + 1);
    let mut div = vec![0.0; ndof];
    let mut eps = vec![vec![0.0; dim * dim]; ndof];
    for node in 0..=dim {
        for comp in 0..dim {
            let a = dim * node + comp;
            div[a] = grads[node][comp];
            for i in 0..dim {
                for j in 0..dim {
                    let mut e = 0.0;
                    if i == comp {
                        e += 0.5 * grads[node][j];
                    }
                    if j == comp {
                        e += 0.5 * grads[node][i];
                    }
                    eps[a][i * dim + j] = e;
                }
            }
        }
    }
    DofStrains { div, eps, dim }
}

fn eps_dot(d: &DofStrains, a: usize, b: usize) -> f64 {
    d.eps[a]
        .iter()
        .zip(d.eps[b].iter())
        .map(|(x, y)| x * y)
        .sum()
}

/// Stiffness matrix of `form` on one simplex; exact integration.
pub fn element_stiffness(
    s: &Simplex,
    m: &Material,
    form: Form,
) -> Result<ElementStiffness, ElasticityError> {
    let d = dof_strains(s);
    let dim = d.dim;
    let vol = s.volume();
    let ndof = dim * (dim + 1);
    let (lambda, mu) = (m.lambda(), m.mu());

    let matrix = SymMatrix::from_fn(ndof, |a, b| {
        let entry = match form {
            Form::Divergence => d.div[a] * d.div[b],
            Form::Elasticity => lambda * d.div[a] * d.div[b] + 2.0 * mu * eps_dot(&d, a, b),
            Form::Stress => {
                let mut acc = 0.0;
                for i in 0..dim {
                    for j in 0..dim {
                        let delta = if i == j { 1.0 } else { 0.0 };
                        let ca = lambda * d.div[a] * delta + 2.0 * mu * d.eps[a][i * dim + j];
                        let cb = lambda * d.div[b] * delta + 2.0 * mu * d.eps[b][i * dim + j];
                        acc += ca * cb;
                    }
                }
                acc
            }
        };
        vol * entry
    })
    .expect("ndof >= 1");

    Ok(ElementStiffness { matrix, form, dim })
}

/// Gram matrix of the symmetric gradients alone (the `Σ εᵢⱼεᵢⱼ` part of
/// the elasticity form, without material factors); independent route for
/// the form-decomposition check.
#[cfg(test)]
pub(crate) fn strain_gram_stiffness(s: &Simplex) -> SymMatrix {
    let d = dof_strains(s);
    let vol = s.volume();
    let ndof = d.dim * (d.dim + 1);
    SymMatrix::from_fn(ndof, |a, b| vol * eps_dot(&d, a, b)).expect("ndof >= 1")
}
