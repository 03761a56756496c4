//! Two-level hierarchical splitting of a red-refined macro-element.
//!
//! The fine P1 space on the four (2D) or eight (3D) children is rewritten
//! in the hierarchical basis: parent vertex functions (which interpolate
//! the parent's linear shape functions, hence carry ½ at adjacent
//! midpoints) plus midpoint correction functions. The basis change `J`
//! has unit diagonal, so `A_hb = Jᵀ·A_fine·J` is congruent to the fine
//! stiffness, and the coarse/fine index split is the `(U, V)` partition
//! the strengthened-CBS constant is computed on.

use super::refine::{red_refine_with, OctahedronDiagonal};
use super::stiffness::{element_stiffness, Form};
use super::{ElasticityError, Material, Simplex};
use crate::strengthened::BlockPartition;
use crate::symlin::{Matrix, SymMatrix};

#[derive(Debug, Clone)]
pub struct HierarchicalSplit {
    pub parent: Simplex,
    pub children: Vec<Simplex>,
    /// Stiffness in the hierarchical basis, `Jᵀ·A_fine·J`.
    pub matrix: SymMatrix,
    /// Assembled fine-mesh stiffness in the nodal basis.
    pub fine_matrix: SymMatrix,
    /// Hierarchical-to-nodal basis change.
    pub transform: Matrix,
    /// Coarse (parent vertex) dofs against fine (midpoint) dofs.
    pub partition: BlockPartition,
    /// Macro-element nodes: parent vertices then midpoints.
    pub nodes: Vec<[f64; 3]>,
}

/// Assemble the refined macro-element and change to the two-level
/// hierarchical basis.
pub fn hierarchical_split(
    parent: &Simplex,
    material: &Material,
    form: Form,
    diagonal: OctahedronDiagonal,
) -> Result<HierarchicalSplit, ElasticityError> {
    let dim = parent.dim();
    let refinement = red_refine_with(parent, diagonal)?;
    let n_nodes = refinement.nodes.len();
    let ndof = dim * n_nodes;

    let mut fine = vec![0.0; ndof * ndof];
    for (child, ids) in refinement.children.iter().zip(&refinement.child_nodes) {
        let ke = element_stiffness(child, material, form)?;
        let local = dim * (dim + 1);
        for a in 0..local {
            let ga = dim * ids[a / dim] + a % dim;
            for b in 0..local {
                let gb = dim * ids[b / dim] + b % dim;
                fine[ga * ndof + gb] += ke.matrix.get(a, b);
            }
        }
    }
    let fine_matrix = SymMatrix::from_rows(ndof, fine).expect("assembled matrix is symmetric");

    let mut j = Matrix::identity(ndof);
    for (e, &(p, q)) in refinement.edges.iter().enumerate() {
        let mid = dim + 1 + e;
        for c in 0..dim {
            j.set(dim * mid + c, dim * p + c, 0.5);
            j.set(dim * mid + c, dim * q + c, 0.5);
        }
    }

    let hb = j.transpose().mul(&fine_matrix.to_matrix()).mul(&j);
    let matrix = SymMatrix::symmetrized(&hb);

    let coarse = dim * (dim + 1);
    let partition = BlockPartition::new(
        (0..coarse).collect(),
        (coarse..ndof).collect(),
        ndof,
    )
    .expect("coarse and fine blocks are nonempty");

    Ok(HierarchicalSplit {
        parent: parent.clone(),
        children: refinement.children,
        matrix,
        fine_matrix,
        transform: j,
        partition,
        nodes: refinement.nodes,
    })
}
