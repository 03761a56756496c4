//! Red refinement of simplices via edge midpoints.
//!
//! A triangle splits into 4 congruent children. A tetrahedron splits
//! into 4 corner tetrahedra plus 4 from the interior octahedron, which
//! is cut along one of its three diagonals; the default diagonal joins
//! midpoint(v₀v₂) to midpoint(v₁v₃) and the two alternatives are
//! selectable since γ can depend on the choice.

use super::mesh::signed_measure;
use super::{ElasticityError, Simplex};

/// Diagonal used to split the interior octahedron of a refined
/// tetrahedron, named after the midpoints it joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OctahedronDiagonal {
    /// midpoint(v₀v₂) – midpoint(v₁v₃)
    #[default]
    M02M13,
    /// midpoint(v₀v₁) – midpoint(v₂v₃)
    M01M23,
    /// midpoint(v₀v₃) – midpoint(v₁v₂)
    M03M12,
}

impl OctahedronDiagonal {
    pub fn all() -> [OctahedronDiagonal; 3] {
        [
            OctahedronDiagonal::M02M13,
            OctahedronDiagonal::M01M23,
            OctahedronDiagonal::M03M12,
        ]
    }

    /// CLI encoding: 0 = default diagonal, 1 and 2 the alternatives.
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(OctahedronDiagonal::M02M13),
            1 => Some(OctahedronDiagonal::M01M23),
            2 => Some(OctahedronDiagonal::M03M12),
            _ => None,
        }
    }

    pub fn index(&self) -> u8 {
        match self {
            OctahedronDiagonal::M02M13 => 0,
            OctahedronDiagonal::M01M23 => 1,
            OctahedronDiagonal::M03M12 => 2,
        }
    }
}

/// Result of one red refinement.
#[derive(Debug, Clone)]
pub struct Refinement {
    /// Parent vertices first, then edge midpoints in edge order.
    pub nodes: Vec<[f64; 3]>,
    /// Parent vertex pair of each midpoint, parallel to the midpoint
    /// section of `nodes`.
    pub edges: Vec<(usize, usize)>,
    pub children: Vec<Simplex>,
    /// Node indices of each child, consistent with its orientation.
    pub child_nodes: Vec<Vec<usize>>,
}

const EDGES_2D: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
const EDGES_3D: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

// midpoint node ids in 3D: m01=4, m02=5, m03=6, m12=7, m13=8, m23=9
fn octahedron_cut(diagonal: OctahedronDiagonal) -> ((usize, usize), [usize; 4]) {
    match diagonal {
        // equator cycles list each consecutive pair sharing a parent vertex
        OctahedronDiagonal::M02M13 => ((5, 8), [4, 6, 9, 7]),
        OctahedronDiagonal::M01M23 => ((4, 9), [5, 6, 8, 7]),
        OctahedronDiagonal::M03M12 => ((6, 7), [4, 5, 9, 8]),
    }
}

/// Red refinement with the default octahedron diagonal.
pub fn red_refine(parent: &Simplex) -> Result<Refinement, ElasticityError> {
    red_refine_with(parent, OctahedronDiagonal::default())
}

/// Red refinement with an explicit octahedron diagonal (ignored in 2D).
pub fn red_refine_with(
    parent: &Simplex,
    diagonal: OctahedronDiagonal,
) -> Result<Refinement, ElasticityError> {
    let dim = parent.dim();
    let verts = parent.vertices();
    let edges: Vec<(usize, usize)> = match dim {
        2 => EDGES_2D.to_vec(),
        _ => EDGES_3D.to_vec(),
    };

    let mut nodes: Vec<[f64; 3]> = verts.to_vec();
    for &(a, b) in &edges {
        nodes.push([
            0.5 * (verts[a][0] + verts[b][0]),
            0.5 * (verts[a][1] + verts[b][1]),
            0.5 * (verts[a][2] + verts[b][2]),
        ]);
    }

    let mut child_nodes: Vec<Vec<usize>> = match dim {
        2 => vec![
            vec![0, 3, 4],
            vec![3, 1, 5],
            vec![4, 5, 2],
            vec![3, 5, 4],
        ],
        _ => {
            let mut cs = vec![
                vec![0, 4, 5, 6],
                vec![4, 1, 7, 8],
                vec![5, 7, 2, 9],
                vec![6, 8, 9, 3],
            ];
            let ((d1, d2), cycle) = octahedron_cut(diagonal);
            for k in 0..4 {
                cs.push(vec![d1, d2, cycle[k], cycle[(k + 1) % 4]]);
            }
            cs
        }
    };

    let mut children = Vec::with_capacity(child_nodes.len());
    for ids in &mut child_nodes {
        let pts: Vec<[f64; 3]> = ids.iter().map(|&i| nodes[i]).collect();
        if signed_measure(dim, &pts) < 0.0 {
            ids.swap(dim - 1, dim);
        }
        let pts: Vec<[f64; 3]> = ids.iter().map(|&i| nodes[i]).collect();
        children.push(Simplex::from_points(dim, pts, false)?);
    }

    Ok(Refinement {
        nodes,
        edges,
        children,
        child_nodes,
    })
}
