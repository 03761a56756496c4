//! Simplicial geometry: oriented simplices and meshes of them.

use super::ElasticityError;

/// Relative volume floor below which a simplex counts as degenerate.
const DEGENERACY_TOL: f64 = 1e-12;

/// Nondegenerate, positively oriented simplex in 2D (triangle) or 3D
/// (tetrahedron). Coordinates are stored padded to three components.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    dim: usize,
    verts: Vec<[f64; 3]>,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn det3(c0: [f64; 3], c1: [f64; 3], c2: [f64; 3]) -> f64 {
    c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
        + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
}

/// Signed measure of the simplex spanned by `verts` (area or volume).
pub(crate) fn signed_measure(dim: usize, verts: &[[f64; 3]]) -> f64 {
    match dim {
        2 => {
            let e1 = sub(verts[1], verts[0]);
            let e2 = sub(verts[2], verts[0]);
            0.5 * (e1[0] * e2[1] - e1[1] * e2[0])
        }
        3 => {
            let e1 = sub(verts[1], verts[0]);
            let e2 = sub(verts[2], verts[0]);
            let e3 = sub(verts[3], verts[0]);
            det3(e1, e2, e3) / 6.0
        }
        _ => unreachable!("dim is 2 or 3"),
    }
}

impl Simplex {
    pub(crate) fn from_points(
        dim: usize,
        mut verts: Vec<[f64; 3]>,
        fix_orientation: bool,
    ) -> Result<Self, ElasticityError> {
        if dim != 2 && dim != 3 {
            return Err(ElasticityError::BadDimension { dim });
        }
        debug_assert_eq!(verts.len(), dim + 1);
        for (index, v) in verts.iter().enumerate() {
            if v.iter().any(|c| !c.is_finite()) {
                return Err(ElasticityError::NonFiniteCoordinate { vertex: index });
            }
        }
        let mut measure = signed_measure(dim, &verts);
        if measure < 0.0 && fix_orientation {
            verts.swap(dim - 1, dim);
            measure = -measure;
        }
        let mut diam: f64 = 0.0;
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                let d = sub(verts[i], verts[j]);
                diam = diam.max((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt());
            }
        }
        if measure <= DEGENERACY_TOL * diam.powi(dim as i32) {
            return Err(ElasticityError::DegenerateSimplex { measure });
        }
        Ok(Self { dim, verts })
    }

    pub fn triangle(pts: [[f64; 2]; 3]) -> Result<Self, ElasticityError> {
        let verts = pts.iter().map(|p| [p[0], p[1], 0.0]).collect();
        Self::from_points(2, verts, true)
    }

    pub fn tetrahedron(pts: [[f64; 3]; 4]) -> Result<Self, ElasticityError> {
        Self::from_points(3, pts.to_vec(), true)
    }

    /// Unit right triangle or the reference tetrahedron at the origin.
    pub fn reference(dim: usize) -> Result<Self, ElasticityError> {
        match dim {
            2 => Self::triangle([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
            3 => Self::tetrahedron([
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0],
            ]),
            _ => Err(ElasticityError::BadDimension { dim }),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.verts
    }

    /// Positive measure (area in 2D, volume in 3D).
    pub fn volume(&self) -> f64 {
        signed_measure(self.dim, &self.verts)
    }

    pub fn diameter(&self) -> f64 {
        let mut diam: f64 = 0.0;
        for i in 0..self.verts.len() {
            for j in (i + 1)..self.verts.len() {
                let d = sub(self.verts[i], self.verts[j]);
                diam = diam.max((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt());
            }
        }
        diam
    }

    /// Constant gradients `∇λ₀,…,∇λ_d` of the barycentric shape
    /// functions, padded to three components.
    pub(crate) fn shape_gradients(&self) -> Vec<[f64; 3]> {
        let d = self.dim;
        // columns of D are the edge vectors from vertex 0
        let mut grads = vec![[0.0; 3]; d + 1];
        match d {
            2 => {
                let e1 = sub(self.verts[1], self.verts[0]);
                let e2 = sub(self.verts[2], self.verts[0]);
                let det = e1[0] * e2[1] - e2[0] * e1[1];
                // rows of D^{-1}
                grads[1] = [e2[1] / det, -e2[0] / det, 0.0];
                grads[2] = [-e1[1] / det, e1[0] / det, 0.0];
            }
            3 => {
                let e1 = sub(self.verts[1], self.verts[0]);
                let e2 = sub(self.verts[2], self.verts[0]);
                let e3 = sub(self.verts[3], self.verts[0]);
                let det = det3(e1, e2, e3);
                let cross = |a: [f64; 3], b: [f64; 3]| {
                    [
                        a[1] * b[2] - a[2] * b[1],
                        a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0],
                    ]
                };
                // rows of D^{-1} are cross products of the other two columns
                let r1 = cross(e2, e3);
                let r2 = cross(e3, e1);
                let r3 = cross(e1, e2);
                grads[1] = [r1[0] / det, r1[1] / det, r1[2] / det];
                grads[2] = [r2[0] / det, r2[1] / det, r2[2] / det];
                grads[3] = [r3[0] / det, r3[1] / det, r3[2] / det];
            }
            _ => unreachable!(),
        }
        for c in 0..3 {
            grads[0][c] = -(1..=d).map(|i| grads[i][c]).sum::<f64>();
        }
        grads
    }
}

/// Simplicial mesh; element orientation is fixed on ingest by swapping
/// two vertex indices where needed.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    dim: usize,
    vertices: Vec<[f64; 3]>,
    elements: Vec<Vec<usize>>,
}

impl Mesh {
    pub fn new(
        dim: usize,
        vertices: Vec<Vec<f64>>,
        elements: Vec<Vec<usize>>,
    ) -> Result<Self, ElasticityError> {
        if dim != 2 && dim != 3 {
            return Err(ElasticityError::BadDimension { dim });
        }
        let mut padded = Vec::with_capacity(vertices.len());
        for (index, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return Err(ElasticityError::BadVertex {
                    vertex: index,
                    coords: v.len(),
                    dim,
                });
            }
            let mut p = [0.0; 3];
            for (c, &x) in v.iter().enumerate() {
                if !x.is_finite() {
                    return Err(ElasticityError::NonFiniteCoordinate { vertex: index });
                }
                p[c] = x;
            }
            padded.push(p);
        }
        let mut fixed = Vec::with_capacity(elements.len());
        for (element, ids) in elements.iter().enumerate() {
            if ids.len() != dim + 1 {
                return Err(ElasticityError::BadElement {
                    element,
                    nodes: ids.len(),
                    dim,
                });
            }
            for &i in ids {
                if i >= padded.len() {
                    return Err(ElasticityError::VertexIndexOutOfRange { element, index: i });
                }
            }
            let mut ids = ids.clone();
            let pts: Vec<[f64; 3]> = ids.iter().map(|&i| padded[i]).collect();
            if signed_measure(dim, &pts) < 0.0 {
                ids.swap(dim - 1, dim);
            }
            let pts: Vec<[f64; 3]> = ids.iter().map(|&i| padded[i]).collect();
            Simplex::from_points(dim, pts, false)
                .map_err(|_| ElasticityError::DegenerateElement { element })?;
            fixed.push(ids);
        }
        Ok(Self {
            dim,
            vertices: padded,
            elements: fixed,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, e: usize) -> &[usize] {
        &self.elements[e]
    }

    pub fn simplex(&self, e: usize) -> Simplex {
        let pts: Vec<[f64; 3]> = self.elements[e].iter().map(|&i| self.vertices[i]).collect();
        Simplex::from_points(self.dim, pts, false).expect("validated on ingest")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_orientation_and_measure() {
        let t = Simplex::triangle([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!((t.volume() - 0.5).abs() < 1e-15);

        // negatively oriented input is flipped
        let t2 = Simplex::triangle([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(t2.volume() > 0.0);

        assert!(matches!(
            Simplex::triangle([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]),
            Err(ElasticityError::DegenerateSimplex { .. })
        ));
    }

    #[test]
    fn reference_tetrahedron_volume() {
        let t = Simplex::reference(3).unwrap();
        assert!((t.volume() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn gradients_sum_to_zero_and_interpolate() {
        let t = Simplex::tetrahedron([
            [0.2, 0.1, -0.3],
            [1.1, 0.4, 0.2],
            [0.3, 1.5, 0.1],
            [-0.2, 0.4, 1.3],
        ])
        .unwrap();
        let g = t.shape_gradients();
        for c in 0..3 {
            let s: f64 = g.iter().map(|v| v[c]).sum();
            assert!(s.abs() < 1e-12);
        }
        // ∇λ_i · (v_j − v_0) = δ_ij for i, j ≥ 1
        for i in 1..4 {
            for j in 1..4 {
                let e = sub(t.vertices()[j], t.vertices()[0]);
                let dot = g[i][0] * e[0] + g[i][1] * e[1] + g[i][2] * e[2];
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((dot - target).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mesh_validation() {
        let m = Mesh::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
            vec![vec![0, 1, 2], vec![2, 1, 3]],
        )
        .unwrap();
        assert_eq!(m.element_count(), 2);
        assert!(m.simplex(0).volume() > 0.0);
        assert!(m.simplex(1).volume() > 0.0);

        assert!(matches!(
            Mesh::new(2, vec![vec![0.0, 0.0]], vec![vec![0, 0, 0]]),
            Err(ElasticityError::DegenerateElement { element: 0 })
        ));
        assert!(matches!(
            Mesh::new(2, vec![vec![0.0]], vec![]),
            Err(ElasticityError::BadVertex { .. })
        ));
        assert!(matches!(
            Mesh::new(2, vec![vec![0.0, 0.0]], vec![vec![0, 1, 2]]),
            Err(ElasticityError::VertexIndexOutOfRange { .. })
        ));
    }
}
