//! JSON input schemas for matrices and meshes.

use serde::Deserialize;

use cbs_core::elasticity::Mesh;
use cbs_core::strengthened::BlockPartition;
use cbs_core::symlin::SymMatrix;

use crate::CliError;

/// `{ "n": …, "entries": [row-major n·n], "u_indices": […], "v_indices": […] }`
///
/// Entries must be symmetric within 1e-8 relative; the index sets are
/// 0-based, disjoint, covering and nonempty.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInput {
    pub n: usize,
    pub entries: Vec<f64>,
    pub u_indices: Vec<usize>,
    pub v_indices: Vec<usize>,
}

impl MatrixInput {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("{origin}: schema violation: {e}")))
    }

    pub fn build(self, origin: &str) -> Result<(SymMatrix, BlockPartition), CliError> {
        let matrix = SymMatrix::from_rows(self.n, self.entries)
            .map_err(|e| CliError::Input(format!("{origin}: field `entries`: {e}")))?;
        let partition = BlockPartition::new(self.u_indices, self.v_indices, self.n)
            .map_err(|e| CliError::Input(format!("{origin}: fields `u_indices`/`v_indices`: {e}")))?;
        Ok((matrix, partition))
    }
}

/// `{ "dim": 2|3, "vertices": [[x,y(,z)],…], "elements": [[i,j,k(,l)],…] }`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshInput {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub elements: Vec<Vec<usize>>,
}

impl MeshInput {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("{origin}: schema violation: {e}")))
    }

    pub fn build(self, origin: &str) -> Result<Mesh, CliError> {
        Mesh::new(self.dim, self.vertices, self.elements)
            .map_err(|e| CliError::Input(format!("{origin}: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_input_round_trip() {
        let text = r#"{"n":2,"entries":[1.0,0.5,0.5,1.0],"u_indices":[0],"v_indices":[1]}"#;
        let (m, p) = MatrixInput::parse(text, "inline").unwrap().build("inline").unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(p.u_indices(), &[0]);
    }

    #[test]
    fn matrix_input_rejects_asymmetry_and_bad_partition() {
        let text = r#"{"n":2,"entries":[1.0,0.5,-0.5,1.0],"u_indices":[0],"v_indices":[1]}"#;
        let err = MatrixInput::parse(text, "x").unwrap().build("x").unwrap_err();
        assert!(matches!(err, CliError::Input(_)));

        let text = r#"{"n":2,"entries":[1.0,0.5,0.5,1.0],"u_indices":[0,1],"v_indices":[1]}"#;
        assert!(MatrixInput::parse(text, "x").unwrap().build("x").is_err());

        assert!(MatrixInput::parse(r#"{"n":1}"#, "x").is_err());
        assert!(MatrixInput::parse(r#"{"n":1,"entries":[1.0],"u_indices":[],"v_indices":[0],"extra":1}"#, "x").is_err());
    }

    #[test]
    fn mesh_input_builds() {
        let text = r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1]],"elements":[[0,1,2]]}"#;
        let mesh = MeshInput::parse(text, "m").unwrap().build("m").unwrap();
        assert_eq!(mesh.element_count(), 1);
    }
}
