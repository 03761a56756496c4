//! The three γ subcommands: matrices, single elements, meshes.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use cbs_core::elasticity::{
    gamma_element_with, known_gamma2_bound, random_simplex, Form, Material, Mesh,
    OctahedronDiagonal, Simplex,
};
use cbs_core::strengthened::{
    gamma_alternating, gamma_exact, gamma_sampling, BlockPartition, GammaResult,
};
use cbs_core::symlin::SymMatrix;

use crate::report::{Report, Row};
use crate::schema::{MatrixInput, MeshInput};
use crate::{CliError, GammaMethodArg};

/// Tolerance on the `sampling ≤ alternating ≤ eigen` cross-method check.
const ORDERING_TOL: f64 = 1e-10;

const ALTERNATING_MAX_ITER: usize = 2000;
const ALTERNATING_TOL: f64 = 1e-13;

pub fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

// ------------------------------------------------------------- materials

/// One material case: the ν column is filled only when the material was
/// given through a Poisson ratio.
#[derive(Debug, Clone)]
pub struct MaterialCase {
    pub nu: Option<f64>,
    pub material: Material,
}

pub struct MaterialArgs {
    pub nu: Option<f64>,
    pub nu_sweep: Option<String>,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
}

/// `START:STOP:STEP` with integer stepping for reproducible values.
fn parse_sweep(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "--nu-sweep expects START:STOP:STEP, got {spec:?}"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("--nu-sweep: {p:?} is not a number")))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || stop < start {
        return Err(CliError::Usage(format!(
            "--nu-sweep needs STEP > 0 and STOP >= START, got {spec:?}"
        )));
    }
    let mut values = Vec::new();
    let mut k = 0u32;
    loop {
        let v = start + f64::from(k) * step;
        if v > stop + 1e-12 {
            break;
        }
        values.push(v);
        k += 1;
    }
    Ok(values)
}

fn nu_case(nu: f64) -> Result<MaterialCase, CliError> {
    Material::from_young_poisson(1.0, nu)
        .map(|material| MaterialCase { nu: Some(nu), material })
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Resolve the material flags into the case list. With no flags, forms
/// that use the material run the default sweep ν ∈ {0, 0.05, …, 0.45}
/// with E = 1; the divergence form runs once with λ = μ = 1.
pub fn material_cases(args: &MaterialArgs, form: Form) -> Result<Vec<MaterialCase>, CliError> {
    let given = [
        args.nu.is_some(),
        args.nu_sweep.is_some(),
        args.lambda.is_some() || args.mu.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if given > 1 {
        return Err(CliError::Usage(
            "give at most one of --nu, --nu-sweep, or --lambda/--mu".into(),
        ));
    }
    if let Some(nu) = args.nu {
        return Ok(vec![nu_case(nu)?]);
    }
    if let Some(spec) = &args.nu_sweep {
        return parse_sweep(spec)?.into_iter().map(nu_case).collect();
    }
    if args.lambda.is_some() || args.mu.is_some() {
        let (lambda, mu) = (args.lambda.unwrap_or(1.0), args.mu.unwrap_or(1.0));
        let material = Material::new(lambda, mu).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(vec![MaterialCase { nu: None, material }]);
    }
    match form {
        Form::Divergence => Ok(vec![MaterialCase {
            nu: None,
            material: Material::new(1.0, 1.0).expect("unit moduli"),
        }]),
        _ => parse_sweep("0:0.45:0.05")?.into_iter().map(nu_case).collect(),
    }
}

// --------------------------------------------------------------- matrix

pub fn cmd_gamma_matrix(
    input: &Path,
    method: GammaMethodArg,
    trials: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let text = read_to_string(input)?;
    let origin = input.display().to_string();
    let (matrix, partition) = MatrixInput::parse(&text, &origin)?.build(&origin)?;

    let result = run_method(&matrix, &partition, method, trials, seed)?;
    let mut ordering_violation = None;
    if method != GammaMethodArg::Eigen {
        let eigen = gamma_exact(&matrix, &partition).map_err(|e| CliError::Input(e.to_string()))?;
        if result.gamma2 > eigen.gamma2 + ORDERING_TOL {
            ordering_violation = Some(format!(
                "ordering invariant violated: {} gamma2 {:.17e} exceeds eigen gamma2 {:.17e}",
                method.as_str(),
                result.gamma2,
                eigen.gamma2
            ));
        }
    }

    let case_label = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "matrix".into());
    let report = Report::new(vec![gamma_row(case_label, "-", None, None, &result)], None, seed);
    report.emit(out)?;
    if out.is_some() {
        print!("{}", report.json());
    }
    if let Some(msg) = ordering_violation {
        return Err(CliError::Violation(msg));
    }
    Ok(())
}

fn run_method(
    matrix: &SymMatrix,
    partition: &BlockPartition,
    method: GammaMethodArg,
    trials: u64,
    seed: u64,
) -> Result<GammaResult, CliError> {
    let r = match method {
        GammaMethodArg::Eigen => gamma_exact(matrix, partition),
        GammaMethodArg::Alternating => {
            gamma_alternating(matrix, partition, ALTERNATING_MAX_ITER, ALTERNATING_TOL)
        }
        GammaMethodArg::Sampling => gamma_sampling(matrix, partition, trials.max(1), seed),
    };
    r.map_err(|e| CliError::Input(e.to_string()))
}

fn gamma_row(
    case_label: String,
    form: &str,
    nu: Option<f64>,
    material: Option<&Material>,
    g: &GammaResult,
) -> Row {
    Row {
        case_label,
        form: form.to_string(),
        nu,
        lambda: material.map(|m| m.lambda()),
        mu: material.map(|m| m.mu()),
        gamma2: g.gamma2,
        gamma: g.gamma,
        kernel_u: g.kernel_dim_u,
        kernel_v: g.kernel_dim_v,
        method: g.method.as_str().to_string(),
    }
}

// -------------------------------------------------------------- element

pub struct ElementArgs {
    pub dim: usize,
    pub form: Form,
    pub material: MaterialArgs,
    pub vertices: Option<String>,
    pub draws: u64,
    pub seed: u64,
    pub diagonal: u8,
    pub out: Option<PathBuf>,
}

fn parse_vertices(spec: &str, dim: usize) -> Result<Simplex, CliError> {
    let pts: Vec<Vec<f64>> = serde_json::from_str(spec)
        .map_err(|e| CliError::Usage(format!("--vertices: not a JSON coordinate array: {e}")))?;
    if pts.len() != dim + 1 || pts.iter().any(|p| p.len() != dim) {
        return Err(CliError::Usage(format!(
            "--vertices: expected {} points with {dim} coordinates each",
            dim + 1
        )));
    }
    let padded: Vec<[f64; 3]> = pts
        .iter()
        .map(|p| {
            let mut q = [0.0; 3];
            for (c, &x) in p.iter().enumerate() {
                q[c] = x;
            }
            q
        })
        .collect();
    match dim {
        2 => Simplex::triangle([
            [padded[0][0], padded[0][1]],
            [padded[1][0], padded[1][1]],
            [padded[2][0], padded[2][1]],
        ]),
        _ => Simplex::tetrahedron([padded[0], padded[1], padded[2], padded[3]]),
    }
    .map_err(|e| CliError::Input(format!("--vertices: {e}")))
}

pub fn cmd_gamma_element(args: ElementArgs) -> Result<(), CliError> {
    if args.dim != 2 && args.dim != 3 {
        return Err(CliError::Usage(format!("--dim must be 2 or 3, got {}", args.dim)));
    }
    let diagonal = OctahedronDiagonal::from_index(args.diagonal)
        .ok_or_else(|| CliError::Usage(format!("--diagonal must be 0, 1 or 2, got {}", args.diagonal)))?;

    let geometries: Vec<(String, Simplex)> = match args.vertices.as_deref() {
        None => vec![(
            "ref".to_string(),
            Simplex::reference(args.dim).expect("dim validated"),
        )],
        Some("random") => (0..args.draws.max(1))
            .map(|i| {
                random_simplex(args.dim, args.seed, i)
                    .map(|s| (format!("draw{i:03}"), s))
                    .map_err(|e| CliError::Input(e.to_string()))
            })
            .collect::<Result<_, _>>()?,
        Some(spec) => vec![("inline".to_string(), parse_vertices(spec, args.dim)?)],
    };
    let materials = material_cases(&args.material, args.form)?;

    let mut jobs = Vec::new();
    for (label, simplex) in &geometries {
        for case in &materials {
            let label = if args.dim == 3 {
                format!("{label}:d{}", diagonal.index())
            } else {
                label.clone()
            };
            jobs.push((label, simplex.clone(), case.clone()));
        }
    }

    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|(label, simplex, case)| {
            gamma_element_with(simplex, &case.material, args.form, diagonal)
                .map(|g| gamma_row(label.clone(), args.form.as_str(), case.nu, Some(&case.material), &g))
                .map_err(|e| CliError::Input(e.to_string()))
        })
        .collect::<Result<_, _>>()?;

    let report = Report::new(rows, known_gamma2_bound(args.dim, args.form), args.seed);
    report.emit(args.out.as_deref())?;
    if args.out.is_some() {
        print!("{}", report.json());
    }
    if report.bound_violated() {
        return Err(CliError::Violation(format!(
            "max gamma2 {:.17e} violates the {:.2} bound",
            report.summary.max_gamma2,
            report.summary.bound.expect("bound present")
        )));
    }
    Ok(())
}

// ----------------------------------------------------------------- mesh

pub struct MeshArgs {
    pub mesh: PathBuf,
    pub form: Form,
    pub material: MaterialArgs,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

pub fn cmd_gamma_mesh(args: MeshArgs) -> Result<(), CliError> {
    let text = read_to_string(&args.mesh)?;
    let origin = args.mesh.display().to_string();
    let mesh: Mesh = MeshInput::parse(&text, &origin)?.build(&origin)?;
    let materials = material_cases(&args.material, args.form)?;

    let mut jobs = Vec::new();
    for e in 0..mesh.element_count() {
        for case in &materials {
            jobs.push((e, mesh.simplex(e), case.clone()));
        }
    }

    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|(e, simplex, case)| {
            gamma_element_with(simplex, &case.material, args.form, OctahedronDiagonal::default())
                .map(|g| gamma_row(format!("e{e:03}"), args.form.as_str(), case.nu, Some(&case.material), &g))
                .map_err(|err| CliError::Input(format!("element {e}: {err}")))
        })
        .collect::<Result<_, _>>()?;

    let report = Report::new(rows, known_gamma2_bound(mesh.dim(), args.form), args.seed);
    report.emit(args.out.as_deref())?;
    if args.out.is_some() {
        print!("{}", report.json());
    }
    if report.bound_violated() {
        return Err(CliError::Violation(format!(
            "max gamma2 {:.17e} violates the {:.2} bound",
            report.summary.max_gamma2,
            report.summary.bound.expect("bound present")
        )));
    }
    Ok(())
}
