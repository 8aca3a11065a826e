//! Batch front end: operator assembly and export, invariant suites, and the
//! harmonic/Maxwell solvers. All heavy lifting lives in the library; this
//! binary parses arguments, wires files, and maps errors to exit codes
//! (0 success, 1 check failure, 2 usage, 3 data).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use dec::check;
use dec::complex::SimplicialComplex;
use dec::fields;
use dec::forms::Dec;
use dec::geometry::{build_dual, DualMode, GeometryTable};
use dec::io::{matrix_market, CochainFile, MeshFile};
use dec::ops::SparseMatrix;
use dec::remesh;
use dec::variational::{self, PrismCell, PrismalComplex, TimeElem};

#[derive(Parser)]
#[command(name = "dec", version, about = "Discrete exterior calculus batch tool")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble an operator matrix and write it in Matrix Market format.
    Operator {
        /// Which operator to assemble.
        name: OperatorName,
        /// Input mesh (.off or .obj).
        #[arg(long)]
        mesh: PathBuf,
        /// Degree of the operator's input space.
        #[arg(long)]
        degree: usize,
        /// Output path for the Matrix Market file.
        #[arg(long)]
        out: PathBuf,
        /// Target mesh for the transfer operator.
        #[arg(long)]
        target_mesh: Option<PathBuf>,
        /// Allow non-well-centered meshes using signed dual volumes.
        #[arg(long)]
        signed_volumes: bool,
    },
    /// Run invariant suites and print one pass/fail line per check.
    Check {
        #[arg(long)]
        mesh: PathBuf,
        /// Suite name (dd, stokes, starstar, wedge, divergence, poincare)
        /// or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the randomized parts of the suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        signed_volumes: bool,
    },
    /// Solve a variational problem described by a JSON config.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Output path for the solution cochain JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorName {
    Boundary,
    D,
    Star,
    Delta,
    Laplacian,
    Div,
    Flat,
    Sharp,
    Transfer,
}

#[derive(Debug)]
enum AppError {
    Usage(String),
    Data(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Data(_) => 3,
        }
    }

    fn report(&self) {
        let (kind, message) = match self {
            AppError::Usage(m) => ("usage", m),
            AppError::Data(m) => ("data", m),
        };
        eprintln!(
            "{}",
            serde_json::json!({ "error": kind, "message": message })
        );
    }
}

fn data_err(e: impl std::fmt::Display) -> AppError {
    AppError::Data(e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("DEC_LOG")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            e.report();
            ExitCode::from(e.exit_code())
        }
    }
}

fn load_mesh(
    path: &Path,
    mode: DualMode,
) -> Result<(MeshFile, SimplicialComplex, GeometryTable), AppError> {
    let mesh = MeshFile::read(path).map_err(data_err)?;
    let complex = SimplicialComplex::build(&mesh.cells).map_err(data_err)?;
    let (_, geometry) = build_dual(&complex, &mesh.coords, mode).map_err(data_err)?;
    Ok((mesh, complex, geometry))
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Operator { name, mesh, degree, out, target_mesh, signed_volumes } => {
            let mode = if signed_volumes { DualMode::Signed } else { DualMode::WellCenteredOnly };
            let (_, complex, geometry) = load_mesh(&mesh, mode)?;
            let matrix = assemble_operator(
                name,
                &complex,
                &geometry,
                degree,
                target_mesh.as_deref(),
                mode,
            )?;
            std::fs::write(&out, matrix_market(&matrix)).map_err(data_err)?;
            println!(
                "wrote {} ({}x{}, {} entries)",
                out.display(),
                matrix.nrows(),
                matrix.ncols(),
                matrix.nnz()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { mesh, suite, seed, signed_volumes } => {
            let mode = if signed_volumes { DualMode::Signed } else { DualMode::WellCenteredOnly };
            let (_, complex, geometry) = load_mesh(&mesh, mode)?;
            let reports = if suite == "all" {
                check::run_all(&complex, &geometry, seed)
            } else {
                vec![check::run_suite(&suite, &complex, &geometry, seed).ok_or_else(|| {
                    AppError::Usage(format!(
                        "unknown suite {suite}; available: {} or all",
                        check::SUITES.join(", ")
                    ))
                })?]
            };
            let mut all_ok = true;
            for report in &reports {
                println!("suite {}:", report.suite);
                print!("{}", report.render());
                all_ok &= report.passed();
            }
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Solve { config, out } => solve(&config, out.as_deref()),
    }
}

fn assemble_operator(
    name: OperatorName,
    complex: &SimplicialComplex,
    geometry: &GeometryTable,
    degree: usize,
    target_mesh: Option<&Path>,
    mode: DualMode,
) -> Result<SparseMatrix<f64>, AppError> {
    let dec = Dec::new(complex, geometry);
    let matrix = match name {
        OperatorName::Boundary => {
            complex.boundary_matrix(degree).map_err(data_err)?.to_f64()
        }
        OperatorName::D => dec.d_matrix_int(degree).map_err(data_err)?.to_f64(),
        OperatorName::Star => dec.hodge_primal_to_dual(degree).map_err(data_err)?.matrix,
        OperatorName::Delta => {
            if degree == 0 {
                return Err(AppError::Usage("delta of 0-forms is the zero map".into()));
            }
            dec.codifferential_matrix(degree - 1).map_err(data_err)?.matrix
        }
        OperatorName::Laplacian => dec.laplace_matrix(degree).map_err(data_err)?.matrix,
        OperatorName::Flat => flat_matrix(complex, geometry),
        OperatorName::Div => {
            let flat = flat_matrix(complex, geometry);
            let delta = dec.codifferential_matrix(0).map_err(data_err)?.matrix;
            delta.mul(&flat).scale(-1.0)
        }
        OperatorName::Sharp => sharp_matrix(complex, geometry),
        OperatorName::Transfer => {
            let target_path = target_mesh.ok_or_else(|| {
                AppError::Usage("transfer needs --target-mesh".into())
            })?;
            let (_, target, target_geometry) = load_mesh(target_path, mode)?;
            remesh::transfer_operator(complex, geometry, &target, &target_geometry, degree)
                .map_err(data_err)?
                .matrix
        }
    };
    Ok(matrix)
}

/// Flat as a matrix over flattened dual-field components, column order
/// top-simplex-major then ambient component.
fn flat_matrix(complex: &SimplicialComplex, geometry: &GeometryTable) -> SparseMatrix<f64> {
    let n = complex.dimension();
    let ambient = geometry.ambient_dim();
    let edges = complex.num_simplices(1);
    let mut triplets = Vec::new();
    for e in 0..edges {
        let dual = geometry.dual_volume(1, e);
        if dual == 0.0 {
            continue;
        }
        let edge = geometry.edge_vector(complex, e);
        let mut frontier = vec![e];
        for d in 1..n {
            let mut next: Vec<usize> = frontier
                .iter()
                .flat_map(|&i| complex.cofaces_of(d, i).iter().map(|&(j, _)| j))
                .collect();
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        for t in frontier {
            let w = geometry.restricted_volume(1, e, n, t) / dual;
            for c in 0..ambient {
                triplets.push((e, t * ambient + c, w * edge[c]));
            }
        }
    }
    SparseMatrix::from_triplets(edges, complex.num_simplices(n) * ambient, triplets)
}

/// Sharp as a matrix from edge values to flattened per-vertex vectors.
fn sharp_matrix(complex: &SimplicialComplex, geometry: &GeometryTable) -> SparseMatrix<f64> {
    let ambient = geometry.ambient_dim();
    let edges = complex.num_simplices(1);
    let verts = complex.num_simplices(0);
    let dec = Dec::new(complex, geometry);
    let mut triplets = Vec::new();
    // columns from unit cochains; edge counts are small at batch scale
    for e in 0..edges {
        let mut unit = dec::forms::Cochain::zero(1, dec::ops::Side::Primal, edges);
        unit.values[e] = 1.0;
        let field = fields::sharp(&dec, &unit).expect("1-form sharp");
        for (v, vector) in field.iter().enumerate() {
            for c in 0..ambient {
                if vector[c] != 0.0 {
                    triplets.push((v * ambient + c, e, vector[c]));
                }
            }
        }
    }
    SparseMatrix::from_triplets(verts * ambient, edges, triplets)
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum TimeSpec {
    Slice(usize),
    Interval(usize),
}

#[derive(Serialize, Deserialize)]
struct CellSpec {
    spatial: Vec<usize>,
    time: TimeSpec,
}

#[derive(Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
enum SolveConfig {
    Harmonic {
        mesh: PathBuf,
        boundary: Vec<(usize, f64)>,
        #[serde(default)]
        signed_volumes: bool,
    },
    Maxwell {
        spatial_mesh: PathBuf,
        time_grid: Vec<f64>,
        #[serde(default)]
        fixed: Vec<(CellSpec, f64)>,
        #[serde(default)]
        kappa_out: Option<PathBuf>,
        #[serde(default)]
        signed_volumes: bool,
    },
}

fn solve(config_path: &Path, out: Option<&Path>) -> Result<ExitCode, AppError> {
    let text = std::fs::read_to_string(config_path).map_err(data_err)?;
    let config: SolveConfig = serde_json::from_str(&text)
        .map_err(|e| AppError::Usage(format!("config: {e}")))?;
    match config {
        SolveConfig::Harmonic { mesh, boundary, signed_volumes } => {
            let mode = if signed_volumes { DualMode::Signed } else { DualMode::WellCenteredOnly };
            let (mesh_file, complex, geometry) = load_mesh(&mesh, mode)?;
            let dec = Dec::new(&complex, &geometry);
            let mut problem = variational::DirichletProblem::default();
            for (vertex, value) in boundary {
                let idx = complex
                    .vertex_index(vertex)
                    .ok_or_else(|| AppError::Data(format!("unknown vertex {vertex}")))?;
                problem.boundary_values.insert(idx, value);
            }
            let phi = variational::solve_harmonic(&dec, &problem).map_err(data_err)?;
            let residual = variational::harmonic_el_residual(&dec, &phi);
            let max_interior = (0..phi.len())
                .filter(|v| !problem.boundary_values.contains_key(v))
                .map(|v| residual.values[v].abs())
                .fold(0.0f64, f64::max);
            println!(
                "{}",
                serde_json::json!({
                    "problem": "harmonic",
                    "interior_residual_max": max_interior,
                    "vertices": phi.len(),
                })
            );
            if let Some(path) = out {
                CochainFile::from_cochain(&phi, &complex, &mesh_file.hash())
                    .write(path)
                    .map_err(data_err)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        SolveConfig::Maxwell { spatial_mesh, time_grid, fixed, kappa_out, signed_volumes } => {
            let mode = if signed_volumes { DualMode::Signed } else { DualMode::WellCenteredOnly };
            let (_, spatial, geometry) = load_mesh(&spatial_mesh, mode)?;
            let prism = PrismalComplex::build(spatial, geometry, time_grid).map_err(data_err)?;
            let mut fixed_values = BTreeMap::new();
            for (spec, value) in fixed {
                let (idx, sign) = resolve_cell(&prism, &spec)?;
                fixed_values.insert(idx, sign * value);
            }
            let a = prism.solve_maxwell(&fixed_values).map_err(data_err)?;
            let residual = prism.maxwell_el_residual(&a);
            let max_interior = (0..a.len())
                .filter(|&e| prism.is_interior(1, e))
                .map(|e| residual[e].abs())
                .fold(0.0f64, f64::max);
            println!(
                "{}",
                serde_json::json!({
                    "problem": "maxwell",
                    "interior_residual_max": max_interior,
                    "action": prism.maxwell_action(&a),
                    "one_cells": a.len(),
                })
            );
            if let Some(path) = kappa_out {
                write_kappa_table(&prism, &path)?;
            }
            if let Some(path) = out {
                let doc: Vec<(CellSpec, f64)> = (0..a.len())
                    .map(|e| (cell_spec(&prism, 1, e), a[e]))
                    .collect();
                let text = serde_json::to_string_pretty(&doc).map_err(data_err)?;
                std::fs::write(path, text).map_err(data_err)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn resolve_cell(prism: &PrismalComplex, spec: &CellSpec) -> Result<(usize, f64), AppError> {
    let time = match spec.time {
        TimeSpec::Slice(m) => TimeElem::Slice(m),
        TimeSpec::Interval(m) => TimeElem::Interval(m),
    };
    let (sidx, sign) = prism
        .spatial
        .find_simplex(&spec.spatial)
        .ok_or_else(|| AppError::Data(format!("unknown spatial simplex {:?}", spec.spatial)))?;
    let cell = PrismCell { spatial_dim: spec.spatial.len() - 1, spatial_idx: sidx, time };
    let idx = prism
        .cell_index(&cell)
        .ok_or_else(|| AppError::Data(format!("cell out of range: {:?}", spec.spatial)))?;
    Ok((idx, sign as f64))
}

fn cell_spec(prism: &PrismalComplex, p: usize, i: usize) -> CellSpec {
    let cell = prism.cell(p, i);
    let mut spatial = prism
        .spatial
        .simplex_vertices(cell.spatial_dim, cell.spatial_idx)
        .to_vec();
    if prism.spatial.orientation_sign(cell.spatial_dim, cell.spatial_idx) < 0 && spatial.len() > 1
    {
        spatial.swap(0, 1);
    }
    CellSpec {
        spatial,
        time: match cell.time {
            TimeElem::Slice(m) => TimeSpec::Slice(m),
            TimeElem::Interval(m) => TimeSpec::Interval(m),
        },
    }
}

fn write_kappa_table(prism: &PrismalComplex, path: &Path) -> Result<(), AppError> {
    #[derive(Serialize)]
    struct KappaEntry {
        dim: usize,
        cell: CellSpec,
        kappa: i64,
    }
    let mut entries = Vec::new();
    for p in 0..=prism.dimension() {
        for i in 0..prism.num_cells(p) {
            entries.push(KappaEntry {
                dim: p,
                cell: cell_spec(prism, p, i),
                kappa: prism.kappa(p, i),
            });
        }
    }
    let text = serde_json::to_string_pretty(&entries).map_err(data_err)?;
    std::fs::write(path, text).map_err(data_err)?;
    Ok(())
}
