//! Mesh and cochain file formats plus Matrix Market export.
//!
//! Meshes come in as OFF or OBJ (orientation from winding order), cochains as
//! JSON keyed by canonical simplex vertex lists together with a content hash
//! of the mesh they belong to. All writers are deterministic: fixed ordering,
//! no timestamps, and value-exact float round-trips.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::forms::Cochain;
use crate::ops::{Side, SparseMatrix};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {what}")]
    Parse { line: usize, what: String },
    #[error("unsupported mesh extension: {0}")]
    UnknownExtension(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cochain file references unknown simplex {0:?}")]
    UnknownSimplex(Vec<usize>),
    #[error("cochain mesh hash {file} does not match mesh {mesh}")]
    HashMismatch { file: String, mesh: String },
    #[error("cochain degree {0} out of range")]
    BadDegree(usize),
}

/// Parsed mesh: vertex coordinates in file order and cells as vertex index
/// lists with the file's winding.
#[derive(Clone, Debug)]
pub struct MeshFile {
    pub coords: Vec<nalgebra::DVector<f64>>,
    pub cells: Vec<Vec<usize>>,
}

impl MeshFile {
    pub fn read(path: &Path) -> Result<Self, IoError> {
        let text = std::fs::read_to_string(path)?;
        match path.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase()) {
            Some(ext) if ext == "off" => parse_off(&text),
            Some(ext) if ext == "obj" => parse_obj(&text),
            other => Err(IoError::UnknownExtension(other.unwrap_or_default())),
        }
    }

    pub fn write_off(&self, path: &Path) -> Result<(), IoError> {
        let mut out = String::from("OFF\n");
        let _ = writeln!(out, "{} {} 0", self.coords.len(), self.cells.len());
        for c in &self.coords {
            let parts: Vec<String> = c.iter().map(|v| format!("{v:.17e}")).collect();
            let _ = writeln!(out, "{}", parts.join(" "));
        }
        for cell in &self.cells {
            let parts: Vec<String> = cell.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{} {}", cell.len(), parts.join(" "));
        }
        std::fs::write(path, out)?;
        Ok(())
    }

    /// Content hash of the canonicalized vertex/cell lists.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        for c in &self.coords {
            for v in c.iter() {
                hasher.update(format!("{v:.17e} ").as_bytes());
            }
            hasher.update(b"\n");
        }
        for cell in &self.cells {
            for v in cell {
                hasher.update(format!("{v} ").as_bytes());
            }
            hasher.update(b"\n");
        }
        hex(&hasher.finalize())
    }
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

fn parse_off(text: &str) -> Result<MeshFile, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(IoError::Parse {
        line: 0,
        what: "empty file".into(),
    })?;
    if !header.eq_ignore_ascii_case("OFF") {
        return Err(IoError::Parse { line, what: "missing OFF header".into() });
    }
    let (line, counts) = lines.next().ok_or(IoError::Parse {
        line,
        what: "missing count line".into(),
    })?;
    let nums: Vec<usize> = counts
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| IoError::Parse { line, what: format!("bad count {t}") }))
        .collect::<Result<_, _>>()?;
    if nums.len() < 2 {
        return Err(IoError::Parse { line, what: "need vertex and cell counts".into() });
    }
    let (nv, nc) = (nums[0], nums[1]);
    let mut coords = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, l) = lines.next().ok_or(IoError::Parse {
            line,
            what: "unexpected end of vertex list".into(),
        })?;
        let vals: Vec<f64> = l
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| IoError::Parse { line, what: format!("bad float {t}") })
            })
            .collect::<Result<_, _>>()?;
        coords.push(nalgebra::DVector::from_vec(vals));
    }
    let mut cells = Vec::with_capacity(nc);
    for _ in 0..nc {
        let (line, l) = lines.next().ok_or(IoError::Parse {
            line,
            what: "unexpected end of cell list".into(),
        })?;
        let vals: Vec<usize> = l
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| IoError::Parse { line, what: format!("bad index {t}") })
            })
            .collect::<Result<_, _>>()?;
        if vals.is_empty() || vals.len() != vals[0] + 1 {
            return Err(IoError::Parse { line, what: "cell count mismatch".into() });
        }
        cells.push(vals[1..].to_vec());
    }
    Ok(MeshFile { coords, cells })
}

fn parse_obj(text: &str) -> Result<MeshFile, IoError> {
    let mut coords = Vec::new();
    let mut cells = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let mut parts = l.split_whitespace();
        match parts.next() {
            Some("v") => {
                let vals: Vec<f64> = parts
                    .map(|t| {
                        t.parse().map_err(|_| IoError::Parse {
                            line,
                            what: format!("bad float {t}"),
                        })
                    })
                    .collect::<Result<_, _>>()?;
                coords.push(nalgebra::DVector::from_vec(vals));
            }
            Some("f") => {
                let verts: Vec<usize> = parts
                    .map(|t| {
                        let idx = t.split('/').next().unwrap_or(t);
                        idx.parse::<usize>()
                            .map_err(|_| IoError::Parse {
                                line,
                                what: format!("bad face index {t}"),
                            })
                            .map(|v| v - 1)
                    })
                    .collect::<Result<_, _>>()?;
                cells.push(verts);
            }
            _ => {}
        }
    }
    Ok(MeshFile { coords, cells })
}

/// JSON cochain document keyed by canonical simplex vertex lists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CochainFile {
    pub degree: usize,
    pub side: Side,
    pub mesh_hash: String,
    /// (vertex list of the simplex in its stored orientation, value)
    pub entries: Vec<(Vec<usize>, f64)>,
}

impl CochainFile {
    /// Serializes a cochain against the complex built from `mesh`.
    ///
    /// Dual cochains are keyed by the primal simplices their cells are dual
    /// to. Vertex lists carry the stored orientation of each simplex.
    pub fn from_cochain(
        cochain: &Cochain,
        complex: &SimplicialComplex,
        mesh_hash: &str,
    ) -> Self {
        let n = complex.dimension();
        let dim = match cochain.side {
            Side::Primal => cochain.degree,
            Side::Dual => n - cochain.degree,
        };
        let entries = (0..cochain.len())
            .map(|i| {
                let mut verts = complex.simplex_vertices(dim, i).to_vec();
                if complex.orientation_sign(dim, i) < 0 {
                    verts.swap(0, 1);
                }
                (verts, cochain.values[i])
            })
            .collect();
        CochainFile {
            degree: cochain.degree,
            side: cochain.side,
            mesh_hash: mesh_hash.to_string(),
            entries,
        }
    }

    pub fn into_cochain(
        &self,
        complex: &SimplicialComplex,
        mesh_hash: &str,
    ) -> Result<Cochain, IoError> {
        if self.mesh_hash != mesh_hash {
            return Err(IoError::HashMismatch {
                file: self.mesh_hash.clone(),
                mesh: mesh_hash.to_string(),
            });
        }
        let n = complex.dimension();
        let dim = match self.side {
            Side::Primal => self.degree,
            Side::Dual => {
                if self.degree > n {
                    return Err(IoError::BadDegree(self.degree));
                }
                n - self.degree
            }
        };
        if dim > n {
            return Err(IoError::BadDegree(self.degree));
        }
        let mut out = Cochain::zero(self.degree, self.side, complex.num_simplices(dim));
        for (verts, value) in &self.entries {
            let (i, sign) = complex
                .find_simplex(verts)
                .ok_or_else(|| IoError::UnknownSimplex(verts.clone()))?;
            out.values[i] = sign as f64 * value;
        }
        Ok(out)
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

/// JSON document for discrete vector fields: one ambient vector per dual
/// vertex (top-simplex circumcenter), in top-simplex index order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorFieldFile {
    pub mesh_hash: String,
    pub vectors: Vec<Vec<f64>>,
}

impl VectorFieldFile {
    pub fn from_field(field: &crate::fields::DualVectorField, mesh_hash: &str) -> Self {
        VectorFieldFile {
            mesh_hash: mesh_hash.to_string(),
            vectors: field.vectors.iter().map(|v| v.iter().copied().collect()).collect(),
        }
    }

    pub fn into_field(
        &self,
        complex: &SimplicialComplex,
        geometry: &crate::geometry::GeometryTable,
        mesh_hash: &str,
    ) -> Result<crate::fields::DualVectorField, IoError> {
        if self.mesh_hash != mesh_hash {
            return Err(IoError::HashMismatch {
                file: self.mesh_hash.clone(),
                mesh: mesh_hash.to_string(),
            });
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| nalgebra::DVector::from_column_slice(v))
            .collect();
        crate::fields::DualVectorField::new(complex, geometry, vectors)
            .map_err(|e| IoError::Parse { line: 0, what: e.to_string() })
    }
}

/// Matrix Market coordinate text, entries sorted by (row, col), 1-based.
pub fn matrix_market(matrix: &SparseMatrix<f64>) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(out, "{} {} {}", matrix.nrows(), matrix.ncols(), matrix.nnz());
    for &(r, c, v) in matrix.triplets() {
        let _ = writeln!(out, "{} {} {v:.17e}", r + 1, c + 1);
    }
    out
}
