//! Discrete vector fields and the operators tying them to forms: flat ♭,
//! sharp ♯, divergence, the algebraic contraction, and the Lie derivative of
//! 0-forms via the Cartan formula.
//!
//! Dual vector fields assign one ambient vector per top-simplex circumcenter,
//! tangent to that simplex. Divergence is computed twice, as -δX♭ and as the
//! expanded per-vertex flux sum; the two must agree to roundoff and the check
//! suite asserts it.

use nalgebra::DVector;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::forms::{Cochain, Dec};
use crate::geometry::GeometryTable;
use crate::ops::Side;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("vector count {got} does not match {what} count {want}")]
    VectorCount { got: usize, want: usize, what: &'static str },
    #[error("vector at top simplex {0} has non-tangent component {1:.3e}")]
    NotTangent(usize, f64),
    #[error("primal vector fields need a flat complex: dimension {dim} in ambient {ambient}")]
    NotFlat { dim: usize, ambient: usize },
    #[error("zero dual volume at edge {0}")]
    ZeroDualVolume(usize),
    #[error("contraction only supports 1-forms, got degree {0}")]
    UnsupportedDegree(usize),
    #[error("expected a primal {0}-form")]
    WrongForm(usize),
}

/// One ambient vector per dual vertex c(σⁿ), tangent to its top simplex.
#[derive(Clone, Debug)]
pub struct DualVectorField {
    pub vectors: Vec<DVector<f64>>,
}

impl DualVectorField {
    /// Validates tangency: the component of each vector orthogonal to its
    /// top simplex must be below 1e-10 relative.
    pub fn new(
        complex: &SimplicialComplex,
        geometry: &GeometryTable,
        vectors: Vec<DVector<f64>>,
    ) -> Result<Self, FieldError> {
        let n = complex.dimension();
        let want = complex.num_simplices(n);
        if vectors.len() != want {
            return Err(FieldError::VectorCount {
                got: vectors.len(),
                want,
                what: "top simplex",
            });
        }
        for (t, x) in vectors.iter().enumerate() {
            let res = tangency_residual(complex, geometry, t, x);
            if res > 1e-10 * (1.0 + x.norm()) {
                return Err(FieldError::NotTangent(t, res));
            }
        }
        Ok(DualVectorField { vectors })
    }

    /// Samples an ambient field at the top-simplex circumcenters, projecting
    /// each sample onto its simplex's tangent span.
    pub fn sample(
        complex: &SimplicialComplex,
        geometry: &GeometryTable,
        f: impl Fn(&DVector<f64>) -> DVector<f64>,
    ) -> Self {
        let n = complex.dimension();
        let vectors = (0..complex.num_simplices(n))
            .map(|t| {
                let x = f(geometry.circumcenter(n, t));
                project_tangent(complex, geometry, t, &x)
            })
            .collect();
        DualVectorField { vectors }
    }

    pub fn zero(complex: &SimplicialComplex, ambient: usize) -> Self {
        let n = complex.dimension();
        DualVectorField {
            vectors: vec![DVector::zeros(ambient); complex.num_simplices(n)],
        }
    }
}

/// One ambient vector per primal vertex; flat complexes only.
#[derive(Clone, Debug)]
pub struct PrimalVectorField {
    pub vectors: Vec<DVector<f64>>,
}

impl PrimalVectorField {
    pub fn new(
        complex: &SimplicialComplex,
        geometry: &GeometryTable,
        vectors: Vec<DVector<f64>>,
    ) -> Result<Self, FieldError> {
        if complex.dimension() != geometry.ambient_dim() {
            return Err(FieldError::NotFlat {
                dim: complex.dimension(),
                ambient: geometry.ambient_dim(),
            });
        }
        let want = complex.num_simplices(0);
        if vectors.len() != want {
            return Err(FieldError::VectorCount { got: vectors.len(), want, what: "vertex" });
        }
        Ok(PrimalVectorField { vectors })
    }
}

fn simplex_edge_basis(
    complex: &SimplicialComplex,
    geometry: &GeometryTable,
    t: usize,
) -> Vec<DVector<f64>> {
    let n = complex.dimension();
    let verts = complex.simplex_vertices(n, t);
    let p0 = geometry.circumcenter(0, complex.vertex_index(verts[0]).expect("vertex"));
    verts[1..]
        .iter()
        .map(|&v| {
            geometry.circumcenter(0, complex.vertex_index(v).expect("vertex")) - p0
        })
        .collect()
}

fn project_tangent(
    complex: &SimplicialComplex,
    geometry: &GeometryTable,
    t: usize,
    x: &DVector<f64>,
) -> DVector<f64> {
    let basis = simplex_edge_basis(complex, geometry, t);
    if basis.is_empty() {
        return DVector::zeros(x.len());
    }
    // Gram-Schmidt on the edge basis
    let mut ortho: Vec<DVector<f64>> = Vec::with_capacity(basis.len());
    for mut b in basis {
        for q in &ortho {
            let c = q.dot(&b);
            b -= q * c;
        }
        let norm = b.norm();
        if norm > 1e-13 {
            ortho.push(b / norm);
        }
    }
    let mut out = DVector::zeros(x.len());
    for q in &ortho {
        out += q * q.dot(x);
    }
    out
}

fn tangency_residual(
    complex: &SimplicialComplex,
    geometry: &GeometryTable,
    t: usize,
    x: &DVector<f64>,
) -> f64 {
    (x - project_tangent(complex, geometry, t, x)).norm()
}

/// Flat of a dual vector field: the primal 1-form with
/// ⟨X♭, σ¹⟩ = Σ_{σⁿ ≻ σ¹} (|⋆σ¹ ∩ σⁿ| / |⋆σ¹|) X(c(σⁿ)) · σ⃗¹.
pub fn flat(dec: &Dec, field: &DualVectorField) -> Result<Cochain, FieldError> {
    let complex = dec.complex;
    let n = complex.dimension();
    let count = complex.num_simplices(1);
    let mut out = Cochain::zero(1, Side::Primal, count);
    for e in 0..count {
        let dual_vol = dec.geometry.dual_volume(1, e);
        if dual_vol == 0.0 {
            return Err(FieldError::ZeroDualVolume(e));
        }
        let edge = dec.geometry.edge_vector(complex, e);
        let mut acc = 0.0;
        for t in tops_above(complex, 1, e) {
            let w = dec.geometry.restricted_volume(1, e, n, t) / dual_vol;
            acc += w * field.vectors[t].dot(&edge);
        }
        out.values[e] = acc;
    }
    Ok(out)
}

/// Sharp of a primal 1-form: one vector per vertex,
/// α♯(v) = Σ_{[v,w]} ⟨α,[v,w]⟩ Σ_{σⁿ ≻ [v,w]} (|⋆v ∩ σⁿ| / |σⁿ|) n̂,
/// where n̂ is the inward unit normal of the facet of σⁿ opposite w (the
/// facet normal pointing toward w). In one dimension n̂ reduces to the unit
/// edge direction away from v.
pub fn sharp(dec: &Dec, alpha: &Cochain) -> Result<Vec<DVector<f64>>, FieldError> {
    if alpha.degree != 1 || alpha.side != Side::Primal {
        return Err(FieldError::WrongForm(1));
    }
    let complex = dec.complex;
    let geometry = dec.geometry;
    let n = complex.dimension();
    let ambient = geometry.ambient_dim();
    let boundary: std::collections::BTreeSet<usize> = complex.boundary_vertices();
    let mut open_ring = 0usize;
    let mut out = vec![DVector::zeros(ambient); complex.num_simplices(0)];
    for v in 0..complex.num_simplices(0) {
        if boundary.contains(&v) {
            open_ring += 1;
        }
        let v_id = complex.vertex_id(v);
        let mut total = DVector::zeros(ambient);
        for &(e, _) in complex.cofaces_of(0, v) {
            let verts = complex.simplex_vertices(1, e);
            let w_id = if verts[0] == v_id { verts[1] } else { verts[0] };
            // α evaluated on [v, w]
            let (idx, sign) = complex.find_simplex(&[v_id, w_id]).expect("edge exists");
            let a = sign as f64 * alpha.values[idx];
            if a == 0.0 {
                continue;
            }
            for t in tops_above(complex, 1, e) {
                let ratio =
                    geometry.restricted_volume(0, v, n, t) / geometry.primal_volume(n, t);
                let normal = facet_normal_toward(complex, geometry, t, w_id);
                total += normal * (a * ratio);
            }
        }
        out[v] = total;
    }
    if open_ring > 0 {
        log::warn!("sharp evaluated at {open_ring} boundary vertices with open one-rings");
    }
    Ok(out)
}

/// Inward unit normal of the facet of σⁿ opposite vertex w, pointing toward w.
fn facet_normal_toward(
    complex: &SimplicialComplex,
    geometry: &GeometryTable,
    t: usize,
    w_id: usize,
) -> DVector<f64> {
    let verts = complex.simplex_vertices(complex.dimension(), t);
    let wp = geometry
        .circumcenter(0, complex.vertex_index(w_id).expect("vertex"))
        .clone();
    let facet: Vec<DVector<f64>> = verts
        .iter()
        .filter(|&&u| u != w_id)
        .map(|&u| geometry.circumcenter(0, complex.vertex_index(u).expect("vertex")).clone())
        .collect();
    let d = &wp - &facet[0];
    // subtract the projection onto the facet's span
    let mut ortho: Vec<DVector<f64>> = Vec::new();
    for f in facet.iter().skip(1) {
        let mut b = f - &facet[0];
        for q in &ortho {
            let c = q.dot(&b);
            b -= q * c;
        }
        let norm = b.norm();
        if norm > 1e-13 {
            ortho.push(b / norm);
        }
    }
    let mut normal = d.clone();
    for q in &ortho {
        normal -= q * q.dot(&d);
    }
    let norm = normal.norm();
    if norm > 1e-13 {
        normal / norm
    } else {
        DVector::zeros(d.len())
    }
}

fn tops_above(complex: &SimplicialComplex, dim: usize, index: usize) -> Vec<usize> {
    let n = complex.dimension();
    let mut frontier = vec![index];
    for d in dim..n {
        let mut next: Vec<usize> = frontier
            .iter()
            .flat_map(|&i| complex.cofaces_of(d, i).iter().map(|&(j, _)| j))
            .collect();
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    frontier
}

/// div(X) = -δ X♭ by operator composition.
pub fn divergence(dec: &Dec, field: &DualVectorField) -> Result<Cochain, FieldError> {
    let xb = flat(dec, field)?;
    let delta = dec.codifferential(&xb).expect("1-form codifferential");
    Ok(delta.scale(-1.0))
}

/// The expanded geometric divergence: per vertex, the net outward flux of X
/// through the dual cell boundary divided by the dual cell volume.
pub fn divergence_expanded(dec: &Dec, field: &DualVectorField) -> Result<Cochain, FieldError> {
    let complex = dec.complex;
    let geometry = dec.geometry;
    let n = complex.dimension();
    let mut out = Cochain::zero(0, Side::Primal, complex.num_simplices(0));
    for v in 0..complex.num_simplices(0) {
        let v_id = complex.vertex_id(v);
        let mut acc = 0.0;
        for &(e, _) in complex.cofaces_of(0, v) {
            let edge = dec.geometry.edge_vector(complex, e);
            let verts = complex.simplex_vertices(1, e);
            // unit vector along the edge pointing away from v
            let sign = if verts[0] == v_id { 1.0 } else { -1.0 }
                * complex.orientation_sign(1, e) as f64;
            let away = edge.normalize() * sign;
            for t in tops_above(complex, 1, e) {
                let r = geometry.restricted_volume(1, e, n, t);
                acc += r * field.vectors[t].dot(&away);
            }
        }
        out.values[v] = acc / geometry.dual_volume(0, v);
    }
    Ok(out)
}

/// Dual-region divergence-theorem balance for a set of vertex indices:
/// returns (Σ_v |⋆v| div X(v), boundary flux), which agree to roundoff.
pub fn divergence_balance(
    dec: &Dec,
    field: &DualVectorField,
    region: &std::collections::BTreeSet<usize>,
) -> Result<(f64, f64), FieldError> {
    let complex = dec.complex;
    let geometry = dec.geometry;
    let n = complex.dimension();
    let div = divergence_expanded(dec, field)?;
    let interior: f64 = region
        .iter()
        .map(|&v| geometry.dual_volume(0, v) * div.values[v])
        .sum();
    let mut flux = 0.0;
    for e in 0..complex.num_simplices(1) {
        let verts = complex.simplex_vertices(1, e);
        let a = complex.vertex_index(verts[0]).expect("vertex");
        let b = complex.vertex_index(verts[1]).expect("vertex");
        let (inside, crossing) = match (region.contains(&a), region.contains(&b)) {
            (true, false) => (a, true),
            (false, true) => (b, true),
            _ => (a, false),
        };
        if !crossing {
            continue;
        }
        let inside_id = complex.vertex_id(inside);
        let edge = geometry.edge_vector(complex, e);
        let sign = if verts[0] == inside_id { 1.0 } else { -1.0 }
            * complex.orientation_sign(1, e) as f64;
        let outward = edge.normalize() * sign;
        for t in tops_above(complex, 1, e) {
            flux += geometry.restricted_volume(1, e, n, t) * field.vectors[t].dot(&outward);
        }
    }
    Ok((interior, flux))
}

/// Algebraic contraction iₓα for a primal 1-form, realized through the
/// primal-dual wedge X♭ ∧ ∗α redistributed from support volumes to dual
/// cells: ⟨iₓα, v⟩ = (1/|⋆v|) Σ_{e ≻ v} (|⋆e| / 2|e|) ⟨X♭,e⟩ ⟨α,e⟩.
/// The half comes from |V_e ∩ ⋆v| = |V_e|/2 (circumcenters of edges are
/// midpoints) and the edge lengths cancel against the two edge evaluations.
pub fn contraction_1form(
    dec: &Dec,
    field: &DualVectorField,
    alpha: &Cochain,
) -> Result<Cochain, FieldError> {
    if alpha.degree != 1 || alpha.side != Side::Primal {
        return Err(FieldError::UnsupportedDegree(alpha.degree));
    }
    let complex = dec.complex;
    let geometry = dec.geometry;
    let xb = flat(dec, field)?;
    let mut out = Cochain::zero(0, Side::Primal, complex.num_simplices(0));
    for v in 0..complex.num_simplices(0) {
        let mut acc = 0.0;
        for &(e, _) in complex.cofaces_of(0, v) {
            let w = geometry.hodge_weight(1, e);
            acc += 0.5 * w * xb.values[e] * alpha.values[e];
        }
        out.values[v] = acc / geometry.dual_volume(0, v);
    }
    Ok(out)
}

/// £ₓ f = iₓ (df) for 0-forms, the Cartan formula with iₓ f = 0.
pub fn lie_derivative_0form(
    dec: &Dec,
    field: &DualVectorField,
    f: &Cochain,
) -> Result<Cochain, FieldError> {
    if f.degree != 0 || f.side != Side::Primal {
        return Err(FieldError::WrongForm(0));
    }
    contraction_1form(dec, field, &dec.d(f))
}
