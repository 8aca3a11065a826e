//! Cochain transfer between meshes over the same polytope, and pull-back /
//! push-forward of discrete forms under simplicial maps.
//!
//! The transfer operator weights by intersections of support volumes:
//! ⟨Tω, τ⟩ = Σ_σ sgn(τ,σ) (|V_τ ∩ V_σ| / |V_σ|) ⟨ω,σ⟩.
//! Intersections are computed exactly in 1D (interval overlap) and in 2D
//! (convex clipping of the elementary triangles realizing each support
//! volume). In 3D only top-degree transfer between nested (hierarchical)
//! meshes is supported; the general polytope intersection is out of scope.

use std::collections::BTreeMap;

use nalgebra::DVector;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::forms::Cochain;
use crate::geometry::GeometryTable;
use crate::ops::{Side, SparseMatrix};

#[derive(Debug, Error)]
pub enum RemeshError {
    #[error("meshes cover different polytopes: volumes {0:.6e} vs {1:.6e}")]
    DomainMismatch(f64, f64),
    #[error("transfer of degree {degree} in dimension {dim} is not supported")]
    UnsupportedDimension { degree: usize, dim: usize },
    #[error("map collapses simplex {0:?}")]
    NonSimplicialImage(Vec<usize>),
    #[error("vertex {0} has no image")]
    UnmappedVertex(usize),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("3D meshes must be nested for transfer; simplices {0} and {1} overlap partially")]
    NotHierarchical(usize, usize),
}

/// Vertex map between complexes inducing a simplicial map.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub vertex_map: BTreeMap<usize, usize>,
}

impl SimplicialMap {
    pub fn new(vertex_map: BTreeMap<usize, usize>) -> Self {
        SimplicialMap { vertex_map }
    }

    pub fn image_of(&self, verts: &[usize]) -> Result<Vec<usize>, RemeshError> {
        verts
            .iter()
            .map(|v| {
                self.vertex_map.get(v).copied().ok_or(RemeshError::UnmappedVertex(*v))
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<SimplicialMap, RemeshError> {
        let mut inv = BTreeMap::new();
        for (&a, &b) in &self.vertex_map {
            if inv.insert(b, a).is_some() {
                return Err(RemeshError::NotInvertible);
            }
        }
        Ok(SimplicialMap { vertex_map: inv })
    }
}

/// Matrix of the pull-back f* on k-cochains: ⟨f*α, σ⟩ = ⟨α, f(σ)⟩.
/// Fails when f collapses a k-simplex.
pub fn pullback_matrix(
    f: &SimplicialMap,
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    degree: usize,
) -> Result<SparseMatrix<f64>, RemeshError> {
    let rows = domain.num_simplices(degree);
    let cols = codomain.num_simplices(degree);
    let mut triplets = Vec::new();
    for i in 0..rows {
        let verts = domain.simplex_vertices(degree, i);
        let image = f.image_of(verts)?;
        let mut sorted = image.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != image.len() {
            return Err(RemeshError::NonSimplicialImage(verts.to_vec()));
        }
        let (j, sign) = codomain
            .find_simplex(&image)
            .ok_or_else(|| RemeshError::NonSimplicialImage(verts.to_vec()))?;
        // the row acts on the stored orientation of the domain simplex
        triplets.push((i, j, sign as f64 * domain.orientation_sign(degree, i) as f64));
    }
    Ok(SparseMatrix::from_triplets(rows, cols, triplets))
}

pub fn pullback(
    f: &SimplicialMap,
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    alpha: &Cochain,
) -> Result<Cochain, RemeshError> {
    let m = pullback_matrix(f, domain, codomain, alpha.degree)?;
    Ok(Cochain {
        degree: alpha.degree,
        side: Side::Primal,
        values: m.mul_vec(&alpha.values),
    })
}

/// f_* α = (f⁻¹)* α for bijective f.
pub fn pushforward(
    f: &SimplicialMap,
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    alpha: &Cochain,
) -> Result<Cochain, RemeshError> {
    let inv = f.inverse()?;
    pullback(&inv, codomain, domain, alpha)
}

/// Sparse transfer matrix T_{K,M} for k-cochains.
#[derive(Clone, Debug)]
pub struct TransferOperator {
    pub degree: usize,
    pub matrix: SparseMatrix<f64>,
}

impl TransferOperator {
    pub fn apply(&self, omega: &Cochain) -> Cochain {
        assert_eq!(omega.degree, self.degree);
        Cochain {
            degree: self.degree,
            side: Side::Primal,
            values: self.matrix.mul_vec(&omega.values),
        }
    }
}

/// Builds T_{K,M}: ⟨Tω,τ⟩ = Σ_σ sgn(τ,σ) (|V_τ ∩ V_σ| / |V_σ|) ⟨ω,σ⟩,
/// rows indexed by M's k-simplices.
pub fn transfer_operator(
    source: &SimplicialComplex,
    source_geometry: &GeometryTable,
    target: &SimplicialComplex,
    target_geometry: &GeometryTable,
    degree: usize,
) -> Result<TransferOperator, RemeshError> {
    let n = source.dimension();
    if target.dimension() != n {
        return Err(RemeshError::UnsupportedDimension { degree, dim: target.dimension() });
    }
    let vol = |c: &SimplicialComplex, g: &GeometryTable| -> f64 {
        (0..c.num_simplices(n)).map(|t| g.primal_volume(n, t)).sum()
    };
    let source_vol = vol(source, source_geometry);
    let target_vol = vol(target, target_geometry);
    if (source_vol - target_vol).abs() > 1e-9 * source_vol.max(1.0) {
        return Err(RemeshError::DomainMismatch(source_vol, target_vol));
    }

    let rows = target.num_simplices(degree);
    let cols = source.num_simplices(degree);
    let mut triplets = Vec::new();
    match n {
        1 => {
            for tau in 0..rows {
                let vt = support_interval(target, target_geometry, degree, tau);
                for sigma in 0..cols {
                    let vs = support_interval(source, source_geometry, degree, sigma);
                    let overlap = (vt.1.min(vs.1) - vt.0.max(vs.0)).max(0.0);
                    if overlap <= 1e-14 {
                        continue;
                    }
                    let sign = orientation_agreement(
                        target,
                        target_geometry,
                        source,
                        source_geometry,
                        degree,
                        tau,
                        sigma,
                    );
                    triplets.push((tau, sigma, sign * overlap / (vs.1 - vs.0)));
                }
            }
        }
        2 => {
            let target_tris: Vec<Vec<[DVector<f64>; 3]>> = (0..rows)
                .map(|i| support_triangles(target, target_geometry, degree, i))
                .collect();
            let source_tris: Vec<Vec<[DVector<f64>; 3]>> = (0..cols)
                .map(|i| support_triangles(source, source_geometry, degree, i))
                .collect();
            let boxes_t: Vec<_> = target_tris.iter().map(|t| bbox(t)).collect();
            let boxes_s: Vec<_> = source_tris.iter().map(|t| bbox(t)).collect();
            for tau in 0..rows {
                for sigma in 0..cols {
                    if !boxes_overlap(&boxes_t[tau], &boxes_s[sigma]) {
                        continue;
                    }
                    let mut area = 0.0;
                    for a in &target_tris[tau] {
                        for b in &source_tris[sigma] {
                            area += triangle_intersection_area(a, b);
                        }
                    }
                    if area <= 1e-13 {
                        continue;
                    }
                    let vs: f64 =
                        source_tris[sigma].iter().map(triangle_area).sum();
                    let sign = orientation_agreement(
                        target,
                        target_geometry,
                        source,
                        source_geometry,
                        degree,
                        tau,
                        sigma,
                    );
                    triplets.push((tau, sigma, sign * area / vs));
                }
            }
        }
        3 => {
            if degree != n {
                return Err(RemeshError::UnsupportedDimension { degree, dim: n });
            }
            for tau in 0..rows {
                for sigma in 0..cols {
                    let overlap = nested_volume(
                        target,
                        target_geometry,
                        source,
                        source_geometry,
                        tau,
                        sigma,
                    )?;
                    if overlap <= 1e-14 {
                        continue;
                    }
                    let sign = orientation_agreement(
                        target,
                        target_geometry,
                        source,
                        source_geometry,
                        degree,
                        tau,
                        sigma,
                    );
                    triplets.push((
                        tau,
                        sigma,
                        sign * overlap / source_geometry.primal_volume(n, sigma),
                    ));
                }
            }
        }
        _ => return Err(RemeshError::UnsupportedDimension { degree, dim: n }),
    }
    Ok(TransferOperator {
        degree,
        matrix: SparseMatrix::from_triplets(rows, cols, triplets),
    })
}

/// sgn(τ,σ): +1 when the stored orientations agree inside the common
/// k-plane, computed as the sign of det(E_τᵀ E_σ); +1 for vertices.
fn orientation_agreement(
    target: &SimplicialComplex,
    tg: &GeometryTable,
    source: &SimplicialComplex,
    sg: &GeometryTable,
    degree: usize,
    tau: usize,
    sigma: usize,
) -> f64 {
    if degree == 0 {
        return 1.0;
    }
    let edges = |c: &SimplicialComplex, g: &GeometryTable, i: usize| -> Vec<DVector<f64>> {
        let verts = c.simplex_vertices(degree, i);
        let p0 = g.circumcenter(0, c.vertex_index(verts[0]).expect("vertex"));
        verts[1..]
            .iter()
            .map(|&v| g.circumcenter(0, c.vertex_index(v).expect("vertex")) - p0)
            .collect()
    };
    let et = edges(target, tg, tau);
    let es = edges(source, sg, sigma);
    let mut m = nalgebra::DMatrix::zeros(degree, degree);
    for r in 0..degree {
        for c in 0..degree {
            m[(r, c)] = et[r].dot(&es[c]);
        }
    }
    let det = m.determinant();
    let sign = if det >= 0.0 { 1.0 } else { -1.0 };
    sign * target.orientation_sign(degree, tau) as f64
        * source.orientation_sign(degree, sigma) as f64
}

/// Support volume of a k-simplex on the line: an interval.
fn support_interval(
    complex: &SimplicialComplex,
    geometry: &GeometryTable,
    degree: usize,
    i: usize,
) -> (f64, f64) {
    match degree {
        1 => {
            let verts = complex.simplex_vertices(1, i);
            let a = geometry.circumcenter(0, complex.vertex_index(verts[0]).expect("v"))[0];
            let b = geometry.circumcenter(0, complex.vertex_index(verts[1]).expect("v"))[0];
            (a.min(b), a.max(b))
        }
        0 => {
            // dual interval: midpoints of incident edges, truncated at |K|
            let p = geometry.circumcenter(0, i)[0];
            let mut lo = p;
            let mut hi = p;
            for &(e, _) in complex.cofaces_of(0, i) {
                let m = geometry.circumcenter(1, e)[0];
                lo = lo.min(m);
                hi = hi.max(m);
            }
            (lo, hi)
        }
        _ => unreachable!("1D degrees are 0 and 1"),
    }
}

/// Elementary triangles [c(v), c(e), c(T)] of the full flags through the
/// given simplex; their union is its support volume.
fn support_triangles(
    complex: &SimplicialComplex,
    geometry: &GeometryTable,
    degree: usize,
    i: usize,
) -> Vec<[DVector<f64>; 3]> {
    let mut out = Vec::new();
    let flags: Vec<(usize, usize, usize)> = match degree {
        0 => {
            let mut f = Vec::new();
            for &(e, _) in complex.cofaces_of(0, i) {
                for &(t, _) in complex.cofaces_of(1, e) {
                    f.push((i, e, t));
                }
            }
            f
        }
        1 => {
            let verts = complex.simplex_vertices(1, i).to_vec();
            let mut f = Vec::new();
            for v in verts {
                let vi = complex.vertex_index(v).expect("vertex");
                for &(t, _) in complex.cofaces_of(1, i) {
                    f.push((vi, i, t));
                }
            }
            f
        }
        2 => {
            let mut f = Vec::new();
            for &(e, _) in complex.faces_of(2, i) {
                for verts in [complex.simplex_vertices(1, e).to_vec()] {
                    for v in verts {
                        let vi = complex.vertex_index(v).expect("vertex");
                        f.push((vi, e, i));
                    }
                }
            }
            f
        }
        _ => unreachable!("2D degrees are 0..=2"),
    };
    for (v, e, t) in flags {
        let tri = [
            geometry.circumcenter(0, v).clone(),
            geometry.circumcenter(1, e).clone(),
            geometry.circumcenter(2, t).clone(),
        ];
        if triangle_area(&tri) > 1e-14 {
            out.push(tri);
        }
    }
    out
}

fn triangle_area(t: &[DVector<f64>; 3]) -> f64 {
    0.5 * ((t[1][0] - t[0][0]) * (t[2][1] - t[0][1])
        - (t[2][0] - t[0][0]) * (t[1][1] - t[0][1]))
        .abs()
}

fn bbox(tris: &[[DVector<f64>; 3]]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for t in tris {
        for p in t {
            b.0 = b.0.min(p[0]);
            b.1 = b.1.max(p[0]);
            b.2 = b.2.min(p[1]);
            b.3 = b.3.max(p[1]);
        }
    }
    b
}

fn boxes_overlap(a: &(f64, f64, f64, f64), b: &(f64, f64, f64, f64)) -> bool {
    a.0 <= b.1 + 1e-12 && b.0 <= a.1 + 1e-12 && a.2 <= b.3 + 1e-12 && b.2 <= a.3 + 1e-12
}

/// Area of the intersection of two triangles by Sutherland-Hodgman clipping.
fn triangle_intersection_area(a: &[DVector<f64>; 3], b: &[DVector<f64>; 3]) -> f64 {
    let ccw = |t: &[DVector<f64>; 3]| -> Vec<(f64, f64)> {
        let signed = (t[1][0] - t[0][0]) * (t[2][1] - t[0][1])
            - (t[2][0] - t[0][0]) * (t[1][1] - t[0][1]);
        let mut pts: Vec<(f64, f64)> = t.iter().map(|p| (p[0], p[1])).collect();
        if signed < 0.0 {
            pts.reverse();
        }
        pts
    };
    let mut subject = ccw(a);
    let clip = ccw(b);
    for i in 0..clip.len() {
        if subject.is_empty() {
            return 0.0;
        }
        let p1 = clip[i];
        let p2 = clip[(i + 1) % clip.len()];
        let inside = |q: (f64, f64)| -> f64 {
            (p2.0 - p1.0) * (q.1 - p1.1) - (p2.1 - p1.1) * (q.0 - p1.0)
        };
        let mut output = Vec::with_capacity(subject.len() + 2);
        for j in 0..subject.len() {
            let cur = subject[j];
            let prev = subject[(j + subject.len() - 1) % subject.len()];
            let c_in = inside(cur) >= -1e-14;
            let p_in = inside(prev) >= -1e-14;
            if c_in {
                if !p_in {
                    output.push(segment_line_intersection(prev, cur, p1, p2));
                }
                output.push(cur);
            } else if p_in {
                output.push(segment_line_intersection(prev, cur, p1, p2));
            }
        }
        subject = output;
    }
    if subject.len() < 3 {
        return 0.0;
    }
    let mut area = 0.0;
    for i in 0..subject.len() {
        let p = subject[i];
        let q = subject[(i + 1) % subject.len()];
        area += p.0 * q.1 - q.0 * p.1;
    }
    area.abs() * 0.5
}

fn segment_line_intersection(
    a: (f64, f64),
    b: (f64, f64),
    p1: (f64, f64),
    p2: (f64, f64),
) -> (f64, f64) {
    let d = (b.0 - a.0, b.1 - a.1);
    let n = (p2.1 - p1.1, -(p2.0 - p1.0));
    let denom = d.0 * n.0 + d.1 * n.1;
    if denom.abs() < 1e-300 {
        return a;
    }
    let t = ((p1.0 - a.0) * n.0 + (p1.1 - a.1) * n.1) / denom;
    (a.0 + t * d.0, a.1 + t * d.1)
}

/// Overlap volume of two tets required to be nested or disjoint.
fn nested_volume(
    target: &SimplicialComplex,
    tg: &GeometryTable,
    source: &SimplicialComplex,
    sg: &GeometryTable,
    tau: usize,
    sigma: usize,
) -> Result<f64, RemeshError> {
    let n = 3;
    let points = |c: &SimplicialComplex, g: &GeometryTable, i: usize| -> Vec<DVector<f64>> {
        c.simplex_vertices(n, i)
            .iter()
            .map(|&v| g.circumcenter(0, c.vertex_index(v).expect("vertex")).clone())
            .collect()
    };
    let pt = points(target, tg, tau);
    let ps = points(source, sg, sigma);
    let inside = |simplex: &[DVector<f64>], p: &DVector<f64>| -> bool {
        barycentric_inside(simplex, p, 1e-9)
    };
    let s_in_t = ps.iter().all(|p| inside(&pt, p));
    let t_in_s = pt.iter().all(|p| inside(&ps, p));
    if s_in_t {
        return Ok(sg.primal_volume(n, sigma));
    }
    if t_in_s {
        return Ok(tg.primal_volume(n, tau));
    }
    // disjoint interiors if the centroids are mutually outside
    let centroid = |pts: &[DVector<f64>]| -> DVector<f64> {
        let mut c = DVector::zeros(pts[0].len());
        for p in pts {
            c += p;
        }
        c / pts.len() as f64
    };
    if inside(&pt, &centroid(&ps)) || inside(&ps, &centroid(&pt)) {
        return Err(RemeshError::NotHierarchical(tau, sigma));
    }
    Ok(0.0)
}

fn barycentric_inside(simplex: &[DVector<f64>], p: &DVector<f64>, tol: f64) -> bool {
    let k = simplex.len() - 1;
    let edges: Vec<DVector<f64>> = (1..=k).map(|i| &simplex[i] - &simplex[0]).collect();
    let mut gram = nalgebra::DMatrix::zeros(k, k);
    let mut rhs = DVector::zeros(k);
    let d = p - &simplex[0];
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = edges[i].dot(&edges[j]);
        }
        rhs[i] = edges[i].dot(&d);
    }
    let Some(lambda) = gram.lu().solve(&rhs) else {
        return false;
    };
    let last = 1.0 - lambda.iter().sum::<f64>();
    lambda.iter().all(|&l| l >= -tol) && last >= -tol
}
