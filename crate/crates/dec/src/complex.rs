//! Abstract and embedded simplicial complexes, chains, the boundary
//! operator, and local-metric validation.
//!
//! Simplices are stored canonically: vertex ids sorted ascending, with a
//! separate ±1 orientation sign relating the stored order to the orientation
//! the caller asked for. Equality and face lookups are then plain `Vec`
//! comparisons and the alternating face signs of the boundary operator act on
//! the sorted representative.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::ops::SparseMatrix;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("simplex has repeated vertex ids: {0:?}")]
    RepeatedVertices(Vec<usize>),
    #[error("top simplex {0:?} listed twice")]
    DuplicateTopSimplex(Vec<usize>),
    #[error("mixed top-simplex dimensions: {0} and {1}")]
    MixedDimensions(usize, usize),
    #[error("chain degree {0} out of range for dimension {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("no edge length stored for ({0}, {1})")]
    MissingEdgeLength(usize, usize),
    #[error("degenerate simplex: {0}")]
    DegenerateSimplex(String),
    #[error("simplex {0:?} not found in complex")]
    UnknownSimplex(Vec<usize>),
}

/// An oriented simplex given by its vertex ids.
///
/// `vertices` is sorted; `sign` is the parity of the permutation taking the
/// sorted order to the orientation the simplex represents. Two simplices with
/// the same vertex set are the same cell up to that sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<usize>,
    sign: i64,
}

impl Simplex {
    pub fn new(vertices: &[usize]) -> Result<Self, ComplexError> {
        let mut sorted: Vec<usize> = vertices.to_vec();
        let sign = sort_with_parity(&mut sorted);
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::RepeatedVertices(vertices.to_vec()));
            }
        }
        Ok(Simplex { vertices: sorted, sign })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Sorts in place, returning the permutation sign (+1/-1).
fn sort_with_parity(v: &mut [usize]) -> i64 {
    // insertion sort counting swaps; vertex lists are tiny
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

/// Integer chain of degree k: a sparse map from simplex index to coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain {
    pub degree: usize,
    pub coeffs: BTreeMap<usize, i64>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, coeffs: BTreeMap::new() }
    }

    pub fn single(degree: usize, index: usize, coeff: i64) -> Self {
        let mut c = Chain::zero(degree);
        c.add_term(index, coeff);
        c
    }

    pub fn add_term(&mut self, index: usize, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(index).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&index);
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree, "chain degree mismatch");
        let mut out = self.clone();
        for (&i, &c) in &other.coeffs {
            out.add_term(i, c);
        }
        out
    }

    pub fn scale(&self, s: i64) -> Chain {
        let mut out = Chain::zero(self.degree);
        for (&i, &c) in &self.coeffs {
            out.add_term(i, c * s);
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.scale(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of coefficients (the augmentation map on 0-chains).
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.values().sum()
    }
}

/// Face-closed table of canonical simplices with oriented incidence.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    dimension: usize,
    /// simplices[k] = sorted vertex lists of all k-simplices, lexicographic
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
    /// per-simplex orientation sign relative to the sorted vertex order
    orientation: Vec<Vec<i64>>,
    /// faces[k][i] = ((k-1)-simplex index, incidence sign) with orientations applied
    faces: Vec<Vec<Vec<(usize, i64)>>>,
    cofaces: Vec<Vec<Vec<(usize, i64)>>>,
    /// (n-1)-simplices with more than two cofaces
    non_manifold_facets: Vec<usize>,
}

impl SimplicialComplex {
    /// Builds the face closure of a set of top simplices, all of one dimension.
    ///
    /// The vertex order of each top simplex fixes its orientation; induced
    /// faces are oriented by their sorted vertex order.
    pub fn build(top_simplices: &[Vec<usize>]) -> Result<Self, ComplexError> {
        if top_simplices.is_empty() {
            return Ok(SimplicialComplex {
                dimension: 0,
                simplices: vec![Vec::new()],
                index: vec![BTreeMap::new()],
                orientation: vec![Vec::new()],
                faces: vec![Vec::new()],
                cofaces: vec![Vec::new()],
                non_manifold_facets: Vec::new(),
            });
        }
        let n = top_simplices[0].len() - 1;
        for t in top_simplices {
            if t.len() - 1 != n {
                return Err(ComplexError::MixedDimensions(n, t.len() - 1));
            }
        }

        let mut tops: Vec<Simplex> = Vec::with_capacity(top_simplices.len());
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for t in top_simplices {
            let s = Simplex::new(t)?;
            if !seen.insert(s.vertices().to_vec()) {
                return Err(ComplexError::DuplicateTopSimplex(t.clone()));
            }
            tops.push(s);
        }

        // face closure, one BTreeSet per dimension for deterministic indexing
        let mut per_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); n + 1];
        for s in &tops {
            per_dim[n].insert(s.vertices().to_vec());
        }
        for k in (1..=n).rev() {
            let lower: Vec<Vec<usize>> = per_dim[k]
                .iter()
                .flat_map(|verts| {
                    (0..verts.len()).map(move |i| {
                        let mut f = verts.clone();
                        f.remove(i);
                        f
                    })
                })
                .collect();
            per_dim[k - 1].extend(lower);
        }

        let simplices: Vec<Vec<Vec<usize>>> =
            per_dim.into_iter().map(|set| set.into_iter().collect()).collect();
        let index: Vec<BTreeMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|list| {
                list.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect()
            })
            .collect();

        let mut orientation: Vec<Vec<i64>> =
            simplices.iter().map(|list| vec![1i64; list.len()]).collect();
        for s in &tops {
            let i = index[n][s.vertices()];
            orientation[n][i] = s.sign();
        }

        let mut complex = SimplicialComplex {
            dimension: n,
            simplices,
            index,
            orientation,
            faces: Vec::new(),
            cofaces: Vec::new(),
            non_manifold_facets: Vec::new(),
        };
        complex.build_incidence();

        if n >= 1 {
            for (i, cof) in complex.cofaces[n - 1].iter().enumerate() {
                if cof.len() > 2 {
                    complex.non_manifold_facets.push(i);
                }
            }
            if !complex.non_manifold_facets.is_empty() {
                log::warn!(
                    "non-manifold complex: {} facet(s) with more than two cofaces",
                    complex.non_manifold_facets.len()
                );
            }
        }
        Ok(complex)
    }

    fn build_incidence(&mut self) {
        let n = self.dimension;
        self.faces = vec![Vec::new(); n + 1];
        self.cofaces = vec![Vec::new(); n + 1];
        self.faces[0] = vec![Vec::new(); self.simplices[0].len()];
        for k in 1..=n {
            let mut faces_k = Vec::with_capacity(self.simplices[k].len());
            for (i, verts) in self.simplices[k].iter().enumerate() {
                let s_hi = self.orientation[k][i];
                let mut list = Vec::with_capacity(verts.len());
                for drop in 0..verts.len() {
                    let mut f = verts.clone();
                    f.remove(drop);
                    let j = self.index[k - 1][&f];
                    let s_lo = self.orientation[k - 1][j];
                    let sign = s_hi * s_lo * if drop % 2 == 0 { 1 } else { -1 };
                    list.push((j, sign));
                }
                faces_k.push(list);
            }
            self.faces[k] = faces_k;
        }
        for k in 0..=n {
            self.cofaces[k] = vec![Vec::new(); self.simplices[k].len()];
        }
        for k in 1..=n {
            for (i, list) in self.faces[k].iter().enumerate() {
                for &(j, sign) in list {
                    self.cofaces[k - 1][j].push((i, sign));
                }
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_simplices(&self, k: usize) -> usize {
        if k <= self.dimension {
            self.simplices[k].len()
        } else {
            0
        }
    }

    pub fn simplex_vertices(&self, k: usize, i: usize) -> &[usize] {
        &self.simplices[k][i]
    }

    pub fn simplices_of_dim(&self, k: usize) -> &[Vec<usize>] {
        &self.simplices[k]
    }

    pub fn orientation_sign(&self, k: usize, i: usize) -> i64 {
        self.orientation[k][i]
    }

    /// Looks up a simplex by vertex list, returning its index and the sign of
    /// the given orientation relative to the stored one.
    pub fn find_simplex(&self, vertices: &[usize]) -> Option<(usize, i64)> {
        let s = Simplex::new(vertices).ok()?;
        let k = s.dimension();
        if k > self.dimension {
            return None;
        }
        let i = *self.index[k].get(s.vertices())?;
        Some((i, s.sign() * self.orientation[k][i]))
    }

    pub fn contains_simplex(&self, vertices: &[usize]) -> bool {
        self.find_simplex(vertices).is_some()
    }

    /// Oriented faces of simplex i of dimension k.
    pub fn faces_of(&self, k: usize, i: usize) -> &[(usize, i64)] {
        &self.faces[k][i]
    }

    /// Oriented cofaces of simplex i of dimension k: pairs (coface index,
    /// incidence sign of simplex i inside that coface).
    pub fn cofaces_of(&self, k: usize, i: usize) -> &[(usize, i64)] {
        &self.cofaces[k][i]
    }

    pub fn non_manifold_facets(&self) -> &[usize] {
        &self.non_manifold_facets
    }

    /// (n-1)-simplices with exactly one coface.
    pub fn boundary_facets(&self) -> Vec<usize> {
        if self.dimension == 0 {
            return Vec::new();
        }
        self.cofaces[self.dimension - 1]
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Vertex indices incident to at least one boundary facet.
    pub fn boundary_vertices(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let n = self.dimension;
        if n == 0 {
            return out;
        }
        for f in self.boundary_facets() {
            for &v in &self.simplices[n - 1][f] {
                let vi = self.index[0][&vec![v]];
                out.insert(vi);
            }
        }
        out
    }

    /// Vertex id of the 0-simplex with index i.
    pub fn vertex_id(&self, i: usize) -> usize {
        self.simplices[0][i][0]
    }

    pub fn vertex_index(&self, id: usize) -> Option<usize> {
        self.index[0].get(&vec![id]).copied()
    }

    /// The matrix of ∂_k : C_k -> C_{k-1}, entries in {-1, 0, +1}.
    pub fn boundary_matrix(&self, k: usize) -> Result<SparseMatrix<i64>, ComplexError> {
        if k == 0 || k > self.dimension {
            return Err(ComplexError::DegreeOutOfRange(k, self.dimension));
        }
        let mut triplets = Vec::new();
        for (i, list) in self.faces[k].iter().enumerate() {
            for &(j, sign) in list {
                triplets.push((j, i, sign));
            }
        }
        Ok(SparseMatrix::from_triplets(
            self.simplices[k - 1].len(),
            self.simplices[k].len(),
            triplets,
        ))
    }

    /// ∂c by linear extension of the alternating face sum; exact integers.
    pub fn boundary(&self, c: &Chain) -> Result<Chain, ComplexError> {
        let k = c.degree;
        if k == 0 || k > self.dimension {
            return Err(ComplexError::DegreeOutOfRange(k, self.dimension));
        }
        let mut out = Chain::zero(k - 1);
        for (&i, &coeff) in &c.coeffs {
            for &(j, sign) in &self.faces[k][i] {
                out.add_term(j, coeff * sign);
            }
        }
        Ok(out)
    }

    /// Builds a chain from oriented vertex lists with integer coefficients.
    pub fn chain(&self, degree: usize, terms: &[(&[usize], i64)]) -> Result<Chain, ComplexError> {
        let mut out = Chain::zero(degree);
        for (verts, coeff) in terms {
            let (i, sign) = self
                .find_simplex(verts)
                .ok_or_else(|| ComplexError::UnknownSimplex(verts.to_vec()))?;
            out.add_term(i, coeff * sign);
        }
        Ok(out)
    }
}

/// Edge lengths defined exactly for vertex pairs inside a common n-simplex.
#[derive(Clone, Debug, Default)]
pub struct LocalMetric {
    lengths: BTreeMap<(usize, usize), f64>,
}

impl LocalMetric {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, a: usize, b: usize, d: f64) {
        let key = if a < b { (a, b) } else { (b, a) };
        self.lengths.insert(key, d);
    }

    pub fn get(&self, a: usize, b: usize) -> Option<f64> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.lengths.get(&key).copied()
    }

    /// Metric from embedded coordinates restricted to the edges of K.
    pub fn from_coordinates(complex: &SimplicialComplex, coords: &[DVector<f64>]) -> Self {
        let mut m = LocalMetric::new();
        if complex.dimension() == 0 {
            return m;
        }
        for verts in complex.simplices_of_dim(1) {
            let (a, b) = (verts[0], verts[1]);
            let ia = complex.vertex_index(a).expect("vertex in complex");
            let ib = complex.vertex_index(b).expect("vertex in complex");
            m.set(a, b, (&coords[ia] - &coords[ib]).norm());
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MetricViolation {
    Negative { pair: (usize, usize), value: f64 },
    NotStrictlyPositive { pair: (usize, usize) },
    TriangleInequality { triple: (usize, usize, usize), slack: f64 },
}

/// Checks the local-metric axioms on every stored pair and triple.
///
/// Symmetry holds structurally (lengths are stored on unordered pairs); the
/// triangle inequality is checked on every 2-simplex of K, which are exactly
/// the vertex triples lying in a common n-simplex.
pub fn validate_local_metric(
    complex: &SimplicialComplex,
    metric: &LocalMetric,
) -> Result<Vec<MetricViolation>, ComplexError> {
    let mut report = Vec::new();
    if complex.dimension() == 0 {
        return Ok(report);
    }
    let edge_len = |a: usize, b: usize| {
        metric.get(a, b).ok_or(ComplexError::MissingEdgeLength(a, b))
    };
    for verts in complex.simplices_of_dim(1) {
        let d = edge_len(verts[0], verts[1])?;
        if d < 0.0 {
            report.push(MetricViolation::Negative { pair: (verts[0], verts[1]), value: d });
        } else if d == 0.0 {
            report.push(MetricViolation::NotStrictlyPositive { pair: (verts[0], verts[1]) });
        }
    }
    if complex.dimension() >= 2 {
        for verts in complex.simplices_of_dim(2) {
            let (a, b, c) = (verts[0], verts[1], verts[2]);
            let dab = edge_len(a, b)?;
            let dbc = edge_len(b, c)?;
            let dac = edge_len(a, c)?;
            for (x, y, z, dxz, dxy, dyz) in [
                (a, b, c, dac, dab, dbc),
                (b, a, c, dbc, dab, dac),
                (a, c, b, dab, dac, dbc),
            ] {
                let slack = dxy + dyz - dxz;
                if slack < 0.0 {
                    report.push(MetricViolation::TriangleInequality {
                        triple: (x, y, z),
                        slack,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Embeds one n-simplex into R^n from its edge lengths.
///
/// The first vertex goes to the origin and the second onto the first axis;
/// the remaining coordinates come out of the Cholesky factor of the Gram
/// matrix. A non-positive pivot is the Cayley-Menger style signal that the
/// lengths are not realizable or the simplex has zero volume.
pub fn local_embed(
    vertices: &[usize],
    metric: &LocalMetric,
) -> Result<Vec<DVector<f64>>, ComplexError> {
    let n = vertices.len() - 1;
    if n == 0 {
        return Ok(vec![DVector::zeros(0)]);
    }
    let d = |a: usize, b: usize| {
        metric
            .get(vertices[a], vertices[b])
            .ok_or(ComplexError::MissingEdgeLength(vertices[a], vertices[b]))
    };
    let mut gram = DMatrix::zeros(n, n);
    for i in 1..=n {
        for j in 1..=n {
            let v = (d(0, i)?.powi(2) + d(0, j)?.powi(2) - if i == j { 0.0 } else { d(i, j)?.powi(2) }) / 2.0;
            gram[(i - 1, j - 1)] = v;
        }
    }
    let scale = gram.diagonal().amax().max(1.0);
    // Cholesky with explicit pivots so degeneracy can be reported
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = gram[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if sum <= scale * 1e-12 {
                    return Err(ComplexError::DegenerateSimplex(format!(
                        "Gram pivot {sum:.3e} at vertex {} (lengths not realizable or zero volume)",
                        vertices[i + 1]
                    )));
                }
                l[(i, j)] = sum.sqrt();
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    let mut coords = Vec::with_capacity(n + 1);
    coords.push(DVector::zeros(n));
    for i in 0..n {
        coords.push(l.row(i).transpose());
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::build(&[vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn single_triangle_closure() {
        let k = triangle();
        assert_eq!(k.num_simplices(0), 3);
        assert_eq!(k.num_simplices(1), 3);
        assert_eq!(k.num_simplices(2), 1);
    }

    #[test]
    fn empty_complex() {
        let k = SimplicialComplex::build(&[]).unwrap();
        assert_eq!(k.num_simplices(0), 0);
        assert_eq!(k.num_simplices(5), 0);
    }

    #[test]
    fn two_triangles_shared_edge() {
        let k = SimplicialComplex::build(&[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
        assert_eq!(k.num_simplices(2), 2);
        assert_eq!(k.num_simplices(1), 5);
        assert_eq!(k.num_simplices(0), 4);
        let (e, _) = k.find_simplex(&[0, 2]).unwrap();
        assert_eq!(k.cofaces_of(1, e).len(), 2);
    }

    #[test]
    fn duplicate_top_rejected() {
        let err = SimplicialComplex::build(&[vec![0, 1, 2], vec![2, 0, 1]]);
        assert!(matches!(err, Err(ComplexError::DuplicateTopSimplex(_))));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let err = SimplicialComplex::build(&[vec![0, 1, 2], vec![3, 4]]);
        assert!(matches!(err, Err(ComplexError::MixedDimensions(2, 1))));
    }

    #[test]
    fn boundary_of_triangle() {
        let k = triangle();
        let c = k.chain(2, &[(&[0, 1, 2], 1)]).unwrap();
        let b = k.boundary(&c).unwrap();
        // [v1,v2] - [v0,v2] + [v0,v1]
        let expected = k
            .chain(1, &[(&[1, 2], 1), (&[0, 2], -1), (&[0, 1], 1)])
            .unwrap();
        assert_eq!(b, expected);
        assert!(k.boundary(&b).unwrap().is_zero());
    }

    #[test]
    fn boundary_of_edge_path() {
        let k = triangle();
        let c = k.chain(1, &[(&[0, 1], 1), (&[1, 2], 1)]).unwrap();
        let b = k.boundary(&c).unwrap();
        let expected = k.chain(0, &[(&[2], 1), (&[0], -1)]).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn boundary_matrix_column_counts() {
        let k = SimplicialComplex::build(&[vec![0, 1, 2, 3], vec![1, 2, 3, 4]]).unwrap();
        for deg in 1..=3 {
            let m = k.boundary_matrix(deg).unwrap();
            for col in 0..m.ncols() {
                let nnz = m.triplets().iter().filter(|&&(_, c, _)| c == col).count();
                assert_eq!(nnz, deg + 1);
            }
            for &(_, _, v) in m.triplets() {
                assert!(v == 1 || v == -1);
            }
        }
    }

    #[test]
    fn reorienting_top_simplex_flips_one_column() {
        let a = SimplicialComplex::build(&[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
        let b = SimplicialComplex::build(&[vec![0, 1, 2], vec![2, 0, 3]]).unwrap();
        let ma = a.boundary_matrix(2).unwrap();
        let mb = b.boundary_matrix(2).unwrap();
        let (flipped, _) = a.find_simplex(&[0, 2, 3]).unwrap();
        for &(r, c, v) in ma.triplets() {
            let w = mb.get(r, c);
            if c == flipped {
                assert_eq!(w, -v);
            } else {
                assert_eq!(w, v);
            }
        }
    }

    #[test]
    fn orientation_sign_round_trip() {
        let k = triangle();
        let (i, s1) = k.find_simplex(&[0, 1]).unwrap();
        let (j, s2) = k.find_simplex(&[1, 0]).unwrap();
        assert_eq!(i, j);
        assert_eq!(s1, -s2);
    }

    #[test]
    fn metric_axioms_equilateral() {
        let k = triangle();
        let mut m = LocalMetric::new();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            m.set(a, b, 1.0);
        }
        assert!(validate_local_metric(&k, &m).unwrap().is_empty());
    }

    #[test]
    fn metric_zero_length_flagged() {
        let k = triangle();
        let mut m = LocalMetric::new();
        m.set(0, 1, 0.0);
        m.set(1, 2, 1.0);
        m.set(0, 2, 1.0);
        let report = validate_local_metric(&k, &m).unwrap();
        assert!(report
            .iter()
            .any(|v| matches!(v, MetricViolation::NotStrictlyPositive { pair: (0, 1) })));
    }

    #[test]
    fn metric_missing_edge_is_error() {
        let k = triangle();
        let mut m = LocalMetric::new();
        m.set(0, 1, 1.0);
        assert!(matches!(
            validate_local_metric(&k, &m),
            Err(ComplexError::MissingEdgeLength(_, _))
        ));
    }

    #[test]
    fn four_point_circle_metric_is_locally_valid() {
        // 4 equidistant points on a circle, arc-length metric, as a pure
        // 1-complex on all six edges: no triple shares an n-simplex, so
        // the triangle axiom has no instances and the report is empty even
        // though no global embedding exists.
        let edges: Vec<Vec<usize>> =
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![0, 2], vec![1, 3]];
        let k = SimplicialComplex::build(&edges).unwrap();
        let mut m = LocalMetric::new();
        for i in 0..4usize {
            m.set(i, (i + 1) % 4, 1.0);
            m.set(i, (i + 2) % 4, 2.0);
        }
        assert!(validate_local_metric(&k, &m).unwrap().is_empty());
    }

    #[test]
    fn embed_equilateral_triangle() {
        let mut m = LocalMetric::new();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            m.set(a, b, 1.0);
        }
        let coords = local_embed(&[0, 1, 2], &m).unwrap();
        assert_relative_eq!(coords[0].norm(), 0.0);
        assert_relative_eq!(coords[1][0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(coords[1][1], 0.0, epsilon = 1e-12);
        assert_relative_eq!(coords[2][0], 0.5, epsilon = 1e-12);
        assert_relative_eq!(coords[2][1], 3f64.sqrt() / 2.0, epsilon = 1e-12);
        // distances reproduce the metric
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            assert_relative_eq!((&coords[i] - &coords[j]).norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn embed_segment() {
        let mut m = LocalMetric::new();
        m.set(0, 1, 2.0);
        let coords = local_embed(&[0, 1], &m).unwrap();
        assert_relative_eq!(coords[0][0], 0.0);
        assert_relative_eq!(coords[1][0], 2.0);
    }

    #[test]
    fn embed_violating_triangle_inequality_fails() {
        let mut m = LocalMetric::new();
        m.set(0, 1, 1.0);
        m.set(1, 2, 1.0);
        m.set(0, 2, 3.0);
        assert!(matches!(
            local_embed(&[0, 1, 2], &m),
            Err(ComplexError::DegenerateSimplex(_))
        ));
    }
}
