//! The two variational case studies: discrete harmonic functions via the
//! Dirichlet energy, and discrete Maxwell on prismal Lorentzian complexes.
//!
//! Both problems carry two independent code paths that the check suite and
//! the tests compare: the per-cell variational derivative obtained by
//! differentiating the discrete action, and the operator composition
//! δd / ∗d∗d. Matching them is the discrete commuting square between
//! "discretize then vary" and "vary then discretize".
//!
//! Prismal complexes are genuine cell complexes (simplex × slice and
//! simplex × interval cells, prisms not triangulated). Volumes are Euclidean
//! with the time axis treated as a unit-speed Euclidean direction; the
//! Lorentzian structure enters only through the causality sign κ.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::forms::{Cochain, Dec};
use crate::geometry::GeometryTable;
use crate::ops::{Side, SparseMatrix};

#[derive(Debug, Error)]
pub enum VariationalError {
    #[error("linear system is singular or unsolvable")]
    SingularSystem,
    #[error("no boundary values given")]
    EmptyBoundary,
    #[error("1-cell {0} is lightlike (squared Lorentzian length {1:.3e})")]
    LightlikeEdge(usize, f64),
    #[error("time grid must be strictly increasing")]
    BadTimeGrid,
    #[error("spatial complex must be flat: dimension {dim}, ambient {ambient}")]
    NotFlat { dim: usize, ambient: usize },
    #[error("unknown cell in config: {0}")]
    UnknownCell(String),
}

/// ½ ‖dφ‖²_d = (1/2n) Σ_{σ¹} (|⋆σ¹|/|σ¹|) ⟨dφ,σ¹⟩².
pub fn dirichlet_energy(dec: &Dec, phi: &Cochain) -> f64 {
    let dphi = dec.d(phi);
    let n = dec.complex.dimension().max(1) as f64;
    let mut total = 0.0;
    for e in 0..dphi.len() {
        total += dec.geometry.hodge_weight(1, e) * dphi.values[e] * dphi.values[e];
    }
    total / (2.0 * n)
}

/// Per-vertex variational derivative of the Dirichlet energy:
/// (1/n) Σ_{v ≺ σ¹} (|⋆σ¹|/|σ¹|) ⟨dφ,σ¹⟩ sgn(σ¹; v).
/// Equals (|⋆v|/n)·⟨δdφ, v⟩ entrywise, which the tests pin.
pub fn harmonic_el_residual(dec: &Dec, phi: &Cochain) -> Cochain {
    let complex = dec.complex;
    let n = complex.dimension().max(1) as f64;
    let dphi = dec.d(phi);
    let mut out = Cochain::zero(0, Side::Primal, complex.num_simplices(0));
    for v in 0..complex.num_simplices(0) {
        let mut acc = 0.0;
        for &(e, sign) in complex.cofaces_of(0, v) {
            acc += dec.geometry.hodge_weight(1, e) * dphi.values[e] * sign as f64;
        }
        out.values[v] = acc / n;
    }
    out
}

/// Dirichlet data: fixed values on a set of vertex indices.
#[derive(Clone, Debug, Default)]
pub struct DirichletProblem {
    pub boundary_values: BTreeMap<usize, f64>,
}

/// Solves Δφ = 0 with the given boundary values by eliminating the fixed
/// rows from the degree-0 Laplacian.
pub fn solve_harmonic(dec: &Dec, problem: &DirichletProblem) -> Result<Cochain, VariationalError> {
    if problem.boundary_values.is_empty() {
        return Err(VariationalError::EmptyBoundary);
    }
    let complex = dec.complex;
    let count = complex.num_simplices(0);
    let lap = dec.laplace_matrix(0).expect("degree 0").matrix;
    let free: Vec<usize> =
        (0..count).filter(|v| !problem.boundary_values.contains_key(v)).collect();
    let pos: BTreeMap<usize, usize> = free.iter().enumerate().map(|(p, &v)| (v, p)).collect();
    let mut a = DMatrix::zeros(free.len(), free.len());
    let mut b = DVector::zeros(free.len());
    for &(r, c, val) in lap.triplets() {
        let Some(&ri) = pos.get(&r) else { continue };
        match pos.get(&c) {
            Some(&ci) => a[(ri, ci)] = val,
            None => b[ri] -= val * problem.boundary_values[&c],
        }
    }
    let x = a.lu().solve(&b).ok_or(VariationalError::SingularSystem)?;
    let mut phi = Cochain::zero(0, Side::Primal, count);
    for (&v, &val) in &problem.boundary_values {
        phi.values[v] = val;
    }
    for (p, &v) in free.iter().enumerate() {
        phi.values[v] = x[p];
    }
    Ok(phi)
}

/// Time part of a prismal cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TimeElem {
    /// σ' × {t_m}
    Slice(usize),
    /// σ' × (t_m, t_{m+1})
    Interval(usize),
}

/// One cell of the prismal complex: a spatial simplex times a time element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrismCell {
    pub spatial_dim: usize,
    pub spatial_idx: usize,
    pub time: TimeElem,
}

impl PrismCell {
    pub fn dim(&self) -> usize {
        match self.time {
            TimeElem::Slice(_) => self.spatial_dim,
            TimeElem::Interval(_) => self.spatial_dim + 1,
        }
    }
}

/// Product of a flat spatial complex with a time grid, with causality signs,
/// Euclidean volumes and circumcentric dual data.
pub struct PrismalComplex {
    pub spatial: SimplicialComplex,
    pub spatial_geometry: GeometryTable,
    pub times: Vec<f64>,
    dim: usize,
    cells: Vec<Vec<PrismCell>>,
    lookup: BTreeMap<PrismCell, usize>,
    faces: Vec<Vec<Vec<(usize, i64)>>>,
    cofaces: Vec<Vec<Vec<(usize, i64)>>>,
    kappa: Vec<Vec<i64>>,
    primal_volumes: Vec<Vec<f64>>,
    dual_volumes: Vec<Vec<f64>>,
    interior: Vec<Vec<bool>>,
}

/// κ from squared Lorentzian edge lengths: +1 iff every edge is spacelike.
/// Values within 1e-12 of zero are lightlike and rejected.
pub fn kappa_from_edges(lengths_sq: &[f64]) -> Result<i64, f64> {
    for &l in lengths_sq {
        if l.abs() < 1e-12 {
            return Err(l);
        }
    }
    Ok(if lengths_sq.iter().all(|&l| l > 0.0) { 1 } else { -1 })
}

impl PrismalComplex {
    pub fn build(
        spatial: SimplicialComplex,
        spatial_geometry: GeometryTable,
        times: Vec<f64>,
    ) -> Result<Self, VariationalError> {
        if spatial.dimension() != spatial_geometry.ambient_dim() {
            return Err(VariationalError::NotFlat {
                dim: spatial.dimension(),
                ambient: spatial_geometry.ambient_dim(),
            });
        }
        if times.len() < 2 || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(VariationalError::BadTimeGrid);
        }
        let ns = spatial.dimension();
        let dim = ns + 1;
        let slices = times.len();

        let mut cells: Vec<Vec<PrismCell>> = vec![Vec::new(); dim + 1];
        for p in 0..=dim {
            if p <= ns {
                for m in 0..slices {
                    for i in 0..spatial.num_simplices(p) {
                        cells[p].push(PrismCell {
                            spatial_dim: p,
                            spatial_idx: i,
                            time: TimeElem::Slice(m),
                        });
                    }
                }
            }
            if p >= 1 && p - 1 <= ns {
                for m in 0..slices - 1 {
                    for i in 0..spatial.num_simplices(p - 1) {
                        cells[p].push(PrismCell {
                            spatial_dim: p - 1,
                            spatial_idx: i,
                            time: TimeElem::Interval(m),
                        });
                    }
                }
            }
        }
        let mut lookup = BTreeMap::new();
        for per in &cells {
            for (i, &c) in per.iter().enumerate() {
                lookup.insert(c, i);
            }
        }

        // boundary incidence: ∂(σ×{t}) = (∂σ)×{t};
        // ∂(σ×I_m) = (∂σ)×I_m + (-1)^dim σ (σ×{t_{m+1}} - σ×{t_m})
        let mut faces: Vec<Vec<Vec<(usize, i64)>>> = vec![Vec::new(); dim + 1];
        faces[0] = vec![Vec::new(); cells[0].len()];
        for p in 1..=dim {
            let mut per = Vec::with_capacity(cells[p].len());
            for cell in &cells[p] {
                let mut list = Vec::new();
                match cell.time {
                    TimeElem::Slice(m) => {
                        for &(f, sign) in spatial.faces_of(cell.spatial_dim, cell.spatial_idx)
                        {
                            let fc = PrismCell {
                                spatial_dim: cell.spatial_dim - 1,
                                spatial_idx: f,
                                time: TimeElem::Slice(m),
                            };
                            list.push((lookup[&fc], sign));
                        }
                    }
                    TimeElem::Interval(m) => {
                        let s = cell.spatial_dim;
                        if s >= 1 {
                            for &(f, sign) in spatial.faces_of(s, cell.spatial_idx) {
                                let fc = PrismCell {
                                    spatial_dim: s - 1,
                                    spatial_idx: f,
                                    time: TimeElem::Interval(m),
                                };
                                list.push((lookup[&fc], sign));
                            }
                        }
                        let time_sign = if s % 2 == 0 { 1 } else { -1 };
                        let top = PrismCell {
                            spatial_dim: s,
                            spatial_idx: cell.spatial_idx,
                            time: TimeElem::Slice(m + 1),
                        };
                        let bottom = PrismCell {
                            spatial_dim: s,
                            spatial_idx: cell.spatial_idx,
                            time: TimeElem::Slice(m),
                        };
                        list.push((lookup[&top], time_sign));
                        list.push((lookup[&bottom], -time_sign));
                    }
                }
                per.push(list);
            }
            faces[p] = per;
        }
        let mut cofaces: Vec<Vec<Vec<(usize, i64)>>> =
            (0..=dim).map(|p| vec![Vec::new(); cells[p].len()]).collect();
        for p in 1..=dim {
            for (i, list) in faces[p].iter().enumerate() {
                for &(f, sign) in list {
                    cofaces[p - 1][f].push((i, sign));
                }
            }
        }

        // causality signs from the recursive edge sets
        let mut kappa: Vec<Vec<i64>> = Vec::with_capacity(dim + 1);
        for p in 0..=dim {
            let mut per = Vec::with_capacity(cells[p].len());
            for (i, cell) in cells[p].iter().enumerate() {
                if p == 0 {
                    per.push(1);
                    continue;
                }
                let mut edge_set = BTreeSet::new();
                collect_edges(&faces, p, i, &mut edge_set);
                let lengths: Vec<f64> = edge_set
                    .iter()
                    .map(|&e| {
                        let ec = cells[1][e];
                        match ec.time {
                            TimeElem::Slice(_) => {
                                let l = spatial_geometry.primal_volume(1, ec.spatial_idx);
                                l * l
                            }
                            TimeElem::Interval(m) => {
                                let dt = times[m + 1] - times[m];
                                -dt * dt
                            }
                        }
                    })
                    .collect();
                let _ = cell;
                match kappa_from_edges(&lengths) {
                    Ok(k) => per.push(k),
                    Err(l) => {
                        let bad = *edge_set.iter().next().expect("nonempty");
                        return Err(VariationalError::LightlikeEdge(bad, l));
                    }
                }
            }
            kappa.push(per);
        }

        // Euclidean volumes; dual time lengths truncated at the grid ends
        let dual_time = |m: usize| -> f64 {
            let lo = if m == 0 { times[0] } else { (times[m - 1] + times[m]) / 2.0 };
            let hi = if m + 1 == slices {
                times[slices - 1]
            } else {
                (times[m] + times[m + 1]) / 2.0
            };
            hi - lo
        };
        let mut primal_volumes: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
        let mut dual_volumes: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
        for p in 0..=dim {
            let mut pv = Vec::with_capacity(cells[p].len());
            let mut dv = Vec::with_capacity(cells[p].len());
            for cell in &cells[p] {
                let s = cell.spatial_dim;
                match cell.time {
                    TimeElem::Slice(m) => {
                        pv.push(spatial_geometry.primal_volume(s, cell.spatial_idx));
                        dv.push(
                            spatial_geometry.dual_volume(s, cell.spatial_idx) * dual_time(m),
                        );
                    }
                    TimeElem::Interval(m) => {
                        let dt = times[m + 1] - times[m];
                        pv.push(spatial_geometry.primal_volume(s, cell.spatial_idx) * dt);
                        dv.push(spatial_geometry.dual_volume(s, cell.spatial_idx));
                    }
                }
            }
            primal_volumes.push(pv);
            dual_volumes.push(dv);
        }

        // interior cells: not in the downward closure of single-coface facets
        let mut boundary_flags: Vec<Vec<bool>> =
            (0..=dim).map(|p| vec![false; cells[p].len()]).collect();
        for (i, cof) in cofaces[dim - 1].iter().enumerate() {
            if cof.len() == 1 {
                boundary_flags[dim - 1][i] = true;
            }
        }
        for p in (1..dim).rev() {
            for i in 0..cells[p].len() {
                if boundary_flags[p][i] {
                    for &(f, _) in &faces[p][i] {
                        boundary_flags[p - 1][f] = true;
                    }
                }
            }
        }
        let interior = boundary_flags
            .into_iter()
            .map(|per| per.into_iter().map(|b| !b).collect())
            .collect();

        Ok(PrismalComplex {
            spatial,
            spatial_geometry,
            times,
            dim,
            cells,
            lookup,
            faces,
            cofaces,
            kappa,
            primal_volumes,
            dual_volumes,
            interior,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn num_cells(&self, p: usize) -> usize {
        if p <= self.dim {
            self.cells[p].len()
        } else {
            0
        }
    }

    pub fn cell(&self, p: usize, i: usize) -> PrismCell {
        self.cells[p][i]
    }

    pub fn cell_index(&self, cell: &PrismCell) -> Option<usize> {
        self.lookup.get(cell).copied()
    }

    pub fn kappa(&self, p: usize, i: usize) -> i64 {
        self.kappa[p][i]
    }

    pub fn primal_volume(&self, p: usize, i: usize) -> f64 {
        self.primal_volumes[p][i]
    }

    pub fn dual_volume(&self, p: usize, i: usize) -> f64 {
        self.dual_volumes[p][i]
    }

    pub fn is_interior(&self, p: usize, i: usize) -> bool {
        self.interior[p][i]
    }

    pub fn faces_of(&self, p: usize, i: usize) -> &[(usize, i64)] {
        &self.faces[p][i]
    }

    pub fn cofaces_of(&self, p: usize, i: usize) -> &[(usize, i64)] {
        &self.cofaces[p][i]
    }

    /// Integer boundary matrix ∂_p.
    pub fn boundary_matrix(&self, p: usize) -> SparseMatrix<i64> {
        assert!(p >= 1 && p <= self.dim);
        let mut triplets = Vec::new();
        for (i, list) in self.faces[p].iter().enumerate() {
            for &(f, sign) in list {
                triplets.push((f, i, sign));
            }
        }
        SparseMatrix::from_triplets(self.cells[p - 1].len(), self.cells[p].len(), triplets)
    }

    /// d on p-cochains: the transpose of ∂_{p+1}.
    pub fn d_matrix(&self, p: usize) -> SparseMatrix<i64> {
        self.boundary_matrix(p + 1).transpose()
    }

    /// Diagonal Lorentzian Hodge star on p-cochains: κ |⋆σ| / |σ|.
    pub fn lorentz_hodge_weights(&self, p: usize) -> Vec<f64> {
        (0..self.cells[p].len())
            .map(|i| {
                self.kappa[p][i] as f64 * self.dual_volumes[p][i] / self.primal_volumes[p][i]
            })
            .collect()
    }

    /// ∗α with the causality sign: dual values κ(σ)(|⋆σ|/|σ|)⟨α,σ⟩ indexed
    /// by the primal p-cells. Reduces to the Riemannian star when κ ≡ +1.
    pub fn lorentz_hodge(&self, p: usize, values: &[f64]) -> Vec<f64> {
        let w = self.lorentz_hodge_weights(p);
        values.iter().zip(&w).map(|(&a, &wi)| wi * a).collect()
    }

    /// Inverse of [`Self::lorentz_hodge`] up to the double-dual sign, taking
    /// dual values on ⋆σᵖ back to primal p-cochains.
    pub fn lorentz_hodge_inverse(&self, p: usize, values: &[f64]) -> Vec<f64> {
        let sign = crate::geometry::double_dual_sign(p, self.dim) as f64;
        (0..values.len())
            .map(|i| {
                sign * self.kappa[p][i] as f64 * self.primal_volumes[p][i]
                    / self.dual_volumes[p][i]
                    * values[i]
            })
            .collect()
    }

    /// Indefinite norm ‖α‖²_{Lor,d} = (1/n) Σ κ (|⋆σ|/|σ|) ⟨α,σ⟩².
    pub fn lorentz_norm_sq(&self, p: usize, values: &[f64]) -> f64 {
        let w = self.lorentz_hodge_weights(p);
        values
            .iter()
            .zip(&w)
            .map(|(&a, &wi)| wi * a * a)
            .sum::<f64>()
            / self.dim as f64
    }

    /// S_d(A) = (1/8) Σ_{σ²} κ(σ²) (|⋆σ²|/|σ²|) ⟨dA,σ²⟩².
    pub fn maxwell_action(&self, a: &[f64]) -> f64 {
        let f = self.d_matrix(1).to_f64().mul_vec(a);
        let w = self.lorentz_hodge_weights(2);
        0.125 * f.iter().zip(&w).map(|(&fi, &wi)| wi * fi * fi).sum::<f64>()
    }

    /// Variational derivative of the action:
    /// (1/4) Σ_{σ² ≻ σ¹} κ(σ²) (|⋆σ²|/|σ²|) ⟨dA,σ²⟩ sgn(σ²,σ¹).
    pub fn maxwell_el_residual(&self, a: &[f64]) -> Vec<f64> {
        let f = self.d_matrix(1).to_f64().mul_vec(a);
        let w = self.lorentz_hodge_weights(2);
        let mut out = vec![0.0; self.cells[1].len()];
        for (e, val) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for &(t, sign) in &self.cofaces[1][e] {
                acc += w[t] * f[t] * sign as f64;
            }
            *val = 0.25 * acc;
        }
        out
    }

    /// ⟨∗d∗dA, σ¹⟩ assembled from the operator matrices: the Lorentzian
    /// Hodge on 2-forms, the dual derivative, and the inverse Hodge back to
    /// primal 1-forms.
    pub fn maxwell_el_operator_path(&self, a: &[f64]) -> Vec<f64> {
        let star2 = SparseMatrix::diagonal(&self.lorentz_hodge_weights(2));
        // dual derivative onto duals of 1-cells: ∂(⋆σ¹) = (-1)^(1+1) Σ sgn ⋆σ²
        let dual_d = self.boundary_matrix(2).to_f64();
        let inv_w1: Vec<f64> = (0..self.cells[1].len())
            .map(|i| {
                self.kappa[1][i] as f64 * self.primal_volumes[1][i] / self.dual_volumes[1][i]
            })
            .collect();
        let star1_inv = SparseMatrix::diagonal(&inv_w1);
        let d1 = self.d_matrix(1).to_f64();
        star1_inv.mul(&dual_d).mul(&star2).mul(&d1).mul_vec(a)
    }

    /// Spanning forest of the 1-skeleton graph, as 1-cell indices.
    pub fn spanning_tree_edges(&self) -> Vec<usize> {
        let verts = self.cells[0].len();
        let mut seen = vec![false; verts];
        let mut tree = Vec::new();
        for start in 0..verts {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(e, _) in &self.cofaces[0][v] {
                    for &(u, _) in &self.faces[1][e] {
                        if !seen[u] {
                            seen[u] = true;
                            tree.push(e);
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        tree
    }

    /// Least-squares solve of the discrete Maxwell equations ∗d∗dA = 0 with
    /// the fixed 1-cell values from `fixed`; remaining gauge freedom removed
    /// by zeroing A on a spanning tree. Returns the full A vector.
    pub fn solve_maxwell(
        &self,
        fixed: &BTreeMap<usize, f64>,
    ) -> Result<Vec<f64>, VariationalError> {
        let edges = self.cells[1].len();
        let mut a = vec![0.0; edges];
        let mut is_fixed = vec![false; edges];
        for (&e, &v) in fixed {
            a[e] = v;
            is_fixed[e] = true;
        }
        for e in self.spanning_tree_edges() {
            if !is_fixed[e] {
                is_fixed[e] = true;
                a[e] = 0.0;
            }
        }
        let free: Vec<usize> = (0..edges).filter(|&e| !is_fixed[e]).collect();
        if free.is_empty() {
            return Ok(a);
        }
        // residual rows at interior 1-cells, linear in A
        let rows: Vec<usize> =
            (0..edges).filter(|&e| self.interior[1][e]).collect();
        if rows.is_empty() {
            // nothing constrains the free edges; the gauge choice stands
            return Ok(a);
        }
        let w2 = self.lorentz_hodge_weights(2);
        let d1 = self.d_matrix(1).to_f64();
        // residual = (1/4) Cᵀ W (d1 A) with C = ∂₂ restricted to rows
        let mut m = DMatrix::zeros(rows.len(), free.len());
        let mut rhs = DVector::zeros(rows.len());
        for (ri, &e) in rows.iter().enumerate() {
            // row of the residual as a function of all edges
            let mut row = vec![0.0; edges];
            for &(t, sign) in &self.cofaces[1][e] {
                let coeff = 0.25 * w2[t] * sign as f64;
                for &(r2, c2, v2) in d1.triplets() {
                    if r2 == t {
                        row[c2] += coeff * v2;
                    }
                }
            }
            for (ci, &fe) in free.iter().enumerate() {
                m[(ri, ci)] = row[fe];
            }
            let mut b = 0.0;
            for (idx, &val) in row.iter().enumerate() {
                if is_fixed[idx] {
                    b -= val * a[idx];
                }
            }
            rhs[ri] = b;
        }
        let svd = m.svd(true, true);
        let x = svd
            .solve(&rhs, 1e-12)
            .map_err(|_| VariationalError::SingularSystem)?;
        for (ci, &fe) in free.iter().enumerate() {
            a[fe] = x[ci];
        }
        Ok(a)
    }
}

fn collect_edges(
    faces: &[Vec<Vec<(usize, i64)>>],
    p: usize,
    i: usize,
    out: &mut BTreeSet<usize>,
) {
    if p == 1 {
        out.insert(i);
        return;
    }
    for &(f, _) in &faces[p][i] {
        collect_edges(faces, p - 1, f, out);
    }
}
