//! Cone and cocone operators, star-shaped detection, one-ring cone
//! augmentation, and the machinery behind the discrete Poincaré lemma.
//!
//! Everything here is exact: chains carry i64 coefficients, cone tables are
//! integer matrices, and the counterexample analysis runs Gaussian
//! elimination over arbitrary-precision rationals.
//!
//! The homotopy identity has the classical degree-0 correction: with base
//! center c, `p∂ + ∂p = I` on chains of degree ≥ 1 and `p∂ + ∂p = I - [c]·ε`
//! on 0-chains (ε is the coefficient sum). Dually, `Hd + dH = I` holds on
//! k-cochains for k ≥ 1, which is the range the Poincaré lemma speaks about.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Chain, SimplicialComplex};
use crate::forms::Cochain;
use crate::ops::{Side, SparseMatrix};

#[derive(Debug, Error)]
pub enum HomotopyError {
    #[error("cone simplex {0:?} is not a simplex of the complex")]
    MissingSimplex(Vec<usize>),
    #[error("cochain of degree {0} is not closed")]
    NotClosed(usize),
    #[error("no cone structure available")]
    NoConeStructure,
    #[error("degree 0 has no potential degree below it")]
    DegreeFloor,
    #[error("vertex maps do not define a simplicial isomorphism: {0}")]
    NotIsomorphic(String),
    #[error("augmentation step {step}: p undefined for required simplex {simplex:?}")]
    EnumerationOrderViolation { step: usize, simplex: Vec<usize> },
    #[error("augmentation step {step}: {what}")]
    BadStep { step: usize, what: String },
    #[error("complex build failed: {0}")]
    Complex(#[from] crate::complex::ComplexError),
}

/// Integer-valued cochain for the exact homotopy identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntCochain {
    pub degree: usize,
    pub values: Vec<i64>,
}

impl IntCochain {
    pub fn zero(degree: usize, len: usize) -> Self {
        IntCochain { degree, values: vec![0; len] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn to_f64(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            side: Side::Primal,
            values: self.values.iter().map(|&v| v as f64).collect(),
        }
    }
}

/// The cone w ⋄ c: [w, v₀, …, v_k] extended linearly, with w ∈ σ giving 0.
pub fn cone(complex: &SimplicialComplex, w_id: usize, c: &Chain) -> Result<Chain, HomotopyError> {
    let mut out = Chain::zero(c.degree + 1);
    for (&i, &coeff) in &c.coeffs {
        let verts = complex.simplex_vertices(c.degree, i);
        if verts.contains(&w_id) {
            continue;
        }
        let orient = complex.orientation_sign(c.degree, i);
        let mut cone_verts = Vec::with_capacity(verts.len() + 1);
        cone_verts.push(w_id);
        cone_verts.extend_from_slice(verts);
        let (j, sign) = complex
            .find_simplex(&cone_verts)
            .ok_or(HomotopyError::MissingSimplex(cone_verts.clone()))?;
        out.add_term(j, coeff * orient * sign);
    }
    Ok(out)
}

/// A vertex whose cone over every simplex stays in K. Coning a top simplex
/// gives an (n+1)-chain, which is only expressible (as zero) when the vertex
/// already lies in it, so the center must belong to every top simplex; face
/// closure then covers all lower cones. Returns the vertex id.
pub fn trivially_star_center(complex: &SimplicialComplex) -> Option<usize> {
    let n = complex.dimension();
    let tops = complex.num_simplices(n);
    if tops == 0 {
        return None;
    }
    let candidates: Vec<usize> = complex.simplex_vertices(n, 0).to_vec();
    candidates
        .into_iter()
        .find(|&v| (0..tops).all(|t| complex.simplex_vertices(n, t).contains(&v)))
}

/// Generalized cone operator: one chain p(σᵏ) per simplex.
#[derive(Clone, Debug)]
pub struct ConeTable {
    /// p[k][i]: chain of degree k+1
    p: Vec<Vec<Chain>>,
    /// vertex id of the base center
    center_id: usize,
}

impl ConeTable {
    /// Straight cone from a trivially-star-shaped center.
    pub fn from_center(
        complex: &SimplicialComplex,
        center_id: usize,
    ) -> Result<Self, HomotopyError> {
        let n = complex.dimension();
        let mut p = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut per = Vec::with_capacity(complex.num_simplices(k));
            for i in 0..complex.num_simplices(k) {
                // unit chain = the simplex in its stored orientation
                let coned = cone(complex, center_id, &Chain::single(k, i, 1))?;
                per.push(coned);
            }
            p.push(per);
        }
        Ok(ConeTable { p, center_id })
    }

    pub fn center_id(&self) -> usize {
        self.center_id
    }

    /// p(σᵏ_i) for the stored orientation.
    pub fn p_of(&self, k: usize, i: usize) -> &Chain {
        &self.p[k][i]
    }

    /// Linear extension of p to chains.
    pub fn apply_p(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero(c.degree + 1);
        for (&i, &coeff) in &c.coeffs {
            for (&j, &pc) in &self.p[c.degree][i].coeffs {
                out.add_term(j, coeff * pc);
            }
        }
        out
    }

    /// Matrix of p on k-chains (rows: (k+1)-simplices).
    pub fn p_matrix(&self, k: usize, complex: &SimplicialComplex) -> SparseMatrix<i64> {
        let rows = complex.num_simplices(k + 1);
        let cols = complex.num_simplices(k);
        let mut triplets = Vec::new();
        for (i, chain) in self.p[k].iter().enumerate() {
            for (&j, &v) in &chain.coeffs {
                triplets.push((j, i, v));
            }
        }
        SparseMatrix::from_triplets(rows, cols, triplets)
    }

    /// Matrix of the cocone H on k-cochains: the transpose of p on
    /// (k-1)-chains.
    pub fn h_matrix(&self, k: usize, complex: &SimplicialComplex) -> SparseMatrix<i64> {
        assert!(k >= 1, "H on 0-forms is the zero map to the empty degree");
        self.p_matrix(k - 1, complex).transpose()
    }

    /// Hα. H of a 0-form is the zero cochain of the empty degree below.
    pub fn cocone(&self, complex: &SimplicialComplex, alpha: &IntCochain) -> IntCochain {
        if alpha.degree == 0 {
            return IntCochain::zero(0, 0);
        }
        let h = self.h_matrix(alpha.degree, complex);
        IntCochain { degree: alpha.degree - 1, values: h.mul_vec(&alpha.values) }
    }

    pub fn cocone_f64(&self, complex: &SimplicialComplex, alpha: &Cochain) -> Cochain {
        if alpha.degree == 0 {
            return Cochain::zero(0, Side::Primal, 0);
        }
        let h = self.h_matrix(alpha.degree, complex).to_f64();
        Cochain {
            degree: alpha.degree - 1,
            side: Side::Primal,
            values: h.mul_vec(&alpha.values),
        }
    }

    /// (p∂ + ∂p - I) applied to a chain, with the degree-0 center correction
    /// included so that a valid table gives exactly zero at every degree.
    pub fn defect(&self, complex: &SimplicialComplex, c: &Chain) -> Chain {
        let mut out = Chain::zero(c.degree);
        if c.degree >= 1 {
            let pd = self.apply_p(&complex.boundary(c).expect("degree in range"));
            out = out.add(&pd);
        }
        if c.degree < complex.dimension() {
            let dp = complex.boundary(&self.apply_p(c)).expect("degree in range");
            out = out.add(&dp);
        }
        out = out.sub(c);
        if c.degree == 0 {
            let center = complex.vertex_index(self.center_id).expect("center in complex");
            out.add_term(center, c.coefficient_sum());
        }
        out
    }

    /// Checks the homotopy identity on every simplex; returns the first
    /// failing (dimension, index) if any.
    pub fn verify(&self, complex: &SimplicialComplex) -> Result<(), (usize, usize)> {
        for k in 0..=complex.dimension() {
            for i in 0..complex.num_simplices(k) {
                let c = Chain::single(k, i, 1);
                if !self.defect(complex, &c).is_zero() {
                    return Err((k, i));
                }
            }
        }
        Ok(())
    }

    /// Pushes the table through a simplicial isomorphism onto an isomorphic
    /// complex: p_L = φ ∘ p_K ∘ φ⁻¹.
    pub fn pushforward(
        &self,
        from: &SimplicialComplex,
        to: &SimplicialComplex,
        vertex_map: &BTreeMap<usize, usize>,
    ) -> Result<ConeTable, HomotopyError> {
        check_isomorphism(from, to, vertex_map)?;
        let map_chain = |c: &Chain, k: usize| -> Result<Chain, HomotopyError> {
            let mut out = Chain::zero(k);
            for (&i, &coeff) in &c.coeffs {
                let verts: Vec<usize> = from
                    .simplex_vertices(k, i)
                    .iter()
                    .map(|v| vertex_map[v])
                    .collect();
                let orient = from.orientation_sign(k, i);
                let (j, sign) = to
                    .find_simplex(&verts)
                    .ok_or_else(|| HomotopyError::MissingSimplex(verts.clone()))?;
                out.add_term(j, coeff * orient * sign);
            }
            Ok(out)
        };
        let n = from.dimension();
        let mut p = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut per = vec![Chain::zero(k + 1); to.num_simplices(k)];
            for i in 0..from.num_simplices(k) {
                let verts: Vec<usize> = from
                    .simplex_vertices(k, i)
                    .iter()
                    .map(|v| vertex_map[v])
                    .collect();
                let (j, sign) = to
                    .find_simplex(&verts)
                    .ok_or_else(|| HomotopyError::MissingSimplex(verts.clone()))?;
                // φ(stored σ_K) = o_K(i)·sign·(stored σ_L), so
                // p_L(stored σ_L) = o_K(i)·sign·φ(p_K(stored σ_K))
                let factor = from.orientation_sign(k, i) * sign;
                per[j] = map_chain(&self.p[k][i], k + 1)?.scale(factor);
            }
            p.push(per);
        }
        Ok(ConeTable { p, center_id: vertex_map[&self.center_id] })
    }
}

fn check_isomorphism(
    from: &SimplicialComplex,
    to: &SimplicialComplex,
    vertex_map: &BTreeMap<usize, usize>,
) -> Result<(), HomotopyError> {
    if from.dimension() != to.dimension() {
        return Err(HomotopyError::NotIsomorphic("dimension mismatch".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &v in vertex_map.values() {
        if !seen.insert(v) {
            return Err(HomotopyError::NotIsomorphic("vertex map not injective".into()));
        }
    }
    for k in 0..=from.dimension() {
        if from.num_simplices(k) != to.num_simplices(k) {
            return Err(HomotopyError::NotIsomorphic(format!(
                "simplex counts differ in dimension {k}"
            )));
        }
        for i in 0..from.num_simplices(k) {
            let verts: Vec<usize> = from
                .simplex_vertices(k, i)
                .iter()
                .map(|v| {
                    vertex_map.get(v).copied().ok_or_else(|| {
                        HomotopyError::NotIsomorphic(format!("vertex {v} unmapped"))
                    })
                })
                .collect::<Result<_, _>>()?;
            if to.find_simplex(&verts).is_none() {
                return Err(HomotopyError::NotIsomorphic(format!(
                    "image of simplex {:?} missing",
                    from.simplex_vertices(k, i)
                )));
            }
        }
    }
    Ok(())
}

/// One growth step of a complex under cone augmentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AugStep {
    /// One-ring cone augmentation: cone the base chain (edges of the one-ring
    /// of `center` on the current boundary) to the new vertex.
    Cone {
        vertex: usize,
        center: usize,
        /// (n-1)-chain as oriented vertex lists with coefficients
        base: Vec<(Vec<usize>, i64)>,
    },
    /// Closing step with no new vertex: explicit (σᵏ, σᵏ⁺¹) pairs processed
    /// in order, assigning p(σᵏ⁺¹) = 0 and deriving p(σᵏ) from the identity.
    Close { pairs: Vec<(Vec<usize>, Vec<usize>)> },
}

/// A buildable complex: initial trivially-star-shaped top simplices plus an
/// ordered augmentation script.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AugmentationScript {
    pub initial_tops: Vec<Vec<usize>>,
    pub initial_center: usize,
    pub steps: Vec<AugStep>,
}

impl AugmentationScript {
    /// The first `count` steps only, for growth-prefix checks.
    pub fn prefix(&self, count: usize) -> AugmentationScript {
        AugmentationScript {
            initial_tops: self.initial_tops.clone(),
            initial_center: self.initial_center,
            steps: self.steps[..count].to_vec(),
        }
    }

    /// All top simplices after every step.
    pub fn final_tops(&self) -> Vec<Vec<usize>> {
        let mut tops = self.initial_tops.clone();
        for step in &self.steps {
            match step {
                AugStep::Cone { vertex, base, .. } => {
                    for (verts, _) in base {
                        let mut t = vec![*vertex];
                        t.extend_from_slice(verts);
                        tops.push(t);
                    }
                }
                AugStep::Close { pairs } => {
                    for (_, upper) in pairs {
                        if upper.len() == tops[0].len() {
                            tops.push(upper.clone());
                        }
                    }
                }
            }
        }
        tops
    }
}

/// Builds the complex grown by the script together with its cone table.
///
/// The initial complex must be trivially star-shaped from `initial_center`;
/// each cone step then defines p on the new simplices by
/// p(σ) = v₀⋄σ - p(∂(v₀⋄σ) - σ) for simplices not containing the step
/// center v₀ and p(σ) = 0 otherwise. Close steps use their explicit pairs.
pub fn build_augmented(
    script: &AugmentationScript,
) -> Result<(SimplicialComplex, ConeTable), HomotopyError> {
    let complex = SimplicialComplex::build(&script.final_tops())?;
    let n = complex.dimension();

    // start: straight cone on the initial subcomplex
    let initial = SimplicialComplex::build(&script.initial_tops)?;
    if trivially_star_center(&initial) != Some(script.initial_center) {
        // the chosen center must cone every simplex of the initial complex
        let ok = (0..initial.num_simplices(initial.dimension())).all(|t| {
            initial
                .simplex_vertices(initial.dimension(), t)
                .contains(&script.initial_center)
        });
        if !ok {
            return Err(HomotopyError::BadStep {
                step: 0,
                what: "initial complex is not trivially star-shaped from the given center"
                    .into(),
            });
        }
    }
    let mut p: Vec<Vec<Option<Chain>>> =
        (0..=n).map(|k| vec![None; complex.num_simplices(k)]).collect();
    for k in 0..=initial.dimension() {
        for i in 0..initial.num_simplices(k) {
            let verts = initial.simplex_vertices(k, i).to_vec();
            let (j, _) = complex.find_simplex(&verts).expect("subcomplex");
            // straight cone of the globally-stored orientation
            let coned = cone(&complex, script.initial_center, &Chain::single(k, j, 1))?;
            p[k][j] = Some(coned);
        }
    }

    for (step_idx, step) in script.steps.iter().enumerate() {
        match step {
            AugStep::Cone { vertex, center, base } => {
                // new simplices: vertex ⋄ closure(base) plus [vertex]
                let mut new_by_dim: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
                if let Some(vi) = complex.find_simplex(&[*vertex]).map(|(i, _)| i) {
                    if p[0][vi].is_none() {
                        new_by_dim[0].push(vi);
                    }
                }
                let mut closure: Vec<Vec<usize>> = Vec::new();
                for (verts, _) in base {
                    for mask in 1u32..(1 << verts.len()) {
                        let subset: Vec<usize> = verts
                            .iter()
                            .enumerate()
                            .filter(|(b, _)| mask & (1 << b) != 0)
                            .map(|(_, &v)| v)
                            .collect();
                        closure.push(subset);
                    }
                }
                closure.sort();
                closure.dedup();
                for subset in closure {
                    let mut cv = vec![*vertex];
                    cv.extend(subset);
                    if let Some((i, _)) = complex.find_simplex(&cv) {
                        let k = cv.len() - 1;
                        if p[k][i].is_none() && !new_by_dim[k].contains(&i) {
                            new_by_dim[k].push(i);
                        }
                    } else {
                        return Err(HomotopyError::MissingSimplex(cv));
                    }
                }
                for k in 0..=n {
                    // center-containing simplices get p = 0 first; the
                    // recursion below may reference them
                    for &i in &new_by_dim[k] {
                        if complex.simplex_vertices(k, i).contains(center) {
                            p[k][i] = Some(Chain::zero(k + 1));
                        }
                    }
                    for &i in &new_by_dim[k] {
                        let verts = complex.simplex_vertices(k, i);
                        if verts.contains(center) {
                            continue;
                        }
                        let sigma = Chain::single(k, i, 1);
                        let pair = cone(&complex, *center, &sigma)?;
                        if pair.is_zero() {
                            return Err(HomotopyError::BadStep {
                                step: step_idx,
                                what: format!(
                                    "cone of {:?} over center {center} is degenerate",
                                    verts
                                ),
                            });
                        }
                        let rest = complex
                            .boundary(&pair)
                            .expect("degree in range")
                            .sub(&sigma);
                        let p_rest =
                            apply_partial(&p, &rest).map_err(|simplex| {
                                HomotopyError::EnumerationOrderViolation {
                                    step: step_idx,
                                    simplex: complex
                                        .simplex_vertices(k, simplex)
                                        .to_vec(),
                                }
                            })?;
                        p[k][i] = Some(pair.sub(&p_rest));
                    }
                }
            }
            AugStep::Close { pairs } => {
                for (lower_verts, upper_verts) in pairs {
                    let lk = lower_verts.len() - 1;
                    let (li, lsign) = complex
                        .find_simplex(lower_verts)
                        .ok_or_else(|| HomotopyError::MissingSimplex(lower_verts.clone()))?;
                    let (ui, _) = complex
                        .find_simplex(upper_verts)
                        .ok_or_else(|| HomotopyError::MissingSimplex(upper_verts.clone()))?;
                    let _ = lsign;
                    p[lk + 1][ui] = Some(Chain::zero(lk + 2));
                    // orient the pair so the lower simplex appears with +1
                    let sigma = Chain::single(lk, li, 1);
                    let incidence = complex
                        .boundary(&Chain::single(lk + 1, ui, 1))
                        .expect("degree in range")
                        .coeffs
                        .get(&li)
                        .copied()
                        .unwrap_or(0);
                    if incidence == 0 {
                        return Err(HomotopyError::BadStep {
                            step: step_idx,
                            what: format!(
                                "{lower_verts:?} is not a face of {upper_verts:?}"
                            ),
                        });
                    }
                    let pair = Chain::single(lk + 1, ui, incidence);
                    let rest =
                        complex.boundary(&pair).expect("degree in range").sub(&sigma);
                    let p_rest = apply_partial(&p, &rest).map_err(|simplex| {
                        HomotopyError::EnumerationOrderViolation {
                            step: step_idx,
                            simplex: complex.simplex_vertices(lk, simplex).to_vec(),
                        }
                    })?;
                    p[lk][li] = Some(pair.sub(&p_rest));
                }
            }
        }
    }

    // every simplex must have p defined
    for k in 0..=n {
        for i in 0..complex.num_simplices(k) {
            if p[k][i].is_none() {
                return Err(HomotopyError::EnumerationOrderViolation {
                    step: script.steps.len(),
                    simplex: complex.simplex_vertices(k, i).to_vec(),
                });
            }
        }
    }
    let table = ConeTable {
        p: p.into_iter()
            .map(|per| per.into_iter().map(|c| c.expect("checked")).collect())
            .collect(),
        center_id: script.initial_center,
    };
    Ok((complex, table))
}

/// p applied through a partially-built table; Err carries the index of the
/// first simplex whose value is missing.
fn apply_partial(p: &[Vec<Option<Chain>>], c: &Chain) -> Result<Chain, usize> {
    let mut out = Chain::zero(c.degree + 1);
    for (&i, &coeff) in &c.coeffs {
        match &p[c.degree][i] {
            Some(chain) => {
                for (&j, &v) in &chain.coeffs {
                    out.add_term(j, coeff * v);
                }
            }
            None => return Err(i),
        }
    }
    Ok(out)
}

/// Solves dβ = α for a closed α of degree ≥ 1 via β = Hα; exact integers.
pub fn poincare_solve(
    complex: &SimplicialComplex,
    table: &ConeTable,
    alpha: &IntCochain,
) -> Result<IntCochain, HomotopyError> {
    if alpha.degree == 0 {
        return Err(HomotopyError::DegreeFloor);
    }
    let k = alpha.degree;
    if k < complex.dimension() {
        let d = complex.boundary_matrix(k + 1).expect("degree in range").transpose();
        if d.mul_vec(&alpha.values).iter().any(|&v| v != 0) {
            return Err(HomotopyError::NotClosed(k));
        }
    }
    Ok(table.cocone(complex, alpha))
}

/// Rank over the rationals of a set of integer columns.
pub fn rational_rank(nrows: usize, columns: &[Vec<(usize, i64)>]) -> usize {
    type Q = Ratio<BigInt>;
    let mut dense: Vec<Vec<Q>> = columns
        .iter()
        .map(|col| {
            let mut v = vec![Q::zero(); nrows];
            for &(r, x) in col {
                v[r] = Q::from(BigInt::from(x));
            }
            v
        })
        .collect();
    let mut rank = 0;
    for row in 0..nrows {
        let Some(pivot) = (rank..dense.len()).find(|&c| !dense[c][row].is_zero()) else {
            continue;
        };
        dense.swap(rank, pivot);
        let pivot_val = dense[rank][row].clone();
        for c in 0..dense.len() {
            if c != rank && !dense[c][row].is_zero() {
                let factor = &dense[c][row] / &pivot_val;
                for r in 0..nrows {
                    let sub = &dense[rank][r] * &factor;
                    dense[c][r] = &dense[c][r] - &sub;
                }
            }
        }
        rank += 1;
        if rank == dense.len() {
            break;
        }
    }
    rank
}

/// True when the k-cycle is the boundary of a (k+1)-chain, by a rational
/// rank comparison of [∂_{k+1}] against [∂_{k+1} | z].
pub fn is_boundary(complex: &SimplicialComplex, z: &Chain) -> bool {
    let k = z.degree;
    if z.is_zero() {
        return true;
    }
    if k + 1 > complex.dimension() {
        return false;
    }
    let b = complex.boundary_matrix(k + 1).expect("degree in range");
    let nrows = complex.num_simplices(k);
    let mut columns: Vec<Vec<(usize, i64)>> = vec![Vec::new(); complex.num_simplices(k + 1)];
    for &(r, c, v) in b.triplets() {
        columns[c].push((r, v));
    }
    let base_rank = rational_rank(nrows, &columns);
    columns.push(z.coeffs.iter().map(|(&r, &v)| (r, v)).collect());
    let extended = rational_rank(nrows, &columns);
    extended == base_rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meshgen;

    fn closed_fan(m: usize) -> SimplicialComplex {
        let tops: Vec<Vec<usize>> = (0..m).map(|i| vec![0, 1 + i, 1 + (i + 1) % m]).collect();
        SimplicialComplex::build(&tops).unwrap()
    }

    #[test]
    fn cone_of_vertex_is_edge() {
        let k = closed_fan(6);
        let c = k.chain(0, &[(&[1], 1)]).unwrap();
        let coned = cone(&k, 0, &c).unwrap();
        let expected = k.chain(1, &[(&[0, 1], 1)]).unwrap();
        assert_eq!(coned, expected);
    }

    #[test]
    fn cone_identity_on_simplices() {
        // ∂(w⋄σ) + w⋄(∂σ) = σ for k ≥ 1
        let k = closed_fan(6);
        for deg in 1..=2usize {
            for i in 0..k.num_simplices(deg) {
                let c = Chain::single(deg, i, 1);
                let verts = k.simplex_vertices(deg, i);
                if verts.contains(&0) {
                    continue;
                }
                let lhs = k
                    .boundary(&cone(&k, 0, &c).unwrap())
                    .unwrap()
                    .add(&cone(&k, 0, &k.boundary(&c).unwrap()).unwrap());
                assert_eq!(lhs, c);
            }
        }
    }

    #[test]
    fn cone_is_linear() {
        let k = closed_fan(6);
        let a = k.chain(1, &[(&[1, 2], 1)]).unwrap();
        let b = k.chain(1, &[(&[2, 3], 2)]).unwrap();
        let sum = cone(&k, 0, &a.add(&b)).unwrap();
        let parts = cone(&k, 0, &a).unwrap().add(&cone(&k, 0, &b).unwrap());
        assert_eq!(sum, parts);
    }

    #[test]
    fn fan_center_detected() {
        let k = closed_fan(6);
        assert_eq!(trivially_star_center(&k), Some(0));
        // single simplex: any vertex qualifies, the first is returned
        let t = SimplicialComplex::build(&[vec![3, 5, 9]]).unwrap();
        assert_eq!(trivially_star_center(&t), Some(3));
    }

    #[test]
    fn annulus_has_no_center() {
        let (script, _) = meshgen::annulus_counterexample_script();
        let k = SimplicialComplex::build(&script.final_tops()).unwrap();
        assert_eq!(trivially_star_center(&k), None);
    }

    #[test]
    fn straight_cone_identity_holds() {
        let k = closed_fan(7);
        let table = ConeTable::from_center(&k, 0).unwrap();
        assert!(table.verify(&k).is_ok());
    }

    #[test]
    fn cocone_identity_on_cochains() {
        let k = closed_fan(6);
        let table = ConeTable::from_center(&k, 0).unwrap();
        // Hd + dH = I exactly on degrees 1..n as integer matrices
        for deg in 1..=2usize {
            let h_here = table.h_matrix(deg, &k);
            let mut total = SparseMatrix::<i64>::zeros(
                k.num_simplices(deg),
                k.num_simplices(deg),
            );
            if deg < k.dimension() {
                let d_up = k.boundary_matrix(deg + 1).unwrap().transpose();
                let h_up = table.h_matrix(deg + 1, &k);
                total = total.add(&h_up.mul(&d_up));
            }
            let d_down = k.boundary_matrix(deg).unwrap().transpose();
            total = total.add(&d_down.mul(&h_here));
            let identity = SparseMatrix::<i64>::identity(k.num_simplices(deg));
            assert_eq!(total, identity, "degree {deg}");
        }
    }

    #[test]
    fn poincare_solve_exact_forms() {
        let k = closed_fan(6);
        let table = ConeTable::from_center(&k, 0).unwrap();
        // α = dγ for integer γ
        let mut gamma = IntCochain::zero(0, k.num_simplices(0));
        for (i, v) in gamma.values.iter_mut().enumerate() {
            *v = (i as i64 * 3 - 4) % 7;
        }
        let d0 = k.boundary_matrix(1).unwrap().transpose();
        let alpha = IntCochain { degree: 1, values: d0.mul_vec(&gamma.values) };
        let beta = poincare_solve(&k, &table, &alpha).unwrap();
        let d_beta = d0.mul_vec(&beta.values);
        assert_eq!(d_beta, alpha.values);
    }

    #[test]
    fn poincare_zero_input() {
        let k = closed_fan(6);
        let table = ConeTable::from_center(&k, 0).unwrap();
        let alpha = IntCochain::zero(1, k.num_simplices(1));
        let beta = poincare_solve(&k, &table, &alpha).unwrap();
        assert!(beta.is_zero());
    }

    #[test]
    fn poincare_rejects_non_closed() {
        let k = closed_fan(6);
        let table = ConeTable::from_center(&k, 0).unwrap();
        let mut alpha = IntCochain::zero(1, k.num_simplices(1));
        alpha.values[0] = 1;
        assert!(matches!(
            poincare_solve(&k, &table, &alpha),
            Err(HomotopyError::NotClosed(1))
        ));
    }

    #[test]
    fn logical_cone_on_relabelled_fan() {
        let k = closed_fan(5);
        let relabel: BTreeMap<usize, usize> =
            (0..6usize).map(|v| (v, v * 10 + 3)).collect();
        let tops: Vec<Vec<usize>> = (0..5)
            .map(|i| vec![relabel[&0], relabel[&(1 + i)], relabel[&(1 + (i + 1) % 5)]])
            .collect();
        let l = SimplicialComplex::build(&tops).unwrap();
        let table = ConeTable::from_center(&k, 0).unwrap();
        let pushed = table.pushforward(&k, &l, &relabel).unwrap();
        assert!(pushed.verify(&l).is_ok());
        // identity isomorphism keeps the table
        let ident: BTreeMap<usize, usize> = (0..6usize).map(|v| (v, v)).collect();
        let same = table.pushforward(&k, &k, &ident).unwrap();
        assert!(same.verify(&k).is_ok());
        for deg in 0..=2usize {
            for i in 0..k.num_simplices(deg) {
                assert_eq!(same.p_of(deg, i), table.p_of(deg, i));
            }
        }
    }

    #[test]
    fn pushforward_rejects_non_isomorphic() {
        let k = closed_fan(5);
        let l = closed_fan(6);
        let map: BTreeMap<usize, usize> = (0..6usize).map(|v| (v, v)).collect();
        let table = ConeTable::from_center(&k, 0).unwrap();
        assert!(matches!(
            table.pushforward(&k, &l, &map),
            Err(HomotopyError::NotIsomorphic(_))
        ));
    }

    #[test]
    fn two_dim_augmentation_rule() {
        // one base edge [v0,v1] with new vertex w: the table extends the
        // printed rules p([w]) = [v0,w] + p([v0]),
        // p([v1,w]) = [v0,v1,w] - p([v0,v1])
        let script = AugmentationScript {
            initial_tops: vec![vec![0, 1, 2]],
            initial_center: 0,
            steps: vec![AugStep::Cone {
                vertex: 3,
                center: 1,
                base: vec![(vec![1, 2], 1)],
            }],
        };
        let (k, table) = build_augmented(&script).unwrap();
        assert!(table.verify(&k).is_ok());
        let (w, _) = k.find_simplex(&[3]).unwrap();
        let expected = k
            .chain(1, &[(&[1, 3], 1)])
            .unwrap()
            .add(&table.p_of(0, k.find_simplex(&[1]).unwrap().0).clone());
        assert_eq!(table.p_of(0, w), &expected);
    }

    #[test]
    fn growth_prefixes_all_verify() {
        let script = meshgen::regular_triangulation_script(3);
        for cut in 0..=script.steps.len() {
            let prefix = script.prefix(cut);
            let (k, table) = build_augmented(&prefix).unwrap();
            assert!(table.verify(&k).is_ok(), "prefix {cut}");
        }
    }

    #[test]
    fn cube_tetrahedralization_identity() {
        let script = meshgen::cube_tetrahedralization_script();
        let (k, table) = build_augmented(&script).unwrap();
        assert_eq!(k.dimension(), 3);
        assert_eq!(k.num_simplices(3), 6);
        assert!(table.verify(&k).is_ok());
    }

    #[test]
    fn annulus_defect_is_nonbounding_cycle() {
        let (script, probe) = meshgen::annulus_counterexample_script();
        let (k, table) = meshgen::annulus_counterexample_table(&script).unwrap();
        // the defect of the closing edge is a nonzero 1-cycle that is not a
        // boundary: the obstruction the Poincaré lemma sees on the annulus
        let (e, _) = k.find_simplex(&probe).unwrap();
        let defect = table.defect(&k, &Chain::single(1, e, 1));
        assert!(!defect.is_zero());
        let boundary_of_defect = k.boundary(&defect).unwrap();
        assert!(boundary_of_defect.is_zero(), "defect must be a cycle");
        assert!(!is_boundary(&k, &defect), "defect must not bound");
    }

    #[test]
    fn rational_rank_small_cases() {
        // two independent columns and one dependent
        let cols = vec![
            vec![(0usize, 1i64), (1, 2)],
            vec![(1, 1)],
            vec![(0, 2), (1, 5)],
        ];
        assert_eq!(rational_rank(2, &cols), 2);
        let cols2 = vec![vec![(0usize, 3i64)], vec![(0, -6)]];
        assert_eq!(rational_rank(1, &cols2), 1);
    }
}
