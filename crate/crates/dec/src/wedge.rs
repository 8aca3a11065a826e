//! The wedge products: geometric and natural primal-primal, dual-dual, and
//! the primal-dual product on support volumes.
//!
//! Permutation sums are enumerated explicitly; degrees stay small (k+l ≤ n)
//! so the factorial cost is bounded by (n+1)!.
//!
//! The dual-dual product follows the double-sum structure over cofaces and
//! S_{k+l}, weighted by the restricted dual volume fraction
//! |⋆σ ∩ σⁿ| / |⋆σ| and normalized by 1/(k+l)! so that the constant dual
//! 0-form is a unit for the product.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::forms::{Cochain, Dec};
use crate::ops::Side;

#[derive(Debug, Error)]
pub enum WedgeError {
    #[error("wedge degree overflow: {0} + {1} exceeds dimension {2}")]
    DegreeOverflow(usize, usize, usize),
    #[error("degrees {0} and {1} are not complementary in dimension {2}")]
    DegreeMismatch(usize, usize, usize),
    #[error("expected a {0} cochain")]
    WrongSide(Side),
}

/// Which primal-primal wedge to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WedgeVariant {
    /// Metric weights |σ ∩ ⋆v| / |σ|.
    Geometric,
    /// Constant weight 1/(k+l+1); natural under pull-back.
    Natural,
}

/// Permutations of 0..m with signs, cached per order.
#[derive(Default)]
pub struct PermutationTable {
    cache: BTreeMap<usize, Vec<(Vec<usize>, i64)>>,
}

impl PermutationTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn group(&mut self, m: usize) -> &[(Vec<usize>, i64)] {
        self.cache.entry(m).or_insert_with(|| {
            let mut out = Vec::new();
            let mut perm: Vec<usize> = (0..m).collect();
            permute(&mut perm, 0, 1, &mut out);
            out.sort();
            out
        })
    }
}

fn permute(perm: &mut Vec<usize>, at: usize, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
    if at == perm.len() {
        out.push((perm.clone(), sign));
        return;
    }
    for i in at..perm.len() {
        let s = if i == at { sign } else { -sign };
        perm.swap(at, i);
        permute(perm, at + 1, s, out);
        perm.swap(at, i);
    }
}

/// Parity of the permutation taking `from` to sorted order; None when `from`
/// has repeats.
fn parity_to_sorted(from: &[usize]) -> Option<i64> {
    let mut v = from.to_vec();
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some(sign)
}

fn eval_primal(dec: &Dec, alpha: &Cochain, verts: &[usize]) -> f64 {
    match dec.complex.find_simplex(verts) {
        Some((idx, sign)) => sign as f64 * alpha.values[idx],
        None => 0.0,
    }
}

/// Evaluation of a dual form on ⋆(simplex given by `verts` in that order).
fn eval_dual(dec: &Dec, alpha: &Cochain, verts: &[usize]) -> f64 {
    match dec.complex.find_simplex(verts) {
        Some((idx, sign)) => sign as f64 * alpha.values[idx],
        None => 0.0,
    }
}

/// Primal-primal wedge product of a k-form and an l-form.
pub fn wedge_pp(
    dec: &Dec,
    alpha: &Cochain,
    beta: &Cochain,
    variant: WedgeVariant,
    perms: &mut PermutationTable,
) -> Result<Cochain, WedgeError> {
    if alpha.side != Side::Primal || beta.side != Side::Primal {
        return Err(WedgeError::WrongSide(Side::Primal));
    }
    let (k, l) = (alpha.degree, beta.degree);
    let n = dec.complex.dimension();
    let m = k + l;
    if m > n {
        return Err(WedgeError::DegreeOverflow(k, l, n));
    }
    let count = dec.complex.num_simplices(m);
    let mut out = Cochain::zero(m, Side::Primal, count);
    let group: Vec<(Vec<usize>, i64)> = perms.group(m + 1).to_vec();
    let mut fact = 1.0;
    for i in 1..=m {
        fact *= i as f64;
    }
    for target in 0..count {
        let verts = dec.complex.simplex_vertices(m, target).to_vec();
        let orient = dec.complex.orientation_sign(m, target) as f64;
        let mut acc = 0.0;
        for (tau, tau_sign) in &group {
            let weight = match variant {
                WedgeVariant::Natural => 1.0 / (m + 1) as f64,
                WedgeVariant::Geometric => {
                    let pivot = verts[tau[k]];
                    let vi = dec.complex.vertex_index(pivot).expect("vertex");
                    dec.geometry.restricted_volume(0, vi, m, target)
                        / dec.geometry.primal_volume(m, target)
                }
            };
            if weight == 0.0 {
                continue;
            }
            let a_verts: Vec<usize> = tau[..=k].iter().map(|&p| verts[p]).collect();
            let b_verts: Vec<usize> = tau[k..].iter().map(|&p| verts[p]).collect();
            let a = eval_primal(dec, alpha, &a_verts);
            if a == 0.0 {
                continue;
            }
            let b = eval_primal(dec, beta, &b_verts);
            acc += *tau_sign as f64 * weight * a * b;
        }
        out.values[target] = orient * acc / fact;
    }
    Ok(out)
}

/// All top simplices containing the given simplex.
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

/// Dual-dual wedge product of a dual k-form and a dual l-form.
pub fn wedge_dd(
    dec: &Dec,
    alpha: &Cochain,
    beta: &Cochain,
    perms: &mut PermutationTable,
) -> Result<Cochain, WedgeError> {
    if alpha.side != Side::Dual || beta.side != Side::Dual {
        return Err(WedgeError::WrongSide(Side::Dual));
    }
    let (k, l) = (alpha.degree, beta.degree);
    let n = dec.complex.dimension();
    let m = k + l;
    if m > n {
        return Err(WedgeError::DegreeOverflow(k, l, n));
    }
    let base_dim = n - m;
    let count = dec.complex.num_simplices(base_dim);
    let mut out = Cochain::zero(m, Side::Dual, count);
    let group: Vec<(Vec<usize>, i64)> = perms.group(m).to_vec();
    let mut fact = 1.0;
    for i in 1..=m {
        fact *= i as f64;
    }
    for target in 0..count {
        let base: Vec<usize> = dec.complex.simplex_vertices(base_dim, target).to_vec();
        let dual_vol = dec.geometry.dual_volume(base_dim, target);
        if dual_vol == 0.0 {
            continue;
        }
        // sign(σ^{n-k-l}, [v_{k+l},…,v_n]): stored orientation against the
        // sorted base listing used below
        let base_sign = dec.complex.orientation_sign(base_dim, target) as f64;
        let mut acc = 0.0;
        for top in tops_above(dec.complex, base_dim, target) {
            let top_verts = dec.complex.simplex_vertices(n, top);
            let complement: Vec<usize> =
                top_verts.iter().copied().filter(|v| !base.contains(v)).collect();
            // labeling complement ++ base against the oriented top simplex
            let listing: Vec<usize> =
                complement.iter().chain(base.iter()).copied().collect();
            let s0 = parity_to_sorted(&listing).expect("distinct vertices")
                * dec.complex.orientation_sign(n, top);
            let weight = dec.geometry.restricted_volume(base_dim, target, n, top) / dual_vol;
            let mut inner = 0.0;
            for (tau, tau_sign) in &group {
                let a_verts: Vec<usize> = tau[..l]
                    .iter()
                    .map(|&p| complement[p])
                    .chain(base.iter().copied())
                    .collect();
                let a = eval_dual(dec, alpha, &a_verts);
                if a == 0.0 {
                    continue;
                }
                let b_verts: Vec<usize> = tau[l..]
                    .iter()
                    .map(|&p| complement[p])
                    .chain(base.iter().copied())
                    .collect();
                let b = eval_dual(dec, beta, &b_verts);
                inner += *tau_sign as f64 * a * b;
            }
            acc += weight * s0 as f64 * inner;
        }
        out.values[target] = base_sign * acc / fact;
    }
    Ok(out)
}

/// An n-form supported on the support volumes V_σᵏ, one value per k-simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportVolumeForm {
    /// Degree of the indexing primal simplices.
    pub base_degree: usize,
    pub values: Vec<f64>,
}

impl SupportVolumeForm {
    /// Σ_σ ⟨ω, V_σ⟩: the integral over |K|.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Primal-dual wedge of a primal k-form with a dual (n-k)-form:
/// ⟨α ∧ β̂, V_σ⟩ = (1/n) ⟨α,σ⟩ ⟨β̂,⋆σ⟩.
pub fn wedge_pd(
    dec: &Dec,
    alpha: &Cochain,
    beta_hat: &Cochain,
) -> Result<SupportVolumeForm, WedgeError> {
    if alpha.side != Side::Primal {
        return Err(WedgeError::WrongSide(Side::Primal));
    }
    if beta_hat.side != Side::Dual {
        return Err(WedgeError::WrongSide(Side::Dual));
    }
    let n = dec.complex.dimension();
    let k = alpha.degree;
    if beta_hat.degree + k != n {
        return Err(WedgeError::DegreeMismatch(k, beta_hat.degree, n));
    }
    let count = dec.complex.num_simplices(k);
    let mut values = vec![0.0; count];
    for i in 0..count {
        values[i] = alpha.values[i] * beta_hat.values[i] / n as f64;
    }
    Ok(SupportVolumeForm { base_degree: k, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_dual, DualMode, GeometryTable};
    use approx::assert_relative_eq;
    use nalgebra::DVector;

    fn dv(coords: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(coords)
    }

    fn hex_fan() -> (SimplicialComplex, GeometryTable) {
        let tops: Vec<Vec<usize>> = (0..6).map(|i| vec![0, 1 + i, 1 + (i + 1) % 6]).collect();
        let k = SimplicialComplex::build(&tops).unwrap();
        let mut coords = vec![dv(&[0.0, 0.0])];
        for i in 0..6 {
            let a = std::f64::consts::FRAC_PI_3 * i as f64;
            coords.push(dv(&[a.cos(), a.sin()]));
        }
        let (_, g) = build_dual(&k, &coords, DualMode::WellCenteredOnly).unwrap();
        (k, g)
    }

    fn tetrahedron() -> (SimplicialComplex, GeometryTable) {
        let k = SimplicialComplex::build(&[vec![0, 1, 2, 3]]).unwrap();
        let coords = vec![
            dv(&[1.0, 1.0, 1.0]),
            dv(&[1.0, -1.0, -1.0]),
            dv(&[-1.0, 1.0, -1.0]),
            dv(&[-1.0, -1.0, 1.0]),
        ];
        let (_, g) = build_dual(&k, &coords, DualMode::WellCenteredOnly).unwrap();
        (k, g)
    }

    fn random_cochain(len: usize, degree: usize, side: Side, seed: u64) -> Cochain {
        let mut values = Vec::with_capacity(len);
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        for _ in 0..len {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            values.push(((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0);
        }
        Cochain { degree, side, values }
    }

    #[test]
    fn permutation_table_sizes_and_signs() {
        let mut t = PermutationTable::new();
        assert_eq!(t.group(3).len(), 6);
        assert_eq!(t.group(4).len(), 24);
        // sign multiplicativity on S_3: compose and compare
        let g3: Vec<_> = t.group(3).to_vec();
        for (p, sp) in &g3 {
            for (q, sq) in &g3 {
                let comp: Vec<usize> = (0..3).map(|i| p[q[i]]).collect();
                let sc = g3.iter().find(|(r, _)| r == &comp).unwrap().1;
                assert_eq!(sc, sp * sq);
            }
        }
    }

    #[test]
    fn unit_zero_form_is_identity_natural() {
        let (k, g) = hex_fan();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        let ones = Cochain::primal(0, vec![1.0; k.num_simplices(0)]);
        for deg in 0..=2usize {
            let alpha = random_cochain(k.num_simplices(deg), deg, Side::Primal, 7 + deg as u64);
            let w = wedge_pp(&dec, &ones, &alpha, WedgeVariant::Natural, &mut perms).unwrap();
            for i in 0..alpha.len() {
                assert_relative_eq!(w.values[i], alpha.values[i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn unit_zero_form_is_identity_geometric() {
        // the geometric weights sum to the same normalization for f ≡ 1
        let (k, g) = hex_fan();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        let ones = Cochain::primal(0, vec![1.0; k.num_simplices(0)]);
        let alpha = random_cochain(k.num_simplices(1), 1, Side::Primal, 3);
        let w = wedge_pp(&dec, &ones, &alpha, WedgeVariant::Geometric, &mut perms).unwrap();
        for i in 0..alpha.len() {
            assert_relative_eq!(w.values[i], alpha.values[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn anti_commutativity_one_forms() {
        let (k, g) = hex_fan();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        let a = random_cochain(k.num_simplices(1), 1, Side::Primal, 11);
        let b = random_cochain(k.num_simplices(1), 1, Side::Primal, 13);
        for variant in [WedgeVariant::Geometric, WedgeVariant::Natural] {
            let ab = wedge_pp(&dec, &a, &b, variant, &mut perms).unwrap();
            let ba = wedge_pp(&dec, &b, &a, variant, &mut perms).unwrap();
            // k = l = 1: α∧β = -β∧α
            for i in 0..ab.len() {
                assert_relative_eq!(ab.values[i], -ba.values[i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn one_triangle_wedge_matches_brute_force() {
        // independent brute-force over all 6 permutations of S_3 on a single
        // triangle, both variants
        let k = SimplicialComplex::build(&[vec![0, 1, 2]]).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let coords = vec![dv(&[0.0, 0.0]), dv(&[1.0, 0.0]), dv(&[0.5, h])];
        let (_, g) = build_dual(&k, &coords, DualMode::WellCenteredOnly).unwrap();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        let a = random_cochain(3, 1, Side::Primal, 17);
        let b = random_cochain(3, 1, Side::Primal, 19);

        let eval = |alpha: &Cochain, verts: &[usize]| -> f64 {
            let (idx, sign) = k.find_simplex(verts).unwrap();
            sign as f64 * alpha.values[idx]
        };
        // vertex order [0,1,2] is the stored orientation of the triangle
        let verts = [0usize, 1, 2];
        let all_perms: [( [usize;3], f64); 6] = [
            ([0, 1, 2], 1.0),
            ([0, 2, 1], -1.0),
            ([1, 0, 2], -1.0),
            ([1, 2, 0], 1.0),
            ([2, 0, 1], 1.0),
            ([2, 1, 0], -1.0),
        ];
        for variant in [WedgeVariant::Geometric, WedgeVariant::Natural] {
            let mut acc = 0.0;
            for (p, sign) in &all_perms {
                let weight = match variant {
                    WedgeVariant::Natural => 1.0 / 3.0,
                    WedgeVariant::Geometric => {
                        let pivot = verts[p[1]];
                        let vi = k.vertex_index(pivot).unwrap();
                        g.restricted_volume(0, vi, 2, 0) / g.primal_volume(2, 0)
                    }
                };
                acc += sign
                    * weight
                    * eval(&a, &[verts[p[0]], verts[p[1]]])
                    * eval(&b, &[verts[p[1]], verts[p[2]]]);
            }
            acc /= 2.0;
            let w = wedge_pp(&dec, &a, &b, variant, &mut perms).unwrap();
            assert_relative_eq!(w.values[0], acc, epsilon = 1e-13);
        }
    }

    #[test]
    fn geometric_factor_identity() {
        // Σ_{τ ∈ S_{m+1}} |σ ∩ ⋆v_{τ(k)}| / |σ| = m! for every simplex
        let (k, g) = hex_fan();
        let mut perms = PermutationTable::new();
        for m in 1..=2usize {
            let group: Vec<_> = perms.group(m + 1).to_vec();
            let mut fact = 1.0;
            for i in 1..=m {
                fact *= i as f64;
            }
            for target in 0..k.num_simplices(m) {
                let verts = k.simplex_vertices(m, target);
                for pivot_slot in 0..=m {
                    let total: f64 = group
                        .iter()
                        .map(|(tau, _)| {
                            let v = verts[tau[pivot_slot]];
                            let vi = k.vertex_index(v).unwrap();
                            g.restricted_volume(0, vi, m, target) / g.primal_volume(m, target)
                        })
                        .sum();
                    // each vertex sits in the pivot slot m! times and the
                    // vertex fractions tile the simplex, so the sum is m!
                    assert_relative_eq!(total, fact, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn leibniz_rule_zero_one() {
        let (k, g) = hex_fan();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        let f = random_cochain(k.num_simplices(0), 0, Side::Primal, 23);
        let a = random_cochain(k.num_simplices(1), 1, Side::Primal, 29);
        for variant in [WedgeVariant::Geometric, WedgeVariant::Natural] {
            // d(f∧α) = df∧α + f∧dα
            let lhs = dec.d(&wedge_pp(&dec, &f, &a, variant, &mut perms).unwrap());
            let rhs = wedge_pp(&dec, &dec.d(&f), &a, variant, &mut perms)
                .unwrap()
                .add(&wedge_pp(&dec, &f, &dec.d(&a), variant, &mut perms).unwrap());
            for i in 0..lhs.len() {
                assert_relative_eq!(lhs.values[i], rhs.values[i], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn leibniz_rule_one_one_3d() {
        let (k, g) = tetrahedron();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        let a = random_cochain(k.num_simplices(1), 1, Side::Primal, 31);
        let b = random_cochain(k.num_simplices(1), 1, Side::Primal, 37);
        for variant in [WedgeVariant::Geometric, WedgeVariant::Natural] {
            let lhs = dec.d(&wedge_pp(&dec, &a, &b, variant, &mut perms).unwrap());
            let rhs = wedge_pp(&dec, &dec.d(&a), &b, variant, &mut perms)
                .unwrap()
                .sub(&wedge_pp(&dec, &a, &dec.d(&b), variant, &mut perms).unwrap());
            for i in 0..lhs.len() {
                assert_relative_eq!(lhs.values[i], rhs.values[i], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn associativity_for_closed_forms_3d() {
        let (k, g) = tetrahedron();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        // closed 1-forms: exact forms dφ
        let phi1 = random_cochain(k.num_simplices(0), 0, Side::Primal, 41);
        let phi2 = random_cochain(k.num_simplices(0), 0, Side::Primal, 43);
        let phi3 = random_cochain(k.num_simplices(0), 0, Side::Primal, 47);
        let a = dec.d(&phi1);
        let b = dec.d(&phi2);
        let c = dec.d(&phi3);
        for variant in [WedgeVariant::Geometric, WedgeVariant::Natural] {
            let ab_c = wedge_pp(
                &dec,
                &wedge_pp(&dec, &a, &b, variant, &mut perms).unwrap(),
                &c,
                variant,
                &mut perms,
            )
            .unwrap();
            let a_bc = wedge_pp(
                &dec,
                &a,
                &wedge_pp(&dec, &b, &c, variant, &mut perms).unwrap(),
                variant,
                &mut perms,
            )
            .unwrap();
            for i in 0..ab_c.len() {
                assert_relative_eq!(ab_c.values[i], a_bc.values[i], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn degree_overflow_rejected() {
        let (k, g) = hex_fan();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        let a = random_cochain(k.num_simplices(1), 1, Side::Primal, 53);
        let b = random_cochain(k.num_simplices(2), 2, Side::Primal, 59);
        assert!(matches!(
            wedge_pp(&dec, &a, &b, WedgeVariant::Natural, &mut perms),
            Err(WedgeError::DegreeOverflow(1, 2, 2))
        ));
    }

    #[test]
    fn dual_unit_wedge_is_identity() {
        let (k, g) = hex_fan();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        // dual 0-form constant 1 lives on top simplices
        let ones = Cochain::dual(0, vec![1.0; k.num_simplices(2)]);
        for l in 0..=2usize {
            let beta = random_cochain(k.num_simplices(2 - l), l, Side::Dual, 61 + l as u64);
            let w = wedge_dd(&dec, &ones, &beta, &mut perms).unwrap();
            for i in 0..beta.len() {
                assert_relative_eq!(w.values[i], beta.values[i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn dual_wedge_interior_vertex_matches_enumeration() {
        let (k, g) = hex_fan();
        let dec = Dec::new(&k, &g);
        let mut perms = PermutationTable::new();
        let a = random_cochain(k.num_simplices(1), 1, Side::Dual, 67);
        let b = random_cochain(k.num_simplices(1), 1, Side::Dual, 71);
        let w = wedge_dd(&dec, &a, &b, &mut perms).unwrap();

        // independent enumeration at the interior vertex 0
        let center = k.vertex_index(0).unwrap();
        let base = [0usize];
        let mut acc = 0.0;
        for top in 0..k.num_simplices(2) {
            let tv = k.simplex_vertices(2, top);
            if !tv.contains(&0) {
                continue;
            }
            let comp: Vec<usize> = tv.iter().copied().filter(|&v| v != 0).collect();
            let listing = [comp[0], comp[1], 0];
            let s0 = {
                let mut v = listing.to_vec();
                let mut sgn = 1i64;
                for i in 1..v.len() {
                    let mut j = i;
                    while j > 0 && v[j - 1] > v[j] {
                        v.swap(j - 1, j);
                        sgn = -sgn;
                        j -= 1;
                    }
                }
                sgn * k.orientation_sign(2, top)
            };
            let weight = g.restricted_volume(0, center, 2, top) / g.dual_volume(0, center);
            let eval = |form: &Cochain, verts: &[usize]| -> f64 {
                let (idx, sign) = k.find_simplex(verts).unwrap();
                sign as f64 * form.values[idx]
            };
            // τ ∈ S_2 over the complement
            let mut inner = 0.0;
            for (tau, sgn_tau) in [([0usize, 1usize], 1.0), ([1, 0], -1.0)] {
                inner += sgn_tau
                    * eval(&a, &[comp[tau[0]], base[0]])
                    * eval(&b, &[comp[tau[1]], base[0]]);
            }
            acc += weight * s0 as f64 * inner;
        }
        acc /= 2.0;
        assert_relative_eq!(w.values[center], acc, epsilon = 1e-12);
    }

    #[test]
    fn primal_dual_wedge_chains_to_inner_product() {
        let (k, g) = hex_fan();
        let dec = Dec::new(&k, &g);
        for deg in 0..=2usize {
            let a = random_cochain(k.num_simplices(deg), deg, Side::Primal, 73 + deg as u64);
            let star_a = dec.hodge(&a).unwrap();
            let w = wedge_pd(&dec, &a, &star_a).unwrap();
            let expected = dec.inner_product(&a, &a).unwrap();
            assert_relative_eq!(w.total(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn primal_dual_wedge_zero_form_case() {
        let (k, g) = hex_fan();
        let dec = Dec::new(&k, &g);
        let f = random_cochain(k.num_simplices(0), 0, Side::Primal, 79);
        let b = random_cochain(k.num_simplices(0), 2, Side::Dual, 83);
        let w = wedge_pd(&dec, &f, &b).unwrap();
        for i in 0..f.len() {
            assert_relative_eq!(w.values[i], f.values[i] * b.values[i] / 2.0);
        }
    }
}
