//! Discrete forms as cochains and the operator suite: pairing, exterior
//! derivative, Hodge star, codifferential, Laplace--deRham, and the discrete
//! L² inner product.
//!
//! Dual k-forms are stored on the primal (n-k)-simplices whose dual cells
//! carry them, so every operator is a matrix between vectors indexed by
//! primal simplex order. The exterior derivative is the transpose of the
//! integer boundary matrix (the generalized Stokes theorem holds by
//! construction); on the dual side the derivative picks up the degree sign
//! `(-1)^m` of the dual boundary. The codifferential composes to
//! `diag(1/w_k) ∂_{k+1} diag(w_{k+1})` with all signs cancelled, which makes
//! it the exact adjoint of d in the discrete inner product.

use thiserror::Error;

use crate::complex::{Chain, SimplicialComplex};
use crate::geometry::{double_dual_sign, GeometryTable};
use crate::ops::{OperatorMatrix, Side, SparseMatrix, Space};

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("side mismatch: {0} vs {1}")]
    SideMismatch(Side, Side),
    #[error("degree {0} out of range for dimension {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("zero {0} volume at simplex (dim {1}, index {2})")]
    ZeroVolume(&'static str, usize, usize),
}

/// A real-valued cochain of one degree, primal or dual.
///
/// Primal k-cochains are indexed by the k-simplices; dual k-cochains are
/// indexed by the (n-k)-simplices whose dual cells they evaluate on.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub side: Side,
    pub values: Vec<f64>,
}

impl Cochain {
    pub fn zero(degree: usize, side: Side, len: usize) -> Self {
        Cochain { degree, side, values: vec![0.0; len] }
    }

    pub fn primal(degree: usize, values: Vec<f64>) -> Self {
        Cochain { degree, side: Side::Primal, values }
    }

    pub fn dual(degree: usize, values: Vec<f64>) -> Self {
        Cochain { degree, side: Side::Dual, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.side, other.side);
        Cochain {
            degree: self.degree,
            side: self.side,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Cochain {
        Cochain {
            degree: self.degree,
            side: self.side,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Operator factory over one complex and its geometry.
#[derive(Clone, Copy)]
pub struct Dec<'a> {
    pub complex: &'a SimplicialComplex,
    pub geometry: &'a GeometryTable,
}

impl<'a> Dec<'a> {
    pub fn new(complex: &'a SimplicialComplex, geometry: &'a GeometryTable) -> Self {
        Dec { complex, geometry }
    }

    fn dim(&self) -> usize {
        self.complex.dimension()
    }

    /// Index count of the space holding (degree, side) cochains.
    pub fn space_len(&self, degree: usize, side: Side) -> usize {
        let n = self.dim();
        match side {
            Side::Primal => self.complex.num_simplices(degree),
            Side::Dual => self.complex.num_simplices(n - degree),
        }
    }

    /// ⟨α, c⟩ = Σ aᵢ α(σᵢ).
    pub fn pair(&self, alpha: &Cochain, c: &Chain) -> Result<f64, FormsError> {
        if alpha.degree != c.degree {
            return Err(FormsError::DegreeMismatch(alpha.degree, c.degree));
        }
        if alpha.side != Side::Primal {
            return Err(FormsError::SideMismatch(alpha.side, Side::Primal));
        }
        Ok(c.coeffs.iter().map(|(&i, &a)| a as f64 * alpha.values[i]).sum())
    }

    /// Integer matrix of d on primal k-forms: the transpose of ∂_{k+1}.
    pub fn d_matrix_int(&self, k: usize) -> Result<SparseMatrix<i64>, FormsError> {
        let n = self.dim();
        if k >= n {
            return Err(FormsError::DegreeOutOfRange(k, n));
        }
        Ok(self
            .complex
            .boundary_matrix(k + 1)
            .map_err(|_| FormsError::DegreeOutOfRange(k, n))?
            .transpose())
    }

    /// Integer matrix of d on dual k-forms. Input values live on ⋆σᵐ with
    /// m = n - k; the matrix of the dual boundary transposes to (-1)^m ∂_m.
    pub fn dual_d_matrix_int(&self, k: usize) -> Result<SparseMatrix<i64>, FormsError> {
        let n = self.dim();
        if k >= n {
            return Err(FormsError::DegreeOutOfRange(k, n));
        }
        let m = n - k;
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        Ok(self
            .complex
            .boundary_matrix(m)
            .map_err(|_| FormsError::DegreeOutOfRange(k, n))?
            .scale(sign))
    }

    pub fn d_operator(&self, k: usize, side: Side) -> Result<OperatorMatrix, FormsError> {
        let m = match side {
            Side::Primal => self.d_matrix_int(k)?.to_f64(),
            Side::Dual => self.dual_d_matrix_int(k)?.to_f64(),
        };
        Ok(OperatorMatrix::new(
            Space { degree: k, side },
            Space { degree: k + 1, side },
            m,
        ))
    }

    /// dα. For k = n the result is the zero cochain of the empty degree-(n+1)
    /// space.
    pub fn d(&self, alpha: &Cochain) -> Cochain {
        let n = self.dim();
        if alpha.degree >= n {
            return Cochain::zero(alpha.degree + 1, alpha.side, 0);
        }
        let m = match alpha.side {
            Side::Primal => self.d_matrix_int(alpha.degree).expect("degree checked"),
            Side::Dual => self.dual_d_matrix_int(alpha.degree).expect("degree checked"),
        };
        let values = m.to_f64().mul_vec(&alpha.values);
        Cochain { degree: alpha.degree + 1, side: alpha.side, values }
    }

    /// Diagonal Hodge matrix from primal k-forms to dual (n-k)-forms.
    pub fn hodge_primal_to_dual(&self, k: usize) -> Result<OperatorMatrix, FormsError> {
        let count = self.complex.num_simplices(k);
        let mut diag = Vec::with_capacity(count);
        for i in 0..count {
            let p = self.geometry.primal_volume(k, i);
            if p == 0.0 {
                return Err(FormsError::ZeroVolume("primal", k, i));
            }
            diag.push(self.geometry.dual_volume(k, i) / p);
        }
        Ok(OperatorMatrix::new(
            Space::primal(k),
            Space::dual(self.dim() - k),
            SparseMatrix::diagonal(&diag),
        ))
    }

    /// Diagonal Hodge matrix from dual (n-k)-forms back to primal k-forms,
    /// defined as the signed inverse so that ∗∗ = (-1)^(k(n-k)) holds exactly.
    pub fn hodge_dual_to_primal(&self, k: usize) -> Result<OperatorMatrix, FormsError> {
        let n = self.dim();
        let count = self.complex.num_simplices(k);
        let sign = double_dual_sign(k, n) as f64;
        let mut diag = Vec::with_capacity(count);
        for i in 0..count {
            let d = self.geometry.dual_volume(k, i);
            if d == 0.0 {
                return Err(FormsError::ZeroVolume("dual", k, i));
            }
            diag.push(sign * self.geometry.primal_volume(k, i) / d);
        }
        Ok(OperatorMatrix::new(
            Space::dual(n - k),
            Space::primal(k),
            SparseMatrix::diagonal(&diag),
        ))
    }

    /// ∗α for either side.
    pub fn hodge(&self, alpha: &Cochain) -> Result<Cochain, FormsError> {
        let n = self.dim();
        match alpha.side {
            Side::Primal => {
                let op = self.hodge_primal_to_dual(alpha.degree)?;
                Ok(Cochain {
                    degree: n - alpha.degree,
                    side: Side::Dual,
                    values: op.matrix.mul_vec(&alpha.values),
                })
            }
            Side::Dual => {
                let k = n - alpha.degree;
                let op = self.hodge_dual_to_primal(k)?;
                Ok(Cochain {
                    degree: k,
                    side: Side::Primal,
                    values: op.matrix.mul_vec(&alpha.values),
                })
            }
        }
    }

    /// Matrix of δ on primal (k+1)-forms. All the signs of
    /// (-1)^(nk+1) ∗d∗ cancel against the dual-boundary and double-dual
    /// signs, leaving diag(1/w_k) ∂_{k+1} diag(w_{k+1}).
    pub fn codifferential_matrix(&self, k_out: usize) -> Result<OperatorMatrix, FormsError> {
        let n = self.dim();
        if k_out >= n {
            return Err(FormsError::DegreeOutOfRange(k_out + 1, n));
        }
        let boundary = self
            .complex
            .boundary_matrix(k_out + 1)
            .map_err(|_| FormsError::DegreeOutOfRange(k_out + 1, n))?
            .to_f64();
        let rows = self.complex.num_simplices(k_out);
        let cols = self.complex.num_simplices(k_out + 1);
        let mut w_out = Vec::with_capacity(rows);
        for i in 0..rows {
            let w = self.geometry.hodge_weight(k_out, i);
            if w == 0.0 {
                return Err(FormsError::ZeroVolume("dual", k_out, i));
            }
            w_out.push(1.0 / w);
        }
        let mut w_in = Vec::with_capacity(cols);
        for i in 0..cols {
            w_in.push(self.geometry.hodge_weight(k_out + 1, i));
        }
        let m = SparseMatrix::diagonal(&w_out)
            .mul(&boundary)
            .mul(&SparseMatrix::diagonal(&w_in));
        Ok(OperatorMatrix::new(Space::primal(k_out + 1), Space::primal(k_out), m))
    }

    /// δβ for primal forms; δ of 0-forms is 0.
    pub fn codifferential(&self, beta: &Cochain) -> Result<Cochain, FormsError> {
        assert_eq!(beta.side, Side::Primal, "codifferential acts on primal forms here");
        if beta.degree == 0 {
            return Ok(Cochain::zero(0, Side::Primal, beta.len()));
        }
        let op = self.codifferential_matrix(beta.degree - 1)?;
        Ok(Cochain {
            degree: beta.degree - 1,
            side: Side::Primal,
            values: op.matrix.mul_vec(&beta.values),
        })
    }

    /// Matrix of Δ = dδ + δd on primal k-forms.
    pub fn laplace_matrix(&self, k: usize) -> Result<OperatorMatrix, FormsError> {
        let n = self.dim();
        let count = self.complex.num_simplices(k);
        let mut m = SparseMatrix::zeros(count, count);
        if k > 0 {
            let d_low = self.d_matrix_int(k - 1).expect("k-1 < n").to_f64();
            let delta = self.codifferential_matrix(k - 1)?;
            m = m.add(&d_low.mul(&delta.matrix));
        }
        if k < n {
            let delta = self.codifferential_matrix(k)?;
            let d_high = self.d_matrix_int(k).expect("k < n").to_f64();
            m = m.add(&delta.matrix.mul(&d_high));
        }
        Ok(OperatorMatrix::new(Space::primal(k), Space::primal(k), m))
    }

    pub fn laplace(&self, alpha: &Cochain) -> Result<Cochain, FormsError> {
        if alpha.side != Side::Primal {
            return Err(FormsError::SideMismatch(alpha.side, Side::Primal));
        }
        let op = self.laplace_matrix(alpha.degree)?;
        Ok(Cochain {
            degree: alpha.degree,
            side: alpha.side,
            values: op.matrix.mul_vec(&alpha.values),
        })
    }

    /// Discrete L² inner product of primal k-forms:
    /// (1/n) Σ_σ (|⋆σ|/|σ|) ⟨α,σ⟩⟨β,σ⟩.
    pub fn inner_product(&self, alpha: &Cochain, beta: &Cochain) -> Result<f64, FormsError> {
        if alpha.degree != beta.degree {
            return Err(FormsError::DegreeMismatch(alpha.degree, beta.degree));
        }
        if alpha.side != beta.side {
            return Err(FormsError::SideMismatch(alpha.side, beta.side));
        }
        let k = alpha.degree;
        let n = self.dim().max(1);
        let mut total = 0.0;
        for i in 0..alpha.len() {
            total += self.geometry.hodge_weight(k, i) * alpha.values[i] * beta.values[i];
        }
        Ok(total / n as f64)
    }

    pub fn norm(&self, alpha: &Cochain) -> Result<f64, FormsError> {
        Ok(self.inner_product(alpha, alpha)?.max(0.0).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_dual, DualMode};
    use approx::assert_relative_eq;
    use nalgebra::DVector;

    fn dv(coords: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(coords)
    }

    fn equilateral_pair() -> (SimplicialComplex, GeometryTable) {
        let k = SimplicialComplex::build(&[vec![0, 1, 2], vec![0, 3, 1]]).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let coords = vec![dv(&[0.0, 0.0]), dv(&[1.0, 0.0]), dv(&[0.5, h]), dv(&[0.5, -h])];
        let (_, g) = build_dual(&k, &coords, DualMode::WellCenteredOnly).unwrap();
        (k, g)
    }

    #[test]
    fn pairing_is_bilinear() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let (i, _) = k.find_simplex(&[0, 1]).unwrap();
        let mut alpha = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        alpha.values[i] = 2.0;
        let c = Chain::single(1, i, 3);
        assert_relative_eq!(dec.pair(&alpha, &c).unwrap(), 6.0);
        assert_relative_eq!(dec.pair(&alpha, &Chain::zero(1)).unwrap(), 0.0);
    }

    #[test]
    fn pairing_cancels_opposite_values() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let mut alpha = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        alpha.values[0] = 1.0;
        alpha.values[1] = -1.0;
        let mut c = Chain::zero(1);
        c.add_term(0, 1);
        c.add_term(1, 1);
        assert_relative_eq!(dec.pair(&alpha, &c).unwrap(), 0.0);
    }

    #[test]
    fn d_of_zero_form_is_difference() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let mut f = Cochain::zero(0, Side::Primal, k.num_simplices(0));
        for i in 0..f.len() {
            f.values[i] = (k.vertex_id(i) * k.vertex_id(i)) as f64;
        }
        let df = dec.d(&f);
        let c = k.chain(1, &[(&[0, 1], 1)]).unwrap();
        let v0 = k.vertex_index(0).unwrap();
        let v1 = k.vertex_index(1).unwrap();
        assert_relative_eq!(
            dec.pair(&df, &c).unwrap(),
            f.values[v1] - f.values[v0],
            epsilon = 1e-15
        );
    }

    #[test]
    fn d_on_triangle_is_signed_edge_sum() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let mut alpha = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        for (i, v) in alpha.values.iter_mut().enumerate() {
            *v = (i + 1) as f64;
        }
        let dalpha = dec.d(&alpha);
        let c12 = k.chain(1, &[(&[1, 2], 1)]).unwrap();
        let c02 = k.chain(1, &[(&[0, 2], 1)]).unwrap();
        let c01 = k.chain(1, &[(&[0, 1], 1)]).unwrap();
        let t = k.chain(2, &[(&[0, 1, 2], 1)]).unwrap();
        let expected = dec.pair(&alpha, &c12).unwrap() - dec.pair(&alpha, &c02).unwrap()
            + dec.pair(&alpha, &c01).unwrap();
        assert_relative_eq!(dec.pair(&dalpha, &t).unwrap(), expected, epsilon = 1e-14);
    }

    #[test]
    fn dd_is_zero_exactly() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let d0 = dec.d_matrix_int(0).unwrap();
        let d1 = dec.d_matrix_int(1).unwrap();
        assert!(d1.mul(&d0).is_zero());
    }

    #[test]
    fn stokes_is_exact_by_construction() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        // integer-valued cochain and chain make both pairings exact
        let mut alpha = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        for (i, v) in alpha.values.iter_mut().enumerate() {
            *v = ((i as i64 * 7 - 3) % 5) as f64;
        }
        let mut c = Chain::zero(2);
        c.add_term(0, 2);
        c.add_term(1, -3);
        let lhs = dec.pair(&dec.d(&alpha), &c).unwrap();
        let rhs = dec.pair(&alpha, &k.boundary(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hodge_star_star_sign() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let n = k.dimension();
        for deg in 0..=n {
            let count = k.num_simplices(deg);
            let mut alpha = Cochain::zero(deg, Side::Primal, count);
            for (i, v) in alpha.values.iter_mut().enumerate() {
                *v = (i as f64) * 0.7 - 1.3;
            }
            let ss = dec.hodge(&dec.hodge(&alpha).unwrap()).unwrap();
            let sign = double_dual_sign(deg, n) as f64;
            for i in 0..count {
                assert_relative_eq!(ss.values[i], sign * alpha.values[i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn hodge_weight_on_interior_edge() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let (e, _) = k.find_simplex(&[0, 1]).unwrap();
        let mut alpha = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        alpha.values[e] = 1.0;
        let star = dec.hodge(&alpha).unwrap();
        assert_relative_eq!(star.values[e], 1.0 / 3f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn hodge_on_point_complex_scales_by_dual_volume() {
        // n = 0: isolated points, ∗ scales by |⋆σ⁰| = 1
        let k = SimplicialComplex::build(&[vec![0], vec![1]]).unwrap();
        let coords = vec![dv(&[0.0]), dv(&[1.0])];
        let (_, g) = build_dual(&k, &coords, DualMode::WellCenteredOnly).unwrap();
        let dec = Dec::new(&k, &g);
        let alpha = Cochain::primal(0, vec![2.0, -1.0]);
        let star = dec.hodge(&alpha).unwrap();
        assert_eq!(star.values, vec![2.0, -1.0]);
    }

    #[test]
    fn codifferential_of_zero_form_vanishes() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let f = Cochain::primal(0, vec![1.0; k.num_simplices(0)]);
        let df = dec.codifferential(&f).unwrap();
        assert!(df.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn codifferential_matches_star_d_star_composition() {
        // pins the sign conventions: δ computed as the weighted boundary
        // equals (-1)^(nk+1) ∗d∗ computed by composing the three operators
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let n = k.dimension();
        for deg in 1..=n {
            let k_out = deg - 1;
            let direct = dec.codifferential_matrix(k_out).unwrap().matrix;
            let star_in = dec.hodge_primal_to_dual(deg).unwrap().matrix;
            let dual_d = dec.dual_d_matrix_int(n - deg).unwrap().to_f64();
            let star_out = dec.hodge_dual_to_primal(k_out).unwrap().matrix;
            let sign = if (n * k_out + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let composed = star_out.mul(&dual_d).mul(&star_in).scale(sign);
            let diff = direct.sub(&composed);
            assert!(diff.norm_inf() < 1e-12, "deg {deg}: {}", diff.norm_inf());
        }
    }

    #[test]
    fn delta_delta_is_zero() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let d1 = dec.codifferential_matrix(1).unwrap().matrix;
        let d0 = dec.codifferential_matrix(0).unwrap().matrix;
        assert!(d0.mul(&d1).norm_inf() < 1e-14);
    }

    #[test]
    fn adjointness_of_d_and_delta() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let mut alpha = Cochain::zero(0, Side::Primal, k.num_simplices(0));
        let mut beta = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        for (i, v) in alpha.values.iter_mut().enumerate() {
            *v = (i as f64).sin() + 0.3;
        }
        for (i, v) in beta.values.iter_mut().enumerate() {
            *v = (i as f64 * 1.7).cos() - 0.1;
        }
        let lhs = dec.inner_product(&dec.d(&alpha), &beta).unwrap();
        let rhs = dec.inner_product(&alpha, &dec.codifferential(&beta).unwrap()).unwrap();
        assert_relative_eq!(lhs, rhs, epsilon = 1e-12);
    }

    #[test]
    fn metric_tensor_recovery() {
        // ⟨β,σ⟩/|σ| = ⟨∗β,⋆σ⟩/|⋆σ| entrywise
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        for deg in 0..=k.dimension() {
            let count = k.num_simplices(deg);
            let mut beta = Cochain::zero(deg, Side::Primal, count);
            for (i, v) in beta.values.iter_mut().enumerate() {
                *v = i as f64 + 0.5;
            }
            let star = dec.hodge(&beta).unwrap();
            for i in 0..count {
                let lhs = beta.values[i] / g.primal_volume(deg, i);
                let rhs = star.values[i] / g.dual_volume(deg, i);
                assert_relative_eq!(lhs, rhs, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn laplace_of_constant_vanishes() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let f = Cochain::primal(0, vec![5.0; k.num_simplices(0)]);
        let lf = dec.laplace(&f).unwrap();
        assert!(lf.norm_inf() < 1e-12);
    }

    #[test]
    fn inner_product_positive_definite_and_symmetric() {
        let (k, g) = equilateral_pair();
        let dec = Dec::new(&k, &g);
        let mut a = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        let mut b = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        for i in 0..a.len() {
            a.values[i] = (i as f64) - 1.2;
            b.values[i] = (i as f64).powi(2) * 0.3 - 1.0;
        }
        assert!(dec.inner_product(&a, &a).unwrap() > 0.0);
        assert_relative_eq!(
            dec.inner_product(&a, &b).unwrap(),
            dec.inner_product(&b, &a).unwrap()
        );
        let zero = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        assert_eq!(dec.inner_product(&zero, &zero).unwrap(), 0.0);
    }

    #[test]
    fn norm_of_single_edge_form_matches_weight() {
        // single unit equilateral triangle: ‖α‖² = (1/2)(|⋆e|/|e|) for the
        // indicator 1-form of one edge
        let k = SimplicialComplex::build(&[vec![0, 1, 2]]).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let coords = vec![dv(&[0.0, 0.0]), dv(&[1.0, 0.0]), dv(&[0.5, h])];
        let (_, g) = build_dual(&k, &coords, DualMode::WellCenteredOnly).unwrap();
        let dec = Dec::new(&k, &g);
        let (e, _) = k.find_simplex(&[0, 1]).unwrap();
        let mut alpha = Cochain::zero(1, Side::Primal, k.num_simplices(1));
        alpha.values[e] = 1.0;
        let expected = 0.5 * g.hodge_weight(1, e);
        assert_relative_eq!(
            dec.inner_product(&alpha, &alpha).unwrap(),
            expected,
            epsilon = 1e-14
        );
    }
}
