//! The operator suite on cochains: exterior derivative and Stokes pairing,
//! Hodge star and its involution sign, the codifferential as the adjoint of
//! d, and the Laplace–deRham operator against the cotangent weights.
//!
//! Run with `cargo run --example forms_operators`.

use dec::forms::{Cochain, Dec};
use dec::geometry::{build_dual, double_dual_sign, DualMode};
use dec::meshgen;
use dec::ops::Side;

fn main() {
    let (tops, coords) = meshgen::disk(2, 0.06, 5);
    let complex = dec::complex::SimplicialComplex::build(&tops).unwrap();
    let (_, geometry) = build_dual(&complex, &coords, DualMode::WellCenteredOnly).unwrap();
    let dec = Dec::new(&complex, &geometry);

    // a 0-form sampled from a scalar field
    let mut f = Cochain::zero(0, Side::Primal, complex.num_simplices(0));
    for v in 0..f.len() {
        let p = geometry.circumcenter(0, v);
        f.values[v] = (p[0] - 0.3).powi(2) - p[1];
    }
    let df = dec.d(&f);
    println!("built df on {} edges; d(df) has {} entries above 1e-14", df.len(), {
        let ddf = dec.d(&df);
        ddf.values.iter().filter(|v| v.abs() > 1e-14).count()
    });

    // Stokes: pairing df with any chain telescopes
    let c = complex.chain(1, &[(&[0, 1], 1)]).unwrap();
    let lhs = dec.pair(&df, &c).unwrap();
    let v0 = complex.vertex_index(0).unwrap();
    let v1 = complex.vertex_index(1).unwrap();
    println!("⟨df,[0,1]⟩ = {lhs:.6} = f(1) - f(0) = {:.6}", f.values[v1] - f.values[v0]);

    // Hodge star and the involution sign
    let alpha = df.clone();
    let star = dec.hodge(&alpha).unwrap();
    let star_star = dec.hodge(&star).unwrap();
    let sign = double_dual_sign(1, 2);
    println!(
        "∗∗α = {sign:+}α, max deviation {:.2e}",
        star_star.sub(&alpha.scale(sign as f64)).norm_inf()
    );

    // codifferential is the adjoint of d in the discrete inner product
    let mut beta = Cochain::zero(1, Side::Primal, complex.num_simplices(1));
    for (i, v) in beta.values.iter_mut().enumerate() {
        *v = (i as f64 * 0.61).cos();
    }
    let lhs = dec.inner_product(&dec.d(&f), &beta).unwrap();
    let rhs = dec.inner_product(&f, &dec.codifferential(&beta).unwrap()).unwrap();
    println!("⟨df,β⟩ = {lhs:.9}, ⟨f,δβ⟩ = {rhs:.9}");

    // Laplace–deRham on 0-forms kills linear functions away from the boundary
    let mut linear = Cochain::zero(0, Side::Primal, complex.num_simplices(0));
    for v in 0..linear.len() {
        let p = geometry.circumcenter(0, v);
        linear.values[v] = 2.0 * p[0] - 0.5 * p[1];
    }
    let lap = dec.laplace(&linear).unwrap();
    let boundary = complex.boundary_vertices();
    let worst = (0..lap.len())
        .filter(|v| !boundary.contains(v))
        .map(|v| lap.values[v].abs())
        .fold(0.0f64, f64::max);
    println!("Δ(linear) at interior vertices: max {worst:.2e}");
}
