//! Circumcentric (Voronoi) dual of a triangle mesh: circumcenters, dual
//! cells as chains of elementary dual simplices, the volume tables, and the
//! support-volume partition of the total area.
//!
//! Run with `cargo run --example dual_mesh`.

use dec::geometry::{build_dual, dual_boundary, DualChain, DualMode};
use dec::meshgen;

fn main() {
    let (tops, coords) = meshgen::fan(6);
    let complex = dec::complex::SimplicialComplex::build(&tops).unwrap();
    let (dual, table) = build_dual(&complex, &coords, DualMode::WellCenteredOnly).unwrap();
    println!("well-centered: {}", table.well_centered());

    let center = complex.vertex_index(0).unwrap();
    println!(
        "dual cell of the hub vertex: area {:.6} from {} elementary triangles",
        table.dual_volume(0, center),
        dual.cell(0, center).len()
    );

    let (edge, _) = complex.find_simplex(&[0, 1]).unwrap();
    println!(
        "interior edge [0,1]: |σ| = {:.6}, |⋆σ| = {:.6}, hodge weight {:.6}",
        table.primal_volume(1, edge),
        table.dual_volume(1, edge),
        table.hodge_weight(1, edge)
    );

    // support volumes partition the polytope at every degree
    let total: f64 = (0..complex.num_simplices(2)).map(|t| table.primal_volume(2, t)).sum();
    for k in 0..=2 {
        let sum: f64 = (0..complex.num_simplices(k)).map(|i| table.support_volume(k, i)).sum();
        println!("degree {k}: Σ|V_σ| = {sum:.12} (total area {total:.12})");
        assert!((sum - total).abs() < 1e-10);
    }

    // the combinatorial dual boundary squares to zero
    let cell = DualChain::single(0, center, 1);
    let ring = dual_boundary(&complex, &cell);
    println!("∂(⋆hub) touches {} dual edges", ring.coeffs.len());
    assert!(dual_boundary(&complex, &ring).is_zero());

    // restricted dual volumes sum back to the dual volume
    for e in 0..complex.num_simplices(1) {
        let parts: f64 = (0..complex.num_simplices(2))
            .map(|t| table.restricted_volume(1, e, 2, t))
            .sum();
        assert!((parts - table.dual_volume(1, e)).abs() < 1e-12);
    }
    println!("Σ_σⁿ |⋆σ ∩ σⁿ| = |⋆σ| verified on every edge");
}
