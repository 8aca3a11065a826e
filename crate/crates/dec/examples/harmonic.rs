//! Discrete harmonic functions: the Dirichlet energy, its variational
//! derivative, the commuting square against the Laplace–Beltrami operator,
//! and a boundary-value solve on a disk.
//!
//! Run with `cargo run --example harmonic`.

use dec::forms::{Cochain, Dec};
use dec::geometry::{build_dual, DualMode};
use dec::meshgen;
use dec::ops::Side;
use dec::variational::{
    dirichlet_energy, harmonic_el_residual, solve_harmonic, DirichletProblem,
};

fn main() {
    let (tops, coords) = meshgen::disk(3, 0.05, 17);
    let complex = dec::complex::SimplicialComplex::build(&tops).unwrap();
    let (_, geometry) = build_dual(&complex, &coords, DualMode::WellCenteredOnly).unwrap();
    let dec = Dec::new(&complex, &geometry);

    // variational derivative vs finite differences of the energy
    let mut phi = Cochain::zero(0, Side::Primal, complex.num_simplices(0));
    for v in 0..phi.len() {
        let p = geometry.circumcenter(0, v);
        phi.values[v] = (p[0] * 1.3).sin() - 0.4 * p[1];
    }
    println!("S_d(φ) = {:.9}", dirichlet_energy(&dec, &phi));
    let residual = harmonic_el_residual(&dec, &phi);
    let h = 1e-5;
    let probe = complex.vertex_index(0).unwrap();
    let fd = {
        let mut plus = phi.clone();
        plus.values[probe] += h;
        let mut minus = phi.clone();
        minus.values[probe] -= h;
        (dirichlet_energy(&dec, &plus) - dirichlet_energy(&dec, &minus)) / (2.0 * h)
    };
    println!(
        "dS/dφ at the hub: finite differences {:.9}, variational formula {:.9}",
        fd, residual.values[probe]
    );
    // and the operator route: residual = (|⋆v|/n) Δφ entrywise
    let lap = dec.laplace(&phi).unwrap();
    let factor = geometry.dual_volume(0, probe) / complex.dimension() as f64;
    println!("(|⋆v|/n)·Δφ at the hub: {:.9}", factor * lap.values[probe]);

    // solve with the boundary trace of a linear function; the cotangent
    // Laplacian reproduces linear functions exactly
    let target = |p: &nalgebra::DVector<f64>| 0.6 * p[0] - 1.1 * p[1] + 0.25;
    let mut problem = DirichletProblem::default();
    for v in complex.boundary_vertices() {
        problem.boundary_values.insert(v, target(geometry.circumcenter(0, v)));
    }
    let solution = solve_harmonic(&dec, &problem).unwrap();
    let mut worst = 0.0f64;
    for v in 0..solution.len() {
        worst = worst.max((solution.values[v] - target(geometry.circumcenter(0, v))).abs());
    }
    println!("harmonic solve with linear boundary data: max error {worst:.2e}");

    let after = harmonic_el_residual(&dec, &solution);
    let interior_res = (0..solution.len())
        .filter(|v| !problem.boundary_values.contains_key(v))
        .map(|v| after.values[v].abs())
        .fold(0.0f64, f64::max);
    println!("interior Euler–Lagrange residual after the solve: {interior_res:.2e}");
}
