//! Build a simplicial complex from top simplices and inspect its
//! combinatorial structure: face closure, boundary operators, and the exact
//! identity ∂∂ = 0.
//!
//! Run with `cargo run --example build_complex`.

use dec::complex::{Chain, SimplicialComplex};

fn main() {
    // two triangles sharing the edge [0, 2]
    let complex = SimplicialComplex::build(&[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
    println!(
        "complex: {} vertices, {} edges, {} triangles",
        complex.num_simplices(0),
        complex.num_simplices(1),
        complex.num_simplices(2)
    );

    let (shared, _) = complex.find_simplex(&[0, 2]).unwrap();
    println!(
        "shared edge [0,2] has {} cofaces",
        complex.cofaces_of(1, shared).len()
    );

    // ∂ of the oriented triangle [0,1,2]: the three boundary edges
    let t = complex.chain(2, &[(&[0, 1, 2], 1)]).unwrap();
    let boundary = complex.boundary(&t).unwrap();
    println!("∂[0,1,2] has coefficients:");
    for (&e, &c) in &boundary.coeffs {
        println!("  {c:+} on {:?}", complex.simplex_vertices(1, e));
    }

    // ∂∂ = 0 exactly, both on chains and as integer matrices
    let bb = complex.boundary(&boundary).unwrap();
    assert!(bb.is_zero());
    let b2 = complex.boundary_matrix(2).unwrap();
    let b1 = complex.boundary_matrix(1).unwrap();
    assert!(b1.mul(&b2).is_zero());
    println!("∂∂ = 0 holds exactly (integer arithmetic)");

    // chains are integer linear combinations; a path boundary telescopes
    let path = complex
        .chain(1, &[(&[0, 1], 1), (&[1, 2], 1), (&[2, 3], 1)])
        .unwrap();
    let ends = complex.boundary(&path).unwrap();
    let expected = complex.chain(0, &[(&[3], 1), (&[0], -1)]).unwrap();
    assert_eq!(ends, expected);
    println!("∂(path 0→1→2→3) = [3] - [0]");

    let _ = Chain::zero(1);
}
