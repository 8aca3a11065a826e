//! Abstract complexes with local metrics instead of global embeddings:
//! axiom validation, local embedding of single simplices, and the classic
//! four-points-on-a-circle metric that is locally valid but admits no global
//! embedding.
//!
//! Run with `cargo run --example local_metric`.

use dec::complex::{local_embed, validate_local_metric, LocalMetric, SimplicialComplex};

fn main() {
    // an equilateral triangle given only by its edge lengths
    let triangle = SimplicialComplex::build(&[vec![0, 1, 2]]).unwrap();
    let mut metric = LocalMetric::new();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        metric.set(a, b, 1.0);
    }
    let report = validate_local_metric(&triangle, &metric).unwrap();
    println!("equilateral metric violations: {}", report.len());

    let coords = local_embed(&[0, 1, 2], &metric).unwrap();
    println!("local embedding into the plane:");
    for (v, p) in coords.iter().enumerate() {
        println!("  vertex {v}: ({:.6}, {:.6})", p[0], p[1]);
    }
    // distances reproduce the metric
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        let d = (&coords[a] - &coords[b]).norm();
        assert!((d - 1.0).abs() < 1e-12);
    }

    // lengths violating the triangle inequality cannot be embedded
    let mut bad = LocalMetric::new();
    bad.set(0, 1, 1.0);
    bad.set(1, 2, 1.0);
    bad.set(0, 2, 3.0);
    println!(
        "embedding lengths (1, 1, 3): {}",
        local_embed(&[0, 1, 2], &bad).unwrap_err()
    );

    // four equidistant points on a circle with the arc-length metric: a valid
    // local metric on the pure edge complex, yet no global embedding exists
    // (the points would have to be collinear and coincident at once)
    let circle = SimplicialComplex::build(&[
        vec![0, 1],
        vec![1, 2],
        vec![2, 3],
        vec![0, 3],
        vec![0, 2],
        vec![1, 3],
    ])
    .unwrap();
    let mut arc = LocalMetric::new();
    for i in 0..4usize {
        arc.set(i, (i + 1) % 4, 1.0);
        arc.set(i, (i + 2) % 4, 2.0);
    }
    let report = validate_local_metric(&circle, &arc).unwrap();
    println!(
        "four-point circle metric: {} violations on the edge complex (no triangle \
         lies in a common top simplex, so the triangle axiom has no instances)",
        report.len()
    );
}
