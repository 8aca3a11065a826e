//! The discrete Poincaré lemma: cone and cocone operators on star-shaped
//! complexes, one-ring cone augmentation, solving dβ = α for closed α, and
//! the non-contractible counterexample where the homotopy identity leaves a
//! cycle around the hole.
//!
//! Run with `cargo run --example poincare`.

use dec::complex::{Chain, SimplicialComplex};
use dec::homotopy::{
    self, build_augmented, is_boundary, poincare_solve, ConeTable, IntCochain,
};
use dec::meshgen;

fn main() {
    // a closed fan is trivially star-shaped from its hub
    let (tops, _) = meshgen::fan(6);
    let fan = SimplicialComplex::build(&tops).unwrap();
    let center = homotopy::trivially_star_center(&fan).unwrap();
    println!("fan: trivially star-shaped from vertex {center}");
    let table = ConeTable::from_center(&fan, center).unwrap();
    assert!(table.verify(&fan).is_ok());
    println!("p∂ + ∂p = I verified exactly on every simplex");

    // solve dβ = α for an exact 1-form
    let d0 = fan.boundary_matrix(1).unwrap().transpose();
    let gamma: Vec<i64> = (0..fan.num_simplices(0)).map(|v| (v as i64 * 5 - 3) % 7).collect();
    let alpha = IntCochain { degree: 1, values: d0.mul_vec(&gamma) };
    let beta = poincare_solve(&fan, &table, &alpha).unwrap();
    assert_eq!(d0.mul_vec(&beta.values), alpha.values);
    println!("poincare_solve produced β with dβ = α (exact integers)");

    // a 4x4 piece of the regular triangulation grown by one-ring cone
    // augmentation, with the homotopy identity holding on every prefix
    let script = meshgen::regular_triangulation_script(4);
    for cut in [1, script.steps.len() / 2, script.steps.len()] {
        let (grown, grown_table) = build_augmented(&script.prefix(cut)).unwrap();
        assert!(grown_table.verify(&grown).is_ok());
        println!(
            "lattice prefix with {cut} steps: {} triangles, identity exact",
            grown.num_simplices(2)
        );
    }

    // the tileable cube tetrahedralization needs one closing step
    let cube_script = meshgen::cube_tetrahedralization_script();
    let (cube, cube_table) = build_augmented(&cube_script).unwrap();
    assert!(cube_table.verify(&cube).is_ok());
    println!("cube tetrahedralization: 6 tets, generalized cone operator exact");

    // the counterexample: a fan sector closed across a hole
    let (annulus_script, probe) = meshgen::annulus_counterexample_script();
    let (annulus, bad) = meshgen::annulus_counterexample_table(&annulus_script).unwrap();
    let (e, _) = annulus.find_simplex(&probe).unwrap();
    let defect = bad.defect(&annulus, &Chain::single(1, e, 1));
    println!(
        "annulus: (p∂ + ∂p - I) on edge {probe:?} leaves a chain with {} terms",
        defect.coeffs.len()
    );
    assert!(annulus.boundary(&defect).unwrap().is_zero());
    assert!(!is_boundary(&annulus, &defect));
    println!("the defect is a cycle and does not bound: it wraps the hole");
}
