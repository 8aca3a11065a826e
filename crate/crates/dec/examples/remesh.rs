//! Cochain transfer between meshes over the same polytope, and pull-back /
//! push-forward under simplicial maps, including the naturality contrast
//! between the two primal-primal wedges.
//!
//! Run with `cargo run --example remesh`.

use std::collections::BTreeMap;

use dec::forms::{Cochain, Dec};
use dec::geometry::{build_dual, DualMode};
use dec::meshgen;
use dec::ops::Side;
use dec::remesh::{pullback, pushforward, transfer_operator, SimplicialMap};
use dec::wedge::{wedge_pp, PermutationTable, WedgeVariant};
use nalgebra::DVector;

fn main() {
    // 1D refinement of [0,1]: two segments and four
    let seg = |points: &[f64]| {
        let tops: Vec<Vec<usize>> = (0..points.len() - 1).map(|i| vec![i, i + 1]).collect();
        let coords: Vec<DVector<f64>> =
            points.iter().map(|&x| DVector::from_column_slice(&[x])).collect();
        let complex = dec::complex::SimplicialComplex::build(&tops).unwrap();
        let (_, g) = build_dual(&complex, &coords, DualMode::WellCenteredOnly).unwrap();
        (complex, g)
    };
    let (coarse, gc) = seg(&[0.0, 0.5, 1.0]);
    let (fine, gf) = seg(&[0.0, 0.25, 0.5, 0.75, 1.0]);
    let refine = transfer_operator(&coarse, &gc, &fine, &gf, 1).unwrap();
    let coarsen = transfer_operator(&fine, &gf, &coarse, &gc, 1).unwrap();
    let omega = Cochain::primal(1, vec![0.4, -0.9]);
    let refined = refine.apply(&omega);
    println!(
        "1D totals: coarse {:.6}, refined {:.6}",
        omega.values.iter().sum::<f64>(),
        refined.values.iter().sum::<f64>()
    );
    let back = coarsen.apply(&refined);
    println!("round trip recovers {:?}", back.values);

    // coarsening sums the fine values (hierarchical case)
    let fine_form = Cochain::primal(1, vec![1.0, 2.0, 4.0, 8.0]);
    let summed = coarsen.apply(&fine_form);
    println!("coarse values are sums of fine values: {:?}", summed.values);

    // 2D transfer of the volume cochain between a lattice and its refinement
    let (lt, lc) = meshgen::equilateral_lattice(3, 3);
    let (coarse2, gc2) = {
        let complex = dec::complex::SimplicialComplex::build(&lt).unwrap();
        let (_, g) = build_dual(&complex, &lc, DualMode::WellCenteredOnly).unwrap();
        (complex, g)
    };
    let (ft, mut fc) = meshgen::equilateral_lattice(5, 5);
    for p in fc.iter_mut() {
        *p *= 0.5;
    }
    let (fine2, gf2) = {
        let complex = dec::complex::SimplicialComplex::build(&ft).unwrap();
        let (_, g) = build_dual(&complex, &fc, DualMode::WellCenteredOnly).unwrap();
        (complex, g)
    };
    let t = transfer_operator(&coarse2, &gc2, &fine2, &gf2, 2).unwrap();
    let volumes = Cochain::primal(
        2,
        (0..coarse2.num_simplices(2)).map(|i| gc2.primal_volume(2, i)).collect(),
    );
    let transferred = t.apply(&volumes);
    let worst = (0..fine2.num_simplices(2))
        .map(|i| (transferred.values[i] - gf2.primal_volume(2, i)).abs())
        .fold(0.0f64, f64::max)
        ;
    println!("volume cochain transfers to the fine volume cochain within {worst:.2e}");

    // pull-back and push-forward under a relabeling isomorphism
    let (ftops, fcoords) = meshgen::fan(5);
    let k = dec::complex::SimplicialComplex::build(&ftops).unwrap();
    let (_, gk) = build_dual(&k, &fcoords, DualMode::WellCenteredOnly).unwrap();
    let map = SimplicialMap::new((0..6usize).map(|v| (v, v)).collect());
    let alpha = Cochain::primal(
        1,
        (0..k.num_simplices(1)).map(|i| (i as f64) - 2.5).collect(),
    );
    let fwd = pushforward(&map, &k, &k, &alpha).unwrap();
    let back = pullback(&map, &k, &k, &fwd).unwrap();
    println!(
        "pushforward then pullback is the identity: {}",
        back.values == alpha.values
    );

    // naturality: the natural wedge commutes with pull-back, the geometric
    // wedge does not once the geometry is distorted
    let distorted: Vec<DVector<f64>> = fcoords
        .iter()
        .map(|p| DVector::from_column_slice(&[1.7 * p[0], 0.8 * p[1] + 0.1 * p[0]]))
        .collect();
    let l = dec::complex::SimplicialComplex::build(&ftops).unwrap();
    let (_, gl) = build_dual(&l, &distorted, DualMode::Signed).unwrap();
    let deck = Dec::new(&k, &gk);
    let decl = Dec::new(&l, &gl);
    let mut perms = PermutationTable::new();
    let a = Cochain {
        degree: 1,
        side: Side::Primal,
        values: (0..l.num_simplices(1)).map(|i| (i as f64 * 0.9).sin()).collect(),
    };
    let b = Cochain {
        degree: 1,
        side: Side::Primal,
        values: (0..l.num_simplices(1)).map(|i| (i as f64 * 0.4).cos()).collect(),
    };
    let f: BTreeMap<usize, usize> = (0..6usize).map(|v| (v, v)).collect();
    let f = SimplicialMap::new(f);
    for variant in [WedgeVariant::Natural, WedgeVariant::Geometric] {
        let lhs = pullback(&f, &k, &l, &wedge_pp(&decl, &a, &b, variant, &mut perms).unwrap())
            .unwrap();
        let rhs = wedge_pp(
            &deck,
            &pullback(&f, &k, &l, &a).unwrap(),
            &pullback(&f, &k, &l, &b).unwrap(),
            variant,
            &mut perms,
        )
        .unwrap();
        println!(
            "{variant:?} wedge naturality defect under pull-back: {:.2e}",
            lhs.sub(&rhs).norm_inf()
        );
    }
}
