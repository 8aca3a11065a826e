//! The four wedge products and their algebraic laws: geometric and natural
//! primal-primal, dual-dual, and the primal-dual product whose total is the
//! discrete L² pairing.
//!
//! Run with `cargo run --example wedge_products`.

use dec::forms::{Cochain, Dec};
use dec::geometry::{build_dual, DualMode};
use dec::meshgen;
use dec::ops::Side;
use dec::wedge::{wedge_dd, wedge_pd, wedge_pp, PermutationTable, WedgeVariant};

fn main() {
    let (tops, coords) = meshgen::equilateral_lattice(4, 4);
    let complex = dec::complex::SimplicialComplex::build(&tops).unwrap();
    let (_, geometry) = build_dual(&complex, &coords, DualMode::WellCenteredOnly).unwrap();
    let dec = Dec::new(&complex, &geometry);
    let mut perms = PermutationTable::new();

    let rand_form = |deg: usize, seed: u64| {
        let mut values = Vec::new();
        let mut state = seed;
        for _ in 0..complex.num_simplices(deg) {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            values.push((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5);
        }
        Cochain { degree: deg, side: Side::Primal, values }
    };

    let alpha = rand_form(1, 1);
    let beta = rand_form(1, 2);
    for variant in [WedgeVariant::Geometric, WedgeVariant::Natural] {
        let ab = wedge_pp(&dec, &alpha, &beta, variant, &mut perms).unwrap();
        let ba = wedge_pp(&dec, &beta, &alpha, variant, &mut perms).unwrap();
        println!(
            "{variant:?}: α∧β + β∧α deviates from 0 by {:.2e} (1-forms anti-commute)",
            ab.add(&ba).norm_inf()
        );
    }

    // Leibniz rule d(f∧α) = df∧α + f∧dα
    let f = rand_form(0, 3);
    for variant in [WedgeVariant::Geometric, WedgeVariant::Natural] {
        let lhs = dec.d(&wedge_pp(&dec, &f, &alpha, variant, &mut perms).unwrap());
        let rhs = wedge_pp(&dec, &dec.d(&f), &alpha, variant, &mut perms)
            .unwrap()
            .add(&wedge_pp(&dec, &f, &dec.d(&alpha), variant, &mut perms).unwrap());
        println!("{variant:?}: Leibniz defect {:.2e}", lhs.sub(&rhs).norm_inf());
    }

    // associativity holds for closed forms
    let (g1, g2, g3) = (rand_form(0, 4), rand_form(0, 5), rand_form(0, 6));
    let (ca, cb, cc) = (dec.d(&g1), dec.d(&g2), dec.d(&g3));
    // degrees (1,1,0) fit in two dimensions: wedge the closed 0-form g3
    let closed0 = Cochain::primal(0, vec![0.75; complex.num_simplices(0)]);
    let ab_c = wedge_pp(
        &dec,
        &wedge_pp(&dec, &ca, &cb, WedgeVariant::Geometric, &mut perms).unwrap(),
        &closed0,
        WedgeVariant::Geometric,
        &mut perms,
    )
    .unwrap();
    let a_bc = wedge_pp(
        &dec,
        &ca,
        &wedge_pp(&dec, &cb, &closed0, WedgeVariant::Geometric, &mut perms).unwrap(),
        WedgeVariant::Geometric,
        &mut perms,
    )
    .unwrap();
    println!("associativity on closed forms: defect {:.2e}", ab_c.sub(&a_bc).norm_inf());
    let _ = cc;

    // dual-dual wedge with the constant dual 0-form as unit
    let ones = Cochain::dual(0, vec![1.0; complex.num_simplices(2)]);
    let star_alpha = dec.hodge(&alpha).unwrap();
    let dd = wedge_dd(&dec, &ones, &star_alpha, &mut perms).unwrap();
    println!(
        "1̂ ∧ ∗α deviates from ∗α by {:.2e}",
        dd.sub(&star_alpha).norm_inf()
    );

    // primal-dual wedge sums to the L² pairing
    let pd = wedge_pd(&dec, &alpha, &star_alpha).unwrap();
    let norm_sq = dec.inner_product(&alpha, &alpha).unwrap();
    println!(
        "Σ_σ ⟨α∧∗α, V_σ⟩ = {:.9} vs ⟨α,α⟩ = {:.9}",
        pd.total(),
        norm_sq
    );
}
