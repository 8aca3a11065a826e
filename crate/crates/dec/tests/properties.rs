//! Property tests for the combinatorial invariants: they hold for arbitrary
//! generated complexes, not just the curated mesh families.

use proptest::collection::vec;
use proptest::prelude::*;

use dec::complex::{Simplex, SimplicialComplex};
use dec::io::CochainFile;
use dec::meshgen;
use dec::ops::Side;

/// Arbitrary pure 2-complexes as index triples over a small vertex pool.
fn arb_tops() -> impl Strategy<Value = Vec<Vec<usize>>> {
    vec((0usize..18, 0usize..18, 0usize..18), 1..40).prop_map(|triples| {
        let mut seen = std::collections::BTreeSet::new();
        let mut tops = Vec::new();
        for (a, b, c) in triples {
            if a == b || b == c || a == c {
                continue;
            }
            let mut key = [a, b, c];
            key.sort_unstable();
            if seen.insert(key) {
                tops.push(vec![a, b, c]);
            }
        }
        if tops.is_empty() {
            tops.push(vec![0, 1, 2]);
        }
        tops
    })
}

proptest! {
    #[test]
    fn boundary_squares_to_zero(tops in arb_tops()) {
        let complex = SimplicialComplex::build(&tops).unwrap();
        let b2 = complex.boundary_matrix(2).unwrap();
        let b1 = complex.boundary_matrix(1).unwrap();
        prop_assert!(b1.mul(&b2).is_zero());
        // columns of ∂_k have exactly k+1 entries, all ±1
        for (deg, m) in [(1usize, &b1), (2, &b2)] {
            for col in 0..m.ncols() {
                let entries: Vec<i64> = m
                    .triplets()
                    .iter()
                    .filter(|&&(_, c, _)| c == col)
                    .map(|&(_, _, v)| v)
                    .collect();
                prop_assert_eq!(entries.len(), deg + 1);
                prop_assert!(entries.iter().all(|&v| v == 1 || v == -1));
            }
        }
    }

    #[test]
    fn simplex_orientation_sign_tracks_swaps(perm in Just(()).prop_flat_map(|_| {
        vec(0usize..64, 3..7).prop_filter("distinct", |v| {
            let mut s = v.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == v.len()
        })
    }), i in 0usize..6, j in 0usize..6) {
        let base = Simplex::new(&perm).unwrap();
        let (i, j) = (i % perm.len(), j % perm.len());
        let mut swapped = perm.clone();
        swapped.swap(i, j);
        let other = Simplex::new(&swapped).unwrap();
        prop_assert_eq!(base.vertices(), other.vertices());
        if i == j {
            prop_assert_eq!(base.sign(), other.sign());
        } else {
            prop_assert_eq!(base.sign(), -other.sign());
        }
    }

    #[test]
    fn cochain_file_round_trip_is_value_exact(values in vec(-1e12f64..1e12, 1..12)) {
        let (tops, _) = meshgen::fan(11);
        let complex = SimplicialComplex::build(&tops).unwrap();
        let mut alpha = dec::forms::Cochain::zero(0, Side::Primal, complex.num_simplices(0));
        let len = alpha.values.len();
        for (slot, v) in values.iter().enumerate() {
            alpha.values[slot % len] = *v;
        }
        let file = CochainFile::from_cochain(&alpha, &complex, "hash");
        let json = serde_json::to_string(&file).unwrap();
        let parsed: CochainFile = serde_json::from_str(&json).unwrap();
        let back = parsed.into_cochain(&complex, "hash").unwrap();
        prop_assert_eq!(back.values, alpha.values);
    }

    #[test]
    fn stokes_pairing_exact_on_integer_data(
        alpha_vals in vec(-9i64..=9, 12),
        chain_terms in vec((0usize..6, -3i64..=3), 1..6)
    ) {
        let (tops, coords) = meshgen::fan(6);
        let complex = SimplicialComplex::build(&tops).unwrap();
        let (_, geometry) = dec::geometry::build_dual(
            &complex,
            &coords,
            dec::geometry::DualMode::WellCenteredOnly,
        )
        .unwrap();
        let dec = dec::forms::Dec::new(&complex, &geometry);
        let alpha = dec::forms::Cochain {
            degree: 1,
            side: Side::Primal,
            values: alpha_vals.iter().map(|&v| v as f64).collect(),
        };
        let mut c = dec::complex::Chain::zero(2);
        for (i, coeff) in chain_terms {
            c.add_term(i, coeff);
        }
        let lhs = dec.pair(&dec.d(&alpha), &c).unwrap();
        let rhs = dec.pair(&alpha, &complex.boundary(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
