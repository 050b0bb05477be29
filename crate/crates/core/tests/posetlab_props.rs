//! Structural properties of the cell posets.

use std::collections::BTreeSet;

use tnnatlas::posetlab::{build_qj, psi, QJElement};
use tnnatlas::weyl::grassmannian_reps;

#[test]
fn minimal_elements_are_diagonal_pairs() {
    for n in 2..=5 {
        for k in 1..n {
            let qj = build_qj(n, k).unwrap();
            let minimal: BTreeSet<String> = qj
                .minimal()
                .into_iter()
                .map(|i| qj.elements()[i].to_string())
                .collect();
            let diagonal: BTreeSet<String> = grassmannian_reps(n, k)
                .unwrap()
                .into_iter()
                .map(|(u, _)| QJElement::new(u.clone(), u, k).unwrap().to_string())
                .collect();
            assert_eq!(minimal, diagonal, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn psi_is_injective_and_lands_in_bounded_permutations() {
    for n in 2..=5 {
        for k in 1..n {
            let qj = build_qj(n, k).unwrap();
            let images: BTreeSet<_> = qj.elements().iter().map(psi).collect();
            assert_eq!(images.len(), qj.len(), "n = {n}, k = {k}");
            for f in &images {
                assert!(f.is_bounded(), "{f}");
                assert_eq!(f.av(), k as i64, "{f}");
            }
        }
    }
}

#[test]
fn rank_function_is_length_difference() {
    for n in 2..=4 {
        for k in 1..n {
            let qj = build_qj(n, k).unwrap();
            for (a, b) in qj.covers() {
                let (x, y) = (&qj.elements()[a], &qj.elements()[b]);
                assert_eq!(y.rank(), x.rank() + 1, "{x} ⋖ {y}");
            }
        }
    }
}
