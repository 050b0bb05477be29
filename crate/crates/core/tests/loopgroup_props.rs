//! Loop-group maps on sampled points: Snider matrices, Birkhoff factors,
//! Fomin–Shapiro splits and the loop torus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tnnatlas::atlas::{random_cell_point, zeta_chains, ZetaChain};
use tnnatlas::exactalg::{Field, RatFunc, Rational};
use tnnatlas::loopgroup::{
    affine_matrix, birkhoff_factorize, cg_membership, fs_nu, richardson_locate, snider_inverse,
    snider_phi, torus_scale, LaurentMatrix,
};
use tnnatlas::matrixcore::{u_echelon, EchelonMatrix, FieldMatrix};
use tnnatlas::posetlab::{enumerate_qj, qj_leq, QJElement};
use tnnatlas::weyl::{grassmannian_reps, tau_u_lambda, AffinePermutation, Permutation};

fn chains(nmax: usize) -> Vec<ZetaChain> {
    (2..=nmax).flat_map(|n| zeta_chains(n).unwrap()).collect()
}

/// A positive point of the upper cell of `ch`, in `u`-echelon form.
fn chain_point(ch: &ZetaChain, rng: &mut ChaCha8Rng) -> EchelonMatrix<Rational> {
    let x = random_cell_point(&ch.upper, rng).unwrap();
    u_echelon(&x, &ch.u, ch.upper.k).unwrap()
}

fn random_echelon(u: &Permutation, k: usize, rng: &mut ChaCha8Rng) -> EchelonMatrix<Rational> {
    let n = u.n();
    let piv = u.subset(k);
    let mut body = FieldMatrix::zeros(n, k);
    for r in 0..n {
        for c in 0..k {
            let v = match piv.iter().position(|&p| p == r + 1) {
                Some(s) if s == c => Rational::one(),
                Some(_) => Rational::zero(),
                None => Rational::integer(rng.gen_range(-2..=2)),
            };
            body.set(r, c, v);
        }
    }
    EchelonMatrix::new(u.clone(), body).unwrap()
}

fn chart_pairs(n: usize, k: usize) -> Vec<(Permutation, AffinePermutation)> {
    let qj = enumerate_qj(n, k).unwrap();
    let mut out = Vec::new();
    for (u, _) in grassmannian_reps(n, k).unwrap() {
        let base = QJElement::new(u.clone(), u.clone(), k).unwrap();
        for e in &qj {
            if qj_leq(&base, e).unwrap() {
                out.push((u.clone(), e.affine()));
            }
        }
    }
    out
}

#[test]
fn snider_determinant_is_a_monomial_of_valuation_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..n);
        let reps = grassmannian_reps(n, k).unwrap();
        let (u, _) = reps.choose(&mut rng).unwrap();
        let m = EchelonMatrix::<RatFunc>::generic(u, k, "x").unwrap();
        let det = snider_phi(&m).det().unwrap();
        let (c, d) = det.as_monomial().expect("monomial determinant");
        assert_eq!(d, -(k as i64), "u = {u}");
        assert!(
            c == RatFunc::one() || c == RatFunc::one().negate(),
            "u = {u}: {c}"
        );
    }
}

#[test]
fn birkhoff_factors_recompose() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut found = 0;
    let mut attempts = 0;
    while found < 50 {
        attempts += 1;
        assert!(attempts < 5000, "too few factorable instances");
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(1..n);
        let pairs = chart_pairs(n, k);
        let (u, g) = pairs.choose(&mut rng).unwrap();
        let m = random_echelon(u, k, &mut rng);
        if !cg_membership(&m, g).unwrap().factor_route {
            continue;
        }
        let z0 = affine_matrix::<Rational>(g)
            .inverse()
            .unwrap()
            .mul(&snider_phi(&m))
            .unwrap();
        let f = birkhoff_factorize(&z0).unwrap();
        assert!(f.lower.is_lower_unitriangular(), "u = {u}, g = {g}");
        assert!(f.upper.is_upper_with_unit_diagonal(), "u = {u}, g = {g}");
        assert_eq!(f.lower.mul(&f.upper).unwrap(), z0, "u = {u}, g = {g}");
        found += 1;
    }
}

#[test]
fn fomin_shapiro_split_moves_between_strata() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for ch in chains(4) {
        let m = chain_point(&ch, &mut rng);
        let y = snider_phi(&m);
        let (g, h) = (ch.lower.affine(), ch.upper.affine());
        let top = tau_u_lambda(&ch.u, ch.upper.k);
        let split = fs_nu(&y, &g).unwrap();
        assert_eq!(split.y1.mul(&y).unwrap(), split.image1);
        assert_eq!(split.d.mul(&affine_matrix(&g)).unwrap(), split.image2);
        let l1 = richardson_locate(&split.image1, &top).unwrap();
        assert_eq!(
            (l1.h, l1.f),
            (Some(g.clone()), Some(top.clone())),
            "g = {g}, h = {h}"
        );
        let l2 = richardson_locate(&split.image2, &top).unwrap();
        assert_eq!(
            (l2.h, l2.f),
            (Some(h.clone()), Some(g.clone())),
            "g = {g}, h = {h}"
        );
    }
}

#[test]
fn snider_inverse_recovers_sampled_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for ch in chains(4) {
        let m = chain_point(&ch, &mut rng);
        assert_eq!(snider_inverse(&snider_phi(&m), &ch.u, m.k).unwrap(), m);
    }
}

#[test]
fn loop_torus_preserves_cell_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let all = chains(4);
    for _ in 0..100 {
        let ch = all.choose(&mut rng).unwrap();
        let y: LaurentMatrix<Rational> = snider_phi(&chain_point(ch, &mut rng));
        let t = Rational::new(rng.gen_range(1..=9), rng.gen_range(1..=9)).unwrap();
        let top = tau_u_lambda(&ch.u, ch.upper.k);
        let before = richardson_locate(&y, &top).unwrap();
        let after = richardson_locate(&torus_scale(&t, &y).unwrap(), &top).unwrap();
        assert_eq!((before.h, before.f), (after.h, after.f), "t = {t}");
    }
}
