use serde::Serialize;

use super::{affine_matrix, birkhoff_factorize, split_index, LaurentMatrix, LoopError};
use crate::exactalg::{Field, LaurentPoly};
use crate::matrixcore::{EchelonMatrix, FieldMatrix};
use crate::weyl::{tau_u_lambda, AffinePermutation, Permutation};

/// Positions `(i, j)` of `𝒰₁(g)`: `i ∈ [1, n]`, `i < j`, `g⁻¹(i) > g⁻¹(j)`.
/// There are exactly `ℓ(g)` of them.
pub fn inversion_positions(g: &AffinePermutation) -> Vec<(i64, i64)> {
    let n = g.n() as i64;
    let ginv = g.inverse();
    let d = ginv.max_displacement();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..i + 2 * d.max(1) {
            if ginv.at(i) > ginv.at(j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// All translates `(i + mn, j + mn)` of inversion positions meeting row `row`
/// or column `col`.
fn positions_in_row(base: &[(i64, i64)], n: i64, row: i64) -> Vec<i64> {
    let (r, m) = split_index(row, n as usize);
    base.iter()
        .filter(|(i, _)| *i == r as i64)
        .map(|(_, j)| j + m * n)
        .collect()
}

fn positions_in_col(base: &[(i64, i64)], n: i64, col: i64) -> Vec<i64> {
    let mut out: Vec<i64> = base
        .iter()
        .filter(|(_, j)| (j - col).rem_euclid(n) == 0)
        .map(|(i, j)| i + (col - j))
        .collect();
    out.sort_unstable();
    out
}

/// Places `v` at `x̃_{i,j}` and all translates.
fn put<F: Field>(x: &mut LaurentMatrix<F>, i: i64, j: i64, v: F) {
    if !v.is_zero() {
        x.set_tilde(i, j, v);
    }
}

/// Solves the square system `a·x = b`.
fn solve_square<F: Field>(a: FieldMatrix<F>, b: Vec<F>, what: &str) -> Result<Vec<F>, LoopError> {
    let rhs = FieldMatrix::from_rows(b.into_iter().map(|x| vec![x]).collect())?;
    let sol = a
        .solve(&rhs)
        .map_err(|_| LoopError::NoUniqueSolution(what.into()))?;
    Ok((0..sol.rows()).map(|i| sol.get(i, 0).clone()).collect())
}

/// The Fomin–Shapiro splitting of `y·B(𝒜₊) ∈ 𝓒_g`.
#[derive(Clone, Debug, Serialize)]
pub struct FsSplit<F: Field> {
    pub g: AffinePermutation,
    /// `y1 ∈ 𝒰₁(g)` with `y1·y·B(𝒜₊) ∈ X̊_g`.
    pub y1: LaurentMatrix<F>,
    /// `y2 ∈ 𝒰₂(g)` with `y2·y·B(𝒜₊) = d·ġ·B(𝒜₊) ∈ X̊^g`.
    pub y2: LaurentMatrix<F>,
    /// The `𝒰₁(g)` element with `y2·y·B(𝒜₊) = d·ġ·B(𝒜₊)`.
    pub d: LaurentMatrix<F>,
    /// `y1·y`.
    pub image1: LaurentMatrix<F>,
    /// `d·ġ`.
    pub image2: LaurentMatrix<F>,
    /// Entries of `d` at [`inversion_positions`], in order.
    pub coords: Vec<F>,
}

/// Computes `y1`, `y2` and the coordinates of `y·B(𝒜₊)` relative to `g`.
pub fn fs_nu<F: Field>(
    y: &LaurentMatrix<F>,
    g: &AffinePermutation,
) -> Result<FsSplit<F>, LoopError> {
    let n = y.n() as i64;
    if g.n() != y.n() {
        return Err(LoopError::SizeMismatch(format!(
            "g has size {}, y has size {n}",
            g.n()
        )));
    }
    let gdot: LaurentMatrix<F> = affine_matrix(g);
    let gdot_inv = gdot.inverse()?;
    let lower = birkhoff_factorize(&gdot_inv.mul(y)?)?.lower;
    let q = gdot.mul(&lower)?.mul(&gdot_inv)?;
    let pos = inversion_positions(g);

    // y1 = a with a·q ∈ 𝒰₂(g): per row i, Σ_l a_{i,l} q_{l,j} = −q_{i,j} over U1 columns j.
    let mut y1 = LaurentMatrix::identity(n as usize);
    for i in 1..=n {
        let cols = positions_in_row(&pos, n, i);
        if cols.is_empty() {
            continue;
        }
        let a = FieldMatrix::from_fn(cols.len(), cols.len(), |r, c| q.tilde(cols[c], cols[r]));
        let b = cols.iter().map(|&j| q.tilde(i, j).negate()).collect();
        for (l, v) in cols.iter().zip(solve_square(a, b, "U1 x U2 split")?) {
            put(&mut y1, i, *l, v);
        }
    }

    // d' with q·d' ∈ 𝒰₂(g): per column j, Σ_l q_{i,l} d'_{l,j} = −q_{i,j} over U1 rows i.
    let mut dprime = LaurentMatrix::identity(n as usize);
    for j in 1..=n {
        let rows = positions_in_col(&pos, n, j);
        if rows.is_empty() {
            continue;
        }
        let a = FieldMatrix::from_fn(rows.len(), rows.len(), |r, c| q.tilde(rows[r], rows[c]));
        let b = rows.iter().map(|&i| q.tilde(i, j).negate()).collect();
        for (l, v) in rows.iter().zip(solve_square(a, b, "U2 x U1 split")?) {
            put(&mut dprime, *l, j, v);
        }
    }
    let d = dprime.inverse()?;
    let y2 = d.mul(&q.inverse()?)?;
    let image1 = y1.mul(y)?;
    let image2 = d.mul(&gdot)?;
    let coords = pos.iter().map(|&(i, j)| d.tilde(i, j)).collect();
    Ok(FsSplit {
        g: g.clone(),
        y1,
        y2,
        d,
        image1,
        image2,
        coords,
    })
}

/// `ν ∈ 𝒰₁(f)` with `ḟ⁻¹·ν·y ∈ B(𝒜₊)`, so that `y·B(𝒜₊) = ν⁻¹·ḟ·B(𝒜₊)`.
/// Returns `ν⁻¹·ḟ`.
pub fn schubert_normal_form<F: Field>(
    y: &LaurentMatrix<F>,
    f: &AffinePermutation,
) -> Result<LaurentMatrix<F>, LoopError> {
    let n = y.n() as i64;
    let pos = inversion_positions(f);
    let (down, _) = y.band();
    let mut nu = LaurentMatrix::identity(n as usize);
    for rho in 1..=n {
        let cols = positions_in_row(&pos, n, rho);
        let i = f.inverse_at(rho);
        // Row ρ of ν·y must vanish in columns j < f⁻¹(ρ).
        let eqs: Vec<i64> = (rho - down..i).collect();
        let mut aug = FieldMatrix::zeros(eqs.len(), cols.len() + 1);
        for (e, &j) in eqs.iter().enumerate() {
            for (c, &l) in cols.iter().enumerate() {
                aug.set(e, c, y.tilde(l, j));
            }
            aug.set(e, cols.len(), y.tilde(rho, j).negate());
        }
        let (red, piv) = aug.rref();
        if piv.contains(&cols.len()) {
            return Err(LoopError::NoUniqueSolution(format!(
                "y is not in the Schubert cell of {f}"
            )));
        }
        if piv.len() < cols.len() {
            return Err(LoopError::NoUniqueSolution(format!(
                "normal form relative to {f} is not unique"
            )));
        }
        for (r, &c) in piv.iter().enumerate() {
            put(&mut nu, rho, cols[c], red.get(r, cols.len()).clone());
        }
    }
    let fdot: LaurentMatrix<F> = affine_matrix(f);
    let w = fdot.inverse()?.mul(&nu)?.mul(y)?;
    if !w.is_upper_with_unit_diagonal() || w.degree_range().is_some_and(|(lo, _)| lo < 0) {
        return Err(LoopError::NoUniqueSolution(format!(
            "y is not in the Schubert cell of {f}"
        )));
    }
    nu.inverse()?.mul(&fdot)
}

/// Recovers the echelon matrix `M` with `φ_u(M)·B(𝒜₊) = y·B(𝒜₊)`.
pub fn snider_inverse<F: Field>(
    y: &LaurentMatrix<F>,
    u: &Permutation,
    k: usize,
) -> Result<EchelonMatrix<F>, LoopError> {
    let n = u.n();
    let normal = schubert_normal_form(y, &tau_u_lambda(u, k))?;
    let pivots = u.subset(k);
    let body = FieldMatrix::from_fn(n, k, |i, s| {
        let (i, j) = (i + 1, pivots[s]);
        let e = normal.entry(i, j);
        if i > j {
            e.coeff(0).negate()
        } else {
            e.coeff(-1)
        }
    });
    let m = EchelonMatrix::new(u.clone(), body)?;
    if super::snider_phi(&m) != normal {
        return Err(LoopError::NoUniqueSolution(
            "normal form is not in the image of the Snider map".into(),
        ));
    }
    Ok(m)
}

fn power<F: Field>(t: &F, e: i64) -> Result<F, LoopError> {
    let base = if e < 0 { t.inverse()? } else { t.clone() };
    Ok((0..e.unsigned_abs()).fold(F::one(), |acc, _| acc.times(&base)))
}

/// Loop-rotation torus action `x̃_{i,j} ↦ t^{j−i}·x̃_{i,j}`.
pub fn torus_scale<F: Field>(t: &F, x: &LaurentMatrix<F>) -> Result<LaurentMatrix<F>, LoopError> {
    let n = x.n();
    let mut out = LaurentMatrix::zeros(n);
    for r in 1..=n {
        for c in 1..=n {
            let mut terms = Vec::new();
            for (d, v) in x.entry(r, c).terms() {
                let e = c as i64 - r as i64 + d * n as i64;
                terms.push((d, v.times(&power(t, e)?)));
            }
            out.set_entry(r, c, LaurentPoly::from_pairs(terms));
        }
    }
    Ok(out)
}

/// Exact squared Euclidean norm of the coordinates of a split.
pub fn cone_norm<F: Field>(split: &FsSplit<F>) -> F {
    split
        .coords
        .iter()
        .fold(F::zero(), |acc, c| acc.plus(&c.times(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RatFunc;
    use crate::loopgroup::{richardson_locate, snider_phi};
    use crate::weyl::tau_k;

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    fn example() -> (Permutation, EchelonMatrix<RatFunc>, AffinePermutation) {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let m = EchelonMatrix::generic(&u, 2, "x").unwrap();
        (u, m, AffinePermutation::new(vec![2, 4, 5, 7]).unwrap())
    }

    #[test]
    fn inversion_positions_count_length() {
        for w in [
            vec![2, 4, 5, 7],
            vec![3, 4, 5, 6],
            vec![5, 6, 3, 4],
            vec![2, 4, 8, 5, 6],
            vec![4, 1, 7, 6],
        ] {
            let g = AffinePermutation::new(w).unwrap();
            assert_eq!(inversion_positions(&g).len(), g.length(), "{g}");
        }
        assert_eq!(
            inversion_positions(&AffinePermutation::new(vec![2, 4, 5, 7]).unwrap()),
            vec![(2, 3)]
        );
    }

    #[test]
    fn example_split() {
        let (u, m, g) = example();
        let y = snider_phi(&m);
        let split = fs_nu(&y, &g).unwrap();
        assert_eq!(split.y1.tilde(2, 3), rf("-x2/x4"));
        assert_eq!(split.coords, vec![rf("x2/x4")]);
        assert_eq!(cone_norm(&split), rf("x2^2/x4^2"));
        let top = tau_u_lambda(&u, 2);
        let l1 = richardson_locate(&split.image1, &top).unwrap();
        assert_eq!((l1.h.unwrap(), l1.f.unwrap()), (g.clone(), top.clone()));
        let l2 = richardson_locate(&split.image2, &top).unwrap();
        assert_eq!((l2.h.unwrap(), l2.f.unwrap()), (tau_k(4, 2), g.clone()));
        assert_eq!(
            split
                .y2
                .mul(&y)
                .unwrap()
                .inverse()
                .unwrap()
                .mul(&split.image2)
                .unwrap()
                .degree_range()
                .unwrap()
                .0,
            0
        );

        let m1 = snider_inverse(&split.image1, &u, 2).unwrap();
        let want = [
            ["1", "0"],
            ["(x1*x4-x2*x3)/x4", "0"],
            ["x3", "x4"],
            ["0", "1"],
        ];
        for (i, row) in want.iter().enumerate() {
            for (s, e) in row.iter().enumerate() {
                assert_eq!(m1.body.get(i, s), &rf(e), "row {} col {}", i + 1, s + 1);
            }
        }
    }

    #[test]
    fn snider_inverse_round_trip() {
        let (u, m, _) = example();
        assert_eq!(snider_inverse(&snider_phi(&m), &u, 2).unwrap(), m);
    }

    #[test]
    fn torus_scaling_of_coordinates() {
        let (_, m, g) = example();
        let t = rf("t");
        let split = fs_nu(&snider_phi(&m), &g).unwrap();
        let scaled_d = torus_scale(&t, &split.d).unwrap();
        assert_eq!(scaled_d.tilde(2, 3), rf("t*x2/x4"));
        assert_eq!(torus_scale(&RatFunc::one(), &split.d).unwrap(), split.d);

        // The torus moves the cell point to the one with x1 ↦ x1 + (t−1)x2x3/x4, x2 ↦ t·x2.
        let shifted = EchelonMatrix::new(
            m.u.clone(),
            FieldMatrix::from_rows(vec![
                vec![RatFunc::one(), RatFunc::zero()],
                vec![rf("x1 + (t-1)*x2*x3/x4"), rf("t*x2")],
                vec![rf("x3"), rf("x4")],
                vec![RatFunc::zero(), RatFunc::one()],
            ])
            .unwrap(),
        )
        .unwrap();
        let moved = fs_nu(&snider_phi(&shifted), &g).unwrap();
        assert_eq!(moved.coords, vec![rf("t*x2/x4")]);
        let u = m.u.clone();
        assert_eq!(
            snider_inverse(&moved.image1, &u, 2).unwrap(),
            snider_inverse(&split.image1, &u, 2).unwrap()
        );
    }
}
