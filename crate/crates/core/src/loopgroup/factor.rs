use serde::Serialize;

use super::{affine_matrix, LaurentMatrix, LoopError};
use crate::exactalg::{Field, LaurentPoly};
use crate::matrixcore::{EchelonMatrix, FieldMatrix};
use crate::positroid::necklace_trunc_minors;
use crate::weyl::AffinePermutation;

/// `z0 = lower·upper` with `lower` unitriangular in `ℤ × ℤ` (nonpositive
/// `z`-degrees) and `upper` upper triangular with nonzero diagonal
/// (nonnegative `z`-degrees).
#[derive(Clone, Debug, Serialize)]
pub struct BirkhoffFactors<F: Field> {
    pub lower: LaurentMatrix<F>,
    pub upper: LaurentMatrix<F>,
}

/// Factors `z0 ∈ B₋(𝒜₋)·B(𝒜₊)`.
///
/// Column `a` of the lower factor spans `L_{a+1}(z0) ∩ E_a` and is normalized
/// to 1 in row `a`; the upper factor is then `lower⁻¹·z0`.
pub fn birkhoff_factorize<F: Field>(
    z0: &LaurentMatrix<F>,
) -> Result<BirkhoffFactors<F>, LoopError> {
    let n = z0.n();
    let inv = z0.inverse()?;
    let (down, _) = z0.band();
    let (inv_down, _) = inv.band();
    let mut lower = LaurentMatrix::zeros(n);
    for a in 1..=n as i64 {
        let low = (a + 1 - inv_down).min(a);
        let (c0, c1) = (low - down, a + 1);
        let (r0, r1) = (low, a + 1 + down);
        if c1 <= c0 || r1 <= a {
            return Err(LoopError::NotFactorable(format!(
                "column {a} has an empty window"
            )));
        }
        let p = FieldMatrix::from_fn((r1 - r0) as usize, (c1 - c0) as usize, |i, j| {
            z0.tilde(r0 + i as i64, c0 + j as i64)
        });
        let top_rows: Vec<usize> = (0..(a - r0) as usize).collect();
        let all_cols: Vec<usize> = (0..p.cols()).collect();
        let kernel = if top_rows.is_empty() {
            (0..p.cols())
                .map(|j| {
                    (0..p.cols())
                        .map(|l| if l == j { F::one() } else { F::zero() })
                        .collect()
                })
                .collect()
        } else {
            p.submatrix(&top_rows, &all_cols)?.nullspace()
        };
        let images: Vec<Vec<F>> = kernel
            .iter()
            .map(|v| {
                (0..p.rows())
                    .map(|i| {
                        (0..p.cols()).fold(F::zero(), |s, j| s.plus(&p.get(i, j).times(&v[j])))
                    })
                    .collect()
            })
            .collect();
        let span = FieldMatrix::from_rows(images.clone())?;
        if span.rank() != 1 {
            return Err(LoopError::NotFactorable(format!(
                "L_{}(z0) ∩ E_{a} has dimension {}",
                a + 1,
                span.rank()
            )));
        }
        let vec = images
            .into_iter()
            .find(|v| v.iter().any(|x| !x.is_zero()))
            .expect("rank one");
        let pivot = &vec[(a - r0) as usize];
        if pivot.is_zero() {
            return Err(LoopError::NotFactorable(format!(
                "row {a} vanishes on L_{}(z0) ∩ E_{a}",
                a + 1
            )));
        }
        let scale = pivot.inverse()?;
        let mut cols: Vec<(usize, i64, F)> = Vec::new();
        for (off, v) in vec.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let i = r0 + off as i64;
            let (r, m) = super::split_index(i, n);
            cols.push((r, -m, v.times(&scale)));
        }
        for (r, d, v) in cols {
            let cur = lower
                .entry(r, a as usize)
                .plus(&LaurentPoly::monomial(v, d));
            lower.set_entry(r, a as usize, cur);
        }
    }
    let upper = lower
        .inverse()
        .map_err(|e| LoopError::NotFactorable(e.to_string()))?
        .mul(z0)?;
    if !lower.is_lower_unitriangular() || !upper.is_upper_with_unit_diagonal() {
        return Err(LoopError::NotFactorable(
            "factors are not triangular".into(),
        ));
    }
    Ok(BirkhoffFactors { lower, upper })
}

/// Outcome of the two `𝓒_g` membership tests for `y = φ_u(M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CgMembership {
    /// All truncated necklace minors of `M` along `g` are nonzero.
    pub minor_route: bool,
    /// `ġ⁻¹·y` admits a Birkhoff factorization.
    pub factor_route: bool,
}

impl CgMembership {
    pub fn is_member(&self) -> bool {
        self.minor_route && self.factor_route
    }

    pub fn routes_agree(&self) -> bool {
        self.minor_route == self.factor_route
    }
}

/// Tests whether `φ_u(M)·B(𝒜₊) ∈ 𝓒_g` by both routes.
pub fn cg_membership<F: Field>(
    m: &EchelonMatrix<F>,
    g: &AffinePermutation,
) -> Result<CgMembership, LoopError> {
    let minor_route = necklace_trunc_minors(m, g)?.iter().all(|x| !x.is_zero());
    let y = super::snider_phi(m);
    let z0 = affine_matrix::<F>(g).inverse()?.mul(&y)?;
    let factor_route = match birkhoff_factorize(&z0) {
        Ok(_) => true,
        Err(LoopError::NotFactorable(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(CgMembership {
        minor_route,
        factor_route,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{RatFunc, Rational};
    use crate::loopgroup::snider_phi;
    use crate::weyl::{tau_u_lambda, Permutation};

    fn lp(pairs: &[(i64, &str)]) -> LaurentPoly<RatFunc> {
        LaurentPoly::from_pairs(pairs.iter().map(|(d, s)| (*d, RatFunc::parse(s).unwrap())))
    }

    fn check(x: &LaurentMatrix<RatFunc>, want: &[[&[(i64, &str)]; 4]; 4]) {
        for (r, row) in want.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                assert_eq!(x.entry(r + 1, c + 1), &lp(e), "entry ({},{})", r + 1, c + 1);
            }
        }
    }

    #[test]
    fn example_factorization() {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let m = EchelonMatrix::<RatFunc>::generic(&u, 2, "x").unwrap();
        let g = AffinePermutation::new(vec![2, 4, 5, 7]).unwrap();
        let z0 = affine_matrix::<RatFunc>(&g)
            .inverse()
            .unwrap()
            .mul(&snider_phi(&m))
            .unwrap();
        check(
            &z0,
            &[
                [&[(0, "-x1")], &[(0, "1")], &[], &[(-1, "x2")]],
                [&[], &[], &[], &[(-1, "1")]],
                [&[(0, "1")], &[], &[], &[]],
                [&[(1, "-x3")], &[], &[(1, "1")], &[(0, "x4")]],
            ],
        );
        let BirkhoffFactors { lower, upper } = birkhoff_factorize(&z0).unwrap();
        check(
            &lower,
            &[
                [&[(0, "1")], &[], &[], &[(-1, "x2/x4")]],
                [
                    &[(0, "-x3/(x1*x4-x2*x3)")],
                    &[(0, "1")],
                    &[],
                    &[(-1, "1/x4")],
                ],
                [
                    &[(0, "-x4/(x1*x4-x2*x3)")],
                    &[(0, "x4/x3")],
                    &[(0, "1")],
                    &[],
                ],
                [&[], &[], &[], &[(0, "1")]],
            ],
        );
        check(
            &upper,
            &[
                [
                    &[(0, "-(x1*x4-x2*x3)/x4")],
                    &[(0, "1")],
                    &[(0, "-x2/x4")],
                    &[],
                ],
                [
                    &[],
                    &[(0, "x3/(x1*x4-x2*x3)")],
                    &[(0, "-x1/(x1*x4-x2*x3)")],
                    &[],
                ],
                [&[], &[], &[(0, "1/x3")], &[]],
                [&[(1, "-x3")], &[], &[(1, "1")], &[(0, "x4")]],
            ],
        );
        assert_eq!(lower.mul(&upper).unwrap(), z0);
    }

    #[test]
    fn identity_factorization() {
        let id = LaurentMatrix::<Rational>::identity(3);
        let f = birkhoff_factorize(&id).unwrap();
        assert_eq!(f.lower, id);
        assert_eq!(f.upper, id);
    }

    #[test]
    fn example_membership() {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let g = AffinePermutation::new(vec![2, 4, 5, 7]).unwrap();
        let r = |v: i64| Rational::integer(v);
        let make = |x: [i64; 4]| {
            let body = FieldMatrix::from_rows(vec![
                vec![r(1), r(0)],
                vec![r(x[0]), r(x[1])],
                vec![r(x[2]), r(x[3])],
                vec![r(0), r(1)],
            ])
            .unwrap();
            EchelonMatrix::new(u.clone(), body).unwrap()
        };
        for (x, member) in [
            ([2, 3, 5, 7], true),
            ([2, 3, 5, 0], false),
            ([2, 3, 0, 7], false),
            ([3, 3, 5, 5], false),
        ] {
            let res = cg_membership(&make(x), &g).unwrap();
            assert!(res.routes_agree(), "{x:?}");
            assert_eq!(res.is_member(), member, "{x:?}");
            let top = cg_membership(&make(x), &tau_u_lambda(&u, 2)).unwrap();
            assert!(top.is_member());
        }
    }
}
