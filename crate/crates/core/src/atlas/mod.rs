//! The `κ → η → ζ` pipeline on `Gr(k,n)` charts and the sweeps that compare
//! `ζ`-minors with truncated necklace minors.

mod checks;
mod sweep;

use serde::Serialize;

pub use checks::{
    random_cell_point, verify_cg_routes, verify_snider_cells, verify_truncation, CheckCase,
    CheckReport,
};
pub use sweep::{
    conjecture_cases, verify_conjecture, verify_zeta_positivity, zeta_chains, CaseStatus,
    ConjectureCase, ConjectureReport, ZetaChain, ZetaPositivityCase, ZetaPositivityReport,
};

use crate::exactalg::{AlgError, Field};
use crate::matrixcore::{
    levi_inverse, schur_factorize, u_echelon, EchelonMatrix, FieldMatrix, MatrixError,
};
use crate::posetlab::{qj_leq, PosetError, QJElement};
use crate::positroid::{
    necklace, necklace_trunc_minors, u_truncation, GrassmannNecklace, PositroidError,
};
use crate::weyl::{signed_matrix, AffinePermutation, Permutation, WeylError};

/// Errors raised by the atlas pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AtlasError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Positroid(#[from] PositroidError),
    #[error("(u,u) = ({u},{u}) is not below {vw}")]
    NotAbove { u: String, vw: String },
    #[error("pivot minor on rows {0:?} vanishes")]
    PivotMinorZero(Vec<usize>),
    #[error("point is outside the chart: {0}")]
    OutsideChart(String),
}

/// A chart `u` together with a cell `(v, w)` satisfying `(u,u) ⪯ (v,w)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtlasContext {
    pub n: usize,
    pub k: usize,
    pub u: Permutation,
    pub v: Permutation,
    pub w: Permutation,
    /// `g = f_{v,w}`.
    pub g: AffinePermutation,
    pub necklace: GrassmannNecklace,
}

impl AtlasContext {
    pub fn new(u: &Permutation, vw: &QJElement) -> Result<Self, AtlasError> {
        let k = vw.k;
        let base = QJElement::new(u.clone(), u.clone(), k)?;
        if !qj_leq(&base, vw)? {
            return Err(AtlasError::NotAbove {
                u: u.to_string(),
                vw: vw.to_string(),
            });
        }
        let g = vw.affine();
        let necklace = necklace(&g)?;
        debug_assert_eq!(
            necklace.at(1),
            vw.v.subset(k).iter().map(|&x| x as i64).collect::<Vec<_>>(),
            "first necklace term is v[k]"
        );
        Ok(AtlasContext {
            n: u.n(),
            k,
            u: u.clone(),
            v: vw.v.clone(),
            w: vw.w.clone(),
            g,
            necklace,
        })
    }

    fn echelon<F: Field>(&self, x: &FieldMatrix<F>) -> Result<EchelonMatrix<F>, AtlasError> {
        u_echelon(x, &self.u, self.k).map_err(|e| match e {
            MatrixError::VanishingPivot(rows) => AtlasError::PivotMinorZero(rows),
            other => other.into(),
        })
    }
}

/// `tr¹_u(M)` completed to `SL_n` with the columns of `u̇`.
fn truncated_completion<F: Field>(m: &EchelonMatrix<F>) -> Result<FieldMatrix<F>, AtlasError> {
    let tr = u_truncation(m, 1).matrix;
    Ok(EchelonMatrix::new(m.u.clone(), tr)?.sl_completion())
}

/// `κ_x`, the lower unitriangular matrix with `κ_x·x = [tr¹_u(M) | u̇ columns]·p`
/// where `x = [M | u̇ columns]·p`.
pub fn kappa<F: Field>(
    ctx: &AtlasContext,
    x: &FieldMatrix<F>,
) -> Result<FieldMatrix<F>, AtlasError> {
    let m = ctx.echelon(x)?;
    let x0 = m.sl_completion();
    let x1 = truncated_completion(&m)?;
    Ok(x1.mul(&x0.inverse()?)?)
}

/// `κ_x·x`.
pub fn kappa_truncate<F: Field>(
    ctx: &AtlasContext,
    x: &FieldMatrix<F>,
) -> Result<FieldMatrix<F>, AtlasError> {
    Ok(kappa(ctx, x)?.mul(x)?)
}

/// `η(x)`: the Levi factor of `v̇⁻¹·κ_x·x`.
pub fn eta<F: Field>(ctx: &AtlasContext, x: &FieldMatrix<F>) -> Result<FieldMatrix<F>, AtlasError> {
    let vdot_inv = signed_matrix::<F>(&ctx.v).inverse()?;
    let y = vdot_inv.mul(&kappa_truncate(ctx, x)?)?;
    schur_factorize(&y, ctx.k).map(|f| f.levi).map_err(|_| {
        AtlasError::OutsideChart(format!("v̇⁻¹κx has a singular leading {0}x{0} block", ctx.k))
    })
}

/// `ζ(x) = x₀·η(x₀)⁻¹` for the echelon representative `x₀ = [M | u̇ columns]` of `xP`.
pub fn zeta<F: Field>(
    ctx: &AtlasContext,
    x: &FieldMatrix<F>,
) -> Result<FieldMatrix<F>, AtlasError> {
    let x0 = ctx.echelon(x)?.sl_completion();
    let e = eta(ctx, &x0)?;
    Ok(x0.mul(&levi_inverse(&e, ctx.k)?)?)
}

/// `Δ±_i(ζ(x)·ẇ⁻¹)` for `i = 1..n`: bottom-right `i × i` principal minors.
pub fn zeta_minors<F: Field>(ctx: &AtlasContext, x: &FieldMatrix<F>) -> Result<Vec<F>, AtlasError> {
    let z = zeta(ctx, x)?.mul(&signed_matrix::<F>(&ctx.w).inverse()?)?;
    let n = ctx.n;
    (1..=n)
        .map(|i| {
            let idx: Vec<usize> = (n - i..n).collect();
            Ok(z.submatrix(&idx, &idx)?.det()?)
        })
        .collect()
}

/// `Δ^{tr,a}_{I_a}(M)` for `a = 1..n` along the necklace of `g`.
pub fn truncated_necklace_minors<F: Field>(
    ctx: &AtlasContext,
    x: &FieldMatrix<F>,
) -> Result<Vec<F>, AtlasError> {
    Ok(necklace_trunc_minors(&ctx.echelon(x)?, &ctx.g)?)
}

/// Per-index comparison of `Δ±_{n+1−i}` with `Δ^{tr,i}_{I_i}/Δ^{tr,1}_{I_1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaComparison<F: Field> {
    /// `Δ±_i(ζẇ⁻¹)` for `i = 1..n`.
    pub zeta_minors: Vec<F>,
    /// `Δ^{tr,a}_{I_a}(M)` for `a = 1..n`.
    pub truncated_minors: Vec<F>,
    /// `Δ^{tr,i}_{I_i}/Δ^{tr,1}_{I_1}` for `i = 1..n`.
    pub ratios: Vec<F>,
    /// First `i` with `Δ±_{n+1−i} ≠ ratio_i`.
    pub first_mismatch: Option<usize>,
}

/// Evaluates both sides of the ζ-truncation identity at `x`.
pub fn compare_zeta_truncation<F: Field>(
    ctx: &AtlasContext,
    x: &FieldMatrix<F>,
) -> Result<ZetaComparison<F>, AtlasError> {
    let truncated = truncated_necklace_minors(ctx, x)?;
    let base = truncated[0]
        .inverse()
        .map_err(|_| AtlasError::OutsideChart("first truncated minor vanishes".into()))?;
    let zm = zeta_minors(ctx, x)?;
    let ratios: Vec<F> = truncated.iter().map(|t| t.times(&base)).collect();
    let n = ctx.n;
    let first_mismatch = (1..=n).find(|&i| zm[n - i] != ratios[i - 1]);
    Ok(ZetaComparison {
        zeta_minors: zm,
        truncated_minors: truncated,
        ratios,
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RatFunc;
    use crate::matrixcore::mr_product;
    use crate::weyl::{max_grassmannian, positive_subexpression};

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    fn rows(m: &FieldMatrix<RatFunc>) -> Vec<Vec<RatFunc>> {
        m.to_rows()
    }

    fn parse_rows(rows: &[&[&str]]) -> Vec<Vec<RatFunc>> {
        rows.iter()
            .map(|r| r.iter().map(|s| rf(s)).collect())
            .collect()
    }

    fn example_small() -> (AtlasContext, FieldMatrix<RatFunc>) {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let v = Permutation::from_word(4, &[2]).unwrap();
        let w = max_grassmannian(4, 2).unwrap();
        let ctx = AtlasContext::new(&u, &QJElement::new(v, w, 2).unwrap()).unwrap();
        let x = EchelonMatrix::generic(&u, 2, "x").unwrap().sl_completion();
        (ctx, x)
    }

    fn example_large() -> (AtlasContext, FieldMatrix<RatFunc>) {
        let u = Permutation::from_word(5, &[2]).unwrap();
        let word = [2, 1, 4, 3, 2];
        let w = Permutation::from_word(5, &word).unwrap();
        let x = mr_product(
            &positive_subexpression(&Permutation::from_word(5, &[1]).unwrap(), &word).unwrap(),
            "t",
        );
        let v = Permutation::from_word(5, &[2, 1]).unwrap();
        (
            AtlasContext::new(&u, &QJElement::new(v, w, 2).unwrap()).unwrap(),
            x,
        )
    }

    #[test]
    fn small_example_pipeline() {
        let (ctx, x) = example_small();
        assert_eq!(ctx.g, AffinePermutation::new(vec![2, 4, 5, 7]).unwrap());
        let kx = kappa_truncate(&ctx, &x).unwrap();
        let cols: Vec<Vec<RatFunc>> = kx.to_rows().iter().map(|r| r[..2].to_vec()).collect();
        assert_eq!(
            cols,
            parse_rows(&[&["1", "0"], &["0", "x2"], &["0", "x4"], &["0", "1"]])
        );
        assert_eq!(
            rows(&eta(&ctx, &x).unwrap()),
            parse_rows(&[
                &["1", "0", "0", "0"],
                &["0", "x4", "0", "0"],
                &["0", "0", "1", "-x2/x4"],
                &["0", "0", "0", "1/x4"]
            ])
        );
        let zm = zeta_minors(&ctx, &x).unwrap();
        assert_eq!(
            zm,
            vec![rf("1/x4"), rf("x3/x4"), rf("(x1*x4-x2*x3)/x4"), rf("1")]
        );
        let cmp = compare_zeta_truncation(&ctx, &x).unwrap();
        assert_eq!(
            cmp.truncated_minors,
            vec![rf("x4"), rf("x1*x4-x2*x3"), rf("x3"), rf("1")]
        );
        assert_eq!(cmp.first_mismatch, None);
    }

    #[test]
    fn large_example_pipeline() {
        let (ctx, x) = example_large();
        assert_eq!(ctx.g, AffinePermutation::new(vec![2, 4, 8, 5, 6]).unwrap());
        assert_eq!(
            rows(&kappa_truncate(&ctx, &x).unwrap()),
            parse_rows(&[
                &["0", "-1", "0", "0", "0"],
                &["1", "t5/t1", "0", "0", "0"],
                &["t1", "t5", "1", "0", "0"],
                &["0", "0", "t4", "1", "0"],
                &["0", "0", "t3*t4", "t3", "1"],
            ])
        );
        assert_eq!(
            rows(&eta(&ctx, &x).unwrap()),
            parse_rows(&[
                &["t1", "t5", "0", "0", "0"],
                &["0", "1", "0", "0", "0"],
                &["0", "0", "1/t1", "0", "0"],
                &["0", "0", "t4", "1", "0"],
                &["0", "0", "t3*t4", "t3", "1"],
            ])
        );
        let x0 = ctx.echelon(&x).unwrap().sl_completion();
        assert_eq!(
            rows(&eta(&ctx, &x0).unwrap()),
            parse_rows(&[
                &["0", "1", "0", "0", "0"],
                &["-1", "0", "0", "0", "0"],
                &["0", "0", "1", "0", "0"],
                &["0", "0", "0", "1", "0"],
                &["0", "0", "0", "0", "1"],
            ])
        );
        let zm = zeta_minors(&ctx, &x).unwrap();
        assert_eq!(
            &zm[..4],
            &[rf("t3*t4*t5"), rf("t4*t5"), rf("t4*t5"), rf("t5/t1")]
        );
        let cmp = compare_zeta_truncation(&ctx, &x).unwrap();
        assert_eq!(
            cmp.truncated_minors,
            vec![
                rf("1"),
                rf("t5/t1"),
                rf("t4*t5"),
                rf("t4*t5"),
                rf("t3*t4*t5")
            ]
        );
        assert_eq!(cmp.first_mismatch, None);
    }

    #[test]
    fn trivial_chart() {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let ctx = AtlasContext::new(&u, &QJElement::new(u.clone(), u.clone(), 2).unwrap()).unwrap();
        let udot: FieldMatrix<RatFunc> = signed_matrix(&u);
        assert_eq!(eta(&ctx, &udot).unwrap(), FieldMatrix::identity(4));
        assert!(zeta_minors(&ctx, &udot).unwrap().iter().all(|m| m.is_one()));
    }

    #[test]
    fn rejects_cells_not_above_chart() {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let id = Permutation::identity(4);
        let err = AtlasContext::new(&u, &QJElement::new(id.clone(), id, 2).unwrap());
        assert!(matches!(err, Err(AtlasError::NotAbove { .. })));
    }
}
