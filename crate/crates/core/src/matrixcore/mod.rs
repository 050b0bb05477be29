//! Dense exact linear algebra: minors, echelon forms, the block Schur
//! factorization, Chevalley generators, and Marsh–Rietsch products.
//!
//! Matrix methods use 0-based indices. Functions named after mathematical
//! objects (`flag_minor`, `principal_minors`, echelon row sets) use 1-based
//! labels, matching the permutation conventions of [`crate::weyl`].

mod matrix;

use serde::Serialize;

pub use matrix::FieldMatrix;

use crate::exactalg::{Field, RatFunc};
use crate::weyl::{signed_matrix, Permutation, PositiveSubexpression};

/// Errors raised by matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("matrix is singular")]
    Singular,
    #[error("pivot minor on rows {0:?} vanishes")]
    VanishingPivot(Vec<usize>),
    #[error("not in echelon form: {0}")]
    NotEchelon(String),
    #[error("bad generator: {0}")]
    BadGenerator(String),
}

/// Determinant of the submatrix on 1-based `rowset × colset`.
pub fn minor<F: Field>(
    m: &FieldMatrix<F>,
    rowset: &[usize],
    colset: &[usize],
) -> Result<F, MatrixError> {
    if rowset.len() != colset.len() {
        return Err(MatrixError::Shape(format!(
            "{} rows vs {} columns",
            rowset.len(),
            colset.len()
        )));
    }
    if rowset.iter().chain(colset).any(|&x| x == 0) {
        return Err(MatrixError::Index("labels are 1-based".into()));
    }
    let r: Vec<usize> = rowset.iter().map(|x| x - 1).collect();
    let c: Vec<usize> = colset.iter().map(|x| x - 1).collect();
    m.submatrix(&r, &c)?.det()
}

/// Flag minor `Δ_S`: rows `S` (1-based) and the first `|S|` columns.
pub fn flag_minor<F: Field>(m: &FieldMatrix<F>, s: &[usize]) -> Result<F, MatrixError> {
    let cols: Vec<usize> = (1..=s.len()).collect();
    minor(m, s, &cols)
}

/// Top-left (`Δ∓_i`) and bottom-right (`Δ±_i`) principal minors for `i ∈ [n]`,
/// returned as two vectors indexed by `i − 1`. Index `n` holds `det`.
pub fn principal_minors<F: Field>(x: &FieldMatrix<F>) -> Result<(Vec<F>, Vec<F>), MatrixError> {
    let n = x.rows();
    if x.cols() != n {
        return Err(MatrixError::Shape(
            "principal minors need a square matrix".into(),
        ));
    }
    let mut top = Vec::with_capacity(n);
    let mut bottom = Vec::with_capacity(n);
    for i in 1..=n {
        let tl: Vec<usize> = (1..=i).collect();
        let br: Vec<usize> = (n - i + 1..=n).collect();
        top.push(minor(x, &tl, &tl)?);
        bottom.push(minor(x, &br, &br)?);
    }
    Ok((top, bottom))
}

/// An `n × k` matrix whose rows `u[k]` form the identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EchelonMatrix<F: Field> {
    pub n: usize,
    pub k: usize,
    pub u: Permutation,
    pub body: FieldMatrix<F>,
}

impl<F: Field> EchelonMatrix<F> {
    /// Validates that rows `u[k]` of `body` form the identity.
    pub fn new(u: Permutation, body: FieldMatrix<F>) -> Result<Self, MatrixError> {
        let (n, k) = (body.rows(), body.cols());
        if u.n() != n || k == 0 || k >= n {
            return Err(MatrixError::Shape(format!(
                "echelon body {n}x{k} with u of size {}",
                u.n()
            )));
        }
        if !u.is_grassmannian(k) {
            return Err(MatrixError::NotEchelon(format!(
                "{u} is not a Grassmannian permutation"
            )));
        }
        for (s, &r) in u.subset(k).iter().enumerate() {
            for j in 0..k {
                let want = if j == s { F::one() } else { F::zero() };
                if *body.get(r - 1, j) != want {
                    return Err(MatrixError::NotEchelon(format!(
                        "row {r} is not a unit row"
                    )));
                }
            }
        }
        Ok(EchelonMatrix { n, k, u, body })
    }

    /// Pivot rows `u[k]`, 1-based and increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.u.subset(self.k)
    }

    /// Row `M_i` for any integer `i`, with `M_{i+n} = (−1)^{k−1} M_i`.
    pub fn periodic_row(&self, i: i64) -> Vec<F> {
        let n = self.n as i64;
        let r = (i - 1).rem_euclid(n) as usize;
        let q = (i - 1).div_euclid(n);
        let row = self.body.row(r);
        if self.k.is_multiple_of(2) && q.rem_euclid(2) == 1 {
            row.iter().map(|x| x.negate()).collect()
        } else {
            row
        }
    }

    /// The `SL_n` completion `[M | columns k+1..n of u̇]`.
    ///
    /// This equals `u̇·[I 0; C I]` for a block `C`, so its determinant is 1.
    pub fn sl_completion(&self) -> FieldMatrix<F> {
        let udot: FieldMatrix<F> = signed_matrix(&self.u);
        let mut x = udot;
        x.set_block(0, 0, &self.body);
        x
    }
}

impl EchelonMatrix<RatFunc> {
    /// The generic echelon matrix for `u`: one fresh variable `{prefix}{m}` per
    /// non-pivot entry, numbered in row-major order starting at 1.
    pub fn generic(u: &Permutation, k: usize, prefix: &str) -> Result<Self, MatrixError> {
        let n = u.n();
        let piv = u.subset(k);
        let mut body = FieldMatrix::zeros(n, k);
        let mut idx = 0;
        for i in 1..=n {
            if let Some(s) = piv.iter().position(|&p| p == i) {
                body.set(i - 1, s, RatFunc::one());
            } else {
                for j in 0..k {
                    idx += 1;
                    body.set(i - 1, j, RatFunc::var(&format!("{prefix}{idx}")));
                }
            }
        }
        Self::new(u.clone(), body)
    }
}

/// Column echelon form with respect to `u`: `M = X·(rows u[k] of X)⁻¹`, where
/// `X` is the first `k` columns of `x`.
pub fn u_echelon<F: Field>(
    x: &FieldMatrix<F>,
    u: &Permutation,
    k: usize,
) -> Result<EchelonMatrix<F>, MatrixError> {
    let n = x.rows();
    if x.cols() < k || u.n() != n {
        return Err(MatrixError::Shape(format!(
            "cannot take {k} columns of a {n}x{} matrix",
            x.cols()
        )));
    }
    let cols: Vec<usize> = (0..k).collect();
    let xk = x.submatrix(&(0..n).collect::<Vec<_>>(), &cols)?;
    let piv = u.subset(k);
    let rows0: Vec<usize> = piv.iter().map(|r| r - 1).collect();
    let a = xk.submatrix(&rows0, &cols)?;
    let ainv = a
        .inverse()
        .map_err(|_| MatrixError::VanishingPivot(piv.clone()))?;
    EchelonMatrix::new(u.clone(), xk.mul(&ainv)?)
}

/// Block factorization `x = [I 0; CA⁻¹ I]·[A 0; 0 D−CA⁻¹B]·[I A⁻¹B; 0 I]`
/// where `A` is the top-left `k × k` block.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurFactors<F: Field> {
    pub lower: FieldMatrix<F>,
    pub levi: FieldMatrix<F>,
    pub upper: FieldMatrix<F>,
}

pub fn schur_factorize<F: Field>(
    x: &FieldMatrix<F>,
    k: usize,
) -> Result<SchurFactors<F>, MatrixError> {
    let n = x.rows();
    if x.cols() != n || k > n {
        return Err(MatrixError::Shape(
            "schur factorization needs a square matrix and k ≤ n".into(),
        ));
    }
    let top: Vec<usize> = (0..k).collect();
    let bot: Vec<usize> = (k..n).collect();
    let a = x.submatrix(&top, &top)?;
    let b = x.submatrix(&top, &bot)?;
    let c = x.submatrix(&bot, &top)?;
    let d = x.submatrix(&bot, &bot)?;
    let ainv = a.inverse()?;
    let ca = c.mul(&ainv)?;
    let ab = ainv.mul(&b)?;
    let schur = d.sub(&ca.mul(&b)?)?;
    let mut lower = FieldMatrix::identity(n);
    lower.set_block(k, 0, &ca);
    let mut levi = FieldMatrix::zeros(n, n);
    levi.set_block(0, 0, &a);
    levi.set_block(k, k, &schur);
    let mut upper = FieldMatrix::identity(n);
    upper.set_block(0, k, &ab);
    Ok(SchurFactors { lower, levi, upper })
}

/// Inverse of a block-diagonal Levi element `[A 0; 0 S]`.
pub fn levi_inverse<F: Field>(
    levi: &FieldMatrix<F>,
    k: usize,
) -> Result<FieldMatrix<F>, MatrixError> {
    let n = levi.rows();
    let top: Vec<usize> = (0..k).collect();
    let bot: Vec<usize> = (k..n).collect();
    let mut out = FieldMatrix::zeros(n, n);
    out.set_block(0, 0, &levi.submatrix(&top, &top)?.inverse()?);
    out.set_block(k, k, &levi.submatrix(&bot, &bot)?.inverse()?);
    Ok(out)
}

/// Generator families of `SL_n` used in products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    /// `x_i(t)`: identity plus `t` at `(i, i+1)`.
    X,
    /// `y_i(t)`: identity plus `t` at `(i+1, i)`.
    Y,
    /// `ṡ_i = φ_i([[0,−1],[1,0]])`; the parameter is ignored.
    S,
    /// The coweight element `diag(t,…,t,1,…,1)` with `i` entries `t`.
    Coweight,
}

/// The generator of the given kind at 1-based index `i`.
pub fn generator<F: Field>(
    kind: GeneratorKind,
    n: usize,
    i: usize,
    t: &F,
) -> Result<FieldMatrix<F>, MatrixError> {
    if i == 0 || i >= n {
        return Err(MatrixError::BadGenerator(format!(
            "index {i} out of range for n = {n}"
        )));
    }
    let mut m = FieldMatrix::identity(n);
    let (a, b) = (i - 1, i);
    match kind {
        GeneratorKind::X => m.set(a, b, t.clone()),
        GeneratorKind::Y => m.set(b, a, t.clone()),
        GeneratorKind::S => {
            m.set(a, a, F::zero());
            m.set(b, b, F::zero());
            m.set(a, b, F::from_int(-1));
            m.set(b, a, F::one());
        }
        GeneratorKind::Coweight => {
            for r in 0..i {
                m.set(r, r, t.clone());
            }
        }
    }
    Ok(m)
}

/// Marsh–Rietsch product `g_1⋯g_N` with `g_j = y_{i_j}(t_j)` on circle
/// positions and `ṡ_{i_j}` on plus positions; `param(j)` supplies `t_j`.
pub fn mr_product_with<F: Field>(
    pse: &PositiveSubexpression,
    param: impl Fn(usize) -> F,
) -> FieldMatrix<F> {
    let n = pse.n();
    let mut acc = FieldMatrix::identity(n);
    for (pos, &i) in pse.word.iter().enumerate() {
        let j = pos + 1;
        let g = if pse.plus_set.contains(&j) {
            generator(GeneratorKind::S, n, i, &F::zero())
        } else {
            generator(GeneratorKind::Y, n, i, &param(j))
        }
        .expect("word letters are valid generators");
        acc = acc.mul(&g).expect("square");
    }
    acc
}

/// Symbolic Marsh–Rietsch product with parameters named `{prefix}{j}`.
pub fn mr_product(pse: &PositiveSubexpression, prefix: &str) -> FieldMatrix<RatFunc> {
    mr_product_with(pse, |j| RatFunc::var(&format!("{prefix}{j}")))
}

/// Names of the Marsh–Rietsch parameters of `pse`.
pub fn mr_symbols(pse: &PositiveSubexpression, prefix: &str) -> Vec<String> {
    pse.circle_set
        .iter()
        .map(|j| format!("{prefix}{j}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;
    use crate::weyl::positive_subexpression;

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    fn rat_matrix(rows: &[&[i64]]) -> FieldMatrix<Rational> {
        FieldMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::integer(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn example_911() -> FieldMatrix<RatFunc> {
        let v = Permutation::from_word(5, &[1]).unwrap();
        let pse = positive_subexpression(&v, &[2, 1, 4, 3, 2]).unwrap();
        mr_product(&pse, "t")
    }

    #[test]
    fn mr_product_example() {
        let x = example_911();
        assert_eq!(x.det().unwrap(), RatFunc::one());
        let u = Permutation::from_word(5, &[2]).unwrap();
        let m = u_echelon(&x, &u, 2).unwrap();
        let want = [
            ["1", "0"],
            ["t5/t1", "1/t1"],
            ["0", "1"],
            ["-t4*t5", "0"],
            ["-t3*t4*t5", "0"],
        ];
        for (i, row) in want.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(m.body.get(i, j), &rf(e), "entry ({i},{j})");
            }
        }
        let again = u_echelon(&m.sl_completion(), &u, 2).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn generic_echelon_minors() {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let m = EchelonMatrix::generic(&u, 2, "x").unwrap();
        assert_eq!(flag_minor(&m.body, &[1, 4]).unwrap(), RatFunc::one());
        assert_eq!(flag_minor(&m.body, &[2, 3]).unwrap(), rf("x1*x4 - x2*x3"));
        let x = m.sl_completion();
        assert_eq!(x.det().unwrap(), RatFunc::one());
        assert_eq!(m.periodic_row(5), vec![rf("-1"), RatFunc::zero()]);
    }

    #[test]
    fn signed_matrix_examples() {
        let s1 = Permutation::simple(3, 1).unwrap();
        assert_eq!(
            signed_matrix::<Rational>(&s1),
            rat_matrix(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]])
        );
        let w = Permutation::from_word(3, &[2, 1]).unwrap();
        assert_eq!(
            signed_matrix::<Rational>(&w),
            rat_matrix(&[&[0, -1, 0], &[0, 0, -1], &[1, 0, 0]])
        );
        let g: FieldMatrix<Rational> =
            generator(GeneratorKind::S, 3, 1, &Rational::zero()).unwrap();
        assert_eq!(g, signed_matrix(&s1));
    }

    #[test]
    fn schur_recomposes() {
        let x = rat_matrix(&[&[2, 1, 0, 3], &[1, 1, 4, 0], &[0, 5, 1, 1], &[7, 0, 2, 1]]);
        let f = schur_factorize(&x, 2).unwrap();
        let back = f.lower.mul(&f.levi).unwrap().mul(&f.upper).unwrap();
        assert_eq!(back, x);
        let inv = levi_inverse(&f.levi, 2).unwrap();
        assert_eq!(inv.mul(&f.levi).unwrap(), FieldMatrix::identity(4));
    }

    #[test]
    fn det_paths_agree() {
        let m = FieldMatrix::from_fn(9, 9, |i, j| {
            Rational::integer(((i * 7 + j * 3) % 11) as i64 - 4 + (i == j) as i64)
        });
        let sub: Vec<usize> = (0..8).collect();
        let small = m.submatrix(&sub, &sub).unwrap();
        let (red, piv) = small.rref();
        assert_eq!(piv.len() == 8, !small.det().unwrap().is_zero());
        assert!(red.rows() == 8);
        let big = m.det().unwrap();
        let mut expanded = Rational::zero();
        for c in 0..9 {
            let rows: Vec<usize> = (1..9).collect();
            let cols: Vec<usize> = (0..9).filter(|&x| x != c).collect();
            let term = m
                .get(0, c)
                .times(&m.submatrix(&rows, &cols).unwrap().det().unwrap());
            expanded = if c % 2 == 0 {
                expanded.plus(&term)
            } else {
                expanded.minus(&term)
            };
        }
        assert_eq!(big, expanded);
    }
}
