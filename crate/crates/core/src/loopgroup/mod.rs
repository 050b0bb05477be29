//! The polynomial loop group `GL_n(ℂ[z, z⁻¹])` at desk scale.
//!
//! A Laurent matrix `x` is identified with the periodic `ℤ × ℤ` matrix `x̃`
//! determined by `x̃_{i+n,j+n} = x̃_{i,j}` and `x_{i,j}(z) = Σ_d x̃_{i,j+dn} z^d`
//! for `i, j ∈ [n]`. Products of Laurent matrices correspond to products of
//! the periodic matrices, so all `ℤ × ℤ` statements are evaluated on Laurent
//! entries through [`LaurentMatrix::tilde`].

mod factor;
mod fomin_shapiro;
mod lattice;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use factor::{birkhoff_factorize, cg_membership, BirkhoffFactors, CgMembership};
pub use fomin_shapiro::{
    cone_norm, fs_nu, inversion_positions, schubert_normal_form, snider_inverse, torus_scale,
    FsSplit,
};
pub use lattice::{richardson_locate, AffineCellLabel, LatticeRanks};

use crate::exactalg::{AlgError, Field, LaurentPoly};
use crate::matrixcore::{EchelonMatrix, FieldMatrix, MatrixError};
use crate::positroid::PositroidError;
use crate::weyl::{AffinePermutation, WeylError};

/// Errors raised by loop-group computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoopError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Positroid(#[from] PositroidError),
    #[error("determinant {0} is not a nonzero Laurent monomial")]
    NotInvertible(String),
    #[error("window [{lo}, {hi}] does not contain the band of the matrix")]
    WindowTooSmall { lo: i64, hi: i64 },
    #[error("no Birkhoff factorization: {0}")]
    NotFactorable(String),
    #[error("cell label could not be determined: {0}")]
    LabelNotFound(String),
    #[error("linear system has no unique solution: {0}")]
    NoUniqueSolution(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

/// Splits an integer index into a residue in `[1, n]` and a period count.
pub(crate) fn split_index(i: i64, n: usize) -> (usize, i64) {
    let n = n as i64;
    ((i - 1).rem_euclid(n) as usize + 1, (i - 1).div_euclid(n))
}

/// An `n × n` matrix of Laurent polynomials in `z`.
#[derive(Clone, PartialEq)]
pub struct LaurentMatrix<F: Field> {
    inner: FieldMatrix<LaurentPoly<F>>,
}

impl<F: Field> LaurentMatrix<F> {
    pub fn from_matrix(inner: FieldMatrix<LaurentPoly<F>>) -> Result<Self, LoopError> {
        if inner.rows() != inner.cols() {
            return Err(LoopError::SizeMismatch(format!(
                "{}x{} is not square",
                inner.rows(),
                inner.cols()
            )));
        }
        Ok(LaurentMatrix { inner })
    }

    /// Entries with only constant terms.
    pub fn constant(m: &FieldMatrix<F>) -> Result<Self, LoopError> {
        Self::from_matrix(m.map(|x| LaurentPoly::constant(x.clone())))
    }

    pub fn identity(n: usize) -> Self {
        LaurentMatrix {
            inner: FieldMatrix::identity(n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        LaurentMatrix {
            inner: FieldMatrix::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.inner.rows()
    }

    pub fn inner(&self) -> &FieldMatrix<LaurentPoly<F>> {
        &self.inner
    }

    /// Entry `(r, c)`, 1-based.
    pub fn entry(&self, r: usize, c: usize) -> &LaurentPoly<F> {
        self.inner.get(r - 1, c - 1)
    }

    pub fn set_entry(&mut self, r: usize, c: usize, v: LaurentPoly<F>) {
        self.inner.set(r - 1, c - 1, v);
    }

    /// `x̃_{i,j}` for `i, j ∈ ℤ`.
    pub fn tilde(&self, i: i64, j: i64) -> F {
        let n = self.n();
        let (r, m) = split_index(i, n);
        let (c, d) = split_index(j - m * n as i64, n);
        self.entry(r, c).coeff(d)
    }

    /// Sets `x̃_{i,j}` and all its translates.
    pub fn set_tilde(&mut self, i: i64, j: i64, v: F) {
        let n = self.n();
        let (r, m) = split_index(i, n);
        let (c, d) = split_index(j - m * n as i64, n);
        let old = self.entry(r, c);
        let pairs: Vec<(i64, F)> = old
            .terms()
            .filter(|(e, _)| *e != d)
            .map(|(e, x)| (e, x.clone()))
            .chain([(d, v)])
            .collect();
        self.set_entry(r, c, LaurentPoly::from_pairs(pairs));
    }

    /// Nonzero entries of `x̃` as `(i, j, value)` with `i ∈ [1, n]`.
    pub fn tilde_support(&self) -> Vec<(i64, i64, F)> {
        let n = self.n();
        let mut out = Vec::new();
        for r in 1..=n {
            for c in 1..=n {
                for (d, v) in self.entry(r, c).terms() {
                    out.push((r as i64, c as i64 + d * n as i64, v.clone()));
                }
            }
        }
        out
    }

    /// `(max (i − j), max (j − i))` over nonzero entries of `x̃`.
    pub fn band(&self) -> (i64, i64) {
        let support = self.tilde_support();
        let down = support.iter().map(|(i, j, _)| i - j).max().unwrap_or(0);
        let up = support.iter().map(|(i, j, _)| j - i).max().unwrap_or(0);
        (down, up)
    }

    /// Smallest and largest `z`-degree among all entries.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut lo = None::<i64>;
        let mut hi = None::<i64>;
        for r in 1..=self.n() {
            for c in 1..=self.n() {
                let e = self.entry(r, c);
                if let (Some(a), Some(b)) = (e.min_degree(), e.max_degree()) {
                    lo = Some(lo.map_or(a, |x| x.min(a)));
                    hi = Some(hi.map_or(b, |x| x.max(b)));
                }
            }
        }
        lo.zip(hi)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LoopError> {
        Ok(LaurentMatrix {
            inner: self.inner.mul(&other.inner)?,
        })
    }

    pub fn det(&self) -> Result<LaurentPoly<F>, LoopError> {
        Ok(self.inner.det()?)
    }

    /// `val(x) = j` where `det x = c·z^{−j}`.
    pub fn val(&self) -> Result<i64, LoopError> {
        let det = self.det()?;
        det.as_monomial()
            .map(|(_, d)| -d)
            .ok_or_else(|| LoopError::NotInvertible(det.to_string()))
    }

    /// Inverse via the adjugate; the determinant must be a Laurent monomial.
    pub fn inverse(&self) -> Result<Self, LoopError> {
        let n = self.n();
        let det = self.det()?;
        let dinv = det
            .inverse()
            .map_err(|_| LoopError::NotInvertible(det.to_string()))?;
        let mut out = FieldMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&x| x != c).collect();
                let cols: Vec<usize> = (0..n).filter(|&x| x != r).collect();
                let minor = self.inner.submatrix(&rows, &cols)?.det()?;
                let cof = if (r + c) % 2 == 0 {
                    minor
                } else {
                    minor.negate()
                };
                out.set(r, c, cof.times(&dinv));
            }
        }
        Ok(LaurentMatrix { inner: out })
    }

    /// Applies a fallible map to every coefficient.
    pub fn map_coeffs<G: Field>(
        &self,
        f: impl Fn(&F) -> Result<G, AlgError>,
    ) -> Result<LaurentMatrix<G>, LoopError> {
        let inner = self.inner.try_map(|e| e.map_coeffs(|_, c| f(c)))?;
        Ok(LaurentMatrix { inner })
    }

    /// Whether `x̃` is lower unitriangular.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.tilde_support()
            .iter()
            .all(|(i, j, v)| i > j || (i == j && v.is_one()))
            && (1..=self.n() as i64).all(|i| self.tilde(i, i).is_one())
    }

    /// Whether `x̃` is upper triangular with nonzero diagonal.
    pub fn is_upper_with_unit_diagonal(&self) -> bool {
        self.tilde_support().iter().all(|(i, j, _)| i <= j)
            && (1..=self.n() as i64).all(|i| !self.tilde(i, i).is_zero())
    }

    /// Blank-as-zero rendering.
    pub fn pretty(&self) -> String {
        self.inner.pretty()
    }
}

impl<F: Field> fmt::Debug for LaurentMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.inner, f)
    }
}

impl<F: Field> Serialize for LaurentMatrix<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.n();
        let entries: Vec<Vec<BTreeMap<i64, String>>> = (1..=n)
            .map(|r| {
                (1..=n)
                    .map(|c| {
                        self.entry(r, c)
                            .terms()
                            .map(|(d, v)| (d, v.to_string()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("LaurentMatrix", 2)?;
        st.serialize_field("n", &n)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// A finite block `x̃_{i,j}` for `i, j ∈ [lo, hi]` of a periodic matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicMatrix<F: Field> {
    pub n: usize,
    pub lo: i64,
    pub hi: i64,
    pub block: FieldMatrix<F>,
}

impl<F: Field> PeriodicMatrix<F> {
    pub fn get(&self, i: i64, j: i64) -> Option<&F> {
        let range = self.lo..=self.hi;
        (range.contains(&i) && range.contains(&j)).then(|| {
            self.block
                .get((i - self.lo) as usize, (j - self.lo) as usize)
        })
    }
}

/// The block of `x̃` on `[lo, hi]²`. The window must be wide enough that every
/// column in `[1, n]` has its full support inside it.
pub fn to_periodic<F: Field>(
    x: &LaurentMatrix<F>,
    lo: i64,
    hi: i64,
) -> Result<PeriodicMatrix<F>, LoopError> {
    let n = x.n() as i64;
    let (down, up) = x.band();
    if lo > 1 - up || hi < n + down {
        return Err(LoopError::WindowTooSmall { lo, hi });
    }
    let size = (hi - lo + 1) as usize;
    let block = FieldMatrix::from_fn(size, size, |a, b| x.tilde(lo + a as i64, lo + b as i64));
    Ok(PeriodicMatrix {
        n: x.n(),
        lo,
        hi,
        block,
    })
}

/// `ḟ`: the Laurent matrix with `x̃_{i,j} = 1` iff `i = f(j)`.
pub fn affine_matrix<F: Field>(f: &AffinePermutation) -> LaurentMatrix<F> {
    let n = f.n();
    let mut x = LaurentMatrix::zeros(n);
    for j in 1..=n as i64 {
        x.set_tilde(f.at(j), j, F::one());
    }
    x
}

/// The Snider matrix `φ_u(M)`: for `j ∉ u[k]` column `j` is `e_j`; for
/// `j = u(s)` the entry `(i, j)` is `−M_{i,s}` when `i > j` and `M_{i,s}/z` when `i ≤ j`.
pub fn snider_phi<F: Field>(m: &EchelonMatrix<F>) -> LaurentMatrix<F> {
    let n = m.n;
    let mut y = LaurentMatrix::zeros(n);
    let pivots: Vec<usize> = (1..=m.k).map(|s| m.u.at(s)).collect();
    for j in 1..=n {
        match pivots.iter().position(|&p| p == j) {
            None => y.set_entry(j, j, LaurentPoly::one()),
            Some(s) => {
                for i in 1..=n {
                    let v = m.body.get(i - 1, s).clone();
                    let e = if i > j {
                        LaurentPoly::constant(v.negate())
                    } else {
                        LaurentPoly::monomial(v, -1)
                    };
                    y.set_entry(i, j, e);
                }
            }
        }
    }
    y
}
