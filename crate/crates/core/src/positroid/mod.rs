//! Positroid stratification data for `Gr(k,n)`: bounded affine permutations
//! of matrices, Grassmann necklaces, rank conditions, `u`-truncations,
//! Le-diagrams and total nonnegativity tests.
//!
//! An `n × k` matrix is read as a `ℤ × k` matrix with `M_{i+n} = (−1)^{k−1} M_i`.

mod lediagram;

use std::collections::BTreeMap;

use serde::Serialize;

pub use lediagram::{le_diagram, LeBox, LeDiagram};

use crate::exactalg::{AlgError, Field, RatFunc, Rational};
use crate::matrixcore::{EchelonMatrix, FieldMatrix, MatrixError};
use crate::weyl::{AffinePermutation, WeylError};

/// Errors raised by positroid computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PositroidError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("{0} is not a bounded affine permutation")]
    NotBounded(String),
    #[error("bad row set: {0}")]
    BadRowSet(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

/// Row `i ∈ ℤ` of an `n × k` matrix extended by `M_{i+n} = (−1)^{k−1} M_i`.
pub fn periodic_row<F: Field>(m: &FieldMatrix<F>, i: i64) -> Vec<F> {
    let n = m.rows() as i64;
    let r = (i - 1).rem_euclid(n) as usize;
    let q = (i - 1).div_euclid(n);
    let row = m.row(r);
    if m.cols().is_multiple_of(2) && q.rem_euclid(2) == 1 {
        row.iter().map(Field::negate).collect()
    } else {
        row
    }
}

/// The matrix with rows `M_i` for `i` in `rows`, in order.
pub fn periodic_rows<F: Field>(
    m: &FieldMatrix<F>,
    rows: impl IntoIterator<Item = i64>,
) -> FieldMatrix<F> {
    let data: Vec<Vec<F>> = rows.into_iter().map(|i| periodic_row(m, i)).collect();
    if data.is_empty() {
        return FieldMatrix::zeros(0, m.cols());
    }
    FieldMatrix::from_rows(data).expect("equal row lengths")
}

/// `rank(M; a, b)`: the rank of the rows `[a, b)`.
pub fn window_rank<F: Field>(m: &FieldMatrix<F>, a: i64, b: i64) -> usize {
    if b <= a {
        return 0;
    }
    periodic_rows(m, a..b).rank()
}

fn check_full_rank<F: Field>(m: &FieldMatrix<F>) -> Result<(), PositroidError> {
    let k = m.cols();
    let rank = m.rank();
    if k == 0 || k >= m.rows() || rank != k {
        return Err(PositroidError::RankDeficient { rank, k });
    }
    Ok(())
}

/// `f_M(i)`: the least `j ≥ i` with `M_i ∈ span(M_{i+1}, …, M_j)`.
pub fn f_of_matrix<F: Field>(m: &FieldMatrix<F>) -> Result<AffinePermutation, PositroidError> {
    check_full_rank(m)?;
    let n = m.rows() as i64;
    let mut window = Vec::with_capacity(m.rows());
    for i in 1..=n {
        let row = periodic_row(m, i);
        if row.iter().all(Field::is_zero) {
            window.push(i);
            continue;
        }
        // Smallest j with rank(rows i+1..=j) = rank(rows i..=j).
        let j = (i + 1..=i + n)
            .find(|&j| window_rank(m, i + 1, j + 1) == window_rank(m, i, j + 1))
            .expect("rows i+1..i+n span the column space");
        window.push(j);
    }
    let f = AffinePermutation::new(window)?;
    if !f.is_bounded() {
        return Err(PositroidError::NotBounded(f.to_string()));
    }
    Ok(f)
}

/// A Grassmann necklace `(I_1, …, I_n)` with `I_a ⊂ [a, a+n)`, each sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GrassmannNecklace {
    windows: Vec<Vec<i64>>,
}

impl GrassmannNecklace {
    pub fn n(&self) -> usize {
        self.windows.len()
    }

    pub fn k(&self) -> usize {
        self.windows.first().map_or(0, Vec::len)
    }

    pub fn windows(&self) -> &[Vec<i64>] {
        &self.windows
    }

    /// `I_a` for any `a ∈ ℤ`, using `I_{a+n} = I_a + n`.
    pub fn at(&self, a: i64) -> Vec<i64> {
        let n = self.n() as i64;
        let r = (a - 1).rem_euclid(n);
        let q = (a - 1).div_euclid(n);
        self.windows[r as usize].iter().map(|x| x + q * n).collect()
    }
}

impl std::fmt::Display for GrassmannNecklace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .windows
            .iter()
            .map(|w| {
                format!(
                    "{{{}}}",
                    w.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `I_a = {h(i) : i < a, h(i) ≥ a}` for `a ∈ [n]`.
pub fn necklace(h: &AffinePermutation) -> Result<GrassmannNecklace, PositroidError> {
    if !h.is_bounded() {
        return Err(PositroidError::NotBounded(h.to_string()));
    }
    let n = h.n() as i64;
    let windows = (1..=n)
        .map(|a| {
            let mut s: Vec<i64> = (a - n..a).map(|i| h.at(i)).filter(|&x| x >= a).collect();
            s.sort_unstable();
            s
        })
        .collect();
    Ok(GrassmannNecklace { windows })
}

/// The necklace of a matrix: `I_a` is the lexicographically minimal set of
/// independent rows in `[a, a+n)`, found greedily.
pub fn necklace_of_matrix<F: Field>(
    m: &FieldMatrix<F>,
) -> Result<GrassmannNecklace, PositroidError> {
    check_full_rank(m)?;
    let n = m.rows() as i64;
    let windows = (1..=n)
        .map(|a| {
            let mut chosen: Vec<i64> = Vec::new();
            for i in a..a + n {
                let mut trial = chosen.clone();
                trial.push(i);
                if periodic_rows(m, trial.iter().copied()).rank() == trial.len() {
                    chosen = trial;
                }
            }
            chosen
        })
        .collect();
    Ok(GrassmannNecklace { windows })
}

/// Outcome of the two independent positroid membership tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMembership {
    /// Greedy lexicographically minimal bases agree with the necklace of `h`.
    pub necklace_route: bool,
    /// `k − rank(M; a, b) = r_{a,b}(h)` for all `a ≤ b`.
    pub rank_route: bool,
}

impl CellMembership {
    pub fn is_member(&self) -> bool {
        self.necklace_route && self.rank_route
    }

    pub fn routes_agree(&self) -> bool {
        self.necklace_route == self.rank_route
    }
}

/// Tests whether the column span of `m` lies in the open positroid variety of `h`.
pub fn cell_membership<F: Field>(
    m: &FieldMatrix<F>,
    h: &AffinePermutation,
) -> Result<CellMembership, PositroidError> {
    if m.rows() != h.n() {
        return Err(PositroidError::SizeMismatch(format!(
            "{} rows vs n = {}",
            m.rows(),
            h.n()
        )));
    }
    let necklace_route = necklace_of_matrix(m)? == necklace(h)?;
    let k = m.cols();
    let n = h.n() as i64;
    let rank_route =
        (1..=n).all(|a| (a..=a + n).all(|b| k - window_rank(m, a, b) == h.rank_count(a, b)));
    Ok(CellMembership {
        necklace_route,
        rank_route,
    })
}

/// The `u`-truncation `tr^a_u(M)`: rows `[a, a+n)` of `M`, with each entry
/// below the pivot of its column replaced by zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncatedWindow<F: Field> {
    pub a: i64,
    pub matrix: FieldMatrix<F>,
}

impl<F: Field> TruncatedWindow<F> {
    /// Row labels `a, …, a+n−1`.
    pub fn labels(&self) -> Vec<i64> {
        (self.a..self.a + self.matrix.rows() as i64).collect()
    }
}

/// `θ_{a,j}`: the integer in `[a, a+n)` congruent to `u(j)` modulo `n`.
pub fn pivot_position(n: usize, u_j: usize, a: i64) -> i64 {
    let n = n as i64;
    a + (u_j as i64 - a).rem_euclid(n)
}

pub fn u_truncation<F: Field>(m: &EchelonMatrix<F>, a: i64) -> TruncatedWindow<F> {
    let n = m.n;
    let mut out = periodic_rows(&m.body, a..a + n as i64);
    for j in 0..m.k {
        let theta = pivot_position(n, m.u.at(j + 1), a);
        for i in a..a + n as i64 {
            if i > theta {
                out.set((i - a) as usize, j, F::zero());
            }
        }
    }
    TruncatedWindow { a, matrix: out }
}

/// `Δ^{tr,a}_S(M)`: the minor of `tr^a_u(M)` on rows `S ⊂ [a, a+n)`.
pub fn trunc_minor<F: Field>(m: &EchelonMatrix<F>, a: i64, s: &[i64]) -> Result<F, PositroidError> {
    let n = m.n as i64;
    if s.len() != m.k
        || s.iter().any(|&i| i < a || i >= a + n)
        || s.windows(2).any(|p| p[0] >= p[1])
    {
        return Err(PositroidError::BadRowSet(format!(
            "{s:?} is not an increasing {}-subset of [{a}, {})",
            m.k,
            a + n
        )));
    }
    let tr = u_truncation(m, a);
    let rows: Vec<usize> = s.iter().map(|&i| (i - a) as usize).collect();
    let cols: Vec<usize> = (0..m.k).collect();
    Ok(tr.matrix.submatrix(&rows, &cols)?.det()?)
}

/// `Δ^{tr,a}_{I_a}(M)` for `a ∈ [n]` along the necklace of `g`.
pub fn necklace_trunc_minors<F: Field>(
    m: &EchelonMatrix<F>,
    g: &AffinePermutation,
) -> Result<Vec<F>, PositroidError> {
    let neck = necklace(g)?;
    (1..=m.n as i64)
        .map(|a| trunc_minor(m, a, &neck.at(a)))
        .collect()
}

/// All maximal minors of an `n × k` matrix, indexed by increasing row sets (1-based).
pub fn maximal_minors<F: Field>(
    m: &FieldMatrix<F>,
) -> Result<Vec<(Vec<usize>, F)>, PositroidError> {
    let (n, k) = (m.rows(), m.cols());
    let mut out = Vec::new();
    let mut s: Vec<usize> = (0..k).collect();
    let cols: Vec<usize> = (0..k).collect();
    loop {
        let det = m.submatrix(&s, &cols)?.det()?;
        out.push((s.iter().map(|x| x + 1).collect(), det));
        let Some(i) = (0..k).rev().find(|&i| s[i] < n - k + i) else {
            break;
        };
        s[i] += 1;
        for j in i + 1..k {
            s[j] = s[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Total nonnegativity of the column span: all maximal minors are `≥ 0`
/// after scaling so that the lexicographically first nonzero minor is positive.
pub fn tnn_check(m: &FieldMatrix<Rational>) -> Result<bool, PositroidError> {
    let minors = maximal_minors(m)?;
    let Some(sign) = minors
        .iter()
        .find(|(_, d)| !d.is_zero())
        .map(|(_, d)| d.signum())
    else {
        return Ok(false);
    };
    Ok(minors.iter().all(|(_, d)| d.signum() * sign >= 0))
}

/// Positivity data for the truncations of a numeric echelon matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityReport {
    /// `tr^a_u(M)` is totally nonnegative, for `a = 1..n`.
    pub windows_tnn: Vec<bool>,
    /// `Δ^{tr,a}_{I_a}(M)` along the necklace of `g`.
    pub necklace_minors: Vec<Rational>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.windows_tnn.iter().all(|&b| b)
            && self.necklace_minors.iter().all(Rational::is_positive)
    }
}

pub fn cell_positivity_check(
    m: &EchelonMatrix<Rational>,
    g: &AffinePermutation,
) -> Result<PositivityReport, PositroidError> {
    let windows_tnn = (1..=m.n as i64)
        .map(|a| tnn_check(&u_truncation(m, a).matrix))
        .collect::<Result<Vec<_>, _>>()?;
    let necklace_minors = necklace_trunc_minors(m, g)?;
    Ok(PositivityReport {
        windows_tnn,
        necklace_minors,
    })
}

/// Evaluates a symbolic matrix at a point.
pub fn eval_matrix(
    m: &FieldMatrix<RatFunc>,
    point: &BTreeMap<String, Rational>,
) -> Result<FieldMatrix<Rational>, PositroidError> {
    Ok(m.try_map(|x| x.eval(point))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{f_vw, tau_k, Permutation};

    fn ap(w: &[i64]) -> AffinePermutation {
        AffinePermutation::new(w.to_vec()).unwrap()
    }

    fn q(rows: &[[i64; 2]]) -> FieldMatrix<Rational> {
        FieldMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::integer(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn sets(neck: &GrassmannNecklace) -> Vec<Vec<i64>> {
        neck.windows().to_vec()
    }

    #[test]
    fn necklace_examples() {
        assert_eq!(
            sets(&necklace(&ap(&[2, 4, 5, 7])).unwrap()),
            vec![vec![1, 3], vec![2, 3], vec![3, 4], vec![4, 5]]
        );
        assert_eq!(
            sets(&necklace(&ap(&[3, 4, 7, 5, 6])).unwrap()),
            vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 7], vec![5, 7]]
        );
        let g = necklace(&ap(&[2, 4, 8, 5, 6])).unwrap();
        assert_eq!(g.to_string(), "[{1,3},{2,3},{3,4},{4,8},{5,8}]");
        assert_eq!(g.at(6), vec![6, 8]);
    }

    #[test]
    fn f_of_matrix_examples() {
        let m = q(&[[1, 0], [0, 1], [1, 0], [0, 1]]);
        assert_eq!(f_of_matrix(&m).unwrap(), tau_k(4, 2));
        let z = q(&[[1, 0], [0, 0], [0, 1], [1, 1]]);
        assert_eq!(f_of_matrix(&z).unwrap().at(2), 2);
        let bad = q(&[[1, 0], [2, 0], [3, 0], [4, 0]]);
        assert!(matches!(
            f_of_matrix(&bad),
            Err(PositroidError::RankDeficient { .. })
        ));
    }

    #[test]
    fn membership_routes_agree() {
        let m = q(&[[1, 0], [1, 1], [0, 1], [-1, 0]]);
        let f = f_of_matrix(&m).unwrap();
        let yes = cell_membership(&m, &f).unwrap();
        assert!(yes.is_member());
        let other = if f == tau_k(4, 2) {
            ap(&[2, 4, 5, 7])
        } else {
            tau_k(4, 2)
        };
        let no = cell_membership(&m, &other).unwrap();
        assert!(no.routes_agree());
        assert!(!no.is_member());
    }

    #[test]
    fn tnn_examples() {
        assert!(tnn_check(&q(&[[1, 0], [0, 1], [0, 0], [0, 0]])).unwrap());
        let mixed = q(&[[1, 0], [0, 1], [1, 0], [0, -1]]);
        assert!(!tnn_check(&mixed).unwrap());
    }

    #[test]
    fn f_vw_necklace_head() {
        for (w, _) in crate::weyl::grassmannian_reps(4, 2).unwrap() {
            for v in Permutation::all(4) {
                if !v.bruhat_leq(&w).unwrap() {
                    continue;
                }
                let f = f_vw(&v, &w, 2).unwrap();
                let neck = necklace(&f).unwrap();
                let vk: Vec<i64> = v.subset(2).iter().map(|&x| x as i64).collect();
                assert_eq!(neck.windows()[0], vk);
                let wk: Vec<usize> = (1..=4).filter(|&i| f.at(i as i64) > 4).collect();
                assert_eq!(wk, w.subset(2));
            }
        }
    }
}
