use serde::Serialize;

use super::{LaurentMatrix, LoopError};
use crate::exactalg::Field;
use crate::matrixcore::FieldMatrix;
use crate::weyl::AffinePermutation;

/// Lattice rank invariants of an invertible Laurent matrix `x`.
///
/// `r_{a,b}(x) = dim(L_a ∩ E_b)` where `L_a` is spanned by the columns `j < a`
/// of `x̃` and `E_b` by the coordinate vectors `e_i`, `i ≥ b`. The Schubert rank
/// `s_{a,b}(x)` is the rank of `x̃` on rows `≥ b` and columns `< a`.
#[derive(Clone, Debug)]
pub struct LatticeRanks<F: Field> {
    x: LaurentMatrix<F>,
    /// `max (i − j)` over the support of `x̃`.
    down: i64,
    /// `max (i − j)` over the support of `x̃⁻¹`.
    inv_down: i64,
    /// Half-width of the scan used to read permutations off the ranks.
    reach: i64,
}

impl<F: Field> LatticeRanks<F> {
    pub fn new(x: &LaurentMatrix<F>) -> Result<Self, LoopError> {
        let inv = x.inverse()?;
        let (down, up) = x.band();
        let (inv_down, inv_up) = inv.band();
        let reach = down.max(0) + up.max(0) + inv_down.max(0) + inv_up.max(0) + x.n() as i64 + 1;
        Ok(LatticeRanks {
            x: x.clone(),
            down,
            inv_down,
            reach,
        })
    }

    pub fn matrix(&self) -> &LaurentMatrix<F> {
        &self.x
    }

    fn block(&self, rows: std::ops::Range<i64>, cols: std::ops::Range<i64>) -> FieldMatrix<F> {
        let (r0, c0) = (rows.start, cols.start);
        let nr = (rows.end - rows.start).max(0) as usize;
        let nc = (cols.end - cols.start).max(0) as usize;
        FieldMatrix::from_fn(nr, nc, |i, j| self.x.tilde(r0 + i as i64, c0 + j as i64))
    }

    /// `r_{a,b}(x)`.
    pub fn r(&self, a: i64, b: i64) -> usize {
        // Every e_i with i < a − inv_down lies in L_a, so coordinates below
        // `low` can be discarded once `low ≤ b`.
        let low = (a - self.inv_down).min(b);
        let high = a + self.down;
        if high <= low {
            return 0;
        }
        let p = self.block(low..high, low - self.down..a);
        if p.cols() == 0 {
            return 0;
        }
        let cut = b.min(high);
        let top = self.block(low..cut, low - self.down..a);
        p.rank() - if top.rows() == 0 { 0 } else { top.rank() }
    }

    /// `s_{a,b}(x)`.
    pub fn s(&self, a: i64, b: i64) -> usize {
        let m = self.block(b..a + self.down, b - self.down..a);
        if m.rows() == 0 || m.cols() == 0 {
            0
        } else {
            m.rank()
        }
    }

    fn row(&self, i: i64, cols: std::ops::Range<i64>) -> Vec<F> {
        cols.map(|j| self.x.tilde(i, j)).collect()
    }

    /// `r_{a,b}` for `b ∈ [b0, b1]`, from one incremental elimination per side.
    pub fn r_profile(&self, a: i64, b0: i64, b1: i64) -> Vec<usize> {
        let low0 = a - self.inv_down;
        let high = a + self.down;
        let start = low0.min(b0);
        let cols = start - self.down..a;
        if cols.is_empty() || high <= start {
            return vec![0; (b1 - b0 + 1) as usize];
        }
        let top = prefix_ranks((low0..high).map(|i| self.row(i, cols.clone())));
        let bottom = prefix_ranks((start..high).rev().map(|i| self.row(i, cols.clone())));
        (b0..=b1)
            .map(|b| {
                if b >= low0 {
                    if high <= low0 {
                        0
                    } else {
                        top[top.len() - 1] - top[(b.min(high) - low0) as usize]
                    }
                } else if high <= b {
                    0
                } else {
                    bottom[(high - b) as usize]
                }
            })
            .collect()
    }

    /// `s_{a,b}` for `b ∈ [b0, b1]`.
    pub fn s_profile(&self, a: i64, b0: i64, b1: i64) -> Vec<usize> {
        let high = a + self.down;
        let cols = b0 - self.down..a;
        if cols.is_empty() || high <= b0 {
            return vec![0; (b1 - b0 + 1) as usize];
        }
        let bottom = prefix_ranks((b0..high).rev().map(|i| self.row(i, cols.clone())));
        (b0..=b1)
            .map(|b| {
                if high <= b {
                    0
                } else {
                    bottom[(high - b) as usize]
                }
            })
            .collect()
    }

    fn read_permutation(
        &self,
        profile: impl Fn(i64, i64, i64) -> Vec<usize>,
        what: &str,
    ) -> Result<AffinePermutation, LoopError> {
        let n = self.x.n() as i64;
        let reach = self.reach;
        let table: Vec<Vec<usize>> = (1..=n + 1)
            .map(|a| profile(a, 1 - reach - 1, n + reach + 1))
            .collect();
        let rank = |a: i64, b: i64| table[(a - 1) as usize][(b + reach) as usize];
        let mut window = Vec::with_capacity(n as usize);
        for a in 1..=n {
            let hits: Vec<i64> = (a - reach..=a + reach)
                .filter(|&b| rank(a + 1, b) == rank(a, b) + 1)
                .collect();
            let Some(&top) = hits.last() else {
                return Err(LoopError::LabelNotFound(format!(
                    "{what}: no jump at column {a}"
                )));
            };
            window.push(top);
        }
        let f = AffinePermutation::new(window.clone()).map_err(|_| {
            LoopError::LabelNotFound(format!("{what}: {window:?} is not an affine permutation"))
        })?;
        for a in 1..=n {
            for b in a - reach..=a + reach {
                if rank(a, b) != f.rank_count(a, b) {
                    return Err(LoopError::LabelNotFound(format!(
                        "{what}: rank profile of {f} fails at ({a},{b})"
                    )));
                }
            }
        }
        Ok(f)
    }

    /// The `h` with `x·B(𝒜₊) ∈ X̊_h`, read from `r_{a,b}`.
    pub fn opposite_label(&self) -> Result<AffinePermutation, LoopError> {
        self.read_permutation(
            |a, b0, b1| self.r_profile(a, b0, b1),
            "opposite Schubert cell",
        )
    }

    /// The `f` with `x·B(𝒜₊) ∈ X̊^f`, read from `s_{a,b}`.
    pub fn schubert_label(&self) -> Result<AffinePermutation, LoopError> {
        self.read_permutation(|a, b0, b1| self.s_profile(a, b0, b1), "Schubert cell")
    }

    /// Whether `r_{a,b}(x) = r_{a,b}(h)` on a window covering all of `x` and `h`.
    pub fn matches_opposite(&self, h: &AffinePermutation) -> bool {
        let n = self.x.n() as i64;
        let reach = self.reach + h.max_displacement();
        (1..=n).all(|a| (a - reach..=a + reach).all(|b| self.r(a, b) == h.rank_count(a, b)))
    }
}

/// `out[t]` is the rank of the first `t` rows.
fn prefix_ranks<F: Field>(rows: impl Iterator<Item = Vec<F>>) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<F>)> = Vec::new();
    let mut out = vec![0];
    for mut row in rows {
        for (p, b) in &basis {
            if !row[*p].is_zero() {
                let c = row[*p].clone();
                for (x, y) in row.iter_mut().zip(b) {
                    *x = x.minus(&c.times(y));
                }
            }
        }
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            let inv = row[p].inverse().expect("nonzero pivot");
            let row = row.iter().map(|x| x.times(&inv)).collect();
            basis.push((p, row));
        }
        out.push(basis.len());
    }
    out
}

/// Affine cell labels of a point `y·B(𝒜₊)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineCellLabel {
    /// Opposite Schubert cell `X̊_h`.
    pub h: Option<AffinePermutation>,
    /// Schubert cell `X̊^f`.
    pub f: Option<AffinePermutation>,
    /// Cell `𝓒_g`, when it was tested.
    pub g: Option<AffinePermutation>,
}

/// Locates `y·B(𝒜₊)` in its Richardson cell, requiring `h ≤ f_upper`.
pub fn richardson_locate<F: Field>(
    y: &LaurentMatrix<F>,
    f_upper: &AffinePermutation,
) -> Result<AffineCellLabel, LoopError> {
    let ranks = LatticeRanks::new(y)?;
    let h = ranks.opposite_label()?;
    let f = ranks.schubert_label()?;
    if !h.bruhat_leq(f_upper)? || !h.bruhat_leq(&f)? {
        return Err(LoopError::LabelNotFound(format!(
            "{h} is not below {f_upper} and {f}"
        )));
    }
    Ok(AffineCellLabel {
        h: Some(h),
        f: Some(f),
        g: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{RatFunc, Rational};
    use crate::loopgroup::{affine_matrix, snider_phi};
    use crate::matrixcore::EchelonMatrix;
    use crate::weyl::{tau_k, tau_u_lambda, Permutation};

    fn example_y(x: [i64; 4]) -> LaurentMatrix<Rational> {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let r = |v: i64| Rational::integer(v);
        let body = FieldMatrix::from_rows(vec![
            vec![r(1), r(0)],
            vec![r(x[0]), r(x[1])],
            vec![r(x[2]), r(x[3])],
            vec![r(0), r(1)],
        ])
        .unwrap();
        snider_phi(&EchelonMatrix::new(u, body).unwrap())
    }

    #[test]
    fn permutation_matrices_are_labelled_by_themselves() {
        for w in [
            [2, 4, 5, 7],
            [3, 4, 5, 6],
            [5, 6, 3, 4],
            [1, 2, 7, 8],
            [4, 3, 5, 6],
        ] {
            let f = AffinePermutation::new(w.to_vec()).unwrap();
            let x: LaurentMatrix<Rational> = affine_matrix(&f);
            let ranks = LatticeRanks::new(&x).unwrap();
            assert_eq!(ranks.opposite_label().unwrap(), f);
            assert_eq!(ranks.schubert_label().unwrap(), f);
        }
    }

    #[test]
    fn profiles_match_pointwise_ranks() {
        let mut points: Vec<LaurentMatrix<Rational>> =
            [[2, 3, 5, 7], [0, 1, 1, 0], [1, 0, 0, 1], [2, 4, 1, 2]]
                .into_iter()
                .map(example_y)
                .collect();
        for w in [vec![5, 6, 3, 4], vec![1, 2, 7, 8], vec![-1, 4, 8, 5, 4]] {
            if let Ok(f) = AffinePermutation::new(w) {
                points.push(affine_matrix(&f));
            }
        }
        for (idx, y) in points.iter().enumerate() {
            let x = idx;
            let ranks = LatticeRanks::new(y).unwrap();
            for a in -2..=7 {
                let (b0, b1) = (a - 9, a + 9);
                let r = ranks.r_profile(a, b0, b1);
                let s = ranks.s_profile(a, b0, b1);
                for b in b0..=b1 {
                    let idx = (b - b0) as usize;
                    assert_eq!(r[idx], ranks.r(a, b), "r({a},{b}) at {x:?}");
                    assert_eq!(s[idx], ranks.s(a, b), "s({a},{b}) at {x:?}");
                }
            }
        }
    }

    #[test]
    fn example_cells() {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let top = tau_u_lambda(&u, 2);
        let generic = richardson_locate(&example_y([2, 3, 5, 7]), &top).unwrap();
        assert_eq!(generic.h, Some(tau_k(4, 2)));
        assert_eq!(generic.f, Some(top.clone()));
        let special = richardson_locate(&example_y([2, 0, 5, 7]), &top).unwrap();
        assert_eq!(
            special.h,
            Some(AffinePermutation::new(vec![2, 4, 5, 7]).unwrap())
        );
    }

    #[test]
    fn symbolic_example_is_generic() {
        let u = Permutation::from_word(4, &[3, 2]).unwrap();
        let y = snider_phi(&EchelonMatrix::<RatFunc>::generic(&u, 2, "x").unwrap());
        let label = richardson_locate(&y, &tau_u_lambda(&u, 2)).unwrap();
        assert_eq!(label.h, Some(tau_k(4, 2)));
    }

    #[test]
    fn below_diagonal_rank_step() {
        let ranks = LatticeRanks::new(&example_y([2, 3, 5, 7])).unwrap();
        for a in 1..=8i64 {
            for b in a - 6..a {
                assert_eq!(ranks.r(a, b), ranks.r(a, b + 1) + 1, "a={a} b={b}");
            }
        }
    }
}
