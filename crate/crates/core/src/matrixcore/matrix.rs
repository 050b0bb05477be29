use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::MatrixError;
use crate::exactalg::Field;

/// A dense matrix over an exact field. Indices are 0-based.
#[derive(Clone, PartialEq)]
pub struct FieldMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Largest size for which determinants use the division-free subset expansion.
const SUBSET_DET_MAX: usize = 8;

impl<F: Field> FieldMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(MatrixError::Shape("ragged rows".into()));
        }
        Ok(FieldMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds an `rows × cols` matrix from a function of `(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        FieldMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Applies `f` entrywise.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> FieldMatrix<G> {
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Applies a fallible `f` entrywise.
    pub fn try_map<G: Field, E>(
        &self,
        f: impl Fn(&F) -> Result<G, E>,
    ) -> Result<FieldMatrix<G>, E> {
        let data: Result<Vec<G>, E> = self.data.iter().map(f).collect();
        Ok(FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Shape("addition of different shapes".into()));
        }
        Ok(FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.plus(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.add(&other.map(|x| x.negate()))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.times(c))
    }

    /// Submatrix with the given 0-based row and column indices, in the given order.
    pub fn submatrix(&self, rowset: &[usize], colset: &[usize]) -> Result<Self, MatrixError> {
        if rowset.iter().any(|&r| r >= self.rows) || colset.iter().any(|&c| c >= self.cols) {
            return Err(MatrixError::Index("submatrix index out of range".into()));
        }
        Ok(Self::from_fn(rowset.len(), colset.len(), |i, j| {
            self.get(rowset[i], colset[j]).clone()
        }))
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Determinant. Uses a division-free expansion over column subsets for
    /// small sizes and fraction-producing elimination above that.
    pub fn det(&self) -> Result<F, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Shape(format!(
                "determinant of non-square {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        if n <= SUBSET_DET_MAX {
            return Ok(self.subset_det());
        }
        let (_, _, det) = self.eliminate(true);
        Ok(det)
    }

    fn subset_det(&self) -> F {
        let n = self.rows;
        let full = (1usize << n) - 1;
        let mut layer: Vec<(usize, F)> = vec![(0, F::one())];
        for r in 0..n {
            let mut next: std::collections::BTreeMap<usize, F> = std::collections::BTreeMap::new();
            for (mask, val) in &layer {
                for c in 0..n {
                    if mask & (1 << c) != 0 {
                        continue;
                    }
                    let a = self.get(r, c);
                    if a.is_zero() {
                        continue;
                    }
                    let above = (mask >> (c + 1)).count_ones();
                    let mut term = a.times(val);
                    if above % 2 == 1 {
                        term = term.negate();
                    }
                    let nm = mask | (1 << c);
                    match next.get_mut(&nm) {
                        Some(prev) => *prev = prev.plus(&term),
                        None => {
                            next.insert(nm, term);
                        }
                    }
                }
            }
            layer = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if layer.is_empty() {
                return F::zero();
            }
        }
        layer
            .into_iter()
            .find(|(m, _)| *m == full)
            .map(|(_, v)| v)
            .unwrap_or_else(F::zero)
    }

    /// Row-reduces a copy; returns (reduced matrix, pivot columns, determinant
    /// of the leading square block when `want_det`).
    fn eliminate(&self, want_det: bool) -> (Self, Vec<usize>, F) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut det = F::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                if want_det {
                    det = F::zero();
                }
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                det = det.negate();
            }
            let piv = m.get(r, c).clone();
            det = det.times(&piv);
            let inv = piv.inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).times(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).minus(&f.times(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        if want_det && pivots.len() < m.rows.min(m.cols) {
            det = F::zero();
        }
        (m, pivots, det)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (m, p, _) = self.eliminate(false);
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix; errors if singular.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(n));
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(MatrixError::Singular);
        }
        red.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>())
    }

    /// A basis of the right null space `{x : self·x = 0}` as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (red, piv) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !piv.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = red.get(r, free).negate();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self·X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.inverse()?.mul(rhs)
    }

    /// Blank-as-zero ASCII rendering with aligned columns.
    pub fn pretty(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let v = self.get(i, j);
                        if v.is_zero() {
                            String::new()
                        } else {
                            v.to_string()
                        }
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .max()
                    .unwrap_or(0)
                    .max(1)
            })
            .collect();
        let mut out = String::new();
        for row in &cells {
            out.push('[');
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{:>w$}", c, w = widths[j]));
            }
            out.push_str("]\n");
        }
        out
    }
}

impl<F: Field> fmt::Debug for FieldMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Serialize for FieldMatrix<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        let mut st = s.serialize_struct("FieldMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}
