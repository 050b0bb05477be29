use serde::Serialize;

use super::PositroidError;
use crate::posetlab::QJElement;
use crate::weyl::{positive_subexpression, Permutation};

/// Content of one box of a Le-diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeBox {
    /// A position of the positive subexpression where `v` stays put.
    Dot,
    /// A position where `v` takes the simple reflection.
    Plus,
}

/// A Le-diagram inside the `k × (n−k)` box.
///
/// Row `i` (1-based, top to bottom) holds boxes `(i, 1), …, (i, λ_i)`; box
/// `(i, j)` carries the simple reflection `s_{k+j−i}`. Reading boxes right to
/// left, bottom to top gives a reduced word for `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeDiagram {
    pub n: usize,
    pub k: usize,
    /// Row lengths from top to bottom.
    pub shape: Vec<usize>,
    pub boxes: Vec<Vec<LeBox>>,
}

impl LeDiagram {
    /// The box coordinates `(i, j)` in reading order.
    pub fn reading_order(shape: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in (1..=shape.len()).rev() {
            for j in (1..=shape[i - 1]).rev() {
                out.push((i, j));
            }
        }
        out
    }

    /// Simple reflection label of box `(i, j)`.
    pub fn label(&self, i: usize, j: usize) -> usize {
        self.k + j - i
    }

    pub fn dot_count(&self) -> usize {
        self.boxes
            .iter()
            .flatten()
            .filter(|b| **b == LeBox::Dot)
            .count()
    }

    /// Rows of `·` (dot) and `+` (plus) characters, top row first.
    pub fn ascii(&self) -> String {
        let mut out = String::new();
        for row in &self.boxes {
            let cells: Vec<&str> = row
                .iter()
                .map(|b| if *b == LeBox::Dot { "·" } else { "+" })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Rows of the box labels, e.g. `s2 s3 s4`.
    pub fn label_ascii(&self) -> String {
        let mut out = String::new();
        for (i, len) in self.shape.iter().enumerate() {
            let cells: Vec<String> = (1..=*len)
                .map(|j| format!("s{}", self.label(i + 1, j)))
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Shape of `w ∈ W^J`: row `i` has length `a_{k+1−i} − (k+1−i)` for `w[k] = {a_1 < … < a_k}`.
pub fn le_shape(w: &Permutation, k: usize) -> Vec<usize> {
    let a = w.subset(k);
    (1..=k).map(|i| a[k - i] - (k + 1 - i)).collect()
}

/// The Le-diagram of the cell `(v, w)`: dots mark the positions of the
/// positive subexpression for `v` that do not take a reflection.
pub fn le_diagram(e: &QJElement) -> Result<LeDiagram, PositroidError> {
    let (n, k) = (e.n(), e.k);
    let shape = le_shape(&e.w, k);
    let order = LeDiagram::reading_order(&shape);
    let word: Vec<usize> = order.iter().map(|&(i, j)| k + j - i).collect();
    let pse = positive_subexpression(&e.v, &word)?;
    if pse.w() != e.w {
        return Err(PositroidError::SizeMismatch(format!(
            "diagram word {word:?} does not spell {}",
            e.w
        )));
    }
    let mut boxes: Vec<Vec<LeBox>> = shape.iter().map(|&l| vec![LeBox::Dot; l]).collect();
    for &pos in &pse.plus_set {
        let (i, j) = order[pos - 1];
        boxes[i - 1][j - 1] = LeBox::Plus;
    }
    Ok(LeDiagram { n, k, shape, boxes })
}
