use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::WeylError;
use crate::exactalg::Field;
use crate::matrixcore::FieldMatrix;

/// A permutation of `[n]` in one-line notation (values are 1-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates one-line notation `images = (w(1),…,w(n))`.
    pub fn new(images: Vec<usize>) -> Result<Self, WeylError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(WeylError::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition `s_i`, `1 ≤ i < n`.
    pub fn simple(n: usize, i: usize) -> Result<Self, WeylError> {
        let mut p = Self::identity(n);
        p.swap_positions(i)?;
        Ok(p)
    }

    /// The product `s_{i_1}⋯s_{i_l}` (not required to be reduced).
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self, WeylError> {
        let mut p = Self::identity(n);
        for &i in word {
            p.swap_positions(i)?;
        }
        Ok(p)
    }

    /// The longest element `w_0 = [n, n−1, …, 1]`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// All permutations of `[n]` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // Next lexicographic permutation.
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                break;
            };
            let j = (i + 1..n)
                .rev()
                .find(|&j| cur[j] > cur[i])
                .expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Right multiplication by `s_i` in place (swaps positions `i`, `i+1`).
    fn swap_positions(&mut self, i: usize) -> Result<(), WeylError> {
        let n = self.images.len();
        if i == 0 || i >= n {
            return Err(WeylError::BadGenerator { index: i, n });
        }
        self.images.swap(i - 1, i);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, WeylError> {
        self.check_size(other)?;
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `w·s_i`.
    pub fn mul_simple_right(&self, i: usize) -> Result<Permutation, WeylError> {
        let mut p = self.clone();
        p.swap_positions(i)?;
        Ok(p)
    }

    /// `s_i·w`.
    pub fn mul_simple_left(&self, i: usize) -> Result<Permutation, WeylError> {
        let n = self.n();
        if i == 0 || i >= n {
            return Err(WeylError::BadGenerator { index: i, n });
        }
        let images = self
            .images
            .iter()
            .map(|&x| {
                if x == i {
                    i + 1
                } else if x == i + 1 {
                    i
                } else {
                    x
                }
            })
            .collect();
        Ok(Permutation { images })
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Whether `ℓ(w s_i) < ℓ(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        i >= 1 && i < self.n() && self.images[i - 1] > self.images[i]
    }

    /// A reduced word, obtained by repeatedly stripping the last right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.n()).rev().find(|&i| w.has_right_descent(i)) {
            w.images.swap(i - 1, i);
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// Bruhat order `self ≤ other` by rank-matrix dominance:
    /// `#{a ≤ i : u(a) ≥ j} ≤ #{a ≤ i : w(a) ≥ j}` for all `i, j`.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool, WeylError> {
        self.check_size(other)?;
        Ok(self.bruhat_leq_unchecked(other))
    }

    pub(crate) fn bruhat_leq_unchecked(&self, other: &Permutation) -> bool {
        let n = self.n();
        let mut cu = vec![0i32; n + 2];
        let mut cw = vec![0i32; n + 2];
        for i in 0..n {
            // Add the i-th values to suffix counts.
            cu[1..=self.images[i]].iter_mut().for_each(|c| *c += 1);
            cw[1..=other.images[i]].iter_mut().for_each(|c| *c += 1);
            if (1..=n).any(|j| cu[j] > cw[j]) {
                return false;
            }
        }
        true
    }

    /// The sorted set `w[k] = {w(1),…,w(k)}`.
    pub fn subset(&self, k: usize) -> Vec<usize> {
        let mut s = self.images[..k].to_vec();
        s.sort_unstable();
        s
    }

    /// Whether `w` is a minimal-length representative of `w W_J`, `J = [n−1]∖{k}`.
    pub fn is_grassmannian(&self, k: usize) -> bool {
        (1..self.n())
            .filter(|&i| i != k)
            .all(|i| !self.has_right_descent(i))
    }

    /// Parses one-line notation `[1,4,2,3]`, a word such as `s3s2`, or `id`.
    /// Words and `id` need the ambient `n`.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Permutation, WeylError> {
        let t = s.trim();
        if t.starts_with('[') {
            let body = t.trim_start_matches('[').trim_end_matches(']');
            let images: Result<Vec<usize>, _> = body
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<usize>())
                .collect();
            let images = images.map_err(|e| WeylError::Parse(format!("{t}: {e}")))?;
            let p = Permutation::new(images)?;
            if let Some(n) = n {
                if p.n() != n {
                    return Err(WeylError::SizeMismatch(p.n(), n));
                }
            }
            return Ok(p);
        }
        let n = n.ok_or_else(|| WeylError::Parse(format!("`{t}` needs an explicit n")))?;
        if t == "id" || t == "e" || t.is_empty() {
            return Ok(Permutation::identity(n));
        }
        let mut word = Vec::new();
        for part in t.split(['s', ' ', '_', '*']).filter(|x| !x.is_empty()) {
            word.push(
                part.parse::<usize>()
                    .map_err(|e| WeylError::Parse(format!("{t}: {e}")))?,
            );
        }
        Permutation::from_word(n, &word)
    }

    fn check_size(&self, other: &Permutation) -> Result<(), WeylError> {
        if self.n() != other.n() {
            Err(WeylError::SizeMismatch(self.n(), other.n()))
        } else {
            Ok(())
        }
    }

    /// Nonzero entries `(row, col, sign)` of the signed matrix `ẇ`, 1-based.
    pub fn signed_entries(&self) -> Vec<(usize, usize, i64)> {
        let w = &self.images;
        (0..w.len())
            .map(|j| {
                let inv = (0..j).filter(|&i| w[i] > w[j]).count();
                (w[j], j + 1, if inv % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }
}

/// The signed permutation matrix `ẇ`: entry `(w(j), j)` equals
/// `(−1)^{#{i<j : w(i) > w(j)}}`; all other entries vanish.
pub fn signed_matrix<F: Field>(w: &Permutation) -> FieldMatrix<F> {
    let n = w.n();
    let mut m = FieldMatrix::zeros(n, n);
    for (r, c, s) in w.signed_entries() {
        m.set(r - 1, c - 1, F::from_int(s));
    }
    m
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Permutation::parse(&s, None).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, word: &[usize]) -> Permutation {
        Permutation::from_word(n, word).unwrap()
    }

    #[test]
    fn word_convention() {
        // u = s3 s2 in S_4 sends 2 -> s3(3) = 4.
        assert_eq!(w(4, &[3, 2]).images(), &[1, 4, 2, 3]);
        assert_eq!(w(4, &[3, 2]).subset(2), vec![1, 4]);
        assert_eq!(w(5, &[2]).subset(2), vec![1, 3]);
    }

    #[test]
    fn bruhat_small() {
        assert!(w(3, &[1]).bruhat_leq(&w(3, &[2, 1])).unwrap());
        assert!(!w(3, &[1]).bruhat_leq(&w(3, &[2])).unwrap());
        let w0 = Permutation::longest(4);
        assert_eq!(
            Permutation::all(4)
                .iter()
                .filter(|u| u.bruhat_leq(&w0).unwrap())
                .count(),
            24
        );
        assert!(Permutation::identity(3)
            .bruhat_leq(&Permutation::identity(4))
            .is_err());
    }

    #[test]
    fn reduced_word_roundtrip() {
        for p in Permutation::all(4) {
            let word = p.reduced_word();
            assert_eq!(word.len(), p.length());
            assert_eq!(Permutation::from_word(4, &word).unwrap(), p);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            Permutation::parse("[3,4,1,2]", None).unwrap().images(),
            &[3, 4, 1, 2]
        );
        assert_eq!(
            Permutation::parse("s3s2", Some(4)).unwrap().images(),
            &[1, 4, 2, 3]
        );
        assert!(Permutation::parse("[1,1]", None).is_err());
        assert!(Permutation::parse("s2", None).is_err());
    }
}
