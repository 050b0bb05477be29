use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Permutation, WeylError};

/// An element of the extended affine symmetric group: a bijection
/// `f: ℤ → ℤ` with `f(i+n) = f(i)+n`, stored by its window `f(1),…,f(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    /// Validates that residues are distinct modulo `n`.
    pub fn new(window: Vec<i64>) -> Result<Self, WeylError> {
        let n = window.len() as i64;
        if n == 0 {
            return Err(WeylError::InvalidWindow("empty window".into()));
        }
        let mut seen = vec![false; n as usize];
        for &x in &window {
            let r = x.rem_euclid(n) as usize;
            if seen[r] {
                return Err(WeylError::InvalidWindow(format!("{window:?}")));
            }
            seen[r] = true;
        }
        Ok(AffinePermutation { window })
    }

    /// The periodic extension of a finite permutation.
    pub fn from_finite(w: &Permutation) -> Self {
        AffinePermutation {
            window: w.images().iter().map(|&x| x as i64).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `f(i)` for any integer `i`.
    pub fn at(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let r = (i - 1).rem_euclid(n);
        let q = (i - 1).div_euclid(n);
        self.window[r as usize] + q * n
    }

    /// `f⁻¹(j)` for any integer `j`.
    pub fn inverse_at(&self, j: i64) -> i64 {
        let n = self.n() as i64;
        let pos = self
            .window
            .iter()
            .position(|&x| (x - j).rem_euclid(n) == 0)
            .expect("bijective window");
        let shift = (j - self.window[pos]) / n;
        pos as i64 + 1 + shift * n
    }

    /// `av(f) = (1/n) Σ (f(i) − i)`.
    pub fn av(&self) -> i64 {
        let n = self.n() as i64;
        let s: i64 = self
            .window
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (i as i64 + 1))
            .sum();
        s.div_euclid(n)
    }

    /// Coxeter length `Σ_{1≤i<j≤n} |⌊(f(j) − f(i))/n⌋|`.
    pub fn length(&self) -> usize {
        let n = self.n() as i64;
        let w = &self.window;
        let mut total = 0i64;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                total += (w[j] - w[i]).div_euclid(n).abs();
            }
        }
        total as usize
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &AffinePermutation) -> Result<AffinePermutation, WeylError> {
        if self.n() != other.n() {
            return Err(WeylError::SizeMismatch(self.n(), other.n()));
        }
        Ok(AffinePermutation {
            window: other.window.iter().map(|&j| self.at(j)).collect(),
        })
    }

    pub fn inverse(&self) -> AffinePermutation {
        let n = self.n() as i64;
        AffinePermutation {
            window: (1..=n).map(|j| self.inverse_at(j)).collect(),
        }
    }

    /// Maximal displacement `max |f(i) − i|`.
    pub fn max_displacement(&self) -> i64 {
        self.window
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - i as i64 - 1).abs())
            .max()
            .unwrap_or(0)
    }

    /// `r_{a,b}(f) = #{i < a : f(i) ≥ b}`.
    pub fn rank_count(&self, a: i64, b: i64) -> usize {
        let d = self.max_displacement();
        (b - d..a).filter(|&i| self.at(i) >= b).count()
    }

    /// Bounded: `i ≤ f(i) ≤ i + n` for all `i`.
    pub fn is_bounded(&self) -> bool {
        let n = self.n() as i64;
        self.window.iter().enumerate().all(|(i, &x)| {
            let i = i as i64 + 1;
            i <= x && x <= i + n
        })
    }

    /// Bruhat order by affine rank dominance:
    /// `f ≤ g` iff `r_{a,b}(f) ≤ r_{a,b}(g)` for all `a, b`.
    pub fn bruhat_leq(&self, other: &AffinePermutation) -> Result<bool, WeylError> {
        if self.n() != other.n() {
            return Err(WeylError::SizeMismatch(self.n(), other.n()));
        }
        if self.av() != other.av() {
            return Err(WeylError::AverageMismatch(self.av(), other.av()));
        }
        let n = self.n() as i64;
        let d = self.max_displacement().max(other.max_displacement());
        for a in 1..=n {
            for b in a - d - 1..=a + d + 1 {
                if self.rank_count(a, b) > other.rank_count(a, b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `f ∘ t_{a,b}`: swaps the values at positions `a + mn` and `b + mn`.
    pub fn swap_positions(&self, a: i64, b: i64) -> AffinePermutation {
        let n = self.n() as i64;
        let fa = self.at(a);
        let fb = self.at(b);
        let mut window = self.window.clone();
        for (pos, val) in [(a, fb), (b, fa)] {
            let r = (pos - 1).rem_euclid(n);
            let q = (pos - 1).div_euclid(n);
            window[r as usize] = val - q * n;
        }
        AffinePermutation { window }
    }

    /// Right multiplication by the affine simple reflection `s_i`, `0 ≤ i < n`.
    pub fn mul_simple_right(&self, i: usize) -> Result<AffinePermutation, WeylError> {
        if i >= self.n() {
            return Err(WeylError::BadGenerator {
                index: i,
                n: self.n(),
            });
        }
        Ok(self.swap_positions(i as i64, i as i64 + 1))
    }

    /// Elements covered by `self` in Bruhat order (products with affine
    /// transpositions that lower the length by exactly one).
    pub fn covers_below(&self) -> Vec<AffinePermutation> {
        let n = self.n() as i64;
        let len = self.length();
        if len == 0 {
            return Vec::new();
        }
        let reach = 2 * self.max_displacement() + 1;
        let mut out = BTreeSet::new();
        for a in 1..=n {
            for b in a + 1..=a + reach {
                if (b - a) % n == 0 || self.at(a) < self.at(b) {
                    continue;
                }
                let g = self.swap_positions(a, b);
                if g.length() + 1 == len {
                    out.insert(g);
                }
            }
        }
        out.into_iter().collect()
    }

    /// The Bruhat lower interval `{g : g ≤ self}` by breadth-first search on covers.
    pub fn down_set(&self) -> BTreeSet<AffinePermutation> {
        let mut seen = BTreeSet::new();
        seen.insert(self.clone());
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(f) = queue.pop_front() {
            for g in f.covers_below() {
                if seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        seen
    }

    /// Parses window notation such as `[3,4,7,5,6]`.
    pub fn parse(s: &str) -> Result<AffinePermutation, WeylError> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let window: Result<Vec<i64>, _> = body
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<i64>())
            .collect();
        AffinePermutation::new(window.map_err(|e| WeylError::Parse(format!("{s}: {e}")))?)
    }
}

/// `τ_λ` for `λ = 1^k 0^{n−k}`: window `[1+n,…,k+n,k+1,…,n]`.
pub fn tau_lambda(n: usize, k: usize) -> AffinePermutation {
    let n_i = n as i64;
    let window = (1..=n as i64)
        .map(|i| if i <= k as i64 { i + n_i } else { i })
        .collect();
    AffinePermutation { window }
}

/// `τ_k = [1+k,…,n+k]`.
pub fn tau_k(n: usize, k: usize) -> AffinePermutation {
    AffinePermutation {
        window: (1..=n as i64).map(|i| i + k as i64).collect(),
    }
}

/// `τ_{uλ} = u τ_λ u⁻¹`.
pub fn tau_u_lambda(u: &Permutation, k: usize) -> AffinePermutation {
    let uu = AffinePermutation::from_finite(u);
    uu.compose(&tau_lambda(u.n(), k))
        .and_then(|x| x.compose(&uu.inverse()))
        .expect("same size")
}

/// `f_{v,w} = v τ_λ w⁻¹` for `(v,w) ∈ Q_J`.
pub fn f_vw(v: &Permutation, w: &Permutation, k: usize) -> Result<AffinePermutation, WeylError> {
    if v.n() != w.n() {
        return Err(WeylError::SizeMismatch(v.n(), w.n()));
    }
    if k == 0 || k >= w.n() {
        return Err(WeylError::InvalidParameters(format!(
            "k = {k} out of range"
        )));
    }
    if !w.is_grassmannian(k) {
        return Err(WeylError::NotGrassmannian {
            w: w.to_string(),
            k,
        });
    }
    let vv = AffinePermutation::from_finite(v);
    let ww = AffinePermutation::from_finite(w).inverse();
    vv.compose(&tau_lambda(v.n(), k))?.compose(&ww)
}

/// All bounded affine permutations with `av = k`, by direct enumeration of
/// windows with `i ≤ f(i) ≤ i + n`.
pub fn bounded_affine_permutations(k: usize, n: usize) -> Vec<AffinePermutation> {
    let n_i = n as i64;
    let mut out = Vec::new();
    let mut window = vec![0i64; n];
    let mut used = vec![false; n];
    fn rec(
        pos: usize,
        n: i64,
        k: i64,
        window: &mut Vec<i64>,
        used: &mut Vec<bool>,
        out: &mut Vec<AffinePermutation>,
    ) {
        if pos == n as usize {
            let s: i64 = window
                .iter()
                .enumerate()
                .map(|(i, &x)| x - i as i64 - 1)
                .sum();
            if s == k * n {
                out.push(AffinePermutation {
                    window: window.clone(),
                });
            }
            return;
        }
        let i = pos as i64 + 1;
        for x in i..=i + n {
            let r = x.rem_euclid(n) as usize;
            if !used[r] {
                used[r] = true;
                window[pos] = x;
                rec(pos + 1, n, k, window, used, out);
                used[r] = false;
            }
        }
    }
    rec(0, n_i, k as i64, &mut window, &mut used, &mut out);
    out.sort();
    out
}

/// `τ_λ (w^J)⁻¹`, which equals `τ_k`.
#[cfg(test)]
fn tau_k_via_wj(n: usize, k: usize) -> AffinePermutation {
    let wj = crate::weyl::max_grassmannian(n, k).expect("valid k");
    tau_lambda(n, k)
        .compose(&AffinePermutation::from_finite(&wj).inverse())
        .expect("same size")
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for AffinePermutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AffinePermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        AffinePermutation::parse(&s).map_err(serde::de::Error::custom)
    }
}
