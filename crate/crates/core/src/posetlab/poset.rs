use serde::Serialize;

use super::PosetError;

/// Rows of a dense boolean relation packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Indices `j` with `(i, j)` set.
    fn ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.row(i).iter().enumerate().flat_map(move |(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| w * 64 + b)
                .filter(move |&j| j < n)
        })
    }

    /// Number of `j` with both `(a, j)` and `(b, j)` set in `self` and `other`.
    fn and_count(&self, a: usize, other: &BitMatrix, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(other.row(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }
}

/// A finite poset stored as a dense order relation, with an optional rank function.
#[derive(Clone, Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    /// `up[i][j]` iff `elements[i] ≤ elements[j]`.
    up: BitMatrix,
    /// `down[i][j]` iff `elements[j] ≤ elements[i]`.
    down: BitMatrix,
    rank: Option<Vec<i64>>,
}

/// An element of a poset with a new minimum `0̂` adjoined.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Hat<T> {
    Bottom,
    Elem(T),
}

/// Results of [`FinitePoset::analytics`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetAnalytics {
    pub graded: bool,
    pub thin: bool,
    pub eulerian: bool,
    /// `μ(x, y)` for every comparable pair `x ≤ y`, as `(x, y, μ)` index triples.
    pub mobius: Vec<(usize, usize, i64)>,
    /// Human-readable description of the first failed property, if any.
    pub first_violation: Option<String>,
}

impl<T: Clone> FinitePoset<T> {
    /// Builds a poset from a relation `leq(a, b)`; checks the partial-order axioms.
    pub fn from_relation(
        elements: Vec<T>,
        leq: impl Fn(&T, &T) -> bool,
    ) -> Result<Self, PosetError> {
        let n = elements.len();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if i == j || leq(&elements[i], &elements[j]) {
                    up.set(i, j);
                }
            }
        }
        Self::from_bits(elements, up, None)
    }

    /// Builds a poset from a precomputed relation given as a function of indices.
    pub fn from_index_relation(
        elements: Vec<T>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, PosetError> {
        let n = elements.len();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if i == j || leq(i, j) {
                    up.set(i, j);
                }
            }
        }
        Self::from_bits(elements, up, None)
    }

    pub(crate) fn from_bits(
        elements: Vec<T>,
        up: BitMatrix,
        rank: Option<Vec<i64>>,
    ) -> Result<Self, PosetError> {
        let n = elements.len();
        let mut down = BitMatrix::new(n);
        for i in 0..n {
            for j in up.ones(i) {
                down.set(j, i);
            }
        }
        for i in 0..n {
            for j in up.ones(i) {
                if i != j && up.get(j, i) {
                    return Err(PosetError::NotAPartialOrder(format!(
                        "elements {i} and {j} are mutually below"
                    )));
                }
                // Transitivity: up(j) ⊆ up(i).
                if up.row(j).iter().zip(up.row(i)).any(|(a, b)| a & !b != 0) {
                    return Err(PosetError::NotAPartialOrder(format!(
                        "transitivity fails through {i} ≤ {j}"
                    )));
                }
            }
        }
        if let Some(r) = &rank {
            if r.len() != n {
                return Err(PosetError::NotAPartialOrder(
                    "rank vector has the wrong length".into(),
                ));
            }
        }
        Ok(FinitePoset {
            elements,
            up,
            down,
            rank,
        })
    }

    /// Attaches a rank function; [`FinitePoset::analytics`] checks it against covers.
    pub fn with_rank(mut self, rank: Vec<i64>) -> Result<Self, PosetError> {
        if rank.len() != self.len() {
            return Err(PosetError::NotAPartialOrder(
                "rank vector has the wrong length".into(),
            ));
        }
        self.rank = Some(rank);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn rank(&self) -> Option<&[i64]> {
        self.rank.as_deref()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up.get(i, j)
    }

    /// Elements `y ≥ x`.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        self.up.ones(x).collect()
    }

    /// Elements `y ≤ x`.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        self.down.ones(x).collect()
    }

    /// Size of the closed interval `[x, y]` (0 if `x ≰ y`).
    pub fn interval_size(&self, x: usize, y: usize) -> usize {
        if !self.leq(x, y) {
            return 0;
        }
        self.up.and_count(x, &self.down, y)
    }

    /// Cover relations `(x, y)` with `x ⋖ y`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up.ones(x) {
                if x != y && self.interval_size(x, y) == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Maximal elements.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.up.ones(x).count() == 1)
            .collect()
    }

    /// Minimal elements.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.down.ones(x).count() == 1)
            .collect()
    }

    /// A copy with a new minimum `0̂` at index 0 and every rank shifted up by one.
    pub fn with_bottom(&self) -> FinitePoset<Hat<T>> {
        let n = self.len() + 1;
        let mut up = BitMatrix::new(n);
        for j in 0..n {
            up.set(0, j);
        }
        for i in 0..self.len() {
            for j in self.up.ones(i) {
                up.set(i + 1, j + 1);
            }
        }
        let mut elements = vec![Hat::Bottom];
        elements.extend(self.elements.iter().cloned().map(Hat::Elem));
        let rank = self.rank.as_ref().map(|r| {
            let mut out = vec![0];
            out.extend(r.iter().map(|x| x + 1));
            out
        });
        FinitePoset::from_bits(elements, up, rank)
            .expect("adjoining a minimum preserves the axioms")
    }

    /// A linear extension: indices sorted by the size of their down-sets.
    fn linear_extension(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&i| self.down.ones(i).count());
        idx
    }

    /// Möbius function on all comparable pairs by the recursion
    /// `μ(x,x) = 1`, `μ(x,y) = −Σ_{x ≤ z < y} μ(x,z)`.
    pub fn mobius(&self) -> Vec<(usize, usize, i64)> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut mu = vec![0i64; self.len()];
        for x in 0..self.len() {
            let ups: Vec<usize> = order.iter().copied().filter(|&y| self.leq(x, y)).collect();
            for &y in &ups {
                mu[y] = if y == x {
                    1
                } else {
                    -ups.iter()
                        .filter(|&&z| z != y && self.leq(z, y))
                        .map(|&z| mu[z])
                        .sum::<i64>()
                };
                out.push((x, y, mu[y]));
            }
        }
        out.sort_unstable();
        out
    }

    /// Derives a rank function from the Hasse diagram if one exists, with the
    /// minimal elements of each component normalized to rank 0 where possible.
    pub fn derive_rank(&self) -> Option<Vec<i64>> {
        let n = self.len();
        let covers = self.covers();
        let mut adj = vec![Vec::new(); n];
        for &(x, y) in &covers {
            adj[x].push((y, 1i64));
            adj[y].push((x, -1i64));
        }
        let mut rank: Vec<Option<i64>> = vec![None; n];
        for start in 0..n {
            if rank[start].is_some() {
                continue;
            }
            let mut comp = vec![start];
            rank[start] = Some(0);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let rx = rank[x].expect("visited");
                for &(y, d) in &adj[x] {
                    match rank[y] {
                        None => {
                            rank[y] = Some(rx + d);
                            comp.push(y);
                            stack.push(y);
                        }
                        Some(ry) if ry != rx + d => return None,
                        Some(_) => {}
                    }
                }
            }
            let low = comp
                .iter()
                .map(|&i| rank[i].expect("visited"))
                .min()
                .unwrap_or(0);
            for &i in &comp {
                rank[i] = rank[i].map(|r| r - low);
            }
        }
        rank.into_iter().collect()
    }

    /// Graded, thin and Eulerian checks plus the Möbius function.
    ///
    /// Graded: every cover raises the rank by exactly one (the stored rank if
    /// present, else a derived one). Thin: every interval of rank 2 has four
    /// elements. Eulerian: `μ(x,y) = (−1)^{rank(y)−rank(x)}` for all `x ≤ y`.
    pub fn analytics(&self) -> PosetAnalytics {
        let mut first_violation = None;
        let mut note = |msg: String| {
            if first_violation.is_none() {
                first_violation = Some(msg);
            }
        };
        let covers = self.covers();
        let rank = match &self.rank {
            Some(r) => {
                let bad = covers.iter().find(|&&(x, y)| r[y] != r[x] + 1);
                if let Some(&(x, y)) = bad {
                    note(format!(
                        "cover {x} ⋖ {y} changes rank from {} to {}",
                        r[x], r[y]
                    ));
                    None
                } else {
                    Some(r.clone())
                }
            }
            None => {
                let d = self.derive_rank();
                if d.is_none() {
                    note("no rank function is compatible with the covers".into());
                }
                d
            }
        };
        let graded = rank.is_some();
        let mobius = self.mobius();
        let (mut thin, mut eulerian) = (graded, graded);
        if let Some(r) = &rank {
            for &(x, y, mu) in &mobius {
                let d = r[y] - r[x];
                if d == 2 && self.interval_size(x, y) != 4 {
                    if thin {
                        note(format!(
                            "rank-2 interval [{x},{y}] has {} elements",
                            self.interval_size(x, y)
                        ));
                    }
                    thin = false;
                }
                let want = if d % 2 == 0 { 1 } else { -1 };
                if mu != want {
                    if eulerian {
                        note(format!("μ({x},{y}) = {mu}, expected {want}"));
                    }
                    eulerian = false;
                }
            }
        }
        PosetAnalytics {
            graded,
            thin,
            eulerian,
            mobius,
            first_violation,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean_lattice(atoms: usize) -> FinitePoset<u32> {
        let elems: Vec<u32> = (0..1u32 << atoms).collect();
        FinitePoset::from_relation(elems, |a, b| a & !b == 0).unwrap()
    }

    #[test]
    fn boolean_lattice_is_eulerian() {
        let p = boolean_lattice(3);
        let a = p.analytics();
        assert!(a.graded && a.thin && a.eulerian, "{:?}", a.first_violation);
        assert_eq!(p.covers().len(), 12);
    }

    #[test]
    fn chain_is_not_thin() {
        let p = FinitePoset::from_relation(vec![0, 1, 2], |a, b| a <= b).unwrap();
        let a = p.analytics();
        assert!(a.graded);
        assert!(!a.thin);
        assert!(!a.eulerian);
        assert!(a.mobius.contains(&(0, 2, 0)));
    }

    #[test]
    fn rejects_non_orders() {
        let err = FinitePoset::from_relation(vec![0, 1], |_, _| true);
        assert!(matches!(err, Err(PosetError::NotAPartialOrder(_))));
        let cyc = FinitePoset::from_relation(vec![0, 1, 2], |a, b| (*b == a + 1) || a == b);
        assert!(cyc.is_err());
    }

    #[test]
    fn adjoined_bottom() {
        let p = FinitePoset::from_relation(vec![0, 1], |a, b| a == b)
            .unwrap()
            .with_rank(vec![1, 1])
            .unwrap();
        let h = p.with_bottom();
        assert_eq!(h.rank().unwrap(), &[0, 2, 2]);
        assert_eq!(h.minimal(), vec![0]);
        assert_eq!(h.covers(), vec![(0, 1), (0, 2)]);
    }
}
