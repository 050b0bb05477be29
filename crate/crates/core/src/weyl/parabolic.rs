use serde::Serialize;

use super::{Permutation, WeylError};

/// Factors `w = w1·w2` with `w1` minimal in `w W_J` and `w2 ∈ W_J`.
///
/// `j_set` lists the simple reflections generating `W_J`.
pub fn parabolic_factorize(
    w: &Permutation,
    j_set: &[usize],
) -> Result<(Permutation, Permutation), WeylError> {
    let n = w.n();
    if let Some(&bad) = j_set.iter().find(|&&i| i == 0 || i >= n) {
        return Err(WeylError::BadGenerator { index: bad, n });
    }
    // Positions i and i+1 share a block iff s_i ∈ W_J; sorting within blocks gives w1.
    let mut images = w.images().to_vec();
    let mut start = 0;
    for i in 1..=n {
        if i == n || !j_set.contains(&i) {
            images[start..i].sort_unstable();
            start = i;
        }
    }
    let w1 = Permutation::new(images)?;
    let w2 = w1.inverse().compose(w)?;
    Ok((w1, w2))
}

fn check_nk(n: usize, k: usize) -> Result<(), WeylError> {
    if k == 0 || k >= n {
        return Err(WeylError::InvalidParameters(format!(
            "need 1 ≤ k ≤ n−1, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// All `u ∈ W^J` paired with `u[k]`, ordered lexicographically by `u[k]`.
pub fn grassmannian_reps(n: usize, k: usize) -> Result<Vec<(Permutation, Vec<usize>)>, WeylError> {
    check_nk(n, k)?;
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (1..=k).collect();
    loop {
        let mut images = subset.clone();
        images.extend((1..=n).filter(|x| !subset.contains(x)));
        out.push((Permutation::new(images)?, subset.clone()));
        // Next k-subset in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| subset[i] < n - (k - 1 - i)) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    Ok(out)
}

/// The longest element `w_J = [k,…,1,n,…,k+1]` of `W_J`.
pub fn longest_parabolic(n: usize, k: usize) -> Result<Permutation, WeylError> {
    check_nk(n, k)?;
    let mut images: Vec<usize> = (1..=k).rev().collect();
    images.extend((k + 1..=n).rev());
    Permutation::new(images)
}

/// The maximal element `w^J = [n−k+1,…,n,1,…,n−k]` of `W^J`.
pub fn max_grassmannian(n: usize, k: usize) -> Result<Permutation, WeylError> {
    check_nk(n, k)?;
    let mut images: Vec<usize> = (n - k + 1..=n).collect();
    images.extend(1..=n - k);
    Permutation::new(images)
}

/// All elements of `W_J ≅ S_k × S_{n−k}`.
pub fn parabolic_subgroup(n: usize, k: usize) -> Result<Vec<Permutation>, WeylError> {
    check_nk(n, k)?;
    let mut out = Vec::new();
    for a in Permutation::all(k) {
        for b in Permutation::all(n - k) {
            let mut images: Vec<usize> = a.images().to_vec();
            images.extend(b.images().iter().map(|x| x + k));
            out.push(Permutation::new(images)?);
        }
    }
    Ok(out)
}

/// Demazure product `x * y = max{ab : a ≤ x, b ≤ y}`.
pub fn demazure_star(x: &Permutation, y: &Permutation) -> Result<Permutation, WeylError> {
    if x.n() != y.n() {
        return Err(WeylError::SizeMismatch(x.n(), y.n()));
    }
    let mut acc = x.clone();
    for i in y.reduced_word() {
        if !acc.has_right_descent(i) {
            acc = acc.mul_simple_right(i)?;
        }
    }
    Ok(acc)
}

/// Downward Demazure product `x ◁ y = min{xb : b ≤ y}`.
pub fn demazure_tri(x: &Permutation, y: &Permutation) -> Result<Permutation, WeylError> {
    if x.n() != y.n() {
        return Err(WeylError::SizeMismatch(x.n(), y.n()));
    }
    let mut acc = x.clone();
    for i in y.reduced_word() {
        if acc.has_right_descent(i) {
            acc = acc.mul_simple_right(i)?;
        }
    }
    Ok(acc)
}

/// The positive subexpression for `v` inside a reduced word for `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveSubexpression {
    /// Reduced word `(i_1,…,i_N)` for `w`.
    pub word: Vec<usize>,
    /// `v(0),…,v(N)` with `v(0) = id` and `v(N) = v`.
    pub v_prefix: Vec<Permutation>,
    /// Positions `j` (1-based) with `v(j) = v(j−1) s_{i_j}`.
    pub plus_set: Vec<usize>,
    /// Remaining positions, where `v(j) = v(j−1)`.
    pub circle_set: Vec<usize>,
}

impl PositiveSubexpression {
    pub fn n(&self) -> usize {
        self.v_prefix[0].n()
    }

    pub fn v(&self) -> &Permutation {
        self.v_prefix.last().expect("nonempty prefix list")
    }

    pub fn w(&self) -> Permutation {
        Permutation::from_word(self.n(), &self.word).expect("validated word")
    }
}

/// Builds the unique positive subexpression for `v` in `word`, scanning right
/// to left: `v(j−1) = v(j) s_{i_j}` when that lowers the length, else `v(j)`.
pub fn positive_subexpression(
    v: &Permutation,
    word: &[usize],
) -> Result<PositiveSubexpression, WeylError> {
    let n = v.n();
    let w = Permutation::from_word(n, word)?;
    if w.length() != word.len() {
        return Err(WeylError::NotReduced(word.to_vec()));
    }
    let below = || WeylError::NotBelow {
        v: v.to_string(),
        w: w.to_string(),
    };
    if !v.bruhat_leq(&w)? {
        return Err(below());
    }
    let big_n = word.len();
    let mut v_prefix = vec![v.clone(); big_n + 1];
    let mut plus_set = Vec::new();
    let mut cur = v.clone();
    for j in (1..=big_n).rev() {
        let i = word[j - 1];
        if cur.has_right_descent(i) {
            cur = cur.mul_simple_right(i)?;
            plus_set.push(j);
        }
        v_prefix[j - 1] = cur.clone();
    }
    if !cur.is_identity() {
        return Err(below());
    }
    plus_set.reverse();
    let circle_set = (1..=big_n).filter(|j| !plus_set.contains(j)).collect();
    Ok(PositiveSubexpression {
        word: word.to_vec(),
        v_prefix,
        plus_set,
        circle_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, word: &[usize]) -> Permutation {
        Permutation::from_word(n, word).unwrap()
    }

    #[test]
    fn parabolic_examples() {
        assert_eq!(max_grassmannian(4, 2).unwrap().images(), &[3, 4, 1, 2]);
        assert_eq!(longest_parabolic(4, 2).unwrap().images(), &[2, 1, 4, 3]);
        let wj = max_grassmannian(4, 2).unwrap();
        let (a, b) = parabolic_factorize(&wj, &[1, 3]).unwrap();
        assert_eq!(a, wj);
        assert!(b.is_identity());
        let id = Permutation::identity(4);
        assert_eq!(parabolic_factorize(&id, &[1, 3]).unwrap(), (id.clone(), id));
    }

    #[test]
    fn reps_count() {
        let reps = grassmannian_reps(5, 2).unwrap();
        assert_eq!(reps.len(), 10);
        assert!(reps
            .iter()
            .all(|(u, s)| u.is_grassmannian(2) && &u.subset(2) == s));
    }

    #[test]
    fn demazure_examples() {
        let s1 = w(3, &[1]);
        let s2 = w(3, &[2]);
        assert_eq!(demazure_star(&s1, &s1).unwrap(), s1);
        assert_eq!(demazure_star(&s1, &s2).unwrap(), w(3, &[1, 2]));
        assert_eq!(demazure_tri(&w(3, &[1, 2]), &s2).unwrap(), s1);
    }

    #[test]
    fn positive_subexpression_example() {
        let pse = positive_subexpression(&w(5, &[1]), &[2, 1, 4, 3, 2]).unwrap();
        assert_eq!(pse.plus_set, vec![2]);
        assert_eq!(pse.circle_set, vec![1, 3, 4, 5]);
        let err = positive_subexpression(&w(5, &[1]), &[2, 3]);
        assert!(matches!(err, Err(WeylError::NotBelow { .. })));
    }
}
