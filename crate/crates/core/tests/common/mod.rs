//! Brute-force oracles shared by integration tests.

use std::collections::{BTreeMap, BTreeSet};

use tnnatlas::weyl::Permutation;

/// All products of subwords of a reduced word of `w`: the Bruhat lower interval.
pub fn subword_interval(w: &Permutation) -> BTreeSet<Permutation> {
    let word = w.reduced_word();
    (0u32..1 << word.len())
        .map(|mask| {
            let sub: Vec<usize> = word
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            Permutation::from_word(w.n(), &sub).unwrap()
        })
        .collect()
}

/// Lower Bruhat intervals of every element of `S_n`.
pub fn intervals(n: usize) -> BTreeMap<Permutation, BTreeSet<Permutation>> {
    Permutation::all(n)
        .into_iter()
        .map(|w| (w.clone(), subword_interval(&w)))
        .collect()
}

/// `max{ab : a ≤ x, b ≤ y}` and `min{xb : b ≤ y}` by exhaustive search.
pub fn demazure_oracle(
    below: &BTreeMap<Permutation, BTreeSet<Permutation>>,
    x: &Permutation,
    y: &Permutation,
) -> (Permutation, Permutation) {
    let leq = |a: &Permutation, b: &Permutation| below[b].contains(a);
    let products: BTreeSet<Permutation> = below[x]
        .iter()
        .flat_map(|a| below[y].iter().map(move |b| a.compose(b).unwrap()))
        .collect();
    let max: Vec<&Permutation> = products
        .iter()
        .filter(|p| products.iter().all(|q| leq(q, p)))
        .collect();
    let shifted: BTreeSet<Permutation> = below[y].iter().map(|b| x.compose(b).unwrap()).collect();
    let min: Vec<&Permutation> = shifted
        .iter()
        .filter(|p| shifted.iter().all(|q| leq(p, q)))
        .collect();
    assert_eq!(
        (max.len(), min.len()),
        (1, 1),
        "extremal elements are unique"
    );
    (max[0].clone(), min[0].clone())
}

/// Plus-sets (1-based, increasing) of all positive subexpressions for `v` in `word`.
pub fn positive_plus_sets(v: &Permutation, word: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << word.len() {
        let mut cur = Permutation::identity(v.n());
        let mut ok = true;
        for (j, &i) in word.iter().enumerate() {
            let next = cur.mul_simple_right(i).unwrap();
            if next.length() < cur.length() {
                ok = false;
                break;
            }
            if mask >> j & 1 == 1 {
                cur = next;
            }
        }
        if ok && &cur == v {
            out.push(
                (0..word.len())
                    .filter(|j| mask >> j & 1 == 1)
                    .map(|j| j + 1)
                    .collect(),
            );
        }
    }
    out
}
