//! Cell posets of the totally nonnegative Grassmannian: the pair poset `Q_J`,
//! bounded affine permutations under reversed Bruhat order, the map
//! `(v,w) ↦ v τ_λ w⁻¹` between them, and generic finite-poset analytics.

mod poset;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use poset::{FinitePoset, Hat, PosetAnalytics};

use crate::weyl::{
    bounded_affine_permutations, f_vw, grassmannian_reps, max_grassmannian, parabolic_subgroup,
    tau_k, tau_u_lambda, AffinePermutation, Permutation, WeylError,
};

/// Errors raised while building or comparing cell posets.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("({v}, {w}) is not an element of Q_J for k = {k}")]
    NotInQJ { v: String, w: String, k: usize },
}

/// A pair `(v, w)` with `w` Grassmannian for `k` and `v ≤ w`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QJElement {
    pub v: Permutation,
    pub w: Permutation,
    pub k: usize,
}

impl QJElement {
    pub fn new(v: Permutation, w: Permutation, k: usize) -> Result<Self, PosetError> {
        let bad = || PosetError::NotInQJ {
            v: v.to_string(),
            w: w.to_string(),
            k,
        };
        if k == 0 || k >= w.n() || !w.is_grassmannian(k) || !v.bruhat_leq(&w)? {
            return Err(bad());
        }
        Ok(QJElement { v, w, k })
    }

    pub fn n(&self) -> usize {
        self.w.n()
    }

    /// `ℓ(w) − ℓ(v)`, the dimension of the cell.
    pub fn rank(&self) -> i64 {
        self.w.length() as i64 - self.v.length() as i64
    }

    /// `f_{v,w} = v τ_λ w⁻¹`.
    pub fn affine(&self) -> AffinePermutation {
        f_vw(&self.v, &self.w, self.k).expect("validated element")
    }
}

impl std::fmt::Display for QJElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.v, self.w)
    }
}

/// All elements of `Q_J`, grouped by `w` in the order of [`grassmannian_reps`]
/// and by `v` in lexicographic order.
pub fn enumerate_qj(n: usize, k: usize) -> Result<Vec<QJElement>, PosetError> {
    let all = Permutation::all(n);
    let mut out = Vec::new();
    for (w, _) in grassmannian_reps(n, k)? {
        for v in &all {
            if v.bruhat_leq(&w)? {
                out.push(QJElement {
                    v: v.clone(),
                    w: w.clone(),
                    k,
                });
            }
        }
    }
    Ok(out)
}

/// `(v,w) ⪯ (v′,w′)` iff some `r ∈ W_J` has `v′ ≤ vr ≤ wr ≤ w′`.
pub fn qj_leq(a: &QJElement, b: &QJElement) -> Result<bool, PosetError> {
    if a.n() != b.n() || a.k != b.k {
        return Err(WeylError::SizeMismatch(a.n(), b.n()).into());
    }
    for r in parabolic_subgroup(a.n(), a.k)? {
        if translate_leq(&a.v.compose(&r)?, &a.w.compose(&r)?, b) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn translate_leq(vr: &Permutation, wr: &Permutation, b: &QJElement) -> bool {
    b.v.bruhat_leq(vr).unwrap_or(false)
        && vr.bruhat_leq(wr).unwrap_or(false)
        && wr.bruhat_leq(&b.w).unwrap_or(false)
}

/// `Q_J` as a ranked poset with rank `ℓ(w) − ℓ(v)`.
pub fn build_qj(n: usize, k: usize) -> Result<FinitePoset<QJElement>, PosetError> {
    let elems = enumerate_qj(n, k)?;
    let wj = parabolic_subgroup(n, k)?;
    let translates: Vec<Vec<(Permutation, Permutation)>> = elems
        .iter()
        .map(|e| {
            wj.iter()
                .map(|r| {
                    (
                        e.v.compose(r).expect("same n"),
                        e.w.compose(r).expect("same n"),
                    )
                })
                .collect()
        })
        .collect();
    let rank = elems.iter().map(QJElement::rank).collect();
    let poset = FinitePoset::from_index_relation(elems.clone(), |i, j| {
        translates[i]
            .iter()
            .any(|(vr, wr)| translate_leq(vr, wr, &elems[j]))
    })?;
    poset.with_rank(rank)
}

/// Bounded affine permutations `Bound(k,n)` ordered by `f ≤ᵒᵖ g` iff `g ≤ f`
/// in Bruhat order, ranked by `k(n−k) − ℓ(f)` so that `τ_k` is the top.
pub fn build_bound(k: usize, n: usize) -> Result<FinitePoset<AffinePermutation>, PosetError> {
    if k == 0 || k >= n {
        return Err(WeylError::InvalidParameters(format!(
            "need 1 ≤ k ≤ n−1, got k = {k}, n = {n}"
        ))
        .into());
    }
    let elems = bounded_affine_permutations(k, n);
    let top = (k * (n - k)) as i64;
    let rank = elems.iter().map(|f| top - f.length() as i64).collect();
    let poset = FinitePoset::from_relation(elems, |f, g| g.bruhat_leq(f).unwrap_or(false))?;
    poset.with_rank(rank)
}

/// `Q̂_J = Q_J ⊔ {0̂}` with rank `ℓ(w) − ℓ(v) + 1` and `0̂` at rank 0.
pub fn build_qj_hat(n: usize, k: usize) -> Result<FinitePoset<Hat<QJElement>>, PosetError> {
    Ok(build_qj(n, k)?.with_bottom())
}

/// Outcome of comparing `Q_J` with `(Bound(k,n), ≤ᵒᵖ)` under `(v,w) ↦ f_{v,w}`.
#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub n: usize,
    pub k: usize,
    pub qj_size: usize,
    pub bound_size: usize,
    pub bijective: bool,
    pub ranks_match: bool,
    pub pairs_checked: usize,
    /// Pairs `(a, b)` where `a ⪯ b` disagrees with `f_a ≤ᵒᵖ f_b`; capped at 20.
    pub mismatches: Vec<(String, String)>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.ranks_match && self.mismatches.is_empty()
    }
}

const MISMATCH_CAP: usize = 20;

/// Checks over all element pairs that `(v,w) ↦ v τ_λ w⁻¹` is an order
/// isomorphism `Q_J → (Bound(k,n), ≤ᵒᵖ)`.
pub fn check_iso_qj_bound(n: usize, k: usize) -> Result<IsoReport, PosetError> {
    let qj = build_qj(n, k)?;
    let bound = build_bound(k, n)?;
    let index: BTreeMap<&AffinePermutation, usize> = bound
        .elements()
        .iter()
        .enumerate()
        .map(|(i, f)| (f, i))
        .collect();
    let image: Vec<Option<usize>> = qj
        .elements()
        .iter()
        .map(|e| index.get(&e.affine()).copied())
        .collect();
    let distinct: BTreeSet<usize> = image.iter().flatten().copied().collect();
    let bijective =
        image.iter().all(Option::is_some) && distinct.len() == qj.len() && qj.len() == bound.len();
    let mut report = IsoReport {
        n,
        k,
        qj_size: qj.len(),
        bound_size: bound.len(),
        bijective,
        ranks_match: true,
        pairs_checked: 0,
        mismatches: Vec::new(),
    };
    if !bijective {
        return Ok(report);
    }
    let image: Vec<usize> = image.into_iter().flatten().collect();
    let (qr, br) = (qj.rank().expect("ranked"), bound.rank().expect("ranked"));
    report.ranks_match = (0..qj.len()).all(|i| qr[i] == br[image[i]]);
    for a in 0..qj.len() {
        for b in 0..qj.len() {
            report.pairs_checked += 1;
            if qj.leq(a, b) != bound.leq(image[a], image[b])
                && report.mismatches.len() < MISMATCH_CAP
            {
                report
                    .mismatches
                    .push((qj.elements()[a].to_string(), qj.elements()[b].to_string()));
            }
        }
    }
    Ok(report)
}

/// `ψ(v,w) = v τ_λ w⁻¹`.
pub fn psi(e: &QJElement) -> AffinePermutation {
    e.affine()
}

/// Comparison of `ψ` on the upper set of `(u,u)` with the Bruhat interval
/// `[τ_k, τ_{uλ}]`.
#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub u: Permutation,
    pub k: usize,
    pub upper_set_size: usize,
    pub interval_size: usize,
    pub injective: bool,
    pub image_equals_interval: bool,
    pub order_reversing: bool,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.injective && self.image_equals_interval && self.order_reversing
    }
}

/// The Bruhat interval `[τ_k, τ_{uλ}]`, found by searching down from `τ_{uλ}` along covers.
pub fn bruhat_interval_below_tau_u(u: &Permutation, k: usize) -> BTreeSet<AffinePermutation> {
    let bottom = tau_k(u.n(), k);
    tau_u_lambda(u, k)
        .down_set()
        .into_iter()
        .filter(|g| bottom.bruhat_leq(g).unwrap_or(false))
        .collect()
}

/// Checks `ψ(Q^{⪰(u,u)}_J) = [τ_k, τ_{uλ}]`, injectivity, and that `a ⪯ b`
/// iff `ψ(b) ≤ ψ(a)` on the upper set. Takes a prebuilt `Q_J`.
pub fn psi_interval_check(
    qj: &FinitePoset<QJElement>,
    u: &Permutation,
) -> Result<PsiReport, PosetError> {
    let k = qj.elements().first().map(|e| e.k).unwrap_or(0);
    let uu = QJElement::new(u.clone(), u.clone(), k)?;
    let base = qj
        .elements()
        .iter()
        .position(|e| *e == uu)
        .ok_or_else(|| PosetError::NotInQJ {
            v: u.to_string(),
            w: u.to_string(),
            k,
        })?;
    let upper = qj.up_set(base);
    let images: Vec<AffinePermutation> = upper.iter().map(|&i| psi(&qj.elements()[i])).collect();
    let image_set: BTreeSet<AffinePermutation> = images.iter().cloned().collect();
    let interval = bruhat_interval_below_tau_u(u, k);
    let mut order_reversing = true;
    'outer: for (a, &i) in upper.iter().enumerate() {
        for (b, &j) in upper.iter().enumerate() {
            if qj.leq(i, j) != images[b].bruhat_leq(&images[a])? {
                order_reversing = false;
                break 'outer;
            }
        }
    }
    Ok(PsiReport {
        u: u.clone(),
        k,
        upper_set_size: upper.len(),
        interval_size: interval.len(),
        injective: image_set.len() == upper.len(),
        image_equals_interval: image_set == interval,
        order_reversing,
    })
}

/// `ψ` image of the upper set of `(u,u)`.
pub fn psi_interval_image(
    u: &Permutation,
    k: usize,
) -> Result<BTreeSet<AffinePermutation>, PosetError> {
    let qj = build_qj(u.n(), k)?;
    let uu = QJElement::new(u.clone(), u.clone(), k)?;
    let base = qj
        .elements()
        .iter()
        .position(|e| *e == uu)
        .expect("enumerated");
    Ok(qj
        .up_set(base)
        .into_iter()
        .map(|i| psi(&qj.elements()[i]))
        .collect())
}

/// All `(v′,w′) ⪯ (v,w)`, the cells in the closure of the cell `(v,w)`.
pub fn closure_ideal(e: &QJElement) -> Result<Vec<QJElement>, PosetError> {
    let mut out = Vec::new();
    for cand in enumerate_qj(e.n(), e.k)? {
        if qj_leq(&cand, e)? {
            out.push(cand);
        }
    }
    Ok(out)
}

/// The top element `(id, w^J)`.
pub fn qj_top(n: usize, k: usize) -> Result<QJElement, PosetError> {
    QJElement::new(Permutation::identity(n), max_grassmannian(n, k)?, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, word: &[usize]) -> Permutation {
        Permutation::from_word(n, word).unwrap()
    }

    #[test]
    fn gr24_counts() {
        let qj = build_qj(4, 2).unwrap();
        assert_eq!(qj.len(), 33);
        let top = qj_top(4, 2).unwrap();
        let maxes = qj.maximal();
        assert_eq!(maxes.len(), 1);
        assert_eq!(qj.elements()[maxes[0]], top);
        let s2 = QJElement::new(p(4, &[2]), top.w.clone(), 2).unwrap();
        assert!(qj_leq(&s2, &top).unwrap());
        assert!(!qj_leq(&top, &s2).unwrap());
        assert_eq!(closure_ideal(&top).unwrap().len(), 33);
    }

    #[test]
    fn bound_small_cases() {
        let b = build_bound(1, 2).unwrap();
        assert_eq!(b.len(), 3);
        let top = b.maximal();
        assert_eq!(top.len(), 1);
        assert_eq!(b.elements()[top[0]].window(), &[2, 3]);
        let b = build_bound(2, 5).unwrap();
        let r = b.rank().unwrap();
        let corank1 = r.iter().filter(|&&x| x == 5).count();
        assert_eq!(corank1, 5);
    }

    #[test]
    fn minimal_elements_are_diagonal() {
        let qj = build_qj(4, 2).unwrap();
        let mins: BTreeSet<QJElement> = qj
            .minimal()
            .into_iter()
            .map(|i| qj.elements()[i].clone())
            .collect();
        let diag: BTreeSet<QJElement> = grassmannian_reps(4, 2)
            .unwrap()
            .into_iter()
            .map(|(u, _)| QJElement::new(u.clone(), u, 2).unwrap())
            .collect();
        assert_eq!(mins, diag);
    }

    #[test]
    fn iso_gr24() {
        let rep = check_iso_qj_bound(4, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn psi_examples() {
        let w = p(5, &[2, 1, 4, 3, 2]);
        let a = QJElement::new(p(5, &[1]), w.clone(), 2).unwrap();
        let b = QJElement::new(p(5, &[2, 1]), w, 2).unwrap();
        assert_eq!(psi(&a).window(), &[3, 4, 7, 5, 6]);
        assert_eq!(psi(&b).window(), &[2, 4, 8, 5, 6]);
        assert!(psi(&a).bruhat_leq(&psi(&b)).unwrap());
        let u = p(4, &[3, 2]);
        let uu = QJElement::new(u.clone(), u.clone(), 2).unwrap();
        assert_eq!(psi(&uu).window(), &[5, 2, 3, 8]);
        let qj = build_qj(4, 2).unwrap();
        assert!(psi_interval_check(&qj, &u).unwrap().passed());
    }

    #[test]
    fn qj_hat_is_eulerian() {
        let hat = build_qj_hat(4, 2).unwrap();
        let a = hat.analytics();
        assert!(a.graded && a.thin && a.eulerian, "{:?}", a.first_violation);
    }
}
