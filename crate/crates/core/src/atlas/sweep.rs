use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{compare_zeta_truncation, zeta_minors, AtlasContext, AtlasError};
use crate::exactalg::{certify_subtraction_free, Field, RatFunc, Rational, SfCertificate};
use crate::matrixcore::{mr_product, EchelonMatrix};
use crate::posetlab::{enumerate_qj, qj_leq, QJElement};
use crate::weyl::{grassmannian_reps, positive_subexpression, Permutation};

/// Outcome of one sweep case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail(String),
    Error(String),
    /// Not run because the time budget was exhausted.
    Skipped,
}

impl CaseStatus {
    pub fn is_pass(&self) -> bool {
        matches!(self, CaseStatus::Pass)
    }
}

/// All `(u, (v,w))` with `(u,u) ⪯ (v,w)` for the given `n` and every `k`.
pub fn conjecture_cases(n: usize) -> Result<Vec<(Permutation, QJElement)>, AtlasError> {
    let mut out = Vec::new();
    for k in 1..n {
        let qj = enumerate_qj(n, k)?;
        for (u, _) in grassmannian_reps(n, k)? {
            let base = QJElement::new(u.clone(), u.clone(), k)?;
            for e in &qj {
                if qj_leq(&base, e)? {
                    out.push((u.clone(), e.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// One case of the ζ-truncation comparison with raw data.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureCase {
    pub n: usize,
    pub k: usize,
    pub u: String,
    pub v: String,
    pub w: String,
    pub status: CaseStatus,
    pub millis: u64,
    pub zeta_minors: Vec<String>,
    pub ratios: Vec<String>,
}

/// Result of [`verify_conjecture`].
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub nmax: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub cases: Vec<ConjectureCase>,
}

impl ConjectureReport {
    /// Every case ran and passed.
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

fn run_conjecture_case(u: &Permutation, vw: &QJElement) -> (CaseStatus, Vec<String>, Vec<String>) {
    let result = (|| {
        let ctx = AtlasContext::new(u, vw)?;
        let x = EchelonMatrix::generic(u, vw.k, "x")?.sl_completion();
        compare_zeta_truncation(&ctx, &x)
    })();
    match result {
        Ok(cmp) => {
            let zm = cmp.zeta_minors.iter().map(|x| x.to_string()).collect();
            let ratios = cmp.ratios.iter().map(|x| x.to_string()).collect();
            let status = match cmp.first_mismatch {
                None => CaseStatus::Pass,
                Some(i) => CaseStatus::Fail(format!("identity fails at i = {i}")),
            };
            (status, zm, ratios)
        }
        Err(e) => (CaseStatus::Error(e.to_string()), Vec::new(), Vec::new()),
    }
}

fn summarize<T>(cases: &[T], status: impl Fn(&T) -> &CaseStatus) -> (usize, usize, usize) {
    let passed = cases.iter().filter(|c| status(c).is_pass()).count();
    let skipped = cases
        .iter()
        .filter(|c| matches!(status(c), CaseStatus::Skipped))
        .count();
    (passed, cases.len() - passed - skipped, skipped)
}

/// Checks `Δ±_{n+1−i}(ζ(x)ẇ⁻¹) = Δ^{tr,i}_{I_i}(M)/Δ^{tr,1}_{I_1}(M)` symbolically
/// for generic `M` in every case with `2 ≤ n ≤ nmax`. Cases that would start
/// after `budget` has elapsed are reported as skipped.
pub fn verify_conjecture(
    nmax: usize,
    budget: Option<Duration>,
) -> Result<ConjectureReport, AtlasError> {
    let start = Instant::now();
    let mut all = Vec::new();
    for n in 2..=nmax {
        all.extend(conjecture_cases(n)?);
    }
    let cases: Vec<ConjectureCase> = all
        .par_iter()
        .map(|(u, vw)| {
            let t0 = Instant::now();
            let (status, zeta_minors, ratios) = if budget.is_some_and(|b| start.elapsed() > b) {
                (CaseStatus::Skipped, Vec::new(), Vec::new())
            } else {
                run_conjecture_case(u, vw)
            };
            ConjectureCase {
                n: u.n(),
                k: vw.k,
                u: u.to_string(),
                v: vw.v.to_string(),
                w: vw.w.to_string(),
                status,
                millis: t0.elapsed().as_millis() as u64,
                zeta_minors,
                ratios,
            }
        })
        .collect();
    let (passed, failed, skipped) = summarize(&cases, |c| &c.status);
    Ok(ConjectureReport {
        nmax,
        total: cases.len(),
        passed,
        failed,
        skipped,
        cases,
    })
}

/// A chain `(u,u) ⪯ (v,w) ⪯ (v′,w′)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaChain {
    pub u: Permutation,
    pub lower: QJElement,
    pub upper: QJElement,
}

/// All chains for the given `n` and every `k`.
pub fn zeta_chains(n: usize) -> Result<Vec<ZetaChain>, AtlasError> {
    let mut out = Vec::new();
    for k in 1..n {
        let qj = enumerate_qj(n, k)?;
        for (u, _) in grassmannian_reps(n, k)? {
            let base = QJElement::new(u.clone(), u.clone(), k)?;
            let above: Vec<&QJElement> = qj
                .iter()
                .filter(|e| qj_leq(&base, e).unwrap_or(false))
                .collect();
            for lower in &above {
                for upper in &above {
                    if qj_leq(lower, upper)? {
                        out.push(ZetaChain {
                            u: u.clone(),
                            lower: (*lower).clone(),
                            upper: (*upper).clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One chain of the ζ-positivity sweep.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaPositivityCase {
    pub n: usize,
    pub k: usize,
    pub u: String,
    pub lower: String,
    pub upper: String,
    pub status: CaseStatus,
    pub minors: Vec<String>,
    pub certificates: Vec<SfCertificate>,
}

/// Result of [`verify_zeta_positivity`].
#[derive(Clone, Debug, Serialize)]
pub struct ZetaPositivityReport {
    pub nmax: usize,
    pub seed: u64,
    pub points_per_chain: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub cases: Vec<ZetaPositivityCase>,
}

impl ZetaPositivityReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

fn random_positive(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(1..=20), rng.gen_range(1..=7)).expect("nonzero denominator")
}

fn run_positivity_case(
    chain: &ZetaChain,
    points: usize,
    seed: u64,
) -> (CaseStatus, Vec<RatFunc>, Vec<SfCertificate>) {
    let result = (|| -> Result<(CaseStatus, Vec<RatFunc>, Vec<SfCertificate>), AtlasError> {
        let ctx = AtlasContext::new(&chain.u, &chain.lower)?;
        let pse = positive_subexpression(&chain.upper.v, &chain.upper.w.reduced_word())?;
        let x = mr_product(&pse, "t");
        let minors = zeta_minors(&ctx, &x)?;
        if let Some(i) = minors.iter().position(|m| m.is_zero()) {
            return Ok((
                CaseStatus::Fail(format!("minor {} vanishes", i + 1)),
                minors,
                Vec::new(),
            ));
        }
        let certs: Vec<SfCertificate> = minors
            .iter()
            .map(certify_subtraction_free)
            .collect::<Result<_, _>>()?;
        if let Some(i) = certs.iter().position(|c| *c == SfCertificate::Refuted) {
            return Ok((
                CaseStatus::Fail(format!("minor {} refuted as subtraction-free", i + 1)),
                minors,
                certs,
            ));
        }
        let vars: Vec<String> = pse.circle_set.iter().map(|j| format!("t{j}")).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..points {
            let point: BTreeMap<String, Rational> = vars
                .iter()
                .map(|v| (v.clone(), random_positive(&mut rng)))
                .collect();
            for (i, m) in minors.iter().enumerate() {
                if !m.eval(&point)?.is_positive() {
                    return Ok((
                        CaseStatus::Fail(format!("minor {} is not positive at {point:?}", i + 1)),
                        minors,
                        certs,
                    ));
                }
            }
        }
        Ok((CaseStatus::Pass, minors, certs))
    })();
    match result {
        Ok(r) => r,
        Err(e) => (CaseStatus::Error(e.to_string()), Vec::new(), Vec::new()),
    }
}

/// For every chain with `2 ≤ n ≤ nmax`, builds `x` from the Marsh–Rietsch
/// parametrization of the upper cell and checks that each `Δ±_i(ζ(x)ẇ⁻¹)` is
/// nonzero, never refuted as subtraction-free, and positive at `points`
/// seeded random positive points.
pub fn verify_zeta_positivity(
    nmax: usize,
    points: usize,
    seed: u64,
    budget: Option<Duration>,
) -> Result<ZetaPositivityReport, AtlasError> {
    let start = Instant::now();
    let mut chains = Vec::new();
    for n in 2..=nmax {
        chains.extend(zeta_chains(n)?);
    }
    let cases: Vec<ZetaPositivityCase> = chains
        .par_iter()
        .enumerate()
        .map(|(idx, chain)| {
            let (status, minors, certificates) = if budget.is_some_and(|b| start.elapsed() > b) {
                (CaseStatus::Skipped, Vec::new(), Vec::new())
            } else {
                run_positivity_case(chain, points, seed.wrapping_add(idx as u64))
            };
            ZetaPositivityCase {
                n: chain.u.n(),
                k: chain.lower.k,
                u: chain.u.to_string(),
                lower: chain.lower.to_string(),
                upper: chain.upper.to_string(),
                status,
                minors: minors.iter().map(|m| m.to_string()).collect(),
                certificates,
            }
        })
        .collect();
    let (passed, failed, skipped) = summarize(&cases, |c| &c.status);
    Ok(ZetaPositivityReport {
        nmax,
        seed,
        points_per_chain: points,
        total: cases.len(),
        passed,
        failed,
        skipped,
        cases,
    })
}
