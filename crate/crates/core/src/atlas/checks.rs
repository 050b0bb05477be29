use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sweep::{zeta_chains, CaseStatus};
use super::AtlasError;
use crate::exactalg::{Field, RatFunc, Rational};
use crate::loopgroup::{cg_membership, richardson_locate, snider_phi, LatticeRanks, LoopError};
use crate::matrixcore::{mr_product_with, u_echelon, EchelonMatrix, FieldMatrix};
use crate::posetlab::{enumerate_qj, qj_leq, QJElement};
use crate::positroid::{cell_positivity_check, f_of_matrix, window_rank};
use crate::weyl::{grassmannian_reps, positive_subexpression, tau_u_lambda, Permutation};

/// One labelled case of a randomized or exhaustive check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckCase {
    pub label: String,
    pub status: CaseStatus,
}

/// Summary of a check over many cases.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub nmax: usize,
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CheckCase>,
}

impl CheckReport {
    fn new(check: &str, nmax: usize, seed: u64, cases: Vec<CheckCase>) -> Self {
        let passed = cases.iter().filter(|c| c.status.is_pass()).count();
        CheckReport {
            check: check.into(),
            nmax,
            seed,
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
            cases,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn case(label: String, result: Result<Option<String>, AtlasError>) -> CheckCase {
    let status = match result {
        Ok(None) => CaseStatus::Pass,
        Ok(Some(msg)) => CaseStatus::Fail(msg),
        Err(e) => CaseStatus::Error(e.to_string()),
    };
    CheckCase { label, status }
}

fn random_positive(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(1..=20), rng.gen_range(1..=7)).expect("nonzero denominator")
}

/// A matrix `x` with `xB` in the totally positive Richardson cell of `e`,
/// from the Marsh–Rietsch parametrization at random positive rationals.
pub fn random_cell_point(
    e: &QJElement,
    rng: &mut ChaCha8Rng,
) -> Result<FieldMatrix<Rational>, AtlasError> {
    let pse = positive_subexpression(&e.v, &e.w.reduced_word())?;
    let params: Vec<Rational> = (0..=pse.word.len()).map(|_| random_positive(rng)).collect();
    Ok(mr_product_with(&pse, |j| params[j].clone()))
}

fn loop_err(e: LoopError) -> AtlasError {
    AtlasError::OutsideChart(e.to_string())
}

/// `r_{a,b}(φ_u(M)) + rank(M; a, b) = k` for `a ∈ [n]`, `a ≤ b ≤ a + n`.
fn rank_identity<F: Field>(m: &EchelonMatrix<F>) -> Result<Option<String>, AtlasError> {
    let ranks = LatticeRanks::new(&snider_phi(m)).map_err(loop_err)?;
    let n = m.n as i64;
    for a in 1..=n {
        let profile = ranks.r_profile(a, a, a + n);
        for b in a..=a + n {
            let lhs = profile[(b - a) as usize] + window_rank(&m.body, a, b);
            if lhs != m.k {
                return Ok(Some(format!("r_{{{a},{b}}} + rank = {lhs}")));
            }
        }
    }
    Ok(None)
}

/// For every chart `u` and cell `h = f_{v,w}` with `(u,u) ⪯ (v,w)`, locates
/// `φ_u(M)` at `points` random positive cell points and checks the rank
/// identity there; also checks the identity for the generic symbolic `M`.
pub fn verify_snider_cells(
    nmax: usize,
    points: usize,
    seed: u64,
) -> Result<CheckReport, AtlasError> {
    let mut jobs: Vec<(Permutation, usize, Option<QJElement>)> = Vec::new();
    for n in 2..=nmax {
        for k in 1..n {
            let qj = enumerate_qj(n, k)?;
            for (u, _) in grassmannian_reps(n, k)? {
                jobs.push((u.clone(), k, None));
                let base = QJElement::new(u.clone(), u.clone(), k)?;
                for e in &qj {
                    if qj_leq(&base, e)? {
                        jobs.push((u.clone(), k, Some(e.clone())));
                    }
                }
            }
        }
    }
    let cases = jobs
        .par_iter()
        .enumerate()
        .map(|(idx, (u, k, cell))| match cell {
            None => {
                let k = *k;
                let label = format!("n={} k={k} u={u} generic", u.n());
                case(
                    label,
                    EchelonMatrix::<RatFunc>::generic(u, k, "x")
                        .map_err(Into::into)
                        .and_then(|m| rank_identity(&m)),
                )
            }
            Some(e) => {
                let h = e.affine();
                let label = format!("n={} k={} u={u} h={h}", u.n(), e.k);
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx as u64));
                let mut run = || -> Result<Option<String>, AtlasError> {
                    let top = tau_u_lambda(u, e.k);
                    for _ in 0..points {
                        let x = random_cell_point(e, &mut rng)?;
                        let m = u_echelon(&x, u, e.k)?;
                        if f_of_matrix(&m.body)? != h {
                            return Ok(Some("sample point is not in the cell".into()));
                        }
                        let label = richardson_locate(&snider_phi(&m), &top).map_err(loop_err)?;
                        if label.h.as_ref() != Some(&h) {
                            return Ok(Some(format!(
                                "located {:?}",
                                label.h.map(|x| x.to_string())
                            )));
                        }
                        if let Some(msg) = rank_identity(&m)? {
                            return Ok(Some(msg));
                        }
                    }
                    Ok(None)
                };
                case(label, run())
            }
        })
        .collect();
    Ok(CheckReport::new("snider", nmax, seed, cases))
}

/// For every chain `(u,u) ⪯ (v,w) ⪯ (v′,w′)`, samples `points` positive points
/// of the cell `(v′,w′)` and checks that every `tr^a_u(M)` is totally
/// nonnegative and every `Δ^{tr,a}_{I_a}(M)` along the necklace of `f_{v,w}` is positive.
pub fn verify_truncation(nmax: usize, points: usize, seed: u64) -> Result<CheckReport, AtlasError> {
    let mut chains = Vec::new();
    for n in 2..=nmax {
        chains.extend(zeta_chains(n)?);
    }
    let cases = chains
        .par_iter()
        .enumerate()
        .map(|(idx, ch)| {
            let label = format!(
                "n={} k={} u={} g={} h={}",
                ch.u.n(),
                ch.lower.k,
                ch.u,
                ch.lower,
                ch.upper
            );
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx as u64));
            let mut run = || -> Result<Option<String>, AtlasError> {
                let g = ch.lower.affine();
                for _ in 0..points {
                    let x = random_cell_point(&ch.upper, &mut rng)?;
                    let m = u_echelon(&x, &ch.u, ch.lower.k)?;
                    let rep = cell_positivity_check(&m, &g)?;
                    if !rep.passed() {
                        return Ok(Some(format!("{rep:?}")));
                    }
                }
                Ok(None)
            };
            case(label, run())
        })
        .collect();
    Ok(CheckReport::new("truncation", nmax, seed, cases))
}

/// Compares the two `𝓒_g` membership routes on `instances` random echelon
/// matrices with small integer entries for each `(n, k)`, `2 ≤ n ≤ nmax`.
pub fn verify_cg_routes(
    nmax: usize,
    instances: usize,
    seed: u64,
) -> Result<CheckReport, AtlasError> {
    let mut jobs = Vec::new();
    for n in 2..=nmax {
        for k in 1..n {
            let qj = enumerate_qj(n, k)?;
            let mut pairs = Vec::new();
            for (u, _) in grassmannian_reps(n, k)? {
                let base = QJElement::new(u.clone(), u.clone(), k)?;
                for e in &qj {
                    if qj_leq(&base, e)? {
                        pairs.push((u.clone(), e.affine()));
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 8 | k as u64));
            for i in 0..instances {
                let (u, g) = pairs.choose(&mut rng).expect("nonempty").clone();
                let piv = u.subset(k);
                let mut body = FieldMatrix::zeros(n, k);
                for r in 0..n {
                    for c in 0..k {
                        let v = match piv.iter().position(|&p| p == r + 1) {
                            Some(s) if s == c => Rational::one(),
                            Some(_) => Rational::zero(),
                            None => Rational::integer(rng.gen_range(-2..=2)),
                        };
                        body.set(r, c, v);
                    }
                }
                jobs.push((i, u, g, body));
            }
        }
    }
    let cases = jobs
        .par_iter()
        .map(|(i, u, g, body)| {
            let label = format!("n={} k={} #{i} u={u} g={g}", u.n(), body.cols());
            let run = || -> Result<Option<String>, AtlasError> {
                let m = EchelonMatrix::new(u.clone(), body.clone())?;
                let res = cg_membership(&m, g).map_err(loop_err)?;
                Ok((!res.routes_agree()).then(|| format!("{res:?}")))
            };
            case(label, run())
        })
        .collect();
    Ok(CheckReport::new("cg", nmax, seed, cases))
}
