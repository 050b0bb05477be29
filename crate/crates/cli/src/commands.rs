use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use tnnatlas::atlas::{
    verify_cg_routes, verify_conjecture, verify_snider_cells, verify_truncation,
    verify_zeta_positivity,
};
use tnnatlas::exactalg::{Field, RatFunc};
use tnnatlas::loopgroup::{cone_norm, fs_nu, richardson_locate, snider_phi, LaurentMatrix};
use tnnatlas::matrixcore::{mr_product, mr_symbols, EchelonMatrix};
use tnnatlas::posetlab::{
    build_qj, build_qj_hat, check_iso_qj_bound, psi_interval_check, QJElement,
};
use tnnatlas::positroid::{le_diagram, necklace as necklace_of};
use tnnatlas::weyl::{
    bounded_affine_permutations, grassmannian_reps, positive_subexpression, tau_u_lambda,
    AffinePermutation, Permutation,
};

use crate::VerifyKind;

/// Failure classes mapped to exit codes 2 and 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

/// The result of one command.
pub struct Outcome {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub text: String,
    pub ok: bool,
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    parameters: &'a Value,
    seed: u64,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u64>,
    result: Value,
}

/// Removes per-case timing fields so that reports are reproducible.
fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("millis");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

impl Outcome {
    fn new(
        command: &str,
        parameters: Value,
        result: impl Serialize,
        text: String,
        ok: bool,
    ) -> Result<Self, CliError> {
        let result = serde_json::to_value(result).map_err(runtime)?;
        Ok(Outcome {
            command: command.into(),
            parameters,
            result,
            text,
            ok,
        })
    }

    pub fn report_json(&self, seed: u64, wall_ms: Option<u64>) -> String {
        let mut result = self.result.clone();
        if wall_ms.is_none() {
            strip_timings(&mut result);
        }
        let report = RunReport {
            command: &self.command,
            parameters: &self.parameters,
            seed,
            ok: self.ok,
            wall_ms,
            result,
        };
        serde_json::to_string_pretty(&report).expect("serializable report")
    }
}

fn check_nk(k: usize, n: usize) -> Result<(), CliError> {
    if n < 2 || k == 0 || k >= n {
        return Err(usage(format!(
            "need 1 ≤ k < n and n ≥ 2, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

fn perm(s: &str, n: Option<usize>) -> Result<Permutation, CliError> {
    Permutation::parse(s, n).map_err(usage)
}

fn affine(s: &str, n: Option<usize>) -> Result<AffinePermutation, CliError> {
    let f = AffinePermutation::parse(s).map_err(usage)?;
    if n.is_some_and(|n| n != f.n()) {
        return Err(usage(format!(
            "{f} has size {}, not {}",
            f.n(),
            n.unwrap_or(0)
        )));
    }
    Ok(f)
}

fn laurent_json(x: &LaurentMatrix<RatFunc>) -> Value {
    serde_json::to_value(x).expect("serializable matrix")
}

pub fn cells(k: usize, n: usize) -> Result<Outcome, CliError> {
    check_nk(k, n)?;
    let qj = build_qj(n, k).map_err(runtime)?;
    let mut rows: Vec<(AffinePermutation, String, i64)> = qj
        .elements()
        .iter()
        .map(|e| (e.affine(), e.to_string(), e.rank()))
        .collect();
    rows.sort();
    let bound = bounded_affine_permutations(k, n);
    let ok = bound.len() == rows.len();
    let text: String = rows
        .iter()
        .map(|(f, e, r)| format!("{f}  {e}  dim {r}\n"))
        .collect();
    let cells: Vec<Value> = rows
        .iter()
        .map(|(f, e, r)| json!({"window": f, "vw": e, "dim": r}))
        .collect();
    Outcome::new(
        "cells",
        json!({"k": k, "n": n}),
        json!({"count": rows.len(), "cells": cells}),
        text,
        ok,
    )
}

pub fn poset(k: usize, n: usize) -> Result<Outcome, CliError> {
    check_nk(k, n)?;
    let qj = build_qj(n, k).map_err(runtime)?;
    let hat = build_qj_hat(n, k).map_err(runtime)?;
    let analytics = hat.analytics();
    let ranks = qj.rank().unwrap_or(&[]).to_vec();
    let elements: Vec<Value> = qj
        .elements()
        .iter()
        .zip(&ranks)
        .map(|(e, r)| json!({"v": e.v, "w": e.w, "rank": r}))
        .collect();
    let covers = qj.covers();
    let mut text = format!(
        "Q_J for Gr({k},{n}): {} elements, {} covers\n",
        qj.len(),
        covers.len()
    );
    let top = ranks.iter().copied().max().unwrap_or(0);
    for r in 0..=top {
        let names: Vec<String> = qj
            .elements()
            .iter()
            .zip(&ranks)
            .filter(|(_, &x)| x == r)
            .map(|(e, _)| e.to_string())
            .collect();
        text.push_str(&format!("rank {r}: {}\n", names.join(" ")));
    }
    text.push_str(&format!(
        "with bottom: graded {} thin {} eulerian {}\n",
        analytics.graded, analytics.thin, analytics.eulerian
    ));
    let ok = analytics.graded && analytics.thin && analytics.eulerian;
    let result = json!({
        "size": qj.len(),
        "elements": elements,
        "covers": covers,
        "graded": analytics.graded,
        "thin": analytics.thin,
        "eulerian": analytics.eulerian,
        "first_violation": analytics.first_violation,
    });
    Outcome::new("poset", json!({"k": k, "n": n}), result, text, ok)
}

pub fn necklace(h: &str, n: Option<usize>) -> Result<Outcome, CliError> {
    let f = affine(h, n)?;
    if !f.is_bounded() {
        return Err(usage(format!("{f} is not bounded")));
    }
    let neck = necklace_of(&f).map_err(runtime)?;
    let text = format!("{neck}\n");
    Outcome::new("necklace", json!({"h": f}), &neck, text, true)
}

pub fn lediagram(v: &str, w: &str, k: usize, n: Option<usize>) -> Result<Outcome, CliError> {
    let v = perm(v, n)?;
    let w = perm(w, n.or(Some(v.n())))?;
    let e = QJElement::new(v, w, k).map_err(usage)?;
    let d = le_diagram(&e).map_err(runtime)?;
    let text = format!("{}\n{}", d.ascii(), d.label_ascii());
    let result =
        json!({"diagram": d, "ascii": d.ascii(), "labels": d.label_ascii(), "affine": e.affine()});
    Outcome::new(
        "lediagram",
        json!({"v": e.v, "w": e.w, "k": k}),
        result,
        text,
        true,
    )
}

pub fn mr(v: &str, w: &str, n: Option<usize>) -> Result<Outcome, CliError> {
    let v = perm(v, n)?;
    let w = perm(w, n.or(Some(v.n())))?;
    let pse = positive_subexpression(&v, &w.reduced_word()).map_err(usage)?;
    let x = mr_product(&pse, "t");
    let params = mr_symbols(&pse, "t");
    let text = format!(
        "word {:?}, plus positions {:?}\nparameters {}\n{}",
        pse.word,
        pse.plus_set,
        params.join(" "),
        x.pretty()
    );
    let result =
        json!({"word": pse.word, "plus_set": pse.plus_set, "parameters": params, "matrix": x});
    Outcome::new("mr", json!({"v": v, "w": w}), result, text, true)
}

pub fn snider(u: &str, k: usize, n: Option<usize>) -> Result<Outcome, CliError> {
    let u = perm(u, n)?;
    check_nk(k, u.n())?;
    if !u.is_grassmannian(k) {
        return Err(usage(format!("{u} is not Grassmannian for k = {k}")));
    }
    let m = EchelonMatrix::<RatFunc>::generic(&u, k, "x").map_err(runtime)?;
    let y = snider_phi(&m);
    let top = tau_u_lambda(&u, k);
    let label = richardson_locate(&y, &top).map_err(runtime)?;
    let show = |p: &Option<_>| {
        p.as_ref()
            .map_or("none".to_string(), |p: &AffinePermutation| p.to_string())
    };
    let text = format!(
        "M =\n{}y =\n{}cell: h = {}, f = {}\n",
        m.body.pretty(),
        y.pretty(),
        show(&label.h),
        show(&label.f)
    );
    let result = json!({"echelon": m.body, "y": laurent_json(&y), "label": label, "val": y.val().map_err(runtime)?});
    Outcome::new("snider", json!({"u": u, "k": k}), result, text, true)
}

pub fn fs(u: &str, g: &str, k: usize, n: Option<usize>) -> Result<Outcome, CliError> {
    let u = perm(u, n)?;
    check_nk(k, u.n())?;
    if !u.is_grassmannian(k) {
        return Err(usage(format!("{u} is not Grassmannian for k = {k}")));
    }
    let g = affine(g, Some(u.n()))?;
    let m = EchelonMatrix::<RatFunc>::generic(&u, k, "x").map_err(runtime)?;
    let y = snider_phi(&m);
    let split = fs_nu(&y, &g).map_err(runtime)?;
    let norm = cone_norm(&split);
    let coords: Vec<String> = split.coords.iter().map(|c| c.to_string()).collect();
    let text = format!(
        "y1 =\n{}y2 =\n{}d =\n{}coordinates: {}\nsquared norm: {norm}\n",
        split.y1.pretty(),
        split.y2.pretty(),
        split.d.pretty(),
        coords.join(", ")
    );
    let result = json!({
        "y1": laurent_json(&split.y1),
        "y2": laurent_json(&split.y2),
        "d": laurent_json(&split.d),
        "image1": laurent_json(&split.image1),
        "coordinates": coords,
        "squared_norm": norm.to_string(),
        "coordinates_nonzero": split.coords.iter().all(|c| !c.is_zero()),
    });
    Outcome::new("fs", json!({"u": u, "g": g, "k": k}), result, text, true)
}

fn status_line(pass: bool, label: &str) -> String {
    format!("{} {label}\n", if pass { "PASS" } else { "FAIL" })
}

pub fn verify(
    kind: VerifyKind,
    nmax: usize,
    points: usize,
    instances: usize,
    budget_seconds: Option<u64>,
    seed: u64,
) -> Result<Outcome, CliError> {
    if nmax < 2 {
        return Err(usage("--nmax must be at least 2"));
    }
    let budget = budget_seconds.map(Duration::from_secs);
    let name = format!(
        "verify {}",
        clap::ValueEnum::to_possible_value(&kind)
            .expect("named")
            .get_name()
    );
    let params = json!({"nmax": nmax, "points": points, "instances": instances, "budget_seconds": budget_seconds});
    let mut text = String::new();
    match kind {
        VerifyKind::Iso => {
            let mut reports = Vec::new();
            for n in 2..=nmax {
                for k in 1..n {
                    let r = check_iso_qj_bound(n, k).map_err(runtime)?;
                    text.push_str(&status_line(
                        r.passed(),
                        &format!("n={n} k={k} |Q_J|={} pairs={}", r.qj_size, r.pairs_checked),
                    ));
                    reports.push(r);
                }
            }
            let ok = reports.iter().all(|r| r.passed());
            Outcome::new(&name, params, reports, text, ok)
        }
        VerifyKind::Topology => {
            let mut reports = Vec::new();
            for n in 2..=nmax {
                for k in 1..n {
                    let a = build_qj_hat(n, k).map_err(runtime)?.analytics();
                    let pass = a.graded && a.thin && a.eulerian;
                    text.push_str(&status_line(
                        pass,
                        &format!(
                            "n={n} k={k} graded={} thin={} eulerian={}",
                            a.graded, a.thin, a.eulerian
                        ),
                    ));
                    reports.push(json!({"n": n, "k": k, "graded": a.graded, "thin": a.thin, "eulerian": a.eulerian, "first_violation": a.first_violation}));
                }
            }
            let ok = reports
                .iter()
                .all(|r| r["graded"] == true && r["thin"] == true && r["eulerian"] == true);
            Outcome::new(&name, params, reports, text, ok)
        }
        VerifyKind::Psi => {
            let mut reports = Vec::new();
            for n in 2..=nmax {
                for k in 1..n {
                    let qj = build_qj(n, k).map_err(runtime)?;
                    for (u, _) in grassmannian_reps(n, k).map_err(runtime)? {
                        let r = psi_interval_check(&qj, &u).map_err(runtime)?;
                        text.push_str(&status_line(
                            r.passed(),
                            &format!("n={n} k={k} u={u} interval={}", r.interval_size),
                        ));
                        reports.push(r);
                    }
                }
            }
            let ok = reports.iter().all(|r| r.passed());
            Outcome::new(&name, params, reports, text, ok)
        }
        VerifyKind::Conjecture => {
            let r = verify_conjecture(nmax, budget).map_err(runtime)?;
            for c in &r.cases {
                text.push_str(&status_line(
                    c.status.is_pass(),
                    &format!(
                        "n={} k={} u={} v={} w={} {:?}",
                        c.n, c.k, c.u, c.v, c.w, c.status
                    ),
                ));
            }
            text.push_str(&format!(
                "{} of {} cases passed, {} skipped\n",
                r.passed, r.total, r.skipped
            ));
            let ok = r.all_passed();
            Outcome::new(&name, params, r, text, ok)
        }
        VerifyKind::ZetaPositivity => {
            let r = verify_zeta_positivity(nmax, points, seed, budget).map_err(runtime)?;
            for c in &r.cases {
                text.push_str(&status_line(
                    c.status.is_pass(),
                    &format!("n={} k={} u={} {} ⪯ {}", c.n, c.k, c.u, c.lower, c.upper),
                ));
            }
            text.push_str(&format!(
                "{} of {} chains passed, {} skipped\n",
                r.passed, r.total, r.skipped
            ));
            let ok = r.all_passed();
            Outcome::new(&name, params, r, text, ok)
        }
        VerifyKind::Snider | VerifyKind::Truncation | VerifyKind::Cg => {
            let r = match kind {
                VerifyKind::Snider => verify_snider_cells(nmax, points, seed),
                VerifyKind::Truncation => verify_truncation(nmax, points, seed),
                _ => verify_cg_routes(nmax, instances, seed),
            }
            .map_err(runtime)?;
            for c in &r.cases {
                text.push_str(&status_line(c.status.is_pass(), &c.label));
            }
            text.push_str(&format!("{} of {} cases passed\n", r.passed, r.total));
            let ok = r.all_passed();
            Outcome::new(&name, params, r, text, ok)
        }
    }
}
