//! Verification suites. Each check prints one JSON object:
//! `{suite, case, status, residual, budget, seed, ...}`.

use crate::config::Config;
use crate::CliError;
use clap::{Args, ValueEnum};
use hardy_core::equidist::{ramanujan_direct, ramanujan_von_sterneck};
use hardy_core::modular::{
    cocycle_check, nu_r, random_theta_element, random_theta_element_signed, verify_theta_transform_budgeted,
    DEFAULT_TERM_BUDGET,
};
use hardy_core::spectral::{eisenstein_direct, eisenstein_fourier, EisensteinParams, DEFAULT_EISENSTEIN_BUDGET};
use hardy_core::summation::ordered_map;
use hardy_core::sums::batch_row;
use hardy_core::{Complex64, Error, ParityClass, RationalParam};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::io::Write;

const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Suite {
    Parity,
    Cross,
    Theta,
    Cocycle,
    Ramanujan,
    Eisenstein,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Parity => "parity",
            Suite::Cross => "cross",
            Suite::Theta => "theta",
            Suite::Cocycle => "cocycle",
            Suite::Ramanujan => "ramanujan",
            Suite::Eisenstein => "eisenstein",
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    suite: Suite,
    /// Largest denominator (parity, cross, ramanujan, eisenstein) or lower-left entry (theta, cocycle).
    #[arg(long)]
    cmax: Option<u64>,
    /// Number of random samples (theta, cocycle).
    #[arg(long)]
    count: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Pass threshold for the residual.
    #[arg(long)]
    tol: Option<f64>,
    /// Rational parameter(s) `j/m`, comma-separated for cocycle.
    #[arg(long)]
    r: Option<String>,
    /// Complex exponent, e.g. `2+0.5i`.
    #[arg(long)]
    s: Option<String>,
    /// Point in the upper half-plane, e.g. `0.2+1i`.
    #[arg(long)]
    z: Option<String>,
    /// Largest |n|: Fourier modes (eisenstein) or frequencies (ramanujan).
    #[arg(long = "n-max")]
    n_max: Option<u64>,
    #[arg(long = "d-span")]
    d_span: Option<u64>,
    /// Term budget (theta series terms, or coset terms for eisenstein).
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Debug, Serialize)]
struct Report {
    suite: &'static str,
    case: String,
    status: &'static str,
    residual: f64,
    budget: Option<u64>,
    seed: Option<u64>,
    threshold: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    counterexamples: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

impl Report {
    fn new(suite: Suite, case: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self {
            suite: suite.name(),
            case: case.into(),
            status: if residual <= threshold { "pass" } else { "fail" },
            residual,
            budget: None,
            seed: None,
            threshold,
            counterexamples: Vec::new(),
            detail: None,
        }
    }
}

/// Parses `j/m` in lowest or unreduced form; decimals are rejected.
pub fn parse_rational(text: &str) -> Result<RationalParam, CliError> {
    let bad = || CliError::Usage(format!("r must be written j/m with integers, got {text:?}"));
    let (j, m) = text.trim().split_once('/').ok_or_else(bad)?;
    let j: i64 = j.trim().parse().map_err(|_| bad())?;
    let m: i64 = m.trim().parse().map_err(|_| bad())?;
    if m == 0 {
        return Err(bad());
    }
    Ok(RationalParam::new(j, m))
}

pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    // Accept a bare `i` coefficient (`0.2+i`, `-i`).
    let normalized = if compact.ends_with('i') {
        let head = &compact[..compact.len() - 1];
        if head.is_empty() || head.ends_with('+') || head.ends_with('-') {
            format!("{head}1i")
        } else {
            compact.clone()
        }
    } else {
        compact.clone()
    };
    normalized
        .parse::<Complex64>()
        .map_err(|e| CliError::Usage(format!("cannot parse complex number {text:?}: {e}")))
}

pub fn run(args: VerifyArgs, cfg: &Config) -> Result<(), CliError> {
    let reports = match args.suite {
        Suite::Parity => parity(&args, cfg)?,
        Suite::Cross => cross(&args, cfg)?,
        Suite::Theta => theta(&args, cfg)?,
        Suite::Cocycle => cocycle(&args, cfg)?,
        Suite::Ramanujan => ramanujan(&args, cfg)?,
        Suite::Eisenstein => eisenstein(&args, cfg)?,
    };
    let mut out = std::io::stdout().lock();
    for r in &reports {
        writeln!(out, "{}", serde_json::to_string(r)?)?;
    }
    out.flush()?;
    let failed: Vec<&str> = reports.iter().filter(|r| r.status == "fail").map(|r| r.case.as_str()).collect();
    if !failed.is_empty() {
        return Err(CliError::Math(format!("{} suite: {}", args.suite.name(), failed.join(", "))));
    }
    if reports.iter().any(|r| r.status == "budget") {
        return Err(CliError::Budget(format!("{} suite ran out of budget", args.suite.name())));
    }
    Ok(())
}

fn counted(suite: Suite, case: &str, rows: Vec<(u64, Vec<String>)>) -> Report {
    let violations: u64 = rows.iter().map(|r| r.0).sum();
    let mut report = Report::new(suite, case, violations as f64, 0.0);
    report.counterexamples = rows.into_iter().flat_map(|r| r.1).take(MAX_COUNTEREXAMPLES).collect();
    report
}

fn parity(args: &VerifyArgs, cfg: &Config) -> Result<Vec<Report>, CliError> {
    let cmax = cfg.resolve_or(args.cmax, "cmax", 2000)?;
    let mut reports = Vec::new();
    for (case, class) in [("S", ParityClass::Theta), ("S4", ParityClass::Four)] {
        let rows = ordered_map(2..=cmax, |c| {
            let mut bad = Vec::new();
            for rec in batch_row(c, class).unwrap() {
                let v = if class == ParityClass::Theta { rec.s } else { rec.s4 }.unwrap();
                if (v.rem_euclid(2) == 1) != rec.c_is_even() {
                    bad.push(format!("{case}({},{}) = {v}", rec.d, rec.c));
                }
            }
            (bad.len() as u64, bad)
        });
        reports.push(counted(Suite::Parity, case, rows));
    }
    Ok(reports)
}

fn cross(args: &VerifyArgs, cfg: &Config) -> Result<Vec<Report>, CliError> {
    let cmax = cfg.resolve_or(args.cmax, "cmax", 2000)?;
    let rows = ordered_map(2..=cmax, |c| {
        let s: HashMap<u64, i64> = batch_row(c, ParityClass::Theta)
            .unwrap()
            .into_iter()
            .map(|rec| (rec.d, rec.s.unwrap()))
            .collect();
        let mut bad = Vec::new();
        for rec in batch_row(c, ParityClass::Four).unwrap() {
            let lhs = s.get(&(c - rec.d)).copied();
            if lhs != rec.s4 {
                bad.push(format!("S({},{c}) = {lhs:?} but S4({},{c}) = {:?}", c - rec.d, rec.d, rec.s4));
            }
        }
        (bad.len() as u64, bad)
    });
    Ok(vec![counted(Suite::Cross, "S(c-d,c) = S4(d,c)", rows)])
}

fn budget_report(suite: Suite, case: &str, budget: u64, seed: Option<u64>, e: &Error) -> Report {
    let mut r = Report::new(suite, case, f64::NAN, 0.0);
    r.status = "budget";
    r.budget = Some(budget);
    r.seed = seed;
    r.detail = Some(e.to_string());
    r
}

fn theta(args: &VerifyArgs, cfg: &Config) -> Result<Vec<Report>, CliError> {
    let cmax = cfg.resolve_or(args.cmax, "cmax", 40)? as i64;
    let count = cfg.resolve_or(args.count, "count", 200)?;
    let seed = cfg.resolve_or(args.seed, "seed", 1)?;
    let tol = cfg.resolve_or(args.tol, "tol", 1e-8)?;
    let budget = cfg.resolve_or(args.budget, "budget", DEFAULT_TERM_BUDGET)?;
    let z = parse_complex(&cfg.resolve_or(args.z.clone(), "z", "i".to_string())?)?;
    if cmax < 1 {
        return Err(CliError::Usage("cmax must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst, mut worst4, mut n4) = (0.0f64, 0.0f64, 0u64);
    let (mut bad, mut bad4) = (Vec::new(), Vec::new());
    for _ in 0..count {
        let g = random_theta_element(&mut rng, cmax, cmax);
        let res = match verify_theta_transform_budgeted(&g, z, 1e-14, budget) {
            Ok(res) => res,
            Err(e) if e.is_budget() => return Ok(vec![budget_report(Suite::Theta, "theta", budget, Some(seed), &e)]),
            Err(e) => return Err(e.into()),
        };
        worst = worst.max(res.theta);
        if res.theta > tol {
            bad.push(format!("{g:?}: {:.3e}", res.theta));
        }
        if let Some(r4) = res.theta4 {
            n4 += 1;
            worst4 = worst4.max(r4);
            if r4 > tol {
                bad4.push(format!("{g:?}: {r4:.3e}"));
            }
        }
    }
    let mut reports = Vec::new();
    for (case, residual, ce, n) in [("theta", worst, bad, count), ("theta4", worst4, bad4, n4)] {
        let mut r = Report::new(Suite::Theta, case, residual, tol);
        r.seed = Some(seed);
        r.budget = Some(budget);
        r.counterexamples = ce.into_iter().take(MAX_COUNTEREXAMPLES).collect();
        r.detail = Some(format!("{n} elements, z = {z}"));
        reports.push(r);
    }
    Ok(reports)
}

fn cocycle(args: &VerifyArgs, cfg: &Config) -> Result<Vec<Report>, CliError> {
    let cmax = cfg.resolve_or(args.cmax, "cmax", 30)? as i64;
    let count = cfg.resolve_or(args.count, "count", 500)?;
    let seed = cfg.resolve_or(args.seed, "seed", 1)?;
    let tol = cfg.resolve_or(args.tol, "tol", 1e-8)?;
    let rs = cfg
        .resolve_or(args.r.clone(), "r", "1/8,1/3,1/2,5/6".to_string())?
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    if cmax < 1 {
        return Err(CliError::Usage("cmax must be >= 1".into()));
    }
    for &r in &rs {
        hardy_core::unit_interval_parts(r)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = vec![0.0f64; rs.len()];
    let mut worst_hom = 0.0f64;
    let half = RationalParam::new(1, 2);
    for _ in 0..count {
        let g = random_theta_element_signed(&mut rng, cmax, 2 * cmax);
        let h = random_theta_element_signed(&mut rng, cmax, 2 * cmax);
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0));
        for (w, &r) in worst.iter_mut().zip(&rs) {
            *w = w.max(cocycle_check(&g, &h, z, r)?);
        }
        let hom = (nu_r(&(g * h), half)? - nu_r(&g, half)? * nu_r(&h, half)?).norm();
        worst_hom = worst_hom.max(hom);
    }
    let mut reports: Vec<Report> = rs
        .iter()
        .zip(worst)
        .map(|(r, w)| {
            let mut rep = Report::new(Suite::Cocycle, format!("r={r}"), w, tol);
            rep.seed = Some(seed);
            rep
        })
        .collect();
    let mut hom = Report::new(Suite::Cocycle, "nu_1/2 multiplicative", worst_hom, 1e-10);
    hom.seed = Some(seed);
    reports.push(hom);
    Ok(reports)
}

fn ramanujan(args: &VerifyArgs, cfg: &Config) -> Result<Vec<Report>, CliError> {
    let cmax = cfg.resolve_or(args.cmax, "cmax", 500)?;
    let n_max = cfg.resolve_or(args.n_max, "n-max", 20)? as i64;
    let rows = ordered_map(1..=cmax, |c| {
        let (mut mismatch, mut over) = (Vec::new(), Vec::new());
        for n in (-n_max..=n_max).filter(|&n| n != 0) {
            let direct = ramanujan_direct(c, n);
            let closed = ramanujan_von_sterneck(c, n).unwrap();
            if direct != closed {
                mismatch.push(format!("R_{c}({n}): {direct} vs {closed}"));
            }
            if direct.unsigned_abs() > n.unsigned_abs() {
                over.push(format!("|R_{c}({n})| = {}", direct.abs()));
            }
        }
        (mismatch, over)
    });
    let (mismatch, over): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let pack = |v: Vec<Vec<String>>| v.into_iter().map(|x| (x.len() as u64, x)).collect::<Vec<_>>();
    Ok(vec![
        counted(Suite::Ramanujan, "von Sterneck = direct", pack(mismatch)),
        counted(Suite::Ramanujan, "|R_c(n)| <= |n|", pack(over)),
    ])
}

fn eisenstein(args: &VerifyArgs, cfg: &Config) -> Result<Vec<Report>, CliError> {
    let r = parse_rational(&cfg.resolve_or(args.r.clone(), "r", "1/8".to_string())?)?;
    let s = parse_complex(&cfg.resolve_or(args.s.clone(), "s", "2+0.5i".to_string())?)?;
    let z = parse_complex(&cfg.resolve_or(args.z.clone(), "z", "0.2+1i".to_string())?)?;
    let tol = cfg.resolve_or(args.tol, "tol", 1e-3)?;
    let mut p = EisensteinParams::new(r, s, z);
    p.c_max = cfg.resolve_or(args.cmax, "cmax", p.c_max)?;
    p.n_max = cfg.resolve_or(args.n_max, "n-max", p.n_max)?;
    p.d_span = cfg.resolve_or(args.d_span, "d-span", p.d_span)?;
    p.term_budget = cfg.resolve_or(args.budget, "budget", DEFAULT_EISENSTEIN_BUDGET)?;
    let case = "fourier vs direct";
    let direct = match eisenstein_direct(&p) {
        Ok(v) => v,
        Err(e) if e.is_budget() => return Ok(vec![budget_report(Suite::Eisenstein, case, p.term_budget, None, &e)]),
        Err(e) => return Err(e.into()),
    };
    let fourier = eisenstein_fourier(&p)?;
    let gap = (fourier.value - direct.value).norm() / direct.value.norm();
    let mut rep = Report::new(Suite::Eisenstein, case, gap, tol);
    rep.budget = Some(p.term_budget);
    rep.detail = Some(format!(
        "r = {r}, s = {s}, z = {z}, c_max = {}, n_max = {}: direct {} (tail {:.1e}), fourier {}",
        p.c_max, p.n_max, direct.value, direct.tail_bound, fourier.value
    ));
    Ok(vec![rep])
}
