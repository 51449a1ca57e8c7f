//! Acceptance suite: one line per criterion, exit status non-zero if any
//! blocking criterion fails.

use hardy_core::arith::build_sieves;
use hardy_core::equidist::{
    distribution_tables, lambda_split, ramanujan_direct, ramanujan_von_sterneck, uniformity_stats, weyl_sweep,
    Variant,
};
use hardy_core::modular::{cocycle_check, nu_r, random_theta_element, random_theta_element_signed, verify_theta_transform};
use hardy_core::spectral::{
    eisenstein_direct, eisenstein_fourier_with, gamma_complex, perron_partial, whittaker_w, EisensteinParams,
    FourierConvention,
};
use hardy_core::summation::ordered_map;
use hardy_core::sums::batch_row;
use hardy_core::{Complex64, ExactRational, ParityClass, RationalParam};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
}

struct Outcome {
    status: Status,
    /// A failing criterion that does not fail the run.
    blocking: bool,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: String) -> Self {
        Self {
            status: if ok { Status::Pass } else { Status::Fail },
            blocking: true,
            detail,
        }
    }
}

fn r(j: i64, m: i64) -> RationalParam {
    RationalParam::new(j, m)
}

fn parity_law() -> Outcome {
    let per_c = ordered_map(2..=2000, |c| {
        let mut checked = 0u64;
        let mut bad = 0u64;
        for class in [ParityClass::Theta, ParityClass::Four] {
            for rec in batch_row(c, class).unwrap() {
                for v in [rec.s, rec.s4].into_iter().flatten() {
                    checked += 1;
                    if (v.rem_euclid(2) == 1) != rec.c_is_even() {
                        bad += 1;
                    }
                }
            }
        }
        (checked, bad)
    });
    let (checked, bad) = per_c.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Outcome::check(bad == 0, format!("{bad} violations among {checked} values of S and S4, c <= 2000"))
}

fn cross_identity() -> Outcome {
    let per_c = ordered_map(2..=2000, |c| {
        let s: std::collections::HashMap<u64, i64> =
            batch_row(c, ParityClass::Theta).unwrap().into_iter().map(|rec| (rec.d, rec.s.unwrap())).collect();
        let rows = batch_row(c, ParityClass::Four).unwrap();
        let bad = rows.iter().filter(|rec| s.get(&(c - rec.d)) != Some(&rec.s4.unwrap())).count() as u64;
        (rows.len() as u64, bad)
    });
    let (checked, bad) = per_c.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Outcome::check(bad == 0, format!("{bad} violations of S(c-d,c) = S4(d,c) among {checked} pairs, c <= 2000"))
}

fn theta_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_301);
    let z = Complex64::new(0.0, 1.0);
    let mut worst = 0.0f64;
    let mut with_theta4 = 0;
    for _ in 0..200 {
        let g = random_theta_element(&mut rng, 40, 40);
        let res = verify_theta_transform(&g, z, 1e-13).unwrap();
        with_theta4 += res.theta4.is_some() as u32;
        worst = worst.max(res.max());
    }
    Outcome::check(
        worst < 1e-8,
        format!("max residual {worst:.3e} over 200 elements (theta4 law at {with_theta4}), z = i"),
    )
}

fn cocycle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_302);
    let rs = [r(1, 8), r(1, 3), r(1, 2), r(5, 6)];
    let mut worst = 0.0f64;
    let mut worst_hom = 0.0f64;
    for _ in 0..500 {
        let g = random_theta_element_signed(&mut rng, 30, 60);
        let h = random_theta_element_signed(&mut rng, 30, 60);
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0));
        for &rr in &rs {
            worst = worst.max(cocycle_check(&g, &h, z, rr).unwrap());
        }
        let half = r(1, 2);
        let lhs = nu_r(&(g * h), half).unwrap();
        let rhs = nu_r(&g, half).unwrap() * nu_r(&h, half).unwrap();
        worst_hom = worst_hom.max((lhs - rhs).norm());
    }
    Outcome::check(
        worst < 1e-8 && worst_hom <= 1e-10,
        format!("max cocycle residual {worst:.3e} (500 pairs x 4 r); nu_1/2 multiplicativity {worst_hom:.1e}"),
    )
}

fn ramanujan() -> Outcome {
    let per_c = ordered_map(1..=500, |c| {
        let mut mismatch = 0u32;
        let mut over = 0u32;
        for n in (-20..=20i64).filter(|&n| n != 0) {
            let direct = ramanujan_direct(c, n);
            mismatch += (direct != ramanujan_von_sterneck(c, n).unwrap()) as u32;
            over += (direct.unsigned_abs() > n.unsigned_abs()) as u32;
        }
        (mismatch, over)
    });
    let (mismatch, over) = per_c.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Outcome::check(
        mismatch == 0 && over == 0,
        format!("{mismatch} mismatches, {over} bound violations for c <= 500, 1 <= |n| <= 20"),
    )
}

fn counting() -> Outcome {
    let big_n = 100_000u64;
    let sieve = build_sieves(big_n).unwrap();
    let phi = sieve.phi_theta_count(big_n) as f64 / (big_n as f64).powi(2);
    let target = 2.0 / PI / PI;
    let (l1, l2) = lambda_split(big_n).unwrap();
    let diff = (l1 - l2).abs();
    let lam = *diff.numer() as f64 / *diff.denom() as f64 / (big_n as f64).powi(2);
    let rel = (phi / target - 1.0).abs();
    Outcome::check(
        rel < 0.01 && lam < 0.01,
        format!("Phi_theta(1e5)/1e10 = {phi:.7} ({:.3}% from 2/pi^2); |L1-L2|/N^2 = {lam:.2e}", 100.0 * rel),
    )
}

fn half_identity() -> Outcome {
    let grid = [10u64, 100, 1000, 4000];
    let series = weyl_sweep(4000, &[(0, r(1, 2))], Variant::S, &grid[..3]).unwrap().remove(0);
    let mut literal_gaps = Vec::new();
    let mut corrected_ok = true;
    for (k, &big_n) in grid.iter().enumerate() {
        assert_eq!(series.checkpoints[k], big_n);
        let w = series.partials[k];
        let (l1, l2) = lambda_split(big_n).unwrap();
        let exact = l2 - l1;
        let gap = exact - ExactRational::from_integer(w.re.round() as i64);
        corrected_ok &= w.im == 0.0 && w.re.fract() == 0.0 && gap == ExactRational::new(1, 2);
        literal_gaps.push(format!("N={big_n}: W={} L2-L1={exact}", w.re));
    }
    // W is an integer and Lambda_2 - Lambda_1 is a half-integer (phi(1)/2 from c = 1),
    // so the literal identity cannot hold; the exact relation is W = L2 - L1 - 1/2.
    Outcome {
        status: Status::Fail,
        blocking: !corrected_ok,
        detail: format!(
            "literal W = L2 - L1 unattainable: {}; W = L2 - L1 - 1/2 exactly at all four N: {}",
            literal_gaps.join(", "),
            if corrected_ok { "yes" } else { "NO" }
        ),
    }
}

fn weyl_decay() -> Outcome {
    let rs = [r(1, 2), r(1, 3), r(2, 3), r(1, 4), r(1, 5), r(1, 6)];
    let configs: Vec<(i64, RationalParam)> = rs.iter().flat_map(|&rr| [(0, rr), (1, rr)]).collect();
    let series = weyl_sweep(4000, &configs, Variant::S, &[500]).unwrap();
    let mut ok = true;
    let mut worst_ratio = 0.0f64;
    let mut worst_final = 0.0f64;
    for s in &series {
        let (early, late) = (s.normalized[0], s.normalized[1]);
        ok &= late < 0.5 * early && late < 0.1;
        worst_ratio = worst_ratio.max(late / early);
        worst_final = worst_final.max(late);
    }
    Outcome::check(
        ok,
        format!("12 configs: max ratio(4000)/ratio(500) = {worst_ratio:.3}, max ratio(4000) = {worst_final:.2e}"),
    )
}

fn uniformity() -> Outcome {
    let tables = distribution_tables(4000, &[2, 3, 4, 5], Variant::S, 8).unwrap();
    let mut worst = 0.0f64;
    for t in &tables {
        worst = worst.max(uniformity_stats(t).unwrap().max_rel_dev);
    }
    let joint = tables[1].joint_max_rel_dev();
    Outcome::check(
        worst < 0.05 && joint < 0.10,
        format!("max residue deviation {:.3}% (m = 2..5), joint 8x3 max cell deviation {:.3}%", 100.0 * worst, 100.0 * joint),
    )
}

fn eisenstein() -> Outcome {
    let p = EisensteinParams::new(r(1, 8), Complex64::new(2.0, 0.5), Complex64::new(0.2, 1.0));
    let direct = eisenstein_direct(&p).unwrap();
    let mut lines = Vec::new();
    let mut chosen = None;
    for conv in FourierConvention::ALL {
        let f = eisenstein_fourier_with(&p, conv).unwrap().point.value;
        let gap = (f - direct.value).norm() / direct.value.norm();
        lines.push(format!("{:?}/{:?} gap {gap:.2e}", conv.whittaker, conv.coefficients));
        if conv == FourierConvention::default() {
            chosen = Some(gap);
        }
    }
    let gap = chosen.expect("default convention evaluated");
    Outcome::check(
        gap <= 1e-3,
        format!("direct {:.10} (tail {:.1e}); {}", direct.value, direct.tail_bound, lines.join("; ")),
    )
}

fn special_functions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_311);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let s = Complex64::new(rng.gen_range(-5.0..6.0), rng.gen_range(-5.0..5.0));
        let g = gamma_complex(s).unwrap();
        let rec = (gamma_complex(s + 1.0).unwrap() - s * g).norm() / (s * g).norm();
        let refl_want = PI / (PI * s).sin();
        let refl = (g * gamma_complex(1.0 - s).unwrap() - refl_want).norm() / refl_want.norm();
        worst = worst.max(rec).max(refl);
    }
    let mut w_err = 0.0f64;
    for k in 0..=195 {
        let x = 0.5 + 0.1 * k as f64;
        let w = whittaker_w(0.0, Complex64::new(0.5, 0.0), x).unwrap();
        w_err = w_err.max((w - (-x / 2.0).exp()).norm());
    }
    Outcome::check(
        worst < 1e-10 && w_err < 1e-10,
        format!("Gamma recurrence/reflection max rel {worst:.1e}; |W_0,1/2(x) - e^(-x/2)| max {w_err:.1e} on [0.5, 20]"),
    )
}

fn perron() -> Outcome {
    let ts = [200.0, 400.0, 800.0, 1600.0];
    let runs: Vec<_> = ts.iter().map(|&t| perron_partial(r(1, 2), 0, 10.5, t, 1.25).unwrap()).collect();
    let shrinking = runs.windows(2).all(|w| w[1].discrepancy < w[0].discrepancy);
    let overall = runs[runs.len() - 1].discrepancy < runs[0].discrepancy;
    let detail = runs
        .iter()
        .zip(ts)
        .map(|(d, t)| format!("T={t}: {:.4} (disc {:.4})", d.integral.re, d.discrepancy))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome {
        status: if shrinking { Status::Pass } else { Status::Fail },
        blocking: false,
        detail: format!(
            "r=1/2 n=0 N=10.5 alpha=1.25 exact {}; {detail}; every doubling shrinks: {}; T=200 within 15%: {}; T=1600 below T=200: {}",
            runs[0].exact.re,
            if shrinking { "yes" } else { "no" },
            if runs[0].discrepancy <= 0.15 { "yes" } else { "no" },
            if overall { "yes" } else { "no" },
        ),
    }
}

fn main() -> ExitCode {
    // Answer libtest-style listing so `cargo test -- --list` stays well-formed.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("parity law", parity_law),
        ("cross identity", cross_identity),
        ("theta transformation", theta_oracle),
        ("multiplier cocycle", cocycle),
        ("Ramanujan sums", ramanujan),
        ("counting asymptotics", counting),
        ("m = 2 identity", half_identity),
        ("Weyl decay", weyl_decay),
        ("uniformity", uniformity),
        ("Eisenstein expansion", eisenstein),
        ("special functions", special_functions),
        ("Perron diagnostic", perron),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let tag = match (out.status, out.blocking) {
            (Status::Pass, _) => "PASS",
            (Status::Fail, true) => "FAIL",
            (Status::Fail, false) => "FAIL (non-blocking)",
        };
        if out.status == Status::Fail && out.blocking {
            failed += 1;
        }
        println!(
            "criterion {:>2} {tag}: {name}: {} [{:.1} s]",
            i + 1,
            out.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("acceptance: {failed} blocking criteria failed");
        ExitCode::FAILURE
    } else {
        println!("acceptance: all blocking criteria passed");
        ExitCode::SUCCESS
    }
}
