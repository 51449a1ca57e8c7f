//! Whittaker `W_{kappa, mu}(x)` from the Laplace-type integral
//!
//! `W = x^kappa e^(-x/2) / Gamma(a) * int_0^inf e^(-u) u^(a-1) (1 + u/x)^b du`,
//! `a = mu - kappa + 1/2`, `b = mu + kappa - 1/2`, valid for `Re a > 0`.
//!
//! The integral is split at `u0 = min(1, x)/2`. The head is integrated term by
//! term from a power series, which absorbs the `u^(a-1)` singularity exactly;
//! the tail uses the double-exponential map `u = u0 + exp(v - e^(-v))` with
//! trapezoidal sums whose step is halved until two successive levels agree.

use super::gamma::gamma_complex;
use crate::{Error, Result};
use num_complex::Complex64;

const MAX_LEVELS: usize = 10;
const REL_TOL: f64 = 1e-14;

pub fn whittaker_w(kappa: f64, mu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("Whittaker W needs x > 0, got {x}")));
    }
    let a = mu - kappa + 0.5;
    let b = mu + kappa - 0.5;
    if !(a.re > 0.0) {
        return Err(Error::domain(format!(
            "integral representation needs Re(mu - kappa + 1/2) > 0, got {a}"
        )));
    }
    let integral = laplace_integral(a, b, x)?;
    let prefactor = (kappa * x.ln() - 0.5 * x).exp();
    Ok(integral * prefactor / gamma_complex(a)?)
}

/// `int_0^inf e^(-u) u^(a-1) (1 + u/x)^b du`, split at `u0 = min(1, x)/2`.
fn laplace_integral(a: Complex64, b: Complex64, x: f64) -> Result<Complex64> {
    let u0 = 0.5 * x.min(1.0);
    Ok(head_series(a, b, x, u0) + tail_quadrature(a, b, x, u0)?)
}

/// `int_0^u0 u^(a-1) g(u) du` with `g(u) = e^(-u) (1 + u/x)^b` expanded in
/// powers of `u`; the series converges like `2^(-k)` since `u0 <= x/2`.
fn head_series(a: Complex64, b: Complex64, x: f64, u0: f64) -> Complex64 {
    const TERMS: usize = 80;
    let mut binom = vec![Complex64::new(1.0, 0.0); TERMS];
    for k in 1..TERMS {
        binom[k] = binom[k - 1] * (b - (k - 1) as f64) / (k as f64 * x);
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut exp_coeff = vec![1.0f64; TERMS];
    for k in 1..TERMS {
        exp_coeff[k] = -exp_coeff[k - 1] / k as f64;
    }
    let log_u0 = u0.ln();
    for k in 0..TERMS {
        let g: Complex64 = (0..=k).map(|i| binom[i] * exp_coeff[k - i]).sum();
        total += g * ((a + k as f64) * log_u0).exp() / (a + k as f64);
    }
    total
}

/// `int_u0^inf` by the map `u = u0 + exp(v - e^(-v))` and step-halved trapezoidal sums.
fn tail_quadrature(a: Complex64, b: Complex64, x: f64, u0: f64) -> Result<Complex64> {
    let f = |v: f64| {
        let ev = (-v).exp();
        let w = (v - ev).exp();
        let u = u0 + w;
        let log = (a - 1.0) * u.ln() + b * (u / x).ln_1p() - u;
        log.exp() * (w * (1.0 + ev))
    };
    let log_mag = |v: f64| f(v).norm().ln();
    let peak = (-12..=40).map(|k| log_mag(0.25 * k as f64)).fold(f64::NEG_INFINITY, f64::max);
    let mut v_lo: f64 = -3.0;
    while log_mag(v_lo) > peak - 46.0 {
        v_lo -= 0.25;
    }
    let mut v_hi: f64 = 10.0;
    while log_mag(v_hi) > peak - 46.0 {
        v_hi += 0.5;
    }

    let span = v_hi - v_lo;
    let mut n = (span / 0.5).ceil() as usize;
    let mut h = span / n as f64;
    let mut sum: Complex64 = (0..=n).map(|k| f(v_lo + k as f64 * h)).sum::<Complex64>() - 0.5 * (f(v_lo) + f(v_hi));
    let mut estimate = sum * h;
    for _ in 0..MAX_LEVELS {
        let mids: Complex64 = (0..n).map(|k| f(v_lo + (k as f64 + 0.5) * h)).sum();
        sum += mids;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        let converged = (next - estimate).norm() <= REL_TOL * next.norm().max(peak.exp());
        estimate = next;
        if converged {
            return Ok(estimate);
        }
    }
    Err(Error::budget(format!(
        "Whittaker quadrature did not converge (a = {a}, b = {b}, x = {x})"
    )))
}
