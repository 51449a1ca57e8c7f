//! Perron inversion of the Weyl-sum Dirichlet series along `[alpha - iT, alpha + iT]`.
//! Diagnostic only: the truncated contour carries no accuracy guarantee.

use super::dirichlet::DirichletCoefficients;
use crate::summation::ComplexSum;
use crate::{Error, RationalParam, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const PANEL_WIDTH: f64 = 0.25;
const PANEL_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerronDiagnostic {
    /// `(1 / 2 pi i) int e(r) Z_r(n, s) N^(2s) / s ds` over the segment.
    pub integral: Complex64,
    /// `sum_{c <= N} sum_d e(-n d / c + r S(d, c))`.
    pub exact: Complex64,
    /// `|integral - exact| / |exact|`, or the absolute gap when `exact = 0`.
    pub discrepancy: f64,
    pub c_max: u64,
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            loop {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    (p0, p1) = (p1, ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k);
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    let weight = 2.0 / ((1.0 - x * x) * dp * dp);
                    return (x, weight);
                }
            }
        })
        .collect()
}

pub fn perron_partial(r: RationalParam, n: i64, big_n: f64, t_max: f64, alpha: f64) -> Result<PerronDiagnostic> {
    if !(alpha > 1.0) {
        return Err(Error::domain(format!("alpha = {alpha} must exceed 1")));
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::domain(format!("T = {t_max} must be positive")));
    }
    if !(big_n > 0.0) || !big_n.is_finite() || big_n.fract() == 0.0 {
        return Err(Error::domain(format!("N = {big_n} must be positive and not an integer")));
    }
    let c_max = ((64.0 * big_n).ceil() as u64).max(64);
    let coeffs = DirichletCoefficients::build(r, &[2 * n], c_max)?;
    let a: Vec<(f64, Complex64)> = (2..=c_max)
        .map(|c| (2.0 * (big_n / c as f64).ln(), coeffs.inner_at(c, 0)))
        .collect();

    let exact = a
        .iter()
        .zip(2..)
        .take_while(|&(_, c)| c as f64 <= big_n)
        .map(|((_, v), _)| *v)
        .collect::<ComplexSum>()
        .value();

    let rule = gauss_legendre(PANEL_ORDER);
    let panels = ((2.0 * t_max) / PANEL_WIDTH).ceil() as usize;
    let h = 2.0 * t_max / panels as f64;
    let mut acc = ComplexSum::new();
    for p in 0..panels {
        let mid = -t_max + (p as f64 + 0.5) * h;
        for &(node, weight) in &rule {
            let s = Complex64::new(alpha, mid + 0.5 * h * node);
            let integrand: Complex64 = a
                .iter()
                .map(|&(log_ratio, v)| v * (s * log_ratio).exp())
                .collect::<ComplexSum>()
                .value()
                / s;
            acc.add(integrand * (0.5 * h * weight));
        }
    }
    let integral = acc.value() / (2.0 * PI);
    let gap = (integral - exact).norm();
    Ok(PerronDiagnostic {
        integral,
        exact,
        discrepancy: if exact.norm() > 0.0 { gap / exact.norm() } else { gap },
        c_max,
    })
}
