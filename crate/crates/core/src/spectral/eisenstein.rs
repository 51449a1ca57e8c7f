//! The Eisenstein series `E_{4r}(z, s; nu_r)` of weight `4r` for the theta
//! group at the cusp `i inf`, by direct coset summation and by its Fourier
//! expansion. Both are truncated and need `Re s > 1`.

use super::dirichlet::{check_abscissa, z_tail_bound, DirichletCoefficients};
use super::gamma::gamma_complex;
use super::whittaker::whittaker_w;
use super::SpectralPoint;
use crate::phase::unit_root;
use crate::summation::{ordered_map, ComplexSum};
use crate::sums::residue_table;
use crate::{unit_interval_parts, Error, RationalParam, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DEFAULT_C_MAX: u64 = 2000;
pub const DEFAULT_D_SPAN: u64 = 50;
pub const DEFAULT_N_MAX: u64 = 8;
pub const DEFAULT_EISENSTEIN_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EisensteinParams {
    pub r: RationalParam,
    pub s: Complex64,
    pub z: Complex64,
    /// Largest lower-left entry `c` in the coset sum, and truncation of `Z_r`.
    pub c_max: u64,
    /// Coset sum keeps `|d| <= d_span * c`.
    pub d_span: u64,
    /// Fourier modes `|n| <= n_max`.
    pub n_max: u64,
    /// Maximum number of coset terms the direct sum may evaluate.
    pub term_budget: u64,
}

impl EisensteinParams {
    pub fn new(r: RationalParam, s: Complex64, z: Complex64) -> Self {
        Self {
            r,
            s,
            z,
            c_max: DEFAULT_C_MAX,
            d_span: DEFAULT_D_SPAN,
            n_max: DEFAULT_N_MAX,
            term_budget: DEFAULT_EISENSTEIN_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<(i64, i64)> {
        check_abscissa(self.s)?;
        if !(self.z.im > 0.0) {
            return Err(Error::domain(format!("z = {} is not in the upper half-plane", self.z)));
        }
        if self.c_max < 1 || self.d_span < 1 {
            return Err(Error::InvalidInput("c_max and d_span must be positive".into()));
        }
        unit_interval_parts(self.r)
    }

    fn weight_half(&self) -> f64 {
        2.0 * (*self.r.numer() as f64) / (*self.r.denom() as f64)
    }
}

struct Row {
    sum: Complex64,
    d_tail: f64,
}

/// `y^(s-2r) + sum_{c >= 1, d} conj(nu_r) (cz+d)^(-4r) (y / |cz+d|^2)^(s-2r)`
/// over coset representatives with `c + d` odd and `gcd(c, d) = 1`.
///
/// `tail_bound` majorises the omitted `|d| > d_span c` and `c > c_max` terms.
pub fn eisenstein_direct(p: &EisensteinParams) -> Result<SpectralPoint> {
    let (j, m) = p.validate()?;
    let span = p.d_span;
    let cost = |c: u64| 2 * span * c + 1;
    let mut used = 0u64;
    let mut c_reach = 0u64;
    while c_reach < p.c_max && used + cost(c_reach + 1) <= p.term_budget {
        c_reach += 1;
        used += cost(c_reach);
    }

    let (x, y) = (p.z.re, p.z.im);
    let two_r = p.weight_half();
    let (sigma, t) = (p.s.re, p.s.im);
    let prefactor = ((p.s - two_r) * y.ln()).exp();

    let rows = ordered_map(1..=c_reach, |c| {
        let table = residue_table(c);
        let conj_nu: Vec<Complex64> = table
            .iter()
            .map(|v| match v {
                Some(sv) => unit_root(-(j as i128) * (*sv as i128 - 1), m as i128),
                None => Complex64::new(0.0, 0.0),
            })
            .collect();
        let ci = c as i64;
        let bound = (span * c) as i64;
        let mut acc = ComplexSum::new();
        for d in -bound..=bound {
            let idx = d.rem_euclid(2 * ci) as usize;
            if table[idx].is_none() {
                continue;
            }
            let w = Complex64::new(c as f64 * x + d as f64, c as f64 * y);
            let log_abs = 0.5 * w.norm_sqr().ln();
            let phase = -2.0 * t * log_abs - 2.0 * two_r * w.im.atan2(w.re);
            acc.add(conj_nu[idx] * Complex64::from_polar((-2.0 * sigma * log_abs).exp(), phase));
        }
        let first_omitted = (span * c) as f64 + 1.0 - c as f64 * x.abs();
        let d_tail = if first_omitted >= 1.0 {
            2.0 * (first_omitted.powf(-2.0 * sigma) + first_omitted.powf(1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0))
        } else {
            f64::INFINITY
        };
        Row { sum: acc.value(), d_tail }
    });

    let mut total = ComplexSum::new();
    total.add(Complex64::new(1.0, 0.0));
    let mut d_tail = 0.0;
    for row in &rows {
        total.add(row.sum);
        d_tail += row.d_tail;
    }
    let value = prefactor * total.value();
    let tail_bound = prefactor.norm() * (d_tail + c_tail(sigma, y, c_reach));

    if c_reach < p.c_max {
        return Err(Error::Budget {
            what: format!(
                "direct Eisenstein sum stopped at c = {c_reach} of {} after {used} terms",
                p.c_max
            ),
            partial: Some(value),
            tail_bound: Some(prefactor.norm() * (d_tail + c_tail(sigma, y, c_reach))),
        });
    }
    Ok(SpectralPoint {
        r: p.r,
        n: 0,
        s: p.s,
        c_max: p.c_max,
        value,
        tail_bound,
    })
}

/// Bound on `sum_{c > c_max} sum_d |cz + d|^(-2 sigma)`: per `c`, the sum of a
/// unimodal function is at most its integral plus its maximum.
fn c_tail(sigma: f64, y: f64, c_max: u64) -> f64 {
    let c = c_max.max(1) as f64;
    let beta = PI.sqrt() * gamma_complex(Complex64::new(sigma - 0.5, 0.0)).map_or(f64::INFINITY, |g| g.re)
        / gamma_complex(Complex64::new(sigma, 0.0)).map_or(f64::NAN, |g| g.re);
    if c_max == 0 {
        return f64::INFINITY;
    }
    y.powf(-2.0 * sigma) * c.powf(1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0)
        + beta * y.powf(1.0 - 2.0 * sigma) * c.powf(2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0)
}

/// Argument scale of the Whittaker factor in the non-constant modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WhittakerScale {
    /// `W(2 pi |n| y)`.
    TwoPi,
    /// `W(4 pi |n| y)`.
    FourPi,
}

/// Which Dirichlet series feeds the Fourier coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientSeries {
    /// Coefficients of the coset sum itself: mode `n` pairs with `Z_r(n/2, s)`
    /// and `Z_r(n/2, conj s)`, and the `c = 1` coset adds the constant `1`.
    Coset,
    /// `e(r) Z_r(n, s)` with `|n|^(s-1)`, as printed in the expansion.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourierConvention {
    pub whittaker: WhittakerScale,
    pub coefficients: CoefficientSeries,
}

impl Default for FourierConvention {
    fn default() -> Self {
        Self {
            whittaker: WhittakerScale::TwoPi,
            coefficients: CoefficientSeries::Coset,
        }
    }
}

impl FourierConvention {
    pub const ALL: [FourierConvention; 4] = [
        FourierConvention { whittaker: WhittakerScale::TwoPi, coefficients: CoefficientSeries::Coset },
        FourierConvention { whittaker: WhittakerScale::FourPi, coefficients: CoefficientSeries::Coset },
        FourierConvention { whittaker: WhittakerScale::TwoPi, coefficients: CoefficientSeries::Literal },
        FourierConvention { whittaker: WhittakerScale::FourPi, coefficients: CoefficientSeries::Literal },
    ];
}

/// Fourier-side evaluation, split into the constant term and the full value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierValue {
    pub constant_term: Complex64,
    pub point: SpectralPoint,
}

/// `phi(s) = pi 2^(2-2s) Gamma(2s-1) / (Gamma(s-2r) Gamma(s+2r))`, without the series factor.
pub fn constant_gamma_factor(two_r: f64, s: Complex64) -> Result<Complex64> {
    let num = gamma_complex(2.0 * s - 1.0)? * PI * ((2.0 - 2.0 * s) * 2f64.ln()).exp();
    Ok(num / (gamma_complex(s - two_r)? * gamma_complex(s + two_r)?))
}

pub fn eisenstein_fourier(p: &EisensteinParams) -> Result<SpectralPoint> {
    Ok(eisenstein_fourier_with(p, FourierConvention::default())?.point)
}

pub fn eisenstein_fourier_with(p: &EisensteinParams, conv: FourierConvention) -> Result<FourierValue> {
    let (j, m) = p.validate()?;
    let (x, y) = (p.z.re, p.z.im);
    let s = p.s;
    let two_r = p.weight_half();
    let n_max = p.n_max as i64;
    let c_max = p.c_max.max(2);
    let modes: Vec<i64> = (-n_max..=n_max).collect();
    let e_r = unit_root(j as i128, m as i128);

    let (twice, freq_scale) = match conv.coefficients {
        CoefficientSeries::Coset => (modes.clone(), 0.5),
        CoefficientSeries::Literal => (modes.iter().map(|n| 2 * n).collect::<Vec<_>>(), 1.0),
    };
    let series = DirichletCoefficients::build(p.r, &twice, c_max)?;
    let factor = |k: usize| -> Result<Complex64> {
        let z_s = series.z(k, s)?;
        Ok(match conv.coefficients {
            CoefficientSeries::Coset => {
                let z_conj = series.z(k, s.conj())?;
                0.5 * (1.0 + e_r * z_s + e_r.conj() * z_conj.conj())
            }
            CoefficientSeries::Literal => e_r * z_s,
        })
    };
    let series_tail = z_tail_bound(s.re, c_max);
    let whittaker_scale = match conv.whittaker {
        WhittakerScale::TwoPi => 2.0 * PI,
        WhittakerScale::FourPi => 4.0 * PI,
    };

    let zero = modes.iter().position(|&n| n == 0).expect("mode 0 present");
    let phi0 = constant_gamma_factor(two_r, s)?;
    let constant_term = ((s - two_r) * y.ln()).exp() + phi0 * factor(zero)? * ((1.0 - s - two_r) * y.ln()).exp();
    let mut total = ComplexSum::new();
    total.add(constant_term);
    let mut tail = (phi0 * ((1.0 - s - two_r) * y.ln()).exp()).norm() * series_tail;
    let mut last_mode = 0.0f64;
    for (k, &n) in modes.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let sign = n.signum() as f64;
        let freq = freq_scale * n.unsigned_abs() as f64;
        let gamma = gamma_complex(s + sign * two_r)?;
        let w = whittaker_w(sign * two_r, s - 0.5, whittaker_scale * n.unsigned_abs() as f64 * y)?;
        let coefficient = (s * PI.ln() + (s - 1.0) * freq.ln()).exp() / gamma * w * y.powf(-two_r);
        let term = coefficient * factor(k)? * Complex64::from_polar(1.0, PI * n as f64 * x);
        total.add(term);
        tail += coefficient.norm() * series_tail;
        if n.unsigned_abs() == p.n_max {
            last_mode += term.norm();
        }
    }
    Ok(FourierValue {
        constant_term,
        point: SpectralPoint {
            r: p.r,
            n: 0,
            s,
            c_max,
            value: total.value(),
            tail_bound: tail + last_mode,
        },
    })
}
