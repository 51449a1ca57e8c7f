//! Truncated Dirichlet series of the Weyl sums,
//! `Z_r(n, s) = e(-r) sum_c c^(-2s) sum_{1 <= d < c, c + d odd} e(-n d / c + r S(d, c))`.
//!
//! Frequencies are carried doubled (`twice_n`) so that the half-integer
//! frequencies of the Eisenstein expansion use the same code.

use super::SpectralPoint;
use crate::arith::ParityClass;
use crate::phase::unit_root;
use crate::summation::{ordered_map, ComplexSum};
use crate::sums::class_row;
use crate::{unit_interval_parts, Error, RationalParam, Result};
use num_complex::Complex64;

/// Inner sums `a_c(t) = sum_d e(-(t/2) d/c + r S(d, c))` for `2 <= c <= c_max`
/// and a set of doubled frequencies `t`.
#[derive(Debug, Clone)]
pub struct DirichletCoefficients {
    r: RationalParam,
    twice_n: Vec<i64>,
    c_max: u64,
    /// `inner[c - 2][k]` belongs to frequency `twice_n[k]`.
    inner: Vec<Vec<Complex64>>,
}

impl DirichletCoefficients {
    pub fn build(r: RationalParam, twice_n: &[i64], c_max: u64) -> Result<Self> {
        let (j, m) = unit_interval_parts(r)?;
        if c_max < 2 {
            return Err(Error::InvalidInput(format!("c_max must be >= 2, got {c_max}")));
        }
        let (j, m) = (j as i128, m as i128);
        let inner = ordered_map(2..=c_max, |c| {
            let row = class_row(c, ParityClass::Theta);
            let c = c as i128;
            twice_n
                .iter()
                .map(|&t| {
                    let t = t as i128;
                    row.d
                        .iter()
                        .zip(&row.value)
                        .map(|(&d, &v)| unit_root(-t * d as i128 * m + 2 * j * v as i128 * c, 2 * c * m))
                        .collect::<ComplexSum>()
                        .value()
                })
                .collect()
        });
        Ok(Self {
            r,
            twice_n: twice_n.to_vec(),
            c_max,
            inner,
        })
    }

    pub fn r(&self) -> RationalParam {
        self.r
    }

    pub fn c_max(&self) -> u64 {
        self.c_max
    }

    pub fn frequencies(&self) -> &[i64] {
        &self.twice_n
    }

    /// Inner sum `a_c` for the `k`-th frequency; zero for `c < 2`.
    pub fn inner_at(&self, c: u64, k: usize) -> Complex64 {
        match c.checked_sub(2).and_then(|i| self.inner.get(i as usize)) {
            Some(row) => row[k],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// `sum_{c <= c_max} a_c(t) c^(-2s)` for the `k`-th frequency, without the `e(-r)` factor.
    pub fn series(&self, k: usize, s: Complex64) -> Complex64 {
        self.inner
            .iter()
            .enumerate()
            .map(|(i, a)| a[k] * (-2.0 * s * ((i + 2) as f64).ln()).exp())
            .collect::<ComplexSum>()
            .value()
    }

    /// `Z_r(t/2, s)` truncated at `c_max`.
    pub fn z(&self, k: usize, s: Complex64) -> Result<Complex64> {
        check_abscissa(s)?;
        let (j, m) = unit_interval_parts(self.r)?;
        Ok(unit_root(-(j as i128), m as i128) * self.series(k, s))
    }
}

pub(crate) fn check_abscissa(s: Complex64) -> Result<()> {
    if !(s.re > 1.0) {
        return Err(Error::domain(format!(
            "Re(s) = {} <= 1: the series is evaluated only where it converges absolutely",
            s.re
        )));
    }
    Ok(())
}

/// `sum_{c > c_max} c^(1 - 2 sigma)`, bounded by an integral: majorises the omitted terms since `phi_theta(c) <= c`.
pub fn z_tail_bound(sigma: f64, c_max: u64) -> f64 {
    (c_max as f64).powf(2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0)
}

/// `Z_r(n, s)` truncated at `c_max`.
pub fn z_partial(r: RationalParam, n: i64, s: Complex64, c_max: u64) -> Result<SpectralPoint> {
    check_abscissa(s)?;
    let coeffs = DirichletCoefficients::build(r, &[2 * n], c_max)?;
    Ok(SpectralPoint {
        r,
        n,
        s,
        c_max,
        value: coeffs.z(0, s)?,
        tail_bound: z_tail_bound(s.re, c_max),
    })
}

/// `Z_r(t/2, s)` at a possibly half-integer frequency `t/2`.
pub fn z_partial_half(r: RationalParam, twice_n: i64, s: Complex64, c_max: u64) -> Result<Complex64> {
    check_abscissa(s)?;
    DirichletCoefficients::build(r, &[twice_n], c_max)?.z(0, s)
}
