//! Theta series, the theta group, and the multiplier system `nu_r` of `theta^(8r)`.
//!
//! The transformation laws are checked in exponentiated form with principal
//! branches: `w^a = exp(a Log w)` with `Arg w` in `(-pi, pi]`.

use crate::phase::unit_root;
use crate::summation::ComplexSum;
use crate::sums::{hardy_s, hardy_s4, hardy_s_signed};
use crate::{unit_interval_parts, Error, RationalParam, Result};
use num_complex::Complex64;
use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::Mul;

/// Default cap on the number of series terms per theta evaluation.
pub const DEFAULT_TERM_BUDGET: u64 = 10_000_000;

/// An element `(a b; c d)` of `SL2(Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GroupElement {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };
    pub const MINUS_IDENTITY: Self = Self { a: -1, b: 0, c: 0, d: -1 };
    /// `(0 -1; 1 0)`, acting as `z -> -1/z`.
    pub const INVERSION: Self = Self { a: 0, b: -1, c: 1, d: 0 };
    /// `(1 2; 0 1)`, the generator of the stabiliser of the cusp at infinity.
    pub const TRANSLATION_2: Self = Self { a: 1, b: 2, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
            return Err(Error::domain(format!("({a} {b}; {c} {d}) has determinant != 1")));
        }
        Ok(Self { a, b, c, d })
    }

    /// Membership in the theta group: `g` is congruent to `I` or to `(0 1; 1 0)` mod 2.
    ///
    /// With determinant one this is `c + d` odd and `a + b` odd. The bottom-row
    /// condition alone is not enough: `(1 1; 2 3)` has `c + d` odd but reduces to
    /// `(1 1; 0 1)` mod 2, and theta does not transform under it.
    pub fn is_theta(&self) -> bool {
        (self.c + self.d).rem_euclid(2) == 1 && (self.a + self.b).rem_euclid(2) == 1
    }

    /// A theta-group element with bottom row `(c, d)`; unique up to left powers of `(1 2; 0 1)`.
    pub fn theta_from_bottom_row(c: i64, d: i64) -> Result<Self> {
        if (c + d).rem_euclid(2) != 1 {
            return Err(Error::domain(format!("bottom row ({c}, {d}) needs c + d odd")));
        }
        let g = Self::from_bottom_row(c, d)?;
        Ok(if g.is_theta() { g } else { g.shift_left() })
    }

    /// An element with bottom row `(c, d)`, `d` odd, and `b` even: the matrices
    /// under which `theta4` transforms into itself.
    pub fn theta4_from_bottom_row(c: i64, d: i64) -> Result<Self> {
        if d.rem_euclid(2) != 1 {
            return Err(Error::domain(format!("bottom row ({c}, {d}) needs d odd")));
        }
        let g = Self::from_bottom_row(c, d)?;
        Ok(if g.b.rem_euclid(2) == 0 { g } else { g.shift_left() })
    }

    fn from_bottom_row(c: i64, d: i64) -> Result<Self> {
        let e = d.extended_gcd(&c);
        let (x, y) = match e.gcd {
            1 => (e.x, e.y),
            -1 => (-e.x, -e.y),
            _ => return Err(Error::domain(format!("gcd({c}, {d}) != 1"))),
        };
        Self::new(x, -y, c, d)
    }

    /// `(1 1; 0 1) g`: same bottom row, flips the parity of `a + b`.
    fn shift_left(self) -> Self {
        Self {
            a: self.a + self.c,
            b: self.b + self.d,
            ..self
        }
    }

    /// Automorphy factor `j(g, z) = cz + d`.
    #[inline]
    pub fn j(&self, z: Complex64) -> Complex64 {
        z * self.c as f64 + self.d as f64
    }

    /// Moebius action `g.z = (az + b)/(cz + d)`.
    #[inline]
    pub fn act(&self, z: Complex64) -> Complex64 {
        (z * self.a as f64 + self.b as f64) / self.j(z)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, h: GroupElement) -> GroupElement {
        GroupElement {
            a: self.a * h.a + self.b * h.c,
            b: self.a * h.b + self.b * h.d,
            c: self.c * h.a + self.d * h.c,
            d: self.c * h.b + self.d * h.d,
        }
    }
}

/// A theta-group element with `1 <= c <= c_max` and `|d| <= d_max`.
pub fn random_theta_element<R: Rng + ?Sized>(rng: &mut R, c_max: i64, d_max: i64) -> GroupElement {
    random_element(rng, 1, c_max, d_max)
}

/// A theta-group element with `|c| <= c_max` and `|d| <= d_max`, signs and `c = 0` included.
pub fn random_theta_element_signed<R: Rng + ?Sized>(rng: &mut R, c_max: i64, d_max: i64) -> GroupElement {
    random_element(rng, -c_max, c_max, d_max)
}

fn random_element<R: Rng + ?Sized>(rng: &mut R, c_lo: i64, c_hi: i64, d_max: i64) -> GroupElement {
    assert!(c_lo <= c_hi && d_max >= 1);
    loop {
        let c = rng.gen_range(c_lo..=c_hi);
        let d = rng.gen_range(-d_max..=d_max);
        if let Ok(g) = GroupElement::theta_from_bottom_row(c, d) {
            return g;
        }
    }
}

/// Smallest `M` with `2 sum_{n > M} e^(-pi n^2 y) < tol`, using the geometric bound
/// `sum_{n > M} e^(-pi n^2 y) <= e^(-pi (M+1)^2 y) / (1 - e^(-pi (2M+3) y))`.
pub fn theta_cutoff(y: f64, tol: f64) -> u64 {
    let tail = |m: f64| {
        let first = (-PI * (m + 1.0).powi(2) * y).exp();
        2.0 * first / -(-PI * (2.0 * m + 3.0) * y).exp_m1()
    };
    let guess = ((1.0 / tol).ln() / (PI * y)).sqrt().floor() - 1.0;
    let mut m = guess.max(0.0);
    while tail(m) >= tol {
        m += 1.0;
    }
    m as u64
}

/// `sum_n (+-1)^n e^(pi i n^2 z)` truncated at [`theta_cutoff`], with a term budget.
pub fn theta_series(z: Complex64, tol: f64, alternating: bool, term_budget: u64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::domain(format!("theta needs Im z > 0, got {z}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let m = theta_cutoff(z.im, tol);
    if m > term_budget {
        return Err(Error::Budget {
            what: format!("theta at Im z = {:e} needs {m} terms (budget {term_budget})", z.im),
            partial: None,
            tail_bound: None,
        });
    }
    // Smallest terms first.
    let mut acc = ComplexSum::new();
    for n in (1..=m).rev() {
        let n2 = (n * n) as f64;
        let phase = (n2 * z.re).rem_euclid(2.0);
        let term = Complex64::from_polar((-PI * n2 * z.im).exp(), PI * phase);
        acc.add(if alternating && n % 2 == 1 { -term } else { term });
    }
    Ok(acc.value() * 2.0 + 1.0)
}

/// `theta(z) = sum_{n in Z} e^(pi i n^2 z)`.
pub fn theta(z: Complex64, tol: f64) -> Result<Complex64> {
    theta_series(z, tol, false, DEFAULT_TERM_BUDGET)
}

/// `theta4(z) = sum_{n in Z} (-1)^n e^(pi i n^2 z)`.
pub fn theta4(z: Complex64, tol: f64) -> Result<Complex64> {
    theta_series(z, tol, true, DEFAULT_TERM_BUDGET)
}

/// Integer exponent `E` with `nu_r(g) = e(r E)`.
fn multiplier_exponent(g: &GroupElement) -> Result<i64> {
    Ok(if g.c != 0 {
        hardy_s_signed(g.d, g.c)? - g.c.signum()
    } else {
        g.d.signum() - 1
    })
}

/// The multiplier system of `theta^(8r)`:
/// `theta(g.z)^(8r) = nu_r(g) (cz + d)^(4r) theta(z)^(8r)`.
pub fn nu_r(g: &GroupElement, r: RationalParam) -> Result<Complex64> {
    if !g.is_theta() {
        return Err(Error::domain(format!("{g:?} is not in the theta group")));
    }
    let (j, m) = unit_interval_parts(r)?;
    let e = multiplier_exponent(g)?;
    Ok(unit_root(j as i128 * e as i128, m as i128))
}

/// Residuals of the theta transformation laws at one `(g, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransformResiduals {
    /// `|theta(g.z) - ((cz+d)/i)^(1/2) e^(pi i S(d,c)/4) theta(z)|`.
    pub theta: f64,
    /// `|theta4(g.z) - ((cz+d)/i)^(1/2) e^(-pi i S4(d,c)/4) theta4(z)|`, when `d` is odd.
    pub theta4: Option<f64>,
}

impl TransformResiduals {
    pub fn max(&self) -> f64 {
        self.theta.max(self.theta4.unwrap_or(0.0))
    }
}

pub fn verify_theta_transform(g: &GroupElement, z: Complex64, tol: f64) -> Result<TransformResiduals> {
    verify_theta_transform_budgeted(g, z, tol, DEFAULT_TERM_BUDGET)
}

pub fn verify_theta_transform_budgeted(
    g: &GroupElement,
    z: Complex64,
    tol: f64,
    term_budget: u64,
) -> Result<TransformResiduals> {
    if !g.is_theta() || g.c <= 0 {
        return Err(Error::domain(format!(
            "{g:?} must lie in the theta group with c > 0"
        )));
    }
    let s = hardy_s(g.d, g.c)?;
    let theta_res = transform_residual(g, z, tol, term_budget, false, s)?;
    let theta4_res = if g.d.rem_euclid(2) == 1 {
        let s4 = hardy_s4(g.d, g.c)?;
        Some(transform_residual(g, z, tol, term_budget, true, -s4)?)
    } else {
        None
    };
    Ok(TransformResiduals {
        theta: theta_res,
        theta4: theta4_res,
    })
}

/// Residual of the `theta4` law alone for `c > 0`, `d` odd, `b` even.
pub fn verify_theta4_transform(g: &GroupElement, z: Complex64, tol: f64) -> Result<f64> {
    if g.c <= 0 || g.d.rem_euclid(2) != 1 || g.b.rem_euclid(2) != 0 {
        return Err(Error::domain(format!("{g:?} needs c > 0, d odd and b even")));
    }
    let s4 = hardy_s4(g.d, g.c)?;
    transform_residual(g, z, tol, DEFAULT_TERM_BUDGET, true, -s4)
}

fn transform_residual(
    g: &GroupElement,
    z: Complex64,
    tol: f64,
    term_budget: u64,
    alternating: bool,
    eighths: i64,
) -> Result<f64> {
    let lhs = theta_series(g.act(z), tol, alternating, term_budget)?;
    let weight = (g.j(z) / Complex64::i()).sqrt();
    let rhs = weight * unit_root(eighths as i128, 8) * theta_series(z, tol, alternating, term_budget)?;
    Ok((lhs - rhs).norm())
}

/// Consistency residual of `nu_r` as a multiplier system of weight `4r`:
///
/// `|nu_r(gh) - nu_r(g) nu_r(h) j(g, h.z)^(4r) j(h, z)^(4r) / j(gh, z)^(4r)|`.
///
/// This is the defining identity divided through by `|j(gh, z)^(4r)|`, so the
/// residual is on the scale of the unit-modulus multiplier rather than of the
/// automorphy factors.
pub fn cocycle_check(g: &GroupElement, h: &GroupElement, z: Complex64, r: RationalParam) -> Result<f64> {
    if !(z.im > 0.0) {
        return Err(Error::domain(format!("cocycle check needs Im z > 0, got {z}")));
    }
    let gh = *g * *h;
    if !gh.is_theta() {
        // Only reachable if g or h is outside the group.
        return Err(Error::domain(format!("product {gh:?} left the theta group")));
    }
    let weight = 4.0 * *r.numer() as f64 / *r.denom() as f64;
    let lhs = nu_r(&gh, r)?;
    let log_ratio = g.j(h.act(z)).ln() + h.j(z).ln() - gh.j(z).ln();
    let rhs = nu_r(g, r)? * nu_r(h, r)? * (log_ratio * weight).exp();
    Ok((lhs - rhs).norm())
}
