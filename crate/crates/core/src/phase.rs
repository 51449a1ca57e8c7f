//! Roots of unity `e(p/q) = exp(2 pi i p/q)` evaluated from exact rational phases.
//!
//! The phase is reduced modulo 1 in integer arithmetic and folded into
//! `[0, 1/8]` before any trigonometric call, so quarter-turns come out exact
//! and equal rationals always produce identical bits.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// `e(p/q)` for `q > 0`.
pub fn unit_root(p: i128, q: i128) -> Complex64 {
    debug_assert!(q > 0);
    let p = p.rem_euclid(q);
    if p == 0 {
        return Complex64::new(1.0, 0.0);
    }
    // Fold into the first half-turn using e(-x) = conj(e(x)).
    if 2 * p > q {
        return unit_root(q - p, q).conj();
    }
    if 2 * p == q {
        return Complex64::new(-1.0, 0.0);
    }
    // p/q in (0, 1/2): fold into the first quarter using e(x) = i e(x - 1/4).
    if 4 * p > q {
        let w = unit_root(4 * p - q, 4 * q);
        return Complex64::new(-w.im, w.re);
    }
    if 4 * p == q {
        return Complex64::new(0.0, 1.0);
    }
    // p/q in (0, 1/4): e(x) = i conj(e(1/4 - x)) keeps the argument below pi/4.
    if 8 * p > q {
        let w = unit_root(q - 4 * p, 4 * q);
        return Complex64::new(w.im, w.re);
    }
    let (s, c) = (TAU * (p as f64 / q as f64)).sin_cos();
    Complex64::new(c, s)
}

/// `e(x)` for a floating phase; only for quantities that are not rational by construction.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let (s, c) = (TAU * x).sin_cos();
    Complex64::new(c, s)
}
