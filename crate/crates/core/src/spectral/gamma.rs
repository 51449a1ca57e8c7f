//! Complex gamma function: Lanczos approximation (g = 7, nine terms) with
//! reflection for `Re s < 1/2`.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// `Gamma(s)` for complex `s` away from the non-positive integers.
pub fn gamma_complex(s: Complex64) -> Result<Complex64> {
    if is_pole(s) {
        return Err(Error::domain(format!("Gamma has a pole at {s}")));
    }
    Ok(gamma_unchecked(s))
}

fn gamma_unchecked(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        let sin = (s * PI).sin();
        return PI / (sin * gamma_unchecked(1.0 - s));
    }
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * x
}
