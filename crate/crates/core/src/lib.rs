//! Hardy sums, Dedekind sums and the theta multiplier system, together with
//! the exponential-sum and Eisenstein-series machinery used to study the
//! distribution of Hardy sums in `Z/mZ`.
//!
//! Modules, bottom-up:
//! - [`arith`]: sieves, parity-restricted Farey fractions and their counts
//! - [`sums`]: exact Dedekind and Hardy sums, vectorised per-denominator rows
//! - [`modular`]: theta series, the multiplier system `nu_r`, transformation checks
//! - [`spectral`]: complex gamma, Whittaker `W`, Dirichlet series of Weyl sums,
//!   Eisenstein series by coset sum and by Fourier expansion, Perron diagnostic
//! - [`equidist`]: Weyl sums, Ramanujan sums, residue histograms and uniformity statistics

pub mod arith;
pub mod equidist;
mod error;
pub mod modular;
pub mod phase;
pub mod spectral;
pub mod summation;
pub mod sums;

pub use arith::{ParityClass, SieveTables, ThetaFraction};
pub use equidist::{DistTable, UniformityStats, Variant, WeylSeries};
pub use error::{Error, Result};
pub use modular::GroupElement;
pub use num_complex::Complex64;
pub use spectral::{EisensteinParams, SpectralPoint};
pub use sums::{ExactRational, HardyRecord};

/// Rational parameter `r = j/m` in the open unit interval, always carried exactly.
pub type RationalParam = num_rational::Ratio<i64>;

/// Validates `0 < r < 1` and returns `(j, m)` in lowest terms.
pub fn unit_interval_parts(r: RationalParam) -> Result<(i64, i64)> {
    let (j, m) = (*r.numer(), *r.denom());
    if j <= 0 || j >= m {
        return Err(Error::Domain(format!("r = {r} is not in (0, 1)")));
    }
    Ok((j, m))
}
