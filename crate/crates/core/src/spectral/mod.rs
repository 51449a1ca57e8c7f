//! Truncated Dirichlet series, special functions and the Eisenstein series of
//! the theta multiplier system, all restricted to `Re s > 1`.

mod dirichlet;
mod eisenstein;
mod gamma;
mod perron;
mod whittaker;

pub use dirichlet::{z_partial, z_partial_half, z_tail_bound, DirichletCoefficients};
pub use eisenstein::{
    constant_gamma_factor, eisenstein_direct, eisenstein_fourier, eisenstein_fourier_with, CoefficientSeries,
    EisensteinParams, FourierConvention, FourierValue, WhittakerScale, DEFAULT_C_MAX, DEFAULT_D_SPAN,
    DEFAULT_EISENSTEIN_BUDGET, DEFAULT_N_MAX,
};
pub use gamma::gamma_complex;
pub use perron::{gauss_legendre, perron_partial, PerronDiagnostic};
pub use whittaker::whittaker_w;

use crate::RationalParam;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A truncated spectral evaluation. For Eisenstein values `n` is 0 and
/// `c_max` is the coset truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub r: RationalParam,
    pub n: i64,
    pub s: Complex64,
    pub c_max: u64,
    pub value: Complex64,
    pub tail_bound: f64,
}
