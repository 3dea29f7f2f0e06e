//! Floating-point evaluation of the theta, mu, R, E and g functions on the
//! upper half-plane, the period integrals of the completions, and residual
//! checks of the modular transformation laws.

mod checks;
mod special;

pub use checks::{maass_residual_at_step, maass_scaling_probe, run_suite, transform_check, CheckKind, CheckReport, DEFAULT_TAUS, DEFAULT_TOL};
pub use special::{
    e_complement, e_integral, eta_num, g_num, gen_eta_num, klein_num, mu_num, mu_tilde_num,
    period_integral, r_num, theta_num,
};

use num_complex::Complex64;

use crate::error::QError;

/// A point in the upper half-plane together with a working precision in
/// decimal digits (double precision underneath; the precision steers the
/// truncation cutoffs).
#[derive(Clone, Copy, Debug)]
pub struct CPoint {
    pub tau: Complex64,
    pub digits: u32,
}

impl CPoint {
    pub fn new(tau: Complex64) -> Result<Self, QError> {
        if tau.im <= 0.0 {
            return Err(QError::Hypothesis("tau must lie in the upper half-plane".into()));
        }
        Ok(CPoint { tau, digits: 14 })
    }

    pub fn with_digits(mut self, digits: u32) -> Self {
        self.digits = digits;
        self
    }
}

pub(crate) const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// exp(2 pi i tau x)
pub(crate) fn q_pow(tau: Complex64, x: f64) -> Complex64 {
    (Complex64::new(0.0, TWO_PI) * tau * x).exp()
}

/// exp(2 pi i x)
pub(crate) fn unit(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TWO_PI * x)
}
