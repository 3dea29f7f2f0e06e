//! Exact q-series laboratory for overpartition rank generating functions.
//!
//! The crate is organized around the objects the identities are made of:
//!
//! - [`cyc`] (over [`qq`] rationals): exact arithmetic in cyclotomic
//!   fields Q(zeta_L)
//! - [`fps`]: truncated formal series in q^{1/D} over those fields
//! - [`blocks`]: Pochhammer products, Jacobi brackets, eta and generalized
//!   eta functions, Klein forms, theta and Appell-Lerch series
//! - [`rank`]: the overpartition rank family, its rewritings, and exact
//!   identity verification
//! - [`modgroup`]: congruence subgroups, cusps, widths, invariant orders and
//!   the valence-formula budget
//! - [`numerics`]: floating-point evaluation and residual checks of the
//!   modular transformation laws
//! - [`catalog`]: the fixed table of named series behind the command line

pub mod blocks;
pub mod catalog;
pub mod cyc;
pub mod error;
pub mod fps;
pub mod modgroup;
pub mod numerics;
pub mod qq;
pub mod rank;

pub use cyc::CycNum;
pub use error::QError;
pub use fps::{FracSeries, IdentityReport, Monomial, Rat};
