//! Numerical laboratory for "moments of moments" of the Riemann zeta function.
//!
//! The library evaluates the k-th moment (over the window start t) of the
//! 2β-th moment of |ζ(1/2 + ih)| over unit windows [t, t+1], three
//! independent ways:
//!
//! * empirically, from critical-line samples of ζ ([`empirical`]);
//! * through the shifted-moment contour-integral predictor, both as the
//!   exact multiple contour integral and through its asymptotic
//!   pole-assignment decomposition ([`cfkrs`]);
//! * by Monte Carlo over the classical compact matrix groups ([`rmt`]).
//!
//! Supporting layers: complex special functions and prime sieves
//! ([`specfun`]), quadrature engines ([`quad`]), the arithmetic Euler-product
//! factor ([`arith`]), and power-law exponent fitting ([`fit`]).

pub mod arith;
pub mod cfkrs;
pub mod config;
pub mod empirical;
pub mod error;
pub mod fit;
pub mod params;
pub mod quad;
pub mod rmt;
pub mod specfun;

pub use config::Config;
pub use error::{Error, Result};
pub use params::{Method, MomParams, MomentEstimate, ShiftVector, SymmetryClass};
