//! The shifted-moment predictor: the exact multiple contour integral, its
//! asymptotic pole-assignment decomposition, the shift-difference integrals
//! and leading coefficients, and the resulting moment-of-moments predictor.

mod assignment;
mod decomposed;
mod direct;
mod evalcore;
mod gamma;
mod gfunc;
mod momp;
mod predict;
mod psi;

pub use assignment::{all_assignments, build_assignment, LAssignment, TPair};
pub use decomposed::p_decomposed;
pub use direct::{p_direct, PRoute, PValue};
pub use gamma::{gamma_coeff, GammaResult};
pub use gfunc::g_func;
pub use momp::{mom_p, PredictorTable};
pub use predict::leading_prediction;
pub use psi::psi;
