//! Quadrature engines: tensor products of circular contours, composite
//! Gauss-Legendre panels, and truncated semi-infinite oscillatory integrals.

mod contour;
mod gl;
mod halfline;

pub use contour::{contour_integral, contour_integral_indexed, Contour, ContourFamily, QuadResult};
pub use gl::{gl_nodes, gl_panel_integral, gl_panel_integral_complex};
pub use halfline::oscillatory_halfline_integral;
