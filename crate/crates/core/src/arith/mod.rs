//! The arithmetic Euler-product factor: local factors two independent ways,
//! truncated global products with tail bounds, and the closed form at the
//! origin.

mod global;
mod local;

pub use global::{a_global, a_zero, tail_bound, EulerProductResult};
pub use local::{a_local_alt, a_local_def, ALT_GAP_TOL};
