//! Complex special functions and prime generation.

mod barnes;
mod gamma;
mod primes;
mod zeta;

pub use barnes::{barnes_g, fk_coefficient};
pub use gamma::{complex_gamma, lgamma};
pub use primes::{primes_up_to, PrimeTable};
pub use zeta::{zeta_critical, zeta_em, zeta_near_one, EULER_GAMMA, STIELTJES};
